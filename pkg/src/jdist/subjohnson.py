"""Two-distance extensions of the representation with a fixed last axis.

Here the Johnson representation J(n-1, 2) sits inside R^n as
``(1, 1, 0, ..., 0, 0)`` permuted over the first n-1 coordinates only.  A
vector that can join it while keeping the two distances sqrt(2) and 2 has
the shape ``(a^k, (a-1)^(n-k-1), b)`` with ``b = -(n-1)a + (n-k+1)``
pinned by the common hyperplane sum(x) = 2, and its squared distance to a
Johnson point is

    n(n-1) a^2 - 2n(n-k+1) a + (n-k+1)(n-k+2) + 2 i

where i counts the ones of the Johnson point that land on (a-1)-slots.
Only k in {0, 1, n-2} leaves at most two achievable overlap values, and
solving the resulting quadratics exactly produces at most eight families
(both root branches of four shapes); the deepest shape needs a
non-negative discriminant 4n(10-n), hence n <= 10, with the two branches
merging at n = 10.

Everything downstream (which unions of families stay two-distance, which
unions are congruent) is decided by exact arithmetic on the materialized
orbits; printed reference values are regression expectations, never
inputs.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .exactnum import NegativeDiscriminant, QuadNum, solve_quadratic

TWO_DISTANCE = (QuadNum.of(2), QuadNum.of(4))


@dataclass(frozen=True)
class SubFamily:
    """One solved extension orbit for the fixed-last-axis setting.

    ``kind`` indexes the construction: 1 = empty run with near distance,
    2 = empty run with far distance, 3 = single repeated slot,
    4 = almost-full run (n <= 10 only).  ``sign`` is the root branch.
    """

    n: int
    k: int
    kind: int
    sign: str
    a: QuadNum
    b: QuadNum

    @property
    def label(self) -> str:
        return f"S{self.kind}{self.sign}"

    @property
    def size(self) -> int:
        return math.comb(self.n - 1, self.k)

    def points(self) -> tuple[tuple[QuadNum, ...], ...]:
        n, k = self.n, self.k
        low = self.a - 1
        out = []
        for support in itertools.combinations(range(n - 1), k):
            point = [low] * (n - 1)
            for i in support:
                point[i] = self.a
            point.append(self.b)
            out.append(tuple(point))
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "n": self.n,
            "k": self.k,
            "size": self.size,
            "a": str(self.a),
            "b": str(self.b),
            "point_shape": self.describe(),
        }

    def describe(self) -> str:
        n, k = self.n, self.k
        parts = []
        if k:
            parts.append(f"({self.a})^{k}" if k > 1 else f"({self.a})")
        if n - 1 - k:
            low = self.a - 1
            parts.append(f"({low})^{n - 1 - k}" if n - 1 - k > 1 else f"({low})")
        parts.append(f"({self.b})")
        return "(" + ", ".join(parts) + ")"


@dataclass(frozen=True)
class FamilyCombination:
    labels: tuple[str, ...]
    added: int
    total: int
    maximal: bool

    def to_json(self) -> dict:
        return {
            "families": list(self.labels),
            "added": self.added,
            "total": self.total,
            "maximal": self.maximal,
        }


def sub_johnson_points(n: int) -> Iterator[tuple[Fraction, ...]]:
    """The representation: 2-subset indicators of the first n-1 axes."""
    if n < 5:
        raise ValueError(f"need n >= 5, got {n}")
    one, zero = Fraction(1), Fraction(0)
    for i, j in itertools.combinations(range(n - 1), 2):
        point = [zero] * n
        point[i] = point[j] = one
        yield tuple(point)


def sub_johnson_size(n: int) -> int:
    return math.comb(n - 1, 2)


def overlap_range(n: int, k: int) -> range:
    """Achievable counts of ones landing on (a-1)-slots."""
    return range(max(0, 2 - k), min(2, n - 1 - k) + 1)


def sub_sq_dist(n: int, k: int, a, i2: int) -> QuadNum:
    """Squared distance to a Johnson point with overlap ``i2``."""
    if not 0 <= k <= n - 2:
        raise ValueError(f"need 0 <= k <= n-2, got k={k}")
    if i2 not in overlap_range(n, k):
        raise ValueError(f"overlap {i2} infeasible for k={k}, n={n}")
    a = QuadNum.of(a)
    return (
        a * a * (n * (n - 1))
        - a * (2 * n * (n - k + 1))
        + QuadNum.of((n - k + 1) * (n - k + 2) + 2 * i2)
    )


def solve_sub_families(n: int) -> list[SubFamily]:
    """All orbits whose every point keeps {sqrt(2), 2} to the Johnson side.

    For k = 0 the single achievable overlap leaves the target distance
    free (near or far); for k = 1 and k = n-2 the two achievable overlaps
    force the pair (2, 4).  Any other k admits three overlaps and is
    impossible.  A vanishing discriminant merges the two branches into
    one family, reported with the '+' sign.
    """
    if n < 5:
        raise ValueError(f"need n >= 5, got {n}")
    out: list[SubFamily] = []
    shapes = ((1, 0, 2), (2, 0, 4), (3, 1, 2), (4, n - 2, 2))
    for kind, k, first_target in shapes:
        overlaps = overlap_range(n, k)
        assert len(overlaps) <= 2
        coeff_a = n * (n - 1)
        coeff_b = -2 * n * (n - k + 1)
        coeff_c = (n - k + 1) * (n - k + 2) + 2 * overlaps[0] - first_target
        try:
            minus, plus = solve_quadratic(coeff_a, coeff_b, coeff_c)
        except NegativeDiscriminant:
            continue
        branches = [("+", plus)] if minus == plus else [("+", plus), ("-", minus)]
        for sign, a in branches:
            b = QuadNum.of(n - k + 1) - a * (n - 1)
            fam = SubFamily(n, k, kind, sign, a, b)
            targets = {first_target + 2 * (i - overlaps[0]) for i in overlaps}
            for i2 in overlaps:
                got = sub_sq_dist(n, k, a, i2)
                assert got == first_target + 2 * (i2 - overlaps[0])
            assert targets <= {2, 4}
            out.append(fam)
    out.sort(key=lambda f: (f.kind, f.sign))
    return out


def sq_dist_points(p: Sequence, q: Sequence) -> QuadNum:
    d = QuadNum()
    for a, b in zip(p, q):
        diff = QuadNum.of(a) - QuadNum.of(b)
        d = d + diff * diff
    return d


def _pair_two_distance(points_a, points_b, same: bool) -> bool:
    for i, p in enumerate(points_a):
        start = i + 1 if same else 0
        for q in points_b[start:]:
            if sq_dist_points(p, q) not in TWO_DISTANCE:
                return False
    return True


@dataclass(frozen=True)
class CombinationReport:
    n: int
    families: tuple[SubFamily, ...]
    intra_valid: tuple[bool, ...]
    combinations: tuple[FamilyCombination, ...]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "johnson_size": sub_johnson_size(self.n),
            "families": [
                dict(f.to_json(), intra_two_distance=v)
                for f, v in zip(self.families, self.intra_valid)
            ],
            "combinations": [c.to_json() for c in self.combinations],
        }


def combination_search(n: int) -> CombinationReport:
    """Every family subset whose union stays a two-distance set.

    Validity of a subset reduces to intra-family validity plus pairwise
    cross-family validity (the Johnson side is two-distance by
    construction); subsets are enumerated exhaustively over at most eight
    families and flagged maximal when no further family fits.
    """
    families = solve_sub_families(n)
    points = [f.points() for f in families]
    count = len(families)

    intra = tuple(_pair_two_distance(points[i], points[i], True) for i in range(count))
    usable = [i for i in range(count) if intra[i]]
    compatible = {}
    for i, j in itertools.combinations(usable, 2):
        compatible[(i, j)] = _pair_two_distance(points[i], points[j], False)

    combos = []
    valid_sets = []
    for r in range(1, len(usable) + 1):
        for subset in itertools.combinations(usable, r):
            if all(compatible[(i, j)] for i, j in itertools.combinations(subset, 2)):
                valid_sets.append(subset)
    valid_lookup = set(valid_sets)
    for subset in valid_sets:
        extendable = any(
            other not in subset and tuple(sorted(subset + (other,))) in valid_lookup
            for other in usable
        )
        added = sum(families[i].size for i in subset)
        combos.append(
            FamilyCombination(
                tuple(families[i].label for i in subset),
                added,
                sub_johnson_size(n) + added,
                not extendable,
            )
        )
    combos.sort(key=lambda c: (-c.added, c.labels))
    return CombinationReport(n, tuple(families), intra, tuple(combos))


def union_points(n: int, labels: Sequence[str]) -> list[tuple[QuadNum, ...]]:
    """The Johnson points plus the orbits of the labelled families."""
    by_label = {f.label: f for f in solve_sub_families(n)}
    points = [tuple(QuadNum.of(c) for c in p) for p in sub_johnson_points(n)]
    for label in labels:
        points.extend(by_label[label].points())
    return points


def congruent(set_a: Sequence[Sequence], set_b: Sequence[Sequence]) -> bool:
    """Whether a distance-preserving bijection between the sets exists.

    Backtracking match over exact squared-distance multisets: points can
    only map to points with identical distance profiles, and every placed
    pair must preserve the distance to everything already placed.
    """
    if len(set_a) != len(set_b):
        return False
    pts_a = [tuple(QuadNum.of(c) for c in p) for p in set_a]
    pts_b = [tuple(QuadNum.of(c) for c in p) for p in set_b]
    size = len(pts_a)
    if size == 0:
        return True

    da = [[sq_dist_points(p, q) for q in pts_a] for p in pts_a]
    db = [[sq_dist_points(p, q) for q in pts_b] for p in pts_b]

    def signature(matrix, i):
        return tuple(sorted(Counter(str(d) for j, d in enumerate(matrix[i]) if j != i).items()))

    sig_a = [signature(da, i) for i in range(size)]
    sig_b = [signature(db, i) for i in range(size)]
    if sorted(sig_a) != sorted(sig_b):
        return False

    candidates = [[j for j in range(size) if sig_b[j] == sig_a[i]] for i in range(size)]
    order = sorted(range(size), key=lambda i: len(candidates[i]))
    assigned: dict[int, int] = {}
    used: set[int] = set()

    def backtrack(pos: int) -> bool:
        if pos == size:
            return True
        i = order[pos]
        for j in candidates[i]:
            if j in used:
                continue
            if all(db[j][assigned[prev]] == da[i][prev] for prev in assigned):
                assigned[i] = j
                used.add(j)
                if backtrack(pos + 1):
                    return True
                del assigned[i]
                used.remove(j)
        return False

    return backtrack(0)

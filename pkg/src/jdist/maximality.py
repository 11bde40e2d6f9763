"""Compatibility graphs over candidate vectors and maximal extensions.

Every addable orbit keeps all its distances to the Johnson points inside
the allowed set, so the only remaining freedom is which candidate vectors
are mutually compatible.  Vertices are candidate points, edges mean the
squared distance lies in {2, 4, ..., 2m}, and maximal extensions of the
representation correspond exactly to maximal cliques.

Universes stay small here (the largest searched instance has 306
vertices), so an exact branch-and-bound with greedy-coloring bounds
suffices; a node budget with an explicit optimality flag keeps the one
genuinely open instance honest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exactnum import QuadNum
from .families import (
    CandidateFamily,
    Parameters,
    addable_families,
    scaled_johnson_points,
)
from .spectra import cross_family_spectrum, johnson_family_spectrum

DEFAULT_BUDGET = 10**8
DEFAULT_CAP = 10**5


class UniverseTooLarge(ValueError):
    """Materializing the candidate points would exceed the cap."""


class _BudgetExhausted(Exception):
    pass


@dataclass
class CandidateUniverse:
    """Materialized candidate points with pairwise compatibility.

    Vertices are sorted lexicographically by their scaled coordinates, so
    the structure (and everything searched on it) is independent of input
    order.  ``adjacency[i]`` is a bitmask over vertex indices.
    """

    params: Parameters
    families: tuple[CandidateFamily, ...]
    points: tuple[tuple[Fraction, ...], ...]
    scaled: tuple[tuple[int, ...], ...]
    adjacency: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.points)

    def is_complete(self) -> bool:
        full = (1 << self.size) - 1
        return all(mask | (1 << i) == full for i, mask in enumerate(self.adjacency))

    def index_of(self, scaled_point: tuple[int, ...]) -> int:
        return self._index[scaled_point]

    def __post_init__(self) -> None:
        self._index = {p: i for i, p in enumerate(self.scaled)}


@dataclass(frozen=True)
class MaxCliqueResult:
    vertices: tuple[int, ...]
    optimal: bool
    expansions: int

    @property
    def size(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class CliqueStructure:
    """Summary of *all* maximal cliques of a universe."""

    min_size: int
    max_size: int
    count: int
    exhaustive: bool
    method: str


@dataclass(frozen=True)
class WitnessReport:
    description: str
    size: int
    verified: bool
    spectrum: tuple


@dataclass
class ClassificationReport:
    params: Parameters
    addable: tuple[CandidateFamily, ...]
    universe_size: int
    complete: bool
    incompatibilities: tuple[str, ...]
    clique_size: int
    optimal: bool
    clique_structure: CliqueStructure | None = None
    witness: WitnessReport | None = None
    notes: tuple[str, ...] = ()

    @property
    def added_count(self) -> int:
        return self.clique_size

    @property
    def maximal_set_cardinality(self) -> int:
        return self.params.johnson_size + self.clique_size

    def to_json(self) -> dict:
        out = {
            "n": self.params.n,
            "m": self.params.m,
            "johnson_size": self.params.johnson_size,
            "addable_families": [
                dict(f.to_json(), johnson_spectrum=johnson_family_spectrum(f).to_json())
                for f in self.addable
            ],
            "universe_size": self.universe_size,
            "complete_compatibility": self.complete,
            "incompatibilities": list(self.incompatibilities),
            "added_count": self.clique_size,
            "maximal_set_cardinality": self.maximal_set_cardinality,
            "optimal": self.optimal,
            "notes": list(self.notes),
        }
        if self.clique_structure is not None:
            s = self.clique_structure
            out["maximal_clique_sizes"] = {
                "min": s.min_size,
                "max": s.max_size,
                "count": s.count,
                "exhaustive": s.exhaustive,
                "method": s.method,
            }
        if self.witness is not None:
            out["witness"] = {
                "description": self.witness.description,
                "size": self.witness.size,
                "verified": self.witness.verified,
                "spectrum": [str(v) for v in self.witness.spectrum],
            }
        return out

    def csv_row(self) -> tuple:
        return (
            self.params.n,
            self.params.m,
            self.clique_size,
            self.maximal_set_cardinality,
            self.optimal,
        )


def build_universe(params: Parameters, cap: int = DEFAULT_CAP) -> CandidateUniverse:
    """Materialize all addable candidate points and their compatibility."""
    families = tuple(addable_families(params))
    total = sum(f.size for f in families)
    if total > cap:
        raise UniverseTooLarge(f"{total} candidate points exceed the cap {cap}")

    allowed = params.allowed_sq_dists()
    for fam in families:
        # guaranteed by the addability filter; asserted since everything
        # downstream relies on Johnson-compatibility of each vertex
        assert johnson_family_spectrum(fam).within(allowed)

    scaled: list[tuple[int, ...]] = []
    for fam in families:
        scaled.extend(fam.scaled_points())
    scaled.sort()
    n = params.n
    points = tuple(tuple(Fraction(c, n) for c in p) for p in scaled)

    allowed_scaled = {v * n * n for v in allowed}
    size = len(scaled)
    masks = [0] * size
    for i in range(size):
        pi = scaled[i]
        for j in range(i + 1, size):
            d = 0
            for a, b in zip(pi, scaled[j]):
                d += (a - b) * (a - b)
            if d in allowed_scaled:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return CandidateUniverse(params, families, points, tuple(scaled), tuple(masks))


def _greedy_clique(adjacency: Sequence[int], size: int) -> list[int]:
    clique: list[int] = []
    candidates = (1 << size) - 1
    while candidates:
        v = (candidates & -candidates).bit_length() - 1
        clique.append(v)
        candidates &= adjacency[v]
    return clique


def _color_order(candidates: int, adjacency: Sequence[int]) -> tuple[list[int], list[int]]:
    """Greedy coloring: vertices ordered by color class, with the class
    number as an upper bound on any clique inside the remaining set."""
    order: list[int] = []
    bounds: list[int] = []
    color = 0
    rest = candidates
    while rest:
        color += 1
        available = rest
        while available:
            v = (available & -available).bit_length() - 1
            bit = 1 << v
            order.append(v)
            bounds.append(color)
            rest ^= bit
            available = (available ^ bit) & ~adjacency[v]
    return order, bounds


def max_clique(
    universe: CandidateUniverse,
    budget: int = DEFAULT_BUDGET,
    seed: Iterable[int] | None = None,
) -> MaxCliqueResult:
    """Branch-and-bound maximum clique with greedy-coloring pruning.

    ``budget`` caps vertex expansions; when exhausted the best clique so
    far is returned with ``optimal=False`` (a certified lower bound).
    A ``seed`` clique, when given, primes the incumbent.
    """
    adjacency = universe.adjacency
    size = universe.size
    if size == 0:
        return MaxCliqueResult((), True, 0)

    best = _greedy_clique(adjacency, size)
    if seed is not None:
        seed = sorted(seed)
        for i, v in enumerate(seed):
            for u in seed[i + 1 :]:
                assert adjacency[v] >> u & 1, "seed is not a clique"
        if len(seed) > len(best):
            best = list(seed)

    current: list[int] = []
    expansions = 0

    def expand(candidates: int) -> None:
        nonlocal best, expansions
        order, bounds = _color_order(candidates, adjacency)
        for idx in range(len(order) - 1, -1, -1):
            if len(current) + bounds[idx] <= len(best):
                return
            expansions += 1
            if expansions > budget:
                raise _BudgetExhausted
            v = order[idx]
            current.append(v)
            rest = candidates & adjacency[v]
            if rest:
                expand(rest)
            elif len(current) > len(best):
                best = list(current)
            current.pop()
            candidates &= ~(1 << v)

    optimal = True
    try:
        expand((1 << size) - 1)
    except _BudgetExhausted:
        optimal = False
    return MaxCliqueResult(tuple(sorted(best)), optimal, expansions)


def maximal_clique_structure(
    universe: CandidateUniverse, enumeration_cap: int = 10**6
) -> CliqueStructure | None:
    """Size range over *all* maximal cliques, when tractable.

    When the incompatibility relation is a partial matching (complement
    degree <= 1), every maximal clique consists of all unpaired vertices
    plus exactly one endpoint per incompatible pair: a clique cannot hold
    both endpoints, and skipping a vertex is only maximal when its partner
    is chosen.  That covers all 2**pairs maximal cliques without listing
    them.  Otherwise fall back to explicit enumeration up to the cap;
    returns None when that is abandoned.
    """
    size = universe.size
    full = (1 << size) - 1
    complement = [full & ~mask & ~(1 << i) for i, mask in enumerate(universe.adjacency)]
    if all(mask.bit_count() <= 1 for mask in complement):
        pairs = sum(1 for mask in complement if mask) // 2
        clique_size = size - pairs
        return CliqueStructure(clique_size, clique_size, 2**pairs, True, "complement-matching")

    sizes: list[int] = []
    count = 0

    def bron_kerbosch(r_size: int, p: int, x: int) -> bool:
        nonlocal count
        if not p and not x:
            sizes.append(r_size)
            count += 1
            return count < enumeration_cap
        pivot_pool = p | x
        pivot = (pivot_pool & -pivot_pool).bit_length() - 1
        candidates = p & ~universe.adjacency[pivot]
        while candidates:
            v = (candidates & -candidates).bit_length() - 1
            bit = 1 << v
            candidates ^= bit
            if not bron_kerbosch(r_size + 1, p & universe.adjacency[v], x & universe.adjacency[v]):
                return False
            p ^= bit
            x |= bit
        return True

    finished = bron_kerbosch(0, full, 0)
    if not finished:
        return None
    return CliqueStructure(min(sizes), max(sizes), count, True, "bron-kerbosch")


def verify_point_set(points: Sequence[Sequence], m: int, johnson: bool = False):
    """Check a point set realizes at most m distinct distances.

    Returns ``(ok, spectrum)`` with the exact sorted squared distances.
    With ``johnson=True`` the values must additionally all lie in
    {2, 4, ..., 2m}, the distance set of the Johnson representation.
    """
    pts = [tuple(p) for p in points]
    if not pts:
        return True, ()
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise ValueError("points have mixed dimensions")

    if all(isinstance(c, (int, Fraction)) for p in pts for c in p):
        scale = math.lcm(*(Fraction(c).denominator for p in pts for c in p))
        ints = [tuple(int(Fraction(c) * scale) for c in p) for p in pts]
        found: set[int] = set()
        for i in range(len(ints)):
            pi = ints[i]
            for j in range(i + 1, len(ints)):
                d = 0
                for a, b in zip(pi, ints[j]):
                    d += (a - b) * (a - b)
                found.add(d)
        sq = scale * scale
        values = sorted(Fraction(d, sq) for d in found if d)
    else:
        quad_pts = [tuple(QuadNum.of(c) for c in p) for p in pts]
        quad_found: set[QuadNum] = set()
        for i in range(len(quad_pts)):
            pi = quad_pts[i]
            for j in range(i + 1, len(quad_pts)):
                d = QuadNum()
                for a, b in zip(pi, quad_pts[j]):
                    diff = a - b
                    d = d + diff * diff
                quad_found.add(d)
        quad_found.discard(QuadNum())
        values = sorted(quad_found)  # exact sign-based ordering

    ok = len(values) <= m
    if johnson:
        allowed = {2 * i for i in range(1, m + 1)}
        ok = ok and all(v in allowed for v in values)
    return ok, tuple(values)


def four_distance_witness_points() -> list[tuple[Fraction, ...]]:
    """The 258-point four-distance set containing the n = 9 representation.

    Johnson points plus: both fully addable orbits, the single deep-level
    vector whose lone negative coordinate sits last, and the 86 vectors of
    the large orbit whose negative coordinate follows both peak
    coordinates (84 position-ordered ones plus two sporadic arrangements).
    Whether 258 is the true maximum is open; this set itself verifies.
    """
    params = Parameters(9, 4)
    n = params.n
    points: list[tuple[Fraction, ...]] = [
        tuple(Fraction(c, n) for c in p) for p in scaled_johnson_points(params)
    ]
    for fam in (CandidateFamily(params, 3, (7, 2)), CandidateFamily(params, -3, (1, 8))):
        points.extend(fam.points())

    deep = CandidateFamily(params, 3, (8, 0, 1))
    points.append(next(deep.points()))  # first arrangement: negative value last

    big = CandidateFamily(params, -3, (2, 6, 1))
    peak, _, low = big.levels
    for p in big.points():
        low_pos = p.index(low)
        peak_pos = max(i for i, c in enumerate(p) if c == peak)
        if low_pos > peak_pos:
            points.append(p)
    mid = big.levels[1]
    points.append((low, peak, peak) + (mid,) * 6)
    points.append((peak, low, peak) + (mid,) * 6)
    return points


def classify(
    params: Parameters,
    budget: int = DEFAULT_BUDGET,
    cap: int = DEFAULT_CAP,
) -> ClassificationReport:
    """Full classification of the maximal extensions for one instance.

    Family-level spectra decide complete compatibility without touching
    points; only genuinely conflicting universes are materialized and
    searched.  Oversized conflicting universes degrade to spectrum-level
    reporting (the cardinality then only counts what is proven addable in
    full, flagged as non-optimal).
    """
    allowed = params.allowed_sq_dists()
    families = tuple(addable_families(params))
    total = sum(f.size for f in families)
    notes: list[str] = []

    if not families:
        return ClassificationReport(
            params,
            (),
            0,
            True,
            (),
            0,
            True,
            notes=("no addable candidate vectors; the representation is maximal",),
        )

    conflicts: list[str] = []
    for i, fam in enumerate(families):
        if not johnson_family_spectrum(fam).within(allowed):
            raise AssertionError(f"addable family {fam} fails the Johnson spectrum check")
        if fam.size > 1 and not cross_family_spectrum(fam, fam).within(allowed):
            conflicts.append(f"intra k0={fam.offset} k={fam.counts}")
        for other in families[i + 1 :]:
            if not cross_family_spectrum(fam, other).within(allowed):
                conflicts.append(
                    f"cross k0={fam.offset} k={fam.counts} / k0={other.offset} k={other.counts}"
                )

    if not conflicts:
        notes.append("all intra- and cross-family spectra stay inside the allowed set")
        return ClassificationReport(params, families, total, True, (), total, True, notes=tuple(notes))

    witness = None
    if (params.n, params.m) == (9, 4):
        pts = four_distance_witness_points()
        ok, spectrum = verify_point_set(pts, params.m, johnson=True)
        witness = WitnessReport(
            "Johnson points, both fully addable orbits, one deep-level vector, "
            "and 86 position-filtered vectors of the large orbit",
            len(pts),
            ok,
            spectrum,
        )
        notes.append("best known extension embedded as an explicit witness; maximality is open")

    if total > cap:
        addable_alone = [f for f in families if f.size == 1 or cross_family_spectrum(f, f).within(allowed)]
        # one vertex is always addable, so the bound never collapses to zero
        lower = max((f.size for f in addable_alone), default=1)
        notes.append(
            "universe exceeds the materialization cap; spectrum-level verification only, "
            "cardinality is a single-family lower bound"
        )
        return ClassificationReport(
            params,
            families,
            total,
            False,
            tuple(conflicts),
            lower,
            False,
            witness=witness,
            notes=tuple(notes),
        )

    universe = build_universe(params, cap)
    seed = None
    if witness is not None and witness.verified:
        johnson = set(scaled_johnson_points(params))
        n = params.n
        seed = [
            universe.index_of(tuple(int(c * n) for c in p))
            for p in four_distance_witness_points()
            if tuple(int(c * n) for c in p) not in johnson
        ]
    result = max_clique(universe, budget=budget, seed=seed)
    structure = maximal_clique_structure(universe) if universe.size <= 120 else None
    if structure is not None and structure.method == "complement-matching":
        notes.append(
            "incompatibilities form a perfect partial matching: every maximal clique picks "
            "one vertex per incompatible pair plus all universal vertices"
        )
    if not result.optimal:
        notes.append(f"search budget of {budget} expansions exhausted; size is a lower bound")
    return ClassificationReport(
        params,
        families,
        universe.size,
        False,
        tuple(conflicts),
        result.size,
        result.optimal,
        clique_structure=structure,
        witness=witness,
        notes=tuple(notes),
    )

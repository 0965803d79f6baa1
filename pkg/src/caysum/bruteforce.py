"""Exhaustive ground truth: every normal square-free connection set.

A normal set is a union of conjugacy classes, so it suffices to walk all
subsets of the non-square classes. For a target subgroup K each class adds a
fixed vector of counts to the right cosets of K. Subsets are visited in
Gray-code order, so each step adds or removes exactly one class vector.

Count vectors are packed into a single integer, one fixed-width field per
coset (K's field lowest). A step is then one integer addition and the
regularity test is a mask-and-compare.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .abelian import CapExceeded
from .dicyclic import DicyclicGroup, GroupElement, canonical
from .feasibility import FeasibleRegion, region_for
from .subgroups import Subgroup, enumerate_all_subgroups, right_cosets, subgroup_invariants

Pair = tuple[int, int]

DEFAULT_MAX_CLASSES = 24


@dataclass(frozen=True)
class ClassVector:
    class_index: int
    contribution: tuple[int, ...]


@dataclass(frozen=True)
class SearchSpace:
    """The non-square classes of G seen through the cosets of K."""

    classes: tuple[tuple[GroupElement, ...], ...]
    vectors: tuple[ClassVector, ...]
    n_cosets: int
    width: int

    def packed(self) -> list[int]:
        return [pack(v.contribution, self.width) for v in self.vectors]

    def elements_of(self, mask: int) -> frozenset[GroupElement]:
        return frozenset(g for i, c in enumerate(self.classes) if mask >> i & 1 for g in c)


def pack(counts: tuple[int, ...] | list[int], width: int) -> int:
    out = 0
    for j, c in enumerate(counts):
        out |= c << (width * j)
    return out


def unpack(value: int, n: int, width: int) -> list[int]:
    m = (1 << width) - 1
    return [(value >> (width * j)) & m for j in range(n)]


def search_space(G: DicyclicGroup, K: Subgroup) -> SearchSpace:
    cs = right_cosets(G, K)
    where = {g: j for j, c in enumerate(cs) for g in c}
    classes = tuple(G.nonsquare_classes())
    vecs = []
    for i, cls in enumerate(classes):
        v = [0] * len(cs)
        for g in cls:
            v[where[g]] += 1
        vecs.append(ClassVector(i, tuple(v)))
    # Each field holds at most |K|.
    return SearchSpace(classes, tuple(vecs), len(cs), K.order.bit_length())


def _scan(vectors: list[int], n_cosets: int, width: int, n_low: int, high_bits: int) -> dict[Pair, int]:
    """Gray-code walk over the low ``n_low`` classes with the remaining
    classes fixed to ``high_bits``. Returns first witness mask per pair."""
    field_mask = (1 << width) - 1
    ones = pack([1] * (n_cosets - 1), width)
    value = 0
    for i in range(n_low, len(vectors)):
        if high_bits >> (i - n_low) & 1:
            value += vectors[i]
    mask = high_bits << n_low
    found: dict[Pair, int] = {}

    def record(v: int, msk: int) -> None:
        alpha = v & field_mask
        if n_cosets == 1:
            pair = (alpha, 0)
        else:
            off = v >> width
            beta = off & field_mask
            if off != beta * ones:
                return
            pair = (alpha, beta)
        if pair not in found:
            found[pair] = msk

    record(value, mask)
    for step in range(1, 1 << n_low):
        bit = (step & -step).bit_length() - 1
        if mask >> bit & 1:
            value -= vectors[bit]
        else:
            value += vectors[bit]
        mask ^= 1 << bit
        record(value, mask)
    return found


def _split(n_classes: int, workers: int) -> int:
    """Number of high-order class bits used to partition the work."""
    if workers <= 1:
        return 0
    bits = 0
    while (1 << bits) < 4 * workers and bits < n_classes:
        bits += 1
    return bits


def achievable_pairs(
    G: DicyclicGroup,
    K: Subgroup,
    max_classes: int = DEFAULT_MAX_CLASSES,
    workers: int = 1,
    pool: ProcessPoolExecutor | None = None,
) -> dict[Pair, frozenset[GroupElement]]:
    """Every (alpha, beta) that K attains, each with one witness S.

    (0, 0) is always present (S empty).
    """
    space = search_space(G, K)
    n = len(space.classes)
    if n > max_classes:
        raise CapExceeded(f"{n} non-square classes exceed max_classes={max_classes}")
    vectors = space.packed()
    high = _split(n, workers)
    low = n - high
    jobs = [(vectors, space.n_cosets, space.width, low, h) for h in range(1 << high)]
    if pool is not None:
        parts = list(pool.map(_scan_star, jobs))
    elif workers > 1 and high:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_scan_star, jobs))
    else:
        parts = [_scan_star(j) for j in jobs]
    merged: dict[Pair, int] = {}
    for part in parts:
        for pair, msk in part.items():
            if pair not in merged or msk < merged[pair]:
                merged[pair] = msk
    return {pair: space.elements_of(msk) for pair, msk in sorted(merged.items())}


def _scan_star(args: tuple) -> dict[Pair, int]:
    return _scan(*args)


def coset_counts(G: DicyclicGroup, K: Subgroup, S: frozenset[GroupElement]) -> list[int]:
    """Count of S in each right coset of K, computed from scratch."""
    return [sum(1 for g in c if g in S) for c in right_cosets(G, K)]


# --- cross-check ------------------------------------------------------------------


@dataclass
class CrosscheckRow:
    subgroup: Subgroup
    case_label: str
    region: FeasibleRegion
    achieved: dict[Pair, frozenset[GroupElement]]
    n_classes: int
    seconds: float

    @property
    def achieved_pairs(self) -> frozenset[Pair]:
        return frozenset(p for p in self.achieved if p != (0, 0))

    @property
    def predicted(self) -> frozenset[Pair]:
        return self.region.pairs

    @property
    def equal(self) -> bool:
        """Composed prediction equals brute force."""
        return self.achieved_pairs == self.region.pairs

    @property
    def theorem_equal(self) -> bool:
        """Closed-form statement equals brute force."""
        return self.achieved_pairs == self.region.theorem_pairs

    @property
    def passed(self) -> bool:
        return self.equal and self.theorem_equal

    def extra(self, predicted: frozenset[Pair] | None = None) -> dict[Pair, frozenset[GroupElement]]:
        predicted = self.region.pairs if predicted is None else predicted
        return {p: s for p, s in self.achieved.items() if p != (0, 0) and p not in predicted}

    def missing(self, predicted: frozenset[Pair] | None = None) -> list[Pair]:
        predicted = self.region.pairs if predicted is None else predicted
        return sorted(predicted - self.achieved_pairs)


@dataclass
class CrosscheckReport:
    group: str
    rows: list[CrosscheckRow] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def mismatches(self) -> list[CrosscheckRow]:
        return [r for r in self.rows if not r.passed]


def crosscheck(
    G: DicyclicGroup,
    max_classes: int = DEFAULT_MAX_CLASSES,
    workers: int = 1,
    group_id: str | None = None,
) -> CrosscheckReport:
    """Compare brute force with the predicted region for every subgroup."""
    start = time.perf_counter()
    report = CrosscheckReport(group_id or G.describe())
    subgroups = enumerate_all_subgroups(G)
    n = len(G.nonsquare_classes())
    if n > max_classes:
        raise CapExceeded(f"{n} non-square classes exceed max_classes={max_classes}")
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for K in subgroups:
            t0 = time.perf_counter()
            achieved = achievable_pairs(G, K, max_classes, workers, pool=pool)
            region = region_for(G, K, strict=False)
            report.rows.append(
                CrosscheckRow(
                    subgroup=K,
                    case_label=subgroup_invariants(G, K).case_label,
                    region=region,
                    achieved=achieved,
                    n_classes=n,
                    seconds=time.perf_counter() - t0,
                )
            )
    finally:
        if pool is not None:
            pool.shutdown()
    report.seconds = time.perf_counter() - start
    return report


def witness_sorted(S: frozenset[GroupElement]) -> list[GroupElement]:
    return canonical(S)

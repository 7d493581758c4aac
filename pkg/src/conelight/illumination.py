"""Illuminating the unit ball of the Hilbert norm.

A direction w illuminates a boundary point z of a convex body when
z + t*w is interior for every sufficiently small t > 0.  A set of
directions illuminates the body when every boundary point is illuminated
by some member; covering the extreme points suffices.

For the ||.||_H ball in (n-1)-space the extreme points are the signed
indicators sign * 1_I, and illumination has a closed form (first-order
expansion of ||z + t*w||_H in t):

    w illuminates +1_I  iff  max_{i in I} w_i < 0 and
                             max_{i in I} w_i < w_j for every j not in I;
    w illuminates -1_I  iff  min_{i in I} w_i > 0 and
                             min_{i in I} w_i > w_j for every j not in I.

Consequently the positive supports a single direction illuminates are the
sets {j : w_j <= t} over the distinct negative values t of w, a nested
chain, and symmetrically for negative supports.  This module exploits
that structure to build an illuminating set of the optimal size
C(n, ceil(n/2)) from a symmetric chain decomposition of the subset
lattice, to compute the illumination number exactly for small n with a
branch-and-bound set cover over canonical direction classes, and to emit
antichain certificates witnessing the matching lower bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb
from typing import Sequence

import numpy as np

from .geometry import (
    DimensionMismatchError,
    ExtremePoint,
    as_finite_vector,
    extreme_points,
    hilbert_norm,
)

# Step size factor for the small-t numeric illumination check.
NUMERIC_STEP = 1e-6


def as_direction(w) -> np.ndarray:
    """Validate a direction: finite coordinates, not all zero."""
    arr = as_finite_vector(w)
    if not np.any(arr != 0.0):
        raise ValueError("a direction must be nonzero")
    return arr


def illuminates(w, z: ExtremePoint) -> bool:
    """Closed-form illumination predicate for an extreme point.

    For z = +1_I the condition is max_I w < min(0, min over the
    complement); for z = -1_I it is the mirror image.  Justification: for
    small t > 0 the norm ||z + t*w||_H equals 1 + t*(max_I w - min(0,
    min_{j not in I} w_j)) in the positive case, so the norm dips below 1
    exactly when that slope is negative.
    """
    wv = as_direction(w)
    if wv.size != z.dim:
        raise DimensionMismatchError(
            f"direction has dimension {wv.size}, extreme point has {z.dim}"
        )
    sup = np.array(sorted(z.support), dtype=int) - 1
    mask = np.zeros(wv.size, dtype=bool)
    mask[sup] = True
    outside = wv[~mask]
    if z.sign > 0:
        top = wv[mask].max()
        return bool(top < 0.0 and (outside.size == 0 or top < outside.min()))
    bottom = wv[mask].min()
    return bool(bottom > 0.0 and (outside.size == 0 or bottom > outside.max()))


def illuminates_numeric(w, z: ExtremePoint, step: float = NUMERIC_STEP) -> bool:
    """Defining small-step check: ||z + t*w||_H < 1 at t = step / max|w_i|.

    Independent of the closed form; the two must agree away from exact
    ties, and the test suite cross-validates them.
    """
    wv = as_direction(w)
    if wv.size != z.dim:
        raise DimensionMismatchError(
            f"direction has dimension {wv.size}, extreme point has {z.dim}"
        )
    t = step / np.abs(wv).max()
    return hilbert_norm(z.realize() + t * wv) < 1.0


def illuminated_supports(w) -> tuple[list[frozenset[int]], list[frozenset[int]]]:
    """All supports whose positive / negative extreme points `w` illuminates.

    By the closed form, +1_I is illuminated iff I = {j : w_j <= t} for the
    (negative) value t = max_I w; sweeping t over the distinct negative
    values of w therefore enumerates every illuminated positive support,
    and the positive values of w give the negative supports symmetrically.
    Each list is a nested chain, shortest support first.
    """
    wv = as_direction(w)
    values = np.unique(wv)
    plus = [
        frozenset(int(j) + 1 for j in np.flatnonzero(wv <= t)) for t in values if t < 0.0
    ]
    minus = [
        frozenset(int(j) + 1 for j in np.flatnonzero(wv >= s))
        for s in values[::-1]
        if s > 0.0
    ]
    return plus, minus


def _ground_ordering(supports: list[frozenset[int]], dim: int) -> list[int]:
    """Order 1..dim compatibly with a nested support chain: elements of the
    smallest support first, then each successive difference, then the rest."""
    order: list[int] = []
    seen: set[int] = set()
    for sup in supports:
        order.extend(sorted(sup - seen))
        seen |= sup
    order.extend(sorted(set(range(1, dim + 1)) - seen))
    return order


def chain_illuminator(chain: Sequence[ExtremePoint]) -> np.ndarray:
    """One direction illuminating every element of a same-sign nested chain.

    Extends the chain's supports to a full flag of {1, ..., dim}, then
    assigns the integer values -dim, ..., -1 in flag order (negated for a
    negative-sign chain).  For the k-th flag set the closed form reads
    value_k < value_(k+1) < ... < 0, which holds by construction.
    """
    pts = list(chain)
    if not pts:
        raise ValueError("chain must be nonempty")
    dim = pts[0].dim
    sign = pts[0].sign
    if any(p.dim != dim for p in pts):
        raise DimensionMismatchError("chain members must share a dimension")
    if any(p.sign != sign for p in pts):
        raise ValueError("chain members must share a sign")
    supports = sorted((p.support for p in pts), key=len)
    for small, big in zip(supports, supports[1:]):
        if small == big or not small < big:
            raise ValueError("chain supports must be strictly nested")
    order = _ground_ordering(supports, dim)
    w = np.empty(dim)
    for step, element in enumerate(order, start=1):
        w[element - 1] = float(step - dim - 1)
    if sign < 0:
        w = -w
    assert all(illuminates(w, p) for p in pts)
    return w


def pair_illuminator(x: ExtremePoint, x_complement: ExtremePoint) -> np.ndarray:
    """One direction illuminating a positive point and its negative
    complement (-1 exactly off the positive support).

    The direction is -1 on the positive support and +1 off it, which
    satisfies both closed-form conditions simultaneously.
    """
    if x.sign != 1 or x_complement.sign != -1:
        raise ValueError("expected a positive point and a negative point")
    if x.dim != x_complement.dim:
        raise DimensionMismatchError("points must share a dimension")
    full = frozenset(range(1, x.dim + 1))
    if x_complement.support != full - x.support:
        raise ValueError("second point must be the complement of the first")
    w = np.ones(x.dim)
    for i in x.support:
        w[i - 1] = -1.0
    assert illuminates(w, x) and illuminates(w, x_complement)
    return w


def _bit_tuple(x: int, d: int) -> tuple[int, ...]:
    return tuple((x >> i) & 1 for i in range(d))


def symmetric_chain_decomposition(d: int) -> list[list[tuple[int, ...]]]:
    """Partition {0,1}^d into C(d, ceil(d/2)) symmetric chains.

    Symmetric means saturated (each successor adds exactly one 1) with
    bottom weight + top weight = d.  Construction by bracket matching:
    scan coordinates left to right reading 0 as an opening and 1 as a
    closing bracket and match them in the usual nested fashion.  Vectors
    sharing a matching structure form one chain; the chain is generated
    from its bottom (all unmatched coordinates 0) by switching unmatched
    zeros to 1 from the left.  Each chain gains one matched pair per two
    coordinates it fixes, which forces the bottom/top weight symmetry.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    chains: list[list[tuple[int, ...]]] = []
    for x in range(1 << d):
        stack: list[int] = []
        unmatched_one = False
        for i in range(d):
            if (x >> i) & 1:
                if stack:
                    stack.pop()
                else:
                    unmatched_one = True
                    break
            else:
                stack.append(i)
        if unmatched_one:
            continue  # not a chain bottom; covered by the chain of its bottom
        chain = [x]
        cur = x
        for pos in stack:
            cur |= 1 << pos
            chain.append(cur)
        chains.append([_bit_tuple(v, d) for v in chain])
    return chains


def _support_of(bits: tuple[int, ...]) -> frozenset[int]:
    return frozenset(i + 1 for i, b in enumerate(bits) if b)


def optimal_illuminating_set(n: int) -> list[np.ndarray]:
    """Directions of minimal count C(n, ceil(n/2)) illuminating the whole ball.

    Strip the empty set from a symmetric chain decomposition of the subset
    lattice on {1, ..., n-1} to get a chain partition of the positive
    extreme points.  For even n each chain receives one chain illuminator
    and the mirrored (negated) directions handle the negative side.  For
    odd n the decomposition has singleton chains exactly at weight
    (n-1)/2: those are paired with their negative complements through one
    pair illuminator each, while every longer chain gets chain
    illuminators on both the positive side and its complement-image
    negative side.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    d = n - 1
    decomposition = symmetric_chain_decomposition(d)
    full = frozenset(range(1, d + 1))
    directions: list[np.ndarray] = []
    if n % 2 == 0:
        for chain in decomposition:
            supports = [_support_of(v) for v in chain if any(v)]
            w = chain_illuminator([ExtremePoint(1, s, d) for s in supports])
            directions.append(w)
            directions.append(-w)
    else:
        for chain in decomposition:
            supports = [_support_of(v) for v in chain]
            if len(supports) == 1:
                s = supports[0]
                directions.append(
                    pair_illuminator(ExtremePoint(1, s, d), ExtremePoint(-1, full - s, d))
                )
            else:
                plus_chain = [ExtremePoint(1, s, d) for s in supports if s]
                directions.append(chain_illuminator(plus_chain))
                minus_chain = [
                    ExtremePoint(-1, full - s, d) for s in supports if full - s
                ]
                directions.append(chain_illuminator(minus_chain))
    return directions


@dataclass(frozen=True)
class IlluminationReport:
    """Outcome of checking a direction set against every extreme point."""

    n: int
    direction_count: int
    covered: bool
    unilluminated: tuple[ExtremePoint, ...]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "direction_count": self.direction_count,
            "covered": self.covered,
            "unilluminated": [p.realize().tolist() for p in self.unilluminated],
        }


def verify_illumination(directions: Sequence, n: int) -> IlluminationReport:
    """Exhaustively check which of the 2^n - 2 extreme points the given
    directions illuminate.

    Uses the per-direction support enumeration, which marks exactly the
    points the closed-form predicate accepts.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    d = n - 1
    covered_plus: set[frozenset[int]] = set()
    covered_minus: set[frozenset[int]] = set()
    count = 0
    for w in directions:
        wv = as_direction(w)
        if wv.size != d:
            raise DimensionMismatchError(
                f"direction has dimension {wv.size}, expected {d}"
            )
        plus, minus = illuminated_supports(wv)
        covered_plus.update(plus)
        covered_minus.update(minus)
        count += 1
    missing = tuple(
        z
        for z in extreme_points(n)
        if z.support not in (covered_plus if z.sign > 0 else covered_minus)
    )
    return IlluminationReport(n, count, not missing, missing)


# ---------------------------------------------------------------------------
# Canonical direction classes and the exact set-cover oracle
# ---------------------------------------------------------------------------
#
# The illumination pattern of a direction only depends on the relative
# order of its coordinates and on where zero sits in that order.  Ties and
# zero coordinates never help: every closed-form condition is a strict
# inequality, so it survives any sufficiently small perturbation, and a
# generic perturbation makes the coordinates distinct and nonzero while
# keeping (at least) the same pattern.  It therefore suffices to search
# over the (n-1)! * n canonical classes (a permutation giving the strict
# coordinate order plus the count of negative coordinates).


def canonical_class_representative(perm: Sequence[int], negatives: int) -> np.ndarray:
    """Concrete direction for the class (coordinate order, negative count).

    The coordinate in sorted position k (0-based) receives k + 0.5 -
    negatives, so exactly `negatives` values are below zero and all values
    are distinct and nonzero.
    """
    d = len(perm)
    if not 0 <= negatives <= d:
        raise ValueError("negative count must lie in 0..dim")
    w = np.empty(d)
    for rank, coord in enumerate(perm):
        w[coord] = rank + 0.5 - negatives
    return w


def _all_class_patterns(n: int) -> list[int]:
    """Bitmask illumination patterns of every canonical class, deduplicated.

    Bit i corresponds to extreme_points(n)[i].
    """
    d = n - 1
    index = {(z.sign, z.support): i for i, z in enumerate(extreme_points(n))}
    patterns: set[int] = set()
    for perm in permutations(range(d)):
        for negatives in range(d + 1):
            w = canonical_class_representative(perm, negatives)
            plus, minus = illuminated_supports(w)
            mask = 0
            for s in plus:
                mask |= 1 << index[(1, s)]
            for s in minus:
                mask |= 1 << index[(-1, s)]
            if mask:
                patterns.add(mask)
    return sorted(patterns)


def _prune_dominated(patterns: list[int]) -> list[int]:
    """Drop patterns contained in another pattern (never needed by a
    minimum cover)."""
    kept: list[int] = []
    by_size = sorted(patterns, key=lambda p: -bin(p).count("1"))
    for p in by_size:
        if not any(p & q == p for q in kept):
            kept.append(p)
    kept.sort()
    return kept


def _disjoint_lower_bound(
    covered: int, order: list[int], elem_pattern_mask: list[int]
) -> int:
    """Admissible lower bound on the patterns still needed.

    Greedily collects uncovered elements no two of which share a covering
    pattern; any cover spends at least one pattern per collected element.
    """
    used = 0
    bound = 0
    for e in order:
        if (covered >> e) & 1:
            continue
        mask = elem_pattern_mask[e]
        if mask & used == 0:
            bound += 1
            used |= mask
    return bound


def _cover_search(
    universe: int,
    patterns: list[int],
    order: list[int],
    cover_by_elem: list[list[int]],
    elem_pattern_mask: list[int],
    start_covered: int,
    start_count: int,
    best: int,
) -> int:
    """Depth-first branch and bound; returns the best cover size found
    strictly below `best`, or `best` if none exists in this subtree."""
    stack = [(start_covered, start_count)]
    while stack:
        covered, count = stack.pop()
        if covered == universe:
            if count < best:
                best = count
            continue
        if count + 1 >= best:
            continue
        if count + _disjoint_lower_bound(covered, order, elem_pattern_mask) >= best:
            continue
        branch_elem = next(e for e in order if not (covered >> e) & 1)
        choices = sorted(
            cover_by_elem[branch_elem],
            key=lambda pi: bin(patterns[pi] & ~covered).count("1"),
        )
        # pushed smallest-gain first so the most promising branch pops first
        for pi in choices:
            stack.append((covered | patterns[pi], count + 1))
    return best


def _solve_cover_subproblem(args) -> int:
    universe, patterns, order, cover_by_elem, elem_pattern_mask, covered, count, best = args
    return _cover_search(
        universe, patterns, order, cover_by_elem, elem_pattern_mask, covered, count, best
    )


def _minimum_cover(universe: int, patterns: list[int], upper: int, workers: int = 1) -> int:
    """Exact minimum set cover, assuming a cover of size `upper` is known
    to exist.  With `workers` > 1 the root branches fan out to a process
    pool; each subtree is explored fully against the same seeded bound, so
    the result is identical for any worker count."""
    count_points = universe.bit_length()
    cover_by_elem = [
        [pi for pi, p in enumerate(patterns) if (p >> e) & 1] for e in range(count_points)
    ]
    if any(not c for c in cover_by_elem):
        raise ValueError("some element is covered by no pattern")
    elem_pattern_mask = [
        sum(1 << pi for pi in cover_by_elem[e]) for e in range(count_points)
    ]
    order = sorted(range(count_points), key=lambda e: len(cover_by_elem[e]))

    if _disjoint_lower_bound(0, order, elem_pattern_mask) >= upper:
        return upper

    common = (universe, patterns, order, cover_by_elem, elem_pattern_mask)
    if workers == 1:
        return _cover_search(*common, 0, 0, upper)

    import concurrent.futures

    branch_elem = order[0]
    tasks = [common + (patterns[pi], 1, upper) for pi in cover_by_elem[branch_elem]]
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_solve_cover_subproblem, tasks))
    return min([upper] + results)


def illumination_number_exact(n: int, workers: int = 1) -> int:
    """Minimum number of directions illuminating all extreme points,
    computed by exact set cover over the canonical direction classes.

    Seeded with the constructive upper bound, then searched exhaustively
    for anything smaller.  Supported for 2 <= n <= 6; the class count
    (n-1)! * n makes larger n impractical for an exact search, where the
    certificates take over.
    """
    if not 2 <= n <= 6:
        raise ValueError("exact illumination number is supported for 2 <= n <= 6")
    if workers < 1:
        raise ValueError("workers must be at least 1")
    count_points = 2**n - 2
    universe = (1 << count_points) - 1
    patterns = _prune_dominated(_all_class_patterns(n))

    constructive = optimal_illuminating_set(n)
    report = verify_illumination(constructive, n)
    assert report.covered
    return _minimum_cover(universe, patterns, len(constructive), workers)


# ---------------------------------------------------------------------------
# Lower-bound certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LowerBoundCertificate:
    """A family of extreme points that pairwise require distinct
    illuminating directions, hence a lower bound on the illumination
    number equal to the family size.

    `shareable_pairs` lists index pairs for which some canonical class
    illuminated both members; a valid certificate has none.
    """

    n: int
    points: tuple[ExtremePoint, ...]
    shareable_pairs: tuple[tuple[int, int], ...]
    classes_checked: int

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def all_unshareable(self) -> bool:
        return not self.shareable_pairs

    def to_dict(self) -> dict:
        shareable = set(self.shareable_pairs)
        return {
            "n": self.n,
            "size": self.size,
            "classes_checked": self.classes_checked,
            "all_unshareable": self.all_unshareable,
            "points": [p.realize().tolist() for p in self.points],
            "pairs": [
                {
                    "a": self.points[i].realize().tolist(),
                    "b": self.points[j].realize().tolist(),
                    "unshareable": (i, j) not in shareable,
                }
                for i, j in combinations(range(self.size), 2)
            ],
        }


def lower_bound_certificate(n: int) -> LowerBoundCertificate:
    """Antichain certificate of size C(n, ceil(n/2)).

    Takes all positive extreme points of support size k and all negative
    ones of support size m, with (k, m) = ((n-1)/2, (n+1)/2) for odd n and
    k = m = n/2 for even n.  Every canonical direction class is exhausted
    and the points it illuminates inside the certificate are intersected
    pairwise; no pair may be covered by one class, which (ties and zeros
    being dominated by nearby canonical directions) means no single
    direction can serve two certificate points.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    d = n - 1
    if n % 2 == 1:
        k, m = (n - 1) // 2, (n + 1) // 2
    else:
        k = m = n // 2
    points = [
        ExtremePoint(1, frozenset(c), d) for c in combinations(range(1, d + 1), k)
    ] + [ExtremePoint(-1, frozenset(c), d) for c in combinations(range(1, d + 1), m)]
    index = {(p.sign, p.support): i for i, p in enumerate(points)}

    shareable: set[tuple[int, int]] = set()
    classes = 0
    for perm in permutations(range(d)):
        for negatives in range(d + 1):
            w = canonical_class_representative(perm, negatives)
            plus, minus = illuminated_supports(w)
            hit = sorted(
                i
                for i in (
                    [index.get((1, s)) for s in plus]
                    + [index.get((-1, s)) for s in minus]
                )
                if i is not None
            )
            for a, b in combinations(hit, 2):
                shareable.add((a, b))
            classes += 1
    return LowerBoundCertificate(
        n, tuple(points), tuple(sorted(shareable)), classes
    )

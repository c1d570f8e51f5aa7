"""Numerical semigroups and cofinite exponent sets.

A numerical semigroup S is an additively closed subset of the naturals
containing 0 whose complement (the gap set) is finite.  The ring k[[t^S]]
is a one-dimensional complete local domain, and every length computation
in this toolkit reduces to counting differences of "valuation sets":
cofinite subsets of the naturals that are eventually full above a known
threshold.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from functools import cached_property
from math import gcd

from .errors import InvalidInput, NotCofinite, NotContained, NotInRing


@dataclass(frozen=True)
class NumericalSemigroup:
    """The value semigroup S = <generators> with its gap data."""

    generators: tuple[int, ...]
    gaps: tuple[int, ...]
    frobenius: int  # largest gap, -1 when S is all of the naturals
    conductor: int  # frobenius + 1
    min_generators: tuple[int, ...]

    @cached_property
    def _gap_set(self) -> frozenset[int]:
        return frozenset(self.gaps)

    @property
    def multiplicity(self) -> int:
        """Smallest positive element of S."""
        return self.min_generators[0]

    @property
    def genus(self) -> int:
        return len(self.gaps)

    def __contains__(self, n: int) -> bool:
        if n < 0:
            return False
        return n >= self.conductor or n not in self._gap_set

    def elements_below(self, bound: int) -> list[int]:
        """Sorted elements of S in [0, bound)."""
        return [n for n in range(max(bound, 0)) if n in self]

    def label(self) -> str:
        return ",".join(str(g) for g in self.min_generators)


def semigroup_from_generators(gens) -> NumericalSemigroup:
    """Build S = <gens> by dynamic closure up to the provable bound min*max.

    Raises NotCofinite when gcd(gens) != 1 (the associated ring would not
    be a one-dimensional domain of the modeled shape).
    """
    gens = sorted(set(int(g) for g in gens))
    if not gens:
        raise InvalidInput("empty generator set")
    if any(g <= 0 for g in gens):
        raise InvalidInput(f"generators must be positive, got {gens}")
    g = 0
    for a in gens:
        g = gcd(g, a)
    if g != 1:
        raise NotCofinite(f"gcd of generators is {g}, not 1")

    # Sylvester: the Frobenius number is < min(gens) * max(gens).
    bound = gens[0] * gens[-1] + 1
    reach = bytearray(bound)
    reach[0] = 1
    for n in range(1, bound):
        for a in gens:
            if a <= n and reach[n - a]:
                reach[n] = 1
                break
    gaps = tuple(n for n in range(1, bound) if not reach[n])
    frobenius = gaps[-1] if gaps else -1
    conductor = frobenius + 1

    # Minimal generators: positive elements not expressible as a sum of two
    # positive elements.  They all lie below conductor + multiplicity.
    mult = next(n for n in range(1, bound) if reach[n])
    min_gens = []
    for n in range(1, conductor + mult + 1):
        if not reach[n]:
            continue
        if any(reach[n - s] for s in range(1, n) if reach[s] and s >= mult):
            continue
        min_gens.append(n)
    return NumericalSemigroup(
        generators=tuple(gens),
        gaps=gaps,
        frobenius=frobenius,
        conductor=conductor,
        min_generators=tuple(min_gens),
    )


@dataclass(frozen=True)
class ValuationSet:
    """A subset of the naturals that is eventually full above `threshold`.

    `elements_below` lists the members in [0, threshold).  When
    `eventually_full` is set, every integer >= threshold is a member;
    otherwise membership above the threshold is undefined and querying it
    is an error.
    """

    elements_below: tuple[int, ...]
    threshold: int
    eventually_full: bool = True

    def __post_init__(self):
        els = self.elements_below
        if any(e < 0 or e >= self.threshold for e in els):
            raise InvalidInput("elements_below must lie in [0, threshold)")
        if list(els) != sorted(set(els)):
            raise InvalidInput("elements_below must be sorted and distinct")

    @cached_property
    def _member_set(self) -> frozenset[int]:
        return frozenset(self.elements_below)

    def __contains__(self, n: int) -> bool:
        if n < self.threshold:
            return n in self._member_set
        if not self.eventually_full:
            raise InvalidInput(
                f"membership of {n} above threshold {self.threshold} is undefined"
            )
        return True

    def upto(self, bound: int) -> list[int]:
        """Sorted members in [0, bound); needs fullness when bound > threshold."""
        if bound <= self.threshold:
            return list(self.elements_below[: bisect_left(self.elements_below, bound)])
        if not self.eventually_full:
            raise InvalidInput("cannot enumerate past threshold of a non-full set")
        return list(self.elements_below) + list(range(self.threshold, bound))

    def min_element(self) -> int | None:
        if self.elements_below:
            return self.elements_below[0]
        return self.threshold if self.eventually_full else None


def vset_from_semigroup(S: NumericalSemigroup) -> ValuationSet:
    """The valuation set of the full ring: S itself."""
    return ValuationSet(
        elements_below=tuple(S.elements_below(S.conductor)),
        threshold=S.conductor,
        eventually_full=True,
    )


def vset_of_monomial_ideal(S: NumericalSemigroup, exps) -> ValuationSet:
    """Valuations of (t^{a_1}, ..., t^{a_k}): the union of the a_i + S."""
    exps = sorted(set(int(a) for a in exps))
    if not exps:
        raise InvalidInput("monomial ideal needs at least one exponent")
    for a in exps:
        if a < 0 or a not in S:
            raise NotInRing(f"exponent {a} is not in the semigroup")
    threshold = exps[-1] + S.conductor
    members = set()
    for a in exps:
        members.update(a + s for s in S.elements_below(threshold - a))
    return ValuationSet(
        elements_below=tuple(sorted(m for m in members if m < threshold)),
        threshold=threshold,
        eventually_full=True,
    )


def vset_sum(A: ValuationSet, B: ValuationSet) -> ValuationSet:
    """Minkowski sum; models the staircase of a product of monomial ideals."""
    if not (A.eventually_full and B.eventually_full):
        raise InvalidInput("vset_sum requires eventually full operands")
    threshold = A.threshold + B.threshold
    ea, eb = A.upto(threshold), B.upto(threshold)
    sums = {x + y for x in ea for y in eb if x + y < threshold}
    return ValuationSet(tuple(sorted(sums)), threshold, True)


def vset_shift(A: ValuationSet, k: int) -> ValuationSet:
    """A + k elementwise (k >= 0): the staircase of t^k * (ideal)."""
    if k < 0:
        raise InvalidInput("shift must be nonnegative")
    return ValuationSet(
        tuple(e + k for e in A.elements_below), A.threshold + k, A.eventually_full
    )


def vset_contains(A: ValuationSet, B: ValuationSet) -> bool:
    """Whether B is a subset of A (checked up to the larger threshold)."""
    bound = max(A.threshold, B.threshold)
    return set(B.upto(bound)) <= set(A.upto(bound))


def vset_equal(A: ValuationSet, B: ValuationSet) -> bool:
    bound = max(A.threshold, B.threshold)
    return A.upto(bound) == B.upto(bound)


def vset_intersection(A: ValuationSet, B: ValuationSet) -> ValuationSet:
    """Elementwise intersection (valid staircase arithmetic for monomial ideals)."""
    threshold = max(A.threshold, B.threshold)
    members = sorted(set(A.upto(threshold)) & set(B.upto(threshold)))
    return ValuationSet(
        tuple(m for m in members if m < threshold),
        threshold,
        A.eventually_full and B.eventually_full,
    )


def vset_union(A: ValuationSet, B: ValuationSet) -> ValuationSet:
    threshold = max(A.threshold, B.threshold)
    members = sorted(set(A.upto(threshold)) | set(B.upto(threshold)))
    return ValuationSet(
        tuple(m for m in members if m < threshold),
        threshold,
        A.eventually_full or B.eventually_full,
    )


def vset_diff_count(A: ValuationSet, B: ValuationSet) -> int:
    """|A \\ B| for B contained in A: the length of the corresponding quotient.

    Raises NotContained when B is not a subset of A; the result would not
    be a length and callers must not interpret it as one.
    """
    if not (A.eventually_full and B.eventually_full):
        raise InvalidInput("vset_diff_count requires eventually full operands")
    bound = max(A.threshold, B.threshold)
    sa, sb = set(A.upto(bound)), set(B.upto(bound))
    if not sb <= sa:
        raise NotContained(f"second set is not contained in first: extra {sorted(sb - sa)[:5]}")
    return len(sa - sb)

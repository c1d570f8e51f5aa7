"""Numeric invariants of an m-primary ideal of a one-dimensional ring.

Multiplicity, Hilbert function, reduction number, index of nilpotency,
the K-invariant and its nu-sequence, embedding codimension, and the
general Cohen-Macaulay type.  "General" quantities are realized by
sampling elements with uniform nonzero coefficients over the working
field and insisting on multi-seed consensus; by semicontinuity the
general value is the minimum over specializations, so on disagreement
the minimum is returned with a GenericityWarning.
"""
from __future__ import annotations

import random
import warnings
from dataclasses import dataclass

from .engine import (
    Ideal,
    contains_ideal,
    ideal_colon,
    ideal_intersection,
    ideal_power,
    ideal_product,
    ideal_sum,
    length_quotient,
    length_vs_ring,
    membership,
    staircase,
)
from .errors import (
    BoundExceeded,
    ConsistencyFailure,
    GenericityWarning,
    InvalidInput,
    NotAReduction,
)
from .semigroup import vset_diff_count, vset_equal, vset_shift
from .series import TruncatedSeries, series_quotient

MAX_RESAMPLES = 5
DEFAULT_SAMPLES = 5


@dataclass(frozen=True)
class GeneralElementSample:
    """A certified general reduction x = sum lambda_j a_j of an ideal."""

    coefficients: tuple
    element: TruncatedSeries
    seed: int
    certified_r: int
    resamples: int


def _require_proper(I: Ideal):
    if I.min_valuation <= 0:
        raise InvalidInput("ideal must be proper and nonzero (m-primary)")


def sample_general_reduction(I: Ideal, seed: int = 0) -> GeneralElementSample:
    """Sample x with uniform nonzero coefficients and certify it reduces I.

    The certificate exhibits r <= e(I) with I^{r+1} = x I^r (staircase
    equality; containment is structural).  Degenerate draws, recognizable
    by a valuation drop or a failed certificate, are resampled with the
    count logged; five failures abort with NotAReduction.
    """
    _require_proper(I)
    ctx = I.ctx
    a = I.min_valuation
    for attempt in range(MAX_RESAMPLES):
        rng = random.Random(f"grlab:{ctx.seed}:{seed}:{attempt}")
        if ctx.p is not None:
            lam = tuple(rng.randrange(1, ctx.p) for _ in I.generators)
        else:
            lam = tuple(rng.randrange(1, 10**6) for _ in I.generators)
        x = ctx.zero()
        for c, g in zip(lam, I.generators):
            x = x + g.scale(c)
        if x.is_zero() or min(x.coeffs) != a:
            continue
        r = _certify_reduction(I, a)
        if r is not None:
            return GeneralElementSample(lam, x, seed, r, attempt)
    raise NotAReduction(
        f"no sampled element of {I.label()} certified as a reduction "
        f"after {MAX_RESAMPLES} attempts"
    )


def _certify_reduction(I: Ideal, a: int) -> int | None:
    # v(x * I^r) = a + v(I^r) exactly for any x of valuation a, so the
    # certificate is a staircase computation.
    for r in range(0, I.min_valuation + 2):
        big = staircase(ideal_power(I, r + 1))
        small = vset_shift(staircase(ideal_power(I, r)), a)
        if vset_equal(big, small):
            return r
    return None


def general_samples(I: Ideal, count: int = DEFAULT_SAMPLES) -> list[GeneralElementSample]:
    return [sample_general_reduction(I, seed) for seed in range(count)]


def consensus_value(values, label: str = "quantity"):
    """Common value of per-seed evaluations; min with a warning otherwise."""
    distinct = set(values)
    if len(distinct) == 1:
        return values[0], True
    warnings.warn(
        f"{label} disagreed across seeds: {list(values)}; "
        "taking the minimum (semicontinuity)",
        GenericityWarning,
        stacklevel=2,
    )
    return min(values), False


def general_value(quantity, I: Ideal, k_samples: int = DEFAULT_SAMPLES) -> int:
    """Evaluate a length-valued function of a sampled reduction on k seeds."""
    values = [quantity(s) for s in general_samples(I, k_samples)]
    value, _ = consensus_value(values, getattr(quantity, "__name__", "quantity"))
    return value


# -- classical invariants -----------------------------------------------------


def multiplicity(I: Ideal) -> int:
    """e(I) = lambda(R/xR) = v(x) for a reduction x; equals min v(I)."""
    _require_proper(I)
    return I.min_valuation


def reduction_number(I: Ideal, x: TruncatedSeries) -> int:
    """Least r with I^{r+1} = x I^r (staircase equality plus containment)."""
    a = int(x.valuation)
    if a != I.min_valuation:
        raise NotAReduction(f"v(x) = {a} != min v(I) = {I.min_valuation}")
    for r in range(0, multiplicity(I) + 2):
        if vset_equal(
            staircase(ideal_power(I, r + 1)),
            vset_shift(staircase(ideal_power(I, r)), a),
        ):
            return r
    raise BoundExceeded("no reduction number within e(I)+1 iterations")


def nilpotency_index(I: Ideal, x: TruncatedSeries) -> int:
    """Least s with I^{s+1} contained in (x)."""
    X = Ideal.principal(x)
    for s in range(0, multiplicity(I) + 2):
        if contains_ideal(X, ideal_power(I, s + 1)):
            return s
    raise BoundExceeded("no nilpotency index within e(I)+1 iterations")


def hilbert_function(I: Ideal, j_max: int | None = None):
    """(lambda(I^j/I^{j+1}))_{j=0..j_max} and the stabilization index.

    In dimension one the function stabilizes at e(I) from the reduction
    number on; that identity is asserted as an internal cross-check.
    """
    _require_proper(I)
    e = multiplicity(I)
    r = generic_reduction_number(I)
    if j_max is None:
        j_max = max(r, 1) + 1
    hf = [
        length_quotient(ideal_power(I, j), ideal_power(I, j + 1))
        for j in range(j_max + 1)
    ]
    for j in range(r, j_max + 1):
        if hf[j] != e:
            raise ConsistencyFailure(
                f"HF({j}) = {hf[j]} != e = {e} beyond the reduction number"
            )
    stab = r
    while stab > 0 and hf[stab - 1] == e:
        stab -= 1
    return hf, stab


def generic_reduction_number(I: Ideal) -> int:
    """Reduction number w.r.t. any valuation-minimal reduction (they agree)."""
    a = I.min_valuation
    for r in range(0, a + 2):
        if vset_equal(
            staircase(ideal_power(I, r + 1)),
            vset_shift(staircase(ideal_power(I, r)), a),
        ):
            return r
    raise BoundExceeded("no reduction number within e(I)+1 iterations")


def nu_sequence(I: Ideal, j_max: int | None = None) -> list[int]:
    """nu_j = lambda(I^{j+1} / x I^j) for j = 1..j_max.

    The staircase of x I^j is v(x) + v(I^j) exactly, for every reduction x,
    so the values are reduction-independent; the multi-seed suite
    cross-checks this identity on sampled reductions.
    """
    _require_proper(I)
    a = I.min_valuation
    if j_max is None:
        j_max = max(generic_reduction_number(I), 2)
    return [
        vset_diff_count(
            staircase(ideal_power(I, j + 1)),
            vset_shift(staircase(ideal_power(I, j)), a),
        )
        for j in range(1, j_max + 1)
    ]


def k_invariant(I: Ideal) -> int:
    """K = nu_1 + 1 = lambda(I^2 / x I) + 1."""
    return nu_sequence(I, 1)[0] + 1


def embedding_codim(I: Ideal) -> int:
    """h = lambda(I/I^2) - lambda(R/I)."""
    _require_proper(I)
    return length_quotient(I, ideal_power(I, 2)) - length_vs_ring(I)


# -- sampled (seed-dependent) quantities ----------------------------------------


def principal_ideal(x: TruncatedSeries) -> Ideal:
    return Ideal.principal(x)


def cm_type_wrt(I: Ideal, x: TruncatedSeries) -> int:
    """tau w.r.t. one reduction: lambda( ((x):I) cap I / (x) )."""
    X = Ideal.principal(x)
    C = ideal_colon(X, I)
    T = ideal_intersection(C, I)
    return length_quotient(T, X)


def cm_type(I: Ideal, k_samples: int = DEFAULT_SAMPLES) -> int:
    """The general Cohen-Macaulay type, by consensus over sampled reductions."""
    return general_value(lambda s: cm_type_wrt(I, s.element), I, k_samples)


def jstretch_length_wrt(I: Ideal, x: TruncatedSeries) -> int:
    """lambda(I^2 / (x I + I^3)): the j-stretchedness gauge at degree two."""
    U = ideal_sum(ideal_product(Ideal.principal(x), I), ideal_power(I, 3))
    return length_quotient(ideal_power(I, 2), U)


def bracket_length_wrt(I: Ideal, x: TruncatedSeries, j: int) -> int:
    """lambda(I^j / (x I^{j-1} + I^{j+1})) for j >= 1."""
    U = ideal_sum(
        ideal_product(Ideal.principal(x), ideal_power(I, j - 1)),
        ideal_power(I, j + 1),
    )
    return length_quotient(ideal_power(I, j), U)


def colon_by_principal(I_pow: Ideal, x: TruncatedSeries) -> Ideal:
    """{g : x g in I_pow}; (x) cap I_pow equals x times this ideal."""
    return ideal_colon(I_pow, Ideal.principal(x))


def intersection_colength_wrt(I: Ideal, x: TruncatedSeries) -> int:
    """lambda( ((x) cap I^2) / x I ).

    Since (x) cap I^2 = x * {g : xg in I^2} and lengths are staircase
    differences, this equals |v(colon(I^2, x)) \\ v(I)|.
    """
    C = colon_by_principal(ideal_power(I, 2), x)
    return vset_diff_count(staircase(C), staircase(I))


def vv_equality(I: Ideal, x: TruncatedSeries, j: int) -> bool:
    """(x) cap I^{j+1} = x I^j  (the Valabrega-Valla condition in degree j)."""
    if j == 0:
        return True  # (x) cap I = (x) because x lies in I
    C = colon_by_principal(ideal_power(I, j + 1), x)
    return vset_equal(staircase(C), staircase(ideal_power(I, j)))


def artinian_hf2_wrt(I: Ideal, x: TruncatedSeries) -> int:
    """lambda( (I^2 + (x)) / (I^3 + (x)) ): degree-2 Hilbert value mod (x)."""
    X = Ideal.principal(x)
    top = ideal_sum(ideal_power(I, 2), X)
    bot = ideal_sum(ideal_power(I, 3), X)
    return length_quotient(top, bot)


def in_principal_multiple(f: TruncatedSeries, x: TruncatedSeries, J: Ideal) -> bool:
    """Whether f lies in x*J, via exact division then membership in J."""
    if f.is_zero():
        return True
    W = J.membership_window() + 1
    q = series_quotient(f, x, W)
    if q is None:
        return False
    return membership(q, J)


def contained_in_principal_multiple(A: Ideal, x: TruncatedSeries, J: Ideal) -> bool:
    """Whether A is contained in x*J (generator by generator)."""
    return all(in_principal_multiple(g, x, J) for g in A.generators)

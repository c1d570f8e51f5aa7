"""Ideals of k[[t^S]] with computable valuation staircases.

The central device: for fractional ideals B <= A of this ring class,
lambda(A/B) equals the cardinality of v(A) \\ v(B).  Staircases of monomial
ideals are set arithmetic; staircases of ideals with dense generators are
pivot sets of row-reduced coefficient matrices.  All windows are sized so
that results are provably exact:

* every element of valuation >= min v(I) + conductor lies in I, hence
  membership, colon and intersection computed modulo t^window are exact
  once the window clears that bound;
* extracted colon/intersection generators are genuine polynomial elements
  of the result, not truncations.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import (
    ContextMismatch,
    InvalidInput,
    NoStabilization,
    NotContained,
    PrecisionSuspect,
    ZeroDivisor,
)
from .linalg import EchelonBasis, echelon_from_rows, left_kernel
from .semigroup import (
    NumericalSemigroup,
    ValuationSet,
    vset_contains,
    vset_diff_count,
    vset_equal,
    vset_from_semigroup,
    vset_of_monomial_ideal,
    vset_shift,
    vset_union,
)
from .series import RingContext, TruncatedSeries, quotient_support_ok

PRUNE_THRESHOLD = 8  # prune dense generator lists only past this size


class Ideal:
    """Finitely generated ideal with a cached staircase.

    Only the caches mutate after construction, and they are idempotent:
    concurrent recomputation yields identical values.
    """

    def __init__(self, ctx: RingContext, generators, is_monomial=None, _shift_base=None):
        gens = tuple(g for g in generators if not g.is_zero())
        if not gens:
            raise InvalidInput("the zero ideal is not supported")
        for g in gens:
            if not g.ctx.compatible(ctx):
                raise ContextMismatch("generator from a different context")
        self.ctx = ctx
        self.generators = gens
        if is_monomial is None:
            is_monomial = all(len(g.coeffs) == 1 for g in gens)
        self.is_monomial = is_monomial
        # (shift, base ideal) when this ideal is a principal multiple of base
        self._shift_base = _shift_base
        self._staircase: ValuationSet | None = None
        self._powers: dict[int, "Ideal"] = {}
        self._echelons: dict[int, EchelonBasis] = {}

    # -- constructors ---------------------------------------------------------
    @staticmethod
    def from_exponents(ctx: RingContext, exps) -> "Ideal":
        exps = sorted(set(int(e) for e in exps))
        return Ideal(ctx, tuple(ctx.monomial(e) for e in exps), is_monomial=True)

    @staticmethod
    def principal(x: TruncatedSeries) -> "Ideal":
        return Ideal(x.ctx, (x,))

    @staticmethod
    def unit(ctx: RingContext) -> "Ideal":
        return Ideal.from_exponents(ctx, [0])

    # -- basic queries ----------------------------------------------------------
    @property
    def min_valuation(self) -> int:
        return min(int(g.valuation) for g in self.generators)

    @property
    def is_principal(self) -> bool:
        return len(self.generators) == 1

    def is_unit(self) -> bool:
        return 0 in staircase(self)

    def is_proper_nonzero(self) -> bool:
        return self.min_valuation > 0

    def label(self) -> str:
        if self.is_monomial:
            return ",".join(str(int(g.valuation)) for g in self.generators)
        return "<" + "; ".join(repr(g) for g in self.generators) + ">"

    def __repr__(self) -> str:
        return f"Ideal({self.label()})"

    # -- linear algebra plumbing ------------------------------------------------
    def _require_window(self, window: int, what: str):
        if window > self.ctx.precision:
            raise PrecisionSuspect(window, self.ctx.precision, what)

    def rows_for_window(self, window: int):
        """Truncations of t^s * g for all generators g and s in S."""
        S = self.ctx.semigroup
        rows = []
        for g in self.generators:
            v = int(g.valuation)
            if v >= window:
                continue
            for s in S.elements_below(window - v):
                row = [0] * window
                for e, c in g.coeffs.items():
                    t = e + s
                    if t < window:
                        row[t] = c
                rows.append((v + s, row))
        rows.sort(key=lambda pair: pair[0])
        if self.ctx.p is not None:
            return [np.array(r, dtype=np.int64) for _, r in rows]
        return [[Fraction(c) for c in r] for _, r in rows]

    def echelon(self, window: int) -> EchelonBasis:
        """Row-echelon basis of the ideal's image in k[t]/t^window (cached)."""
        if window not in self._echelons:
            self._require_window(window, f"echelon of {self.label()}")
            self._echelons[window] = echelon_from_rows(
                self.rows_for_window(window), window, self.ctx.p
            )
        return self._echelons[window]

    def membership_window(self) -> int:
        return self.min_valuation + self.ctx.semigroup.conductor


def staircase(I: Ideal) -> ValuationSet:
    """The set of valuations of elements of I, with a provable threshold.

    Eventual fullness holds above min v(I) + conductor.  Monomial ideals and
    principal multiples use set arithmetic; the general case row-reduces the
    generator-multiple matrix and reads off pivot columns.
    """
    if I._staircase is not None:
        return I._staircase
    S = I.ctx.semigroup
    a = I.min_valuation
    if I.is_monomial:
        vs = vset_of_monomial_ideal(S, [int(g.valuation) for g in I.generators])
    elif I._shift_base is not None:
        shift, base = I._shift_base
        vs = vset_shift(staircase(base), shift)
    elif I.is_principal:
        vs = vset_shift(vset_from_semigroup(S), a)
    else:
        vs = _staircase_by_reduction(I, a + S.conductor)
    I._staircase = vs
    return vs


def _staircase_by_reduction(I: Ideal, threshold: int) -> ValuationSet:
    margin = 2  # look slightly past the threshold as a fullness tripwire
    window = threshold + margin
    I._require_window(window, f"staircase of {I.label()}")
    pivots = I.echelon(window).pivots
    if set(range(threshold, window)) - set(pivots):
        raise NoStabilization(
            f"staircase of {I.label()} not full above provable threshold"
        )
    return ValuationSet(
        tuple(p for p in pivots if p < threshold), threshold, True
    )


def staircase_at_window(I: Ideal, window: int) -> list[int]:
    """Pivot valuations below `window` (precision-robustness probe)."""
    I._require_window(window, "staircase probe")
    return list(I.echelon(window).pivots)


# -- membership and containment --------------------------------------------------


def membership(f: TruncatedSeries, I: Ideal) -> bool:
    """Exact test for f in I.

    Works modulo t^W for W = min v(I) + conductor: every series of valuation
    >= W lies in I, so the verdict on the truncated head is the true verdict.
    """
    if f.is_zero():
        return True
    if not f.ctx.compatible(I.ctx):
        raise ContextMismatch("element and ideal from different contexts")
    if I.is_monomial:
        vs = staircase(I)
        return all(e in vs for e in f.coeffs)
    if I.is_principal:
        return quotient_support_ok(f, I.generators[0])
    W = I.membership_window()
    if min(f.coeffs) >= W:
        return True
    if f.precision < W:
        raise PrecisionSuspect(W, f.precision, "membership head")
    I._require_window(W, "membership")
    res = I.echelon(W).reduce(f.coeff_vector(W))
    if I.ctx.p is not None:
        return not res.any()
    return all(c == 0 for c in res)


def contains_ideal(I: Ideal, J: Ideal) -> bool:
    """Whether J is contained in I (generator-by-generator membership)."""
    return all(membership(g, I) for g in J.generators)


# -- arithmetic of ideals ---------------------------------------------------------


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    if not I.ctx.compatible(J.ctx):
        raise ContextMismatch("ideal sum across contexts")
    out = Ideal(I.ctx, I.generators + J.generators, is_monomial=I.is_monomial and J.is_monomial)
    return _prune(out)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    if not I.ctx.compatible(J.ctx):
        raise ContextMismatch("ideal product across contexts")
    gens = []
    seen = set()
    for gi in I.generators:
        for gj in J.generators:
            g = gi * gj
            if g.is_zero():
                # nonzero factors: the product lives entirely beyond the
                # truncation order, so the context is too small
                needed = int(gi.valuation) + int(gj.valuation)
                raise PrecisionSuspect(
                    needed + I.ctx.semigroup.conductor + 2,
                    I.ctx.precision,
                    "ideal product",
                )
            key = tuple(sorted(g.coeffs.items()))
            if key not in seen:
                seen.add(key)
                gens.append(g)
    shift = None
    if I.is_principal:
        shift = (int(I.generators[0].valuation), J)
    elif J.is_principal:
        shift = (int(J.generators[0].valuation), I)
    out = Ideal(
        I.ctx, tuple(gens), is_monomial=I.is_monomial and J.is_monomial, _shift_base=shift
    )
    return _prune(out)


def ideal_power(I: Ideal, j: int) -> Ideal:
    """I^j with caching; I^0 is the unit ideal."""
    if j < 0:
        raise InvalidInput("negative ideal power")
    if j == 0:
        return Ideal.unit(I.ctx)
    if j == 1:
        return I
    if j not in I._powers:
        I._powers[j] = ideal_product(ideal_power(I, j - 1), I)
    return I._powers[j]


def _prune(I: Ideal) -> Ideal:
    """Drop generators that are provably redundant.

    A generator goes only when the remaining ones have the same staircase
    and it passes membership in the ideal they generate.  Monomial ideals
    reduce to staircase bookkeeping; dense lists are pruned only once they
    grow past PRUNE_THRESHOLD.
    """
    if I.is_monomial:
        exps = sorted(set(int(g.valuation) for g in I.generators))
        S = I.ctx.semigroup
        kept: list[int] = []
        for e in exps:
            if not any(e - k in S for k in kept):
                kept.append(e)
        if len(kept) == len(I.generators):
            return I
        return Ideal.from_exponents(I.ctx, kept)
    if len(I.generators) <= PRUNE_THRESHOLD:
        return I
    gens = list(I.generators)
    target = staircase(I)
    changed = True
    while changed and len(gens) > 1:
        changed = False
        for idx in range(len(gens) - 1, -1, -1):
            rest = gens[:idx] + gens[idx + 1 :]
            cand = Ideal(I.ctx, rest, is_monomial=False)
            if vset_equal(staircase(cand), target) and membership(gens[idx], cand):
                gens = rest
                changed = True
                break
    out = Ideal(I.ctx, tuple(gens), is_monomial=False, _shift_base=I._shift_base)
    out._staircase = target
    return out


# -- lengths ----------------------------------------------------------------------


def length_quotient(I: Ideal, J: Ideal) -> int:
    """lambda(I/J) for J <= I, as a staircase difference count.

    Callers guarantee genuine containment (it is structural at every call
    site); the staircase-level containment is still verified and a violation
    raises NotContained.
    """
    try:
        return vset_diff_count(staircase(I), staircase(J))
    except NotContained:
        raise NotContained(
            f"quotient {I.label()} / {J.label()} is not a containment"
        )


def length_vs_ring(I: Ideal) -> int:
    """lambda(R/I)."""
    return vset_diff_count(vset_from_semigroup(I.ctx.semigroup), staircase(I))


# -- colon, intersection, closure --------------------------------------------------


def ideal_colon(I: Ideal, J: Ideal) -> Ideal:
    """(I : J) = {f in R : f*J <= I}, exact.

    Solves, over the truncated monomial basis of R, the linear conditions
    "f * g lies in I modulo t^Wc" for every generator g of J; with
    Wc = min v(I) + conductor these conditions are exact, so the kernel
    consists of genuine colon elements.
    """
    if not I.ctx.compatible(J.ctx):
        raise ContextMismatch("colon across contexts")
    if all(g.is_zero() for g in J.generators):
        raise ZeroDivisor("colon by the zero ideal")
    S = I.ctx.semigroup
    c = S.conductor
    if I.is_monomial and J.is_monomial:
        vi = staircase(I)
        j_exps = [int(g.valuation) for g in J.generators]
        # bound clears (min of the colon) + conductor, so all corners appear
        bound = I.min_valuation + 2 * c + 2
        members = [
            s for s in S.elements_below(bound) if all(s + b in vi for b in j_exps)
        ]
        corner = _corners(members, S)
        return Ideal.from_exponents(I.ctx, corner)

    Wc = I.membership_window()
    Wf = I.min_valuation + c + 1
    I._require_window(max(Wc, Wf), "colon")
    basis = I.echelon(Wc)
    p = I.ctx.p
    mono_exps = S.elements_below(Wf)
    rows = []
    for s in mono_exps:
        parts = []
        for g in J.generators:
            shifted = {e + s: cv for e, cv in g.coeffs.items() if e + s < Wc}
            vec = [0] * Wc
            for e, cv in shifted.items():
                vec[e] = cv
            parts.append(basis.reduce(vec))
        if p is not None:
            rows.append(np.concatenate(parts))
        else:
            row = []
            for part in parts:
                row.extend(part)
            rows.append(row)
    kernel = left_kernel(rows, len(rows[0]) if rows else 0, p)
    gens = _series_from_kernel(I.ctx, kernel, mono_exps)
    if not gens:
        raise NoStabilization("colon produced no elements below its window")
    return _ideal_from_elements(I.ctx, gens, Wf)


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """I cap J via the Zassenhaus trick on truncated row spaces, exact."""
    if not I.ctx.compatible(J.ctx):
        raise ContextMismatch("intersection across contexts")
    S = I.ctx.semigroup
    if I.is_monomial and J.is_monomial:
        vi, vj = staircase(I), staircase(J)
        bound = I.min_valuation + J.min_valuation + 2 * S.conductor + 2
        members = sorted(set(vi.upto(bound)) & set(vj.upto(bound)))
        corner = _corners(members, S)
        return Ideal.from_exponents(I.ctx, corner)
    W = I.min_valuation + J.min_valuation + S.conductor + 1
    I._require_window(W, "intersection")
    p = I.ctx.p
    rows = []
    for lead, row in _tagged_rows(I, W):
        rows.append((lead, _hstack(row, row, p)))
    zeros = [0] * W
    for lead, row in _tagged_rows(J, W):
        rows.append((lead, _hstack(row, zeros, p)))
    rows.sort(key=lambda pr: pr[0])
    basis = EchelonBasis(2 * W, p)
    members = []
    for _, row in rows:
        res = basis.reduce(row)
        left = res[:W]
        if (left.any() if p is not None else any(left)):
            basis.insert(res)
        else:
            right = res[W:]
            if (right.any() if p is not None else any(right)):
                members.append(list(right))
    gens = _echelon_to_series(I.ctx, members, W)
    if not gens:
        raise NoStabilization("intersection produced no elements below its window")
    return _ideal_from_elements(I.ctx, gens, W)


def ratliff_rush(I: Ideal) -> Ideal:
    """The Ratliff-Rush closure: the stable value of (I^{n+1} : I^n).

    The chain is increasing, so staircase equality of consecutive colons
    certifies stabilization.  Bails out past e(I) + 2 steps (should not
    happen for the modeled ring class).
    """
    if I.is_unit():
        return I
    e_bound = I.min_valuation
    prev = ideal_colon(ideal_power(I, 2), I)
    for n in range(2, e_bound + 3):
        cur = ideal_colon(ideal_power(I, n + 1), ideal_power(I, n))
        if vset_equal(staircase(cur), staircase(prev)):
            return cur
        prev = cur
    raise NoStabilization("Ratliff-Rush chain did not stabilize within e(I)+2 steps")


# -- helpers ------------------------------------------------------------------------


def _hstack(a, b, p):
    if p is not None:
        return np.concatenate(
            [np.array(a, dtype=np.int64), np.array(b, dtype=np.int64)]
        )
    return list(a) + list(b)


def _tagged_rows(I: Ideal, window: int):
    S = I.ctx.semigroup
    out = []
    for g in I.generators:
        v = int(g.valuation)
        if v >= window:
            continue
        for s in S.elements_below(window - v):
            row = [0] * window
            for e, cv in g.coeffs.items():
                t = e + s
                if t < window:
                    row[t] = cv
            out.append((v + s, row))
    return out


def _corners(members, S: NumericalSemigroup) -> list[int]:
    """Minimal generators of a staircase: members not reachable from an
    earlier corner by a semigroup shift (S is additively closed, so testing
    against accumulated corners is equivalent to testing against all members)."""
    out: list[int] = []
    for w in sorted(set(members)):
        if not any((w - u) in S for u in out):
            out.append(w)
    return out


def _series_from_kernel(ctx: RingContext, kernel, mono_exps) -> list[TruncatedSeries]:
    """Kernel combination vectors -> polynomial elements on those monomials."""
    out = []
    for vec in kernel:
        coeffs = {}
        for idx, c in enumerate(vec):
            c = ctx.normalize(c)
            if c != 0:
                coeffs[mono_exps[idx]] = c
        if coeffs:
            out.append(ctx.series(coeffs))
    return out


def _echelon_to_series(ctx: RingContext, vectors, width: int) -> list[TruncatedSeries]:
    out = []
    for vec in vectors:
        coeffs = {}
        for e in range(width):
            c = ctx.normalize(vec[e])
            if c != 0:
                coeffs[e] = c
        if coeffs:
            out.append(ctx.series(coeffs))
    return out


def _ideal_from_elements(
    ctx: RingContext, elements: list[TruncatedSeries], width: int
) -> Ideal:
    """Ideal generated by exact elements, keeping one generator per staircase
    corner.  The corner set provably generates (descend on valuations, using
    fullness above min valuation + conductor)."""
    basis = echelon_from_rows(
        [
            np.array(g.coeff_vector(width), dtype=np.int64)
            if ctx.p is not None
            else g.coeff_vector(width)
            for g in elements
        ],
        width,
        ctx.p,
    )
    pivots = basis.pivots
    S = ctx.semigroup
    corner = set(_corners(pivots, S))
    gens = []
    for pivot in pivots:
        if pivot in corner:
            row = basis.rows[pivot]
            coeffs = {
                e: ctx.normalize(row[e]) for e in range(width) if ctx.normalize(row[e]) != 0
            }
            gens.append(ctx.series(coeffs))
    out = Ideal(ctx, tuple(gens))
    threshold = (pivots[0] if pivots else 0) + S.conductor
    out._staircase = ValuationSet(
        tuple(p_ for p_ in pivots if p_ < threshold), threshold, True
    )
    return out

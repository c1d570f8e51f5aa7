"""Exact truncated power series in k[[t^S]].

Coefficients live in an exact field: a prime field F_p (default p = 65537,
a desk-scale stand-in for an infinite residue field) or the rationals.
Every series carries its own truncation order; all inputs are exact
polynomials, so precision only limits how far internal computations look.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    ContextMismatch,
    InvalidInput,
    NotInRing,
    PrecisionSuspectWarning,
)
from .semigroup import NumericalSemigroup

INF = math.inf


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class RingContext:
    """Desk-scale model of the local ring (k[[t^S]], m).

    `p` is an odd prime for F_p coefficients, or None for rationals.
    `precision` caps every truncation window used under this context.
    """

    semigroup: NumericalSemigroup
    p: int | None
    precision: int
    seed: int = 0

    def __post_init__(self):
        if self.p is not None:
            if self.p == 2 or not _is_prime(self.p):
                raise InvalidInput(f"field order must be an odd prime, got {self.p}")
        if self.precision <= self.semigroup.conductor:
            raise InvalidInput("precision must exceed the conductor")

    # -- coefficient helpers ------------------------------------------------
    def normalize(self, c):
        if self.p is not None:
            return int(c) % self.p
        return Fraction(c)

    def inv(self, c):
        if self.p is not None:
            return pow(int(c) % self.p, self.p - 2, self.p)
        return 1 / Fraction(c)

    def compatible(self, other: "RingContext") -> bool:
        return (
            self.semigroup == other.semigroup
            and self.p == other.p
            and self.precision == other.precision
        )

    # -- element constructors ----------------------------------------------
    def series(self, coeffs: dict[int, object], precision: int | None = None) -> "TruncatedSeries":
        return TruncatedSeries.make(self, coeffs, precision)

    def monomial(self, exp: int, coeff=1) -> "TruncatedSeries":
        return self.series({exp: coeff})

    def zero(self) -> "TruncatedSeries":
        return self.series({})

    def one(self) -> "TruncatedSeries":
        return self.series({0: 1})

    def with_precision(self, precision: int) -> "RingContext":
        return RingContext(self.semigroup, self.p, precision, self.seed)


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """An element of k[[t^S]] known modulo t^precision.

    Stored coefficients are nonzero, have exponents in S, and lie below the
    truncation order.
    """

    ctx: RingContext
    coeffs: dict[int, object]
    precision: int

    @staticmethod
    def make(ctx: RingContext, coeffs: dict[int, object], precision: int | None = None) -> "TruncatedSeries":
        if precision is None:
            precision = ctx.precision
        S = ctx.semigroup
        clean = {}
        for e, c in coeffs.items():
            e = int(e)
            if e >= precision:
                continue
            c = ctx.normalize(c)
            if c == 0:
                continue
            if e < 0 or e not in S:
                raise NotInRing(f"exponent {e} is not in the semigroup")
            clean[e] = c
        return TruncatedSeries(ctx, clean, precision)

    # -- basic queries -------------------------------------------------------
    @property
    def valuation(self):
        """Minimal exponent of the support; +inf for the zero truncation."""
        if not self.coeffs:
            return INF
        v = min(self.coeffs)
        if v >= self.precision - self.ctx.semigroup.conductor:
            warnings.warn(
                f"valuation {v} within a conductor of truncation order "
                f"{self.precision}",
                PrecisionSuspectWarning,
                stacklevel=2,
            )
        return v

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading_coeff(self):
        return self.coeffs[min(self.coeffs)]

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.ctx.compatible(other.ctx)
            and self.coeffs == other.coeffs
            and self.precision == other.precision
        )

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*t^{e}" for e, c in sorted(self.coeffs.items()))

    # -- arithmetic ----------------------------------------------------------
    def _check(self, other: "TruncatedSeries"):
        if not self.ctx.compatible(other.ctx):
            raise ContextMismatch("operands from different ring contexts")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        prec = min(self.precision, other.precision)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return TruncatedSeries.make(self.ctx, out, prec)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries.make(
            self.ctx, {e: -c for e, c in self.coeffs.items()}, self.precision
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return TruncatedSeries.make(self.ctx, {}, self.ctx.precision)
        vf = min(self.coeffs)
        vg = min(other.coeffs)
        prec = min(self.precision + vg, other.precision + vf, self.ctx.precision)
        out: dict[int, object] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e < prec:
                    out[e] = out.get(e, 0) + c1 * c2
        return TruncatedSeries.make(self.ctx, out, prec)

    def scale(self, c) -> "TruncatedSeries":
        c = self.ctx.normalize(c)
        return TruncatedSeries.make(
            self.ctx, {e: c * v for e, v in self.coeffs.items()}, self.precision
        )

    def coeff_vector(self, width: int) -> list:
        """Dense coefficient list on [0, width)."""
        vec = [0] * width
        for e, c in self.coeffs.items():
            if e < width:
                vec[e] = c
        return vec


def series_add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f + g


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f * g


def series_valuation(f: TruncatedSeries):
    return f.valuation


def series_quotient(
    f: TruncatedSeries, g: TruncatedSeries, upto: int
) -> TruncatedSeries | None:
    """f/g truncated at t^upto when the quotient lies in the ring, else None.

    Long division in k((t)); support violations can only occur below
    v(f) - v(g) + conductor, so the in-ring verdict is exact even though
    the returned series is truncated.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by zero series")
    ctx = f.ctx
    if f.is_zero():
        return ctx.zero()
    S = ctx.semigroup
    vf, vg = min(f.coeffs), min(g.coeffs)
    if vf < vg:
        return None
    if f.precision < upto + vg:
        raise PrecisionSuspect(upto + vg, f.precision, "series quotient")
    stop = vf - vg + S.conductor
    ginv_lead = ctx.inv(g.coeffs[vg])
    rem = dict(f.coeffs)
    quot: dict[int, object] = {}
    while rem:
        e = min(rem)
        q_exp = e - vg
        if q_exp >= upto and q_exp >= stop:
            break
        if q_exp < stop and q_exp not in S:
            return None
        q_coeff = ctx.normalize(rem[e] * ginv_lead)
        if q_exp < upto:
            quot[q_exp] = q_coeff
        for ge, gc in g.coeffs.items():
            tgt = q_exp + ge
            rem[tgt] = ctx.normalize(rem.get(tgt, 0) - q_coeff * gc)
            if rem[tgt] == 0:
                del rem[tgt]
    return TruncatedSeries.make(ctx, quot, min(upto, ctx.precision))


def quotient_support_ok(f: TruncatedSeries, g: TruncatedSeries) -> bool:
    """Whether f/g lies in the ring, i.e. the quotient's support stays in S.

    Uses long division in k((t)).  Exponents of f/g at or beyond
    v(f) - v(g) + conductor are automatically in S, so only a conductor-wide
    window of quotient terms needs checking.  Exact for polynomial inputs.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by zero series")
    if f.is_zero():
        return True
    ctx = f.ctx
    S = ctx.semigroup
    vf, vg = min(f.coeffs), min(g.coeffs)
    if vf < vg:
        return False
    if f.precision < vf + S.conductor + 1:
        raise PrecisionSuspect(vf + S.conductor + 1, f.precision, "series division")
    stop = vf - vg + S.conductor  # exponents >= stop are in S regardless
    rem = dict(f.coeffs)
    ginv_lead = ctx.inv(g.coeffs[vg])
    while rem:
        e = min(rem)
        q_exp = e - vg
        if q_exp >= stop:
            return True
        if q_exp not in S:
            return False
        q_coeff = ctx.normalize(rem[e] * ginv_lead)
        for ge, gc in g.coeffs.items():
            tgt = q_exp + ge
            rem[tgt] = ctx.normalize(rem.get(tgt, 0) - q_coeff * gc)
            if rem[tgt] == 0:
                del rem[tgt]
    return True

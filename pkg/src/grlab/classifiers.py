"""Stretchedness classes and executable theorem cross-checks.

Every check recomputes both sides of its statement independently and
reports one of three verdicts: "consistent", "falsified", or
"skipped:<reason>" when the hypotheses are not met.  Checks whose
published form needs the intersection condition (x) cap I^2 = x I to hold
(the K power laws, the Valabrega-Valla biconditional, and the witness
clause of the Cohen-Macaulayness criterion) are gated on it; on inputs
failing the condition the raw observations are still recorded.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .engine import (
    Ideal,
    contains_ideal,
    ideal_intersection,
    ideal_power,
    ideal_product,
    membership,
    staircase,
)
from .errors import GenericityWarning, HypothesisNotMet, InvalidInput
from .invariants import (
    DEFAULT_SAMPLES,
    GeneralElementSample,
    artinian_hf2_wrt,
    bracket_length_wrt,
    cm_type_wrt,
    consensus_value,
    contained_in_principal_multiple,
    embedding_codim,
    general_samples,
    generic_reduction_number,
    intersection_colength_wrt,
    jstretch_length_wrt,
    k_invariant,
    length_vs_ring,
    multiplicity,
    nilpotency_index,
    nu_sequence,
    vv_equality,
)
from .semigroup import vset_equal
from .series import TruncatedSeries

CONSISTENT = "consistent"
FALSIFIED = "falsified"


def skipped(reason: str) -> str:
    return f"skipped:{reason}"


# -- elementary classifiers ------------------------------------------------------


def is_j_stretched(I: Ideal, samples=None) -> bool:
    """lambda(I^2/(xI + I^3)) <= 1 for a general reduction x."""
    samples = samples or general_samples(I)
    values = [jstretch_length_wrt(I, s.element) for s in samples]
    value, _ = consensus_value(values, "lambda(I^2/(xI+I^3))")
    return value <= 1


def jmult_class(I: Ideal, nu1: int | None = None) -> str:
    """Multiplicity class from nu_1 = lambda(I^2/xI): 0, 1, 2, or more."""
    if nu1 is None:
        nu1 = nu_sequence(I, 1)[0]
    if nu1 == 0:
        return "minimal"
    if nu1 == 1:
        return "almost_minimal"
    if nu1 == 2:
        return "almost_almost"
    return "none"


def is_stretched_wrt(I: Ideal, x: TruncatedSeries) -> bool:
    """Stretchedness w.r.t. one reduction (x).

    (a) (x) cap I^2 = x I,  (b) lambda((I^2+(x))/(I^3+(x))) <= 1.
    """
    if I.is_unit() or I.min_valuation <= 0:
        raise InvalidInput("stretchedness is defined for proper nonzero ideals")
    if not membership(x, I):
        raise HypothesisNotMet("candidate reduction does not lie in the ideal")
    if intersection_colength_wrt(I, x) != 0:
        return False
    return artinian_hf2_wrt(I, x) <= 1


def is_stretched_general(I: Ideal, samples=None) -> bool:
    """Stretchedness w.r.t. general reductions, by consensus over seeds."""
    samples = samples or general_samples(I)
    values = [is_stretched_wrt(I, s.element) for s in samples]
    if len(set(values)) > 1:
        warnings.warn(
            "stretchedness disagreed across seeds; taking the generic "
            "(open-condition) value",
            GenericityWarning,
            stacklevel=2,
        )
        return True
    return values[0]


def vv_regular_check(I: Ideal, x: TruncatedSeries, r: int | None = None) -> bool:
    """Initial form of x regular on the associated graded module:
    (x) cap I^{j+1} = x I^j for all j (checked through r+1; beyond the
    reduction number the equality is automatic)."""
    if r is None:
        r = generic_reduction_number(I)
    return all(vv_equality(I, x, j) for j in range(0, r + 2))


def gr_depth_dim1(I: Ideal, samples=None, r: int | None = None) -> int:
    """Depth of the associated graded ring in dimension one: 0 or 1."""
    samples = samples or general_samples(I)
    values = [vv_regular_check(I, s.element, r) for s in samples]
    if len(set(values)) > 1:
        warnings.warn(
            "graded-depth verdict disagreed across seeds; regularity of the "
            "initial form is an open condition, taking depth 1",
            GenericityWarning,
            stacklevel=2,
        )
        return 1
    return 1 if values[0] else 0


# -- classification record ---------------------------------------------------------


@dataclass
class Classification:
    is_j_stretched: bool
    jmult_class: str
    has_min_jmult: bool
    has_almost_min_jmult: bool
    has_almost_almost_min_jmult: bool
    stretched_wrt: dict
    stretched_general: bool
    gr_depth: int
    gr_is_CM: bool
    intersection_property_general: bool
    theorem_cm_consistent: str
    corollary47_consistent: str
    smalltype_consistent: str
    sally_consistent: str
    equiv_consistent: str
    k_power_laws: str
    vv_biconditional: str
    notes: list = field(default_factory=list)

    def verdicts(self) -> dict:
        return {
            "theorem_cm": self.theorem_cm_consistent,
            "corollary47": self.corollary47_consistent,
            "smalltype": self.smalltype_consistent,
            "sally": self.sally_consistent,
            "equiv": self.equiv_consistent,
            "k_power_laws": self.k_power_laws,
            "vv_biconditional": self.vv_biconditional,
        }

    def falsified(self) -> list[str]:
        return [name for name, v in self.verdicts().items() if v == FALSIFIED]

    def to_dict(self) -> dict:
        return {
            "is_j_stretched": self.is_j_stretched,
            "jmult_class": self.jmult_class,
            "has_min_jmult": self.has_min_jmult,
            "has_almost_min_jmult": self.has_almost_min_jmult,
            "has_almost_almost_min_jmult": self.has_almost_almost_min_jmult,
            "stretched_wrt": dict(self.stretched_wrt),
            "stretched_general": self.stretched_general,
            "gr_depth": self.gr_depth,
            "gr_is_CM": self.gr_is_CM,
            "intersection_property_general": self.intersection_property_general,
            "checks": self.verdicts(),
            "notes": list(self.notes),
        }


# -- theorem cross-checks ------------------------------------------------------------


def theorem_cm_crosscheck(
    I: Ideal,
    *,
    j_stretched: bool,
    depth: int,
    r_general: int,
    s_general: int,
    K: int,
    intersection_property: bool,
) -> tuple[str, dict]:
    """Cohen-Macaulayness criterion: (a) depth 1, (b) r = s, (c) witnessed
    I^{K+1} = H I^K.

    (a) <=> (b) is checked unconditionally.  The witness clause is
    equivalent to r <= K and is tied to (b) only where the intersection
    property holds (its proof runs through the K power laws).
    """
    detail = {}
    if not j_stretched:
        return skipped("not j-stretched"), detail
    a = depth == 1
    b = r_general == s_general
    c = r_general <= K  # any valuation-minimal reduction then witnesses
    detail = {"depth_is_1": a, "r_eq_s": b, "witness_exists": c}
    if a != b:
        return FALSIFIED, detail
    if intersection_property and (c != b):
        return FALSIFIED, detail
    if not intersection_property:
        detail["witness_clause"] = "recorded only (intersection property fails)"
    return CONSISTENT, detail


def corollary47_check(
    I: Ideal,
    samples,
    *,
    j_stretched: bool,
    K: int,
    nu: list[int],
) -> tuple[str, dict]:
    """I^{K+1} <= x I^{K-1} if and only if lambda(I^K / x I^{K-1}) = 1."""
    if not j_stretched:
        return skipped("not j-stretched"), {}
    if K < 2:
        return skipped("minimal j-multiplicity"), {}
    rhs = nu[K - 2] == 1 if K - 2 < len(nu) else False  # nu_{K-1} = lambda(I^K/xI^{K-1})
    lhs_vals = []
    for s in samples:
        lhs_vals.append(
            contained_in_principal_multiple(
                ideal_power(I, K + 1), s.element, ideal_power(I, K - 1)
            )
        )
    lhs, _ = consensus_value(lhs_vals, "I^{K+1} <= xI^{K-1}")
    detail = {"lhs_containment": bool(lhs), "rhs_length_is_1": rhs}
    return (CONSISTENT if bool(lhs) == rhs else FALSIFIED), detail


def smalltype_check(
    I: Ideal,
    samples,
    *,
    j_stretched: bool,
    K: int,
    tau: int,
    h: int,
    lam_r_mod_i: int,
    nu: list[int],
    intersection_property: bool,
) -> tuple[str, dict]:
    """Small general type forces nu_2 = K - 2 and (x) cap I^3 = x I^2."""
    if not j_stretched:
        return skipped("not j-stretched"), {}
    if K < 2:
        return skipped("minimal j-multiplicity"), {}
    if not intersection_property:
        return skipped("intersection property fails"), {}
    if not tau < h + 1 - lam_r_mod_i:
        return skipped("type not small"), {}
    nu2 = nu[1] if len(nu) > 1 else 0
    vv2_vals = [vv_equality(I, s.element, 2) for s in samples]
    vv2, _ = consensus_value(vv2_vals, "(x) cap I^3 = xI^2")
    detail = {"nu2": nu2, "K_minus_2": K - 2, "vv_degree_2": bool(vv2)}
    ok = (nu2 == K - 2) and bool(vv2)
    return (CONSISTENT if ok else FALSIFIED), detail


def sally_question_check(
    I: Ideal,
    samples,
    stretched_wrt_named: dict,
    stretched_per_sample: list[bool],
) -> tuple[str, dict]:
    """Stretched w.r.t. some tested reduction => stretched w.r.t. every
    sampled general reduction."""
    witnesses = [label for label, v in stretched_wrt_named.items() if v]
    if not witnesses:
        return skipped("no stretched witness among tested reductions"), {}
    detail = {"witnesses": witnesses, "per_sample": stretched_per_sample}
    return (CONSISTENT if all(stretched_per_sample) else FALSIFIED), detail


def equiv_check(
    *, gr_is_CM: bool, j_stretched: bool, stretched_general: bool
) -> tuple[str, dict]:
    """With a Cohen-Macaulay associated graded ring, stretched and
    j-stretched coincide."""
    if not gr_is_CM:
        return skipped("gr not Cohen-Macaulay"), {}
    detail = {"j_stretched": j_stretched, "stretched_general": stretched_general}
    return (CONSISTENT if j_stretched == stretched_general else FALSIFIED), detail


def k_power_laws_check(
    I: Ideal,
    samples,
    *,
    j_stretched: bool,
    K: int,
    s_general: int,
    intersection_property: bool,
) -> tuple[str, dict]:
    """K power laws: I^{K+1} <= (x) always; I^K not <= (x), i.e. s = K,
    where the intersection property holds."""
    detail = {"K": K, "s_general": s_general, "s_le_K": s_general <= K}
    if not j_stretched:
        return skipped("not j-stretched"), detail
    if K < 2:
        return skipped("minimal j-multiplicity"), detail
    if s_general > K:
        return FALSIFIED, detail  # violates the unconditional bound s <= K
    if not intersection_property:
        return skipped("intersection property fails"), detail
    return (CONSISTENT if s_general == K else FALSIFIED), detail


def vv_biconditional_check(
    I: Ideal,
    samples,
    *,
    j_stretched: bool,
    K: int,
    intersection_property: bool,
) -> tuple[str, dict]:
    """For j = 1..K: I^{K+1} <= x I^j  <=>  (x) cap I^{n+1} = x I^n for n <= j."""
    if not j_stretched:
        return skipped("not j-stretched"), {}
    if K < 2:
        return skipped("minimal j-multiplicity"), {}
    if not intersection_property:
        return skipped("intersection property fails"), {}
    table = {}
    for s in samples:
        vv = {n: vv_equality(I, s.element, n) for n in range(0, K + 1)}
        for j in range(1, K + 1):
            lhs = contained_in_principal_multiple(
                ideal_power(I, K + 1), s.element, ideal_power(I, j)
            )
            rhs = all(vv[n] for n in range(0, j + 1))
            table.setdefault(j, []).append(lhs == rhs)
    bad = {j: vals for j, vals in table.items() if not all(vals)}
    detail = {"degrees_checked": sorted(table), "violations": sorted(bad)}
    return (CONSISTENT if not bad else FALSIFIED), detail

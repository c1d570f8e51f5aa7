"""Full analysis of one (semigroup, ideal) pair: invariants + classification.

This is the single entry point used by the CLI, the sweep runner, and the
test suites.  It owns the adaptive precision policy: contexts start at
conductor + (e + 3) * maxgen, and any PrecisionSuspect triggers a rebuild
at doubled precision, at most twice, before failing loudly.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from . import classifiers as cls
from . import invariants as inv
from .engine import Ideal, membership, staircase
from .errors import (
    ConsistencyFailure,
    GenericityWarning,
    InvalidInput,
    PrecisionExhausted,
    PrecisionSuspect,
)
from .semigroup import NumericalSemigroup, semigroup_from_generators
from .series import RingContext

MAX_PRECISION_DOUBLINGS = 2


@dataclass(frozen=True)
class IdealSpec:
    """Monomial exponents, or explicit generator coefficient lists."""

    exponents: tuple[int, ...] | None = None
    generators: tuple[tuple[tuple[int, int], ...], ...] | None = None

    def __post_init__(self):
        if (self.exponents is None) == (self.generators is None):
            raise InvalidInput("specify exactly one of exponents / generators")

    @staticmethod
    def monomial(exps) -> "IdealSpec":
        return IdealSpec(exponents=tuple(sorted(set(int(e) for e in exps))))

    @staticmethod
    def dense(gen_lists) -> "IdealSpec":
        return IdealSpec(
            generators=tuple(
                tuple((int(e), int(c)) for e, c in gen) for gen in gen_lists
            )
        )

    def label(self) -> str:
        if self.exponents is not None:
            return ",".join(str(e) for e in self.exponents)
        return "|".join(
            "+".join(f"{c}t^{e}" for e, c in gen) for gen in self.generators
        )

    def valuations(self) -> list[int]:
        if self.exponents is not None:
            return list(self.exponents)
        return [min(e for e, _ in gen) for gen in self.generators]

    def max_support(self) -> int:
        if self.exponents is not None:
            return max(self.exponents)
        return max(e for gen in self.generators for e, _ in gen)


def default_precision(S: NumericalSemigroup, spec: IdealSpec) -> int:
    vals = spec.valuations()
    e_bound = min(vals)
    maxgen = max(max(vals), 1)
    base = S.conductor + (e_bound + 3) * maxgen
    return max(base, spec.max_support() + S.conductor + 2, S.conductor + 2)


def build_ideal(ctx: RingContext, spec: IdealSpec) -> Ideal:
    if spec.exponents is not None:
        I = Ideal.from_exponents(ctx, spec.exponents)
    else:
        gens = [ctx.series({e: c for e, c in gen}) for gen in spec.generators]
        I = Ideal(ctx, gens)
    if I.min_valuation <= 0:
        raise InvalidInput("ideal is the unit ideal: not a proper m-primary ideal")
    return I


@dataclass
class NamedReduction:
    label: str
    r: int
    s: int
    lambda_i2_mod_hi: int
    bracket: list[int]  # lambda(I^j/(H I^{j-1} + I^{j+1})) for j = 2, 3, ...
    stretched: bool
    tau: int

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "r": self.r,
            "s": self.s,
            "lambda_i2_mod_hi": self.lambda_i2_mod_hi,
            "bracket_from_degree_2": list(self.bracket),
            "stretched": self.stretched,
            "tau": self.tau,
        }


@dataclass
class InvariantReport:
    e: int
    j_mult: int
    lambda_r_mod_i: int
    h: int
    hf: list[int]
    hf_stabilization: int
    r_general: int
    s_general: int
    k_invariant: int
    nu: list[int]
    tau: int
    jstretch_general: int
    intersection_colength_general: int
    artinian_hf2_general: int
    named: dict
    consensus: dict
    consensus_ok: bool
    genericity_notes: list

    def to_dict(self) -> dict:
        return {
            "e": self.e,
            "j_mult": self.j_mult,
            "lambda_r_mod_i": self.lambda_r_mod_i,
            "h": self.h,
            "hf": list(self.hf),
            "hf_stabilization": self.hf_stabilization,
            "r_general": self.r_general,
            "s_general": self.s_general,
            "k_invariant": self.k_invariant,
            "nu": list(self.nu),
            "tau": self.tau,
            "jstretch_general": self.jstretch_general,
            "intersection_colength_general": self.intersection_colength_general,
            "artinian_hf2_general": self.artinian_hf2_general,
            "named_reductions": {k: v.to_dict() for k, v in self.named.items()},
            "consensus": {k: list(v) for k, v in self.consensus.items()},
            "consensus_ok": self.consensus_ok,
            "genericity_notes": list(self.genericity_notes),
        }


@dataclass
class AnalysisResult:
    semigroup: NumericalSemigroup
    ideal_label: str
    field: str
    seed: int
    samples: int
    precision: int
    precision_retries: int
    invariants: InvariantReport
    classification: cls.Classification

    def falsified_checks(self) -> list[str]:
        return self.classification.falsified()

    def to_dict(self) -> dict:
        return {
            "schema": "grlab-report/1",
            "request": {
                "semigroup": list(self.semigroup.min_generators),
                "ideal": self.ideal_label,
                "field": self.field,
                "seed": self.seed,
                "samples": self.samples,
            },
            "meta": {
                "frobenius": self.semigroup.frobenius,
                "conductor": self.semigroup.conductor,
                "genus": self.semigroup.genus,
                "precision": self.precision,
                "precision_retries": self.precision_retries,
            },
            "invariants": self.invariants.to_dict(),
            "classification": self.classification.to_dict(),
        }


def analyze_pair(
    semigroup_gens,
    ideal_spec: IdealSpec,
    field: int | None = 65537,
    seed: int = 0,
    samples: int = inv.DEFAULT_SAMPLES,
    checks: set[str] | None = None,
) -> AnalysisResult:
    """Analyze one pair with the adaptive precision retry loop."""
    S = semigroup_from_generators(semigroup_gens)
    precision = default_precision(S, ideal_spec)
    last = None
    for retry in range(MAX_PRECISION_DOUBLINGS + 1):
        ctx = RingContext(S, field, precision, seed)
        try:
            I = build_ideal(ctx, ideal_spec)
            return _analyze(ctx, I, ideal_spec.label(), samples, checks, retry)
        except PrecisionSuspect as exc:
            last = exc
            precision = max(2 * precision, exc.needed + 1)
    raise PrecisionExhausted(
        f"computation did not fit after {MAX_PRECISION_DOUBLINGS} doublings: {last}"
    )


def _analyze(
    ctx: RingContext,
    I: Ideal,
    ideal_label: str,
    n_samples: int,
    checks: set[str] | None,
    retries: int,
) -> AnalysisResult:
    notes: list[str] = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", GenericityWarning)
        result = _compute(ctx, I, ideal_label, n_samples, checks, retries, notes)
    for w in caught:
        if issubclass(w.category, GenericityWarning):
            notes.append(str(w.message))
    result.invariants.genericity_notes = notes
    return result


def _compute(ctx, I, ideal_label, n_samples, checks, retries, notes):
    e = inv.multiplicity(I)
    r_gen = inv.generic_reduction_number(I)
    hf, hf_stab = inv.hilbert_function(I)
    lam_r_i = inv.length_vs_ring(I)
    h = inv.embedding_codim(I)
    nu1 = inv.nu_sequence(I, 1)[0]
    K = nu1 + 1
    nu = inv.nu_sequence(I, max(r_gen, K - 1, 2))

    # Additive decomposition e = lambda(R/I) + h + (K - 1): pure length
    # bookkeeping in dimension one; failure means an engine bug.
    if e != lam_r_i + h + (K - 1):
        raise ConsistencyFailure(
            f"length decomposition failed: e={e}, lambda(R/I)={lam_r_i}, "
            f"h={h}, K={K}"
        )

    samples = inv.general_samples(I, n_samples)
    per_seed = {
        "r": [inv.reduction_number(I, s.element) for s in samples],
        "s": [inv.nilpotency_index(I, s.element) for s in samples],
        "tau": [inv.cm_type_wrt(I, s.element) for s in samples],
        "jstretch": [inv.jstretch_length_wrt(I, s.element) for s in samples],
        "inters": [inv.intersection_colength_wrt(I, s.element) for s in samples],
        "hf2": [inv.artinian_hf2_wrt(I, s.element) for s in samples],
        "vv": [cls.vv_regular_check(I, s.element, r_gen) for s in samples],
    }
    per_seed["stretched"] = [
        (li == 0) and (b <= 1) for li, b in zip(per_seed["inters"], per_seed["hf2"])
    ]

    cons_ok = True
    agreed = {}
    for name in ("r", "s", "tau", "jstretch", "inters", "hf2"):
        value, ok = inv.consensus_value(per_seed[name], name)
        agreed[name] = value
        cons_ok = cons_ok and ok

    r_general = agreed["r"]
    s_general = agreed["s"]
    tau = agreed["tau"]
    jstretch_general = agreed["jstretch"]
    inters_general = agreed["inters"]
    hf2_general = agreed["hf2"]
    intersection_property = inters_general == 0

    if s_general > r_general:
        raise ConsistencyFailure(
            f"s = {s_general} exceeds r = {r_general}: engine inconsistency"
        )

    vv_vals = per_seed["vv"]
    if len(set(vv_vals)) > 1:
        notes.append(
            "graded-depth verdict disagreed across seeds; taking depth 1 "
            "(regularity of the initial form is an open condition)"
        )
        depth = 1
        cons_ok = False
    else:
        depth = 1 if vv_vals[0] else 0

    stretched_vals = per_seed["stretched"]
    if len(set(stretched_vals)) > 1:
        notes.append("stretchedness disagreed across seeds; taking the open value")
        stretched_general = True
        cons_ok = False
    else:
        stretched_general = stretched_vals[0]

    j_stretched = jstretch_general <= 1

    # Named special reductions: the monomial candidate t^a when it lies in I.
    named = {}
    t_a = ctx.monomial(I.min_valuation)
    if membership(t_a, I):
        label = f"t^{I.min_valuation}"
        bracket_top = max(r_gen + 2, K + 2)
        named[label] = NamedReduction(
            label=label,
            r=inv.reduction_number(I, t_a),
            s=inv.nilpotency_index(I, t_a),
            lambda_i2_mod_hi=nu1,
            bracket=[
                inv.bracket_length_wrt(I, t_a, j) for j in range(2, bracket_top + 1)
            ],
            stretched=cls.is_stretched_wrt(I, t_a),
            tau=inv.cm_type_wrt(I, t_a),
        )

    report = InvariantReport(
        e=e,
        j_mult=e,
        lambda_r_mod_i=lam_r_i,
        h=h,
        hf=hf,
        hf_stabilization=hf_stab,
        r_general=r_general,
        s_general=s_general,
        k_invariant=K,
        nu=nu,
        tau=tau,
        jstretch_general=jstretch_general,
        intersection_colength_general=inters_general,
        artinian_hf2_general=hf2_general,
        named=named,
        consensus={k: [int(v) for v in vals] for k, vals in per_seed.items()},
        consensus_ok=cons_ok,
        genericity_notes=[],
    )

    requested = (
        checks
        if checks is not None
        else {"theorem_cm", "corollary47", "smalltype", "sally", "equiv",
              "k_power_laws", "vv_biconditional"}
    )

    def run(name, fn):
        if name not in requested:
            return cls.skipped("not-requested"), {}
        return fn()

    cm_verdict, _ = run(
        "theorem_cm",
        lambda: cls.theorem_cm_crosscheck(
            I,
            j_stretched=j_stretched,
            depth=depth,
            r_general=r_general,
            s_general=s_general,
            K=K,
            intersection_property=intersection_property,
        ),
    )
    c47_verdict, _ = run(
        "corollary47",
        lambda: cls.corollary47_check(
            I, samples, j_stretched=j_stretched, K=K, nu=nu
        ),
    )
    small_verdict, _ = run(
        "smalltype",
        lambda: cls.smalltype_check(
            I,
            samples,
            j_stretched=j_stretched,
            K=K,
            tau=tau,
            h=h,
            lam_r_mod_i=lam_r_i,
            nu=nu,
            intersection_property=intersection_property,
        ),
    )
    sally_verdict, _ = run(
        "sally",
        lambda: cls.sally_question_check(
            I,
            samples,
            {label: nr.stretched for label, nr in named.items()},
            stretched_vals,
        ),
    )
    equiv_verdict, _ = run(
        "equiv",
        lambda: cls.equiv_check(
            gr_is_CM=depth == 1,
            j_stretched=j_stretched,
            stretched_general=stretched_general,
        ),
    )
    kpl_verdict, _ = run(
        "k_power_laws",
        lambda: cls.k_power_laws_check(
            I,
            samples,
            j_stretched=j_stretched,
            K=K,
            s_general=s_general,
            intersection_property=intersection_property,
        ),
    )
    vvb_verdict, _ = run(
        "vv_biconditional",
        lambda: cls.vv_biconditional_check(
            I,
            samples,
            j_stretched=j_stretched,
            K=K,
            intersection_property=intersection_property,
        ),
    )

    classification = cls.Classification(
        is_j_stretched=j_stretched,
        jmult_class=cls.jmult_class(I, nu1),
        has_min_jmult=nu1 == 0,
        has_almost_min_jmult=nu1 <= 1,
        has_almost_almost_min_jmult=nu1 <= 2,
        stretched_wrt={label: nr.stretched for label, nr in named.items()},
        stretched_general=stretched_general,
        gr_depth=depth,
        gr_is_CM=depth == 1,
        intersection_property_general=intersection_property,
        theorem_cm_consistent=cm_verdict,
        corollary47_consistent=c47_verdict,
        smalltype_consistent=small_verdict,
        sally_consistent=sally_verdict,
        equiv_consistent=equiv_verdict,
        k_power_laws=kpl_verdict,
        vv_biconditional=vvb_verdict,
        notes=list(notes),
    )

    return AnalysisResult(
        semigroup=ctx.semigroup,
        ideal_label=ideal_label,
        field="Q" if ctx.p is None else str(ctx.p),
        seed=ctx.seed,
        samples=n_samples,
        precision=ctx.precision,
        precision_retries=retries,
        invariants=report,
        classification=classification,
    )

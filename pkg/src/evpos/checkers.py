"""One executable predicate per theorem.

Each checker evaluates the hypotheses, evaluates the conclusions, and
reports the implication as a :class:`CheckReport`:

* ``hypotheses-not-met`` when some hypothesis failed (conclusions are still
  evaluated and reported for information);
* ``VIOLATION`` when every hypothesis held and some conclusion failed;
* ``confirmed`` otherwise.

Several hypotheses of the infinite-dimensional statements are automatic for
matrices; :data:`VACUOUS` lists them per theorem so a report always says
which parts of an equivalence carry live content on C^n.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import dynamics, linalg, positivity, spectral
from .errors import DimensionError, EvposError, NotASpectralValueError

CONFIRMED = "confirmed"
NOT_MET = "hypotheses-not-met"
VIOLATION = "VIOLATION"

SEMIGROUP_THEOREMS = ("thm-2.1", "cor-2.2", "thm-3.1", "lem-3.2", "thm-5.1", "thm-5.2", "lem-5.3")
POWER_THEOREMS = ("thm-4.1", "thm-4.3", "eq-4.2-sequences")
THEOREM_IDS = (
    "thm-2.1",
    "cor-2.2",
    "thm-3.1",
    "lem-3.2",
    "thm-4.1",
    "lem-4.2",
    "thm-4.3",
    "eq-4.2-sequences",
    "thm-5.1",
    "thm-5.2",
    "lem-5.3",
)

_INDIVIDUAL = (
    "individual and uniform eventual positivity coincide on C^n because positivity "
    "of a matrix is positivity on the standard basis; one detector serves both"
)
_NORM_CONT = "norm continuity at infinity holds for every matrix semigroup"
_COMPACT = "relatively compact orbits are the same as bounded orbits on C^n"

VACUOUS = {
    "thm-2.1": [_INDIVIDUAL, _COMPACT,
                "the cyclic set {i n beta} is asserted in the finite form sigma_p(A) cap iR in {0}"],
    "cor-2.2": [_INDIVIDUAL, _COMPACT, "strong and operator norm convergence coincide on C^n"],
    "thm-3.1": [_NORM_CONT,
                "bounded semigroups on C^n are mean ergodic (reflexive space), so the live "
                "content is strong convergence of a bounded eventually positive semigroup",
                "boundedness is reported but not gating: for eventually positive matrix "
                "semigroups both sides are equivalent to boundedness, so the unbounded case "
                "exercises the equivalence with both sides false"],
    "lem-3.2": [],
    "thm-4.1": ["every eigenvalue of a matrix is a Riesz point"],
    "lem-4.2": ["|Qf| <= P|f| for all f is equivalent to entrywise |Q_ij| <= P_ij"],
    "thm-4.3": ["every eigenvalue of a matrix is a Riesz point"],
    "eq-4.2-sequences": [
        "T is rescaled by r(T) first; r_n = 1 + n^(-p) with p from the configuration",
        "the remainder R_n uses the powers r_n^-(k+1) so that R_n|f| is a real vector",
    ],
    "thm-5.1": [
        "condition (i) norm continuity at infinity: vacuous on C^n",
        "condition (iii) s(A) is a pole: vacuous on C^n",
        "live content: balancing iff the rescaled semigroup is bounded",
    ],
    "thm-5.2": ["finite dimension of the spectral space and finite rank of the limit are vacuous on C^n"],
    "lem-5.3": ["finite dimension of the spectral space at s(A) is vacuous on C^n"],
}


@dataclass(frozen=True)
class CheckConfig:
    tol: float = 1e-7  # convergence tests and the numeric hypotheses of lem-4.2
    tol_peripheral: float | None = None  # default 1e-7 (1 + ||A||)
    tol_pos: float | None = None  # default 1e-9 (1 + ||M||) per tested matrix
    t_max: float = 50.0
    steps: int = 200
    n_max: int = 200
    seed: int = 0
    n_samples: int = 1000
    r_exponent: float = 3.0
    n_list: tuple[int, ...] = (2, 4, 8, 16, 32, 64, 128, 256)
    slack_tol: float = 1e-10
    limit_tol: float = 1e-6
    monotone_from: int = 8

    def r_n(self, n: int) -> float:
        return 1.0 + float(n) ** (-self.r_exponent)


@dataclass
class Condition:
    name: str
    held: bool
    evidence: dict = field(default_factory=dict)


@dataclass
class CheckReport:
    theorem_id: str
    hypotheses: list[Condition]
    conclusions: list[Condition]
    verdict: str
    tolerances: dict
    witnesses: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return to_jsonable(asdict(self))

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, allow_nan=False)


def to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if obj.ndim == 0:
            return to_jsonable(obj.item())
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [to_jsonable(float(obj.real)), to_jsonable(float(obj.imag))]
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return obj


def _complex_matrix(M) -> np.ndarray | None:
    # witnesses serialize as [re, im] pairs, like matrix files
    return None if M is None else np.asarray(M, dtype=np.complex128)


def _report(theorem_id, hyps, concls, cfg, witnesses=None) -> CheckReport:
    if not all(h.held for h in hyps):
        verdict = NOT_MET
    elif all(c.held for c in concls):
        verdict = CONFIRMED
    else:
        verdict = VIOLATION
    return CheckReport(
        theorem_id=theorem_id,
        hypotheses=hyps,
        conclusions=concls,
        verdict=verdict,
        tolerances=asdict(cfg),
        witnesses=witnesses or {},
        notes=list(VACUOUS.get(theorem_id, [])),
    )


def _certificate_evidence(cert: positivity.PositivityCertificate) -> dict:
    out = {"verdict": cert.verdict, "witness": cert.witness, "horizon": cert.horizon}
    sc = cert.spectral_certificate
    if sc is not None:
        out["perron_frobenius"] = {
            "dominant_eigenvalue": sc.dominant_eigenvalue,
            "right_min": sc.right_min,
            "left_min": sc.left_min,
            "gap": sc.gap,
        }
    return out


def semigroup_positivity(A, cfg: CheckConfig) -> Condition:
    """Eventual positivity of exp(tA), tested on exp(t(A - s(A))) to stay in range.

    A real scalar shift multiplies the semigroup by exp(-s t) and leaves
    positivity untouched.
    """
    A = linalg.as_matrix(A)
    s = spectral.spectrum_report(A, cfg.tol_peripheral).spectral_bound
    cert = positivity.eventual_positivity_of_semigroup(
        A - s * np.eye(A.shape[0]), cfg.t_max, cfg.steps, cfg.tol_pos
    )
    ev = _certificate_evidence(cert)
    ev["tested_shift"] = s
    return Condition("uniform eventual positivity of the semigroup", cert.detected, ev)


def power_positivity(T, cfg: CheckConfig) -> tuple[Condition, positivity.PositivityCertificate]:
    """Eventual positivity of T^n, tested on (T / r(T))^n."""
    T = linalg.as_matrix(T)
    r = spectral.spectrum_report(T, cfg.tol_peripheral).spectral_radius
    scaled = T / r if r > 0 else T
    cert = positivity.eventual_positivity_of_powers(scaled, cfg.n_max, cfg.tol_pos)
    ev = _certificate_evidence(cert)
    ev["tested_scale"] = r
    return Condition("uniform eventual positivity of the powers", cert.detected, ev), cert


def _bounded(A, cfg: CheckConfig, label: str = "orbits bounded") -> Condition:
    b = dynamics.is_bounded(A, cfg.tol_peripheral, cfg.t_max)
    return Condition(
        label,
        b.bounded,
        {"method": b.method, "sampled_bounded": b.sampled_bounded, "bound_estimate": b.bound_estimate},
    )


def _verdict_evidence(v: dynamics.ConvergenceVerdict) -> dict:
    keep = ("numeric", "agreement", "horizon", "spectral_bound", "limit_rank")
    ev = {k: v.certificate[k] for k in keep if k in v.certificate}
    ev["converges"] = v.converges
    ev["tail_defect"] = v.tail_defect
    return ev


def _pole_at(data: linalg.EigenData, value: complex, tol: float) -> tuple[int | None, linalg.EigenCluster | None]:
    try:
        c = data.cluster_of(value, tol)
    except NotASpectralValueError:
        return None, None
    return c.index, c


# continuous-time statements


def check_cyclicity_thm21(A, cfg: CheckConfig | None = None) -> CheckReport:
    cfg = cfg or CheckConfig()
    rep = spectral.spectrum_report(A, cfg.tol_peripheral)
    hyps = [semigroup_positivity(A, cfg), _bounded(A, cfg)]
    axis = rep.point_spectrum_on_axis()
    held = all(abs(v.imag) <= rep.tol_peripheral for v in axis)
    concl = Condition(
        "point spectrum on iR is cyclic, i.e. contained in {0}",
        held,
        {"point_spectrum_on_axis": list(axis)},
    )
    return _report("thm-2.1", hyps, [concl], cfg)


def check_strong_convergence_cor22(A, cfg: CheckConfig | None = None) -> CheckReport:
    cfg = cfg or CheckConfig()
    rep = spectral.spectrum_report(A, cfg.tol_peripheral)
    hyps = [semigroup_positivity(A, cfg)]
    strong = dynamics.strong_convergence_verdict(A, cfg.t_max, cfg.tol, cfg.tol_peripheral)
    bounded = _bounded(A, cfg)
    axis = rep.point_spectrum_on_axis()
    axis_ok = all(abs(v.imag) <= rep.tol_peripheral for v in axis)
    zero_semisimple = all(
        c.index == 1 for c in rep.eigen.clusters if abs(c.value) <= rep.tol_peripheral
    )
    rhs = bounded.held and axis_ok and zero_semisimple
    concl = Condition(
        "exp(tA) converges iff bounded, sigma_p(A) cap iR in {0} and 0 semisimple",
        strong.converges == rhs,
        {
            "lhs_converges": _verdict_evidence(strong),
            "rhs": rhs,
            "bounded": bounded.held,
            "axis_spectrum_in_zero": axis_ok,
            "zero_semisimple": zero_semisimple,
            "point_spectrum_on_axis": list(axis),
        },
    )
    return _report("cor-2.2", hyps, [concl], cfg, {"limit": _complex_matrix(strong.limit)})


def check_thm31(A, cfg: CheckConfig | None = None) -> CheckReport:
    cfg = cfg or CheckConfig()
    nc = dynamics.norm_continuity_at_infinity(A)
    hyps = [
        semigroup_positivity(A, cfg),
        Condition("norm continuous at infinity", nc["holds"], {"note": nc["note"]}),
    ]
    # boundedness is reported, not required: on C^n both sides are equivalent to it
    bounded = _bounded(A, cfg, "semigroup bounded")
    strong = dynamics.strong_convergence_verdict(A, cfg.t_max, cfg.tol, cfg.tol_peripheral)
    mean = dynamics.is_mean_ergodic(A, cfg.t_max, cfg.tol, cfg.tol_peripheral)
    concl = Condition(
        "strongly convergent iff mean ergodic",
        strong.converges == mean.converges,
        {
            "strong": _verdict_evidence(strong),
            "mean_ergodic": _verdict_evidence(mean),
            "bounded": {"held": bounded.held, "gating": False, **bounded.evidence},
        },
    )
    return _report(
        "thm-3.1",
        hyps,
        [concl],
        cfg,
        {"strong_limit": _complex_matrix(strong.limit), "mean_ergodic_projection": _complex_matrix(mean.limit)},
    )


def check_lemma32(A, cfg: CheckConfig | None = None) -> CheckReport:
    cfg = cfg or CheckConfig()
    rep = spectral.spectrum_report(A, cfg.tol_peripheral)
    tol = rep.tol_peripheral
    hyps = [
        semigroup_positivity(A, cfg),
        _bounded(A, cfg),
        Condition("s(A) = 0", abs(rep.spectral_bound) <= tol, {"spectral_bound": rep.spectral_bound}),
    ]
    per = rep.peripheral_set
    concl = Condition(
        "peripheral spectrum equals {0}",
        len(per) > 0 and all(abs(v) <= tol for v in per),
        {"peripheral_set": list(per)},
    )
    return _report("lem-3.2", hyps, [concl], cfg)


def _balancing(A, cfg: CheckConfig) -> dynamics.ConvergenceVerdict:
    return dynamics.uniform_balancing_verdict(A, cfg.t_max, cfg.tol, cfg.tol_peripheral)


def check_thm51(A, cfg: CheckConfig | None = None) -> CheckReport:
    cfg = cfg or CheckConfig()
    A = linalg.as_matrix(A)
    rep = spectral.spectrum_report(A, cfg.tol_peripheral)
    s = rep.spectral_bound
    hyps = [semigroup_positivity(A, cfg)]
    bal = _balancing(A, cfg)
    rescaled = _bounded(A - s * np.eye(A.shape[0]), cfg, "rescaled semigroup bounded")
    pole, _ = _pole_at(rep.eigen, complex(s, 0.0), rep.tol_peripheral)
    cond_i, cond_iii = True, True
    rhs = cond_i and rescaled.held and cond_iii
    concl = Condition(
        "balancing iff (i) and (ii) and (iii)",
        bal.converges == rhs,
        {
            "lhs_balancing": _verdict_evidence(bal),
            "rhs": rhs,
            "i_norm_continuous_at_infinity": {"held": cond_i, "vacuous": True},
            "ii_rescaled_bounded": {"held": rescaled.held, "vacuous": False, **rescaled.evidence},
            "iii_s_is_pole": {"held": cond_iii, "vacuous": True, "pole_order": pole},
        },
    )
    return _report("thm-5.1", hyps, [concl], cfg, {"limit": _complex_matrix(bal.limit)})


def check_thm52(A, cfg: CheckConfig | None = None) -> CheckReport:
    cfg = cfg or CheckConfig()
    rep = spectral.spectrum_report(A, cfg.tol_peripheral)
    s = rep.spectral_bound
    hyps = [semigroup_positivity(A, cfg)]
    bal = _balancing(A, cfg)
    rank = bal.limit_rank
    lhs = bal.converges and rank is not None
    pole, _ = _pole_at(rep.eigen, complex(s, 0.0), rep.tol_peripheral)
    rhs = pole == 1
    concl = Condition(
        "balancing with finite rank limit iff s(A) is a first order pole",
        lhs == rhs,
        {
            "lhs_balancing": _verdict_evidence(bal),
            "limit_rank": rank,
            "rhs": rhs,
            "s_in_spectrum": pole is not None,
            "pole_order_at_s": pole,
            "spectral_space_finite_dimensional": {"held": True, "vacuous": True},
        },
    )
    return _report("thm-5.2", hyps, [concl], cfg, {"limit": _complex_matrix(bal.limit)})


def check_lemma53(A, cfg: CheckConfig | None = None) -> CheckReport:
    cfg = cfg or CheckConfig()
    rep = spectral.spectrum_report(A, cfg.tol_peripheral)
    s, tol = rep.spectral_bound, rep.tol_peripheral
    pole, _ = _pole_at(rep.eigen, complex(s, 0.0), tol)
    hyps = [
        semigroup_positivity(A, cfg),
        Condition("s(A) is a first order pole", pole == 1, {"pole_order": pole, "spectral_bound": s}),
    ]
    per = rep.peripheral_set
    concl = Condition(
        "peripheral spectrum equals {s(A)}",
        len(per) > 0 and all(abs(v - s) <= tol for v in per),
        {"peripheral_set": list(per), "spectral_bound": s},
    )
    return _report("lem-5.3", hyps, [concl], cfg)


# discrete-time statements


def _power_hypotheses(T, cfg: CheckConfig):
    rep = spectral.spectrum_report(T, cfg.tol_peripheral)
    r, tol = rep.spectral_radius, rep.tol_peripheral
    pos, _ = power_positivity(T, cfg)
    pole, top = _pole_at(rep.eigen, complex(r, 0.0), tol)
    hyps = [
        pos,
        Condition(
            "r(T) is a first order pole",
            pole == 1,
            {"spectral_radius": r, "pole_order": pole, "r_in_spectrum": top is not None},
        ),
    ]
    return rep, top, hyps


def _peripheral_clusters(rep: spectral.SpectrumReport) -> list[linalg.EigenCluster]:
    r, tol = rep.spectral_radius, rep.tol_peripheral
    return [c for c in rep.eigen.clusters if abs(abs(c.value) - r) <= tol]


def check_niiro_sawashima(T, cfg: CheckConfig | None = None) -> CheckReport:
    cfg = cfg or CheckConfig()
    rep, top, hyps = _power_hypotheses(T, cfg)
    periph = _peripheral_clusters(rep)
    dim_top = top.algebraic if top is not None else None
    poles = [{"eigenvalue": c.value, "pole_order": c.index} for c in periph]
    dims = [{"eigenvalue": c.value, "spectral_space_dim": c.algebraic} for c in periph]
    concls = [
        Condition(
            "every peripheral eigenvalue is a first order pole",
            all(c.index == 1 for c in periph),
            {"peripheral": poles},
        ),
        Condition(
            "dim spectral space at each peripheral eigenvalue <= dim spectral space at r(T)",
            dim_top is not None and all(c.algebraic <= dim_top for c in periph),
            {"peripheral": dims, "dim_at_r": dim_top},
        ),
    ]
    return _report("thm-4.1", hyps, concls, cfg)


def check_eigenspace_bound_thm43(T, cfg: CheckConfig | None = None) -> CheckReport:
    cfg = cfg or CheckConfig()
    rep, top, hyps = _power_hypotheses(T, cfg)
    periph = _peripheral_clusters(rep)
    dim_top = top.geometric if top is not None else None
    concl = Condition(
        "dim ker(lam - T) <= dim ker(r(T) - T) for |lam| = r(T)",
        dim_top is not None and all(c.geometric <= dim_top for c in periph),
        {
            "peripheral": [{"eigenvalue": c.value, "eigenspace_dim": c.geometric} for c in periph],
            "dim_at_r": dim_top,
        },
    )
    return _report("thm-4.3", hyps, [concl], cfg)


def check_domination_lemma42(Q, P, cfg: CheckConfig | None = None) -> CheckReport:
    cfg = cfg or CheckConfig()
    Q = linalg.as_matrix(Q)
    P = linalg.as_matrix(P)
    if Q.shape != P.shape:
        raise DimensionError(f"Q has shape {Q.shape} but P has shape {P.shape}")
    tol = cfg.tol
    n = Q.shape[0]
    idem = linalg.norm2(P @ P - P)
    excess = np.abs(Q) - P.real
    domination = bool(np.max(np.abs(P.imag)) <= tol and np.max(excess) <= tol)
    hyps = [
        Condition("P is a projection", idem <= tol * (1.0 + linalg.norm2(P)), {"idempotency_defect": idem}),
        Condition(
            "|Qf| <= P|f| for all f (entrywise |Q_ij| <= P_ij)",
            domination,
            {"max_excess": float(np.max(excess)), "max_imag_P": float(np.max(np.abs(P.imag)))},
        ),
    ]
    fix_dim = n - linalg.rank(np.eye(n) - Q)
    rank_p = linalg.rank(P)
    concl = Condition("dim Fix Q <= rank P", fix_dim <= rank_p, {"dim_fix_Q": fix_dim, "rank_P": rank_p})
    return _report("lem-4.2", hyps, [concl], cfg)


def _truncated_sum(Tn: np.ndarray, z: complex, k0: int) -> np.ndarray:
    """sum_{k < k0} z^-(k+1) T^k."""
    n = Tn.shape[0]
    out = np.zeros((n, n), dtype=np.complex128)
    power = np.eye(n, dtype=np.complex128)
    for k in range(k0):
        out += z ** (-(k + 1)) * power
        power = power @ Tn
    return out


def proof_sequences(Tn: np.ndarray, lam: complex, k0: int, r_n: float, spectrum=None) -> dict:
    """Q_n, P_n, R_n, S_n for an operator already normalized to r(T) = 1."""
    delta = r_n - 1.0
    tol = 1e-3 * delta
    z = r_n * lam
    Q = (z - lam) * linalg.resolvent(Tn, z, tol, spectrum)
    P = delta * linalg.resolvent(Tn, r_n, tol, spectrum)
    R = -delta * _truncated_sum(Tn, r_n, k0)
    S = (z - lam) * _truncated_sum(Tn, z, k0)
    return {"Q": Q, "P": P, "R": R, "S": S}


def _powers_positive_from(Tn: np.ndarray, k0: int, n_max: int, tol_pos) -> bool:
    power = np.linalg.matrix_power(Tn, k0)
    for _ in range(k0, max(n_max, k0) + 1):
        if not positivity.is_positive_matrix(power, tol_pos):
            return False
        power = power @ Tn
    return True


def check_sequences_eq42(
    T,
    lam: complex | None = None,
    k0: int | None = None,
    n_list=None,
    cfg: CheckConfig | None = None,
) -> CheckReport:
    """Evaluate the four operator sequences of the eigenspace-bound argument.

    ``lam`` defaults to r(T); ``k0`` defaults to the positivity witness of the
    normalized powers.
    """
    cfg = cfg or CheckConfig()
    T = linalg.as_matrix(T)
    n = T.shape[0]
    n_list = tuple(cfg.n_list if n_list is None else n_list)
    rep = spectral.spectrum_report(T, cfg.tol_peripheral)
    r, tol = rep.spectral_radius, rep.tol_peripheral
    lam = complex(r if lam is None else lam)
    rel = tol / max(r, tol)

    if r <= tol:
        hyps = [Condition("r(T) > 0", False, {"spectral_radius": r, "note": "the statement is trivial when r(T) = 0"})]
        return _report("eq-4.2-sequences", hyps, [], cfg)

    Tn = T / r
    lam_n = lam / r
    modulus_ok = abs(abs(lam_n) - 1.0) <= rel
    if abs(lam_n - 1.0) <= rel:
        lam_n = 1.0 + 0.0j
    elif abs(lam_n + 1.0) <= rel:
        lam_n = -1.0 + 0.0j
    elif lam_n != 0:
        lam_n = lam_n / abs(lam_n)

    pos, cert = power_positivity(T, cfg)
    if k0 is None:
        k0_ok = cert.witness is not None
        k0 = int(cert.witness) if k0_ok else 0
    else:
        if k0 < 0:
            raise ValueError("k0 must be nonnegative")
        k0_ok = _powers_positive_from(Tn, k0, cfg.n_max, cfg.tol_pos)
    normalized = spectral.spectrum_report(Tn)
    pole, top = _pole_at(normalized.eigen, 1.0 + 0.0j, normalized.tol_peripheral)
    hyps = [
        pos,
        Condition("|lambda| = r(T)", modulus_ok, {"lambda": lam, "spectral_radius": r}),
        Condition("T^k positive for all tested k >= k0", k0_ok, {"k0": k0, "n_max": cfg.n_max}),
        Condition("r(T) is a first order pole", pole == 1, {"pole_order": pole}),
    ]

    rng = np.random.default_rng(cfg.seed)
    F = rng.standard_normal((n, cfg.n_samples)) + 1j * rng.standard_normal((n, cfg.n_samples))
    F = np.hstack([F, np.eye(n)])
    absF = np.abs(F)
    spectrum = linalg.eigenvalues(Tn)
    P_limit = None
    if top is not None:
        try:
            P_limit = spectral.spectral_projection_algebraic(Tn, top.value, normalized.tol_peripheral).projection
        except EvposError:
            P_limit = None

    rows = []
    for m in n_list:
        r_m = cfg.r_n(m)
        seq = proof_sequences(Tn, lam_n, k0, r_m, spectrum)
        rhs = np.abs(seq["S"] @ F) + seq["R"] @ absF + seq["P"] @ absF
        slack = rhs.real - np.abs(seq["Q"] @ F)
        rows.append(
            {
                "n": m,
                "r_n": r_m,
                "min_slack": float(slack.min()),
                "max_imag_rhs": float(np.max(np.abs(rhs.imag))),
                "norm_R": linalg.norm2(seq["R"]),
                "norm_S": linalg.norm2(seq["S"]),
                "dist_P": None if P_limit is None else linalg.norm2(seq["P"] - P_limit),
            }
        )

    min_slack = min(row["min_slack"] for row in rows) if rows else float("inf")
    late = [row for row in rows if row["n"] >= cfg.monotone_from]

    def monotone(key):
        return all(b[key] <= a[key] * (1.0 + 1e-9) + 1e-15 for a, b in zip(late, late[1:]))

    last_dist = rows[-1]["dist_P"] if rows else None
    concls = [
        Condition(
            "|Q_n f| <= |S_n f| + R_n|f| + P_n|f|",
            min_slack >= -cfg.slack_tol,
            {"min_slack": min_slack, "samples": cfg.n_samples + n, "seed": cfg.seed},
        ),
        Condition(
            "||R_n|| and ||S_n|| decrease along n",
            monotone("norm_R") and monotone("norm_S"),
            {"from_n": cfg.monotone_from},
        ),
        Condition(
            "P_n converges to the spectral projection at r(T)",
            last_dist is not None and last_dist < cfg.limit_tol,
            {"final_distance": last_dist},
        ),
    ]
    return _report(
        "eq-4.2-sequences", hyps, concls, cfg, {"sequence": rows, "projection": _complex_matrix(P_limit)}
    )


_SINGLE = {
    "thm-2.1": check_cyclicity_thm21,
    "cor-2.2": check_strong_convergence_cor22,
    "thm-3.1": check_thm31,
    "lem-3.2": check_lemma32,
    "thm-4.1": check_niiro_sawashima,
    "thm-4.3": check_eigenspace_bound_thm43,
    "eq-4.2-sequences": check_sequences_eq42,
    "thm-5.1": check_thm51,
    "thm-5.2": check_thm52,
    "lem-5.3": check_lemma53,
}


def run_check(theorem_id: str, M, cfg: CheckConfig | None = None, **kwargs) -> CheckReport:
    """Dispatch by identifier; lem-4.2 needs ``P=...``, eq-4.2-sequences accepts ``lam``, ``k0``, ``n_list``."""
    if theorem_id == "lem-4.2":
        return check_domination_lemma42(M, kwargs["P"], cfg)
    if theorem_id not in _SINGLE:
        raise KeyError(theorem_id)
    if theorem_id == "eq-4.2-sequences":
        return check_sequences_eq42(M, cfg=cfg, **kwargs)
    return _SINGLE[theorem_id](M, cfg=cfg)


def run_all(M, cfg: CheckConfig | None = None) -> list[CheckReport]:
    """Every single-matrix checker, in the fixed order of THEOREM_IDS."""
    return [_SINGLE[t](M, cfg=cfg) for t in THEOREM_IDS if t in _SINGLE]

"""Time-domain behaviour of matrix semigroups exp(tA).

Every verdict here is reached along two pathways: a numeric one that only
samples the semigroup (or its Cesaro means), and a spectral one that reads
the answer off the eigenstructure. When the numeric pathway reaches a
definite answer that contradicts the spectral one an InconsistencyError is
raised; when the numeric pathway is merely unresolved on the tested horizon
(for instance a convergence rate too slow for the grid) the spectral verdict
stands and the certificate records ``numeric: "unresolved"``.

On C^n strong and operator norm convergence coincide, orbits are relatively
compact iff they are bounded, and every semigroup is uniformly continuous,
hence norm continuous at infinity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import linalg, spectral
from .errors import InconsistencyError, RangeError

GRID_POINTS = 64
TAIL_POINTS = GRID_POINTS // 4
# span of the geometric grid, t_max / t_min; irrational so periodic orbits cannot alias
GRID_SPAN = 32.0 * np.sqrt(2.0)
MAX_HORIZON_DOUBLINGS = 8
CESARO_DOUBLINGS = 48
BOUND_DOUBLINGS = 10
DIVERGENCE_NORM = 1e12
DEFAULT_T_MAX = 50.0
DEFAULT_TOL = 1e-7

Mode = Literal["strong", "uniform", "balancing", "mean-ergodic"]


@dataclass(frozen=True)
class ConvergenceVerdict:
    mode: Mode
    converges: bool
    limit: np.ndarray | None
    tail_defect: float
    certificate: dict = field(default_factory=dict)

    @property
    def limit_rank(self) -> int | None:
        if self.limit is None:
            return None
        return linalg.rank(self.limit)


@dataclass(frozen=True)
class Boundedness:
    bounded: bool
    method: Literal["spectral", "sampled"]
    bound_estimate: float
    sampled_bounded: bool


def geometric_time_grid(t_max: float, points: int = GRID_POINTS) -> np.ndarray:
    if t_max <= 0:
        raise ValueError("t_max must be positive")
    return np.geomspace(t_max / GRID_SPAN, t_max, points)


def semigroup_at(A, t: float) -> np.ndarray:
    if t < 0:
        raise ValueError("t must be nonnegative")
    return linalg.expm(t * linalg.as_matrix(A))


def rescaled_semigroup_at(A, t: float) -> np.ndarray:
    """exp(t(A - s(A) I)), evaluated directly so it cannot overflow through exp(tA)."""
    A = linalg.as_matrix(A)
    s = spectral.spectrum_report(A).spectral_bound
    return semigroup_at(A - s * np.eye(A.shape[0]), t)


def cesaro_mean(A, t: float) -> np.ndarray:
    """(1/t) int_0^t exp(sA) ds from one exponential of a 2n x 2n block matrix."""
    if t <= 0:
        raise ValueError("t must be positive")
    A = linalg.as_matrix(A)
    n = A.shape[0]
    block = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    block[:n, :n] = A
    block[:n, n:] = np.eye(n)
    return linalg.expm(t * block)[:n, n:] / t


def norm_continuity_at_infinity(A=None) -> dict:
    return {
        "holds": True,
        "note": (
            "every matrix semigroup is uniformly continuous, so "
            "limsup_{h->0} ||exp(tA) - exp((t+h)A)|| = 0 for every t and the "
            "semigroup is norm continuous at infinity"
        ),
    }


def _spectral_bounded(report: spectral.SpectrumReport) -> bool:
    s, tol = report.spectral_bound, report.tol_peripheral
    if s < -tol:
        return True
    if s > tol:
        return False
    return all(c.index == 1 for c in report.eigen.clusters if c.value.real >= -tol)


def _norm_or_inf(A: np.ndarray, t: float) -> float:
    try:
        return linalg.norm2(linalg.expm(t * A))
    except RangeError:
        return float("inf")


def is_bounded(A, tol: float | None = None, t_max: float = DEFAULT_T_MAX) -> Boundedness:
    """Boundedness of exp(tA) on [0, inf).

    Decided spectrally (s(A) < 0, or s(A) = 0 with every eigenvalue on the
    axis semisimple) and cross-checked by sampling: the semigroup counts as
    unbounded by sampling when the norm at ``t_max * 2^k`` (k <= 10) exceeds
    twice the largest norm seen on [0, t_max].
    """
    A = linalg.as_matrix(A)
    report = spectral.spectrum_report(A, tol)
    spectral_verdict = _spectral_bounded(report)
    grid = np.concatenate([[0.0], geometric_time_grid(t_max)])
    head = max(_norm_or_inf(A, t) for t in grid)
    far = [_norm_or_inf(A, t_max * 2.0**k) for k in range(1, BOUND_DOUBLINGS + 1)]
    estimate = max([head] + far)
    sampled = bool(np.isfinite(estimate) and max(far) <= 2.0 * head)
    if sampled != spectral_verdict:
        raise InconsistencyError(
            f"boundedness: spectral verdict {spectral_verdict} (s(A) = "
            f"{report.spectral_bound:.3e}) but sampling up to t = "
            f"{t_max * 2.0**BOUND_DOUBLINGS:.3g} says {sampled}; adjust tol or t_max"
        )
    return Boundedness(
        bounded=spectral_verdict,
        method="spectral",
        bound_estimate=float(estimate),
        sampled_bounded=sampled,
    )


def _tail_cauchy(A: np.ndarray, t_max: float, tol: float) -> tuple[str, float, np.ndarray | None, float]:
    """Cauchy test on the tail of the geometric grid, doubling the horizon while unresolved.

    Returns (status, defect, last sample, horizon) with status one of
    "converged", "diverged", "unresolved".
    """
    horizon = t_max
    defect = float("inf")
    for _ in range(MAX_HORIZON_DOUBLINGS + 1):
        tail = geometric_time_grid(horizon)[-TAIL_POINTS:]
        try:
            samples = np.array([linalg.expm(t * A) for t in tail])
        except RangeError:
            return "diverged", float("inf"), None, horizon
        size = max(linalg.norm2(S) for S in samples)
        if size > DIVERGENCE_NORM:
            return "diverged", float("inf"), None, horizon
        # Frobenius norm bounds the 2-norm from above, so this is conservative
        flat = samples.reshape(len(tail), -1)
        pairwise = np.linalg.norm(flat[:, None, :] - flat[None, :, :], axis=-1)
        defect = float(pairwise.max()) / (1.0 + size)
        if defect < tol:
            return "converged", defect, samples[-1], horizon
        horizon *= 2.0
    return "unresolved", defect, None, horizon / 2.0


def _spectral_limit(A: np.ndarray, report: spectral.SpectrumReport, tol: float | None) -> np.ndarray:
    n = A.shape[0]
    for c in report.eigen.clusters:
        if abs(c.value) <= report.tol_peripheral:
            return spectral.spectral_projection_algebraic(A, c.value, tol).projection
    return np.zeros((n, n), dtype=np.complex128)


def _decay_rate(report: spectral.SpectrumReport) -> float:
    """-max Re over eigenvalues other than 0: the rate at which exp(tA) settles."""
    tol = report.tol_peripheral
    others = [c.value.real for c in report.eigen.clusters if abs(c.value) > tol]
    return -max(others) if others else float("inf")


def _reconcile(
    what: str,
    numeric: str,
    spectral_verdict: bool,
    resolvable: bool,
) -> str:
    numeric_yes = numeric == "converged"
    if numeric_yes == spectral_verdict:
        return "agrees"
    if not numeric_yes and numeric == "unresolved" and spectral_verdict and not resolvable:
        return "unresolved"
    raise InconsistencyError(
        f"{what}: numeric pathway says {numeric!r}, spectral pathway says "
        f"converges={spectral_verdict}; adjust tol or t_max"
    )


def strong_convergence_verdict(
    A, t_max: float = DEFAULT_T_MAX, tol: float = DEFAULT_TOL, tol_spectral: float | None = None
) -> ConvergenceVerdict:
    """Convergence of exp(tA) as t -> inf (strong and operator norm alike on C^n).

    Spectral criterion: bounded and sigma(A) cap iR contained in {0}.
    """
    A = linalg.as_matrix(A)
    report = spectral.spectrum_report(A, tol_spectral)
    bounded = _spectral_bounded(report)
    on_axis = report.point_spectrum_on_axis()
    axis_ok = all(abs(v.imag) <= report.tol_peripheral for v in on_axis)
    spectral_verdict = bounded and axis_ok

    status, defect, last, horizon = _tail_cauchy(A, t_max, tol)
    rate = _decay_rate(report)
    tail_start = geometric_time_grid(horizon)[-TAIL_POINTS]
    resolvable = rate * tail_start >= np.log(1.0 / tol) + 10.0
    agreement = _reconcile("strong convergence", status, spectral_verdict, resolvable)

    limit = None
    if spectral_verdict:
        limit = _spectral_limit(A, report, tol_spectral)
        if last is not None:
            gap = linalg.norm2(last - limit) / (1.0 + linalg.norm2(limit))
            if gap > 10.0 * tol:
                raise InconsistencyError(
                    f"strong convergence: sampled limit differs from the spectral "
                    f"projection by {gap:.3e}"
                )
    return ConvergenceVerdict(
        mode="strong",
        converges=spectral_verdict,
        limit=limit,
        tail_defect=float(defect),
        certificate={
            "bounded": bounded,
            "spectral_bound": report.spectral_bound,
            "point_spectrum_on_axis": list(on_axis),
            "axis_spectrum_in_zero": axis_ok,
            "zero_semisimple": all(
                c.index == 1 for c in report.eigen.clusters if abs(c.value) <= report.tol_peripheral
            ),
            "numeric": status,
            "agreement": agreement,
            "horizon": horizon,
            "decay_rate": rate,
            "note": "on C^n strong and operator norm convergence coincide",
        },
    )


def is_mean_ergodic(
    A, t_max: float = DEFAULT_T_MAX, tol: float = DEFAULT_TOL, tol_spectral: float | None = None
) -> ConvergenceVerdict:
    """Convergence of the Cesaro means as t -> inf.

    Numeric pathway: starting from C_{t_max} the horizon is doubled with
    C_{2t} = (C_t + exp(tA) C_t) / 2, and the means count as stabilized
    once three consecutive doublings move them by less than ``tol``
    (relative). Cesaro means of a bounded semigroup converge like 1/t, so
    doubling reaches the tolerance in O(log(1/tol)) steps.

    Spectral pathway: for matrices mean ergodicity is equivalent to
    boundedness; the limit is the spectral projection at 0 (zero matrix if
    0 is not an eigenvalue).
    """
    A = linalg.as_matrix(A)
    report = spectral.spectrum_report(A, tol_spectral)
    spectral_verdict = _spectral_bounded(report)

    t = t_max
    C = cesaro_mean(A, t)
    E = semigroup_at(A, t) if np.isfinite(C).all() else None
    status, defect, streak = "unresolved", float("inf"), 0
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(CESARO_DOUBLINGS):
            if E is None:
                status = "diverged"
                break
            C_next = 0.5 * (C + E @ C)
            E = E @ E
            t *= 2.0
            if not np.all(np.isfinite(C_next)) or not np.all(np.isfinite(E)):
                status = "diverged"
                break
            size = linalg.norm2(C_next)
            if size > DIVERGENCE_NORM:
                status = "diverged"
                break
            defect = linalg.norm2(C_next - C) / (1.0 + size)
            C = C_next
            streak = streak + 1 if defect < tol else 0
            if streak >= 3:
                status = "converged"
                break
    agreement = _reconcile("mean ergodicity", status, spectral_verdict, resolvable=False)

    limit = None
    if spectral_verdict:
        limit = _spectral_limit(A, report, tol_spectral)
        if status == "converged":
            gap = linalg.norm2(C - limit) / (1.0 + linalg.norm2(limit))
            if gap > 10.0 * tol:
                raise InconsistencyError(
                    f"mean ergodicity: Cesaro limit differs from the spectral projection by {gap:.3e}"
                )
    return ConvergenceVerdict(
        mode="mean-ergodic",
        converges=spectral_verdict,
        limit=limit,
        tail_defect=float(defect),
        certificate={
            "bounded": spectral_verdict,
            "spectral_bound": report.spectral_bound,
            "zero_is_eigenvalue": any(
                abs(c.value) <= report.tol_peripheral for c in report.eigen.clusters
            ),
            "numeric": status,
            "agreement": agreement,
            "horizon": t,
            "note": "bounded matrix semigroups are mean ergodic (C^n is reflexive)",
        },
    )


def uniform_balancing_verdict(
    A, t_max: float = DEFAULT_T_MAX, tol: float = DEFAULT_TOL, tol_spectral: float | None = None
) -> ConvergenceVerdict:
    """Operator norm convergence of the rescaled semigroup exp(t(A - s(A) I))."""
    A = linalg.as_matrix(A)
    n = A.shape[0]
    report = spectral.spectrum_report(A, tol_spectral)
    s = report.spectral_bound
    shifted = A - s * np.eye(n)
    inner = strong_convergence_verdict(shifted, t_max, tol, tol_spectral)
    cert = dict(inner.certificate)
    cert["spectral_bound"] = s
    limit_rank = None
    if inner.converges:
        limit_rank = linalg.rank(inner.limit)
        if limit_rank == 0:
            raise InconsistencyError(
                "balancing: the rescaled semigroup converged to the zero operator, "
                "which is impossible at the spectral bound"
            )
        cluster = report.eigen.cluster_of(complex(s, 0.0), report.tol_peripheral)
        dominant = len(report.peripheral_set) == 1
        if cluster.index == 1 and dominant:
            P = spectral.spectral_projection_algebraic(A, cluster.value, tol_spectral).projection
            gap = linalg.norm2(inner.limit - P) / (1.0 + linalg.norm2(P))
            if gap > 10.0 * tol:
                raise InconsistencyError(
                    f"balancing: limit differs from the spectral projection at s(A) by {gap:.3e}"
                )
        cert["limit_matches_projection_at_s"] = bool(cluster.index == 1 and dominant)
    cert["limit_rank"] = limit_rank
    return ConvergenceVerdict(
        mode="balancing",
        converges=inner.converges,
        limit=inner.limit,
        tail_defect=inner.tail_defect,
        certificate=cert,
    )


def balancing_decay_rate(
    A, limit: np.ndarray | None = None, t_max: float = DEFAULT_T_MAX, noise_floor: float = 1e-10
) -> tuple[float, np.ndarray, np.ndarray]:
    """Least-squares slope of log||exp(t(A - s)) - P|| over the tail grid.

    The horizon is halved until the defect at ``t_max`` sits above
    ``noise_floor`` so the fit never runs into rounding noise. Returns
    (slope, tail times, log defects).
    """
    A = linalg.as_matrix(A)
    n = A.shape[0]
    report = spectral.spectrum_report(A)
    s = report.spectral_bound
    shifted = A - s * np.eye(n)
    if limit is None:
        limit = _spectral_limit(shifted, spectral.spectrum_report(shifted), None)
    scale = 1.0 + linalg.norm2(limit)
    while linalg.norm2(linalg.expm(t_max * shifted) - limit) < noise_floor * scale:
        t_max /= 2.0
        if t_max < 1e-6:
            raise ValueError("defect is below the noise floor at every horizon")
    tail = geometric_time_grid(t_max)[-TAIL_POINTS:]
    logs = np.log([linalg.norm2(linalg.expm(t * shifted) - limit) for t in tail])
    slope = float(np.polyfit(tail, logs, 1)[0])
    return slope, tail, logs

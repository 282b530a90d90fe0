"""Positivity and eventual positivity of matrix powers and matrix semigroups.

Two kinds of evidence are combined:

* a simulation witness: the first exponent ``n0`` (or sampled time ``t0``)
  after which every tested power (or semigroup sample) is entrywise
  nonnegative up to the slack ``tol_pos``;
* a Perron-Frobenius certificate: a real, simple, strictly dominant
  eigenvalue with strictly positive right and left eigenvectors. For a real
  matrix this forces ``T^n / r^n`` (resp. ``exp(t(A - s))``) to converge to
  a strictly positive rank-one projection, hence eventual strict positivity.
  A failed certificate refutes nothing.

On C^n positivity of an operator is the same as positivity on the standard
basis vectors, so uniform and individual eventual positivity coincide and
only the uniform notion is tested.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import linalg
from .errors import RangeError

POSITIVE_FROM_START = "positive-from-start"
EVENTUALLY_POSITIVE = "eventually-positive"
NOT_DETECTED = "not-detected"
CERTIFIED = "certified-strictly-eventually-positive"

TOL_POS_REL = 1e-9
_OVERFLOW_NORM = 1e150


@dataclass(frozen=True)
class SpectralCertificate:
    dominant_eigenvalue: float
    right_min: float
    left_min: float
    gap: float  # to the second largest modulus (power) or real part (semigroup)
    right_vector: np.ndarray = field(repr=False)
    left_vector: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class PositivityCertificate:
    kind: Literal["power", "semigroup"]
    verdict: str
    witness: float | None
    spectral_certificate: SpectralCertificate | None
    horizon: float
    # absolute slack, or the relative factor when the scale-aware default ran
    tol_pos: float

    @property
    def detected(self) -> bool:
        return self.verdict != NOT_DETECTED


def default_tol_pos(M) -> float:
    return TOL_POS_REL * (1.0 + linalg.norm2(M))


def is_positive_matrix(M, tol_pos: float | None = None) -> bool:
    """True iff every entry has ``|Im| <= tol_pos`` and ``Re >= -tol_pos``."""
    M = np.asarray(M, dtype=np.complex128)
    if tol_pos is None:
        tol_pos = default_tol_pos(M)
    if tol_pos < 0:
        raise ValueError("tol_pos must be nonnegative")
    return bool(np.all(np.abs(M.imag) <= tol_pos) and np.all(M.real >= -tol_pos))


def _phase_normalized(v: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(v)))
    return v * (abs(v[k]) / v[k])


def _positive_part_min(v: np.ndarray, tol: float) -> float | None:
    """Minimum entry of a phase-normalized vector, or None if it is not real."""
    v = _phase_normalized(v)
    if np.max(np.abs(v.imag)) > tol * np.linalg.norm(v):
        return None
    return float(np.min(v.real))


def perron_frobenius_certificate(
    M, mode: Literal["power", "semigroup"] = "power", tol: float | None = None
) -> SpectralCertificate | None:
    """Spectral certificate of eventual strict positivity, or None.

    power mode: the spectral radius is a simple, real, positive eigenvalue
    strictly larger in modulus than every other eigenvalue. semigroup mode:
    the spectral bound is a simple real eigenvalue with strictly larger real
    part than every other eigenvalue. In both modes the right and left
    eigenvectors must be strictly positive after a global phase rotation and
    the matrix itself must be real.
    """
    M = linalg.as_matrix(M)
    if tol is None:
        tol = linalg.default_tol_cluster(M)
    if not linalg.is_real(M, tol):
        return None
    data = linalg.eig(M, tol_cluster=tol)
    values = data.eigenvalues
    if mode == "power":
        key = np.abs(values)
    elif mode == "semigroup":
        key = values.real
    else:
        raise ValueError(f"unknown mode {mode!r}")
    order = np.argsort(-key, kind="stable")
    top = data.clusters[order[0]]
    if top.algebraic != 1 or abs(top.value.imag) > tol:
        return None
    if mode == "power" and top.value.real <= tol:
        return None
    gap = float(key[order[0]] - key[order[1]]) if len(order) > 1 else float("inf")
    if gap <= tol:
        return None
    right_min = _positive_part_min(top.right[:, 0], tol)
    left_min = _positive_part_min(top.left[0, :], tol)
    if right_min is None or left_min is None or right_min <= tol or left_min <= tol:
        return None
    return SpectralCertificate(
        dominant_eigenvalue=float(top.value.real),
        right_min=right_min,
        left_min=left_min,
        gap=gap,
        right_vector=_phase_normalized(top.right[:, 0]).real,
        left_vector=_phase_normalized(top.left[0, :]).real,
    )


def _verdict(witness: float | None, certificate: SpectralCertificate | None) -> str:
    if witness is None:
        return NOT_DETECTED
    if witness == 0:
        return POSITIVE_FROM_START
    if certificate is not None:
        return CERTIFIED
    return EVENTUALLY_POSITIVE


def _last_failure(flags: list[bool]) -> int | None:
    for i in range(len(flags) - 1, -1, -1):
        if not flags[i]:
            return i
    return None


def positive_powers_from(T, n_max: int, tol_pos: float | None = None) -> int | None:
    """Least n0 <= n_max with T^n positive for every n in [n0, n_max], else None."""
    T = linalg.as_matrix(T)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    n = T.shape[0]
    power = np.eye(n, dtype=np.complex128)
    flags = []
    for k in range(n_max + 1):
        if k:
            power = power @ T
        size = float(np.max(np.abs(power)))
        if not np.isfinite(size) or size > _OVERFLOW_NORM:
            raise RangeError(
                f"T^{k} overflowed (max entry {size:.3g}); rescale T by its spectral radius"
            )
        flags.append(is_positive_matrix(power, tol_pos))
    last = _last_failure(flags)
    if last is None:
        return 0
    if last == n_max:
        return None
    return last + 1


def eventual_positivity_of_powers(
    T, n_max: int = 200, tol_pos: float | None = None
) -> PositivityCertificate:
    T = linalg.as_matrix(T)
    n0 = positive_powers_from(T, n_max, tol_pos)
    cert = perron_frobenius_certificate(T, "power")
    return PositivityCertificate(
        kind="power",
        verdict=_verdict(n0, cert),
        witness=None if n0 is None else float(n0),
        spectral_certificate=cert,
        horizon=float(n_max),
        tol_pos=TOL_POS_REL if tol_pos is None else float(tol_pos),
    )


def semigroup_grid(t_max: float, steps: int) -> np.ndarray:
    """Uniform grid on [0, t_max] plus geometric refinement towards t = 0."""
    if t_max <= 0:
        raise ValueError("t_max must be positive")
    if steps < 2:
        raise ValueError("steps must be >= 2")
    uniform = np.linspace(0.0, t_max, steps)
    fine = np.geomspace(t_max * 1e-6, uniform[1], 24, endpoint=False)
    return np.unique(np.concatenate([uniform, fine]))


def positive_semigroup_from(
    A, t_max: float, steps: int, tol_pos: float | None = None
) -> float | None:
    """Least sampled t0 with exp(tA) positive at every grid point t >= t0, else None."""
    A = linalg.as_matrix(A)
    grid = semigroup_grid(t_max, steps)
    flags = []
    for t in grid:
        try:
            E = linalg.expm(t * A)
        except RangeError as exc:
            raise RangeError(
                f"semigroup overflowed at t = {t:.6g}; analyze the rescaled "
                "semigroup exp(t(A - s(A)I)) instead"
            ) from exc
        flags.append(is_positive_matrix(E, tol_pos))
    last = _last_failure(flags)
    if last is None:
        return 0.0
    if last == len(grid) - 1:
        return None
    return float(grid[last + 1])


def eventual_positivity_of_semigroup(
    A, t_max: float = 50.0, steps: int = 200, tol_pos: float | None = None
) -> PositivityCertificate:
    A = linalg.as_matrix(A)
    t0 = positive_semigroup_from(A, t_max, steps, tol_pos)
    cert = perron_frobenius_certificate(A, "semigroup")
    return PositivityCertificate(
        kind="semigroup",
        verdict=_verdict(t0, cert),
        witness=t0,
        spectral_certificate=cert,
        horizon=float(t_max),
        tol_pos=TOL_POS_REL if tol_pos is None else float(tol_pos),
    )

"""Spectral bound, spectral radius, peripheral spectrum, pole orders and
spectral projections.

Spectral projections are computed two independent ways:

* algebraically, as the projection onto ``ker((lam I - A)^m)`` along
  ``im((lam I - A)^m)`` with ``m`` the pole order;
* by trapezoidal quadrature of the Cauchy integral
  ``(2 pi i)^{-1} \\oint (mu I - A)^{-1} d mu`` over a circle around ``lam``.

For matrices every eigenvalue is a Riesz point, the essential spectrum is
empty, and the growth bound of ``exp(tA)`` equals the spectral bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import linalg
from .errors import (
    CircleIntersectsSpectrumError,
    ConditioningError,
    ForeignEigenvalueError,
)

ESSENTIAL_SPECTRAL_RADIUS = 0.0
GROWTH_NOTE = (
    "for a matrix generator the growth bound of exp(tA) equals the spectral bound s(A)"
)
_MAX_BASIS_CONDITION = 1e12


def default_tol_peripheral(A) -> float:
    return linalg.TOL_CLUSTER_REL * (1.0 + linalg.norm2(A))


@dataclass(frozen=True)
class SpectrumReport:
    eigen: linalg.EigenData
    spectral_bound: float
    spectral_radius: float
    peripheral_set: tuple[complex, ...]
    peripheral_point_set_on_axis: tuple[complex, ...]
    tol_peripheral: float
    growth_note: str = GROWTH_NOTE
    essential_spectral_radius: float = ESSENTIAL_SPECTRAL_RADIUS

    def point_spectrum_on_axis(self, shifted: bool = False) -> tuple[complex, ...]:
        """Eigenvalues on iR, or on s(A) + iR (returned shifted to iR) when ``shifted``."""
        offset = self.spectral_bound if shifted else 0.0
        return tuple(
            complex(v - offset)
            for v in self.eigen.eigenvalues
            if abs(v.real - offset) <= self.tol_peripheral
        )

    def peripheral_radius_set(self) -> tuple[complex, ...]:
        """Eigenvalues of modulus r(T), for power-type statements."""
        r = self.spectral_radius
        return tuple(
            complex(v) for v in self.eigen.eigenvalues if abs(abs(v) - r) <= self.tol_peripheral
        )


@dataclass(frozen=True)
class ProjectionResult:
    projection: np.ndarray
    eigenvalue: complex
    method: Literal["algebraic", "contour"]
    idempotency_defect: float
    commutation_defect: float
    trace_gap: float

    @property
    def rank(self) -> int:
        return int(round(np.trace(self.projection).real))


def spectrum_report(A, tol: float | None = None, eigen: linalg.EigenData | None = None) -> SpectrumReport:
    """Spectral summary of ``A``; ``tol`` is the peripheral tolerance."""
    A = linalg.as_matrix(A)
    if tol is None:
        tol = default_tol_peripheral(A)
    data = linalg.eig(A) if eigen is None else eigen
    values = data.eigenvalues
    s = float(np.max(values.real))
    r = float(np.max(np.abs(values)))
    peripheral = tuple(complex(v) for v in values if v.real >= s - tol)
    on_axis = tuple(complex(v) for v in values if abs(v.real) <= tol)
    return SpectrumReport(
        eigen=data,
        spectral_bound=s,
        spectral_radius=r,
        peripheral_set=peripheral,
        peripheral_point_set_on_axis=on_axis,
        tol_peripheral=float(tol),
    )


def pole_order(A, lam: complex, tol: float | None = None) -> int:
    """Order of ``lam`` as a pole of the resolvent; 1 iff ``lam`` is semisimple."""
    return linalg.matrix_index(A, lam, tol_cluster=tol)


def _residuals(A: np.ndarray, P: np.ndarray, multiplicity: int) -> tuple[float, float, float]:
    return (
        linalg.norm2(P @ P - P),
        linalg.norm2(A @ P - P @ A),
        abs(np.trace(P).real - multiplicity) + abs(np.trace(P).imag),
    )


def spectral_projection_algebraic(A, lam: complex, tol: float | None = None) -> ProjectionResult:
    A = linalg.as_matrix(A)
    n = A.shape[0]
    data = linalg.eig(A, tol_cluster=tol)
    cluster = data.cluster_of(lam)
    m = cluster.algebraic
    if m == n:
        P = np.eye(n, dtype=np.complex128)
    else:
        N = np.linalg.matrix_power(cluster.value * np.eye(n) - A, cluster.index)
        U, _, Vh = np.linalg.svd(N)
        kernel = Vh[n - m:, :].conj().T
        image = U[:, : n - m]
        basis = np.hstack([kernel, image])
        cond = float(np.linalg.cond(basis))
        if not np.isfinite(cond) or cond > _MAX_BASIS_CONDITION:
            raise ConditioningError(
                f"generalized eigenspace basis at {cluster.value} has condition {cond:.3e}",
                cond,
            )
        selector = np.zeros((n, n), dtype=np.complex128)
        selector[:m, :m] = np.eye(m)
        P = basis @ selector @ np.linalg.inv(basis)
    idem, comm, trace_gap = _residuals(A, P, m)
    return ProjectionResult(P, cluster.value, "algebraic", idem, comm, trace_gap)


def default_contour_radius(data: linalg.EigenData, center: complex) -> float:
    others = [abs(c.value - center) for c in data.clusters if c.value != center]
    if not others:
        return 1.0
    return 0.5 * min(others)


def spectral_projection_contour(
    A,
    lam: complex,
    radius: float | None = None,
    nodes: int = 64,
    tol: float | None = None,
) -> ProjectionResult:
    """Trapezoidal rule for (2 pi i)^{-1} times the contour integral of the resolvent.

    With ``mu_j = lam + radius * exp(2 pi i j / nodes)`` the rule reads
    ``P = nodes^{-1} sum_j (mu_j - lam) R(mu_j)``; for integrands analytic in
    an annulus around the circle the error decays geometrically in ``nodes``.
    """
    A = linalg.as_matrix(A)
    n = A.shape[0]
    data = linalg.eig(A, tol_cluster=tol)
    cluster = data.cluster_of(lam)
    center = cluster.value
    if radius is None:
        radius = default_contour_radius(data, center)
    if radius <= 0 or nodes < 2:
        raise ValueError("radius must be positive and nodes >= 2")
    raw = linalg.eigenvalues(A)
    clearance = np.min(np.abs(np.abs(raw - center) - radius))
    if clearance <= max(data.tol_cluster, 1e-3 * radius):
        raise CircleIntersectsSpectrumError(
            f"circle of radius {radius:.6g} about {center} passes within "
            f"{clearance:.3e} of the spectrum"
        )
    ident = np.eye(n, dtype=np.complex128)
    P = np.zeros((n, n), dtype=np.complex128)
    for j in range(nodes):
        offset = radius * np.exp(2j * np.pi * j / nodes)
        P += offset * np.linalg.solve((center + offset) * ident - A, ident)
    P /= nodes
    idem, comm, trace_gap = _residuals(A, P, cluster.algebraic)
    if trace_gap > 0.5:
        raise ForeignEigenvalueError(
            f"trace of the contour projection is {np.trace(P):.6g} but the algebraic "
            f"multiplicity at {center} is {cluster.algebraic}; the circle encloses "
            "other eigenvalues"
        )
    return ProjectionResult(P, center, "contour", idem, comm, trace_gap)


@dataclass(frozen=True)
class RieszPoint:
    is_riesz: bool
    pole_order: int
    spectral_space_dim: int


def riesz_point_check(T, lam: complex, tol: float | None = None) -> RieszPoint:
    """Every eigenvalue of a matrix is a Riesz point; report pole order and dimension."""
    proj = spectral_projection_algebraic(T, lam, tol)
    return RieszPoint(
        is_riesz=True,
        pole_order=pole_order(T, lam, tol),
        spectral_space_dim=proj.rank,
    )

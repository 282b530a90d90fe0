"""Dense complex linear algebra kernel.

Matrices are plain ``numpy`` arrays. :func:`as_matrix` validates an input,
converts it to ``complex128`` and returns a read-only copy, which is the
representation every other evpos module works with.

Eigenvalues come from the complex Schur form (Hessenberg reduction followed
by shifted QR, via LAPACK). Computed eigenvalues closer than ``tol_cluster``
are merged into clusters; multiplicities and the index of each cluster are
then decided by rank tests on powers of ``lambda*I - M``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np
import scipy.linalg

from .errors import (
    DimensionError,
    NotASpectralValueError,
    NumericalFailure,
    RangeError,
    SpectralCollisionError,
)

TOL_RANK = 1e-10
TOL_CLUSTER_REL = 1e-7

# Pade degree for expm; with the scaled norm below 1/2 the truncation error
# of the [7/7] approximant is below 1e-20.
_PADE_DEGREE = 7
_PADE_COEFFS = tuple(
    factorial(2 * _PADE_DEGREE - k) * factorial(_PADE_DEGREE)
    / (factorial(2 * _PADE_DEGREE) * factorial(k) * factorial(_PADE_DEGREE - k))
    for k in range(_PADE_DEGREE + 1)
)


def as_matrix(M, *, square: bool = True) -> np.ndarray:
    """Validate ``M`` and return it as a read-only complex128 copy."""
    arr = np.array(M, dtype=np.complex128, copy=True)
    if arr.ndim != 2:
        raise DimensionError(f"expected a 2-d matrix, got an array with shape {arr.shape}")
    rows, cols = arr.shape
    if rows == 0 or cols == 0:
        raise DimensionError("empty matrices are not accepted")
    if square and rows != cols:
        raise DimensionError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DimensionError("matrix has non-finite entries")
    arr.setflags(write=False)
    return arr


def norm2(M) -> float:
    return float(np.linalg.norm(M, 2)) if np.size(M) else 0.0


def default_tol_cluster(M) -> float:
    return TOL_CLUSTER_REL * (1.0 + norm2(M))


def is_real(M, tol: float = 0.0) -> bool:
    return bool(np.all(np.abs(np.imag(M)) <= tol))


def rank(M, tol_rank: float = TOL_RANK, scale: float | None = None) -> int:
    """Numerical rank: singular values above ``tol_rank * max(sigma_max, scale)``.

    ``scale`` lets callers measure a matrix against a reference size other
    than its own largest singular value, which matters for powers of nearly
    nilpotent matrices.
    """
    M = np.asarray(M, dtype=np.complex128)
    if M.size == 0:
        return 0
    sv = np.linalg.svd(M, compute_uv=False)
    ref = sv[0] if scale is None else max(sv[0], scale)
    return int(np.count_nonzero(sv > tol_rank * ref))


@dataclass(frozen=True)
class EigenCluster:
    value: complex
    algebraic: int
    geometric: int
    index: int
    right: np.ndarray  # n x geometric, unit columns
    left: np.ndarray  # geometric x n, unit rows, left @ M == value * left
    members: tuple[complex, ...]


@dataclass(frozen=True)
class EigenData:
    clusters: tuple[EigenCluster, ...]
    tol_cluster: float
    n: int

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.array([c.value for c in self.clusters], dtype=np.complex128)

    @property
    def algebraic_multiplicity(self) -> list[int]:
        return [c.algebraic for c in self.clusters]

    @property
    def geometric_multiplicity(self) -> list[int]:
        return [c.geometric for c in self.clusters]

    @property
    def index(self) -> list[int]:
        return [c.index for c in self.clusters]

    @property
    def right_eigenvectors(self) -> np.ndarray:
        return np.hstack([c.right for c in self.clusters])

    @property
    def left_eigenvectors(self) -> np.ndarray:
        return np.vstack([c.left for c in self.clusters])

    def cluster_of(self, lam: complex, tol: float | None = None) -> EigenCluster:
        """Return the cluster nearest to ``lam``; raise if none is within ``tol``."""
        tol = self.tol_cluster if tol is None else tol
        dists = [abs(c.value - lam) for c in self.clusters]
        k = int(np.argmin(dists))
        if dists[k] > tol:
            raise NotASpectralValueError(
                f"{lam} is not an eigenvalue (nearest {self.clusters[k].value}, "
                f"distance {dists[k]:.3e} > {tol:.3e})",
                lam,
            )
        return self.clusters[k]


def eigenvalues(M) -> np.ndarray:
    """Raw (unclustered) eigenvalues from the complex Schur form."""
    M = as_matrix(M)
    try:
        T = scipy.linalg.schur(M, output="complex")[0]
    except (np.linalg.LinAlgError, ValueError) as exc:
        n = M.shape[0]
        raise NumericalFailure(
            f"Schur QR iteration failed to converge for a {n}x{n} matrix with "
            f"2-norm {norm2(M):.6g} within {30 * n} iterations"
        ) from exc
    return np.diag(T).copy()


def _cluster(values: np.ndarray, tol: float) -> list[list[complex]]:
    # single-linkage: merge any two values within tol
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) <= tol:
                parent[find(i)] = find(j)
    groups: dict[int, list[complex]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(complex(values[i]))
    return list(groups.values())


def _nullities(N: np.ndarray, ref: float, limit: int, tol_rank: float) -> list[int]:
    """dim ker(N^k) for k = 1, 2, ... until it stabilizes or reaches ``limit``."""
    n = N.shape[0]
    out: list[int] = []
    power = np.eye(n, dtype=np.complex128)
    for k in range(1, limit + 2):
        power = power @ N
        nullity = n - rank(power, tol_rank, scale=ref**k)
        nullity = min(nullity, limit)
        out.append(nullity)
        if nullity >= limit or (len(out) > 1 and out[-1] == out[-2]):
            break
    return out


def _index_from_nullities(nulls: list[int], limit: int) -> int:
    for k, d in enumerate(nulls, start=1):
        if d >= limit:
            return k
        if k > 1 and d == nulls[k - 2]:
            return k - 1
    return len(nulls)


def eig(M, tol_cluster: float | None = None, tol_rank: float = TOL_RANK) -> EigenData:
    """Clustered eigenstructure of a square matrix.

    Clusters are ordered by decreasing real part, then decreasing imaginary
    part. For real input, clusters whose centre is within ``tol_cluster`` of
    the real axis get an exactly real value.
    """
    M = as_matrix(M)
    n = M.shape[0]
    if tol_cluster is None:
        tol_cluster = default_tol_cluster(M)
    if tol_cluster <= 0:
        raise ValueError("tol_cluster must be positive")
    raw = eigenvalues(M)
    real_input = is_real(M)
    normM = norm2(M)
    clusters = []
    for members in _cluster(raw, tol_cluster):
        value = complex(np.mean(members))
        if real_input and abs(value.imag) <= tol_cluster:
            value = complex(value.real, 0.0)
        m = len(members)
        N = value * np.eye(n) - M
        ref = max(norm2(N), normM)
        nulls = _nullities(N, ref, m, tol_rank)
        geometric = max(1, nulls[0])
        index = max(1, _index_from_nullities(nulls, m))
        U, _, Vh = np.linalg.svd(N)
        right = Vh[n - geometric:, :].conj().T
        left = U[:, n - geometric:].conj().T
        clusters.append(
            EigenCluster(
                value=value,
                algebraic=m,
                geometric=geometric,
                index=index,
                right=right,
                left=left,
                members=tuple(sorted(members, key=lambda z: (z.real, z.imag))),
            )
        )
    clusters.sort(key=lambda c: (-c.value.real, -c.value.imag))
    return EigenData(clusters=tuple(clusters), tol_cluster=float(tol_cluster), n=n)


def matrix_index(
    M, lam: complex, tol_rank: float = TOL_RANK, tol_cluster: float | None = None
) -> int:
    """Smallest k with ker((lam I - M)^k) == ker((lam I - M)^(k+1)).

    This is the pole order of the resolvent at ``lam``.
    """
    return eig(M, tol_cluster, tol_rank).cluster_of(lam).index


def expm(M) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a [7/7] Pade approximant."""
    M = as_matrix(M)
    n = M.shape[0]
    ident = np.eye(n, dtype=np.complex128)
    norm1 = float(np.linalg.norm(M, 1))
    if norm1 == 0.0:
        return ident
    squarings = max(0, int(np.ceil(np.log2(norm1 / 0.5))))
    X = M / 2.0**squarings
    num = _PADE_COEFFS[0] * ident
    den = _PADE_COEFFS[0] * ident
    power = ident
    for k in range(1, _PADE_DEGREE + 1):
        power = power @ X
        term = _PADE_COEFFS[k] * power
        num = num + term
        den = den + (-1) ** k * term
    F = scipy.linalg.solve(den, num)
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(squarings):
            F = F @ F
    if not np.all(np.isfinite(F)):
        raise RangeError(
            f"matrix exponential overflowed (1-norm of argument {norm1:.6g}); "
            "rescale the argument, e.g. subtract the spectral bound"
        )
    return F


def resolvent(
    M, z: complex, tol: float | None = None, spectrum: np.ndarray | None = None
) -> np.ndarray:
    """(zI - M)^{-1} by LU factorization.

    Raises SpectralCollisionError when ``z`` lies within ``tol`` (default the
    clustering tolerance) of an eigenvalue. ``spectrum`` may carry
    precomputed eigenvalues to skip the Schur step.
    """
    M = as_matrix(M)
    n = M.shape[0]
    if tol is None:
        tol = default_tol_cluster(M)
    spec = eigenvalues(M) if spectrum is None else np.asarray(spectrum)
    dist = np.abs(spec - z)
    k = int(np.argmin(dist))
    if dist[k] <= tol:
        raise SpectralCollisionError(
            f"z = {z} lies within {tol:.3e} of the eigenvalue {spec[k]}", complex(spec[k])
        )
    lu = scipy.linalg.lu_factor(z * np.eye(n) - M)
    return scipy.linalg.lu_solve(lu, np.eye(n, dtype=np.complex128))

"""Seeded instance families with exact ground truth.

``evpos-semigroup`` and ``evpos-power`` share one construction. With
strictly positive ``v`` and ``w`` let ``P = v w^T / (w^T v)`` and let ``U`` be
an orthonormal basis of ``w``'s orthogonal complement, so that ``[v, U]`` is
invertible with inverse rows ``w^T / (w^T v)`` and ``U^T (I - P)``. Then

    A = s P + U B U^T (I - P)

has spectrum ``{s} cup sigma(B)``, the spectral projection at ``s`` is ``P``,
and ``exp(t(A - s)) = P + U exp(t(B - s)) U^T (I - P)`` tends to the strictly
positive ``P`` whenever ``sigma(B)`` lies left of ``s``. ``B`` is an
orthogonal similarity of a real block diagonal matrix with prescribed
eigenvalues, so every eigenvalue of the instance is known exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import ParameterError

FAMILIES = (
    "evpos-semigroup",
    "metzler",
    "evpos-power",
    "rotation-counterexample",
    "jordan-counterexample",
)

SEMIGROUP_THEOREMS = ("thm-2.1", "cor-2.2", "thm-3.1", "lem-3.2", "thm-5.1", "thm-5.2", "lem-5.3")
POWER_THEOREMS = ("thm-4.1", "thm-4.3", "eq-4.2-sequences")

CONFIRMED = "confirmed"
NOT_MET = "hypotheses-not-met"


@dataclass(frozen=True)
class InstanceBundle:
    matrix: np.ndarray
    family: str
    ground_truth: dict
    seed: int
    params: dict = field(default_factory=dict)


def _positive_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.uniform(0.2, 1.0, n)


def _random_orthogonal(rng: np.random.Generator, n: int) -> np.ndarray:
    Q, R = np.linalg.qr(rng.standard_normal((n, n)))
    return Q * np.sign(np.diag(R))


def _block_diagonal(eigs: list[complex]) -> np.ndarray:
    """Real block diagonal matrix; each value with positive imaginary part stands for a conjugate pair."""
    blocks = []
    for z in eigs:
        if z.imag > 0:
            blocks.append(np.array([[z.real, z.imag], [-z.imag, z.real]]))
        else:
            blocks.append(np.array([[z.real]]))
    return scipy.linalg.block_diag(*blocks)


def _expand(eigs: list[complex]) -> list[complex]:
    out = []
    for z in eigs:
        out.append(complex(z))
        if z.imag > 0:
            out.append(complex(z.real, -z.imag))
    return out


def _rank_one_frame(v: np.ndarray, w: np.ndarray):
    P = np.outer(v, w) / (w @ v)
    U = scipy.linalg.null_space(w[None, :])
    return P, U


def _assemble(v, w, dominant: float, block: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    P, U = _rank_one_frame(v, w)
    n = len(v)
    A = dominant * P + U @ block @ U.T @ (np.eye(n) - P)
    return A, P


def _complement_slots(dim: int, leading: complex, rng, draw) -> list[complex]:
    """Eigenvalue slots filling ``dim`` real dimensions, led by ``leading``."""
    eigs: list[complex] = []
    used = 0
    if leading.imag > 0 and dim >= 2:
        eigs.append(leading)
        used = 2
    elif dim >= 1:
        eigs.append(complex(leading.real, 0.0))
        used = 1
    while used < dim:
        if dim - used >= 2 and rng.random() < 0.5:
            eigs.append(draw(pair=True))
            used += 2
        else:
            eigs.append(draw(pair=False))
            used += 1
    return eigs


def _semigroup_expectations(s: float) -> dict:
    bounded = s <= 0
    return {
        "thm-2.1": CONFIRMED if bounded else NOT_MET,
        "cor-2.2": CONFIRMED,
        "thm-3.1": CONFIRMED,
        "lem-3.2": CONFIRMED if s == 0 else NOT_MET,
        "thm-5.1": CONFIRMED,
        "thm-5.2": CONFIRMED,
        "lem-5.3": CONFIRMED,
    }


def _evpos_semigroup(n, rng, s=0.0, gap=1.0, omega=1.0, spread=2.0, randomize_basis=True):
    if gap <= 0:
        raise ParameterError("gap must be positive")
    if omega < 0 or spread < 0:
        raise ParameterError("omega and spread must be nonnegative")
    v, w = _positive_vector(rng, n), _positive_vector(rng, n)
    lead = complex(s - gap, omega)

    def draw(pair):
        re = s - gap - rng.uniform(0.0, spread) if spread > 0 else s - gap
        return complex(re, rng.uniform(0.5, 3.0)) if pair else complex(re, 0.0)

    slots = _complement_slots(n - 1, lead, rng, draw)
    D = _block_diagonal(slots)
    O = _random_orthogonal(rng, n - 1) if randomize_basis else np.eye(n - 1)
    A, P = _assemble(v, w, s, O @ D @ O.T)
    eigs = [complex(s)] + _expand(slots)
    truth = {
        "spectral_bound": float(s),
        "spectral_radius": float(max(abs(z) for z in eigs)),
        "projection": P,
        "projection_rank": 1,
        "spectral_gap": float(gap),
        "eigenvalues": eigs,
        "right_vector": v,
        "left_vector": w,
        "expected": _semigroup_expectations(float(s)),
    }
    return A, truth


def _metzler(n, rng, s=0.0):
    Q = rng.uniform(0.05, 1.0, (n, n))
    np.fill_diagonal(Q, 0.0)
    np.fill_diagonal(Q, -Q.sum(axis=1))
    # stationary row vector: pi Q = 0, sum(pi) = 1
    lhs = np.vstack([Q.T, np.ones(n)])
    rhs = np.concatenate([np.zeros(n), [1.0]])
    pi = np.linalg.lstsq(lhs, rhs, rcond=None)[0]
    A = Q + s * np.eye(n)
    eigs = np.linalg.eigvals(A)
    others = sorted(eigs.real)[:-1]
    truth = {
        "spectral_bound": float(s),
        "spectral_radius": float(np.max(np.abs(eigs))),
        "projection": np.outer(np.ones(n), pi),
        "projection_rank": 1,
        "spectral_gap": float(s - max(others)) if others else float("inf"),
        "eigenvalues": [complex(z) for z in eigs],
        "right_vector": np.ones(n),
        "left_vector": pi,
        "expected": _semigroup_expectations(float(s)),
    }
    return A, truth


def _evpos_power(
    n, rng, r=1.0, rho=0.5, theta=2 * np.pi / 3, v=None, w=None, randomize_basis=True
):
    if r <= 0:
        raise ParameterError("r must be positive")
    if not 0 <= rho < 1:
        raise ParameterError("rho must lie in [0, 1) so the complement is a contraction")
    v = _positive_vector(rng, n) if v is None else np.asarray(v, dtype=float)
    w = _positive_vector(rng, n) if w is None else np.asarray(w, dtype=float)
    if len(v) != n or len(w) != n or np.any(v <= 0) or np.any(w <= 0):
        raise ParameterError("v and w must be strictly positive vectors of length n")
    if n - 1 == 1:
        slots = [complex(-rho, 0.0)]
    else:
        lead = rho * np.exp(1j * theta)
        lead = complex(lead.real, abs(lead.imag))

        def draw(pair):
            mod = rho * rng.uniform(0.1, 1.0)
            if pair:
                return complex(mod * np.exp(1j * rng.uniform(0.3, np.pi - 0.3)))
            return complex(mod * rng.choice([-1.0, 1.0]), 0.0)

        slots = _complement_slots(n - 1, lead, rng, draw)
    D = _block_diagonal(slots)
    O = _random_orthogonal(rng, n - 1) if randomize_basis else np.eye(n - 1)
    T, P = _assemble(v, w, 1.0, O @ D @ O.T)
    T = r * T
    eigs = [complex(r)] + [r * z for z in _expand(slots)]
    truth = {
        "spectral_radius": float(r),
        "spectral_bound": float(max(z.real for z in eigs)),
        "projection": P,
        "projection_rank": 1,
        "modulus_gap": float(r * (1.0 - max(abs(z) for z in slots))),
        "eigenvalues": eigs,
        "right_vector": v,
        "left_vector": w,
        "expected": {k: CONFIRMED for k in POWER_THEOREMS},
    }
    return T, truth


def _embed(block: np.ndarray, n: int, fill: float) -> np.ndarray:
    if n < block.shape[0]:
        raise ParameterError(f"dimension must be at least {block.shape[0]}")
    A = fill * np.eye(n)
    A[: block.shape[0], : block.shape[0]] = block
    return A


def _rotation(n, rng, fill=-1.0):
    A = _embed(np.array([[0.0, -1.0], [1.0, 0.0]]), n, fill)
    eigs = [1j, -1j] + [complex(fill)] * (n - 2)
    truth = {
        "spectral_bound": 0.0 if n == 2 or fill <= 0 else float(fill),
        "spectral_radius": float(max(abs(z) for z in eigs)),
        "projection": None,
        "eigenvalues": eigs,
        "expected": {k: NOT_MET for k in SEMIGROUP_THEOREMS + POWER_THEOREMS},
    }
    return A, truth


def _jordan(n, rng, shift=0.0, fill=-1.0):
    A = _embed(np.array([[0.0, 1.0], [0.0, 0.0]]), n, fill) + shift * np.eye(n)
    eigs = [complex(shift)] * 2 + [complex(fill + shift)] * (n - 2)
    expected = {
        "thm-2.1": NOT_MET,
        "cor-2.2": CONFIRMED,
        "thm-3.1": CONFIRMED,
        "lem-3.2": NOT_MET,
        "thm-5.1": CONFIRMED,
        "thm-5.2": CONFIRMED,
        "lem-5.3": NOT_MET,
        "thm-4.1": NOT_MET,
        "thm-4.3": NOT_MET,
        "eq-4.2-sequences": NOT_MET,
    }
    truth = {
        "spectral_bound": float(max(z.real for z in eigs)),
        "spectral_radius": float(max(abs(z) for z in eigs)),
        "projection": None,
        "pole_order_at_bound": 2,
        "eigenvalues": eigs,
        "expected": expected,
    }
    return A, truth


_BUILDERS = {
    "evpos-semigroup": _evpos_semigroup,
    "metzler": _metzler,
    "evpos-power": _evpos_power,
    "rotation-counterexample": _rotation,
    "jordan-counterexample": _jordan,
}


def generate(family: str, n: int, seed: int = 0, **params) -> InstanceBundle:
    """Build one instance of ``family`` in dimension ``n``, reproducibly from ``seed``."""
    if family not in _BUILDERS:
        raise ParameterError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if n < 2:
        raise ParameterError("n must be at least 2")
    rng = np.random.default_rng(seed)
    try:
        matrix, truth = _BUILDERS[family](n, rng, **params)
    except TypeError as exc:
        raise ParameterError(f"bad parameters for {family}: {exc}") from exc
    matrix = np.array(matrix, dtype=float)
    matrix.setflags(write=False)
    return InstanceBundle(matrix=matrix, family=family, ground_truth=truth, seed=seed, params=dict(params))

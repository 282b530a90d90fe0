"""Acceptance suite: one pass/fail line per criterion, tolerances pinned below.

The lines are collected in RESULTS and printed in pytest's terminal summary
(see conftest.py); ``python tests/test_acceptance.py`` prints them directly.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from conftest import DIAG01, HALF_ONES, JORDAN_ONE, NILPOTENT, ROTATION, SYM_METZLER, random_matrix  # noqa: E402
from test_spectral import diagonalizable  # noqa: E402

from evpos import checkers, dynamics, generators, io, linalg, positivity, spectral  # noqa: E402
from evpos.checkers import CONFIRMED, NOT_MET, VIOLATION  # noqa: E402

KERNEL_TOL = 1e-9
KERNEL_SECONDS = 10.0
PROJECTION_TOL = 1e-8
LEMMA53_SECONDS = 30.0
SLACK_TOL = 1e-10
LIMIT_TOL = 1e-6
DECAY_REL = 0.10
FIXTURE_TOL = 1e-10
SUITE_SECONDS = 120.0

RESULTS: list[str] = []


def record(number: int, title: str, ok: bool, detail: str) -> bool:
    RESULTS.append(f"criterion {number} {title}: {'PASS' if ok else 'FAIL'} ({detail})")
    return ok


def _rel(err, ref) -> float:
    return float(np.linalg.norm(err, 2) / (1.0 + np.linalg.norm(ref, 2)))


def test_criterion_1_kernel_suite():
    start = time.perf_counter()
    worst = {"semigroup": 0.0, "inverse": 0.0, "resolvent": 0.0, "cesaro": 0.0}
    for seed in range(100):
        rng = np.random.default_rng(seed)
        n = 2 + seed % 11
        A = random_matrix(rng, n, norm=rng.uniform(0.1, 2.0))
        s, t = rng.uniform(0, 5, 2)
        whole = linalg.expm((s + t) * A)
        worst["semigroup"] = max(worst["semigroup"], _rel(whole - linalg.expm(s * A) @ linalg.expm(t * A), whole))
        worst["inverse"] = max(worst["inverse"], _rel(linalg.expm(A) @ linalg.expm(-A) - np.eye(n), np.eye(n)))
        Rz, Rw = linalg.resolvent(A, 3.0), linalg.resolvent(A, 5.0)
        worst["resolvent"] = max(worst["resolvent"], _rel(Rz - Rw - 2.0 * Rz @ Rw, Rz))
        tc = rng.uniform(0.01, 10.0)
        E = dynamics.semigroup_at(A, tc)
        lhs = A @ dynamics.cesaro_mean(A, tc) * tc
        worst["cesaro"] = max(worst["cesaro"], _rel(lhs - (E - np.eye(n)), E - np.eye(n)))
    elapsed = time.perf_counter() - start
    ok = max(worst.values()) <= KERNEL_TOL and elapsed < KERNEL_SECONDS
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    assert record(1, "kernel suite", ok, f"{detail} <= {KERNEL_TOL:g}; {elapsed:.1f} s < {KERNEL_SECONDS:g} s")


def test_criterion_2_projection_oracles():
    worst_pair, worst_sum = 0.0, 0.0
    for seed in range(50):
        A, vals = diagonalizable(np.random.default_rng(1000 + seed))
        total = np.zeros((6, 6), dtype=complex)
        for lam in vals:
            alg = spectral.spectral_projection_algebraic(A, lam).projection
            con = spectral.spectral_projection_contour(A, lam).projection
            worst_pair = max(worst_pair, float(np.abs(alg - con).max()))
            total += alg
        worst_sum = max(worst_sum, float(np.abs(total - np.eye(6)).max()))
    ok = worst_pair < PROJECTION_TOL and worst_sum < PROJECTION_TOL
    assert record(
        2, "projection oracles", ok,
        f"contour vs algebraic {worst_pair:.1e}, resolution of identity {worst_sum:.1e} < {PROJECTION_TOL:g}",
    )


def test_criterion_3_lemma53_property():
    start = time.perf_counter()
    verdicts, singletons = [], 0
    for seed in range(200):
        n = 3 + seed % 10
        b = generators.generate("evpos-semigroup", n, seed, s=float(np.random.default_rng(seed).uniform(-1, 1)))
        rep = checkers.check_lemma53(b.matrix)
        verdicts.append(rep.verdict)
        per = rep.conclusions[0].evidence["peripheral_set"]
        singletons += len(per) == 1 and abs(per[0] - b.ground_truth["spectral_bound"]) < 1e-7
    elapsed = time.perf_counter() - start
    violations = verdicts.count(VIOLATION)
    ok = verdicts.count(CONFIRMED) == 200 and singletons == 200 and elapsed < LEMMA53_SECONDS
    assert record(
        3, "peripheral spectrum {s(A)}", ok,
        f"{verdicts.count(CONFIRMED)}/200 confirmed, {singletons}/200 singleton at s(A), "
        f"{violations} VIOLATION; {elapsed:.1f} s < {LEMMA53_SECONDS:g} s",
    )


def test_criterion_4_niiro_sawashima():
    good = 0
    for seed in range(200):
        T = generators.generate("evpos-power", 2 + seed % 11, seed, r=float(0.5 + seed % 4)).matrix
        a = checkers.check_niiro_sawashima(T)
        b = checkers.check_eigenspace_bound_thm43(T)
        good += a.verdict == CONFIRMED and b.verdict == CONFIRMED
    jordan = [checkers.check_niiro_sawashima(JORDAN_ONE).verdict, checkers.check_eigenspace_bound_thm43(JORDAN_ONE).verdict]
    ok = good == 200 and jordan == [NOT_MET, NOT_MET]
    assert record(4, "first order poles and eigenspace bounds", ok, f"{good}/200 confirmed; Jordan fixture {jordan}")


def test_criterion_5_proof_sequences():
    cfg = checkers.CheckConfig(slack_tol=SLACK_TOL, limit_tol=LIMIT_TOL)
    assert cfg.n_list == tuple(2**k for k in range(1, 9)) and cfg.n_samples == 1000
    min_slack, max_dist, confirmed, monotone = np.inf, 0.0, 0, 0
    for seed in range(50):
        rho = 0.3 + 0.06 * (seed % 10)
        T = generators.generate("evpos-power", 2 + seed % 11, seed, rho=rho).matrix
        rep = checkers.check_sequences_eq42(T, cfg=cfg)
        confirmed += rep.verdict == CONFIRMED
        monotone += rep.conclusions[1].held
        min_slack = min(min_slack, rep.conclusions[0].evidence["min_slack"])
        max_dist = max(max_dist, rep.conclusions[2].evidence["final_distance"])
    ok = confirmed == 50 and min_slack >= -SLACK_TOL and max_dist < LIMIT_TOL and monotone == 50
    assert record(
        5, "proof sequences", ok,
        f"{confirmed}/50 confirmed; min slack {min_slack:.1e} >= -{SLACK_TOL:g}; "
        f"norms monotone beyond n = 8 in {monotone}/50; max ||P_256 - P|| {max_dist:.1e} < {LIMIT_TOL:g}",
    )


def _sides(rep) -> tuple[bool, bool]:
    ev = rep.conclusions[0].evidence
    if rep.theorem_id == "cor-2.2":
        return ev["lhs_converges"]["converges"], ev["rhs"]
    if rep.theorem_id == "thm-3.1":
        return ev["strong"]["converges"], ev["mean_ergodic"]["converges"]
    if rep.theorem_id == "thm-5.1":
        return ev["lhs_balancing"]["converges"], ev["rhs"]
    return ev["lhs_balancing"]["converges"] and ev["limit_rank"] is not None, ev["rhs"]


EQUIVALENCES = (
    checkers.check_strong_convergence_cor22,
    checkers.check_thm31,
    checkers.check_thm51,
    checkers.check_thm52,
)


def test_criterion_6_equivalences():
    generated = [generators.generate("evpos-semigroup", 3 + k, k).matrix for k in range(3)]
    generated += [generators.generate("metzler", 4 + k, k).matrix for k in range(2)]
    true_ok = all(
        rep.verdict == CONFIRMED and _sides(rep) == (True, True)
        for A in generated
        for rep in (check(A) for check in EQUIVALENCES)
    )
    nil = [check(NILPOTENT) for check in EQUIVALENCES]
    false_ok = all(rep.verdict == CONFIRMED and _sides(rep) == (False, False) for rep in nil)
    rot = [check(ROTATION) for check in EQUIVALENCES]
    rot_ok = all(rep.verdict == NOT_MET and rep.conclusions for rep in rot)
    me = rot[1].conclusions[0].evidence
    contra = me["mean_ergodic"]["converges"] and not me["strong"]["converges"]
    ok = true_ok and false_ok and rot_ok and contra
    assert record(
        6, "equivalence theorems", ok,
        f"both true on {len(generated)} generated: {true_ok}; both false on nilpotent: "
        f"{[r.verdict for r in nil]}; rotation: {[r.verdict for r in rot]}, mean ergodic "
        f"but not convergent recorded: {contra}",
    )


def test_criterion_7_decay_rate():
    worst = 0.0
    for seed in range(50):
        gap = 0.4 + 0.1 * (seed % 12)
        b = generators.generate("evpos-semigroup", 3 + seed % 10, seed, gap=gap, s=0.2 * (seed % 3))
        slope, _, _ = dynamics.balancing_decay_rate(b.matrix, b.ground_truth["projection"])
        worst = max(worst, abs(slope + gap) / gap)
    ok = worst <= DECAY_REL
    assert record(7, "balancing decay rate", ok, f"worst relative slope error {worst:.2%} <= {DECAY_REL:.0%}")


def test_criterion_8_fixtures():
    pos = positivity.eventual_positivity_of_semigroup(ROTATION)
    bnd = dynamics.is_bounded(ROTATION)
    me = dynamics.is_mean_ergodic(ROTATION)
    st = dynamics.strong_convergence_verdict(ROTATION)
    rot_ok = (
        not pos.detected
        and bnd.bounded
        and me.converges
        and float(np.abs(me.limit).max()) <= FIXTURE_TOL
        and not st.converges
    )
    diag = dynamics.strong_convergence_verdict(DIAG01)
    sym = dynamics.strong_convergence_verdict(SYM_METZLER)
    d_err = float(np.abs(diag.limit - np.diag([1.0, 0.0])).max())
    s_err = float(np.abs(sym.limit - HALF_ONES).max())
    ok = rot_ok and diag.converges and sym.converges and max(d_err, s_err) <= FIXTURE_TOL
    assert record(
        8, "fixture verdicts", ok,
        f"rotation {{not eventually positive, bounded, mean ergodic to 0, not convergent}}: {rot_ok}; "
        f"diag limit err {d_err:.1e}, symmetric limit err {s_err:.1e} <= {FIXTURE_TOL:g}",
    )


def test_criterion_9_reproducibility():
    same = True
    for family in generators.FAMILIES:
        a = generators.generate(family, 4, 7)
        b = generators.generate(family, 4, 7)
        same &= io.dumps_matrix(a.matrix) == io.dumps_matrix(b.matrix)
        ra = [r.to_json() for r in checkers.run_all(a.matrix)]
        rb = [r.to_json() for r in checkers.run_all(b.matrix)]
        same &= ra == rb
    # wall-clock of the whole suite is reported by conftest at session end
    assert record(9, "byte-for-byte reproducibility", same, f"bundles and reports identical across reruns: {same}")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                pass
    print("\n".join(RESULTS))

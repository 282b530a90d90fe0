"""Command line front end.

    evpos analyze M.json
    evpos positivity M.json --mode semigroup --horizon 50
    evpos converge M.json --mode balancing
    evpos check lem-5.3 M.json
    evpos check all M.json --json
    evpos generate --family evpos-semigroup --dim 4 --seed 7 --out A.json

Exit codes: 0 for any data verdict, 2 for usage and input errors, 3 for
numerical failures, 4 when a checker reports VIOLATION.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import checkers, dynamics, generators, positivity, spectral
from .errors import DimensionError, EvposError, ParameterError
from .io import MatrixFileError, load_matrix, save_matrix

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_VIOLATION = 4


class UsageError(Exception):
    pass


def _fmt_complex(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:.10g}"
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real:.10g}{sign}{abs(z.imag):.10g}i"


def _dump(obj) -> str:
    return json.dumps(checkers.to_jsonable(obj), indent=2, allow_nan=False)


# analyze


def analyze_payload(A, tol: float | None) -> dict:
    rep = spectral.spectrum_report(A, tol)
    return {
        "spectral_bound": rep.spectral_bound,
        "spectral_radius": rep.spectral_radius,
        "peripheral_set": list(rep.peripheral_set),
        "point_spectrum_on_axis": list(rep.peripheral_point_set_on_axis),
        "eigenvalues": [
            {
                "value": c.value,
                "algebraic_multiplicity": c.algebraic,
                "geometric_multiplicity": c.geometric,
                "pole_order": c.index,
            }
            for c in rep.eigen.clusters
        ],
        "essential_spectral_radius": rep.essential_spectral_radius,
        "growth_note": rep.growth_note,
        "tol_peripheral": rep.tol_peripheral,
    }


def cmd_analyze(args) -> int:
    payload = analyze_payload(load_matrix(args.path), args.tol)
    if args.json:
        print(_dump(payload))
        return EXIT_OK
    print(f"s(A) = {payload['spectral_bound']:.10g}")
    print(f"r(A) = {payload['spectral_radius']:.10g}")
    print("peripheral set: {" + ", ".join(_fmt_complex(z) for z in payload["peripheral_set"]) + "}")
    print("eigenvalue            alg  geo  pole order")
    for e in payload["eigenvalues"]:
        print(
            f"{_fmt_complex(e['value']):<20}  {e['algebraic_multiplicity']:>3}  "
            f"{e['geometric_multiplicity']:>3}  {e['pole_order']:>10}"
        )
    return EXIT_OK


# positivity


def cmd_positivity(args) -> int:
    M = load_matrix(args.path)
    if args.mode == "power":
        horizon = int(args.horizon) if args.horizon is not None else 200
        cert = positivity.eventual_positivity_of_powers(M, horizon, args.tol)
    else:
        horizon = args.horizon if args.horizon is not None else 50.0
        cert = positivity.eventual_positivity_of_semigroup(M, horizon, args.steps, args.tol)
    sc = cert.spectral_certificate
    payload = {
        "kind": cert.kind,
        "verdict": cert.verdict,
        "witness": cert.witness,
        "horizon": cert.horizon,
        "tol_pos": cert.tol_pos,
        "spectral_certificate": None
        if sc is None
        else {
            "dominant_eigenvalue": sc.dominant_eigenvalue,
            "right_min": sc.right_min,
            "left_min": sc.left_min,
            "gap": sc.gap,
            "right_vector": sc.right_vector,
            "left_vector": sc.left_vector,
        },
    }
    if args.json:
        print(_dump(payload))
        return EXIT_OK
    label = "n0" if cert.kind == "power" else "t0"
    print(f"verdict: {cert.verdict}")
    print(f"witness {label}: {'none within horizon' if cert.witness is None else f'{cert.witness:.6g}'}")
    if sc is None:
        print("spectral certificate: none")
    else:
        print(
            f"spectral certificate: dominant eigenvalue {sc.dominant_eigenvalue:.10g}, "
            f"gap {sc.gap:.6g}, min right {sc.right_min:.6g}, min left {sc.left_min:.6g}"
        )
    return EXIT_OK


# converge


def cmd_converge(args) -> int:
    A = load_matrix(args.path)
    horizon = args.horizon if args.horizon is not None else dynamics.DEFAULT_T_MAX
    tol = args.tol if args.tol is not None else dynamics.DEFAULT_TOL
    fn = {
        "strong": dynamics.strong_convergence_verdict,
        "mean-ergodic": dynamics.is_mean_ergodic,
        "balancing": dynamics.uniform_balancing_verdict,
    }[args.mode]
    verdict = fn(A, horizon, tol)
    payload = {
        "mode": verdict.mode,
        "converges": verdict.converges,
        "limit_rank": verdict.limit_rank,
        "tail_defect": verdict.tail_defect,
        "limit": verdict.limit,
        "certificate": verdict.certificate,
    }
    if args.json:
        print(_dump(payload))
        return EXIT_OK
    print(f"mode: {verdict.mode}")
    print(f"converges: {verdict.converges}")
    print(f"numeric pathway: {verdict.certificate.get('numeric')} ({verdict.certificate.get('agreement')})")
    if verdict.limit is not None:
        print(f"limit (rank {verdict.limit_rank}):")
        print(np.array2string(np.real_if_close(verdict.limit, tol=1000), precision=8, suppress_small=True))
    return EXIT_OK


# check


def _config(args) -> checkers.CheckConfig:
    kw = {"seed": args.seed}
    if args.tol is not None:
        kw["tol"] = args.tol
    if args.horizon is not None:
        kw["t_max"] = args.horizon
    if args.steps is not None:
        kw["steps"] = args.steps
    return checkers.CheckConfig(**kw)


def _render(report: checkers.CheckReport) -> str:
    lines = [f"{report.theorem_id}: {report.verdict}"]
    for title, conds in (("hypotheses", report.hypotheses), ("conclusions", report.conclusions)):
        lines.append(f"  {title}:")
        for c in conds:
            lines.append(f"    [{'x' if c.held else ' '}] {c.name}")
    return "\n".join(lines)


def cmd_check(args) -> int:
    M = load_matrix(args.path)
    cfg = _config(args)
    if args.theorem == "all":
        reports = checkers.run_all(M, cfg)
    elif args.theorem not in checkers.THEOREM_IDS:
        raise UsageError(
            f"unknown theorem id {args.theorem!r}; supported: all, {', '.join(checkers.THEOREM_IDS)}"
        )
    elif args.theorem == "lem-4.2":
        if args.projection is None:
            raise UsageError("lem-4.2 needs --projection P.json")
        reports = [checkers.check_domination_lemma42(M, load_matrix(args.projection), cfg)]
    elif args.theorem == "eq-4.2-sequences":
        reports = [checkers.check_sequences_eq42(M, args.lam, args.k0, cfg=cfg)]
    else:
        reports = [checkers.run_check(args.theorem, M, cfg)]
    if args.json:
        docs = [r.to_dict() for r in reports]
        print(json.dumps(docs if args.theorem == "all" else docs[0], indent=2, allow_nan=False))
    else:
        print("\n".join(_render(r) for r in reports))
    if any(r.verdict == checkers.VIOLATION for r in reports):
        return EXIT_VIOLATION
    return EXIT_OK


# generate


def _param(text: str):
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    key, raw = text.split("=", 1)
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key, value


def metadata(bundle: generators.InstanceBundle) -> dict:
    return {
        "family": bundle.family,
        "n": int(bundle.matrix.shape[0]),
        "seed": bundle.seed,
        "params": bundle.params,
        "ground_truth": bundle.ground_truth,
    }


def cmd_generate(args) -> int:
    params = dict(args.param or [])
    bundle = generators.generate(args.family, args.dim, args.seed, **params)
    out = Path(args.out)
    save_matrix(out, bundle.matrix)
    meta = out.with_name(out.name + ".meta.json")
    meta.write_text(_dump(metadata(bundle)) + "\n")
    print(f"wrote {out} and {meta}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="evpos", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, horizon=True):
        p.add_argument("--tol", type=float, default=None, help="tolerance of the command's main test")
        p.add_argument("--json", action="store_true", help="emit JSON")
        if horizon:
            p.add_argument("--horizon", type=float, default=None)
            p.add_argument("--steps", type=int, default=None)

    p = sub.add_parser("analyze", help="spectral summary")
    p.add_argument("path")
    common(p, horizon=False)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("positivity", help="eventual positivity of powers or semigroup")
    p.add_argument("path")
    p.add_argument("--mode", choices=("power", "semigroup"), default="semigroup")
    common(p)
    p.set_defaults(func=cmd_positivity, steps=200)

    p = sub.add_parser("converge", help="convergence of exp(tA)")
    p.add_argument("path")
    p.add_argument("--mode", choices=("strong", "mean-ergodic", "balancing"), default="strong")
    common(p)
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("check", help="run a theorem checker (or 'all')")
    p.add_argument("theorem")
    p.add_argument("path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--projection", default=None, help="P matrix file for lem-4.2")
    p.add_argument("--lam", type=complex, default=None, help="lambda for eq-4.2-sequences, e.g. -1 or 0.5+0.8j")
    p.add_argument("--k0", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("generate", help="write a seeded instance and its metadata")
    p.add_argument("--family", required=True, choices=generators.FAMILIES)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--param", type=_param, action="append", help="family parameter key=value")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, MatrixFileError, DimensionError, ParameterError) as exc:
        print(f"evpos: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EvposError, np.linalg.LinAlgError, OverflowError) as exc:
        print(f"evpos: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

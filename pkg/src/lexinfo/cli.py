"""Command-line front end: ``lexinfo {measure,attach,verify,anneal,simulate}``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 undefined measure (empty mapping), 4 vocabulary full.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from pathlib import Path

from lexinfo import __version__, learning, measures, optima, search
from lexinfo.errors import (
    ConfigError,
    EnumerationTooLargeError,
    InvalidPlanError,
    ParseError,
    StrategyUnavailableError,
    UndefinedMeasureError,
    VocabularyFullError,
)
from lexinfo.lexmatrix import LexicalMatrix, load, save

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_UNDEFINED = 3
EXIT_CAPACITY = 4

POLICIES = ("always-a", "always-b-random", "greedy-omega", "random")
SUITES = ("strategy", "appendix-a", "appendix-b", "alpha-general", "inequality-chain")


class UsageError(Exception):
    pass


def _sig(obj):
    """Round every float to 12 significant digits for reproducible output."""
    if isinstance(obj, float):
        if math.isfinite(obj):
            r = float(f"{obj:.12g}")
            return 0.0 if r == 0 else r
        return obj
    if isinstance(obj, dict):
        return {k: _sig(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sig(v) for v in obj]
    return obj


def _fmt(x: float) -> str:
    return f"{_sig(float(x))!r}"


def _dumps(obj) -> str:
    return json.dumps(_sig(obj), indent=2, sort_keys=False) + "\n"


def _manifest(args, inputs=(), output=None, seed=None) -> dict:
    flags = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in ("func", "command") and not callable(v)
    }
    return {
        "subcommand": args.command,
        "inputs": [str(p) for p in inputs],
        "flags": flags,
        "seed": seed,
        "output": None if output is None else str(output),
        "version": __version__,
    }


def _unit_factor(args) -> float:
    return measures.NATS_PER_BIT if args.log_base == "e" else 1.0


def _lambda(value: str) -> float:
    try:
        lam = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}") from None
    if not 0.0 <= lam <= 1.0:
        raise argparse.ArgumentTypeError(f"lambda must lie in [0, 1], got {lam}")
    return lam


def _positive_int(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def _seed(value: str) -> int:
    n = int(value)
    if not 0 <= n < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return n


def _meaning_list(value: str) -> list[int]:
    try:
        return [int(x) for x in value.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {value!r}") from None


# -- subcommands -------------------------------------------------------------


def cmd_measure(args, out) -> int:
    matrix = load(args.matrix_file)
    report = measures.measure_report(matrix, args.lam).scaled(_unit_factor(args))
    payload = report.to_dict()
    payload["unit"] = "nats" if args.log_base == "e" else "bits"
    payload["manifest"] = _manifest(args, inputs=[args.matrix_file])
    out.write(_dumps(payload))
    return EXIT_OK


def _default_attach_out(path: str) -> Path:
    p = Path(path)
    return p.with_name(p.stem + ".attached" + (p.suffix or ".txt"))


def cmd_attach(args, out) -> int:
    matrix = load(args.matrix_file)
    plan = learning.plan_attachment(matrix, args.meanings, args.word)
    mutated, report = learning.attach_new_word(matrix, plan)
    dest = Path(args.out) if args.out else _default_attach_out(args.matrix_file)
    save(mutated, dest)
    f = _unit_factor(args)
    payload = {k: v * f for k, v in report.to_dict().items()}
    payload.update(
        {
            "word": plan.word,
            "meanings": list(plan.meanings),
            "alpha": plan.alpha,
            "alpha0": plan.alpha0,
            "target_degrees": list(plan.target_degrees),
            "unit": "nats" if args.log_base == "e" else "bits",
            "matrix_out": str(dest),
        }
    )
    payload["manifest"] = _manifest(args, inputs=[args.matrix_file], output=dest)
    out.write(_dumps(payload))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    vs, vr = args.vs, args.vr
    optima._check_cap(vs, vr)
    payload: dict = {"suite": args.suite, "vs_max": vs, "vr_max": vr}
    if args.suite == "strategy":
        violations = optima.verify_strategy_theorem(vs, vr)
    elif args.suite == "alpha-general":
        violations = optima.verify_alpha_general(vs, vr, args.max_alpha)
        payload["max_alpha"] = args.max_alpha
    elif args.suite == "inequality-chain":
        violations = optima.verify_inequality_chain(vs, vr)
    elif args.suite == "appendix-a":
        rep, violations = optima.verify_appendix_a(vs, vr)
        payload.update(
            maximizer_count=len(rep.extrema),
            extremum_value=rep.extremum_value,
            characterization_match=rep.characterization_match,
        )
    else:
        rep, violations = optima.verify_appendix_b(vs, vr)
        payload.update(
            minimizer_count=len(rep.extrema),
            extremum_value=rep.extremum_value,
            characterization_match=rep.characterization_match,
        )
    payload["passed"] = not violations
    payload["violation_count"] = len(violations)
    payload["violations"] = [v.to_dict() for v in violations]
    payload["manifest"] = _manifest(args)
    out.write(_dumps(payload))
    return EXIT_OK if not violations else EXIT_FAIL


TRAJECTORY_COLUMNS = ("step", "temperature", "cost_bits", "m", "linked_words")


def _trajectory_csv(result: search.AnnealResult, manifest: dict) -> str:
    buf = io.StringIO()
    buf.write("# manifest: " + json.dumps(_sig(manifest), sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRAJECTORY_COLUMNS)
    for p in result.trajectory:
        w.writerow([p.step, _fmt(p.temperature), _fmt(p.cost), p.m, p.linked_words])
    return buf.getvalue()


def cmd_anneal(args, out) -> int:
    config = search.AnnealConfig(
        vs_max=args.vs,
        vr_max=args.vr,
        lam=args.lam,
        steps=args.steps,
        t_initial=args.t_initial,
        cooling=args.cooling,
        seed=args.seed,
        chains=args.chains,
    )
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    manifest = _manifest(args, output=outdir, seed=args.seed)
    results = search.run_chains(config, workers=args.workers)
    for r in results:
        stem = outdir / f"chain_{r.chain:03d}"
        chain_payload = {"config": config.to_dict(), **r.to_dict(), "manifest": manifest}
        stem.with_suffix(".json").write_text(_dumps(chain_payload), encoding="utf-8")
        Path(f"{stem}_trajectory.csv").write_text(_trajectory_csv(r, manifest), encoding="utf-8")
    best = search.best_of(results)
    summary = {
        "config": config.to_dict(),
        "best_chain": best.chain,
        **{k: v for k, v in best.to_dict().items() if k not in ("chain",)},
        "chain_best_costs": [r.best_cost for r in results],
        "manifest": manifest,
    }
    text = _dumps(summary)
    (outdir / "summary.json").write_text(text, encoding="utf-8")
    out.write(text)
    return EXIT_OK


SIMULATE_COLUMNS = ("step", "strategy_used", "target_meaning", "h_s", "h_s_given_r", "i_sr")


def simulate(vs_max: int, vr_max: int, policy: str, steps: int, seed: int, lam: float | None = None) -> list[dict]:
    """Grow a vocabulary one new word per step, each linked to one meaning.

    Before the first step nothing is linked, so every policy starts on an
    unlinked meaning. ``always-a`` falls back to a random linked meaning when
    no unlinked meaning is left.
    """
    if policy not in POLICIES:
        raise UsageError(f"unknown policy {policy!r}")
    if steps > vs_max:
        raise UsageError(f"steps ({steps}) cannot exceed vs_max ({vs_max})")
    if policy == "greedy-omega" and lam is None:
        raise UsageError("greedy-omega needs --lambda")
    rng = random.Random(seed)
    matrix = LexicalMatrix(vs_max, vr_max)
    rows = []
    for step in range(1, steps + 1):
        word = matrix.next_unlinked_word()
        unlinked = matrix.unlinked_meanings()
        linked = matrix.linked_meanings()
        if policy == "always-a":
            target = rng.choice(unlinked) if unlinked else rng.choice(linked)
        elif policy == "always-b-random":
            target = rng.choice(linked) if linked else rng.choice(unlinked)
        elif policy == "random":
            target = rng.randrange(vr_max)
        else:
            best = None
            for j in range(vr_max):
                trial = matrix.copy().add_link(word, j)
                c = measures.omega_cost(trial, lam)
                if best is None or c < best[0] - measures.TOL:
                    best = (c, j)
            target = best[1]
        strategy = "a" if matrix.omega[target] == 0 else "b"
        matrix.add_link(word, target)
        rows.append(
            {
                "step": step,
                "strategy_used": strategy,
                "target_meaning": target,
                "h_s": measures.entropy_words(matrix),
                "h_s_given_r": measures.cond_entropy_words(matrix),
                "i_sr": measures.mutual_info(matrix),
            }
        )
    return rows


def cmd_simulate(args, out) -> int:
    steps = args.steps if args.steps is not None else args.vs
    rows = simulate(args.vs, args.vr, args.policy, steps, args.seed, args.lam)
    f = _unit_factor(args)
    buf = io.StringIO()
    buf.write("# manifest: " + json.dumps(_sig(_manifest(args, output=args.out, seed=args.seed)), sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SIMULATE_COLUMNS)
    for r in rows:
        w.writerow(
            [r["step"], r["strategy_used"], r["target_meaning"],
             _fmt(r["h_s"] * f), _fmt(r["h_s_given_r"] * f), _fmt(r["i_sr"] * f)]
        )
    if args.out:
        Path(args.out).write_text(buf.getvalue(), encoding="utf-8")
    else:
        out.write(buf.getvalue())
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lexinfo", description=__doc__.splitlines()[0])
    parser.add_argument("--log-base", choices=("2", "e"), default="2", help="report bits (2) or nats (e)")
    parser.add_argument("--version", action="version", version=f"lexinfo {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="entropies, mutual information, code length, Omega")
    p.add_argument("matrix_file")
    p.add_argument("--lambda", dest="lam", type=_lambda, default=None)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("attach", help="attach a new word to a set of meanings")
    p.add_argument("matrix_file")
    p.add_argument("--meanings", type=_meaning_list, required=True, help="e.g. 0,2")
    p.add_argument("--word", type=int, default=None, help="defaults to the first unlinked word")
    p.add_argument("--out", default=None, help="path for the mutated matrix")
    p.set_defaults(func=cmd_attach)

    p = sub.add_parser("verify", help="exhaustive verification suites")
    p.add_argument("--vs", type=_positive_int, required=True)
    p.add_argument("--vr", type=_positive_int, required=True)
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--max-alpha", type=_positive_int, default=3)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("anneal", help="simulated annealing of Omega(lambda)")
    p.add_argument("--vs", type=_positive_int, required=True)
    p.add_argument("--vr", type=_positive_int, required=True)
    p.add_argument("--lambda", dest="lam", type=_lambda, required=True)
    p.add_argument("--steps", type=_positive_int, default=5000)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--chains", type=_positive_int, default=1)
    p.add_argument("--t-initial", type=float, default=1.0)
    p.add_argument("--cooling", type=float, default=0.999)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_anneal)

    p = sub.add_parser("simulate", help="grow a vocabulary under a linking policy")
    p.add_argument("--vs", type=_positive_int, required=True)
    p.add_argument("--vr", type=_positive_int, required=True)
    p.add_argument("--policy", choices=POLICIES, required=True)
    p.add_argument("--lambda", dest="lam", type=_lambda, default=None)
    p.add_argument("--steps", type=_positive_int, default=None)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (ParseError, UsageError, ConfigError, EnumerationTooLargeError, InvalidPlanError,
            StrategyUnavailableError) as exc:
        err.write(f"lexinfo: error: {exc}\n")
        return EXIT_USAGE
    except UndefinedMeasureError:
        err.write("lexinfo: error: undefined measures for empty mapping\n")
        return EXIT_UNDEFINED
    except VocabularyFullError as exc:
        err.write(f"lexinfo: error: {exc}\n")
        return EXIT_CAPACITY
    except OSError as exc:
        err.write(f"lexinfo: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

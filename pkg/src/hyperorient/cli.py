"""Command line entry point: ``hyperorient <subcommand> ...``.

Every subcommand also takes ``--config FILE`` with ``key = value`` lines
(keys are flag names without the leading dashes); flags given on the
command line win over the file.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .harness import (
    MODELS,
    ExperimentConfig,
    emit_csv,
    emit_trace_csv,
    run_sweep,
    run_susceptibility_trace,
)
from .hypergraph import HypergraphFormatError, gen_binomial, gen_uniform, read_hypergraph
from .oracle import brute_force_orient, flow_witness
from .orient import orient_all, verify_table

log = logging.getLogger("hyperorient")


def _floats(text: str) -> list[float]:
    return [float(tok) for tok in text.replace(",", " ").split()]


def _ints(text: str) -> list[int]:
    return [int(tok) for tok in text.replace(",", " ").split()]


def read_config(path) -> dict[str, str]:
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _config_path(argv) -> str | None:
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if tok.startswith("--config="):
            return tok.split("=", 1)[1]
    return None


def _apply_config(parser: argparse.ArgumentParser, argv) -> argparse.Namespace:
    """Parse ``argv``, using values from ``--config`` as subcommand defaults."""
    argv = list(sys.argv[1:] if argv is None else argv)
    path = _config_path(argv)
    name = next((tok for tok in argv if tok in parser.subcommands), None)
    if path is not None and name is not None:
        sub = parser.subcommands[name]
        known = {a.dest: a for a in sub._actions}
        defaults = {}
        for key, raw in read_config(path).items():
            action = known.get(key)
            if action is None or key in ("config", "help"):
                parser.error(f"unknown config key {key!r} for {name}")
            if action.nargs == 0:
                defaults[key] = raw.lower() in ("1", "true", "yes", "on")
            else:
                defaults[key] = action.type(raw) if action.type else raw
            action.required = False
        sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def cmd_generate(args) -> int:
    if args.p is not None:
        h = gen_binomial(args.n, args.p, args.k, args.seed)
    else:
        if args.m is None:
            raise ValueError("generate needs --m (or --p for the binomial model)")
        h = gen_uniform(args.n, args.m, args.k, args.seed)
    text = h.to_text()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_orient(args) -> int:
    h = read_hypergraph(args.input)
    res = orient_all(h, verify=args.verify)
    s = res.stats
    if res.success:
        print(f"ORIENTED edges={h.m} while_evals={s.while_evals}")
        for eid, verts in sorted(res.table.assignment().items()):
            print(eid, *verts)
    else:
        print(f"INFEASIBLE edge={res.failed_edge} while_evals={s.while_evals}")
    if args.verify and res.success:
        ok, problems = verify_table(h, res.table)
        for line in problems:
            print(line)
        if not ok:
            return 3
        print("VERIFIED")
    return 0


def cmd_verify(args) -> int:
    h = read_hypergraph(args.input)
    d = h.k - 1 if args.d is None else args.d
    if args.brute_force:
        _, witness = brute_force_orient(h, d, args.b)
    else:
        witness = flow_witness(h, d, args.b)
    if witness is None:
        print("INFEASIBLE")
        return 0
    print("FEASIBLE")
    for eid in sorted(witness):
        print(eid, *witness[eid])
    return 0


def cmd_sweep(args) -> int:
    cfg = ExperimentConfig(
        k=args.k,
        n=args.n,
        densities=args.densities,
        ms=args.ms,
        trials=args.trials,
        seed=args.seed,
        model=args.model,
        out=args.out,
        verify=args.verify,
        timing=not args.no_timing,
    )
    records = run_sweep(cfg, workers=args.workers)
    emit_csv(records, args.out or sys.stdout)
    for m in cfg.points():
        rows = [r for r in records if r.m == m]
        rate = sum(r.success for r in rows) / len(rows)
        log.info("m=%d success=%.3f mean_while_evals=%.1f", m, rate, sum(r.while_evals for r in rows) / len(rows))
    return 0


def cmd_trace(args) -> int:
    trace = run_susceptibility_trace(args.k, args.n, args.eps, args.trials, args.seed, verify=args.verify)
    emit_trace_csv(trace, args.out or sys.stdout)
    log.info("final mean chi=%.4f bound=%.4g", trace.mean_final_chi, trace.bound)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperorient", description="(k-1,1)-orientation of random k-uniform hypergraphs")
    subs = parser.add_subparsers(dest="command", required=True)
    parser.subcommands = {}

    def sub(name, func, help):
        p = subs.add_parser(name, help=help)
        p.add_argument("--config", help="key = value file; command-line flags override it")
        p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
        p.set_defaults(func=func)
        parser.subcommands[name] = p
        return p

    p = sub("generate", cmd_generate, "sample a random k-uniform hypergraph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--p", type=float, help="binomial model edge probability instead of --m")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")

    p = sub("orient", cmd_orient, "(k-1,1)-orient a hypergraph file with the insertion walk")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--verify", action="store_true")

    p = sub("verify", cmd_verify, "decide (d,b)-orientability exactly with max-flow")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--d", type=int, help="copies per edge (default k-1)")
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--brute-force", action="store_true", help="use exhaustive search instead")

    p = sub("sweep", cmd_sweep, "success rate of orientation across edge densities")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--densities", type=_floats, help="c values, m = round(c n / (k(k-1)))")
    p.add_argument("--ms", type=_ints, help="explicit edge counts instead of --densities")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--model", choices=MODELS, default="uniform")
    p.add_argument("--out")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--no-timing", action="store_true", help="write wall_ns as 0 for byte-stable output")

    p = sub("trace", cmd_trace, "susceptibility along the sequential process")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--verify", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = _apply_config(parser, argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (ValueError, HypergraphFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

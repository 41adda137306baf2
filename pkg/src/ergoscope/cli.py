"""Command-line interface: ``ergoscope {compute,generate,scatter,verify}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import cmio
from .ergotropy import DEFAULT_BUDGET, global_ergotropy, k_ergotropic_score, k_local_gap, two_local_gap
from .errors import (
    BudgetExceededError,
    CovarianceParseError,
    InvalidArgumentError,
    InvalidStateError,
    UnsupportedStateError,
)
from .experiments import run_scatter, write_csv
from .geometric import GtmeConfig, ggm, gtme
from .partitions import ModePartition, stirling2
from .random_states import RandomStateConfig, random_pure_cm
from .symplectic import (
    Bipartition,
    as_array,
    energy,
    is_pure,
    purity,
    renyi2_entropy,
    spectrum_array,
    von_neumann_entropy,
)
from .verify import SUITES, all_bipartitions, run_suites

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDITY = 3
EXIT_BUDGET = 4
EXIT_VERIFY = 5


def _partition(text: str) -> ModePartition:
    try:
        return ModePartition.parse(text)
    except InvalidArgumentError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _gtme_config(args) -> GtmeConfig:
    data = {}
    if getattr(args, "gtme_config", None):
        data.update(json.loads(Path(args.gtme_config).read_text()))
    for key in ("restarts", "tol", "max_iters"):
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    if getattr(args, "seed", None) is not None and "seed" not in data:
        data["seed"] = args.seed
    return GtmeConfig.from_dict(data)


def _add_optimizer_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("GTME optimiser")
    g.add_argument("--restarts", type=int, help="number of multistarts (default 32)")
    g.add_argument("--tol", type=float, help="plateau tolerance per restart (default 1e-10)")
    g.add_argument("--max-iters", dest="max_iters", type=int, help="iteration cap per restart")
    g.add_argument("--gtme-config", metavar="JSON", help="file with restarts/max_iters/tol/seed")


def _gap_entry(gap) -> dict:
    return {
        "partition": str(gap.partition),
        "value": gap.value,
        "block_spectra": [list(s) for s in gap.per_block_spectra],
    }


def _report(cm, args) -> dict:
    sigma = as_array(cm)
    n = sigma.shape[0] // 2
    pure = is_pure(cm)
    everything = args.all
    out = {
        "n_modes": n,
        "trace": float(np.trace(sigma)),
        "energy": energy(cm),
        "purity": purity(cm),
        "pure": pure,
        "spectrum": [float(v) for v in spectrum_array(sigma)],
        "renyi2_entropy": renyi2_entropy(cm),
        "von_neumann_entropy": von_neumann_entropy(cm),
        "global_ergotropy": global_ergotropy(cm),
    }

    for p in args.partition or ():
        out.setdefault("k_local_gaps", []).append(_gap_entry(k_local_gap(cm, p)))

    bipartitions = list(args.delta2 or ())
    if everything and pure and n >= 2:
        bipartitions = [ModePartition((bp.block_a, bp.block_b)) for bp in all_bipartitions(n)]
    for p in bipartitions:
        if p.k != 2:
            raise InvalidArgumentError(f"--delta2 needs a bipartition, got {p}")
        out.setdefault("two_local_gaps", []).append(_gap_entry(two_local_gap(cm, Bipartition(*p.blocks))))

    ks = list(args.k or ())
    if everything and pure:
        ks = [k for k in range(2, n + 1) if stirling2(n, k) <= args.budget]
    for k in ks:
        res = k_ergotropic_score(cm, k, budget=args.budget)
        out.setdefault("scores", []).append(
            {
                "k": k,
                "score": res.score,
                "argmin_partition": str(res.argmin_partition),
                "n_partitions_searched": res.n_partitions_searched,
            }
        )

    if (args.ggm or everything) and (pure or not everything):
        out["ggm"] = ggm(cm)
    if (args.gtme or everything) and (pure or not everything):
        res = gtme(cm, _gtme_config(args))
        out["gtme"] = {
            "value": res.value,
            "converged": res.converged,
            "restarts_used": res.restarts_used,
            "best_purity": res.best_purity,
            "best_params": res.best_params.as_dict(),
        }
    if everything and not pure:
        out["note"] = "mixed state: pure-state quantifiers omitted"
    return out


def cmd_compute(args) -> int:
    cm = cmio.load(args.cm_file) if args.cm_file != "-" else cmio.loads(sys.stdin.read())
    json.dump(_report(cm, args), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def cmd_generate(args) -> int:
    config = RandomStateConfig(args.modes, args.energy, args.seed)
    docs = [cmio.dumps(random_pure_cm(config, i)) for i in range(args.samples)]
    text = "[\n" + ",\n".join(docs) + "\n]\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    print(
        f"generated {args.samples} state(s): N={args.modes}, Tr sigma = {args.energy:g}, "
        f"energy Tr sigma/4 = {args.energy / 4:g}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_scatter(args) -> int:
    config = RandomStateConfig(args.modes, args.energy, args.seed)
    gtme_config = None if args.no_gtme else _gtme_config(args)
    records = run_scatter(config, args.samples, gtme_config, workers=args.workers)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_csv(records, fh)
    else:
        write_csv(records, sys.stdout)
    failed = sum(1 for r in records if gtme_config is not None and not r.gtme_converged)
    if failed:
        print(f"{failed} sample(s) with unconverged GTME", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = run_suites(args.suite, seed=args.seed, samples=args.samples)
    summary = {
        "passed": all(r.passed for r in reports),
        "seed": args.seed,
        "suites": [r.as_dict() for r in reports],
    }
    json.dump(summary, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK if summary["passed"] else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ergoscope",
        description="Ergotropic and geometric entanglement quantifiers for pure Gaussian states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="evaluate quantifiers on a covariance-matrix JSON file")
    p.add_argument("cm_file", help="covariance matrix JSON, or - for stdin")
    p.add_argument("--all", action="store_true", help="every quantifier the state supports")
    p.add_argument("--delta2", type=_partition, action="append", metavar="A|B", help="2-local gap across a bipartition")
    p.add_argument("--partition", type=_partition, action="append", metavar="P", help='k-local gap, e.g. "0,2|1|3"')
    p.add_argument("--k", type=int, action="append", help="k-ergotropic score")
    p.add_argument("--ggm", action="store_true", help="generalised geometric measure")
    p.add_argument("--gtme", action="store_true", help="total Gaussian multimode entanglement")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="partition enumeration cap")
    p.add_argument("--seed", type=int, default=0, help="optimiser seed")
    _add_optimizer_flags(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("generate", help="draw random pure states at fixed Tr sigma")
    p.add_argument("--modes", type=int, required=True)
    p.add_argument("--energy", type=float, required=True, help="Tr sigma, at least 2N")
    p.add_argument("--samples", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output JSON file (default stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("scatter", help="Monte-Carlo sweep written as CSV")
    p.add_argument("--modes", type=int, required=True)
    p.add_argument("--energy", type=float, default=20.0, help="Tr sigma (default 20)")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output CSV file (default stdout)")
    p.add_argument("--no-gtme", action="store_true", help="skip the optimisation; gtme column is nan")
    p.add_argument("--workers", type=int, help="process count, capped by ERGOSCOPE_THREADS")
    _add_optimizer_flags(p)
    p.set_defaults(func=cmd_scatter)

    p = sub.add_parser("verify", help="run the property suites; exit 5 on any failure")
    p.add_argument("--suite", action="append", choices=sorted(SUITES), help="repeatable; default all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, help="override every suite's sample count")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CovarianceParseError as exc:
        where = f" (line {exc.line}, column {exc.column})" if exc.line is not None else ""
        print(f"error: {exc}{where}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidStateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if getattr(exc, "report", None) is not None:
            print(json.dumps(exc.report.as_dict(), indent=2), file=sys.stderr)
        return EXIT_VALIDITY
    except UnsupportedStateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDITY
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InvalidArgumentError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line surface.

Subcommands: solve, chi-star, pack, gen, matrix, experiment.  stdout
carries exactly one machine-readable payload (single-line JSON records
stamped with "schema" and "version", or a JSON-lines report); anything
human-readable goes to stderr.  "-" stands for stdin/stdout.

Exit codes: 0 packing found / all-pack / estimator ran; 1 no packing /
witness found; 2 search budget exceeded; 64 usage errors (unknown
subcommand, bad flags); 65 malformed instance or config.  The
LISTPACK_BUDGET environment variable overrides the default search
budget for solve and chi-star.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional

from . import __version__
from .constructive import (
    pack_augment,
    pack_bipartite_ordered,
    pack_complete,
    pack_degenerate,
)
from .core import (
    CorrespondenceCover,
    InstanceFormatError,
    SCHEMA_VERSION,
    _graph_from_obj,
    dumps,
    instance_from_obj,
    instance_to_obj,
    list_to_cover,
    packing_to_obj,
)
from .exact import (
    BudgetExceeded,
    decide_chi_star_corr,
    decide_chi_star_list,
    find_list_packing,
    find_packing,
)
from .generators import (
    gen_c4,
    gen_kab_cover,
    gen_kbb_lists,
    gen_shift_construction,
)
from .matrixlab import (
    no_zero_transversal_prob_mc,
    zero_permanent_prob_exact,
    zero_permanent_prob_mc,
)
from .probabilistic import (
    FractionalColoring,
    pack_bipartite_lll,
    pack_fractional,
)

EXIT_OK = 0
EXIT_NONE = 1
EXIT_BUDGET = 2
EXIT_USAGE = 64
EXIT_DATA = 65


class _DataError(Exception):
    """Malformed instance/config; maps to exit 65."""


def _fail(message: str) -> "_DataError":
    return _DataError(message)


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise _fail(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _fail(f"{path}: not valid JSON: {exc}") from exc


def _read_instance(path: str):
    try:
        return instance_from_obj(_read_json(path))
    except InstanceFormatError as exc:
        raise _fail(f"{path}: {exc}") from exc


def _write_line(line: str, out: str) -> None:
    if out == "-":
        print(line)
    else:
        with open(out, "w") as fh:
            fh.write(line + "\n")


def _record(**fields) -> str:
    fields.setdefault("schema", SCHEMA_VERSION)
    fields.setdefault("version", __version__)
    return dumps(fields)


def _default_budget(args) -> Optional[int]:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("LISTPACK_BUDGET")
    return int(env) if env else None


def _cmd_solve(args) -> int:
    instance = _read_instance(args.instance)
    budget = _default_budget(args)
    try:
        if isinstance(instance, CorrespondenceCover):
            packing = find_packing(instance, budget=budget)
        else:
            packing = find_list_packing(*instance, budget=budget)
    except BudgetExceeded:
        _write_line(_record(result="budget-exceeded"), args.output)
        return EXIT_BUDGET
    if packing is None:
        _write_line(_record(result="none"), args.output)
        return EXIT_NONE
    _write_line(
        _record(result="packing", packing=packing_to_obj(packing)),
        args.output,
    )
    return EXIT_OK


def _cmd_chi_star(args) -> int:
    obj = _read_json(args.graph)
    try:
        g = _graph_from_obj(obj)
    except InstanceFormatError as exc:
        raise _fail(f"{args.graph}: {exc}") from exc
    budget = _default_budget(args)
    decide = decide_chi_star_list if args.mode == "list" else decide_chi_star_corr
    try:
        witness = decide(g, args.k, budget=budget)
    except BudgetExceeded:
        _write_line(_record(result="budget-exceeded"), args.output)
        return EXIT_BUDGET
    if witness is None:
        _write_line(_record(result="all-pack", k=args.k), args.output)
        return EXIT_OK
    if args.mode == "list":
        payload = instance_to_obj((g, witness))
    else:
        payload = instance_to_obj(witness)
    _write_line(_record(result="witness", k=args.k, witness=payload), args.output)
    return EXIT_NONE


def _as_cover(instance) -> CorrespondenceCover:
    if isinstance(instance, CorrespondenceCover):
        return instance
    return list_to_cover(*instance)


def _cmd_pack(args) -> int:
    instance = _read_instance(args.instance)
    is_cover = isinstance(instance, CorrespondenceCover)
    try:
        if args.method == "degenerate":
            packing = pack_degenerate(_as_cover(instance))
        elif args.method == "complete":
            if is_cover:
                raise _fail("method complete needs a list-mode instance")
            g, lists = instance
            packing = pack_complete(lists, lists.uniform_size())
        elif args.method == "bip-ordered":
            if is_cover:
                raise _fail("method bip-ordered needs a list-mode instance")
            packing = pack_bipartite_ordered(*instance)
        elif args.method == "augment":
            packing = pack_augment(_as_cover(instance), args.chi_c_bound)
        elif args.method == "fractional":
            if is_cover:
                raise _fail("method fractional needs a list-mode instance")
            if args.seed is None or args.fc is None:
                print(
                    "method fractional requires --seed and --fc",
                    file=sys.stderr,
                )
                return EXIT_USAGE
            fc_obj = _read_json(args.fc)
            try:
                fc = FractionalColoring.from_sets(
                    int(fc_obj["a"]), int(fc_obj["b"]), fc_obj["assignment"]
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise _fail(f"{args.fc}: bad fractional colouring: {exc}")
            g, lists = instance
            packing = pack_fractional(
                g, lists, fc, max_rounds=args.max_rounds, seed=args.seed
            )
        elif args.method == "bip-lll":
            if args.seed is None:
                print("method bip-lll requires --seed", file=sys.stderr)
                return EXIT_USAGE
            packing = pack_bipartite_lll(
                _as_cover(instance),
                max_resamples=args.max_resamples,
                seed=args.seed,
            )
        else:  # pragma: no cover - argparse restricts choices
            return EXIT_USAGE
    except ValueError as exc:
        raise _fail(f"precondition failed: {exc}") from exc
    if packing is None:
        _write_line(_record(result="none", method=args.method), args.output)
        return EXIT_NONE
    _write_line(
        _record(
            result="packing",
            method=args.method,
            packing=packing_to_obj(packing),
        ),
        args.output,
    )
    return EXIT_OK


def _cmd_gen(args) -> int:
    if args.family == "c4":
        instance = gen_c4()
    elif args.family == "kab-cover":
        instance = gen_kab_cover(args.d)
    elif args.family == "shift":
        instance = gen_shift_construction(args.d)
    else:
        instance = gen_kbb_lists(args.b)
    obj = instance_to_obj(instance)
    obj["schema"] = SCHEMA_VERSION
    _write_line(dumps(obj), args.output)
    return EXIT_OK


def _cmd_matrix(args) -> int:
    if args.experiment == "perm-zero":
        est, ci = zero_permanent_prob_mc(args.k, args.p, args.trials, args.seed)
        predicted = 2 * args.k * args.p**args.k
        fields = dict(
            estimate=est,
            ci=ci,
            predicted=predicted,
            ratio=est / predicted if predicted else None,
        )
        if args.exact:
            if args.k > 4:
                print("--exact supports k <= 4 only", file=sys.stderr)
                return EXIT_USAGE
            fields["exact"] = float(zero_permanent_prob_exact(args.k, args.p))
    else:
        est, ci = no_zero_transversal_prob_mc(
            args.n, args.k, args.trials, args.seed
        )
        predicted = 3 * args.k**2 * math.exp(-args.n ** (0.2 / 3))
        fields = dict(
            estimate=est,
            ci=ci,
            predicted=predicted,
            ratio=est / predicted,
        )
    _write_line(_record(**fields), args.output)
    return EXIT_OK


_EXPERIMENT_KINDS = {
    "perm-zero": ("k", "p", "trials"),
    "zero-transversal": ("n", "k", "trials"),
}


def _cmd_experiment(args) -> int:
    config = _read_json(args.config)
    if not isinstance(config, dict) or not isinstance(
        config.get("experiments"), list
    ):
        raise _fail("config must be an object with an 'experiments' array")
    experiments = config["experiments"]
    names = [e.get("name") for e in experiments]
    if len(names) != len(set(names)):
        raise _fail("duplicate experiment names in config")
    lines = []
    for exp in experiments:
        try:
            name = exp["name"]
            kind = exp["kind"]
            params = exp.get("params", {})
            seeds = exp.get("seeds")
            if seeds is None:
                base = int(exp["seed"])
                seeds = [base + i for i in range(int(exp.get("repetitions", 1)))]
        except (KeyError, TypeError, ValueError) as exc:
            raise _fail(f"bad experiment entry: {exc}") from exc
        if kind not in _EXPERIMENT_KINDS:
            raise _fail(f"experiment {name!r}: unknown kind {kind!r}")
        missing = [p for p in _EXPERIMENT_KINDS[kind] if p not in params]
        if missing:
            raise _fail(f"experiment {name!r}: missing params {missing}")
        for seed in seeds:
            if kind == "perm-zero":
                k, p = int(params["k"]), float(params["p"])
                est, ci = zero_permanent_prob_mc(
                    k, p, int(params["trials"]), int(seed)
                )
                predicted = 2 * k * p**k
            else:
                n, k = int(params["n"]), int(params["k"])
                est, ci = no_zero_transversal_prob_mc(
                    n, k, int(params["trials"]), int(seed)
                )
                predicted = 3 * k**2 * math.exp(-n ** (0.2 / 3))
            lines.append(
                _record(
                    experiment=name,
                    kind=kind,
                    params=params,
                    seed=int(seed),
                    estimate=est,
                    ci=ci,
                    predicted=predicted,
                    ratio=est / predicted if predicted else None,
                )
            )
    _write_line("\n".join(lines) if lines else "", args.output)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="listpack",
        description="list/correspondence packing solvers and experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact packing search on an instance")
    p.add_argument("instance")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("chi-star", help="decide a packing number bound")
    p.add_argument("mode", choices=["list", "corr"])
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=_cmd_chi_star)

    p = sub.add_parser("pack", help="run a constructive/randomized packer")
    p.add_argument("instance")
    p.add_argument(
        "--method",
        required=True,
        choices=[
            "degenerate",
            "complete",
            "bip-ordered",
            "augment",
            "fractional",
            "bip-lll",
        ],
    )
    p.add_argument("--chi-c-bound", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--fc", default=None)
    p.add_argument("--max-rounds", type=int, default=100)
    p.add_argument("--max-resamples", type=int, default=None)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=_cmd_pack)

    p = sub.add_parser("gen", help="emit an extremal instance")
    p.add_argument("family", choices=["c4", "kab-cover", "shift", "kbb"])
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--b", type=int, default=2)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("matrix", help="random-matrix Monte Carlo estimators")
    msub = p.add_subparsers(dest="experiment", required=True)
    mp = msub.add_parser("perm-zero")
    mp.add_argument("--k", type=int, required=True)
    mp.add_argument("--p", type=float, required=True)
    mp.add_argument("--trials", type=int, required=True)
    mp.add_argument("--seed", type=int, required=True)
    mp.add_argument("--exact", action="store_true")
    mp.add_argument("-o", "--output", default="-")
    mp.set_defaults(func=_cmd_matrix)
    mz = msub.add_parser("zero-transversal")
    mz.add_argument("--n", type=int, required=True)
    mz.add_argument("--k", type=int, required=True)
    mz.add_argument("--trials", type=int, required=True)
    mz.add_argument("--seed", type=int, required=True)
    mz.set_defaults(exact=False)
    mz.add_argument("-o", "--output", default="-")
    mz.set_defaults(func=_cmd_matrix)

    p = sub.add_parser("experiment", help="run a JSON config of experiments")
    p.add_argument("config")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=_cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except _DataError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_DATA
    except InstanceFormatError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())

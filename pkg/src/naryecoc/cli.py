"""Command-line entry point: ``naryecoc {gen,dist,search,verify,eval,tables}``.

Exit codes: 0 ok, 1 verification violation, 2 usage/parse error,
3 construction error, 4 enumeration budget exceeded.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .coding import CodingError, MatrixFormatError, build_mk, format_matrix, load_matrix
from .datasets import DatasetError, load_csv
from .ensemble import evaluate_cv
from .factory import (
    DimensionPolicy,
    FactoryResult,
    SearchConfig,
    deterministic_matrix,
    random_matrix,
    write_result,
)
from .learners import LearnerSpec
from .metrics import Metric, distance_report
from .verification import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    check_theorem12,
    conjecture_bound,
    exhaustive_max_dT,
    optimal_total_distance,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CONSTRUCTION, EXIT_BUDGET = 0, 1, 2, 3, 4

PRIMES = (2, 3, 5, 7, 11, 13)
# class counts of the benchmark datasets, used by ``tables --which distances``
KNOWN_CLASSES = {"pendigits": 10, "usps": 10, "vowel": 11, "letters": 26, "auslan": 95, "aloi": 1000}


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.replace(",", " ").split()]


def _name_list(text: str) -> list[str]:
    return [v for v in text.replace(",", " ").split() if v]


def _add_search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--objective", choices=("total", "row"), default="total")
    p.add_argument("--metric", choices=("hamming", "absolute"), default="hamming")
    p.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="naryecoc", description="N-ary ECOC matrices and ensembles")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="deterministic M_k(N) or a truncated c x n matrix")
    g.add_argument("--base", type=int, required=True)
    g.add_argument("--k", type=int)
    g.add_argument("--classes", type=int)
    g.add_argument("--policy", default="square")
    g.add_argument("--metric", choices=("hamming", "absolute"), default="hamming")
    g.add_argument("--out", help="matrix file ('-' prints the matrix to stdout)")

    d = sub.add_parser("dist", help="row/column/total distance of a matrix file")
    d.add_argument("--matrix", required=True)
    d.add_argument("--metric", choices=("hamming", "absolute"), default="hamming")

    s = sub.add_parser("search", help="best-of-T random matrix")
    s.add_argument("--base", type=int, required=True)
    s.add_argument("--classes", type=int, required=True)
    s.add_argument("--policy", default="square")
    s.add_argument("--out")
    _add_search_flags(s)

    v = sub.add_parser("verify", help="theorem / conjecture / composite checks")
    mode = v.add_mutually_exclusive_group(required=True)
    mode.add_argument("--theorem12", action="store_true")
    mode.add_argument("--conjecture", action="store_true")
    mode.add_argument("--composite-demo", action="store_true")
    v.add_argument("--base", type=int)
    v.add_argument("--k", type=int)
    v.add_argument("--n", type=int)
    v.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    v.add_argument("--out", help="write the exhaustive-search witness here")

    e = sub.add_parser("eval", help="cross-validated ECOC accuracy on a CSV dataset")
    e.add_argument("--data", required=True)
    e.add_argument("--base", type=int, required=True)
    e.add_argument("--policy", default="square")
    e.add_argument("--strategy", choices=("det", "rand"), default="det")
    e.add_argument("--learner", choices=("dt", "centroid"), default="dt")
    e.add_argument("--folds", type=int, default=10)
    e.add_argument("--label-column", default="last")
    e.add_argument("--header", action="store_true")
    e.add_argument("--per-fold", action="store_true")
    _add_search_flags(e)

    t = sub.add_parser("tables", help="distance or accuracy tables per dataset")
    t.add_argument("--which", choices=("distances", "accuracy"), required=True)
    t.add_argument("--datasets", type=_name_list, default=[])
    t.add_argument("--bases", type=_int_list)
    t.add_argument("--out", help="directory for <dataset>_<which>.txt files")
    t.add_argument("--data-dir", default="data")
    t.add_argument("--policy", default="square")
    t.add_argument("--learner", choices=("dt", "centroid"), default="dt")
    t.add_argument("--folds", type=int, default=10)
    _add_search_flags(t)
    return parser


def _policy(text: str) -> DimensionPolicy:
    try:
        return DimensionPolicy.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _config(args) -> SearchConfig:
    try:
        return SearchConfig(args.trials, args.objective, Metric.parse(args.metric), args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(result: FactoryResult, out: Optional[str]) -> None:
    if out == "-":
        sys.stdout.write(format_matrix(result.matrix))
    elif out:
        write_result(result, out)
    print(result.report.line())


def cmd_gen(args) -> int:
    metric = Metric.parse(args.metric)
    if (args.k is None) == (args.classes is None):
        raise UsageError("give exactly one of --k or --classes")
    if args.k is not None:
        m = build_mk(args.base, args.k)
        result = FactoryResult(m, distance_report(m, metric), "deterministic", k=args.k,
                               extra={"metric": metric.value})
    else:
        result = deterministic_matrix(args.base, args.classes, _policy(args.policy), metric=metric)
    _emit(result, args.out)
    return EXIT_OK


def cmd_dist(args) -> int:
    try:
        m = load_matrix(args.matrix)
    except (OSError, MatrixFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rep = distance_report(m, Metric.parse(args.metric))
    print(rep.line())
    print("argmin_rows {} {} argmin_cols {} {}".format(*rep.argmin_rows, *rep.argmin_cols))
    return EXIT_OK


def cmd_search(args) -> int:
    result = random_matrix(args.base, args.classes, _policy(args.policy), _config(args), jobs=args.jobs)
    _emit(result, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.composite_demo:
        rep = check_theorem12(4, 2, unchecked=True)
        expected = int(optimal_total_distance(4, 16))
        print(f"unchecked M_2(4): d_r={rep.d_r} d_c={rep.d_c} d_T={rep.d_T} (formula predicts {expected})")
        return EXIT_OK if rep.d_T != expected else EXIT_VIOLATION
    if args.theorem12:
        if args.base is None or args.k is None:
            raise UsageError("--theorem12 needs --base and --k")
        rep = check_theorem12(args.base, args.k)
        status = "pass" if rep.passed else f"fail: {rep.violation}"
        print(f"M_{args.k}({args.base}): d_r={rep.d_r} d_c={rep.d_c} d_T={rep.d_T} "
              f"expected_d_r={rep.expected} multiplicity={'ok' if rep.multiplicity_ok else 'bad'} "
              f"P3={'ok' if rep.p3 else 'bad'} P4={'ok' if rep.p4 else 'bad'} {status}")
        return EXIT_OK if rep.passed else EXIT_VIOLATION
    if args.n is None:
        raise UsageError("--conjecture needs --n")
    base = args.base or 2
    res = exhaustive_max_dT(base, args.n, budget=args.budget)
    line = f"N={base} n={args.n} enumerated={res.enumerated} max_d_T={res.max_d_T}"
    if res.conjectured is not None:
        verdict = "matches bound" if res.matches_conjecture else "differs from bound"
        line += f" bound={conjecture_bound(args.n)} {verdict}"
    print(line)
    if args.out:
        Path(args.out).write_text(format_matrix(res.witness))
    else:
        sys.stdout.write(format_matrix(res.witness))
    if res.conjectured is not None and res.max_d_T > res.conjectured:
        return EXIT_VIOLATION
    return EXIT_OK


def _codebook(args, classes: int, base: int):
    if args.strategy == "det":
        return deterministic_matrix(base, classes, _policy(args.policy)).matrix
    return random_matrix(base, classes, _policy(args.policy), _config(args), jobs=args.jobs).matrix


def cmd_eval(args) -> int:
    try:
        ds = load_csv(args.data, args.label_column if args.label_column == "last" else int(args.label_column),
                      has_header=args.header)
    except (OSError, DatasetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    codebook = _codebook(args, ds.class_count, args.base)
    spec = LearnerSpec(args.learner)
    res = evaluate_cv(ds, codebook, spec, args.folds, args.seed, jobs=args.jobs)
    print(res.row(ds.name, args.base, args.policy, spec.short))
    if args.per_fold:
        print("\t".join(f"{a:.4f}" for a in res.fold_accuracies))
    return EXIT_OK


def _bases_for(classes: int, bases: Optional[list[int]]) -> list[int]:
    if bases:
        return bases
    return [b for b in PRIMES if b <= classes]


def _distance_table(name: str, classes: int, args) -> str:
    metric = Metric.parse(args.metric)
    policy = _policy(args.policy)
    n = policy.resolve(classes)
    config = SearchConfig(args.trials, args.objective, metric, args.seed)
    lines = [
        f"# {name}: {classes}x{n} ({policy}), metric={metric.value}, "
        f"random best-of-{args.trials} by {args.objective} distance, seed={args.seed}",
        "N\tn_k\td_r(M)\td_T(M)\td_r(M_R)\td_T(M_R)",
    ]
    for base in _bases_for(classes, args.bases):
        det = deterministic_matrix(base, classes, policy, metric=metric)
        rnd = random_matrix(base, classes, policy, config, jobs=args.jobs)
        lines.append(f"{base}\t{base ** det.k}\t{det.report.d_r}\t{det.report.d_T}"
                     f"\t{rnd.report.d_r}\t{rnd.report.d_T}")
    return "\n".join(lines) + "\n"


def _accuracy_table(name: str, args) -> Optional[str]:
    path = Path(args.data_dir) / f"{name}.csv"
    if not path.exists():
        print(f"warning: {path} not found, skipping {name}", file=sys.stderr)
        return None
    ds = load_csv(path)
    policy = _policy(args.policy)
    spec = LearnerSpec(args.learner)
    config = SearchConfig(args.trials, args.objective, Metric.parse(args.metric), args.seed)
    lines = [
        f"# {name}: {ds.n_samples} samples, {ds.n_features} features, {ds.class_count} classes; "
        f"{args.folds}-fold CV, learner={spec.short}, policy={policy}, seed={args.seed}",
        "N\tdet_mean\tdet_std\trand_mean\trand_std",
    ]
    for base in _bases_for(ds.class_count, args.bases):
        det = deterministic_matrix(base, ds.class_count, policy).matrix
        rnd = random_matrix(base, ds.class_count, policy, config, jobs=args.jobs).matrix
        a = evaluate_cv(ds, det, spec, args.folds, args.seed, jobs=args.jobs)
        b = evaluate_cv(ds, rnd, spec, args.folds, args.seed, jobs=args.jobs)
        lines.append(f"{base}\t{a.mean:.4f}\t{a.std:.4f}\t{b.mean:.4f}\t{b.std:.4f}")
    return "\n".join(lines) + "\n"


def cmd_tables(args) -> int:
    out_dir = Path(args.out) if args.out else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    for name in args.datasets:
        key = name.lower()
        if args.which == "distances":
            if key not in KNOWN_CLASSES:
                print(f"warning: unknown dataset {name}, skipping", file=sys.stderr)
                continue
            text = _distance_table(key, KNOWN_CLASSES[key], args)
        else:
            text = _accuracy_table(key, args)
            if text is None:
                continue
        sys.stdout.write(text)
        if out_dir:
            (out_dir / f"{key}_{args.which}.txt").write_text(text)
    return EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "dist": cmd_dist,
    "search": cmd_search,
    "verify": cmd_verify,
    "eval": cmd_eval,
    "tables": cmd_tables,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CodingError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION


if __name__ == "__main__":
    sys.exit(main())

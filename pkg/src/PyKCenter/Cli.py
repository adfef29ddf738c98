#!/usr/bin/env python3
"""
    File: Cli.py
    Command line entry point: gen, run, sweep, diag and t-star.
"""
import argparse
import csv
import json
import sys
from typing import Optional, TextIO
try:
    import common
    from Exceptions import KCenterError, UsageError, ParameterError, DataValidationError, BruteForceRefused, \
        RunFailure, OptimizerError, OracleError
    from Dataset import SyntheticSpec, generate_synthetic, generate_rademacher, generate_triplet_matrix, \
        load_points, load_distance_matrix, load_means, load_synthetic_spec, save_points, save_distance_matrix
    from MaximinOptimizer import AscentConfig, optimal_weights
    from RunConfig import TrackAndStopConfig
    from Diagnostics import hardness_report
    from Experiment import ALGORITHMS, ROW_COLUMNS, ExperimentSpec, ResultRow, build_config, run_single, run_sweep, \
        aggregate, write_rows, write_aggregate, write_manifest, output_paths, default_model
except (ModuleNotFoundError, ImportError):
    import PyKCenter.common as common
    from PyKCenter.Exceptions import KCenterError, UsageError, ParameterError, DataValidationError, \
        BruteForceRefused, RunFailure, OptimizerError, OracleError
    from PyKCenter.Dataset import SyntheticSpec, generate_synthetic, generate_rademacher, generate_triplet_matrix, \
        load_points, load_distance_matrix, load_means, load_synthetic_spec, save_points, save_distance_matrix
    from PyKCenter.MaximinOptimizer import AscentConfig, optimal_weights
    from PyKCenter.RunConfig import TrackAndStopConfig
    from PyKCenter.Diagnostics import hardness_report
    from PyKCenter.Experiment import ALGORITHMS, ROW_COLUMNS, ExperimentSpec, ResultRow, build_config, run_single, \
        run_sweep, aggregate, write_rows, write_aggregate, write_manifest, output_paths, default_model

# Version check:
common.__version_check__()

EXIT_OK: int = 0
EXIT_USAGE: int = 2
EXIT_DATA: int = 3
EXIT_RUN: int = 4


class _Parser(argparse.ArgumentParser):
    """An ArgumentParser that raises UsageError instead of exiting."""
    def error(self, message: str) -> None:
        raise UsageError(message)


def _first_center(value: str) -> int | str:
    if value == 'random':
        return value
    try:
        return int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an index or 'random', got '%s'" % value)


def _progress(message: str) -> None:
    print(message, file=sys.stderr)
    return


def _output(path: Optional[str]) -> TextIO:
    if path is None or path == '-':
        return sys.stdout
    try:
        return open(path, 'w', newline='')
    except OSError as e:
        raise UsageError("unable to write '%s': %s" % (path, e.strerror), exception=e)


def _write_csv(path: Optional[str], rows: list[list]) -> None:
    handle = _output(path)
    try:
        csv.writer(handle, lineterminator='\n').writerows(rows)
    finally:
        if handle is not sys.stdout:
            handle.close()
    return


def _add_source_flags(parser: argparse.ArgumentParser, required: bool = True) -> None:
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument('--data', help="Points file, CSV or KCPT binary.")
    group.add_argument('--matrix', help="CSV distance matrix.")
    group.add_argument('--synthetic', help="Synthetic spec file, generated on the fly.")
    parser.add_argument('--convention', default='centered', choices=('centered', 'unit'),
                        help="Normalization of a points file.")
    return


def _load_source(args: argparse.Namespace):
    if args.data is not None:
        return load_points(args.data, args.convention)
    if args.matrix is not None:
        return load_distance_matrix(args.matrix)
    return generate_synthetic(load_synthetic_spec(args.synthetic))


def build_parser() -> argparse.ArgumentParser:
    """
    The kcenter argument parser.
    :return: argparse.ArgumentParser
    """
    parser = _Parser(prog='kcenter', description="Greedy k-center with noisy and per-dimension distance oracles.")
    commands = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)

    gen = commands.add_parser('gen', help="Generate a dataset.")
    gen.add_argument('--kind', default='clusters', choices=('clusters', 'rademacher', 'triplet'))
    gen.add_argument('--spec', help="Synthetic spec file; flags given on the command line override it.")
    gen.add_argument('--clusters', type=int)
    gen.add_argument('--per', type=int, help="Points per cluster.")
    gen.add_argument('--n', type=int, help="Points, for rademacher and triplet data.")
    gen.add_argument('--m', type=int)
    gen.add_argument('--spread', type=float)
    gen.add_argument('--latent', type=int)
    gen.add_argument('--noise', type=float)
    gen.add_argument('--min-separation', type=float)
    gen.add_argument('--judgments', type=int, help="Simulated answers per triplet.")
    gen.add_argument('--seed', type=int)
    gen.add_argument('--format', default='csv', choices=('csv', 'bin'))
    gen.add_argument('--out', required=True)

    run = commands.add_parser('run', help="Run one algorithm once.")
    _add_source_flags(run)
    run.add_argument('--algo', required=True, choices=ALGORITHMS)
    run.add_argument('--model', choices=('ds', 'ns', 'bernoulli'), help="Oracle model, default per algorithm.")
    run.add_argument('--k', type=int, required=True)
    run.add_argument('--delta', type=float, default=0.1)
    run.add_argument('--z', type=float, default=0.0)
    run.add_argument('--c-alpha', type=float, help="Use the tuned iterated-log interval with this constant.")
    run.add_argument('--sigma2', type=float, default=0.0)
    run.add_argument('--seed', type=int)
    run.add_argument('--first-center', type=_first_center, default=0)
    run.add_argument('--check-greedy', action='store_true')
    run.add_argument('--max-pulls', type=int)
    run.add_argument('--recompute-period', type=int, default=100)
    run.add_argument('--ascent-iterations', type=int, default=20000)
    run.add_argument('--json', action='store_true', help="Print the full result as JSON instead of a CSV row.")
    run.add_argument('--out', help="Output file, default stdout.")

    sweep = commands.add_parser('sweep', help="Run a parameter sweep from a spec file.")
    sweep.add_argument('spec')
    sweep.add_argument('--out', help="Rows CSV, overrides the spec's out.")
    sweep.add_argument('--jobs', type=int, help="Worker processes, default every core.")

    diag = commands.add_parser('diag', help="Hardness terms and query bounds of a dataset.")
    _add_source_flags(diag, required=False)
    diag.add_argument('--rademacher', action='store_true', help="Bound a generated +/-1/2 dataset.")
    diag.add_argument('--n', type=int, default=10)
    diag.add_argument('--m', type=int, default=200)
    diag.add_argument('--seed', type=int)
    diag.add_argument('--k', type=int)
    diag.add_argument('--delta', type=float, default=0.1)
    diag.add_argument('--first-center', type=int, default=0)
    diag.add_argument('--c', type=float, help="Upper-bound constant, calibrated when omitted.")
    diag.add_argument('--sigma2', type=float, help="Noise variance; adds the track-and-stop T* sum.")
    diag.add_argument('--gamma', type=float, default=1.0)
    diag.add_argument('--ascent-iterations', type=int, default=20000)
    diag.add_argument('--tstar', help="Means matrix file: print T* and the optimal weights instead.")
    diag.add_argument('--out', help="Output file, default stdout.")

    tstar = commands.add_parser('t-star', help="T* and optimal weights of a means matrix.")
    tstar.add_argument('means')
    tstar.add_argument('--sigma2', type=float, default=1.0)
    tstar.add_argument('--iterations', type=int, default=100000)
    return parser


########################################################################################################################
# Commands:
########################################################################################################################
def cmd_gen(args: argparse.Namespace) -> int:
    if args.kind == 'triplet':
        if args.n is None:
            raise UsageError("gen --kind triplet needs --n.")
        matrix = generate_triplet_matrix(args.n, clusters=args.clusters or 5, seed=args.seed,
                                         judgments=args.judgments)
        save_distance_matrix(matrix, args.out)
        _progress("wrote %i x %i distance matrix to %s" % (matrix.n, matrix.n, args.out))
        return EXIT_OK
    if args.kind == 'rademacher':
        if args.n is None or args.m is None:
            raise UsageError("gen --kind rademacher needs --n and --m.")
        points = generate_rademacher(args.n, args.m, args.seed)
    else:
        values = {} if args.spec is None else load_synthetic_spec(args.spec).__to_dict__()
        overrides = {'clusters': args.clusters, 'per_cluster': args.per, 'm': args.m, 'spread': args.spread,
                     'latent': args.latent, 'noise': args.noise, 'min_separation': args.min_separation,
                     'seed': args.seed}
        values.update({key: value for key, value in overrides.items() if value is not None})
        for required in ('clusters', 'per_cluster', 'm'):
            if required not in values.keys():
                flag = 'per' if required == 'per_cluster' else required
                raise UsageError("gen needs --%s or a --spec file." % flag)
        points = generate_synthetic(SyntheticSpec.__from_dict__(values))
    save_points(points, args.out, args.format)
    _progress("wrote %i points in %i dimensions to %s" % (points.n, points.m, args.out))
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    source = _load_source(args)
    tands = TrackAndStopConfig(recompute_period=args.recompute_period,
                               ascent=AscentConfig(iterations=args.ascent_iterations))
    config = build_config(args.k, args.delta, args.z, args.c_alpha, args.first_center, args.max_pulls, tands)
    model = args.model if args.model is not None else default_model(args.algo, source).value
    _progress("running %s on n=%i, m=%i, k=%i" % (args.algo, source.n, source.m, args.k))
    result, wall_ms = run_single(source, args.algo, config, model, args.sigma2, args.seed, args.check_greedy)
    _progress("%s in %.1f ms" % (str(result), wall_ms))
    handle = _output(args.out)
    try:
        if args.json:
            json.dump(result.__to_dict__(), handle, indent=4)
            handle.write("\n")
        else:
            grid = {'algorithm': args.algo, 'n': source.n, 'k': args.k, 'delta': args.delta, 'z': args.z,
                    'c_alpha': '' if args.c_alpha is None else args.c_alpha, 'sigma2': args.sigma2}
            seed = '' if args.seed is None else args.seed
            row = ResultRow.from_result(grid, model, source.m, 0, seed, result, wall_ms)
            writer = csv.writer(handle, lineterminator='\n')
            writer.writerow(ROW_COLUMNS)
            writer.writerow(row.csv_row())
    finally:
        if handle is not sys.stdout:
            handle.close()
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    spec = ExperimentSpec.from_file(args.spec)
    if args.out is not None:
        spec.out = args.out
    rows_path, aggregate_path, manifest_path = output_paths(spec.out)
    started_at = common.utc_now()

    def report(done: int, total: int) -> None:
        _progress("[%i/%i] runs done" % (done, total))
        return

    rows = run_sweep(spec, args.jobs, report)
    write_rows(rows, rows_path)
    write_aggregate(aggregate(rows), aggregate_path)
    write_manifest(spec, rows, manifest_path, started_at)
    failures = sum(1 for row in rows if row.failed)
    _progress("wrote %i rows (%i failed) to %s" % (len(rows), failures, rows_path))
    return EXIT_OK


def cmd_tstar(means_path: str, sigma2: float, iterations: int, out: Optional[str] = None) -> int:
    means = load_means(means_path)
    weights, t_value = optimal_weights(means, AscentConfig(iterations=iterations), sigma2)
    handle = _output(out)
    try:
        handle.write("T* = %r\n" % t_value)
        handle.write("omega* =\n%s\n" % str(weights))
    finally:
        if handle is not sys.stdout:
            handle.close()
    return EXIT_OK


def cmd_diag(args: argparse.Namespace) -> int:
    if args.tstar is not None:
        return cmd_tstar(args.tstar, 1.0 if args.sigma2 is None else args.sigma2, args.ascent_iterations, args.out)
    if args.k is None:
        raise UsageError("diag needs --k.")
    if args.rademacher:
        source = generate_rademacher(args.n, args.m, args.seed)
    elif args.data is None and args.matrix is None and args.synthetic is None:
        raise UsageError("diag needs --data, --matrix, --synthetic or --rademacher.")
    else:
        source = _load_source(args)
    _progress("bounding n=%i, m=%i, k=%i at delta=%r" % (source.n, source.m, args.k, args.delta))
    report = hardness_report(source, args.k, args.delta, args.first_center, args.c, args.sigma2, args.gamma,
                             AscentConfig(iterations=args.ascent_iterations))
    _write_csv(args.out, report.csv_rows())
    return EXIT_OK


COMMANDS = {
    'gen': cmd_gen,
    'run': cmd_run,
    'sweep': cmd_sweep,
    'diag': cmd_diag,
    't-star': lambda args: cmd_tstar(args.means, args.sigma2, args.iterations),
}


def main(argv: Optional[list[str]] = None) -> int:
    """
    Run the command line.
    :param argv: Optional[list[str]]: Arguments, sys.argv[1:] when None.
    :return: Int: 0 on success, 2 on a usage error, 3 on bad data, 4 on a failed run.
    """
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except (UsageError, ParameterError, TypeError, IndexError) as e:
        _progress("usage error: %s" % str(e))
        return EXIT_USAGE
    except (DataValidationError, BruteForceRefused) as e:
        _progress("data error: %s" % str(e))
        return EXIT_DATA
    except (RunFailure, OptimizerError, OracleError) as e:
        _progress("run failed: %s" % str(e))
        return EXIT_RUN
    except (KCenterError, OSError) as e:
        _progress("error: %s" % str(e))
        return EXIT_RUN


if __name__ == '__main__':
    sys.exit(main())

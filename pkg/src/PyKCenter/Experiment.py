#!/usr/bin/env python3
"""
    File: Experiment.py
    Single runs and seeded parameter sweeps over solvers, oracle models and run parameters.
"""
import csv
import itertools
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime
from typing import Any, Callable, Optional
from warnings import warn
import numpy as np
try:
    from common import __type_error__, parse_key_value_text, stable_hash, mix_seed, utc_now
    import common
    from Exceptions import KCenterError, ParameterError, UsageError, KCenterWarning
    from PointSet import PointSet
    from DistanceMatrix import DistanceMatrix
    from Dataset import load_points, load_distance_matrix, load_synthetic_spec, generate_synthetic
    from OracleSession import OracleSession, OracleModel
    from Confidence import CIConfig, CIFamily
    from MaximinOptimizer import AscentConfig
    from RunConfig import RunConfig, TrackAndStopConfig
    from RunResult import RunResult
    from GreedyExact import greedy_exact, matches_greedy
    from RandomSampling import RandomSampling, random_sampling
    from DSUCB import DSUCB, ds_ucb
    from DSTS import DSTS, ds_ts
    from NSTS import NSTS, ns_ts
    from NSTandS import NSTandS, ns_tands
except (ModuleNotFoundError, ImportError):
    from PyKCenter.common import __type_error__, parse_key_value_text, stable_hash, mix_seed, utc_now
    import PyKCenter.common as common
    from PyKCenter.Exceptions import KCenterError, ParameterError, UsageError, KCenterWarning
    from PyKCenter.PointSet import PointSet
    from PyKCenter.DistanceMatrix import DistanceMatrix
    from PyKCenter.Dataset import load_points, load_distance_matrix, load_synthetic_spec, generate_synthetic
    from PyKCenter.OracleSession import OracleSession, OracleModel
    from PyKCenter.Confidence import CIConfig, CIFamily
    from PyKCenter.MaximinOptimizer import AscentConfig
    from PyKCenter.RunConfig import RunConfig, TrackAndStopConfig
    from PyKCenter.RunResult import RunResult
    from PyKCenter.GreedyExact import greedy_exact, matches_greedy
    from PyKCenter.RandomSampling import RandomSampling, random_sampling
    from PyKCenter.DSUCB import DSUCB, ds_ucb
    from PyKCenter.DSTS import DSTS, ds_ts
    from PyKCenter.NSTS import NSTS, ns_ts
    from PyKCenter.NSTandS import NSTandS, ns_tands

# Version check:
common.__version_check__()
# Define Self:
try:
    from typing import Self
except ImportError:
    try:
        from typing_extensions import Self
    except (ModuleNotFoundError, ImportError):
        try:
            from typing import TypeVar
            Self = TypeVar("Self")
        except ImportError:
            print("FATAL: Unable to define Self.")
            exit(129)

Source = PointSet | DistanceMatrix

SOLVERS: dict[str, Callable[[OracleSession, RunConfig], RunResult]] = {
    'random': random_sampling,
    'ds-ucb': ds_ucb,
    'ds-ts': ds_ts,
    'ns-ts': ns_ts,
    'ns-tands': ns_tands,
}
ALGORITHMS: tuple[str, ...] = ('greedy',) + tuple(SOLVERS.keys())
# The oracle model each solver runs under when none is given:
DEFAULT_MODELS: dict[str, OracleModel] = {
    'random': OracleModel.DS,
    'ds-ucb': OracleModel.DS,
    'ds-ts': OracleModel.DS,
    'ns-ts': OracleModel.NS,
    'ns-tands': OracleModel.NS,
}
SOLVER_MODELS: dict[str, tuple[OracleModel, ...]] = {
    'random': RandomSampling.MODELS,
    'ds-ucb': DSUCB.MODELS,
    'ds-ts': DSTS.MODELS,
    'ns-ts': NSTS.MODELS,
    'ns-tands': NSTandS.MODELS,
}
ROW_COLUMNS: tuple[str, ...] = ('algorithm', 'model', 'n', 'm', 'k', 'delta', 'z', 'c_alpha', 'sigma2', 'rep',
                                'seed', 'queries_total', 'matched_greedy', 'wall_ms', 'per_stage', 'error')
GRID_COLUMNS: tuple[str, ...] = ('algorithm', 'n', 'k', 'delta', 'z', 'c_alpha', 'sigma2')


def default_model(algorithm: str, source: Source) -> OracleModel:
    """
    The oracle model an algorithm uses on a source when none is asked for: DS on points, Bernoulli rewards on a
    distance matrix.
    :param algorithm: Str: Algorithm id.
    :param source: PointSet | DistanceMatrix: The data.
    :return: OracleModel
    """
    if isinstance(source, DistanceMatrix):
        return OracleModel.BERNOULLI
    return DEFAULT_MODELS.get(algorithm, OracleModel.DS)


def check_compatible(algorithm: str, model: OracleModel | str, source: Source) -> OracleModel:
    """
    Check an algorithm, oracle model and data source fit together, before any query is made.
    :param algorithm: Str: Algorithm id.
    :param model: OracleModel | str: The oracle model.
    :param source: PointSet | DistanceMatrix: The data.
    :raises UsageError: On an unknown algorithm or model, or a mismatch.
    :return: OracleModel: The model, parsed.
    """
    if algorithm not in ALGORITHMS:
        raise UsageError("unknown algorithm '%s', expected one of %s." % (algorithm, ", ".join(ALGORITHMS)))
    if isinstance(model, str):
        try:
            model = OracleModel(model.lower())
        except ValueError:
            raise UsageError("unknown oracle model '%s'." % model)
    if algorithm != 'greedy' and model not in SOLVER_MODELS[algorithm]:
        raise UsageError("%s runs under the %s model, not %s." % (
            algorithm, " or ".join(allowed.value for allowed in SOLVER_MODELS[algorithm]), model.value))
    if model == OracleModel.DS and not isinstance(source, PointSet):
        raise UsageError("%s with the ds model needs a points file, got a distance matrix." % algorithm)
    return model


def build_config(k: int, delta: float = 0.1, z: float = 0.0, c_alpha: Optional[float] = None,
                 first_center: int | str = 0, max_pulls: Optional[int] = None,
                 tands: Optional[TrackAndStopConfig] = None) -> RunConfig:
    """
    A RunConfig from flat values. A c_alpha selects the tuned iterated-log interval.
    :return: RunConfig
    """
    ci = None if c_alpha is None else CIConfig(CIFamily.ITERATED_LOG_CALPHA, c_alpha=c_alpha)
    return RunConfig(k, delta=delta, first_center=first_center, ci=ci, z=z, max_pulls=max_pulls, tands=tands)


def run_single(source: Source,
               algorithm: str,
               config: RunConfig,
               model: Optional[OracleModel | str] = None,
               sigma2: float = 0.0,
               seed: Optional[int] = None,
               check_greedy: bool = False,
               ) -> tuple[RunResult, float]:
    """
    Run one algorithm once.
    :param source: PointSet | DistanceMatrix: The data.
    :param algorithm: Str: One of ALGORITHMS.
    :param config: RunConfig: The run parameters.
    :param model: Optional[OracleModel | str]: Oracle model, default_model() when None.
    :param sigma2: Float: NS noise variance.
    :param seed: Optional[int]: Session seed.
    :param check_greedy: Bool: Compare with greedy from the same first center and fill matched_greedy.
    :raises UsageError: On an unknown algorithm or an algorithm, model and source mismatch.
    :return: Tuple[RunResult, float]: The result and the wall time in milliseconds.
    """
    if model is None:
        model = default_model(algorithm, source)
    model = check_compatible(algorithm, model, source)
    started = time.perf_counter()
    if algorithm == 'greedy':
        first = config.first_center
        if first == 'random':
            first = int(np.random.default_rng(seed).integers(source.n))
        result = greedy_exact(source, config.k, first)
        if check_greedy:
            result.matched_greedy = True
    else:
        session = OracleSession(source, model, sigma2, seed)
        result = SOLVERS[algorithm](session, config)
        if check_greedy:
            matches_greedy(source, result)
    return result, (time.perf_counter() - started) * 1000.0


class ResultRow(object):
    """
    One sweep run: its grid values, seed and outcome.
    """
    def __init__(self, values: dict[str, Any]) -> None:
        unknown = set(values.keys()) - set(ROW_COLUMNS)
        if len(unknown) > 0:
            raise ParameterError("unknown result column(s): %s" % ", ".join(sorted(unknown)))
        self._values: dict[str, Any] = {column: values.get(column, '') for column in ROW_COLUMNS}
        return

    @classmethod
    def from_result(cls, grid: dict[str, Any], model: str, m: int, rep: int, seed: int, result: RunResult,
                    wall_ms: float) -> Self:
        matched = '' if result.matched_greedy is None else int(result.matched_greedy)
        values = dict(grid)
        values.update({
            'model': model, 'm': m, 'rep': rep, 'seed': seed, 'queries_total': result.ledger.total,
            'matched_greedy': matched, 'wall_ms': round(wall_ms, 3),
            'per_stage': ";".join(str(count) for count in result.ledger.per_stage),
        })
        return cls(values)

    def csv_row(self) -> list:
        return [self._values[column] for column in ROW_COLUMNS]

    def __to_dict__(self) -> dict:
        return dict(self._values)

    @classmethod
    def __from_dict__(cls, from_dict: dict) -> Self:
        return cls(from_dict)

    def __getitem__(self, column: str) -> Any:
        return self._values[column]

    @property
    def failed(self) -> bool:
        """Whether the run raised."""
        return self._values['error'] != ''

    @property
    def grid_key(self) -> tuple:
        """The grid point of the row."""
        return tuple(self._values[column] for column in GRID_COLUMNS)


class ExperimentSpec(object):
    """
    A sweep: one data source, a grid of algorithms and run parameters, and a number of seeded repetitions per grid
    point.
    """
##########################
# Initialize:
##########################
    def __init__(self,
                 algorithms: list[str],
                 k: list[int],
                 delta: Optional[list[float]] = None,
                 z: Optional[list[float]] = None,
                 c_alpha: Optional[list[Optional[float]]] = None,
                 sigma2: Optional[list[float]] = None,
                 n: Optional[list[Optional[int]]] = None,
                 data: Optional[str] = None,
                 matrix: Optional[str] = None,
                 synthetic: Optional[str] = None,
                 model: Optional[str] = None,
                 convention: str = 'centered',
                 repetitions: int = 20,
                 seed: int = 0,
                 first_center: int | str = 0,
                 check_greedy: bool = True,
                 recompute_period: int = 100,
                 ascent_iterations: int = 20000,
                 out: str = 'sweep.csv',
                 ) -> None:
        """
        Initialize the spec.
        :param algorithms: List[str]: Algorithm ids.
        :param k: List[int]: Center counts.
        :param delta: Optional[list[float]]: Error budgets, default [0.1].
        :param z: Optional[list[float]]: Thompson weights, default [0.0].
        :param c_alpha: Optional[list[Optional[float]]]: Interval constants, default [None] (solver default).
        :param sigma2: Optional[list[float]]: NS noise variances, default [0.0].
        :param n: Optional[list[Optional[int]]]: Point counts (first n points), default [None] (all points).
        :param data: Optional[str]: Points file.
        :param matrix: Optional[str]: Distance matrix file.
        :param synthetic: Optional[str]: Synthetic spec file.
        :param model: Optional[str]: Oracle model for every run, default per algorithm.
        :param convention: Str: Normalization convention of a points file.
        :param repetitions: Int: Runs per grid point, >= 1.
        :param seed: Int: Base seed.
        :param first_center: Int | str: First center index or 'random'.
        :param check_greedy: Bool: Fill matched_greedy.
        :param recompute_period: Int: Track-and-stop weight recomputation period.
        :param ascent_iterations: Int: Track-and-stop optimizer budget.
        :param out: Str: Rows CSV path; the aggregate and manifest go next to it.
        :raises UsageError: On an empty grid or an invalid combination.
        """
        sources = [value for value in (data, matrix, synthetic) if value is not None]
        if len(sources) != 1:
            raise UsageError("exactly one of data, matrix or synthetic is required, got %i." % len(sources))
        delta = [0.1] if delta is None else delta
        z = [0.0] if z is None else z
        c_alpha = [None] if c_alpha is None else c_alpha
        sigma2 = [0.0] if sigma2 is None else sigma2
        n = [None] if n is None else n
        for name, values in (('algorithms', algorithms), ('k', k), ('delta', delta), ('z', z),
                             ('c_alpha', c_alpha), ('sigma2', sigma2), ('n', n)):
            if not isinstance(values, list):
                __type_error__(name, "list", values)
            if len(values) == 0:
                raise UsageError("the sweep grid is empty: '%s' has no values." % name)
        for algorithm in algorithms:
            if algorithm not in ALGORITHMS:
                raise UsageError("unknown algorithm '%s', expected one of %s." % (algorithm, ", ".join(ALGORITHMS)))
        if repetitions < 1:
            raise UsageError("repetitions must be >= 1, got %i." % repetitions)
        self._algorithms: list[str] = list(algorithms)
        self._k: list[int] = list(k)
        self._delta: list[float] = list(delta)
        self._z: list[float] = list(z)
        self._c_alpha: list[Optional[float]] = list(c_alpha)
        self._sigma2: list[float] = list(sigma2)
        self._n: list[Optional[int]] = list(n)
        self._data: Optional[str] = data
        self._matrix: Optional[str] = matrix
        self._synthetic: Optional[str] = synthetic
        self._model: Optional[str] = model
        self._convention: str = convention
        self._repetitions: int = repetitions
        self._seed: int = seed
        self._first_center: int | str = first_center
        self._check_greedy: bool = check_greedy
        self._recompute_period: int = recompute_period
        self._ascent_iterations: int = ascent_iterations
        self._out: str = out
        return

##################################
# Load / Save functions:
##################################
    def __to_dict__(self) -> dict:
        return {
            'algorithms': self._algorithms, 'k': self._k, 'delta': self._delta, 'z': self._z,
            'c_alpha': self._c_alpha, 'sigma2': self._sigma2, 'n': self._n, 'data': self._data,
            'matrix': self._matrix, 'synthetic': self._synthetic, 'model': self._model,
            'convention': self._convention, 'repetitions': self._repetitions, 'seed': self._seed,
            'first_center': self._first_center, 'check_greedy': self._check_greedy,
            'recompute_period': self._recompute_period, 'ascent_iterations': self._ascent_iterations,
            'out': self._out,
        }

    @classmethod
    def __from_dict__(cls, from_dict: dict) -> Self:
        return cls(**from_dict)

    @classmethod
    def from_text(cls, text: str) -> Self:
        """
        Parse a key=value sweep spec, IE: algorithm=ds-ucb / k=4 / delta=0.3,0.1,0.01 / repetitions=20.
        :param text: Str: The file contents.
        :raises UsageError: On a malformed or unknown key.
        :return: ExperimentSpec
        """
        def as_list(value: str | list[str]) -> list[str]:
            return value if isinstance(value, list) else [value]

        def optional_float(value: str) -> Optional[float]:
            return None if value.lower() in ('none', 'default') else float(value)

        def optional_int(value: str) -> Optional[int]:
            return None if value.lower() in ('none', 'all') else int(value)

        try:
            values = parse_key_value_text(text)
            if 'algorithm' in values.keys() and 'algorithms' not in values.keys():
                values['algorithms'] = values.pop('algorithm')
            if 'algo' in values.keys() and 'algorithms' not in values.keys():
                values['algorithms'] = values.pop('algo')
            spec: dict[str, Any] = {}
            converters: dict[str, Callable[[str | list[str]], Any]] = {
                'algorithms': lambda v: as_list(v),
                'k': lambda v: [int(item) for item in as_list(v)],
                'delta': lambda v: [float(item) for item in as_list(v)],
                'z': lambda v: [float(item) for item in as_list(v)],
                'c_alpha': lambda v: [optional_float(item) for item in as_list(v)],
                'sigma2': lambda v: [float(item) for item in as_list(v)],
                'n': lambda v: [optional_int(item) for item in as_list(v)],
                'data': str, 'matrix': str, 'synthetic': str, 'model': str, 'convention': str, 'out': str,
                'repetitions': int, 'seed': int, 'recompute_period': int, 'ascent_iterations': int,
                'first_center': lambda v: v if v == 'random' else int(v),
                'check_greedy': lambda v: v.lower() in ('1', 'true', 'yes'),
            }
            for key, value in values.items():
                if key not in converters.keys():
                    raise UsageError("unknown sweep key '%s'." % key)
                spec[key] = converters[key](value)
        except (ValueError, TypeError, AttributeError) as e:
            raise UsageError("invalid sweep spec: %s" % str(e), exception=e)
        for required in ('algorithms', 'k'):
            if required not in spec.keys():
                raise UsageError("sweep spec is missing '%s'." % required)
        return cls(**spec)

    @classmethod
    def from_file(cls, path: str) -> Self:
        """
        Read a sweep spec file. Relative data paths resolve against the spec file's directory.
        :param path: Str: The file path.
        :raises UsageError: If the file cannot be read.
        :return: ExperimentSpec
        """
        try:
            with open(path, 'r') as file_handle:
                spec = cls.from_text(file_handle.read())
        except OSError as e:
            raise UsageError("unable to read sweep spec '%s': %s" % (path, e.strerror), exception=e)
        base = os.path.dirname(os.path.abspath(path))
        for attribute in ('_data', '_matrix', '_synthetic'):
            value = getattr(spec, attribute)
            if value is not None and not os.path.isabs(value):
                setattr(spec, attribute, os.path.join(base, value))
        return spec

#########################################
# Methods:
#########################################
    def load_source(self) -> Source:
        """
        Load the data source.
        :return: PointSet | DistanceMatrix
        """
        if self._data is not None:
            return load_points(self._data, self._convention)
        if self._matrix is not None:
            return load_distance_matrix(self._matrix)
        return generate_synthetic(load_synthetic_spec(self._synthetic))

    def grid(self) -> list[dict[str, Any]]:
        """
        Every grid point, in a fixed order.
        :return: List[dict[str, Any]]
        """
        points = itertools.product(self._algorithms, self._n, self._k, self._delta, self._z, self._c_alpha,
                                   self._sigma2)
        return [dict(zip(GRID_COLUMNS, point)) for point in points]

    def run_seed(self, grid_point: dict[str, Any], rep: int) -> int:
        """
        The seed of one run: a 64-bit mix of the base seed, a stable hash of the grid point and the repetition.
        Adding grid points never changes existing seeds.
        :param grid_point: Dict[str, Any]: The grid point.
        :param rep: Int: Repetition.
        :return: Int
        """
        key = ",".join("%s=%s" % (column, grid_point[column]) for column in GRID_COLUMNS)
        return mix_seed(self._seed, stable_hash(key), rep)

    def tands_config(self) -> TrackAndStopConfig:
        return TrackAndStopConfig(recompute_period=self._recompute_period,
                                  ascent=AscentConfig(iterations=self._ascent_iterations))

#########################################
# Properties:
#########################################
    @property
    def algorithms(self) -> list[str]:
        return list(self._algorithms)

    @property
    def repetitions(self) -> int:
        return self._repetitions

    @property
    def model(self) -> Optional[str]:
        return self._model

    @property
    def first_center(self) -> int | str:
        return self._first_center

    @property
    def check_greedy(self) -> bool:
        return self._check_greedy

    @property
    def out(self) -> str:
        """Rows CSV path."""
        return self._out

    @out.setter
    def out(self, value: str) -> None:
        if not isinstance(value, str):
            __type_error__("out", "str", value)
        self._out = value
        return


def _run_task(task: dict[str, Any]) -> ResultRow:
    """Run one (grid point, repetition). Module level so worker processes can import it."""
    grid_point: dict[str, Any] = task['grid']
    source: Source = task['source']
    if grid_point['n'] is not None:
        source = source.subset(range(min(grid_point['n'], source.n)))
    algorithm = grid_point['algorithm']
    model = task['model'] if task['model'] is not None else default_model(algorithm, source).value
    values = dict(grid_point)
    values.update({'n': source.n, 'model': model, 'm': source.m, 'rep': task['rep'], 'seed': task['seed']})
    try:
        config = build_config(grid_point['k'], grid_point['delta'], grid_point['z'], grid_point['c_alpha'],
                              task['first_center'], tands=task['tands'])
        result, wall_ms = run_single(source, algorithm, config, model, grid_point['sigma2'], task['seed'],
                                     task['check_greedy'])
    except (KCenterError, IndexError) as e:
        values['error'] = "%s: %s" % (type(e).__name__, str(e))
        return ResultRow(values)
    return ResultRow.from_result(values, model, source.m, task['rep'], task['seed'], result, wall_ms)


def run_sweep(spec: ExperimentSpec, jobs: Optional[int] = None,
              progress: Optional[Callable[[int, int], None]] = None) -> list[ResultRow]:
    """
    Run every (grid point, repetition). Failed runs become rows with an error, the sweep carries on.
    :param spec: ExperimentSpec: The sweep.
    :param jobs: Optional[int]: Worker processes; None uses every core, 1 runs in this process.
    :param progress: Optional[Callable[[int, int], None]]: Called with (done, total) after each run.
    :return: List[ResultRow]: In grid order, then repetition order.
    """
    if not isinstance(spec, ExperimentSpec):
        __type_error__("spec", "ExperimentSpec", spec)
    source = spec.load_source()
    tands = spec.tands_config()
    tasks = [
        {'grid': point, 'rep': rep, 'seed': spec.run_seed(point, rep), 'source': source, 'model': spec.model,
         'first_center': spec.first_center, 'check_greedy': spec.check_greedy, 'tands': tands}
        for point in spec.grid() for rep in range(spec.repetitions)
    ]
    rows: list[ResultRow] = []
    if jobs == 1:
        for task in tasks:
            rows.append(_run_task(task))
            if progress is not None:
                progress(len(rows), len(tasks))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            for row in executor.map(_run_task, tasks):
                rows.append(row)
                if progress is not None:
                    progress(len(rows), len(tasks))
    failures = sum(1 for row in rows if row.failed)
    if failures > 0 and common.USE_WARNINGS:
        warn("%i of %i sweep runs failed." % (failures, len(rows)), KCenterWarning)
    return rows


def aggregate(rows: list[ResultRow]) -> list[dict[str, Any]]:
    """
    Per grid point: runs, failures, median and mean queries, and the greedy match rate of successful runs.
    :param rows: List[ResultRow]: Sweep rows.
    :return: List[dict[str, Any]]: In first-seen grid order.
    """
    groups: dict[tuple, list[ResultRow]] = {}
    for row in rows:
        groups.setdefault(row.grid_key, []).append(row)
    summary: list[dict[str, Any]] = []
    for key, group in groups.items():
        done = [row for row in group if not row.failed]
        queries = np.array([row['queries_total'] for row in done], dtype=np.float64)
        matched = [row['matched_greedy'] for row in done if row['matched_greedy'] != '']
        entry: dict[str, Any] = dict(zip(GRID_COLUMNS, key))
        entry.update({
            'runs': len(group),
            'failures': len(group) - len(done),
            'median_queries': float(np.median(queries)) if len(done) > 0 else '',
            'mean_queries': float(np.mean(queries)) if len(done) > 0 else '',
            'match_rate': float(np.mean(matched)) if len(matched) > 0 else '',
        })
        summary.append(entry)
    return summary


def write_rows(rows: list[ResultRow], path: str) -> None:
    """
    Write sweep rows as CSV.
    :param rows: List[ResultRow]: The rows.
    :param path: Str: Output path.
    :return: None
    """
    with open(path, 'w', newline='') as file_handle:
        writer = csv.writer(file_handle, lineterminator='\n')
        writer.writerow(ROW_COLUMNS)
        for row in rows:
            writer.writerow(row.csv_row())
    return


def write_aggregate(summary: list[dict[str, Any]], path: str) -> None:
    """
    Write aggregate() output as CSV.
    :param summary: List[dict[str, Any]]: The aggregate.
    :param path: Str: Output path.
    :return: None
    """
    columns = list(GRID_COLUMNS) + ['runs', 'failures', 'median_queries', 'mean_queries', 'match_rate']
    with open(path, 'w', newline='') as file_handle:
        writer = csv.DictWriter(file_handle, fieldnames=columns, lineterminator='\n')
        writer.writeheader()
        for entry in summary:
            writer.writerow(entry)
    return


def write_manifest(spec: ExperimentSpec, rows: list[ResultRow], path: str, started_at: Optional[datetime] = None
                   ) -> None:
    """
    Write the sweep manifest: the spec, the UTC start time, the row count and the failures.
    :param spec: ExperimentSpec: The sweep.
    :param rows: List[ResultRow]: Its rows.
    :param path: Str: Output path.
    :param started_at: Optional[datetime]: Start time, now when None.
    :return: None
    """
    started = utc_now() if started_at is None else common.convert_to_utc(started_at)
    manifest = {
        'spec': spec.__to_dict__(),
        'started_at': started.isoformat(),
        'rows': len(rows),
        'failures': [row.__to_dict__() for row in rows if row.failed],
    }
    with open(path, 'w') as file_handle:
        json.dump(manifest, file_handle, indent=4)
    return


def output_paths(out: str) -> tuple[str, str, str]:
    """
    The rows, aggregate and manifest paths of a sweep writing to out.
    :param out: Str: The rows CSV path.
    :return: Tuple[str, str, str]
    """
    stem, _ = os.path.splitext(out)
    return out, stem + ".aggregate.csv", out + ".manifest.json"

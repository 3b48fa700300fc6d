"""Перебор всех однокубитных вращений на сетке и сводка худших точностей.

Цели нумеруются в порядке (полярный угол, азимут, угол вращения).
Каждая цель подбирается со своим seed, полученным из базового seed и
номера цели, поэтому результат не зависит от числа процессов.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError

from .design import DesignConstraints, FitOptions, fit_gate
from .su2 import RotationSpec, SphericalAxis, spherical_to_axis
from .validators import validate_grid_counts

logger = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SweepGrid:
    """Число узлов по полярному углу, азимуту и углу вращения."""
    n_polar: int
    n_azimuth: int
    n_angle: int

    def __post_init__(self):
        validate_grid_counts((self.n_polar, self.n_azimuth, self.n_angle))

    @property
    def size(self):
        return self.n_polar * self.n_azimuth * self.n_angle

    def axes(self):
        """Узлы по каждой оси, концы интервалов включены."""
        return (
            np.linspace(0.0, math.pi, self.n_polar),
            np.linspace(0.0, 2 * math.pi, self.n_azimuth),
            np.linspace(0.0, 2 * math.pi, self.n_angle),
        )


@dataclass(frozen=True)
class TargetRecord:
    index: int
    polar: float
    azimuth: float
    chi: float
    axis: tuple
    fidelity: float
    design: object
    evaluations: int


@dataclass(frozen=True)
class AxisWorst:
    """Худшая точность по всем углам χ для одной оси."""
    polar: float
    azimuth: float
    axis: tuple
    worst_fidelity: float


@dataclass(frozen=True)
class Histogram:
    edges: tuple
    counts: tuple
    underflow: int


@dataclass(frozen=True)
class SweepOptions:
    fit: FitOptions = field(default_factory=FitOptions)
    base_seed: int = 0
    jobs: int = 1
    histogram_bins: int = field(
        default_factory=lambda: settings.HISTOGRAM_BINS)
    histogram_min: float = field(
        default_factory=lambda: settings.HISTOGRAM_MIN)
    near_unity_threshold: float = field(
        default_factory=lambda: settings.NEAR_UNITY_THRESHOLD)

    def __post_init__(self):
        if self.jobs < 1:
            raise ValidationError(
                f'Число процессов должно быть ≥ 1: {self.jobs}'
            )
        if self.histogram_bins < 1:
            raise ValidationError(
                f'Число столбцов гистограммы должно быть ≥ 1: '
                f'{self.histogram_bins}'
            )
        if not 0.0 <= self.histogram_min < 1.0:
            raise ValidationError(
                f'Нижняя граница гистограммы вне [0, 1): {self.histogram_min}'
            )


@dataclass(frozen=True)
class SweepSummary:
    grid: SweepGrid
    constraints: DesignConstraints
    base_seed: int
    records: tuple
    f_min: float
    axis_worst: tuple
    histogram: Histogram
    near_unity_fraction: float


@dataclass(frozen=True)
class ScanRow:
    theta_max: float
    length_max: float
    f_min: float
    near_unity_fraction: float


@dataclass(frozen=True)
class ConstraintScan:
    rows: tuple
    summaries: tuple


def mix_seed(base_seed, index):
    """seed_i = base_seed XOR splitmix64(index)."""
    z = (index + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    z ^= z >> 31
    return (int(base_seed) & MASK64) ^ z


def grid_coordinates(g):
    """Тройки (полярный угол, азимут, χ) в порядке generate_grid."""
    polar, azimuth, chi = g.axes()
    return [
        (float(p), float(a), float(c))
        for p in polar for a in azimuth for c in chi
    ]


def _axis(polar, azimuth):
    # азимут 2π совпадает с 0
    return spherical_to_axis(
        SphericalAxis(polar=polar, azimuth=math.fmod(azimuth, 2 * math.pi))
    )


def generate_grid(g):
    """Все целевые вращения сетки; вырожденные дубликаты сохраняются."""
    return [
        RotationSpec(axis=_axis(polar, azimuth), angle=chi)
        for polar, azimuth, chi in grid_coordinates(g)
    ]


def _fit_task(task):
    target, constraints, options = task
    return fit_gate(target, constraints, options)


def _histogram(fidelities, options):
    edges = np.linspace(options.histogram_min, 1.0, options.histogram_bins + 1)
    counts, _ = np.histogram(
        np.clip(fidelities, options.histogram_min, 1.0), bins=edges
    )
    return Histogram(
        edges=tuple(float(edge) for edge in edges),
        counts=tuple(int(count) for count in counts),
        underflow=int(np.sum(fidelities < options.histogram_min)),
    )


def _axis_worst(g, records):
    per_axis = g.n_angle
    return tuple(
        AxisWorst(
            polar=records[start].polar,
            azimuth=records[start].azimuth,
            axis=records[start].axis,
            worst_fidelity=min(
                record.fidelity for record in records[start:start + per_axis]
            ),
        )
        for start in range(0, len(records), per_axis)
    )


def run_sweep(g, c, options=None, warm_start=None):
    """Подбор волновода для каждой цели сетки и агрегаты по результатам.

    warm_start: необязательный список (по номеру цели) проектов, которые
    добавляются в начальную популяцию.
    """
    options = options or SweepOptions()
    targets = generate_grid(g)
    coordinates = grid_coordinates(g)
    tasks = []
    for index, target in enumerate(targets):
        fit_options = options.fit.with_seed(mix_seed(options.base_seed, index))
        if warm_start is not None and warm_start[index]:
            fit_options = replace(
                fit_options,
                initial_designs=tuple(warm_start[index])
                + tuple(fit_options.initial_designs),
            )
        tasks.append((target, c, fit_options))
    logger.info(
        'Перебор %d целей: θ_max=%.6g, L_max=%.6g, процессов %d',
        g.size, c.theta_max, c.length_max, options.jobs,
    )
    if options.jobs == 1:
        results = [_fit_task(task) for task in tasks]
    else:
        chunk = max(1, len(tasks) // (8 * options.jobs))
        with ProcessPoolExecutor(max_workers=options.jobs) as executor:
            results = list(executor.map(_fit_task, tasks, chunksize=chunk))
    records = tuple(
        TargetRecord(
            index=index,
            polar=polar,
            azimuth=azimuth,
            chi=chi,
            axis=target.axis,
            fidelity=result.fidelity,
            design=result.design,
            evaluations=result.evaluations,
        )
        for index, ((polar, azimuth, chi), target, result)
        in enumerate(zip(coordinates, targets, results))
    )
    fidelities = np.array([record.fidelity for record in records])
    summary = SweepSummary(
        grid=g,
        constraints=c,
        base_seed=options.base_seed,
        records=records,
        f_min=float(fidelities.min()),
        axis_worst=_axis_worst(g, records),
        histogram=_histogram(fidelities, options),
        near_unity_fraction=float(
            np.mean(fidelities >= options.near_unity_threshold)
        ),
    )
    logger.info('F_min = %.12f', summary.f_min)
    return summary


def constraint_scan(pairs, g, options=None, nested=True):
    """F_min для каждой пары (θ_max, L_max).

    При nested=True лучшие проекты предыдущих пар попадают в начальную
    популяцию следующих, так что расширение ограничений не ухудшает F.
    """
    pairs = list(pairs)
    if not pairs:
        raise ValidationError('Список ограничений пуст')
    constraints = [
        DesignConstraints(theta_max=theta_max, length_max=length_max)
        for theta_max, length_max in pairs
    ]
    options = options or SweepOptions()
    found = [[] for _ in range(g.size)]
    rows, summaries = [], []
    for c in constraints:
        warm_start = None
        if nested:
            warm_start = [
                [design for _, design in sorted(
                    candidates, key=lambda item: -item[0])]
                for candidates in found
            ]
        summary = run_sweep(g, c, options, warm_start=warm_start)
        for record in summary.records:
            found[record.index].append((record.fidelity, record.design))
        rows.append(ScanRow(
            theta_max=c.theta_max,
            length_max=c.length_max,
            f_min=summary.f_min,
            near_unity_fraction=summary.near_unity_fraction,
        ))
        summaries.append(summary)
        logger.info(
            'θ_max=%.6g L_max=%.6g: F_min=%.12f',
            c.theta_max, c.length_max, summary.f_min,
        )
    return ConstraintScan(rows=tuple(rows), summaries=tuple(summaries))

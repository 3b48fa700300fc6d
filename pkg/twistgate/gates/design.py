"""Обратная задача: лучший скрученный волновод для заданного вращения.

Поиск по прямоугольнику |θ| ≤ θ_max, 0 ≤ L ≤ L_max идёт в три этапа:
просмотр равномерной решётки, дифференциальная эволюция и полировка
симплексом Нелдера-Мида из нескольких лучших точек. Ландшафт почти
периодичен по θ с периодом π, так что шаг решётки по θ берётся много
меньше π. Максимизируется точность F (минимизируется 1 − F).
"""
import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError
from scipy.ndimage import minimum_filter
from scipy.optimize import differential_evolution, minimize

from .su2 import (axis_angle_to_unitary, gate_fidelity, quaternion_fidelity,
                  rotation_to_quaternion)
from .validators import validate_non_negative, validate_positive
from .waveguide import DELTA_BETA0, TwistDesign, gate_matrix, gate_quaternion

logger = logging.getLogger(__name__)

# Сколько решений из семейства φ = 2πk пробовать в начальной популяции.
MAX_STRUCTURED_ORDERS = 4


@dataclass(frozen=True)
class DesignConstraints:
    """Допустимая область: θ ∈ [−θ_max, θ_max], L ∈ [0, L_max]."""
    theta_max: float
    length_max: float

    def __post_init__(self):
        object.__setattr__(self, 'theta_max', float(validate_non_negative(
            self.theta_max, 'Максимальный угол скрутки θ_max')))
        object.__setattr__(self, 'length_max', float(validate_positive(
            self.length_max, 'Максимальная длина L_max')))

    @property
    def bounds(self):
        return ((-self.theta_max, self.theta_max), (0.0, self.length_max))

    def contains(self, design):
        return (abs(design.theta) <= self.theta_max
                and 0.0 <= design.length <= self.length_max)


@dataclass(frozen=True)
class FitOptions:
    """Параметры оптимизатора; значения по умолчанию берутся из settings."""
    seed: int = 0
    population: int = field(
        default_factory=lambda: settings.DE_POPULATION)
    mutation: tuple = field(
        default_factory=lambda: tuple(settings.DE_MUTATION))
    recombination: float = field(
        default_factory=lambda: settings.DE_RECOMBINATION)
    max_generations: int = field(
        default_factory=lambda: settings.DE_MAX_GENERATIONS)
    target_loss: float = field(
        default_factory=lambda: settings.DE_TARGET_LOSS)
    polish: bool = True
    polish_xatol: float = field(
        default_factory=lambda: settings.POLISH_XATOL)
    polish_fatol: float = field(
        default_factory=lambda: settings.POLISH_FATOL)
    polish_max_iterations: int = field(
        default_factory=lambda: settings.POLISH_MAX_ITERATIONS)
    polish_starts: int = field(
        default_factory=lambda: settings.POLISH_STARTS)
    lattice_theta_step: float = field(
        default_factory=lambda: settings.LATTICE_THETA_STEP)
    lattice_length_step: float = field(
        default_factory=lambda: settings.LATTICE_LENGTH_STEP)
    lattice_candidates: int = field(
        default_factory=lambda: settings.LATTICE_CANDIDATES)
    refine_iterations: int = field(
        default_factory=lambda: settings.REFINE_ITERATIONS)
    initial_designs: tuple = ()

    def __post_init__(self):
        if self.population < 5:
            raise ValidationError(
                f'Популяция должна содержать не меньше 5 особей: '
                f'{self.population}'
            )
        low, high = self.mutation
        if not 0 <= low <= high <= 2:
            raise ValidationError(
                f'Диапазон мутации должен лежать в [0, 2]: {self.mutation}'
            )
        if not 0 <= self.recombination <= 1:
            raise ValidationError(
                f'Вероятность скрещивания вне [0, 1]: {self.recombination}'
            )
        if self.max_generations < 1:
            raise ValidationError('Нужно хотя бы одно поколение')
        if self.polish_starts < 1:
            raise ValidationError(
                f'Нужна хотя бы одна стартовая точка полировки: '
                f'{self.polish_starts}'
            )
        validate_positive(self.lattice_theta_step, 'Шаг решётки по θ')
        validate_positive(self.lattice_length_step, 'Шаг решётки по L')
        if self.lattice_candidates < 1 or self.refine_iterations < 0:
            raise ValidationError(
                f'Недопустимые параметры уточнения решётки: '
                f'{self.lattice_candidates}, {self.refine_iterations}'
            )

    def with_seed(self, seed):
        return replace(self, seed=seed)


@dataclass(frozen=True)
class FitResult:
    design: TwistDesign
    fidelity: float
    target: object
    evaluations: int
    seed: int


class GateObjective:
    """Потери 1 − F по свободным координатам (θ, L).

    Запоминает лучшую из всех вычисленных точек и число вычислений.
    Координата с вырожденным интервалом (θ_max = 0) закреплена.
    """

    def __init__(self, target_quaternion, constraints, target_loss=0.0):
        self.target = np.asarray(target_quaternion, dtype=float)
        self.bounds = constraints.bounds
        self.free = [index for index, (low, high) in enumerate(self.bounds)
                     if high > low]
        self.fixed = np.array([low for low, _ in self.bounds])
        self.target_loss = target_loss
        self.evaluations = 0
        self.best_loss = math.inf
        self.best_point = None

    @property
    def free_bounds(self):
        return [self.bounds[index] for index in self.free]

    def expand(self, x):
        """Свободные координаты формы (k,) или (k, S) -> полные (2, ...)."""
        x = np.asarray(x, dtype=float)
        full = np.empty((2,) + x.shape[1:])
        for index in range(2):
            full[index] = self.fixed[index]
        for position, index in enumerate(self.free):
            low, high = self.bounds[index]
            full[index] = np.clip(x[position], low, high)
        return full

    def reduce(self, design):
        return np.array([(design.theta, design.length)[index]
                         for index in self.free])

    def __call__(self, x):
        full = self.expand(x)
        quaternion = gate_quaternion(full[0], full[1])
        loss = 1.0 - quaternion_fidelity(self.target, quaternion)
        loss = np.maximum(loss, 0.0)
        self.evaluations += loss.size
        best = int(np.argmin(loss))
        if float(loss.flat[best]) < self.best_loss:
            self.best_loss = float(loss.flat[best])
            self.best_point = full.reshape(2, -1)[:, best].copy()
        return loss

    def stop(self, intermediate_result):
        if self.best_loss <= self.target_loss:
            return True
        return False


def fidelity_objective(d, target):
    """F(gate_matrix(d), target): точность вентиля к целевой матрице."""
    return gate_fidelity(gate_matrix(d), target)


def _z_family(target, constraints):
    """θ = 0: вращения вокруг ±z на φ = 2πL."""
    designs = []
    for base in sorted({target.angle % (2 * math.pi),
                        -target.angle % (2 * math.pi)}):
        for order in range(MAX_STRUCTURED_ORDERS):
            length = (base + 2 * math.pi * order) / DELTA_BETA0
            if length <= constraints.length_max:
                designs.append(TwistDesign(theta=0.0, length=length))
    return designs


def _y_family(target, constraints):
    """φ = 2πk: вращения вокруг ±y на 2θ при L = sqrt(k² − (θ/π)²)."""
    half = 0.5 * target.angle
    thetas = sorted(
        {sign * half + math.pi * turn
         for sign in (1, -1)
         for turn in range(-MAX_STRUCTURED_ORDERS, MAX_STRUCTURED_ORDERS + 1)},
        key=lambda theta: (abs(theta), -theta),
    )
    designs = []
    for theta in thetas:
        if abs(theta) > constraints.theta_max:
            continue
        first = math.ceil(abs(theta) / math.pi)
        for order in range(first, first + MAX_STRUCTURED_ORDERS):
            length = math.sqrt(max(order ** 2 - (theta / math.pi) ** 2, 0.0))
            if length <= constraints.length_max:
                designs.append(TwistDesign(theta=theta, length=length))
    return designs


def structured_designs(target, constraints):
    """Точные семейства решений для начальной популяции."""
    return _z_family(target, constraints) + _y_family(target, constraints)


def _lattice_axes(objective, options):
    steps = (options.lattice_theta_step, options.lattice_length_step)
    axes = []
    for index in objective.free:
        low, high = objective.bounds[index]
        count = int(math.ceil((high - low) / steps[index])) + 1
        axes.append(np.linspace(low, high, count))
    return axes


def lattice_minima(objective, options):
    """Локальные минимумы потерь на равномерной решётке, лучшие первыми.

    Форма результата: (число точек, число свободных координат).
    """
    mesh = np.meshgrid(*_lattice_axes(objective, options), indexing='ij')
    points = np.stack([axis.ravel() for axis in mesh])
    loss = objective(points).reshape(mesh[0].shape)
    minima = np.flatnonzero(
        loss == minimum_filter(loss, size=3, mode='nearest'))
    order = minima[np.argsort(loss.ravel()[minima], kind='stable')]
    return points[:, order].T


def refine_minima(objective, centers, options):
    """Одновременное уточнение точек сжимающимся шаблоном.

    Шаблон: пять узлов по каждой свободной координате, начальный шаг
    равен половине шага решётки. На каждом шаге точка переходит в лучший
    узел шаблона, а шаг шаблона уменьшается вдвое. Возвращает точки,
    упорядоченные по потерям.
    """
    centers = np.array(centers, dtype=float)
    count, free = centers.shape
    steps = np.array([
        (options.lattice_theta_step, options.lattice_length_step)[index]
        for index in objective.free
    ])
    low = np.array([bound[0] for bound in objective.free_bounds])
    high = np.array([bound[1] for bound in objective.free_bounds])
    offsets = np.stack(np.meshgrid(
        *[np.arange(-2, 3)] * free, indexing='ij')).reshape(free, -1).T
    scale = steps / 2
    loss = objective(centers.T)
    for _ in range(options.refine_iterations):
        points = np.clip(centers[:, None, :] + offsets[None] * scale,
                         low, high)
        values = objective(points.reshape(-1, free).T).reshape(count, -1)
        best = np.argmin(values, axis=1)
        centers = points[np.arange(count), best]
        loss = values[np.arange(count), best]
        scale = scale / 2
    return centers[np.argsort(loss, kind='stable')]


def _initial_population(objective, seeds, options, rng):
    seeds = seeds[:options.population // 2]
    low = np.array([bound[0] for bound in objective.free_bounds])
    high = np.array([bound[1] for bound in objective.free_bounds])
    random_count = options.population - len(seeds)
    population = rng.uniform(low, high, size=(random_count, len(low)))
    if len(seeds):
        population = np.vstack([seeds, population])
    return population


def _polish(objective, start, options):
    minimize(
        objective,
        start,
        method='Nelder-Mead',
        bounds=objective.free_bounds,
        options={
            'xatol': options.polish_xatol,
            'fatol': options.polish_fatol,
            'maxiter': options.polish_max_iterations,
        },
    )


def fit_gate(target, c, options=None):
    """Лучший волновод для вращения target в пределах ограничений c."""
    if not isinstance(c, DesignConstraints):
        raise ValidationError(f'Ожидались DesignConstraints, получено {c!r}')
    options = options or FitOptions()
    target_quaternion = rotation_to_quaternion(target)
    objective = GateObjective(target_quaternion, c, options.target_loss)
    rng = np.random.default_rng(options.seed)
    candidates = refine_minima(
        objective,
        lattice_minima(objective, options)[:options.lattice_candidates],
        options,
    )
    warm = [objective.reduce(design) for design in options.initial_designs
            if c.contains(design)]
    exact = [objective.reduce(design)
             for design in structured_designs(target, c)
             if c.contains(design)]
    seeds = np.array(warm + list(candidates) + exact)
    init = _initial_population(objective, seeds, options, rng)
    objective(np.vstack([seeds, init]).T)
    if objective.best_loss > options.target_loss:
        # остановка только по целевым потерям или по числу поколений
        differential_evolution(
            objective,
            objective.free_bounds,
            init=init,
            mutation=options.mutation,
            recombination=options.recombination,
            maxiter=options.max_generations,
            tol=0,
            atol=0,
            seed=rng,
            polish=False,
            vectorized=True,
            updating='deferred',
            callback=objective.stop,
        )
    if options.polish:
        starts = [objective.best_point[objective.free]]
        starts += list(candidates[:options.polish_starts - 1])
        for start in starts:
            if objective.best_loss <= options.target_loss:
                break
            _polish(objective, start, options)
    theta, length = objective.best_point
    theta_max, length_max = c.theta_max, c.length_max
    design = TwistDesign(
        theta=float(np.clip(theta, -theta_max, theta_max)),
        length=float(np.clip(length, 0.0, length_max)),
    )
    fidelity = fidelity_objective(design, axis_angle_to_unitary(target))
    logger.debug(
        'fit %s -> θ=%.12g L=%.12g F=%.15f (%d вычислений, seed %d)',
        target, design.theta, design.length, fidelity,
        objective.evaluations, options.seed,
    )
    return FitResult(
        design=design,
        fidelity=fidelity,
        target=target,
        evaluations=objective.evaluations,
        seed=options.seed,
    )

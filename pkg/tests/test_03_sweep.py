import math

import numpy as np
import pytest
from django.core.exceptions import ValidationError

from gates.design import DesignConstraints
from gates.reports import render_json, sweep_report
from gates.sweep import (SweepGrid, SweepOptions, constraint_scan,
                         generate_grid, grid_coordinates, mix_seed, run_sweep)
from tests.utils import FIDELITY_EXACT


class Test00Grid:

    def test_00_full_grid_size(self):
        grid = SweepGrid(33, 65, 17)
        assert grid.size == 36465
        assert len(generate_grid(grid)) == 36465, (
            'Полная сетка должна содержать 33·65·17 = 36465 целей, '
            'вырожденные дубликаты не удаляются.'
        )

    @pytest.mark.parametrize('counts', [(0, 1, 1), (1, -2, 1), (2, 2)])
    def test_01_invalid_counts(self, counts):
        with pytest.raises((ValidationError, TypeError)):
            SweepGrid(*counts)

    def test_02_order_and_endpoints(self, small_grid):
        coordinates = grid_coordinates(small_grid)
        assert coordinates[0] == (0.0, 0.0, 0.0)
        assert coordinates[-1] == pytest.approx(
            (math.pi, 2 * math.pi, 2 * math.pi))
        assert coordinates[1] == pytest.approx((0.0, 0.0, math.pi)), (
            'Быстрее всего меняется угол вращения, медленнее всего - '
            'полярный угол.'
        )
        assert coordinates[3] == pytest.approx((0.0, math.pi, 0.0))

    def test_03_targets(self, small_grid):
        targets = generate_grid(small_grid)
        for target in targets:
            assert np.linalg.norm(target.axis) == pytest.approx(1.0)
        # азимут 2π совпадает с нулевым
        assert np.allclose(targets[15].axis, targets[9].axis, atol=1e-15)
        equatorial = targets[9 + 1]
        assert np.allclose(equatorial.axis, (1, 0, 0), atol=1e-15)
        assert equatorial.angle == pytest.approx(math.pi)

    def test_04_single_point_grid(self):
        targets = generate_grid(SweepGrid(1, 1, 1))
        assert len(targets) == 1
        assert targets[0].angle == 0.0


class Test01Seeds:

    def test_00_mix_seed(self):
        seeds = [mix_seed(5, index) for index in range(1000)]
        assert len(set(seeds)) == 1000, 'Seed целей не должны совпадать.'
        assert seeds == [mix_seed(5, index) for index in range(1000)]
        assert all(0 <= seed < 2 ** 64 for seed in seeds)
        assert mix_seed(0, 3) ^ mix_seed(5, 3) == 5


class Test02Sweep:

    def test_00_untwisted_worst_case(self, small_grid, quick_sweep,
                                     untwisted_constraints):
        summary = run_sweep(small_grid, untwisted_constraints, quick_sweep)
        assert summary.f_min == pytest.approx(1 / 3, abs=1e-6), (
            'Без скрутки полуоборот вокруг экваториальной оси достижим '
            'лишь с точностью 1/3.'
        )
        assert len(summary.records) == small_grid.size
        assert [record.index for record in summary.records] == list(
            range(small_grid.size))
        assert len(summary.axis_worst) == 9
        assert min(
            worst.worst_fidelity for worst in summary.axis_worst
        ) == summary.f_min

    def test_01_histogram(self, small_grid, quick_fit,
                          untwisted_constraints):
        options = SweepOptions(fit=quick_fit, histogram_min=0.5,
                               histogram_bins=10)
        summary = run_sweep(small_grid, untwisted_constraints, options)
        histogram = summary.histogram
        assert len(histogram.edges) == 11
        assert histogram.edges[0] == 0.5
        assert histogram.edges[-1] == 1.0
        assert sum(histogram.counts) == small_grid.size, (
            'Точности ниже нижней границы попадают в первый столбец.'
        )
        fidelities = np.array([record.fidelity for record in summary.records])
        assert histogram.underflow == int(np.sum(fidelities < 0.5))
        assert histogram.underflow > 0
        assert histogram.counts[0] >= histogram.underflow
        assert 0.0 <= summary.near_unity_fraction <= 1.0

    def test_02_determinism_across_jobs(self, wide_constraints, quick_fit):
        grid = SweepGrid(2, 2, 2)
        reports = []
        for jobs in (1, 2):
            options = SweepOptions(fit=quick_fit, base_seed=42, jobs=jobs)
            summary = run_sweep(grid, wide_constraints, options)
            reports.append(render_json(sweep_report(summary, options)))
        assert reports[0] == reports[1], (
            'Отчёт не должен зависеть от числа процессов.'
        )

    @pytest.mark.parametrize('fields', [
        {'jobs': 0},
        {'histogram_bins': 0},
        {'histogram_min': 1.0},
        {'histogram_min': -0.1},
    ])
    def test_03_invalid_options(self, fields):
        with pytest.raises(ValidationError):
            SweepOptions(**fields)

    def test_04_z_axis_targets_are_exact(self, wide_constraints,
                                         quick_sweep):
        summary = run_sweep(SweepGrid(3, 5, 3), wide_constraints,
                            quick_sweep)
        poles = [
            record for record in summary.records
            if min(record.polar, math.pi - record.polar) < 1e-12
        ]
        assert len(poles) == 30
        for record in poles:
            assert record.fidelity >= FIDELITY_EXACT, (
                'Вращения вокруг оси z реализуются точно.'
            )

    def test_05_refined_angle_axis(self, untwisted_constraints, quick_sweep):
        coarse = run_sweep(SweepGrid(3, 3, 3), untwisted_constraints,
                           quick_sweep)
        fine = run_sweep(SweepGrid(3, 3, 5), untwisted_constraints,
                         quick_sweep)
        for first, second in zip(coarse.axis_worst, fine.axis_worst):
            assert second.axis == first.axis
            assert second.worst_fidelity <= first.worst_fidelity + 1e-9, (
                'Худшая точность по оси не растёт при измельчении сетки '
                'по углу вращения.'
            )


class Test03ConstraintScan:

    def test_00_nested_scan_is_monotonic(self, small_grid, quick_sweep):
        pairs = [(20 * math.pi, 1.0), (20 * math.pi, 2.0),
                 (20 * math.pi, 3.0)]
        scan = constraint_scan(pairs, small_grid, quick_sweep)
        assert [row.length_max for row in scan.rows] == [1.0, 2.0, 3.0]
        assert len(scan.summaries) == 3
        for earlier, later in zip(scan.rows, scan.rows[1:]):
            assert later.f_min >= earlier.f_min - 1e-12, (
                'С ростом L_max худшая точность не должна уменьшаться.'
            )
            assert later.near_unity_fraction >= earlier.near_unity_fraction
        for earlier, later in zip(scan.summaries, scan.summaries[1:]):
            for first, second in zip(earlier.records, later.records):
                assert second.fidelity >= first.fidelity - 1e-12

    def test_01_independent_scan(self, small_grid, quick_sweep):
        pairs = [(0.0, 1.0), (math.pi, 1.0)]
        scan = constraint_scan(pairs, small_grid, quick_sweep, nested=False)
        assert scan.rows[0].f_min == pytest.approx(1 / 3, abs=1e-6)
        assert scan.summaries[1].constraints == DesignConstraints(
            theta_max=math.pi, length_max=1.0)

    def test_02_empty_scan(self, small_grid):
        with pytest.raises(ValidationError):
            constraint_scan([], small_grid)

    @pytest.mark.slow
    def test_03_desk_grid_scan(self):
        scan = constraint_scan(
            [(20 * math.pi, length) for length in (1.0, 2.0, 3.0)],
            SweepGrid(9, 17, 5), SweepOptions(base_seed=0, jobs=2),
        )
        f_mins = [row.f_min for row in scan.rows]
        fractions = [row.near_unity_fraction for row in scan.rows]
        assert all(
            later >= earlier - 1e-12
            for earlier, later in zip(f_mins, f_mins[1:])
        ), (
            'С ростом L_max худшая точность не должна уменьшаться.'
        )
        assert fractions == sorted(fractions), (
            'С ростом L_max доля точностей выше 0.99 не должна уменьшаться.'
        )
        assert f_mins[0] > 1 / 3 + 1e-6, (
            'Скрутка улучшает худший случай волновода без скрутки.'
        )
        # полуоборот вокруг (1/2, 1/2, 1/√2): полярный угол и азимут π/4
        record = scan.summaries[0].records[(2 * 17 + 2) * 5 + 2]
        assert np.allclose(record.axis, (0.5, 0.5, math.sqrt(0.5)))
        assert record.chi == pytest.approx(math.pi)
        assert record.fidelity >= 0.8844

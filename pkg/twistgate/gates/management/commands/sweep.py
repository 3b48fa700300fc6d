from django.conf import settings

from gates.design import DesignConstraints
from gates.management.base import (OptimizerCommand, count, grid, number,
                                   scan)
from gates.reports import (scan_report, sweep_report, write_json,
                           write_records_csv, write_scan_csv)
from gates.sweep import SweepGrid, SweepOptions, constraint_scan, run_sweep
from gates.validators import (parse_count, parse_flag, parse_grid,
                              parse_number, parse_scan)


class Command(OptimizerCommand):
    help = ('Перебор целевых вращений на сетке: худшая точность F_min и '
            'распределение точностей, по одной паре ограничений или списку')
    options_table = {
        'grid': (parse_grid, lambda: settings.DESK_GRID),
        'full_grid': (parse_flag, False),
        'scan': (parse_scan, None),
        'no_nested': (parse_flag, False),
        'jobs': (parse_count, 1),
        'histogram_min': (parse_number, lambda: settings.HISTOGRAM_MIN),
        'out': (str, None),
        'csv': (str, None),
    }

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--grid', type=grid,
                            help='Узлы по полярному углу, азимуту и χ: 9,17,5')
        parser.add_argument('--full-grid', action='store_true', default=None,
                            help='Полная сетка 33,65,17')
        parser.add_argument('--scan', type=scan,
                            help='Список ограничений θ_max:L_max '
                                 'через запятую')
        parser.add_argument('--no-nested', action='store_true', default=None,
                            help='Не передавать найденные проекты между '
                                 'парами ограничений')
        parser.add_argument('--jobs', type=count,
                            help='Число процессов')
        parser.add_argument('--histogram-min', type=number,
                            help='Нижняя граница гистограммы точностей')
        parser.add_argument('--out', help='Файл JSON-отчёта')
        parser.add_argument('--csv', help='Файл CSV-таблицы')

    def run(self, options):
        self.check_output_paths(options['out'], options['csv'])
        counts = options['grid']
        if options['full_grid']:
            counts = settings.FULL_GRID
        sweep_grid = SweepGrid(*counts)
        sweep_options = SweepOptions(
            fit=self.fit_options(options),
            base_seed=options['seed'],
            jobs=options['jobs'],
            histogram_min=options['histogram_min'],
        )
        self.stdout.write(f'Целей: {sweep_grid.size}')
        if options['scan']:
            self.run_scan(options, sweep_grid, sweep_options)
            return
        constraints = DesignConstraints(theta_max=options['theta_max'],
                                        length_max=options['length_max'])
        summary = run_sweep(sweep_grid, constraints, sweep_options)
        self.stdout.write(
            f'F_min = {self.fmt(summary.f_min)}; '
            f'доля F ≥ {sweep_options.near_unity_threshold}: '
            f'{self.fmt(summary.near_unity_fraction)}'
        )
        if options['out']:
            write_json(options['out'], sweep_report(summary, sweep_options))
        if options['csv']:
            write_records_csv(options['csv'], summary)

    def run_scan(self, options, sweep_grid, sweep_options):
        result = constraint_scan(options['scan'], sweep_grid, sweep_options,
                                 nested=not options['no_nested'])
        for row in result.rows:
            self.stdout.write(
                f'θ_max = {self.fmt(row.theta_max)}, '
                f'L_max = {self.fmt(row.length_max)}: '
                f'F_min = {self.fmt(row.f_min)}; '
                f'доля F ≥ {sweep_options.near_unity_threshold}: '
                f'{self.fmt(row.near_unity_fraction)}'
            )
        if options['out']:
            write_json(options['out'], scan_report(result, sweep_options))
        if options['csv']:
            write_scan_csv(options['csv'], result)

from gates.management.base import GateCommand, count, number
from gates.validators import parse_count, parse_number
from gates.waveguide import TwistDesign, mode_analysis, mode_curve


class Command(GateCommand):
    help = ('Собственные моды волновода на сфере Пуанкаре или таблица мод '
            'в зависимости от угла смешивания ψ')
    options_table = {
        'theta': (parse_number, None),
        'length': (parse_number, None),
        'curve': (parse_count, None),
    }

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--theta', type=number,
                            help='Полный угол скрутки θ, рад')
        parser.add_argument('--length', type=number,
                            help='Длина L в длинах биений')
        parser.add_argument('--curve', type=count,
                            help='Число точек таблицы ψ ∈ [0, π/2)')

    def run(self, options):
        if options['curve'] is not None:
            self.write_curve(mode_curve(options['curve']))
            return
        self.require(options, 'theta', 'length')
        design = TwistDesign(theta=options['theta'], length=options['length'])
        modes = mode_analysis(design)
        self.stdout.write(f'ψ = {self.fmt(modes.psi)}')
        self.stdout.write(f'δβ/δβ₀ = {self.fmt(modes.delta_beta_norm)}')
        self.stdout.write(f'τ₀ = {self.fmt_vector(modes.stokes0)}')
        self.stdout.write(f'τ₁ = {self.fmt_vector(modes.stokes1)}')
        self.stdout.write(
            f'β/δβ₀ = {self.fmt_vector(modes.beta_split_norm)}'
        )

    def write_curve(self, curve):
        self.stdout.write('psi\tS2_0\tS3_0\tbeta0\tbeta1')
        for modes in curve:
            self.stdout.write('\t'.join(self.fmt(value) for value in (
                modes.psi,
                modes.stokes0[1],
                modes.stokes0[2],
                *modes.beta_split_norm,
            )))

from gates.management.base import GateCommand, number
from gates.validators import parse_number
from gates.waveguide import (PhysicalParams, TwistDesign, beat_length,
                             physical_design)

CM = 100.0


class Command(GateCommand):
    help = 'Перевод длины в длинах биений в физические единицы'
    options_table = {
        'dn': (parse_number, None),
        'wl': (parse_number, None),
        'theta': (parse_number, None),
        'length': (parse_number, None),
    }

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--dn', type=number,
                            help='Модовое двулучепреломление δn')
        parser.add_argument('--wl', type=number,
                            help='Длина волны в вакууме, м (например 800e-9)')
        parser.add_argument('--theta', type=number,
                            help='Угол скрутки проекта, рад')
        parser.add_argument('--length', type=number,
                            help='Длина проекта в длинах биений')

    def run(self, options):
        self.require(options, 'dn', 'wl')
        params = PhysicalParams(delta_n=options['dn'],
                                wavelength=options['wl'])
        self.stdout.write(f'L_B = {self.fmt(beat_length(params) * CM)} см')
        if options['theta'] is None and options['length'] is None:
            return
        self.require(options, 'theta', 'length')
        design = physical_design(
            TwistDesign(theta=options['theta'], length=options['length']),
            params,
        )
        self.stdout.write(f'длина = {self.fmt(design.length * CM)} см')
        pitch = None if design.pitch is None else design.pitch * CM
        self.stdout.write(f'шаг спирали = {self.fmt(pitch)} см')

from gates.management.base import GateCommand, number
from gates.validators import parse_number
from gates.waveguide import (TwistDesign, derive_angles, gate_axis_angle,
                             gate_matrix)


class Command(GateCommand):
    help = 'Вентиль волновода с заданными углом скрутки и длиной'
    options_table = {
        'theta': (parse_number, None),
        'length': (parse_number, None),
    }

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--theta', type=number,
                            help='Полный угол скрутки θ, рад (можно 0.25pi)')
        parser.add_argument('--length', type=number,
                            help='Длина L в длинах биений')

    def run(self, options):
        self.require(options, 'theta', 'length')
        design = TwistDesign(theta=options['theta'], length=options['length'])
        angles = derive_angles(design)
        matrix = gate_matrix(design)
        rotation = gate_axis_angle(design)
        self.stdout.write(f'θ = {self.fmt(design.theta)}')
        self.stdout.write(f'L = {self.fmt(design.length)}')
        self.stdout.write(f'ψ = {self.fmt(angles.psi)}')
        self.stdout.write(f'φ = {self.fmt(angles.phi)}')
        self.stdout.write('T =')
        for row in matrix:
            self.stdout.write(
                '  [' + ', '.join(self.fmt_complex(value) for value in row)
                + ']'
            )
        self.stdout.write(f'ось = {self.fmt_vector(rotation.axis)}')
        self.stdout.write(f'χ = {self.fmt(rotation.angle)}')

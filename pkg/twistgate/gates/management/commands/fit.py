import numpy as np
from django.core.exceptions import ValidationError

from gates.design import DesignConstraints, fit_gate
from gates.management.base import OptimizerCommand, number, vector
from gates.reports import fit_report, write_json
from gates.su2 import (DEGENERACY_ATOL, RotationSpec, SphericalAxis,
                       spherical_to_axis)
from gates.validators import parse_number, parse_vector


class Command(OptimizerCommand):
    help = 'Подбор волновода (θ, L), реализующего заданное вращение'
    options_table = {
        'axis': (parse_vector, None),
        'polar': (parse_number, None),
        'azimuth': (parse_number, None),
        'chi': (parse_number, None),
        'out': (str, None),
    }

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--axis', type=vector,
                            help='Ось вращения, например 0,0,1')
        parser.add_argument('--polar', type=number,
                            help='Полярный угол оси вместо --axis')
        parser.add_argument('--azimuth', type=number,
                            help='Азимут оси вместо --axis')
        parser.add_argument('--chi', type=number,
                            help='Угол вращения χ, например pi')
        parser.add_argument('--out', help='Файл JSON-отчёта')

    def target_axis(self, options):
        if options['axis'] is not None:
            axis = np.asarray(options['axis'], dtype=float)
            norm = np.linalg.norm(axis)
            if norm <= DEGENERACY_ATOL:
                raise ValidationError('Ось вращения не может быть нулевой')
            return tuple(axis / norm)
        self.require(options, 'polar', 'azimuth')
        return spherical_to_axis(
            SphericalAxis(polar=options['polar'], azimuth=options['azimuth'])
        )

    def run(self, options):
        self.require(options, 'chi')
        self.check_output_paths(options['out'])
        target = RotationSpec(axis=self.target_axis(options),
                              angle=options['chi'])
        constraints = DesignConstraints(theta_max=options['theta_max'],
                                        length_max=options['length_max'])
        result = fit_gate(target, constraints, self.fit_options(options))
        design = result.design
        self.stdout.write(f'θ = {self.fmt(design.theta)}')
        self.stdout.write(f'L = {self.fmt(design.length)}')
        self.stdout.write(f'α = {self.fmt(design.twist_rate)}')
        self.stdout.write(f'Λ = {self.fmt(design.pitch)}')
        self.stdout.write(f'F = {self.fmt(result.fidelity)}')
        self.stdout.write(f'вычислений = {result.evaluations}')
        self.stdout.write(f'seed = {result.seed}')
        if options['out']:
            write_json(options['out'], fit_report(result))
            self.stdout.write(f'Отчёт записан: {options["out"]}')

import math

import numpy as np
from django.core.management import execute_from_command_line

from gates.su2 import quaternion_fidelity, rotation_to_quaternion
from gates.waveguide import TwistDesign, gate_quaternion

FIDELITY_EXACT = 1 - 1e-9


def random_designs(rng, count, theta_max=20 * math.pi, length_max=5.0):
    thetas = rng.uniform(-theta_max, theta_max, size=count)
    lengths = rng.uniform(0.0, length_max, size=count)
    return [TwistDesign(theta=theta, length=length)
            for theta, length in zip(thetas, lengths)]


def equal_up_to_phase(first, second, atol=1e-10):
    """Унитарные 2x2 совпадают с точностью до глобальной фазы."""
    overlap = abs(np.trace(np.conj(first).T @ second)) / 2
    return abs(overlap - 1.0) <= atol


def dense_best_fidelity(target, constraints, theta_points=2001,
                        length_points=401):
    """Лучшая точность перебором по плотной сетке (θ, L)."""
    target_quaternion = rotation_to_quaternion(target)
    thetas = np.linspace(-constraints.theta_max, constraints.theta_max,
                         theta_points)
    lengths = np.linspace(0.0, constraints.length_max, length_points)
    best = 0.0
    for chunk in np.array_split(thetas, 20):
        theta, length = np.meshgrid(chunk, lengths, indexing='ij')
        fidelity = quaternion_fidelity(target_quaternion,
                                       gate_quaternion(theta, length))
        best = max(best, float(fidelity.max()))
    return best


def run_manage(capsys, *argv):
    """Запуск команды как из консоли: (код возврата, stdout, stderr)."""
    code = 0
    try:
        execute_from_command_line(['manage.py', *argv])
    except SystemExit as error:
        code = error.code or 0
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def read_value(output, name):
    """Число из строки вида `name = value` в выводе команды."""
    prefix = f'{name} = '
    for line in output.splitlines():
        if line.startswith(prefix):
            return float(line[len(prefix):].split()[0].rstrip(';'))
    assert False, (
        f'В выводе команды не найдена строка `{prefix}...`:\n{output}'
    )

"""Алгебра SU(2): вращения сферы Блоха (Пуанкаре) матрицами 2x2.

Унитарная матрица хранится как numpy-массив 2x2 complex. Вещественная
четвёрка (q0, qx, qy, qz) задаёт U = q0·I − i(q·σ); после снятия глобальной
фазы q0 ≥ 0, так что χ = 2·atan2(|q|, q0) лежит в [0, π].
"""
import math
from dataclasses import dataclass

import numpy as np

from .validators import (validate_spherical, validate_unit_axis,
                         validate_unitary)

# Порог вырожденных случаев: χ = 0 (ось не определена) и χ = π (знак оси).
DEGENERACY_ATOL = 1e-12

CANONICAL_AXIS = (0.0, 0.0, 1.0)


def _frozen(matrix):
    array = np.array(matrix, dtype=complex)
    array.setflags(write=False)
    return array


IDENTITY = _frozen([[1, 0], [0, 1]])
SIGMA_X = _frozen([[0, 1], [1, 0]])
SIGMA_Y = _frozen([[0, -1j], [1j, 0]])
SIGMA_Z = _frozen([[1, 0], [0, -1]])
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)


@dataclass(frozen=True)
class RotationSpec:
    """Вращение exp(−i n·σ χ/2): единичная ось n и угол χ в радианах."""
    axis: tuple
    angle: float

    def __post_init__(self):
        object.__setattr__(
            self, 'axis', tuple(float(value) for value in self.axis)
        )
        object.__setattr__(self, 'angle', float(self.angle))

    def canonical(self):
        """Каноническая форма: χ в [0, π], ось по правилам вырождения."""
        return quaternion_to_rotation(rotation_to_quaternion(self))


@dataclass(frozen=True)
class SphericalAxis:
    """Ось в сферических координатах: полярный угол и азимут."""
    polar: float
    azimuth: float


def spherical_to_axis(s):
    validate_spherical(s.polar, s.azimuth)
    sin_polar = math.sin(s.polar)
    return (
        sin_polar * math.cos(s.azimuth),
        sin_polar * math.sin(s.azimuth),
        math.cos(s.polar),
    )


def rotation_to_quaternion(spec):
    axis = validate_unit_axis(spec.axis)
    half = 0.5 * spec.angle
    return np.concatenate(([math.cos(half)], math.sin(half) * axis))


def quaternion_to_unitary(quaternion):
    q0, qx, qy, qz = (float(value) for value in quaternion)
    return q0 * IDENTITY - 1j * (qx * SIGMA_X + qy * SIGMA_Y + qz * SIGMA_Z)


def axis_angle_to_unitary(spec):
    """U = cos(χ/2)·I − i·sin(χ/2)·(n·σ)."""
    return quaternion_to_unitary(rotation_to_quaternion(spec))


def _strip_phase(quaternion):
    """Знак четвёрки: q0 ≥ 0; при q0 = 0 первая ненулевая из qz, qy, qx > 0."""
    q = np.array(quaternion, dtype=float)
    if q[0] < -DEGENERACY_ATOL:
        return -q
    if abs(q[0]) <= DEGENERACY_ATOL:
        q[0] = 0.0
        for component in (q[3], q[2], q[1]):
            if abs(component) > DEGENERACY_ATOL:
                return q if component > 0 else -q
    return q


def unitary_to_quaternion(matrix):
    """Вещественная четвёрка U после снятия глобальной фазы."""
    u = validate_unitary(matrix)
    u = u / np.sqrt(np.linalg.det(u))
    a, b = u[0]
    c, d = u[1]
    quaternion = np.array([
        (a + d).real / 2,
        -(b + c).imag / 2,
        (c - b).real / 2,
        -(a - d).imag / 2,
    ])
    quaternion /= np.linalg.norm(quaternion)
    return _strip_phase(quaternion)


def quaternion_to_rotation(quaternion):
    q = _strip_phase(quaternion)
    vector = q[1:]
    norm = float(np.linalg.norm(vector))
    if norm <= DEGENERACY_ATOL:
        return RotationSpec(axis=CANONICAL_AXIS, angle=0.0)
    return RotationSpec(
        axis=tuple(vector / norm),
        angle=2.0 * math.atan2(norm, q[0]),
    )


def unitary_to_axis_angle(matrix):
    return quaternion_to_rotation(unitary_to_quaternion(matrix))


def gate_fidelity(t, u):
    """Точность вентиля F = (2 + |Tr(U†T)|²)/6 для 2x2 унитарных."""
    t = validate_unitary(t)
    u = validate_unitary(u)
    overlap = abs(np.trace(u.conj().T @ t)) ** 2
    return float(min(1.0, max(0.0, (2.0 + overlap) / 6.0)))


def pauli_trace_fidelity(t, u):
    """F = 1/2 + 1/12 Σ_j Tr(Tσ_jT† Uσ_jU†)."""
    t = validate_unitary(t)
    u = validate_unitary(u)
    total = sum(
        np.trace(t @ sigma @ t.conj().T @ u @ sigma @ u.conj().T)
        for sigma in PAULI
    )
    return float(0.5 + total.real / 12.0)


def quaternion_fidelity(p, q):
    """Та же точность через четвёрки: F = (1 + 2(p·q)²)/3.

    Работает с массивами формы (4, ...) для векторизованной оценки.
    """
    overlap = np.tensordot(np.asarray(p, dtype=float),
                           np.asarray(q, dtype=float), axes=(0, 0))
    return (1.0 + 2.0 * overlap ** 2) / 3.0


def random_rotation(rng):
    """Случайное вращение: ось равномерно по сфере, χ равномерно в [0, 2π)."""
    axis = rng.normal(size=3)
    while np.linalg.norm(axis) < DEGENERACY_ATOL:
        axis = rng.normal(size=3)
    axis /= np.linalg.norm(axis)
    return RotationSpec(axis=tuple(axis), angle=rng.uniform(0.0, 2 * math.pi))


def random_unitary(rng):
    return axis_angle_to_unitary(random_rotation(rng))

import cmath
import math

import numpy as np
import pytest
from django.core.exceptions import ValidationError

from gates.su2 import (IDENTITY, SIGMA_X, SIGMA_Y, RotationSpec,
                       SphericalAxis, axis_angle_to_unitary, gate_fidelity,
                       pauli_trace_fidelity, quaternion_fidelity,
                       quaternion_to_unitary, random_rotation, random_unitary,
                       rotation_to_quaternion, spherical_to_axis,
                       unitary_to_axis_angle, unitary_to_quaternion)
from tests.utils import equal_up_to_phase


class Test00AxisAngle:

    def test_00_zero_angle_is_identity(self):
        for axis in ((0, 0, 1), (1, 0, 0), (0.6, 0.0, 0.8)):
            matrix = axis_angle_to_unitary(RotationSpec(axis=axis, angle=0.0))
            assert np.allclose(matrix, IDENTITY, atol=1e-15), (
                'Проверьте, что вращение на нулевой угол даёт единичную '
                'матрицу для любой оси.'
            )

    def test_01_half_turn_about_z(self):
        matrix = axis_angle_to_unitary(
            RotationSpec(axis=(0, 0, 1), angle=math.pi)
        )
        assert np.allclose(matrix, np.diag([-1j, 1j]), atol=1e-15), (
            'Вращение вокруг z на π должно давать diag(−i, i).'
        )

    def test_02_quarter_turn_about_y(self):
        matrix = axis_angle_to_unitary(
            RotationSpec(axis=(0, 1, 0), angle=math.pi / 2)
        )
        c = math.cos(math.pi / 4)
        assert np.allclose(matrix, [[c, -c], [c, c]], atol=1e-15), (
            'Вращение вокруг y на π/2 должно давать '
            '[[cos π/4, −sin π/4], [sin π/4, cos π/4]].'
        )

    def test_03_non_unit_axis_rejected(self):
        with pytest.raises(ValidationError):
            axis_angle_to_unitary(RotationSpec(axis=(0, 0, 2), angle=1.0))
        with pytest.raises(ValidationError):
            rotation_to_quaternion(RotationSpec(axis=(1, 1, 0), angle=1.0))

    def test_04_random_rotations_are_unitary(self, rng):
        for _ in range(1000):
            matrix = axis_angle_to_unitary(random_rotation(rng))
            assert np.allclose(
                matrix.conj().T @ matrix, IDENTITY, rtol=0, atol=1e-13
            ), 'Матрица вращения должна быть унитарной.'


class Test01Decomposition:

    def test_00_identity_and_minus_identity(self):
        for matrix in (IDENTITY, -IDENTITY):
            rotation = unitary_to_axis_angle(matrix)
            assert rotation.angle == pytest.approx(0.0, abs=1e-12), (
                'Для ±I угол вращения должен быть равен нулю.'
            )
            assert rotation.axis == (0.0, 0.0, 1.0), (
                'Для тождественного вращения ось должна быть (0, 0, 1).'
            )

    def test_01_half_turn_about_z(self):
        rotation = unitary_to_axis_angle(np.diag([-1j, 1j]))
        assert rotation.angle == pytest.approx(math.pi, abs=1e-12)
        assert np.allclose(rotation.axis, (0, 0, 1), atol=1e-12), (
            'diag(−i, i) должна раскладываться в вращение вокруг +z на π.'
        )

    def test_02_half_turn_sign_rule(self):
        for axis, expected in (
            ((0, 0, -1), (0, 0, 1)),
            ((0, -1, 0), (0, 1, 0)),
            ((-1, 0, 0), (1, 0, 0)),
        ):
            rotation = unitary_to_axis_angle(
                axis_angle_to_unitary(RotationSpec(axis=axis, angle=math.pi))
            )
            assert np.allclose(rotation.axis, expected, atol=1e-12), (
                'При χ = π первая ненулевая компонента из (n_z, n_y, n_x) '
                f'должна быть положительной: ось {axis} -> {rotation.axis}.'
            )

    def test_03_angle_above_pi_flips_axis(self):
        rotation = RotationSpec(axis=(0, 0, 1), angle=1.5 * math.pi)
        canonical = rotation.canonical()
        assert canonical.angle == pytest.approx(0.5 * math.pi, abs=1e-12)
        assert np.allclose(canonical.axis, (0, 0, -1), atol=1e-12), (
            'Вращение на χ > π должно приводиться к 2π − χ с обратной осью.'
        )

    def test_04_round_trip(self, rng):
        for _ in range(200):
            rotation = random_rotation(rng)
            matrix = axis_angle_to_unitary(rotation)
            restored = unitary_to_axis_angle(matrix)
            canonical = rotation.canonical()
            assert 0.0 <= restored.angle <= math.pi + 1e-12
            assert restored.angle == pytest.approx(
                canonical.angle, abs=1e-10)
            assert np.allclose(restored.axis, canonical.axis, atol=1e-10)
            assert equal_up_to_phase(
                axis_angle_to_unitary(restored), matrix
            ), 'Разложение должно восстанавливать матрицу с точностью до фазы.'

    def test_05_global_phase_is_stripped(self, rng):
        rotation = random_rotation(rng)
        matrix = axis_angle_to_unitary(rotation)
        shifted = cmath.exp(1j * 0.7) * matrix
        assert np.allclose(
            unitary_to_axis_angle(shifted).axis,
            unitary_to_axis_angle(matrix).axis, atol=1e-10
        ), 'Глобальная фаза не должна менять ось вращения.'

    def test_06_non_unitary_rejected(self):
        with pytest.raises(ValidationError):
            unitary_to_axis_angle(np.array([[1, 1], [0, 1]]))
        with pytest.raises(ValidationError):
            unitary_to_axis_angle(np.eye(3))

    def test_07_quaternion_form(self, rng):
        for _ in range(50):
            matrix = cmath.exp(1j * rng.uniform(0, 2 * math.pi)) * (
                random_unitary(rng))
            quaternion = unitary_to_quaternion(matrix)
            assert np.linalg.norm(quaternion) == pytest.approx(1.0)
            assert quaternion[0] >= 0.0
            assert equal_up_to_phase(quaternion_to_unitary(quaternion),
                                     matrix), (
                'Четвёрка должна задавать ту же матрицу с точностью до фазы.'
            )

    def test_08_minus_identity_quaternion(self):
        assert np.allclose(unitary_to_quaternion(-IDENTITY), (1, 0, 0, 0))


class Test02Fidelity:

    def test_00_reference_values(self):
        quarter = axis_angle_to_unitary(
            RotationSpec(axis=(0, 1, 0), angle=math.pi / 2)
        )
        assert gate_fidelity(IDENTITY, quarter) == pytest.approx(
            2 / 3, abs=1e-12)
        assert gate_fidelity(IDENTITY, 1j * SIGMA_X) == pytest.approx(
            1 / 3, abs=1e-12)
        assert pauli_trace_fidelity(IDENTITY, 1j * SIGMA_X) == pytest.approx(
            1 / 3, abs=1e-12), (
            'Формула через три матрицы Паули должна давать 1/3 для I и iσ_x.'
        )

    def test_01_self_fidelity(self, rng):
        for _ in range(100):
            matrix = random_unitary(rng)
            assert gate_fidelity(matrix, matrix) == pytest.approx(
                1.0, abs=1e-12)

    def test_02_trace_forms_agree(self, rng):
        for _ in range(1000):
            t, u = random_unitary(rng), random_unitary(rng)
            assert pauli_trace_fidelity(t, u) == pytest.approx(
                gate_fidelity(t, u), abs=1e-12
            ), 'Две формы точности должны совпадать для 2x2 унитарных.'

    def test_03_quaternion_form_agrees(self, rng):
        for _ in range(200):
            first, second = random_rotation(rng), random_rotation(rng)
            expected = gate_fidelity(
                axis_angle_to_unitary(first), axis_angle_to_unitary(second)
            )
            assert quaternion_fidelity(
                rotation_to_quaternion(first), rotation_to_quaternion(second)
            ) == pytest.approx(expected, abs=1e-12)

    def test_04_global_phase_invariance(self, rng):
        for _ in range(100):
            t, u = random_unitary(rng), random_unitary(rng)
            gamma = rng.uniform(0, 2 * math.pi)
            assert gate_fidelity(cmath.exp(1j * gamma) * t, u) == (
                pytest.approx(gate_fidelity(t, u), abs=1e-12)
            ), 'Точность не должна зависеть от глобальной фазы.'

    def test_05_range(self, rng):
        for _ in range(200):
            value = gate_fidelity(random_unitary(rng), random_unitary(rng))
            assert 1 / 3 - 1e-12 <= value <= 1.0, (
                'Точность однокубитных вентилей лежит в [1/3, 1].'
            )

    def test_06_distinct_gates_below_one(self):
        assert gate_fidelity(IDENTITY, -1j * SIGMA_Y) < 1 - 1e-10


class Test03Spherical:

    @pytest.mark.parametrize('polar, azimuth, expected', [
        (0.0, 1.3, (0, 0, 1)),
        (math.pi / 2, 0.0, (1, 0, 0)),
        (math.pi / 2, math.pi / 2, (0, 1, 0)),
        (math.pi, 0.0, (0, 0, -1)),
    ])
    def test_00_reference_axes(self, polar, azimuth, expected):
        axis = spherical_to_axis(SphericalAxis(polar=polar, azimuth=azimuth))
        assert np.allclose(axis, expected, atol=1e-15)
        assert np.linalg.norm(axis) == pytest.approx(1.0, abs=1e-14)

    @pytest.mark.parametrize('polar, azimuth', [
        (-0.1, 0.0),
        (math.pi + 0.1, 0.0),
        (1.0, 2 * math.pi),
        (1.0, -0.5),
        (math.nan, 0.0),
    ])
    def test_01_out_of_range(self, polar, azimuth):
        with pytest.raises(ValidationError):
            spherical_to_axis(SphericalAxis(polar=polar, azimuth=azimuth))

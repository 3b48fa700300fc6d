"""Модель скрученного волновода как вентиля SU(2).

Длины измеряются в линейных длинах биений L_B, поэтому δβ₀ = 2π.
Соглашение о знаках композиции:

    T = exp(−iσ_y θ) · M†DM,  M = exp(+iσ_x ψ_s/2),  D = exp(−iσ_z φ/2),

где ψ_s = sign(θ)·ψ. При нём замкнутая форма (gate_quaternion) имеет
единичную норму, L = 0 даёт единичный вентиль, а ψ → 0 даёт вращение
вокруг оси y на 2θ.
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from django.core.exceptions import ValidationError
from scipy.linalg import expm

from .su2 import SIGMA_X, SIGMA_Y, SIGMA_Z, quaternion_to_rotation
from .validators import (validate_finite, validate_non_negative,
                         validate_positive)

DELTA_BETA0 = 2 * math.pi


@dataclass(frozen=True)
class TwistDesign:
    """Полный угол скрутки θ (рад) и длина L в длинах биений."""
    theta: float
    length: float

    def __post_init__(self):
        object.__setattr__(
            self, 'theta', float(validate_finite(self.theta, 'Угол скрутки'))
        )
        object.__setattr__(
            self, 'length',
            float(validate_non_negative(self.length, 'Длина волновода'))
        )

    @property
    def twist_rate(self) -> Optional[float]:
        """α = θ/L, рад на длину биений; для L = 0 не определена."""
        if self.length == 0:
            return None
        return self.theta / self.length

    @property
    def pitch(self) -> Optional[float]:
        """Шаг спирали Λ = 2π/α в длинах биений; для θ = 0 бесконечен."""
        if self.theta == 0:
            return None
        return 2 * math.pi * self.length / abs(self.theta)


@dataclass(frozen=True)
class DerivedAngles:
    """Угол смешивания ψ ∈ [0, π/2], фаза φ ≥ 0 и знаковый угол скрутки θ."""
    psi: float
    phi: float
    theta: float

    @property
    def signed_psi(self):
        return math.copysign(self.psi, self.theta) if self.theta else 0.0

    def constraint_residual(self):
        """Невязка связи φ·sin ψ = 2|θ|."""
        return self.phi * math.sin(self.psi) - 2 * abs(self.theta)


@dataclass(frozen=True)
class ModeAnalysis:
    psi: float
    delta_beta_norm: float
    stokes0: tuple
    stokes1: tuple
    beta_split_norm: tuple


@dataclass(frozen=True)
class PhysicalParams:
    """Модовое двулучепреломление δn и длина волны в вакууме (м)."""
    delta_n: float
    wavelength: float


@dataclass(frozen=True)
class PhysicalDesign:
    length: float
    pitch: Optional[float]


def mirror_design(d):
    """Зеркальный волновод: T(−θ, L) = σ_z T(θ, L) σ_z."""
    return TwistDesign(theta=-d.theta, length=d.length)


def derive_angles(d):
    base = DELTA_BETA0 * d.length
    twist = 2 * abs(d.theta)
    psi = math.pi / 2 if d.length == 0 else math.atan2(twist, base)
    return DerivedAngles(psi=psi, phi=math.hypot(base, twist), theta=d.theta)


def mode_matrix(signed_psi):
    """M: разложение мод скрученного волновода по модам H и V."""
    return expm(0.5j * signed_psi * SIGMA_X)


def diagonal_propagation(phi):
    """D: набег фаз собственных мод, глобальная фаза отброшена."""
    return expm(-0.5j * phi * SIGMA_Z)


def helical_gate(angles):
    """D_HV = M†DM в спиральной системе отсчёта."""
    m = mode_matrix(angles.signed_psi)
    return m.conj().T @ diagonal_propagation(angles.phi) @ m


def frame_rotation(theta):
    """Переход от спиральной системы к лабораторной на выходном торце."""
    return expm(-1j * theta * SIGMA_Y)


def gate_matrix(d):
    return frame_rotation(d.theta) @ helical_gate(derive_angles(d))


def gate_quaternion(theta, length):
    """Замкнутая форма вентиля: четвёрки (q0, qx, qy, qz) формы (4, ...).

    Принимает числа или массивы numpy одинаковой формы.
    """
    theta = np.asarray(theta, dtype=float)
    length = np.asarray(length, dtype=float)
    base = DELTA_BETA0 * length
    twist = 2 * theta
    phi = np.hypot(base, twist)
    safe_phi = np.where(phi > 0, phi, 1.0)
    # sin ψ_s = 2θ/φ и cos ψ = 2πL/φ; при φ = 0 вентиль единичный
    sin_psi = np.where(phi > 0, twist / safe_phi, 0.0)
    cos_psi = np.where(phi > 0, base / safe_phi, 1.0)
    cos_t, sin_t = np.cos(theta), np.sin(theta)
    cos_h, sin_h = np.cos(phi / 2), np.sin(phi / 2)
    return np.stack([
        cos_t * cos_h + sin_t * sin_h * sin_psi,
        cos_psi * sin_t * sin_h,
        cos_h * sin_t - cos_t * sin_h * sin_psi,
        cos_t * cos_psi * sin_h,
    ])


def gate_axis_angle(d):
    return quaternion_to_rotation(gate_quaternion(d.theta, d.length))


def _modes(signed_psi, delta_beta_norm):
    psi = abs(signed_psi)
    stokes0 = (0.0, math.sin(signed_psi), math.cos(psi))
    return ModeAnalysis(
        psi=psi,
        delta_beta_norm=delta_beta_norm,
        stokes0=stokes0,
        stokes1=tuple(-value for value in stokes0),
        beta_split_norm=(delta_beta_norm / 2, -delta_beta_norm / 2),
    )


def mode_analysis(d):
    """Собственные моды: положения на сфере Пуанкаре и расщепление β."""
    angles = derive_angles(d)
    if d.length == 0:
        delta_beta_norm = math.inf
    else:
        delta_beta_norm = angles.phi / (DELTA_BETA0 * d.length)
    return _modes(angles.signed_psi, delta_beta_norm)


def mode_curve(n_points):
    """Моды и собственные значения на сетке ψ ∈ [0, π/2)."""
    if int(n_points) != n_points or n_points < 1:
        raise ValidationError(
            f'Число точек кривой должно быть целым и положительным: {n_points}'
        )
    return [
        _modes(float(psi), 1.0 / math.cos(psi))
        for psi in np.linspace(0.0, math.pi / 2, int(n_points), endpoint=False)
    ]


def beat_length(p):
    """L_B = λ/δn, метры."""
    validate_positive(p.delta_n, 'Двулучепреломление δn')
    validate_positive(p.wavelength, 'Длина волны')
    return p.wavelength / p.delta_n


def physical_design(d, p):
    """Физическая длина и шаг спирали (м); без скрутки шаг не определён."""
    validate_positive(d.length, 'Длина волновода')
    length = d.length * beat_length(p)
    pitch = None if d.theta == 0 else 2 * math.pi * length / abs(d.theta)
    return PhysicalDesign(length=length, pitch=pitch)

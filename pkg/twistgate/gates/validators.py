import math
import re

import numpy as np
from django.core.exceptions import ValidationError

DEFAULT_ATOL = 1e-10

PI_NUMBER = re.compile(
    r'^(?P<sign>[+-])?'
    r'(?P<coef>(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)?'
    r'\s*\*?\s*(?P<pi>pi|π)?'
    r'(\s*/\s*(?P<den>(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?))?$'
)


def validate_finite(value, name='значение'):
    """Число должно быть конечным."""
    if not math.isfinite(value):
        raise ValidationError(f'{name} должно быть конечным, получено {value}')
    return value


def validate_positive(value, name='значение'):
    validate_finite(value, name)
    if value <= 0:
        raise ValidationError(f'{name} должно быть больше нуля: {value}')
    return value


def validate_non_negative(value, name='значение'):
    validate_finite(value, name)
    if value < 0:
        raise ValidationError(f'{name} не может быть отрицательным: {value}')
    return value


def validate_unit_axis(axis, atol=1e-12):
    """Ось вращения должна быть единичным 3-вектором."""
    vector = np.asarray(axis, dtype=float)
    if vector.shape != (3,) or not np.all(np.isfinite(vector)):
        raise ValidationError(f'Ось вращения должна быть 3-вектором: {axis}')
    norm = float(np.linalg.norm(vector))
    if abs(norm - 1.0) > atol:
        raise ValidationError(
            f'Ось вращения должна быть единичной, |n| = {norm!r}'
        )
    return vector


def validate_unitary(matrix, atol=DEFAULT_ATOL):
    """Проверка U†U = I и |det U| = 1 для матрицы 2x2."""
    array = np.asarray(matrix, dtype=complex)
    if array.shape != (2, 2):
        raise ValidationError(
            f'Ожидалась матрица 2x2, получена форма {array.shape}'
        )
    if not np.allclose(array.conj().T @ array, np.eye(2), rtol=0, atol=atol):
        raise ValidationError('Матрица не унитарна: U†U != I')
    if abs(abs(np.linalg.det(array)) - 1.0) > atol:
        raise ValidationError('Матрица не унитарна: |det U| != 1')
    return array


def validate_spherical(polar, azimuth):
    """Полярный угол в [0, π], азимут в [0, 2π)."""
    validate_finite(polar, 'Полярный угол')
    validate_finite(azimuth, 'Азимут')
    if not 0.0 <= polar <= math.pi:
        raise ValidationError(f'Полярный угол вне [0, π]: {polar}')
    if not 0.0 <= azimuth < 2 * math.pi:
        raise ValidationError(f'Азимут вне [0, 2π): {azimuth}')
    return polar, azimuth


def validate_grid_counts(counts):
    """Размеры сетки: три целых числа не меньше единицы."""
    if len(counts) != 3:
        raise ValidationError(
            f'Сетка задаётся тремя числами (полярный, азимут, угол): {counts}'
        )
    for count in counts:
        if int(count) != count or count < 1:
            raise ValidationError(
                f'Размеры сетки должны быть целыми и не меньше 1: {counts}'
            )
    return tuple(int(count) for count in counts)


def parse_number(text):
    """Разбор числа с поддержкой литерала pi: '20pi', '-pi/2', '0.25*pi'."""
    cleaned = str(text).strip().lower()
    match = PI_NUMBER.match(cleaned)
    if not cleaned or match is None or not (
            match.group('coef') or match.group('pi')):
        raise ValidationError(f'Не удалось разобрать число: {text!r}')
    value = float(match.group('coef') or 1.0)
    if match.group('pi'):
        value *= math.pi
    if match.group('den'):
        denominator = float(match.group('den'))
        if denominator == 0:
            raise ValidationError(f'Деление на ноль в {text!r}')
        value /= denominator
    if match.group('sign') == '-':
        value = -value
    return validate_finite(value, f'Число {text!r}')


def parse_vector(text):
    """Разбор вектора '0,0,1'; компоненты допускают литерал pi."""
    parts = [part for part in str(text).split(',') if part.strip()]
    if len(parts) != 3:
        raise ValidationError(
            f'Ожидались три компоненты через запятую: {text!r}'
        )
    return tuple(parse_number(part) for part in parts)


def parse_grid(text):
    """Разбор размеров сетки '33,65,17'."""
    parts = [part.strip() for part in str(text).split(',')]
    try:
        counts = tuple(int(part) for part in parts)
    except ValueError:
        raise ValidationError(f'Размеры сетки должны быть целыми: {text!r}')
    return validate_grid_counts(counts)


def parse_scan(text):
    """Разбор списка ограничений '20pi:1,20pi:2' в пары (θ_max, L_max)."""
    pairs = []
    for chunk in str(text).split(','):
        if not chunk.strip():
            continue
        try:
            theta_max, length_max = chunk.split(':')
        except ValueError:
            raise ValidationError(
                f'Ограничение задаётся как θ_max:L_max, получено {chunk!r}'
            )
        pairs.append((parse_number(theta_max), parse_number(length_max)))
    if not pairs:
        raise ValidationError('Список ограничений пуст')
    return pairs


def parse_count(text):
    """Целое положительное число."""
    try:
        value = int(str(text).strip())
    except ValueError:
        raise ValidationError(f'Ожидалось целое число: {text!r}')
    if value < 1:
        raise ValidationError(f'Число должно быть не меньше 1: {value}')
    return value


def parse_seed(text):
    """Seed: целое неотрицательное число."""
    try:
        value = int(str(text).strip())
    except ValueError:
        raise ValidationError(f'Seed должен быть целым числом: {text!r}')
    if value < 0:
        raise ValidationError(f'Seed не может быть отрицательным: {value}')
    return value


def parse_flag(text):
    """Логический флаг из файла конфигурации: true/false, yes/no, 1/0."""
    value = str(text).strip().lower()
    if value in ('1', 'true', 'yes', 'on'):
        return True
    if value in ('0', 'false', 'no', 'off'):
        return False
    raise ValidationError(f'Ожидалось логическое значение: {text!r}')

"""Общая основа команд: файл конфигурации, разбор чисел, коды возврата.

Коды возврата: 0 - успех, 2 - ошибка разбора аргументов или конфигурации,
1 - ошибка вычисления.
"""
import argparse
import os

from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError
from dotenv import dotenv_values

from gates.design import FitOptions
from gates.reports import check_writable
from gates.validators import (parse_count, parse_flag, parse_grid,
                              parse_number, parse_scan, parse_seed,
                              parse_vector)

USAGE_ERROR = 2
COMPUTATION_ERROR = 1


def error_text(error):
    if isinstance(error, ValidationError):
        return '; '.join(error.messages)
    return str(error)


def argument_type(parse):
    """Обёртка валидатора для argparse: ошибка разбора -> код 2."""
    def convert(text):
        try:
            return parse(text)
        except ValidationError as error:
            raise argparse.ArgumentTypeError(error_text(error))
    convert.__name__ = parse.__name__
    return convert


number = argument_type(parse_number)
count = argument_type(parse_count)
seed = argument_type(parse_seed)
vector = argument_type(parse_vector)
grid = argument_type(parse_grid)
scan = argument_type(parse_scan)


class GateCommand(BaseCommand):
    """Базовая команда: значения флагов берутся из командной строки,
    затем из файла --config, затем из окружения и settings.

    options_table: dest -> (функция разбора, значение по умолчанию).
    Значение по умолчанию может быть функцией без аргументов: так оно
    читается из settings в момент запуска команды.
    """
    options_table = {}
    requires_system_checks = []

    def add_arguments(self, parser):
        parser.add_argument(
            '--config',
            help='Файл key=value с длинными именами флагов',
        )
        parser.add_argument(
            '--digits',
            type=count,
            help='Число значащих цифр при выводе (по умолчанию 9)',
        )

    def get_options_table(self):
        return {
            'digits': (parse_count, lambda: settings.DISPLAY_DIGITS),
            **self.options_table,
        }

    def read_config(self, path):
        if not path:
            return {}
        if not os.path.isfile(path):
            raise CommandError(
                f'Файл конфигурации не найден: {path}', returncode=USAGE_ERROR
            )
        table = self.get_options_table()
        config = {}
        for key, value in dotenv_values(path).items():
            dest = key.strip().lstrip('-').replace('-', '_')
            if dest not in table:
                raise CommandError(
                    f'Неизвестный ключ в {path}: {key}', returncode=USAGE_ERROR
                )
            if value is None:
                raise CommandError(
                    f'Нет значения для ключа {key} в {path}',
                    returncode=USAGE_ERROR,
                )
            config[dest] = value
        return config

    def resolve_options(self, options):
        config = self.read_config(options.get('config'))
        resolved = dict(options)
        for dest, (parse, default) in self.get_options_table().items():
            if resolved.get(dest) is not None:
                continue
            raw = config.get(dest, default)
            if callable(raw):
                raw = raw()
            if raw is None or not isinstance(raw, str):
                resolved[dest] = raw
                continue
            try:
                resolved[dest] = parse(raw)
            except ValidationError as error:
                raise CommandError(
                    f'{dest}: {error_text(error)}', returncode=USAGE_ERROR
                )
        return resolved

    def require(self, options, *names):
        missing = [name for name in names if options.get(name) is None]
        if missing:
            flags = ', '.join(
                '--' + name.replace('_', '-') for name in missing
            )
            raise CommandError(
                f'Не заданы обязательные параметры: {flags}',
                returncode=USAGE_ERROR,
            )

    def check_output_paths(self, *paths):
        for path in paths:
            if path and not check_writable(path):
                raise CommandError(
                    f'Нельзя записать файл: {path}',
                    returncode=COMPUTATION_ERROR,
                )

    def handle(self, *args, **options):
        self.options = self.resolve_options(options)
        try:
            self.run(self.options)
        except ValidationError as error:
            raise CommandError(error_text(error), returncode=COMPUTATION_ERROR)

    def run(self, options):
        raise NotImplementedError

    def fmt(self, value):
        if value is None:
            return '-'
        return f'{value:.{self.options["digits"]}g}'

    def fmt_vector(self, values):
        return '(' + ', '.join(self.fmt(value) for value in values) + ')'

    def fmt_complex(self, value):
        digits = self.options['digits']
        return f'{value.real:.{digits}g}{value.imag:+.{digits}g}j'


class OptimizerCommand(GateCommand):
    """Команды с оптимизатором: общие флаги ограничений и параметров DE."""
    optimizer_table = {
        'theta_max': (parse_number, lambda: settings.DEFAULT_THETA_MAX),
        'length_max': (parse_number, lambda: settings.DEFAULT_LENGTH_MAX),
        'seed': (parse_seed, lambda: settings.DEFAULT_SEED),
        'population': (parse_count, lambda: settings.DE_POPULATION),
        'max_generations': (parse_count, lambda: settings.DE_MAX_GENERATIONS),
        'no_polish': (parse_flag, False),
    }

    def get_options_table(self):
        return {**super().get_options_table(), **self.optimizer_table}

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument(
            '--theta-max', type=number,
            help='Максимальный угол скрутки, например 20pi',
        )
        parser.add_argument(
            '--length-max', type=number,
            help='Максимальная длина в длинах биений',
        )
        parser.add_argument(
            '--seed', type=seed,
            help='Seed оптимизатора (по умолчанию TWISTGATE_SEED или 0)',
        )
        parser.add_argument('--population', type=count,
                            help='Размер популяции DE')
        parser.add_argument('--max-generations', type=count,
                            help='Максимум поколений DE')
        parser.add_argument('--no-polish', action='store_true', default=None,
                            help='Без полировки симплексом')

    def fit_options(self, options):
        return FitOptions(
            seed=options['seed'],
            population=options['population'],
            max_generations=options['max_generations'],
            polish=not options['no_polish'],
        )

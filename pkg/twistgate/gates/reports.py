"""Отчёты: JSON-дерево с версией схемы и плоские CSV-таблицы."""
import csv
import os

from django.conf import settings
from rest_framework.renderers import JSONRenderer

from .serializers import (FitOptionsSerializer, FitResultSerializer,
                          ScanRowSerializer, SweepSummarySerializer)

RECORD_COLUMNS = ('polar', 'azimuth', 'chi', 'theta_opt', 'L_opt', 'fidelity')
SCAN_COLUMNS = ('theta_max', 'length_max', 'f_min', 'near_unity_fraction')


def check_writable(path):
    """Можно ли создать или перезаписать файл path."""
    path = os.path.abspath(path)
    if os.path.isdir(path):
        return False
    if os.path.exists(path):
        return os.access(path, os.W_OK)
    directory = os.path.dirname(path)
    return os.path.isdir(directory) and os.access(directory, os.W_OK)


def render_json(data):
    return JSONRenderer().render(data, renderer_context={'indent': 2})


def fit_report(result):
    return {
        'schema_version': settings.REPORT_SCHEMA_VERSION,
        'fit': FitResultSerializer(result).data,
    }


def sweep_report(summary, options):
    return {
        'schema_version': settings.REPORT_SCHEMA_VERSION,
        'config': {
            'base_seed': options.base_seed,
            'histogram_bins': options.histogram_bins,
            'histogram_min': options.histogram_min,
            'near_unity_threshold': options.near_unity_threshold,
            'fit': FitOptionsSerializer(options.fit).data,
        },
        'summary': SweepSummarySerializer(summary).data,
    }


def scan_report(scan, options):
    report = sweep_report(scan.summaries[0], options)
    del report['summary']
    report['scan'] = ScanRowSerializer(scan.rows, many=True).data
    report['summaries'] = SweepSummarySerializer(
        scan.summaries, many=True).data
    return report


def write_json(path, report):
    with open(path, 'wb') as file:
        file.write(render_json(report))
        file.write(b'\n')


def write_records_csv(path, summary):
    """Таблица polar, azimuth, chi, theta_opt, L_opt, fidelity."""
    with open(path, 'w', encoding='utf8', newline='') as file:
        writer = csv.writer(file)
        writer.writerow(RECORD_COLUMNS)
        for record in summary.records:
            writer.writerow((
                repr(record.polar),
                repr(record.azimuth),
                repr(record.chi),
                repr(record.design.theta),
                repr(record.design.length),
                repr(record.fidelity),
            ))


def write_scan_csv(path, scan):
    with open(path, 'w', encoding='utf8', newline='') as file:
        writer = csv.writer(file)
        writer.writerow(SCAN_COLUMNS)
        for row in scan.rows:
            writer.writerow((
                repr(row.theta_max),
                repr(row.length_max),
                repr(row.f_min),
                repr(row.near_unity_fraction),
            ))

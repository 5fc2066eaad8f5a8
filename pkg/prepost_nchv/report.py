"""
The Report every command produces: a list of named checks plus free-form
details, rendered either as JSON or as an aligned text table.
"""

from __future__ import annotations

import json

from attrs import define, field
from marshmallow import RAISE, Schema, ValidationError, fields, post_load, validates_schema

# internal imports
from .helpers import dumps


@define(frozen=True)
class Check:
    name: str
    expected: object
    actual: object
    deviation: float = None
    passed: bool = True


@define(frozen=True)
class Report:
    artifact_version: str
    command: str
    checks: tuple = field(converter=tuple)
    details: dict = field(converter=dict, factory=dict)

    @property
    def overall(self):
        return all(c.passed for c in self.checks)


def numeric_check(name, expected, actual, tol):
    deviation = abs(actual - expected)
    return Check(name, expected, actual, deviation, deviation < tol)


def exact_check(name, expected, actual):
    return Check(name, expected, actual, None, expected == actual)


def info(name, actual):
    # reported, never judged
    return Check(name, None, actual, None, True)


class CheckSchema(Schema):

    class Meta:
        unknown = RAISE

    name = fields.String(required=True)
    expected = fields.Raw(allow_none=True)
    actual = fields.Raw(allow_none=True)
    deviation = fields.Float(allow_none=True)
    passed = fields.Boolean(required=True)

    @post_load
    def make_check(self, data, **kwargs):
        return Check(**data)


class ReportSchema(Schema):

    class Meta:
        unknown = RAISE

    artifact_version = fields.String(required=True)
    command = fields.String(required=True)
    checks = fields.List(fields.Nested(CheckSchema), required=True)
    details = fields.Dict(keys=fields.String(), load_default=dict)
    overall = fields.Boolean(required=True)

    @validates_schema
    def overall_is_conjunction(self, data, **kwargs):
        if data['overall'] != all(c.passed for c in data['checks']):
            raise ValidationError('overall does not match the checks', 'overall')

    @post_load
    def make_report(self, data, **kwargs):
        data.pop('overall')
        return Report(**data)


report_schema = ReportSchema()


def dump_report(report):
    return dumps(report_schema.dump(report))


def load_report(text):
    return report_schema.load(json.loads(text))


def _show(value):
    if value is None:
        return '-'
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def render_text(report):
    """Human readable form: one aligned line per check, then the details."""
    lines = [f"{report.command}  (prepost_nchv {report.artifact_version})", '']
    width = max((len(c.name) for c in report.checks), default=0)
    for c in report.checks:
        status = 'PASS' if c.passed else 'FAIL'
        line = f"  {status}  {c.name:<{width}}  actual {_show(c.actual)}"
        if c.expected is not None:
            line += f"  expected {_show(c.expected)}"
        if c.deviation is not None:
            line += f"  deviation {c.deviation:.3g}"
        lines.append(line)
    lines += ['', f"overall: {'PASS' if report.overall else 'FAIL'}"]

    for key in sorted(report.details):
        value = report.details[key]
        if isinstance(value, list):
            lines.append(f"{key}:")
            lines += [f"  {_show(item)}" for item in value]
        elif isinstance(value, dict):
            lines.append(f"{key}:")
            lines += [f"  {k} = {_show(v)}" for k, v in sorted(value.items())]
        else:
            lines.append(f"{key}: {_show(value)}")
    return '\n'.join(lines) + '\n'

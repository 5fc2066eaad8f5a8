"""
Pre/post-selected scenarios: the domain types, their validation, and the
scenario file format (JSON through marshmallow schemas).
"""

from __future__ import annotations

import json
import logging
import math
from enum import Enum

from attrs import Factory, define, field
from marshmallow import EXCLUDE, RAISE, Schema, ValidationError, fields, post_load, pre_dump, validates_schema
from marshmallow.validate import Length, Range

# internal imports
from config import Config
from .errors import DimensionMismatchError, DomainError, ScenarioParseError
from .helpers import dumps
from .hilbert import (
    StateVector,
    exclusivity_deviation,
    identity_deviation,
    inner,
    is_resolution_of_identity,
    projector,
)


logger = logging.getLogger(__name__)


class Justification(str, Enum):
    PREDICTION = 'Prediction'
    RETRODICTION = 'Retrodiction'


def _nonempty(instance, attribute, value):
    if not value:
        raise DomainError(f"{attribute.name} must be nonempty")


@define(frozen=True, eq=False)
class LabeledProjector:
    label: str = field(validator=_nonempty)
    state: StateVector
    operator: object = field(init=False, default=Factory(lambda self: projector(self.state), takes_self=True))


@define(frozen=True)
class Context:
    members: tuple = field(converter=tuple)

    @members.validator
    def _at_least_two(self, attribute, value):
        if len(value) < 2:
            raise DomainError(f"a context needs at least 2 members, got {list(value)}")

    def __str__(self):
        return '{' + ', '.join(self.members) + '}'


def _pairs(values):
    return tuple(tuple(pair) for pair in values)


@define(frozen=True, eq=False)
class PrePostScenario:
    dim: int
    pre: StateVector
    post: StateVector
    projectors: tuple = field(converter=tuple)
    contexts: tuple = field(converter=lambda cs: tuple(c if isinstance(c, Context) else Context(c) for c in cs))
    exclusive_pairs: tuple = field(converter=_pairs, factory=tuple)
    metadata: dict = field(converter=dict, factory=dict)

    def __attrs_post_init__(self):
        # label references are judged by validate(); dimensions have to agree for anything to be computed at all
        for name, state in [('pre', self.pre), ('post', self.post)] + [(p.label, p.state) for p in self.projectors]:
            if state.dim != self.dim:
                raise DimensionMismatchError(f"{name}: state has dimension {state.dim}, scenario has {self.dim}")

    @property
    def labels(self):
        return [p.label for p in self.projectors]

    @property
    def name(self):
        return self.metadata.get('name', '')

    def has_label(self, label):
        return any(p.label == label for p in self.projectors)

    def lookup(self, label):
        for p in self.projectors:
            if p.label == label:
                return p
        raise DomainError(f"unknown label {label!r}")

    def operators(self, labels):
        return [self.lookup(label).operator for label in labels]


@define(frozen=True)
class ForcedValue:
    label: str
    bit: int
    justification: Justification

    def __str__(self):
        return f"{self.label}={self.bit} ({self.justification.value})"


@define(frozen=True)
class ValueAssignment:
    values: dict = field(converter=dict)

    def __getitem__(self, label):
        return self.values[label]

    def ones(self):
        return sorted(label for label, bit in self.values.items() if bit == 1)

    def __str__(self):
        return ' '.join(f"{label}={bit}" for label, bit in self.values.items())


@define(frozen=True)
class CheckResult:
    name: str
    passed: bool
    deviation: float = 0.0
    detail: str = ''


@define(frozen=True)
class ValidationReport:
    checks: tuple = field(converter=tuple)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def get(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __iter__(self):
        return iter(self.checks)


def _norm_check(name, state, tol):
    deviation = abs(state.norm() - 1.0)
    return CheckResult(name, deviation < tol, deviation)


def validate(scenario, tol=None):
    """
    Run every structural and physical check on a scenario.

    Nothing here raises for bad data: dangling labels, rank deficient
    contexts or an impossible postselection all come back as failing
    checks with the measured deviation.
    """
    tol = Config.TOL_CHECK if tol is None else tol
    checks = []

    labels = scenario.labels
    duplicates = sorted({label for label in labels if labels.count(label) > 1})
    checks.append(CheckResult(
        'labels unique',
        not duplicates,
        float(len(duplicates)),
        f"duplicated: {', '.join(duplicates)}" if duplicates else '',
    ))

    checks.append(_norm_check('pre normalized', scenario.pre, tol))
    checks.append(_norm_check('post normalized', scenario.post, tol))
    worst = max(scenario.projectors, key=lambda p: abs(p.state.norm() - 1.0), default=None)
    if worst is not None:
        checks.append(_norm_check('projector states normalized', worst.state, tol))

    overlap = abs(inner(scenario.post, scenario.pre))
    checks.append(CheckResult('postselection possible', overlap > tol, overlap, '|<post|pre>|'))

    for i, context in enumerate(scenario.contexts, start=1):
        name = f"context {i} {context}"
        missing = [label for label in context.members if not scenario.has_label(label)]
        if missing:
            checks.append(CheckResult(f"{name}: labels resolve", False, float(len(missing)), f"unknown: {', '.join(missing)}"))
            continue
        ops = scenario.operators(context.members)
        checks.append(CheckResult(
            f"{name}: resolution of identity",
            is_resolution_of_identity(ops, tol),
            identity_deviation(ops),
        ))
        total = sum(inner(scenario.pre, p.state) * inner(p.state, scenario.pre) for p in map(scenario.lookup, context.members))
        checks.append(CheckResult(f"{name}: probability completeness", abs(total - 1.0) < tol, abs(total - 1.0)))

    for a, b in scenario.exclusive_pairs:
        name = f"exclusive ({a}, {b})"
        missing = [label for label in (a, b) if not scenario.has_label(label)]
        if missing:
            checks.append(CheckResult(name, False, float(len(missing)), f"unknown: {', '.join(missing)}"))
            continue
        deviation = exclusivity_deviation(scenario.lookup(a).operator, scenario.lookup(b).operator)
        checks.append(CheckResult(name, deviation < tol, deviation))

    report = ValidationReport(checks)
    logger.debug("validated %r: %d checks, %d failing", scenario.name, len(checks), len(report.failures()))
    return report


# scenario file format

class AmplitudeField(fields.Field):
    """A complex number as the two element array [re, im]."""

    def _serialize(self, value, attr, obj, **kwargs):
        return [float(value.real), float(value.imag)]

    def _deserialize(self, value, attr, data, **kwargs):
        if (
            not isinstance(value, (list, tuple))
            or len(value) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)
        ):
            raise ValidationError('amplitude must be a two-element array [re, im]')
        try:
            re, im = float(value[0]), float(value[1])
        except OverflowError:
            raise ValidationError('amplitude must be finite')
        if not (math.isfinite(re) and math.isfinite(im)):
            raise ValidationError('amplitude must be finite')
        return complex(re, im)


class StateField(fields.List):

    def __init__(self, **kwargs):
        super().__init__(AmplitudeField(), **kwargs)

    def _serialize(self, value, attr, obj, **kwargs):
        if isinstance(value, StateVector):
            value = list(value.amps)
        return super()._serialize(value, attr, obj, **kwargs)


class ProjectorSchema(Schema):

    class Meta:
        unknown = RAISE

    label = fields.String(required=True, validate=Length(min=1))
    state = StateField(required=True)


class LaxProjectorSchema(ProjectorSchema):

    class Meta:
        unknown = EXCLUDE


class ScenarioSchema(Schema):

    class Meta:
        unknown = RAISE

    dim = fields.Integer(required=True, strict=True, validate=Range(min=2))
    pre = StateField(required=True)
    post = StateField(required=True)
    projectors = fields.List(fields.Nested(ProjectorSchema), required=True)
    contexts = fields.List(fields.List(fields.String(), validate=Length(min=2)), required=True)
    exclusive_pairs = fields.List(fields.List(fields.String(), validate=Length(equal=2)), load_default=list)
    metadata = fields.Dict(keys=fields.String(), load_default=dict)

    @pre_dump
    def flatten(self, scenario, **kwargs):
        return {
            'dim': scenario.dim,
            'pre': scenario.pre,
            'post': scenario.post,
            'projectors': [{'label': p.label, 'state': p.state} for p in scenario.projectors],
            'contexts': [list(c.members) for c in scenario.contexts],
            'exclusive_pairs': [list(pair) for pair in scenario.exclusive_pairs],
            'metadata': dict(scenario.metadata),
        }

    @validates_schema
    def check_dims_and_labels(self, data, **kwargs):
        dim = data['dim']
        for name in ('pre', 'post'):
            if len(data[name]) != dim:
                raise ValidationError(f"state {name!r} has {len(data[name])} amplitudes, expected {dim}", name)
        seen = set()
        for i, item in enumerate(data['projectors']):
            label = item['label']
            if len(item['state']) != dim:
                raise ValidationError(
                    f"state of projector {label!r} has {len(item['state'])} amplitudes, expected {dim}",
                    f"projectors.{i}.state",
                )
            if label in seen:
                raise ValidationError(f"duplicate label {label!r}", f"projectors.{i}.label")
            seen.add(label)

    @post_load
    def make_scenario(self, data, **kwargs):
        return PrePostScenario(
            dim=data['dim'],
            pre=StateVector(data['pre']),
            post=StateVector(data['post']),
            projectors=[LabeledProjector(p['label'], StateVector(p['state'])) for p in data['projectors']],
            contexts=data['contexts'],
            exclusive_pairs=data['exclusive_pairs'],
            metadata=data['metadata'],
        )


class LaxScenarioSchema(ScenarioSchema):

    class Meta:
        unknown = EXCLUDE

    projectors = fields.List(fields.Nested(LaxProjectorSchema), required=True)


# instantiate our schemas so the rest of the package can use them
scenario_schema = ScenarioSchema()
lax_scenario_schema = LaxScenarioSchema()


def _first_error(messages, path=()):
    """Walk marshmallow's nested error dict down to the first message and its dotted location."""
    if isinstance(messages, dict):
        key = sorted(messages, key=str)[0]
        sub_path = path if key == '_schema' else path + (str(key),)
        return _first_error(messages[key], sub_path)
    if isinstance(messages, list) and messages:
        return _first_error(messages[0], path)
    return str(messages), '.'.join(path) or None


def save(scenario):
    """Serialize a scenario to the UTF-8 JSON scenario file format."""
    data = scenario_schema.dump(scenario)
    return dumps(data).encode('utf-8')


def load(raw, lax=False):
    """
    Parse scenario file bytes (or text).

    :parameter raw: file contents
    :parameter lax: ignore unknown fields instead of rejecting them
    """
    if isinstance(raw, bytes):
        try:
            raw = raw.decode('utf-8')
        except UnicodeDecodeError as exc:
            raise ScenarioParseError('file is not valid UTF-8', f"byte {exc.start}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
    if not isinstance(data, dict):
        raise ScenarioParseError('top level must be a JSON object')

    schema = lax_scenario_schema if lax else scenario_schema
    try:
        return schema.load(data)
    except ValidationError as exc:
        message, location = _first_error(exc.messages)
        raise ScenarioParseError(message, location) from exc
    except (DomainError, DimensionMismatchError) as exc:
        raise ScenarioParseError(str(exc)) from exc

import logging

import click

# internal imports
from prepost_nchv import __version__
from prepost_nchv.commands import EXIT_NUMERIC, EXIT_OK, EXIT_VALIDATION, emit, handles_errors, read_bytes, write_bytes
from prepost_nchv.constructions import (
    CABELLO_LABELS,
    HARDY_LABELS,
    HARDY_MAXIMUM,
    cabello_scenario,
    first_particle_scenario,
    hardy_scenario,
)
from prepost_nchv.hilbert import inner
from prepost_nchv.models import load, save, validate
from prepost_nchv.nchv import CONFLICT, Status, enumerate_assignments
from prepost_nchv.optimizer import maximize_hardy
from prepost_nchv.prepost import abl_probability, entanglement_profile, forced_values, selection_probability
from prepost_nchv.report import Check, Report, exact_check, info, numeric_check


logger = logging.getLogger(__name__)

CABELLO_PROBABILITY = 1 / 9
CONSTRUCTED_TOL = 1e-12 # everything we build ourselves is exact to this level
HARDY_TOL = 1e-6


def forced_summary(forced):
    return ', '.join(map(str, forced))


def trace_summary(trace):
    parts = []
    for step in trace.steps:
        if step.conclusion == CONFLICT:
            parts.append(f"CONFLICT({', '.join(step.premises)})")
        else:
            parts.append(f"{step.conclusion}={step.bit}")
    if not trace.certified:
        parts.append(trace.outcome)
    return '; '.join(parts)


def _expected_forced(labels):
    # alpha and both betas by prediction, both gammas by retrodiction
    kinds = ['Prediction'] * 3 + ['Retrodiction'] * 2
    return ', '.join(f"{label}=0 ({kind})" for label, kind in sorted(zip(labels[:5], kinds)))


def verify_scenario(target, scenario, optimal=False):
    """
    Run the whole argument on a scenario and judge every step against
    the values it must reproduce.

    :parameter target: 'cabello' or 'hardy', picks the expected values
    :parameter optimal: the Hardy angles came from the optimizer, so the maximum probability is checked too
    """
    labels = CABELLO_LABELS if target == 'cabello' else HARDY_LABELS
    delta_p, delta_m = labels[5], labels[6]
    checks = []

    validation = validate(scenario)
    for result in validation:
        checks.append(Check(f"validate: {result.name}", 'pass', 'pass' if result.passed else 'fail', result.deviation, result.passed))
    missing = [label for label in labels if not scenario.has_label(label)]
    if missing:
        checks.append(Check('validate: expected labels', ', '.join(labels), f"missing {', '.join(missing)}", None, False))
    if not validation.passed or missing:
        return Report(__version__, f"verify {target}", checks, {'scenario': scenario.name})

    probability = selection_probability(scenario)
    if target == 'cabello':
        checks.append(numeric_check('selection probability', CABELLO_PROBABILITY, probability, CONSTRUCTED_TOL))
    else:
        if optimal:
            checks.append(numeric_check('selection probability (Hardy maximum)', HARDY_MAXIMUM, probability, HARDY_TOL))
        checks.append(Check('selection probability below 1/9', '< 1/9', probability, None, probability < CABELLO_PROBABILITY))

    for i, context in enumerate(scenario.contexts, start=1):
        deviation = validation.get(f"context {i} {context}: resolution of identity").deviation
        checks.append(numeric_check(f"context {i} identity deviation", 0.0, deviation, CONSTRUCTED_TOL))
    for a, b in scenario.exclusive_pairs:
        overlap = abs(inner(scenario.lookup(a).state, scenario.lookup(b).state))
        checks.append(numeric_check(f"|<{a}|{b}>|", 0.0, overlap, CONSTRUCTED_TOL))

    forced = forced_values(scenario)
    checks.append(exact_check('forced values', _expected_forced(labels), forced_summary(forced)))

    sat = enumerate_assignments(scenario, forced)
    checks.append(exact_check('noncontextual assignments', Status.UNSAT.value, sat.status.value))
    checks.append(exact_check('assignments examined', 2 ** len(scenario.projectors), sat.assignments_examined))
    trace_text = trace_summary(sat.conflict) if sat.conflict is not None else 'none'
    checks.append(exact_check(
        'contradiction trace',
        f"{delta_p}=1; {delta_m}=1; CONFLICT({delta_p}, {delta_m})",
        trace_text,
    ))

    # ABL: the forced zeros stay 0, and both mutually exclusive deltas come out 1
    for label in labels:
        expected = 1.0 if label in (delta_p, delta_m) else 0.0
        checks.append(numeric_check(f"ABL probability {label}", expected, abl_probability(scenario, label), CONSTRUCTED_TOL))

    profile = entanglement_profile(scenario)
    if target == 'cabello':
        checks.append(exact_check('Schmidt rank of pre, post', '1, 1', f"{profile['pre']}, {profile['post']}"))
        alone = first_particle_scenario()
        alone_sat = enumerate_assignments(alone, forced_values(alone))
        checks.append(exact_check('first particle alone', Status.SAT.value, alone_sat.status.value))
    else:
        checks.append(exact_check('Schmidt rank of pre', 2, profile['pre']))
    checks.append(info('entangled propositions', ', '.join(label for label in labels if profile[label] > 1) or 'none'))

    details = {
        'scenario': scenario.name,
        'forced': [str(f) for f in forced],
        'trace': sat.conflict.lines() if sat.conflict is not None else [],
    }
    if target == 'hardy':
        details['parameters'] = {'theta_a': scenario.metadata.get('theta_a'), 'theta_b': scenario.metadata.get('theta_b')}
    return Report(__version__, f"verify {target}", checks, details)


@click.command()
@click.argument('target', type=click.Choice(['cabello', 'hardy']))
@click.option('--theta-a', type=float, help='Hardy angle of the first particle (radians).')
@click.option('--theta-b', type=float, help='Hardy angle of the second particle (radians).')
@click.option('--optimal', is_flag=True, help='Use the Hardy angles found by the optimizer.')
@click.option('--from-file', 'from_file', type=click.Path(dir_okay=False), help='Verify a saved scenario instead of building one.')
@click.option('--lax', is_flag=True, help='Ignore unknown fields in --from-file.')
@click.option('--export', 'export_path', type=click.Path(dir_okay=False), help='Write the scenario to this file.')
@click.option('--json', 'as_json', is_flag=True, help='Machine readable report.')
@handles_errors
def verify(target, theta_a, theta_b, optimal, from_file, lax, export_path, as_json):
    """Reproduce the no-hidden-variables argument for TARGET."""
    if from_file:
        scenario = load(read_bytes(from_file), lax=lax)
        optimal = optimal and target == 'hardy'
    elif target == 'cabello':
        scenario = cabello_scenario()
    else:
        if optimal:
            result = maximize_hardy()
            theta_a, theta_b = result.parameters['theta_a'], result.parameters['theta_b']
        elif theta_a is None or theta_b is None:
            raise click.UsageError('verify hardy needs --theta-a and --theta-b, or --optimal')
        scenario = hardy_scenario(theta_a, theta_b)

    if export_path:
        write_bytes(export_path, save(scenario))

    report = verify_scenario(target, scenario, optimal)
    emit(report, as_json)

    if not all(c.passed for c in report.checks if c.name.startswith('validate: ')):
        raise SystemExit(EXIT_VALIDATION)
    raise SystemExit(EXIT_OK if report.overall else EXIT_NUMERIC)

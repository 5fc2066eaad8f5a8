import click

# internal imports
from config import Config
from prepost_nchv import __version__
from prepost_nchv.commands import EXIT_OK, EXIT_VALIDATION, emit, handles_errors, read_bytes
from prepost_nchv.models import load, validate
from prepost_nchv.nchv import Status, enumerate_assignments
from prepost_nchv.prepost import forced_values, selection_probability
from prepost_nchv.report import Check, Report, info


def check_scenario(scenario, max_witnesses=None):
    """
    Neutral analysis of any scenario: validation, forced values and the
    exhaustive NCHV search. SAT and UNSAT are both findings, not failures.
    """
    max_witnesses = Config.MAX_WITNESSES if max_witnesses is None else max_witnesses
    checks = []

    validation = validate(scenario)
    for result in validation:
        checks.append(Check(f"validate: {result.name}", 'pass', 'pass' if result.passed else 'fail', result.deviation, result.passed))
    if not validation.passed:
        return Report(__version__, 'check', checks, {'scenario': scenario.name})

    forced = forced_values(scenario)
    sat = enumerate_assignments(scenario, forced)

    checks.append(info('selection probability', selection_probability(scenario)))
    checks.append(info('forced values', len(forced)))
    checks.append(info('noncontextual assignments', sat.status.value))
    checks.append(info('assignments examined', sat.assignments_examined))

    details = {
        'scenario': scenario.name,
        'forced': [str(f) for f in forced],
    }
    if sat.status is Status.SAT:
        details['witness_count'] = len(sat.witnesses)
        #only list the ones assigned 1, the rest are 0
        details['witnesses'] = ['1 on: ' + ', '.join(w.ones()) for w in sat.witnesses[:max_witnesses]]
    else:
        details['trace'] = sat.conflict.lines()
        details['trace_outcome'] = sat.conflict.outcome
    return Report(__version__, 'check', checks, details)


@click.command()
@click.argument('path', type=click.Path(dir_okay=False))
@click.option('--lax', is_flag=True, help='Ignore unknown fields.')
@click.option('--max-witnesses', type=click.IntRange(min=0), default=Config.MAX_WITNESSES, show_default=True)
@click.option('--json', 'as_json', is_flag=True, help='Machine readable report.')
@handles_errors
def check(path, lax, max_witnesses, as_json):
    """Analyse the scenario file at PATH."""
    scenario = load(read_bytes(path), lax=lax)
    report = check_scenario(scenario, max_witnesses)
    emit(report, as_json)
    raise SystemExit(EXIT_OK if report.overall else EXIT_VALIDATION)

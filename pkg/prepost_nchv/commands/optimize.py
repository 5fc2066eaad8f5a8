import click

# internal imports
from config import Config
from prepost_nchv import __version__
from prepost_nchv.commands import EXIT_NUMERIC, EXIT_OK, emit, handles_errors
from prepost_nchv.constructions import HARDY_MAXIMUM
from prepost_nchv.optimizer import maximize_cabello_family, maximize_hardy
from prepost_nchv.report import Check, Report, info, numeric_check


OBJECTIVE_TOL = 1e-6
PARAMETER_TOL = 1e-4


def optimization_report(target, result):
    checks = []
    if target == 'hardy':
        checks.append(numeric_check('maximum selection probability', HARDY_MAXIMUM, result.objective, OBJECTIVE_TOL))
        checks.append(Check('maximum below 1/9', '< 1/9', result.objective, None, result.objective < 1 / 9))
        theta_a, theta_b = result.parameters['theta_a'], result.parameters['theta_b']
        checks.append(numeric_check('theta_a - theta_b', 0.0, theta_a - theta_b, OBJECTIVE_TOL))
    else:
        checks.append(numeric_check('maximum selection probability', 1 / 9, result.objective, OBJECTIVE_TOL))
        checks.append(numeric_check('c at maximum', 1 / 3, result.parameters['c'], PARAMETER_TOL))
        checks.append(numeric_check('p at maximum', 1 / 2, result.parameters['p'], PARAMETER_TOL))
    checks.append(info('evaluations', result.evaluations))

    details = {
        'parameters': dict(result.parameters),
        'objective': result.objective,
        'evaluations': result.evaluations,
        'iterations': result.iterations,
        'grid_resolution': result.grid_resolution,
        'refine_tolerance': result.refine_tolerance,
        'scope': result.scope,
    }
    if result.exclusivity_tol is not None:
        details['exclusivity_tol'] = result.exclusivity_tol
    return Report(__version__, f"optimize {target}", checks, details)


@click.command()
@click.argument('target', type=click.Choice(['hardy', 'cabello-family']))
@click.option('--grid', type=click.IntRange(min=16), default=Config.GRID, show_default=True)
@click.option('--refine-tol', type=click.FloatRange(min=0, min_open=True), default=Config.REFINE_TOL, show_default=True)
@click.option('--threads', type=click.IntRange(min=1), default=Config.THREADS, show_default=True)
@click.option('--max-iter', type=click.IntRange(min=1), default=Config.MAX_REFINE_ITER, show_default=True)
@click.option('--exclusivity-tol', type=click.FloatRange(min=0, min_open=True), default=Config.EXCLUSIVITY_TOL, show_default=True)
@click.option('--json', 'as_json', is_flag=True, help='Machine readable report.')
@handles_errors
def optimize(target, grid, refine_tol, threads, max_iter, exclusivity_tol, as_json):
    """Search for the maximum selection probability of TARGET."""
    if target == 'hardy':
        result = maximize_hardy(grid, refine_tol, threads, max_iter)
    else:
        result = maximize_cabello_family(grid, refine_tol, threads, max_iter, exclusivity_tol)

    report = optimization_report(target, result)
    emit(report, as_json)
    raise SystemExit(EXIT_OK if report.overall else EXIT_NUMERIC)

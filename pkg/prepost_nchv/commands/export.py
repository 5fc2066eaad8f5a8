import click

# internal imports
from prepost_nchv.commands import handles_errors, write_bytes
from prepost_nchv.constructions import cabello_scenario, hardy_scenario, single_qubit_scenario
from prepost_nchv.models import save


@click.command()
@click.argument('target', type=click.Choice(['cabello', 'hardy', 'single-qubit']))
@click.argument('path', type=click.Path(dir_okay=False))
@click.option('--theta-a', type=float, default=None)
@click.option('--theta-b', type=float, default=None)
@click.option('--contexts', 'n_contexts', type=click.IntRange(min=1), default=1, show_default=True)
@click.option('--seed', type=int, default=0, show_default=True)
@handles_errors
def export(target, path, theta_a, theta_b, n_contexts, seed):
    """Write the TARGET scenario to PATH in the scenario file format."""
    if target == 'cabello':
        scenario = cabello_scenario()
    elif target == 'hardy':
        if theta_a is None or theta_b is None:
            raise click.UsageError('export hardy needs --theta-a and --theta-b')
        scenario = hardy_scenario(theta_a, theta_b)
    else:
        scenario = single_qubit_scenario(n_contexts, seed)
    write_bytes(path, save(scenario))
    click.echo(f"wrote {scenario.name} scenario to {path}", err=True)

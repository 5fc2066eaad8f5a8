__version__ = '1.0.0'

import logging
import logging.config

import click


# internal imports
from config import Config
from .commands.verify import verify #importing command objects, like blueprints
from .commands.check import check
from .commands.optimize import optimize
from .commands.export import export


#our top level command group, every subcommand hangs off it
@click.group()
@click.version_option(__version__, prog_name='prepost_nchv')
@click.option('-v', '--verbose', is_flag=True, help='Debug logging on stderr.')
def cli(verbose):
    """Verify the no-hidden-variables argument for pre- and postselected spin-1/2 pairs."""
    logging.config.fileConfig(Config.LOGGING_INI, disable_existing_loggers=False)
    logging.getLogger('prepost_nchv').setLevel('DEBUG' if verbose else Config.LOG_LEVEL)


cli.add_command(verify) #register each command on the group
cli.add_command(check)
cli.add_command(optimize)
cli.add_command(export)

# configuration for prepost_nchv: every tolerance, search size and limit the
# library falls back to when a caller does not pass one explicitly

import os
from dotenv import load_dotenv #lets us keep local overrides in a .env file next to this one


#base directory of the project, used to find the .env file
basedir = os.path.abspath(os.path.dirname(__file__))


#establish where our environment variables are coming from
load_dotenv(os.path.join(basedir, '.env'))


def _float(name, default):
    value = os.environ.get(name)
    return float(value) if value else default


def _int(name, default):
    value = os.environ.get(name)
    return int(value) if value else default


class Config():

    """
    Configuration variables for the verifier.
    Using environment variables where available otherwise the defaults below.
    """

    TOL_NORM = _float('QPP_TOL_NORM', 1e-12) # constructed states and operators
    TOL_CHECK = _float('QPP_TOL', 1e-9) # user supplied (file loaded) scenario data
    EXCLUSIVITY_TOL = _float('QPP_EXCLUSIVITY_TOL', 1e-9)
    MAX_WITNESSES = _int('QPP_MAX_WITNESSES', 16)
    GRID = _int('QPP_GRID', 64)
    REFINE_TOL = _float('QPP_REFINE_TOL', 1e-9)
    MAX_REFINE_ITER = _int('QPP_MAX_REFINE_ITER', 60)
    THREADS = _int('QPP_THREADS', 1)
    ENUMERATION_LIMIT = 24 # 2**24 assignments is the most we will brute force
    LOG_LEVEL = os.environ.get('QPP_LOG_LEVEL') or 'WARNING'
    LOGGING_INI = os.path.join(basedir, 'prepost_nchv', 'logging.ini')

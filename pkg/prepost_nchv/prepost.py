"""
Probabilities for a system that is both preselected and postselected, and
the inference of values that are certain at the intermediate time.
"""

from __future__ import annotations

import logging

import numpy as np

# internal imports
from config import Config
from .errors import AblUndefinedError, SelectionInconsistencyError
from .hilbert import certain_value, inner, schmidt_rank
from .models import ForcedValue, Justification


logger = logging.getLogger(__name__)


def selection_probability(scenario):
    """|<post|pre>|^2, the probability of the postselection given the preselection."""
    return abs(inner(scenario.post, scenario.pre)) ** 2


def forced_values(scenario, tol=None):
    """
    Values fixed with certainty at the intermediate time.

    A projector is forced by prediction when the preselected state is an
    eigenstate of it, otherwise by retrodiction when the postselected state
    is. Both applying and disagreeing means the input is corrupt.
    """
    tol = Config.TOL_CHECK if tol is None else tol
    forced = []
    for item in sorted(scenario.projectors, key=lambda p: p.label):
        predicted = certain_value(item.operator, scenario.pre, tol)
        retrodicted = certain_value(item.operator, scenario.post, tol)
        if predicted is not None and retrodicted is not None and predicted != retrodicted:
            raise SelectionInconsistencyError(
                f"{item.label}: prediction gives {predicted} but retrodiction gives {retrodicted}"
            )
        if predicted is not None:
            forced.append(ForcedValue(item.label, predicted, Justification.PREDICTION))
        elif retrodicted is not None:
            forced.append(ForcedValue(item.label, retrodicted, Justification.RETRODICTION))
    logger.debug("forced values: %s", ', '.join(map(str, forced)))
    return forced


def transition_amplitude(scenario, label):
    """<post|P|pre> for the labelled projector."""
    item = scenario.lookup(label)
    return inner(scenario.post, item.state) * inner(item.state, scenario.pre)


def abl_probability(scenario, label, tol=None):
    """
    Probability that measuring the labelled projector at the intermediate
    time gives 1, for the two-outcome measurement {P, I - P}.
    """
    tol = Config.TOL_CHECK if tol is None else tol
    amplitude = transition_amplitude(scenario, label)
    yes = abs(amplitude) ** 2
    no = abs(inner(scenario.post, scenario.pre) - amplitude) ** 2
    if yes + no < tol:
        raise AblUndefinedError(f"{label}: measuring it would make the postselection impossible")
    return yes / (yes + no)


def entanglement_profile(scenario, dims=(2, 2)):
    """Schmidt rank of pre, post and every projector's generating state. Rank 1 is a product state."""
    if int(np.prod(dims)) != scenario.dim:
        return {}
    profile = {'pre': schmidt_rank(scenario.pre, dims), 'post': schmidt_rank(scenario.post, dims)}
    for item in scenario.projectors:
        profile[item.label] = schmidt_rank(item.state, dims)
    return profile

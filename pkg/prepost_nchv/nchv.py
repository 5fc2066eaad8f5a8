"""
Noncontextual value assignments.

An assignment gives every projector a 0 or 1, independent of the context it
is measured in. It is admissible when it agrees with the forced values,
puts exactly one 1 in every context (sum rule) and never puts 1 on both
members of an exclusive pair.
"""

from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from enum import Enum

import numpy as np
from attrs import define, field

# internal imports
from config import Config
from .errors import EnumerationLimitError, NoContradictionError
from .models import ValueAssignment
from .prepost import forced_values


logger = logging.getLogger(__name__)

CONFLICT = 'CONFLICT'


class Status(str, Enum):
    SAT = 'SAT'
    UNSAT = 'UNSAT'


class Rule(str, Enum):
    PREDICTION = 'Prediction'
    RETRODICTION = 'Retrodiction'
    SUM_RULE = 'SumRule'
    EXCLUSIVITY = 'Exclusivity'


@define(frozen=True)
class TraceStep:
    premises: tuple = field(converter=tuple)
    rule: Rule
    conclusion: str # a label, or CONFLICT
    bit: int = None

    def __str__(self):
        premises = ', '.join(self.premises)
        if self.conclusion == CONFLICT:
            return f"{self.rule.value}({premises}) => CONFLICT"
        return f"{self.rule.value}({premises}) => {self.conclusion}={self.bit}"


@define(frozen=True)
class ContradictionTrace:
    given: tuple = field(converter=tuple) # the forced values the derivation starts from
    steps: tuple = field(converter=tuple)
    certified: bool = True

    @property
    def outcome(self):
        if self.certified:
            return CONFLICT
        return 'UNSAT without unit-propagation certificate'

    def lines(self):
        return [str(step) for step in self.steps]


@define(frozen=True)
class SatisfiabilityReport:
    status: Status
    witnesses: tuple = field(converter=tuple)
    assignments_examined: int
    conflict: ContradictionTrace = None


def _constraints(scenario, forced):
    labels = sorted(scenario.labels)
    index = {label: i for i, label in enumerate(labels)}
    contexts = [tuple(index[label] for label in c.members) for c in scenario.contexts]
    pairs = [(index[a], index[b]) for a, b in scenario.exclusive_pairs]
    fixed = {index[f.label]: f.bit for f in forced}
    return labels, contexts, pairs, fixed


def _scan_block(prefix, width, contexts, pairs, fixed, chunk=1 << 16):
    # rows come out in increasing code order, the leftmost label as the high bit
    shifts = np.arange(width - 1, -1, -1, dtype=np.int64)
    head = np.asarray(prefix, dtype=np.int8)
    found = []
    for start in range(0, 1 << width, chunk):
        codes = np.arange(start, min(start + chunk, 1 << width), dtype=np.int64)
        rest = ((codes[:, None] >> shifts) & 1).astype(np.int8)
        bits = np.hstack([np.broadcast_to(head, (len(codes), len(prefix))), rest])
        ok = np.ones(len(codes), dtype=bool)
        for i, bit in fixed.items():
            ok &= bits[:, i] == bit
        for context in contexts:
            ok &= bits[:, list(context)].sum(axis=1) == 1
        for i, j in pairs:
            ok &= (bits[:, i] & bits[:, j]) == 0
        found.extend(tuple(int(b) for b in row) for row in bits[ok])
    return found


def enumerate_assignments(scenario, forced, threads=1, limit=None):
    """
    Examine every 0/1 assignment over the scenario's labels.

    :parameter scenario: a valid PrePostScenario
    :parameter forced: list of ForcedValue the assignment has to extend
    :parameter threads: number of workers scanning disjoint prefix blocks
    :parameter limit: most projectors we agree to brute force (Config.ENUMERATION_LIMIT)
    """
    limit = Config.ENUMERATION_LIMIT if limit is None else limit
    labels, contexts, pairs, fixed = _constraints(scenario, forced)
    n = len(labels)
    if n > limit:
        raise EnumerationLimitError(f"{n} projectors is more than the {limit} we enumerate exhaustively")

    # split on the first few labels; blocks come back in prefix order, so the
    # merged witness list is lexicographic whatever the thread count
    prefix_bits = min(n, max(0, math.ceil(math.log2(threads)))) if threads > 1 else 0
    prefixes = list(itertools.product((0, 1), repeat=prefix_bits))
    width = n - prefix_bits
    if len(prefixes) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            blocks = list(pool.map(lambda pre: _scan_block(pre, width, contexts, pairs, fixed), prefixes))
    else:
        blocks = [_scan_block((), n, contexts, pairs, fixed)]

    witnesses = [ValueAssignment(dict(zip(labels, bits))) for block in blocks for bits in block]
    examined = 2 ** n
    logger.debug("examined %d assignments over %d labels, %d admissible", examined, n, len(witnesses))

    if witnesses:
        return SatisfiabilityReport(Status.SAT, witnesses, examined)
    return SatisfiabilityReport(Status.UNSAT, (), examined, propagate(scenario, forced))


def propagate(scenario, forced):
    """
    Unit propagation from the forced values.

    Each pass applies the first rule that fires, in this order: a conflict;
    a context whose other members are all 0 forcing its last member to 1;
    a context member at 1 forcing the rest to 0; an exclusive partner of a
    1 forced to 0.
    """
    known = {f.label: f.bit for f in forced}
    contexts = [c.members for c in scenario.contexts]
    pairs = list(scenario.exclusive_pairs)
    steps = []

    def conclude(premises, rule, label, bit):
        if label in known and known[label] != bit:
            steps.append(TraceStep(premises + (label,), rule, CONFLICT))
            return True
        known[label] = bit
        steps.append(TraceStep(premises, rule, label, bit))
        logger.debug("propagated %s", steps[-1])
        return False

    while True:
        conflict = _find_conflict(known, contexts, pairs)
        if conflict is not None:
            steps.append(conflict)
            return ContradictionTrace(forced, steps, certified=True)

        fired = False
        for members in contexts:
            unknown = [m for m in members if m not in known]
            if len(unknown) == 1 and all(known[m] == 0 for m in members if m in known):
                premises = tuple(m for m in members if m in known)
                if conclude(premises, Rule.SUM_RULE, unknown[0], 1):
                    return ContradictionTrace(forced, steps, certified=True)
                fired = True
                break
        if fired:
            continue

        for members in contexts:
            ones = [m for m in members if known.get(m) == 1]
            unknown = [m for m in members if m not in known]
            if ones and unknown:
                conclude((ones[0],), Rule.SUM_RULE, unknown[0], 0)
                fired = True
                break
        if fired:
            continue

        for a, b in pairs:
            for one, other in ((a, b), (b, a)):
                if known.get(one) == 1 and other not in known:
                    conclude((one,), Rule.EXCLUSIVITY, other, 0)
                    fired = True
                    break
            if fired:
                break
        if not fired:
            return ContradictionTrace(forced, steps, certified=False)


def _find_conflict(known, contexts, pairs):
    for a, b in pairs:
        if known.get(a) == 1 and known.get(b) == 1:
            return TraceStep((a, b), Rule.EXCLUSIVITY, CONFLICT)
    for members in contexts:
        ones = [m for m in members if known.get(m) == 1]
        if len(ones) > 1:
            return TraceStep(tuple(ones), Rule.SUM_RULE, CONFLICT)
        if all(known.get(m) == 0 for m in members):
            return TraceStep(tuple(members), Rule.SUM_RULE, CONFLICT)
    return None


def contradiction_trace(scenario, forced=None):
    """
    The derivation of the contradiction, when there is one.

    Raises NoContradictionError when some noncontextual assignment exists.
    """
    forced = forced_values(scenario) if forced is None else forced
    report = enumerate_assignments(scenario, forced)
    if report.status is Status.SAT:
        raise NoContradictionError()
    return report.conflict

"""
Single-seed iteration: the chain a = f_0(a), f_1(a), ... and its rho shape.

On a finite state set the chain must revisit some state. ``iterate`` records
every state until the first repeat and reports the exact tail length
(``preperiod``, the index i of the first state that recurs) and cycle length
(``period`` = j - i). A period of 1 means the chain reached a constant.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, FrozenSet, Optional, Tuple

from .digitspace import DigitString, strip_leading_zeros, to_integer
from .errors import MalformedTrajectory, StepBudgetExceeded, ValidationError, WidthMismatch
from .operators import (
    OperatorSpec,
    ZeroPolicy,
    apply,
    operator_spec_from_dict,
    operator_spec_to_dict,
)

_log = logging.getLogger(__name__)

PADDED_KEY = 'padded'
INTEGER_KEY = 'integer'


class Outcome(str, Enum):
    REACHED_ZERO_CONSTANT = 'reached_zero_constant'
    REACHED_CONSTANT = 'reached_constant'
    REACHED_CYCLE = 'reached_cycle'


@dataclass(frozen=True)
class Trajectory:
    """The distinct states of one chain plus its rho decomposition.

    ``states`` holds exactly ``preperiod + period`` pairwise distinct states;
    applying the operator to the last one gives ``states[preperiod]`` again.
    """

    spec: OperatorSpec
    seed: DigitString
    states: Tuple[DigitString, ...]
    preperiod: int
    period: int
    outcome: Outcome
    state_key: str = PADDED_KEY

    @property
    def tail(self) -> Tuple[DigitString, ...]:
        return self.states[:self.preperiod]

    @property
    def cycle(self) -> Tuple[DigitString, ...]:
        return self.states[self.preperiod:]

    @property
    def cycle_set(self) -> FrozenSet[int]:
        return frozenset(to_integer(s) for s in self.cycle)

    @property
    def steps(self) -> int:
        """Applications of f needed to see the first repeat."""
        return self.preperiod + self.period

    def to_dict(self) -> Dict[str, Any]:
        return {
            'operator': operator_spec_to_dict(self.spec),
            'seed': str(self.seed),
            'states': [str(s) for s in self.states],
            'preperiod': self.preperiod,
            'period': self.period,
            'outcome': self.outcome.value,
            'state_key': self.state_key,
        }

    @classmethod
    def from_dict(cls, obj: Dict[str, Any]) -> "Trajectory":
        return cls(
            spec=operator_spec_from_dict(obj['operator']),
            seed=DigitString.parse(obj['seed']),
            states=tuple(DigitString.parse(s) for s in obj['states']),
            preperiod=obj['preperiod'],
            period=obj['period'],
            outcome=Outcome(obj['outcome']),
            state_key=obj.get('state_key', PADDED_KEY),
        )


def _outcome_of(states, preperiod: int, period: int) -> Outcome:
    if period != 1:
        return Outcome.REACHED_CYCLE
    if to_integer(states[preperiod]) == 0:
        return Outcome.REACHED_ZERO_CONSTANT
    return Outcome.REACHED_CONSTANT


def iterate(spec: OperatorSpec, seed: DigitString, max_steps: Optional[int] = None) -> Trajectory:
    """Iterate ``spec`` from ``seed`` until the first repeated state.

    Parameters
    ----------
    spec:
        The operator.
    seed:
        Start state; must have the operator width (under shrink it may be
        narrower and is first re-encoded at its natural width).
    max_steps:
        Budget of operator applications. Defaults to ``10**width + 1``,
        which the pigeonhole bound guarantees is never reached.

    Returns
    -------
    Trajectory

    Raises
    ------
    StepBudgetExceeded
        Only when ``max_steps`` is below what this seed needs.

    Examples
    --------
        >>> from ank.operators import preset
        >>> t = iterate(preset('perm_diff_231_132'), DigitString.parse('125'))
        >>> [str(s) for s in t.states], t.preperiod, t.period
        (['125', '099', '891'], 1, 2)
    """
    shrink = spec.zero_policy is ZeroPolicy.SHRINK
    if shrink:
        if seed.width > spec.width:
            raise WidthMismatch(f"seed {seed} is wider than the operator width {spec.width}")
        # integer keying is only sound if every state sits at its natural width
        seed = strip_leading_zeros(seed)
    elif seed.width != spec.width:
        raise WidthMismatch(f"seed {seed} has width {seed.width}, operator width is {spec.width}")

    budget = spec.state_count + 1 if max_steps is None else max_steps
    if budget < 1:
        raise ValidationError(f"max_steps must be >= 1, got {max_steps}", invariant='max_steps')

    states = [seed]
    first_seen = {to_integer(seed): 0}
    while True:
        if len(states) > budget:
            raise StepBudgetExceeded(
                f"no repeat within {budget} step(s) from seed {seed}", budget=budget, seen=len(states))
        nxt = apply(spec, states[-1])
        key = to_integer(nxt)
        if key in first_seen:
            preperiod = first_seen[key]
            break
        first_seen[key] = len(states)
        states.append(nxt)

    period = len(states) - preperiod
    _log.debug("%s from %s: preperiod=%d period=%d", spec.kind.value, seed, preperiod, period)
    return Trajectory(
        spec=spec,
        seed=seed,
        states=tuple(states),
        preperiod=preperiod,
        period=period,
        outcome=_outcome_of(states, preperiod, period),
        state_key=INTEGER_KEY if shrink else PADDED_KEY,
    )


def classify(traj: Trajectory) -> Outcome:
    """Re-check every Trajectory invariant and return its outcome label.

    Raises
    ------
    MalformedTrajectory
        If the stored states, indices or label are inconsistent.
    """
    states = traj.states
    if traj.period < 1 or traj.preperiod < 0:
        raise MalformedTrajectory(f"bad indices preperiod={traj.preperiod} period={traj.period}")
    if len(states) != traj.preperiod + traj.period:
        raise MalformedTrajectory(
            f"{len(states)} states stored, expected preperiod + period = {traj.steps}")
    if states[0] != traj.seed:
        raise MalformedTrajectory(f"first state {states[0]} is not the seed {traj.seed}")
    keys = [to_integer(s) for s in states]
    if len(set(keys)) != len(keys):
        raise MalformedTrajectory("stored states are not pairwise distinct")
    if traj.preperiod + traj.period > traj.spec.state_count:
        raise MalformedTrajectory("trajectory longer than the state space")

    for t in range(len(states) - 1):
        if apply(traj.spec, states[t]) != states[t + 1]:
            raise MalformedTrajectory(f"state {t + 1} is not f(state {t})")
    if to_integer(apply(traj.spec, states[-1])) != keys[traj.preperiod]:
        raise MalformedTrajectory("the last state does not lead back to states[preperiod]")

    expected = _outcome_of(states, traj.preperiod, traj.period)
    if traj.outcome is not expected:
        raise MalformedTrajectory(f"outcome {traj.outcome.value} should be {expected.value}")
    return expected

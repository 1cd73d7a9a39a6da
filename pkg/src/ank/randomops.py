"""
Random operators: a fixed pseudorandom function versus fresh randomness.

Two readings of "a random operator" are kept apart here:

* fixed mode: ``b = fixed_random_step(seed, a)`` is a deterministic function of
  ``(seed, a)``. For one seed it is a genuine map A -> A, so every trajectory
  ends in a cycle within 10**k steps.
* fresh mode: every successor is a new draw. Values repeat (pigeonhole), but
  what follows a repeated value need not match what followed it before.

The mixing function is the split-mix 64-bit finalizer with its published
constants, so atlases of FixedRandom operators are identical everywhere.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

import numpy as np

from .digitspace import BASE, DigitString, from_integer, to_integer
from .errors import ValidationError

_log = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

FIXED = 'fixed'
FRESH = 'fresh'


def mix64(x: int) -> int:
    """Split-mix 64-bit avalanche finalizer (all arithmetic mod 2**64).

    Examples
    --------
        >>> hex(mix64(0))
        '0xe220a8397b1dcdaf'
    """
    z = (x + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def mix64_array(x: np.ndarray) -> np.ndarray:
    """``mix64`` over a uint64 array; wraps modulo 2**64 like the scalar."""
    z = np.asarray(x, dtype=np.uint64) + np.uint64(GOLDEN_GAMMA)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def fixed_random_step(seed: int, ds: DigitString) -> DigitString:
    """Deterministic pseudorandom successor of ``ds`` for a given seed."""
    value = mix64((seed & MASK64) ^ to_integer(ds)) % (BASE ** ds.width)
    return from_integer(value, ds.width)


class SplitMixStream:
    """Sequential generator: draw t is ``mix64(seed + t * GOLDEN_GAMMA)``.

    This is the standard split-mix stream, so the first draw from seed 0 is
    the generator's published first output.
    """

    def __init__(self, seed: int):
        self.seed = seed
        self._state = seed & MASK64

    def next(self) -> int:
        out = mix64(self._state)
        self._state = (self._state + GOLDEN_GAMMA) & MASK64
        return out

    def below(self, bound: int) -> int:
        # modulo bias is < 2**-40 for bound <= 10**9
        return self.next() % bound


@dataclass(frozen=True)
class WalkReport:
    """Outcome of one random walk.

    ``first_repeat_index`` is the index (into the visited sequence) of the
    first value that had been seen before. In fresh mode ``repeat_consistent``
    says whether the value drawn after that repeat equals the value that
    followed its earlier occurrence. In fixed mode ``preperiod``/``period``
    summarize the trajectory.
    """

    mode: str
    seed: int
    width: int
    steps_taken: int
    first_repeat_index: Optional[int] = None
    repeat_consistent: Optional[bool] = None
    preperiod: Optional[int] = None
    period: Optional[int] = None
    states: tuple = field(default=(), repr=False, compare=True)

    @property
    def trajectory_summary(self) -> Optional[Dict[str, int]]:
        if self.preperiod is None:
            return None
        return {'preperiod': self.preperiod, 'period': self.period}

    def to_dict(self, include_states: bool = False) -> Dict:
        out = {
            'mode': self.mode,
            'seed': self.seed,
            'width': self.width,
            'steps_taken': self.steps_taken,
            'first_repeat_index': self.first_repeat_index,
            'repeat_consistent': self.repeat_consistent,
            'trajectory_summary': self.trajectory_summary,
        }
        if include_states:
            out['states'] = [str(from_integer(s, self.width)) for s in self.states]
        return out


def _check_walk_args(width: int, max_steps: Optional[int]):
    from_integer(0, width)  # width range check
    if max_steps is not None and max_steps < 1:
        raise ValidationError(f"max_steps must be >= 1, got {max_steps}", invariant='max_steps')


def fresh_random_walk(seed: int, width: int, max_steps: Optional[int] = None) -> WalkReport:
    """Walk with a fresh draw at every step until a value repeats, then one more.

    Parameters
    ----------
    seed:
        Seed of the split-mix stream.
    width:
        Digit width k; values are drawn from ``[0, 10**k)``.
    max_steps:
        Cap on draws after the start value (default ``10**k + 1``, enough for
        the pigeonhole repeat plus the follow-up draw). A repeat found on the
        last allowed draw still gets its follow-up draw, so ``steps_taken``
        can be ``max_steps + 1`` and ``repeat_consistent`` is always set once
        a repeat occurs.
    """
    _check_walk_args(width, max_steps)
    space = BASE ** width
    budget = space + 1 if max_steps is None else max_steps
    stream = SplitMixStream(seed)

    states = [stream.below(space)]
    first_seen = {states[0]: 0}
    repeat_at = None
    while len(states) - 1 < budget:
        value = stream.below(space)
        states.append(value)
        if repeat_at is not None:
            break
        if value in first_seen:
            repeat_at = len(states) - 1
        else:
            first_seen[value] = len(states) - 1
    if repeat_at is not None and repeat_at + 1 == len(states):
        states.append(stream.below(space))

    consistent = None
    if repeat_at is not None:
        earlier = first_seen[states[repeat_at]]
        consistent = states[repeat_at + 1] == states[earlier + 1]

    return WalkReport(
        mode=FRESH, seed=seed, width=width, steps_taken=len(states) - 1,
        first_repeat_index=repeat_at, repeat_consistent=consistent,
        states=tuple(states))


def fixed_random_walk(seed: int, width: int, max_steps: Optional[int] = None) -> WalkReport:
    """Iterate the FixedRandom operator for ``seed`` from the stream's first draw."""
    from .dynamics import iterate
    from .operators import FixedRandomParams, OperatorKind, OperatorSpec

    _check_walk_args(width, max_steps)
    spec = OperatorSpec(OperatorKind.FIXED_RANDOM, width, FixedRandomParams(seed))
    start = from_integer(SplitMixStream(seed).below(BASE ** width), width)
    traj = iterate(spec, start, max_steps=max_steps)
    seen = traj.preperiod + traj.period
    return WalkReport(
        mode=FIXED, seed=seed, width=width, steps_taken=seen,
        first_repeat_index=seen, preperiod=traj.preperiod, period=traj.period,
        states=tuple(to_integer(s) for s in traj.states))


def random_walk(mode: str, seed: int, width: int, max_steps: Optional[int] = None) -> WalkReport:
    if mode == FIXED:
        return fixed_random_walk(seed, width, max_steps)
    if mode == FRESH:
        return fresh_random_walk(seed, width, max_steps)
    raise ValidationError(f"unknown walk mode {mode!r}", invariant='mode')


def sweep(mode: str, seeds: Iterable[int], width: int,
          max_steps: Optional[int] = None) -> List[WalkReport]:
    """One walk per seed, in seed order."""
    reports = [random_walk(mode, s, width, max_steps) for s in seeds]
    _log.info("%s sweep: %d walks at width %d", mode, len(reports), width)
    return reports


def repeat_consistency_rate(reports: Iterable[WalkReport]) -> float:
    """Fraction of fresh walks with a repeat whose follow-up matched."""
    decided = [r.repeat_consistent for r in reports if r.repeat_consistent is not None]
    if not decided:
        return 0.0
    return sum(decided) / len(decided)

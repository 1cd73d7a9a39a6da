"""
Exhaustive functional-graph analysis of one operator over all 10**k states.

``build_successors`` materializes f as a dense table (numpy kernels over
chunks, optionally on a thread pool). ``analyze`` finds every cycle with a
single three-colour pass and assigns each state its transient length and
owning cycle by memoized path walking. The resulting ``AtlasReport`` answers
per operator/width: the longest transient (with a witness), the cycles and
the longest one, the fixed points, the zero basin, the states with f(a) = 0
and the split between constant-reaching and cycle-reaching states.

Reports are deterministic: cycles are rotated to start at their minimum
state and sorted by it, and the table never depends on the thread count.
"""

import logging
import os
import time
from array import array
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np

from .digitspace import BASE, from_integer, to_integer
from .dynamics import iterate
from .errors import ShrinkPolicyUnsupported, ValidationError, WidthTooLarge
from .operators import (
    OperatorSpec,
    ZeroPolicy,
    apply,
    batch_apply,
    operator_spec_from_dict,
    operator_spec_to_dict,
    with_width,
)

_log = logging.getLogger(__name__)

DEFAULT_WIDTH_CEILING = 7
HARD_WIDTH_CAP = 9
DEFAULT_CHUNK = 1 << 16
ORACLE_MAX_WIDTH = 4

_UNVISITED, _ON_PATH, _DONE = 0, 1, 2


@dataclass(frozen=True)
class SuccessorTable:
    """``succ[n]`` is the successor of state ``n`` (as an integer)."""

    spec: OperatorSpec
    succ: np.ndarray

    @property
    def width(self) -> int:
        return self.spec.width

    def __len__(self):
        return len(self.succ)


@dataclass(frozen=True)
class Cycle:
    cycle_id: int
    states: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.states)

    @property
    def minimum(self) -> int:
        return self.states[0]


@dataclass(frozen=True)
class AtlasReport:
    """Functional-graph summary of one operator at one width.

    Attributes
    ----------
    cycles:
        All cycles, each rotated to start at its minimum, sorted by minimum;
        ``cycle_id`` is the position in this list.
    fixed_points:
        States with f(n) == n (the length-1 cycles).
    max_transient, max_transient_witness:
        Longest number of steps before entering a cycle and the smallest
        state that needs them.
    transient_histogram:
        Transient length -> number of states.
    basin_sizes:
        Cycle id -> number of states that drain into that cycle.
    zero_basin_count:
        States that eventually reach 0 (0 unless all-zeros lies on a cycle).
    zero_preimage_count:
        States with f(n) == 0.
    constant_reaching_count, cycle_reaching_count:
        States ending on a fixed point versus on a longer cycle.
    """

    spec: OperatorSpec
    cycles: Tuple[Cycle, ...]
    fixed_points: Tuple[int, ...]
    max_transient: int
    max_transient_witness: int
    transient_histogram: Dict[int, int]
    basin_sizes: Dict[int, int]
    zero_basin_count: int
    zero_preimage_count: int
    constant_reaching_count: int
    cycle_reaching_count: int

    @property
    def width(self) -> int:
        return self.spec.width

    @property
    def state_count(self) -> int:
        return self.spec.state_count

    @property
    def longest_cycle(self) -> int:
        return max(c.length for c in self.cycles)

    @property
    def nonzero_fixed_points(self) -> Tuple[int, ...]:
        return tuple(n for n in self.fixed_points if n != 0)

    def cycle_of(self, state: int) -> Optional[Cycle]:
        for c in self.cycles:
            if state in c.states:
                return c
        return None

    def to_dict(self) -> Dict[str, Any]:
        fmt = lambda n: str(from_integer(n, self.width))
        return {
            'operator': operator_spec_to_dict(self.spec),
            'state_count': self.state_count,
            'cycles': [
                {'id': c.cycle_id, 'length': c.length, 'states': [fmt(s) for s in c.states],
                 'basin_size': self.basin_sizes[c.cycle_id]}
                for c in self.cycles
            ],
            'fixed_points': [fmt(n) for n in self.fixed_points],
            'longest_cycle': self.longest_cycle,
            'max_transient': self.max_transient,
            'max_transient_witness': fmt(self.max_transient_witness),
            'transient_histogram': {str(k): v for k, v in sorted(self.transient_histogram.items())},
            'zero_basin_count': self.zero_basin_count,
            'zero_preimage_count': self.zero_preimage_count,
            'constant_reaching_count': self.constant_reaching_count,
            'cycle_reaching_count': self.cycle_reaching_count,
        }

    @classmethod
    def from_dict(cls, obj: Dict[str, Any]) -> "AtlasReport":
        cycles = tuple(Cycle(c['id'], tuple(int(s) for s in c['states'])) for c in obj['cycles'])
        return cls(
            spec=operator_spec_from_dict(obj['operator']),
            cycles=cycles,
            fixed_points=tuple(int(n) for n in obj['fixed_points']),
            max_transient=obj['max_transient'],
            max_transient_witness=int(obj['max_transient_witness']),
            transient_histogram={int(k): v for k, v in obj['transient_histogram'].items()},
            basin_sizes={c['id']: c['basin_size'] for c in obj['cycles']},
            zero_basin_count=obj['zero_basin_count'],
            zero_preimage_count=obj['zero_preimage_count'],
            constant_reaching_count=obj['constant_reaching_count'],
            cycle_reaching_count=obj['cycle_reaching_count'],
        )


def _check_buildable(spec: OperatorSpec, width: int, max_width: int):
    if spec.zero_policy is not ZeroPolicy.PAD:
        raise ShrinkPolicyUnsupported(
            "the atlas enumerates a fixed-width state space; use the pad policy",
            invariant='zero_policy')
    if width != spec.width:
        raise ValidationError(f"width {width} differs from the operator width {spec.width}",
                              invariant='width')
    ceiling = min(max_width, HARD_WIDTH_CAP)
    if width > ceiling:
        raise WidthTooLarge(
            f"width {width} needs a table of 10**{width} entries; the ceiling is {ceiling}"
            f" (hard cap {HARD_WIDTH_CAP})")


def build_successors(spec: OperatorSpec, width: Optional[int] = None, *,
                     threads: Optional[int] = None, chunk: int = DEFAULT_CHUNK,
                     max_width: int = DEFAULT_WIDTH_CEILING,
                     vectorized: bool = True) -> SuccessorTable:
    """Apply the operator to every state of width k.

    Parameters
    ----------
    spec:
        Operator (pad policy).
    width:
        Must equal ``spec.width``; defaults to it.
    threads:
        Worker threads for the chunked kernels (default: CPU count). The
        table is identical for any value.
    chunk:
        States per work item.
    max_width:
        Memory ceiling; widths above it raise ``WidthTooLarge``.
    vectorized:
        ``False`` evaluates the scalar ``apply`` state by state (slow oracle).

    Raises
    ------
    WidthTooLarge, ShrinkPolicyUnsupported
    """
    width = spec.width if width is None else width
    _check_buildable(spec, width, max_width)
    size = BASE ** width
    # int32 holds 10**9 - 1
    succ = np.empty(size, dtype=np.int32)
    started = time.perf_counter()

    if not vectorized:
        for n in range(size):
            succ[n] = to_integer(apply(spec, from_integer(n, width)))
    else:
        bounds = [(lo, min(lo + chunk, size)) for lo in range(0, size, chunk)]

        def fill(bound):
            lo, hi = bound
            succ[lo:hi] = batch_apply(spec, np.arange(lo, hi, dtype=np.int64))

        workers = threads or os.cpu_count() or 1
        if workers <= 1 or len(bounds) == 1:
            for b in bounds:
                fill(b)
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                list(pool.map(fill, bounds))

    succ.flags.writeable = False
    _log.info("built %d successors for %s in %.2fs", size, spec.describe(),
              time.perf_counter() - started)
    return SuccessorTable(spec, succ)


def _walk(succ_arr: np.ndarray):
    """Three-colour cycle pass plus memoized transients.

    Returns (cycles in discovery order, transient array, owner array) where
    owner holds the discovery index of each state's cycle.
    """
    size = len(succ_arr)
    succ = array('i', np.ascontiguousarray(succ_arr, dtype=np.intc).tobytes())
    color = bytearray(size)
    # position on the current path while a state is _ON_PATH
    path_pos = array('i', bytes(4 * size))
    transient = array('i', bytes(4 * size))
    owner = array('i', bytes(4 * size))
    cycles: List[List[int]] = []

    for start in range(size):
        if color[start]:
            continue
        path = []
        x = start
        while color[x] == _UNVISITED:
            color[x] = _ON_PATH
            path_pos[x] = len(path)
            path.append(x)
            x = succ[x]

        if color[x] == _ON_PATH:
            entry = path_pos[x]
            cycle = path[entry:]
            cid = len(cycles)
            cycles.append(cycle)
            for s in cycle:
                transient[s] = 0
                owner[s] = cid
                color[s] = _DONE
            del path[entry:]
            depth = 0
        else:
            depth, cid = transient[x], owner[x]

        for s in reversed(path):
            depth += 1
            transient[s] = depth
            owner[s] = cid
            color[s] = _DONE

    return cycles, transient, owner


def _canonical_cycles(raw_cycles: List[List[int]]) -> Tuple[List[Cycle], np.ndarray]:
    """Rotate each cycle to its minimum and sort by minimum.

    Returns the cycles and ``remap[discovery_id] = cycle_id``.
    """
    rotated = []
    for found_id, cyc in enumerate(raw_cycles):
        k = cyc.index(min(cyc))
        rotated.append((cyc[k:] + cyc[:k], found_id))
    rotated.sort(key=lambda item: item[0][0])
    remap = np.empty(len(rotated), dtype=np.int64)
    cycles = []
    for new_id, (states, found_id) in enumerate(rotated):
        remap[found_id] = new_id
        cycles.append(Cycle(new_id, tuple(states)))
    return cycles, remap


def analyze(table: SuccessorTable) -> AtlasReport:
    """Full functional-graph report for a successor table.

    Examples
    --------
        >>> from ank.operators import preset
        >>> analyze(build_successors(preset('kaprekar4'))).nonzero_fixed_points
        (6174,)
    """
    return _analyze(table)[0]


def _analyze(table: SuccessorTable) -> Tuple[AtlasReport, np.ndarray, np.ndarray]:
    """``analyze`` plus the per-state transient and owning cycle id arrays."""
    started = time.perf_counter()
    succ = table.succ
    raw_cycles, transient, owner = _walk(succ)

    cycles, remap = _canonical_cycles(raw_cycles)

    transient_arr = np.frombuffer(transient, dtype=np.intc)
    owner_arr = remap[np.frombuffer(owner, dtype=np.intc)]

    basin_counts = np.bincount(owner_arr, minlength=len(cycles))
    basin_sizes = {c.cycle_id: int(basin_counts[c.cycle_id]) for c in cycles}
    hist = np.bincount(transient_arr)
    transient_histogram = {t: int(n) for t, n in enumerate(hist) if n}
    witness = int(np.argmax(transient_arr))

    fixed_points = tuple(c.states[0] for c in cycles if c.length == 1)
    constant_reaching = sum(basin_sizes[c.cycle_id] for c in cycles if c.length == 1)

    zero_cycle = next((c for c in cycles if 0 in c.states), None)
    zero_basin = basin_sizes[zero_cycle.cycle_id] if zero_cycle is not None else 0

    report = AtlasReport(
        spec=table.spec,
        cycles=tuple(cycles),
        fixed_points=fixed_points,
        max_transient=int(transient_arr[witness]),
        max_transient_witness=witness,
        transient_histogram=transient_histogram,
        basin_sizes=basin_sizes,
        zero_basin_count=zero_basin,
        zero_preimage_count=int(np.count_nonzero(succ == 0)),
        constant_reaching_count=constant_reaching,
        cycle_reaching_count=len(succ) - constant_reaching,
    )
    _log.info("analyzed %s: %d cycle(s), max transient %d, %.2fs", table.spec.describe(),
              len(cycles), report.max_transient, time.perf_counter() - started)
    return report, transient_arr, owner_arr


def build_atlas(spec: OperatorSpec, **kwargs) -> AtlasReport:
    """``analyze(build_successors(spec, **kwargs))``."""
    return analyze(build_successors(spec, **kwargs))


@dataclass(frozen=True)
class VerificationResult:
    """Outcome of the atlas-versus-iterate oracle; truthy iff they agree."""

    ok: bool
    report: AtlasReport
    counterexample: Optional[int] = None
    detail: str = ''

    def __bool__(self):
        return self.ok


def verify_against_trajectories(spec: OperatorSpec, width: Optional[int] = None) -> VerificationResult:
    """Check the atlas against ``iterate`` from every seed.

    For each state, the trajectory's preperiod, period and cycle set must
    equal the atlas transient, the length and states of the cycle the atlas
    assigns it to. Basin sizes must equal the number of seeds whose
    trajectory ends in each cycle.
    """
    width = spec.width if width is None else width
    if width > ORACLE_MAX_WIDTH:
        raise WidthTooLarge(f"the trajectory oracle is limited to width {ORACLE_MAX_WIDTH}")
    table = build_successors(spec, width)
    report, transient, owner = _analyze(table)
    cycle_by_state = {s: c for c in report.cycles for s in c.states}
    reached = dict.fromkeys(report.basin_sizes, 0)

    def disagree(n: Optional[int], detail: str) -> VerificationResult:
        _log.warning("oracle disagreement for %s at %s", spec.describe(), detail)
        return VerificationResult(False, report, n, detail)

    for n in range(table.spec.state_count):
        traj = iterate(spec, from_integer(n, width))
        found = cycle_by_state.get(next(iter(traj.cycle_set)))
        if found is not None:
            reached[found.cycle_id] += 1
        assigned = report.cycles[int(owner[n])]
        problems = []
        if traj.preperiod != transient[n]:
            problems.append(f"transient {traj.preperiod} != {transient[n]}")
        if traj.cycle_set != frozenset(assigned.states):
            problems.append(f"cycle set differs from cycle #{assigned.cycle_id}")
        elif traj.period != assigned.length:
            problems.append(f"period {traj.period} != {assigned.length}")
        if problems:
            return disagree(n, f"state {from_integer(n, width)}: " + '; '.join(problems))

    for cid, size in report.basin_sizes.items():
        if reached[cid] != size:
            return disagree(None, f"basin of cycle #{cid}: {size} != {reached[cid]} trajectories")
    return VerificationResult(True, report)


def survey(spec: OperatorSpec, widths: Iterable[int], **kwargs) -> List[Dict[str, Any]]:
    """One summary row per width for the same operator family.

    Only meaningful for kinds whose parameters do not fix the width
    (kaprekar, reverse_diff, digit_shift_sub, affine_mod, digit_power_sum,
    fixed_random).
    """
    rows = []
    for w in widths:
        report = build_atlas(with_width(spec, w), **kwargs)
        rows.append({
            'width': w,
            'cycles': len(report.cycles),
            'longest_cycle': report.longest_cycle,
            'fixed_points': len(report.fixed_points),
            'nonzero_fixed_points': [str(from_integer(n, w)) for n in report.nonzero_fixed_points],
            'max_transient': report.max_transient,
            'max_transient_witness': str(from_integer(report.max_transient_witness, w)),
            'zero_basin_count': report.zero_basin_count,
            'constant_reaching_count': report.constant_reaching_count,
            'cycle_reaching_count': report.cycle_reaching_count,
        })
    return rows

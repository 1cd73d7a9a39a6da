"""
Rendering helpers for ank outputs.

Plain-text, JSON, CSV and graphviz DOT views of trajectories, atlas reports
and random walks. Everything here is deterministic: the same input renders
to the same bytes unless ``timestamps=True`` is asked for.
"""

import csv
import datetime
import io
import json
from typing import Any, Dict, Iterable, List, Optional

from .atlas import AtlasReport, SuccessorTable
from .digitspace import from_integer
from .dynamics import INTEGER_KEY, Trajectory
from .errors import WidthTooLarge
from .operators import OperatorKind, PARAM_SCHEMAS, PRESETS
from .randomops import FIXED, WalkReport, repeat_consistency_rate

CSV_SCHEMA = 'schema=1'
FULL_GRAPH_MAX_WIDTH = 3


def to_json(obj: Dict[str, Any], timestamps: bool = False) -> str:
    """Sorted-key, indented JSON; ``generated_at`` only when asked for."""
    if timestamps:
        obj = dict(obj, generated_at=datetime.datetime.now(datetime.timezone.utc).isoformat())
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def render_trajectory(traj: Trajectory) -> str:
    """
    One state per line, then the state the chain returns to and a summary.

    Example output:
        125
        396
        ...
        693
        -> 297 (cycle)
        preperiod=2 period=5 outcome=reached_cycle
    """
    lines = [str(s) for s in traj.states]
    lines.append(f"-> {traj.states[traj.preperiod]} (cycle)")
    summary = f"preperiod={traj.preperiod} period={traj.period} outcome={traj.outcome.value}"
    if traj.state_key == INTEGER_KEY:
        summary += f" state_key={INTEGER_KEY}"
    lines.append(summary)
    return '\n'.join(lines)


def trajectory_to_csv(traj: Trajectory) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(['schema', 'index', 'state', 'role'])
    for i, s in enumerate(traj.states):
        writer.writerow([CSV_SCHEMA, i, str(s), 'tail' if i < traj.preperiod else 'cycle'])
    return buf.getvalue()


def trajectory_to_dot(traj: Trajectory) -> str:
    """The chain as a DOT digraph; the closing edge back into the cycle is bold."""
    lines = ['digraph trajectory {', f'\tlabel="{traj.spec.describe()} from {traj.seed}";']
    for s in traj.states:
        lines.append(f'\t"{s}";')
    for a, b in zip(traj.states, traj.states[1:]):
        lines.append(f'\t"{a}" -> "{b}";')
    lines.append(f'\t"{traj.states[-1]}" -> "{traj.states[traj.preperiod]}" [style=bold];')
    lines.append('}')
    return '\n'.join(lines) + '\n'


def render_atlas(report: AtlasReport, max_listed: int = 20) -> str:
    """Human-readable atlas summary (long cycles are abbreviated)."""
    fmt = lambda n: str(from_integer(n, report.width))
    out = [
        f"operator: {report.spec.describe()}",
        f"states: {report.state_count}",
        f"cycles: {len(report.cycles)} (longest {report.longest_cycle})",
    ]
    for c in report.cycles[:max_listed]:
        shown = ' '.join(fmt(s) for s in c.states[:12])
        if c.length > 12:
            shown += ' ...'
        out.append(f"  #{c.cycle_id} len={c.length} basin={report.basin_sizes[c.cycle_id]}: {shown}")
    if len(report.cycles) > max_listed:
        out.append(f"  ... {len(report.cycles) - max_listed} more")

    fixed = ' '.join(fmt(n) for n in report.fixed_points[:max_listed])
    out.append(f"fixed points: {len(report.fixed_points)} {fixed}".rstrip())
    out.append(f"max transient: {report.max_transient} (witness {fmt(report.max_transient_witness)})")
    out.append("transient histogram:")
    for t, n in sorted(report.transient_histogram.items()):
        out.append(f"  {t:>4}: {n}")
    out.append(f"zero basin: {report.zero_basin_count}")
    out.append(f"f(a) = 0: {report.zero_preimage_count}")
    out.append(f"reach a constant: {report.constant_reaching_count}")
    out.append(f"reach a longer cycle: {report.cycle_reaching_count}")
    return '\n'.join(out)


def atlas_to_csv(report: AtlasReport) -> str:
    """
    Fixed CSV schema; every row starts with the schema version.

    Columns: schema, record, id, length, min_state, count. ``cycle`` rows fill
    id/length/min_state/count (basin size); ``transient`` rows fill
    length/count.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(['schema', 'record', 'id', 'length', 'min_state', 'count'])
    for c in report.cycles:
        writer.writerow([CSV_SCHEMA, 'cycle', c.cycle_id, c.length,
                         str(from_integer(c.minimum, report.width)), report.basin_sizes[c.cycle_id]])
    for t, n in sorted(report.transient_histogram.items()):
        writer.writerow([CSV_SCHEMA, 'transient', '', t, '', n])
    return buf.getvalue()


def atlas_to_dot(report: AtlasReport, table: Optional[SuccessorTable] = None) -> str:
    """
    Graphviz digraph of the cycle structure.

    Without ``table``: one box per cycle, labeled with its length and basin
    size (the condensed graph has no edges; every component is one cycle).
    With a ``table`` of width <= 3: every state and its edge, cycle states
    drawn as double circles.

    Render with e.g. ``dot -Tpng -O atlas.gv``.
    """
    lines = ['digraph atlas {', f'\tlabel="{report.spec.describe()}";']
    fmt = lambda n: str(from_integer(n, report.width))
    if table is None:
        for c in report.cycles:
            label = f"cycle {c.cycle_id}\\nlen={c.length} basin={report.basin_sizes[c.cycle_id]}\\nmin={fmt(c.minimum)}"
            lines.append(f'\t"c{c.cycle_id}" [shape=box, label="{label}"];')
    else:
        if table.width > FULL_GRAPH_MAX_WIDTH:
            raise WidthTooLarge(f"full state graph is limited to width {FULL_GRAPH_MAX_WIDTH}")
        on_cycle = {s for c in report.cycles for s in c.states}
        for n in range(len(table)):
            shape = 'doublecircle' if n in on_cycle else 'circle'
            lines.append(f'\t"{fmt(n)}" [shape={shape}];')
        for n, m in enumerate(table.succ.tolist()):
            style = ' [style=bold]' if n in on_cycle else ''
            lines.append(f'\t"{fmt(n)}" -> "{fmt(m)}"{style};')
    lines.append('}')
    return '\n'.join(lines) + '\n'


def render_walks(reports: List[WalkReport]) -> str:
    """One line per walk plus a summary line per mode."""
    out = []
    for r in reports:
        if r.mode == FIXED:
            out.append(f"fixed seed={r.seed} k={r.width} preperiod={r.preperiod} "
                       f"period={r.period} first_repeat={r.first_repeat_index}")
        else:
            out.append(f"fresh seed={r.seed} k={r.width} steps={r.steps_taken} "
                       f"first_repeat={r.first_repeat_index} repeat_consistent={r.repeat_consistent}")
    fixed = [r for r in reports if r.mode == FIXED]
    fresh = [r for r in reports if r.mode != FIXED]
    if fixed:
        cyc = sum(1 for r in fixed if r.period is not None)
        longest = max(r.period for r in fixed)
        out.append(f"fixed: {cyc}/{len(fixed)} walks reached a cycle (longest period {longest})")
    if fresh:
        out.append(f"fresh: {len(fresh)} walks, repeat_consistent rate "
                   f"{repeat_consistency_rate(fresh):.4f}")
    return '\n'.join(out)


def walks_to_csv(reports: Iterable[WalkReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(['schema', 'mode', 'seed', 'width', 'steps_taken', 'first_repeat_index',
                     'repeat_consistent', 'preperiod', 'period'])
    blank = lambda v: '' if v is None else v
    for r in reports:
        writer.writerow([CSV_SCHEMA, r.mode, r.seed, r.width, r.steps_taken,
                         blank(r.first_repeat_index), blank(r.repeat_consistent),
                         blank(r.preperiod), blank(r.period)])
    return buf.getvalue()


def survey_to_csv(rows: List[Dict[str, Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    cols = ['width', 'cycles', 'longest_cycle', 'fixed_points', 'max_transient',
            'max_transient_witness', 'zero_basin_count', 'constant_reaching_count',
            'cycle_reaching_count']
    writer.writerow(['schema'] + cols)
    for row in rows:
        writer.writerow([CSV_SCHEMA] + [row[c] for c in cols])
    return buf.getvalue()


def render_survey(rows: List[Dict[str, Any]]) -> str:
    out = [f"{'k':>2} | {'cycles':>6} | {'longest':>7} | {'fixed':>5} | {'max_tr':>6} | nonzero fixed points"]
    for r in rows:
        nz = ' '.join(r['nonzero_fixed_points'][:8])
        out.append(f"{r['width']:>2} | {r['cycles']:>6} | {r['longest_cycle']:>7} | "
                   f"{r['fixed_points']:>5} | {r['max_transient']:>6} | {nz}")
    return '\n'.join(out)


def ops_catalog() -> Dict[str, Any]:
    return {
        'kinds': {kind.value: PARAM_SCHEMAS[kind] for kind in OperatorKind},
        'presets': dict(sorted(PRESETS.items())),
    }


def ops_to_csv() -> str:
    """
    Columns: schema, record, name, param, type, required, value. ``param``
    rows list one parameter of a kind (value is its default, empty when
    required); ``preset`` rows carry the preset's spec text in value.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(['schema', 'record', 'name', 'param', 'type', 'required', 'value'])
    catalog = ops_catalog()
    for kind, params in catalog['kinds'].items():
        for p in params:
            default = '' if p['default'] is None else p['default']
            writer.writerow([CSV_SCHEMA, 'param', kind, p['name'], p['type'], p['required'], default])
    for name, text in catalog['presets'].items():
        writer.writerow([CSV_SCHEMA, 'preset', name, '', '', '', text])
    return buf.getvalue()


def render_ops() -> str:
    out = ["operator kinds:"]
    for kind in OperatorKind:
        params = []
        for p in PARAM_SCHEMAS[kind]:
            params.append(f"{p['name']}:{p['type']}" + ('' if p['required'] else f"={p['default']}"))
        out.append(f"  {kind.value:<16} {' '.join(params) or '-'}")
    out.append("common keys: kind, width (1..9), zero_policy (pad|shrink)")
    out.append("presets:")
    for name, text in sorted(PRESETS.items()):
        out.append(f"  {name:<20} {text}")
    return '\n'.join(out)

"""
Tests for the text, CSV and DOT renderers.
"""

import csv
import io
import unittest
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from ank.atlas import build_atlas, build_successors, analyze, survey
from ank.digitspace import DigitString
from ank.dynamics import iterate
from ank.errors import WidthTooLarge
from ank.operators import PRESETS, preset
from ank.randomops import FIXED, FRESH, sweep
from ank.viz import (
    atlas_to_dot,
    ops_to_csv,
    render_atlas,
    render_ops,
    render_survey,
    render_trajectory,
    render_walks,
    trajectory_to_dot,
    walks_to_csv,
)


class TestViz(unittest.TestCase):

    def test_render_trajectory(self):
        traj = iterate(preset('perm_diff_231_132'), DigitString.parse("125"))
        self.assertEqual(render_trajectory(traj),
                         "125\n099\n891\n-> 099 (cycle)\npreperiod=1 period=2 outcome=reached_cycle")

    def test_trajectory_dot(self):
        traj = iterate(preset('digit_shift_1910'), DigitString.parse("495"))
        text = trajectory_to_dot(traj)
        self.assertTrue(text.startswith('digraph trajectory {'))
        self.assertIn('"495" -> "212";', text)
        self.assertIn('"222" -> "222" [style=bold];', text)

    def test_condensed_atlas_dot(self):
        report = build_atlas(preset('reverse_diff3'))
        text = atlas_to_dot(report)
        self.assertEqual(text.count('[shape=box'), len(report.cycles))
        self.assertNotIn('->', text)

    def test_full_graph_refuses_wide_tables(self):
        table = build_successors(preset('kaprekar4'))
        with self.assertRaises(WidthTooLarge):
            atlas_to_dot(analyze(table), table)

    def test_render_atlas(self):
        text = render_atlas(build_atlas(preset('kaprekar4')))
        self.assertIn('fixed points: 2 0000 6174', text)
        self.assertIn('max transient: 7', text)

    def test_render_walks(self):
        reports = sweep(FIXED, range(3), 2) + sweep(FRESH, range(3), 2)
        text = render_walks(reports)
        self.assertIn('fixed: 3/3 walks reached a cycle', text)
        self.assertIn('fresh: 3 walks', text)
        csv_lines = walks_to_csv(reports).splitlines()
        self.assertEqual(len(csv_lines), 7)

    def test_render_ops_and_survey(self):
        self.assertIn('digit_shift_sub', render_ops())
        self.assertIn('inc_amount:int=1', render_ops())
        table = render_survey(survey(preset('kaprekar3'), [3, 4]))
        self.assertIn('495', table)
        self.assertIn('6174', table)

    def test_ops_csv_quotes_preset_text(self):
        text = ops_to_csv()
        rows = list(csv.reader(io.StringIO(text)))
        self.assertEqual(len({len(row) for row in rows}), 1)
        presets = {row[2]: row[6] for row in rows[1:] if row[1] == 'preset'}
        self.assertEqual(presets, PRESETS)
        defaults = {(row[2], row[3]): row[6] for row in rows[1:] if row[1] == 'param'}
        self.assertEqual(defaults[('digit_shift_sub', 'inc_if_less_than')], '9')
        self.assertEqual(defaults[('affine_mod', 'm')], '')
        self.assertTrue(text.startswith('schema,record,name,param,type,required,value\n'))


if __name__ == '__main__':
    unittest.main()

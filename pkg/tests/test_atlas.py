"""
Tests for the exhaustive functional-graph atlas.
"""

import json
import time
import unittest
import sys
from array import array
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from unittest import mock

sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from ank import atlas
from ank.atlas import (
    AtlasReport,
    analyze,
    build_atlas,
    build_successors,
    survey,
    verify_against_trajectories,
)
from ank.digitspace import DigitString
from ank.dynamics import iterate
from ank.errors import ShrinkPolicyUnsupported, WidthTooLarge
from ank.operators import OperatorKind, OperatorSpec, PRESETS, parse_operator_spec, preset, with_width
from ank.viz import to_json


class TestKaprekarConstants(unittest.TestCase):

    def test_three_digits(self):
        report = build_atlas(preset('kaprekar3'))
        self.assertEqual(report.nonzero_fixed_points, (495,))
        self.assertEqual(report.fixed_points, (0, 495))
        self.assertEqual(report.longest_cycle, 1)
        self.assertEqual(report.max_transient, 6)
        self.assertEqual(report.zero_preimage_count, 10)
        self.assertEqual(report.zero_basin_count, 10)
        self.assertEqual(report.basin_sizes[report.cycle_of(495).cycle_id], 990)

    def test_four_digits(self):
        table = build_successors(preset('kaprekar4'))
        for d in range(10):
            self.assertEqual(int(table.succ[1111 * d]), 0)
        report = analyze(table)
        self.assertEqual(report.nonzero_fixed_points, (6174,))
        self.assertIn(0, report.fixed_points)
        self.assertEqual(report.max_transient, 7)
        self.assertEqual(report.cycle_reaching_count, 0)

    def test_six_digits(self):
        report = build_atlas(OperatorSpec(OperatorKind.KAPREKAR, 6))
        self.assertEqual(report.nonzero_fixed_points, (549945, 631764))
        self.assertEqual(report.state_count, 10 ** 6)

    def test_two_digits_pad_is_a_cycle(self):
        report = build_atlas(OperatorSpec(OperatorKind.KAPREKAR, 2))
        self.assertEqual(report.nonzero_fixed_points, ())
        self.assertEqual([c.states for c in report.cycles], [(0,), (9, 81, 63, 27, 45)])
        self.assertEqual(report.longest_cycle, 5)

    def test_two_digits_shrink_is_rejected(self):
        spec = OperatorSpec(OperatorKind.KAPREKAR, 2, zero_policy='shrink')
        with self.assertRaises(ShrinkPolicyUnsupported):
            build_successors(spec)


class TestAtlasInvariants(unittest.TestCase):

    def _check(self, report):
        n = report.state_count
        self.assertEqual(sum(report.basin_sizes.values()), n)
        self.assertEqual(sum(report.transient_histogram.values()), n)
        self.assertEqual(report.constant_reaching_count + report.cycle_reaching_count, n)
        self.assertEqual(report.transient_histogram[0], sum(c.length for c in report.cycles))
        # cycles start at their minimum and are sorted by it
        minima = [c.minimum for c in report.cycles]
        self.assertEqual(minima, sorted(minima))
        for i, c in enumerate(report.cycles):
            self.assertEqual(c.cycle_id, i)
            self.assertEqual(c.minimum, min(c.states))
        self.assertEqual(report.fixed_points, tuple(c.states[0] for c in report.cycles if c.length == 1))

    def test_presets(self):
        for name in sorted(PRESETS):
            self._check(build_atlas(preset(name)))

    def test_fixed_points_are_fixed(self):
        table = build_successors(preset('digit_shift_1910'))
        report = analyze(table)
        for n in report.fixed_points:
            self.assertEqual(int(table.succ[n]), n)
        self.assertIn(222, report.fixed_points)

    def test_witness_is_smallest_maximizer(self):
        spec = preset('reverse_diff3')
        report = build_atlas(spec)
        lengths = [iterate(spec, DigitString.parse(f"{n:03d}")).preperiod for n in range(1000)]
        self.assertEqual(report.max_transient, max(lengths))
        self.assertEqual(report.max_transient_witness, lengths.index(max(lengths)))

    def test_zero_basin_coherence(self):
        report = build_atlas(preset('affine_7x3'))
        # 7n + 3 permutes the states, so nothing is transient
        self.assertEqual(report.max_transient, 0)
        zero = report.cycle_of(0)
        self.assertEqual(report.zero_basin_count, zero.length)

    def test_scalar_and_vectorized_tables_agree(self):
        for name in ('sf_swap_add_12', 'digit_shift_2832', 'fixed_random42'):
            spec = preset(name)
            fast = build_successors(spec)
            slow = build_successors(spec, vectorized=False)
            self.assertEqual(fast.succ.tolist(), slow.succ.tolist(), name)


class TestDeterminism(unittest.TestCase):

    def test_thread_count_does_not_matter(self):
        spec = OperatorSpec(OperatorKind.KAPREKAR, 5)
        one = analyze(build_successors(spec, threads=1, chunk=4096))
        four = analyze(build_successors(spec, threads=4, chunk=4096))
        self.assertEqual(to_json(one.to_dict()), to_json(four.to_dict()))

    def test_six_digits_threaded_within_ten_seconds(self):
        spec = OperatorSpec(OperatorKind.KAPREKAR, 6)
        started = time.perf_counter()
        with mock.patch('ank.atlas.ThreadPoolExecutor', wraps=ThreadPoolExecutor) as pool:
            threaded = analyze(build_successors(spec, threads=4))
        elapsed = time.perf_counter() - started
        pool.assert_called_once_with(max_workers=4)
        self.assertLess(elapsed, 10.0)
        serial = analyze(build_successors(spec, threads=1))
        self.assertEqual(threaded, serial)
        self.assertEqual(threaded.nonzero_fixed_points, (549945, 631764))

    def test_json_round_trip(self):
        report = build_atlas(preset('self_perm_diff_312'))
        again = AtlasReport.from_dict(json.loads(to_json(report.to_dict())))
        self.assertEqual(again, report)


class TestResourceLimits(unittest.TestCase):

    def test_width_ceiling(self):
        with self.assertRaises(WidthTooLarge):
            build_successors(OperatorSpec(OperatorKind.KAPREKAR, 8))
        with self.assertRaises(WidthTooLarge):
            build_successors(preset('kaprekar4'), max_width=3)

    def test_oracle_width_limit(self):
        with self.assertRaises(WidthTooLarge):
            verify_against_trajectories(OperatorSpec(OperatorKind.KAPREKAR, 5))


class TestOracle(unittest.TestCase):

    TWO_DIGIT = [
        '{"kind":"kaprekar","width":2}',
        '{"kind":"perm_diff","width":2,"p1":"2,1","p2":"1,2"}',
        '{"kind":"self_perm_diff","width":2,"p":"2,1"}',
        '{"kind":"reverse_diff","width":2}',
        '{"kind":"sf_swap_add","width":2,"grouping":"1,1"}',
        '{"kind":"digit_shift_sub","width":2}',
        '{"kind":"digit_shift_sub","width":2,"inc_amount":2,"inc_if_less_than":8,'
        '"dec_amount":3,"dec_if_greater_than":2}',
        '{"kind":"affine_mod","width":2,"m":7,"c":3}',
        '{"kind":"digit_power_sum","width":2,"exponent":2}',
        '{"kind":"fixed_random","width":2,"seed":42}',
    ]

    def test_two_digit_catalog(self):
        for text in self.TWO_DIGIT:
            result = verify_against_trajectories(parse_operator_spec(text))
            self.assertTrue(result, result.detail)

    def test_three_digit_catalog(self):
        for name in sorted(PRESETS):
            spec = preset(name)
            if spec.width != 3:
                spec = with_width(spec, 3)
            result = verify_against_trajectories(spec)
            self.assertTrue(result.ok, result.detail)
            self.assertIsNone(result.counterexample)

    def test_kaprekar_four_digits(self):
        result = verify_against_trajectories(preset('kaprekar4'))
        self.assertTrue(result)
        self.assertEqual(result.report.nonzero_fixed_points, (6174,))

    def test_detects_wrong_cycle_assignment(self):
        real_walk = atlas._walk

        def everything_owned_by_first_cycle(succ):
            cycles, transient, owner = real_walk(succ)
            return cycles, transient, array('i', bytes(4 * len(owner)))

        with mock.patch('ank.atlas._walk', side_effect=everything_owned_by_first_cycle):
            result = verify_against_trajectories(preset('kaprekar3'))
        self.assertFalse(result.ok)
        # state 000 is its own cycle; 001 falls to 495
        self.assertEqual(result.counterexample, 1)
        self.assertIn('cycle set differs', result.detail)


class TestSurvey(unittest.TestCase):

    def test_kaprekar_widths(self):
        rows = survey(preset('kaprekar3'), range(1, 5))
        self.assertEqual([r['width'] for r in rows], [1, 2, 3, 4])
        self.assertEqual(rows[0]['cycles'], 1)
        self.assertEqual(rows[1]['longest_cycle'], 5)
        self.assertEqual(rows[2]['nonzero_fixed_points'], ['495'])
        self.assertEqual(rows[3]['nonzero_fixed_points'], ['6174'])


if __name__ == '__main__':
    unittest.main()

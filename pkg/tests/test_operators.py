"""
Tests for the operator catalog: scalar steps, specs, the spec text format
and the vectorized kernels.
"""

import unittest
import sys
from itertools import permutations
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from ank.digitspace import DigitString, Permutation, from_integer, is_repdigit, to_integer
from ank.errors import (
    InvalidGrouping,
    InvalidShiftParams,
    ParseError,
    ShrinkPolicyUnsupported,
    ValidationError,
    WidthMismatch,
)
from ank.operators import (
    AffineParams,
    DigitShiftParams,
    FixedRandomParams,
    Grouping,
    OperatorKind,
    OperatorSpec,
    PARAM_SCHEMAS,
    PRESETS,
    PermDiffParams,
    ZeroPolicy,
    affine_mod_step,
    apply,
    batch_apply,
    digit_power_sum_step,
    digit_shift_sub_step,
    is_difference_kind,
    kaprekar_step,
    parse_operator_spec,
    perm_diff_step,
    preset,
    reverse_diff_step,
    self_perm_diff_step,
    serialize_operator_spec,
    sf_swap_add_step,
    with_width,
)


def ds(text):
    return DigitString.parse(text)


def perm(text):
    return Permutation.parse(text)


class TestSteps(unittest.TestCase):

    def test_kaprekar(self):
        self.assertEqual(str(kaprekar_step(ds("6174"))), "6174")
        self.assertEqual(str(kaprekar_step(ds("495"))), "495")
        self.assertEqual(str(kaprekar_step(ds("3333"))), "0000")
        self.assertEqual(str(kaprekar_step(ds("09"))), "81")

    def test_perm_diff(self):
        p1, p2 = perm("2,3,1"), perm("1,3,2")
        self.assertEqual(str(perm_diff_step(ds("125"), p1, p2)), "099")
        self.assertEqual(str(perm_diff_step(ds("099"), p1, p2)), "891")
        self.assertEqual(str(perm_diff_step(ds("891"), p1, p2)), "099")

    def test_perm_diff_width_mismatch(self):
        with self.assertRaises(WidthMismatch):
            perm_diff_step(ds("1250"), perm("2,3,1"), perm("1,3,2"))

    def test_self_perm_diff(self):
        p = perm("3,1,2")
        self.assertEqual(str(self_perm_diff_step(ds("125"), p)), "387")
        self.assertEqual(str(self_perm_diff_step(ds("162"), p)), "054")
        self.assertEqual(str(self_perm_diff_step(ds("054"), p)), "351")

    def test_self_perm_diff_identity_is_zero(self):
        for n in range(0, 1000, 7):
            self.assertEqual(to_integer(self_perm_diff_step(from_integer(n, 3), Permutation.identity(3))), 0)

    def test_reverse_diff(self):
        self.assertEqual(str(reverse_diff_step(ds("125"))), "396")
        self.assertEqual(str(reverse_diff_step(ds("891"))), "693")
        self.assertEqual(str(reverse_diff_step(ds("121"))), "000")

    def test_sf_swap_add_chain(self):
        g = Grouping((1, 2))
        for before, after in [("767", "444"), ("888", "776"), ("776", "543"),
                              ("543", "978"), ("978", "767")]:
            self.assertEqual(str(sf_swap_add_step(ds(before), g)), after)

    def test_sf_swap_add_follows_stated_rule(self):
        # 576 + 765 = 1341, so 341 (not 342)
        self.assertEqual(str(sf_swap_add_step(ds("576"), Grouping((1, 2)))), "341")

    def test_sf_swap_add_bad_grouping(self):
        with self.assertRaises(InvalidGrouping):
            sf_swap_add_step(ds("576"), Grouping((1, 1)))
        with self.assertRaises(InvalidGrouping) as ctx:
            Grouping((1, 0, 2))
        self.assertEqual(ctx.exception.invariant, 'grouping_positive')

    def test_digit_shift_sub(self):
        self.assertEqual(str(digit_shift_sub_step(ds("495"), 1, 9, 1, 0)), "212")
        self.assertEqual(str(digit_shift_sub_step(ds("212"), 1, 9, 1, 0)), "222")
        self.assertEqual(str(digit_shift_sub_step(ds("222"), 1, 9, 1, 0)), "222")

    def test_digit_shift_variant(self):
        # 495: up -> 697 (9 stays), down -> 162, |697 - 162| = 535
        self.assertEqual(str(digit_shift_sub_step(ds("495"), 2, 8, 3, 2)), "535")

    def test_digit_shift_bad_params(self):
        with self.assertRaises(InvalidShiftParams) as ctx:
            digit_shift_sub_step(ds("495"), 2, 9, 1, 0)
        self.assertEqual(ctx.exception.invariant, 'shift_range')
        with self.assertRaises(InvalidShiftParams):
            digit_shift_sub_step(ds("495"), 1, 9, 2, 0)

    def test_affine_mod(self):
        self.assertEqual(str(affine_mod_step(ds("125"), 1, 0)), "125")
        self.assertEqual(str(affine_mod_step(ds("999"), 2, 3)), "001")
        self.assertEqual(str(affine_mod_step(ds("000"), 7, 0)), "000")

    def test_digit_power_sum(self):
        self.assertEqual(str(digit_power_sum_step(ds("125"), 2)), "030")
        self.assertEqual(str(digit_power_sum_step(ds("999"), 1)), "027")
        with self.assertRaises(ValidationError):
            digit_power_sum_step(ds("125"), 0)

    def test_difference_kinds_zero_repdigits(self):
        specs = [preset('kaprekar3'), preset('perm_diff_231_132'),
                 preset('self_perm_diff_312'), preset('reverse_diff3')]
        for spec in specs:
            self.assertTrue(is_difference_kind(spec.kind))
            for d in range(10):
                self.assertEqual(to_integer(apply(spec, DigitString((d, d, d)))), 0, spec.describe())
        self.assertFalse(is_difference_kind(OperatorKind.AFFINE_MOD))

    def test_results_stay_in_width(self):
        specs = [preset(name) for name in sorted(PRESETS)]
        for width in (1, 2, 4):
            specs.append(with_width(preset('kaprekar3'), width))
            specs.append(with_width(preset('reverse_diff3'), width))
        for spec in specs:
            self.assertLessEqual(spec.width, 4)
            for n in range(spec.state_count):
                out = apply(spec, from_integer(n, spec.width))
                self.assertEqual(out.width, spec.width, spec.describe())
                self.assertTrue(0 <= to_integer(out) < spec.state_count, spec.describe())

    def test_kaprekar_ignores_digit_order(self):
        for n in range(1000):
            digits = from_integer(n, 3).digits
            expected = kaprekar_step(DigitString(digits))
            for order in permutations(digits):
                self.assertEqual(kaprekar_step(DigitString(order)), expected, order)

    def test_perm_diff_of_equal_permutations_is_zero(self):
        for mapping in permutations((1, 2, 3)):
            p = Permutation(mapping)
            for n in range(1000):
                self.assertEqual(to_integer(perm_diff_step(from_integer(n, 3), p, p)), 0, (p, n))


class TestOperatorSpec(unittest.TestCase):

    def test_defaults_filled(self):
        spec = OperatorSpec(OperatorKind.DIGIT_SHIFT_SUB, 3)
        self.assertEqual(spec.params, DigitShiftParams(1, 9, 1, 0))
        self.assertEqual(parse_operator_spec('{"kind":"affine_mod","width":3,"m":7}').params,
                         AffineParams(7, 0))

    def test_missing_required(self):
        with self.assertRaises(ValidationError) as ctx:
            OperatorSpec(OperatorKind.PERM_DIFF, 3)
        self.assertEqual(ctx.exception.invariant, 'missing_key')

    def test_permutation_width_must_match(self):
        with self.assertRaises(ValidationError) as ctx:
            OperatorSpec(OperatorKind.PERM_DIFF, 4, PermDiffParams(perm("2,3,1"), perm("1,3,2")))
        self.assertEqual(ctx.exception.invariant, 'permutation_width')

    def test_grouping_must_sum_to_width(self):
        with self.assertRaises(InvalidGrouping) as ctx:
            parse_operator_spec('{"kind":"sf_swap_add","width":4,"grouping":"1,2"}')
        self.assertEqual(ctx.exception.invariant, 'grouping_sum')

    def test_width_range(self):
        for width in (0, 10):
            with self.assertRaises(ValidationError) as ctx:
                OperatorSpec(OperatorKind.KAPREKAR, width)
            self.assertEqual(ctx.exception.invariant, 'width_range')

    def test_shrink_only_for_some_kinds(self):
        OperatorSpec(OperatorKind.KAPREKAR, 3, zero_policy=ZeroPolicy.SHRINK)
        OperatorSpec(OperatorKind.REVERSE_DIFF, 3, zero_policy='shrink')
        OperatorSpec(OperatorKind.DIGIT_SHIFT_SUB, 3, zero_policy='shrink')
        with self.assertRaises(ShrinkPolicyUnsupported) as ctx:
            OperatorSpec(OperatorKind.AFFINE_MOD, 3, AffineParams(7, 3), zero_policy='shrink')
        self.assertEqual(ctx.exception.invariant, 'zero_policy')

    def test_fixed_random_seed_range(self):
        OperatorSpec(OperatorKind.FIXED_RANDOM, 3, FixedRandomParams(-1))
        with self.assertRaises(ValidationError):
            OperatorSpec(OperatorKind.FIXED_RANDOM, 3, FixedRandomParams(1 << 64))

    def test_describe(self):
        self.assertEqual(preset('perm_diff_231_132').describe(),
                         "perm_diff(k=3, p1=2,3,1, p2=1,3,2)")

    def test_schemas_cover_every_kind(self):
        self.assertEqual(set(PARAM_SCHEMAS), set(OperatorKind))
        names = [p['name'] for p in PARAM_SCHEMAS[OperatorKind.DIGIT_SHIFT_SUB]]
        self.assertEqual(names, ['inc_amount', 'inc_if_less_than', 'dec_amount', 'dec_if_greater_than'])
        self.assertEqual(PARAM_SCHEMAS[OperatorKind.KAPREKAR], [])

    def test_with_width(self):
        self.assertEqual(with_width(preset('kaprekar3'), 5).width, 5)
        with self.assertRaises(ValidationError):
            with_width(preset('perm_diff_231_132'), 4)


class TestApplyPolicies(unittest.TestCase):

    def test_pad_requires_exact_width(self):
        with self.assertRaises(WidthMismatch):
            apply(preset('kaprekar3'), ds("95"))

    def test_shrink_drops_leading_zeros(self):
        spec = OperatorSpec(OperatorKind.KAPREKAR, 2, zero_policy='shrink')
        self.assertEqual(str(apply(spec, ds("10"))), "9")
        self.assertEqual(str(apply(spec, ds("9"))), "0")
        with self.assertRaises(WidthMismatch):
            apply(spec, ds("100"))


class TestSpecFormat(unittest.TestCase):

    def test_parse(self):
        spec = parse_operator_spec('{"kind":"perm_diff","width":3,"p1":"2,3,1","p2":[1,3,2]}')
        self.assertEqual(spec.kind, OperatorKind.PERM_DIFF)
        self.assertEqual(spec.params.p2, perm("1,3,2"))
        self.assertEqual(spec.zero_policy, ZeroPolicy.PAD)

    def test_round_trip_presets(self):
        for name in PRESETS:
            spec = preset(name)
            self.assertEqual(parse_operator_spec(serialize_operator_spec(spec)), spec, name)

    def test_serialize_is_canonical(self):
        text = serialize_operator_spec(preset('kaprekar4'))
        self.assertEqual(text, '{"kind":"kaprekar","width":4,"zero_policy":"pad"}')

    def test_not_json(self):
        with self.assertRaises(ParseError) as ctx:
            parse_operator_spec('{"kind": kaprekar}')
        self.assertEqual(ctx.exception.position, 9)
        with self.assertRaises(ParseError):
            parse_operator_spec('[1, 2]')

    def test_unknown_kind(self):
        with self.assertRaises(ValidationError) as ctx:
            parse_operator_spec('{"kind":"collatz","width":3}')
        self.assertEqual(ctx.exception.invariant, 'kind')

    def test_unknown_and_missing_keys(self):
        with self.assertRaises(ValidationError) as ctx:
            parse_operator_spec('{"kind":"kaprekar","width":3,"p":"1,2,3"}')
        self.assertEqual(ctx.exception.invariant, 'unknown_key')
        with self.assertRaises(ValidationError) as ctx:
            parse_operator_spec('{"kind":"kaprekar"}')
        self.assertEqual(ctx.exception.invariant, 'missing_key')
        with self.assertRaises(ValidationError) as ctx:
            parse_operator_spec('{"kind":"self_perm_diff","width":3}')
        self.assertEqual(ctx.exception.invariant, 'missing_key')

    def test_bad_permutation_text(self):
        with self.assertRaises(ValidationError) as ctx:
            parse_operator_spec('{"kind":"self_perm_diff","width":3,"p":"1,1,2"}')
        self.assertEqual(ctx.exception.invariant, 'bijection')
        with self.assertRaises(ParseError):
            parse_operator_spec('{"kind":"self_perm_diff","width":3,"p":"1;2;3"}')

    def test_unknown_preset(self):
        with self.assertRaises(ValidationError):
            preset('nope')


class TestBatchApply(unittest.TestCase):

    def _specs(self):
        specs = [preset(name) for name in sorted(PRESETS)]
        specs.append(parse_operator_spec('{"kind":"fixed_random","width":3,"seed":-7}'))
        specs.append(parse_operator_spec('{"kind":"digit_power_sum","width":3,"exponent":5}'))
        specs.append(parse_operator_spec('{"kind":"sf_swap_add","width":4,"grouping":"2,1,1"}'))
        return specs

    def test_matches_scalar_apply(self):
        for spec in self._specs():
            values = np.arange(spec.state_count, dtype=np.int64)
            if spec.state_count > 1000:
                values = values[::13]
            batch = batch_apply(spec, values)
            expected = [to_integer(apply(spec, from_integer(int(n), spec.width))) for n in values]
            self.assertEqual(batch.tolist(), expected, spec.describe())

    def test_huge_exponent_scalar_matches_kernel(self):
        spec = parse_operator_spec('{"kind":"digit_power_sum","width":3,"exponent":300000000}')
        values = np.arange(0, 1000, 37, dtype=np.int64)
        expected = [to_integer(apply(spec, from_integer(int(n), 3))) for n in values]
        self.assertEqual(batch_apply(spec, values).tolist(), expected)
        self.assertEqual(str(apply(spec, ds("111"))), "003")
        self.assertEqual(str(digit_power_sum_step(ds("999"), 300000000)),
                         str(from_integer(int(batch_apply(spec, np.array([999]))[0]), 3)))

    def test_rejects_shrink(self):
        spec = OperatorSpec(OperatorKind.KAPREKAR, 3, zero_policy='shrink')
        with self.assertRaises(ShrinkPolicyUnsupported):
            batch_apply(spec, np.arange(10))


if __name__ == '__main__':
    unittest.main()

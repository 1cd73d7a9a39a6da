"""
The operator catalog: step functions f: A -> A on fixed-width digit strings.

Each kind has a scalar step (the reference semantics, one DigitString at a
time) and a numpy kernel used by ``ank.atlas`` to materialize f over all
10**k states. ``OperatorSpec`` bundles a kind with its width, its parameters
and the leading-zero policy; specs are parsed from and serialized to a small
JSON object such as ``{"kind":"perm_diff","width":3,"p1":"2,3,1","p2":"1,3,2"}``.

Difference operators (kaprekar, perm_diff, self_perm_diff, reverse_diff) send
every repdigit to all-zeros.
"""

import json
import logging
from dataclasses import dataclass, fields, MISSING
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Tuple, Union

import numpy as np

from .digitspace import (
    BASE,
    DigitString,
    Permutation,
    apply_permutation,
    digits_to_integer,
    from_integer,
    parse_int_list,
    reverse,
    sort_ascending,
    sort_descending,
    strip_leading_zeros,
    to_integer,
)
from .errors import (
    InvalidGrouping,
    InvalidShiftParams,
    ParseError,
    ShrinkPolicyUnsupported,
    ValidationError,
    ValueOutOfRange,
    WidthMismatch,
)
from .randomops import MASK64, fixed_random_step, mix64_array

_log = logging.getLogger(__name__)


class OperatorKind(str, Enum):
    KAPREKAR = 'kaprekar'
    PERM_DIFF = 'perm_diff'
    SELF_PERM_DIFF = 'self_perm_diff'
    REVERSE_DIFF = 'reverse_diff'
    SF_SWAP_ADD = 'sf_swap_add'
    DIGIT_SHIFT_SUB = 'digit_shift_sub'
    AFFINE_MOD = 'affine_mod'
    DIGIT_POWER_SUM = 'digit_power_sum'
    FIXED_RANDOM = 'fixed_random'


class ZeroPolicy(str, Enum):
    PAD = 'pad'
    SHRINK = 'shrink'


DIFFERENCE_KINDS = frozenset({
    OperatorKind.KAPREKAR,
    OperatorKind.PERM_DIFF,
    OperatorKind.SELF_PERM_DIFF,
    OperatorKind.REVERSE_DIFF,
})

# permutation params are meaningless once the width changes
SHRINK_KINDS = frozenset({
    OperatorKind.KAPREKAR,
    OperatorKind.REVERSE_DIFF,
    OperatorKind.DIGIT_SHIFT_SUB,
})


def is_difference_kind(kind: OperatorKind) -> bool:
    return OperatorKind(kind) in DIFFERENCE_KINDS


@dataclass(frozen=True)
class Grouping:
    """Consecutive digit groups of a numeral, e.g. ``5(76)`` is (1, 2)."""

    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, 'parts', parts)
        if not parts or any((not isinstance(n, int)) or n < 1 for n in parts):
            raise InvalidGrouping(f"grouping parts must be positive: {parts}",
                                  invariant='grouping_positive')

    @property
    def width(self) -> int:
        return sum(self.parts)

    @classmethod
    def parse(cls, text: str) -> "Grouping":
        return cls(tuple(parse_int_list(text, "grouping")))

    def split(self, digits: Tuple[int, ...]) -> List[Tuple[int, ...]]:
        groups, start = [], 0
        for size in self.parts:
            groups.append(digits[start:start + size])
            start += size
        return groups

    def swapped_order(self) -> Tuple[int, ...]:
        """0-based column order of the digits with the group order reversed."""
        bounds, start = [], 0
        for size in self.parts:
            bounds.append(range(start, start + size))
            start += size
        return tuple(i for group in reversed(bounds) for i in group)

    def __str__(self):
        return ','.join(str(n) for n in self.parts)


# -- parameter records ------------------------------------------------------

@dataclass(frozen=True)
class NoParams:
    pass


@dataclass(frozen=True)
class PermDiffParams:
    p1: Permutation
    p2: Permutation


@dataclass(frozen=True)
class SelfPermDiffParams:
    p: Permutation


@dataclass(frozen=True)
class SfSwapAddParams:
    grouping: Grouping


@dataclass(frozen=True)
class DigitShiftParams:
    """Add ``inc_amount`` to digits < ``inc_if_less_than``; subtract
    ``dec_amount`` from digits > ``dec_if_greater_than``."""

    inc_amount: int = 1
    inc_if_less_than: int = 9
    dec_amount: int = 1
    dec_if_greater_than: int = 0


@dataclass(frozen=True)
class AffineParams:
    m: int
    c: int = 0


@dataclass(frozen=True)
class PowerSumParams:
    exponent: int = 2


@dataclass(frozen=True)
class FixedRandomParams:
    seed: int


PARAM_TYPES = {
    OperatorKind.KAPREKAR: NoParams,
    OperatorKind.PERM_DIFF: PermDiffParams,
    OperatorKind.SELF_PERM_DIFF: SelfPermDiffParams,
    OperatorKind.REVERSE_DIFF: NoParams,
    OperatorKind.SF_SWAP_ADD: SfSwapAddParams,
    OperatorKind.DIGIT_SHIFT_SUB: DigitShiftParams,
    OperatorKind.AFFINE_MOD: AffineParams,
    OperatorKind.DIGIT_POWER_SUM: PowerSumParams,
    OperatorKind.FIXED_RANDOM: FixedRandomParams,
}

_PERMUTATION_KEYS = ('p1', 'p2', 'p')
_RESERVED_KEYS = ('kind', 'width', 'zero_policy')


def _value_type(name: str) -> str:
    if name in _PERMUTATION_KEYS:
        return 'permutation'
    if name == 'grouping':
        return 'grouping'
    return 'int'


def param_schema(kind: OperatorKind) -> List[Dict[str, Any]]:
    """Parameter keys of a kind: name, value type and default (None if required)."""
    out = []
    for f in fields(PARAM_TYPES[OperatorKind(kind)]):
        default = None if f.default is MISSING else f.default
        out.append({'name': f.name, 'type': _value_type(f.name),
                    'required': f.default is MISSING, 'default': default})
    return out


PARAM_SCHEMAS = {kind: param_schema(kind) for kind in OperatorKind}


def check_shift_params(inc_amount: int, inc_if_less_than: int,
                       dec_amount: int, dec_if_greater_than: int):
    """Raise ``InvalidShiftParams`` unless every shifted digit stays in 0..9."""
    values = (inc_amount, inc_if_less_than, dec_amount, dec_if_greater_than)
    if any(not isinstance(v, int) or isinstance(v, bool) or v < 0 for v in values):
        raise InvalidShiftParams(f"shift parameters must be nonnegative integers: {values}",
                                 invariant='shift_range')
    if inc_if_less_than > 0 and (inc_if_less_than - 1) + inc_amount > 9:
        raise InvalidShiftParams(
            f"adding {inc_amount} to digits below {inc_if_less_than} can exceed 9",
            invariant='shift_range')
    if dec_if_greater_than < 9 and (dec_if_greater_than + 1) - dec_amount < 0:
        raise InvalidShiftParams(
            f"subtracting {dec_amount} from digits above {dec_if_greater_than} can go below 0",
            invariant='shift_range')


def _check_int(name: str, value: Any, minimum: int = 0):
    if not isinstance(value, int) or isinstance(value, bool):
        raise ValidationError(f"{name} must be an integer, got {value!r}", invariant='type')
    if value < minimum:
        raise ValidationError(f"{name} must be >= {minimum}, got {value}", invariant=f'{name}_range')


@dataclass(frozen=True)
class OperatorSpec:
    """One operator of the catalog, fully parameterized and validated.

    Parameters
    ----------
    kind:
        Which operator.
    width:
        Digit width k (1..9).
    params:
        The kind's parameter record; ``None`` means "all defaults" and fails
        for kinds with required parameters.
    zero_policy:
        ``pad`` keeps results at width k; ``shrink`` drops leading zeros and
        continues at the smaller width (kaprekar, reverse_diff and
        digit_shift_sub only).
    """

    kind: OperatorKind
    width: int
    params: Any = None
    zero_policy: ZeroPolicy = ZeroPolicy.PAD

    def __post_init__(self):
        try:
            kind = OperatorKind(self.kind)
        except ValueError:
            raise ValidationError(f"unknown operator kind {self.kind!r}", invariant='kind') from None
        object.__setattr__(self, 'kind', kind)
        try:
            policy = ZeroPolicy(self.zero_policy)
        except ValueError:
            raise ValidationError(f"zero_policy must be 'pad' or 'shrink', got {self.zero_policy!r}",
                                  invariant='zero_policy') from None
        object.__setattr__(self, 'zero_policy', policy)

        if not isinstance(self.width, int) or isinstance(self.width, bool):
            raise ValidationError(f"width must be an integer, got {self.width!r}", invariant='width_range')
        try:
            from_integer(0, self.width)
        except ValueOutOfRange as e:
            raise ValidationError(str(e), invariant='width_range') from None

        ptype = PARAM_TYPES[kind]
        params = self.params
        if params is None:
            try:
                params = ptype()
            except TypeError:
                missing = [s['name'] for s in PARAM_SCHEMAS[kind] if s['required']]
                raise ValidationError(f"{kind.value} needs {', '.join(missing)}",
                                      invariant='missing_key') from None
            object.__setattr__(self, 'params', params)
        elif not isinstance(params, ptype):
            raise ValidationError(f"{kind.value} expects {ptype.__name__}, got {type(params).__name__}",
                                  invariant='params_type')
        self._validate_params()

        if policy is ZeroPolicy.SHRINK and kind not in SHRINK_KINDS:
            raise ShrinkPolicyUnsupported(
                f"shrink policy is only defined for {', '.join(sorted(k.value for k in SHRINK_KINDS))}",
                invariant='zero_policy')

    def _validate_params(self):
        prm = self.params
        for f in fields(prm):
            value = getattr(prm, f.name)
            if isinstance(value, Permutation) and value.width != self.width:
                raise ValidationError(
                    f"{f.name} has width {value.width} but the operator width is {self.width}",
                    invariant='permutation_width')
        if isinstance(prm, SfSwapAddParams) and prm.grouping.width != self.width:
            raise InvalidGrouping(
                f"grouping {prm.grouping} sums to {prm.grouping.width}, not {self.width}",
                invariant='grouping_sum')
        elif isinstance(prm, DigitShiftParams):
            check_shift_params(prm.inc_amount, prm.inc_if_less_than,
                               prm.dec_amount, prm.dec_if_greater_than)
        elif isinstance(prm, AffineParams):
            _check_int('m', prm.m)
            _check_int('c', prm.c)
        elif isinstance(prm, PowerSumParams):
            _check_int('exponent', prm.exponent, minimum=1)
        elif isinstance(prm, FixedRandomParams):
            _check_int('seed', prm.seed, minimum=-(1 << 63))
            if prm.seed > MASK64:
                raise ValidationError(f"seed {prm.seed} does not fit in 64 bits", invariant='seed_range')

    @property
    def state_count(self) -> int:
        return BASE ** self.width

    def describe(self) -> str:
        """Short label, e.g. ``perm_diff(k=3, p1=2,3,1, p2=1,3,2)``."""
        bits = [f"k={self.width}"]
        for f in fields(self.params):
            bits.append(f"{f.name}={getattr(self.params, f.name)}")
        if self.zero_policy is ZeroPolicy.SHRINK:
            bits.append("shrink")
        return f"{self.kind.value}({', '.join(bits)})"


# -- scalar steps -----------------------------------------------------------

def _abs_diff(a: int, b: int, width: int) -> DigitString:
    return from_integer(abs(a - b), width)


def kaprekar_step(ds: DigitString) -> DigitString:
    """Descending-sorted digits minus ascending-sorted digits.

    Examples
    --------
        >>> str(kaprekar_step(DigitString.parse("6174")))
        '6174'
        >>> str(kaprekar_step(DigitString.parse("3333")))
        '0000'
    """
    return _abs_diff(to_integer(sort_descending(ds)), to_integer(sort_ascending(ds)), ds.width)


def perm_diff_step(ds: DigitString, p1: Permutation, p2: Permutation) -> DigitString:
    """``|P1(a) - P2(a)|`` at the same width."""
    return _abs_diff(to_integer(apply_permutation(ds, p1)),
                     to_integer(apply_permutation(ds, p2)), ds.width)


def self_perm_diff_step(ds: DigitString, p: Permutation) -> DigitString:
    """``|a - P(a)|`` at the same width."""
    return _abs_diff(to_integer(ds), to_integer(apply_permutation(ds, p)), ds.width)


def reverse_diff_step(ds: DigitString) -> DigitString:
    return _abs_diff(to_integer(ds), to_integer(reverse(ds)), ds.width)


def sf_swap_add_step(ds: DigitString, g: Grouping) -> DigitString:
    """Add the numeral with its groups in reversed order, modulo 10**width.

    Examples
    --------
        >>> str(sf_swap_add_step(DigitString.parse("767"), Grouping((1, 2))))
        '444'
    """
    if g.width != ds.width:
        raise InvalidGrouping(f"grouping {g} sums to {g.width}, not {ds.width}",
                              invariant='grouping_sum')
    swapped = digits_to_integer([d for group in reversed(g.split(ds.digits)) for d in group])
    return from_integer((to_integer(ds) + swapped) % (BASE ** ds.width), ds.width)


def digit_shift_sub_step(ds: DigitString, inc_amount: int = 1, inc_if_less_than: int = 9,
                         dec_amount: int = 1, dec_if_greater_than: int = 0) -> DigitString:
    """Shift digits up and down, then take the absolute difference.

    ``A'`` adds ``inc_amount`` to each digit below ``inc_if_less_than``;
    ``A''`` subtracts ``dec_amount`` from each digit above
    ``dec_if_greater_than``; the result is ``|A' - A''|``.

    Examples
    --------
        >>> str(digit_shift_sub_step(DigitString.parse("495")))
        '212'
    """
    check_shift_params(inc_amount, inc_if_less_than, dec_amount, dec_if_greater_than)
    up = [d + inc_amount if d < inc_if_less_than else d for d in ds.digits]
    down = [d - dec_amount if d > dec_if_greater_than else d for d in ds.digits]
    return _abs_diff(digits_to_integer(up), digits_to_integer(down), ds.width)


def affine_mod_step(ds: DigitString, m: int, c: int) -> DigitString:
    return from_integer((m * to_integer(ds) + c) % (BASE ** ds.width), ds.width)


def digit_power_sum_step(ds: DigitString, p: int) -> DigitString:
    if p < 1:
        raise ValidationError(f"exponent must be >= 1, got {p}", invariant='exponent_range')
    mod = BASE ** ds.width
    return from_integer(sum(pow(d, p, mod) for d in ds.digits) % mod, ds.width)


_STEPS: Dict[OperatorKind, Callable[[DigitString, Any], DigitString]] = {
    OperatorKind.KAPREKAR: lambda ds, prm: kaprekar_step(ds),
    OperatorKind.PERM_DIFF: lambda ds, prm: perm_diff_step(ds, prm.p1, prm.p2),
    OperatorKind.SELF_PERM_DIFF: lambda ds, prm: self_perm_diff_step(ds, prm.p),
    OperatorKind.REVERSE_DIFF: lambda ds, prm: reverse_diff_step(ds),
    OperatorKind.SF_SWAP_ADD: lambda ds, prm: sf_swap_add_step(ds, prm.grouping),
    OperatorKind.DIGIT_SHIFT_SUB: lambda ds, prm: digit_shift_sub_step(
        ds, prm.inc_amount, prm.inc_if_less_than, prm.dec_amount, prm.dec_if_greater_than),
    OperatorKind.AFFINE_MOD: lambda ds, prm: affine_mod_step(ds, prm.m, prm.c),
    OperatorKind.DIGIT_POWER_SUM: lambda ds, prm: digit_power_sum_step(ds, prm.exponent),
    OperatorKind.FIXED_RANDOM: lambda ds, prm: fixed_random_step(prm.seed, ds),
}


def apply(spec: OperatorSpec, ds: DigitString) -> DigitString:
    """One application of ``spec`` to ``ds``.

    Under the pad policy the result has the spec's width. Under shrink the
    result is re-encoded at its natural width, and inputs narrower than the
    spec width are accepted.

    Raises
    ------
    WidthMismatch
        If ``ds`` does not have the width the policy allows.
    """
    if spec.zero_policy is ZeroPolicy.PAD:
        if ds.width != spec.width:
            raise WidthMismatch(f"state {ds} has width {ds.width}, operator width is {spec.width}")
        return _STEPS[spec.kind](ds, spec.params)
    if ds.width > spec.width:
        raise WidthMismatch(f"state {ds} is wider than the operator width {spec.width}")
    return strip_leading_zeros(_STEPS[spec.kind](ds, spec.params))


# -- vectorized kernels -----------------------------------------------------

def _powers(width: int) -> np.ndarray:
    return BASE ** np.arange(width - 1, -1, -1, dtype=np.int64)


def _to_digits(values: np.ndarray, width: int) -> np.ndarray:
    return (values[:, None] // _powers(width)) % BASE


def _from_digits(digits: np.ndarray, width: int) -> np.ndarray:
    return (digits * _powers(width)).sum(axis=1)


def _kaprekar_kernel(values, digits, spec):
    asc = np.sort(digits, axis=1)
    return _from_digits(asc[:, ::-1], spec.width) - _from_digits(asc, spec.width)


def _perm_diff_kernel(values, digits, spec):
    a = _from_digits(digits[:, list(spec.params.p1.indices)], spec.width)
    b = _from_digits(digits[:, list(spec.params.p2.indices)], spec.width)
    return np.abs(a - b)


def _self_perm_diff_kernel(values, digits, spec):
    return np.abs(values - _from_digits(digits[:, list(spec.params.p.indices)], spec.width))


def _reverse_diff_kernel(values, digits, spec):
    return np.abs(values - _from_digits(digits[:, ::-1], spec.width))


def _sf_swap_add_kernel(values, digits, spec):
    order = list(spec.params.grouping.swapped_order())
    return (values + _from_digits(digits[:, order], spec.width)) % spec.state_count


def _digit_shift_kernel(values, digits, spec):
    prm = spec.params
    up = np.where(digits < prm.inc_if_less_than, digits + prm.inc_amount, digits)
    down = np.where(digits > prm.dec_if_greater_than, digits - prm.dec_amount, digits)
    return np.abs(_from_digits(up, spec.width) - _from_digits(down, spec.width))


def _affine_kernel(values, digits, spec):
    mod = spec.state_count
    # reduce first so m * value stays below 10**18
    return ((spec.params.m % mod) * values + spec.params.c % mod) % mod


def _power_sum_kernel(values, digits, spec):
    mod = spec.state_count
    table = np.array([pow(d, spec.params.exponent, mod) for d in range(BASE)], dtype=np.int64)
    return table[digits].sum(axis=1) % mod


def _fixed_random_kernel(values, digits, spec):
    keyed = values.astype(np.uint64) ^ np.uint64(spec.params.seed & MASK64)
    return (mix64_array(keyed) % np.uint64(spec.state_count)).astype(np.int64)


_KERNELS = {
    OperatorKind.KAPREKAR: _kaprekar_kernel,
    OperatorKind.PERM_DIFF: _perm_diff_kernel,
    OperatorKind.SELF_PERM_DIFF: _self_perm_diff_kernel,
    OperatorKind.REVERSE_DIFF: _reverse_diff_kernel,
    OperatorKind.SF_SWAP_ADD: _sf_swap_add_kernel,
    OperatorKind.DIGIT_SHIFT_SUB: _digit_shift_kernel,
    OperatorKind.AFFINE_MOD: _affine_kernel,
    OperatorKind.DIGIT_POWER_SUM: _power_sum_kernel,
    OperatorKind.FIXED_RANDOM: _fixed_random_kernel,
}


def batch_apply(spec: OperatorSpec, values: np.ndarray) -> np.ndarray:
    """Vectorized ``apply`` (pad policy) over an array of state values.

    Returns an int64 array with ``out[i] == to_integer(apply(spec, from_integer(values[i], k)))``.
    """
    if spec.zero_policy is not ZeroPolicy.PAD:
        raise ShrinkPolicyUnsupported("batch evaluation needs the pad policy",
                                      invariant='zero_policy')
    values = np.asarray(values, dtype=np.int64)
    digits = _to_digits(values, spec.width)
    return np.asarray(_KERNELS[spec.kind](values, digits, spec), dtype=np.int64)


# -- spec text format -------------------------------------------------------

def _convert_param(key: str, value: Any):
    vtype = _value_type(key)
    if vtype == 'int':
        if not isinstance(value, int) or isinstance(value, bool):
            raise ValidationError(f"{key} must be an integer, got {value!r}", invariant='type')
        return value
    cls = Permutation if vtype == 'permutation' else Grouping
    if isinstance(value, list):
        return cls(tuple(value))
    try:
        return cls.parse(value)
    except ParseError as e:
        raise ParseError(f"{key}: {e.args[0]}", e.position) from None


def operator_spec_from_dict(obj: Dict[str, Any]) -> OperatorSpec:
    """Build and validate an OperatorSpec from the decoded spec object."""
    if 'kind' not in obj:
        raise ValidationError("operator spec needs a 'kind'", invariant='missing_key')
    if 'width' not in obj:
        raise ValidationError("operator spec needs a 'width'", invariant='missing_key')
    try:
        kind = OperatorKind(obj['kind'])
    except ValueError:
        known = ', '.join(k.value for k in OperatorKind)
        raise ValidationError(f"unknown operator kind {obj['kind']!r} (known: {known})",
                              invariant='kind') from None

    ptype = PARAM_TYPES[kind]
    names = {f.name for f in fields(ptype)}
    unknown = sorted(set(obj) - names - set(_RESERVED_KEYS))
    if unknown:
        raise ValidationError(f"unknown key(s) for {kind.value}: {', '.join(unknown)}",
                              invariant='unknown_key')
    missing = [s['name'] for s in PARAM_SCHEMAS[kind] if s['required'] and s['name'] not in obj]
    if missing:
        raise ValidationError(f"{kind.value} needs {', '.join(missing)}", invariant='missing_key')

    params = ptype(**{k: _convert_param(k, obj[k]) for k in names if k in obj})
    return OperatorSpec(kind, obj['width'], params, obj.get('zero_policy', ZeroPolicy.PAD.value))


def parse_operator_spec(text: str) -> OperatorSpec:
    """Parse the JSON operator spec format.

    Raises
    ------
    ParseError
        If the text is not a JSON object (``position`` is the offset).
    ValidationError
        If any OperatorSpec invariant fails; ``invariant`` names it.

    Examples
    --------
        >>> parse_operator_spec('{"kind":"kaprekar","width":4}').width
        4
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"operator spec is not valid JSON: {e.msg}", e.pos) from None
    if not isinstance(obj, dict):
        raise ParseError("operator spec must be a JSON object", 0)
    return operator_spec_from_dict(obj)


def operator_spec_to_dict(spec: OperatorSpec) -> Dict[str, Any]:
    out: Dict[str, Any] = {
        'kind': spec.kind.value,
        'width': spec.width,
        'zero_policy': spec.zero_policy.value,
    }
    for f in fields(spec.params):
        value = getattr(spec.params, f.name)
        out[f.name] = value if isinstance(value, int) else str(value)
    return out


def serialize_operator_spec(spec: OperatorSpec) -> str:
    """Canonical one-line JSON; ``parse_operator_spec`` reads it back identically."""
    return json.dumps(operator_spec_to_dict(spec), sort_keys=True, separators=(',', ':'))


def load_operator_spec(path: Union[str, Path]) -> OperatorSpec:
    with open(path, 'r', encoding='utf-8') as f:
        spec = parse_operator_spec(f.read())
    _log.debug("loaded %s from %s", spec.describe(), path)
    return spec


# named catalog instances (the worked examples plus a few representatives)
PRESETS = {
    'kaprekar3': '{"kind":"kaprekar","width":3}',
    'kaprekar4': '{"kind":"kaprekar","width":4}',
    'perm_diff_231_132': '{"kind":"perm_diff","width":3,"p1":"2,3,1","p2":"1,3,2"}',
    'self_perm_diff_312': '{"kind":"self_perm_diff","width":3,"p":"3,1,2"}',
    'reverse_diff3': '{"kind":"reverse_diff","width":3}',
    'sf_swap_add_12': '{"kind":"sf_swap_add","width":3,"grouping":"1,2"}',
    'digit_shift_1910': '{"kind":"digit_shift_sub","width":3,"inc_amount":1,"inc_if_less_than":9,'
                        '"dec_amount":1,"dec_if_greater_than":0}',
    'digit_shift_2832': '{"kind":"digit_shift_sub","width":3,"inc_amount":2,"inc_if_less_than":8,'
                        '"dec_amount":3,"dec_if_greater_than":2}',
    'affine_7x3': '{"kind":"affine_mod","width":3,"m":7,"c":3}',
    'square_digit_sum3': '{"kind":"digit_power_sum","width":3,"exponent":2}',
    'fixed_random42': '{"kind":"fixed_random","width":4,"seed":42}',
}


def preset(name: str) -> OperatorSpec:
    if name not in PRESETS:
        raise ValidationError(f"unknown preset {name!r} (known: {', '.join(sorted(PRESETS))})",
                              invariant='preset')
    return parse_operator_spec(PRESETS[name])


def with_width(spec: OperatorSpec, width: int) -> OperatorSpec:
    """Same operator family at another width (kinds without width-bound params)."""
    obj = operator_spec_to_dict(spec)
    obj['width'] = width
    return operator_spec_from_dict(obj)

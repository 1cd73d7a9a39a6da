"""
Fixed-width base-10 digit strings and the digit-level primitives.

A ``DigitString`` keeps its leading zeros: ``from_integer(99, 3)`` is "099",
and that is a different value from "99" at width 2. Every operator in
``ank.operators`` is assembled from the helpers here.

Permutations follow the "list of source positions" convention: the mapping
``(2, 3, 1)`` puts the 2nd digit first, the 3rd second and the 1st last, so
"125" becomes "251".
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import regex as re

from .errors import InvalidPermutation, ParseError, ValueOutOfRange, WidthMismatch

BASE = 10
MIN_WIDTH = 1
MAX_WIDTH = 9  # 10**9 - 1 still fits comfortably in 64 bits

_DIGITS_PAT = re.compile(r'\A\s*([0-9]+)\s*\Z')
# one comma-separated item; group 1 is the number, positions come from the match
_LIST_ITEM_PAT = re.compile(r'\s*([0-9]+)\s*(?:,|\Z)')


def _check_width(width: int):
    if not isinstance(width, int) or isinstance(width, bool):
        raise ValueOutOfRange(f"width must be an integer, got {width!r}")
    if not MIN_WIDTH <= width <= MAX_WIDTH:
        raise ValueOutOfRange(f"width {width} outside {MIN_WIDTH}..{MAX_WIDTH}")


def parse_int_list(text: str, what: str = "list") -> List[int]:
    """Parse ``"2,3,1"`` into ``[2, 3, 1]``.

    Raises
    ------
    ParseError
        With the offset of the first character that does not fit.
    """
    if not isinstance(text, str):
        raise ParseError(f"{what} must be a string like '2,3,1', got {type(text).__name__}", 0)
    if not text.strip():
        raise ParseError(f"empty {what}", 0)
    values = []
    pos = 0
    while pos < len(text):
        m = _LIST_ITEM_PAT.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"bad {what} {text!r}: expected a number", pos)
        values.append(int(m.group(1)))
        if m.end() == len(text) and text.rstrip().endswith(','):
            raise ParseError(f"bad {what} {text!r}: trailing comma", len(text.rstrip()) - 1)
        pos = m.end()
    return values


def parse_decimal(text: str, what: str = "number") -> int:
    """Parse an ASCII decimal like ``"42"``; no sign, separators or other scripts.

    Raises
    ------
    ParseError
    """
    m = _DIGITS_PAT.match(text) if isinstance(text, str) else None
    if m is None:
        raise ParseError(f"bad {what} {text!r}: expected ASCII digits 0-9", 0)
    return int(m.group(1))


@dataclass(frozen=True)
class DigitString:
    """A width-k base-10 numeral with explicit leading zeros.

    Parameters
    ----------
    digits:
        Digit values 0–9, most significant first. ``width`` is their count.

    Examples
    --------
        >>> DigitString.parse("099").digits
        (0, 9, 9)
        >>> str(from_integer(6174, 4))
        '6174'
    """

    digits: Tuple[int, ...]

    def __post_init__(self):
        digits = tuple(self.digits)
        object.__setattr__(self, 'digits', digits)
        _check_width(len(digits))
        for d in digits:
            if not isinstance(d, int) or not 0 <= d <= 9:
                raise ValueOutOfRange(f"digit {d!r} outside 0..9")

    @property
    def width(self) -> int:
        return len(self.digits)

    @classmethod
    def parse(cls, text: str) -> "DigitString":
        """Read the textual form (exact width, leading zeros kept)."""
        m = _DIGITS_PAT.match(text) if isinstance(text, str) else None
        if m is None:
            raise ParseError(f"not a digit string: {text!r}", 0)
        return cls(tuple(int(c) for c in m.group(1)))

    def __str__(self):
        return ''.join(str(d) for d in self.digits)


@dataclass(frozen=True)
class Permutation:
    """A bijection of positions ``1..width`` given as source positions.

    Examples
    --------
        >>> p = Permutation.parse("2,3,1")
        >>> str(apply_permutation(DigitString.parse("125"), p))
        '251'
    """

    mapping: Tuple[int, ...]

    def __post_init__(self):
        mapping = tuple(self.mapping)
        object.__setattr__(self, 'mapping', mapping)
        width = len(mapping)
        if not MIN_WIDTH <= width <= MAX_WIDTH:
            raise InvalidPermutation(
                f"permutation length {width} outside {MIN_WIDTH}..{MAX_WIDTH}",
                invariant='permutation_width')
        if sorted(mapping) != list(range(1, width + 1)):
            raise InvalidPermutation(
                f"{','.join(map(str, mapping))} is not a bijection of 1..{width}",
                invariant='bijection')

    @property
    def width(self) -> int:
        return len(self.mapping)

    @property
    def indices(self) -> Tuple[int, ...]:
        """0-based source positions (what the vectorized kernels index with)."""
        return tuple(i - 1 for i in self.mapping)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        return cls(tuple(parse_int_list(text, "permutation")))

    @classmethod
    def identity(cls, width: int) -> "Permutation":
        return cls(tuple(range(1, width + 1)))

    def compose(self, other: "Permutation") -> "Permutation":
        """Permutation equal to applying ``self`` first, then ``other``."""
        if other.width != self.width:
            raise WidthMismatch(f"cannot compose widths {self.width} and {other.width}")
        return Permutation(tuple(self.mapping[j - 1] for j in other.mapping))

    def __str__(self):
        return ','.join(str(i) for i in self.mapping)


def from_integer(n: int, width: int) -> DigitString:
    """Zero-padded base-10 expansion of ``n`` at ``width`` digits.

    Raises
    ------
    ValueOutOfRange
        If ``n`` is negative or needs more than ``width`` digits.

    Examples
    --------
        >>> str(from_integer(99, 3))
        '099'
    """
    _check_width(width)
    if n < 0 or n >= BASE ** width:
        raise ValueOutOfRange(f"{n} does not fit in {width} digit(s)")
    digits = [0] * width
    for t in range(width - 1, -1, -1):
        n, digits[t] = divmod(n, BASE)
    return DigitString(tuple(digits))


def to_integer(ds: DigitString) -> int:
    return digits_to_integer(ds.digits)


def natural_width(n: int) -> int:
    """Digits needed for ``n`` without padding; zero takes one digit."""
    if n < 0:
        raise ValueOutOfRange(f"negative value {n}")
    return max(1, len(str(n)))


def strip_leading_zeros(ds: DigitString) -> DigitString:
    """Re-encode at the natural width ("099" -> "99", "000" -> "0")."""
    n = to_integer(ds)
    return from_integer(n, natural_width(n))


def sort_descending(ds: DigitString) -> DigitString:
    return DigitString(tuple(sorted(ds.digits, reverse=True)))


def sort_ascending(ds: DigitString) -> DigitString:
    return DigitString(tuple(sorted(ds.digits)))


def reverse(ds: DigitString) -> DigitString:
    return DigitString(ds.digits[::-1])


def apply_permutation(ds: DigitString, p: Permutation) -> DigitString:
    """Output digit t is input digit ``p.mapping[t]`` (1-based).

    Raises
    ------
    WidthMismatch
        If the permutation and the string have different widths.
    """
    if p.width != ds.width:
        raise WidthMismatch(
            f"permutation width {p.width} does not match digit string width {ds.width}")
    return DigitString(tuple(ds.digits[i] for i in p.indices))


def is_repdigit(ds: DigitString) -> bool:
    return len(set(ds.digits)) == 1


def digits_to_integer(digits: Sequence[int]) -> int:
    """Positional value of a bare digit sequence (no width checks)."""
    value = 0
    for d in digits:
        value = value * BASE + d
    return value

"""Exact arithmetic over Q and one real quadratic field Q(sqrt D).

A ``FieldElement`` stores (a + b*sqrt(D)) / c in canonical form, so equality is
syntactic and ``floor`` is decided with integer square roots only. Rationals
carry D = 0 and combine with any field; two irrational values combine only
when their radicands agree.
"""

import enum
import logging
import math
import operator
import re
from fractions import Fraction
from typing import Any, List, Tuple, Union

from pydantic_core import core_schema

from kbalance.errors import FieldMismatchError, GrammarError, RangeError

logger = logging.getLogger(__name__)

_VALUE_FORMAT = re.compile(r"""
    \A(?P<neg>-)?
    (?:
        (?P<num>\d+)(?:/(?P<den>\d+))?               # p or p/q
      | \(
            (?P<a>[-+]?\d+)?
            (?P<op>[-+])?
            (?:(?P<b>\d+)\*)?
            sqrt\((?P<d>\d+)\)
        \)
        (?:/(?P<c>\d+))?                             # (a+b*sqrt(D))/c
    )\Z
""", re.VERBOSE)


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def _split_square(radicand: int) -> Tuple[int, int]:
    """Write radicand as s*s*r with r square-free; returns (s, r)"""
    outer, rest = 1, radicand
    p = 2
    while p * p <= rest:
        while rest % (p * p) == 0:
            rest //= p * p
            outer *= p
        p += 1 if p == 2 else 2
    return outer, rest


def quadratic_sign(p: int, q: int, radicand: int) -> int:
    """Sign of p + q*sqrt(radicand) decided with integer arithmetic only"""
    if q == 0 or radicand == 0:
        return (p > 0) - (p < 0)
    if p == 0:
        return (q > 0) - (q < 0)
    if (p > 0) == (q > 0):
        return 1 if p > 0 else -1
    # opposite signs: compare p^2 with q^2 * D
    diff = p * p - q * q * radicand
    if diff == 0:
        return 0
    return (1 if diff > 0 else -1) if p > 0 else (-1 if diff > 0 else 1)


def floor_quadratic(p: int, q: int, radicand: int) -> int:
    """floor(p + q*sqrt(radicand)) for integers p, q and radicand >= 0"""
    square = q * q * radicand
    root = math.isqrt(square)
    if q >= 0:
        return p + root
    return p - root if root * root == square else p - root - 1


class FieldElement:
    """Immutable exact number (a + b*sqrt(D)) / c.

    Canonical form: c > 0, gcd(a, b, c) = 1, D square-free, and D = 0 whenever
    b = 0.
    """

    __slots__ = ("_a", "_b", "_c", "_d")

    def __new__(cls, a: int = 0, b: int = 0, c: int = 1, radicand: int = 0):
        if c == 0:
            raise ZeroDivisionError(f"FieldElement({a}, {b}, 0, {radicand})")
        if radicand < 0:
            raise RangeError(f"radicand must be non-negative, got {radicand}")
        if b != 0 and radicand > 0:
            outer, radicand = _split_square(radicand)
            b *= outer
            if radicand == 1:
                a, b, radicand = a + b, 0, 0
        else:
            b, radicand = 0, 0
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(a, b, c)
        self = super().__new__(cls)
        self._a = a // g
        self._b = b // g
        self._c = c // g
        self._d = radicand
        return self

    @classmethod
    def of(cls, value: Union["FieldElement", int, Fraction, str]) -> "FieldElement":
        """Coerce an int, Fraction, grammar string or FieldElement"""
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, str):
            return parse(value)
        coerced = _coerce(value)
        if coerced is NotImplemented:
            raise GrammarError(f"cannot interpret {value!r} as an exact value")
        return coerced

    @property
    def a(self) -> int:
        return self._a

    @property
    def b(self) -> int:
        return self._b

    @property
    def c(self) -> int:
        return self._c

    @property
    def radicand(self) -> int:
        return self._d

    @property
    def is_rational(self) -> bool:
        return self._b == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{render(self)} is irrational")
        return Fraction(self._a, self._c)

    def conjugate(self) -> "FieldElement":
        return FieldElement(self._a, -self._b, self._c, self._d)

    def sign(self) -> int:
        return quadratic_sign(self._a, self._b, self._d)

    # Arithmetic

    def _add(x, y):
        radicand = _common_radicand(x, y)
        return FieldElement(x._a * y._c + y._a * x._c,
                            x._b * y._c + y._b * x._c,
                            x._c * y._c, radicand)

    def _sub(x, y):
        return x._add(-y)

    def _mul(x, y):
        radicand = _common_radicand(x, y)
        return FieldElement(x._a * y._a + x._b * y._b * radicand,
                            x._a * y._b + x._b * y._a,
                            x._c * y._c, radicand)

    def _div(x, y):
        if not y:
            raise ZeroDivisionError(f"division of {render(x)} by zero")
        # x / y = x * conj(y) / (y * conj(y)), the denominator rational
        conjugate = y.conjugate()
        norm = y._mul(conjugate)
        return x._mul(conjugate)._mul(FieldElement(norm._c, 0, norm._a))

    def _operator_fallbacks(monomorphic_operator, fallback_operator):
        def forward(a, b):
            b = _coerce(b)
            if b is NotImplemented:
                return NotImplemented
            return monomorphic_operator(a, b)

        forward.__name__ = "__" + fallback_operator.__name__ + "__"

        def reverse(b, a):
            a = _coerce(a)
            if a is NotImplemented:
                return NotImplemented
            return monomorphic_operator(a, b)

        reverse.__name__ = "__r" + fallback_operator.__name__ + "__"
        return forward, reverse

    __add__, __radd__ = _operator_fallbacks(_add, operator.add)
    __sub__, __rsub__ = _operator_fallbacks(_sub, operator.sub)
    __mul__, __rmul__ = _operator_fallbacks(_mul, operator.mul)
    __truediv__, __rtruediv__ = _operator_fallbacks(_div, operator.truediv)

    def __neg__(self):
        return FieldElement(-self._a, -self._b, self._c, self._d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __floor__(self) -> int:
        return floor_quadratic(self._a, self._b, self._d) // self._c

    def __ceil__(self) -> int:
        return -math.floor(-self)

    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0

    def __float__(self) -> float:
        # display only; never used for decisions
        return (self._a + self._b * math.sqrt(self._d)) / self._c

    # Comparison

    def _compare(self, other) -> int:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign()

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self._a, self._b, self._c, self._d) == (other._a, other._b, other._c, other._d)

    def __lt__(self, other):
        result = self._compare(other)
        return result if result is NotImplemented else result < 0

    def __le__(self, other):
        result = self._compare(other)
        return result if result is NotImplemented else result <= 0

    def __gt__(self, other):
        result = self._compare(other)
        return result if result is NotImplemented else result > 0

    def __ge__(self, other):
        result = self._compare(other)
        return result if result is NotImplemented else result >= 0

    def __hash__(self):
        if self.is_rational:
            return hash(Fraction(self._a, self._c))
        return hash((self._a, self._b, self._c, self._d))

    def __reduce__(self):
        return (self.__class__, (self._a, self._b, self._c, self._d))

    def __repr__(self):
        return f"FieldElement('{render(self)}')"

    def __str__(self):
        return render(self)

    @classmethod
    def __get_pydantic_core_schema__(cls, source_type: Any, handler: Any) -> core_schema.CoreSchema:
        return core_schema.no_info_plain_validator_function(
            _validate_field_element,
            serialization=core_schema.plain_serializer_function_ser_schema(render),
        )


def _validate_field_element(value: Any) -> FieldElement:
    try:
        return FieldElement.of(value)
    except GrammarError as e:
        raise ValueError(str(e)) from e


def _coerce(value: Any):
    if isinstance(value, FieldElement):
        return value
    if isinstance(value, bool):
        return NotImplemented
    if isinstance(value, int):
        return FieldElement(value)
    if isinstance(value, Fraction):
        return FieldElement(value.numerator, 0, value.denominator)
    return NotImplemented


def _common_radicand(x: FieldElement, y: FieldElement) -> int:
    if x._d == 0:
        return y._d
    if y._d == 0 or y._d == x._d:
        return x._d
    raise FieldMismatchError(f"cannot combine values from Q(sqrt({x._d})) and Q(sqrt({y._d}))")


ZERO = FieldElement(0)
ONE = FieldElement(1)


def add(x: FieldElement, y: FieldElement) -> FieldElement:
    return x + y


def sub(x: FieldElement, y: FieldElement) -> FieldElement:
    return x - y


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return x * y


def div(x: FieldElement, y: FieldElement) -> FieldElement:
    return x / y


def floor(x: FieldElement) -> int:
    return math.floor(x)


def ceil(x: FieldElement) -> int:
    return math.ceil(x)


def compare(x: FieldElement, y: FieldElement) -> Ordering:
    """Exact total order; raises FieldMismatchError for incompatible fields"""
    return Ordering((x - y).sign())


def common_radicand(values: List[FieldElement]) -> int:
    """The single radicand shared by values (0 if all rational)"""
    radicand = 0
    for value in values:
        if value.radicand and radicand and value.radicand != radicand:
            raise FieldMismatchError(
                f"values from Q(sqrt({radicand})) and Q(sqrt({value.radicand})) cannot be mixed"
            )
        radicand = radicand or value.radicand
    return radicand


def parse(text: str) -> FieldElement:
    """Parse `p/q` | `p` | `(a+b*sqrt(D))/c` | `(a-b*sqrt(D))/c`, whitespace-insensitive"""
    compact = "".join(str(text).split())
    m = _VALUE_FORMAT.match(compact)
    if m is None:
        raise GrammarError(f"malformed exact value: {text!r}")
    sign = -1 if m.group("neg") else 1
    if m.group("num") is not None:
        den = int(m.group("den") or 1)
        if den == 0:
            raise GrammarError(f"zero denominator in {text!r}")
        return FieldElement(sign * int(m.group("num")), 0, den)
    a = int(m.group("a") or 0)
    if m.group("a") is not None and m.group("op") is None:
        raise GrammarError(f"missing operator before sqrt in {text!r}")
    b = int(m.group("b") or 1) * (-1 if m.group("op") == "-" else 1)
    c = int(m.group("c") or 1)
    if c == 0:
        raise GrammarError(f"zero denominator in {text!r}")
    return FieldElement(sign * a, sign * b, c, int(m.group("d")))


def render(x: FieldElement) -> str:
    """Inverse of parse on canonical forms"""
    if x.is_rational:
        return str(x.a) if x.c == 1 else f"{x.a}/{x.c}"
    op = "+" if x.b > 0 else "-"
    return f"({x.a}{op}{abs(x.b)}*sqrt({x.radicand}))/{x.c}"


def parse_vector(text: str) -> List[FieldElement]:
    """Comma-separated list of exact values, e.g. "1/2,1/3,1/6" """
    parts = [part for part in str(text).split(",")]
    if not parts or any(not part.strip() for part in parts):
        raise GrammarError(f"malformed value list: {text!r}")
    return [parse(part) for part in parts]

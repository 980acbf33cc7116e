"""Exact rationals and truncated power series in the deformation parameter xi.

Every coefficient in the package is either a rational number ``Q`` or an
:class:`XiSeries`, a polynomial in ``xi`` taken modulo ``xi**(K+1)``.
``Q`` is ``gmpy2.mpq`` when gmpy2 is importable and ``fractions.Fraction``
otherwise; both are exact and always reduced.
"""
from __future__ import annotations

import os
from fractions import Fraction
from numbers import Rational as _RationalABC

try:  # pragma: no cover - exercised implicitly
    from gmpy2 import mpq as Q

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover
    Q = Fraction
    HAVE_GMPY2 = False

__all__ = [
    "Q",
    "ZERO",
    "ONE",
    "DEFAULT_ORDER",
    "OrderMismatchError",
    "NotInvertibleError",
    "XiSeries",
    "to_rational",
    "format_rational",
    "parse_rational",
    "series_mul",
    "series_invert",
    "series_compose_log1p",
    "default_order",
]

ZERO = Q(0)
ONE = Q(1)
DEFAULT_ORDER = 4


class OrderMismatchError(ValueError):
    """Raised when objects truncated at different orders are combined."""


class NotInvertibleError(ArithmeticError):
    """Raised when an inverse is requested for an element with no inverse."""


def default_order():
    """Truncation order from ``JTWIST_ORDER`` or :data:`DEFAULT_ORDER`."""
    raw = os.environ.get("JTWIST_ORDER")
    if raw is None or raw.strip() == "":
        return DEFAULT_ORDER
    value = int(raw)
    if value < 0:
        raise ValueError("JTWIST_ORDER must be non-negative")
    return value


def to_rational(value):
    """Coerce ints, Fractions, mpq and ``"p/q"`` strings to ``Q``."""
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not accepted")
    if isinstance(value, (int, _RationalABC)) or type(value) is type(ONE):
        return Q(value)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def parse_rational(text):
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    return Q(Fraction(text))


def format_rational(value):
    """Render as ``"p/q"``, or ``"p"`` when the denominator is one."""
    value = Q(value)
    num, den = int(value.numerator), int(value.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


class XiSeries:
    """A truncated power series ``c0 + c1 xi + ... + cK xi**K``.

    Instances are immutable.  Arithmetic between series of different
    orders raises :class:`OrderMismatchError`; plain rationals and ints
    are promoted to constant series.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs, order=None):
        cs = [to_rational(c) for c in coeffs]
        if order is None:
            if not cs:
                raise ValueError("order is required for an empty coefficient list")
            order = len(cs) - 1
        if order < 0:
            raise ValueError("order must be non-negative")
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        cs.extend([ZERO] * (order + 1 - len(cs)))
        self._c = tuple(cs)

    @classmethod
    def _raw(cls, coeffs):
        obj = cls.__new__(cls)
        obj._c = tuple(coeffs)
        return obj

    # -- constructors ------------------------------------------------------
    @classmethod
    def constant(cls, value, order):
        return cls([value], order)

    @classmethod
    def zero(cls, order):
        return cls._raw([ZERO] * (order + 1))

    @classmethod
    def one(cls, order):
        return cls.constant(1, order)

    @classmethod
    def xi(cls, order, power=1, coeff=1):
        """``coeff * xi**power`` (zero if the power exceeds the order)."""
        cs = [ZERO] * (order + 1)
        if power <= order:
            cs[power] = to_rational(coeff)
        return cls._raw(cs)

    # -- accessors ---------------------------------------------------------
    @property
    def order(self):
        return len(self._c) - 1

    @property
    def coeffs(self):
        return self._c

    def __getitem__(self, k):
        return self._c[k]

    def __len__(self):
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def valuation(self):
        """Least k with a nonzero coefficient; ``order + 1`` for zero."""
        for k, c in enumerate(self._c):
            if c:
                return k
        return self.order + 1

    def is_zero(self):
        return not any(self._c)

    def truncate(self, order):
        if order > self.order:
            raise OrderMismatchError("cannot raise the truncation order of a series")
        return XiSeries._raw(self._c[: order + 1])

    def substitute(self, value):
        """Evaluate the truncated polynomial at a rational point."""
        value = to_rational(value)
        acc = ZERO
        for c in reversed(self._c):
            acc = acc * value + c
        return acc

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, XiSeries):
            if other.order != self.order:
                raise OrderMismatchError(
                    f"series of order {self.order} combined with order {other.order}"
                )
            return other
        try:
            value = to_rational(other)
        except TypeError:
            return None
        return XiSeries.constant(value, self.order)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return XiSeries._raw([a + b for a, b in zip(self._c, o._c)])

    __radd__ = __add__

    def __neg__(self):
        return XiSeries._raw([-a for a in self._c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return XiSeries._raw([a - b for a, b in zip(self._c, o._c)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, XiSeries):
            return series_mul(self, other)
        try:
            value = to_rational(other)
        except TypeError:
            return NotImplemented
        return XiSeries._raw([a * value for a in self._c])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, XiSeries):
            return series_mul(self, series_invert(other))
        value = to_rational(other)
        if not value:
            raise ZeroDivisionError("division of a series by zero")
        return XiSeries._raw([a / value for a in self._c])

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = XiSeries.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k):
        """Multiply by ``xi**k`` (k >= 0)."""
        if k < 0:
            raise ValueError("negative shift")
        K = self.order
        return XiSeries._raw(([ZERO] * k + list(self._c))[: K + 1])

    def divide_by_xi(self):
        """Exact division by ``xi``; the constant term must vanish.

        The top coefficient of the result is unknown at this order and is set
        to zero, so callers should only use the quotient after multiplying it
        by a positive power of xi again.
        """
        if self._c[0]:
            raise NotInvertibleError("series with nonzero constant term is not divisible by xi")
        return XiSeries._raw(list(self._c[1:]) + [ZERO])

    # -- comparison / rendering ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, XiSeries):
            return self._c == other._c
        try:
            value = to_rational(other)
        except TypeError:
            return NotImplemented
        return self._c[0] == value and not any(self._c[1:])

    def __hash__(self):
        return hash(self._c)

    def __bool__(self):
        return not self.is_zero()

    def to_json(self):
        return [format_rational(c) for c in self._c]

    @classmethod
    def from_json(cls, data):
        return cls([parse_rational(str(s)) for s in data])

    def __repr__(self):
        return f"XiSeries({self.to_json()!r})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self._c):
            if not c:
                continue
            mag = format_rational(abs(c))
            sign = "-" if c < 0 else "+"
            if k == 0:
                body = mag
            else:
                xi = "xi" if k == 1 else f"xi^{k}"
                body = xi if mag == "1" else f"{mag}*{xi}"
            parts.append((sign, body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def series_mul(a, b):
    """Cauchy product of two series of equal order, truncated."""
    if a.order != b.order:
        raise OrderMismatchError(f"series of order {a.order} multiplied by order {b.order}")
    K = a.order
    ac, bc = a.coeffs, b.coeffs
    out = [ZERO] * (K + 1)
    for i, x in enumerate(ac):
        if not x:
            continue
        for j in range(K + 1 - i):
            y = bc[j]
            if y:
                out[i + j] += x * y
    return XiSeries._raw(out)


def series_invert(a):
    """Multiplicative inverse; the constant term must be nonzero."""
    c0 = a.coeffs[0]
    if not c0:
        raise NotInvertibleError("series with zero constant term is not invertible")
    K = a.order
    ac = a.coeffs
    inv0 = ONE / c0
    out = [inv0] + [ZERO] * K
    for n in range(1, K + 1):
        acc = ZERO
        for i in range(1, n + 1):
            if ac[i]:
                acc += ac[i] * out[n - i]
        out[n] = -acc * inv0
    return XiSeries._raw(out)


def series_compose_log1p(c, order=None):
    """The scalar series ``(1/2) ln(1 + c xi)`` truncated at ``order``."""
    if order is None:
        order = default_order()
    c = to_rational(c)
    out = [ZERO] * (order + 1)
    power = ONE
    for k in range(1, order + 1):
        power *= c
        sign = 1 if k % 2 else -1
        out[k] = sign * power / (2 * k)
    return XiSeries._raw(out)

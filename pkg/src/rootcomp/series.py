"""Exact scalars: Laurent polynomials in ``t`` over Q, and polynomials mod ``t^M``."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

INF = math.inf


def _q(x):
    """Coerce to an exact rational; integral values are kept as ``int``."""
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return _q(Fraction(x.numerator, x.denominator))
    if isinstance(x, str):
        return _q(Fraction(x))
    raise TypeError(f"not an exact rational: {x!r}")


class LaurentPoly:
    """Immutable Laurent polynomial ``sum c_k t^k`` with rational coefficients.

    Stored as ``min_exponent`` plus a tuple of coefficients whose first and
    last entries are nonzero. The zero polynomial is ``()`` with exponent 0.
    """

    __slots__ = ("_lo", "_c", "_hash")

    def __init__(self, coefficients=(), min_exponent: int = 0):
        c = [_q(x) for x in coefficients]
        start = 0
        while start < len(c) and c[start] == 0:
            start += 1
        end = len(c)
        while end > start and c[end - 1] == 0:
            end -= 1
        if start == end:
            self._lo, self._c = 0, ()
        else:
            self._lo, self._c = int(min_exponent) + start, tuple(c[start:end])
        self._hash = None

    @classmethod
    def _raw(cls, lo, c):
        # trusted constructor: c already canonical
        obj = cls.__new__(cls)
        obj._lo, obj._c, obj._hash = lo, c, None
        return obj

    @classmethod
    def monomial(cls, exponent: int, coefficient=1) -> LaurentPoly:
        return cls((coefficient,), exponent)

    @classmethod
    def const(cls, c) -> LaurentPoly:
        return cls((c,), 0)

    @classmethod
    def from_dict(cls, terms: dict) -> LaurentPoly:
        terms = {k: v for k, v in terms.items() if v != 0}
        if not terms:
            return ZERO
        lo, hi = min(terms), max(terms)
        return cls([terms.get(k, 0) for k in range(lo, hi + 1)], lo)

    @classmethod
    def coerce(cls, x) -> LaurentPoly:
        if isinstance(x, LaurentPoly):
            return x
        return cls.const(x)

    # -- inspection -----------------------------------------------------

    @property
    def min_exponent(self) -> int:
        return self._lo

    @property
    def coefficients(self) -> tuple:
        return self._c

    @property
    def valuation(self):
        """Exponent of the lowest term; ``math.inf`` for zero."""
        return self._lo if self._c else INF

    @property
    def degree(self):
        return self._lo + len(self._c) - 1 if self._c else -INF

    def is_zero(self) -> bool:
        return not self._c

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def is_constant(self) -> bool:
        return not self._c or (self._lo == 0 and len(self._c) == 1)

    def coeff(self, k: int):
        i = k - self._lo
        if 0 <= i < len(self._c):
            return self._c[i]
        return 0

    def terms(self):
        """Yield ``(exponent, coefficient)`` for the nonzero terms."""
        for i, c in enumerate(self._c):
            if c != 0:
                yield self._lo + i, c

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._lo == other._lo and self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._lo, self._c))
        return self._hash

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = LaurentPoly.const(other)
        if not self._c:
            return other
        if not other._c:
            return self
        lo = min(self._lo, other._lo)
        hi = max(self._lo + len(self._c), other._lo + len(other._c))
        out = [0] * (hi - lo)
        for i, c in enumerate(self._c):
            out[self._lo - lo + i] += c
        for i, c in enumerate(other._c):
            out[other._lo - lo + i] += c
        return LaurentPoly(out, lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self._lo, tuple(-c for c in self._c))

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            s = _q(other)
            if s == 0:
                return ZERO
            return LaurentPoly._raw(self._lo, tuple(_q(c * s) for c in self._c))
        if not self._c or not other._c:
            return ZERO
        a, b = self._c, other._c
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        # leading and trailing products are nonzero, so only interior cleanup
        return LaurentPoly._raw(self._lo + other._lo, tuple(_q(c) for c in out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent-polynomial inverses")
            return LaurentPoly.monomial(-self._lo, Fraction(1) / self._c[0]) ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``t^k``."""
        if not self._c:
            return self
        return LaurentPoly._raw(self._lo + k, self._c)

    def substitute_neg_t(self) -> LaurentPoly:
        """Apply ``t -> -t``."""
        return LaurentPoly._raw(
            self._lo,
            tuple(-c if (self._lo + i) % 2 else c for i, c in enumerate(self._c)),
        )

    def exact_div(self, other: LaurentPoly) -> LaurentPoly:
        """Quotient ``self / other``; raises ``ValueError`` unless it divides exactly."""
        other = LaurentPoly.coerce(other)
        if not other._c:
            raise ZeroDivisionError("division by zero polynomial")
        if not self._c:
            return ZERO
        b = other._c
        if len(b) == 1:
            inv = Fraction(1) / b[0]
            return LaurentPoly._raw(self._lo - other._lo, tuple(_q(c * inv) for c in self._c))
        a = list(self._c)
        qlen = len(a) - len(b) + 1
        if qlen <= 0:
            raise ValueError("not divisible")
        inv0 = Fraction(1) / b[0]
        q = []
        for k in range(qlen):
            coef = _q(a[k] * inv0)
            q.append(coef)
            if coef:
                for i, y in enumerate(b):
                    a[k + i] -= coef * y
        if any(a[qlen:]):
            raise ValueError("not divisible")
        return LaurentPoly(q, self._lo - other._lo)

    # -- text -----------------------------------------------------------

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for k, c in self.terms():
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if k == 0:
                body = str(mag)
            else:
                mono = "t" if k == 1 else f"t^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        """Parse strings such as ``"1 - 2*t^-1 + 3/2*t^2"`` or ``"t"``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial")
        pos = 0
        terms: dict = {}
        while pos < len(s):
            m = _TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial {text!r}")
            sign, coef, var, exp = m.group("sign", "coef", "var", "exp")
            if sign is None and pos > 0:
                raise ValueError(f"cannot parse polynomial {text!r}")
            if coef is None and var is None:
                raise ValueError(f"cannot parse polynomial {text!r}")
            c = Fraction(coef) if coef else Fraction(1)
            if sign == "-":
                c = -c
            k = 0
            if var:
                k = int(exp) if exp is not None else 1
            elif exp is not None:
                raise ValueError(f"exponent without t in {text!r}")
            terms[k] = terms.get(k, 0) + c
            pos = m.end()
        return cls.from_dict(terms)


_TERM = re.compile(
    r"(?P<sign>[+-])?"
    r"(?P<coef>\d+(?:/\d+)?)?"
    r"(?:\*?(?P<var>t)(?:\^\(?(?P<exp>-?\d+)\)?)?)?"
)

ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
T = LaurentPoly.monomial(1)


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_valuation(a: LaurentPoly):
    return a.valuation


def lp_substitute_neg_t(a: LaurentPoly) -> LaurentPoly:
    return a.substitute_neg_t()


class TruncPoly:
    """Element of ``Q[t] / (t^M)``: coefficients of ``t^0 .. t^(M-1)``."""

    __slots__ = ("order", "coefficients")

    def __init__(self, coefficients, order: int):
        if order <= 0:
            raise ValueError("truncation order must be positive")
        c = [_q(x) for x in list(coefficients)[:order]]
        c.extend([0] * (order - len(c)))
        self.order = order
        self.coefficients = tuple(c)

    @classmethod
    def from_laurent(cls, p: LaurentPoly, order: int) -> TruncPoly:
        if p and p.valuation < 0:
            raise ValueError("negative valuation has no image mod t^M")
        return cls([p.coeff(k) for k in range(order)], order)

    def to_laurent(self) -> LaurentPoly:
        return LaurentPoly(self.coefficients, 0)

    @property
    def valuation(self):
        for k, c in enumerate(self.coefficients):
            if c != 0:
                return k
        return INF

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def _check(self, other: TruncPoly):
        if other.order != self.order:
            raise ValueError("mixed truncation orders")

    def __add__(self, other: TruncPoly) -> TruncPoly:
        self._check(other)
        return TruncPoly([a + b for a, b in zip(self.coefficients, other.coefficients)], self.order)

    def __sub__(self, other: TruncPoly) -> TruncPoly:
        self._check(other)
        return TruncPoly([a - b for a, b in zip(self.coefficients, other.coefficients)], self.order)

    def __neg__(self) -> TruncPoly:
        return TruncPoly([-a for a in self.coefficients], self.order)

    def __mul__(self, other: TruncPoly) -> TruncPoly:
        self._check(other)
        M = self.order
        a, b = self.coefficients, other.coefficients
        out = [0] * M
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j in range(M - i):
                y = b[j]
                if y:
                    out[i + j] += x * y
        return TruncPoly(out, M)

    def __eq__(self, other):
        if not isinstance(other, TruncPoly):
            return NotImplemented
        return self.order == other.order and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.order, self.coefficients))

    def unit_inverse(self) -> TruncPoly:
        """Inverse of a unit (nonzero constant term) modulo ``t^M``."""
        a = self.coefficients
        if a[0] == 0:
            raise ZeroDivisionError("not a unit in Q[t]/(t^M)")
        inv0 = Fraction(1) / a[0]
        out = [0] * self.order
        out[0] = _q(inv0)
        for k in range(1, self.order):
            s = 0
            for i in range(1, k + 1):
                if a[i]:
                    s += a[i] * out[k - i]
            out[k] = _q(-s * inv0)
        return TruncPoly(out, self.order)

    def shift_down(self, a: int) -> TruncPoly:
        """Divide by ``t^a`` (must divide); the result lives mod ``t^(M-a)``."""
        if any(self.coefficients[:a]):
            raise ValueError(f"t^{a} does not divide")
        return TruncPoly(self.coefficients[a:], self.order - a)

    def shift_up(self, a: int, order: int) -> TruncPoly:
        """Multiply by ``t^a`` and view mod ``t^order``."""
        return TruncPoly([0] * a + list(self.coefficients), order)

    def __repr__(self):
        return f"TruncPoly({self.to_laurent()} mod t^{self.order})"

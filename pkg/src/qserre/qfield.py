"""Exact arithmetic in the coefficient field Q(s), with q = s^2.

Everything downstream has coefficients here.  Working in the square root
s of the deformation parameter lets one field serve both the algebras
with integer q-powers and the quantum-coordinate algebra, which needs
q^(1/2).  Values are immutable and normalized on construction, so they
are safe to share between concurrent checks.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd


# ---------------------------------------------------------------------------
# dense integer polynomials in s, as tuples with no trailing zeros
# ---------------------------------------------------------------------------

def _trim(cs):
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pneg(a):
    return tuple(-c for c in a)


def _psub(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return _trim(out)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return _trim(out)


def _pscale(a, k):
    if k == 0:
        return ()
    return tuple(c * k for c in a)


def _content(a):
    g = 0
    for c in a:
        g = _int_gcd(g, c)
        if g == 1:
            return 1
    return g


def _primitive(a):
    """Primitive part with positive leading coefficient."""
    if not a:
        return ()
    g = _content(a)
    if a[-1] < 0:
        g = -g
    if g == 1:
        return a
    return tuple(c // g for c in a)


def _pdivmod_exact(a, b):
    """Quotient of a by b in Z[s]; remainder must come out zero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    bl = b[-1]
    out = [0] * max(0, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = rem[i + len(b) - 1]
        if c == 0:
            continue
        if c % bl != 0:
            raise ArithmeticError("inexact polynomial division")
        f = c // bl
        out[i] = f
        for j, cb in enumerate(b):
            rem[i + j] -= f * cb
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return _trim(out)


def _prem(a, b):
    """Pseudo-remainder of a by b over Z."""
    d = len(a) - len(b)
    if d < 0:
        return a
    rem = list(a)
    bl = b[-1]
    for i in range(d, -1, -1):
        c = rem[i + len(b) - 1]
        for j in range(i + len(b) - 1):
            rem[j] *= bl
        for j, cb in enumerate(b):
            rem[i + j] = rem[i + j] - c * cb
        # re-trim lazily; top coefficient is now exactly zero
        rem[i + len(b) - 1] = 0
    return _trim(rem)


def _pgcd(a, b):
    """gcd of primitive parts, primitive PRS, positive leading coeff."""
    if a == (1,) or b == (1,):
        return (1,)
    a, b = _primitive(a), _primitive(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _primitive(_prem(a, b))
        a, b = b, r
    return a


def _peval(a, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# QPoly: thin immutable wrapper, the stored numerators/denominators
# ---------------------------------------------------------------------------

class QPoly:
    """Integer polynomial in the base indeterminate s (q = s^2)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        object.__setattr__(self, "coeffs", _trim(tuple(coeffs)))

    def __setattr__(self, *a):
        raise AttributeError("QPoly is immutable")

    @property
    def terms(self):
        """(exponent, coefficient) pairs, exponents increasing, no zeros."""
        return tuple((e, c) for e, c in enumerate(self.coeffs) if c)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else None

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        return QPoly(_padd(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return QPoly(_psub(self.coeffs, other.coeffs))

    def __neg__(self):
        return QPoly(_pneg(self.coeffs))

    def __mul__(self, other):
        return QPoly(_pmul(self.coeffs, other.coeffs))

    def __call__(self, x: Fraction) -> Fraction:
        return _peval(self.coeffs, x)

    def __repr__(self):
        return "QPoly(%r)" % (self.coeffs,)

    def __str__(self):
        return _poly_str(self.coeffs)


def _poly_str(cs):
    if not cs:
        return "0"
    # even exponents throughout render in q, otherwise stay in s
    use_q = all(c == 0 for e, c in enumerate(cs) if e % 2)
    parts = []
    for e, c in enumerate(cs):
        if not c:
            continue
        if e == 0:
            tok = str(abs(c))
        else:
            name, k = ("q", e // 2) if use_q else ("s", e)
            tok = name if k == 1 else "%s^%d" % (name, k)
            if abs(c) != 1:
                tok = "%d*%s" % (abs(c), tok)
        if not parts:
            parts.append(("-" if c < 0 else "") + tok)
        else:
            parts.append(("-" if c < 0 else "+") + tok)
    return "".join(parts)


# ---------------------------------------------------------------------------
# QRat: the field elements
# ---------------------------------------------------------------------------

class QRat:
    """Rational function num/den in s, kept in canonical reduced form.

    Canonical form: numerator and denominator share no polynomial factor
    and no integer content, and the denominator has a positive leading
    coefficient.  Equality and hashing are structural, which the
    canonical form makes equivalent to field equality.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        n, d = _as_parts(num)
        if den is not None:
            dn, dd = _as_parts(den)
            if not dn:
                raise ZeroDivisionError("division by zero in Q(s)")
            n, d = _pmul(n, dd), _pmul(d, dn)
        n, d = _normalize(n, d)
        object.__setattr__(self, "num", QPoly(n))
        object.__setattr__(self, "den", QPoly(d))

    def __setattr__(self, *a):
        raise AttributeError("QRat is immutable")

    @classmethod
    def _raw(cls, n, d):
        """Construct from pre-normalized coefficient tuples."""
        self = object.__new__(cls)
        object.__setattr__(self, "num", QPoly(n))
        object.__setattr__(self, "den", QPoly(d))
        return self

    def _inverse_parts(self):
        n, d = self.num.coeffs, self.den.coeffs
        if not n:
            raise ZeroDivisionError("division by zero in Q(s)")
        if n[-1] < 0:
            n, d = _pneg(n), _pneg(d)
        return d, n

    # -- predicates ---------------------------------------------------------

    @property
    def is_zero(self):
        return not self.num.coeffs

    def __bool__(self):
        return bool(self.num.coeffs)

    @property
    def is_negative(self):
        """Sign of the leading numerator coefficient (den is positive)."""
        return bool(self.num.coeffs) and self.num.coeffs[-1] < 0

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.num.coeffs, self.den.coeffs
        c, d = other.num.coeffs, other.den.coeffs
        if b == d:
            return QRat._raw(*_normalize(_padd(a, c), b))
        return QRat._raw(*_normalize(_padd(_pmul(a, d), _pmul(c, b)), _pmul(b, d)))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.num.coeffs, self.den.coeffs
        c, d = other.num.coeffs, other.den.coeffs
        if b == d:
            return QRat._raw(*_normalize(_psub(a, c), b))
        return QRat._raw(*_normalize(_psub(_pmul(a, d), _pmul(c, b)), _pmul(b, d)))

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return QRat._raw(_pneg(self.num.coeffs), self.den.coeffs)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.num.coeffs, self.den.coeffs
        c, d = other.num.coeffs, other.den.coeffs
        if not a or not c:
            return ZERO
        # cross-cancel before multiplying to keep intermediates small
        if d != (1,):
            g1 = _pgcd(a, d)
            if len(g1) > 1:
                a, d = _pdivmod_exact(a, g1), _pdivmod_exact(d, g1)
        if b != (1,):
            g2 = _pgcd(c, b)
            if len(g2) > 1:
                c, b = _pdivmod_exact(c, g2), _pdivmod_exact(b, g2)
        return QRat._raw(*_normalize(_pmul(a, c), _pmul(b, d)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * QRat._raw(*other._inverse_parts())

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * QRat._raw(*self._inverse_parts())

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (ONE / self) ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num.coeffs, self.den.coeffs))

    # -- evaluation and display ----------------------------------------------

    def __call__(self, s_value) -> Fraction:
        """Exact value at s = s_value; raises if the denominator vanishes."""
        s_value = Fraction(s_value)
        d = self.den(s_value)
        if d == 0:
            raise ZeroDivisionError(
                "denominator vanishes at s=%s" % (s_value,))
        return self.num(s_value) / d

    def __repr__(self):
        return "QRat(%s)" % self

    def __str__(self):
        n, d = self.num.coeffs, self.den.coeffs
        if d == (1,):
            return _poly_str(n)
        # display with a positive lowest denominator coefficient (1-q, not -1+q)
        if next(c for c in d if c) < 0:
            n, d = _pneg(n), _pneg(d)
        return "%s/%s" % (_wrap(_poly_str(n)), _wrap(_poly_str(d)))


def _wrap(txt):
    return "(%s)" % txt if any(ch in txt for ch in "+-*/") and not _is_simple_neg(txt) else txt


def _is_simple_neg(txt):
    return txt.startswith("-") and not any(ch in txt[1:] for ch in "+-*/")


def _coerce(x):
    if isinstance(x, QRat):
        return x
    if isinstance(x, (int, Fraction, QPoly)):
        return QRat(x)
    return NotImplemented


def _as_parts(x):
    """(num tuple, den tuple) of an int / Fraction / QPoly / QRat / coeff seq."""
    if isinstance(x, QRat):
        return x.num.coeffs, x.den.coeffs
    if isinstance(x, QPoly):
        return x.coeffs, (1,)
    if isinstance(x, Fraction):
        return ((x.numerator,) if x.numerator else ()), (x.denominator,)
    if isinstance(x, int):
        return ((x,) if x else ()), (1,)
    return _trim(tuple(x)), (1,)


def _normalize(n, d):
    if not d:
        raise ZeroDivisionError("division by zero in Q(s)")
    if not n:
        return (), (1,)
    if d == (1,):
        return n, d
    # common polynomial factor
    g = _pgcd(n, d)
    if len(g) > 1:
        n, d = _pdivmod_exact(n, g), _pdivmod_exact(d, g)
    # common integer content
    cg = _int_gcd(_content(n), _content(d))
    if d[-1] < 0:
        cg = -cg
    if cg != 1:
        n = tuple(c // cg for c in n)
        d = tuple(c // cg for c in d)
    return n, d


ZERO = QRat(0)
ONE = QRat(1)
S = QRat((0, 1))
Q = QRat((0, 0, 1))


def q_power(k: int) -> QRat:
    """q^k as a field element, any integer k (q = s^2)."""
    if k >= 0:
        return QRat._raw((0,) * (2 * k) + (1,), (1,))
    return QRat._raw((1,), (0,) * (-2 * k) + (1,))


def s_power(k: int) -> QRat:
    """s^k, i.e. q^(k/2), any integer k."""
    if k >= 0:
        return QRat._raw((0,) * k + (1,), (1,))
    return QRat._raw((1,), (0,) * (-k) + (1,))


def qrat_arith(a: QRat, b: QRat, op: str) -> QRat:
    """Field arithmetic dispatch; op is one of add/sub/mul/div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError("unknown op %r" % op)


def qrat_eval(a: QRat, s_value) -> Fraction:
    return a(s_value)

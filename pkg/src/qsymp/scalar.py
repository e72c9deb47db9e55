"""
Exact arithmetic in the field Q(q) of rational functions in one indeterminate.

Two classes live here.  ``LaurentPoly`` is a finite sum c_k q^k with rational
coefficients and integer (possibly negative) exponents.  ``QScalar`` is a
quotient num/den of Laurent polynomials kept in a canonical form, so that two
equal rational functions are always stored identically and ``==`` is a
structural comparison:

* gcd(num, den) = 1,
* den is an ordinary polynomial (lowest exponent 0) whose constant term is 1.

Everything is exact; there is no floating point anywhere.
"""

from fractions import Fraction
from functools import lru_cache


class QScalarError(ArithmeticError):
    """Base class for arithmetic errors raised by this module."""


class PoleError(QScalarError):
    """Raised when a rational function is evaluated at one of its poles."""


def _frac(c):
    if isinstance(c, Fraction):
        return c
    return Fraction(c)


# ---------------------------------------------------------------------------
# dense polynomial helpers; a polynomial is a tuple of Fractions, index = degree
# ---------------------------------------------------------------------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a, b):
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(a) < len(b):
        return [], _trim(a)
    quot = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c == 0:
            continue
        c = c / lead
        quot[k - db] = c
        for i in range(db + 1):
            a[k - db + i] -= c * b[i]
    return _trim(quot), _trim(a[:db])


@lru_cache(maxsize=1 << 16)
def _poly_gcd(a, b):
    """Monic gcd of two nonzero dense polynomials (tuples)."""
    a, b = list(a), list(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    lead = a[-1]
    return tuple(c / lead for c in a)


def _exact_div(a, b):
    quot, rem = _poly_divmod(a, b)
    assert not rem, "inexact polynomial division"
    return quot


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Immutable Laurent polynomial with rational coefficients.

    ``coeffs`` maps integer exponents of q to nonzero Fractions.  The zero
    polynomial has an empty map.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for e, c in coeffs.items():
                c = _frac(c)
                if c:
                    clean[int(e)] = c
        self.coeffs = clean
        self._hash = None

    @classmethod
    def _raw(cls, clean):
        obj = cls.__new__(cls)
        obj.coeffs = clean
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls({exp: coeff})

    @classmethod
    def constant(cls, c):
        return cls({0: c})

    @classmethod
    def from_dense(cls, shift, dense):
        return cls._raw({shift + k: c for k, c in enumerate(dense) if c})

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs.get(0) == 1

    def min_exp(self):
        return min(self.coeffs)

    def max_exp(self):
        return max(self.coeffs)

    def terms(self):
        """(exponent, coefficient) pairs with ascending exponents."""
        return sorted(self.coeffs.items())

    def to_dense(self):
        """Return (shift, dense) with self = q^shift * sum dense[k] q^k."""
        lo, hi = self.min_exp(), self.max_exp()
        dense = [Fraction(0)] * (hi - lo + 1)
        for e, c in self.coeffs.items():
            dense[e - lo] = c
        return lo, tuple(dense)

    def shift(self, k):
        return LaurentPoly._raw({e + k: c for e, c in self.coeffs.items()})

    def scale(self, c):
        c = _frac(c)
        if not c:
            return LaurentPoly._raw({})
        return LaurentPoly._raw({e: v * c for e, v in self.coeffs.items()})

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a Laurent polynomial")
        out = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.coeffs.items()))
        return self._hash

    def eval_at(self, q0):
        q0 = _frac(q0)
        if q0 == 0 and any(e < 0 for e in self.coeffs):
            raise PoleError("Laurent polynomial with negative powers at q=0")
        return sum((c * q0 ** e for e, c in self.coeffs.items()), Fraction(0))

    def __repr__(self):
        return f"LaurentPoly({_format_laurent(self)})"

    def __str__(self):
        return _format_laurent(self)


def _format_coeff(c):
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _format_laurent(p):
    if p.is_zero():
        return "0"
    parts = []
    for e, c in sorted(p.coeffs.items(), reverse=True):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if e == 0:
            body = _format_coeff(a)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if a == 1 else f"{_format_coeff(a)}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

_ZERO_LP = LaurentPoly._raw({})
_ONE_LP = LaurentPoly._raw({0: Fraction(1)})


class QScalar:
    """Element of Q(q) in canonical reduced form.

    Construct with ``QScalar(num, den)`` where num and den are LaurentPoly,
    ints or Fractions.  Arithmetic with ints and Fractions is supported.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        if not isinstance(num, LaurentPoly):
            num = LaurentPoly.constant(num)
        if not isinstance(den, LaurentPoly):
            den = LaurentPoly.constant(den)
        if den.is_zero():
            raise ZeroDivisionError("QScalar with zero denominator")
        self.num, self.den = _canonical(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def q(cls, power=1):
        """The monomial q**power."""
        return cls._raw(LaurentPoly._raw({power: Fraction(1)}), _ONE_LP)

    @classmethod
    def from_laurent(cls, p):
        return cls._raw(p, _ONE_LP)

    # predicates -----------------------------------------------------------

    def is_zero(self):
        return not self.num.coeffs

    def is_one(self):
        return self.den.is_one() and self.num.is_one()

    def is_laurent(self):
        return self.den.is_one()

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            num = self.num + other.num
            if self.den.is_one():
                return QScalar._raw(num, _ONE_LP)
            return _make(num, self.den)
        return _make(self.num * other.den + other.num * self.den,
                     self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return QScalar._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return QScalar._raw(self.num * other.num, _ONE_LP)
        return _make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(q)")
        if len(self.num.coeffs) == 1 and self.den.is_one():
            (e, c), = self.num.coeffs.items()
            return QScalar._raw(LaurentPoly._raw({-e: 1 / c}), _ONE_LP)
        return QScalar(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        if self.den.is_one():
            return QScalar._raw(self.num ** k, _ONE_LP)
        return QScalar._raw(self.num ** k, self.den ** k)

    # comparison / hashing ---------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # evaluation / io ------------------------------------------------------

    def eval_at(self, q0):
        """Substitute the exact rational q0 for q."""
        q0 = _frac(q0)
        if q0 == 0:
            raise PoleError("evaluation at q=0 is not allowed")
        d = self.den.eval_at(q0)
        if d == 0:
            raise PoleError(f"{self} has a pole at q={q0}")
        return self.num.eval_at(q0) / d

    def to_json(self):
        def enc(p):
            return [[e, f"{c.numerator}/{c.denominator}"] for e, c in p.terms()]
        return {"num": enc(self.num), "den": enc(self.den)}

    @classmethod
    def from_json(cls, data):
        def dec(items):
            return LaurentPoly({int(e): Fraction(c) for e, c in items})
        return cls(dec(data["num"]), dec(data["den"]))

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        num = str(self.num)
        if len(self.num.coeffs) > 1:
            num = f"({num})"
        return f"{num}/({self.den})"

    def __repr__(self):
        return f"QScalar({self})"


def _coerce(x):
    if isinstance(x, QScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return QScalar._raw(LaurentPoly.constant(x), _ONE_LP)
    if isinstance(x, LaurentPoly):
        return QScalar._raw(x, _ONE_LP)
    return None


def _canonical(num, den):
    if num.is_zero():
        return _ZERO_LP, _ONE_LP
    dshift, d = den.to_dense()
    if len(d) == 1:
        c = d[0]
        num = num.shift(-dshift)
        return (num if c == 1 else num.scale(1 / c)), _ONE_LP
    nshift, n = num.to_dense()
    g = _poly_gcd(n, d)
    if len(g) > 1:
        n = _exact_div(n, g)
        d = _exact_div(d, g)
    c = d[0]
    if c != 1:
        n = [x / c for x in n]
        d = [x / c for x in d]
    return LaurentPoly.from_dense(nshift - dshift, n), LaurentPoly.from_dense(0, d)


def _make(num, den):
    num, den = _canonical(num, den)
    return QScalar._raw(num, den)


ZERO = QScalar._raw(_ZERO_LP, _ONE_LP)
ONE = QScalar._raw(_ONE_LP, _ONE_LP)
Q = QScalar.q(1)
QINV = QScalar.q(-1)
#: q - q^{-1}, the ubiquitous structure constant
QDIFF = QScalar._raw(LaurentPoly({1: 1, -1: -1}), _ONE_LP)


def as_scalar(x):
    """Coerce an int, Fraction, LaurentPoly or QScalar to a QScalar."""
    out = _coerce(x)
    if out is None:
        raise TypeError(f"cannot interpret {x!r} as an element of Q(q)")
    return out


def qpow(k):
    return QScalar.q(k)


def qint(m):
    """Quantum integer [m] = (q^m - q^-m)/(q - q^-1), as a Laurent polynomial."""
    m = int(m)
    if m == 0:
        return ZERO
    sign = 1 if m > 0 else -1
    a = abs(m)
    return QScalar._raw(
        LaurentPoly._raw({a - 1 - 2 * k: Fraction(sign) for k in range(a)}), _ONE_LP)


def eval_at(a, q0):
    return as_scalar(a).eval_at(q0)

"""Exact arithmetic in the quartic tower Q < Q(r) < Q(r)(s).

Here r is a square root of 5 and s satisfies s^2 = (5 + r)/8, so under the
real embedding r -> +sqrt(5) the generator s maps to sin(2*pi/5).  Every
element is stored on the fixed basis {1, r, s, r*s} with Fraction
coordinates, which makes equality, hashing and serialization canonical.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

import mpmath

Rational = Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)

# s^2 = _S2A + _S2B * r
_S2A = Fraction(5, 8)
_S2B = Fraction(1, 8)


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"expected int or Fraction, got {type(v).__name__}")


# -- arithmetic on Q(r) elements, represented as (a, b) meaning a + b*r ----

def _qr_mul(x, y):
    a, b = x
    c, d = y
    return (a * c + 5 * b * d, a * d + b * c)


def _qr_inv(x):
    a, b = x
    n = a * a - 5 * b * b
    if n == 0:
        raise ZeroDivisionError("zero element of Q(r)")
    return (a / n, -b / n)


class FieldElement:
    """An element a + b*r + c*s + d*r*s of the tower Q(r)(s)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        object.__setattr__(self, "a", _as_fraction(a))
        object.__setattr__(self, "b", _as_fraction(b))
        object.__setattr__(self, "c", _as_fraction(c))
        object.__setattr__(self, "d", _as_fraction(d))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    # -- construction helpers ------------------------------------------

    @classmethod
    def from_rational(cls, q) -> "FieldElement":
        return cls(_as_fraction(q))

    def coords(self):
        return (self.a, self.b, self.c, self.d)

    # -- predicates ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    @property
    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = FieldElement(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.coords() == other.coords()

    def __hash__(self):
        return hash(self.coords())

    # -- ring operations -----------------------------------------------

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(other)
        if isinstance(other, FieldElement):
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # (A + B*s)(C + D*s) = A*C + B*D*s^2 + (A*D + B*C)*s over Q(r)
        A = (self.a, self.b)
        B = (self.c, self.d)
        C = (o.a, o.b)
        D = (o.c, o.d)
        ac = _qr_mul(A, C)
        bd = _qr_mul(B, D)
        q = _qr_mul(bd, (_S2A, _S2B))
        e0 = (ac[0] + q[0], ac[1] + q[1])
        ad = _qr_mul(A, D)
        bc = _qr_mul(B, C)
        e1 = (ad[0] + bc[0], ad[1] + bc[1])
        return FieldElement(e0[0], e0[1], e1[0], e1[1])

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero field element")
        # (A + B*s)^-1 = (A - B*s) / (A^2 - B^2 * s^2), the norm down to Q(r)
        A = (self.a, self.b)
        B = (self.c, self.d)
        a2 = _qr_mul(A, A)
        b2q = _qr_mul(_qr_mul(B, B), (_S2A, _S2B))
        n = _qr_inv((a2[0] - b2q[0], a2[1] - b2q[1]))
        na = _qr_mul(A, n)
        nb = _qr_mul((-B[0], -B[1]), n)
        return FieldElement(na[0], na[1], nb[0], nb[1])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "FieldElement":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- real embedding ------------------------------------------------

    def embed(self, precision: int = 64):
        """Value under r -> +sqrt(5), s -> sin(2*pi/5) at `precision` bits."""
        if precision < 64:
            raise ValueError("precision must be at least 64 bits")
        with mpmath.workprec(precision + 16):
            r = mpmath.sqrt(5)
            s = mpmath.sin(2 * mpmath.pi / 5)
            val = (mpmath.mpf(self.a.numerator) / self.a.denominator
                   + r * mpmath.mpf(self.b.numerator) / self.b.denominator
                   + s * mpmath.mpf(self.c.numerator) / self.c.denominator
                   + r * s * mpmath.mpf(self.d.numerator) / self.d.denominator)
        return val

    def __float__(self):
        return float(self.embed(64))

    # -- roots ---------------------------------------------------------

    def sqrt(self):
        """Exact square root in the tower, or None if there is none.

        The returned root is the one that is nonnegative under the real
        embedding.
        """
        if self.is_zero:
            return ZERO
        for cand in _sqrt_candidates(self):
            if cand * cand == self:
                return cand if float(cand) >= 0 else -cand
        return None

    def kth_root(self, k: int):
        """Exact k-th root in the tower, or None.

        Even k: requires a chain of square roots; the nonnegative root is
        returned.  Odd parts are recovered numerically (PSLQ reconstruction
        over the basis) and verified exactly, so a returned value is always
        correct; a None for an element of extreme height may be a false
        negative, which never occurs at the heights this package produces.
        """
        if k < 1:
            raise ValueError("k must be positive")
        if self.is_zero:
            return ZERO
        cur = self
        m = k
        while m % 2 == 0:
            cur = cur.sqrt()
            if cur is None:
                return None
            m //= 2
        if m == 1:
            return cur
        root = _odd_root(cur, m)
        if root is None:
            return None
        if k % 2 == 0 and float(root) < 0:
            root = -root
        return root

    # -- text ----------------------------------------------------------

    def serialize(self) -> str:
        return serialize_element(self)

    def __str__(self) -> str:
        return serialize_element(self)

    def __repr__(self) -> str:
        return f"FieldElement({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"


ZERO = FieldElement(0)
ONE = FieldElement(1)
R = FieldElement(0, 1)
S = FieldElement(0, 0, 1)


def _frac_sqrt(q: Fraction):
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def _qr_sqrt_candidates(c):
    """Candidate square roots of c0 + c1*r inside Q(r)."""
    c0, c1 = c
    out = []
    if c1 == 0:
        t = _frac_sqrt(c0)
        if t is not None:
            out.append((t, _F0))
        t = _frac_sqrt(c0 / 5)
        if t is not None:
            out.append((_F0, t))
        return out
    disc = _frac_sqrt(c0 * c0 - 5 * c1 * c1)
    if disc is None:
        return out
    for sign in (1, -1):
        a2 = (c0 + sign * disc) / 2
        a = _frac_sqrt(a2)
        if a is not None and a != 0:
            out.append((a, c1 / (2 * a)))
    return out


def _sqrt_candidates(x: FieldElement):
    C = (x.a, x.b)
    D = (x.c, x.d)
    cands = []
    if D == (_F0, _F0):
        # either a root inside Q(r), or a pure s-multiple B*s with B^2*s^2 = C
        for a in _qr_sqrt_candidates(C):
            cands.append(FieldElement(a[0], a[1]))
        q_inv = _qr_inv((_S2A, _S2B))
        for b in _qr_sqrt_candidates(_qr_mul(C, q_inv)):
            cands.append(FieldElement(0, 0, b[0], b[1]))
        return cands
    # (A + B*s)^2 = A^2 + B^2*s^2 + 2*A*B*s: solve A^2 as a root of
    # t^2 - C*t + s^2*D^2/4 over Q(r)
    d2q = _qr_mul(_qr_mul(D, D), (_S2A, _S2B))
    disc_qr = (_qr_mul(C, C)[0] - d2q[0], _qr_mul(C, C)[1] - d2q[1])
    for sd in _qr_sqrt_candidates(disc_qr):
        for sign in (1, -1):
            a2 = ((C[0] + sign * sd[0]) / 2, (C[1] + sign * sd[1]) / 2)
            for A in _qr_sqrt_candidates(a2):
                if A == (_F0, _F0):
                    continue
                B = _qr_mul(D, _qr_inv((2 * A[0], 2 * A[1])))
                cands.append(FieldElement(A[0], A[1], B[0], B[1]))
    return cands


def _odd_root(x: FieldElement, m: int):
    with mpmath.workdps(120):
        val = x.embed(400)
        target = mpmath.sign(val) * mpmath.power(abs(val), mpmath.mpf(1) / m)
        r = mpmath.sqrt(5)
        s = mpmath.sin(2 * mpmath.pi / 5)
        rel = mpmath.pslq([mpmath.mpf(1), r, s, r * s, target],
                          maxcoeff=10 ** 14, maxsteps=5000)
    if not rel or rel[4] == 0:
        return None
    q = -rel[4]
    cand = FieldElement(Fraction(rel[0], q), Fraction(rel[1], q),
                        Fraction(rel[2], q), Fraction(rel[3], q))
    if cand ** m == x:
        return cand
    return None


# -- the trigonometric constants of the double star equations -------------

class TrigConstants:
    """Exact values of sin, cos at theta = 2*pi/5 and 2*theta."""

    __slots__ = ("sin_t", "cos_t", "sin_2t", "cos_2t", "ratio")

    def __init__(self):
        object.__setattr__(self, "sin_t", S)
        object.__setattr__(self, "cos_t", (R - 1) / FieldElement(4))
        object.__setattr__(self, "sin_2t", S * (R - 1) / FieldElement(2))
        object.__setattr__(self, "cos_2t", -(R + 1) / FieldElement(4))
        object.__setattr__(self, "ratio", self.cos_t / self.cos_2t)

    def __setattr__(self, name, value):
        raise AttributeError("TrigConstants is immutable")


def trig_constants() -> TrigConstants:
    return TrigConstants()


def embed_real(a: FieldElement, precision: int = 64):
    return a.embed(precision)


# -- text form -------------------------------------------------------------

def _format_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


_BASIS_SYMBOLS = ("", "r", "s", "r*s")


def serialize_element(x: FieldElement) -> str:
    """Canonical text form on the basis {1, r, s, r*s}."""
    parts = []
    for coef, sym in zip(x.coords(), _BASIS_SYMBOLS):
        if coef == 0:
            continue
        mag = abs(coef)
        if not sym:
            body = _format_fraction(mag)
        elif mag == 1:
            body = sym
        else:
            body = f"{_format_fraction(mag)}*{sym}"
        parts.append(("-" if coef < 0 else "+", body))
    if not parts:
        return "0"
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def parse_element(text: str) -> FieldElement:
    """Parse an expression in rationals, r, s with + - * / ^ and parentheses."""
    from .exprs import parse_field_element

    return parse_field_element(text)

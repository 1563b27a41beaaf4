"""Sparse exact polynomials over the tower field.

MultiPoly is a trivariate polynomial in x, y, z; UniPoly is univariate in t.
The monomial order is graded lexicographic with x > y > z, fixed globally, so
division, root extraction and serialization are deterministic.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotAPower, NotDivisible
from .field import ONE, ZERO, FieldElement, serialize_element


def _coerce_coeff(c) -> FieldElement:
    if isinstance(c, FieldElement):
        return c
    if isinstance(c, (int, Fraction)):
        return FieldElement(c)
    raise TypeError(f"cannot use {type(c).__name__} as a coefficient")


def _grlex_key(exp):
    return (exp[0] + exp[1] + exp[2], exp[0], exp[1], exp[2])


class MultiPoly:
    """Sparse polynomial in x, y, z with FieldElement coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for exp, coef in terms.items():
                coef = _coerce_coeff(coef)
                if not coef.is_zero:
                    ex, ey, ez = exp
                    if ex < 0 or ey < 0 or ez < 0:
                        raise ValueError("negative exponent in monomial")
                    clean[(ex, ey, ez)] = coef
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors --------------------------------------------------

    @classmethod
    def constant(cls, c) -> "MultiPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def variable(cls, name: str) -> "MultiPoly":
        idx = "xyz".index(name)
        exp = [0, 0, 0]
        exp[idx] = 1
        return cls({tuple(exp): ONE})

    @classmethod
    def linear(cls, a, b, c) -> "MultiPoly":
        return cls({(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})

    # -- basic queries --------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1 by convention."""
        if not self.terms:
            return -1
        return max(e[0] + e[1] + e[2] for e in self.terms)

    @property
    def is_constant(self) -> bool:
        return all(e == (0, 0, 0) for e in self.terms)

    @property
    def is_homogeneous(self) -> bool:
        degs = {e[0] + e[1] + e[2] for e in self.terms}
        return len(degs) <= 1

    def leading(self):
        """(exponent, coefficient) of the grlex-largest term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=_grlex_key)
        return exp, self.terms[exp]

    def coefficient(self, exp) -> FieldElement:
        return self.terms.get(tuple(exp), ZERO)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]),
                      reverse=True)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, FieldElement)):
            other = MultiPoly.constant(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.sorted_terms()))

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            return MultiPoly.constant(other)
        if isinstance(other, MultiPoly):
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for exp, coef in o.terms.items():
            terms[exp] = terms.get(exp, ZERO) + coef
        return MultiPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                exp = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                prod = c1 * c2
                if exp in terms:
                    terms[exp] = terms[exp] + prod
                else:
                    terms[exp] = prod
        return MultiPoly(terms)

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        c = _coerce_coeff(c)
        return MultiPoly({e: coef * c for e, coef in self.terms.items()})

    def __truediv__(self, other):
        c = _coerce_coeff(other)
        return self.scale(c.inverse())

    def __pow__(self, n: int) -> "MultiPoly":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- evaluation ------------------------------------------------------

    def evaluate(self, point) -> FieldElement:
        px, py, pz = (_coerce_coeff(v) for v in point)
        total = ZERO
        powers = {0: {0: ONE}, 1: {0: ONE}, 2: {0: ONE}}
        vals = (px, py, pz)
        for exp, coef in self.terms.items():
            term = coef
            for i in range(3):
                e = exp[i]
                cache = powers[i]
                if e not in cache:
                    p = max(cache)
                    acc = cache[p]
                    while p < e:
                        acc = acc * vals[i]
                        p += 1
                        cache[p] = acc
                term = term * cache[e]
            total = total + term
        return total

    # -- text ------------------------------------------------------------

    def serialize(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, coef in self.sorted_terms():
            mono = []
            for sym, e in zip("xyz", exp):
                if e == 1:
                    mono.append(sym)
                elif e > 1:
                    mono.append(f"{sym}^{e}")
            if coef == ONE and mono:
                body = "*".join(mono)
            else:
                body = f"({serialize_element(coef)})"
                if mono:
                    body += "*" + "*".join(mono)
            parts.append(body)
        return " + ".join(parts)

    def __str__(self):
        return self.serialize()

    def __repr__(self):
        return f"MultiPoly<{self.serialize()}>"


X = MultiPoly.variable("x")
Y = MultiPoly.variable("y")
Z = MultiPoly.variable("z")


# -- division and power structure ------------------------------------------

def exact_divide(p: MultiPoly, d: MultiPoly) -> MultiPoly:
    """Quotient q with p = q*d, or raise NotDivisible.

    Leading-term reduction in grlex order; for a single divisor this finds
    the quotient whenever exact division is possible.
    """
    if d.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero:
        return MultiPoly()
    dexp, dcoef = d.leading()
    dinv = dcoef.inverse()
    quot = {}
    rem = p
    while not rem.is_zero:
        rexp, rcoef = rem.leading()
        qexp = (rexp[0] - dexp[0], rexp[1] - dexp[1], rexp[2] - dexp[2])
        if min(qexp) < 0:
            raise NotDivisible(f"{d.serialize()} does not divide the input")
        qcoef = rcoef * dinv
        quot[qexp] = qcoef
        rem = rem - d * MultiPoly({qexp: qcoef})
    return MultiPoly(quot)


def divides(d: MultiPoly, p: MultiPoly) -> bool:
    try:
        exact_divide(p, d)
        return True
    except NotDivisible:
        return False


def factor_multiplicity(p: MultiPoly, f: MultiPoly) -> int:
    """Largest k >= 0 with f^k dividing p exactly."""
    if p.is_zero:
        raise ValueError("multiplicity undefined for the zero polynomial")
    if f.is_constant:
        raise ValueError("factor must be nonconstant")
    k = 0
    while True:
        try:
            p = exact_divide(p, f)
        except NotDivisible:
            return k
        k += 1


def kth_root(p: MultiPoly, k: int) -> MultiPoly:
    """q with q^k = p, or raise NotAPower.

    Coefficients of q are produced by graded matching from the leading
    monomial.  The leading coefficient of q is the deterministically chosen
    k-th root of p's leading coefficient (nonnegative under the embedding
    for even k); if that root does not exist in the field the polynomial is
    not a k-th power over it.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if p.is_zero:
        raise ValueError("p must be nonzero")
    lexp, lcoef = p.leading()
    if any(e % k for e in lexp):
        raise NotAPower("leading exponent not divisible by k")
    if p.degree % k:
        raise NotAPower("degree not divisible by k")
    lroot = lcoef.kth_root(k)
    if lroot is None:
        raise NotAPower("leading coefficient has no k-th root in the field")
    qlexp = tuple(e // k for e in lexp)
    q = MultiPoly({qlexp: lroot})
    # correction denominator k * lt(q)^(k-1)
    denom = MultiPoly({tuple(e * (k - 1) for e in qlexp):
                       FieldElement(k) * lroot ** (k - 1)})
    dexp, dcoef = denom.leading()
    dinv = dcoef.inverse()
    max_terms = (p.degree // k + 1) * (p.degree // k + 2) * (p.degree // k + 3) // 6
    prev_key = _grlex_key(qlexp)
    for _ in range(max_terms + 1):
        rem = p - q ** k
        if rem.is_zero:
            return q
        rexp, rcoef = rem.leading()
        texp = (rexp[0] - dexp[0], rexp[1] - dexp[1], rexp[2] - dexp[2])
        if min(texp) < 0:
            raise NotAPower("no matching correction term")
        key = _grlex_key(texp)
        if key >= prev_key:
            raise NotAPower("correction terms do not decrease")
        prev_key = key
        q = q + MultiPoly({texp: rcoef * dinv})
    raise NotAPower("term budget exhausted")


def is_kth_power_up_to_scalar(p: MultiPoly, k: int) -> bool:
    """True if p = scalar * q^k for some q over the field."""
    if p.is_zero or p.degree % k:
        return False
    _, lcoef = p.leading()
    monic = p.scale(lcoef.inverse())
    try:
        kth_root(monic, k)
        return True
    except NotAPower:
        return False


# -- homogenization ---------------------------------------------------------

def homogenize(p: MultiPoly, target_deg: int | None = None) -> MultiPoly:
    deg = max(p.degree, 0)
    if target_deg is None:
        target_deg = deg
    elif target_deg < deg:
        raise ValueError("target degree below the degree of the input")
    terms = {}
    for exp, coef in p.terms.items():
        total = exp[0] + exp[1] + exp[2]
        terms[(exp[0], exp[1], exp[2] + target_deg - total)] = coef
    return MultiPoly(terms)


def dehomogenize(p: MultiPoly) -> MultiPoly:
    """Substitute z = 1."""
    terms = {}
    for exp, coef in p.terms.items():
        key = (exp[0], exp[1], 0)
        terms[key] = terms.get(key, ZERO) + coef
    return MultiPoly(terms)


# -- univariate polynomials over the field ---------------------------------

class UniPoly:
    """Dense univariate polynomial in t with FieldElement coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_coerce_coeff(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else ZERO
            b = other.coeffs[i] if i < len(other.coeffs) else ZERO
            out.append(a + b)
        return UniPoly(out)

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            c = _coerce_coeff(other)
            return UniPoly([a * c for a in self.coeffs])
        if not isinstance(other, UniPoly):
            return NotImplemented
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1) \
            if self.coeffs and other.coeffs else []
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def derivative(self) -> "UniPoly":
        return UniPoly([c * i for i, c in enumerate(self.coeffs)][1:])

    def evaluate(self, v) -> FieldElement:
        v = _coerce_coeff(v)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        inv = self.coeffs[-1].inverse()
        return UniPoly([c * inv for c in self.coeffs])

    def divmod(self, d: "UniPoly"):
        if d.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dd = d.degree
        dinv = d.coeffs[-1].inverse()
        quot = [ZERO] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c.is_zero:
                continue
            q = c * dinv
            quot[i - dd] = q
            for j in range(dd + 1):
                rem[i - dd + j] = rem[i - dd + j] - q * d.coeffs[j]
        return UniPoly(quot), UniPoly(rem)

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            if i == 0:
                parts.append(f"({serialize_element(c)})")
            elif i == 1:
                parts.append(f"({serialize_element(c)})*t")
            else:
                parts.append(f"({serialize_element(c)})*t^{i}")
        return " + ".join(parts)

    __repr__ = __str__


def uni_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    while not q.is_zero:
        _, r = p.divmod(q)
        p, q = q, r
    return p.monic()


def uni_squarefree(p: UniPoly) -> bool:
    """True iff gcd(p, p') is constant."""
    if p.is_zero:
        raise ValueError("squarefreeness undefined for the zero polynomial")
    g = uni_gcd(p, p.derivative())
    return g.degree <= 0


def restrict_to_line(p: MultiPoly, point, direction) -> UniPoly:
    """The univariate polynomial t -> p(point + t*direction)."""
    dirs = [_coerce_coeff(v) for v in direction]
    if all(v.is_zero for v in dirs):
        raise ValueError("direction must be nonzero")
    pts = [_coerce_coeff(v) for v in point]
    lin = [UniPoly([pts[i], dirs[i]]) for i in range(3)]
    max_e = [0, 0, 0]
    for exp in p.terms:
        for i in range(3):
            max_e[i] = max(max_e[i], exp[i])
    pows = []
    for i in range(3):
        cache = [UniPoly([ONE])]
        for _ in range(max_e[i]):
            cache.append(cache[-1] * lin[i])
        pows.append(cache)
    total = UniPoly()
    for exp, coef in p.terms.items():
        term = pows[0][exp[0]] * pows[1][exp[1]] * pows[2][exp[2]]
        total = total + term * coef
    return total


def binary_restriction(p: MultiPoly, P, Q):
    """Coefficients (c_0..c_d) of the binary form p(u*P + t*Q) on u^(d-i)t^i.

    p must be homogeneous; d is its degree.
    """
    if not p.is_homogeneous:
        raise ValueError("binary restriction needs a homogeneous polynomial")
    d = max(p.degree, 0)
    uni = restrict_to_line(p, P, Q)
    out = list(uni.coeffs) + [ZERO] * (d + 1 - len(uni.coeffs))
    return out

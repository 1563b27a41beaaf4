"""Orbifold pencil analysis on an arrangement complement.

Given a pencil (g1, g2) of equal-degree homogeneous polynomials, locate the
special members, peel arrangement lines off each fiber, detect multiple
fibers as perfect powers of the residual divisor, classify the fibration
small/large and describe the translated jump-locus component it produces.

The fiber over [l0 : l1] is l1*g1 - l0*g2, so [0:1] and [1:0] are the g1
and g2 fibers and [1:1] is their difference.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb

import mpmath

from .arrangement import Arrangement
from .errors import (DegeneratePencil, InvalidOrbifoldData,
                     MultipleMultipleFibers, NotAPower, NotSmall)
from .field import ONE, ZERO, FieldElement, serialize_element
from .mpoly import (MultiPoly, UniPoly, binary_restriction, divides,
                    exact_divide, factor_multiplicity, kth_root,
                    restrict_to_line)
from .multinet import Pencil, _is_proportional


def normalize_lambda(lam):
    l0, l1 = lam
    l0 = l0 if isinstance(l0, FieldElement) else FieldElement(l0)
    l1 = l1 if isinstance(l1, FieldElement) else FieldElement(l1)
    if l0.is_zero and l1.is_zero:
        raise ValueError("lambda must be a point of P^1")
    scale = (l0 if not l0.is_zero else l1).inverse()
    return (l0 * scale, l1 * scale)


def lambda_key(lam):
    return (serialize_element(lam[0]), serialize_element(lam[1]))


def fiber_polynomial(pencil: Pencil, lam) -> MultiPoly:
    l0, l1 = normalize_lambda(lam)
    return pencil.g1.scale(l1) - pencil.g2.scale(l0)


@dataclass(frozen=True)
class FiberAnalysis:
    lam: tuple
    fiber_poly: MultiPoly
    arrangement_part: tuple  # ((line index, exponent), ...)
    residual: MultiPoly
    mu: int

    @property
    def removed(self) -> bool:
        return self.residual.degree <= 0

    def describe(self, A: Arrangement) -> dict:
        return {
            "lambda": list(lambda_key(self.lam)),
            "arrangement_part": [[A.lines[i].label, e]
                                 for i, e in self.arrangement_part],
            "residual": self.residual.serialize(),
            "residual_degree": max(self.residual.degree, 0),
            "mu": self.mu,
            "removed": self.removed,
        }


@dataclass(frozen=True)
class FibrationReport:
    k: int
    removed: tuple          # lambda values of fully removed fibers
    fibers: tuple           # every analyzed FiberAnalysis
    multiple_fibers: tuple  # the sublist with mu >= 2 and not removed
    classification: str     # small | large | neither
    mu_vector: tuple
    hypotheses: dict = dc_field(default_factory=dict)

    def describe(self, A: Arrangement) -> dict:
        return {
            "k": self.k,
            "removed": [list(lambda_key(l)) for l in self.removed],
            "class": self.classification,
            "mu_vector": list(self.mu_vector),
            "multiple_fibers": [f.describe(A) for f in self.multiple_fibers],
            "fibers": [f.describe(A) for f in self.fibers],
            "hypotheses": dict(self.hypotheses),
        }


@dataclass(frozen=True)
class V1Component:
    rho_exponents: tuple
    t_exponents: tuple
    torsion_order: int
    dimension: int

    @property
    def rho_values(self):
        """Character values for torsion order 2, as +1/-1 integers."""
        if self.torsion_order != 2:
            raise ValueError("sign form only defined for torsion order 2")
        return tuple(1 if e % 2 == 0 else -1 for e in self.rho_exponents)

    def describe(self, A: Arrangement) -> dict:
        doc = {
            "dimension": self.dimension,
            "torsion_order": self.torsion_order,
            "t_exponents": {A.lines[i].label: e
                            for i, e in enumerate(self.t_exponents)},
            "rho_exponents": {A.lines[i].label: e
                              for i, e in enumerate(self.rho_exponents)},
        }
        if self.torsion_order == 2:
            doc["rho_values"] = {A.lines[i].label: v
                                 for i, v in enumerate(self.rho_values)}
        return doc


# -- candidate parameters ---------------------------------------------------

def _points_on_line(cov):
    e = [(ONE, ZERO, ZERO), (ZERO, ONE, ZERO), (ZERO, ZERO, ONE)]
    pts = []
    for basis in e:
        p = (cov[1] * basis[2] - cov[2] * basis[1],
             cov[2] * basis[0] - cov[0] * basis[2],
             cov[0] * basis[1] - cov[1] * basis[0])
        if any(not c.is_zero for c in p):
            pts.append(p)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if not _proportional_triples(pts[i], pts[j]):
                return pts[i], pts[j]
    raise ValueError("could not find two points on the line")


def _proportional_triples(u, v):
    return all((u[i] * v[j] - u[j] * v[i]).is_zero
               for i in range(3) for j in range(i + 1, 3))


def _det_field(mat) -> FieldElement:
    n = len(mat)
    mat = [row[:] for row in mat]
    det = ONE
    for c in range(n):
        piv = None
        for i in range(c, n):
            if not mat[i][c].is_zero:
                piv = i
                break
        if piv is None:
            return ZERO
        if piv != c:
            mat[c], mat[piv] = mat[piv], mat[c]
            det = -det
        det = det * mat[c][c]
        inv = mat[c][c].inverse()
        for i in range(c + 1, n):
            if mat[i][c].is_zero:
                continue
            f = mat[i][c] * inv
            mat[i] = [a - f * b for a, b in zip(mat[i], mat[c])]
    return det


def _sylvester_resultant(f: UniPoly, g: UniPoly) -> FieldElement:
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        return ZERO
    if m == 0:
        return f.coeffs[0] ** n
    if n == 0:
        return g.coeffs[0] ** m
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([ZERO] * i + fc + [ZERO] * (size - m - 1 - i))
    for i in range(m):
        rows.append([ZERO] * i + gc + [ZERO] * (size - n - 1 - i))
    return _det_field(rows)


def _interpolate(nodes, values) -> UniPoly:
    total = UniPoly()
    for i, xi in enumerate(nodes):
        li = UniPoly([ONE])
        denom = ONE
        for j, xj in enumerate(nodes):
            if j == i:
                continue
            li = li * UniPoly([FieldElement(-xj), ONE])
            denom = denom * FieldElement(xi - xj)
        total = total + li * (values[i] * denom.inverse())
    return total


_PROBES = (
    (((0, Fraction(1, 3), 1)), ((1, Fraction(1, 7), 0))),
    (((Fraction(1, 2), 0, 1)), ((1, Fraction(2, 5), 0))),
    (((0, Fraction(2, 9), 1)), ((1, Fraction(-1, 4), 0))),
)


def _rational_roots(poly: UniPoly):
    """Rational values where the field-coefficient polynomial vanishes."""
    if poly.is_zero:
        return []
    # coordinate polynomials over Q; a rational root kills all four
    coord_polys = [[c.coords()[k] for c in poly.coeffs] for k in range(4)]
    chosen = next((cp for cp in coord_polys if any(v != 0 for v in cp)), None)
    if chosen is None:
        return []
    import sympy

    t = sympy.Symbol("t")
    expr = sympy.Poly([sympy.Rational(v) for v in reversed(chosen)], t,
                      domain="QQ")
    cands = [Fraction(sympy.Rational(r).p, sympy.Rational(r).q)
             for r in expr.ground_roots()]
    return sorted({c for c in cands if poly.evaluate(FieldElement(c)).is_zero})


def _discriminant_lambdas(pencil: Pencil):
    """Rational lambda where a fixed probe-line restriction is non-reduced."""
    for point, direction in _PROBES:
        r1 = restrict_to_line(pencil.g1, point, direction)
        r2 = restrict_to_line(pencil.g2, point, direction)
        d1 = max(r1.degree, r2.degree)
        if d1 < 1:
            continue
        bound = 2 * d1  # entries of the Sylvester matrix are linear in lambda
        nodes, values = [], []
        node = 0
        while len(nodes) < bound + 1 and node < bound + 40:
            lam = Fraction(node)
            node += 1
            f = r1 - r2 * FieldElement(lam)
            if f.degree != d1:
                continue  # leading coefficient vanished at this node
            res = _sylvester_resultant(f, f.derivative())
            nodes.append(lam)
            values.append(res)
        if len(nodes) < bound + 1:
            continue
        disc = _interpolate(nodes, values)
        if disc.is_zero:
            continue
        return [(FieldElement(root), ONE) for root in _rational_roots(disc)]
    return []


def lambda_candidates(A: Arrangement, pencil: Pencil, extra=()):
    """Sound candidate list of special parameters.

    Per-line parameters, rational discriminant roots of a probe-line
    restriction, caller extras, and always the two base members [0:1], [1:0].
    """
    if _is_proportional(pencil.g1, pencil.g2):
        raise DegeneratePencil("g1 and g2 are proportional")
    found = {}

    def add(lam):
        lam = normalize_lambda(lam)
        found.setdefault(lambda_key(lam), lam)

    add((ZERO, ONE))
    add((ONE, ZERO))
    for ln in A.lines:
        P, Q = _points_on_line(ln.covector)
        b1 = binary_restriction(pencil.g1, P, Q)
        b2 = binary_restriction(pencil.g2, P, Q)
        z1 = all(c.is_zero for c in b1)
        z2 = all(c.is_zero for c in b2)
        if z1 and z2:
            continue  # line divides both members; pencil has a fixed part
        if z1:
            add((ZERO, ONE))
            continue
        if z2:
            add((ONE, ZERO))
            continue
        j = next(i for i, c in enumerate(b2) if not c.is_zero or
                 not b1[i].is_zero)
        l0, l1 = b1[j], b2[j]
        if all((l1 * b1[i] - l0 * b2[i]).is_zero for i in range(len(b1))):
            add((l0, l1))
    for lam in _discriminant_lambdas(pencil):
        add(lam)
    for lam in extra:
        add(lam)
    return [found[k] for k in sorted(found)]


# -- per-fiber analysis -----------------------------------------------------

def _power_multiplicity(residual: MultiPoly) -> int:
    """Largest k with residual = scalar * q^k; scalar-insensitive."""
    deg = residual.degree
    if deg <= 0:
        return 1
    _, lc = residual.leading()
    monic = residual.scale(lc.inverse())
    for k in range(deg, 1, -1):
        if deg % k:
            continue
        try:
            kth_root(monic, k)
            return k
        except NotAPower:
            continue
    return 1


def analyze_fiber(A: Arrangement, pencil: Pencil, lam) -> FiberAnalysis:
    lam = normalize_lambda(lam)
    fiber = fiber_polynomial(pencil, lam)
    if fiber.is_zero:
        raise DegeneratePencil("fiber polynomial vanished identically")
    parts = []
    residual = fiber
    for i, ln in enumerate(A.lines):
        e = factor_multiplicity(residual, ln.linear_form())
        if e:
            for _ in range(e):
                residual = exact_divide(residual, ln.linear_form())
            parts.append((i, e))
    return FiberAnalysis(lam, fiber, tuple(parts), residual,
                         _power_multiplicity(residual))


def analyze(A: Arrangement, pencil: Pencil, extra_lambdas=()) -> FibrationReport:
    candidates = lambda_candidates(A, pencil, extra_lambdas)
    fibers = [analyze_fiber(A, pencil, lam) for lam in candidates]
    removed = tuple(f.lam for f in fibers if f.removed)
    multiple = tuple(f for f in fibers if not f.removed and f.mu >= 2)
    k = len(removed)
    if k == 2 and multiple:
        cls = "small"
    elif k >= 3:
        cls = "large"
    else:
        cls = "neither"
    return FibrationReport(
        k=k,
        removed=removed,
        fibers=tuple(fibers),
        multiple_fibers=multiple,
        classification=cls,
        mu_vector=tuple(f.mu for f in multiple),
        hypotheses={
            "surjective": "assumed, not verified",
            "connected_generic_fiber": "assumed, not verified",
            "candidate_search": "sound; complete when every special fiber "
                                "contains an arrangement line or has a "
                                "rational parameter",
        },
    )


# -- the jump-locus shape ---------------------------------------------------

def orbifold_v1_shape(k: int, mu_vector) -> dict:
    """Shape of the jump locus of the base orbifold's character group."""
    mu_vector = tuple(mu_vector)
    if k < 2:
        raise InvalidOrbifoldData("an orbifold fibration needs k >= 2")
    if any(m < 2 for m in mu_vector):
        raise InvalidOrbifoldData("multiple-fiber multiplicities must be >= 2")
    if k >= 3:
        return {
            "kind": "full-torus",
            "dimension": k - 1,
            "torsion": list(mu_vector),
        }
    if mu_vector:
        return {
            "kind": "off-identity-plus-origin",
            "dimension": k - 1,
            "torsion": list(mu_vector),
        }
    return {"kind": "origin-only", "dimension": 0, "torsion": []}


def _fiber_exponents(report: FibrationReport, lam_key, n: int):
    for f in report.fibers:
        if lambda_key(f.lam) == lam_key:
            out = [0] * n
            for i, e in f.arrangement_part:
                out[i] = e
            return out
    return [0] * n


def translated_component(A: Arrangement, pencil: Pencil,
                         report: FibrationReport) -> V1Component:
    """The translated subtorus produced by a small fibration.

    T-exponent of a line is its multiplicity in the [0:1] fiber minus its
    multiplicity in the [1:0] fiber; the translation character assigns to
    each line its [1:0]-fiber multiplicity mod mu, so lines dividing the g2
    fiber once receive the value -1 when mu = 2.
    """
    if report.classification != "small":
        raise NotSmall("component extraction needs a small fibration")
    if len(report.multiple_fibers) != 1:
        raise MultipleMultipleFibers(
            f"{len(report.multiple_fibers)} multiple fibers; "
            "expand one component per torsion character")
    mu = report.multiple_fibers[0].mu
    n = A.n
    e1 = _fiber_exponents(report, lambda_key(normalize_lambda((ZERO, ONE))), n)
    e2 = _fiber_exponents(report, lambda_key(normalize_lambda((ONE, ZERO))), n)
    t_exp = tuple(a - b for a, b in zip(e1, e2))
    rho = tuple(b % mu for b in e2)
    return V1Component(rho_exponents=rho, t_exponents=t_exp,
                       torsion_order=mu, dimension=1)


# -- pointed-multinet explainability ---------------------------------------

def _field_roots(poly: UniPoly):
    """Roots of a field-coefficient univariate polynomial inside the field.

    Numeric roots are reconstructed over the basis by PSLQ and verified
    exactly, so every returned root is genuine.
    """
    if poly.degree < 1:
        return []
    roots = []
    with mpmath.workdps(120):
        coeffs = [c.embed(400) for c in reversed(poly.coeffs)]
        try:
            numeric = mpmath.polyroots(coeffs, maxsteps=200, extraprec=200)
        except mpmath.libmp.NoConvergence:
            numeric = []
        r5 = mpmath.sqrt(5)
        sv = mpmath.sin(2 * mpmath.pi / 5)
        for nr in numeric:
            if abs(mpmath.im(nr)) > mpmath.mpf(10) ** (-40):
                continue
            val = mpmath.re(nr)
            rel = mpmath.pslq([mpmath.mpf(1), r5, sv, r5 * sv, val],
                              maxcoeff=10 ** 12, maxsteps=5000)
            if not rel or rel[4] == 0:
                continue
            q = -rel[4]
            cand = FieldElement(Fraction(rel[0], q), Fraction(rel[1], q),
                                Fraction(rel[2], q), Fraction(rel[3], q))
            if poly.evaluate(cand).is_zero and cand not in roots:
                roots.append(cand)
    return roots


def _substitute_x(q: MultiPoly, t0: FieldElement):
    """Coefficient polynomials in C of q(t0*y + C*z, y, z), keyed by (ey, ez)."""
    out = {}
    for (ex, ey, ez), coef in q.terms.items():
        for kk in range(ex + 1):
            key = (ey + ex - kk, ez + kk)
            cc = coef * FieldElement(comb(ex, kk)) * t0 ** (ex - kk)
            lst = out.setdefault(key, [])
            while len(lst) <= kk:
                lst.append(ZERO)
            lst[kk] = lst[kk] + cc
    return {k: UniPoly(v) for k, v in out.items()}


def _substitute_y(q: MultiPoly):
    """Coefficient polynomials in C of q(x, C*z, z), keyed by (ex, ez)."""
    out = {}
    for (ex, ey, ez), coef in q.terms.items():
        key = (ex, ez + ey)
        lst = out.setdefault(key, [])
        while len(lst) <= ey:
            lst.append(ZERO)
        lst[ey] = lst[ey] + coef
    return {k: UniPoly(v) for k, v in out.items()}


def _common_root(coeff_polys):
    nonzero = [p for p in coeff_polys.values() if not p.is_zero]
    if not nonzero:
        return ZERO  # identically zero: any value works
    for c0 in _field_roots(nonzero[0]):
        if all(p.evaluate(c0).is_zero for p in nonzero[1:]):
            return c0
    if nonzero[0].degree == 0:
        return None
    return None


def _find_linear_factor(q: MultiPoly):
    """A degree-1 factor of the homogeneous polynomial q, or None."""
    z = MultiPoly.variable("z")
    if divides(z, q):
        return z
    d = q.degree
    # restriction to z = 0 as a binary form b(t) = q(t, 1, 0)
    b = [ZERO] * (d + 1)
    for (ex, ey, ez), coef in q.terms.items():
        if ez == 0:
            b[ex] = b[ex] + coef
    bpoly = UniPoly(b)
    if bpoly.is_zero:
        return None  # every term has z, but z itself did not divide
    # factors with a y-leading covector: y - c*z
    if bpoly.degree < d:
        c0 = _common_root(_substitute_y(q))
        if c0 is not None:
            cand = MultiPoly.linear(ZERO, ONE, -c0)
            if divides(cand, q):
                return cand
    # factors x - t0*y - c*z for roots t0 of the binary restriction
    for t0 in _field_roots(bpoly):
        c0 = _common_root(_substitute_x(q, t0))
        if c0 is not None:
            cand = MultiPoly.linear(ONE, -t0, -c0)
            if divides(cand, q):
                return cand
    return None


def splits_into_linear_factors(q: MultiPoly) -> bool:
    """True iff the homogeneous q is a product of degree-1 forms over the field."""
    while q.degree > 0:
        factor = _find_linear_factor(q)
        if factor is None:
            return False
        q = exact_divide(q, factor)
    return True


def pointed_vs_fiber(A: Arrangement, report: FibrationReport) -> dict:
    """Whether every multiple fiber could come from a pointed multinet.

    A pointed multinet deletion produces multiple fibers whose residual is a
    product of lines; a residual with an irreducible factor of degree >= 2
    cannot arise that way.
    """
    if not report.multiple_fibers:
        raise ValueError("report has no multiple fiber")
    witnesses = []
    explained = True
    for f in report.multiple_fibers:
        linear = splits_into_linear_factors(f.residual)
        witnesses.append({
            "lambda": list(lambda_key(f.lam)),
            "residual": f.residual.serialize(),
            "residual_is_product_of_lines": linear,
        })
        if not linear:
            explained = False
    return {"pointed_multinet_explained": explained, "witness": witnesses}

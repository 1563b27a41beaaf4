"""Multinet verification, enumeration, pointed structures and pencils.

A multinet is a partition of the lines into k >= 3 classes with positive
multiplicities whose class polynomials all lie in one pencil.  The base
locus is derived, not supplied: it is exactly the set of intersection
points meeting lines from at least two classes, which makes the cross-class
condition definitional.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arrangement import Arrangement
from .errors import NonPositiveMultiplicity, NotAPartition, NotAPencil
from .field import ZERO
from .mpoly import MultiPoly


def _resolve_classes(A: Arrangement, classes):
    out = []
    for cls in classes:
        idxs = []
        for item in cls:
            idxs.append(item if isinstance(item, int) else A.index_of(item))
        out.append(tuple(sorted(idxs)))
    return tuple(out)


def _resolve_mult(A: Arrangement, mult):
    if isinstance(mult, dict):
        vals = [None] * A.n
        for key, v in mult.items():
            idx = key if isinstance(key, int) else A.index_of(key)
            vals[idx] = v
        if any(v is None for v in vals):
            raise NotAPartition("multiplicity map does not cover every line")
        return tuple(vals)
    vals = tuple(mult)
    if len(vals) != A.n:
        raise NotAPartition("multiplicity vector has the wrong length")
    return vals


@dataclass(frozen=True)
class Multinet:
    arrangement: Arrangement
    classes: tuple
    mult: tuple
    kappa: int
    base_locus: tuple       # indices into arrangement.lattice()
    n_x: dict               # point index -> n_x

    @property
    def k(self) -> int:
        return len(self.classes)

    def class_of(self, line_index: int) -> int:
        for i, cls in enumerate(self.classes):
            if line_index in cls:
                return i
        raise ValueError(f"line {line_index} not in any class")

    def describe(self) -> dict:
        A = self.arrangement
        return {
            "k": self.k,
            "kappa": self.kappa,
            "classes": [[A.lines[i].label for i in cls]
                        for cls in self.classes],
            "mult": {A.lines[i].label: m for i, m in enumerate(self.mult)},
            "base_locus_size": len(self.base_locus),
        }


class MultinetReport:
    """Outcome of checking the five multinet conditions, with witnesses."""

    def __init__(self, arrangement, classes, mult):
        self.arrangement = arrangement
        self.classes = classes
        self.mult = mult
        self.conditions = {}
        self.kappa = None
        self.base_locus = ()
        self.n_x = {}

    @property
    def valid(self) -> bool:
        return all(ok for ok, _ in self.conditions.values())

    def set(self, cond, ok, witness=None):
        self.conditions[cond] = (ok, witness)

    def to_multinet(self) -> Multinet:
        if not self.valid:
            raise ValueError("not a valid multinet")
        return Multinet(self.arrangement, self.classes, self.mult,
                        self.kappa, self.base_locus, dict(self.n_x))

    def describe(self) -> dict:
        return {
            "valid": self.valid,
            "conditions": {c: {"holds": ok, "witness": w}
                           for c, (ok, w) in sorted(self.conditions.items())},
            "kappa": self.kappa,
            "base_locus_size": len(self.base_locus),
        }


def check_multinet(A: Arrangement, classes, mult) -> MultinetReport:
    classes = _resolve_classes(A, classes)
    mult = _resolve_mult(A, mult)
    flat = [i for cls in classes for i in cls]
    if sorted(flat) != list(range(A.n)):
        raise NotAPartition("classes must partition the lines exactly")
    if any(len(cls) == 0 for cls in classes):
        raise NotAPartition("empty class")
    if len(classes) < 3:
        raise NotAPartition("a multinet needs at least 3 classes")
    if any(not isinstance(m, int) or m < 1 for m in mult):
        raise NonPositiveMultiplicity("multiplicities must be positive ints")

    report = MultinetReport(A, classes, mult)
    class_of = {}
    for ci, cls in enumerate(classes):
        for i in cls:
            class_of[i] = ci

    points = A.lattice()
    base = []
    for pi, pt in enumerate(points):
        if len({class_of[i] for i in pt.incident}) >= 2:
            base.append(pi)
    base_set = set(base)
    report.base_locus = tuple(base)

    # (b) holds by construction of the base locus: every point on lines of
    # two or more classes is in it.
    report.set("b", True, "base locus derived as all cross-class points")

    # (a) equal class weights
    weights = [sum(mult[i] for i in cls) for cls in classes]
    if len(set(weights)) == 1:
        report.kappa = weights[0]
        report.set("a", True)
    else:
        report.set("a", False, {"class_weights": weights})

    # (c) n_x well-defined over the classes present at each base point
    ok_c = True
    witness_c = None
    for pi in base:
        pt = points[pi]
        sums = {}
        for i in pt.incident:
            ci = class_of[i]
            sums[ci] = sums.get(ci, 0) + mult[i]
        vals = set(sums.values())
        if len(vals) == 1:
            report.n_x[pi] = vals.pop()
        else:
            ok_c = False
            witness_c = {"point": repr(pt), "class_sums": sums}
            break
    report.set("c", ok_c, witness_c)

    # (d) each class connected through intersections outside the base locus
    point_of_pair = {}
    for pi, pt in enumerate(points):
        inc = pt.incident
        for a in range(len(inc)):
            for b in range(a + 1, len(inc)):
                point_of_pair[(inc[a], inc[b])] = pi
    ok_d = True
    witness_d = None
    for ci, cls in enumerate(classes):
        parent = {i: i for i in cls}

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for a in range(len(cls)):
            for b in range(a + 1, len(cls)):
                if point_of_pair[(cls[a], cls[b])] not in base_set:
                    ra, rb = find(cls[a]), find(cls[b])
                    if ra != rb:
                        parent[ra] = rb
        roots = {find(i) for i in cls}
        if len(roots) > 1:
            ok_d = False
            witness_d = {"class": ci, "components": len(roots)}
            break
    report.set("d", ok_d, witness_d)

    # (e) gcd of all multiplicities is 1
    g = 0
    for m in mult:
        g = gcd(g, m)
    report.set("e", g == 1, None if g == 1 else {"gcd": g})
    return report


# -- enumeration -----------------------------------------------------------

def _restricted_growth_strings(n: int, max_k: int):
    """All partitions of range(n) into at most max_k classes, canonically."""
    assignment = [0] * n

    def rec(i, used):
        if i == n:
            yield tuple(assignment)
            return
        for c in range(min(used + 1, max_k)):
            assignment[i] = c
            yield from rec(i + 1, max(used, c + 1))

    yield from rec(0, 0)


def _nullspace(rows, n):
    """Basis of the rational nullspace of the given integer-coefficient rows."""
    mat = [list(map(Fraction, row)) for row in rows]
    pivots = []
    r = 0
    for col in range(n):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            vec[pc] = -mat[ri][fc]
        basis.append(vec)
    return basis


def _mult_constraints(A, classes, base, class_of):
    """Linear constraints on the multiplicity vector from (a) and (c)."""
    n = A.n
    rows = []
    first = classes[0]
    for cls in classes[1:]:
        row = [0] * n
        for i in first:
            row[i] -= 1
        for i in cls:
            row[i] += 1
        rows.append(row)
    points = A.lattice()
    for pi in base:
        pt = points[pi]
        present = {}
        for i in pt.incident:
            present.setdefault(class_of[i], []).append(i)
        cls_ids = sorted(present)
        ref = present[cls_ids[0]]
        for ci in cls_ids[1:]:
            row = [0] * n
            for i in ref:
                row[i] -= 1
            for i in present[ci]:
                row[i] += 1
            rows.append(row)
    return rows


def enumerate_multinets(A: Arrangement, max_k: int = 4, max_mult: int = 4):
    """All multinets on A up to class permutation, within the given caps."""
    if max_k < 3:
        raise ValueError("max_k must be at least 3")
    if max_mult < 1:
        raise ValueError("max_mult must be at least 1")
    n = A.n
    points = A.lattice()
    point_of_pair = {}
    for pi, pt in enumerate(points):
        inc = pt.incident
        for a in range(len(inc)):
            for b in range(a + 1, len(inc)):
                point_of_pair[(inc[a], inc[b])] = pi
    results = []
    for rgs in _restricted_growth_strings(n, max_k):
        k = max(rgs) + 1
        if k < 3:
            continue
        classes = tuple(tuple(i for i in range(n) if rgs[i] == c)
                        for c in range(k))
        class_of = {i: rgs[i] for i in range(n)}
        base = [pi for pi, pt in enumerate(points)
                if len({class_of[i] for i in pt.incident}) >= 2]
        base_set = set(base)
        # condition (d) is multiplicity-free: check it before solving
        connected = True
        for cls in classes:
            if len(cls) == 1:
                continue
            parent = {i: i for i in cls}

            def find(i):
                while parent[i] != i:
                    parent[i] = parent[parent[i]]
                    i = parent[i]
                return i

            for a in range(len(cls)):
                for b in range(a + 1, len(cls)):
                    if point_of_pair[(cls[a], cls[b])] not in base_set:
                        ra, rb = find(cls[a]), find(cls[b])
                        if ra != rb:
                            parent[ra] = rb
            if len({find(i) for i in cls}) > 1:
                connected = False
                break
        if not connected:
            continue
        rows = _mult_constraints(A, classes, base, class_of)
        basis = _nullspace(rows, n)
        for m in _integer_solutions(basis, n, max_mult):
            report = check_multinet(A, classes, m)
            if report.valid:
                results.append(report.to_multinet())
    return results


def _integer_solutions(basis, n, max_mult):
    """Positive integer points of the solution space with entries <= max_mult
    and gcd 1."""
    if not basis:
        return
    if len(basis) == 1:
        vec = basis[0]
        denoms = [v.denominator for v in vec]
        lcm = 1
        for d in denoms:
            lcm = lcm * d // gcd(lcm, d)
        ints = [int(v * lcm) for v in vec]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g == 0:
            return
        ints = [v // g for v in ints]
        if all(v < 0 for v in ints):
            ints = [-v for v in ints]
        if all(1 <= v <= max_mult for v in ints):
            yield tuple(ints)
        return
    # higher-dimensional solution space: the echelon basis from _nullspace
    # carries the identity on the free coordinates, so every span element is
    # determined by its values there -- scan only those
    dim = len(basis)
    if max_mult ** dim > 1_000_000:
        raise ValueError("multiplicity search space too large")
    import itertools

    for t in itertools.product(range(1, max_mult + 1), repeat=dim):
        cand = [Fraction(0)] * n
        for tv, vec in zip(t, basis):
            for i in range(n):
                cand[i] += tv * vec[i]
        if all(v.denominator == 1 and 1 <= v <= max_mult for v in cand):
            ints = tuple(int(v) for v in cand)
            g = 0
            for v in ints:
                g = gcd(g, v)
            if g == 1:
                yield ints


# -- pointed multinets ------------------------------------------------------

def find_pointed(A: Arrangement, net: Multinet):
    """Indices of lines H with m_H > 1 and m_H | n_x at every base point on H."""
    points = A.lattice()
    out = []
    for i in range(A.n):
        m = net.mult[i]
        if m <= 1:
            continue
        ok = True
        for pi in net.base_locus:
            if i in points[pi].incident and net.n_x[pi] % m != 0:
                ok = False
                break
        if ok:
            out.append(i)
    return out


# -- the associated pencil --------------------------------------------------

@dataclass(frozen=True)
class Pencil:
    g1: MultiPoly
    g2: MultiPoly
    combos: tuple  # (alpha, beta) for each class polynomial g_i, i >= 3

    @property
    def degree(self) -> int:
        return self.g1.degree


def class_polynomial(A: Arrangement, net: Multinet, ci: int) -> MultiPoly:
    g = MultiPoly.constant(1)
    for i in net.classes[ci]:
        g = g * A.lines[i].linear_form() ** net.mult[i]
    return g


def _solve_combo(g1: MultiPoly, g2: MultiPoly, gi: MultiPoly):
    """(alpha, beta) with gi = alpha*g1 + beta*g2, or None."""
    support = set(g1.terms) | set(g2.terms) | set(gi.terms)
    rows = [(g1.terms.get(m, ZERO), g2.terms.get(m, ZERO),
             gi.terms.get(m, ZERO)) for m in sorted(support)]
    # find two independent equations
    for a in range(len(rows)):
        r1 = rows[a]
        for b in range(a + 1, len(rows)):
            r2 = rows[b]
            det = r1[0] * r2[1] - r1[1] * r2[0]
            if not det.is_zero:
                inv = det.inverse()
                alpha = (r1[2] * r2[1] - r1[1] * r2[2]) * inv
                beta = (r1[0] * r2[2] - r1[2] * r2[0]) * inv
                if g1.scale(alpha) + g2.scale(beta) == gi:
                    return alpha, beta
                return None
    return None


def multinet_pencil(A: Arrangement, net: Multinet) -> Pencil:
    """The pencil spanned by the first two class polynomials.

    Every further class polynomial must be an exact field-linear combination
    of the first two; failure signals input that is not a multinet in the
    pencil sense.
    """
    gs = [class_polynomial(A, net, ci) for ci in range(net.k)]
    g1, g2 = gs[0], gs[1]
    if _is_proportional(g1, g2):
        raise NotAPencil("the first two class polynomials are proportional")
    combos = []
    for gi in gs[2:]:
        sol = _solve_combo(g1, g2, gi)
        if sol is None:
            raise NotAPencil("a class polynomial is outside the pencil")
        combos.append(sol)
    return Pencil(g1, g2, tuple(combos))


def builtin_pencil(name: str) -> Pencil:
    """Canonical defining pencil for a builtin arrangement."""
    from .arrangement import double_star_data
    from .errors import UnknownBuiltin
    from .mpoly import X, Y, Z
    if name == "double_star":
        forms = double_star_data()["homogeneous_forms"]
        g1 = MultiPoly.constant(1)
        for f in forms[:5]:
            g1 = g1 * f
        g2 = MultiPoly.constant(1)
        for f in forms[5:]:
            g2 = g2 * f
        return Pencil(g1, g2, ())
    if name in ("b3", "b3_del_z"):
        return Pencil(X * X * (Y * Y - Z * Z), Y * Y * (X * X - Z * Z), ())
    raise UnknownBuiltin(f"no builtin pencil named {name!r}")


def _is_proportional(p: MultiPoly, q: MultiPoly) -> bool:
    if p.is_zero or q.is_zero:
        return True
    if set(p.terms) != set(q.terms):
        return False
    ratio = None
    for m, c in p.terms.items():
        r = q.terms[m] * c.inverse()
        if ratio is None:
            ratio = r
        elif r != ratio:
            return False
    return True

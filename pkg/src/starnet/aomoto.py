"""Integer Aomoto complex of an affine line arrangement and its torsion.

The degree-2 part of the cohomology ring of the affine complement has the
broken-circuit style basis: at each affine intersection point p with
incident lines i1 < ... < ir, the products (i1, ij) for j >= 2.  Parallel
lines meet only at infinity and contribute nothing.  Cup product with a
degree-one integer class omega gives the two-step complex whose second
cohomology torsion is computed by Smith normal form.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arrangement import Arrangement


@dataclass(frozen=True)
class OS2Basis:
    points: tuple       # (coords-at-finite-distance IntersectionPoint, ...) refs
    elements: tuple     # ((point position, line index), ...)
    index: dict         # (point position, line index) -> basis position
    minimal: tuple      # minimal incident line per point position
    pair_point: dict    # (i, j) with i < j -> point position, affine pairs only

    @property
    def b2(self) -> int:
        return len(self.elements)


def os2_basis(A: Arrangement) -> OS2Basis:
    if any(ln.is_infinity for ln in A.lines):
        raise ValueError("decone first: the affine complex excludes z = 0")
    affine_points = [p for p in A.lattice() if not p.is_at_infinity]
    elements = []
    index = {}
    minimal = []
    pair_point = {}
    for pos, pt in enumerate(affine_points):
        inc = pt.incident
        minimal.append(inc[0])
        for j in inc[1:]:
            index[(pos, j)] = len(elements)
            elements.append((pos, j))
        for a in range(len(inc)):
            for b in range(a + 1, len(inc)):
                pair_point[(inc[a], inc[b])] = pos
    return OS2Basis(tuple(affine_points), tuple(elements), index,
                    tuple(minimal), pair_point)


def reduce_product(i: int, j: int, basis: OS2Basis):
    """Coordinates of e_i * e_j on the basis; zero for parallel lines."""
    if i == j:
        raise ValueError("product of a generator with itself is zero")
    sign = 1
    a, b = i, j
    if a > b:
        a, b = b, a
        sign = -1
    vec = [0] * basis.b2
    pos = basis.pair_point.get((a, b))
    if pos is None:
        return vec
    m = basis.minimal[pos]
    # e_a e_b = e_m e_b - e_m e_a (three-term relation at the point)
    if a == m:
        vec[basis.index[(pos, b)]] += sign
    elif b == m:
        vec[basis.index[(pos, a)]] -= sign
    else:
        vec[basis.index[(pos, b)]] += sign
        vec[basis.index[(pos, a)]] -= sign
    return vec


@dataclass(frozen=True)
class AomotoComplex:
    omega: tuple   # integer weight per affine line; also the d1 matrix
    d2: tuple      # n rows of length b2: row j is omega wedge e_j
    basis: OS2Basis

    @property
    def n(self) -> int:
        return len(self.omega)

    @property
    def b2(self) -> int:
        return self.basis.b2


def aomoto_complex(A: Arrangement, a) -> AomotoComplex:
    a = tuple(int(v) for v in a)
    if len(a) != A.n:
        raise ValueError(f"weight vector must have length {A.n}")
    basis = os2_basis(A)
    rows = []
    for j in range(A.n):
        row = [0] * basis.b2
        for i in range(A.n):
            if i == j or a[i] == 0:
                continue
            for t, v in enumerate(reduce_product(i, j, basis)):
                row[t] += a[i] * v
        rows.append(tuple(row))
    return AomotoComplex(a, tuple(rows), basis)


# -- Smith normal form ------------------------------------------------------

@dataclass(frozen=True)
class SNFResult:
    divisors: tuple    # nonzero diagonal, divisibility chain
    rank: int
    shape: tuple       # (rows, cols) of the input
    U: tuple           # unimodular row transform
    V: tuple           # unimodular column transform
    diagonal: tuple    # full diagonal of U*M*V, including zeros

    @property
    def torsion(self):
        return tuple(d for d in self.divisors if d > 1)


def snf(M) -> SNFResult:
    """Smith normal form with unimodular transforms, arbitrary precision."""
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):
        A[dst] = [a + f * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, f):
        for row in A:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]

    limit = min(m, n)

    def reduce_from(start):
        """Diagonalize the trailing submatrix starting at position `start`."""
        t = start
        while t < limit:
            piv = None
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = abs(A[i][j])
                    if v and (best is None or v < best):
                        best = v
                        piv = (i, j)
            if piv is None:
                return t
            swap_rows(t, piv[0])
            swap_cols(t, piv[1])
            dirty = True
            while dirty:
                dirty = False
                for i in range(t + 1, m):
                    if A[i][t]:
                        add_row(t, i, -(A[i][t] // A[t][t]))
                        if A[i][t]:
                            swap_rows(t, i)
                            dirty = True
                for j in range(t + 1, n):
                    if A[t][j]:
                        add_col(t, j, -(A[t][j] // A[t][t]))
                        if A[t][j]:
                            swap_cols(t, j)
                            dirty = True
            if A[t][t] < 0:
                negate_row(t)
            t += 1
        return t

    rank_t = reduce_from(0)
    # enforce the divisibility chain: a violation at (i, i+1) is cured by
    # mixing the columns and re-diagonalizing from position i
    while True:
        bad = None
        for i in range(rank_t - 1):
            if A[i + 1][i + 1] % A[i][i]:
                bad = i
                break
        if bad is None:
            break
        add_col(bad + 1, bad, 1)
        rank_t = reduce_from(bad)
    divisors = tuple(A[i][i] for i in range(rank_t) if A[i][i])
    diagonal = tuple(A[i][i] for i in range(limit))
    return SNFResult(divisors=divisors, rank=len(divisors), shape=(m, n),
                     U=tuple(tuple(r) for r in U),
                     V=tuple(tuple(r) for r in V),
                     diagonal=diagonal)


@dataclass(frozen=True)
class H2Report:
    snf: SNFResult
    b2: int
    h2_free_rank: int
    h2_torsion: tuple
    h1_rank: int

    def describe(self) -> dict:
        return {
            "b2": self.b2,
            "elementary_divisors": list(self.snf.divisors),
            "h2_free_rank": self.h2_free_rank,
            "h2_torsion": [f"Z/{d}" for d in self.h2_torsion],
            "h1_rank": self.h1_rank,
            "has_2_torsion": any(d % 2 == 0 for d in self.h2_torsion),
        }


def h2_torsion(complex_: AomotoComplex) -> H2Report:
    """Torsion of coker(d2) plus the rank of H^1 of the complex."""
    b2 = complex_.b2
    n = complex_.n
    # the map Z^n -> Z^b2 sends e_j to row j; cokernel torsion is read off
    # the Smith form of the n x b2 matrix
    result = snf(complex_.d2 if complex_.d2 else [[0]])
    rank = result.rank
    torsion = result.torsion
    d1_rank = 1 if any(complex_.omega) else 0
    return H2Report(
        snf=result,
        b2=b2,
        h2_free_rank=b2 - rank,
        h2_torsion=torsion,
        h1_rank=(n - rank) - d1_rank,
    )

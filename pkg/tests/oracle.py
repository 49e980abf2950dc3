"""Independent brute-force oracles built on sympy.

Everything here avoids the package's own Groebner and elimination code:
normal forms come from sympy's groebner, ranks from DomainMatrix over GF(p),
and modules over an artinian ring are expanded into explicit k-spaces.
"""

from itertools import combinations_with_replacement

import numpy as np
import sympy
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix


def gf_rank(rows, p, ncols):
    if not rows or ncols == 0:
        return 0
    dom = GF(p)
    M = DomainMatrix([[dom(int(v) % p) for v in r] for r in rows], (len(rows), ncols), dom)
    return M.rank()


class ExpandedRing:
    """An artinian quotient GF(p)[vars]/J as an explicit k-algebra."""

    def __init__(self, p, variables, relations):
        self.p = p
        self.symbols = sympy.symbols(list(variables))
        self.relations = [sympy.sympify(r.replace("^", "**"), locals=self._locals()) for r in relations]
        if self.relations:
            self.G = sympy.groebner(self.relations, *self.symbols, modulus=p, order="grevlex")
        else:
            self.G = None
        self.basis = self._standard_monomials()
        self.index = {m: i for i, m in enumerate(self.basis)}

    def _locals(self):
        return {str(s): s for s in self.symbols}

    def nf(self, expr):
        expr = sympy.expand(expr)
        if self.G is None:
            return sympy.Poly(expr, *self.symbols, modulus=self.p)
        _, r = self.G.reduce(expr)
        return sympy.Poly(r, *self.symbols, modulus=self.p)

    def _standard_monomials(self):
        out = []
        n = len(self.symbols)
        d = 0
        while True:
            found = False
            for combo in combinations_with_replacement(range(n), d):
                exp = [0] * n
                for v in combo:
                    exp[v] += 1
                mono = sympy.Mul(*[s**e for s, e in zip(self.symbols, exp)])
                r = self.nf(mono)
                if not r.is_zero and r.as_expr() == mono:
                    out.append(tuple(exp))
                    found = True
            if not found:
                return out
            d += 1
            if d > 40:
                raise ValueError("ring is not artinian")

    @property
    def length(self):
        return len(self.basis)

    def coords(self, expr):
        poly = self.nf(expr)
        v = [0] * self.length
        for exp, c in poly.terms():
            v[self.index[tuple(exp)]] = int(c) % self.p
        return v

    def mono_expr(self, exp):
        return sympy.Mul(*[s**e for s, e in zip(self.symbols, exp)])

    def mult_matrix(self, expr):
        """Matrix of multiplication by ``expr`` on the k-basis (columns = inputs)."""
        cols = [self.coords(expr * self.mono_expr(m)) for m in self.basis]
        return [[cols[c][r] for c in range(self.length)] for r in range(self.length)]

    def expand(self, entries):
        """Block k-matrix of an R-matrix given as rows of sympy expressions."""
        L = self.length
        nr = len(entries)
        nc = len(entries[0]) if entries else 0
        big = [[0] * (nc * L) for _ in range(nr * L)]
        for j in range(nr):
            for k in range(nc):
                block = self.mult_matrix(entries[j][k])
                for a in range(L):
                    for b in range(L):
                        big[j * L + a][k * L + b] = block[a][b]
        return big


def to_sympy(ring, f):
    """Convert a package polynomial into a sympy expression over the oracle's symbols."""
    return sympy.Add(*[c * ring.mono_expr(e) for e, c in f.terms.items()]) if f.terms else sympy.Integer(0)


def expanded_differentials(oring, F):
    """k-matrices of every differential of a package complex."""
    out = {}
    for i in F.degrees():
        d = F.d(i)
        rows = [[to_sympy(oring, f) for f in row] for row in d.entries]
        out[i] = (rows and oring.expand(rows)) or []
    return out


def homology_lengths(oring, F):
    """dim_k H_i computed as nullity(d_i) - rank(d_{i+1}) on the expanded complex."""
    L = oring.length
    p = oring.p
    mats = expanded_differentials(oring, F)
    ranks = {}
    for i in F.degrees():
        ranks[i] = gf_rank(mats[i], p, F.rank(i) * L) if F.rank(i) and F.rank(i - 1) else 0
    out = {}
    for i in F.degrees():
        dim = F.rank(i) * L
        out[i] = dim - ranks[i] - ranks.get(i + 1, 0)
    return out


def null_homotopic(oring, phi):
    """Decide phi ~ 0 by an ungraded k-linear solve over all R-linear homotopies."""
    F, X = phi.source, phi.target
    L = oring.length
    p = oring.p
    lo = min(F.lo, X.lo) - 1
    hi = max(F.hi, X.hi) + 1
    unknowns = []  # (degree i, row j, col k, basis monomial index)
    for i in range(lo, hi + 1):
        for j in range(X.rank(i + 1)):
            for k in range(F.rank(i)):
                for m in range(L):
                    unknowns.append((i, j, k, m))
    mono = [np.array(oring.mult_matrix(oring.mono_expr(e)), dtype=object) for e in oring.basis]
    cache = {}

    def mat(f):
        key = str(f)
        if key not in cache:
            cache[key] = np.array(oring.mult_matrix(to_sympy(oring, f)), dtype=object)
        return cache[key]

    blocks = []
    rhs = []
    for i in range(lo, hi + 1):
        if not (F.rank(i) and X.rank(i)):
            continue
        dX, dF, target = X.d(i + 1), F.d(i), phi.component(i)
        for r in range(X.rank(i)):
            for c in range(F.rank(i)):
                cols = []
                for deg, j, k, m in unknowns:
                    if deg == i and k == c:
                        cols.append((mat(dX.entries[r][j]).dot(mono[m])).reshape(-1))
                    elif deg == i - 1 and j == r:
                        cols.append((mono[m].dot(mat(dF.entries[k][c]))).reshape(-1))
                    else:
                        cols.append(np.zeros(L * L, dtype=object))
                blocks.append(np.stack(cols, axis=1) if cols else np.zeros((L * L, 0), dtype=object))
                rhs.append(mat(target.entries[r][c]).reshape(-1))
    if not blocks:
        return True
    A = np.concatenate(blocks, axis=0) % p
    b = np.concatenate(rhs) % p
    n = len(unknowns)
    r1 = gf_rank(A.tolist(), p, n)
    r2 = gf_rank(np.concatenate([A, b[:, None]], axis=1).tolist(), p, n + 1)
    return r1 == r2

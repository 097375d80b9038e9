"""
Exact integer linear algebra and finitely generated abelian groups.

Matrices are plain lists of rows of Python ints, so there is no overflow.
A group is presented by generators and relations; relations are the
columns of the relation matrix.  Each group caches a Smith-form change
of basis, and all user-facing coordinates are invariant-factor
coordinates.

Sparse vectors are dicts {index: value} with no zero values.
"""

from fractions import Fraction
from math import gcd


class LatticeError(ValueError):
    pass


# ---------------------------------------------------------------- helpers

def xgcd(a, b):
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def lcm(a, b):
    if a == 0 or b == 0:
        return 0
    return abs(a * b) // gcd(a, b)


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A, B):
    if not A:
        return []
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * n
        for k, a in enumerate(row):
            if a:
                for j, b in enumerate(B[k]):
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def matvec(A, v):
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def det(A):
    """Exact determinant by fraction-free elimination (Bareiss)."""
    n = len(A)
    if n == 0:
        return 1
    M = [row[:] for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def sparse(v):
    return {i: x for i, x in enumerate(v) if x}


def dense(v, n):
    out = [0] * n
    for i, x in v.items():
        out[i] = x
    return out


def _axpy(v, c, w):
    """v += c*w in place (sparse)."""
    for i, x in w.items():
        y = v.get(i, 0) + c * x
        if y:
            v[i] = y
        else:
            v.pop(i, None)


# ---------------------------------------------------------------- echelon

class Echelon:
    """Incrementally maintained echelon basis of a sublattice of Z^n.

    Rows are sparse dicts; the pivot of a row is its smallest index and
    pivot entries are positive.  Adding vectors keeps the lattice equal to
    the span of everything added so far.
    """

    def __init__(self, vectors=()):
        self.rows = {}
        for v in vectors:
            self.add(v)

    def add(self, v):
        v = dict(v) if isinstance(v, dict) else sparse(v)
        rows = self.rows
        while v:
            p = min(v)
            row = rows.get(p)
            b = v[p]
            if row is None:
                if b < 0:
                    v = {i: -x for i, x in v.items()}
                rows[p] = self._reduce_tail(v, p)
                return
            a = row[p]
            if b % a == 0:
                _axpy(v, -(b // a), row)
                continue
            g, x, y = xgcd(a, b)
            new = {}
            _axpy(new, x, row)
            _axpy(new, y, v)
            rest = {}
            _axpy(rest, a // g, v)
            _axpy(rest, -(b // g), row)
            rows[p] = self._reduce_tail(new, p)
            v = rest

    def _reduce_tail(self, v, p):
        # Hermite-style reduction of the entries after the pivot
        for i in sorted(v):
            if i <= p or i not in v:
                continue
            row = self.rows.get(i)
            if row is None:
                continue
            q = v[i] // row[i]
            if q:
                _axpy(v, -q, row)
        return v

    def pivots(self):
        return sorted(self.rows)

    def basis(self):
        return [self.rows[p] for p in sorted(self.rows)]

    def rank(self):
        return len(self.rows)

    def reduce(self, v, stop=None):
        """Reduce v by pivot rows (pivots < stop); return (remainder, coeffs).

        Reduction is exact division only, so a nonzero remainder at a
        pivot column means v is outside the lattice there.
        """
        v = dict(v) if isinstance(v, dict) else sparse(v)
        coeffs = {}
        done = set()
        while True:
            cand = [i for i in v if i not in done and (stop is None or i < stop)]
            if not cand:
                return v, coeffs
            p = min(cand)
            row = self.rows.get(p)
            if row is None or v[p] % row[p]:
                done.add(p)
                continue
            q = v[p] // row[p]
            coeffs[p] = q
            _axpy(v, -q, row)

    def contains(self, v):
        rem, _ = self.reduce(v)
        return not rem

    def solve(self, v):
        """Coefficients c (dict pivot -> int) with sum c_p row_p = v, or None."""
        rem, coeffs = self.reduce(v)
        if rem:
            return None
        return coeffs


def lattice_kernel(columns, moduli, source_moduli=None):
    """Basis of {x in Z^a : sum_j x_j columns[j] = 0 mod moduli}.

    columns: list of a sparse dicts over row indices; moduli[i] = 0 means an
    exact equation.  source_moduli[j] = d_j > 0 declares that d_j e_j lies in
    the kernel (the map is well defined on Z/d_j); it keeps entries small.
    Returns sparse vectors over range(a) in echelon form.
    """
    b = len(moduli)
    ech = Echelon()
    for i, m in enumerate(moduli):
        if m:
            ech.add({i: m})
    if source_moduli:
        for j, d in enumerate(source_moduli):
            if d:
                ech.add({b + j: d})
    for j, col in enumerate(columns):
        v = dict(col)
        v[b + j] = 1
        ech.add(v)
    out = []
    for p in ech.pivots():
        if p >= b:
            out.append({i - b: x for i, x in ech.rows[p].items()})
    return out


def solve_congruence(columns, target, moduli):
    """Find integer x with sum_j x_j columns[j] = target mod moduli, or None."""
    b = len(moduli)
    ech = Echelon()
    for j, col in enumerate(columns):
        v = dict(col)
        v[b + j] = 1
        ech.add(v)
    for i, m in enumerate(moduli):
        if m:
            ech.add({i: m})
    t = dict(target) if isinstance(target, dict) else sparse(target)
    rem, _ = ech.reduce(t, stop=b)
    if any(i < b for i in rem):
        return None
    x = [0] * len(columns)
    for i, val in rem.items():
        x[i - b] = -val
    return x


# ---------------------------------------------------------------- normal forms

def hermite_normal_form(A):
    """Column Hermite form: returns (H, U) with A*U = H, U unimodular.

    H is in column echelon form: pivot entries positive, entries to the
    left of a pivot in its row reduced into [0, pivot).
    """
    m = len(A)
    n = len(A[0]) if m else 0
    H = [row[:] for row in A]
    U = identity(n)

    def colop(j, k, a, b, c, d):
        # (col_j, col_k) <- (a col_j + b col_k, c col_j + d col_k)
        for M in (H, U):
            for row in M:
                x, y = row[j], row[k]
                row[j], row[k] = a * x + b * y, c * x + d * y

    piv = 0
    pivots = []
    for i in range(m):
        if piv >= n:
            break
        for k in range(piv + 1, n):
            b = H[i][k]
            if b == 0:
                continue
            a = H[i][piv]
            g, x, y = xgcd(a, b)
            colop(piv, k, x, y, -(b // g), a // g)
        if H[i][piv] == 0:
            continue
        if H[i][piv] < 0:
            colop(piv, piv, -1, 0, 0, -1)
        p = H[i][piv]
        for k in range(piv):
            q = H[i][k] // p
            if q:
                for M in (H, U):
                    for row in M:
                        row[k] -= q * row[piv]
        pivots.append((i, piv))
        piv += 1
    return H, U


def _swap_rows(M, i, j):
    M[i], M[j] = M[j], M[i]


def _swap_cols(M, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]


def smith_normal_form(A, left=True, right=True, left_inverse=False):
    """Smith form with transforms: returns (U, D, V) with U*A*V = D.

    Pivots are chosen as the nonzero entry of least absolute value.  When
    left_inverse is set, the tuple gains a fourth entry U^-1.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [row[:] for row in A]
    U = identity(m) if left else None
    Ui = identity(m) if left_inverse else None
    V = identity(n) if right else None

    def row_add(i, t, c):
        # row_i += c * row_t
        if c == 0:
            return
        Di, Dt = D[i], D[t]
        for j in range(n):
            if Dt[j]:
                Di[j] += c * Dt[j]
        if U is not None:
            Ui_, Ut = U[i], U[t]
            for j in range(m):
                if Ut[j]:
                    Ui_[j] += c * Ut[j]
        if Ui is not None:
            for row in Ui:
                if row[i]:
                    row[t] -= c * row[i]

    def col_add(j, t, c):
        # col_j += c * col_t
        if c == 0:
            return
        for row in D:
            if row[t]:
                row[j] += c * row[t]
        if V is not None:
            for row in V:
                if row[t]:
                    row[j] += c * row[t]

    def swap_r(i, j):
        if i != j:
            _swap_rows(D, i, j)
            if U is not None:
                _swap_rows(U, i, j)
            if Ui is not None:
                _swap_cols(Ui, i, j)

    def swap_c(i, j):
        if i != j:
            _swap_cols(D, i, j)
            if V is not None:
                _swap_cols(V, i, j)

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_r(t, best[1])
        swap_c(t, best[2])
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    row_add(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    col_add(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        dirty = True
            if dirty:
                best = None
                for i in range(t, m):
                    if D[i][t] and (best is None or abs(D[i][t]) < best[0]):
                        best = (abs(D[i][t]), i, t)
                for j in range(t, n):
                    if D[t][j] and (best is None or abs(D[t][j]) < best[0]):
                        best = (abs(D[t][j]), t, j)
                swap_r(t, best[1])
                swap_c(t, best[2])
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
            if Ui is not None:
                for row in Ui:
                    row[t] = -row[t]
    if left_inverse:
        return U, D, V, Ui
    return U, D, V


def snf_diagonal(A):
    """Diagonal of the Smith form (no transforms), padded with zeros."""
    _, D, _ = smith_normal_form(A, left=False, right=False)
    k = min(len(D), len(D[0]) if D else 0)
    return [D[i][i] for i in range(k)]


# ---------------------------------------------------------------- groups

def _canonicalize(ngens, relations):
    """Smith-type change of basis for a presented abelian group.

    Returns (factors, P, Q): factors are the non-unit cyclic orders
    (torsion ascending, then 0 for each free summand); P[k] is a sparse
    row with canonical coordinate k = P[k].x; Q[k] is the presentation
    vector of canonical generator k.
    """
    alive = set(range(ngens))
    T = {i: {i: 1} for i in range(ngens)}
    rels = [dict(r) for r in relations if r]
    occ = {i: set() for i in range(ngens)}
    for idx, r in enumerate(rels):
        for i in r:
            occ[i].add(idx)
    live = set(range(len(rels)))
    # unit pivots: eliminate generators, sparsest relations first
    changed = True
    while changed:
        changed = False
        order = sorted(live, key=lambda k: len(rels[k]))
        for k in order:
            if k not in live:
                continue
            r = rels[k]
            if not r:
                live.discard(k)
                continue
            unit = [i for i, x in r.items() if x in (1, -1)]
            if not unit:
                continue
            j = min(unit, key=lambda i: (len(occ[i]), i))
            eps = r[j]
            Tj = T.pop(j)
            for i, x in r.items():
                if i != j:
                    _axpy(T[i], -eps * x, Tj)
            live.discard(k)
            for i in r:
                occ[i].discard(k)
            for k2 in list(occ[j]):
                s = rels[k2]
                c = s[j]
                for i in r:
                    occ[i].discard(k2)
                _axpy(s, -eps * c, r)
                for i in s:
                    occ[i].add(k2)
                if not s:
                    live.discard(k2)
            occ.pop(j)
            alive.discard(j)
            changed = True
    gens = sorted(alive)
    pos = {g: i for i, g in enumerate(gens)}
    ech = Echelon()
    for k in sorted(live):
        r = rels[k]
        if r:
            ech.add({pos[i]: x for i, x in r.items()})
    basis = ech.basis()
    g = len(gens)
    A = [[0] * len(basis) for _ in range(g)]
    for c, r in enumerate(basis):
        for i, x in r.items():
            A[i][c] = x
    if g:
        U, D, _, Ui = smith_normal_form(A, right=False, left_inverse=True)
    else:
        U, D, Ui = [], [], []
    diag = [D[i][i] if i < len(basis) else 0 for i in range(g)]
    factors, P, Q = [], [], []
    # the diagonal is in divisibility order with zeros last
    for k in range(g):
        d = diag[k]
        if d == 1:
            continue
        row = {}
        for i, x in enumerate(U[k]):
            if x:
                _axpy(row, x, T[gens[i]])
        if d:
            row = {i: x % d for i, x in row.items() if x % d}
        factors.append(d)
        P.append(row)
        q = [0] * ngens
        for i in range(g):
            if Ui[i][k]:
                q[gens[i]] = Ui[i][k]
        Q.append(q)
    return factors, P, Q


class FinAbGroup:
    """Finitely generated abelian group <gens | relations>.

    relations: iterable of vectors (lists or sparse dicts) of length ngens,
    the columns of the relation matrix.
    """

    def __init__(self, ngens, relations=(), labels=None):
        self.ngens = ngens
        rels = []
        for r in relations:
            r = {i: x for i, x in r.items() if x} if isinstance(r, dict) else sparse(r)
            if any(i >= ngens or i < 0 for i in r):
                raise LatticeError("relation index out of range")
            if r:
                rels.append(r)
        self.relations = rels
        self.labels = labels
        self._canon = None

    @classmethod
    def from_invariants(cls, factors):
        """Direct sum of cyclic groups Z/d (d = 0 gives Z), already diagonal."""
        factors = [abs(int(d)) for d in factors]
        G = cls(len(factors), [{i: d} for i, d in enumerate(factors) if d])
        ordered = sorted(range(len(factors)), key=lambda i: (factors[i] == 0, factors[i]))
        diagonal = all(factors[i] != 1 for i in range(len(factors)))
        if diagonal and _divides_chain([factors[i] for i in ordered if factors[i]]):
            fac, P, Q = [], [], []
            for i in ordered:
                fac.append(factors[i])
                P.append({i: 1})
                q = [0] * len(factors)
                q[i] = 1
                Q.append(q)
            G._canon = (fac, P, Q)
        return G

    @classmethod
    def trivial(cls):
        return cls(0)

    # canonical data
    @property
    def canon(self):
        if self._canon is None:
            self._canon = _canonicalize(self.ngens, self.relations)
        return self._canon

    @property
    def factors(self):
        """Orders of the canonical cyclic generators (0 means infinite)."""
        return list(self.canon[0])

    @property
    def invariants(self):
        """Torsion invariant factors d_1 | d_2 | ... (each > 1)."""
        return tuple(d for d in self.canon[0] if d)

    @property
    def free_rank(self):
        return sum(1 for d in self.canon[0] if d == 0)

    @property
    def ncanon(self):
        return len(self.canon[0])

    def is_finite(self):
        return self.free_rank == 0

    def is_trivial(self):
        return self.ncanon == 0

    def order(self):
        if not self.is_finite():
            return None
        n = 1
        for d in self.invariants:
            n *= d
        return n

    def exponent(self):
        if not self.is_finite():
            return 0
        e = 1
        for d in self.invariants:
            e = lcm(e, d)
        return e

    def relation_matrix(self):
        return [[r.get(i, 0) for r in self.relations] for i in range(self.ngens)]

    # coordinates
    def to_canon(self, x):
        """Canonical coordinates of a presentation vector (dense or sparse)."""
        fac, P, _ = self.canon
        if isinstance(x, dict):
            items = x
            out = []
            for d, row in zip(fac, P):
                s = sum(row.get(i, 0) * v for i, v in items.items()) if len(row) > len(items) \
                    else sum(v * items.get(i, 0) for i, v in row.items())
                out.append(s % d if d else s)
            return tuple(out)
        out = []
        for d, row in zip(fac, P):
            s = 0
            for i, v in row.items():
                s += v * x[i]
            out.append(s % d if d else s)
        return tuple(out)

    def from_canon(self, c):
        """Presentation vector representing canonical coordinates c."""
        _, _, Q = self.canon
        out = [0] * self.ngens
        for k, ck in enumerate(c):
            if ck:
                for i, q in enumerate(Q[k]):
                    if q:
                        out[i] += ck * q
        return out

    def reduce_canon(self, c):
        return tuple(x % d if d else x for x, d in zip(c, self.factors))

    def element(self, x):
        return AbElement(self, list(x))

    def element_canon(self, c):
        return AbElement(self, self.from_canon(c))

    def zero(self):
        return AbElement(self, [0] * self.ngens)

    def gens(self):
        """Canonical generators, one per invariant factor / free summand."""
        return [AbElement(self, list(q)) for q in self.canon[2]]

    def presentation_gens(self):
        return [AbElement(self, [int(i == j) for j in range(self.ngens)]) for i in range(self.ngens)]

    def is_zero(self, x):
        return not any(self.to_canon(x))

    def elements(self, limit=100000):
        """All elements as AbElements, in lexicographic canonical order."""
        if not self.is_finite():
            raise LatticeError("group is infinite")
        n = self.order()
        if n > limit:
            raise LatticeError("group too large to enumerate (%d elements)" % n)
        fac = self.factors
        out = [()]
        for d in fac:
            out = [c + (k,) for c in out for k in range(d)]
        return [self.element_canon(c) for c in out]

    def element_order(self, x):
        c = self.to_canon(x)
        o = 1
        for ck, d in zip(c, self.factors):
            if d == 0:
                if ck:
                    return 0
                continue
            o = lcm(o, d // gcd(d, ck))
        return o

    def isomorphic(self, other):
        return self.factors == other.factors

    def describe(self):
        return describe_factors(self.factors)

    def __repr__(self):
        return "FinAbGroup(%s)" % self.describe()


def _divides_chain(ds):
    return all(ds[i + 1] % ds[i] == 0 for i in range(len(ds) - 1))


def describe_factors(factors):
    parts = ["Z/%d" % d for d in factors if d]
    parts += ["Z"] * sum(1 for d in factors if d == 0)
    return " + ".join(parts) if parts else "0"


class AbElement:
    __slots__ = ("parent", "coords")

    def __init__(self, parent, coords):
        if len(coords) != parent.ngens:
            raise LatticeError("coordinate vector has wrong length")
        self.parent = parent
        self.coords = list(coords)

    def canon(self):
        return self.parent.to_canon(self.coords)

    def __add__(self, other):
        self._check(other)
        return AbElement(self.parent, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return AbElement(self.parent, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return AbElement(self.parent, [-a for a in self.coords])

    def __rmul__(self, k):
        return AbElement(self.parent, [k * a for a in self.coords])

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, AbElement):
            return NotImplemented
        self._check(other)
        return self.parent.is_zero([a - b for a, b in zip(self.coords, other.coords)])

    def __hash__(self):
        return hash(self.canon())

    def is_zero(self):
        return self.parent.is_zero(self.coords)

    def order(self):
        return self.parent.element_order(self.coords)

    def _check(self, other):
        if other.parent is not self.parent:
            raise LatticeError("elements of different groups")

    def __repr__(self):
        return "AbElement(%s)" % (self.canon(),)


class AbHom:
    """Homomorphism given by the images of the source presentation generators.

    images[j] is the target presentation vector of source generator j.
    """

    def __init__(self, source, target, images, check=True):
        if len(images) != source.ngens:
            raise LatticeError("need one image per source generator")
        self.source = source
        self.target = target
        self.images = [dict(v) if isinstance(v, dict) else sparse(v) for v in images]
        self._cmat = None
        if check:
            for r in source.relations:
                y = {}
                for j, x in r.items():
                    _axpy(y, x, self.images[j])
                if not target.is_zero(y):
                    raise LatticeError("map is not well defined on the relations")

    @classmethod
    def from_matrix(cls, source, target, matrix, check=True):
        """matrix has target.ngens rows and source.ngens columns."""
        cols = transpose(matrix, source.ngens) if matrix else [[] for _ in range(source.ngens)]
        return cls(source, target, [sparse(c) for c in cols], check)

    @classmethod
    def from_canon_matrix(cls, source, target, cmat, check=True):
        """Map given in canonical coordinates of both sides."""
        _, P, _ = source.canon
        tv = [target.from_canon([row[k] for row in cmat]) for k in range(source.ncanon)]
        images = []
        for j in range(source.ngens):
            y = {}
            for k, row in enumerate(P):
                c = row.get(j, 0)
                if c:
                    _axpy(y, c, sparse(tv[k]))
            images.append(y)
        return cls(source, target, images, check)

    @classmethod
    def identity(cls, G):
        return cls(G, G, [{i: 1} for i in range(G.ngens)], check=False)

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, [{} for _ in range(source.ngens)], check=False)

    def matrix(self):
        return [[v.get(i, 0) for v in self.images] for i in range(self.target.ngens)]

    def apply(self, x):
        """Image of a presentation vector (list) as a target presentation vector."""
        y = [0] * self.target.ngens
        for j, xj in enumerate(x):
            if xj:
                for i, v in self.images[j].items():
                    y[i] += xj * v
        return y

    def __call__(self, a):
        if isinstance(a, AbElement):
            if a.parent is not self.source:
                raise LatticeError("element not in the source")
            return AbElement(self.target, self.apply(a.coords))
        return self.apply(a)

    def canon_matrix(self):
        """Matrix in canonical coordinates (rows: target, cols: source)."""
        if self._cmat is None:
            cols = []
            for q in self.source.canon[2]:
                cols.append(list(self.target.to_canon(self.apply(q))))
            nt = self.target.ncanon
            self._cmat = [[c[i] for c in cols] for i in range(nt)]
        return self._cmat

    def compose(self, other):
        """self o other."""
        if other.target is not self.source:
            raise LatticeError("maps are not composable")
        images = []
        for v in other.images:
            y = {}
            for j, x in v.items():
                _axpy(y, x, self.images[j])
            images.append(y)
        return AbHom(other.source, self.target, images, check=False)

    def __mul__(self, other):
        return self.compose(other)

    def __add__(self, other):
        images = []
        for a, b in zip(self.images, other.images):
            y = dict(a)
            _axpy(y, 1, b)
            images.append(y)
        return AbHom(self.source, self.target, images, check=False)

    def __neg__(self):
        return AbHom(self.source, self.target,
                     [{i: -x for i, x in v.items()} for v in self.images], check=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return AbHom(self.source, self.target,
                     [{i: k * x for i, x in v.items()} for v in self.images], check=False)

    def equals(self, other):
        if self.source is not other.source or self.target is not other.target:
            return False
        return all(self.target.is_zero([x - y for x, y in zip(self.apply(q), other.apply(q))])
                   for q in self.source.canon[2])

    def is_zero(self):
        return all(self.target.is_zero(self.apply(q)) for q in self.source.canon[2])

    def kernel(self):
        return hom_kernel(self)

    def cokernel(self):
        return hom_cokernel(self)

    def image_gens(self):
        return [AbElement(self.target, self.apply(q)) for q in self.source.canon[2]]

    def image(self):
        """Image as a FinAbGroup with its inclusion into the target."""
        K, _ = self.kernel()
        return subgroup(self.target, self.image_gens())

    def is_injective(self):
        K, _ = self.kernel()
        return K.is_trivial()

    def is_surjective(self):
        C, _ = self.cokernel()
        return C.is_trivial()

    def is_isomorphism(self):
        return self.is_injective() and self.is_surjective()

    def preimage(self, y):
        """Some x with f(x) = y (AbElement of source), or None."""
        if isinstance(y, AbElement):
            y = y.coords
        cm = self.canon_matrix()
        cols = [{i: cm[i][j] for i in range(len(cm)) if cm[i][j]} for j in range(self.source.ncanon)]
        t = sparse(list(self.target.to_canon(y)))
        x = solve_congruence(cols, t, self.target.factors)
        if x is None:
            return None
        return self.source.element_canon(x)

    def free_matrix(self):
        """Integer matrix induced on the free quotients (canonical free coords)."""
        cm = self.canon_matrix()
        sf = [k for k, d in enumerate(self.source.factors) if d == 0]
        tf = [k for k, d in enumerate(self.target.factors) if d == 0]
        return [[cm[i][j] for j in sf] for i in tf]

    def __repr__(self):
        return "AbHom(%s -> %s)" % (self.source.describe(), self.target.describe())


def hom_kernel(f):
    """Kernel of f as (group, inclusion)."""
    S = f.source
    cm = f.canon_matrix()
    nt = f.target.ncanon
    cols = []
    for j in range(S.ncanon):
        cols.append({i: cm[i][j] for i in range(nt) if cm[i][j]})
    basis = lattice_kernel(cols, f.target.factors)
    return _subgroup_from_canon_basis(S, basis)


def _subgroup_from_canon_basis(S, basis):
    """Subgroup of S spanned by the canonical vectors in basis (echelon form)."""
    ech = Echelon()
    for v in basis:
        ech.add(v)
    rows = ech.basis()
    piv = ech.pivots()
    index = {p: k for k, p in enumerate(piv)}
    rels = []
    for k, d in enumerate(S.factors):
        if d:
            c = ech.solve({k: d})
            if c is None:
                raise LatticeError("lattice does not contain the relations")
            rels.append({index[p]: x for p, x in c.items() if x})
    K = FinAbGroup(len(rows), rels)
    images = [sparse(S.from_canon(dense(r, S.ncanon))) for r in rows]
    return K, AbHom(K, S, images, check=False)


def hom_cokernel(f):
    """Cokernel target / f(source) as (group, projection)."""
    T = f.target
    rels = list(T.relations) + [v for v in f.images if v]
    C = FinAbGroup(T.ngens, rels)
    return C, AbHom(T, C, [{i: 1} for i in range(T.ngens)], check=False)


def subgroup(G, elements):
    """Subgroup generated by elements, as (group, inclusion)."""
    vecs = [list(G.to_canon(e.coords if isinstance(e, AbElement) else e)) for e in elements]
    basis = list(vecs)
    for k, d in enumerate(G.factors):
        if d:
            v = [0] * G.ncanon
            v[k] = d
            basis.append(v)
    ech = Echelon(basis)
    return _subgroup_from_canon_basis(G, ech.basis())


def subgroup_contains(G, gens, x):
    """Is x in the subgroup of G generated by gens?"""
    vecs = [sparse(list(G.to_canon(e.coords if isinstance(e, AbElement) else e))) for e in gens]
    for k, d in enumerate(G.factors):
        if d:
            vecs.append({k: d})
    ech = Echelon(vecs)
    xv = x.coords if isinstance(x, AbElement) else x
    return ech.contains(sparse(list(G.to_canon(xv))))


def same_subgroup(G, gens_a, gens_b):
    return all(subgroup_contains(G, gens_b, a) for a in gens_a) and \
        all(subgroup_contains(G, gens_a, b) for b in gens_b)


def direct_sum(groups):
    """Direct sum with the list of (inclusion, projection) pairs."""
    offs = []
    n = 0
    for G in groups:
        offs.append(n)
        n += G.ngens
    rels = []
    for G, o in zip(groups, offs):
        for r in G.relations:
            rels.append({i + o: x for i, x in r.items()})
    S = FinAbGroup(n, rels)
    maps = []
    for G, o in zip(groups, offs):
        inc = AbHom(G, S, [{o + i: 1} for i in range(G.ngens)], check=False)
        proj = AbHom(S, G, [({i - o: 1} if o <= i < o + G.ngens else {}) for i in range(n)], check=False)
        maps.append((inc, proj))
    return S, maps


def hom_from_components(source, target, parts, into=True):
    """Assemble maps into (or out of) a direct sum.

    into=True: parts are maps source -> G_i and target is the direct sum.
    Otherwise parts are maps G_i -> target out of the direct-sum source.
    """
    if into:
        images = [dict() for _ in range(source.ngens)]
        off = 0
        for f in parts:
            for j, v in enumerate(f.images):
                for i, x in v.items():
                    images[j][off + i] = x
            off += f.target.ngens
        return AbHom(source, target, images, check=False)
    images = []
    for f in parts:
        images.extend(dict(v) for v in f.images)
    return AbHom(source, target, images, check=False)


def torsion_part(A):
    """Torsion subgroup with its inclusion."""
    gens = [g for g, d in zip(A.gens(), A.factors) if d]
    return subgroup(A, gens)


def is_direct_summand(inc, hints=()):
    """Decide whether the image of the injective map inc is a direct summand.

    Returns ("summand", retraction) or ("not-summand", certificate) where the
    certificate is a dict with a_e, p and b (p*b = a_e, a_e of maximal order),
    or None if no such element exists.  hints: target elements tried first
    when choosing b (b is taken as a multiple of a hint when possible).
    """
    A, B = inc.source, inc.target
    if not A.is_finite():
        raise LatticeError("source must be finite")
    if not inc.is_injective():
        raise LatticeError("not an embedding")
    F = inc.canon_matrix()
    afac, bfac = A.factors, B.factors
    nA, nB = len(afac), len(bfac)
    rows = []
    ok = True
    for i, a in enumerate(afac):
        steps = [a // gcd(a, b) if b else 1 for b in bfac]
        cols = []
        for j in range(nB):
            cols.append({k: steps[j] * F[j][k] for k in range(nA) if steps[j] * F[j][k]})
        t = {i: 1}
        u = solve_congruence(cols, t, [a] * nA)
        if u is None:
            ok = False
            break
        rows.append([u[j] * steps[j] for j in range(nB)])
    if ok:
        r = AbHom.from_canon_matrix(B, A, rows if rows else [], check=True) if nA else AbHom.zero(B, A)
        return "summand", r
    return "not-summand", _not_summand_certificate(inc, hints)


def _primes(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _not_summand_certificate(inc, hints):
    A, B = inc.source, inc.target
    e = A.exponent()
    times = {}
    for p in _primes(e):
        mul_p = AbHom(B, B, [{i: p} for i in range(B.ngens)], check=False)
        times[p] = mul_p
    cands = [a for a in _max_order_elements(A, e)]
    for a in cands:
        x = inc(a)
        for p in sorted(times):
            b0 = times[p].preimage(x)
            if b0 is None:
                continue
            b = _choose_b(B, p, x, b0, hints)
            return {"a_e": a, "p": p, "b": b, "image": x}
    return None


def _max_order_elements(A, e, limit=4096):
    gens = A.gens()
    # the canonical generator of the largest factor first
    yield gens[-1]
    if A.order() <= limit:
        for a in A.elements():
            if a.order() == e:
                yield a


def _choose_b(B, p, x, b0, hints):
    for h in hints:
        o = h.order()
        for k in range(1, (o or 1) + 1):
            if k * p * h == x:
                return k * h
    return b0


# ---------------------------------------------------------------- Q/Z side

class QZModule:
    """Group (Q/Z)^r + finite part.

    Elements are pairs (q, t): q a tuple of Fractions taken modulo 1, t an
    element of the finite part.  The divisible summand is presented with a
    distinguished basis; `basis` optionally records it inside an ambient
    (Q/Z)^n as rational vectors.
    """

    def __init__(self, rank, finite=None, basis=None, finite_gens=None):
        self.rank = rank
        self.finite = finite if finite is not None else FinAbGroup.trivial()
        self.basis = basis
        self.finite_gens = finite_gens

    @property
    def invariants(self):
        return self.finite.invariants

    def is_trivial(self):
        return self.rank == 0 and self.finite.is_trivial()

    def element(self, q, t=None):
        q = tuple(Fraction(x) % 1 for x in q)
        if t is None:
            t = self.finite.zero()
        return (q, t)

    def element_order(self, elem):
        q, t = elem
        o = 1
        for x in q:
            o = lcm(o, Fraction(x).denominator)
        return lcm(o, t.order())

    def describe(self):
        parts = []
        if self.rank:
            parts.append("(Q/Z)^%d" % self.rank if self.rank > 1 else "Q/Z")
        if not self.finite.is_trivial():
            parts.append(self.finite.describe())
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return "QZModule(%s)" % self.describe()


def qz_tensor(A):
    """A tensor Q/Z = (Q/Z)^r with r the free rank of A."""
    return QZModule(A.free_rank)


def qz_reduce(q):
    return tuple(Fraction(x) % 1 for x in q)


def qz_hom_kernel(F, ncols=None):
    """Kernel of the map (Q/Z)^r -> (Q/Z)^s given by an integer or rational matrix F.

    For an integer matrix the Smith form U F V = D gives the kernel
    directly: divisible rank r - rank(F), finite part sum Z/d_i.  A
    rational matrix is handled by clearing denominators: with F = G/m the
    kernel is {x : G x in m Z^s}.
    """
    s = len(F)
    r = ncols if ncols is not None else (len(F[0]) if F else 0)
    if s == 0:
        basis = [tuple(Fraction(int(i == j)) for j in range(r)) for i in range(r)]
        return QZModule(r, basis=basis, finite_gens=[])
    m = 1
    for row in F:
        for x in row:
            m = lcm(m, Fraction(x).denominator)
    G = [[int(Fraction(x) * m) for x in row] for row in F]
    if m == 1:
        U, D, V = smith_normal_form(G, left=False)
        rank = sum(1 for i in range(min(s, r)) if D[i][i])
        fin_fac, fin_gens = [], []
        for i in range(rank):
            d = D[i][i]
            if d > 1:
                fin_fac.append(d)
                fin_gens.append(tuple(Fraction(V[k][i], d) % 1 for k in range(r)))
        div = [tuple(Fraction(V[k][i]) for k in range(r)) for i in range(rank, r)]
        return QZModule(r - rank, FinAbGroup.from_invariants(fin_fac), basis=div,
                        finite_gens=fin_gens)
    # rational case: {x in Q^r/Z^r : G x in m Z^s}, using torsion at a level n
    return qz_kernel_general(G, m, [], None, r)


def qz_kernel_general(L, m, X, T, r):
    """Kernel of (Q/Z)^r + T -> (Q/Z)^s, (x, t) -> (L x + X t) / m.

    L: s x r integer matrix; X: s x ngens(T) integer matrix; T finite group
    (or None).  Returns (QZModule, data) where the module's finite part is
    the kernel modulo its divisible part.  Computed from the n-torsion of
    the kernel for n large enough to separate divisible and finite parts.
    """
    s = len(L)
    if T is None:
        T = FinAbGroup.trivial()
    diag = snf_diagonal(L) if s and r else []
    dmax = max([1] + [abs(d) for d in diag])
    e = max(1, T.exponent())
    bound = e * dmax * m
    n = bound * max(bound, 2)
    # (Z/n)^r + T  ->  (Z/(n m))^s : (y, t) -> m L y + n X t, i.e. x = y/n
    gens_src = r + T.ngens
    rels = [{i: n} for i in range(r)] + [{r + i: x for i, x in rel.items()} for rel in T.relations]
    S = FinAbGroup(gens_src, rels)
    Tgt = FinAbGroup(s, [{i: n * m} for i in range(s)])
    images = []
    for j in range(r):
        images.append({i: m * L[i][j] for i in range(s) if L[i][j]})
    for j in range(T.ngens):
        images.append({i: n * X[i][j] for i in range(s) if X[i][j]})
    f = AbHom(S, Tgt, images, check=True)
    K, inc = f.kernel()
    fac = K.factors
    div_rank = sum(1 for d in fac if d == n)
    fin = [d for d in fac if d != n]
    gens = K.gens()
    fin_gens = []
    div_gens = []
    for g, d in zip(gens, fac):
        v = inc(g).coords
        q = tuple(Fraction(v[i], n) % 1 for i in range(r))
        t = T.element(v[r:]) if T.ngens else T.zero()
        if d == n:
            div_gens.append((q, t))
        else:
            fin_gens.append((q, t))
    mod = QZModule(div_rank, FinAbGroup.from_invariants(fin), basis=None, finite_gens=fin_gens)
    mod.level = n
    mod.div_gens = div_gens
    return mod


class QZSubgroup:
    """Subgroup of (Q/Z)^r: a rational subspace V (divisible part) plus
    finitely many rational generators, everything taken modulo Z^r."""

    def __init__(self, r, space=(), gens=()):
        self.r = r
        self.space = [tuple(Fraction(x) for x in v) for v in space]
        self.gens = [tuple(Fraction(x) for x in v) for v in gens]

    def _complement(self):
        # integer matrix K (rows) whose kernel over Q is exactly the span of space
        if not self.space:
            return identity(self.r)
        m = 1
        for v in self.space:
            for x in v:
                m = lcm(m, x.denominator)
        A = [[int(x * m) for x in v] for v in self.space]  # rows span V
        # K rows = integer basis of {y : A y = 0}^perp ... we need K with ker K = V:
        # take K = basis of the left kernel, i.e. integer vectors orthogonal to V.
        cols = [{i: A[i][j] for i in range(len(A)) if A[i][j]} for j in range(self.r)]
        # vectors k with k . v = 0 for all rows v of A: kernel of A as a map Z^r -> Z^len(A)
        ker = lattice_kernel(cols, [0] * len(A))
        return [dense(k, self.r) for k in ker]

    def contains(self, x):
        """Is x (rational vector) in V + span(gens) + Z^r?"""
        K = self._complement()
        if not K:
            return True
        vecs = [matvec_q(K, g) for g in self.gens]
        vecs += [[K[i][j] for i in range(len(K))] for j in range(self.r)]
        t = matvec_q(K, x)
        m = 1
        for v in vecs + [t]:
            for y in v:
                m = lcm(m, Fraction(y).denominator)
        ech = Echelon([[int(Fraction(y) * m) for y in v] for v in vecs])
        return ech.contains([int(Fraction(y) * m) for y in t])

    def dim(self):
        if not self.space:
            return 0
        m = 1
        for v in self.space:
            for x in v:
                m = lcm(m, x.denominator)
        return len([d for d in snf_diagonal([[int(x * m) for x in v] for v in self.space]) if d])

    def contains_space(self, other):
        # other's divisible part inside self: each spanning vector times any rational
        # lies in self iff it lies in V (test via complement annihilation)
        K = self._complement()
        for v in other.space:
            if any(x for x in matvec_q(K, v)):
                return False
        return True

    def equals(self, other):
        if self.r != other.r:
            return False
        if not (self.contains_space(other) and other.contains_space(self)):
            return False
        return all(self.contains(g) for g in other.gens) and all(other.contains(g) for g in self.gens)


def matvec_q(A, v):
    return [sum(Fraction(a) * Fraction(b) for a, b in zip(row, v)) for row in A]

"""
Tate cohomology of finite groups through the complete standard resolution.

Resolution terms: P_m = Z[G^(m+1)] for m >= 0 and P_m = Z[G^(-m)] for
m <= -1.  Boundaries

    m >= 1 :  (g_0..g_m)      -> sum_i (-1)^i (g_0..^g_i..g_m)
    m = 0  :  (g)             -> sum_h (h)
    m <= -1:  (g_0..g_{k-1})  -> sum_{i=0..k} (-1)^i sum_h (.., h inserted at i, ..)

and the hypercohomology complex uses the signed boundary (-1)^(m+1) d_m.
A cochain in Hom_G(P_m, A) is stored by its values on the tuples
(1, g_1, ..., g_{L-1}); the value on any other tuple follows from
equivariance.  Coordinates are laid out tuple-major, module-coordinate minor.
"""

from fractions import Fraction
import threading

from .lattice import (
    FinAbGroup, AbHom, AbElement, Echelon, lattice_kernel, sparse, dense,
    same_subgroup, torsion_part, qz_hom_kernel, QZSubgroup, snf_diagonal, hom_kernel,
)
from .modules import (
    GammaModule, GammaHom, coinvariants, invariants, norm_map, dual_module,
    direct_sum_modules, submodule_kernel,
)

DEFAULT_DEPTH = 4


class TateError(ValueError):
    pass


def tuple_length(m):
    return m + 1 if m >= 0 else -m


def boundary(G, m, tau):
    """Unsigned boundary d_m of a basis tuple of P_m, as [(coef, tuple)]."""
    out = []
    if m >= 1:
        for i in range(len(tau)):
            out.append(((-1) ** i, tau[:i] + tau[i + 1:]))
    elif m == 0:
        for h in range(G.order):
            out.append((1, (h,)))
    else:
        k = len(tau)
        for i in range(k + 1):
            sgn = (-1) ** i
            for h in range(G.order):
                out.append((sgn, tau[:i] + (h,) + tau[i:]))
    return out


def encode(G, rest):
    idx = 0
    for g in rest:
        idx = idx * G.order + g
    return idx


def decode(G, idx, length):
    """Tuple (1, g_1, ..., g_{length-1}) with the given index."""
    rest = []
    for _ in range(length - 1):
        idx, g = divmod(idx, G.order)
        rest.append(g)
    return (G.identity,) + tuple(reversed(rest))


def normalize(G, sigma):
    """sigma = g0 . (1, ...): returns (g0, index of the representative tuple)."""
    g0 = sigma[0]
    gi = G.inv(g0)
    return g0, encode(G, [G.mul(gi, x) for x in sigma[1:]])


_cache_lock = threading.Lock()
_boundary_cache = {}


def signed_boundary_table(G, m):
    """For each representative tuple of P_m: merged terms (coef, g0, idx) of the
    signed boundary, idx indexing representative tuples of P_{m-1}."""
    key = (id(G), m)
    with _cache_lock:
        hit = _boundary_cache.get(key)
        if hit is not None and hit[0] is G:
            return hit[1]
    L = tuple_length(m)
    sign = -1 if (m + 1) % 2 else 1
    table = []
    for t in range(G.order ** (L - 1)):
        tau = decode(G, t, L)
        acc = {}
        for c, sigma in boundary(G, m, tau):
            k = normalize(G, sigma)
            acc[k] = acc.get(k, 0) + sign * c
        table.append([(c, g0, idx) for (g0, idx), c in sorted(acc.items()) if c])
    with _cache_lock:
        _boundary_cache[key] = (G, table)
    return table


# ---------------------------------------------------------------- complexes

class BoundedComplex:
    """Modules A^lo, ..., A^hi with equivariant maps f^k: A^k -> A^(k+1)."""

    def __init__(self, lo, modules, maps=(), check=True):
        self.lo = lo
        self.modules = list(modules)
        self.hi = lo + len(self.modules) - 1
        self.maps = list(maps)
        if not self.modules:
            raise TateError("empty complex")
        self.group = self.modules[0].group
        if len(self.maps) != len(self.modules) - 1:
            raise TateError("need one differential between consecutive terms")
        if check:
            for k, f in enumerate(self.maps):
                if f.source is not self.modules[k] or f.target is not self.modules[k + 1]:
                    raise TateError("differential has the wrong source or target")
            for k in range(len(self.maps) - 1):
                if not self.maps[k + 1].compose(self.maps[k]).is_zero():
                    raise TateError("differentials do not compose to zero")

    @classmethod
    def concentrated(cls, M, degree=0):
        return cls(degree, [M])

    def module(self, k):
        if self.lo <= k <= self.hi:
            return self.modules[k - self.lo]
        return None

    def map(self, k):
        if self.lo <= k < self.hi:
            return self.maps[k - self.lo]
        return None


class CochainSpace:
    """C^n = sum_k Hom_G(P_{n-k}, A^k)."""

    def __init__(self, cx, n):
        self.complex, self.n = cx, n
        G = cx.group
        self.blocks = []
        off = 0
        self.mods = []
        for k in range(cx.lo, cx.hi + 1):
            A = cx.module(k)
            m = n - k
            L = tuple_length(m)
            T = G.order ** (L - 1)
            self.blocks.append({"k": k, "m": m, "module": A, "offset": off, "ntuples": T, "length": L})
            self.mods.extend(A.mods * T)
            off += T * A.rank
        self.dim = off

    def block(self, k):
        for b in self.blocks:
            if b["k"] == k:
                return b
        return None

    def value(self, c, k, t):
        b = self.block(k)
        s = b["module"].rank
        o = b["offset"] + t * s
        return list(c[o:o + s])

    def zero(self):
        return [0] * self.dim

    def reduce(self, c):
        return [x % m if m else x for x, m in zip(c, self.mods)]


def differential(cx, n):
    """Sparse columns of d^n: C^n -> C^{n+1} (one dict per C^n coordinate)."""
    G = cx.group
    src = CochainSpace(cx, n)
    tgt = CochainSpace(cx, n + 1)
    cols = [dict() for _ in range(src.dim)]
    for tb in tgt.blocks:
        k, m = tb["k"], tb["m"]
        A = tb["module"]
        s = A.rank
        if not s:
            continue
        # (-1)^k c^k o signed boundary_m, with c^k in block (k, m-1) of C^n
        sb = src.block(k)
        sign = -1 if k % 2 else 1
        table = signed_boundary_table(G, m)
        for t, terms in enumerate(table):
            row0 = tb["offset"] + t * s
            for coef, g0, idx in terms:
                R = A.rho[g0]
                col0 = sb["offset"] + idx * s
                for i in range(s):
                    col = cols[col0 + i]
                    for j in range(s):
                        x = R[j][i]
                        if x:
                            r = row0 + j
                            v = col.get(r, 0) + sign * coef * x
                            if v:
                                col[r] = v
                            else:
                                col.pop(r, None)
        # f^{k-1} o c^{k-1}, c^{k-1} in block (k-1, m) of C^n
        f = cx.map(k - 1)
        if f is not None:
            pb = src.block(k - 1)
            B = pb["module"]
            F = f.matrix
            for t in range(tb["ntuples"]):
                row0 = tb["offset"] + t * s
                col0 = pb["offset"] + t * B.rank
                for i in range(B.rank):
                    col = cols[col0 + i]
                    for j in range(s):
                        x = F[j][i]
                        if x:
                            v = col.get(row0 + j, 0) + x
                            if v:
                                col[row0 + j] = v
                            else:
                                col.pop(row0 + j, None)
    return src, tgt, cols


def apply_columns(cols, c, tgt):
    out = [0] * tgt.dim
    for j, x in enumerate(c):
        if x:
            for i, v in cols[j].items():
                out[i] += x * v
    return tgt.reduce(out)


class TateGroup:
    """H^n of a bounded complex with cocycle representatives.

    The presentation generators are an echelon basis of the cocycle lattice
    Z^n inside Z^dim(C^n) (cochain lifts); relations are coboundaries and
    the coefficient moduli.
    """

    def __init__(self, cx, n, depth=DEFAULT_DEPTH):
        if abs(n) > depth:
            raise TateError("resolution depth exceeded: degree %d outside window |n| <= %d" % (n, depth))
        self.complex, self.degree, self.depth = cx, n, depth
        space, tgt, cols = differential(cx, n)
        self.space = space
        self._cols = cols
        self._tgt = tgt
        basis = lattice_kernel(cols, tgt.mods, space.mods)
        self.basis = basis
        self._ech = Echelon()
        self._ech.rows = {min(v): v for v in basis}
        self._pos = {min(v): i for i, v in enumerate(basis)}
        rels = []
        for i, m in enumerate(space.mods):
            if m:
                rels.append(self._coeffs({i: m}))
        prev, _, pcols = differential(cx, n - 1)
        self._prev_cols = pcols
        for col in pcols:
            if col:
                rels.append(self._coeffs(col))
        self.group = FinAbGroup(len(basis), rels)

    def _coeffs(self, v):
        c = self._ech.solve(v)
        if c is None:
            raise TateError("vector is not a cocycle")
        return {self._pos[p]: x for p, x in c.items() if x}

    def is_cocycle(self, c):
        return not any(apply_columns(self._cols, c, self._tgt))

    def class_of(self, c):
        """Class of a cocycle (dense list or sparse dict over C^n coordinates)."""
        v = c if isinstance(c, dict) else sparse(list(c))
        co = self._coeffs(v)
        x = [0] * len(self.basis)
        for i, a in co.items():
            x[i] = a
        return AbElement(self.group, x)

    def representative(self, a):
        """Cocycle (dense, reduced) representing an element of the group."""
        coords = a.coords if isinstance(a, AbElement) else a
        out = [0] * self.space.dim
        for i, x in enumerate(coords):
            if x:
                for j, v in self.basis[i].items():
                    out[j] += x * v
        return self.space.reduce(out)

    def cocycles(self):
        """Representatives of the canonical generators."""
        return [self.representative(g) for g in self.group.gens()]

    def coboundary(self, c):
        """d^{n-1} applied to a cochain of degree n-1."""
        return apply_columns(self._prev_cols, c, self.space)

    @property
    def invariants(self):
        return self.group.invariants

    def describe(self):
        return self.group.describe()

    def __repr__(self):
        return "TateGroup(n=%d, %s)" % (self.degree, self.describe())


def tate_group(cx, n, depth=DEFAULT_DEPTH):
    """Memoized H^n of a complex (one TateGroup object per complex and degree)."""
    if abs(n) > depth:
        raise TateError("resolution depth exceeded: degree %d outside window |n| <= %d" % (n, depth))
    cache = cx.__dict__.setdefault("_tate", {})
    H = cache.get(n)
    if H is None:
        H = cache[n] = TateGroup(cx, n, depth)
    return H


def module_complex(M):
    """The complex with M in degree 0, shared by all computations on M."""
    cx = M.__dict__.get("_cx")
    if cx is None:
        cx = M._cx = BoundedComplex.concentrated(M)
    return cx


def tate_cohomology(M, n, depth=DEFAULT_DEPTH):
    return tate_group(module_complex(M), n, depth)


def tate_hypercohomology(cx, n, depth=DEFAULT_DEPTH):
    return tate_group(cx, n, depth)


def induced_map(f_cochain, H_src, H_tgt):
    """AbHom H_src -> H_tgt induced by a cochain map (function on dense vectors)."""
    images = []
    for v in H_src.basis:
        c = f_cochain(dense(v, H_src.space.dim))
        images.append(sparse(H_tgt.class_of(c).coords))
    return AbHom(H_src.group, H_tgt.group, images, check=True)


def module_cochain_map(phi, cx_src, cx_tgt, n):
    """Cochain map C^n(A) -> C^n(B) from a degreewise map of complexes phi[k]."""
    S = CochainSpace(cx_src, n)
    T = CochainSpace(cx_tgt, n)

    def run(c):
        out = T.zero()
        for sb in S.blocks:
            f = phi.get(sb["k"])
            tb = T.block(sb["k"])
            if f is None or tb is None:
                continue
            a, b = sb["module"].rank, tb["module"].rank
            for t in range(sb["ntuples"]):
                v = c[sb["offset"] + t * a: sb["offset"] + (t + 1) * a]
                w = f.apply(v) if a else [0] * b
                out[tb["offset"] + t * b: tb["offset"] + (t + 1) * b] = w
        return T.reduce(out)
    return run


def map_on_cohomology(f, n, depth=DEFAULT_DEPTH, H_src=None, H_tgt=None):
    """Map H^n(A) -> H^n(B) induced by a GammaHom f: A -> B."""
    H_src = H_src or tate_cohomology(f.source, n, depth)
    H_tgt = H_tgt or tate_cohomology(f.target, n, depth)
    run = module_cochain_map({0: f}, H_src.complex, H_tgt.complex, n)
    return induced_map(run, H_src, H_tgt)


# ---------------------------------------------------------------- res / cor

def _restricted_complex(cx, H):
    cache = cx.__dict__.setdefault("_restricted", {})
    key = tuple(H.elements)
    if key not in cache:
        mods = [A.restrict(H) for A in cx.modules]
        maps = [GammaHom(mods[k], mods[k + 1], f.matrix, check=False) for k, f in enumerate(cx.maps)]
        cache[key] = BoundedComplex(cx.lo, mods, maps, check=False)
    return cache[key]


def restriction_cochain(cx, H, n, reps=None):
    """Cochain map C^n(G, A) -> C^n(H, A|H).  reps: right coset representatives."""
    G = cx.group
    Hg, emb = H.as_group()
    rcx = _restricted_complex(cx, H)
    S = CochainSpace(cx, n)
    T = CochainSpace(rcx, n)
    reps = list(reps) if reps is not None else H.right_cosets()
    plan = []
    for sb, tb in zip(S.blocks, T.blocks):
        m, L = sb["m"], sb["length"]
        terms = []
        for t in range(tb["ntuples"]):
            htau = decode(Hg, t, L)
            gtau = tuple(emb[h] for h in htau)
            acc = {}
            if m >= 0:
                acc[(G.identity, encode(G, gtau[1:]))] = 1
            else:
                choices = [()]
                for _ in range(L):
                    choices = [c + (r,) for c in choices for r in reps]
                for ch in choices:
                    sigma = tuple(G.mul(g, r) for g, r in zip(gtau, ch))
                    key = normalize(G, sigma)
                    acc[key] = acc.get(key, 0) + 1
            terms.append([(c, g0, idx) for (g0, idx), c in sorted(acc.items()) if c])
        plan.append((sb, tb, terms))

    def run(c):
        out = T.zero()
        for sb, tb, terms in plan:
            A = sb["module"]
            s = A.rank
            for t, tl in enumerate(terms):
                acc = [0] * s
                for coef, g0, idx in tl:
                    v = c[sb["offset"] + idx * s: sb["offset"] + (idx + 1) * s]
                    R = A.rho[g0]
                    for j in range(s):
                        acc[j] += coef * sum(R[j][i] * v[i] for i in range(s))
                out[tb["offset"] + t * s: tb["offset"] + (t + 1) * s] = acc
        return T.reduce(out)
    return run, rcx


def corestriction_cochain(cx, H, n, reps=None):
    """Cochain map C^n(H, A|H) -> C^n(G, A).  reps: right coset representatives."""
    G = cx.group
    Hg, emb = H.as_group()
    pos = {g: i for i, g in enumerate(emb)}
    rcx = _restricted_complex(cx, H)
    S = CochainSpace(rcx, n)
    T = CochainSpace(cx, n)
    reps = list(reps) if reps is not None else H.right_cosets()
    rep_of = {}
    for r in reps:
        for h in H.elements:
            rep_of[G.mul(h, r)] = r
    if len(rep_of) != G.order:
        raise TateError("representatives do not form a section of H\\G")
    plan = []
    for sb, tb in zip(S.blocks, T.blocks):
        m, L = sb["m"], sb["length"]
        terms = []
        for t in range(tb["ntuples"]):
            gtau = decode(G, t, L)
            acc = {}
            if m < 0:
                if all(g in H for g in gtau):
                    acc[(G.identity, encode(Hg, [pos[g] for g in gtau[1:]]))] = 1
            else:
                for s_ in reps:
                    deltas = []
                    for g in gtau:
                        y = G.mul(s_, g)
                        deltas.append(G.mul(y, G.inv(rep_of[y])))
                    hs = [pos[d] for d in deltas]
                    h0, idx = normalize(Hg, tuple(hs))
                    # value s^-1 . h0 . c(rep)
                    g0 = G.mul(G.inv(s_), emb[h0])
                    acc[(g0, idx)] = acc.get((g0, idx), 0) + 1
            terms.append([(c, g0, idx) for (g0, idx), c in sorted(acc.items()) if c])
        plan.append((sb, tb, terms))

    def run(c):
        out = T.zero()
        for sb, tb, terms in plan:
            A = tb["module"]
            s = A.rank
            for t, tl in enumerate(terms):
                acc = [0] * s
                for coef, g0, idx in tl:
                    v = c[sb["offset"] + idx * s: sb["offset"] + (idx + 1) * s]
                    R = A.rho[g0]
                    for j in range(s):
                        acc[j] += coef * sum(R[j][i] * v[i] for i in range(s))
                out[tb["offset"] + t * s: tb["offset"] + (t + 1) * s] = acc
        return T.reduce(out)
    return run, rcx


def _as_complex(A):
    return A if isinstance(A, BoundedComplex) else module_complex(A)


def restriction(A, H, n, reps=None, depth=DEFAULT_DEPTH, H_src=None, H_tgt=None):
    """res: H^n(G, A) -> H^n(H, A) as an AbHom."""
    cx = _as_complex(A)
    run, rcx = restriction_cochain(cx, H, n, reps)
    H_src = H_src or tate_group(cx, n, depth)
    H_tgt = H_tgt or tate_group(rcx, n, depth)
    return induced_map(run, H_src, H_tgt)


def corestriction(A, H, n, reps=None, depth=DEFAULT_DEPTH, H_src=None, H_tgt=None):
    """cor: H^n(H, A) -> H^n(G, A) as an AbHom."""
    cx = _as_complex(A)
    run, rcx = corestriction_cochain(cx, H, n, reps)
    H_src = H_src or tate_group(rcx, n, depth)
    H_tgt = H_tgt or tate_group(cx, n, depth)
    return induced_map(run, H_src, H_tgt)


# ---------------------------------------------------------------- low degrees

class LowDegree:
    """H^0 = M^G / N M and H^-1 = ker N / I M with their comparison maps."""

    def __init__(self, M):
        self.M = M
        A = M.group_ab
        G = M.group
        inv, inc = invariants(M)
        N = norm_map(M)
        # H^0: invariants modulo norms
        norms = [list(N.apply(q)) for q in A.canon[2]]
        pre = [inc.preimage(AbElement(A, v)) for v in norms]
        rels = list(inv.relations) + [sparse(p.coords) for p in pre if p is not None]
        self.h0 = FinAbGroup(inv.ngens, rels)
        self._h0_inc = inc
        # H^-1: ker N modulo augmentation ideal
        K, kinc = hom_kernel(N)
        irels = list(K.relations)
        for g in G.generators():
            for i in range(M.rank):
                v = [M.rho[g][r][i] - (r == i) for r in range(M.rank)]
                p = kinc.preimage(AbElement(A, v))
                irels.append(sparse(p.coords))
        self.hm1 = FinAbGroup(K.ngens, irels)
        self._hm1_inc = kinc
        C, proj = coinvariants(M)
        self.coinv = C
        T, tinc = torsion_part(C)
        self.coinv_tors = T
        imgs = []
        for j in range(K.ngens):
            x = proj.apply(kinc.apply([int(i == j) for i in range(K.ngens)]))
            p = tinc.preimage(AbElement(C, x))
            imgs.append(sparse(p.coords))
        self.hm1_to_coinv_tors = AbHom(self.hm1, T, imgs, check=True)
        self.coinv_tors_inclusion = tinc
        self.coinv_projection = proj

    def h0_to_tate(self, H=None):
        H = H or tate_cohomology(self.M, 0)
        imgs = [sparse(H.class_of(self._h0_inc.apply([int(i == j) for i in range(self.h0.ngens)])).coords)
                for j in range(self.h0.ngens)]
        return AbHom(self.h0, H.group, imgs, check=True)

    def hm1_to_tate(self, H=None):
        H = H or tate_cohomology(self.M, -1)
        imgs = [sparse(H.class_of(self._hm1_inc.apply([int(i == j) for i in range(self.hm1.ngens)])).coords)
                for j in range(self.hm1.ngens)]
        return AbHom(self.hm1, H.group, imgs, check=True)


def low_degree_explicit(M):
    return LowDegree(M)


def hm1_to_coinvariants(M, H=None):
    """H^-1(G, M) -> (M_G)_Tors, c -> [c(1)] (injective)."""
    H = H or tate_cohomology(M, -1)
    C, proj = coinvariants(M)
    T, tinc = torsion_part(C)
    imgs = []
    for v in H.basis:
        x = proj.apply(dense(v, H.space.dim)[:M.rank])
        imgs.append(sparse(tinc.preimage(AbElement(C, x)).coords))
    return AbHom(H.group, T, imgs, check=True), T, tinc


def free_coordinates(C, x):
    """Free canonical coordinates of a presentation vector of C."""
    c = C.to_canon(x)
    return [ck for ck, d in zip(c, C.factors) if d == 0]


class XiMap:
    """xi: H^0(G, M) -> (M_G)_tf (x) Q/Z, [x] -> |G|^-1 x."""

    def __init__(self, M, H=None):
        self.M = M
        self.H = H or tate_cohomology(M, 0)
        self.coinv, self.proj = coinvariants(M)
        self.rank = self.coinv.free_rank
        N = M.group.order
        self.images = []
        for v in self.H.basis:
            x = dense(v, self.H.space.dim)[:M.rank]
            f = free_coordinates(self.coinv, self.proj.apply(x))
            self.images.append(tuple(Fraction(a, N) % 1 for a in f))

    def __call__(self, a):
        coords = a.coords if isinstance(a, AbElement) else a
        out = [Fraction(0)] * self.rank
        for k, img in zip(coords, self.images):
            for i, q in enumerate(img):
                out[i] += k * q
        return tuple(q % 1 for q in out)

    def matrix(self):
        """Rational matrix (rows: free coordinates, columns: presentation gens)."""
        return [[img[i] for img in self.images] for i in range(self.rank)]

    def is_injective(self):
        for a in self.H.group.elements(limit=4096):
            if not a.is_zero() and not any(self(a)):
                return False
        return True


def xi_map(M, H=None):
    return XiMap(M, H)


# ---------------------------------------------------------------- connecting maps

def _lift(p, v):
    pre = p.ab.preimage(AbElement(p.target.group_ab, list(v)))
    if pre is None:
        raise TateError("map is not surjective")
    return list(pre.coords)


def _pullback(i, v):
    pre = i.ab.preimage(AbElement(i.target.group_ab, list(v)))
    if pre is None:
        raise TateError("vector is not in the image of the first map")
    return list(pre.coords)


def _lift_cochain(ses, space3, space2, c):
    out = space2.zero()
    s3, s2 = ses.A3.rank, ses.A2.rank
    T = len(c) // s3 if s3 else 0
    for t in range(T):
        v = c[t * s3:(t + 1) * s3]
        if any(v):
            out[t * s2:(t + 1) * s2] = _lift(ses.p, v)
    return out


def _pull_cochain(ses, space2, space1, c):
    out = space1.zero()
    s2, s1 = ses.A2.rank, ses.A1.rank
    T = len(c) // s2 if s2 else 0
    for t in range(T):
        v = c[t * s2:(t + 1) * s2]
        if any(v):
            out[t * s1:(t + 1) * s1] = _pullback(ses.i, v)
    return out


def tate_connecting_cocycle(ses, n, c):
    """Connecting map on a cocycle c in Z^n(A3): cocycle in Z^{n+1}(A1)."""
    cx2 = BoundedComplex.concentrated(ses.A2)
    cx1 = BoundedComplex.concentrated(ses.A1)
    S2, T2, cols = differential(cx2, n)
    S1 = CochainSpace(cx1, n + 1)
    S3 = CochainSpace(BoundedComplex.concentrated(ses.A3), n)
    lifted = _lift_cochain(ses, S3, S2, c)
    d = apply_columns(cols, lifted, T2)
    return _pull_cochain(ses, T2, S1, d)


def tate_connecting(ses, n, depth=DEFAULT_DEPTH, H3=None, H1=None):
    """delta: H^n(A3) -> H^{n+1}(A1)."""
    H3 = H3 or tate_cohomology(ses.A3, n, depth)
    H1 = H1 or tate_cohomology(ses.A1, n + 1, depth)
    return induced_map(lambda c: tate_connecting_cocycle(ses, n, c), H3, H1)


def connecting_delta(ses, a3=None, order=None):
    """delta: (A3)_{G,Tors} -> (A1 (x) Q/Z)_G on a coinvariant class.

    Recipe: n a3 = sum_g (g a_g - a_g) in A3; lift a3, a_g to A2; then
    n a2 - sum_g (g a2_g - a2_g) = i(a1) and delta = [a1 / n].  With a3 None,
    returns the map as a function on presentation vectors of (A3)_G.
    Returns rational free coordinates of (A1)_G modulo 1.
    """
    A1, A2, A3 = ses.A1, ses.A2, ses.A3
    G = A3.group
    C3, proj3 = coinvariants(A3)
    C1, proj1 = coinvariants(A1)

    def delta(x, n=None):
        x = list(x)
        xc = proj3.apply(x)
        o = C3.element_order(xc)
        if o == 0:
            raise TateError("class is not torsion")
        n = n or o
        if n % o:
            raise TateError("n must be a multiple of the order")
        others = [g for g in range(G.order) if g != G.identity]
        cols = []
        for g in others:
            for i in range(A3.rank):
                cols.append({r: A3.rho[g][r][i] - (r == i) for r in range(A3.rank)
                             if A3.rho[g][r][i] - (r == i)})
        from .lattice import solve_congruence
        target = [n * v for v in x]
        sol = solve_congruence(cols, sparse(target), A3.mods)
        if sol is None:
            raise TateError("n * a3 is not in the augmentation submodule")
        a2 = _lift(ses.p, x)
        v = [n * y for y in a2]
        for k, g in enumerate(others):
            ag = sol[k * A3.rank:(k + 1) * A3.rank]
            if any(ag):
                b = _lift(ses.p, ag)
                gb = A2.act(g, b)
                v = [vi - (gi - bi) for vi, gi, bi in zip(v, gb, b)]
        a1 = _pullback(ses.i, A2.reduce(v))
        f = free_coordinates(C1, proj1.apply(a1))
        return tuple(Fraction(c, n) % 1 for c in f)

    if a3 is not None:
        return delta(a3, order)
    return delta


# ---------------------------------------------------------------- Hinich sequence

class HinichNode:
    def __init__(self, name, value, kind):
        self.name, self.value, self.kind = name, value, kind

    def describe(self):
        return self.value.describe()


class HinichSequence:
    """H1(A1) -> H1(A2) -> H1(A3) -d1-> T1 -> T2 -> T3 -d0-> Q1 -> Q2 -> Q3 -> 0

    H1 = H^-2 (group homology), T = (A_G)_Tors, Q = (A (x) Q/Z)_G = (A_G)_tf (x) Q/Z.
    """

    def __init__(self, ses, depth=DEFAULT_DEPTH):
        self.ses = ses
        A1, A2, A3 = ses.A1, ses.A2, ses.A3
        self.H = [tate_cohomology(A, -2, depth) for A in (A1, A2, A3)]
        self.Hm1_1 = tate_cohomology(A1, -1, depth)
        self.coinv = [coinvariants(A) for A in (A1, A2, A3)]
        self.tors = [torsion_part(C) for C, _ in self.coinv]
        self.h1_maps = [map_on_cohomology(ses.i, -2, depth, self.H[0], self.H[1]),
                        map_on_cohomology(ses.p, -2, depth, self.H[1], self.H[2])]
        # delta_1: H^-2(A3) -> H^-1(A1) -> (A1_G)_Tors
        d = tate_connecting(ses, -2, depth, self.H[2], self.Hm1_1)
        e, _, _ = hm1_to_coinvariants(A1, self.Hm1_1)
        self.delta1 = e.compose(d)
        if self.delta1.target is not self.tors[0][0]:
            self.delta1 = AbHom(self.delta1.source, self.tors[0][0],
                                self.delta1.images, check=False)
        # maps on coinvariant torsion
        self.t_maps = [self._coinv_tors_map(ses.i, 0, 1), self._coinv_tors_map(ses.p, 1, 2)]
        # delta_0 on the canonical generators of T3
        T3, inc3 = self.tors[2]
        self._d0 = connecting_delta(ses)
        self.delta0_images = [self._d0(inc3.apply(q)) for q in T3.canon[2]]
        self.r = [C.free_rank for C, _ in self.coinv]
        self.q_maps = [self._free_map(ses.i, 0, 1), self._free_map(ses.p, 1, 2)]
        # delta_2 images (H^-3(A3) -> H^-2(A1)) for exactness at H1(A1)
        self.delta2_images = self._delta2(depth)
        self.nodes = [
            HinichNode("H1(A1)", self.H[0].group, "finite"),
            HinichNode("H1(A2)", self.H[1].group, "finite"),
            HinichNode("H1(A3)", self.H[2].group, "finite"),
            HinichNode("T1", self.tors[0][0], "finite"),
            HinichNode("T2", self.tors[1][0], "finite"),
            HinichNode("T3", self.tors[2][0], "finite"),
            HinichNode("Q1", _QZDesc(self.r[0]), "qz"),
            HinichNode("Q2", _QZDesc(self.r[1]), "qz"),
            HinichNode("Q3", _QZDesc(self.r[2]), "qz"),
        ]
        self.report = self._exactness()

    def _coinv_tors_map(self, f, a, b):
        Ca, pa = self.coinv[a]
        Cb, pb = self.coinv[b]
        Ta, ia = self.tors[a]
        Tb, ib = self.tors[b]
        imgs = []
        for j in range(Ta.ngens):
            x = ia.apply([int(k == j) for k in range(Ta.ngens)])
            y = pb.apply(f.apply(x))
            imgs.append(sparse(ib.preimage(AbElement(Cb, y)).coords))
        return AbHom(Ta, Tb, imgs, check=True)

    def _free_map(self, f, a, b):
        Ca, _ = self.coinv[a]
        Cb, pb = self.coinv[b]
        cols = []
        for k, d in enumerate(Ca.factors):
            if d == 0:
                q = Ca.canon[2][k]
                cols.append(free_coordinates(Cb, pb.apply(f.apply(q))))
        return [[c[i] for c in cols] for i in range(self.r[b])]

    def _delta2(self, depth):
        A3 = self.ses.A3
        if 3 > depth:
            raise TateError("resolution depth exceeded")
        cx3 = BoundedComplex.concentrated(A3)
        S, T, cols = differential(cx3, -3)
        Z = lattice_kernel(cols, T.mods, S.mods)
        out = []
        for v in Z:
            c = dense(v, S.dim)
            img = tate_connecting_cocycle(self.ses, -3, c)
            out.append(self.H[0].class_of(img))
        return out

    def _exactness(self):
        rep = []
        H1, H2, H3 = (h.group for h in self.H)
        f, g = self.h1_maps
        # at H1(A1): ker f = im delta2
        K, kinc = f.kernel()
        rep.append(("H1(A1)", same_subgroup(H1, [kinc(x) for x in K.gens()], self.delta2_images)))
        rep.append(("H1(A2)", _exact_finite(f, g)))
        rep.append(("H1(A3)", _exact_finite(g, self.delta1)))
        t1, t2 = self.t_maps
        rep.append(("T1", _exact_finite(self.delta1, t1)))
        rep.append(("T2", _exact_finite(t1, t2)))
        # at T3: ker delta0 = im t2
        T3 = self.tors[2][0]
        ker = [a for a in T3.elements(limit=1 << 16) if not any(self.delta0(a))]
        rep.append(("T3", same_subgroup(T3, ker, t2.image_gens())))
        # at Q1: ker(q1) = im delta0
        L1, L2 = self.q_maps
        r1, r2, r3 = self.r
        im_d0 = QZSubgroup(r1, (), self.delta0_images)
        rep.append(("Q1", _qz_kernel_subgroup(L1, r1).equals(im_d0)))
        im_q1 = QZSubgroup(r2, _columns(L1, r1), ())
        rep.append(("Q2", _qz_kernel_subgroup(L2, r2).equals(im_q1)))
        # Q3: q2 surjective, i.e. L2 has full row rank over Q
        rank = sum(1 for d in snf_diagonal(L2) if d) if r2 and r3 else 0
        rep.append(("Q3", rank == r3))
        return rep

    def delta0(self, a):
        """delta_0 on an element of T3 (canonical-generator combination)."""
        coords = a.canon() if isinstance(a, AbElement) else a
        out = [Fraction(0)] * self.r[0]
        for k, img in zip(coords, self.delta0_images):
            for i, q in enumerate(img):
                out[i] += k * q
        return tuple(q % 1 for q in out)

    def is_exact(self):
        return all(ok for _, ok in self.report)

    def describe(self):
        names = ["H1(A1)", "H1(A2)", "H1(A3)", "T1", "T2", "T3", "Q1", "Q2", "Q3"]
        parts = ["%s=%s" % (n, node.describe()) for n, node in zip(names, self.nodes)]
        return " -> ".join(parts) + " -> 0"


class _QZDesc:
    def __init__(self, r):
        self.r = r

    def describe(self):
        return "0" if not self.r else ("Q/Z" if self.r == 1 else "(Q/Z)^%d" % self.r)


def _columns(L, r):
    return [tuple(row[j] for row in L) for j in range(r)]


def _qz_kernel_subgroup(L, r):
    """Kernel of the integer matrix L on (Q/Z)^r as a QZSubgroup."""
    if not L or not r:
        return QZSubgroup(r, [tuple(int(i == j) for j in range(r)) for i in range(r)], ())
    K = qz_hom_kernel(L, r)
    return QZSubgroup(r, K.basis or (), [g for g in (K.finite_gens or [])])


def _exact_finite(f, g):
    K, kinc = g.kernel()
    return same_subgroup(g.source, [kinc(x) for x in K.gens()], f.image_gens())


def hinich_sequence(ses, depth=DEFAULT_DEPTH):
    return HinichSequence(ses, depth)


# ---------------------------------------------------------------- chain models

def _prod(G, xs):
    acc = G.identity
    for x in xs:
        acc = G.mul(acc, x)
    return acc


def chain_model_convert(G, M, f, n, direction):
    """Translate cochains between the homogeneous and inhomogeneous models.

    direction "to_inhomogeneous": f maps homogeneous tuples (length L) to
    module vectors; returns c on tuples of length L-1 with
    c(g_1..) = f(1, g_1, g_1 g_2, ...).  direction "to_homogeneous":
    f(g_0, g_1, ...) = g_0 c(g_0^-1 g_1, g_1^-1 g_2, ...).
    Both take and return dicts keyed by tuples of element indices.
    """
    L = tuple_length(n)
    if direction == "to_inhomogeneous":
        out = {}
        for rest in _tuples(G, L - 1):
            partial = [G.identity]
            for g in rest:
                partial.append(G.mul(partial[-1], g))
            out[rest] = list(f[tuple(partial)])
        return out
    if direction == "to_homogeneous":
        out = {}
        for tup in _tuples(G, L):
            args = tuple(G.mul(G.inv(tup[i]), tup[i + 1]) for i in range(L - 1))
            out[tup] = M.act(tup[0], f[args])
        return out
    raise TateError("unknown direction %r" % direction)


def _tuples(G, L):
    out = [()]
    for _ in range(L):
        out = [t + (g,) for t in out for g in range(G.order)]
    return out


def homogeneous_from_vector(G, M, n, c):
    """Dict form of a cochain vector of Hom_G(P_n, M)."""
    L = tuple_length(n)
    s = M.rank
    out = {}
    for tup in _tuples(G, L):
        g0, idx = normalize(G, tup)
        out[tup] = M.act(g0, c[idx * s:(idx + 1) * s])
    return out


def vector_from_homogeneous(G, M, n, f):
    L = tuple_length(n)
    out = []
    for t in range(G.order ** (L - 1)):
        out.extend(f[decode(G, t, L)])
    return out


# ---------------------------------------------------------------- replacements

def dual_complex(cx):
    """Hom(A, Z) of a two-term torsion-free complex [A^-1 -> A^0], placed in degrees -1, 0."""
    if len(cx.modules) != 2:
        raise TateError("dual_complex needs a two-term complex")
    A, B = cx.modules
    f = cx.maps[0]
    Ad, Bd = dual_module(A), dual_module(B)
    ft = [[f.matrix[j][i] for j in range(B.rank)] for i in range(A.rank)]
    return BoundedComplex(cx.lo, [Bd, Ad], [GammaHom(Bd, Ad, ft)])


def free_cover_replacement(cx, position=0):
    """Quasi-isomorphic two-term complex with a free term.

    position 0: [A^-1 x_{A^0} F -> F] with F = Z[G]^s covering A^0.
    position -1: dualize, replace at position 0, dualize back (torsion-free input).
    Returns (new complex, certificate dict).
    """
    if len(cx.modules) != 2:
        raise TateError("free_cover_replacement needs a two-term complex")
    if position == -1:
        d = dual_complex(cx)
        r, _ = free_cover_replacement(d, 0)
        if not all(M.is_torsion_free() for M in r.modules):
            raise TateError("double dualization needs torsion-free terms")
        out = dual_complex(r)
        return out, _qis_certificate(cx, out)
    if position != 0:
        raise TateError("position must be 0 or -1")
    A, B = cx.modules
    f = cx.maps[0]
    F, pi = free_cover(B)
    S = direct_sum_modules([A, F])
    # (a, x) -> f(a) - pi(x)
    mat = [[f.matrix[j][i] for i in range(A.rank)] + [-pi.matrix[j][i] for i in range(F.rank)]
           for j in range(B.rank)]
    h = GammaHom(S, B, mat, check=False)
    P, pinc = submodule_kernel(h)
    proj = [[pinc.matrix[A.rank + j][i] for i in range(P.rank)] for j in range(F.rank)]
    d = GammaHom(P, F, proj, check=False)
    out = BoundedComplex(cx.lo, [P, F], [d])
    return out, _qis_certificate(cx, out)


def free_cover(B):
    """Z[G]^s -> B sending the basis vector of copy i to generator i."""
    G = B.group
    s, N = B.rank, G.order
    mods = [0] * (N * s)
    rho = []
    for g in range(G.order):
        A = [[0] * (N * s) for _ in range(N * s)]
        for h in range(N):
            gh = G.mul(g, h)
            for i in range(s):
                A[gh * s + i][h * s + i] = 1
        rho.append(A)
    F = GammaModule(G, mods, rho, check=False)
    M = [[0] * (N * s) for _ in range(s)]
    for h in range(N):
        for i in range(s):
            for j in range(s):
                M[j][h * s + i] = B.rho[h][j][i]
    return F, GammaHom(F, B, M, check=True)


def _qis_certificate(a, b):
    """Compare kernels and cokernels of the two differentials."""
    fa, fb = a.maps[0], b.maps[0]
    ka, kb = fa.ab.kernel()[0], fb.ab.kernel()[0]
    ca, cb = fa.ab.cokernel()[0], fb.ab.cokernel()[0]
    return {"kernel": (ka.factors, kb.factors), "cokernel": (ca.factors, cb.factors),
            "ok": ka.factors == kb.factors and ca.factors == cb.factors}

"""
Gamma-modules, induced modules over finite sets of places, and the
orbit maps used to split M[V]_0 along a subset S.

A GammaModule is stored in diagonal form: generators e_0..e_{s-1} with
orders mods[i] (0 means infinite order) and one integer action matrix per
group element, columns being images of generators.  Constructors accept
arbitrary presentations and convert.
"""

from .lattice import (
    FinAbGroup, AbHom, AbElement, identity, matmul, sparse, hom_kernel, direct_sum,
)


class ModuleError(ValueError):
    pass


def _reduce_cols(A, mods):
    """Reduce row i of A modulo mods[i]."""
    return [[x % m if m else x for x in row] for row, m in zip(A, mods)]


class GammaModule:
    """Finitely generated abelian group with an action of a finite group."""

    def __init__(self, group, mods, rho, check=True, labels=None):
        self.group = group
        self.mods = [abs(int(m)) for m in mods]
        s = len(self.mods)
        if any(m == 1 for m in self.mods):
            raise ModuleError("diagonal form must not contain trivial cyclic factors")
        if len(rho) != group.order:
            raise ModuleError("need one action matrix per group element")
        self.rho = [_reduce_cols([list(r) for r in A], self.mods) if s else [] for A in rho]
        self.labels = labels
        self.group_ab = FinAbGroup.from_invariants(self.mods)
        if check:
            self._check()

    @property
    def rank(self):
        return len(self.mods)

    def _check(self):
        G, s, mods = self.group, self.rank, self.mods
        for g in range(G.order):
            A = self.rho[g]
            if len(A) != s or any(len(r) != s for r in A):
                raise ModuleError("action matrix has the wrong shape")
            for i in range(s):
                for j in range(s):
                    if mods[j] and mods[i] != 0 and (A[i][j] * mods[j]) % mods[i]:
                        raise ModuleError("action of %s is not well defined" % G.labels[g])
                    if mods[j] and mods[i] == 0 and A[i][j]:
                        raise ModuleError("action of %s is not well defined" % G.labels[g])
        if not self.same_matrix(self.rho[G.identity], identity(s)):
            raise ModuleError("identity does not act trivially")
        for g in range(G.order):
            for h in range(G.order):
                if not self.same_matrix(matmul(self.rho[g], self.rho[h]), self.rho[G.mul(g, h)]):
                    raise ModuleError("action is not multiplicative at (%s,%s)" % (G.labels[g], G.labels[h]))

    def same_matrix(self, A, B):
        for row_a, row_b, m in zip(A, B, self.mods):
            for x, y in zip(row_a, row_b):
                if (x - y) % m if m else x != y:
                    return False
        return True

    # constructors
    @classmethod
    def from_presentation(cls, group, A, matrices, check=True):
        """Module on the group A (FinAbGroup) with action matrices on its generators."""
        fac, P, Q = A.canon
        rho = []
        for g in range(group.order):
            f = AbHom.from_matrix(A, A, matrices[g], check=check)
            rho.append(f.canon_matrix())
        return cls(group, fac, rho, check=check)

    @classmethod
    def trivial(cls, group, factors):
        mods = [d for d in factors if d != 1]
        s = len(mods)
        return cls(group, mods, [identity(s) for _ in range(group.order)], check=False)

    @classmethod
    def zero(cls, group):
        return cls(group, [], [[] for _ in range(group.order)], check=False)

    @classmethod
    def character(cls, group, d, chi):
        """Z/d (d > 1) or Z (d = 0) with g acting by multiplication by chi[g]."""
        return cls(group, [d], [[[chi[g]]] for g in range(group.order)])

    @classmethod
    def regular(cls, group, d=0):
        """Z[G] (or (Z/d)[G]) with left multiplication."""
        return permutation_module(group, group.trivial_subgroup(), d)

    def to_ab(self):
        return self.group_ab

    def action_hom(self, g):
        A = self.group_ab
        return AbHom.from_matrix(A, A, self.rho[g], check=False)

    def act(self, g, x):
        A = self.rho[g]
        return self.reduce([sum(A[i][j] * x[j] for j in range(self.rank)) for i in range(self.rank)])

    def reduce(self, x):
        return [v % m if m else v for v, m in zip(x, self.mods)]

    def is_finite(self):
        return all(self.mods)

    def is_torsion_free(self):
        return not any(self.mods)

    def order(self):
        n = 1
        for m in self.mods:
            if m == 0:
                return None
            n *= m
        return n

    def elements(self):
        out = [[]]
        for m in self.mods:
            out = [x + [k] for x in out for k in range(m)]
        return out

    def restrict(self, H):
        """Restriction to a subgroup H, as a module over H.as_group()."""
        Hg, emb = H.as_group()
        return GammaModule(Hg, self.mods, [self.rho[g] for g in emb], check=False)

    def describe(self):
        return self.group_ab.describe()

    def __repr__(self):
        return "GammaModule(%s, |G|=%d)" % (self.describe(), self.group.order)


class GammaHom:
    """Equivariant map between GammaModules (matrix in diagonal coordinates)."""

    def __init__(self, source, target, matrix, check=True):
        if source.group is not target.group:
            raise ModuleError("modules over different groups")
        self.source = source
        self.target = target
        self.matrix = _reduce_cols([list(r) for r in matrix], target.mods) if target.rank else []
        if not self.matrix:
            self.matrix = [[] for _ in range(target.rank)]
        self.ab = AbHom.from_matrix(source.group_ab, target.group_ab, self.matrix, check=check) \
            if source.rank and target.rank else AbHom.zero(source.group_ab, target.group_ab)
        if check:
            G = source.group
            for g in G.generators():
                lhs = matmul(self.matrix, source.rho[g]) if source.rank else []
                rhs = matmul(target.rho[g], self.matrix) if source.rank else []
                if source.rank and not target.same_matrix(lhs, rhs):
                    raise ModuleError("map is not equivariant for %s" % G.labels[g])

    def apply(self, x):
        return self.target.reduce([sum(a * b for a, b in zip(row, x)) for row in self.matrix]) \
            if self.target.rank else []

    def compose(self, other):
        """self o other."""
        M = matmul(self.matrix, other.matrix) if other.source.rank else \
            [[] for _ in range(self.target.rank)]
        return GammaHom(other.source, self.target, M, check=False)

    def is_zero(self):
        return self.ab.is_zero()


class ShortExactSequence:
    """0 -> A1 -i-> A2 -p-> A3 -> 0 with exactness verified."""

    def __init__(self, i, p, check=True):
        self.i, self.p = i, p
        self.A1, self.A2, self.A3 = i.source, i.target, p.target
        if p.source is not self.A2:
            raise ModuleError("maps are not composable")
        if check:
            if not i.ab.is_injective():
                raise ModuleError("sequence not exact: first map not injective")
            if not p.ab.is_surjective():
                raise ModuleError("sequence not exact: last map not surjective")
            K, kinc = p.ab.kernel()
            from .lattice import same_subgroup
            img = i.ab.image_gens()
            ker = [kinc(g) for g in K.gens()]
            if not same_subgroup(self.A2.group_ab, img, ker):
                raise ModuleError("sequence not exact in the middle")

    @classmethod
    def split(cls, A, B):
        """0 -> A -> A + B -> B -> 0."""
        S = direct_sum_modules([A, B])
        a, b = A.rank, B.rank
        i = GammaHom(A, S, [[int(r == c) for c in range(a)] for r in range(a)] +
                     [[0] * a for _ in range(b)], check=False)
        p = GammaHom(S, B, [[int(c == a + r) for c in range(a + b)] for r in range(b)], check=False)
        return cls(i, p, check=False)


def direct_sum_modules(mods):
    G = mods[0].group
    allm = []
    for M in mods:
        allm += M.mods
    n = len(allm)
    rho = []
    for g in range(G.order):
        A = [[0] * n for _ in range(n)]
        off = 0
        for M in mods:
            for i in range(M.rank):
                for j in range(M.rank):
                    A[off + i][off + j] = M.rho[g][i][j]
            off += M.rank
        rho.append(A)
    return GammaModule(G, allm, rho, check=False)


def quotient_module(M, vectors):
    """M / (Gamma-submodule generated by vectors), with the projection."""
    G = M.group
    rels = [{i: m} for i, m in enumerate(M.mods) if m]
    for v in vectors:
        for g in range(G.order):
            w = M.act(g, v)
            rels.append(sparse(w))
    A = FinAbGroup(M.rank, rels)
    Q = GammaModule.from_presentation(G, A, M.rho, check=False)
    fac, P, _ = A.canon
    proj = [[row.get(j, 0) for j in range(M.rank)] for row in P]
    return Q, GammaHom(M, Q, proj, check=False)


def submodule_kernel(f):
    """Kernel of an equivariant map as a GammaModule with its inclusion."""
    K, inc = f.ab.kernel()
    M = f.source
    Kfac = K.factors
    vecs = [M.reduce(inc(g).coords) for g in K.gens()]
    # action on the kernel: solve g.v in terms of the kernel generators
    rho = []
    for g in range(M.group.order):
        cols = []
        for v in vecs:
            w = M.act(g, list(v))
            pre = inc.preimage(AbElement(M.group_ab, w))
            cols.append(list(pre.canon()))
        rho.append([[c[i] for c in cols] for i in range(len(Kfac))])
    Km = GammaModule(M.group, Kfac, rho, check=False)
    return Km, GammaHom(Km, M, [[v[i] for v in vecs] for i in range(M.rank)], check=False)


def permutation_module(group, H, d=0):
    """Z[G/H] (or (Z/d)[G/H]) on the left cosets of H."""
    orbit = PlaceOrbit(group, H, kind="finite")
    S = PlaceSet(group, [orbit])
    base = GammaModule.trivial(group, [d])
    return induced_module(base, S)


def twist(M, chi):
    """M tensored with a rank-one character (units chi[g])."""
    G = M.group
    return GammaModule(G, M.mods, [[[chi[g] * x for x in row] for row in M.rho[g]] for g in range(G.order)])


# ---------------------------------------------------------------- (co)invariants

def coinvariants(M):
    """M_Gamma with the projection from M."""
    G = M.group
    rels = [{i: m} for i, m in enumerate(M.mods) if m]
    # (g - 1)M for generators g spans the augmentation ideal times M
    for g in G.generators():
        A = M.rho[g]
        for i in range(M.rank):
            v = {k: A[k][i] - (k == i) for k in range(M.rank) if A[k][i] - (k == i)}
            if v:
                rels.append(v)
    C = FinAbGroup(M.rank, rels)
    return C, AbHom(M.group_ab, C, [{i: 1} for i in range(M.rank)], check=False)


def invariants(M):
    """M^Gamma with its inclusion into M."""
    G = M.group
    A = M.group_ab
    others = [g for g in range(G.order) if g != G.identity]
    if not others or not M.rank:
        return A, AbHom.identity(A)
    T, _ = direct_sum([A] * len(others))
    images = []
    s = M.rank
    for i in range(s):
        v = {}
        for k, g in enumerate(others):
            for r in range(s):
                x = M.rho[g][r][i] - (r == i)
                if x:
                    v[k * s + r] = x
        images.append(v)
    f = AbHom(A, T, images, check=False)
    return hom_kernel(f)


def norm_map(M):
    """Sum of the action over all group elements, as an AbHom M -> M."""
    s = M.rank
    N = [[sum(M.rho[g][i][j] for g in range(M.group.order)) for j in range(s)] for i in range(s)]
    return AbHom.from_matrix(M.group_ab, M.group_ab, N, check=False)


def relative_norm(M, H, reps=None, source=None, target=None):
    """N_{H\\G}: M_G -> M_H, x -> sum over right cosets Hs of s.x."""
    if reps is None:
        reps = H.right_cosets()
    MG = source if source is not None else coinvariants(M)[0]
    MH = target if target is not None else coinvariants(M.restrict(H))[0]
    s = M.rank
    N = [[sum(M.rho[t][i][j] for t in reps) for j in range(s)] for i in range(s)]
    return AbHom.from_matrix(MG, MH, N, check=True)


# ---------------------------------------------------------------- places

KINDS = ("finite", "real", "complex")


class PlaceOrbit:
    """Orbit of places G/H with base point of stabilizer H.

    Places are t_k.w for the left coset representatives t_k of H (the
    first element index of each coset); t_0 is the identity coset.
    """

    def __init__(self, group, stabilizer, kind="finite", label=None, reps=None):
        if stabilizer.parent is not group:
            raise ModuleError("stabilizer is not a subgroup of the group")
        if kind not in KINDS:
            raise ModuleError("unknown place kind %r" % kind)
        if kind == "complex" and stabilizer.order != 1:
            raise ModuleError("complex places have trivial stabilizer")
        if kind == "real" and stabilizer.order > 2:
            raise ModuleError("real places have stabilizer of order at most 2")
        self.group = group
        self.stabilizer = stabilizer
        self.kind = kind
        self.label = label
        self.reps = list(reps) if reps is not None else stabilizer.left_cosets()
        if len(self.reps) != stabilizer.index():
            raise ModuleError("need one representative per coset")
        self._pos = {}
        for k, t in enumerate(self.reps):
            for h in stabilizer.elements:
                self._pos[group.mul(t, h)] = k
        if len(self._pos) != group.order:
            raise ModuleError("representatives do not cover the cosets")

    @property
    def size(self):
        return len(self.reps)

    def act(self, g, k):
        """Index of g.(t_k w)."""
        return self._pos[self.group.mul(g, self.reps[k])]

    def place_label(self, k):
        base = self.label if self.label is not None else "w"
        return base if k == 0 else "%s'" % base if self.size == 2 else "%s.%s" % (base, self.group.labels[self.reps[k]])


class PlaceSet:
    """Finite G-set of places, grouped in orbits."""

    def __init__(self, group, orbits):
        self.group = group
        self.orbits = list(orbits)
        self.places = [(o, k) for o, orb in enumerate(self.orbits) for k in range(orb.size)]
        self.index = {p: i for i, p in enumerate(self.places)}
        self.perm = []
        for g in range(group.order):
            self.perm.append([self.index[(o, self.orbits[o].act(g, k))] for (o, k) in self.places])

    def __len__(self):
        return len(self.places)

    def orbit_places(self, o):
        return [self.index[(o, k)] for k in range(self.orbits[o].size)]

    def sub(self, orbit_indices):
        return PlaceSet(self.group, [self.orbits[o] for o in orbit_indices])

    def labels(self):
        return [self.orbits[o].place_label(k) for (o, k) in self.places]


def induced_module(M, S):
    """M[S] with the diagonal action g.(m w) = (g m)(g w)."""
    G, s = M.group, M.rank
    P = len(S)
    mods = M.mods * P
    rho = []
    for g in range(G.order):
        A = [[0] * (P * s) for _ in range(P * s)]
        perm = S.perm[g]
        R = M.rho[g]
        for p in range(P):
            q = perm[p]
            for i in range(s):
                for j in range(s):
                    if R[j][i]:
                        A[q * s + j][p * s + i] = R[j][i]
        rho.append(A)
    return GammaModule(G, mods, rho, check=False)


def augmentation(M, S, MS=None):
    MS = MS or induced_module(M, S)
    s = M.rank
    A = [[int(c % s == i) for c in range(len(S) * s)] for i in range(s)]
    return GammaHom(MS, M, A, check=False)


class AugmentationKernel:
    """M[S]_0 = ker(M[S] -> M) with basis m_i (w - w0), w != w0."""

    def __init__(self, M, S, anchor=None):
        if len(S) == 0:
            raise ModuleError("augmentation of an empty place set")
        self.M, self.S = M, S
        P, s = len(S), M.rank
        self.anchor = P - 1 if anchor is None else anchor
        self.others = [p for p in range(P) if p != self.anchor]
        pos = {p: k for k, p in enumerate(self.others)}
        G = M.group
        n = len(self.others) * s
        rho = []
        for g in range(G.order):
            A = [[0] * n for _ in range(n)]
            perm = S.perm[g]
            R = M.rho[g]
            ga = perm[self.anchor]
            for k, p in enumerate(self.others):
                gp = perm[p]
                for i in range(s):
                    col = k * s + i
                    for j in range(s):
                        x = R[j][i]
                        if not x:
                            continue
                        if gp != self.anchor:
                            A[pos[gp] * s + j][col] += x
                        if ga != self.anchor:
                            A[pos[ga] * s + j][col] -= x
            rho.append(A)
        self.module = GammaModule(G, M.mods * len(self.others), rho, check=False)
        self.ambient = induced_module(M, S)
        inc = [[0] * n for _ in range(P * s)]
        for k, p in enumerate(self.others):
            for i in range(s):
                inc[p * s + i][k * s + i] = 1
                inc[self.anchor * s + i][k * s + i] = -1
        self.inclusion = GammaHom(self.module, self.ambient, inc, check=False)

    def from_ambient(self, v):
        """Coordinates in the kernel basis of a vector of M[S] with zero augmentation."""
        s = self.M.rank
        out = []
        for p in self.others:
            out.extend(v[p * s:(p + 1) * s])
        return out

    def place_difference(self, a, b, i=0, coeff=1):
        """Kernel coordinates of coeff * e_i (w_a - w_b)."""
        s, P = self.M.rank, len(self.S)
        v = [0] * (P * s)
        v[a * s + i] += coeff
        v[b * s + i] -= coeff
        return self.from_ambient(v)


def localization(M, S, orbit, kernel=None, target=None, source=None):
    """l_w: (M[S]_0)_G -> M_H for the base place w of the given orbit.

    A summand m.(t w) of the orbit is sent to t^-1 m; other orbits give 0.
    With kernel=None the map is defined on (M[S])_G instead.
    """
    G, s = M.group, M.rank
    orb = S.orbits[orbit]
    H = orb.stabilizer
    MH = target if target is not None else coinvariants(M.restrict(H))[0]
    inv_rep = {}
    for k in range(orb.size):
        inv_rep[S.index[(orbit, k)]] = G.inv(orb.reps[k])

    def col_for(p, i):
        v = [0] * s
        if p in inv_rep:
            R = M.rho[inv_rep[p]]
            for j in range(s):
                v[j] += R[j][i]
        return v

    cols = []
    if kernel is None:
        src = source if source is not None else coinvariants(induced_module(M, S))[0]
        for p in range(len(S)):
            for i in range(s):
                cols.append(col_for(p, i))
    else:
        src = source if source is not None else coinvariants(kernel.module)[0]
        for p in kernel.others:
            for i in range(s):
                a = col_for(p, i)
                b = col_for(kernel.anchor, i)
                cols.append([x - y for x, y in zip(a, b)])
    mat = [[c[j] for c in cols] for j in range(s)]
    return AbHom.from_matrix(src, MH, mat, check=True) if cols and s else AbHom.zero(src, MH)


# ---------------------------------------------------------------- orbit maps

class OrbitMap:
    """G-equivariant map from the orbits of one place set into another.

    choice[o] = (target orbit, g): the base place of source orbit o goes to
    g.(base place of the target orbit).
    """

    def __init__(self, source, target, choice):
        self.source, self.target, self.choice = source, target, list(choice)
        G = source.group
        self.place_map = []
        for (o, k) in source.places:
            t_o, g = self.choice[o]
            orb = target.orbits[t_o]
            gk = G.mul(source.orbits[o].reps[k], g)
            self.place_map.append(target.index[(t_o, orb.act(gk, 0))])
        for h in range(G.order):
            for p in range(len(source)):
                if self.place_map[source.perm[h][p]] != target.perm[h][self.place_map[p]]:
                    raise ModuleError("orbit map is not equivariant")


def admissible_targets(H, target_orbits):
    """All (orbit index, g) with H inside the stabilizer of g.(base place)."""
    out = []
    for t, orb in enumerate(target_orbits):
        G = orb.group
        for g in range(G.order):
            stab = orb.stabilizer.conjugate(g)
            if stab.contains_subgroup(H):
                out.append((t, g))
    return out


def build_phi(source, target, pick="first"):
    """Equivariant orbit map source -> target (PlaceSets).

    pick: "first" takes the first admissible target orbit in input order
    and the least conjugating element; "last" takes the last admissible
    pair (used to test independence of the choice).
    """
    choice = []
    for o, orb in enumerate(source.orbits):
        adm = admissible_targets(orb.stabilizer, target.orbits)
        if not adm:
            raise ModuleError("no admissible target for orbit %s (stabilizer %s)"
                              % (orb.label or o, orb.stabilizer.label()))
        choice.append(adm[0] if pick == "first" else adm[-1])
    return OrbitMap(source, target, choice)


class SDecomposition:
    """Isomorphism M[S]_0 + M[V - S] = M[V]_0 defined by an orbit map phi.

    forward: (x, y) -> x - phi_*(y) + y ; backward: z -> (z_S + phi_*(z_c), z_c).
    Both M[S]_0 and M[V]_0 use the last place of S as anchor.
    """

    def __init__(self, M, V, S_orbits, phi=None, pick="first"):
        self.M, self.V = M, V
        S_orbits = sorted(S_orbits)
        C_orbits = [o for o in range(len(V.orbits)) if o not in S_orbits]
        self.S = V.sub(S_orbits)
        self.C = V.sub(C_orbits)
        self.phi = phi if phi is not None else (build_phi(self.C, self.S, pick) if C_orbits else None)
        s = M.rank
        # place index maps into V
        s_places = [V.index[(o, k)] for o in S_orbits for k in range(V.orbits[o].size)]
        c_places = [V.index[(o, k)] for o in C_orbits for k in range(V.orbits[o].size)]
        anchor_v = s_places[-1]
        self.kS = AugmentationKernel(M, self.S)
        self.kV = AugmentationKernel(M, V, anchor=anchor_v)
        MC = induced_module(M, self.C) if C_orbits else GammaModule.zero(M.group)
        self.MC = MC
        self.domain = direct_sum_modules([self.kS.module, MC])
        nS, nC = self.kS.module.rank, MC.rank
        nV = self.kV.module.rank
        posV = {p: k for k, p in enumerate(self.kV.others)}

        def vcol(place, i, c):
            v = [0] * nV
            if place != anchor_v:
                v[posV[place] * s + i] += c
            return v

        F = [[0] * (nS + nC) for _ in range(nV)]
        for k, p in enumerate(self.kS.others):
            for i in range(s):
                col = k * s + i
                a = vcol(s_places[p], i, 1)
                for r in range(nV):
                    F[r][col] += a[r]
                # the anchor of M[S]_0 and M[V]_0 coincide, so nothing else
        for c, p in enumerate(c_places):
            q = s_places[self.phi.place_map[c]]
            for i in range(s):
                col = nS + c * s + i
                for r, x in enumerate(vcol(p, i, 1)):
                    F[r][col] += x
                for r, x in enumerate(vcol(q, i, -1)):
                    F[r][col] += x
        self.forward = GammaHom(self.domain, self.kV.module, F, check=True)
        B = [[0] * nV for _ in range(nS + nC)]
        posS = {p: k for k, p in enumerate(self.kS.others)}
        sidx = {p: j for j, p in enumerate(s_places)}
        cidx = {p: j for j, p in enumerate(c_places)}
        anchor_s = self.kS.anchor
        for k, p in enumerate(self.kV.others):
            for i in range(s):
                col = k * s + i
                if p in sidx:
                    j = sidx[p]
                    if j != anchor_s:
                        B[posS[j] * s + i][col] += 1
                else:
                    j = cidx[p]
                    B[nS + j * s + i][col] += 1
                    q = self.phi.place_map[j]
                    if q != anchor_s:
                        B[posS[q] * s + i][col] += 1
        self.backward = GammaHom(self.kV.module, self.domain, B, check=True)

    def check_inverse(self):
        a = self.backward.compose(self.forward)
        b = self.forward.compose(self.backward)
        return a.ab.equals(AbHom.identity(self.domain.group_ab)) and \
            b.ab.equals(AbHom.identity(self.kV.module.group_ab))


# ---------------------------------------------------------------- duals

def qz_dual(A):
    """Hom(A, Q/Z) for finite A, with (g f)(x) = f(g^-1 x).

    The dual basis e_i^* (e_j) = delta_ij / d_i gives the same invariant
    factors; the action matrix is rho*(g)_{ji} = rho(g^-1)_{ij} d_j / d_i.
    """
    if not A.is_finite():
        raise ModuleError("qz_dual needs a finite module")
    G, d = A.group, A.mods
    s = A.rank
    rho = []
    for g in range(G.order):
        R = A.rho[G.inv(g)]
        rho.append([[R[i][j] * d[j] // d[i] for i in range(s)] for j in range(s)])
    return GammaModule(G, d, rho)


def dual_module(M):
    """Hom(M, Z) for torsion-free M with the contragredient action."""
    if not M.is_torsion_free():
        raise ModuleError("dual_module needs a torsion-free module; use qz_dual for finite ones")
    G, s = M.group, M.rank
    rho = []
    for g in range(G.order):
        R = M.rho[G.inv(g)]
        rho.append([[R[j][i] for j in range(s)] for i in range(s)])
    return GammaModule(G, [0] * s, rho)

"""Finite groups given by multiplication tables, and their subgroups."""

from itertools import product


class GroupError(ValueError):
    pass


class FiniteGroup:
    """Group on elements 0..N-1 with table[i][j] = i*j."""

    def __init__(self, table, labels=None, check=True):
        self.table = [list(row) for row in table]
        self.order = len(self.table)
        n = self.order
        if n == 0:
            raise GroupError("empty table")
        if any(len(row) != n for row in self.table):
            raise GroupError("table is not square")
        if any(not 0 <= x < n for row in self.table for x in row):
            raise GroupError("table entry out of range")
        ids = [e for e in range(n) if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n))]
        if not ids:
            raise GroupError("no identity element")
        self.identity = ids[0]
        self.inverse = [None] * n
        for a in range(n):
            for b in range(n):
                if self.table[a][b] == self.identity:
                    self.inverse[a] = b
                    break
            if self.inverse[a] is None or self.table[self.inverse[a]][a] != self.identity:
                raise GroupError("element %d has no inverse" % a)
        if check:
            t = self.table
            for i, j, k in product(range(n), repeat=3):
                if t[t[i][j]][k] != t[i][t[j][k]]:
                    raise GroupError("associativity at (%d,%d,%d)" % (i, j, k))
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        if len(self.labels) != n:
            raise GroupError("label count does not match the order")

    # constructors
    @classmethod
    def from_permutations(cls, gens, degree=None):
        """Closure of permutation generators (tuples of images of 0..d-1)."""
        gens = [tuple(g) for g in gens]
        if degree is None:
            degree = len(gens[0]) if gens else 1
        e = tuple(range(degree))
        elems = [e]
        seen = {e}
        frontier = [e]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = tuple(g[x[i]] for i in range(degree))
                    if y not in seen:
                        seen.add(y)
                        elems.append(y)
                        new.append(y)
            frontier = new
        index = {x: i for i, x in enumerate(elems)}
        # product a*b means apply b first, then a
        table = [[index[tuple(a[b[i]] for i in range(degree))] for b in elems] for a in elems]
        G = cls(table, labels=["".join(map(str, x)) if degree < 10 else str(x) for x in elems], check=False)
        G.permutations = elems
        G.perm_gens = gens
        return G

    @classmethod
    def cyclic(cls, n):
        return cls([[(i + j) % n for j in range(n)] for i in range(n)], check=False)

    @classmethod
    def trivial(cls):
        return cls([[0]], check=False)

    @classmethod
    def klein(cls):
        return cls([[i ^ j for j in range(4)] for i in range(4)], labels=["1", "a", "b", "ab"], check=False)

    @classmethod
    def units_mod(cls, n):
        """(Z/n)^x, elements labelled by residues in increasing order."""
        from math import gcd
        els = [a for a in range(1, n) if gcd(a, n) == 1] if n > 1 else [0]
        idx = {a: i for i, a in enumerate(els)}
        table = [[idx[(a * b) % n] for b in els] for a in els]
        return cls(table, labels=[str(a) for a in els], check=False)

    @classmethod
    def symmetric(cls, n):
        if n == 1:
            return cls.trivial()
        gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
        return cls.from_permutations(gens, n)

    @classmethod
    def dihedral(cls, n):
        """Dihedral group of order 2n."""
        r = tuple((i + 1) % n for i in range(n))
        s = tuple((-i) % n for i in range(n))
        return cls.from_permutations([r, s], n)

    @classmethod
    def quaternion(cls):
        # elements (sign, unit) with units 1, i, j, k
        mult = {
            ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
            ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
            ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
            ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
        }
        els = [(s, u) for s in (1, -1) for u in "1ijk"]
        idx = {x: i for i, x in enumerate(els)}
        table = []
        for (s1, u1) in els:
            row = []
            for (s2, u2) in els:
                s, u = mult[(u1, u2)]
                row.append(idx[(s * s1 * s2, u)])
            table.append(row)
        labels = [("" if s == 1 else "-") + u for s, u in els]
        return cls(table, labels=labels, check=False)

    @classmethod
    def direct_product(cls, G, H):
        els = [(a, b) for a in range(G.order) for b in range(H.order)]
        idx = {x: i for i, x in enumerate(els)}
        table = [[idx[(G.mul(a, c), H.mul(b, d))] for (c, d) in els] for (a, b) in els]
        labels = ["(%s,%s)" % (G.labels[a], H.labels[b]) for a, b in els]
        return cls(table, labels=labels, check=False)

    # arithmetic
    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverse[a]

    def conj(self, g, h):
        """g h g^-1."""
        return self.table[self.table[g][h]][self.inverse[g]]

    def power(self, a, k):
        r = self.identity
        if k < 0:
            a, k = self.inverse[a], -k
        for _ in range(k):
            r = self.table[r][a]
        return r

    def element_order(self, a):
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def elements(self):
        return range(self.order)

    def index_of(self, label):
        return self.labels.index(str(label))

    def is_abelian(self):
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def generated(self, gens):
        """Subgroup generated by a list of elements."""
        S = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in S:
                        S.add(y)
                        new.append(y)
            frontier = new
        return Subgroup(self, S)

    def generators(self):
        """A small generating set (greedy, cached)."""
        if getattr(self, "_gens", None) is None:
            gens, cur = [], {self.identity}
            for g in range(self.order):
                if len(cur) == self.order:
                    break
                if g not in cur:
                    gens.append(g)
                    cur = set(self.generated(gens).elements)
            self._gens = gens
        return self._gens

    def whole(self):
        return Subgroup(self, range(self.order))

    def trivial_subgroup(self):
        return Subgroup(self, [self.identity])

    def subgroups(self):
        """All subgroups (naive closure over generated subgroups)."""
        found = {frozenset([self.identity]): None}
        layer = [frozenset([self.identity])]
        while layer:
            new = []
            for S in layer:
                for g in range(self.order):
                    if g in S:
                        continue
                    T = frozenset(self.generated(list(S) + [g]).elements)
                    if T not in found:
                        found[T] = None
                        new.append(T)
            layer = new
        out = [Subgroup(self, S) for S in found]
        out.sort(key=lambda H: (H.order, sorted(H.elements)))
        return out

    def cyclic_subgroups(self):
        """One cyclic subgroup per conjugacy class, ordered by (order, elements)."""
        seen = set()
        reps = []
        cyc = {}
        for g in range(self.order):
            S = frozenset(self.generated([g]).elements)
            cyc.setdefault(S, g)
        for S in sorted(cyc, key=lambda S: (len(S), sorted(S))):
            if S in seen:
                continue
            H = Subgroup(self, S)
            reps.append(H)
            for g in range(self.order):
                seen.add(frozenset(self.conj(g, h) for h in S))
        return reps

    def abelianization_invariants(self):
        """Invariant factors of G/[G,G] by closure of commutators."""
        from .lattice import FinAbGroup
        comm = [self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
                for a in range(self.order) for b in range(self.order)]
        D = self.generated(comm)
        k = self.order // D.order
        # presentation of G^ab: generators all elements, relations [a][b] = [ab]
        # restricted to coset representatives
        cosets = {}
        rep = []
        for g in range(self.order):
            key = frozenset(self.mul(g, d) for d in D.elements)
            if key not in cosets:
                cosets[key] = len(rep)
                rep.append(g)
        cid = {}
        for key, i in cosets.items():
            for x in key:
                cid[x] = i
        rels = []
        for a in rep:
            for b in rep:
                r = {}
                for i, c in ((cid[a], 1), (cid[b], 1), (cid[self.mul(a, b)], -1)):
                    r[i] = r.get(i, 0) + c
                rels.append({i: c for i, c in r.items() if c})
        A = FinAbGroup(k, rels)
        return A.invariants

    def __repr__(self):
        return "FiniteGroup(order=%d)" % self.order


class Subgroup:
    """A subgroup of a FiniteGroup, given by its element set."""

    def __init__(self, parent, elements, check=True):
        self.parent = parent
        self.elements = sorted(set(elements))
        self._set = frozenset(self.elements)
        self.order = len(self.elements)
        if check:
            G = parent
            if G.identity not in self._set:
                raise GroupError("subgroup lacks the identity")
            for a in self.elements:
                if G.inv(a) not in self._set:
                    raise GroupError("subgroup not closed under inverses")
                for b in self.elements:
                    if G.mul(a, b) not in self._set:
                        raise GroupError("subgroup not closed under products")
        self._group = None

    def __contains__(self, g):
        return g in self._set

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.parent is self.parent and other._set == self._set

    def __hash__(self):
        return hash(self._set)

    def index(self):
        return self.parent.order // self.order

    def contains_subgroup(self, other):
        return other._set <= self._set

    def conjugate(self, g):
        return Subgroup(self.parent, [self.parent.conj(g, h) for h in self.elements], check=False)

    def is_normal(self):
        return all(self.conjugate(g) == self for g in range(self.parent.order))

    def is_cyclic(self):
        return any(self.parent.element_order(g) == self.order for g in self.elements)

    def left_cosets(self):
        """Cosets gH; representative = least element index of each coset."""
        G = self.parent
        seen = set()
        reps = []
        for g in range(G.order):
            if g in seen:
                continue
            reps.append(g)
            for h in self.elements:
                seen.add(G.mul(g, h))
        return reps

    def right_cosets(self):
        """Cosets Hg; representative = least element index of each coset."""
        G = self.parent
        seen = set()
        reps = []
        for g in range(G.order):
            if g in seen:
                continue
            reps.append(g)
            for h in self.elements:
                seen.add(G.mul(h, g))
        return reps

    def left_coset_rep(self, g, reps=None):
        """Representative t in reps with g in tH."""
        G = self.parent
        reps = reps if reps is not None else self.left_cosets()
        gi = G.inv(g)
        for t in reps:
            if G.mul(gi, t) in self._set:
                return t
        raise GroupError("no coset representative")

    def right_coset_rep(self, g, reps=None):
        """Representative s in reps with g in Hs."""
        G = self.parent
        reps = reps if reps is not None else self.right_cosets()
        for s in reps:
            if G.mul(g, G.inv(s)) in self._set:
                return s
        raise GroupError("no coset representative")

    def as_group(self):
        """(FiniteGroup, embedding list) for the subgroup on its own."""
        if self._group is None:
            els = self.elements
            idx = {x: i for i, x in enumerate(els)}
            G = self.parent
            table = [[idx[G.mul(a, b)] for b in els] for a in els]
            H = FiniteGroup(table, labels=[G.labels[x] for x in els], check=False)
            self._group = (H, list(els))
        return self._group

    def label(self):
        G = self.parent
        if self.order == 1:
            return "1"
        if self.order == G.order:
            return "G"
        gens = _small_generating_set(self)
        return "<" + ",".join(G.labels[g] for g in gens) + ">"

    def __repr__(self):
        return "Subgroup(%s, order=%d)" % (self.label(), self.order)


def _small_generating_set(H):
    G = H.parent
    gens = []
    cur = {G.identity}
    for g in sorted(H.elements, key=lambda x: (-G.element_order(x), x)):
        if g not in cur:
            gens.append(g)
            cur = set(G.generated(gens).elements)
        if len(cur) == H.order:
            break
    return gens


def section_from_reps(H, reps):
    """Map each right coset Hg to its chosen representative."""
    return {g: H.right_coset_rep(g, reps) for g in range(H.parent.order)}

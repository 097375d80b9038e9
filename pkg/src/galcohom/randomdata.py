"""Seeded generators of small groups, modules, sequences and data for testing."""


from .groups import FiniteGroup
from .modules import (
    GammaModule, ShortExactSequence, quotient_module, submodule_kernel, permutation_module,
    direct_sum_modules, PlaceOrbit, PlaceSet, AugmentationKernel,
)


def small_groups(max_order=8):
    out = [
        ("1", FiniteGroup.trivial()),
        ("C2", FiniteGroup.cyclic(2)),
        ("C3", FiniteGroup.cyclic(3)),
        ("C4", FiniteGroup.cyclic(4)),
        ("V4", FiniteGroup.klein()),
        ("C5", FiniteGroup.cyclic(5)),
        ("C6", FiniteGroup.cyclic(6)),
        ("S3", FiniteGroup.symmetric(3)),
        ("C7", FiniteGroup.cyclic(7)),
        ("C8", FiniteGroup.cyclic(8)),
        ("C2xC4", FiniteGroup.direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(4))),
        ("C2^3", FiniteGroup.direct_product(FiniteGroup.klein(), FiniteGroup.cyclic(2))),
        ("D4", FiniteGroup.dihedral(4)),
        ("Q8", FiniteGroup.quaternion()),
    ]
    return [(n, G) for n, G in out if G.order <= max_order]


def _characters(G, d):
    """Homomorphisms G -> (Z/d)^x (or {+-1} for d = 0) as lists of units."""
    units = [1, -1] if d in (0, 2) else [u for u in range(1, d) if _gcd(u, d) == 1]
    if d == 2:
        units = [1]
    gens = _generators(G)
    out = []
    for vals in _assignments(len(gens), units):
        chi = {G.identity: 1}
        frontier = [G.identity]
        ok = True
        while frontier and ok:
            x = frontier.pop()
            for g, v in zip(gens, vals):
                y = G.mul(g, x)
                val = (v * chi[x]) % d if d else v * chi[x]
                if y in chi:
                    if chi[y] != val:
                        ok = False
                        break
                else:
                    chi[y] = val
                    frontier.append(y)
        if ok and len(chi) == G.order:
            out.append([chi[g] for g in range(G.order)])
    return out


def _assignments(k, units):
    out = [()]
    for _ in range(k):
        out = [a + (u,) for a in out for u in units]
    return out


def _generators(G):
    gens = []
    cur = G.generated([]).elements
    for g in range(G.order):
        if len(cur) == G.order:
            break
        if g not in cur:
            gens.append(g)
            cur = G.generated(gens).elements
    return gens


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def random_module(G, rng, max_rank=4, max_factor=16, depth=0):
    """A small GammaModule built from permutation lattices, characters,
    direct sums and quotients."""
    kind = rng.choice(["trivial", "perm", "perm_mod", "norm_quot", "aug", "char", "sum", "quot"]
                      if depth < 2 else ["trivial", "perm", "char"])
    subs = G.subgroups()
    max_rank = max(1, max_rank)
    if kind == "trivial":
        return GammaModule.trivial(G, [rng.choice([0, 2, 3, 4, 6, 8, 16][:4 + depth])])
    if kind in ("perm", "perm_mod"):
        H = rng.choice([K for K in subs if K.index() <= max_rank])
        d = 0 if kind == "perm" else rng.choice([2, 3, 4, 8])
        return permutation_module(G, H, d)
    if kind == "norm_quot":
        H = rng.choice([K for K in subs if K.index() <= max_rank + 1])
        P = permutation_module(G, H)
        return quotient_module(P, [[1] * P.rank])[0]
    if kind == "aug":
        H = rng.choice([K for K in subs if K.index() <= max_rank + 1])
        orbit = PlaceOrbit(G, H)
        S = PlaceSet(G, [orbit])
        return AugmentationKernel(GammaModule.trivial(G, [0]), S).module
    if kind == "char":
        d = rng.choice([0, 3, 4, 5, 8, 16])
        chis = _characters(G, d)
        return GammaModule.character(G, d, rng.choice(chis))
    if kind == "sum":
        parts = []
        total = 0
        while total < 2:
            P = random_module(G, rng, max_rank - total, max_factor, depth + 1)
            if P.rank + total > max_rank:
                break
            parts.append(P)
            total += P.rank
        if not parts:
            return GammaModule.trivial(G, [2])
        return direct_sum_modules(parts) if len(parts) > 1 else parts[0]
    # quotient by the span of a random vector
    P = random_module(G, rng, max_rank, max_factor, depth + 1)
    if not P.rank:
        return P
    v = [rng.randrange(-3, 4) for _ in range(P.rank)]
    if not any(v):
        v[0] = 2
    return quotient_module(P, [v])[0]


def random_ses(G, rng, max_rank=4):
    """0 -> A1 -> A2 -> A3 -> 0 with A2 random and A3 a quotient of A2."""
    while True:
        A2 = random_module(G, rng, max_rank)
        if A2.rank:
            break
    v = [rng.randrange(-2, 3) for _ in range(A2.rank)]
    if not any(v):
        v[rng.randrange(A2.rank)] = rng.choice([1, 2])
    A3, p = quotient_module(A2, [v])
    A1, i = submodule_kernel(p)
    return ShortExactSequence(i, p)


def random_orbits(G, rng, max_orbits=4, real_prob=0.25):
    """Random orbit list (stabilizers cyclic, real orbits of order <= 2)."""
    cyc = [H for H in G.subgroups() if H.is_cyclic()]
    k = rng.randint(1, max_orbits)
    orbits = []
    for j in range(k):
        H = rng.choice(cyc)
        kind = "finite"
        if H.order <= 2 and rng.random() < real_prob:
            kind = "real" if H.order == 2 else "complex"
        orbits.append(PlaceOrbit(G, H, kind=kind, label="v%d" % (j + 1)))
    return orbits


def random_datum(G, rng, max_rank=3, max_orbits=4, real_prob=0.25, cover=True, sylow=False):
    """Random datum over G; with cover=True orbits are appended until every
    cyclic class lies in a stabilizer (sylow=True covers the Sylow subgroups)."""
    from .datum import ArithmeticDatum
    from .modules import admissible_targets
    M = random_module(G, rng, max_rank)
    orbits = random_orbits(G, rng, max_orbits, real_prob)
    if sylow:
        for P in sylow_subgroups(G):
            if not admissible_targets(P, orbits):
                orbits.append(PlaceOrbit(G, P, "finite", "v%d" % (len(orbits) + 1)))
    if cover:
        for C in G.cyclic_subgroups():
            if not admissible_targets(C, orbits):
                orbits.append(PlaceOrbit(G, C, "finite", "v%d" % (len(orbits) + 1)))
    return ArithmeticDatum(G, M, PlaceSet(G, orbits), "number", name="random")


def sylow_subgroups(G):
    """One Sylow p-subgroup for each prime p dividing |G|."""
    n = G.order
    out = []
    subs = G.subgroups()
    p = 2
    while n > 1:
        if n % p == 0:
            k = 1
            while n % p == 0:
                n //= p
                k *= p
            out.append(next(H for H in subs if H.order == k))
        p += 1
    return out

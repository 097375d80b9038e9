"""Property checks for the Tate engine, each returning True or False on one instance."""

import random

from galcohom.lattice import AbHom, same_subgroup
from galcohom.modules import GammaModule, direct_sum_modules
from galcohom.randomdata import random_module, random_ses, small_groups
from galcohom.tate import (
    BoundedComplex, CochainSpace, chain_model_convert, corestriction, free_cover_replacement,
    hm1_to_coinvariants, homogeneous_from_vector, low_degree_explicit, map_on_cohomology,
    module_complex, restriction, tate_cohomology, tate_connecting, tate_group,
    tate_hypercohomology, vector_from_homogeneous, xi_map,
)

WINDOW = (-2, -1, 0, 1, 2)


def groups(max_order=8):
    return small_groups(max_order)


def random_instances(seed, count, max_order=8, max_rank=3, cyclic_only=False, nontrivial=False):
    rng = random.Random(seed)
    pool = [(n, G) for n, G in groups(max_order)
            if (not cyclic_only or G.generated([g for g in range(G.order)]).is_cyclic())
            and (not nontrivial or G.order > 1)]
    out = []
    for _ in range(count):
        name, G = rng.choice(pool)
        out.append((name, G, random_module(G, rng, max_rank)))
    return out


def random_sequences(seed, count, max_order=8, max_rank=3):
    rng = random.Random(seed)
    pool = groups(max_order)
    out = []
    for _ in range(count):
        name, G = rng.choice(pool)
        out.append((name, G, random_ses(G, rng, max_rank)))
    return out


def _exact(f, g):
    K, kinc = g.kernel()
    return same_subgroup(g.source, [kinc(x) for x in K.gens()], f.image_gens())


# ---------------------------------------------------------------- individual properties

def free_acyclic(G, copies, degrees=WINDOW):
    M = direct_sum_modules([GammaModule.regular(G)] * copies) if copies > 1 else GammaModule.regular(G)
    return all(tate_cohomology(M, n).group.is_trivial() for n in degrees)


def annihilated_by_order(M, degrees=WINDOW):
    N = M.group.order
    for n in degrees:
        fac = tate_cohomology(M, n).group.factors
        if any(d == 0 or N % d for d in fac):
            return False
    return True


def two_periodic(M, degrees=(-2, -1, 0)):
    return all(tate_cohomology(M, n).group.factors == tate_cohomology(M, n + 2).group.factors
               for n in degrees)


def cor_res_is_index(M, degrees=(-2, -1, 0, 1)):
    G = M.group
    cx = module_complex(M)
    for n in degrees:
        HG = tate_group(cx, n)
        for H in G.subgroups():
            HH = tate_cohomology(M.restrict(H), n)
            r = restriction(cx, H, n, H_src=HG, H_tgt=HH)
            c = corestriction(cx, H, n, H_src=HH, H_tgt=HG)
            if not c.compose(r).equals(AbHom.identity(HG.group).scale(H.index())):
                return False
    return True


def _alternative_reps(H):
    G = H.parent
    return [G.mul(H.elements[(k + 1) % H.order], t) for k, t in enumerate(H.right_cosets())]


def res_cor_section_free(M, degrees=(-2, -1, 0, 1)):
    G = M.group
    cx = module_complex(M)
    for n in degrees:
        HG = tate_group(cx, n)
        for H in G.subgroups():
            alt = _alternative_reps(H)
            HH = tate_cohomology(M.restrict(H), n)
            r1 = restriction(cx, H, n, H_src=HG, H_tgt=HH)
            r2 = restriction(cx, H, n, reps=alt, H_src=HG, H_tgt=HH)
            c1 = corestriction(cx, H, n, H_src=HH, H_tgt=HG)
            c2 = corestriction(cx, H, n, reps=alt, H_src=HH, H_tgt=HG)
            if not (r1.equals(r2) and c1.equals(c2)):
                return False
    return True


def low_degree_agrees(M):
    L = low_degree_explicit(M)
    return L.h0_to_tate().is_isomorphism() and L.hm1_to_tate().is_isomorphism() \
        and L.hm1_to_coinv_tors.is_injective()


def long_exact_sequence(ses, degrees=(-2, -1, 0, 1)):
    """Exactness of H^n(A1) -> H^n(A2) -> H^n(A3) -> H^{n+1}(A1) -> H^{n+1}(A2)."""
    for n in degrees:
        H1, H2, H3 = (tate_cohomology(A, n) for A in (ses.A1, ses.A2, ses.A3))
        N1 = tate_cohomology(ses.A1, n + 1)
        N2 = tate_cohomology(ses.A2, n + 1)
        f = map_on_cohomology(ses.i, n, H_src=H1, H_tgt=H2)
        g = map_on_cohomology(ses.p, n, H_src=H2, H_tgt=H3)
        d = tate_connecting(ses, n, H3=H3, H1=N1)
        f2 = map_on_cohomology(ses.i, n + 1, H_src=N1, H_tgt=N2)
        if not (_exact(f, g) and _exact(g, d) and _exact(d, f2)):
            return False
    return True


def delta0_matches_tate(ses, h):
    """delta_0 on the image of H^-1(A3) equals xi after the Tate connecting map."""
    Hm = tate_cohomology(ses.A3, -1)
    H0 = tate_cohomology(ses.A1, 0)
    d = tate_connecting(ses, -1, H3=Hm, H1=H0)
    e, _, _ = hm1_to_coinvariants(ses.A3, Hm)
    xi = xi_map(ses.A1, H0)
    return all(h.delta0(e(c)) == xi(d(c)) for c in Hm.group.gens())


def replacement_invariant(ses, degrees=(0, 1, 2)):
    """The two-term complex [A1 -> A2] against its free-cover replacements."""
    cx = BoundedComplex(-1, [ses.A1, ses.A2], [ses.i])
    r0, cert0 = free_cover_replacement(cx, 0)
    if not cert0["ok"]:
        return False
    pairs = [r0]
    if ses.A1.is_torsion_free() and ses.A2.is_torsion_free():
        r1, cert1 = free_cover_replacement(cx, -1)
        if not cert1["ok"]:
            return False
        pairs.append(r1)
    for n in degrees:
        base = tate_hypercohomology(cx, n).group.factors
        if any(tate_hypercohomology(r, n).group.factors != base for r in pairs):
            return False
    return True


def chain_models_commute(M, rng, degrees=(1, 2, -2)):
    """Homogeneous/inhomogeneous conversion round-trips on random cochains."""
    G = M.group
    cx = BoundedComplex.concentrated(M)
    for n in degrees:
        S = CochainSpace(cx, n)
        c = S.reduce([rng.randrange(-5, 6) for _ in range(S.dim)])
        f = homogeneous_from_vector(G, M, n, c)
        inh = chain_model_convert(G, M, f, n, "to_inhomogeneous")
        back = chain_model_convert(G, M, inh, n, "to_homogeneous")
        if {k: M.reduce(v) for k, v in back.items()} != {k: M.reduce(v) for k, v in f.items()}:
            return False
        if S.reduce(vector_from_homogeneous(G, M, n, back)) != c:
            return False
    return True

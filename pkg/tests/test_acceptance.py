"""Acceptance suite: one PASS/FAIL line per criterion.

Run under pytest (lines are printed even with output capture on) or directly:
``python3 tests/test_acceptance.py``. All comparisons are exact; the only
tolerances are the wall-clock limits in TIME_LIMITS (seconds).
"""

import os
import random
from math import gcd
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import tate_checks as tc
from galcohom.datum import (
    ArithmeticDatum, builder_klein_sansuc, builder_paper_example, builder_sansuc_torus, sansuc_module,
    validate_datum,
)
from galcohom.global_cohomology import (
    GlobalModel, h1_global, h1ab_structured, rebasing_invariant, same_sha, sha1, sha2, sha_not_summand,
    sha_through_decomposition,
)
from galcohom.groups import FiniteGroup
from galcohom.lattice import AbElement, same_subgroup, torsion_part
from galcohom.modules import GammaModule, PlaceOrbit, PlaceSet, direct_sum_modules
from galcohom.randomdata import random_datum, random_module, small_groups
from galcohom.tate import hinich_sequence

TIME_LIMITS = {1: 10.0, 4: 60.0}
THETA = (2, -2, 1, -1, 4, 0)


def _pool(noncyclic_weight=1):
    out = []
    for name, G in small_groups(8):
        if G.order == 1:
            continue
        cyclic = any(G.element_order(g) == G.order for g in range(G.order))
        out += [(name, G)] * (1 if cyclic else noncyclic_weight)
    return out


def _random_data(seed, count, noncyclic_weight=1, max_orbits=None, torus_every=0, **kw):
    """Random covered data; with torus_every=k every k-th datum carries Z[G]/(norm) instead
    of a random module, which is where nonzero Sha^2 shows up."""
    rng = random.Random(seed)
    pool = _pool(noncyclic_weight)
    out = []
    while len(out) < count:
        G = rng.choice(pool)[1]
        d = random_datum(G, rng, **kw)
        if torus_every and len(out) % torus_every == 0:
            M = direct_sum_modules([sansuc_module(G), random_module(G, rng, 1)]) if rng.random() < 0.5 \
                else sansuc_module(G)
            d = ArithmeticDatum(G, M, d.places, "number", name="random-torus")
        if max_orbits is not None and len(d.places.orbits) > max_orbits:
            continue
        out.append(d)
    return out


# ---------------------------------------------------------------- criteria

def criterion_1():
    d = builder_paper_example()
    m = GlobalModel(d)
    checks = {}
    checks["C0=(2,8)"] = m.C0.factors == [2, 8]
    eta = d.named["η₈"]
    four_eta = [4 * x for x in eta]
    c = m.proj0.apply(m.kernel.from_ambient(four_eta))
    t = m.tinc0.preimage(AbElement(m.C0, c))
    K, inc = m.sha1_kernel()
    checks["ker=<4eta>=Z/2"] = K.factors == [2] and same_subgroup(m.T0, [inc(g) for g in K.gens()], [t])
    rep = sha1(d, m)
    checks["Sha1 both formulas"] = rep.kernel_value.factors == rep.cokernel_value.factors == [2]
    G = d.group
    kill = True
    for g in range(G.order):
        for j in range(m.kernel.module.rank):
            x = m.kernel.inclusion.apply([int(i == j) for i in range(m.kernel.module.rank)])
            gx = m.kernel.ambient.act(g, x)
            kill &= sum(a * (p - q) for a, p, q in zip(THETA, gx, x)) % 8 == 0
    # 8 * M[S]_0 is killed because the form is integral
    checks["theta kills relations"] = kill
    checks["theta(4eta)=4"] = sum(a * v for a, v in zip(THETA, four_eta)) % 8 == 4
    ns = sha_not_summand(d, 1, m)
    cert = ns["certificate"]
    checks["not-summand 2eta"] = ns["verdict"] == "not-summand" and cert["p"] == 2 \
        and cert["b_expr"][:2] == ("η₈", 2) and cert["p"] * cert["b"] == cert["a_e"]
    bad = [k for k, v in checks.items() if not v]
    return not bad, "C0=%s Sha1=%s; failed: %s" % (m.C0.factors, rep.describe(), ", ".join(bad) or "none")


def _sansuc_configs():
    V = FiniteGroup.klein()
    C4 = FiniteGroup.cyclic(4)
    A = FiniteGroup.direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(4))
    E = FiniteGroup.direct_product(FiniteGroup.klein(), FiniteGroup.cyclic(2))
    cyc = A.cyclic_subgroups()
    o2 = [H for H in cyc if H.order == 2]
    o4 = [H for H in cyc if H.order == 4]
    klein_in_a = [H for H in A.subgroups() if H.order == 4 and not H.is_cyclic()]
    return [
        ("V4 three order-2 classes", builder_klein_sansuc()),
        ("V4 with whole group", builder_sansuc_torus(V, [V.generated([1]), V.whole()])),
        ("C4 order-2 class only", builder_sansuc_torus(C4, [C4.generated([2])])),
        ("C2xC4 order-2 classes", builder_sansuc_torus(A, o2)),
        ("C2xC4 order-4 classes", builder_sansuc_torus(A, o4)),
        ("C2xC4 Klein subgroup", builder_sansuc_torus(A, klein_in_a)),
        ("C2xC4 whole group", builder_sansuc_torus(A, [A.whole()])),
        ("C2^3 order-2 classes", builder_sansuc_torus(E, [H for H in E.cyclic_subgroups() if H.order == 2])),
    ]


def criterion_2():
    lines, ok = [], True
    for name, d in _sansuc_configs():
        l = 1
        for o in d.places.orbits:
            l = l * o.stabilizer.order // gcd(l, o.stabilizer.order)
        want = d.group.order // l
        r = sha2(d)
        inv = r.invariants
        good = r.agree and len(inv) <= 1 and (inv[0] if inv else 1) == want \
            and d.metadata["predicted_sha2_order"] == want
        ok &= good
        lines.append("%s: %s vs n/l=%d" % (name, r.describe(), want))
    return ok, "%d configurations; " % len(lines) + "; ".join(lines)


def criterion_3():
    bad = 0
    data = _random_data(301, 20, sylow=True)
    for d in data:
        m = GlobalModel(d)
        if not (sha1(d, m).group.is_trivial() and sha2(d, m).group.is_trivial()):
            bad += 1
    return bad == 0, "%d data, %d with nonzero Sha" % (len(data), bad)


def criterion_4():
    data = _random_data(401, 50, noncyclic_weight=3, max_orbits=4, torus_every=3)
    bad, nontrivial = 0, 0
    for d in data:
        assert validate_datum(d)["ok"]
        assert len(d.places.orbits) <= 4 and all(x <= 16 for x in d.module.mods)
        m = GlobalModel(d)
        r1, r2 = sha1(d, m), sha2(d, m)
        if not (r1.agree and r2.agree):
            bad += 1
        if not (r1.group.is_trivial() and r2.group.is_trivial()):
            nontrivial += 1
    noncyclic = sum(1 for d in data if not d.group.whole().is_cyclic())
    return bad == 0, "%d data (%d non-cyclic groups, %d with nonzero Sha), %d disagreements" % (
        len(data), noncyclic, nontrivial, bad)


def criterion_5():
    n = 20
    results = {}
    rng = random.Random(501)
    groups = tc.groups(8)
    results["free acyclic"] = [tc.free_acyclic(G, rng.randint(1, 3)) for _, G in
                               (rng.choice(groups) for _ in range(n))]
    results["annihilation"] = [tc.annihilated_by_order(M) for _, _, M in tc.random_instances(502, n)]
    results["2-periodicity"] = [tc.two_periodic(M) for _, _, M in tc.random_instances(503, n, cyclic_only=True)]
    results["cor.res=index"] = [tc.cor_res_is_index(M) for _, _, M in tc.random_instances(504, n)]
    results["section independence"] = [tc.res_cor_section_free(M) for _, _, M in tc.random_instances(505, n)]
    results["low degrees"] = [tc.low_degree_agrees(M) for _, _, M in tc.random_instances(506, n)]
    results["long exact sequence"] = [tc.long_exact_sequence(s) for _, _, s in tc.random_sequences(507, n)]
    results["replacement invariance"] = [tc.replacement_invariant(s) for _, _, s in
                                         tc.random_sequences(508, n, max_order=4, max_rank=2)]
    results["chain models"] = [tc.chain_models_commute(M, random.Random(k)) for k, (_, _, M) in
                               enumerate(tc.random_instances(509, n, max_order=6))]
    ok = all(all(v) and len(v) >= n for v in results.values())
    return ok, "; ".join("%s %d/%d" % (k, sum(v), len(v)) for k, v in results.items())


def criterion_6():
    seqs = tc.random_sequences(601, 100)
    exact = match = nonzero = 0
    for _, _, ses in seqs:
        h = hinich_sequence(ses)
        exact += h.is_exact()
        match += tc.delta0_matches_tate(ses, h)
        nonzero += any(any(v) for v in h.delta0_images)
    ok = exact == match == len(seqs)
    return ok, "%d sequences: %d exact, %d delta0 matches (%d with nonzero delta0)" % (
        len(seqs), exact, match, nonzero)


def criterion_7():
    data = [builder_paper_example(), builder_klein_sansuc()] + _random_data(701, 18)
    rng = random.Random(702)
    phi_ok = rebase_ok = 0
    for d in data:
        m = GlobalModel(d)
        first = sha_through_decomposition(d, "first", m)
        last = sha_through_decomposition(d, "last", m)
        phi_ok += same_sha(m, *first) and same_sha(m, *last)
        o = rng.randrange(len(d.places.orbits))
        g = rng.randrange(1, d.group.order)
        rebase_ok += rebasing_invariant(d, o, g, m)
    ok = phi_ok == rebase_ok == len(data)
    return ok, "%d data: phi first/last agree on %d, re-basing agrees on %d" % (len(data), phi_ok, rebase_ok)


def _zero_module_datum():
    G = FiniteGroup.klein()
    orbits = [PlaceOrbit(G, H, "finite", "v%d" % k) for k, H in enumerate(G.cyclic_subgroups())]
    orbits.append(PlaceOrbit(G, G.generated([1]), "real", "r1"))
    orbits.append(PlaceOrbit(G, G.generated([2]), "real", "r2"))
    return ArithmeticDatum(G, GammaModule.zero(G), PlaceSet(G, orbits), "number")


def criterion_8():
    checks = {}
    d = _zero_module_datum()
    arch = {4: (["+", "-", "0"], [(), (), ()]), 5: (["+", "-"], [(), ()])}
    res = h1_global(d, arch)
    checks["M=0 core is 3x2"] = len(res.core) == 6
    checks["M=0 Sha vanishes"] = sha1(d).group.is_trivial() and sha2(d).group.is_trivial()
    data = [builder_klein_sansuc()] + _random_data(801, 10, real_prob=0.0)
    good = 0
    for x in data:
        m = GlobalModel(x)
        tors = torsion_part(m.C0)[0]
        core = h1ab_structured(x, m)["core"]
        h1 = h1_global(x, model=m)
        good += core.factors == tors.factors and len(h1.core) == tors.order() and h1.core.is_group
    checks["no real places: core = torsion"] = good == len(data)
    bad = [k for k, v in checks.items() if not v]
    return not bad, "%d no-real data; failed: %s" % (len(data), ", ".join(bad) or "none")


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
            5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8}


def evaluate(n):
    start = time.perf_counter()
    ok, detail = CRITERIA[n]()
    elapsed = time.perf_counter() - start
    limit = TIME_LIMITS.get(n)
    if limit is not None and elapsed >= limit:
        ok = False
        detail += "; over time limit %.0f s" % limit
    line = "criterion %d: %s (%.2f s) %s" % (n, "PASS" if ok else "FAIL", elapsed, detail)
    return ok, line


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, line = evaluate(n)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)

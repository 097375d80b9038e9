"""Walk through the shipped worked example: Z/8 over the Galois group (Z/8)^x.

Run with ``python3 demos/worked_example.py``.
"""

from galcohom.datum import builder_paper_example, validate_datum
from galcohom.global_cohomology import GlobalModel, h1_global, sha1, sha2, sha_not_summand


def main():
    d = builder_paper_example()
    G = d.group
    print("Galois group: (Z/8)^x with elements", G.labels)
    print("module: Z/8, the element k acting by multiplication by k")
    print("place orbits:", ", ".join("%s (%s, stabilizer order %d)" % (o.label, o.kind, o.stabilizer.order)
                                     for o in d.places.orbits))

    rep = validate_datum(d)
    print("\nevery cyclic subgroup fixes a place:", rep["ok"])
    for p in rep["phi"]:
        print("  class %s is sent to orbit %s" % (p["class"], p["orbit"]))

    m = GlobalModel(d)
    print("\ncoinvariants of the augmentation kernel M[S]_0:", m.C0.describe())
    print("torsion part:", m.T0.describe())

    s1 = sha1(d, m)
    g = s1.generators[0]
    name, k, _ = g["expr"]
    print("\nSha^1 by the kernel formula:  ", s1.kernel_value.describe())
    print("Sha^1 by the cokernel formula:", s1.cokernel_value.describe())
    print("generator: %d*%s, with canonical coordinates %s" % (k, name, list(g["canon"])))
    print("Sha^2:", sha2(d, m).describe())

    ns = sha_not_summand(d, 1, m)
    c = ns["certificate"]
    print("\nis Sha^1 a direct summand of H^1_ab?", ns["verdict"])
    print("witness: the generator equals p*b with p = %d and b = %d*%s," % (c["p"], c["b_expr"][1], c["b_expr"][0]))
    print("but the generator is not p times any element of Sha^1")

    h1 = h1_global(d, model=m)
    print("\nH^1 core: %d elements, closed under addition: %s" % (len(h1.core), h1.core.is_group))
    for H, A in h1.residual:
        print("  places outside S with decomposition group %s contribute %s" % (H.label(), A.describe()))


if __name__ == "__main__":
    main()

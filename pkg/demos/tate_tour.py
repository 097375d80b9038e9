"""A short tour of the Tate cohomology engine."""

from galcohom.groups import FiniteGroup
from galcohom.modules import GammaHom, GammaModule, ShortExactSequence
from galcohom.tate import hinich_sequence, tate_cohomology


def main():
    C2 = FiniteGroup.cyclic(2)
    Z = GammaModule.trivial(C2, [0])
    sign = GammaModule.character(C2, 0, [1, -1])
    print("Tate cohomology of Z/2 acting on Z (trivially) and on Z (by sign):")
    for n in range(-3, 4):
        print("  degree %2d: %-4s %s" % (n, tate_cohomology(Z, n).group.describe(),
                                        tate_cohomology(sign, n).group.describe()))

    S3 = FiniteGroup.symmetric(3)
    print("\nH^-2(S3, Z) is the abelianization of S3:",
          tate_cohomology(GammaModule.trivial(S3, [0]), -2).group.describe())

    Q = GammaModule.trivial(C2, [2])
    ses = ShortExactSequence(GammaHom(Z, Z, [[2]]), GammaHom(Z, Q, [[1]]))
    h = hinich_sequence(ses)
    print("\nnine-term homology sequence of 0 -> Z -(x2)-> Z -> Z/2 -> 0 over Z/2:")
    print("  " + " -> ".join(n.describe() for n in h.nodes))
    print("  exact at every node:", h.is_exact())
    print("  the connecting map into Q/Z sends the generator to", h.delta0_images[0][0])


if __name__ == "__main__":
    main()

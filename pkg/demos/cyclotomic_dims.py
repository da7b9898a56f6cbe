"""Graded dimensions of a few cyclotomic quotients.

For sl3 with lambda the first fundamental weight, the nonzero quotients sit at
the three weights of the defining representation.  The sl2 tables show the
matrix-algebra-over-a-Grassmannian pattern.
"""

from klrcrystal import DominantWeight, KlrAlgebra, Preset, RootWeight, preset
from klrcrystal.cyclotomic import cyclo, irreducibles


def table(alg, lam, weights):
    for nu in weights:
        c = cyclo(alg, lam, nu)
        if not c.certified:
            print(f"  {dict(nu.coords)}: not certified")
            continue
        simples = len(irreducibles(c))
        print(f"  {dict(nu.coords)}: {c.graded_dim()!s:<30} simples: {simples}")


def main():
    sl3 = KlrAlgebra(preset("rank2"))
    lam = DominantWeight({"i": 1})
    print("sl3, lambda = omega_i")
    table(sl3, lam, [RootWeight({"i": a, "j": b}) for a in range(3) for b in range(3) if a + b])

    sl2 = KlrAlgebra(preset("sl2"), Preset.MODIFIED)
    for m in range(1, 4):
        print(f"sl2, lambda = {m}")
        table(sl2, DominantWeight({"i": m}), [RootWeight({"i": n}) for n in range(1, m + 2)])


if __name__ == "__main__":
    main()

"""How the two relation presets differ on imaginary indices.

With the standard relations an imaginary crossing squares to zero, so the dot
x_2 need not be nilpotent in a cyclotomic quotient and the quotient can be
infinite dimensional.  The modified relations square the crossing to a power
of (x_1 + x_2), which forces nilpotency.  This script prints both sides for a
few small cases so the difference is visible.
"""

from klrcrystal import DominantWeight, KlrAlgebra, Preset, RootWeight, preset
from klrcrystal.cyclotomic import cyclo, x2_nilpotency_check


def main():
    for name in ("imaginary", "isotropic", "mixed"):
        d = preset(name)
        im = [i for i in d.indices if not d.is_real(i)][0]
        lam = DominantWeight({i: 1 for i in d.indices})
        for n in (1, 2):
            nu = RootWeight({im: n})
            row = []
            for pr in Preset:
                c = cyclo(KlrAlgebra(d, pr), lam, nu)
                row.append(f"{pr.value}: {c.graded_dim() if c.certified else 'not certified'}")
            print(f"{name:<10} nu = {n}{im}   " + "   ".join(row))

    print()
    print("nilpotency exponent of x_2 in R(2i)/(x_1^b), modified relations")
    for name in ("imaginary", "isotropic", "imaginary4"):
        alg = KlrAlgebra(preset(name), Preset.MODIFIED)
        reps = [x2_nilpotency_check(alg, "i", b) for b in (1, 2, 3)]
        print(f"  {name:<11}" + "  ".join(f"b={r.b}: {r.exponent} (bound {r.bound})" for r in reps))


if __name__ == "__main__":
    main()

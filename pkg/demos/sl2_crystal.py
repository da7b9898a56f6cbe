"""Walk up the sl2 crystal one simple module at a time.

Each node of B(infinity) for sl2 is the simple module V(i^n) of the nilHecke
algebra.  Its graded dimension is a q-factorial (printed here from degree 0), and the Kashiwara
operator f_i moves to the next one by taking the head of an induced module.
"""

from klrcrystal import DominantWeight, KlrAlgebra, preset
from klrcrystal.crystal import binf_generate, blambda_generate


def main():
    alg = KlrAlgebra(preset("sl2"))
    g = binf_generate(alg, 4)
    print("B(infinity), first five nodes")
    for node in g.nodes:
        data = g.crystal_data(node)["i"]
        print(f"  depth {node.depth}: Dim = {node.module.graded_dim()!s:<32} eps = {data['eps']}")

    print()
    for m in range(4):
        bl = blambda_generate(alg, DominantWeight({"i": m}), m + 2)
        print(f"B({m}) has {len(bl.nodes)} nodes")

    print()
    print(g.to_dot())


if __name__ == "__main__":
    main()

import json
from pathlib import Path

import pytest
import sympy as sp

from klrcrystal import DominantWeight, KlrAlgebra, LaurentPoly, Preset, RootWeight, preset
from klrcrystal.cyclotomic import (UncertifiedAlgebra, cyclo, e_functor, element_a, element_b, f_functor,
                                   irreducibles, x2_nilpotency_check, mirror, sl2_dim_check, special_elements)
from klrcrystal.modules import is_irreducible, unit_module

FIXTURES = Path(__file__).parent / "fixtures"
q = sp.symbols("q")


def sympy_to_laurent(expr):
    expr = sp.expand(expr)
    low = min((t.as_coeff_exponent(q)[1] for t in sp.Add.make_args(expr)), default=0)
    poly = sp.Poly(sp.expand(expr * q ** (-low)), q)
    return LaurentPoly({int(e[0]) + int(low): int(c) for e, c in poly.terms()})


def sl2_cyclotomic_dim(lam, n):
    """Graded dimension of the cyclotomic nilHecke quotient: matrices over a Grassmannian's cohomology."""
    if n > lam:
        return LaurentPoly()

    def qint(k):
        return sp.cancel((q ** k - q ** -k) / (q - 1 / q))

    fact = sp.prod([qint(k) for k in range(1, n + 1)])
    binom = sp.cancel(sp.prod([qint(lam - t) for t in range(n)]) / fact)
    return sympy_to_laurent(fact ** 2 * q ** (n * (lam - n)) * binom)


@pytest.mark.parametrize("pr", list(Preset))
@pytest.mark.parametrize("lam,n", [(lam, n) for lam in range(4) for n in range(1, 4)])
def test_sl2_quotients_match_the_grassmannian_count(pr, lam, n):
    alg = KlrAlgebra(preset("sl2"), pr)
    c = cyclo(alg, DominantWeight({"i": lam}), RootWeight({"i": n}))
    assert c.certified
    assert c.graded_dim() == sl2_cyclotomic_dim(lam, n)


@pytest.mark.parametrize("name,lam,nu", [
    ("rank2", {"i": 1}, {"j": 1}),
    ("rank2", {"i": 1}, {"i": 2}),
    ("mixed", {"i": 1}, {"j": 1}),
    ("imaginary", {"i": 0}, {"i": 1}),
    ("isotropic", {"i": 0}, {"i": 2}),
])
def test_vanishing_quotients(name, lam, nu):
    alg = KlrAlgebra(preset(name), Preset.MODIFIED)
    c = cyclo(alg, DominantWeight(lam), RootWeight(nu))
    assert c.is_zero() and irreducibles(c) == []


def test_a2_fundamental_representation():
    # V(omega_i) of sl3 has weights lambda, lambda - i, lambda - i - j
    alg = KlrAlgebra(preset("rank2"))
    lam = DominantWeight({"i": 1})
    dims = {(a, b): cyclo(alg, lam, RootWeight({"i": a, "j": b})).graded_dim()
            for a in range(3) for b in range(3) if a + b}
    assert dims[(1, 0)] == LaurentPoly.const(1)
    assert dims[(1, 1)] == LaurentPoly.const(1)
    assert all(dims[k].is_zero() for k in dims if k not in {(1, 0), (1, 1)})


def test_standard_imaginary_square_is_not_certified():
    alg = KlrAlgebra(preset("imaginary"))
    c = cyclo(alg, DominantWeight({"i": 1}), RootWeight({"i": 2}))
    assert not c.certified
    with pytest.raises(UncertifiedAlgebra):
        c.graded_dim()


@pytest.mark.parametrize("name", ["imaginary", "isotropic", "imaginary4"])
def test_x2_nilpotency_exponents(name):
    fixed = json.loads((FIXTURES / "x2_nilpotency.json").read_text())[name]
    alg = KlrAlgebra(preset(name), Preset.MODIFIED)
    for b in (1, 2, 3):
        rep = x2_nilpotency_check(alg, "i", b)
        assert rep.ok, rep
        assert rep.exponent == fixed[str(b)]


def test_nilpotency_check_rejects_real_indices():
    with pytest.raises(ValueError):
        x2_nilpotency_check(KlrAlgebra(preset("sl2"), Preset.MODIFIED), "i", 1)


@pytest.mark.parametrize("name", ["sl2", "rank2", "mixed", "orthogonal"])
def test_f_on_the_unit_is_the_one_strand_quotient(name):
    alg = KlrAlgebra(preset(name), Preset.MODIFIED)
    d = alg.datum
    lam = DominantWeight({i: 1 for i in d.indices})
    for i in d.indices:
        fm = f_functor(unit_module(alg), i, lam)
        assert fm.graded_dim() == cyclo(alg, lam, RootWeight({i: 1})).graded_dim()
        assert fm.check_relations() == []


def test_functors_on_a_simple_module():
    alg = KlrAlgebra(preset("rank2"), Preset.MODIFIED)
    lam = DominantWeight({"i": 1, "j": 1})
    simples = irreducibles(cyclo(alg, lam, RootWeight({"i": 1, "j": 1})))
    assert simples and all(is_irreducible(s) for s in simples)
    for s in simples:
        fm = f_functor(s, "i", lam)
        assert fm.check_relations() == []
        assert e_functor(s, "j").check_relations() == []


@pytest.mark.parametrize("name,lam,nu", [
    ("sl2", {"i": 2}, {"i": 1}),
    ("rank2", {"i": 1, "j": 1}, {"i": 1}),
    ("mixed", {"i": 1, "j": 1}, {"j": 1}),
    ("isotropic", {"i": 1}, {"i": 1}),
])
def test_sl2_dimension_identity(name, lam, nu):
    alg = KlrAlgebra(preset(name), Preset.MODIFIED)
    lam = DominantWeight(lam)
    for s in irreducibles(cyclo(alg, lam, RootWeight(nu))):
        for i in alg.datum.indices:
            if alg.datum.is_real(i):
                assert sl2_dim_check(s, i, lam).ok


@pytest.mark.parametrize("name", ["rank2", "mixed", "imaginary", "isotropic", "orthogonal"])
def test_special_elements_are_homogeneous_mirrors(name):
    alg = KlrAlgebra(preset(name), Preset.MODIFIED)
    d = alg.datum
    lam = DominantWeight({k: 1 for k in d.indices})
    nu = RootWeight.of(d.indices)
    for i in d.indices:
        sp_el = special_elements(alg, lam, nu, i)
        assert mirror(sp_el["A"]) == sp_el["B"]
        assert mirror(sp_el["B"]) == sp_el["A"]
        for degs in (sp_el["degrees"]["A"], sp_el["degrees"]["B"]):
            assert all(len(v) == 1 for v in degs.values())
        a_deg = {tuple(reversed(s)): v for s, v in sp_el["degrees"]["A"].items()}
        assert a_deg == sp_el["degrees"]["B"]


def test_special_elements_need_the_modified_relations():
    alg = KlrAlgebra(preset("rank2"))
    with pytest.raises(ValueError):
        special_elements(alg, DominantWeight({"i": 1}), RootWeight({"j": 1}), "i")
    # the building blocks themselves are still available
    assert not element_a(alg, DominantWeight({"i": 1}), RootWeight({"j": 1}), "i").is_zero()
    assert not element_b(alg, DominantWeight({"i": 1}), RootWeight({"j": 1}), "i").is_zero()

import pytest

from klrcrystal import preset
from klrcrystal.cartan import (DominantWeight, IndexClass, MalformedDatum, NotSymmetrizable, OddDiagonal,
                               PositiveDiagonal, PositiveOffDiagonal, RootWeight, UnknownIndex, index_class,
                               root_form, validate_datum, weight_pairing)
from klrcrystal.presets import ALL_PRESETS


def datum(cartan, r=None):
    ids = "ijkl"[:len(cartan)]
    r = r or [1] * len(cartan)
    return {"indices": [{"id": i, "r": x} for i, x in zip(ids, r)], "cartan": cartan}


@pytest.mark.parametrize("name", ALL_PRESETS)
def test_presets_validate_and_round_trip(name):
    d = preset(name)
    assert validate_datum(d.to_json()) == d


@pytest.mark.parametrize("cartan,r,err,entry", [
    ([[3]], None, PositiveDiagonal, ("i", "i")),
    ([[-1]], None, OddDiagonal, ("i", "i")),
    ([[2, 1], [-1, 2]], None, PositiveOffDiagonal, ("i", "j")),
    ([[2, -1], [-2, 2]], None, NotSymmetrizable, ("i", "j")),
])
def test_invalid_data_name_the_offending_entry(cartan, r, err, entry):
    with pytest.raises(err) as info:
        validate_datum(datum(cartan, r))
    assert info.value.entry == entry


def test_symmetrizer_fixes_b2():
    d = validate_datum(datum([[2, -2], [-1, 2]], [1, 2]))
    assert d.form("i", "j") == d.form("j", "i") == -2


@pytest.mark.parametrize("raw", [{}, {"indices": [{"id": "i"}]}, datum([[2, 0]]),
                                 {"indices": [{"id": "i"}, {"id": "i"}], "cartan": [[2, 0], [0, 2]]}])
def test_malformed_input(raw):
    with pytest.raises(MalformedDatum):
        validate_datum(raw)


def test_index_classes():
    d = preset("mixed")
    assert index_class(d, "i") is IndexClass.RE
    assert index_class(d, "j") is IndexClass.IM
    assert index_class(preset("isotropic"), "i") is IndexClass.ISO
    with pytest.raises(UnknownIndex):
        d.pos("z")


def test_weights_and_pairings():
    d = preset("rank2")
    nu = RootWeight({"i": 2, "j": 1})
    assert nu.ht == 3
    assert sorted(nu.sequences(d)) == [("i", "i", "j"), ("i", "j", "i"), ("j", "i", "i")]
    assert root_form(d, nu, nu) == 2 * 4 + 2 - 2 * 2
    lam = DominantWeight({"i": 1})
    # (lambda - nu)(h_i) = 1 - (2*2 - 1)
    assert weight_pairing(d, nu, "i", lam) == -2
    with pytest.raises(ValueError, match="entry j is negative"):
        DominantWeight({"j": -1})

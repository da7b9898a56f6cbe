"""Quiver Hecke algebras, their crystals and cyclotomic quotients for Borcherds-Cartan data."""

from .cartan import (BorcherdsCartanDatum, DominantWeight, IndexClass, RootWeight, index_class,
                     load_datum, root_form, validate_datum, weight_pairing)
from .klr import KlrAlgebra, KlrElement, Preset
from .presets import preset
from .qpoly import LaurentPoly, QSeries, RatFunc, q_factorial, q_integer, series_expand

__version__ = "0.1.0"

__all__ = [
    "BorcherdsCartanDatum", "DominantWeight", "IndexClass", "RootWeight", "index_class",
    "load_datum", "root_form", "validate_datum", "weight_pairing",
    "KlrAlgebra", "KlrElement", "Preset", "preset",
    "LaurentPoly", "QSeries", "RatFunc", "q_factorial", "q_integer", "series_expand",
]

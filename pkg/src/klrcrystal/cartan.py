"""Borcherds-Cartan data, root lattice vectors and dominant weights."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Sequence


class DatumError(ValueError):
    """Base class for invalid data; ``entry`` names the offending position."""

    def __init__(self, message: str, entry=None):
        super().__init__(message)
        self.entry = entry


class OddDiagonal(DatumError):
    pass


class PositiveDiagonal(DatumError):
    pass


class PositiveOffDiagonal(DatumError):
    pass


class NotSymmetrizable(DatumError):
    pass


class MalformedDatum(DatumError):
    pass


class UnknownIndex(KeyError):
    pass


class IndexClass(Enum):
    RE = "Re"
    IM = "Im"
    ISO = "Iso"


@dataclass(frozen=True)
class BorcherdsCartanDatum:
    indices: tuple[str, ...]
    cartan: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[int, ...]
    _pos: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_pos", {i: k for k, i in enumerate(self.indices)})

    def pos(self, i: str) -> int:
        try:
            return self._pos[i]
        except KeyError:
            raise UnknownIndex(i) from None

    def a(self, i: str, j: str) -> int:
        return self.cartan[self.pos(i)][self.pos(j)]

    def r(self, i: str) -> int:
        return self.symmetrizer[self.pos(i)]

    def form(self, i: str, j: str) -> int:
        """``(alpha_i, alpha_j)``."""
        return self.r(i) * self.a(i, j)

    def is_real(self, i: str) -> bool:
        return self.a(i, i) == 2

    def is_isotropic(self, i: str) -> bool:
        return self.a(i, i) == 0

    def is_imaginary(self, i: str) -> bool:
        return self.a(i, i) <= 0

    def before(self, i: str, j: str) -> bool:
        return self.pos(i) < self.pos(j)

    def to_json(self) -> dict:
        return {
            "indices": [{"id": i, "r": r} for i, r in zip(self.indices, self.symmetrizer)],
            "cartan": [list(row) for row in self.cartan],
        }


def validate_datum(raw: Mapping) -> BorcherdsCartanDatum:
    """Build a datum from its JSON description, checking every axiom.

    >>> d = validate_datum({"indices": [{"id": "i", "r": 1}], "cartan": [[2]]})
    >>> index_class(d, "i")
    <IndexClass.RE: 'Re'>
    """
    try:
        entries = raw["indices"]
        ids = tuple(str(e["id"]) for e in entries)
        rs = tuple(int(e.get("r", 1)) for e in entries)
        rows = raw["cartan"]
    except (KeyError, TypeError) as exc:
        raise MalformedDatum(f"missing field: {exc}") from None
    n = len(ids)
    if len(set(ids)) != n:
        raise MalformedDatum("duplicate index identifiers")
    if len(rows) != n or any(len(row) != n for row in rows):
        raise MalformedDatum(f"cartan matrix must be {n}x{n}")
    if any(r <= 0 for r in rs):
        raise MalformedDatum("symmetrizer entries must be positive")
    a = tuple(tuple(int(x) for x in row) for row in rows)
    for p in range(n):
        d = a[p][p]
        if d > 2:
            raise PositiveDiagonal(f"a[{ids[p]},{ids[p]}]={d} exceeds 2", (ids[p], ids[p]))
        if d % 2:
            raise OddDiagonal(f"a[{ids[p]},{ids[p]}]={d} is odd", (ids[p], ids[p]))
    for p in range(n):
        for s in range(n):
            if p != s and a[p][s] > 0:
                raise PositiveOffDiagonal(f"a[{ids[p]},{ids[s]}]={a[p][s]} is positive",
                                          (ids[p], ids[s]))
    for p in range(n):
        for s in range(p + 1, n):
            if rs[p] * a[p][s] != rs[s] * a[s][p]:
                raise NotSymmetrizable(
                    f"r_{ids[p]} a[{ids[p]},{ids[s]}] != r_{ids[s]} a[{ids[s]},{ids[p]}]",
                    (ids[p], ids[s]))
    return BorcherdsCartanDatum(ids, a, rs)


def load_datum(path: str | Path) -> BorcherdsCartanDatum:
    with open(path) as fh:
        return validate_datum(json.load(fh))


def index_class(datum: BorcherdsCartanDatum, i: str) -> IndexClass:
    d = datum.a(i, i)
    if d == 2:
        return IndexClass.RE
    if d == 0:
        return IndexClass.ISO
    return IndexClass.IM


class RootWeight:
    """Element of the root lattice, stored as index -> integer."""

    __slots__ = ("coords",)

    def __init__(self, coords: Mapping[str, int] | None = None):
        self.coords = {i: int(v) for i, v in (coords or {}).items() if v}

    @classmethod
    def of(cls, seq: Iterable[str]) -> "RootWeight":
        c: dict = {}
        for i in seq:
            c[i] = c.get(i, 0) + 1
        return cls(c)

    @property
    def ht(self) -> int:
        return sum(self.coords.values())

    @property
    def nonnegative(self) -> bool:
        return all(v >= 0 for v in self.coords.values())

    def __getitem__(self, i: str) -> int:
        return self.coords.get(i, 0)

    def __add__(self, other: "RootWeight") -> "RootWeight":
        c = dict(self.coords)
        for i, v in other.coords.items():
            c[i] = c.get(i, 0) + v
        return RootWeight(c)

    def __sub__(self, other: "RootWeight") -> "RootWeight":
        return self + other.scale(-1)

    def scale(self, k: int) -> "RootWeight":
        return RootWeight({i: k * v for i, v in self.coords.items()})

    def key(self, datum: BorcherdsCartanDatum) -> tuple[int, ...]:
        return tuple(self[i] for i in datum.indices)

    def sequences(self, datum: BorcherdsCartanDatum) -> list[tuple[str, ...]]:
        """All sequences of weight ``self``, in lexicographic index order."""
        counts = [self[i] for i in datum.indices]
        out: list = []

        def rec(prefix):
            if not any(counts):
                out.append(tuple(prefix))
                return
            for p, i in enumerate(datum.indices):
                if counts[p]:
                    counts[p] -= 1
                    prefix.append(i)
                    rec(prefix)
                    prefix.pop()
                    counts[p] += 1

        rec([])
        return out

    def __eq__(self, other):
        return isinstance(other, RootWeight) and self.coords == other.coords

    def __hash__(self):
        return hash(frozenset(self.coords.items()))

    def __repr__(self):
        return f"RootWeight({self.coords})"


def root_form(datum: BorcherdsCartanDatum, nu: RootWeight, mu: RootWeight) -> int:
    return sum(a * b * datum.form(i, j) for i, a in nu.coords.items() for j, b in mu.coords.items())


def seq_form(datum: BorcherdsCartanDatum, s: Sequence[str], t: Sequence[str]) -> int:
    return root_form(datum, RootWeight.of(s), RootWeight.of(t))


class DominantWeight:
    __slots__ = ("values",)

    def __init__(self, values: Mapping[str, int] | None = None):
        vals = {i: int(v) for i, v in (values or {}).items()}
        for i, v in vals.items():
            if v < 0:
                raise ValueError(f"dominant weight entry {i} is negative ({v})")
        self.values = vals

    def __getitem__(self, i: str) -> int:
        return self.values.get(i, 0)

    def check(self, datum: BorcherdsCartanDatum) -> "DominantWeight":
        for i in self.values:
            datum.pos(i)
        return self

    def __repr__(self):
        return f"DominantWeight({self.values})"


def weight_pairing(datum: BorcherdsCartanDatum, mu: RootWeight, i: str,
                   lam: DominantWeight | None = None) -> int:
    """``mu(h_i)`` for a root lattice vector, or ``(lam - mu)(h_i)`` if ``lam`` is given."""
    datum.pos(i)
    val = sum(v * datum.a(i, j) for j, v in mu.coords.items())
    if lam is None:
        return val
    return lam[i] - val

"""Kashiwara operators on irreducible graded modules and the crystals they generate."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import linalg as la
from .cartan import DominantWeight, RootWeight, weight_pairing
from .klr import KlrAlgebra
from .modules import (GradedModule, NotCertified, char_key, char_to_json, forget_head, forget_tail,
                      head, induce, normalize_char, one_strand, socle_rows, unit_module)
from .qpoly import LaurentPoly


class DepthCapExceeded(ValueError):
    pass


class IncompleteBasis(ValueError):
    pass


class NotIrreducible(RuntimeError):
    """A head or socle that theory predicts to be simple was not."""


# --- single-module operations ---------------------------------------------------------

def normalize(m: GradedModule) -> GradedModule:
    return m.normalized()[0]


def node_key(m: GradedModule) -> tuple:
    return (m.weight.key(m.alg.datum), char_key(normalize_char(m.character())))


def eps(m: GradedModule, i: str) -> int:
    """Length of the longest ``i``-tail among the sequences supporting ``m``."""
    best = 0
    for s in m.components:
        k = 0
        while k < len(s) and s[len(s) - 1 - k] == i:
            k += 1
        best = max(best, k)
    return best


def eps_vee_support(m: GradedModule, i: str) -> int:
    best = 0
    for s in m.components:
        k = 0
        while k < len(s) and s[k] == i:
            k += 1
        best = max(best, k)
    return best


def eps_vee_jordan(m: GradedModule, i: str) -> int:
    """Largest Jordan block of ``x_1`` on the ``i``-leading part (real ``i``)."""
    idx = [a for a, (s, _) in enumerate(m.labels) if s and s[0] == i]
    if not idx:
        return 0
    x = la.select(m.gens[("x", 1)], idx, idx)
    p = la.eye(len(idx))
    k = 0
    while not la.is_zero(p):
        p = p * x
        k += 1
    return k


def ftilde(m: GradedModule, i: str) -> GradedModule:
    """Head of ``Ind(M (x) V(i))``."""
    h, simple = head(induce(m, one_strand(m.alg, i)))
    if not simple:
        raise NotIrreducible(f"head of induction by {i} is not simple")
    return normalize(h)


def ftilde_vee(m: GradedModule, i: str) -> GradedModule:
    h, simple = head(induce(one_strand(m.alg, i), m))
    if not simple:
        raise NotIrreducible(f"head of left induction by {i} is not simple")
    return normalize(h)


def _simple_socle(m: GradedModule, what: str) -> GradedModule | None:
    if m.is_zero():
        return None
    res = socle_rows(m)
    if not res.simple:
        raise NotIrreducible(f"socle of {what} is not simple")
    return normalize(m.submodule(res.rows))


def etilde(m: GradedModule, i: str) -> GradedModule | None:
    """Socle of ``e_i M``; ``None`` stands for zero."""
    return _simple_socle(forget_tail(m, i), f"e_{i} M")


def etilde_vee(m: GradedModule, i: str) -> GradedModule | None:
    return _simple_socle(forget_head(m, i), f"e_{i}^vee M")


def star_ops(m: GradedModule, i: str):
    return etilde_vee(m, i), ftilde_vee(m, i)


def eps_vee_iterated(m: GradedModule, i: str) -> int:
    k = 0
    cur = m
    while True:
        cur = etilde_vee(cur, i)
        if cur is None:
            return k
        k += 1


def eps_vee(m: GradedModule, i: str) -> int:
    if m.alg.datum.is_real(i):
        return eps_vee_jordan(m, i)
    return eps_vee_support(m, i)


# --- crystal graphs -----------------------------------------------------------------------

@dataclass
class CrystalNode:
    key: tuple
    module: GradedModule
    weight: RootWeight
    depth: int
    eps: dict = field(default_factory=dict)
    eps_vee: dict = field(default_factory=dict)

    @property
    def character(self) -> dict:
        return self.module.character()


@dataclass
class CrystalGraph:
    alg: KlrAlgebra
    nodes: list
    edges: list  # (source index, i, target index)
    index_of: dict
    indices: tuple
    lam: DominantWeight | None = None
    extra: dict = field(default_factory=dict)

    @property
    def root(self) -> CrystalNode:
        return self.nodes[0]

    def lookup(self, m: GradedModule) -> int | None:
        return self.index_of.get(node_key(m))

    def at_weight(self, nu: RootWeight) -> list:
        return [n for n in self.nodes if n.weight == nu]

    def fedge(self, a: int, i: str) -> int | None:
        return self._fmap.get((a, i))

    @property
    def _fmap(self) -> dict:
        cache = self.extra.get("_fmap")
        if cache is None:
            cache = {(s, i): t for s, i, t in self.edges}
            self.extra["_fmap"] = cache
        return cache

    def wt_i(self, node: CrystalNode, i: str) -> int:
        """``wt(b)(h_i)``; with a dominant weight attached this is ``(lambda - nu)(h_i)``."""
        if self.lam is None:
            return weight_pairing(self.alg.datum, node.weight.scale(-1), i)
        return weight_pairing(self.alg.datum, node.weight, i, self.lam)

    def crystal_data(self, node: CrystalNode) -> dict:
        """Abstract crystal data: ``eps`` follows the perfect-basis convention."""
        d = self.alg.datum
        out = {}
        for i in self.indices:
            if self.lam is None:
                e = node.eps_vee[i] if d.is_real(i) else 0
                out[i] = {"eps": e, "phi": e + self.wt_i(node, i), "wt": self.wt_i(node, i)}
            else:
                out[i] = dict(self.extra["lambda_data"][node.key][i])
        return out

    def to_json(self) -> dict:
        nodes = []
        for a, n in enumerate(self.nodes):
            nodes.append({
                "id": a,
                "weight": dict(n.weight.coords),
                "depth": n.depth,
                "character": char_to_json(normalize_char(n.character)),
                "eps_tail": n.eps,
                "eps_head": n.eps_vee,
                "crystal": self.crystal_data(n),
            })
        return {
            "indices": list(self.indices),
            "lambda": None if self.lam is None else dict(self.lam.values),
            "nodes": nodes,
            "edges": [{"source": s, "index": i, "target": t} for s, i, t in self.edges],
        }

    def to_dot(self) -> str:
        lines = ["digraph crystal {"]
        for a, n in enumerate(self.nodes):
            wt = "+".join(f"{v}{k}" if v != 1 else k for k, v in n.weight.coords.items()) or "0"
            data = self.crystal_data(n)
            eps_txt = ",".join(f"{i}:{data[i]['eps']}" for i in self.indices)
            lines.append(f'  n{a} [label="wt=-({wt}); eps={eps_txt}"];')
        for s, i, t in self.edges:
            lines.append(f'  n{s} -> n{t} [label="{i}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _make_node(m: GradedModule, depth: int, indices) -> CrystalNode:
    m = normalize(m)
    return CrystalNode(node_key(m), m, m.weight, depth,
                       eps={i: eps(m, i) for i in indices},
                       eps_vee={i: eps_vee(m, i) for i in indices})


def _check_depth(alg: KlrAlgebra, depth: int):
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if depth > alg.ht_cap:
        raise DepthCapExceeded(f"depth {depth} exceeds the height cap {alg.ht_cap}")


def binf_generate(alg: KlrAlgebra, depth: int, indices: Sequence[str] | None = None) -> CrystalGraph:
    """Breadth-first generation of the crystal of irreducibles from the unit module."""
    _check_depth(alg, depth)
    indices = tuple(indices) if indices else alg.datum.indices
    root = _make_node(unit_module(alg), 0, indices)
    g = CrystalGraph(alg, [root], [], {root.key: 0}, indices)
    frontier = [0]
    for level in range(1, depth + 1):
        found: dict = {}
        for a in frontier:
            for i in indices:
                m = ftilde(g.nodes[a].module, i)
                k = node_key(m)
                if k in g.index_of:
                    g.edges.append((a, i, g.index_of[k]))
                    continue
                if k not in found:
                    found[k] = _make_node(m, level, indices)
                g.edges.append((a, i, k))
        new = sorted(found.values(), key=lambda n: n.key)
        for n in new:
            g.index_of[n.key] = len(g.nodes)
            g.nodes.append(n)
        g.edges = [(s, i, g.index_of[t] if isinstance(t, tuple) else t) for s, i, t in g.edges]
        frontier = [g.index_of[n.key] for n in new]
    g.extra.pop("_fmap", None)
    return g


# --- cyclotomic projection --------------------------------------------------------------

def kept_by_criterion(m: GradedModule, lam: DominantWeight) -> bool:
    d = m.alg.datum
    for i in d.indices:
        e = eps_vee(m, i)
        if d.is_real(i) and e > lam[i]:
            return False
        if not d.is_real(i) and lam[i] == 0 and e > 0:
            return False
    return True


def killed_by_cyclotomic_ideal(m: GradedModule, lam: DominantWeight) -> bool:
    """Direct certificate: ``x_1^{lambda_{j_1}} 1_j`` acts as zero on every component."""
    if m.n == 0:
        return True
    x1 = m.gens[("x", 1)]
    for s, idx in m.components.items():
        p = la.select(x1, range(m.dim), idx)
        e = lam[s[0]]
        if e == 0:
            return False
        # x1 maps a component to itself
        sq = la.select(x1, idx, idx)
        acc = la.eye(len(idx))
        for _ in range(e):
            acc = acc * sq
        if not la.is_zero(acc):
            return False
    return True


def project_cyclotomic(m: GradedModule, lam: DominantWeight, certify: bool = True) -> bool:
    """``True`` (kept) when ``m`` is a module over the cyclotomic quotient."""
    kept = kept_by_criterion(m, lam)
    if certify and kept != killed_by_cyclotomic_ideal(m, lam):
        raise NotCertified("cyclotomic criterion disagrees with the direct check")
    return kept


def blambda_generate(alg: KlrAlgebra, lam: DominantWeight, depth: int,
                     indices: Sequence[str] | None = None) -> CrystalGraph:
    """Breadth-first generation of the projected crystal for the dominant weight ``lam``."""
    _check_depth(alg, depth)
    d = alg.datum
    indices = tuple(indices) if indices else d.indices
    root = _make_node(unit_module(alg), 0, indices)
    g = CrystalGraph(alg, [root], [], {root.key: 0}, indices, lam=lam)
    frontier = [0]
    for level in range(1, depth + 1):
        found: dict = {}
        pending = []
        for a in frontier:
            for i in indices:
                m = ftilde(g.nodes[a].module, i)
                if not project_cyclotomic(m, lam):
                    continue
                k = node_key(m)
                if k not in g.index_of and k not in found:
                    found[k] = _make_node(m, level, indices)
                pending.append((a, i, k))
        for n in sorted(found.values(), key=lambda n: n.key):
            g.index_of[n.key] = len(g.nodes)
            g.nodes.append(n)
        g.edges.extend((a, i, g.index_of[k]) for a, i, k in pending)
        frontier = [g.index_of[k] for k in sorted(found)]
    data = {}
    for n in g.nodes:
        per = {}
        for i in indices:
            wt = g.wt_i(n, i)
            if d.is_real(i):
                e = n.eps[i]
                per[i] = {"eps": e, "phi": phi_lambda(n.module, i, lam, wt + e + 1), "wt": wt}
            else:
                per[i] = {"eps": 0, "phi": wt, "wt": wt}
        data[n.key] = per
    g.extra["lambda_data"] = data
    return g


def phi_lambda(m: GradedModule, i: str, lam: DominantWeight, bound: int) -> int:
    """``max{k : pr f_i^k M != 0}`` (real ``i``), searching up to ``bound`` steps."""
    k = 0
    cur = m
    while k < max(bound, 0):
        cur = ftilde(cur, i)
        if not project_cyclotomic(cur, lam):
            return k
        k += 1
    return k


# --- Grothendieck group level ----------------------------------------------------------------

def decompose_in_g0(chi: Mapping, irreducibles: Sequence[Mapping]) -> list:
    """Solve ``chi = sum m_b ch(S_b)`` with Laurent polynomial multiplicities.

    Multiplicities are assumed to have nonnegative coefficients, which bounds
    their degree ranges.  Returns one ``LaurentPoly`` per irreducible.
    """
    chi = {k: v for k, v in chi.items() if v}
    if not chi:
        return [LaurentPoly() for _ in irreducibles]
    lo = min(v.low() for v in chi.values())
    hi = max(v.high() for v in chi.values())
    unknowns = []
    for b, ch in enumerate(irreducibles):
        clo = min(v.low() for v in ch.values() if v)
        chi_ = max(v.high() for v in ch.values() if v)
        for s in range(lo - clo, hi - chi_ + 1):
            unknowns.append((b, s))
    rows_idx: dict = {}
    entries: dict = {}
    for u, (b, s) in enumerate(unknowns):
        for seq, poly in irreducibles[b].items():
            for e, c in poly.items():
                r = rows_idx.setdefault((seq, e + s), len(rows_idx))
                entries[(r, u)] = c
    for seq, poly in chi.items():
        for e, _ in poly.items():
            rows_idx.setdefault((seq, e), len(rows_idx))
    nr = len(rows_idx)
    rhs = {}
    for seq, poly in chi.items():
        for e, c in poly.items():
            rhs[rows_idx[(seq, e)]] = c
    nu = len(unknowns)
    aug = la.from_sparse(nr, nu + 1, {**entries, **{(r, nu): c for r, c in rhs.items()}})
    red, piv = la.rref(aug)
    if nu in piv:
        raise IncompleteBasis("character is not a combination of the given irreducibles")
    if len(piv) < nu:
        raise IncompleteBasis("irreducible characters are not independent over the given range")
    sol = {}
    for r, p in enumerate(piv):
        sol[unknowns[p]] = la.to_fraction(red[r, nu])
    out = []
    for b in range(len(irreducibles)):
        out.append(LaurentPoly({s: c for (bb, s), c in sol.items() if bb == b and c}))
    return out


def char_e_vee(m: GradedModule, i: str) -> dict:
    return forget_head(m, i).character()

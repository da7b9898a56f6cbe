"""Command line entry point: ``klrcrystal <group> <verb> [flags]``.

Exit codes: 0 success, 1 failed verification, 2 usage, 3 invalid datum or
dominant weight, 4 file system trouble.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .cartan import DatumError, DominantWeight, RootWeight, UnknownIndex, index_class, validate_datum
from .crystal import DepthCapExceeded, binf_generate, blambda_generate
from .klr import DEFAULT_HT_CAP, HtCapExceeded, KlrAlgebra, Preset
from .modules import char_to_json, head, induce, normalize_char, one_strand, simple_tower
from .presets import ALL_PRESETS, preset_json
from .qpoly import DEFAULT_ORDER

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INVALID, EXIT_IO = 0, 1, 2, 3, 4

VERBS = {
    "datum": ("validate",),
    "uq": ("rank", "gram"),
    "klr": ("dim", "check"),
    "module": ("char",),
    "crystal": ("binf", "blambda"),
    "cyclo": ("dim", "sl2check"),
    "verify": ("all",),
}
NEEDS_DATUM = {(g, v) for g, vs in VERBS.items() for v in vs} - {("verify", "all")}


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    group: str
    verb: str
    datum: object | None
    preset: Preset
    order: int
    depth: int
    ht_cap: int
    lam: DominantWeight | None
    out: Path | None
    seed: int
    nu: RootWeight | None
    word: str | None
    form: str
    only: list[int] | None

    def algebra(self) -> KlrAlgebra:
        return KlrAlgebra(self.datum, self.preset, ht_cap=self.ht_cap)


# --- parsing ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    from .verify import DEFAULT_SEED

    p = argparse.ArgumentParser(prog="klrcrystal",
                                description="Quiver Hecke algebras, crystals and cyclotomic quotients.")
    p.add_argument("group", choices=sorted(VERBS))
    p.add_argument("verb")
    p.add_argument("--datum", help=f"datum JSON file or preset name ({', '.join(ALL_PRESETS)})")
    p.add_argument("--preset", choices=[x.value for x in Preset], default="standard",
                   help="relation preset")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER, help="series truncation order")
    p.add_argument("--depth", type=int, default=3, help="crystal search depth")
    p.add_argument("--ht-cap", type=int, default=DEFAULT_HT_CAP, help="largest height allowed")
    p.add_argument("--lambda", dest="lam", metavar="FILE", help="dominant weight JSON file")
    p.add_argument("--out", help="directory for exported files")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized checks")
    p.add_argument("--nu", help='root lattice vector, e.g. "i:2,j:1"')
    p.add_argument("--word", help='modules to induce, e.g. "i,j,i2" (i2 is V(i^2))')
    p.add_argument("--form", choices=["kashiwara", "lusztig"], default="kashiwara")
    p.add_argument("--only", help="comma separated check numbers for verify all")
    return p


def _read_json(path: str, what: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {what} {path}: {exc.strerror}", EXIT_IO) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"{what} {path} is not valid JSON: {exc}", EXIT_INVALID) from None


def load_datum_arg(arg: str):
    raw = preset_json(arg) if arg in ALL_PRESETS else _read_json(arg, "datum")
    try:
        return validate_datum(raw)
    except DatumError as exc:
        raise CliError(f"invalid datum: {exc}", EXIT_INVALID) from None


def load_lambda(path: str, datum) -> DominantWeight:
    raw = _read_json(path, "dominant weight")
    if isinstance(raw, dict) and "lambda" in raw:
        raw = raw["lambda"]
    if not isinstance(raw, dict):
        raise CliError("dominant weight must be a JSON object mapping indices to integers", EXIT_INVALID)
    for i, v in raw.items():
        if not isinstance(v, int) or isinstance(v, bool):
            raise CliError(f"dominant weight entry {i} is not an integer", EXIT_INVALID)
        if v < 0:
            raise CliError(f"dominant weight entry {i} is negative ({v})", EXIT_INVALID)
    if datum is not None:
        unknown = [i for i in raw if i not in datum.indices]
        if unknown:
            raise CliError(f"dominant weight entry {unknown[0]} is not an index of the datum", EXIT_INVALID)
    return DominantWeight(raw)


def parse_nu(text: str, datum) -> RootWeight:
    coords = {}
    for part in filter(None, (x.strip() for x in text.split(","))):
        i, _, k = part.partition(":")
        i = i.strip()
        try:
            v = int(k) if k else 1
        except ValueError:
            raise CliError(f"bad --nu entry {part!r}", EXIT_USAGE) from None
        if v < 0:
            raise CliError(f"--nu entry {i} is negative", EXIT_USAGE)
        if i not in datum.indices:
            raise CliError(f"--nu mentions unknown index {i!r}", EXIT_USAGE)
        coords[i] = coords.get(i, 0) + v
    return RootWeight(coords)


def parse_inputs(argv: Sequence[str]) -> RunConfig:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        raise CliError("", EXIT_USAGE if exc.code else EXIT_OK) from None
    if ns.verb not in VERBS[ns.group]:
        raise CliError(f"unknown verb {ns.group} {ns.verb}; expected one of {', '.join(VERBS[ns.group])}\n"
                       + parser.format_usage(), EXIT_USAGE)
    for flag in ("order", "depth", "ht_cap"):
        if getattr(ns, flag) < 0:
            raise CliError(f"--{flag.replace('_', '-')} must be non-negative", EXIT_USAGE)
    if (ns.group, ns.verb) in NEEDS_DATUM and not ns.datum:
        raise CliError(f"{ns.group} {ns.verb} needs --datum\n" + parser.format_usage(), EXIT_USAGE)
    datum = load_datum_arg(ns.datum) if ns.datum else None
    lam = load_lambda(ns.lam, datum) if ns.lam else None
    nu = parse_nu(ns.nu, datum) if ns.nu and datum is not None else None
    only = None
    if ns.only:
        try:
            only = [int(x) for x in ns.only.split(",")]
        except ValueError:
            raise CliError("--only takes comma separated integers", EXIT_USAGE) from None
    out = Path(ns.out) if ns.out else None
    return RunConfig(ns.group, ns.verb, datum, Preset(ns.preset), ns.order, ns.depth, ns.ht_cap,
                     lam, out, ns.seed, nu, ns.word, ns.form, only)


# --- output -----------------------------------------------------------------------------

def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def export_artifacts(cfg: RunConfig, files: dict[str, str]):
    if cfg.out is None:
        return
    try:
        cfg.out.mkdir(parents=True, exist_ok=True)
        for name, text in sorted(files.items()):
            (cfg.out / name).write_text(text)
    except OSError as exc:
        raise CliError(f"cannot write to {cfg.out}: {exc.strerror}", EXIT_IO) from None


def _need(value, flag: str, cfg: RunConfig):
    if value is None:
        raise CliError(f"{cfg.group} {cfg.verb} needs {flag}", EXIT_USAGE)
    return value


# --- verbs ------------------------------------------------------------------------------

def cmd_datum_validate(cfg: RunConfig) -> int:
    d = cfg.datum
    info = d.to_json()
    info["classes"] = {i: index_class(d, i).value for i in d.indices}
    info["symmetrized"] = [[d.form(i, j) for j in d.indices] for i in d.indices]
    print(dumps(info), end="")
    export_artifacts(cfg, {"datum.json": dumps(info)})
    return EXIT_OK


def cmd_uq_rank(cfg: RunConfig) -> int:
    from .quantum import weight_space_rank

    nu = _need(cfg.nu, "--nu", cfg)
    print(weight_space_rank(cfg.datum, nu))
    return EXIT_OK


def cmd_uq_gram(cfg: RunConfig) -> int:
    from .quantum import gram_matrix

    nu = _need(cfg.nu, "--nu", cfg)
    words, g = gram_matrix(cfg.datum, nu, cfg.form)
    out = {"form": cfg.form, "words": ["".join(w) for w in words],
           "matrix": [[str(x) for x in row] for row in g]}
    print(dumps(out), end="")
    export_artifacts(cfg, {"gram.json": dumps(out)})
    return EXIT_OK


def cmd_klr_dim(cfg: RunConfig) -> int:
    nu = _need(cfg.nu, "--nu", cfg)
    alg = cfg.algebra()
    seqs = alg.sequences(nu)
    table = {}
    for a in seqs:
        for b in seqs:
            series = alg.graded_dim_pair(a, b, cfg.order)
            key = f"{''.join(a)}|{''.join(b)}"
            table[key] = {str(e): str(series.coeff(e)) for e in range(series.low, series.order + 1)
                          if series.coeff(e)}
            print(f"{''.join(a)} {''.join(b)}: {series}")
    export_artifacts(cfg, {"dims.json": dumps({"order": cfg.order, "dims": table})})
    return EXIT_OK


def cmd_klr_check(cfg: RunConfig) -> int:
    """Idempotents plus seeded associativity and anti-involution fuzzing on one weight."""
    import random

    from .verify import fuzz_case

    nu = _need(cfg.nu, "--nu", cfg)
    alg = cfg.algebra()
    rng = random.Random(cfg.seed)
    fails = []
    cases = 100
    for k in range(cases):
        fails.extend(f"case {k}: {f}" for f in fuzz_case(alg, nu, rng))
    for i, n in nu.coords.items():
        if cfg.datum.is_real(i):
            for m in range(1, min(n, 3) + 1):
                e = alg.nilhecke_idempotent(i, m)
                if e * e != e:
                    fails.append(f"e_({i},{m}) not idempotent")
    for f in fails:
        print("FAIL", f)
    print(f"{cases} fuzz cases (seed {cfg.seed}), {len(fails)} failures")
    return EXIT_FAIL if fails else EXIT_OK


def _module_from_word(alg: KlrAlgebra, word: str):
    parts = [w.strip() for w in word.split(",") if w.strip()]
    mods = []
    for p in parts:
        i, n = p[0], p[1:]
        if i not in alg.datum.indices:
            raise CliError(f"--word mentions unknown index {i!r}", EXIT_USAGE)
        mods.append(simple_tower(alg, i, int(n)) if n else one_strand(alg, i))
    if not mods:
        raise CliError("--word is empty", EXIT_USAGE)
    return mods[0] if len(mods) == 1 else induce(*mods)


def cmd_module_char(cfg: RunConfig) -> int:
    alg = cfg.algebra()
    chars = {}
    if cfg.word:
        m = _module_from_word(alg, cfg.word)
        chars["induced"] = char_to_json(m.character())
        h, simple = head(m)
        chars["head"] = char_to_json(h.character())
        chars["head_simple"] = simple
    else:
        nu = _need(cfg.nu, "--nu or --word", cfg)
        g = binf_generate(alg, nu.ht)
        for k, node in enumerate(g.at_weight(nu)):
            chars[f"irreducible_{k}"] = char_to_json(normalize_char(node.character))
    text = dumps(chars)
    print(text, end="")
    export_artifacts(cfg, {"chars.json": text})
    return EXIT_OK


def _emit_graph(cfg: RunConfig, g) -> int:
    dot = g.to_dot()
    print(dot, end="")
    export_artifacts(cfg, {"graph.dot": dot, "graph.json": dumps(g.to_json())})
    return EXIT_OK


def cmd_crystal_binf(cfg: RunConfig) -> int:
    alg = KlrAlgebra(cfg.datum, Preset.STANDARD, ht_cap=cfg.ht_cap)
    return _emit_graph(cfg, binf_generate(alg, cfg.depth))


def cmd_crystal_blambda(cfg: RunConfig) -> int:
    lam = _need(cfg.lam, "--lambda", cfg)
    alg = KlrAlgebra(cfg.datum, Preset.STANDARD, ht_cap=cfg.ht_cap)
    return _emit_graph(cfg, blambda_generate(alg, lam, cfg.depth))


def cmd_cyclo_dim(cfg: RunConfig) -> int:
    from .cyclotomic import cyclo

    lam = _need(cfg.lam, "--lambda", cfg)
    nu = _need(cfg.nu, "--nu", cfg)
    c = cyclo(cfg.algebra(), lam, nu)
    rep = c.report()
    if not c.certified:
        print("quotient not certified finite dimensional below the degree cap")
        export_artifacts(cfg, {"cyclo.json": dumps(rep)})
        return EXIT_FAIL
    print(c.graded_dim())
    export_artifacts(cfg, {"cyclo.json": dumps(rep)})
    return EXIT_OK


def cmd_cyclo_sl2check(cfg: RunConfig) -> int:
    from .cyclotomic import UncertifiedAlgebra, cyclo, irreducibles, sl2_dim_check

    lam = _need(cfg.lam, "--lambda", cfg)
    nu = _need(cfg.nu, "--nu", cfg)
    c = cyclo(cfg.algebra(), lam, nu)
    rows = []
    if not c.certified:
        print("undefined: quotient not certified finite dimensional")
        return EXIT_OK
    if c.is_zero():
        print("quotient is zero; nothing to check")
        return EXIT_OK
    fails = 0
    for k, m in enumerate([c.regular_module()] + irreducibles(c)):
        name = "regular" if k == 0 else f"irreducible_{k - 1}"
        for i in cfg.datum.indices:
            try:
                r = sl2_dim_check(m, i, lam)
            except UncertifiedAlgebra:
                print(f"{name} {i}: undefined")
                rows.append({"module": name, "index": i, "status": "undefined"})
                continue
            fails += not r.ok
            print(f"{name} {i}: mu={r.mu} {'ok' if r.ok else 'FAIL'} lhs={r.lhs} rhs={r.rhs}")
            rows.append({"module": name, "index": i, "mu": r.mu, "ok": r.ok,
                         "lhs": str(r.lhs), "rhs": str(r.rhs)})
    export_artifacts(cfg, {"sl2check.json": dumps(rows)})
    return EXIT_FAIL if fails else EXIT_OK


def cmd_verify_all(cfg: RunConfig) -> int:
    from .verify import run_all

    results = run_all(seed=cfg.seed, only=cfg.only, progress=lambda r: print(r.line(), flush=True))
    report = {"seed": cfg.seed, "checks": [r.to_json() for r in results],
              "passed": all(r.passed for r in results)}
    export_artifacts(cfg, {"report.json": dumps(report)})
    return EXIT_OK if report["passed"] else EXIT_FAIL


COMMANDS = {
    ("datum", "validate"): cmd_datum_validate,
    ("uq", "rank"): cmd_uq_rank,
    ("uq", "gram"): cmd_uq_gram,
    ("klr", "dim"): cmd_klr_dim,
    ("klr", "check"): cmd_klr_check,
    ("module", "char"): cmd_module_char,
    ("crystal", "binf"): cmd_crystal_binf,
    ("crystal", "blambda"): cmd_crystal_blambda,
    ("cyclo", "dim"): cmd_cyclo_dim,
    ("cyclo", "sl2check"): cmd_cyclo_sl2check,
    ("verify", "all"): cmd_verify_all,
}


def run_command(cfg: RunConfig) -> int:
    try:
        return COMMANDS[(cfg.group, cfg.verb)](cfg)
    except (DepthCapExceeded, HtCapExceeded) as exc:
        raise CliError(str(exc), EXIT_USAGE) from None
    except UnknownIndex as exc:
        raise CliError(f"unknown index: {exc}", EXIT_USAGE) from None


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        return run_command(parse_inputs(argv))
    except CliError as exc:
        if str(exc):
            print(f"klrcrystal: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())

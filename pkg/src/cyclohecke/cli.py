"""Command line interface: values, tables and verification suites.

Exit status: 0 ok, 1 verification failure, 2 usage error, 3 internal
consistency error.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
from math import prod
from pathlib import Path

from . import characters, formulas, oracle
from .characters import CharTable, SizeMismatch, chi, chi_table
from .ring import CyclotomicNumber, LaurentPoly, NonzeroRemainder, specialize_unity
from .shapes import (
    ParseError,
    format_multipartition,
    mp_length,
    multipartitions,
    parse_multipartition,
)

FORMAT_VERSION = 1
ORDER = "canonical-v1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

ENGINES = {
    "mn": characters.chi,
    "dual": characters.chi_dual,
    "tableau": characters.chi_tableau_sum,
    "oracle": oracle.oracle_chi,
    "lpar": formulas.lpar_chi,
}


class CacheVersionMismatch(Exception):
    pass


class UsageError(Exception):
    pass


def code_hash() -> str:
    """Digest of the modules that determine character values."""
    h = hashlib.sha256()
    here = Path(__file__).parent
    for name in ("ring.py", "shapes.py", "characters.py"):
        h.update((here / name).read_bytes())
    return h.hexdigest()[:16]


def order_hash(m: int, n: int) -> str:
    keys = "\n".join(format_multipartition(k) for k in multipartitions(n, m))
    return hashlib.sha256(keys.encode()).hexdigest()[:16]


def _mp_json(lam):
    return [list(c) for c in lam]


def _mp_from_json(obj):
    return tuple(tuple(c) for c in obj)


def _parse_mp(text: str, m: int):
    lam = parse_multipartition(text)
    if len(lam) != m:
        raise UsageError(f"{text!r} has {len(lam)} components, expected {m}")
    return lam


def _value_json(v):
    if isinstance(v, CyclotomicNumber):
        return {"zeta": [str(c) for c in v.coeffs]}
    return v.to_json()


def _value_str(v, names):
    if isinstance(v, LaurentPoly):
        return v.to_str(names)
    return str(v)


def _specialize_value(v: LaurentPoly, mode: str | None, m: int):
    if mode is None:
        return v
    t = CharTable(m, 0, [None])
    t.entries = {None: v}
    return formulas.specialize_character(t, mode).entries[None]


# table io

def table_to_json(table: CharTable, mode: str | None = None) -> str:
    doc = {
        "m": table.m,
        "n": table.n,
        "order": ORDER,
        "format_version": FORMAT_VERSION,
        "order_hash": order_hash(table.m, table.n),
    }
    if mode:
        doc["specialize"] = mode
    doc["rows"] = [
        {"lambda": _mp_json(lam), "mu": _mp_json(mu), "value": _value_json(v)}
        for lam, mu, v in table.rows()
    ]
    return json.dumps(doc, separators=(",", ":")) + "\n"


def table_from_json(text: str) -> CharTable:
    doc = json.loads(text)
    m, n = doc["m"], doc["n"]
    if doc.get("order") != ORDER or doc.get("order_hash") != order_hash(m, n):
        raise CacheVersionMismatch("table ordering does not match this version")
    if doc.get("specialize"):
        raise UsageError("specialized tables cannot be read back")
    table = CharTable(m, n, list(multipartitions(n, m)))
    for row in doc["rows"]:
        key = (_mp_from_json(row["lambda"]), _mp_from_json(row["mu"]))
        table.entries[key] = LaurentPoly.from_json(row["value"], m)
    return table


def _latex_value(s: str) -> str:
    import re

    s = re.sub(r"\^(-?\d+)", r"^{\1}", s)
    s = re.sub(r"u(\d+)", r"u_{\1}", s)
    return s.replace("*", " ")


def table_to_csv(table: CharTable, names) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["lambda", "mu", "value"])
    for lam, mu, v in table.rows():
        w.writerow([format_multipartition(lam), format_multipartition(mu), _value_str(v, names)])
    return buf.getvalue()


def table_to_latex(table: CharTable, names) -> str:
    cols = table.keys
    lines = ["\\begin{tabular}{l|" + "c" * len(cols) + "}"]
    lines.append(" & ".join([""] + [f"${format_multipartition(mu)}$" for mu in cols]) + " \\\\")
    lines.append("\\hline")
    for lam in table.keys:
        cells = [f"${format_multipartition(lam)}$"]
        cells += [f"${_latex_value(_value_str(table[lam, mu], names))}$" for mu in cols]
        lines.append(" & ".join(cells) + " \\\\")
    lines.append("\\end{tabular}")
    return "\n".join(lines) + "\n"


def _cache_doc(table: CharTable) -> str:
    doc = json.loads(table_to_json(table))
    doc["code_hash"] = code_hash()
    return json.dumps(doc, separators=(",", ":")) + "\n"


def load_cache(path: str, m: int, n: int) -> dict:
    p = Path(path)
    if not p.exists():
        return {}
    try:
        doc = json.loads(p.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise OSError(f"cannot read cache {path}: {exc}") from exc
    if (doc.get("format_version") != FORMAT_VERSION or doc.get("code_hash") != code_hash()
            or doc.get("m") != m or doc.get("n") != n):
        raise CacheVersionMismatch(f"cache {path} was written for a different version or table")
    return table_from_json(json.dumps(doc)).entries


def cmd_value(m: int, lam_text: str, mu_text: str, engine: str = "mn", mode: str | None = None) -> str:
    lam = _parse_mp(lam_text, m)
    mu = _parse_mp(mu_text, m)
    if engine not in ENGINES:
        raise UsageError(f"unknown engine {engine!r}")
    val = _specialize_value(ENGINES[engine](lam, mu), mode, m)
    return _value_str(val, formulas.variable_names(mode, m))


def cmd_table(m: int, n: int, fmt: str = "json", jobs: int = 1, cache: str | None = None,
              mode: str | None = None) -> str:
    known = load_cache(cache, m, n) if cache else {}
    table = chi_table(m, n, parallel=jobs, known=known)
    if cache:
        Path(cache).write_text(_cache_doc(table))
    if mode:
        table = formulas.specialize_character(table, mode)
    names = formulas.variable_names(mode, m)
    if fmt == "json":
        return table_to_json(table, mode)
    if fmt == "csv":
        return table_to_csv(table, names)
    if fmt == "latex":
        return table_to_latex(table, names)
    raise UsageError(f"unknown format {fmt!r}")


# verification suites; each yields (label, ok)

def _keys(m, n):
    return list(multipartitions(n, m))


def _pairs(m, n):
    ks = _keys(m, n)
    return [(a, b) for a in ks for b in ks]


def _label(*mps):
    return " ".join(format_multipartition(x) for x in mps)


def suite_oracle(m, n):
    for lam, mu in _pairs(m, n):
        yield _label(lam, mu), chi(lam, mu) == oracle.oracle_chi(lam, mu)


def suite_dual(m, n):
    for lam, mu in _pairs(m, n):
        yield _label(lam, mu), chi(lam, mu) == characters.chi_dual(lam, mu)


def suite_tableau(m, n):
    for lam, mu in _pairs(m, n):
        yield _label(lam, mu), chi(lam, mu) == characters.chi_tableau_sum(lam, mu)


def suite_pivot(m, n):
    for lam, mu in _pairs(m, n):
        ref = chi(lam, mu)
        for r, j in characters.legal_pivots(mu):
            yield f"{_label(lam, mu)} pivot ({r},{j})", characters.chi_at_pivot(lam, mu, r, j) == ref


def suite_regev(m, n):
    for mu in _keys(m, n):
        a = formulas.regev_value((1,) * m, (1,) * m, mu)
        yield _label(mu), a == formulas.hook_sum_lhs(mu) == formulas.hook_sum_rhs(mu)


def suite_hooksum(m, n):
    for mu in _keys(m, n):
        lhs = formulas.hook_sum_lhs(mu)
        yield _label(mu), lhs == formulas.hook_sum_rhs(mu)
        want = formulas.hook_sum_at_unity(mu)
        yield f"{_label(mu)} at q=1, u=zeta", specialize_unity(lhs, m) == CyclotomicNumber.const(m, want)


def suite_lpar(m, n):
    for lam, mu in _pairs(m, n):
        yield _label(lam, mu), formulas.lpar_chi(lam, mu) == chi(lam, mu)


def suite_bitrace(m, n):
    for mu, nu in _pairs(m, n):
        yield _label(mu, nu), formulas.mbtr_combinatorial(mu, nu) == formulas.mbtr_via_characters(mu, nu)


def suite_orthogonality(m, n):
    table = chi_table(m, n)
    spec = formulas.specialize_character(table, "reflection")
    from .ring import conj
    from .shapes import z_lambda

    for mu in table.keys:
        for nu in table.keys:
            acc = CyclotomicNumber.const(m, 0)
            for lam in table.keys:
                acc = acc + spec[lam, mu] * conj(spec[lam, nu])
            want = m ** mp_length(mu) * prod(z_lambda(c) for c in mu) if mu == nu else 0
            yield _label(mu, nu), acc == CyclotomicNumber.const(m, want)


SUITES = {
    "oracle": suite_oracle,
    "dual": suite_dual,
    "tableau": suite_tableau,
    "pivot": suite_pivot,
    "regev": suite_regev,
    "hooksum": suite_hooksum,
    "lpar": suite_lpar,
    "bitrace": suite_bitrace,
    "orthogonality": suite_orthogonality,
}


def cmd_verify(m: int, n: int, suite: str, out=None) -> int:
    out = out or sys.stdout
    names = list(SUITES) if suite == "all" else [suite]
    if any(s not in SUITES for s in names):
        raise UsageError(f"unknown suite {suite!r}")
    status = EXIT_OK
    for name in names:
        checked = 0
        failed = None
        for label, ok in SUITES[name](m, n):
            checked += 1
            if not ok:
                failed = label
                break
        if failed is None:
            print(f"{name}: PASS ({checked} checks, m={m}, n={n})", file=out)
        else:
            print(f"{name}: FAIL at {failed}", file=out)
            status = EXIT_FAIL
    return status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclohecke", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    spec_choices = ["reflection", "typeA", "typeB"]

    v = sub.add_parser("value", help="print one character value")
    v.add_argument("--m", type=int, required=True)
    v.add_argument("--lambda", dest="lam", required=True)
    v.add_argument("--mu", required=True)
    v.add_argument("--engine", choices=list(ENGINES), default="mn")
    v.add_argument("--specialize", choices=spec_choices)

    t = sub.add_parser("table", help="write the full character table")
    t.add_argument("--m", type=int, required=True)
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--format", choices=["json", "csv", "latex"], default="json")
    t.add_argument("--out")
    t.add_argument("--jobs", type=int, default=1)
    t.add_argument("--cache")
    t.add_argument("--specialize", choices=spec_choices)

    c = sub.add_parser("verify", help="run an identity suite")
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "m", 1) < 1 or getattr(args, "n", 0) < 0:
            raise UsageError("need m >= 1 and n >= 0")
        if args.command == "value":
            print(cmd_value(args.m, args.lam, args.mu, args.engine, args.specialize))
            return EXIT_OK
        if args.command == "table":
            if args.jobs < 1:
                raise UsageError("--jobs must be positive")
            text = cmd_table(args.m, args.n, args.format, args.jobs, args.cache, args.specialize)
            if args.out:
                Path(args.out).write_text(text)
            else:
                sys.stdout.write(text)
            return EXIT_OK
        return cmd_verify(args.m, args.n, args.suite)
    except (ParseError, SizeMismatch, UsageError, formulas.ModeMismatch,
            CacheVersionMismatch, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonzeroRemainder, oracle.NonIntegerCoefficient) as exc:
        print(f"internal consistency error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

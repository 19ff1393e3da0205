"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line with its runtime and budget. Run
``python3 tests/test_acceptance.py`` to get just those lines.
"""
import random
import time
from contextlib import contextmanager
from math import factorial, prod

import pytest

from cyclohecke import cli
from cyclohecke.characters import (
    chi,
    chi_at_pivot,
    chi_dual,
    chi_tableau_sum,
    clear_caches,
    legal_pivots,
    removals_multi,
)
from cyclohecke.formulas import (
    colored_removals,
    hook_sum_at_unity,
    hook_sum_lhs,
    hook_sum_rhs,
    inv_m,
    lpar_chi,
    mbtr_combinatorial,
    mbtr_via_characters,
    orthogonality_defects,
    padded_quotient_partition,
    qint,
    regev_value,
)
from cyclohecke.oracle import oracle_chi, sn_character
from cyclohecke.ring import CyclotomicNumber, LaurentPoly, exact_div_qfactor, rename_drop, specialize_unity, substitute
from cyclohecke.shapes import (
    boundary_sequence,
    canonical,
    is_hook,
    min_cross,
    multipartitions,
    num_syt,
    partition_from_boundary,
    partitions,
    quotient_compose,
    quotient_decompose,
    row_color,
)

_printer = None


@pytest.fixture(autouse=True)
def _console(capsys):
    global _printer

    def emit(line):
        with capsys.disabled():
            print("\n" + line)

    _printer = emit
    yield
    _printer = None


@contextmanager
def criterion(label, budget):
    """Time the block and print one line; the block sets state['ok'] and optionally state['note']."""
    clear_caches()
    state = {"ok": False, "note": ""}
    start = time.perf_counter()
    try:
        yield state
    finally:
        elapsed = time.perf_counter() - start
        ok = state["ok"] and elapsed < budget
        line = f"[{'PASS' if ok else 'FAIL'}] {label}: {elapsed:.2f}s (budget {budget:g}s)"
        if state["note"]:
            line += f" {state['note']}"
        (_printer or print)(line)
    assert state["ok"], state["note"]
    assert elapsed < budget


def keys(m, n):
    return list(multipartitions(n, m))


def pairs(m, n):
    ks = keys(m, n)
    return [(a, b) for a in ks for b in ks]


def upto(spec):
    for m, top in spec:
        for n in range(top + 1):
            yield m, n


def first_failure(checks):
    count = 0
    for label, ok in checks:
        count += 1
        if not ok:
            return count, label
    return count, None


def test_criterion_1_worked_example():
    with criterion("1 worked example", 1) as st:
        m = 2
        t = LaurentPoly.q(m, -2)
        u1, u2 = LaurentPoly.u(m, 1, 2), LaurentPoly.u(m, 2, 2)
        lam = ((2, 2), (4,))
        want = {
            ((1, 1), (4,)): (u1 * (1 - t) * (-t), 1),
            ((2,), (4,)): (u1 * (1 - t), 1),
            ((2, 2), (2,)): (u2 * (1 - t), 2),
            ((2, 1), (3,)): (u2 * (1 - t) ** 2, 2),
        }
        got = {}
        for step in removals_multi(lam, 2):
            w = LaurentPoly.u(m, step.s, 2) * (1 - t) ** step.cc * (-t) ** step.ht
            got[step.target] = (w, step.s)
        sub = ((2, 1), (3,))
        expansion = sum((w * chi(nu, sub) for nu, (w, _) in want.items()), LaurentPoly.const(0, m))
        expected = exact_div_qfactor(expansion.shift_q(2), 1)
        value = chi(lam, ((2, 1), (3, 2)))
        st["ok"] = got == want and value == expected and value == oracle_chi(lam, ((2, 1), (3, 2)))
        st["note"] = f"{len(got)} removals, {len(value.terms)}-term value"


def test_criterion_2_oracle_equivalence():
    with criterion("2 oracle equivalence", 300) as st:
        checks = ((f"m={m} {a} {b}", chi(a, b) == oracle_chi(a, b))
                  for m, n in upto([(1, 6), (2, 4), (3, 3)]) for a, b in pairs(m, n))
        count, bad = first_failure(checks)
        st["ok"] = bad is None
        st["note"] = f"{count} keys" + (f", first mismatch {bad}" if bad else "")


def test_criterion_3_rule_equivalence():
    with criterion("3 rule equivalence", 120) as st:
        def checks():
            for m, n in upto([(2, 3), (3, 2)]):
                for a, b in pairs(m, n):
                    ref = chi(a, b)
                    yield f"dual {a} {b}", chi_dual(a, b) == ref
                    yield f"tableau {a} {b}", chi_tableau_sum(a, b) == ref
            for m, n in upto([(2, 4)]):
                for a, b in pairs(m, n):
                    ref = chi(a, b)
                    for r, j in legal_pivots(b):
                        yield f"pivot ({r},{j}) {a} {b}", chi_at_pivot(a, b, r, j) == ref

        count, bad = first_failure(checks())
        st["ok"] = bad is None
        st["note"] = f"{count} checks" + (f", first mismatch {bad}" if bad else "")


def _first_tensor(m, n, j):
    return tuple((1,) * n if i == j - 1 else () for i in range(m))


def _first_tensor_literal(lam, j):
    m = len(lam)
    return LaurentPoly.monomial(m, 0, [j * sum(c) for c in lam], prod(num_syt(c) for c in lam))


def test_criterion_4_first_tensor_formula():
    with criterion("4 closed form chi(lam, eps1_j) = prod f u_i^{j|lam_i|}", 30) as st:
        checks = ((f"{lam} j={j}", chi(lam, _first_tensor(m, n, j)) == _first_tensor_literal(lam, j))
                  for m, n in upto([(1, 4), (2, 4), (3, 4)]) for lam in keys(m, n) for j in range(1, m + 1))
        total, fails = 0, []
        for label, ok in checks:
            total += 1
            if not ok:
                fails.append(label)
        st["ok"] = not fails
        st["note"] = f"{total - len(fails)}/{total} hold" + (f", first mismatch {fails[0]}" if fails else "")


def test_criterion_4_first_tensor_with_multinomial():
    # the same values with the multinomial n!/prod|lam_i|! that counts interleavings of the components
    with criterion("4 (supplement) eps1_j formula with multinomial factor", 30) as st:
        def checks():
            for m, n in upto([(1, 4), (2, 4), (3, 4)]):
                for lam in keys(m, n):
                    mult = factorial(n) // prod(factorial(sum(c)) for c in lam)
                    for j in range(1, m + 1):
                        yield f"{lam} j={j}", chi(lam, _first_tensor(m, n, j)) == _first_tensor_literal(lam, j).scale(mult)

        count, bad = first_failure(checks())
        st["ok"] = bad is None
        st["note"] = f"{count} checks" + (f", first mismatch {bad}" if bad else "")


def test_criterion_4_hook_formula():
    with criterion("4 closed form chi(lam, epsn_j) hook formula", 30) as st:
        def expected(lam, n, j):
            m = len(lam)
            if n == 0:
                return LaurentPoly.const(1, m)
            if not all(is_hook(c) for c in lam):
                return LaurentPoly.const(0, m)
            t = LaurentPoly.q(m, -2)
            L = sum(1 for c in lam if c)
            s = max(i for i, c in enumerate(lam) if c)
            b = sum(len(c) - 1 for c in lam if c)
            u = [0] * m
            u[s] = j
            return LaurentPoly.monomial(m, n - 1, u) * (1 - t) ** (L - 1) * (-t) ** b

        def checks():
            for m, n in upto([(1, 4), (2, 4), (3, 4)]):
                for lam in keys(m, n):
                    for j in range(1, m + 1):
                        mu = tuple((n,) if i == j - 1 and n else () for i in range(m))
                        yield f"{lam} j={j}", chi(lam, mu) == expected(lam, n, j)

        count, bad = first_failure(checks())
        st["ok"] = bad is None
        st["note"] = f"{count} checks" + (f", first mismatch {bad}" if bad else "")


def test_criterion_5_regev_chain():
    with criterion("5 Regev chain", 180) as st:
        def checks():
            for m, n in upto([(1, 5), (2, 5), (3, 5)]):
                for mu in keys(m, n):
                    lhs = hook_sum_lhs(mu)
                    yield f"chain {mu}", regev_value((1,) * m, (1,) * m, mu) == lhs == hook_sum_rhs(mu)
                    want = CyclotomicNumber.const(m, hook_sum_at_unity(mu))
                    yield f"unity {mu}", specialize_unity(lhs, m) == want
            # single colour: every hook carries 2^L = 2, and the character sum is
            # 2^{l-1} prod [mu_i] after normalizing by q^{n - l(mu)}
            for n in range(1, 6):
                for mu in partitions(n):
                    plain = rename_drop(substitute(hook_sum_lhs((mu,)), {"u1": 1}), ())
                    want = LaurentPoly.const(2 ** (len(mu) - 1), 0)
                    for part in mu:
                        want = want * qint(part, -LaurentPoly.q(0, -2))
                    yield f"type A {mu}", plain == want.shift_q(n - len(mu)).scale(2)

        count, bad = first_failure(checks())
        st["ok"] = bad is None
        st["note"] = f"{count} checks" + (f", first mismatch {bad}" if bad else "")


def _caption_exponents_multipartition(lam):
    out = []
    for a in removals_multi((lam[0],), 2):
        for b in removals_multi((lam[1],), 1):
            out.append((a.cc + b.cc, a.ht + b.ht))
    return sorted(out)


def _caption_exponents_partition(lam):
    big = padded_quotient_partition(lam)
    out = []
    for nu, c1, h1, i1 in colored_removals(big, 6, 1, 3):
        for _, c2, h2, i2 in colored_removals(nu, 3, 2, 3):
            out.append((c1 + c2, h1 - i1 + h2 - i2))
    return sorted(out)


def test_criterion_6_lpar():
    with criterion("6 LPAR", 180) as st:
        def checks():
            for m, n in upto([(2, 3), (3, 3)]):
                for a, b in pairs(m, n):
                    yield f"lpar {a} {b}", lpar_chi(a, b) == chi(a, b)
            lam = ((3, 1), (2, 1, 1), (2, 2))
            caption = sorted([(3, 0), (3, 0), (2, 0), (2, 0)])
            yield "removal branches, quotient side", _caption_exponents_multipartition(lam) == caption
            yield "removal branches, partition side", _caption_exponents_partition(lam) == caption
            for m in (2, 3):
                for n in range(9 // m + 1):
                    for quot in keys(m, n):
                        big = padded_quotient_partition(quot)
                        L = len(big)
                        sign = (-1) ** (inv_m(big, m, L) - inv_m((), m, L))
                        for mu_hat in partitions(n):
                            mu = ((),) * (m - 1) + (mu_hat,)
                            gamma = sn_character(canonical(big), tuple(m * x for x in mu_hat))
                            val = specialize_unity(chi(quot, mu), m)
                            yield f"sign law {quot} {mu_hat}", val == CyclotomicNumber.const(m, sign * gamma)

        count, bad = first_failure(checks())
        st["ok"] = bad is None
        st["note"] = f"{count} checks" + (f", first mismatch {bad}" if bad else "")


def test_criterion_7_bitrace():
    with criterion("7 bitrace and orthogonality", 300) as st:
        def checks():
            for m, n in upto([(1, 4), (2, 3)]):
                for a, b in pairs(m, n):
                    yield f"bitrace {a} {b}", mbtr_combinatorial(a, b) == mbtr_via_characters(a, b)
            for m, n in upto([(1, 3), (2, 3), (3, 3)]):
                defects = orthogonality_defects(m, n)
                yield f"orthogonality m={m} n={n} {defects[:1]}", not defects

        count, bad = first_failure(checks())
        st["ok"] = bad is None
        st["note"] = f"{count} checks" + (f", first mismatch {bad}" if bad else "")


def test_criterion_8_kernels():
    with criterion("8 combinatorial kernels", 30) as st:
        rng = random.Random(20261016)

        def checks():
            for n in range(13):
                for lam in partitions(n):
                    yield f"round trip {lam}", partition_from_boundary(boundary_sequence(lam)) == lam
            for _ in range(300):
                n = rng.randint(13, 20)
                lam = rng.choice(partitions(n))
                z, o = rng.randint(0, 4), rng.randint(0, 4)
                yield f"padded round trip {lam}", partition_from_boundary(boundary_sequence(lam, z, o)) == lam
            for m in (1, 2, 3):
                for n in range(5):
                    for quot in keys(m, n):
                        lam = quotient_compose(quot)
                        yield f"Psi {quot}", sum(lam) == m * n and quotient_decompose(lam, m) == quot
            yield "crossing example", min_cross((1, 2, 5, 1, 3, 2, 7), (2, 5, 1, 3, 2, 7, 1)) == 5
            yield "row colours", row_color((7, 7, 7, 6, 3, 3, 2, 1), 3, 9) == (1, 3, 2, 3, 2, 1, 2, 3)
            for m in (2, 3):
                for n in range(1, 4):
                    for quot in keys(m, n):
                        big = padded_quotient_partition(quot)
                        L = len(big)
                        for i in range(1, m + 1):
                            for k in range(1, n + 1):
                                for nu, _, _, crossing in colored_removals(big, k * m, i, m):
                                    diff = inv_m(big, m, L) - inv_m(nu, m, L)
                                    yield f"parity {quot} colour {i} size {k}", (diff - crossing) % 2 == 0

        count, bad = first_failure(checks())
        st["ok"] = bad is None
        st["note"] = f"{count} checks" + (f", first mismatch {bad}" if bad else "")


def test_criterion_9_determinism():
    with criterion("9 determinism, m=2 n=4 with 4 workers", 60) as st:
        start = time.perf_counter()
        four = cli.cmd_table(2, 4, jobs=4)
        first_run = time.perf_counter() - start
        clear_caches()
        one = cli.cmd_table(2, 4, jobs=1)
        clear_caches()
        again = cli.cmd_table(2, 4, jobs=4)
        rows = len(cli.table_from_json(four).entries)
        st["ok"] = four == one == again and rows == 400 and first_run < 60
        st["note"] = f"{rows} entries, 4-worker build {first_run:.2f}s, identical={four == one == again}"


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))

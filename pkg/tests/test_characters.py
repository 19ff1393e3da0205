from math import factorial, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclohecke.characters import (
    NotRibbon,
    chi,
    chi_at_pivot,
    chi_dual,
    chi_table,
    chi_tableau_sum,
    clear_caches,
    legal_pivots,
    move_components_check,
    removals_multi,
    tableau_weights,
    wt_skew,
)
from cyclohecke.ring import LaurentPoly, substitute
from cyclohecke.shapes import (
    SizeMismatch,
    SkewAnalysis,
    analyze_skew,
    contains,
    mp_length,
    multipartitions,
    num_syt,
    partitions,
)

t2 = LaurentPoly.q(2, -2)


def L_mumu(mu):
    return sum(i * len(c) for i, c in enumerate(mu, start=1))


# weights and removals

def test_weight_of_five_component_skew():
    lam = ((3, 2, 1), (3, 3, 1, 1), (), (2, 2, 2), (4,))
    mu = ((2, 1, 1), (2, 1, 1), (), (2, 1), (2,))
    skews = [analyze_skew(a, b) for a, b in zip(lam, mu)]
    t = LaurentPoly.q(5, -2)
    for r in (1, 3):
        want = LaurentPoly.u(5, 5, r) * LaurentPoly.q(5, -4) * (1 - t) ** 6
        assert wt_skew(skews, 5, r) == want


def test_weight_conventions():
    empty = [SkewAnalysis(True, 0, 0)] * 2
    assert wt_skew(empty, 0, 2) == 1
    cell = [analyze_skew((1,), ()), SkewAnalysis(True, 0, 0)]
    assert wt_skew(cell, 1, 1) == LaurentPoly.u(2, 1) * (1 - t2)
    with pytest.raises(NotRibbon):
        wt_skew([analyze_skew((2, 2), ())], 1, 1)


def test_removals_of_worked_example():
    steps = {s.target: (s.cc, s.ht, s.s) for s in removals_multi(((2, 2), (4,)), 2)}
    assert steps == {
        ((1, 1), (4,)): (1, 1, 1),
        ((2,), (4,)): (1, 0, 1),
        ((2, 2), (2,)): (1, 0, 2),
        ((2, 1), (3,)): (2, 0, 2),
    }


def test_removal_edge_cases():
    assert [tuple(s) for s in removals_multi(((1,), ()), 1)] == [(((), ()), 1, 0, 1)]
    assert list(removals_multi(((2, 2),), 4)) == []


# closed forms

def test_base_case():
    assert chi(((), ()), ((), ())) == 1
    assert chi_dual(((),), ((),)) == 1


@pytest.mark.parametrize("m,n", [(1, 4), (2, 3), (3, 3)])
def test_one_row_first_component(m, n):
    lam = ((n,),) + ((),) * (m - 1)
    for mu in multipartitions(n, m):
        want = LaurentPoly.monomial(m, n - mp_length(mu), (L_mumu(mu),) + (0,) * (m - 1))
        assert chi(lam, mu) == want
        assert chi_dual(lam, mu) == want


def test_small_values():
    assert chi(((1,), (1,)), ((), (1, 1))) == LaurentPoly.parse("2*u1^2*u2^2", 2)
    assert chi(((2,), (1,)), ((1, 1, 1), ())) == LaurentPoly.parse("3*u1^2*u2", 2)


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        chi(((1,),), ((2,),))
    with pytest.raises(SizeMismatch):
        chi_dual(((1,),), ((2,),))


# tableaux

def test_worked_tableau_weight():
    lam = ((4, 3), (2,), (1, 1))
    mu = ((3, 2), (4,), (2,))
    chain = [lam, ((4, 3), (1,), (1,)), ((3, 2), (), ()), ((2, 1), (), ()), ((), (), ())]
    t = LaurentPoly.q(3, -2)
    want = LaurentPoly.monomial(3, 0, (2, 0, 5)) * (-t) * (1 - t) ** 9
    weights = [w for c, w in tableau_weights(lam, mu) if c == chain]
    assert weights == [want]


def test_tableau_small():
    assert chi_tableau_sum(((1,),), ((1,),)) == LaurentPoly.u(1, 1)
    lam, mu = ((2,), (1,)), ((1,), (2,))
    assert chi_tableau_sum(lam, mu) == chi(lam, mu)
    lam, mu = ((1, 1), (1,)), ((1,), (1, 1))
    assert chi_dual(lam, mu) == chi(lam, mu)


# table

def test_table_edges():
    t = chi_table(1, 0)
    assert t.keys == [((),)]
    assert t[((),), ((),)] == 1
    t = chi_table(1, 2)
    assert substitute(t[((2,),), ((2,),)], {"u1": 1}) == LaurentPoly.q(1)
    assert substitute(t[((1, 1),), ((2,),)], {"u1": 1}) == -LaurentPoly.q(1, -1)


def test_table_parallel_matches_serial():
    serial = chi_table(2, 3)
    clear_caches()
    par = chi_table(2, 3, parallel=3)
    assert list(serial.rows()) == list(par.rows())


def test_table_reuses_known_entries():
    fake = LaurentPoly.const(42, 1)
    t = chi_table(1, 2, known={(((2,),), ((2,),)): fake})
    assert t[((2,),), ((2,),)] == fake


# move components

def test_move_components_examples():
    assert move_components_check(((1,), (1,)), 1, ((1,), (1,)))
    assert move_components_check(((), (2,)), 2, ((1,), (1,)))
    assert move_components_check(((), (), (1, 1)), 3, ((1,), (), (1,)))


@pytest.mark.parametrize("m,n", [(2, 3), (3, 2)])
def test_move_components_property(m, n):
    for lam in multipartitions(n, m):
        j = next((i for i, c in enumerate(lam, start=1) if c), 1)
        for mu in multipartitions(n, m):
            assert move_components_check(lam, j, mu)


# invariants

@pytest.mark.parametrize("m,n", [(1, 5), (2, 3), (3, 2)])
def test_pivot_independence(m, n):
    for lam in multipartitions(n, m):
        for mu in multipartitions(n, m):
            ref = chi(lam, mu)
            for r, j in legal_pivots(mu):
                assert chi_at_pivot(lam, mu, r, j) == ref


@pytest.mark.parametrize("m,n", [(1, 6), (2, 4), (3, 3)])
def test_integrality_and_degree_bounds(m, n):
    for lam in multipartitions(n, m):
        for mu in multipartitions(n, m):
            v = chi(lam, mu)
            assert v.coefficients_integral()
            if v.is_zero():
                continue
            d = n - mp_length(mu)
            lo, hi = v.q_range()
            assert -d <= lo and hi <= d
            # every monomial carries total colour weight L_mumu
            assert all(sum(k[1:]) == L_mumu(mu) for k in v.terms)


@pytest.mark.parametrize("m,n", [(2, 4), (3, 3)])
def test_first_tensor_top_coefficient(m, n):
    for lam in multipartitions(n, m):
        v = chi(lam, tuple((1,) * n if i == 0 else () for i in range(m)))
        mult = factorial(n) // prod(factorial(sum(c)) for c in lam)
        assert sum(v.terms.values()) == mult * prod(num_syt(c) for c in lam)


def _type_a_rule(lam, mu):
    """Type A rule from scratch: remove mu's last part as a generalized ribbon."""
    if not mu:
        return LaurentPoly.const(1, 0)
    k, rest = mu[-1], mu[:-1]
    q = LaurentPoly.q(0)
    t = LaurentPoly.q(0, -2)
    total = LaurentPoly.const(0, 0)
    for nu in partitions(sum(lam) - k):
        if not contains(lam, nu):
            continue
        sk = analyze_skew(lam, nu)
        if not sk.is_generalized_ribbon:
            continue
        coeff = q ** (k - 1) * (1 - t) ** (sk.cc - 1) * (-t) ** sk.ht
        total = total + coeff * _type_a_rule(nu, rest)
    return total


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.sampled_from(partitions(n)), st.sampled_from(partitions(n)))))
def test_type_a_structure(pair):
    from cyclohecke.ring import rename_drop

    lam, mu = pair
    got = rename_drop(substitute(chi((lam,), (mu,)), {"u1": 1}), ())
    assert got == _type_a_rule(lam, mu)

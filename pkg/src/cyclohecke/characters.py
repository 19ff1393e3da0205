"""Murnaghan-Nakayama engines for cyclotomic Hecke algebra characters.

Three independent routes to chi^lam_mu:

* ``chi``: remove one part of mu at a time, summing over generalized
  multi-ribbons (memoized);
* ``chi_tableau_sum``: enumerate whole removal chains (tableaux) and discharge
  the (q - q^-1) denominator once at the end;
* ``chi_dual``: strip the first row of the leftmost nonempty component of lam.

All values are LaurentPoly over m cyclotomic parameters.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, NamedTuple, Sequence

from .ring import LaurentPoly, exact_div_qfactor, lp_sum, substitute
from .shapes import (
    MultiPartition,
    SizeMismatch,
    SkewAnalysis,
    _skew_stats,
    compositions,
    mp_length,
    mp_size,
    multipartitions,
    subpartitions_with_size,
)


class NotRibbon(ValueError):
    pass


class RemovalStep(NamedTuple):
    target: MultiPartition
    cc: int
    ht: int
    s: int  # 1-based index of the rightmost nonempty skew component, 0 if none


Pivot = Callable[[MultiPartition], tuple[int, int]]


def _check_sizes(lam, mu):
    if len(lam) != len(mu):
        raise SizeMismatch(f"{lam} and {mu} have different numbers of components")
    if mp_size(lam) != mp_size(mu):
        raise SizeMismatch(f"|{lam}| != |{mu}|")


@lru_cache(maxsize=None)
def _t_powers(m: int, cc: int, ht: int) -> LaurentPoly:
    # (1 - t)^cc (-t)^ht with t = q^-2
    one_minus_t = LaurentPoly(m, {(0,) * (m + 1): 1, (-2,) + (0,) * m: -1})
    return (one_minus_t ** cc).shift_q(-2 * ht).scale((-1) ** ht)


def _u_power(m: int, s: int, r: int) -> tuple:
    u = [0] * m
    if s:
        u[s - 1] = r
    return tuple(u)


def wt_skew(skews: Sequence[SkewAnalysis], s: int, r: int, t: LaurentPoly | None = None) -> LaurentPoly:
    """u_s^r (1 - t)^cc (-t)^ht of a generalized multi-ribbon; 1 when all skews are empty."""
    m = len(skews)
    if any(not a.is_generalized_ribbon for a in skews):
        raise NotRibbon("a component contains a 2x2 block")
    cc = sum(a.cc for a in skews)
    ht = sum(a.ht for a in skews)
    if cc == 0:
        return LaurentPoly.const(1, m)
    u = LaurentPoly.monomial(m, 0, _u_power(m, s, r))
    if t is None:
        return _t_powers(m, cc, ht) * u
    return (1 - t) ** cc * (-t) ** ht * u


@lru_cache(maxsize=None)
def _component_removals(lam: tuple, k: int) -> tuple:
    """(nu, cc, ht) for nu inside lam with lam/nu a generalized ribbon of size k."""
    out = []
    for nu in subpartitions_with_size(lam, sum(lam) - k):
        block, cc, ht = _skew_stats(lam, nu)
        if not block:
            out.append((nu, cc, ht))
    return tuple(out)


@lru_cache(maxsize=None)
def _removals(lam: MultiPartition, k: int) -> tuple:
    m = len(lam)
    out = []
    for c in compositions(k, m):
        if any(ci > sum(li) for ci, li in zip(c, lam)):
            continue
        s = max((i + 1 for i in range(m) if c[i]), default=0)
        per = [_component_removals(lam[i], c[i]) for i in range(m)]
        for combo in itertools.product(*per):
            target = tuple(x[0] for x in combo)
            out.append(RemovalStep(target, sum(x[1] for x in combo), sum(x[2] for x in combo), s))
    return tuple(out)


def removals_multi(lam: MultiPartition, k: int) -> Iterator[RemovalStep]:
    """All nu inside lam with lam/nu a k-generalized multi-ribbon.

    Ordered by the component size vector (reverse lex) and then by the
    per-component targets.
    """
    return iter(_removals(tuple(tuple(c) for c in lam), k))


@lru_cache(maxsize=None)
def folded_coeff(m: int, k: int, cc: int, ht: int, s: int, r: int) -> LaurentPoly:
    """q^{k-1} (1-q^-2)^{cc-1} (-q^-2)^{ht} u_s^r, i.e. q^k/(q - q^-1) times the weight."""
    base = _t_powers(m, cc - 1, ht).shift_q(k - 1)
    return base * LaurentPoly.monomial(m, 0, _u_power(m, s, r))


def default_pivot(mu: MultiPartition) -> tuple[int, int]:
    """Last part of the rightmost nonempty component, as (r, j), both 1-based."""
    for r in range(len(mu), 0, -1):
        if mu[r - 1]:
            return r, len(mu[r - 1])
    raise ValueError("empty multipartition has no parts")


def legal_pivots(mu: MultiPartition) -> list[tuple[int, int]]:
    return [(r + 1, j + 1) for r in range(len(mu)) for j in range(len(mu[r]))]


def _drop_part(mu: MultiPartition, r: int, j: int) -> MultiPartition:
    comp = mu[r - 1]
    return mu[: r - 1] + (comp[: j - 1] + comp[j:],) + mu[r:]


_MEMO: dict = {}


def _expand(lam, mu, r, j, recurse) -> LaurentPoly:
    m = len(lam)
    k = mu[r - 1][j - 1]
    rest = _drop_part(mu, r, j)
    terms = []
    for step in _removals(lam, k):
        sub = recurse(step.target, rest)
        if sub.terms:
            terms.append(folded_coeff(m, k, step.cc, step.ht, step.s, r) * sub)
    return lp_sum(terms, m)


def chi(lam: MultiPartition, mu: MultiPartition, pivot: Pivot | None = None,
        memo: dict | None = None) -> LaurentPoly:
    """chi^lam_mu by the memoized Murnaghan-Nakayama recursion.

    A custom pivot gets its own memo unless one is passed explicitly, so
    values computed under different strategies never mix.
    """
    lam = tuple(tuple(c) for c in lam)
    mu = tuple(tuple(c) for c in mu)
    _check_sizes(lam, mu)
    if memo is None:
        memo = _MEMO if pivot is None else {}
    pick = pivot or default_pivot
    m = len(lam)

    def rec(lam, mu):
        key = (lam, mu)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if not any(mu):
            val = LaurentPoly.const(1, m)
        else:
            r, j = pick(mu)
            val = _expand(lam, mu, r, j, rec)
        memo[key] = val  # idempotent: any racing writer stores the same value
        return val

    return rec(lam, mu)


def chi_at_pivot(lam: MultiPartition, mu: MultiPartition, r: int, j: int) -> LaurentPoly:
    """Expand once at the part mu^(r)_j, then use the default recursion below."""
    _check_sizes(lam, mu)
    return _expand(tuple(lam), tuple(mu), r, j, chi)


# tableau sum

def tableau_weights(lam: MultiPartition, mu: MultiPartition) -> Iterator[tuple[list, LaurentPoly]]:
    """Yield (chain, wt) for every generalized multi-ribbon tableau of shape lam, content mu.

    The chain lists the shapes from lam down to the empty multipartition;
    parts of mu are peeled in the default pivot order.
    """
    lam = tuple(tuple(c) for c in lam)
    mu = tuple(tuple(c) for c in mu)
    _check_sizes(lam, mu)
    m = len(lam)

    def dfs(shape, content, chain, weight):
        if not any(content):
            yield chain, weight
            return
        r, j = default_pivot(content)
        k = content[r - 1][j - 1]
        rest = _drop_part(content, r, j)
        for step in _removals(shape, k):
            w = weight * _t_powers(m, step.cc, step.ht) * LaurentPoly.monomial(m, 0, _u_power(m, step.s, r))
            yield from dfs(step.target, rest, chain + [step.target], w)

    yield from dfs(lam, mu, [lam], LaurentPoly.const(1, m))


def chi_tableau_sum(lam: MultiPartition, mu: MultiPartition) -> LaurentPoly:
    """q^n (q - q^-1)^{-l(mu)} times the sum of all tableau weights."""
    m = len(lam)
    total = lp_sum((w for _, w in tableau_weights(lam, mu)), m)
    return exact_div_qfactor(total.shift_q(mp_size(mu)), mp_length(mu))


# dual rule

def _vertical_strips(lam: tuple, v: int) -> Iterator[tuple]:
    # drop the last cell of v distinct rows, keeping the result a partition
    for rows in itertools.combinations(range(len(lam)), v):
        rho = list(lam)
        for i in rows:
            rho[i] -= 1
        if all(a >= b for a, b in zip(rho, rho[1:])):
            yield tuple(x for x in rho if x > 0)


_DUAL_MEMO: dict = {}


def _dual_scaled(lam: MultiPartition, mu: MultiPartition) -> LaurentPoly:
    """(q - q^-1)^{l(mu)} chi^lam_mu via the dual recursion; always Laurent."""
    key = (lam, mu)
    hit = _DUAL_MEMO.get(key)
    if hit is not None:
        return hit
    m = len(lam)
    if not any(lam):
        val = LaurentPoly.const(1 if not any(mu) else 0, m)
        _DUAL_MEMO[key] = val
        return val
    j = next(i for i in range(m) if lam[i])
    first, tail = lam[j][0], lam[j][1:]
    parts = [(i, a) for i in range(m) for a in mu[i]]
    terms = []
    for tau in itertools.product(*(range(a + 1) for _, a in parts)):
        total = sum(tau)
        v = total - first
        if v < 0:
            continue
        ell = sum(1 for x in tau if x)
        big_l = sum(i + 1 for (i, a), x in zip(parts, tau) if x == a)
        rest = [[] for _ in range(m)]
        for (i, a), x in zip(parts, tau):
            if a > x:
                rest[i].append(a - x)
        rest_mp = tuple(tuple(sorted(c, reverse=True)) for c in rest)
        coeff = None
        for rho_j in _vertical_strips(tail, v):
            rho = ((),) * j + (rho_j,) + lam[j + 1:]
            sub = _dual_scaled(rho, rest_mp)
            if not sub.terms:
                continue
            if coeff is None:
                u = [0] * m
                u[j] = big_l
                coeff = (_t_powers(m, ell, 0).shift_q(total)
                         * LaurentPoly.monomial(m, 0, u, (-1) ** v))
            terms.append(coeff * sub)
    val = lp_sum(terms, m)
    _DUAL_MEMO[key] = val
    return val


def chi_dual(lam: MultiPartition, mu: MultiPartition) -> LaurentPoly:
    """chi^lam_mu by the dual rule, denominators discharged once at the top."""
    lam = tuple(tuple(c) for c in lam)
    mu = tuple(tuple(c) for c in mu)
    _check_sizes(lam, mu)
    return exact_div_qfactor(_dual_scaled(lam, mu), mp_length(mu))


# tables

@dataclass
class CharTable:
    m: int
    n: int
    keys: list = field(default_factory=list)
    entries: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.entries[key]

    def rows(self):
        """(lam, mu, value) in canonical order, lam major."""
        for lam in self.keys:
            for mu in self.keys:
                yield lam, mu, self.entries[lam, mu]


def _row_block(args):
    m, lams, keys = args
    return [((lam, mu), chi(lam, mu)) for lam in lams for mu in keys]


def chi_table(m: int, n: int, parallel: int = 1, known: dict | None = None) -> CharTable:
    """Full table over P_{n,m}.  Entries in ``known`` are reused as is."""
    keys = list(multipartitions(n, m))
    table = CharTable(m, n, keys)
    known = known or {}
    todo = [lam for lam in keys if any((lam, mu) not in known for mu in keys)]
    results: dict = {k: v for k, v in known.items() if k[0] in keys and k[1] in keys}
    if parallel <= 1 or len(todo) <= 1:
        for lam in todo:
            for mu in keys:
                if (lam, mu) not in results:
                    results[lam, mu] = chi(lam, mu)
    else:
        # strided split keeps per-worker cost balanced; the merge is keyed, so
        # the result does not depend on which worker finished first
        chunks = [todo[w::parallel] for w in range(parallel)]
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            for block in pool.map(_row_block, [(m, c, keys) for c in chunks if c]):
                for key, val in block:
                    results.setdefault(key, val)
    table.entries = {(lam, mu): results[lam, mu] for lam in keys for mu in keys}
    return table


def move_components_check(lam: MultiPartition, j: int, mu: MultiPartition) -> bool:
    """Check that moving lam^(j) to slot 1 and renaming u_1 -> u_j preserves chi."""
    lam = tuple(tuple(c) for c in lam)
    if any(lam[i] for i in range(j - 1)):
        raise ValueError("components before j must be empty")
    if j == 1:
        return True
    m = len(lam)
    moved = (lam[j - 1],) + ((),) * (j - 1) + lam[j:]
    lhs = chi(lam, mu)
    rhs = substitute(chi(moved, mu), {"u1": LaurentPoly.u(m, j)})
    return lhs == rhs


def clear_caches():
    _MEMO.clear()
    _DUAL_MEMO.clear()

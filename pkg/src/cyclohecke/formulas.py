"""Identities built on top of the character engines.

* Regev formula and the hook-sum identity;
* multiple bitrace via multimatrices and margin-constrained matrices;
* the eta algorithms on multipartitions and on single partitions with
  colored ribbons (the partition-side formula ``lpar_chi``);
* specializations to complex reflection groups and to types A and B.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb, prod
from typing import Iterator, Sequence

from .characters import CharTable, chi, removals_multi
from .ring import (
    CyclotomicNumber,
    LaurentPoly,
    conj,
    exact_div_qfactor,
    lp_sum,
    rename_drop,
    specialize_unity,
    substitute,
)
from .shapes import (
    SizeMismatch,
    _bits_to_partition,
    boundary_sequence,
    canonical,
    compositions,
    inv_count,
    is_hook,
    min_cross,
    mp_length,
    mp_size,
    multipartitions,
    pad,
    partitions,
    positive_compositions,
    quotient_boundary,
    row_color,
    z_lambda,
)


class ZeroRow(ValueError):
    pass


class MarginMismatch(ValueError):
    pass


class ModeMismatch(ValueError):
    pass


def _t(m: int) -> LaurentPoly:
    return LaurentPoly.q(m, -2)


def _one_minus_t_pow(m: int, e: int) -> LaurentPoly:
    return (1 - _t(m)) ** e


def _neg_t_pow(m: int, e: int) -> LaurentPoly:
    return LaurentPoly.monomial(m, -2 * e, (0,) * m, (-1) ** e)


# multimatrices

def u_weight(M: Sequence[Sequence[Sequence[int]]]) -> LaurentPoly:
    """prod_{i,j} u_{f_ij}^i, f_ij the rightmost nonzero column of row j of M^(i)."""
    m = len(M)
    ex = [0] * m
    for i, mat in enumerate(M, start=1):
        for row in mat:
            nz = [c for c, x in enumerate(row) if x]
            if not nz:
                raise ZeroRow(f"row {row} of component {i} is zero")
            ex[nz[-1]] += i
    return LaurentPoly.monomial(m, 0, ex)


def multimatrices_for(mu) -> Iterator[tuple]:
    """Every m-multimatrix whose j-th row of M^(r) is a composition of mu^(r)_j into m parts."""
    m = len(mu)
    rows = [(r, compositions(k, m)) for r, comp in enumerate(mu) for k in comp]
    for choice in itertools.product(*(opts for _, opts in rows)):
        mats = [[] for _ in range(m)]
        for (r, _), row in zip(rows, choice):
            mats[r].append(row)
        yield tuple(tuple(mat) for mat in mats)


# Regev formula and hook sums

def _super_pairs(p: int, kvec: Sequence[int], lvec: Sequence[int]):
    """Pairs (alpha; beta) of m-tuples of positive compositions with |alpha|+|beta| = p."""
    m = len(kvec)
    for sizes in compositions(p, 2 * m):
        opts = []
        for i in range(m):
            opts.append(list(positive_compositions(sizes[i], kvec[i])))
            opts.append(list(positive_compositions(sizes[m + i], lvec[i])))
        for combo in itertools.product(*opts):
            alpha = combo[0::2]
            beta = combo[1::2]
            yield alpha, beta


def _regev_row(p: int, r: int, kvec: tuple, lvec: tuple) -> LaurentPoly:
    m = len(kvec)
    terms = []
    for alpha, beta in _super_pairs(p, kvec, lvec):
        la = [len(a) for a in alpha]
        lb = [len(b) for b in beta]
        arrow = max(i + 1 for i in range(m) if la[i] + lb[i] > 0)
        total_len = sum(la) + sum(lb)
        bsize = sum(map(sum, beta))
        mult = prod(comb(kvec[i], la[i]) * comb(lvec[i], lb[i]) for i in range(m))
        if not mult:
            continue
        u = [0] * m
        u[arrow - 1] = r
        terms.append(_one_minus_t_pow(m, total_len - 1) * _neg_t_pow(m, bsize - sum(lb))
                     * LaurentPoly.monomial(m, 0, u, mult))
    return lp_sum(terms, m)


def regev_value(kvec: Sequence[int], lvec: Sequence[int], mu) -> LaurentPoly:
    """Character of the permutation super representation of dimension (k|l) at mu."""
    m = len(mu)
    kvec, lvec = tuple(kvec), tuple(lvec)
    n = mp_size(mu)
    acc = LaurentPoly.q(m, n - mp_length(mu))
    for r, comp in enumerate(mu, start=1):
        for p in comp:
            acc = acc * _regev_row(p, r, kvec, lvec)
    return acc


def hook_multipartitions(n: int, m: int) -> Iterator[tuple]:
    return (lam for lam in multipartitions(n, m) if all(is_hook(c) for c in lam))


def hook_sum_lhs(mu) -> LaurentPoly:
    """sum over hook multipartitions lam of 2^{L(lam)} chi^lam_mu."""
    mu = tuple(tuple(c) for c in mu)
    m = len(mu)
    terms = []
    for lam in hook_multipartitions(mp_size(mu), m):
        L = sum(1 for c in lam if c)
        terms.append(chi(lam, mu).scale(2 ** L))
    return lp_sum(terms, m)


def qint(k: int, base: LaurentPoly) -> LaurentPoly:
    """[k]_base = 1 + base + ... + base^{k-1}, with [0] = 1."""
    if k == 0:
        return LaurentPoly.const(1, base.m)
    acc = LaurentPoly.const(1, base.m)
    power = LaurentPoly.const(1, base.m)
    for _ in range(k - 1):
        power = power * base
        acc = acc + power
    return acc


def hook_sum_rhs(mu) -> LaurentPoly:
    """Multimatrix side of the hook-sum identity.

    Each M contributes u_M 2^{#M} q^{n-#M} (q - q^-1)^{#M - l(mu)} prod [m_ij]_{-q^-2},
    #M the number of nonzero entries.
    """
    mu = tuple(tuple(c) for c in mu)
    m = len(mu)
    n = mp_size(mu)
    ell = mp_length(mu)
    base = -_t(m)
    d = LaurentPoly.q(m) - LaurentPoly.q(m, -1)
    terms = []
    for M in multimatrices_for(mu):
        entries = [x for mat in M for row in mat for x in row]
        nz = sum(1 for x in entries if x)
        val = u_weight(M).scale(2 ** nz).shift_q(n - nz) * d ** (nz - ell)
        for x in entries:
            if x:
                val = val * qint(x, base)
        terms.append(val)
    return lp_sum(terms, m)


def hook_sum_at_unity(mu) -> int:
    """Value of the hook sum at q=1, u=zeta.

    Component r carries u^r, so only the last component (trivial colour)
    survives the sum over roots of unity.
    """
    m = len(mu)
    last = mu[-1]
    if any(mu[:-1]) or not all(x % 2 for x in last):
        return 0
    return (2 * m) ** len(last)


# multiple bitrace

def margin_matrices(row_sums: Sequence[int], col_sums: Sequence[int]) -> Iterator[tuple]:
    """Nonnegative integer matrices with the given margins, filled row by row."""
    if sum(row_sums) != sum(col_sums):
        raise MarginMismatch(f"{row_sums} and {col_sums} have different totals")
    rows, cols = len(row_sums), len(col_sums)

    def fill_row(target, budget, j):
        if j == cols - 1:
            if target <= budget[j]:
                yield (target,)
            return
        for x in range(min(target, budget[j]), -1, -1):
            for rest in fill_row(target - x, budget, j + 1):
                yield (x,) + rest

    def rec(i, budget):
        if i == rows:
            if not any(budget):
                yield ()
            return
        if cols == 0:
            if row_sums[i] == 0:
                yield from (((),) + tail for tail in rec(i + 1, budget))
            return
        for row in fill_row(row_sums[i], budget, 0):
            nb = tuple(b - x for b, x in zip(budget, row))
            for tail in rec(i + 1, nb):
                yield (row,) + tail

    yield from rec(0, tuple(col_sums))


def wt_q_matrix(A, base: LaurentPoly) -> LaurentPoly:
    """prod over entries of (a)_base = (base - 1)^2 [a]_{base^2}, with (0) = 1."""
    acc = LaurentPoly.const(1, base.m)
    sq = base * base
    for row in A:
        for a in row:
            if a:
                acc = acc * (base - 1) ** 2 * qint(a, sq)
    return acc


@lru_cache(maxsize=None)
def _margin_sum(rows: tuple, cols: tuple, m: int) -> LaurentPoly:
    # weights are invariant under row/column permutations and zero margins
    # force zero lines, so callers pass sorted positive margins
    base = _t(m)
    return lp_sum((wt_q_matrix(A, base) for A in margin_matrices(rows, cols)), m)


def _col(M, i):
    return [row[i] for mat in M for row in mat]


def mbtr_combinatorial(mu, nu) -> LaurentPoly:
    """sum_lam chi^lam_mu chi^lam_nu via pairs of multimatrices."""
    mu = tuple(tuple(c) for c in mu)
    nu = tuple(tuple(c) for c in nu)
    m = len(mu)
    n = mp_size(mu)
    if n != mp_size(nu):
        raise SizeMismatch(f"{mu} and {nu} have different sizes")
    Ms = [(M, u_weight(M)) for M in multimatrices_for(mu)]
    Ns = [(N, u_weight(N)) for N in multimatrices_for(nu)]
    terms = []
    for M, uM in Ms:
        for N, uN in Ns:
            val = LaurentPoly.const(1, m)
            for i in range(m):
                rs = tuple(sorted((x for x in _col(M, i) if x), reverse=True))
                cs = tuple(sorted((x for x in _col(N, i) if x), reverse=True))
                if sum(rs) != sum(cs):
                    val = None
                    break
                val = val * _margin_sum(rs, cs, m)
            if val is not None and not val.is_zero():
                terms.append(val * uM * uN)
    total = lp_sum(terms, m).shift_q(2 * n)
    return exact_div_qfactor(total, mp_length(mu) + mp_length(nu))


def mbtr_via_characters(mu, nu) -> LaurentPoly:
    m = len(mu)
    n = mp_size(mu)
    return lp_sum((chi(lam, mu) * chi(lam, nu) for lam in multipartitions(n, m)), m)


# eta algorithms

def tau_lists(part_list: Sequence[int], m: int) -> Iterator[tuple]:
    """P_m of a partition: tuples (tau^(1), ...) with tau^(j) |- part_j and at most m parts."""
    opts = [[t for t in partitions(k) if len(t) <= m] for k in part_list]
    return itertools.product(*opts)


def arrangements(tau: Sequence[int], m: int, distinct: bool = True) -> list[tuple]:
    """Size vectors (tau_{sigma(1)}, ..., tau_{sigma(m)}) over sigma in S_m.

    With ``distinct`` each vector appears once; otherwise once per sigma.
    """
    padded = tuple(tau) + (0,) * (m - len(tau))
    perms = [tuple(padded[s] for s in sigma) for sigma in itertools.permutations(range(m))]
    if distinct:
        return sorted(set(perms), reverse=True)
    return perms


def _step_factor(m, r, mm, cc, ht):
    u = [0] * m
    u[mm - 1] = r
    return _one_minus_t_pow(m, cc - 1) * _neg_t_pow(m, ht) * LaurentPoly.monomial(m, 0, u)


def _as_r_list(tau_list, r):
    if isinstance(r, int):
        return [r] * len(tau_list)
    return list(r)


def eta_multipartition_branches(lam, tau_list, r, distinct: bool = True):
    """Yield (final multipartition, factor) for each completed branch of the eta algorithm.

    ``r`` is either one exponent for every step or one per entry of tau_list.
    """
    lam = tuple(tuple(c) for c in lam)
    m = len(lam)
    rs = _as_r_list(tau_list, r)

    def rec(shape, t, eps):
        if t == 0:
            yield shape, eps
            return
        for sizes in arrangements(tau_list[t - 1], m, distinct):
            mm = max(j + 1 for j in range(m) if sizes[j])
            per = []
            for j in range(m):
                opts = [(s.target[0], s.cc, s.ht) for s in removals_multi((shape[j],), sizes[j])] \
                    if sizes[j] else [(shape[j], 0, 0)]
                per.append(opts)
            for combo in itertools.product(*per):
                target = tuple(c[0] for c in combo)
                cc = sum(c[1] for c in combo)
                ht = sum(c[2] for c in combo)
                yield from rec(target, t - 1, eps * _step_factor(m, rs[t - 1], mm, cc, ht))

    yield from rec(lam, len(tau_list), LaurentPoly.const(1, m))


def eta_multipartition(lam, tau_list, r, distinct: bool = True) -> LaurentPoly:
    m = len(lam)
    return lp_sum((eps for _, eps in eta_multipartition_branches(lam, tau_list, r, distinct)), m)


def _full_tau_lists(mu, m):
    # one tau-list per component of mu, concatenated; each step keeps its own r
    per = []
    for r, comp in enumerate(mu, start=1):
        per.append([(tl, r) for tl in tau_lists(comp, m)])
    for choice in itertools.product(*per):
        taus, rs = [], []
        for tl, r in choice:
            taus.extend(tl)
            rs.extend([r] * len(tl))
        yield tuple(taus), tuple(rs)


def chi_via_eta(lam, mu, distinct: bool = True) -> LaurentPoly:
    """chi^lam_mu through the multipartition-side eta algorithm."""
    lam = tuple(tuple(c) for c in lam)
    mu = tuple(tuple(c) for c in mu)
    m = len(lam)
    total = lp_sum((eta_multipartition(lam, taus, rs, distinct) for taus, rs in _full_tau_lists(mu, m)), m)
    return total.shift_q(mp_size(mu) - mp_length(mu))


def _residue(pos: int, m: int) -> int:
    return (pos - 1) % m + 1


def colored_removals(lam: Sequence[int], size: int, color: int, m: int):
    """Generalized ribbons of the given size, all components colored ``color``.

    ``lam`` is zero-padded; its length L is the number of zeros of the boundary
    sequence, which fixes the row colors.  Yields (nu, cc, ht, I) with nu
    padded to the same length.
    """
    lam = tuple(lam)
    L = len(lam)
    if size % m:
        raise ValueError("size must be a multiple of m")
    bits = list(boundary_sequence(lam, pad_leading_zeros=L - len(canonical(lam))).bits)
    colors_before = row_color(lam, m, L)
    n = len(bits)
    ones = [p for p in range(1, n + 1) if bits[p - 1] == 1 and _residue(p, m) == color]
    zeros_at = [p for p in range(1, n + 1) if bits[p - 1] == 0 and _residue(p, m) == color]

    def rec(start, rem, chosen):
        if rem == 0:
            yield list(chosen)
            return
        for b in ones:
            if b < start:
                continue
            for d in zeros_at:
                if d <= b or d - b > rem:
                    continue
                chosen.append((b, d))
                yield from rec(d + 1, rem - (d - b), chosen)
                chosen.pop()

    if size == 0:
        yield lam, 0, 0, 0
        return
    for swaps in rec(1, size, []):
        new = list(bits)
        ht = 0
        for b, d in swaps:
            new[b - 1], new[d - 1] = 0, 1
            ht += bits[b:d - 1].count(0)
        nu = pad(_bits_to_partition(new), L)
        crossing = min_cross(colors_before, row_color(nu, m, L))
        yield nu, len(swaps), ht, crossing


def eta_partition_branches(lam, tau_list, r, m: int, distinct: bool = True):
    """Yield (final partition, factor) for the partition-side eta algorithm."""
    lam = tuple(lam)
    M = max(1, m)
    rs = _as_r_list(tau_list, r)

    def remove_colors(shape, sizes, j, cc, ht):
        # remove the color-(j+1) ribbon, then recurse to the next color
        if j == M:
            yield shape, cc, ht
            return
        for nu, c, h, crossing in colored_removals(shape, m * sizes[j], j + 1, m):
            yield from remove_colors(nu, sizes, j + 1, cc + c, ht + h - crossing)

    def rec(shape, t, eps):
        if t == 0:
            yield shape, eps
            return
        for sizes in arrangements(tau_list[t - 1], m, distinct):
            mm = max(j + 1 for j in range(m) if sizes[j])
            for nu, cc, ht in remove_colors(shape, sizes, 0, 0, 0):
                yield from rec(nu, t - 1, eps * _step_factor(m, rs[t - 1], mm, cc, ht))

    yield from rec(lam, len(tau_list), LaurentPoly.const(1, m))


def eta_partition(lam, tau_list, r, m: int, distinct: bool = True) -> LaurentPoly:
    return lp_sum((eps for _, eps in eta_partition_branches(lam, tau_list, r, m, distinct)), m)


def padded_quotient_partition(lam_mp) -> tuple:
    """Psi_m(lam_mp) zero-padded to the zero count of its interleaved boundary sequence."""
    seq = quotient_boundary(lam_mp)
    return pad(_bits_to_partition(seq.bits), seq.zeros())


def lpar_chi(lam_mp, mu) -> LaurentPoly:
    """chi^lam_mu computed on the single partition Psi_m(lam) with colored ribbons."""
    lam_mp = tuple(tuple(c) for c in lam_mp)
    mu = tuple(tuple(c) for c in mu)
    m = len(lam_mp)
    big = padded_quotient_partition(lam_mp)
    total = lp_sum((eta_partition(big, taus, rs, m) for taus, rs in _full_tau_lists(mu, m)), m)
    return total.shift_q(mp_size(mu) - mp_length(mu))


def inv_m(lam: Sequence[int], m: int, L: int) -> int:
    """Inversions of the row-color sequence of lam padded to L rows."""
    return inv_count(row_color(pad(lam, L), m, L))


# specializations

def specialize_character(table: CharTable, mode: str) -> CharTable:
    """Entrywise specialization: 'reflection' (q=1, u_i=zeta^{i-1}), 'typeA' or 'typeB'."""
    m = table.m
    if mode == "reflection":
        f = lambda p: specialize_unity(p, m)
    elif mode == "typeA":
        if m != 1:
            raise ModeMismatch("typeA needs m = 1")
        f = lambda p: rename_drop(substitute(p, {"u1": 1}), ())
    elif mode == "typeB":
        if m != 2:
            raise ModeMismatch("typeB needs m = 2")
        # u_1 -> -1, and u_2 becomes the single parameter u
        f = lambda p: rename_drop(substitute(p, {"u1": -1}), (2,))
    else:
        raise ModeMismatch(f"unknown mode {mode!r}")
    out = CharTable(m, table.n, list(table.keys))
    out.entries = {k: f(v) for k, v in table.entries.items()}
    return out


def variable_names(mode: str | None, m: int) -> tuple[str, ...]:
    if mode == "typeA":
        return ("q",)
    if mode == "typeB":
        return ("q", "u")
    return ("q",) + tuple(f"u{i}" for i in range(1, m + 1))


def orthogonality_defects(m: int, n: int, table: CharTable | None = None) -> list[tuple]:
    """Pairs (mu, nu) where sum_lam phi^lam_mu conj(phi^lam_nu) differs from delta m^{l(mu)} prod z."""
    from .characters import chi_table

    table = table or chi_table(m, n)
    spec = specialize_character(table, "reflection")
    bad = []
    for mu in table.keys:
        for nu in table.keys:
            acc = CyclotomicNumber.const(m, 0)
            for lam in table.keys:
                acc = acc + spec[lam, mu] * conj(spec[lam, nu])
            want = m ** mp_length(mu) * prod(z_lambda(c) for c in mu) if mu == nu else 0
            if acc != CyclotomicNumber.const(m, want):
                bad.append((mu, nu))
    return bad

"""Frobenius-formula verifier, independent of the ribbon recursion.

q_mu(x; q, u) is expanded in the tensor power-sum basis, and the coefficient
of s_lam is read off with classical symmetric group characters, using
<p_rho, s_lam> = chi^lam_rho in each tensor factor.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .ring import LaurentPoly, exact_div_qfactor, lp_sum
from .shapes import MultiPartition, SizeMismatch, canonical, compositions, partitions, z_lambda


class NonIntegerCoefficient(ArithmeticError):
    pass


@lru_cache(maxsize=None)
def hl_in_p(r: int, m: int = 0) -> dict:
    """q_r(x; t) at t = q^-2 as {lam: coefficient of p_lam}, coefficients in the ring with m u's.

    Uses q_r = sum_{lam |- r} z_lam^-1 prod_i (1 - t^{lam_i}) p_lam.
    """
    out = {}
    zero = (0,) * m
    for lam in partitions(r):
        c = LaurentPoly.const(Fraction(1, z_lambda(lam)), m)
        for part in lam:
            c = c * LaurentPoly(m, {(0,) + zero: 1, (-2 * part,) + zero: -1})
        out[lam] = c
    return out


@dataclass
class PSymElem:
    """Element of the m-fold tensor power of symmetric functions in power sums,
    divided by (q - q^-1)^denom_pow."""

    m: int
    terms: dict = field(default_factory=dict)
    denom_pow: int = 0

    def __mul__(self, other: "PSymElem") -> "PSymElem":
        out: dict = {}
        for r1, c1 in self.terms.items():
            for r2, c2 in other.terms.items():
                key = tuple(tuple(sorted(a + b, reverse=True)) for a, b in zip(r1, r2))
                prev = out.get(key)
                prod = c1 * c2
                out[key] = prod if prev is None else prev + prod
        out = {k: v for k, v in out.items() if not v.is_zero()}
        return PSymElem(self.m, out, self.denom_pow + other.denom_pow)

    @classmethod
    def one(cls, m: int) -> "PSymElem":
        return cls(m, {((),) * m: LaurentPoly.const(1, m)})


@lru_cache(maxsize=None)
def _q_part(k: int, i: int, m: int) -> PSymElem:
    # q^{(i)}_k = q^k/(q - q^-1) sum_c u_c^i prod_j q_{c_j}(x^(j))
    out: dict = {}
    for c in compositions(k, m):
        s = max(j for j in range(m) if c[j])
        u = [0] * m
        u[s] = i
        pref = LaurentPoly.monomial(m, k, u)
        factors = [hl_in_p(cj, m).items() for cj in c]
        for combo in itertools.product(*factors):
            key = tuple(lam for lam, _ in combo)
            coeff = pref
            for _, v in combo:
                coeff = coeff * v
            out[key] = out[key] + coeff if key in out else coeff
    return PSymElem(m, out, 1)


@lru_cache(maxsize=None)
def _q_mu(mu: MultiPartition) -> PSymElem:
    m = len(mu)
    acc = PSymElem.one(m)
    for i, comp in enumerate(mu, start=1):
        for k in comp:
            acc = acc * _q_part(k, i, m)
    return acc


def q_mu_in_p(mu: MultiPartition) -> PSymElem:
    return _q_mu(tuple(tuple(c) for c in mu))


@lru_cache(maxsize=None)
def sn_character(lam: tuple, rho: tuple) -> int:
    """Irreducible character of S_n by the classical rim-hook rule on beta-numbers."""
    lam, rho = canonical(lam), canonical(rho)
    if sum(lam) != sum(rho):
        raise SizeMismatch(f"|{lam}| != |{rho}|")
    if not rho:
        return 1
    k, rest = rho[0], rho[1:]
    n = len(lam)
    beta = [lam[i] + n - 1 - i for i in range(n)]
    beads = set(beta)
    total = 0
    for b in beta:
        if b - k < 0 or (b - k) in beads:
            continue
        between = sum(1 for x in beta if b - k < x < b)
        new = sorted((beads - {b}) | {b - k}, reverse=True)
        nu = canonical(new[i] - (n - 1 - i) for i in range(n))
        total += (-1) ** between * sn_character(nu, rest)
    return total


def oracle_chi(lam: MultiPartition, mu: MultiPartition) -> LaurentPoly:
    """<q_mu, s_lam> in the tensor inner product."""
    lam = tuple(tuple(c) for c in lam)
    mu = tuple(tuple(c) for c in mu)
    if len(lam) != len(mu) or sum(map(sum, lam)) != sum(map(sum, mu)):
        raise SizeMismatch(f"{lam} vs {mu}")
    m = len(lam)
    elem = q_mu_in_p(mu)
    sizes = tuple(sum(c) for c in lam)
    parts = []
    for rho, coeff in elem.terms.items():
        if tuple(sum(r) for r in rho) != sizes:
            continue
        g = 1
        for l_i, r_i in zip(lam, rho):
            g *= sn_character(l_i, r_i)
            if not g:
                break
        if g:
            parts.append(coeff.scale(g))
    val = exact_div_qfactor(lp_sum(parts, m), elem.denom_pow)
    if not val.coefficients_integral():
        raise NonIntegerCoefficient(f"oracle value for {lam}, {mu} is not integral: {val}")
    return val


def p_inner(a: dict, b: dict, m: int = 0) -> LaurentPoly:
    """<a, b> for single-alphabet power-sum expansions, with <p_lam, p_mu> = delta z_lam."""
    parts = [a[k] * b[k] * z_lambda(k) for k in a if k in b]
    return lp_sum(parts, m)


def hl_product_in_p(tau: tuple, m: int = 0) -> dict:
    """q_tau(x; t) = prod_i q_{tau_i}(x; t) in power sums."""
    acc = {(): LaurentPoly.const(1, m)}
    for k in canonical(tau):
        nxt: dict = {}
        for r1, c1 in acc.items():
            for r2, c2 in hl_in_p(k, m).items():
                key = tuple(sorted(r1 + r2, reverse=True))
                nxt[key] = nxt[key] + c1 * c2 if key in nxt else c1 * c2
        acc = nxt
    return acc

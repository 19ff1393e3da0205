"""Exact arithmetic for character values.

Values live in Q[q, q^-1, u_1, ..., u_m]: sparse Laurent polynomials with
integer q-exponents and nonnegative u-exponents.  Specializations at roots of
unity land in CyclotomicNumber, a residue modulo the m-th cyclotomic
polynomial in the power basis.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]


class NonzeroRemainder(ArithmeticError):
    """Raised when an exact division by (q - q^-1) leaves a remainder."""


class CyclicBinding(ValueError):
    """Raised when a substitution maps a variable to an expression containing it."""


def _norm(c: Scalar) -> Scalar:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    """Immutable sparse polynomial in q^{+-1} and u_1..u_m.

    Terms are stored as {(qexp, u1, ..., um): coeff}.  Coefficients are ints
    when integral, Fractions otherwise.
    """

    __slots__ = ("m", "terms", "_hash")

    def __init__(self, m: int, terms: Mapping[tuple, Scalar] | None = None):
        self.m = m
        if terms:
            self.terms = {k: _norm(v) for k, v in terms.items() if v != 0}
        else:
            self.terms = {}
        self._hash = None

    @classmethod
    def _raw(cls, m, terms):
        # trusted constructor: terms already nonzero and normalized
        p = cls.__new__(cls)
        p.m = m
        p.terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def const(cls, c: Scalar, m: int) -> "LaurentPoly":
        return cls(m, {(0,) * (m + 1): c})

    @classmethod
    def monomial(cls, m: int, qexp: int = 0, uexp: Iterable[int] = (), coeff: Scalar = 1) -> "LaurentPoly":
        u = tuple(uexp) or (0,) * m
        if len(u) != m:
            raise ValueError(f"u-exponent vector must have {m} entries")
        if any(e < 0 for e in u):
            raise ValueError("u-exponents must be nonnegative")
        return cls(m, {(qexp,) + u: coeff})

    @classmethod
    def q(cls, m: int, e: int = 1) -> "LaurentPoly":
        return cls.monomial(m, e)

    @classmethod
    def u(cls, m: int, i: int, e: int = 1) -> "LaurentPoly":
        """u_i^e with 1-based i."""
        ex = [0] * m
        ex[i - 1] = e
        return cls.monomial(m, 0, ex)

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        """Terms in canonical order: qexp descending, then u-exponents lexicographic."""
        return sorted(self.terms.items(), key=lambda kv: (-kv[0][0], kv[0][1:]))

    def coefficients_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def q_range(self) -> tuple[int, int]:
        qs = [k[0] for k in self.terms]
        return min(qs), max(qs)

    # arithmetic
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.m != self.m:
                raise ValueError(f"ring mismatch: m={self.m} vs m={other.m}")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other, self.m)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            c = out.get(k, 0) + v
            if c:
                out[k] = _norm(c)
            else:
                out.pop(k, None)
        return LaurentPoly._raw(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.m, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        n = self.m + 1
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(k1[i] + k2[i] for i in range(n))
                out[k] = out.get(k, 0) + v1 * v2
        return LaurentPoly(self.m, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are only defined for monomials; use shift_q")
        result = LaurentPoly.const(1, self.m)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c: Scalar) -> "LaurentPoly":
        return LaurentPoly(self.m, {k: v * c for k, v in self.terms.items()})

    def shift_q(self, d: int) -> "LaurentPoly":
        """Multiply by q^d."""
        return LaurentPoly._raw(self.m, {(k[0] + d,) + k[1:]: v for k, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other, self.m)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.m, frozenset(self.terms.items())))
        return self._hash

    # serialization
    def to_str(self, names: tuple[str, ...] | None = None) -> str:
        if names is None:
            names = ("q",) + tuple(f"u{i}" for i in range(1, self.m + 1))
        if not self.terms:
            return "0"
        chunks = []
        for key, c in self.items():
            factors = []
            for name, e in zip(names, key):
                if e == 1:
                    factors.append(name)
                elif e != 0:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            body = "*".join(factors)
            if not body:
                body = str(mag)
            elif mag != 1:
                body = f"{mag}*{body}"
            sign = "-" if c < 0 else "+"
            chunks.append((sign, body))
        first_sign, first = chunks[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in chunks[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"LaurentPoly(m={self.m}, {self.to_str()!r})"

    def to_json(self) -> list[dict]:
        out = []
        for key, c in self.items():
            c = Fraction(c)
            out.append({"q": key[0], "u": list(key[1:]),
                        "num": str(c.numerator), "den": str(c.denominator)})
        return out

    @classmethod
    def from_json(cls, terms: list[dict], m: int) -> "LaurentPoly":
        d = {}
        for t in terms:
            if len(t["u"]) != m:
                raise ValueError(f"term {t} does not have {m} u-exponents")
            d[(int(t["q"]),) + tuple(int(e) for e in t["u"])] = Fraction(int(t["num"]), int(t["den"]))
        return cls(m, d)

    @classmethod
    def parse(cls, text: str, m: int) -> "LaurentPoly":
        """Inverse of to_str for the default variable names."""
        s = re.sub(r"\^-", "^~", text.replace(" ", ""))
        if s == "0":
            return cls(m)
        out: dict = {}
        for chunk in re.split(r"(?=[+-])", s):
            if not chunk:
                continue
            sign, body = (chunk[0], chunk[1:]) if chunk[0] in "+-" else ("+", chunk)
            coeff = Fraction(1)
            key = [0] * (m + 1)
            for f in body.replace("~", "-").split("*"):
                mm = re.fullmatch(r"(q|u(\d+))(?:\^(-?\d+))?", f)
                if mm:
                    idx = 0 if mm.group(1) == "q" else int(mm.group(2))
                    if idx > m:
                        raise ValueError(f"variable {f} outside ring with m={m}")
                    key[idx] += int(mm.group(3)) if mm.group(3) else 1
                else:
                    coeff *= Fraction(f)
            k = tuple(key)
            out[k] = out.get(k, 0) + (-coeff if sign == "-" else coeff)
        return cls(m, out)


def lp_sum(polys: Iterable[LaurentPoly], m: int) -> LaurentPoly:
    """Sum with a single accumulator dict (much cheaper than repeated +)."""
    out: dict = {}
    for p in polys:
        for k, v in p.terms.items():
            out[k] = out.get(k, 0) + v
    return LaurentPoly(m, out)


def exact_div_qfactor(p: LaurentPoly, d: int) -> LaurentPoly:
    """Return p / (q - q^-1)^d, raising NonzeroRemainder if not exact."""
    if d == 0 or p.is_zero():
        return p
    p = p.shift_q(d)
    # group by u-monomial; each slice is a Laurent polynomial in q alone
    slices: dict = {}
    for k, v in p.terms.items():
        slices.setdefault(k[1:], {})[k[0]] = v
    out = {}
    for u, qs in slices.items():
        for _ in range(d):
            qs = _div_q2_minus_1(qs)
        for e, v in qs.items():
            out[(e,) + u] = v
    return LaurentPoly(p.m, out)


def _div_q2_minus_1(qs: dict) -> dict:
    # synthetic division of sum c_e q^e by (q^2 - 1), top degree downwards
    rem = dict(qs)
    quo = {}
    lo = min(rem)
    top = max(rem)
    e = top
    while e >= lo + 2:
        c = rem.pop(e, 0)
        if c:
            quo[e - 2] = c
            rem[e - 2] = rem.get(e - 2, 0) + c
        e -= 1
    if any(v != 0 for v in rem.values()):
        raise NonzeroRemainder("polynomial is not divisible by (q^2 - 1)")
    return {k: v for k, v in quo.items() if v != 0}


def _var_index(name: str, m: int) -> int:
    if name == "q":
        return 0
    mm = re.fullmatch(r"u_?(\d+)", name)
    if not mm or not 1 <= int(mm.group(1)) <= m:
        raise ValueError(f"unknown variable {name!r} for m={m}")
    return int(mm.group(1))


def substitute(p: LaurentPoly, bindings: Mapping[str, LaurentPoly | Scalar]) -> LaurentPoly:
    """Simultaneous substitution of variables ("q", "u1", ...) by polynomials.

    q may only be mapped to a single term, so that negative powers make sense.
    """
    m = p.m
    images: dict[int, LaurentPoly] = {}
    for name, img in bindings.items():
        idx = _var_index(name, m)
        if not isinstance(img, LaurentPoly):
            img = LaurentPoly.const(img, m)
        if img.m != m:
            raise ValueError("image lives in a different ring")
        identity = img == (LaurentPoly.q(m) if idx == 0 else LaurentPoly.u(m, idx))
        if not identity and any(k[idx] != 0 for k in img.terms):
            raise CyclicBinding(f"{name} appears in its own image")
        images[idx] = img
    qinv = None
    if 0 in images:
        qi = images[0]
        if len(qi.terms) != 1:
            raise ValueError("q must be substituted by a Laurent monomial")
        (key, c), = qi.terms.items()
        if any(key[1:]):
            # negative powers of u are not representable
            qinv = None
        else:
            qinv = LaurentPoly(m, {(-key[0],) + key[1:]: Fraction(1) / Fraction(c)})

    cache: dict = {}

    def power(idx, e):
        if (idx, e) not in cache:
            base = images[idx]
            if e < 0:
                if qinv is None:
                    raise ValueError("q image is not invertible in this ring")
                cache[idx, e] = qinv ** (-e)
            else:
                cache[idx, e] = base ** e
        return cache[idx, e]

    parts = []
    for key, c in p.terms.items():
        kept = [0] * (m + 1)
        term = None
        for idx, e in enumerate(key):
            if idx in images and e != 0:
                f = power(idx, e)
                term = f if term is None else term * f
            else:
                kept[idx] = e
        mono = LaurentPoly._raw(m, {tuple(kept): c})
        parts.append(mono if term is None else mono * term)
    return lp_sum(parts, m)


def rename_drop(p: LaurentPoly, keep: tuple[int, ...]) -> LaurentPoly:
    """Project onto a smaller ring keeping only u-variables at the 1-based indices in keep.

    Every other u-variable must be absent from p.
    """
    drop = [i for i in range(1, p.m + 1) if i not in keep]
    out = {}
    for key, c in p.terms.items():
        if any(key[i] for i in drop):
            raise ValueError("cannot drop a variable that occurs")
        out[(key[0],) + tuple(key[i] for i in keep)] = c
    return LaurentPoly(len(keep), out)


# cyclotomic numbers

def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    # coefficient lists, lowest degree first; b monic
    a = list(a)
    if len(a) < len(b):
        return [0], a
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1]
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return q, a[: len(b) - 1]


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, lowest degree first."""
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num, r = _poly_divmod(num, list(cyclotomic_poly(d)))
            assert not any(r)
    return tuple(num)


def _reduce(coeffs: list, m: int) -> tuple:
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, deg - 1, -1):
        a = c[i]
        if a:
            for j in range(deg + 1):
                c[i - deg + j] -= a * phi[j]
    c = c[:deg] + [0] * (deg - len(c))
    return tuple(_norm(Fraction(x)) for x in c)


class CyclotomicNumber:
    """Element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^{phi(m)-1}."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Iterable[Scalar]):
        self.m = m
        self.coeffs = _reduce(list(coeffs), m)

    @classmethod
    def zeta_power(cls, m: int, k: int) -> "CyclotomicNumber":
        v = [0] * m
        v[k % m] = 1
        return cls(m, v)

    @classmethod
    def const(cls, m: int, c: Scalar) -> "CyclotomicNumber":
        return cls(m, [c])

    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.m != self.m:
                raise ValueError("modulus mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.const(self.m, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicNumber(self.m, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.m, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prod = [0] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return CyclotomicNumber(self.m, prod)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            z = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            mag = abs(c)
            body = str(mag) if not z else (z if mag == 1 else f"{mag}*{z}")
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out

    def __repr__(self):
        return f"CyclotomicNumber(m={self.m}, {self!s})"


def specialize_unity(p: LaurentPoly, m: int | None = None) -> CyclotomicNumber:
    """Evaluate at q = 1, u_i = zeta^{i-1} with zeta a primitive m-th root of unity."""
    if m is None:
        m = p.m
    acc = [0] * m
    for key, c in p.terms.items():
        e = sum((i - 1) * key[i] for i in range(1, len(key)))
        acc[e % m] += c
    return CyclotomicNumber(m, acc)


def conj(c: CyclotomicNumber) -> CyclotomicNumber:
    """Complex conjugation zeta -> zeta^{m-1}."""
    m = c.m
    acc = [0] * m
    for i, a in enumerate(c.coeffs):
        acc[(-i) % m] += a
    return CyclotomicNumber(m, acc)

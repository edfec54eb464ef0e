"""Exact algebra of class functions of r that are rational in x = q^(r/N).

The quantities this package manipulates (total masses, stringy point counts)
are functions of a positive integer r of a constrained shape: on each residue
class of r modulo some M they agree with a rational function, with rational
coefficients, of x = q^(r/N).  This module implements that class of functions
exactly, together with the dual involution D that substitutes q^(-r) for q^r,
geometric series summation, admissibility certificates, evaluation, and a
serialization format.

Canonical form.  A ClassFunction stores (modulus M, root_order N, one reduced
rational function in x per residue class).  Construction always canonicalizes:

* each class entry is reduced (numerator and denominator coprime, denominator
  with minimal exponent 0 and leading coefficient 1),
* N is minimal (exponents rescaled by their gcd with N),
* M is minimal (classes folded to the smallest divisor of M that repeats).

Two ClassFunctions are equal as functions of r exactly when their canonical
forms are equal componentwise, so `==` decides function equality.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence, Union

import mpmath

from .errors import (
    DivergentSeries,
    NonRealInput,
    PoleAtEvaluationPoint,
    ZeroDenominatorExponent,
)

DEFAULT_EVAL_PRECISION = 50

RationalLike = Union[int, str, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass int, str or Fraction")
    return Fraction(x)


def frac_str(x: Fraction) -> str:
    """Render a Fraction as 'p' or 'p/q' (used by every JSON emitter here)."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class _InfiniteType:
    """Singleton marking a divergent (infinite) mass or point count."""

    _instance = None
    __slots__ = ()

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinite"


Infinite = _InfiniteType()


def is_infinite(x) -> bool:
    return isinstance(x, _InfiniteType)


# ---------------------------------------------------------------------------
# Laurent polynomials over Q, sparse representation


class LaurentPoly:
    """Sparse Laurent polynomial: dict {exponent: nonzero Fraction}."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        data: dict[int, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            c = _frac(c)
            if not c:
                continue
            e = int(e)
            acc = data.get(e, Fraction(0)) + c
            if acc:
                data[e] = acc
            else:
                data.pop(e, None)
        self.terms = data

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def monomial(cls, exp: int, coeff=1) -> "LaurentPoly":
        return cls({exp: coeff})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def min_exp(self) -> int:
        return min(self.terms)

    @property
    def max_exp(self) -> int:
        return max(self.terms)

    @property
    def span(self) -> int:
        return 0 if self.is_zero else self.max_exp - self.min_exp

    def coeff(self, e: int) -> Fraction:
        return self.terms.get(e, Fraction(0))

    def items(self):
        return sorted(self.terms.items())

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"LaurentPoly({dict(self.items())!r})"

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        data = dict(self.terms)
        for e, c in other.terms.items():
            acc = data.get(e, Fraction(0)) + c
            if acc:
                data[e] = acc
            else:
                data.pop(e, None)
        out = LaurentPoly.zero()
        out.terms = data
        return out

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly.zero()
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        data: dict[int, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                acc = data.get(e, Fraction(0)) + c1 * c2
                if acc:
                    data[e] = acc
                else:
                    data.pop(e, None)
        out = LaurentPoly.zero()
        out.terms = data
        return out

    def scale(self, c) -> "LaurentPoly":
        c = _frac(c)
        if not c:
            return LaurentPoly.zero()
        out = LaurentPoly.zero()
        out.terms = {e: k * c for e, k in self.terms.items()}
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by x^k."""
        out = LaurentPoly.zero()
        out.terms = {e + k: c for e, c in self.terms.items()}
        return out

    def stretch(self, k: int) -> "LaurentPoly":
        """Substitute x -> x^k (k >= 1)."""
        out = LaurentPoly.zero()
        out.terms = {e * k: c for e, c in self.terms.items()}
        return out

    def stretch_div(self, k: int) -> "LaurentPoly":
        """Substitute x^k -> x; every exponent must be divisible by k."""
        out = LaurentPoly.zero()
        out.terms = {e // k: c for e, c in self.terms.items()}
        return out

    def mirror(self) -> "LaurentPoly":
        """Substitute x -> x^-1."""
        out = LaurentPoly.zero()
        out.terms = {-e: c for e, c in self.terms.items()}
        return out


def poly_divmod(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Division with remainder; both arguments must be honest polynomials."""
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    assert a.is_zero or a.min_exp >= 0
    assert b.min_exp >= 0
    db = b.max_exp
    lb = b.terms[db]
    quo: dict[int, Fraction] = {}
    rem = dict(a.terms)
    while rem and max(rem) >= db:
        e = max(rem)
        c = rem[e] / lb
        quo[e - db] = quo.get(e - db, Fraction(0)) + c
        for eb, cb in b.terms.items():
            ne = e - db + eb
            acc = rem.get(ne, Fraction(0)) - c * cb
            if acc:
                rem[ne] = acc
            else:
                rem.pop(ne, None)
    q = LaurentPoly.zero()
    q.terms = {e: c for e, c in quo.items() if c}
    r = LaurentPoly.zero()
    r.terms = rem
    return q, r


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd of two polynomials (Euclid over Q)."""
    while not b.is_zero:
        a, b = b, poly_divmod(a, b)[1]
    if a.is_zero:
        return a
    return a.scale(1 / a.terms[a.max_exp])


def poly_div_exact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    q, r = poly_divmod(a, b)
    assert r.is_zero, "division was not exact"
    return q


# ---------------------------------------------------------------------------
# Reduced rational functions in x


@dataclass(frozen=True)
class RationalFunctionX:
    """Rational function num/den in x, kept in reduced normal form.

    Invariants (maintained by ratfun, not by this constructor): num and den
    have no common polynomial factor, den has minimal exponent 0 and leading
    coefficient 1.  num may be a Laurent polynomial (carry x^k factors).
    """

    num: LaurentPoly
    den: LaurentPoly

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_poly(self) -> bool:
        return self.den == LaurentPoly.one()


def ratfun(num: LaurentPoly, den: LaurentPoly) -> RationalFunctionX:
    """Build the reduced normal form of num/den."""
    if den.is_zero:
        raise ZeroDivisionError("zero denominator")
    if num.is_zero:
        return RationalFunctionX(LaurentPoly.zero(), LaurentPoly.one())
    vn, vd = num.min_exp, den.min_exp
    n0, d0 = num.shift(-vn), den.shift(-vd)
    g = poly_gcd(n0, d0)
    if g.span > 0:
        n0 = poly_div_exact(n0, g)
        d0 = poly_div_exact(d0, g)
    lc = d0.terms[d0.max_exp]
    if lc != 1:
        n0 = n0.scale(1 / lc)
        d0 = d0.scale(1 / lc)
    return RationalFunctionX(n0.shift(vn - vd), d0)


def _rf_add(a: RationalFunctionX, b: RationalFunctionX) -> RationalFunctionX:
    return ratfun(a.num * b.den + b.num * a.den, a.den * b.den)


def _rf_mul(a: RationalFunctionX, b: RationalFunctionX) -> RationalFunctionX:
    return ratfun(a.num * b.num, a.den * b.den)


def _rf_div(a: RationalFunctionX, b: RationalFunctionX) -> RationalFunctionX:
    if b.is_zero:
        raise ZeroDivisionError("division by the zero class function")
    return ratfun(a.num * b.den, a.den * b.num)


def _rf_neg(a: RationalFunctionX) -> RationalFunctionX:
    return RationalFunctionX(-a.num, a.den)


def _rf_mirror(a: RationalFunctionX) -> RationalFunctionX:
    return ratfun(a.num.mirror(), a.den.mirror())


def _rf_stretch(a: RationalFunctionX, k: int) -> RationalFunctionX:
    # substituting x -> x^k preserves coprimality and den normalization
    if k == 1:
        return a
    return RationalFunctionX(a.num.stretch(k), a.den.stretch(k))


# ---------------------------------------------------------------------------
# Cyclotomic helpers for collapsing root-of-unity coefficients


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    out = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out -= out // m
    return out


@lru_cache(maxsize=None)
def _mobius(n: int) -> int:
    if n == 1:
        return 1
    m = n
    k = 0
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            k += 1
        p += 1
    if m > 1:
        k += 1
    return -1 if k % 2 else 1


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> LaurentPoly:
    """The n-th cyclotomic polynomial, by dividing x^n - 1 by lower ones."""
    poly = LaurentPoly({n: 1, 0: -1})
    for d in range(1, n):
        if n % d == 0:
            poly = poly_div_exact(poly, _cyclotomic(d))
    return poly


def _trace_zeta(m: int, e: int) -> Fraction:
    """Trace of zeta_m^e from Q(zeta_m) down to Q."""
    d = m // math.gcd(e % m, m)
    return Fraction(_phi(m) * _mobius(d), _phi(d))


def _rational_root_sum(pairs: Sequence[tuple[int, Fraction]], m: int) -> Optional[Fraction]:
    """Exact value of sum c_i * zeta_m^(e_i) if rational, else None."""
    acc: dict[int, Fraction] = {}
    for e, c in pairs:
        e %= m
        acc[e] = acc.get(e, Fraction(0)) + c
    if m == 1:
        return sum(acc.values(), Fraction(0))
    if m == 2:
        return acc.get(0, Fraction(0)) - acc.get(1, Fraction(0))
    t = sum((c * _trace_zeta(m, e) for e, c in acc.items()), Fraction(0))
    cand = t / _phi(m)
    # verify: sum c_i x^(e_i) - cand must vanish modulo the m-th cyclotomic
    diff = LaurentPoly(acc) - LaurentPoly({0: cand})
    if poly_divmod(diff, _cyclotomic(m))[1].is_zero:
        return cand
    return None


def _int_root(n: int, k: int) -> Optional[int]:
    """Exact integer k-th root of n >= 1, or None."""
    if n == 1 or k == 1:
        return n if k >= 1 else None
    r = round(n ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 1 and cand**k == n:
            return cand
    return None


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


# ---------------------------------------------------------------------------
# Class functions


class ClassFunction:
    """A function of r >= 1, rational in x = q^(r/N) on each class of r mod M.

    Instances are immutable and always in canonical form, so `==` decides
    equality as functions of r.  Arithmetic (+, -, *, /) aligns modulus and
    root order first.  `dual()` substitutes q^(-r) for q^r.
    """

    __slots__ = ("modulus", "root_order", "classes")

    def __init__(self, modulus: int, root_order: int, classes: Sequence[RationalFunctionX]):
        modulus = int(modulus)
        root_order = int(root_order)
        if modulus < 1 or root_order < 1:
            raise ValueError("modulus and root_order must be positive")
        entries = [ratfun(e.num, e.den) for e in classes]
        if len(entries) != modulus:
            raise ValueError("need exactly one class entry per residue class")
        # minimal root order: rescale exponents by their gcd with N
        g = root_order
        for e in entries:
            for exp in e.num.terms:
                g = math.gcd(g, abs(exp))
            for exp in e.den.terms:
                g = math.gcd(g, abs(exp))
        if g > 1:
            root_order //= g
            entries = [
                RationalFunctionX(e.num.stretch_div(g), e.den.stretch_div(g))
                for e in entries
            ]
        # minimal modulus: fold classes onto the smallest repeating divisor
        for d in _divisors(modulus):
            if all(entries[j] == entries[j % d] for j in range(modulus)):
                entries = entries[:d]
                modulus = d
                break
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "root_order", root_order)
        object.__setattr__(self, "classes", tuple(entries))

    def __setattr__(self, name, value):
        raise AttributeError("ClassFunction is immutable")

    # -- builders ----------------------------------------------------------

    @classmethod
    def zero(cls) -> "ClassFunction":
        return cls(1, 1, [RationalFunctionX(LaurentPoly.zero(), LaurentPoly.one())])

    @classmethod
    def constant(cls, c) -> "ClassFunction":
        return cls.poly({Fraction(0): _frac(c)})

    @classmethod
    def poly(cls, terms: Mapping) -> "ClassFunction":
        """Laurent polynomial in Q = q^r: mapping {rational exponent: coeff}."""
        return cls.from_class_polys(1, [terms])

    @classmethod
    def monomial(cls, exp, coeff=1) -> "ClassFunction":
        return cls.poly({_frac(exp): _frac(coeff)})

    @classmethod
    def from_class_polys(cls, modulus: int, class_polys: Sequence[Mapping]) -> "ClassFunction":
        """One {rational Q-exponent: coeff} mapping per residue class."""
        n = 1
        for d in class_polys:
            for e in d:
                n = math.lcm(n, _frac(e).denominator)
        entries = []
        for d in class_polys:
            num = LaurentPoly(
                {int(_frac(e) * n): _frac(c) for e, c in d.items()}
            )
            entries.append(RationalFunctionX(num, LaurentPoly.one()))
        return cls(modulus, n, entries)

    # -- structural helpers --------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for e in self.classes)

    def class_entry(self, r: int) -> RationalFunctionX:
        return self.classes[r % self.modulus]

    def degree_span(self) -> int:
        """Largest exponent span across all numerators and denominators."""
        best = 0
        for e in self.classes:
            best = max(best, e.num.span, e.den.span)
        return best

    def _aligned_with(self, other: "ClassFunction"):
        m = math.lcm(self.modulus, other.modulus)
        n = math.lcm(self.root_order, other.root_order)
        mine = [
            _rf_stretch(self.classes[j % self.modulus], n // self.root_order)
            for j in range(m)
        ]
        theirs = [
            _rf_stretch(other.classes[j % other.modulus], n // other.root_order)
            for j in range(m)
        ]
        return m, n, mine, theirs

    @staticmethod
    def _coerce(other) -> "ClassFunction":
        if isinstance(other, ClassFunction):
            return other
        return ClassFunction.constant(other)

    # -- ring structure ------------------------------------------------------

    def _binop(self, other, op) -> "ClassFunction":
        other = self._coerce(other)
        m, n, mine, theirs = self._aligned_with(other)
        return ClassFunction(m, n, [op(a, b) for a, b in zip(mine, theirs)])

    def __add__(self, other):
        return self._binop(other, _rf_add)

    __radd__ = __add__

    def __neg__(self):
        return ClassFunction(
            self.modulus, self.root_order, [_rf_neg(e) for e in self.classes]
        )

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        return self._binop(other, _rf_mul)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binop(other, _rf_div)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return ClassFunction.constant(1)
        base = self if k > 0 else ClassFunction.constant(1) / self
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return (
            self.modulus == other.modulus
            and self.root_order == other.root_order
            and self.classes == other.classes
        )

    def __hash__(self):
        return hash(
            (
                self.modulus,
                self.root_order,
                tuple((e.num, e.den) for e in self.classes),
            )
        )

    # -- the dual involution ---------------------------------------------------

    def dual(self) -> "ClassFunction":
        """Substitute q^(-r) for q^r; an involutive ring automorphism."""
        return ClassFunction(
            self.modulus, self.root_order, [_rf_mirror(e) for e in self.classes]
        )

    def scale_pow(self, c) -> "ClassFunction":
        """Multiply by q^(c*r) for rational c."""
        c = _frac(c)
        n = math.lcm(self.root_order, c.denominator)
        k = int(c * n)
        entries = [
            ratfun(
                _rf_stretch(e, n // self.root_order).num.shift(k),
                _rf_stretch(e, n // self.root_order).den,
            )
            for e in self.classes
        ]
        return ClassFunction(self.modulus, n, entries)

    # -- evaluation -------------------------------------------------------------

    def eval(self, q0, r0: int, precision: Optional[int] = None):
        """Value at q = q0 (rational > 1) and r = r0 (positive integer).

        Returns an exact Fraction whenever the required root of q0 is
        rational; otherwise a Decimal rounded to `precision` significant
        digits (computed with 15 guard digits, so off by at most one ulp).
        """
        q0 = _frac(q0)
        if q0 <= 1:
            raise ValueError("q0 must be a rational > 1")
        r0 = int(r0)
        if r0 < 1:
            raise ValueError("r0 must be a positive integer")
        if precision is None:
            precision = int(os.environ.get("GML_PRECISION", DEFAULT_EVAL_PRECISION))
        entry = self.class_entry(r0)
        n = self.root_order
        exps = set(entry.num.terms) | set(entry.den.terms)
        b = 1
        for e in exps:
            b = math.lcm(b, Fraction(e * r0, n).denominator)
        if b == 1:
            y, scale = q0, 1
        else:
            rn = _int_root(q0.numerator, b)
            rd = _int_root(q0.denominator, b)
            if rn is None or rd is None:
                return self._eval_decimal(entry, q0, r0, precision)
            y, scale = Fraction(rn, rd), b
        num = sum(
            (c * y ** int(Fraction(e * r0 * scale, n)) for e, c in entry.num.terms.items()),
            Fraction(0),
        )
        den = sum(
            (c * y ** int(Fraction(e * r0 * scale, n)) for e, c in entry.den.terms.items()),
            Fraction(0),
        )
        if den == 0:
            raise PoleAtEvaluationPoint(f"denominator vanishes at q0={q0}, r0={r0}")
        return num / den

    def _eval_decimal(self, entry, q0: Fraction, r0: int, precision: int) -> Decimal:
        n = self.root_order
        with mpmath.workdps(precision + 15):
            x = mpmath.mpf(q0.numerator) / mpmath.mpf(q0.denominator)

            def term(e, c):
                p = mpmath.power(x, mpmath.mpf(e * r0) / n)
                return mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator) * p

            num = mpmath.fsum(term(e, c) for e, c in entry.num.terms.items())
            den = mpmath.fsum(term(e, c) for e, c in entry.den.terms.items())
            if abs(den) < mpmath.mpf(10) ** (-(precision + 5)):
                raise PoleAtEvaluationPoint(
                    f"denominator vanishes at q0={q0}, r0={r0}"
                )
            val = num / den
            return Decimal(mpmath.nstr(val, precision))

    # -- admissibility ------------------------------------------------------------

    def admissible_witness(self, c) -> bool:
        """True when (q^(c*r) - 1) * self is a Laurent polynomial classwise."""
        c = _frac(c)
        if c == 0:
            raise ValueError("witness exponent c must be nonzero")
        n = math.lcm(self.root_order, c.denominator)
        k = int(c * n)
        factor = LaurentPoly({k: 1, 0: -1})
        for e in self.classes:
            e = _rf_stretch(e, n // self.root_order)
            if e.is_poly:
                continue
            prod = e.num * factor
            prod = prod.shift(-prod.min_exp) if not prod.is_zero else prod
            if not poly_divmod(prod, e.den)[1].is_zero:
                return False
        return True

    # -- rendering ------------------------------------------------------------------

    def render(self) -> str:
        if self.modulus == 1:
            return _render_entry(self.classes[0], self.root_order)
        lines = []
        for j, e in enumerate(self.classes):
            lines.append(
                f"r = {j} (mod {self.modulus}): {_render_entry(e, self.root_order)}"
            )
        return "\n".join(lines)

    def __str__(self):
        return self.render()

    def __repr__(self):
        body = self.render().replace("\n", "; ")
        return f"ClassFunction[{body}]"

    # -- serialization ----------------------------------------------------------------

    def to_json(self) -> dict:
        """JSON object; exponents are integers in units of 1/root_order."""

        def side(p: LaurentPoly):
            return [[frac_str(c), e] for e, c in p.items()]

        return {
            "modulus": self.modulus,
            "root_order": self.root_order,
            "classes": [
                {"num": side(e.num), "den": side(e.den)} for e in self.classes
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "ClassFunction":
        def side(pairs):
            return LaurentPoly({int(e): Fraction(str(c)) for c, e in pairs})

        entries = [
            RationalFunctionX(side(c["num"]), side(c["den"]))
            for c in obj["classes"]
        ]
        return cls(int(obj["modulus"]), int(obj["root_order"]), entries)


def _render_exp(e: Fraction) -> str:
    if e == 1:
        return "Q"
    if e.denominator == 1:
        return f"Q^{e.numerator}"
    return f"Q^({frac_str(e)})"


def _render_poly(p: LaurentPoly, n: int) -> str:
    if p.is_zero:
        return "0"
    parts = []
    for e, c in sorted(p.terms.items(), reverse=True):
        exp = Fraction(e, n)
        if exp == 0:
            piece = frac_str(abs(c))
        else:
            mag = abs(c)
            piece = _render_exp(exp) if mag == 1 else f"{frac_str(mag)}*{_render_exp(exp)}"
        if not parts:
            parts.append(piece if c > 0 else f"-{piece}")
        else:
            parts.append(f"+ {piece}" if c > 0 else f"- {piece}")
    return " ".join(parts)


def _render_entry(e: RationalFunctionX, n: int) -> str:
    if e.is_poly:
        return _render_poly(e.num, n)
    return f"({_render_poly(e.num, n)}) / ({_render_poly(e.den, n)})"


# module-level symbol for the monomial q^r, convenient in client code
Q = ClassFunction.monomial(1)


# ---------------------------------------------------------------------------
# Operations in the names clients look for


def _as_root(root) -> Fraction:
    """Normalize a root-of-unity spec to a Fraction in [0, 1)."""
    if isinstance(root, tuple):
        b, m = root
        root = Fraction(int(b), int(m))
    return _frac(root) % 1


def cf_from_terms(terms: Iterable, den_exp=None) -> ClassFunction:
    """Build sum_i n_i * alpha_i^r / (q^(c*r) - 1) as a ClassFunction.

    Each term is (coeff, root, q_exp): the summand coeff * zeta^(root*r) *
    q^(q_exp * r), where root is a rational b/M meaning the root of unity
    e^(2*pi*i*b/M).  den_exp is the c of an optional denominator
    q^(c*r) - 1; None means denominator 1.

    Raises ZeroDenominatorExponent for c = 0 and NonRealInput when the
    root-of-unity coefficients fail to collapse to a rational on some
    residue class of r.
    """
    if den_exp is not None:
        den_exp = _frac(den_exp)
        if den_exp == 0:
            raise ZeroDenominatorExponent("denominator exponent c must be nonzero")
    norm = []
    m = 1
    n = 1 if den_exp is None else den_exp.denominator
    for coeff, root, q_exp in terms:
        coeff = _frac(coeff)
        root = _as_root(root)
        q_exp = _frac(q_exp)
        m = math.lcm(m, root.denominator)
        n = math.lcm(n, q_exp.denominator)
        norm.append((coeff, root, q_exp))
    entries = []
    for j in range(m):
        by_qexp: dict[Fraction, list[tuple[int, Fraction]]] = {}
        for coeff, root, q_exp in norm:
            zeta_exp = int(root * j * m) % m
            by_qexp.setdefault(q_exp, []).append((zeta_exp, coeff))
        numdict: dict[int, Fraction] = {}
        for q_exp, pairs in by_qexp.items():
            val = _rational_root_sum(pairs, m)
            if val is None:
                raise NonRealInput(
                    f"coefficients on the class r = {j} (mod {m}) are not rational"
                )
            if val:
                e = int(q_exp * n)
                numdict[e] = numdict.get(e, Fraction(0)) + val
        num = LaurentPoly(numdict)
        if den_exp is None:
            den = LaurentPoly.one()
        else:
            den = LaurentPoly({int(den_exp * n): 1, 0: -1})
        entries.append(ratfun(num, den))
    return ClassFunction(m, n, entries)


def cf_ring(op: str, a: ClassFunction, b: Optional[ClassFunction] = None, exponent=None) -> ClassFunction:
    """Ring operations by name: add, sub, mul, neg, scale_pow."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "scale_pow":
        if exponent is None:
            raise ValueError("scale_pow needs an exponent")
        return a.scale_pow(exponent)
    raise ValueError(f"unknown ring operation {op!r}")


def cf_dual(f: ClassFunction) -> ClassFunction:
    return f.dual()


def cf_eval(f: ClassFunction, q0, r0: int, precision: Optional[int] = None):
    return f.eval(q0, r0, precision)


def cf_geometric_sum(coeff, a, b, i0: int, i1: Optional[int] = None) -> ClassFunction:
    """Sum of coeff * Q^(a*i + b) for i from i0 to i1 (i1 = None means infinity).

    Finite ranges are summed term by term.  The infinite sum has closed form
    coeff * Q^(a*i0 + b) / (1 - Q^a) and converges exactly when a < 0;
    otherwise DivergentSeries is raised (unless coeff is zero).
    """
    a, b = _frac(a), _frac(b)
    coeff = ClassFunction._coerce(coeff)
    if i1 is not None:
        i1 = int(i1)
        if i1 < i0:
            return ClassFunction.zero()
        terms: dict[Fraction, Fraction] = {}
        for i in range(i0, i1 + 1):
            e = a * i + b
            terms[e] = terms.get(e, Fraction(0)) + 1
        return coeff * ClassFunction.poly(terms)
    if coeff.is_zero:
        return ClassFunction.zero()
    if a >= 0:
        raise DivergentSeries(
            f"geometric series with exponent {frac_str(a)}*i + {frac_str(b)} diverges"
        )
    head = ClassFunction.monomial(a * i0 + b)
    return coeff * head / (1 - ClassFunction.monomial(a))


def cf_admissible_witness(f: ClassFunction, c) -> bool:
    return f.admissible_witness(c)

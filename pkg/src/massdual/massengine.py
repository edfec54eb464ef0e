"""Total masses of local Galois representations.

Two independent engines live here.

Tame enumeration: for a residue field of order q^r coprime to |G|, the
continuous homomorphisms from the tame Galois group correspond to pairs
(g, h) in G^2 with h g h^(-1) = g^(q^r).  The total mass against weight v
is (1/|G|) * sum over pairs of q^(-r*v(g)); against w the exponent is
+r*w(g).  The condition depends on r only through q^r mod exp(G), so the
result is a ClassFunction with modulus the multiplicative order of q mod
exp(G).  Pairs can be counted in full (quadratic in |G|) or conjugacy
class by conjugacy class; both give bit-identical answers.

Ramification profiles: wild cases enter declaratively, as finitely many
strata (count, v, w) plus geometric families indexed by a discriminant
exponent i, with affine forms a*i + b for the count exponent and weights.
Families are summed with cf_geometric_sum, so a family whose mass series
diverges yields Infinite rather than an analytic continuation.

Partition-indexed formulas: the mass of etale algebras of degree n (sum of
P(n, n-m) Q^(-m) against v, the mirror sum against w), the double-sum mass
refining it by discriminant and splitting data, and the Hilbert scheme
counts tied to them by #Hilb^n(A^2) = mass_v(n) * Q^(2n).
"""

from __future__ import annotations

import math
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional, Sequence, Union

from .errors import DivergentSeries, InvalidParams, NotTame
from .grouprep import FiniteGroup, MonomialRep, Perm, perm_inv, perm_mul
from .qsym import (
    ClassFunction,
    Infinite,
    cf_geometric_sum,
    frac_str,
    is_infinite,
)

MassValue = Union[ClassFunction, type(Infinite)]


@dataclass(frozen=True)
class MassPair:
    """Masses of one scenario against the weights v and w."""

    mass_v: MassValue
    mass_w: MassValue

    @property
    def is_finite(self) -> bool:
        return not (is_infinite(self.mass_v) or is_infinite(self.mass_w))

    def to_json(self) -> dict:
        def enc(m):
            return "infinite" if is_infinite(m) else m.to_json()

        return {"mass_v": enc(self.mass_v), "mass_w": enc(self.mass_w)}

    @classmethod
    def from_json(cls, obj: Mapping) -> "MassPair":
        def dec(m):
            return Infinite if m == "infinite" else ClassFunction.from_json(m)

        return cls(dec(obj["mass_v"]), dec(obj["mass_w"]))


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    m = q
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            return m == 1
        p += 1
    return True  # q itself prime


@dataclass(frozen=True)
class TameScenario:
    """A finite group with a monomial representation over F_q, q coprime to |G|."""

    group: FiniteGroup
    rep: MonomialRep
    q: int

    def __post_init__(self):
        if not _is_prime_power(self.q):
            raise ValueError(f"q = {self.q} is not a prime power")
        if math.gcd(self.q, len(self.group)) != 1:
            raise NotTame(
                f"residue characteristic of q = {self.q} divides |G| = {len(self.group)}"
            )


def _multiplicative_order(q: int, e: int) -> int:
    if e == 1:
        return 1
    t = q % e
    order = 1
    acc = t
    while acc != 1:
        acc = (acc * t) % e
        order += 1
    return order


def _pair_counts_full(group: FiniteGroup, elements: Sequence[Perm], t: int) -> dict[Perm, int]:
    """For each g in elements, the number of h with h g h^(-1) = g^t."""
    out = {}
    all_elements = group.elements
    for g in elements:
        target = group.power(g, t)
        cnt = 0
        for h in all_elements:
            if perm_mul(perm_mul(h, g), perm_inv(h)) == target:
                cnt += 1
        out[g] = cnt
    return out


def _pair_counts_by_class(group: FiniteGroup, t: int) -> dict[Perm, int]:
    """Same counts, computed once per conjugacy class.

    The count of h with h g h^(-1) = g^t is constant on conjugacy classes:
    conjugating g by k turns each solution h into k h k^(-1).
    """
    out = {}
    for cls_elems in group.conjugacy_classes():
        rep_g = cls_elems[0]
        cnt = _pair_counts_full(group, [rep_g], t)[rep_g]
        for g in cls_elems:
            out[g] = cnt
    return out


def tame_total_masses(
    scenario: TameScenario,
    *,
    threads: int = 1,
    full_threshold: int = 1000,
) -> MassPair:
    """Total masses of the tame scenario, one residue class of r at a time.

    Uses full pair enumeration for groups of order at most full_threshold
    and the conjugacy-class shortcut above it; results are identical.
    With threads > 1 the element list is split into fixed chunks whose
    partial sums are merged in chunk order, so output does not depend on
    the worker count.
    """
    group, rep, q = scenario.group, scenario.rep, scenario.q
    e = group.exponent()
    m0 = _multiplicative_order(q, e)
    order = len(group)
    weights = {g: rep.tame_weights(g) for g in group}
    class_polys_v = []
    class_polys_w = []
    for j in range(m0):
        t = pow(q, j, e) if e > 1 else 0
        if order <= full_threshold:
            if threads > 1:
                chunks = [
                    list(group.elements[i::threads]) for i in range(threads)
                ]
                with ThreadPoolExecutor(max_workers=threads) as pool:
                    parts = list(
                        pool.map(lambda ch: _pair_counts_full(group, ch, t), chunks)
                    )
                counts: dict[Perm, int] = {}
                for part in parts:
                    counts.update(part)
            else:
                counts = _pair_counts_full(group, group.elements, t)
        else:
            counts = _pair_counts_by_class(group, t)
        poly_v: dict[Fraction, Fraction] = {}
        poly_w: dict[Fraction, Fraction] = {}
        for g in group.elements:
            cnt = counts[g]
            if not cnt:
                continue
            wt = weights[g]
            share = Fraction(cnt, order)
            poly_v[-wt.v] = poly_v.get(-wt.v, Fraction(0)) + share
            poly_w[wt.w] = poly_w.get(wt.w, Fraction(0)) + share
        class_polys_v.append(poly_v)
        class_polys_w.append(poly_w)
    return MassPair(
        ClassFunction.from_class_polys(m0, class_polys_v),
        ClassFunction.from_class_polys(m0, class_polys_w),
    )


def tame_involution_check(scenario: TameScenario) -> bool:
    """Check that (g, h) -> (g^(-1), h) preserves the solution set of
    h g h^(-1) = g^(q^r) on every residue class and swaps v and w fibers."""
    group, rep, q = scenario.group, scenario.rep, scenario.q
    e = group.exponent()
    m0 = _multiplicative_order(q, e)
    for j in range(m0):
        t = pow(q, j, e) if e > 1 else 0
        pairs = set()
        for g in group.elements:
            target = group.power(g, t)
            for h in group.elements:
                if perm_mul(perm_mul(h, g), perm_inv(h)) == target:
                    pairs.add((g, h))
        for g, h in pairs:
            if (perm_inv(g), h) not in pairs:
                return False
        v_of_inverses = sorted(rep.tame_weights(perm_inv(g)).v for g, _ in pairs)
        w_of_elements = sorted(rep.tame_weights(g).w for g, _ in pairs)
        if v_of_inverses != w_of_elements:
            return False
    return True


# ---------------------------------------------------------------------------
# Ramification profiles


@dataclass(frozen=True)
class ProfileStratum:
    """Finitely many representations sharing one weight pair.

    count is a ClassFunction of r (a point count, so it should evaluate to
    nonnegative rationals); v and w are the shared weights.
    """

    count: ClassFunction
    v: Fraction
    w: Fraction

    def __post_init__(self):
        object.__setattr__(self, "v", Fraction(self.v))
        object.__setattr__(self, "w", Fraction(self.w))
        for q0 in (2, 3, 4, 5):
            for r0 in (1, 2, 3):
                val = self.count.eval(q0, r0)
                if isinstance(val, Fraction) and val < 0:
                    raise ValueError(
                        f"stratum count is negative at q0={q0}, r0={r0}"
                    )


@dataclass(frozen=True)
class GeometricFamily:
    """A family of strata indexed by i = i0, ..., i1 (i1 None means infinity).

    The stratum at index i counts coeff * Q^(count_a*i + count_b) points and
    carries weights v = v_a*i + v_b, w = w_a*i + w_b.
    """

    i0: int
    i1: Optional[int]
    coeff: ClassFunction
    count_exp: tuple[Fraction, Fraction]
    v_exp: tuple[Fraction, Fraction]
    w_exp: tuple[Fraction, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "count_exp", tuple(Fraction(x) for x in self.count_exp))
        object.__setattr__(self, "v_exp", tuple(Fraction(x) for x in self.v_exp))
        object.__setattr__(self, "w_exp", tuple(Fraction(x) for x in self.w_exp))
        if self.i1 is not None and self.i1 < self.i0:
            raise ValueError("family range is empty; use i1 >= i0 or drop the family")


@dataclass(frozen=True)
class RamificationProfile:
    """Declarative description of a (possibly wild) mass computation."""

    group_order: int
    strata: tuple[ProfileStratum, ...] = ()
    families: tuple[GeometricFamily, ...] = ()

    def __post_init__(self):
        if self.group_order < 1:
            raise InvalidParams("group_order must be a positive integer")
        object.__setattr__(self, "strata", tuple(self.strata))
        object.__setattr__(self, "families", tuple(self.families))


def profile_total_masses(profile: RamificationProfile) -> MassPair:
    """Sum strata and families against both weights; divergence means Infinite."""
    inv = Fraction(1, profile.group_order)
    mv: MassValue = ClassFunction.zero()
    mw: MassValue = ClassFunction.zero()
    for s in profile.strata:
        if not is_infinite(mv):
            mv = mv + s.count * ClassFunction.monomial(-s.v)
        if not is_infinite(mw):
            mw = mw + s.count * ClassFunction.monomial(s.w)
    for fam in profile.families:
        ca, cb = fam.count_exp
        va, vb = fam.v_exp
        wa, wb = fam.w_exp
        if not is_infinite(mv):
            try:
                mv = mv + cf_geometric_sum(fam.coeff, ca - va, cb - vb, fam.i0, fam.i1)
            except DivergentSeries:
                mv = Infinite
        if not is_infinite(mw):
            try:
                mw = mw + cf_geometric_sum(fam.coeff, ca + wa, cb + wb, fam.i0, fam.i1)
            except DivergentSeries:
                mw = Infinite
    if not is_infinite(mv):
        mv = mv * inv
    if not is_infinite(mw):
        mw = mw * inv
    return MassPair(mv, mw)


def builtin_profile(name: str, n: Optional[int] = None, m: Optional[int] = None) -> RamificationProfile:
    """Built-in quadratic ramification profiles.

    quad_char0_sigma: residue characteristic zero analogue, weight scale n.
    quad_char2_sigma: the order-2 wild family in residue characteristic 2.
    quad_char2_upsilon: the two-parameter (m, n) variant; needs both m and n.
    """
    two = ClassFunction.constant(2)
    two_qm1 = ClassFunction.poly({1: 2, 0: -2})  # 2(Q - 1)
    if name == "quad_char0_sigma":
        if n is None or n < 1:
            raise InvalidParams("quad_char0_sigma needs an integer n >= 1")
        return RamificationProfile(
            group_order=2,
            strata=(
                ProfileStratum(ClassFunction.constant(1), 0, 0),
                ProfileStratum(ClassFunction.constant(1), 0, 0),
                ProfileStratum(two_qm1, Fraction(n), 0),
                ProfileStratum(
                    ClassFunction.poly({1: 2}),
                    Fraction(3 * n, 2),
                    Fraction(-n, 2),
                ),
            ),
        )
    if name == "quad_char2_sigma":
        if n is None or n < 1:
            raise InvalidParams("quad_char2_sigma needs an integer n >= 1")
        return RamificationProfile(
            group_order=2,
            strata=(
                ProfileStratum(ClassFunction.constant(1), 0, 0),
                ProfileStratum(ClassFunction.constant(1), 0, 0),
            ),
            families=(
                GeometricFamily(
                    i0=1,
                    i1=None,
                    coeff=two_qm1,
                    count_exp=(Fraction(1), Fraction(-1)),
                    v_exp=(Fraction(n), Fraction(0)),
                    w_exp=(Fraction(-n), Fraction(n)),
                ),
            ),
        )
    if name == "quad_char2_upsilon":
        if m is None or n is None or m < 0 or n < 1:
            raise InvalidParams(
                "quad_char2_upsilon needs integers m >= 0 and n >= 1"
            )
        families = []
        if m >= 1:
            families.append(
                GeometricFamily(
                    i0=1,
                    i1=m,
                    coeff=two_qm1,
                    count_exp=(Fraction(1), Fraction(-1)),
                    v_exp=(Fraction(n), Fraction(0)),
                    w_exp=(Fraction(-n), Fraction(n)),
                )
            )
        families.append(
            GeometricFamily(
                i0=m + 1,
                i1=None,
                coeff=two_qm1,
                count_exp=(Fraction(1), Fraction(-1)),
                v_exp=(Fraction(n + 1), Fraction(-m)),
                w_exp=(Fraction(-n - 1), Fraction(1 + m + n)),
            )
        )
        return RamificationProfile(
            group_order=2,
            strata=(
                ProfileStratum(ClassFunction.constant(1), 0, 0),
                ProfileStratum(ClassFunction.constant(1), 0, 0),
            ),
            families=tuple(families),
        )
    raise InvalidParams(f"unknown builtin profile {name!r}")


# ---------------------------------------------------------------------------
# Partition-indexed mass formulas


@lru_cache(maxsize=None)
def partition_count(n: int, k: Optional[int] = None) -> int:
    """Partitions of n, or partitions of n into exactly k parts."""
    if k is None:
        if n < 0:
            return 0
        return sum(partition_count(n, j) for j in range(n + 1)) if n else 1
    if n < 0 or k < 0:
        return 0
    if n == 0:
        return 1 if k == 0 else 0
    if k == 0:
        return 0
    # split off: partitions with a part 1 vs all parts >= 2
    return partition_count(n - 1, k - 1) + partition_count(n - k, k)


def bhargava_masses(n: int) -> MassPair:
    """Masses of degree-n etale algebras: sums of P(n, n-m) Q^(-+m)."""
    if n < 1:
        raise InvalidParams("n must be a positive integer")
    mv = {Fraction(-m): Fraction(partition_count(n, n - m)) for m in range(n)}
    mw = {
        Fraction(m): Fraction(partition_count(n, n - m))
        for m in range(n + 1)
        if partition_count(n, n - m)
    }
    return MassPair(ClassFunction.poly(mv), ClassFunction.poly(mw))


def kedlaya_masses(n: int) -> MassPair:
    """The double-sum refinement: sum over j <= n and i <= j of
    P(j, i) * P(n - j) * Q^(i - n) against v, Q^(n - i) against w."""
    if n < 1:
        raise InvalidParams("n must be a positive integer")
    mv: dict[Fraction, Fraction] = {}
    mw: dict[Fraction, Fraction] = {}
    for j in range(n + 1):
        tail = partition_count(n - j)
        for i in range(j + 1):
            c = partition_count(j, i) * tail
            if not c:
                continue
            ev, ew = Fraction(i - n), Fraction(n - i)
            mv[ev] = mv.get(ev, Fraction(0)) + c
            mw[ew] = mw.get(ew, Fraction(0)) + c
    return MassPair(ClassFunction.poly(mv), ClassFunction.poly(mw))


HilbertCounts = namedtuple("HilbertCounts", ["hilb_plane", "fiber", "c_strata", "d_strata"])


def hilbert_counts(n: int) -> HilbertCounts:
    """Point counts around Hilb^n of the plane.

    hilb_plane = sum_m P(n, n-m) Q^(2n-m); the punctual piece C_m has
    P(m) Q^m points, the graded piece D_m has sum_i P(m, i) Q^(m-i), and
    fiber = sum_j C_(n-j) * D_j recovers the count over a fixed fiber.
    """
    if n < 1:
        raise InvalidParams("n must be a positive integer")
    hilb = ClassFunction.poly(
        {
            Fraction(2 * n - m): Fraction(partition_count(n, n - m))
            for m in range(n + 1)
        }
    )
    c_strata = [
        ClassFunction.poly({Fraction(m): Fraction(partition_count(m))})
        for m in range(n + 1)
    ]
    d_strata = [
        ClassFunction.poly(
            {
                Fraction(m - i): Fraction(partition_count(m, i))
                for i in range(m + 1)
                if partition_count(m, i)
            }
        )
        for m in range(n + 1)
    ]
    fiber = ClassFunction.zero()
    for j in range(n + 1):
        fiber = fiber + c_strata[n - j] * d_strata[j]
    return HilbertCounts(hilb, fiber, c_strata, d_strata)


# ---------------------------------------------------------------------------
# profile serialization


def _exp_pair_json(pair) -> list:
    return [frac_str(pair[0]), frac_str(pair[1])]


def profile_to_json(profile: RamificationProfile) -> dict:
    return {
        "group_order": profile.group_order,
        "strata": [
            {
                "count": s.count.to_json(),
                "v": frac_str(s.v),
                "w": frac_str(s.w),
            }
            for s in profile.strata
        ],
        "families": [
            {
                "i0": f.i0,
                "i1": f.i1,
                "coeff": f.coeff.to_json(),
                "count_exp": _exp_pair_json(f.count_exp),
                "v_exp": _exp_pair_json(f.v_exp),
                "w_exp": _exp_pair_json(f.w_exp),
            }
            for f in profile.families
        ],
    }


def _parse_frac(x) -> Fraction:
    return Fraction(str(x))


def profile_from_json(obj: Mapping) -> RamificationProfile:
    strata = tuple(
        ProfileStratum(
            ClassFunction.from_json(s["count"]),
            _parse_frac(s["v"]),
            _parse_frac(s["w"]),
        )
        for s in obj.get("strata", ())
    )
    families = tuple(
        GeometricFamily(
            i0=int(f["i0"]),
            i1=None if f.get("i1") is None else int(f["i1"]),
            coeff=ClassFunction.from_json(f["coeff"]),
            count_exp=tuple(_parse_frac(x) for x in f["count_exp"]),
            v_exp=tuple(_parse_frac(x) for x in f["v_exp"]),
            w_exp=tuple(_parse_frac(x) for x in f["w_exp"]),
        )
        for f in obj.get("families", ())
    )
    return RamificationProfile(
        group_order=int(obj["group_order"]), strata=strata, families=families
    )

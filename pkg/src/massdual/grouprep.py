"""Finite permutation groups carrying monomial representations.

A group element is a permutation of {0, ..., k-1} stored as a tuple p with
p[i] = image of i.  A monomial representation assigns to each element a
monomial matrix over the cyclotomic field of order e: column j holds the
single nonzero entry zeta^(exps[j]) in row perm[j].  Products compose so
that matrices multiply the same way the permutations do.

Eigenvalues of a monomial matrix are read off cycle by cycle: a cycle of
length c whose column exponents sum to s contributes the c eigenvalues
zeta^((s + e*t)/(c*e)) for t = 0..c-1, recorded here as exponents
(s + e*t)/(c*e) in [0, 1).  From these come the tame weight v (sum of the
exponents), the count a of nonzero exponents, and w = a - v.  These weight
formulas are the tame-case definitions: they apply when the group order is
invertible in the residue field, and are not extended past that case.
"""

from __future__ import annotations

import math
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import GroupTooLarge, InconsistentRepresentation

Perm = tuple[int, ...]

DEFAULT_MAX_GROUP_SIZE = 10**6


def perm_identity(degree: int) -> Perm:
    return tuple(range(degree))


def perm_mul(a: Perm, b: Perm) -> Perm:
    """Compose: apply b first, then a."""
    return tuple(a[b[i]] for i in range(len(a)))


def perm_inv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def perm_cycles(a: Perm) -> list[list[int]]:
    """Cycle decomposition, fixed points included, each cycle led by its minimum."""
    seen = [False] * len(a)
    cycles = []
    for start in range(len(a)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = a[i]
        cycles.append(cyc)
    return cycles


def perm_order(a: Perm) -> int:
    return math.lcm(*(len(c) for c in perm_cycles(a))) if a else 1


def perm_from_cycles(degree: int, cycles: Iterable[Iterable[int]], one_based: bool = True) -> Perm:
    """Build a permutation from disjoint cycles (1-based by default)."""
    out = list(range(degree))
    offset = 1 if one_based else 0
    for cyc in cycles:
        pts = [int(p) - offset for p in cyc]
        if any(p < 0 or p >= degree for p in pts):
            raise ValueError(f"cycle point out of range for degree {degree}")
        for i, p in enumerate(pts):
            out[p] = pts[(i + 1) % len(pts)]
    perm = tuple(out)
    if sorted(perm) != list(range(degree)):
        raise ValueError("cycles are not disjoint")
    return perm


@dataclass(frozen=True)
class MonomialMatrix:
    """Monomial matrix: column j carries zeta^(exps[j]) in row perm[j]."""

    perm: Perm
    exps: tuple[int, ...]
    root_order: int

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("perm is not a permutation")
        if len(self.exps) != len(self.perm):
            raise ValueError("one exponent per column required")
        if self.root_order < 1:
            raise ValueError("root_order must be positive")
        object.__setattr__(
            self, "exps", tuple(e % self.root_order for e in self.exps)
        )

    @classmethod
    def identity(cls, dim: int, root_order: int = 1) -> "MonomialMatrix":
        return cls(perm_identity(dim), (0,) * dim, root_order)

    @property
    def dim(self) -> int:
        return len(self.perm)

    def __mul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        if self.dim != other.dim or self.root_order != other.root_order:
            raise ValueError("matrix shapes differ")
        perm = perm_mul(self.perm, other.perm)
        exps = tuple(
            (self.exps[other.perm[j]] + other.exps[j]) % self.root_order
            for j in range(self.dim)
        )
        return MonomialMatrix(perm, exps, self.root_order)

    def inv(self) -> "MonomialMatrix":
        p = perm_inv(self.perm)
        exps = tuple((-self.exps[p[i]]) % self.root_order for i in range(self.dim))
        return MonomialMatrix(p, exps, self.root_order)


def permutation_matrix(perm: Perm, root_order: int = 1) -> MonomialMatrix:
    """The permutation matrix of perm viewed as a monomial matrix."""
    return MonomialMatrix(perm, (0,) * len(perm), root_order)


def direct_sum(*mats: MonomialMatrix) -> MonomialMatrix:
    """Block direct sum; root orders are merged by least common multiple."""
    e = math.lcm(*(m.root_order for m in mats))
    perm: list[int] = []
    exps: list[int] = []
    offset = 0
    for m in mats:
        perm.extend(p + offset for p in m.perm)
        exps.extend(x * (e // m.root_order) for x in m.exps)
        offset += m.dim
    return MonomialMatrix(tuple(perm), tuple(exps), e)


TameWeights = namedtuple("TameWeights", ["v", "w", "a"])


class FiniteGroup:
    """A finite permutation group, closed element list plus lookups."""

    def __init__(self, degree: int, elements: Sequence[Perm]):
        self.degree = degree
        self.elements = tuple(elements)
        self.index = {g: i for i, g in enumerate(self.elements)}
        if perm_identity(degree) not in self.index:
            raise ValueError("element list must contain the identity")
        self._classes: Optional[list[list[Perm]]] = None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self.index

    @property
    def identity(self) -> Perm:
        return perm_identity(self.degree)

    def inverse(self, g: Perm) -> Perm:
        return perm_inv(g)

    def exponent(self) -> int:
        return math.lcm(*(perm_order(g) for g in self.elements))

    def power(self, g: Perm, m: int) -> Perm:
        """g^m by square and multiply; m may be any integer."""
        if g not in self.index:
            raise ValueError("element not in group")
        m %= perm_order(g)
        out = self.identity
        base = g
        while m:
            if m & 1:
                out = perm_mul(out, base)
            base = perm_mul(base, base)
            m >>= 1
        return out

    def conjugacy_classes(self) -> list[list[Perm]]:
        if self._classes is None:
            seen: set[Perm] = set()
            classes = []
            for g in self.elements:
                if g in seen:
                    continue
                orbit = {perm_mul(perm_mul(h, g), perm_inv(h)) for h in self.elements}
                seen |= orbit
                classes.append(sorted(orbit))
            self._classes = classes
        return self._classes


class MonomialRep:
    """A monomial representation of a FiniteGroup, one matrix per element."""

    def __init__(self, dim: int, root_order: int, matrices: Mapping[Perm, MonomialMatrix]):
        self.dim = dim
        self.root_order = root_order
        self.matrices = dict(matrices)

    def matrix(self, g: Perm) -> MonomialMatrix:
        return self.matrices[g]

    def eigen_exponents(self, g: Perm) -> tuple[Fraction, ...]:
        """Multiset of eigenvalue exponents in [0,1), as a sorted tuple."""
        m = self.matrix(g)
        e = m.root_order
        out = []
        for cyc in perm_cycles(m.perm):
            c = len(cyc)
            s = sum(m.exps[j] for j in cyc)
            for t in range(c):
                out.append(Fraction((s + e * t) % (c * e), c * e))
        return tuple(sorted(out))

    def tame_weights(self, g: Perm) -> TameWeights:
        """Weights (v, w, a) of g: v = sum of eigenvalue exponents,
        a = number of nonzero exponents, w = a - v."""
        fr = self.eigen_exponents(g)
        v = sum(fr, Fraction(0))
        a = sum(1 for x in fr if x)
        return TameWeights(v, a - v, Fraction(a))


def group_closure(
    generators: Sequence[Perm],
    rep_generators: Optional[Sequence[MonomialMatrix]] = None,
    max_size: int = DEFAULT_MAX_GROUP_SIZE,
) -> tuple[FiniteGroup, Optional[MonomialRep]]:
    """Close generators under multiplication, carrying matrices along.

    Walks the Cayley graph breadth-first from the identity.  Whenever two
    words reach the same permutation with different matrices the assignment
    extends to no homomorphism and InconsistentRepresentation is raised.
    GroupTooLarge is raised once the element count passes max_size.
    """
    if not generators:
        raise ValueError("need at least one generator")
    degree = len(generators[0])
    if any(len(g) != degree for g in generators):
        raise ValueError("generators act on different point sets")
    if rep_generators is not None:
        if len(rep_generators) != len(generators):
            raise ValueError("need exactly one matrix per generator")
        dims = {m.dim for m in rep_generators}
        orders = {m.root_order for m in rep_generators}
        if len(dims) != 1 or len(orders) != 1:
            raise ValueError("generator matrices disagree in shape")
        dim, root_order = dims.pop(), orders.pop()
        mat_id = MonomialMatrix.identity(dim, root_order)
    ident = perm_identity(degree)
    elements: list[Perm] = [ident]
    matrices: dict[Perm, MonomialMatrix] = {ident: mat_id} if rep_generators is not None else {}
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for i, s in enumerate(generators):
                h = perm_mul(g, s)
                if rep_generators is not None:
                    mh = matrices[g] * rep_generators[i]
                if h in seen:
                    if rep_generators is not None and matrices[h] != mh:
                        raise InconsistentRepresentation(
                            "two words for one element got different matrices"
                        )
                    continue
                if len(elements) >= max_size:
                    raise GroupTooLarge(f"closure exceeded {max_size} elements")
                seen.add(h)
                elements.append(h)
                if rep_generators is not None:
                    matrices[h] = mh
                nxt.append(h)
        frontier = nxt
    group = FiniteGroup(degree, elements)
    rep = None
    if rep_generators is not None:
        rep = MonomialRep(dim, root_order, matrices)
    return group, rep


def rep_direct_sum(group: FiniteGroup, *reps: MonomialRep) -> MonomialRep:
    """Direct sum of representations of the same group."""
    e = math.lcm(*(r.root_order for r in reps))
    dim = sum(r.dim for r in reps)
    matrices = {
        g: direct_sum(*(r.matrix(g) for r in reps)) for g in group
    }
    return MonomialRep(dim, e, matrices)


def permutation_rep(group: FiniteGroup, copies: int = 1) -> MonomialRep:
    """The natural permutation representation of the group, direct-summed."""
    matrices = {}
    for g in group:
        blocks = [permutation_matrix(g)] * copies
        matrices[g] = direct_sum(*blocks) if copies > 1 else permutation_matrix(g)
    return MonomialRep(group.degree * copies, 1, matrices)


def from_cayley_table(table: Sequence[Sequence[int]]) -> FiniteGroup:
    """Group from a Cayley table via its regular permutation action.

    table[i][j] must be the index of element i times element j, with
    element 0 the identity.  Each row becomes the permutation h -> g*h.
    """
    n = len(table)
    perms = []
    for i, row in enumerate(table):
        p = tuple(int(x) for x in row)
        if sorted(p) != list(range(n)):
            raise ValueError(f"row {i} of the Cayley table is not a permutation")
        perms.append(p)
    if perms and perms[0] != perm_identity(n):
        raise ValueError("element 0 must be the identity")
    return FiniteGroup(n, perms)


# ---------------------------------------------------------------------------
# serialization


def group_to_json(group: FiniteGroup, rep: MonomialRep, generators: Optional[Sequence[Perm]] = None) -> dict:
    """JSON form: degree, generating cycles (1-based), and generator matrices."""
    if generators is None:
        generators = [g for g in group if g != group.identity] or [group.identity]
    cycles = [
        [[p + 1 for p in cyc] for cyc in perm_cycles(g) if len(cyc) > 1]
        for g in generators
    ]
    mats = [
        {
            "perm": [p + 1 for p in rep.matrix(g).perm],
            "exps": list(rep.matrix(g).exps),
        }
        for g in generators
    ]
    return {
        "degree": group.degree,
        "generators": cycles,
        "rep": {"dim": rep.dim, "root_order": rep.root_order, "matrices": mats},
    }


def group_from_json(obj: Mapping, max_size: int = DEFAULT_MAX_GROUP_SIZE) -> tuple[FiniteGroup, MonomialRep]:
    degree = int(obj["degree"])
    gens = [perm_from_cycles(degree, cycles) for cycles in obj["generators"]]
    rep = obj["rep"]
    dim = int(rep["dim"])
    e = int(rep["root_order"])
    mats = [
        MonomialMatrix(
            tuple(int(p) - 1 for p in m["perm"]),
            tuple(int(x) for x in m["exps"]),
            e,
        )
        for m in rep["matrices"]
    ]
    if any(m.dim != dim for m in mats):
        raise ValueError("matrix dimension disagrees with declared dim")
    group, rep_obj = group_closure(gens, mats, max_size=max_size)
    assert rep_obj is not None
    return group, rep_obj

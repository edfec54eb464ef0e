"""Stringy point counts from resolution data, and the identities they satisfy.

Input is a stratified description of a resolution: finitely many boundary
divisors with rational multiplicities c_j (horizontal data), plus optional
vertical rows with their own discrepancy shifts a_h.  Each row carries a
map from subsets J of divisor indices to the point count of the stratum
cut out by exactly (open mode) or at least (closed mode) the divisors in J.

The count is

    sum_h Q^(-a_h) * sum_J #(stratum_{h,J}) * prod_{j in J} (Q - 1)/(Q^(1+c_j) - 1),

finite exactly when every divisor met by a nonzero stratum has c_j > -1;
otherwise the count is Infinite.  Open and closed strata are related by an
inclusion-exclusion transform that is its own inverse.

The checks below are the standard identities: Poincare duality f = D(f)*Q^d
for the count of a proper crepant-resolvable ambient space, the multiplicative
group quotient (total - origin)/(Q - 1) with duality exponent d - 1 for cone
singularities, and the wild McKay comparison with total masses,
#st(X) = M(v) * Q^d and #st(X)_origin = M(-w).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Union

from .errors import InfiniteInput, MalformedStrata
from .massengine import MassPair
from .qsym import ClassFunction, Infinite, frac_str, is_infinite

StrataMap = Mapping[frozenset, ClassFunction]
StringyCount = Union[ClassFunction, type(Infinite)]


@dataclass(frozen=True)
class VerticalRow:
    """Strata sharing one vertical discrepancy shift a."""

    a: Fraction
    counts: dict

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "counts", _normalize_strata(self.counts))


@dataclass(frozen=True)
class ResolutionData:
    """Divisor multiplicities plus stratified point counts.

    horizontal holds the multiplicities c_j, indexed 1..n in stratum keys.
    strata are the counts with no vertical shift; vertical rows add their
    own Q^(-a) factor.  mode is "open" (counts of exact-incidence strata)
    or "closed" (counts of at-least-incidence strata).
    """

    dim: int
    horizontal: tuple[Fraction, ...] = ()
    strata: dict = None
    vertical: tuple[VerticalRow, ...] = ()
    mode: str = "open"

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be a positive integer")
        if self.mode not in ("open", "closed"):
            raise ValueError("mode must be 'open' or 'closed'")
        object.__setattr__(
            self, "horizontal", tuple(Fraction(c) for c in self.horizontal)
        )
        if any(c == 0 for c in self.horizontal):
            raise ValueError("divisors with multiplicity 0 must be dropped")
        object.__setattr__(self, "strata", _normalize_strata(self.strata or {}))
        object.__setattr__(self, "vertical", tuple(self.vertical))

    def rows(self) -> list[tuple[Fraction, dict]]:
        """All rows as (shift a, strata map); the horizontal map is the a=0 row."""
        out = []
        if self.strata:
            out.append((Fraction(0), self.strata))
        for row in self.vertical:
            out.append((row.a, row.counts))
        return out


def _normalize_strata(counts: Mapping) -> dict:
    """Freeze keys to frozensets of ints and drop zero counts."""
    out = {}
    for key, cf in counts.items():
        key = frozenset(int(j) for j in key)
        if not isinstance(cf, ClassFunction):
            raise TypeError("stratum counts must be ClassFunctions")
        if not cf.is_zero:
            out[key] = cf
    return out


def _downward_closure(keys) -> set[frozenset]:
    space = set()
    for key in keys:
        key = tuple(sorted(key))
        for size in range(len(key) + 1):
            for sub in combinations(key, size):
                space.add(frozenset(sub))
    if not space:
        space.add(frozenset())
    return space


def convert_strata_map(counts: StrataMap, to_open: bool) -> dict:
    """Inclusion-exclusion between open and closed stratum counts.

    closed[J] = sum over J' >= J of open[J']; inverting gives
    open[J] = sum over J' >= J of (-1)^(|J'| - |J|) closed[J'].  Both
    directions are computed by the same alternating/plain sum over the
    supersets present in the input; zero results are dropped.
    """
    counts = _normalize_strata(counts)
    out = {}
    for key in _downward_closure(counts):
        acc = ClassFunction.zero()
        for sup, cf in counts.items():
            if key <= sup:
                if to_open and (len(sup) - len(key)) % 2:
                    acc = acc - cf
                else:
                    acc = acc + cf
        if not acc.is_zero:
            out[key] = acc
    return out


def open_closed_convert(data: ResolutionData) -> ResolutionData:
    """Swap a resolution description between open and closed stratum counts."""
    to_open = data.mode == "closed"
    return ResolutionData(
        dim=data.dim,
        horizontal=data.horizontal,
        strata=convert_strata_map(data.strata, to_open),
        vertical=tuple(
            VerticalRow(row.a, convert_strata_map(row.counts, to_open))
            for row in data.vertical
        ),
        mode="open" if to_open else "closed",
    )


def stringy_count(data: ResolutionData) -> StringyCount:
    """Evaluate the stringy count; Infinite when a c_j <= -1 divisor is met."""
    if data.mode == "closed":
        data = open_closed_convert(data)
    n = len(data.horizontal)
    valid = set(range(1, n + 1))
    rows = data.rows()
    for _, counts in rows:
        for key in counts:
            if not key <= valid:
                raise MalformedStrata(
                    f"stratum {sorted(key)} references divisors outside 1..{n}"
                )
    heavy = {j for j in valid if data.horizontal[j - 1] <= -1}
    used: set[int] = set()
    for _, counts in rows:
        for key, cf in counts.items():
            if key & heavy and not cf.is_zero:
                return Infinite
            used |= key
    # only divisors met by a nonzero stratum contribute a factor; the rest
    # may carry arbitrary multiplicities (including c = -1) harmlessly
    factors = {}
    for j in sorted(used):
        c = data.horizontal[j - 1]
        factors[j] = ClassFunction.poly({1: 1, 0: -1}) / (
            ClassFunction.monomial(1 + c) - 1
        )
    total = ClassFunction.zero()
    for a, counts in rows:
        row_sum = ClassFunction.zero()
        for key, cf in counts.items():
            term = cf
            for j in sorted(key):
                term = term * factors[j]
            row_sum = row_sum + term
        total = total + ClassFunction.monomial(-a) * row_sum
    return total


def poincare_check(count: StringyCount, dim: int) -> bool:
    """Self-duality f = D(f) * Q^dim of a stringy count."""
    if is_infinite(count):
        raise InfiniteInput("Poincare check needs a finite count")
    return count == count.dual() * ClassFunction.monomial(dim)


def gm_quotient(total: StringyCount, origin: StringyCount) -> ClassFunction:
    """(total - origin)/(Q - 1), the count of the multiplicative-group quotient."""
    if is_infinite(total) or is_infinite(origin):
        raise InfiniteInput("quotient needs finite counts")
    return (total - origin) / (ClassFunction.poly({1: 1, 0: -1}))


def gm_duality_check(total: StringyCount, origin: StringyCount, dim: int) -> bool:
    """Self-duality of the quotient with exponent dim - 1."""
    quot = gm_quotient(total, origin)
    return quot == quot.dual() * ClassFunction.monomial(dim - 1)


def mckay_identity_check(
    masses: MassPair,
    stringy_total: StringyCount,
    stringy_origin: StringyCount,
    dim: int,
) -> bool:
    """Wild McKay comparison: total = mass_v * Q^dim and origin = mass_w."""
    if not masses.is_finite:
        raise InfiniteInput("McKay check needs finite masses")
    if is_infinite(stringy_total) or is_infinite(stringy_origin):
        raise InfiniteInput("McKay check needs finite counts")
    return (
        stringy_total == masses.mass_v * ClassFunction.monomial(dim)
        and stringy_origin == masses.mass_w
    )


def builtin_resolution(name: str) -> dict[str, ResolutionData]:
    """Built-in resolution fixtures, keyed by role (total / origin)."""
    if name == "a1_cone":
        # crepant resolution of the quadric cone surface: no boundary divisor,
        # ambient count Q^2 + Q, exceptional fiber over the vertex Q + 1
        return {
            "total": ResolutionData(
                dim=2, strata={frozenset(): ClassFunction.poly({2: 1, 1: 1})}
            ),
            "origin": ResolutionData(
                dim=2, strata={frozenset(): ClassFunction.poly({1: 1, 0: 1})}
            ),
        }
    raise ValueError(f"unknown builtin resolution {name!r}")


# ---------------------------------------------------------------------------
# serialization


def _key_str(key: frozenset) -> str:
    return json.dumps(sorted(key), separators=(",", ":"))


def _strata_to_json(counts: Mapping) -> dict:
    items = sorted(counts.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
    return {_key_str(k): cf.to_json() for k, cf in items}


def _strata_from_json(obj: Mapping) -> dict:
    out = {}
    for key, cf in obj.items():
        idx = frozenset(int(j) for j in json.loads(key))
        out[idx] = ClassFunction.from_json(cf)
    return out


def resolution_to_json(data: ResolutionData) -> dict:
    out = {
        "dim": data.dim,
        "mode": data.mode,
        "horizontal": [{"c": frac_str(c)} for c in data.horizontal],
        "strata": _strata_to_json(data.strata),
    }
    if data.vertical:
        out["vertical"] = [
            {"a": frac_str(row.a), "strata": _strata_to_json(row.counts)}
            for row in data.vertical
        ]
    return out


def resolution_from_json(obj: Mapping) -> ResolutionData:
    return ResolutionData(
        dim=int(obj["dim"]),
        horizontal=tuple(Fraction(str(h["c"])) for h in obj.get("horizontal", ())),
        strata=_strata_from_json(obj.get("strata", {})),
        vertical=tuple(
            VerticalRow(Fraction(str(r["a"])), _strata_from_json(r["strata"]))
            for r in obj.get("vertical", ())
        ),
        mode=obj.get("mode", "open"),
    )

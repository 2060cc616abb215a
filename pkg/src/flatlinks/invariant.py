"""The polynomial invariant of a flat link code.

Each component contributes one polynomial: every self-crossing x adds its
arc count ``intersection_number(x+, x-)`` to the coefficient of t^|count|,
so crossings with arc count zero drop out.  Each pair of components whose
flat linking difference vanishes contributes a single linear coefficient:
the crossings between the two components are matched into pairs, one +
end against one - end per side, and the pair arc-count sums are added up.
The total does not depend on the matching (given balance), which is what
makes the deterministic first-fit matching below safe to publish.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Mapping

from .gausscode import (
    PLUS,
    MINUS,
    CrossingCatalog,
    FlatLinkCode,
    FlatLinkError,
    intersection_number,
    validate,
)


class SameComponent(FlatLinkError):
    pass


class NonzeroFlatLinking(FlatLinkError):
    def __init__(self, diff: int):
        super().__init__(f"flat linking difference is {diff:+d}, no pairing exists")
        self.diff = diff


class InvalidPartition(FlatLinkError):
    pass


@dataclass(frozen=True)
class SparsePoly:
    """Integer polynomial with no constant term, stored sparsely.

    ``terms`` is a tuple of (exponent, coefficient) pairs sorted by
    exponent, with every coefficient nonzero and every exponent >= 1.
    """

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        exps = [e for e, _ in self.terms]
        if any(e < 1 for e in exps):
            raise ValueError("exponents must be >= 1")
        if any(c == 0 for _, c in self.terms):
            raise ValueError("zero coefficients must be dropped")
        if exps != sorted(set(exps)):
            raise ValueError("terms must be sorted by distinct exponent")

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, int]) -> "SparsePoly":
        return cls(tuple(sorted((e, c) for e, c in coeffs.items() if c != 0)))

    def coefficient(self, exponent: int) -> int:
        for e, c in self.terms:
            if e == exponent:
                return c
        return 0

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self.terms}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            body = "t" if e == 1 else f"t^{e}"
            if abs(c) != 1:
                body = f"{abs(c)}{body}"
            parts.append(("- " if c < 0 else "+ ") + body)
        out = " ".join(parts)
        return "-" + out[2:] if out.startswith("- ") else out[2:]


@dataclass(frozen=True)
class PairPartition:
    """A matching of the crossings between two components into pairs.

    Every stored pair (x, y) is oriented: x is the crossing whose + end
    lies on ``component_a`` and y the one whose - end lies there, so the
    pair's contribution reads off as eta_a(x+, y-) + eta_b(y+, x-).
    """

    component_a: int
    component_b: int
    pairs: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class LinkInvariant:
    """The assembled invariant of a code.

    component_polys: one polynomial per component, keyed by name.
    pair_coeffs: the linear coefficient for every unordered component
        pair whose flat linking difference is zero (undefined otherwise,
        so such pairs are simply absent).
    linking_diffs: the raw +/- end-count difference for every unordered
        pair, measured on the lexicographically smaller name.  Halve it
        for the classical flat linking number.
    """

    component_polys: tuple[tuple[str, SparsePoly], ...]
    pair_coeffs: tuple[tuple[tuple[str, str], int], ...]
    linking_diffs: tuple[tuple[tuple[str, str], int], ...]

    def poly(self, name: str) -> SparsePoly:
        for n, p in self.component_polys:
            if n == name:
                return p
        raise KeyError(name)

    def pair_coeff(self, a: str, b: str) -> int | None:
        """The pair coefficient, or None when the pair is linked."""
        key = (min(a, b), max(a, b))
        for k, c in self.pair_coeffs:
            if k == key:
                return c
        return None

    def linking_diff(self, a: str, b: str) -> int:
        key = (min(a, b), max(a, b))
        for k, d in self.linking_diffs:
            if k == key:
                return d
        raise KeyError(key)

    @property
    def is_zero(self) -> bool:
        return (all(p.is_zero for _, p in self.component_polys)
                and all(c == 0 for _, c in self.pair_coeffs)
                and all(d == 0 for _, d in self.linking_diffs))

    def renamed(self, mapping: dict[str, str]) -> "LinkInvariant":
        def key(pair: tuple[str, str]) -> tuple[str, str]:
            u, v = mapping[pair[0]], mapping[pair[1]]
            return (min(u, v), max(u, v))

        return LinkInvariant(
            tuple(sorted(((mapping[n], p) for n, p in self.component_polys),
                         key=lambda t: t[0])),
            tuple(sorted((key(k), c) for k, c in self.pair_coeffs)),
            tuple(sorted((key(k), d) for k, d in self.linking_diffs)),
        )

    def to_json(self) -> dict:
        return {
            "components": [{"name": n, "poly": p.to_json()}
                           for n, p in self.component_polys],
            "pairs": [{"a": a, "b": b, "coeff": c}
                      for (a, b), c in self.pair_coeffs],
            "linking": [{"a": a, "b": b, "diff": d}
                        for (a, b), d in self.linking_diffs],
        }


def flat_linking_diff(code: FlatLinkCode, a: int, b: int,
                      catalog: CrossingCatalog | None = None) -> int:
    """(+ ends) minus (- ends), among crossings between a and b, on a.

    Antisymmetric in the two components.  Raises SameComponent when
    a == b.  The classical flat linking number is half of this value.
    """
    if a == b:
        raise SameComponent(f"need two distinct components, got {a} twice")
    catalog = catalog if catalog is not None else validate(code)
    diff = 0
    for x in catalog.pair_crossings(a, b):
        diff += 1 if catalog.kind(x).plus_component == a else -1
    return diff


def self_polynomial(code: FlatLinkCode, component: int,
                    catalog: CrossingCatalog | None = None) -> SparsePoly:
    """The component's polynomial: sum of eta(x+, x-) * t^|eta| over its
    self-crossings."""
    catalog = catalog if catalog is not None else validate(code)
    coeffs: dict[int, int] = {}
    for x in catalog.self_crossings(component):
        e = catalog.kind(x)
        v = intersection_number(code, component, e.plus_pos, e.minus_pos)
        if v != 0:
            coeffs[abs(v)] = coeffs.get(abs(v), 0) + v
    return SparsePoly.from_dict(coeffs)


def choose_pair_partition(code: FlatLinkCode, a: int, b: int,
                          catalog: CrossingCatalog | None = None) -> PairPartition:
    """Deterministic first-fit matching of the crossings between a and b.

    Walking a's positions in index order, each + end takes the earliest
    unmatched - end on a; equivalently the k-th + end (by position) is
    paired with the k-th - end.  Raises NonzeroFlatLinking when the end
    counts differ, since then no matching exists at all.
    """
    catalog = catalog if catalog is not None else validate(code)
    plus, minus = [], []
    for x in catalog.pair_crossings(a, b):
        e = catalog.kind(x)
        if e.plus_component == a:
            plus.append((e.plus_pos, x))
        else:
            minus.append((e.minus_pos, x))
    if len(plus) != len(minus):
        raise NonzeroFlatLinking(len(plus) - len(minus))
    pairs = tuple((x, y) for (_, x), (_, y) in zip(sorted(plus), sorted(minus)))
    return PairPartition(a, b, pairs)


def pair_coefficient(code: FlatLinkCode, a: int, b: int,
                     partition: PairPartition,
                     catalog: CrossingCatalog | None = None) -> int:
    """Sum of eta_a(x+, y-) + eta_b(y+, x-) over the partition's pairs.

    The partition must cover the crossings between a and b exactly once
    with the orientation convention of PairPartition; anything else
    raises InvalidPartition.
    """
    catalog = catalog if catalog is not None else validate(code)
    if (partition.component_a, partition.component_b) != (a, b):
        raise InvalidPartition(
            f"partition is for components {partition.component_a},{partition.component_b}")
    crossings = set(catalog.pair_crossings(a, b))
    mentioned = [x for pair in partition.pairs for x in pair]
    if len(mentioned) != len(set(mentioned)) or set(mentioned) != crossings:
        raise InvalidPartition("pairs do not cover the crossings between the "
                               "two components exactly once")
    total = 0
    for x, y in partition.pairs:
        ex, ey = catalog.kind(x), catalog.kind(y)
        if ex.plus_component != a or ey.minus_component != a:
            raise InvalidPartition(f"pair ({x}, {y}) breaks the + end on first "
                                   "component convention")
        total += intersection_number(code, a, ex.plus_pos, ey.minus_pos)
        total += intersection_number(code, b, ey.plus_pos, ex.minus_pos)
    return total


def link_polynomial(code: FlatLinkCode) -> LinkInvariant:
    """Assemble the whole invariant of a validated code."""
    catalog = validate(code)
    names = [cw.name for cw in code.components]
    polys = sorted(((names[i], self_polynomial(code, i, catalog))
                    for i in range(len(names))), key=lambda t: t[0])
    diffs, coeffs = [], []
    for i, j in combinations(range(len(names)), 2):
        a, b = (i, j) if names[i] < names[j] else (j, i)
        d = flat_linking_diff(code, a, b, catalog)
        diffs.append(((names[a], names[b]), d))
        if d == 0:
            part = choose_pair_partition(code, a, b, catalog)
            coeffs.append(((names[a], names[b]),
                           pair_coefficient(code, a, b, part, catalog)))
    return LinkInvariant(tuple(polys), tuple(sorted(coeffs)), tuple(sorted(diffs)))


def invariants_equal(i1: LinkInvariant, i2: LinkInvariant,
                     up_to_component_bijection: bool = False) -> bool:
    """Compare two invariants, optionally searching component renamings."""
    if not up_to_component_bijection:
        return i1 == i2
    names1 = [n for n, _ in i1.component_polys]
    names2 = [n for n, _ in i2.component_polys]
    if len(names1) != len(names2):
        return False
    for image in permutations(names2):
        if i1.renamed(dict(zip(names1, image))) == i2:
            return True
    return False

"""Filamentations: partitions of a code's crossings into vanishing parts.

A monofilament is a single self-crossing x with arc count
``intersection_number(x+, x-) == 0``.  A bifilament is a pair {x, y}
whose ends align into two filaments, x+ with y- on one codeword and y+
with x- on another (possibly the same), such that the two arc counts sum
to zero.  The alignment forces the decomposition: a self-crossing can
only pair with a self-crossing of the same component, and a crossing
between components A and B only with another A-B crossing.

Construction is therefore componentwise.  Within one component, chords
counting +n are matched against chords counting -n.  Across two
components a zero-sum matching is grown one pair at a time; committing
any pair whose sum is zero is always safe (a failed later stage can be
repaired by exchanging partners, see ``elementary_switch``), so a stuck
greedy run proves that no matching exists.  ``brute_force_filamentation``
is the independent exhaustive check used to test the constructive route.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .gausscode import (
    PLUS,
    MINUS,
    CrossingCatalog,
    FlatLinkCode,
    FlatLinkError,
    SelfCrossing,
    intersection_number,
    validate,
)
from .invariant import NonzeroFlatLinking, PairPartition, flat_linking_diff

ORACLE_CAP = 12


class PartitionNotCovering(FlatLinkError):
    pass


class PartsOverlap(FlatLinkError):
    pass


class PairNotInPartition(FlatLinkError):
    pass


class InstanceTooLarge(FlatLinkError):
    pass


# A PairPartition whose every pair has arc-count sum zero.  The greedy
# and brute-force constructors below only ever return such partitions.
ZeroSumPartition = PairPartition


@dataclass(frozen=True)
class Filamentation:
    """A partition of the crossing set into mono- and bifilaments.

    Stored canonically: both tuples sorted, each bifilament pair sorted.
    Construction does not check the defining conditions; that is
    ``verify_filamentation``'s job.
    """

    monofilaments: tuple[str, ...] = ()
    bifilaments: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "monofilaments", tuple(sorted(self.monofilaments)))
        object.__setattr__(self, "bifilaments", tuple(
            sorted(tuple(sorted(p)) for p in self.bifilaments)))

    def parts(self):
        for x in self.monofilaments:
            yield (x,)
        for pair in self.bifilaments:
            yield pair

    def to_json(self) -> dict:
        return {"mono": list(self.monofilaments),
                "bi": [list(p) for p in self.bifilaments]}


@dataclass(frozen=True)
class FilamentViolation:
    part: tuple[str, ...]
    reason: str

    def __str__(self) -> str:
        return f"{{{', '.join(self.part)}}}: {self.reason}"


def _bifilament_sum(code: FlatLinkCode, catalog: CrossingCatalog,
                    x: str, y: str) -> int | None:
    """Arc-count sum of the pair {x, y}, or None if the ends misalign."""
    cxp, pxp = catalog.position(x, PLUS)
    cxm, pxm = catalog.position(x, MINUS)
    cyp, pyp = catalog.position(y, PLUS)
    cym, pym = catalog.position(y, MINUS)
    if cxp != cym or cxm != cyp:
        return None
    if pxp == pym or pyp == pxm:
        return None  # a letter cannot start and end the same filament
    return (intersection_number(code, cxp, pxp, pym)
            + intersection_number(code, cyp, pyp, pxm))


def verify_filamentation(code: FlatLinkCode, f: Filamentation) -> list[FilamentViolation]:
    """Check a claimed filamentation; an empty list means it is one.

    Global structure is enforced by raising: PartsOverlap when a crossing
    sits in two parts, PartitionNotCovering when the parts miss a
    crossing of the code or name one it does not have.  Per-part failures
    (misaligned ends, nonzero arc counts) come back as violations.
    """
    catalog = validate(code)
    all_ids = set(catalog.crossings())
    seen: set[str] = set()
    for part in f.parts():
        for x in part:
            if x in seen:
                raise PartsOverlap(f"crossing {x!r} appears in two parts")
            seen.add(x)
    if seen - all_ids:
        alien = sorted(seen - all_ids)
        raise PartitionNotCovering(f"not crossings of the code: {', '.join(alien)}")
    if all_ids - seen:
        missing = sorted(all_ids - seen)
        raise PartitionNotCovering(f"crossings not covered: {', '.join(missing)}")

    violations = []
    for x in f.monofilaments:
        e = catalog.kind(x)
        if not isinstance(e, SelfCrossing):
            violations.append(FilamentViolation(
                (x,), "monofilament ends lie on two components"))
            continue
        v = intersection_number(code, e.component, e.plus_pos, e.minus_pos)
        if v != 0:
            violations.append(FilamentViolation((x,), f"arc count {v:+d}, expected 0"))
    for x, y in f.bifilaments:
        s = _bifilament_sum(code, catalog, x, y)
        if s is None:
            violations.append(FilamentViolation(
                (x, y), "ends do not align into two filaments"))
        elif s != 0:
            violations.append(FilamentViolation(
                (x, y), f"arc count sum {s:+d}, expected 0"))
    return violations


def component_filamentation(code: FlatLinkCode, component: int,
                            catalog: CrossingCatalog | None = None) -> Filamentation | None:
    """Filamentation of one component's self-crossings, if one exists.

    Chords with arc count zero become monofilaments; for each n > 0 the
    chords counting +n are matched, in position order, against those
    counting -n.  Returns None on a count mismatch, which is exactly when
    the component polynomial is nonzero.  Assumes the component's total
    sign is zero (true whenever all pairwise linking differences vanish).
    """
    catalog = catalog if catalog is not None else validate(code)
    mono: list[str] = []
    by_value: dict[int, list[str]] = {}
    for x in catalog.self_crossings(component):
        e = catalog.kind(x)
        v = intersection_number(code, component, e.plus_pos, e.minus_pos)
        if v == 0:
            mono.append(x)
        else:
            by_value.setdefault(v, []).append(x)
    bi: list[tuple[str, str]] = []
    for n in sorted({abs(k) for k in by_value}):
        plus, minus = by_value.get(n, []), by_value.get(-n, [])
        if len(plus) != len(minus):
            return None
        bi.extend(zip(plus, minus))
    return Filamentation(tuple(mono), tuple(bi))


def greedy_zero_sum_partition(code: FlatLinkCode, a: int, b: int,
                              catalog: CrossingCatalog | None = None) -> PairPartition | None:
    """Zero-sum matching of the crossings between two components.

    Scans remaining crossings in position order on ``a``, commits the
    first pair whose arc-count sum is zero, and repeats on the rest.
    Committing any valid pair is safe, so a full scan with no hit on a
    nonempty remainder proves no zero-sum matching exists (None).
    Raises NonzeroFlatLinking when the end counts differ.
    """
    catalog = catalog if catalog is not None else validate(code)
    diff = flat_linking_diff(code, a, b, catalog)
    if diff != 0:
        raise NonzeroFlatLinking(diff)
    plus, minus = [], []
    for x in catalog.pair_crossings(a, b):
        e = catalog.kind(x)
        if e.plus_component == a:
            plus.append((e.plus_pos, x))
        else:
            minus.append((e.minus_pos, x))
    plus = [x for _, x in sorted(plus)]
    minus = [y for _, y in sorted(minus)]

    pairs: list[tuple[str, str]] = []
    while plus:
        hit = None
        for i, x in enumerate(plus):
            for j, y in enumerate(minus):
                if _bifilament_sum(code, catalog, x, y) == 0:
                    hit = (i, j)
                    break
            if hit:
                break
        if hit is None:
            return None
        i, j = hit
        pairs.append((plus.pop(i), minus.pop(j)))
    return PairPartition(a, b, tuple(pairs))


def link_filamentation(code: FlatLinkCode) -> Filamentation | None:
    """Greedy filamentation of the whole code, or None.

    Returns None immediately when some flat linking difference is
    nonzero; otherwise combines the componentwise matchings with a
    zero-sum matching for every component pair.
    """
    catalog = validate(code)
    k = len(code.components)
    for i, j in combinations(range(k), 2):
        if flat_linking_diff(code, i, j, catalog) != 0:
            return None
    mono: list[str] = []
    bi: list[tuple[str, str]] = []
    for i in range(k):
        part = component_filamentation(code, i, catalog)
        if part is None:
            return None
        mono.extend(part.monofilaments)
        bi.extend(part.bifilaments)
    for i, j in combinations(range(k), 2):
        if not catalog.pair_crossings(i, j):
            continue
        zp = greedy_zero_sum_partition(code, i, j, catalog)
        if zp is None:
            return None
        bi.extend(zp.pairs)
    return Filamentation(tuple(mono), tuple(bi))


def brute_force_filamentation(code: FlatLinkCode,
                              max_crossings: int = ORACLE_CAP) -> Filamentation | None:
    """Exhaustive backtracking search over all partitions into legal parts.

    Independent of the constructive route above, and used to test it.
    None is a proof of nonexistence within the definition, never an
    error.  Raises InstanceTooLarge over the crossing cap.
    """
    catalog = validate(code)
    ids = list(catalog.crossings())
    if len(ids) > max_crossings:
        raise InstanceTooLarge(
            f"{len(ids)} crossings exceeds the oracle cap of {max_crossings}")

    mono_ok: dict[str, bool] = {}
    for x in ids:
        e = catalog.kind(x)
        mono_ok[x] = (isinstance(e, SelfCrossing)
                      and intersection_number(code, e.component, e.plus_pos, e.minus_pos) == 0)
    pair_ok: dict[tuple[str, str], bool] = {}
    for x, y in combinations(ids, 2):
        pair_ok[(x, y)] = _bifilament_sum(code, catalog, x, y) == 0

    def solve(remaining: tuple[str, ...]) -> tuple[list[str], list[tuple[str, str]]] | None:
        if not remaining:
            return ([], [])
        x, rest = remaining[0], remaining[1:]
        if mono_ok[x]:
            sub = solve(rest)
            if sub is not None:
                return ([x] + sub[0], sub[1])
        for i, y in enumerate(rest):
            if pair_ok[(x, y)]:
                sub = solve(rest[:i] + rest[i + 1:])
                if sub is not None:
                    return (sub[0], [(x, y)] + sub[1])
        return None

    found = solve(tuple(ids))
    if found is None:
        return None
    return Filamentation(tuple(found[0]), tuple(found[1]))


def elementary_switch(partition: PairPartition,
                      pair1: tuple[str, str],
                      pair2: tuple[str, str]) -> PairPartition:
    """Exchange the minus-side crossings of two pairs of a matching.

    ((x, z), (w, y)) becomes ((x, y), (w, z)); the plus-side labels keep
    their places, so the orientation convention is preserved.  Applying
    the same switch again undoes it.
    """
    if pair1 == pair2:
        raise ValueError("need two distinct pairs to switch")
    pairs = list(partition.pairs)
    for p in (pair1, pair2):
        if p not in pairs:
            raise PairNotInPartition(f"pair {p!r} is not in the partition")
    i1, i2 = pairs.index(pair1), pairs.index(pair2)
    (x, z), (w, y) = pair1, pair2
    pairs[i1], pairs[i2] = (x, y), (w, z)
    return PairPartition(partition.component_a, partition.component_b, tuple(pairs))

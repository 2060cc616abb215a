"""Random code generation, exhaustive small-code enumeration, and
witness search for the two phenomena that separate the invariants:
a zero polynomial without any filamentation, and a many-component
link whose pair coefficient is nonzero.

Generation is seed-deterministic throughout.  Enumeration quotients the
raw codes by rotation plus crossing relabeling (exactly the relation
``codes_equivalent_syntactically`` decides with relabeling allowed) and
streams one representative per class in canonical order.  Search scans
code shapes smallest-first, verifying every candidate with the
exhaustive filamentation oracle rather than the greedy constructor, so
a returned witness is proof, not heuristic output.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product
from random import Random

from .filament import ORACLE_CAP, InstanceTooLarge, brute_force_filamentation
from .gausscode import (
    PLUS,
    MINUS,
    Codeword,
    FlatLinkCode,
    FlatLinkError,
    Letter,
    default_component_name,
)
from .invariant import link_polynomial

ENUMERATION_CAP = 6


class InfeasibleSpec(FlatLinkError):
    pass


@dataclass(frozen=True)
class GenSpec:
    """Shape of a random code: how many crossings of each kind, where.

    self_counts[i] is the number of self-crossings of component i;
    pair_counts maps each component pair (i, j), i < j, to its crossing
    count.  With ``balanced`` set, every pair gets equally many + and -
    ends on each side, which forces all flat linking differences to 0
    (and with them every codeword's total sign).
    """

    self_counts: tuple[int, ...]
    pair_counts: tuple[tuple[tuple[int, int], int], ...] = ()
    seed: int = 0
    balanced: bool = False

    def __post_init__(self):
        k = len(self.self_counts)
        if any(m < 0 for m in self.self_counts):
            raise InfeasibleSpec("negative self-crossing count")
        seen = set()
        for (i, j), m in self.pair_counts:
            if not (0 <= i < j < k):
                raise InfeasibleSpec(f"bad component pair ({i}, {j})")
            if (i, j) in seen:
                raise InfeasibleSpec(f"duplicate component pair ({i}, {j})")
            seen.add((i, j))
            if m < 0:
                raise InfeasibleSpec("negative pair-crossing count")
            if self.balanced and m % 2:
                raise InfeasibleSpec(
                    f"balanced spec needs an even crossing count for ({i}, {j})")

    @classmethod
    def build(cls, components: int, self_counts=None, pair_counts=None,
              seed: int = 0, balanced: bool = False) -> "GenSpec":
        """Normalize loose arguments: self_counts may be omitted (all 0)
        and pair_counts may be a mapping with keys in either order."""
        if components < 0:
            raise InfeasibleSpec("negative component count")
        selfs = tuple(self_counts) if self_counts is not None else (0,) * components
        if len(selfs) != components:
            raise InfeasibleSpec("self_counts length differs from component count")
        pairs = {}
        for key, m in dict(pair_counts or {}).items():
            i, j = sorted(key)
            pairs[(i, j)] = pairs.get((i, j), 0) + m
        return cls(selfs, tuple(sorted(pairs.items())), seed, balanced)

    @property
    def component_count(self) -> int:
        return len(self.self_counts)

    @property
    def crossing_count(self) -> int:
        return sum(self.self_counts) + sum(m for _, m in self.pair_counts)


def random_flat_link(spec: GenSpec) -> FlatLinkCode:
    """A uniformly shuffled valid code with the spec's crossing counts.

    Crossing ids are c1, c2, ... in allocation order (self-crossings by
    component, then pair crossings by pair).  Deterministic in the seed.
    """
    rng = Random(spec.seed)
    pools: list[list[Letter]] = [[] for _ in range(spec.component_count)]
    counter = 0

    def fresh() -> str:
        nonlocal counter
        counter += 1
        return f"c{counter}"

    for i, m in enumerate(spec.self_counts):
        for _ in range(m):
            x = fresh()
            pools[i].append(Letter(x, PLUS))
            pools[i].append(Letter(x, MINUS))
    for (i, j), m in spec.pair_counts:
        if spec.balanced:
            plus_on_i = set(rng.sample(range(m), m // 2))
        else:
            plus_on_i = {t for t in range(m) if rng.random() < 0.5}
        for t in range(m):
            x = fresh()
            si, sj = (PLUS, MINUS) if t in plus_on_i else (MINUS, PLUS)
            pools[i].append(Letter(x, si))
            pools[j].append(Letter(x, sj))
    comps = []
    for i, pool in enumerate(pools):
        rng.shuffle(pool)
        comps.append(Codeword(default_component_name(i), tuple(pool)))
    return FlatLinkCode(tuple(comps))


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _fillings(total: int):
    """Every way to fill ``total`` slots with the two ends of total/2
    chords, labels numbered by first occurrence, each end signed.

    First-occurrence labeling means every labeled sequence comes out
    exactly once; the sign of a chord's second end is forced.
    """

    def rec(out: list, open_: list):
        slot = len(out)
        if slot == total:
            if not open_:
                yield tuple(out)
            return
        for i, (label, sign) in enumerate(open_):
            out.append((label, -sign))
            yield from rec(out, open_[:i] + open_[i + 1:])
            out.pop()
        # feasible iff every open chord (incl. this one) still fits a
        # closing end; parity works out because slot == open (mod 2)
        if len(open_) + 2 <= total - slot:
            label = (slot + len(open_)) // 2 + 1  # chords started so far, plus one
            for sign in (PLUS, MINUS):
                out.append((label, sign))
                yield from rec(out, open_ + [(label, sign)])
                out.pop()

    yield from rec([], [])


def _canonical_key(parts: tuple[tuple[tuple[int, int], ...], ...]):
    """Least relabeled form over all per-component rotations.

    Component order stays fixed and names play no part, matching what
    codes_equivalent_syntactically(..., allow_relabel=True) identifies.
    """
    best = None
    ranges = [range(len(p)) if p else range(1) for p in parts]
    for rots in product(*ranges):
        relabel: dict[int, int] = {}
        key = []
        for part, r in zip(parts, rots):
            rotated = part[r:] + part[:r]
            comp_key = []
            for label, sign in rotated:
                if label not in relabel:
                    relabel[label] = len(relabel) + 1
                comp_key.append((relabel[label], sign))
            key.append(tuple(comp_key))
        key = tuple(key)
        if best is None or key < best:
            best = key
    return best


def _code_from_key(key) -> FlatLinkCode:
    comps = []
    for i, part in enumerate(key):
        letters = tuple(Letter(f"c{label}", sign) for label, sign in part)
        comps.append(Codeword(default_component_name(i), letters))
    return FlatLinkCode(tuple(comps))


def enumerate_small_codes(crossings: int, components: int,
                          cap: int = ENUMERATION_CAP):
    """Yield one code per rotation/relabel class with exactly the given
    crossing and component counts, in canonical order.

    The class count grows like (2n-1)!! 2^n, so the default cap keeps
    this to desk scale; raise ``cap`` knowingly.
    """
    if crossings < 0 or components < 0:
        raise ValueError("counts must be nonnegative")
    if crossings > cap:
        raise InstanceTooLarge(
            f"{crossings} crossings exceeds the enumeration cap of {cap}")
    keys = set()
    for sizes in _compositions(2 * crossings, components):
        for filling in _fillings(2 * crossings):
            parts = []
            at = 0
            for s in sizes:
                parts.append(filling[at:at + s])
                at += s
            keys.add(_canonical_key(tuple(parts)))
    for key in sorted(keys):
        yield _code_from_key(key)


class SearchGoal(str, Enum):
    ZERO_POLY_NO_FILAMENTATION = "zero-poly-no-filamentation"
    NONZERO_MULTI_COMPONENT = "nonzero-multi-component"


@dataclass(frozen=True)
class SearchLimits:
    """Bounds for search_examples: component and crossing maxima, plus
    how many random codes to try per shape past the enumeration cap."""

    max_components: int = 2
    max_crossings: int = 8
    samples: int = 2000
    seed: int = 0

    def __post_init__(self):
        if self.max_components < 0 or self.max_crossings < 0 or self.samples < 0:
            raise ValueError("limits must be nonnegative")


def _is_witness(goal: SearchGoal, code: FlatLinkCode) -> bool:
    inv = link_polynomial(code)
    if goal is SearchGoal.ZERO_POLY_NO_FILAMENTATION:
        return inv.is_zero and brute_force_filamentation(code) is None
    return any(c != 0 for _, c in inv.pair_coeffs)


def _scan_chunk(args) -> int | None:
    goal_value, codes = args
    goal = SearchGoal(goal_value)
    for at, code in enumerate(codes):
        if _is_witness(goal, code):
            return at
    return None


def _random_balanced_spec(crossings: int, components: int, seed: int) -> GenSpec:
    rng = Random(seed)
    pair_keys = list(combinations(range(components), 2))
    counts = {key: 0 for key in pair_keys}
    matched = rng.randint(0, crossings // 2) if pair_keys else 0
    for _ in range(matched):
        counts[pair_keys[rng.randrange(len(pair_keys))]] += 2
    selfs = [0] * components
    for _ in range(crossings - 2 * matched):
        selfs[rng.randrange(components)] += 1
    return GenSpec.build(components, selfs, counts,
                         seed=rng.randrange(2 ** 30), balanced=True)


def _stage_candidates(crossings: int, components: int,
                      limits: SearchLimits) -> list[FlatLinkCode]:
    if crossings <= ENUMERATION_CAP:
        return list(enumerate_small_codes(crossings, components))
    base = limits.seed * 1_000_003 + crossings * 10_007 + components * 101
    return [random_flat_link(_random_balanced_spec(crossings, components, base + s))
            for s in range(limits.samples)]


def search_examples(goal: SearchGoal | str, limits: SearchLimits,
                    jobs: int = 1) -> FlatLinkCode | None:
    """Scan small codes for a witness of the goal; None if none in bounds.

    Shapes are visited smallest-first (crossings, then components) and
    candidates in canonical enumeration order, so the result does not
    depend on ``jobs``; workers only split the verification of a stage.
    Knots cannot witness the zero-poly goal (for one component the
    polynomial decides filamentation), so that scan starts at two
    components.  A witness is verified with the exhaustive oracle.
    """
    goal = SearchGoal(goal)
    if limits.max_crossings > ORACLE_CAP:
        raise InstanceTooLarge(
            f"search beyond {ORACLE_CAP} crossings cannot be oracle-verified")
    least = 2 if goal is SearchGoal.ZERO_POLY_NO_FILAMENTATION else 3
    for crossings in range(limits.max_crossings + 1):
        for components in range(least, limits.max_components + 1):
            candidates = _stage_candidates(crossings, components, limits)
            hit = _scan_stage(goal, candidates, jobs)
            if hit is not None:
                return hit
    return None


def _scan_stage(goal: SearchGoal, candidates: list[FlatLinkCode],
                jobs: int) -> FlatLinkCode | None:
    if jobs <= 1 or len(candidates) < 2 * jobs:
        for code in candidates:
            if _is_witness(goal, code):
                return code
        return None
    size = (len(candidates) + jobs - 1) // jobs
    chunks = [candidates[at:at + size] for at in range(0, len(candidates), size)]
    tasks = [(goal.value, tuple(chunk)) for chunk in chunks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        firsts = list(pool.map(_scan_chunk, tasks))
    best = None
    for chunk_index, local in enumerate(firsts):
        if local is not None:
            at = chunk_index * size + local
            if best is None or at < best:
                best = at
    return candidates[best] if best is not None else None

"""Shared test machinery: independent oracles and random-code makers.

The oracles recompute everything from the raw letter sequences with
list slicing, so they share no cyclic-walk arithmetic with the library.
"""

import random
from itertools import combinations, permutations

from hypothesis import strategies as st

from flatlinks import FlatLinkCode, GenSpec, random_flat_link


def eta_oracle(code: FlatLinkCode, component: int, p: int, q: int) -> int:
    """Signed letter count strictly between p and q, by list doubling."""
    letters = code.components[component].letters
    n = len(letters)
    doubled = list(letters) + list(letters)
    end = q if q > p else q + n
    return sum(l.sign for l in doubled[p + 1:end])


def letter_ends(code: FlatLinkCode) -> dict:
    """crossing id -> {sign: (component, position)} scanned from letters."""
    out: dict = {}
    for ci, cw in enumerate(code.components):
        for pos, letter in enumerate(cw.letters):
            out.setdefault(letter.crossing, {})[letter.sign] = (ci, pos)
    return out


def self_poly_oracle(code: FlatLinkCode, component: int) -> dict[int, int]:
    """Exponent -> coefficient dict of one component's polynomial."""
    coeffs: dict[int, int] = {}
    for ends in letter_ends(code).values():
        (cp, pp), (cm, pm) = ends[1], ends[-1]
        if cp == component and cm == component:
            v = eta_oracle(code, component, pp, pm)
            if v != 0:
                coeffs[abs(v)] = coeffs.get(abs(v), 0) + v
    return {e: c for e, c in coeffs.items() if c != 0}


def linking_diff_oracle(code: FlatLinkCode, a: int, b: int) -> int:
    diff = 0
    for ends in letter_ends(code).values():
        (cp, _), (cm, _) = ends[1], ends[-1]
        if {cp, cm} == {a, b}:
            diff += 1 if cp == a else -1
    return diff


def pair_ends_oracle(code: FlatLinkCode, a: int, b: int):
    """(plus, minus): ids with + end on a resp. - end on a, by position."""
    plus, minus = [], []
    for x, ends in letter_ends(code).items():
        (cp, pp), (cm, pm) = ends[1], ends[-1]
        if {cp, cm} == {a, b}:
            if cp == a:
                plus.append((pp, x))
            else:
                minus.append((pm, x))
    return [x for _, x in sorted(plus)], [x for _, x in sorted(minus)]


def matching_sum_oracle(code: FlatLinkCode, a: int, b: int,
                        pairs) -> int:
    """Total eta_a(x+, y-) + eta_b(y+, x-) over a pairing of AB ids."""
    ends = letter_ends(code)
    total = 0
    for x, y in pairs:
        total += eta_oracle(code, a, ends[x][1][1], ends[y][-1][1])
        total += eta_oracle(code, b, ends[y][1][1], ends[x][-1][1])
    return total


def all_matchings(plus, minus):
    for perm in permutations(minus):
        yield tuple(zip(plus, perm))


def zero_matching_exists_oracle(code: FlatLinkCode, a: int, b: int) -> bool:
    """Exhaustively: is there a pairing whose every pair sums to zero?"""
    ends = letter_ends(code)
    plus, minus = pair_ends_oracle(code, a, b)
    if len(plus) != len(minus):
        return False

    def pair_sum(x, y):
        return (eta_oracle(code, a, ends[x][1][1], ends[y][-1][1])
                + eta_oracle(code, b, ends[y][1][1], ends[x][-1][1]))

    return any(all(pair_sum(x, y) == 0 for x, y in m)
               for m in all_matchings(plus, minus))


def random_code(rng: random.Random, max_crossings: int = 6,
                max_components: int = 3, balanced: bool = False,
                min_components: int = 1) -> FlatLinkCode:
    """One random code: crossing budget split over self and pair slots."""
    k = rng.randint(min_components, max_components)
    self_counts = [0] * k
    pair_counts: dict[tuple[int, int], int] = {}
    slots = list(combinations(range(k), 2))
    budget = rng.randint(1, max_crossings)
    while budget > 0:
        if slots and rng.random() < 0.5:
            pair = rng.choice(slots)
            step = 2 if balanced else 1
            if budget >= step:
                pair_counts[pair] = pair_counts.get(pair, 0) + step
                budget -= step
                continue
        self_counts[rng.randrange(k)] += 1
        budget -= 1
    spec = GenSpec.build(k, self_counts, pair_counts,
                         seed=rng.getrandbits(32), balanced=balanced)
    return random_flat_link(spec)


@st.composite
def codes(draw, max_crossings: int = 6, max_components: int = 3,
          balanced: bool = False, min_components: int = 1):
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    return random_code(rng, max_crossings, max_components, balanced,
                       min_components)

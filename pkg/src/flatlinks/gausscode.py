"""Gauss codes for flat virtual links.

A link is stored as an ordered tuple of cyclic codewords, one per
component.  Every crossing appears exactly twice in the whole code, once
as ``x+`` and once as ``x-``; the two letters may sit on the same
codeword (a self-crossing) or on two different ones.  This module owns
the data model, the text format, structural validation, and the signed
arc-count primitive that everything else in the package is built from.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

PLUS = 1
MINUS = -1

_TOKEN = re.compile(r"([A-Za-z0-9_]+)([+-])\Z")
_IDENT = re.compile(r"[A-Za-z0-9_]+\Z")


class FlatLinkError(Exception):
    """Base class for every error raised by this package."""


class MalformedToken(FlatLinkError):
    def __init__(self, token: str):
        super().__init__(f"cannot read {token!r} as <identifier><+|->")
        self.token = token


class DuplicateComponentName(FlatLinkError):
    def __init__(self, name: str):
        super().__init__(f"component name {name!r} used more than once")
        self.name = name


class CrossingAppearsOnce(FlatLinkError):
    def __init__(self, crossing: str):
        super().__init__(f"crossing {crossing!r} appears only once")
        self.crossing = crossing


class CrossingAppearsThrice(FlatLinkError):
    def __init__(self, crossing: str, count: int = 3):
        super().__init__(f"crossing {crossing!r} appears {count} times, expected 2")
        self.crossing = crossing
        self.count = count


class SameSignTwice(FlatLinkError):
    def __init__(self, crossing: str):
        super().__init__(f"both letters of crossing {crossing!r} carry the same sign")
        self.crossing = crossing


class SamePosition(FlatLinkError):
    pass


class PositionOutOfRange(FlatLinkError):
    pass


def sign_char(sign: int) -> str:
    return "+" if sign == PLUS else "-"


def default_component_name(index: int) -> str:
    # A, B, ..., Z, then C26, C27, ...
    return chr(ord("A") + index) if index < 26 else f"C{index}"


@dataclass(frozen=True)
class Letter:
    """One end of a crossing: the crossing's identifier plus this end's sign."""

    crossing: str
    sign: int

    def __post_init__(self):
        if self.sign not in (PLUS, MINUS):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")
        if not _IDENT.match(self.crossing):
            raise MalformedToken(self.crossing)

    @property
    def partner(self) -> "Letter":
        """The other end of the same crossing."""
        return Letter(self.crossing, -self.sign)

    def __str__(self) -> str:
        return f"{self.crossing}{sign_char(self.sign)}"


@dataclass(frozen=True)
class Codeword:
    """A named cyclic word of letters.

    Which letter sits at index 0 is a representation artifact: semantic
    operations elsewhere never depend on the stored rotation, and tests
    hold them to that.  Dataclass equality is exact (name and rotation
    included); use ``equals_up_to_rotation`` for the cyclic notion.
    A codeword may be empty (a crossing-free component).
    """

    name: str
    letters: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def letter(self, pos: int) -> Letter:
        """Letter at a position, index arithmetic modulo the length."""
        return self.letters[pos % len(self.letters)]

    def rotated(self, k: int) -> "Codeword":
        if not self.letters:
            return self
        k %= len(self.letters)
        return Codeword(self.name, self.letters[k:] + self.letters[:k])

    def equals_up_to_rotation(self, other: "Codeword") -> bool:
        """Letter equality under some rotation; names are not compared."""
        if len(self.letters) != len(other.letters):
            return False
        if not self.letters:
            return True
        doubled = self.letters + self.letters
        n = len(self.letters)
        return any(doubled[k:k + n] == other.letters for k in range(n))

    def __str__(self) -> str:
        return " ".join(str(l) for l in self.letters)


@dataclass(frozen=True)
class FlatLinkCode:
    """A flat virtual link: an ordered tuple of named cyclic codewords."""

    components: tuple[Codeword, ...] = ()

    def component_names(self) -> tuple[str, ...]:
        return tuple(cw.name for cw in self.components)

    def component_index(self, name: str) -> int:
        for i, cw in enumerate(self.components):
            if cw.name == name:
                return i
        raise KeyError(name)

    def crossing_ids(self) -> tuple[str, ...]:
        """Distinct crossing identifiers in first-occurrence order."""
        seen: dict[str, None] = {}
        for cw in self.components:
            for letter in cw.letters:
                seen.setdefault(letter.crossing)
        return tuple(seen)

    def rotated(self, component: int, k: int) -> "FlatLinkCode":
        parts = list(self.components)
        parts[component] = parts[component].rotated(k)
        return FlatLinkCode(tuple(parts))

    def __str__(self) -> str:
        return render_flat_link(self)


@dataclass(frozen=True)
class SelfCrossing:
    """Both ends on one component."""

    component: int
    plus_pos: int
    minus_pos: int


@dataclass(frozen=True)
class PairCrossing:
    """One end on each of two distinct components."""

    plus_component: int
    plus_pos: int
    minus_component: int
    minus_pos: int


class CrossingCatalog:
    """Classification of every crossing of a validated code.

    ``self_crossings(i)`` lists the crossings with both letters on
    component ``i``, ordered by the + letter's position.
    ``pair_crossings(i, j)`` lists the crossings with one end on each of
    two distinct components, ordered by position on the smaller index.
    Treat instances as read-only.
    """

    def __init__(self, entries: dict[str, SelfCrossing | PairCrossing]):
        self.entries = dict(entries)
        self._self: dict[int, list[str]] = {}
        self._pairs: dict[tuple[int, int], list[str]] = {}
        for x, e in self.entries.items():
            if isinstance(e, SelfCrossing):
                self._self.setdefault(e.component, []).append(x)
            else:
                key = (min(e.plus_component, e.minus_component),
                       max(e.plus_component, e.minus_component))
                self._pairs.setdefault(key, []).append(x)
        for comp, ids in self._self.items():
            ids.sort(key=lambda x: self.entries[x].plus_pos)
        for (a, _b), ids in self._pairs.items():
            ids.sort(key=lambda x: self._position_on(x, a))

    def _position_on(self, x: str, component: int) -> int:
        e = self.entries[x]
        return e.plus_pos if e.plus_component == component else e.minus_pos

    def kind(self, x: str) -> SelfCrossing | PairCrossing:
        return self.entries[x]

    def crossings(self) -> tuple[str, ...]:
        return tuple(self.entries)

    def self_crossings(self, component: int) -> tuple[str, ...]:
        return tuple(self._self.get(component, ()))

    def pair_crossings(self, a: int, b: int) -> tuple[str, ...]:
        return tuple(self._pairs.get((min(a, b), max(a, b)), ()))

    def position(self, x: str, sign: int) -> tuple[int, int]:
        """(component, position) of one end of a crossing."""
        e = self.entries[x]
        if isinstance(e, SelfCrossing):
            return (e.component, e.plus_pos if sign == PLUS else e.minus_pos)
        if sign == PLUS:
            return (e.plus_component, e.plus_pos)
        return (e.minus_component, e.minus_pos)


def parse_flat_link(text: str) -> FlatLinkCode:
    """Parse the text format into a code.

    Components are separated by ``;`` or newlines.  Letters are
    whitespace-separated ``<identifier><+|->`` tokens where identifiers
    are runs of ASCII alphanumerics or underscores.  A leading
    ``name:`` names a component; segments left unnamed get A, B, C, ...
    by position.  ``#`` starts a comment running to end of line.  A
    named segment with no letters is a crossing-free component; unnamed
    blank segments are skipped, so empty input is the empty link.

    Pairing of crossings is not checked here; run ``validate`` for that.
    """
    cleaned = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    segments: list[tuple[str | None, tuple[Letter, ...]]] = []
    for raw in cleaned.replace("\n", ";").split(";"):
        name = None
        body = raw
        if ":" in raw:
            head, body = raw.split(":", 1)
            head = head.strip()
            if not _IDENT.match(head):
                raise MalformedToken(head)
            name = head
        letters = []
        for token in body.split():
            m = _TOKEN.match(token)
            if not m:
                raise MalformedToken(token)
            letters.append(Letter(m.group(1), PLUS if m.group(2) == "+" else MINUS))
        if name is None and not letters:
            continue
        segments.append((name, tuple(letters)))

    components = []
    used = set()
    for i, (name, letters) in enumerate(segments):
        if name is None:
            name = default_component_name(i)
        if name in used:
            raise DuplicateComponentName(name)
        used.add(name)
        components.append(Codeword(name, letters))
    return FlatLinkCode(tuple(components))


def render_flat_link(code: FlatLinkCode) -> str:
    """Inverse of ``parse_flat_link``; the round trip is exact.

    Components carrying their positional default name are rendered as
    bare letters; every other component (and every empty one) keeps its
    ``name:`` prefix so that parsing recovers it.
    """
    parts = []
    for i, cw in enumerate(code.components):
        body = " ".join(str(l) for l in cw.letters)
        if cw.name != default_component_name(i) or not cw.letters:
            body = f"{cw.name}: {body}" if body else f"{cw.name}:"
        parts.append(body)
    return " ; ".join(parts)


def validate(code: FlatLinkCode) -> CrossingCatalog:
    """Check the structural invariants and classify every crossing.

    Component names must be distinct, and every crossing identifier must
    occur exactly twice with opposite signs.  Raises
    DuplicateComponentName, CrossingAppearsOnce, CrossingAppearsThrice,
    or SameSignTwice naming the offender; returns the catalog so callers
    never re-derive the classification.
    """
    names = set()
    for cw in code.components:
        if cw.name in names:
            raise DuplicateComponentName(cw.name)
        names.add(cw.name)

    ends: dict[str, list[tuple[int, int, int]]] = {}
    for ci, cw in enumerate(code.components):
        for pos, letter in enumerate(cw.letters):
            ends.setdefault(letter.crossing, []).append((ci, pos, letter.sign))

    entries: dict[str, SelfCrossing | PairCrossing] = {}
    for x, occ in ends.items():
        if len(occ) == 1:
            raise CrossingAppearsOnce(x)
        if len(occ) > 2:
            raise CrossingAppearsThrice(x, len(occ))
        first, second = occ
        if first[2] == second[2]:
            raise SameSignTwice(x)
        if first[2] == MINUS:
            first, second = second, first
        (pc, pp, _), (mc, mp, _) = first, second
        if pc == mc:
            entries[x] = SelfCrossing(pc, pp, mp)
        else:
            entries[x] = PairCrossing(pc, pp, mc, mp)
    return CrossingCatalog(entries)


def total_sign(code: FlatLinkCode, component: int) -> int:
    """Sum of the letter signs on one component."""
    return sum(l.sign for l in code.components[component].letters)


def intersection_number(code: FlatLinkCode, component: int,
                        from_pos: int, to_pos: int) -> int:
    """Signed count of the letters strictly between two positions.

    Walk forward (cyclically) from ``from_pos`` to ``to_pos``: the result
    is the number of + letters met minus the number of - letters, the two
    endpoint letters excluded.  Every letter of the codeword counts,
    including ends of crossings shared with other components.
    """
    cw = code.components[component]
    n = len(cw)
    for p in (from_pos, to_pos):
        if not 0 <= p < n:
            raise PositionOutOfRange(f"position {p} not in 0..{n - 1} on component {component}")
    if from_pos == to_pos:
        raise SamePosition(f"positions must differ, both are {from_pos}")
    s = 0
    i = (from_pos + 1) % n
    while i != to_pos:
        s += cw.letters[i].sign
        i = (i + 1) % n
    return s


def codes_equivalent_syntactically(c1: FlatLinkCode, c2: FlatLinkCode,
                                   allow_relabel: bool = False) -> bool:
    """Equality of codes up to a rotation of each codeword.

    With ``allow_relabel``, one bijective renaming of crossings (applied
    consistently across the whole code) and arbitrary renaming of
    components is also allowed.  Component order still matters, and
    letter signs are never touched.
    """
    a, b = c1.components, c2.components
    if len(a) != len(b) or any(len(x) != len(y) for x, y in zip(a, b)):
        return False
    if not allow_relabel:
        return all(x.name == y.name and x.equals_up_to_rotation(y)
                   for x, y in zip(a, b))

    def extend(i: int, fwd: dict[str, str], rev: dict[str, str]) -> bool:
        if i == len(a):
            return True
        x, y = a[i], b[i]
        if not x.letters:
            return extend(i + 1, fwd, rev)
        doubled = x.letters + x.letters
        n = len(x.letters)
        for k in range(n):
            rot = doubled[k:k + n]
            if any(l.sign != m.sign for l, m in zip(rot, y.letters)):
                continue
            trial_f, trial_r = dict(fwd), dict(rev)
            ok = True
            for l, m in zip(rot, y.letters):
                u = trial_f.get(l.crossing)
                v = trial_r.get(m.crossing)
                if u is None and v is None:
                    trial_f[l.crossing] = m.crossing
                    trial_r[m.crossing] = l.crossing
                elif u != m.crossing or v != l.crossing:
                    ok = False
                    break
            if ok and extend(i + 1, trial_f, trial_r):
                return True
        return False

    return extend(0, {}, {})


def relabeled(code: FlatLinkCode, mapping: dict[str, str]) -> FlatLinkCode:
    """Rename crossings; identifiers absent from the mapping are kept."""
    return FlatLinkCode(tuple(
        Codeword(cw.name, tuple(Letter(mapping.get(l.crossing, l.crossing), l.sign)
                                for l in cw.letters))
        for cw in code.components))

"""Ground sets, subset words, and canonically ordered set families.

A subset of the ground set {1, ..., m} is a plain ``int`` bit word: bit
``i - 1`` is set exactly when element ``i`` is in the subset.  Element
indices are 1-based everywhere in I/O, bit positions 0-based internally.
A :class:`SetFamily` keeps its member words deduplicated and sorted in
ascending numeric order; that single canonical order fixes every
tie-break and report ordering downstream, so results are reproducible
across runs and platforms.

All values here are immutable; every operation is a pure function.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import (
    BadElement,
    BadFormat,
    BadParam,
    CapExceeded,
    DuplicateSet,
)

#: Largest supported ground set; one machine word of headroom is plenty for
#: desk-scale experiments, which rarely go past m ~ 20.
WORD_CAP = 64


def word_from_elements(elements: Iterable[int], m: int) -> int:
    """Pack 1-based element indices into a bit word over a ground set of size m."""
    word = 0
    for x in elements:
        if not isinstance(x, int) or isinstance(x, bool):
            raise BadFormat(f"element {x!r} is not an integer")
        if x < 1 or x > m:
            raise BadElement(f"element {x} out of range 1..{m}")
        bit = 1 << (x - 1)
        if word & bit:
            raise BadFormat(f"element {x} repeated within one set")
        word |= bit
    return word


def elements_of(word: int) -> tuple[int, ...]:
    """Unpack a bit word into ascending 1-based element indices."""
    return tuple(i + 1 for i in range(word.bit_length()) if (word >> i) & 1)


def bit_values(word: int) -> list[int]:
    """List the set bits of ``word`` as single-bit ints, ascending."""
    out = []
    while word:
        b = word & -word
        out.append(b)
        word ^= b
    return out


def format_word(word: int) -> str:
    """Render a subset word like ``{1,3}`` (``{}`` for the empty set)."""
    return "{" + ",".join(str(i) for i in elements_of(word)) + "}"


@dataclass(frozen=True)
class GroundSet:
    """The m-element universe whose subsets form family members."""

    m: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if not isinstance(self.m, int) or isinstance(self.m, bool) or self.m < 1:
            raise BadParam(f"ground set size must be a positive integer, got {self.m!r}")
        if self.m > WORD_CAP:
            raise CapExceeded(f"ground set size {self.m} exceeds the cap of {WORD_CAP}")
        if self.labels is not None and len(self.labels) != self.m:
            raise BadParam("labels, when given, must name all m elements")

    @property
    def full_word(self) -> int:
        return (1 << self.m) - 1

    def element_bits(self) -> list[int]:
        return [1 << i for i in range(self.m)]


@dataclass(frozen=True)
class SetFamily:
    """A deduplicated family of subset words in canonical ascending order."""

    ground: GroundSet
    sets: tuple[int, ...]

    def __post_init__(self):
        m = self.ground.m
        prev = -1
        for w in self.sets:
            if w >> m:
                raise BadElement(
                    f"set {format_word(w)} uses elements beyond m={m}")
            if w == prev:
                raise DuplicateSet(f"set {format_word(w)} appears twice")
            if w < prev:
                raise BadParam("family words must be in ascending order; "
                               "use SetFamily.from_words")
            prev = w

    @classmethod
    def from_words(cls, ground: GroundSet, words: Iterable[int]) -> "SetFamily":
        return cls(ground, tuple(sorted(words)))

    @classmethod
    def from_element_lists(cls, m: int,
                           lists: Iterable[Iterable[int]]) -> "SetFamily":
        ground = GroundSet(m)
        return cls.from_words(ground, (word_from_elements(xs, m) for xs in lists))

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[int]:
        return iter(self.sets)

    @cached_property
    def _member_set(self) -> frozenset[int]:
        return frozenset(self.sets)

    def contains(self, word: int) -> bool:
        return word in self._member_set

    @cached_property
    def even(self) -> bool:
        """True when every member set has even cardinality."""
        return all(w.bit_count() % 2 == 0 for w in self.sets)

    @cached_property
    def pointed(self) -> bool:
        """True when the empty set is a member."""
        return bool(self.sets) and self.sets[0] == 0

    def potential(self) -> int:
        """Sum of member cardinalities; the quantity shifting drives down."""
        return sum(w.bit_count() for w in self.sets)

    def max_size(self) -> int:
        return max((w.bit_count() for w in self.sets), default=0)


@dataclass(frozen=True)
class FamilySummary:
    even: bool
    pointed: bool
    sum_sizes: int


def classify_family(fam: SetFamily) -> FamilySummary:
    """Report the even/pointed flags and the shifting potential of a family."""
    return FamilySummary(even=fam.even, pointed=fam.pointed,
                         sum_sizes=fam.potential())


_HEADER_RE = re.compile(r"^m\s*=\s*(\d+)$")


def parse_family(text: str) -> SetFamily:
    """Parse a family document (text grammar, or JSON if it starts with '{').

    Text grammar: optional '#' comment lines; first non-comment line
    ``m=<int>``; every later non-comment line is one set, either ``-``
    (the empty set) or strictly ascending 1-based indices separated by
    spaces.
    """
    if text.lstrip().startswith("{"):
        return _parse_json_family(text)
    m: int | None = None
    ground: GroundSet | None = None
    words: list[int] = []
    seen: set[int] = set()
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ground is None:
            match = _HEADER_RE.match(line)
            if not match:
                raise BadFormat("first non-comment line must be 'm=<int>'")
            m = int(match.group(1))
            ground = GroundSet(m)
            continue
        if line == "-":
            word = 0
        else:
            try:
                indices = [int(tok) for tok in line.split()]
            except ValueError:
                raise BadFormat(f"set line {line!r} contains a non-integer token")
            if any(b <= a for a, b in zip(indices, indices[1:])):
                raise BadFormat(f"set line {line!r} is not strictly ascending")
            word = word_from_elements(indices, m)
        if word in seen:
            raise DuplicateSet(f"set {format_word(word)} appears twice")
        seen.add(word)
        words.append(word)
    if ground is None:
        raise BadFormat("missing 'm=<int>' header")
    return SetFamily.from_words(ground, words)


def _parse_json_family(text: str) -> SetFamily:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadFormat(f"invalid JSON family document: {exc}")
    return family_from_json_obj(obj)


def family_from_json_obj(obj) -> SetFamily:
    if not isinstance(obj, dict) or "m" not in obj or "sets" not in obj:
        raise BadFormat("JSON family must be an object with 'm' and 'sets'")
    m = obj["m"]
    if not isinstance(m, int) or isinstance(m, bool):
        raise BadFormat("'m' must be an integer")
    ground = GroundSet(m)
    raw_sets = obj["sets"]
    if not isinstance(raw_sets, list):
        raise BadFormat("'sets' must be a list of element lists")
    words = []
    seen: set[int] = set()
    for xs in raw_sets:
        if not isinstance(xs, list):
            raise BadFormat("every set must be a list of element indices")
        word = word_from_elements(sorted(xs), m)
        if len(xs) != word.bit_count():
            raise BadFormat("a set repeats an element")
        if word in seen:
            raise DuplicateSet(f"set {format_word(word)} appears twice")
        seen.add(word)
        words.append(word)
    return SetFamily.from_words(ground, words)


def serialize_family(fam: SetFamily) -> str:
    """Emit the canonical text form (round-trips through :func:`parse_family`)."""
    lines = [f"m={fam.ground.m}"]
    for w in fam.sets:
        lines.append("-" if w == 0 else " ".join(str(i) for i in elements_of(w)))
    return "\n".join(lines) + "\n"


def family_to_json_obj(fam: SetFamily) -> dict:
    return {"m": fam.ground.m,
            "sets": [list(elements_of(w)) for w in fam.sets]}


def lift(fam: SetFamily) -> SetFamily:
    """Make a family even by adding a fresh element m+1 to every odd set.

    Cardinality parities all become even, the family size is unchanged, and
    the 1,2-inclusion graph is carried over isomorphically (odd/even pairs at
    symmetric difference 1 become vertical pairs at symmetric difference 2).
    """
    ground = GroundSet(fam.ground.m + 1)
    hibit = 1 << fam.ground.m
    return SetFamily.from_words(
        ground,
        (w if w.bit_count() % 2 == 0 else (w | hibit) for w in fam.sets))


def twist(fam: SetFamily, a: int) -> SetFamily:
    """Symmetric-difference every member with ``a`` (an involution).

    Twisting by a member of the family yields a pointed family; twisting an
    even family by an even word keeps it even.  Pairwise symmetric
    differences are untouched, so inclusion graphs are preserved under the
    bijection S -> S xor a.
    """
    if a >> fam.ground.m:
        raise BadElement(
            f"twist word {format_word(a)} uses elements beyond m={fam.ground.m}")
    return SetFamily.from_words(fam.ground, (w ^ a for w in fam.sets))

"""Shifting transforms and bouquet recognition.

Classical shifting replaces S by S\\{e} whenever that image is absent from
the family; double shifting does the same with a 2-element pair on pointed
even families.  Both use simultaneous semantics: within one application,
every membership test refers to the input family snapshot, never to a
partially updated one.  Complete shifting sweeps a fixed order until a
whole sweep changes nothing; the fixpoints are bouquets (downward-closed
families for the classical kind, even-subset-closed for the double kind).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import BadElement, BadParam, PreconditionViolated
from .family import SetFamily, bit_values, elements_of, family_to_json_obj

from itertools import combinations


@dataclass(frozen=True)
class ShiftStep:
    kind: str                               # "classical" | "double"
    elems: tuple[int, ...]                  # (e,) or (i, j)
    moved: tuple[tuple[int, int], ...]      # (old word, new word) pairs

    @property
    def effective(self) -> bool:
        return bool(self.moved)


@dataclass(frozen=True)
class ShiftTrace:
    initial: SetFamily
    steps: tuple[ShiftStep, ...]
    final: SetFamily
    potential_history: tuple[int, ...]      # initial potential, then one per step


def _check_element(fam: SetFamily, e: int) -> int:
    if not isinstance(e, int) or isinstance(e, bool) or e < 1 or e > fam.ground.m:
        raise BadElement(f"element {e!r} out of range 1..{fam.ground.m}")
    return 1 << (e - 1)


def shift_classical(fam: SetFamily, e: int) -> tuple[SetFamily, ShiftStep]:
    """Push down along one element: S -> S\\{e} when S\\{e} is not a member."""
    ebit = _check_element(fam, e)
    moved = []
    out = []
    for w in fam.sets:
        if w & ebit and not fam.contains(w ^ ebit):
            moved.append((w, w ^ ebit))
            out.append(w ^ ebit)
        else:
            out.append(w)
    step = ShiftStep("classical", (e,), tuple(moved))
    return SetFamily.from_words(fam.ground, out), step


def d_shift(fam: SetFamily, i: int, j: int) -> tuple[SetFamily, ShiftStep]:
    """Push down along the pair {i, j} on a pointed even family.

    Distinct movers shrink to distinct words, and a mover's image is by
    definition absent from the input family, so the family size is always
    preserved.
    """
    if not (fam.pointed and fam.even):
        raise PreconditionViolated("double shifting needs a pointed even family")
    if i == j:
        raise BadParam("double shifting needs two distinct elements")
    pbits = _check_element(fam, i) | _check_element(fam, j)
    moved = []
    out = []
    for w in fam.sets:
        if (w & pbits) == pbits and not fam.contains(w ^ pbits):
            moved.append((w, w ^ pbits))
            out.append(w ^ pbits)
        else:
            out.append(w)
    step = ShiftStep("double", (i, j), tuple(moved))
    return SetFamily.from_words(fam.ground, out), step


def complete_classical_shift(fam: SetFamily) -> ShiftTrace:
    """Sweep elements 1..m until a full sweep is silent; ends downward closed."""
    current = fam
    steps: list[ShiftStep] = []
    history = [current.potential()]
    changed = True
    while changed:
        changed = False
        for e in range(1, fam.ground.m + 1):
            current, step = shift_classical(current, e)
            if step.effective:
                changed = True
                steps.append(step)
                history.append(current.potential())
    return ShiftTrace(fam, tuple(steps), current, tuple(history))


def complete_d_shift(fam: SetFamily) -> ShiftTrace:
    """Sweep pairs (i, j), i < j, lexicographically until a sweep is silent.

    Terminates because every effective step strictly lowers the sum of set
    sizes.  The fixpoint is closed under removing 2-subsets, i.e. a bouquet
    of halved cubes.  The final family may depend on the sweep order; the
    order is fixed here so traces are reproducible.
    """
    if not (fam.pointed and fam.even):
        raise PreconditionViolated("complete double shifting needs a pointed even family")
    current = fam
    steps: list[ShiftStep] = []
    history = [current.potential()]
    changed = True
    while changed:
        changed = False
        for i in range(1, fam.ground.m + 1):
            for j in range(i + 1, fam.ground.m + 1):
                current, step = d_shift(current, i, j)
                if step.effective:
                    changed = True
                    steps.append(step)
                    history.append(current.potential())
    return ShiftTrace(fam, tuple(steps), current, tuple(history))


class BouquetKind(str, Enum):
    CUBE = "cube"
    HALVED_CUBE = "halved_cube"
    NEITHER = "neither"


def is_downward_closed(fam: SetFamily) -> bool:
    for w in fam.sets:
        rest = w
        while rest:
            b = rest & -rest
            if not fam.contains(w ^ b):
                return False
            rest ^= b
    return True


def is_halved_cube_bouquet(fam: SetFamily) -> bool:
    """Even and closed under removal of any 2-subset of a member.

    By induction that is the same as containing every even-cardinality
    subset of every member.
    """
    if not fam.even:
        return False
    for w in fam.sets:
        for a, b in combinations(bit_values(w), 2):
            if not fam.contains(w ^ a ^ b):
                return False
    return True


def bouquet_kind(fam: SetFamily) -> BouquetKind:
    """Classify a shifting fixpoint.

    The two conditions overlap only on families with no non-empty set; the
    halved-cube reading wins there, matching what complete double shifting
    produces.
    """
    if is_halved_cube_bouquet(fam):
        return BouquetKind.HALVED_CUBE
    if is_downward_closed(fam):
        return BouquetKind.CUBE
    return BouquetKind.NEITHER


@dataclass(frozen=True)
class BouquetCheck:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class BouquetPropertyReport:
    d: int
    checks: tuple[BouquetCheck, ...]

    @property
    def all_ok(self) -> bool:
        return all(c.ok for c in self.checks)


def _horizontal_degree(fam: SetFamily, w: int) -> int:
    size = w.bit_count()
    return sum(1 for t in fam.sets
               if t.bit_count() == size and (t ^ w).bit_count() == 2)


def check_bouquet_properties(fam: SetFamily, d: int) -> BouquetPropertyReport:
    """Verify the structural bounds a halved-cube bouquet of dimension d obeys.

    (i) each element sits in at most d-1 member pairs; (ii) no member
    exceeds size d; (iii) deleting any inclusion-maximal member leaves a
    bouquet; and every member of size d-k has at most (d-k)k horizontal
    neighbours.
    """
    if not is_halved_cube_bouquet(fam):
        raise PreconditionViolated("bouquet property checks need a halved-cube bouquet")
    checks = []

    worst_pairs = 0
    for i in range(fam.ground.m):
        bit = 1 << i
        cnt = sum(1 for w in fam.sets if w.bit_count() == 2 and w & bit)
        worst_pairs = max(worst_pairs, cnt)
    checks.append(BouquetCheck(
        "pair-count-per-element", worst_pairs <= d - 1 or (worst_pairs == 0 and d == 0),
        f"max pairs through one element {worst_pairs}, bound {d - 1}"))

    max_size = fam.max_size()
    checks.append(BouquetCheck(
        "max-set-size", max_size <= d, f"max member size {max_size}, bound {d}"))

    removal_ok = True
    removal_detail = "no non-empty maximal member" if len(fam) <= 1 else ""
    maximal = [w for w in fam.sets
               if not any(t != w and (t | w) == t for t in fam.sets)]
    for w in maximal:
        rest = SetFamily.from_words(fam.ground, (t for t in fam.sets if t != w))
        if not is_halved_cube_bouquet(rest):
            removal_ok = False
            removal_detail = f"removing {elements_of(w)} breaks the bouquet"
            break
    checks.append(BouquetCheck("maximal-removal-closure", removal_ok, removal_detail))

    horiz_ok = True
    horiz_detail = ""
    for w in fam.sets:
        k = d - w.bit_count()
        deg = _horizontal_degree(fam, w)
        bound = w.bit_count() * k
        if k < 0 or deg > bound:
            horiz_ok = False
            horiz_detail = (f"set {elements_of(w)} has horizontal degree {deg}, "
                            f"bound {bound}")
            break
    checks.append(BouquetCheck("horizontal-degree", horiz_ok, horiz_detail))

    return BouquetPropertyReport(d, tuple(checks))


def step_to_json_obj(step: ShiftStep) -> dict:
    obj: dict = {"kind": step.kind}
    if step.kind == "double":
        obj["pair"] = list(step.elems)
    else:
        obj["elem"] = step.elems[0]
    obj["moved"] = [[list(elements_of(old)), list(elements_of(new))]
                    for old, new in step.moved]
    return obj


def trace_to_json_obj(trace: ShiftTrace) -> dict:
    return {
        "initial": family_to_json_obj(trace.initial),
        "steps": [step_to_json_obj(s) for s in trace.steps],
        "final": family_to_json_obj(trace.final),
        "potential": list(trace.potential_history),
    }

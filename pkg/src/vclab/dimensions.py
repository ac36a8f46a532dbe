"""Shattering queries and dimension computations, each with a witness.

Four dimension notions live here.

* ``vcd``: classical VC dimension (largest fully shattered subset).
* ``vccdim_pointed``: clique-VC-dimension of a pointed even family, the
  largest |Y|+1 such that some pair (e, Y) with e outside Y is c-shattered.
  The starred variant minimises over twists by family members (via the
  lifting for families with odd sets).
* ``vcsdim_pointed`` / ``vcsdim_star``: star-VC-dimension, built on the
  stricter s-shattering, maximised over twists for the starred variant.
* ``two_vc_dim``: largest Y whose 2-subsets are all realised exactly as
  traces Y intersect S.

c-shattering of (e, Y) asks for a surjection f from the projection traces
{S ∩ (Y ∪ {e}) : S ∋ e} onto the pairs {{e, y} : y ∈ Y} with f(Z) ⊆ Z.
That is decided here by bipartite matching: such a surjection exists iff
(a) every trace meets Y (otherwise f has no legal value there), and
(b) a matching pairing each y with a distinct trace containing it
saturates Y.  Given (a), a saturating matching extends to a surjection by
sending every unmatched trace to any pair inside it, and conversely any
surjection restricted to one preimage per pair is such a matching.

Because of the totality condition (a), c-shattering is NOT monotone under
shrinking Y (a trace that met Y may miss a subset of Y), so the searches
below never prune by subset monotonicity; they only cap |Y| by the number
of member sets containing e, which bounds the number of distinct traces.
s-shattering and 2-shattering are downward monotone and may be pruned
accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import (
    BadElement,
    BadPair,
    EmptyFamily,
    PreconditionViolated,
    SearchBudgetExceeded,
)
from .family import SetFamily, bit_values, elements_of, lift, twist

#: Cap on (e, Y) queries per top-level dimension computation.  Generous for
#: desk scale; exceeding it raises SearchBudgetExceeded rather than silently
#: truncating the search.
DEFAULT_SEARCH_BUDGET = 20_000_000

_ABANDONED = object()


# ---------------------------------------------------------------------------
# projections and witnesses

@dataclass(frozen=True)
class ProjectionContext:
    e: int
    y: int
    traces: tuple[int, ...]


@dataclass(frozen=True)
class CShatterWitness:
    e: int
    y: int
    #: (trace word, pair word) for every projection trace; pairs cover P(e, Y)
    assignment: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class SShatterWitness:
    e: int
    y: int
    #: (y element bit, member word realising {e, y} exactly)
    per_y: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ShatterWitness:
    y: int
    #: (subset word of Y, member word whose trace on Y is that subset)
    per_subset: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class TwoVCWitness:
    y: int
    #: (pair word, member word realising the pair exactly)
    per_pair: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class StarDimension:
    """A twist-optimised dimension value with its optimising twist set."""

    value: int
    twist_by: int          # member word of the base family
    witness: object | None
    base_m: int            # ground size the twist word lives over
    lifted: bool           # True when the base family is the lifting


def _element_bit(fam: SetFamily, e: int) -> int:
    if not isinstance(e, int) or isinstance(e, bool) or e < 1 or e > fam.ground.m:
        raise BadElement(f"element {e!r} out of range 1..{fam.ground.m}")
    return 1 << (e - 1)


def _check_y(fam: SetFamily, e: int, y: int) -> int:
    ebit = _element_bit(fam, e)
    if y >> fam.ground.m:
        raise BadElement(f"Y uses elements beyond m={fam.ground.m}")
    if y & ebit:
        raise BadPair(f"element {e} must lie outside Y")
    return ebit


def project(fam: SetFamily, e: int, y: int) -> ProjectionContext:
    """Traces S ∩ (Y ∪ {e}) of the member sets containing e, deduplicated."""
    ebit = _check_y(fam, e, y)
    mask = y | ebit
    traces = sorted({w & mask for w in fam.sets if w & ebit})
    return ProjectionContext(e, y, tuple(traces))


def _require_pointed_even(fam: SetFamily) -> None:
    if not (fam.pointed and fam.even):
        raise PreconditionViolated("operation needs a pointed even family")


# ---------------------------------------------------------------------------
# c-shattering via matching

def _saturating_matching(ybits: list[int], traces: list[int]) -> list[int] | None:
    """Kuhn augmenting paths; returns match_t (trace index -> y index) or None."""
    n_t = len(traces)
    match_t = [-1] * n_t
    visited = 0

    def aug(yi: int) -> bool:
        nonlocal visited
        yb = ybits[yi]
        for ti in range(n_t):
            bit = 1 << ti
            if not (visited & bit) and (traces[ti] & yb):
                visited |= bit
                if match_t[ti] < 0 or aug(match_t[ti]):
                    match_t[ti] = yi
                    return True
        return False

    for yi in range(len(ybits)):
        visited = 0
        if not aug(yi):
            return None
    return match_t


def _c_query(words_e: list[int], ybits: tuple[int, ...], ymask: int, mask: int) -> bool:
    """Decide c-shattering of (e, Y) given the member sets containing e."""
    traces = {w & mask for w in words_e}
    if len(traces) < len(ybits):
        return False
    for t in traces:
        if not t & ymask:
            return False
    if not ybits:
        return not traces
    return _saturating_matching(list(ybits), list(traces)) is not None


def _c_witness(fam: SetFamily, e: int, ymask: int) -> CShatterWitness | None:
    """Deterministic witness for a c-shattered pair, or None."""
    ebit = 1 << (e - 1)
    mask = ymask | ebit
    words_e = [w for w in fam.sets if w & ebit]
    traces = sorted({w & mask for w in words_e})
    for t in traces:
        if not t & ymask:
            return None
    ybits = bit_values(ymask)
    if len(traces) < len(ybits):
        return None
    match_t = _saturating_matching(ybits, traces)
    if match_t is None:
        return None
    assignment: dict[int, int] = {}
    for ti, yi in enumerate(match_t):
        if yi >= 0:
            assignment[traces[ti]] = ebit | ybits[yi]
    for t in traces:
        if t not in assignment:
            inside = t & ymask
            assignment[t] = ebit | (inside & -inside)
    return CShatterWitness(e, ymask, tuple(sorted(assignment.items())))


def is_c_shattered(fam: SetFamily, e: int, y: int) -> CShatterWitness | None:
    """Witness for c-shattering of (e, Y) on a pointed even family, or None."""
    _require_pointed_even(fam)
    _check_y(fam, e, y)
    return _c_witness(fam, e, y)


def _budget_state(budget: int | None) -> list[int]:
    return [budget if budget is not None else 1 << 62]


def _vccdim_search(fam: SetFamily, budget: list[int],
                   abandon_at: int | None = None):
    """Exact max of |Y|+1 over c-shattered (e, Y).

    Returns ``(value, (e, ymask) | None)``, or the ``_ABANDONED`` sentinel as
    soon as some hit proves the value is at least ``abandon_at`` (used by the
    twist-minimising caller, for which such a family is irrelevant).

    Elements are visited by decreasing count of member sets containing them:
    high counts allow the largest Y and typically yield the maximal hit
    early, after which low-count elements are skipped by the |Y| <= count
    bound.  Within one element, sizes run downward and candidate Y's range
    over elements co-occurring with e only (any matched y must lie in a
    trace).  No subset-monotone pruning: c-shattering is not monotone in Y.
    """
    m = fam.ground.m
    per_e = []
    for e in range(1, m + 1):
        ebit = 1 << (e - 1)
        words_e = [w for w in fam.sets if w & ebit]
        per_e.append((len(words_e), e, ebit, words_e))
    per_e.sort(key=lambda t: (-t[0], t[1]))

    best = 0
    best_pair: tuple[int, int] | None = None
    for cnt, e, ebit, words_e in per_e:
        pool = 0
        for w in words_e:
            pool |= w
        pool &= ~ebit
        pool_bits = bit_values(pool)
        hi = min(cnt, m - 1, len(pool_bits))
        if hi < best:
            continue
        hit = False
        for s in range(hi, best - 1, -1):
            for combo in combinations(pool_bits, s):
                budget[0] -= 1
                if budget[0] < 0:
                    raise SearchBudgetExceeded(
                        "clique-VC search budget exhausted",
                        best_value=best, bound_kind="lower")
                ymask = 0
                for b in combo:
                    ymask |= b
                if _c_query(words_e, combo, ymask, ymask | ebit):
                    if abandon_at is not None and s + 1 >= abandon_at:
                        return _ABANDONED
                    best = s + 1
                    best_pair = (e, ymask)
                    hit = True
                    break
            if hit:
                break
    return best, best_pair


def vccdim_pointed(fam: SetFamily, *,
                   budget: int | None = DEFAULT_SEARCH_BUDGET
                   ) -> tuple[int, CShatterWitness | None]:
    """Clique-VC-dimension of a pointed even family, with a witness.

    Convention: (e, Y=∅) is c-shattered exactly when no member contains e
    (the surjection onto an empty pair set forces an empty projection), and
    a family where no pair at all is c-shattered has dimension 0.
    """
    _require_pointed_even(fam)
    value, pair = _vccdim_search(fam, _budget_state(budget))
    witness = _c_witness(fam, *pair) if pair else None
    return value, witness


def _count_cap(fam: SetFamily) -> int:
    m = fam.ground.m
    best = 0
    for i in range(m):
        bit = 1 << i
        cnt = sum(1 for w in fam.sets if w & bit)
        best = max(best, min(cnt, m - 1))
    return best + 1


def vccdim_star(fam: SetFamily, *,
                budget: int | None = DEFAULT_SEARCH_BUDGET) -> StarDimension:
    """Minimum clique-VC-dimension over twists by members.

    Even families are twisted directly; a family with odd sets is replaced
    by its lifting first (the inclusion graphs agree, so density bounds
    transfer).  Twists are searched in ascending order of a cheap upper
    bound so a small minimum is found early; later twists are abandoned the
    moment a hit shows they cannot strictly improve it.
    """
    if not fam.sets:
        raise EmptyFamily("clique-VC-dimension of an empty family is undefined")
    base = fam if fam.even else lift(fam)
    state = _budget_state(budget)
    ordered = []
    for a in base.sets:
        tw = twist(base, a)
        ordered.append((_count_cap(tw), a, tw))
    ordered.sort(key=lambda t: (t[0], t[1]))

    best: tuple[int, int, SetFamily, tuple[int, int] | None] | None = None
    for _ub, a, tw in ordered:
        try:
            res = _vccdim_search(tw, state,
                                 abandon_at=best[0] if best else None)
        except SearchBudgetExceeded:
            raise SearchBudgetExceeded(
                "twist-minimising clique-VC search budget exhausted",
                best_value=best[0] if best else None, bound_kind="upper")
        if res is _ABANDONED:
            continue
        value, pair = res
        if best is None or value < best[0]:
            best = (value, a, tw, pair)
    value, a, tw, pair = best
    witness = _c_witness(tw, *pair) if pair else None
    return StarDimension(value, a, witness, base.ground.m, lifted=not fam.even)


# ---------------------------------------------------------------------------
# classical VC dimension

def vcd(fam: SetFamily) -> tuple[int, ShatterWitness]:
    """Classical VC dimension with a full shattering witness.

    Y of size s needs 2^s distinct traces, so sizes above log2(#sets) are
    never tried; shattering is downward monotone, so the first size with a
    hit, scanning downward, is the dimension.
    """
    if not fam.sets:
        raise EmptyFamily("VC dimension of an empty family is undefined")
    words = fam.sets
    m = fam.ground.m
    bits = [1 << i for i in range(m)]
    ub = min(m, len(words).bit_length() - 1)
    for s in range(ub, 0, -1):
        for combo in combinations(bits, s):
            ymask = 0
            for b in combo:
                ymask |= b
            first: dict[int, int] = {}
            for w in words:
                t = w & ymask
                if t not in first:
                    first[t] = w
            if len(first) == 1 << s:
                return s, ShatterWitness(ymask, tuple(sorted(first.items())))
    return 0, ShatterWitness(0, ((0, words[0]),))


# ---------------------------------------------------------------------------
# s-shattering and the star-VC-dimension

def is_s_shattered(fam: SetFamily, e: int, y: int) -> SShatterWitness | None:
    """Witness mapping each y in Y to a member with trace exactly {e, y}.

    Downward monotone in Y: a witness restricts to any subset of Y.
    """
    ebit = _check_y(fam, e, y)
    mask = y | ebit
    per = []
    for yb in bit_values(y):
        target = ebit | yb
        hit = next((w for w in fam.sets if (w & mask) == target), None)
        if hit is None:
            return None
        per.append((yb, hit))
    return SShatterWitness(e, y, tuple(per))


def _s_value(words_e: list[int], ebit: int, combo: tuple[int, ...],
             mask: int) -> bool:
    traces = {w & mask for w in words_e}
    return all((ebit | yb) in traces for yb in combo)


def _vcsdim_search(fam: SetFamily) -> tuple[int, tuple[int, int]]:
    """Max |Y|+1 over s-shattered (e, Y); (e, ∅) is vacuously s-shattered."""
    m = fam.ground.m
    per_e = []
    for e in range(1, m + 1):
        ebit = 1 << (e - 1)
        words_e = [w for w in fam.sets if w & ebit]
        per_e.append((len(words_e), e, ebit, words_e))
    per_e.sort(key=lambda t: (-t[0], t[1]))
    best = 1
    best_pair = (1, 0)
    for cnt, e, ebit, words_e in per_e:
        pool = 0
        for w in words_e:
            pool |= w
        pool &= ~ebit
        pool_bits = bit_values(pool)
        hi = min(cnt, len(pool_bits))
        if hi < best:
            continue
        hit = False
        for s in range(hi, best - 1, -1):
            for combo in combinations(pool_bits, s):
                ymask = 0
                for b in combo:
                    ymask |= b
                if _s_value(words_e, ebit, combo, ymask | ebit):
                    best = s + 1
                    best_pair = (e, ymask)
                    hit = True
                    break
            if hit:
                break
    return best, best_pair


def vcsdim_pointed(fam: SetFamily) -> tuple[int, SShatterWitness | None]:
    """Star-VC-dimension of a pointed family, with a witness."""
    if not fam.sets:
        raise EmptyFamily("star-VC-dimension of an empty family is undefined")
    if not fam.pointed:
        raise PreconditionViolated("star-VC-dimension needs a pointed family")
    value, (e, ymask) = _vcsdim_search(fam)
    return value, is_s_shattered(fam, e, ymask)


def _vcs_cap(fam: SetFamily) -> int:
    m = fam.ground.m
    best = 0
    for i in range(m):
        bit = 1 << i
        words_e = [w for w in fam.sets if w & bit]
        pool = 0
        for w in words_e:
            pool |= w
        pool &= ~bit
        best = max(best, min(len(words_e), pool.bit_count()))
    return best + 1


@dataclass(frozen=True)
class VcsReport:
    pointed_value: int | None
    pointed_witness: SShatterWitness | None
    star: StarDimension


def vcsdim_star(fam: SetFamily) -> VcsReport:
    """Star-VC-dimension maximised over twists by members.

    Unlike the clique-VC starred variant this takes a MAXIMUM; twisting by a
    member always produces a pointed family, so the pointed dimension is
    defined for every twist.  The pointed value of the input itself is
    reported alongside when the input is pointed.
    """
    if not fam.sets:
        raise EmptyFamily("star-VC-dimension of an empty family is undefined")
    if fam.pointed:
        pointed_value, pointed_witness = vcsdim_pointed(fam)
    else:
        pointed_value, pointed_witness = None, None
    best: tuple[int, int, SetFamily, tuple[int, int]] | None = None
    for a in fam.sets:
        tw = twist(fam, a)
        if best is not None and _vcs_cap(tw) <= best[0]:
            continue
        value, pair = _vcsdim_search(tw)
        if best is None or value > best[0]:
            best = (value, a, tw, pair)
    value, a, tw, pair = best
    witness = is_s_shattered(tw, *pair)
    star = StarDimension(value, a, witness, fam.ground.m, lifted=False)
    return VcsReport(pointed_value, pointed_witness, star)


# ---------------------------------------------------------------------------
# 2VC dimension

def two_vc_dim(fam: SetFamily) -> tuple[int, TwoVCWitness | None]:
    """Largest |Y| >= 2 with every 2-subset of Y realised exactly as a trace.

    Sets of size < 2 are vacuous and do not count, so a family realising no
    pair exactly has dimension 0.  2-shattering is downward monotone, so
    candidates are grown level by level from shattered pairs upward.
    """
    words = fam.sets
    if not words:
        return 0, None
    m = fam.ground.m
    bits = [1 << i for i in range(m)]

    def pairs_realised(ymask: int, combo: tuple[int, ...]):
        first: dict[int, int] = {}
        for w in words:
            t = w & ymask
            if t not in first:
                first[t] = w
        per = []
        for a, b in combinations(combo, 2):
            w = first.get(a | b)
            if w is None:
                return None
            per.append((a | b, w))
        return tuple(per)

    level: list[tuple[int, tuple[int, ...]]] = []
    best_witness: TwoVCWitness | None = None
    for a, b in combinations(bits, 2):
        per = pairs_realised(a | b, (a, b))
        if per is not None:
            level.append((a | b, (a, b)))
            if best_witness is None:
                best_witness = TwoVCWitness(a | b, per)
    if not level:
        return 0, None
    size = 2
    while True:
        nxt: list[tuple[int, tuple[int, ...]]] = []
        wit: TwoVCWitness | None = None
        for ymask, combo in level:
            top = combo[-1]
            for nb in bits:
                if nb <= top:
                    continue
                per = pairs_realised(ymask | nb, combo + (nb,))
                if per is not None:
                    nxt.append((ymask | nb, combo + (nb,)))
                    if wit is None:
                        wit = TwoVCWitness(ymask | nb, per)
        if not nxt:
            return size, best_witness
        size += 1
        level = nxt
        best_witness = wit


# ---------------------------------------------------------------------------
# aggregate report

@dataclass(frozen=True)
class DimensionReport:
    """Every dimension of one family, each value paired with its witness."""

    vcd: int
    vcd_witness: ShatterWitness
    vccdim: int | None                       # None unless pointed and even
    vccdim_witness: CShatterWitness | None
    vccdim_star: StarDimension
    vcsdim: int | None                       # None unless pointed
    vcsdim_witness: SShatterWitness | None
    vcsdim_star: StarDimension
    two_vc: int
    two_vc_witness: TwoVCWitness | None


def compute_dimensions(fam: SetFamily, *,
                       budget: int | None = DEFAULT_SEARCH_BUDGET) -> DimensionReport:
    if not fam.sets:
        raise EmptyFamily("dimension report needs a non-empty family")
    vcd_value, vcd_wit = vcd(fam)
    if fam.pointed and fam.even:
        vcc_value, vcc_wit = vccdim_pointed(fam, budget=budget)
    else:
        vcc_value, vcc_wit = None, None
    star = vccdim_star(fam, budget=budget)
    vcs = vcsdim_star(fam)
    two, two_wit = two_vc_dim(fam)
    return DimensionReport(vcd_value, vcd_wit, vcc_value, vcc_wit, star,
                           vcs.pointed_value, vcs.pointed_witness, vcs.star,
                           two, two_wit)


def _els(word: int) -> list[int]:
    return list(elements_of(word))


def witness_to_json_obj(w) -> dict | None:
    if w is None:
        return None
    if isinstance(w, CShatterWitness):
        return {"e": w.e, "y": _els(w.y),
                "assignment": [[_els(t), _els(p)] for t, p in w.assignment]}
    if isinstance(w, SShatterWitness):
        return {"e": w.e, "y": _els(w.y),
                "per_y": [[_els(yb), _els(s)] for yb, s in w.per_y]}
    if isinstance(w, ShatterWitness):
        return {"y": _els(w.y),
                "per_subset": [[_els(sub), _els(s)] for sub, s in w.per_subset]}
    if isinstance(w, TwoVCWitness):
        return {"y": _els(w.y),
                "per_pair": [[_els(p), _els(s)] for p, s in w.per_pair]}
    raise TypeError(f"unknown witness type {type(w)!r}")


def report_to_json_obj(report: DimensionReport) -> dict:
    def star_obj(star: StarDimension) -> dict:
        return {"value": star.value, "twist": _els(star.twist_by),
                "lifted": star.lifted, "ground_m": star.base_m}

    return {
        "vcd": report.vcd,
        "vccdim": report.vccdim,
        "vccdim_star": star_obj(report.vccdim_star),
        "vcsdim": report.vcsdim,
        "vcsdim_star": star_obj(report.vcsdim_star),
        "two_vc": report.two_vc,
        "witnesses": {
            "vcd": witness_to_json_obj(report.vcd_witness),
            "vccdim": witness_to_json_obj(report.vccdim_witness),
            "vccdim_star": witness_to_json_obj(report.vccdim_star.witness),
            "vcsdim": witness_to_json_obj(report.vcsdim_witness),
            "vcsdim_star": witness_to_json_obj(report.vcsdim_star.witness),
            "two_vc": witness_to_json_obj(report.two_vc_witness),
        },
    }

"""Family generators, verification harness, table reproduction, exploration.

Named generators build the worked example families; the random generator is
a pure function of (m, n, seed, flags) over a pinned PRNG, so every sweep
is reproducible byte-for-byte.  The verifiers check the density theorem
(|E|/|V| <= C(d,2) with d the twist-minimised clique-VC-dimension), the
per-step shifting properties, and the bouquet pipeline, always comparing
exact rationals.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .dimensions import (
    DEFAULT_SEARCH_BUDGET,
    two_vc_dim,
    vccdim_pointed,
    vccdim_star,
    vcd,
    vcsdim_star,
)
from .errors import BadParam, CliqueBudgetExceeded, EmptyFamily, SearchBudgetExceeded, TableMismatch
from .family import GroundSet, SetFamily, elements_of, serialize_family, twist
from .graphs import GraphMode, build_graph, graph_stats, make_halved_cube, make_johnson, max_clique
from .rng import SplitMix64, derive_seed
from .shifting import check_bouquet_properties, complete_d_shift, d_shift, BouquetKind, bouquet_kind

NAMED_FAMILIES = ("S0", "S1", "S2", "S3", "S3twistX", "S4", "S5", "S6",
                  "HalvedCube", "Johnson")


# ---------------------------------------------------------------------------
# generators

def _require(cond: bool, message: str) -> None:
    if not cond:
        raise BadParam(message)


def gen_named(name: str, *, m: int | None = None, k: int | None = None,
              r: int | None = None) -> SetFamily:
    """Build one of the named example families.

    S0(m): all singletons.  S1(m): the empty set plus all pairs through
    element 1 (a pointed clique).  S2: the sporadic 4-clique on 3 elements.
    S3(m,k) (m, k even): the empty set, the full set X, and for each block i
    the k pairs {e_i, e_ij}; S3twistX is its twist by X.  S4(m): all even
    subsets (the halved cube).  S5(m) (m even): nested even-length prefixes
    of {1..2m}.  S6(m): a star of quads over {e_i} ∪ {x_i}.
    """
    canon = {n.lower(): n for n in NAMED_FAMILIES}.get(name.lower())
    if canon is None:
        raise BadParam(f"unknown family name {name!r}; pick one of {', '.join(NAMED_FAMILIES)}")
    name = canon
    if name == "S0":
        _require(m is not None and m >= 1, "S0 needs m >= 1")
        return SetFamily.from_words(GroundSet(m), [1 << i for i in range(m)])
    if name == "S1":
        _require(m is not None and m >= 2, "S1 needs m >= 2")
        return SetFamily.from_words(
            GroundSet(m), [0] + [1 | (1 << j) for j in range(1, m)])
    if name == "S2":
        return SetFamily.from_words(GroundSet(3), [0, 0b011, 0b101, 0b110])
    if name in ("S3", "S3twistX"):
        _require(m is not None and k is not None, f"{name} needs m and k")
        _require(m >= 2 and m % 2 == 0, f"{name} needs even m >= 2")
        _require(k >= 2 and k % 2 == 0, f"{name} needs even k >= 2")
        ground = GroundSet(m + m * k)
        words = [0, ground.full_word]
        for i in range(1, m + 1):
            ei = 1 << (i - 1)
            for j in range(1, k + 1):
                words.append(ei | (1 << (m + (i - 1) * k + (j - 1))))
        fam = SetFamily.from_words(ground, words)
        if name == "S3twistX":
            return twist(fam, ground.full_word)
        return fam
    if name in ("S4", "HalvedCube"):
        _require(m is not None and m >= 1, f"{name} needs m >= 1")
        return make_halved_cube(m)
    if name == "S5":
        _require(m is not None and m >= 2 and m % 2 == 0, "S5 needs even m >= 2")
        return SetFamily.from_words(
            GroundSet(2 * m), [0] + [(1 << (2 * i)) - 1 for i in range(1, m + 1)])
    if name == "S6":
        _require(m is not None and m >= 1, "S6 needs m >= 1")
        e1x1 = 1 | (1 << m)
        words = [0, e1x1]
        words += [e1x1 | (1 << (i - 1)) | (1 << (m + i - 1)) for i in range(2, m + 1)]
        return SetFamily.from_words(GroundSet(2 * m), words)
    # Johnson
    _require(m is not None and r is not None, "Johnson needs r and m")
    return make_johnson(r, m)


@dataclass(frozen=True)
class GenConfig:
    m: int
    n: int
    seed: int
    require_even: bool = False
    require_pointed: bool = False


def gen_random(cfg: GenConfig) -> SetFamily:
    """Sample n distinct subsets from the chosen stratum, reproducibly.

    Even-cardinality words are drawn through the parity-bit bijection
    (the top element carries the parity of the rest), so the stratum is
    sampled uniformly without rejection.  Identical configs give identical
    families on every platform.
    """
    ground = GroundSet(cfg.m)
    m, n = cfg.m, cfg.n
    stratum = 1 << (m - 1) if cfg.require_even else 1 << m
    if n < 0 or n > stratum:
        raise BadParam(f"cannot draw {n} distinct sets from a stratum of {stratum}")
    if cfg.require_pointed and n < 1:
        raise BadParam("a pointed family needs n >= 1")
    rng = SplitMix64(cfg.seed)
    want = n - 1 if cfg.require_pointed else n

    def decode(u: int) -> int:
        if not cfg.require_even:
            return u
        if m == 1:
            return 0
        return u | ((u.bit_count() & 1) << (m - 1))

    words: list[int]
    if stratum <= 4096:
        pool = sorted(decode(u) for u in range(stratum))
        if cfg.require_pointed:
            pool.remove(0)
        idx = rng.sample_indices(want, len(pool))
        words = [pool[i] for i in idx]
    else:
        seen: set[int] = set()
        words = []
        while len(words) < want:
            w = decode(rng.below(stratum))
            if cfg.require_pointed and w == 0:
                continue
            if w not in seen:
                seen.add(w)
                words.append(w)
    if cfg.require_pointed:
        words.append(0)
    return SetFamily.from_words(ground, words)


def family_digest(fam: SetFamily) -> str:
    return hashlib.sha256(serialize_family(fam).encode()).hexdigest()[:12]


# ---------------------------------------------------------------------------
# density verification

@dataclass(frozen=True)
class DensityReport:
    n: int
    e: int
    ratio: Fraction
    d: int | None
    bound: int | None
    holds: bool | None
    twist_by: int | None
    lifted: bool
    conclusive: bool

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "e": self.e,
            "ratio": str(self.ratio),
            "d": self.d,
            "bound": self.bound,
            "holds": self.holds,
            "twist": list(elements_of(self.twist_by)) if self.twist_by is not None else None,
            "lifted": self.lifted,
            "conclusive": self.conclusive,
        }


def verify_density(fam: SetFamily, *,
                   budget: int | None = DEFAULT_SEARCH_BUDGET) -> DensityReport:
    """Check |E|/|V| <= C(d, 2) for d the twist-minimised clique-VC-dimension.

    A budget-exhausted dimension search yields an inconclusive report (holds
    is None), never a default pass.
    """
    if not fam.sets:
        raise EmptyFamily("density verification needs a non-empty family")
    g = build_graph(fam, GraphMode.G12)
    ratio = Fraction(g.e, g.n)
    try:
        star = vccdim_star(fam, budget=budget)
    except SearchBudgetExceeded:
        return DensityReport(g.n, g.e, ratio, None, None, None, None,
                             lifted=not fam.even, conclusive=False)
    bound = comb(star.value, 2)
    return DensityReport(g.n, g.e, ratio, star.value, bound,
                         ratio <= bound, star.twist_by, star.lifted, True)


# ---------------------------------------------------------------------------
# per-step shifting properties

@dataclass(frozen=True)
class PropertyCheck:
    name: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class PropertyReport:
    inputs_digest: str
    checks: tuple[PropertyCheck, ...]

    @property
    def all_ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json_obj(self) -> dict:
        return {
            "inputs": self.inputs_digest,
            "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail}
                       for c in self.checks],
            "all_ok": self.all_ok,
        }


def verify_shift_step(fam: SetFamily, i: int, j: int,
                      *, budget: int | None = DEFAULT_SEARCH_BUDGET) -> PropertyReport:
    """One double shift: vertices preserved, edges non-decreasing, dimension non-increasing."""
    shifted, _step = d_shift(fam, i, j)
    g0 = build_graph(fam, GraphMode.G12)
    g1 = build_graph(shifted, GraphMode.G12)
    v0, _ = vccdim_pointed(fam, budget=budget)
    v1, _ = vccdim_pointed(shifted, budget=budget)
    digest = hashlib.sha256(
        (serialize_family(fam) + f"pair {i},{j}").encode()).hexdigest()[:12]
    checks = (
        PropertyCheck("vertex-count-preserved", len(shifted) == len(fam),
                      f"{len(fam)} -> {len(shifted)}"),
        PropertyCheck("edge-count-nondecreasing", g1.e >= g0.e,
                      f"{g0.e} -> {g1.e}"),
        PropertyCheck("cliquevc-nonincreasing", v1 <= v0,
                      f"{v0} -> {v1}"),
    )
    return PropertyReport(digest, checks)


# ---------------------------------------------------------------------------
# dimension table reproduction

@dataclass(frozen=True)
class CellCheck:
    family: str
    column: str
    expected: str
    got: str
    ok: bool


@dataclass(frozen=True)
class TableReport:
    m: int
    k: int
    cells: tuple[CellCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cells)

    @property
    def mismatches(self) -> list[CellCheck]:
        return [c for c in self.cells if not c.ok]

    def to_json_obj(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "rows": [{"family": c.family, "column": c.column,
                      "expected": c.expected, "got": c.got, "ok": c.ok}
                     for c in self.cells],
            "ok": self.ok,
        }


_TABLE_COLUMNS = ("vcd", "vccdim", "vccdim_star", "degeneracy", "density", "two_vc")


def _format_cell(v) -> str:
    if v is None:
        return "-"
    return str(v)


def reproduce_table(m: int, k: int, *, strict: bool = False,
                    budget: int | None = DEFAULT_SEARCH_BUDGET) -> TableReport:
    """Recompute the six-family dimension table and compare with closed forms.

    Densities are compared as exact rationals; for the block-pairs families
    the exact closed form mk(k+1) / (2(mk+2)) replaces the untestable
    asymptotic. ``strict=True`` raises :class:`TableMismatch` on any bad cell.
    """
    expected_rows = {
        "S0": (1, None, m, m - 1, Fraction(m - 1, 2), 0),
        "S1": (1, m, m, m - 1, Fraction(m - 1, 2), 2),
        "S2": (2, 3, 3, 3, Fraction(3, 2), 3),
        "S3": (2, k + 2, k + 2, k, Fraction(m * k * (k + 1), 2 * (m * k + 2)), 2),
        "S3twistX": (2, (m - 1) * k + 1, k + 2, k,
                     Fraction(m * k * (k + 1), 2 * (m * k + 2)), 2),
        "S4": (m - 1, m, m, comb(m, 2), Fraction(comb(m, 2), 2), m),
    }
    cells: list[CellCheck] = []
    for name, expected in expected_rows.items():
        if name in ("S3", "S3twistX"):
            fam = gen_named(name, m=m, k=k)
        else:
            fam = gen_named(name, m=m)
        got = _computed_row(fam, budget=budget)
        for col, exp_v, got_v in zip(_TABLE_COLUMNS, expected, got):
            cells.append(CellCheck(name, col, _format_cell(exp_v),
                                   _format_cell(got_v), exp_v == got_v))
    report = TableReport(m, k, tuple(cells))
    if strict and not report.ok:
        bad = ", ".join(f"{c.family}.{c.column} expected {c.expected} got {c.got}"
                        for c in report.mismatches)
        raise TableMismatch(f"table cells disagree: {bad}", report.mismatches)
    return report


def _computed_row(fam: SetFamily, *, budget: int | None):
    vcd_v, _ = vcd(fam)
    vcc = vccdim_pointed(fam, budget=budget)[0] if (fam.pointed and fam.even) else None
    star = vccdim_star(fam, budget=budget)
    stats = graph_stats(build_graph(fam, GraphMode.G12))
    two, _ = two_vc_dim(fam)
    return (vcd_v, vcc, star.value, stats.degeneracy, stats.density, two)


def format_table(report: TableReport) -> str:
    lines = [f"table for m={report.m}, k={report.k}"]
    header = f"{'family':<10}{'column':<14}{'expected':<12}{'got':<12}{'ok'}"
    lines.append(header)
    for c in report.cells:
        lines.append(f"{c.family:<10}{c.column:<14}{c.expected:<12}{c.got:<12}"
                     f"{'ok' if c.ok else 'MISMATCH'}")
    lines.append(f"table {'matches' if report.ok else 'has mismatches'}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# exploratory sweeps

@dataclass(frozen=True)
class ExploreConfig:
    trials: int
    seed: int
    max_m: int = 8
    max_sets: int = 24
    c_square: Fraction = Fraction(1)
    c_product: Fraction = Fraction(1)
    clique_budget: int = 10**7
    search_budget: int | None = DEFAULT_SEARCH_BUDGET
    budget: int | None = None     # max trials actually run; None = all


@dataclass(frozen=True)
class ExplorationRecord:
    trial: int
    digest: str
    m: int
    n_sets: int
    even: bool
    pointed: bool
    ratio: Fraction
    vcd: int | None
    vcsdim_star: int | None
    omega: int | None
    conclusive: bool
    flag_square: bool
    flag_product: bool

    def to_json_obj(self) -> dict:
        return {
            "trial": self.trial,
            "digest": self.digest,
            "m": self.m,
            "sets": self.n_sets,
            "even": self.even,
            "pointed": self.pointed,
            "ratio": str(self.ratio),
            "vcd": self.vcd,
            "vcsdim_star": self.vcsdim_star,
            "omega": self.omega,
            "vcs_sq": self.vcsdim_star ** 2 if self.vcsdim_star is not None else None,
            "vcd_omega": (self.vcd * self.omega
                          if self.vcd is not None and self.omega is not None else None),
            "conclusive": self.conclusive,
            "flag_square": self.flag_square,
            "flag_product": self.flag_product,
        }


def explore_questions(cfg: ExploreConfig, out=None
                      ) -> tuple[list[ExplorationRecord], dict]:
    """Sweep random families recording density vs (vcsdim*)^2 and vcd*omega.

    Records where the ratio strictly exceeds the configured multiples are
    flagged as candidates for inspection; nothing here claims a refutation.
    Streams one JSON line per record to ``out`` when given, plus a summary
    object; the summary carries a progress marker when ``cfg.budget`` stops
    the sweep early.
    """
    records: list[ExplorationRecord] = []
    flagged_sq = flagged_prod = 0
    completed = 0
    limit = cfg.trials if cfg.budget is None else min(cfg.trials, cfg.budget)
    for t in range(limit):
        rng = SplitMix64(derive_seed(cfg.seed, t))
        m = 2 + rng.below(max(cfg.max_m - 1, 1))
        require_even = t % 2 == 0
        stratum = 1 << (m - 1 if require_even else m)
        n = 1 + rng.below(min(cfg.max_sets, stratum))
        fam = gen_random(GenConfig(m, n, rng.next_u64(),
                                   require_even=require_even))
        g = build_graph(fam, GraphMode.G12)
        ratio = Fraction(g.e, g.n)
        conclusive = True
        vcd_v: int | None
        omega: int | None
        star_v: int | None
        try:
            vcd_v, _ = vcd(fam)
            star_v = vcsdim_star(fam).star.value
            omega, _ = max_clique(g, cfg.clique_budget)
        except (SearchBudgetExceeded, CliqueBudgetExceeded):
            conclusive = False
            vcd_v = star_v = omega = None
        flag_sq = conclusive and ratio > cfg.c_square * star_v**2
        flag_prod = conclusive and ratio > cfg.c_product * vcd_v * omega
        rec = ExplorationRecord(t, family_digest(fam), m, len(fam),
                                fam.even, fam.pointed, ratio, vcd_v, star_v,
                                omega, conclusive, flag_sq, flag_prod)
        records.append(rec)
        flagged_sq += flag_sq
        flagged_prod += flag_prod
        completed += 1
        if out is not None:
            out.write(json.dumps(rec.to_json_obj(), separators=(",", ":")) + "\n")
    summary = {
        "requested": cfg.trials,
        "completed": completed,
        "flagged_square": flagged_sq,
        "flagged_product": flagged_prod,
        "max_ratio": str(max((r.ratio for r in records), default=Fraction(0))),
    }
    if out is not None:
        out.write(json.dumps({"summary": summary}, separators=(",", ":")) + "\n")
    return records, summary


# ---------------------------------------------------------------------------
# bouquet pipeline verification

@dataclass(frozen=True)
class BouquetPipelineReport:
    checks: tuple[PropertyCheck, ...]

    @property
    def all_ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json_obj(self) -> dict:
        return {"checks": [{"name": c.name, "ok": c.ok, "detail": c.detail}
                           for c in self.checks],
                "all_ok": self.all_ok}


def verify_bouquet_pipeline(fam: SetFamily, *,
                            budget: int | None = DEFAULT_SEARCH_BUDGET
                            ) -> BouquetPipelineReport:
    """Run complete double shifting and check everything the fixpoint promises."""
    trace = complete_d_shift(fam)
    hist = trace.potential_history
    decreasing = all(a > b for a, b in zip(hist, hist[1:]))
    final = trace.final
    kind = bouquet_kind(final)
    d, _ = vccdim_pointed(final, budget=budget)
    props = check_bouquet_properties(final, d)
    stats = graph_stats(build_graph(final, GraphMode.G12))
    checks = [
        PropertyCheck("potential-strictly-decreasing", decreasing,
                      f"history {list(hist)}"),
        PropertyCheck("final-is-halved-cube-bouquet",
                      kind is BouquetKind.HALVED_CUBE, f"kind {kind.value}"),
        PropertyCheck("size-preserved", len(final) == len(fam),
                      f"{len(fam)} -> {len(final)}"),
    ]
    checks += [PropertyCheck(f"bouquet-{c.name}", c.ok, c.detail)
               for c in props.checks]
    checks.append(PropertyCheck(
        "degeneracy-at-most-choose2",
        stats.degeneracy <= comb(d, 2),
        f"degeneracy {stats.degeneracy}, bound C({d},2)={comb(d, 2)}"))
    return BouquetPipelineReport(tuple(checks))

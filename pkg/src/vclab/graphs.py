"""1- and 1,2-inclusion graphs: construction, statistics, pointed cliques.

The 1-inclusion graph of a family joins sets at symmetric difference 1
(an induced hypercube subgraph).  The 1,2-inclusion graph joins sets at
symmetric difference 1 or 2, i.e. the induced subgraph of the square of
the hypercube; for even families this is an induced subgraph of the
halved cube.  Edge construction is deliberately the plain all-pairs
word scan: at desk scale correctness and determinism beat cleverness.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations

from .errors import BadParam, CliqueBudgetExceeded, NotEvenFamily
from .family import GroundSet, SetFamily, elements_of

DEFAULT_CLIQUE_BUDGET = 10**7


class GraphMode(str, Enum):
    G1 = "g1"
    G12 = "g12"


class EdgeKind(str, Enum):
    HYPERCUBE = "hypercube"    # |A xor B| = 1
    VERTICAL = "vertical"      # |A xor B| = 2 and |A| != |B|
    HORIZONTAL = "horizontal"  # |A xor B| = 2 and |A| == |B|


def edge_kind(a: int, b: int) -> EdgeKind | None:
    """Classify the pair (a, b), or None when they are not adjacent."""
    d = (a ^ b).bit_count()
    if d == 1:
        return EdgeKind.HYPERCUBE
    if d == 2:
        if a.bit_count() == b.bit_count():
            return EdgeKind.HORIZONTAL
        return EdgeKind.VERTICAL
    return None


@dataclass(frozen=True)
class InclusionGraph:
    vertices: tuple[int, ...]                      # family words, canonical order
    edges: tuple[tuple[int, int, EdgeKind], ...]   # (i, j, kind) with i < j
    mode: GraphMode

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def e(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in self.vertices]
        for i, j, _ in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def adjacency_masks(self) -> list[int]:
        masks = [0] * self.n
        for i, j, _ in self.edges:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return masks


def build_graph(fam: SetFamily, mode: GraphMode = GraphMode.G12) -> InclusionGraph:
    """Induced subgraph of the hypercube (G1) or its square (G12)."""
    words = fam.sets
    edges = []
    for i in range(len(words)):
        wi = words[i]
        for j in range(i + 1, len(words)):
            kind = edge_kind(wi, words[j])
            if kind is None:
                continue
            if mode is GraphMode.G1 and kind is not EdgeKind.HYPERCUBE:
                continue
            edges.append((i, j, kind))
    return InclusionGraph(words, tuple(edges), mode)


@dataclass(frozen=True)
class GraphStats:
    n: int
    e: int
    density: Fraction
    degeneracy: int
    elimination_order: tuple[int, ...]     # 0-based vertex indices
    clique_number: int | None = None
    clique_witness: tuple[int, ...] | None = None  # 0-based vertex indices
    clique_budget_exceeded: bool = False


def density_decimal(d: Fraction, places: int = 6) -> str:
    scaled = d * 10**places
    q, r = divmod(scaled.numerator, scaled.denominator)
    if 2 * r >= scaled.denominator:
        q += 1
    s = str(q).rjust(places + 1, "0")
    return f"{s[:-places]}.{s[-places:]}"


def degeneracy_order(graph: InclusionGraph) -> tuple[int, tuple[int, ...]]:
    """Iterated minimum-degree removal; ties go to the smallest vertex word.

    Returns the maximum degree seen at removal time (the degeneracy) and the
    full elimination order.  Vertices are already in ascending word order, so
    the tie-break is simply the smallest remaining index.
    """
    n = graph.n
    adj = graph.adjacency()
    degree = [len(a) for a in adj]
    alive = [True] * n
    order = []
    worst = 0
    for _ in range(n):
        v = min((i for i in range(n) if alive[i]), key=lambda i: (degree[i], i))
        worst = max(worst, degree[v])
        order.append(v)
        alive[v] = False
        for u in adj[v]:
            if alive[u]:
                degree[u] -= 1
    return worst, tuple(order)


def max_clique(graph: InclusionGraph,
               budget: int = DEFAULT_CLIQUE_BUDGET) -> tuple[int, tuple[int, ...]]:
    """Exact maximum clique by pivoting branch-and-bound over index bitmasks.

    Raises :class:`CliqueBudgetExceeded` after ``budget`` search nodes; the
    caller decides whether an omitted clique number is acceptable.
    """
    n = graph.n
    if n == 0:
        return 0, ()
    neigh = graph.adjacency_masks()
    best_size = 0
    best_set: tuple[int, ...] = ()
    nodes = 0

    def expand(r_list: list[int], p_mask: int):
        nonlocal best_size, best_set, nodes
        nodes += 1
        if nodes > budget:
            raise CliqueBudgetExceeded(
                f"clique search exceeded {budget} nodes")
        if p_mask == 0:
            if len(r_list) > best_size:
                best_size = len(r_list)
                best_set = tuple(r_list)
            return
        if len(r_list) + p_mask.bit_count() <= best_size:
            return
        # pivot on the candidate with most candidate-neighbours
        pivot, pivot_cover = -1, -1
        pm = p_mask
        while pm:
            b = pm & -pm
            u = b.bit_length() - 1
            cover = (neigh[u] & p_mask).bit_count()
            if cover > pivot_cover:
                pivot, pivot_cover = u, cover
            pm ^= b
        branch = p_mask & ~neigh[pivot]
        while branch:
            b = branch & -branch
            v = b.bit_length() - 1
            r_list.append(v)
            expand(r_list, p_mask & neigh[v])
            r_list.pop()
            p_mask &= ~b
            branch &= ~b
        return

    expand([], (1 << n) - 1)
    return best_size, best_set


def graph_stats(graph: InclusionGraph, want_clique: bool = False,
                clique_budget: int = DEFAULT_CLIQUE_BUDGET) -> GraphStats:
    """Density (exact rational), degeneracy with order, optional clique number.

    A clique search that exceeds its node budget is reported explicitly via
    ``clique_budget_exceeded`` with ``clique_number`` omitted, never silently.
    """
    density = Fraction(graph.e, graph.n) if graph.n else Fraction(0)
    degeneracy, order = degeneracy_order(graph)
    clique_number = None
    clique_witness = None
    budget_hit = False
    if want_clique:
        try:
            clique_number, clique_witness = max_clique(graph, clique_budget)
        except CliqueBudgetExceeded:
            budget_hit = True
    return GraphStats(graph.n, graph.e, density, degeneracy, order,
                      clique_number, clique_witness, budget_hit)


class CliqueKind(str, Enum):
    SPORADIC4 = "sporadic4"
    STAR = "star"
    NOT_POINTED = "not_pointed"
    NOT_CLIQUE = "not_clique"


@dataclass(frozen=True)
class CliqueClass:
    kind: CliqueKind
    elements: tuple[int, ...] | None = None  # the 3 elements of a sporadic 4-clique
    center: int | None = None                # the common element of a star


def classify_pointed_clique(fam: SetFamily) -> CliqueClass:
    """Classify an even family that forms a clique in the halved cube.

    A pointed clique is either (a) the sporadic 4-clique on three elements
    {∅,{a,b},{a,c},{b,c}} (or a pointed sub-clique carrying that full
    triangle of pairs), or (b) a star: the empty set plus pairs through one
    fixed centre element.
    """
    if not fam.even:
        raise NotEvenFamily("pointed-clique classification needs an even family")
    n = len(fam)
    g = build_graph(fam, GraphMode.G12)
    if g.e != n * (n - 1) // 2:
        return CliqueClass(CliqueKind.NOT_CLIQUE)
    if not fam.pointed:
        return CliqueClass(CliqueKind.NOT_POINTED)
    pairs = [w for w in fam.sets if w]
    # adjacency to the empty set pins every non-empty member to a 2-set
    assert all(w.bit_count() == 2 for w in pairs)
    if not pairs:
        return CliqueClass(CliqueKind.STAR, center=None)
    common = pairs[0]
    union = 0
    for w in pairs:
        common &= w
        union |= w
    if common:
        center = (common & -common).bit_length()
        return CliqueClass(CliqueKind.STAR, center=center)
    # pairwise-incident pairs without a common element form the triangle
    assert len(pairs) == 3 and union.bit_count() == 3
    return CliqueClass(CliqueKind.SPORADIC4, elements=elements_of(union))


def make_halved_cube(m: int) -> SetFamily:
    """The family of all even-cardinality subsets of {1..m}."""
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise BadParam(f"halved cube needs a positive m, got {m!r}")
    ground = GroundSet(m)  # may raise CapExceeded
    words = []
    top = 1 << (m - 1)
    for u in range(1 << (m - 1)):
        parity = u.bit_count() & 1
        words.append(u | (top if parity else 0))
    return SetFamily.from_words(ground, words)


def make_johnson(r: int, m: int) -> SetFamily:
    """The family of all r-subsets of {1..m} (Johnson graph vertices)."""
    if not isinstance(r, int) or isinstance(r, bool) or r < 0:
        raise BadParam(f"subset size r must be a non-negative integer, got {r!r}")
    ground = GroundSet(m)
    if r > m:
        raise BadParam(f"need 0 <= r <= m, got r={r}, m={m}")
    bits = ground.element_bits()
    words = []
    for combo in combinations(bits, r):
        w = 0
        for b in combo:
            w |= b
        words.append(w)
    return SetFamily.from_words(ground, words)


def graph_to_edge_list_text(graph: InclusionGraph) -> str:
    """Edge-list export: an "n m" header, then "i j kind" lines (1-based)."""
    lines = [f"{graph.n} {graph.e}"]
    for i, j, kind in graph.edges:
        lines.append(f"{i + 1} {j + 1} {kind.value}")
    return "\n".join(lines) + "\n"


def graph_to_json_obj(graph: InclusionGraph) -> dict:
    return {
        "n": graph.n,
        "m": graph.e,
        "edges": [[i + 1, j + 1, kind.value] for i, j, kind in graph.edges],
    }


def stats_to_json_obj(stats: GraphStats, vertices: tuple[int, ...] | None = None) -> dict:
    obj = {
        "n": stats.n,
        "e": stats.e,
        "density": str(stats.density),
        "density_decimal": density_decimal(stats.density),
        "degeneracy": stats.degeneracy,
        "elimination_order": [i + 1 for i in stats.elimination_order],
        "clique_number": stats.clique_number,
        "clique_budget_exceeded": stats.clique_budget_exceeded,
    }
    if stats.clique_witness is not None:
        if vertices is not None:
            obj["clique"] = [list(elements_of(vertices[i]))
                             for i in stats.clique_witness]
        else:
            obj["clique"] = [i + 1 for i in stats.clique_witness]
    else:
        obj["clique"] = None
    return obj


def format_stats(stats: GraphStats) -> str:
    lines = [
        f"n = {stats.n}",
        f"e = {stats.e}",
        f"density = {stats.density} ({density_decimal(stats.density)})",
        f"degeneracy = {stats.degeneracy}",
    ]
    if stats.clique_budget_exceeded:
        lines.append("omega = ? (clique budget exceeded)")
    elif stats.clique_number is not None:
        lines.append(f"omega = {stats.clique_number}")
    return "\n".join(lines) + "\n"

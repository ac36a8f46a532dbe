"""Independent checkers used to validate solver output.

Nothing here shares code with the package solvers: c-shattering is decided
by exhaustive surjection enumeration instead of matching, degeneracy and
clique number come from networkx, and witnesses are re-verified straight
from the defining properties.
"""

from functools import lru_cache
from itertools import combinations

import networkx as nx

from vclab import CShatterWitness, SShatterWitness, ShatterWitness, TwoVCWitness
from vclab.family import bit_values


def brute_c_shattered(fam, e, ymask) -> bool:
    """Exhaustive test for a surjection f: traces -> pairs with f(Z) ⊆ Z."""
    ebit = 1 << (e - 1)
    mask = ymask | ebit
    traces = sorted({w & mask for w in fam.sets if w & ebit})
    pairs = [ebit | yb for yb in bit_values(ymask)]
    choices = []
    for t in traces:
        legal = tuple(i for i, p in enumerate(pairs) if (t & p) == p)
        if not legal:
            return False  # no admissible value: f cannot be total
        choices.append(legal)
    if len(traces) < len(pairs):
        return False
    target = (1 << len(pairs)) - 1
    choices_key = tuple(choices)

    @lru_cache(maxsize=None)
    def covers(i: int, covered: int) -> bool:
        if i == len(choices_key):
            return covered == target
        return any(covers(i + 1, covered | (1 << p)) for p in choices_key[i])

    result = covers(0, 0)
    covers.cache_clear()
    return result


def brute_vcd(fam) -> int:
    m = fam.ground.m
    best = 0
    for s in range(1, m + 1):
        hit = False
        for combo in combinations(range(m), s):
            ymask = sum(1 << b for b in combo)
            if len({w & ymask for w in fam.sets}) == 1 << s:
                hit = True
                break
        if hit:
            best = s
        else:
            break
    return best


def brute_two_vc(fam) -> int:
    m = fam.ground.m
    best = 0
    for s in range(2, m + 1):
        for combo in combinations(range(m), s):
            ymask = sum(1 << b for b in combo)
            traces = {w & ymask for w in fam.sets}
            if all(((1 << a) | (1 << b)) in traces
                   for a, b in combinations(combo, 2)):
                best = s
                break
    return best


def brute_s_shattered(fam, e, ymask) -> bool:
    ebit = 1 << (e - 1)
    mask = ymask | ebit
    return all(any((w & mask) == (ebit | yb) for w in fam.sets)
               for yb in bit_values(ymask))


def to_networkx(graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(graph.n))
    g.add_edges_from((i, j) for i, j, _ in graph.edges)
    return g


def nx_degeneracy(graph) -> int:
    g = to_networkx(graph)
    if g.number_of_nodes() == 0:
        return 0
    return max(nx.core_number(g).values(), default=0)


def nx_clique_number(graph) -> int:
    g = to_networkx(graph)
    if g.number_of_nodes() == 0:
        return 0
    return max(len(c) for c in nx.find_cliques(g))


# --- witness re-verification, straight from the definitions -----------------

def check_c_witness(fam, value: int, witness: CShatterWitness | None) -> bool:
    if value == 0:
        return witness is None
    if witness is None:
        return False
    e, ymask = witness.e, witness.y
    if ymask.bit_count() + 1 != value:
        return False
    ebit = 1 << (e - 1)
    if ymask & ebit:
        return False
    mask = ymask | ebit
    traces = {w & mask for w in fam.sets if w & ebit}
    assigned = dict(witness.assignment)
    if set(assigned) != traces:
        return False  # f must be total on the projection, nothing more
    pairs = {ebit | yb for yb in bit_values(ymask)}
    for trace, pair in assigned.items():
        if pair not in pairs or (trace & pair) != pair:
            return False
    return set(assigned.values()) == pairs  # surjective


def check_s_witness(fam, value: int, witness: SShatterWitness | None) -> bool:
    if witness is None:
        return False
    e, ymask = witness.e, witness.y
    if ymask.bit_count() + 1 != value:
        return False
    ebit = 1 << (e - 1)
    if ymask & ebit:
        return False
    mask = ymask | ebit
    per = dict(witness.per_y)
    if set(per) != set(bit_values(ymask)):
        return False
    return all(fam.contains(w) and (w & mask) == (ebit | yb)
               for yb, w in per.items())


def check_vcd_witness(fam, value: int, witness: ShatterWitness) -> bool:
    ymask = witness.y
    if ymask.bit_count() != value:
        return False
    per = dict(witness.per_subset)
    subsets = set()
    sub = ymask
    while True:  # enumerate all subsets of ymask
        subsets.add(sub)
        if sub == 0:
            break
        sub = (sub - 1) & ymask
    if set(per) != subsets:
        return False
    return all(fam.contains(w) and (w & ymask) == s for s, w in per.items())


def check_two_vc_witness(fam, value: int, witness: TwoVCWitness | None) -> bool:
    if value == 0:
        return witness is None
    if witness is None:
        return False
    ymask = witness.y
    if ymask.bit_count() != value:
        return False
    per = dict(witness.per_pair)
    want = {a | b for a, b in combinations(bit_values(ymask), 2)}
    if set(per) != want:
        return False
    return all(fam.contains(w) and (w & ymask) == p for p, w in per.items())

"""Hypothesis strategies for ground sets and families."""

from hypothesis import strategies as st

from vclab import GroundSet, SetFamily


@st.composite
def families(draw, max_m=6, max_sets=16, require_even=False,
             require_pointed=False, min_sets=1):
    m = draw(st.integers(min_value=1, max_value=max_m))
    universe = range(1 << m)
    if require_even:
        universe = [w for w in universe if w.bit_count() % 2 == 0]
    else:
        universe = list(universe)
    cap = min(max_sets, len(universe))
    words = draw(st.sets(st.sampled_from(universe), min_size=min(min_sets, cap),
                         max_size=cap))
    if require_pointed:
        words = set(words) | {0}
    elif not words:
        words = {draw(st.sampled_from(universe))}
    return SetFamily.from_words(GroundSet(m), words)


def pointed_even_families(max_m=6, max_sets=16):
    return families(max_m=max_m, max_sets=max_sets,
                    require_even=True, require_pointed=True)


@st.composite
def family_with_twist_word(draw, max_m=6, max_sets=12):
    fam = draw(families(max_m=max_m, max_sets=max_sets))
    a = draw(st.integers(min_value=0, max_value=(1 << fam.ground.m) - 1))
    return fam, a

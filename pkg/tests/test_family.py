import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vclab import (
    BadElement,
    BadFormat,
    BadParam,
    CapExceeded,
    DuplicateSet,
    GroundSet,
    SetFamily,
    classify_family,
    elements_of,
    family_from_json_obj,
    family_to_json_obj,
    lift,
    parse_family,
    serialize_family,
    twist,
    word_from_elements,
)

from strategies import families, family_with_twist_word


def fam(m, lists):
    return SetFamily.from_element_lists(m, lists)


class TestParse:
    def test_text_document(self):
        f = parse_family("m=3\n-\n1 2\n1 3\n")
        assert f.ground.m == 3
        assert [elements_of(w) for w in f.sets] == [(), (1, 2), (1, 3)]
        assert f.even and f.pointed

    def test_comments_and_blank_lines(self):
        f = parse_family("# hello\n\nm=2\n# body\n1\n")
        assert f.sets == (1,)

    def test_duplicate_set(self):
        with pytest.raises(DuplicateSet):
            parse_family("m=2\n1\n1\n")

    def test_bad_element(self):
        with pytest.raises(BadElement):
            parse_family("m=2\n3\n")

    def test_missing_header(self):
        with pytest.raises(BadFormat):
            parse_family("1 2\n")
        with pytest.raises(BadFormat):
            parse_family("# only comments\n")

    def test_non_ascending_line(self):
        with pytest.raises(BadFormat):
            parse_family("m=3\n2 1\n")

    def test_non_integer_token(self):
        with pytest.raises(BadFormat):
            parse_family("m=3\n1 x\n")

    def test_json_document(self):
        f = parse_family('{"m": 3, "sets": [[], [1, 2]]}')
        assert f.sets == (0, 0b011)

    def test_json_duplicate(self):
        with pytest.raises(DuplicateSet):
            parse_family('{"m": 2, "sets": [[1], [1]]}')

    def test_json_bad_element(self):
        with pytest.raises(BadElement):
            parse_family('{"m": 2, "sets": [[5]]}')

    def test_json_garbage(self):
        with pytest.raises(BadFormat):
            parse_family("{nope")

    def test_roundtrip_includes_empty_family(self):
        f = parse_family("m=4\n")
        assert len(f) == 0
        assert parse_family(serialize_family(f)) == f

    @given(families())
    @settings(max_examples=60)
    def test_parse_serialize_identity(self, f):
        assert parse_family(serialize_family(f)) == f
        assert family_from_json_obj(family_to_json_obj(f)) == f


class TestGroundSet:
    def test_cap(self):
        GroundSet(64)
        with pytest.raises(CapExceeded):
            GroundSet(65)

    def test_positive(self):
        with pytest.raises(BadParam):
            GroundSet(0)

    def test_word_validation(self):
        with pytest.raises(BadElement):
            word_from_elements([0], 3)
        with pytest.raises(BadElement):
            SetFamily.from_words(GroundSet(2), [0b100])


class TestClassify:
    def test_even_pointed(self):
        c = classify_family(fam(2, [[], [1, 2]]))
        assert (c.even, c.pointed, c.sum_sizes) == (True, True, 2)

    def test_singletons(self):
        c = classify_family(fam(2, [[1], [2]]))
        assert (c.even, c.pointed, c.sum_sizes) == (False, False, 2)

    def test_empty_set_only(self):
        c = classify_family(fam(1, [[]]))
        assert (c.even, c.pointed, c.sum_sizes) == (True, True, 0)


class TestLift:
    def test_singletons_gain_new_element(self):
        f = fam(3, [[1], [2], [3]])
        lifted = lift(f)
        assert lifted.ground.m == 4
        assert [elements_of(w) for w in lifted.sets] == [(1, 4), (2, 4), (3, 4)]
        assert lifted.even

    def test_even_sets_unchanged(self):
        f = fam(1, [[]])
        assert lift(f).sets == (0,)
        assert lift(f).ground.m == 2

    def test_mixed(self):
        f = fam(2, [[], [1], [1, 2]])
        lifted = lift(f)
        assert [elements_of(w) for w in lifted.sets] == [(), (1, 2), (1, 3)]

    def test_cap(self):
        with pytest.raises(CapExceeded):
            lift(SetFamily.from_words(GroundSet(64), [0]))

    @given(families())
    @settings(max_examples=60)
    def test_lift_is_even_and_size_preserving(self, f):
        lifted = lift(f)
        assert lifted.even
        assert len(lifted) == len(f)


class TestTwist:
    def test_lifted_singletons_twist_to_star(self):
        lifted = lift(fam(3, [[1], [2], [3]]))
        t = twist(lifted, word_from_elements([1, 4], 4))
        assert [elements_of(w) for w in t.sets] == [(), (1, 2), (1, 3)]

    def test_identity(self):
        f = fam(3, [[1, 2], [3]])
        assert twist(f, 0) == f

    def test_stray_bits_rejected(self):
        with pytest.raises(BadElement):
            twist(fam(2, [[1]]), 0b100)

    @given(family_with_twist_word())
    @settings(max_examples=80)
    def test_involution_and_size(self, fam_a):
        f, a = fam_a
        t = twist(f, a)
        assert len(t) == len(f)
        assert twist(t, a) == f

    @given(family_with_twist_word())
    @settings(max_examples=80)
    def test_pairwise_differences_preserved(self, fam_a):
        f, a = fam_a
        t = twist(f, a)
        lhs = sorted((wi ^ wj).bit_count()
                     for i, wi in enumerate(f.sets) for wj in f.sets[i + 1:])
        rhs = sorted((wi ^ wj).bit_count()
                     for i, wi in enumerate(t.sets) for wj in t.sets[i + 1:])
        assert lhs == rhs

    def test_member_twist_is_pointed(self):
        f = fam(3, [[1, 2], [1, 3]])
        assert twist(f, f.sets[0]).pointed

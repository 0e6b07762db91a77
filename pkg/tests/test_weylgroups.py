# tests/test_weylgroups.py
# Finite and extended affine Weyl groups

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from affhecke.errors import GroupSizeError
from affhecke.rootdata import build_root_datum
from affhecke.weylgroups import (
    affine_weyl_group,
    aff_length,
    bruhat_leq,
    dot_action,
    enumerate_W,
    format_word,
    omega_elements,
    reduced_words,
    weyl_group,
)


class TestFiniteWeylGroup:
    """Enumeration, words and the Bruhat order"""

    @pytest.mark.parametrize("spec,order", [("A1", 2), ("A2", 6), ("A3", 24), ("B2", 8), ("G2", 12), ("A1xA1", 4)])
    def test_enumeration(self, spec, order):
        elements = enumerate_W(build_root_datum(spec))
        assert len(elements) == order
        assert len(set(elements)) == order
        assert elements[0].is_identity

    def test_enumeration_bound(self):
        with pytest.raises(GroupSizeError):
            enumerate_W(build_root_datum("A3"), max_order=10)

    @pytest.mark.parametrize("spec", ["A2", "A3", "B2", "G2"])
    def test_longest_element(self, spec):
        datum = build_root_datum(spec)
        w0 = weyl_group(datum).longest_element()
        assert w0.length == len(datum.positive_roots)
        assert (w0 * w0).is_identity

    def test_reduced_word_is_lexicographically_smallest(self):
        group = weyl_group(build_root_datum("A2"))
        w0 = group.longest_element()
        assert w0.reduced_word == (1, 2, 1)
        assert format_word(w0.reduced_word) == "s1s2s1"
        assert format_word(()) == "e"

    @pytest.mark.parametrize("spec,count", [("A2", 2), ("B2", 2), ("G2", 2), ("A3", 16)])
    def test_reduced_words_of_longest_element(self, spec, count):
        group = weyl_group(build_root_datum(spec))
        w0 = group.longest_element()
        words = reduced_words(w0)
        assert len(words) == count
        assert all(group.element_from_word(word) == w0 for word in words)

    def test_matsumoto_connectivity(self):
        group = weyl_group(build_root_datum("A3"))
        assert all(group.braid_move_connected(w) for w in group.enumerate())

    def test_bruhat_order(self):
        group = weyl_group(build_root_datum("A2"))
        s1, s2 = group.simple(1), group.simple(2)
        assert bruhat_leq(s1, s1 * s2)
        assert bruhat_leq(group.identity(), s2 * s1)
        assert not bruhat_leq(s1 * s2, s2 * s1)
        assert all(bruhat_leq(w, group.longest_element()) for w in group.enumerate())

    def test_descents(self):
        group = weyl_group(build_root_datum("A2"))
        w = group.element_from_word((1, 2))
        assert w.left_descents == (1,)
        assert w.right_descents == (2,)

    def test_inverse(self):
        group = weyl_group(build_root_datum("B2"))
        for w in group.enumerate():
            assert (w * w.inverse).is_identity

    def test_dot_action(self):
        group = weyl_group(build_root_datum("A1"))
        # s . 0 = -alpha
        assert dot_action(group.simple(1), (0,)) == (-2,)

    def test_element_from_inversions(self):
        datum = build_root_datum("A2")
        group = weyl_group(datum)
        for w in group.enumerate():
            inversions = [g for g in datum.positive_roots if w.act(g) not in datum.positive_root_set]
            assert group.element_from_inversions(inversions) == w


class TestAffineWeylGroup:
    """Iwahori-Matsumoto length, Omega and the Coxeter presentation"""

    def test_labels(self):
        assert affine_weyl_group(build_root_datum("A2")).labels() == [1, 2, 0]
        assert affine_weyl_group(build_root_datum("A1xA1")).labels() == [1, 2, 0, -1]

    @pytest.mark.parametrize("spec", ["A1", "A2", "B2", "G2"])
    def test_simple_reflections_have_length_one(self, spec):
        group = affine_weyl_group(build_root_datum(spec))
        for label, s in group.simple_reflections().items():
            assert aff_length(s) == 1
            assert (s * s).is_identity

    def test_dominant_translation_length(self):
        group = affine_weyl_group(build_root_datum("A2"))
        # <lambda, 2 rho^vee>
        assert group.translation((1, 0)).length == 2
        assert group.translation((1, 1)).length == 4
        assert group.translation((-1, 0)).length == 2

    def test_affine_reflection_is_translation_times_reflection(self):
        datum = build_root_datum("A2")
        group = affine_weyl_group(datum)
        beta = datum.affine_root(1)
        s_beta = group.from_finite(group.finite.reflection(beta))
        assert group.simple(0) == group.translation(beta) * s_beta

    @pytest.mark.parametrize("spec,order", [("A1", 2), ("A2", 3), ("G2", 1), ("B2", 2), ("A3", 4)])
    def test_omega(self, spec, order):
        datum = build_root_datum(spec)
        elements = omega_elements(datum)
        assert len(elements) == order == datum.index_of_connection()
        assert all(a.length == 0 for a in elements)
        assert elements[0].is_identity

    def test_omega_normalizes_simple_reflections(self):
        group = affine_weyl_group(build_root_datum("A2"))
        simple = set(group.simple_reflections().values())
        for omega in group.omega_elements():
            for s in simple:
                assert group.conjugate(omega, s) in simple

    @pytest.mark.parametrize("spec,depth", [("A1", 6), ("A2", 4), ("B2", 4)])
    def test_length_equals_cayley_distance(self, spec, depth):
        group = affine_weyl_group(build_root_datum(spec))
        distances = group.cayley_distances(depth)
        assert all(a.length == d for a, d in distances.items())

    def test_reduced_decomposition(self):
        group = affine_weyl_group(build_root_datum("A2"))
        for a in [group.translation((1, 0)), group.translation((-1, 1)), group.translation((2, -1))]:
            labels, omega = group.reduced_decomposition(a)
            assert len(labels) == a.length
            assert omega.length == 0
            assert group.element_from_word(labels) * omega == a

    def test_inverse_and_action(self):
        group = affine_weyl_group(build_root_datum("B2"))
        a = group.element_from_word((0, 1, 2))
        assert (a * a.inverse).is_identity
        assert a.inverse.act(a.act((1, -1))) == (1, -1)


if __name__ == "__main__":
    pytest.main([__file__, "-v", "-s"])

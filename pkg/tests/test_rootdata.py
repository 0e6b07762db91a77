# tests/test_rootdata.py
# Root data: type strings, Cartan validation, roots and weight geometry

import sys
from pathlib import Path

import pytest

# 添加 src 目录到路径
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from affhecke.errors import CartanMatrixError, DimensionMismatchError, TypeSpecError
from affhecke.rootdata import build_root_datum, conv_hull_weights, n_G_constant, pairing, parse_type_spec


class TestTypeStrings:
    """Parsing of type strings and the Cartan matrices they produce"""

    def test_a2_cartan_matrix(self):
        datum = build_root_datum("A2")
        assert datum.cartan == ((2, -1), (-1, 2))
        assert datum.name == "A2"

    def test_b2_bourbaki_numbering(self):
        """alpha_2 is the short root: <alpha_1, alpha_2^vee> = -2"""
        datum = build_root_datum("B2")
        assert datum.cartan == ((2, -1), (-2, 2))

    def test_product_type(self):
        assert parse_type_spec("A1xA1") == (("A", 1), ("A", 1))
        datum = build_root_datum("A1xA1")
        assert datum.cartan == ((2, 0), (0, 2))
        assert len(datum.components) == 2

    @pytest.mark.parametrize("spec", ["Z9", "D2", "E9", "G3", "", "A0"])
    def test_invalid_type_strings(self, spec):
        with pytest.raises(TypeSpecError):
            build_root_datum(spec)

    @pytest.mark.parametrize(
        "spec,positive,order",
        [("A1", 1, 2), ("A2", 3, 6), ("A3", 6, 24), ("B2", 4, 8), ("G2", 6, 12), ("C3", 9, 48), ("D4", 12, 192), ("E6", 36, 51840)],
    )
    def test_root_counts_and_weyl_orders(self, spec, positive, order):
        datum = build_root_datum(spec)
        assert len(datum.positive_roots) == positive
        assert datum.weyl_group_order() == order


class TestCartanMatrices:
    """Explicit matrices are validated and classified"""

    def test_explicit_matrix_matches_type_string(self):
        assert build_root_datum([[2, -1], [-1, 2]]) == build_root_datum("A2")
        assert build_root_datum("[[2, -1], [-2, 2]]") == build_root_datum("B2")

    @pytest.mark.parametrize(
        "matrix",
        [
            [[3, -1], [-1, 2]],
            [[2, 1], [1, 2]],
            [[2, -1], [0, 2]],
            [[2, -2], [-2, 2]],
            [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]],
        ],
    )
    def test_rejected_matrices(self, matrix):
        with pytest.raises(CartanMatrixError):
            build_root_datum(matrix)


class TestInvariants:
    """Derived constants of a root datum"""

    @pytest.mark.parametrize("spec,index", [("A1", 2), ("A2", 3), ("A3", 4), ("B2", 2), ("G2", 1), ("A1xA1", 4)])
    def test_index_of_connection(self, spec, index):
        assert build_root_datum(spec).index_of_connection() == index

    @pytest.mark.parametrize("spec,h", [("A2", 3), ("A3", 4), ("B2", 4), ("G2", 6)])
    def test_coxeter_number(self, spec, h):
        assert build_root_datum(spec).coxeter_number == h

    @pytest.mark.parametrize("spec,n", [("A3", 1), ("F4", 2), ("G2", 3), ("F4xG2", 6)])
    def test_n_G(self, spec, n):
        assert n_G_constant(build_root_datum(spec)) == n

    def test_rho_is_sum_of_fundamental_weights(self):
        assert build_root_datum("B2").rho == (1, 1)

    def test_affine_root_is_dominant_with_highest_coroot(self):
        assert build_root_datum("A2").affine_root(1) == (1, 1)
        # the highest short root alpha_1 + alpha_2 of B2
        assert build_root_datum("B2").affine_root(1) == (1, 0)

    def test_minuscule_weights(self):
        assert build_root_datum("A2").minuscule_weights(1) == [(1, 0), (0, 1)]
        assert build_root_datum("G2").minuscule_weights(1) == []

    def test_root_lattice_membership(self):
        datum = build_root_datum("A2")
        assert datum.in_root_lattice((2, -1))
        assert not datum.in_root_lattice((1, 0))


class TestWeightGeometry:
    """Pairings, reflections and convex hulls of orbits"""

    def test_pairing_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            pairing((1, 0), (1,))

    def test_reflection(self):
        datum = build_root_datum("A2")
        assert datum.reflect((1, 0), 1) == (-1, 1)
        assert datum.reflect((0, 1), 1) == (0, 1)

    def test_orbit_of_fundamental_weight(self):
        datum = build_root_datum("A2")
        assert datum.orbit((1, 0)) == frozenset({(1, 0), (-1, 1), (0, -1)})

    def test_divided_difference_terms(self):
        datum = build_root_datum("A1")
        assert datum.divided_difference_terms((2,), 1) == [((2,), 1), ((0,), 1)]
        assert datum.divided_difference_terms((-2,), 1) == [((0,), -1), ((2,), -1)]
        assert datum.divided_difference_terms((0,), 1) == []

    def test_conv_hull_contains_centroid(self):
        datum = build_root_datum("A2")
        conv, conv0 = conv_hull_weights(datum, (1, 0))
        assert conv == frozenset({(1, 0), (-1, 1), (0, -1), (0, 0)})
        assert conv0 == frozenset({(0, 0)})

    def test_conv_hull_same_coset(self):
        datum = build_root_datum("A2")
        conv, conv0 = conv_hull_weights(datum, (1, 0), same_coset=True)
        assert conv == frozenset({(1, 0), (-1, 1), (0, -1)})
        assert conv0 == frozenset()

    def test_conv_hull_a1(self):
        datum = build_root_datum("A1")
        conv, conv0 = conv_hull_weights(datum, (3,))
        assert conv == frozenset({(k,) for k in range(-3, 4)})
        assert conv0 == frozenset({(k,) for k in range(-2, 3)})

    def test_weight_box_size(self):
        assert len(list(build_root_datum("A2").weight_box(2))) == 25


if __name__ == "__main__":
    pytest.main([__file__, "-v", "-s"])

# tests/test_klpoly.py
# Kazhdan-Lusztig polynomials and component multiplicities

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from affhecke.errors import GroupSizeError
from affhecke.hecke import ONE, LaurentPoly
from affhecke.klpoly import (
    component_multiplicity,
    kl_table,
    kl_table_from_r_polynomials,
    mult_in_Zprime,
    r_polynomial,
    reduced_components,
)
from affhecke.rootdata import build_root_datum
from affhecke.weylgroups import weyl_group

ONE_PLUS_Q = LaurentPoly({0: 1, 1: 1})


class TestTables:
    """The mu-recursion and the R-polynomial oracle"""

    @pytest.mark.parametrize("spec", ["A1", "A2", "A1xA1", "B2", "G2"])
    def test_all_ones(self, spec):
        table = kl_table(build_root_datum(spec))
        assert table.entries
        assert all(p == ONE for p in table.entries.values())

    def test_singular_schubert_variety_of_a3(self):
        datum = build_root_datum("A3")
        group = weyl_group(datum)
        w = group.element_from_word((2, 1, 3, 2))
        for table in (kl_table(datum), kl_table_from_r_polynomials(datum)):
            assert table.P(group.identity(), w) == ONE_PLUS_Q
            assert table.P(group.simple(2), w) == ONE_PLUS_Q
            assert table.P(group.simple(1), w) == ONE
            assert table.P(group.simple(2), w).format("q") == "1+q"

    @pytest.mark.parametrize("spec", ["A3", "B2"])
    def test_algorithms_agree(self, spec):
        datum = build_root_datum(spec)
        assert kl_table(datum) == kl_table_from_r_polynomials(datum)

    def test_invariants(self):
        datum = build_root_datum("A3")
        group = weyl_group(datum)
        table = kl_table(datum)
        for (y, w), p in table.entries.items():
            assert group.bruhat_leq(y, w)
            assert p.coefficient(0) == 1
            if y != w:
                assert 2 * p.degree() <= w.length - y.length - 1
            else:
                assert p == ONE

    def test_inverse_symmetry(self):
        table = kl_table(build_root_datum("A3"))
        for (y, w), p in table.entries.items():
            assert table.P(y.inverse, w.inverse) == p

    def test_lower_interval(self):
        datum = build_root_datum("A3")
        group = weyl_group(datum)
        w = group.element_from_word((2, 1, 3, 2))
        partial = kl_table(datum, up_to=w)
        full = kl_table(datum)
        assert all(group.bruhat_leq(x, w) for x, _ in partial.entries)
        assert partial.P(group.identity(), w) == full.P(group.identity(), w)

    def test_r_polynomial_of_a_reflection(self):
        group = weyl_group(build_root_datum("A1"))
        assert r_polynomial(group.identity(), group.simple(1)) == LaurentPoly({1: 1, 0: -1})

    def test_group_size_bound(self):
        with pytest.raises(GroupSizeError):
            kl_table(build_root_datum("A3"), max_order=10)

    def test_csv_rows(self):
        rows = kl_table(build_root_datum("A2")).to_csv_rows()
        assert rows[0] == ["e", "e", "1", "1"]
        assert len(rows) == 19

    def test_mu_coefficient(self):
        datum = build_root_datum("A2")
        group = weyl_group(datum)
        table = kl_table(datum)
        assert table.mu(group.identity(), group.simple(1)) == 1
        assert table.mu(group.identity(), group.element_from_word((1, 2))) == 0


class TestMultiplicities:
    """Multiplicities of components through P_{y,w}(1)"""

    def test_exact_in_type_a(self):
        datum = build_root_datum("A3")
        group = weyl_group(datum)
        result = component_multiplicity(group.simple(2), group.element_from_word((2, 1, 3, 2)))
        assert result.value == 2
        assert result.exact
        assert result.provenance.startswith("=")

    def test_incomparable_pair(self):
        group = weyl_group(build_root_datum("A2"))
        result = component_multiplicity(group.element_from_word((1, 2)), group.element_from_word((2, 1)))
        assert result.value == 0
        assert not result.comparable

    def test_lower_bound_outside_type_a(self):
        group = weyl_group(build_root_datum("B2"))
        result = component_multiplicity(group.identity(), group.longest_element())
        assert result.value == 1
        assert not result.exact
        assert result.provenance.startswith(">=")

    def test_multiplicity_in_fiber_component(self):
        datum = build_root_datum("A3")
        group = weyl_group(datum)
        w0 = group.longest_element()
        u = w0 * group.element_from_word((2, 1, 3, 2))
        z = group.simple(2) * w0
        assert mult_in_Zprime(u, z).value == 2

    def test_reduced_components(self):
        group = weyl_group(build_root_datum("A2"))
        assert reduced_components(group.simple(1)) == frozenset({group.identity(), group.simple(1)})
        components = reduced_components(group.element_from_word((1, 2)))
        assert len(components) == 4
        assert group.element_from_word((2, 1)) in components


if __name__ == "__main__":
    pytest.main([__file__, "-v", "-s"])

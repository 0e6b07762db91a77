# tests/test_kernelcalc.py
# Kernel classes, convolution and the twisted standard bases

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from affhecke.errors import NonReducedWordError, RootDatumMismatchError
from affhecke.hecke import V, V_GAP, LaurentPoly, hecke_algebra
from affhecke.kernelcalc import (
    KernelCalculus,
    bm_class,
    bm_compose,
    convolve,
    element_from_reduced_word,
    kernel_class,
    sign_power,
)
from affhecke.rootdata import build_root_datum
from affhecke.weylgroups import weyl_group


@pytest.fixture
def a2():
    return build_root_datum("A2")


class TestKernelClasses:
    """Untwisted and twisted classes"""

    def test_sign_power(self):
        assert sign_power(3) == LaurentPoly({3: -1})
        assert sign_power(2, -1) == LaurentPoly({-2: 1})

    def test_diagonal_is_unit(self, a2):
        calc = KernelCalculus(a2)
        assert calc.diagonal().value == calc.algebra.one()

    def test_simple_class(self, a2):
        calc = KernelCalculus(a2)
        assert calc.simple_class(1).value == calc.algebra.T(1) * (-V)

    def test_length_two_class(self, a2):
        calc = KernelCalculus(a2)
        w = calc.group.element_from_word((1, 2))
        expected = calc.algebra.basis(calc.affine.from_finite(calc.group.element_from_word((2, 1)))) * LaurentPoly({2: 1})
        assert calc.kernel_class(w).value == expected

    def test_twists_direct_slots(self):
        datum = build_root_datum("A1")
        calc = KernelCalculus(datum, twist_slots="direct")
        s = calc.group.simple(1)
        twisted = calc.kernel_class(s, (1,), (-1,))
        algebra = calc.algebra
        assert twisted.value == algebra.theta((1,)) * calc.kernel_class(s).value * algebra.theta((-1,))
        assert twisted.to_json()["twist"] == [[1], [-1]]

    def test_twists_exchanged_slots(self):
        datum = build_root_datum("A1")
        calc = KernelCalculus(datum, twist_slots="exchanged")
        s = calc.group.simple(1)
        algebra = calc.algebra
        assert calc.kernel_class(s, (1,), (0,)).value == calc.kernel_class(s).value * algebra.theta((1,))

    def test_shift(self):
        datum = build_root_datum("A1")
        calc = KernelCalculus(datum, shift_v_power=-1)
        shifted = calc.kernel_class(calc.group.identity(), shift=1)
        assert shifted.value == calc.algebra.one() * LaurentPoly({-1: 1})
        assert shifted.shift == 1

    def test_module_level_class(self, a2):
        w0 = weyl_group(a2).longest_element()
        value = kernel_class(w0).value
        algebra = hecke_algebra(a2)
        assert value == algebra.basis(algebra.group.from_finite(w0)) * LaurentPoly({3: -1})


class TestConvolution:
    """Convolution along reduced words"""

    def test_unit(self, a2):
        calc = KernelCalculus(a2)
        simple = calc.simple_class(2)
        assert calc.convolve(calc.diagonal(), simple) == simple.value
        assert calc.convolve(simple, calc.diagonal()) == simple.value

    def test_square_of_a_simple_class(self, a2):
        calc = KernelCalculus(a2)
        square = calc.convolve(calc.simple_class(1), calc.simple_class(1))
        expected = calc.algebra.one() * LaurentPoly({2: 1}) + calc.algebra.T(1) * (V * V * V_GAP)
        assert square == expected

    def test_braid_relation(self, a2):
        calc = KernelCalculus(a2)
        assert calc.convolve_word((1, 2, 1)) == calc.convolve_word((2, 1, 2))

    @pytest.mark.parametrize("order", ["exchanged", "direct"])
    def test_reduced_words_of_a3(self, order):
        datum = build_root_datum("A3")
        calc = KernelCalculus(datum, convolution_order=order)
        for w in calc.group.enumerate():
            report = calc.verify_reduced_word_convolution(w, max_workers=2)
            assert report.passed, str(w)
            assert report.order == order

    @pytest.mark.parametrize("order", ["exchanged", "direct"])
    def test_longest_element_of_b2(self, order):
        datum = build_root_datum("B2")
        calc = KernelCalculus(datum, convolution_order=order)
        report = calc.verify_reduced_word_convolution(calc.group.longest_element())
        assert report.passed
        assert len(report.checks) == 2

    def test_exchanged_target_is_the_class_of_w(self, a2):
        calc = KernelCalculus(a2, convolution_order="exchanged")
        w = calc.group.element_from_word((1, 2))
        assert calc.convolve_word((1, 2)) == calc.kernel_class(w).value

    def test_direct_target_is_the_class_of_the_inverse(self, a2):
        calc = KernelCalculus(a2, convolution_order="direct")
        w = calc.group.element_from_word((1, 2))
        assert calc.convolve_word((1, 2)) == calc.kernel_class(w.inverse).value

    def test_twist_additivity(self):
        datum = build_root_datum("A1")
        calc = KernelCalculus(datum)
        e = calc.group.identity()
        for x in [(-1,), (0,), (1,), (2,)]:
            for y in [(-1,), (1,)]:
                total = (x[0] + y[0],)
                assert calc.convolve(calc.kernel_class(e, x), calc.kernel_class(e, y)) == calc.kernel_class(e, total).value

    def test_mismatched_data(self, a2):
        with pytest.raises(RootDatumMismatchError):
            convolve(kernel_class(weyl_group(a2).simple(1)), hecke_algebra(build_root_datum("A1")).one())


class TestBorelMoore:
    """The group-algebra side and its compatibility with v -> 1"""

    def test_simple_square(self, a2):
        group = weyl_group(a2)
        s = group.simple(1)
        assert bm_compose({s: 1}, {s: 1}) == {group.identity(): 1}
        assert bm_compose({}, {s: 1}) == {}
        assert bm_class(s) == {s: 1}

    def test_word_orders(self, a2):
        group = weyl_group(a2)
        exchanged = KernelCalculus(a2, convolution_order="exchanged")
        direct = KernelCalculus(a2, convolution_order="direct")
        assert exchanged.bm_word((1, 2)) == {group.element_from_word((2, 1)): 1}
        assert direct.bm_word((1, 2)) == {group.element_from_word((1, 2)): 1}

    @pytest.mark.parametrize("spec", ["A2", "B2"])
    def test_dictionary_coherence(self, spec):
        calc = KernelCalculus(build_root_datum(spec))
        assert all(calc.dictionary_coherence(w) for w in calc.group.enumerate())


class TestStandardBases:
    """Both twisted families are bases"""

    def test_a2_radius_two(self, a2):
        report = KernelCalculus(a2).standard_bases_rank(radius=2)
        assert report.size == 150
        assert report.independent
        assert report.to_json()["rank_theta_left"] == 150
        assert report.to_json()["rank_theta_right"] == 150

    def test_a1_radius_one(self):
        report = KernelCalculus(build_root_datum("A1")).standard_bases_rank(radius=1, points=(2,))
        assert report.size == 6
        assert report.independent

    @pytest.mark.parametrize("slots", ["direct", "exchanged"])
    def test_families_are_kernel_class_expansions(self, slots):
        datum = build_root_datum("A1")
        calc = KernelCalculus(datum, twist_slots=slots)
        algebra = calc.algebra
        e = calc.group.identity()
        s = calc.group.simple(1)
        x = (-1,)
        left_rows = calc._family_rows([e, s], [x], theta_left=True)
        right_rows = calc._family_rows([e, s], [x], theta_left=False)
        assert left_rows[1] == dict((algebra.theta(x) * algebra.T(1) * (-V)).terms)
        assert right_rows[1] == dict((algebra.T(1) * algebra.theta(x) * (-V)).terms)
        # theta_{-omega} is the inverse of a length-one T_a
        assert left_rows[0] == right_rows[0] == dict(algebra.theta(x).terms)
        assert len(left_rows[0]) == 2

    def test_dependent_family_is_detected(self):
        datum = build_root_datum("A1")
        calc = KernelCalculus(datum)
        s = calc.group.simple(1)
        report = calc.standard_bases_rank(elements=[s, s], radius=1, points=(2,))
        assert report.size == 6
        assert report.rank_theta_left == 3
        assert report.rank_theta_right == 3
        assert not report.independent


class TestInvertibility:
    """O_{Z_s}(-rho, rho - alpha_s) is the inverse of O_{Z_s} up to v^2"""

    @pytest.mark.parametrize("spec", ["A2", "B2"])
    @pytest.mark.parametrize("slots", ["direct", "exchanged"])
    def test_twisted_simple_class_inverts(self, spec, slots):
        datum = build_root_datum(spec)
        calc = KernelCalculus(datum, twist_slots=slots)
        algebra = calc.algebra
        rho = datum.rho
        for i in range(1, datum.rank + 1):
            alpha = datum.simple_roots[i - 1]
            s = calc.group.simple(i)
            twisted = calc.kernel_class(s, tuple(-c for c in rho), tuple(r - a for r, a in zip(rho, alpha)))
            assert twisted.value == algebra.inverse_simple(i) * (-V)
            unit = algebra.one() * LaurentPoly({2: 1})
            assert calc.convolve(twisted, calc.simple_class(i)) == unit
            assert calc.convolve(calc.simple_class(i), twisted) == unit


class TestReducedWords:
    """Words given on the command line must be reduced"""

    def test_reduced_word(self, a2):
        assert element_from_reduced_word(a2, (1, 2, 1)).length == 3

    def test_non_reduced_word(self, a2):
        with pytest.raises(NonReducedWordError) as excinfo:
            element_from_reduced_word(a2, (1, 2, 1, 2))
        assert excinfo.value.shorter == (2, 1)
        assert excinfo.value.exit_code == 4


if __name__ == "__main__":
    pytest.main([__file__, "-v", "-s"])

"""The weight-graded ring generated by c4, c6, Delta modulo
c6^2 = c4^3 - 1728*Delta, its monomial bases, and integral q-expansions."""

import pytest
from hypothesis import given, settings, strategies as st

from tmfkit.algebra import AlgebraError, ZZ, QQ, PrimeField
from tmfkit.series import Series
from tmfkit.modforms import (
    ModularForm, normal_form, basis, basis_monomials, dimension,
    q_expansion, j_q_expansion, qexp_injectivity_check, monomial_label,
)


def brute_dimension(k):
    """Order-independent recount: solutions of 4a + 6b + 12c = k with
    b <= 1, all nonnegative."""
    return sum(1 for a in range(k // 4 + 1)
               for b in (0, 1)
               for c in range(k // 12 + 1)
               if 4 * a + 6 * b + 12 * c == k)


def eta_product_delta(N):
    """Independent oracle for Delta's q-expansion: q * prod (1-q^n)^24."""
    one = Series.one(ZZ, ("q",), N)
    acc = one
    for n in range(1, N):
        factor = one - Series(ZZ, ("q",), N, {(n,): 1})
        acc = acc * (factor ** 24)
    return acc.shift(1).truncate(N)


class TestBasis:
    def test_dimensions_match_brute_force(self):
        for k in range(0, 49):
            assert dimension(k) == brute_dimension(k), k

    def test_known_dimension_table(self):
        dims = [dimension(k) for k in range(0, 28, 2)]
        assert dims == [1, 0, 1, 1, 1, 1, 2, 1, 2, 2, 2, 2, 3, 2]

    def test_odd_weights_empty(self):
        assert all(dimension(k) == 0 for k in range(1, 40, 2))

    def test_weight_twelve_order(self):
        assert [monomial_label(m) for m in basis_monomials(12)] == \
            ["c4^3", "Delta"]

    def test_weight_twenty_four(self):
        assert [monomial_label(m) for m in basis_monomials(24)] == \
            ["c4^6", "c4^3*Delta", "Delta^2"]

    def test_basis_forms_are_homogeneous(self):
        for f in basis(36):
            assert f.is_homogeneous() and f.weight() == 36


class TestNormalForm:
    def test_constructor_rejects_square_c6(self):
        with pytest.raises(AlgebraError):
            ModularForm(ZZ, {(0, 2, 0): 1})

    def test_c6_squared_rewrites(self):
        f = normal_form({(0, 2, 0): 1})
        assert f == (ModularForm.monomial((3, 0, 0))
                     - ModularForm.monomial((0, 0, 1)).scale(1728))

    def test_higher_powers(self):
        # c6^4 = (c4^3 - 1728 Delta)^2
        f = normal_form({(0, 4, 0): 1})
        c43 = ModularForm.monomial((3, 0, 0))
        d = ModularForm.monomial((0, 0, 1))
        assert f == (c43 * c43 - (c43 * d).scale(2 * 1728)
                     + (d * d).scale(1728 ** 2))

    def test_product_stays_normalized(self):
        c6 = ModularForm.generator("c6")
        sq = c6 * c6
        assert all(b <= 1 for (_, b, _) in sq.terms)
        assert sq.weight() == 12

    def test_weight_of_mixed_sum(self):
        f = ModularForm.generator("c4") + ModularForm.generator("c6")
        assert f.weight() == "mixed"
        assert not f.is_homogeneous()


class TestQExpansions:
    def test_eisenstein_pins(self):
        e4 = q_expansion(ModularForm.generator("c4"), 4)
        assert [e4.coeff((k,)) for k in range(4)] == [1, 240, 2160, 6720]
        e6 = q_expansion(ModularForm.generator("c6").scale(-1), 4)
        assert [e6.coeff((k,)) for k in range(4)] == [1, -504, -16632,
                                                     -122976]

    def test_delta_against_eta_product(self):
        N = 24
        mine = q_expansion(ModularForm.generator("Delta"), N)
        assert mine == eta_product_delta(N)

    def test_ramanujan_tau_pins(self):
        d = q_expansion(ModularForm.generator("Delta"), 8)
        assert [d.coeff((k,)) for k in range(1, 8)] == \
            [1, -24, 252, -1472, 4830, -6048, -16744]

    def test_defining_relation_in_q(self):
        N = 16
        e4 = q_expansion(ModularForm.generator("c4"), N)
        c6q = q_expansion(ModularForm.generator("c6"), N)
        dq = q_expansion(ModularForm.generator("Delta"), N)
        assert e4 ** 3 - c6q ** 2 == dq.scale(1728)

    def test_expansion_is_additive_and_multiplicative(self):
        f = ModularForm.generator("c4")
        g = ModularForm.generator("c6")
        N = 10
        assert q_expansion(f + g, N) == q_expansion(f, N) + q_expansion(g, N)
        assert q_expansion(f * g, N).agrees_with(
            q_expansion(f, N) * q_expansion(g, N))

    def test_prime_field_coercion(self):
        F = PrimeField(3)
        d3 = q_expansion(ModularForm.generator("Delta", F), 6)
        assert d3.ring == F
        assert [d3.coeff((k,)) for k in range(6)] == [0, 1, 0, 0, 1, 0]
        e4 = q_expansion(ModularForm.generator("c4", F), 5)
        assert [e4.coeff((k,)) for k in range(5)] == [1, 0, 0, 0, 0]

    def test_constant_weight_zero(self):
        f = ModularForm.constant(ZZ, 5)
        q = q_expansion(f, 5)
        assert q.coeff((0,)) == 5 and all(
            q.coeff((k,)) == 0 for k in range(1, 5))


class TestJExpansion:
    def test_pinned_coefficients(self):
        j = j_q_expansion(6)
        assert j.coeff((-1,)) == 1
        assert j.coeff((0,)) == 744
        assert j.coeff((1,)) == 196884
        assert j.coeff((2,)) == 21493760
        assert j.coeff((3,)) == 864299970
        assert j.coeff((4,)) == 20245856256

    def test_small_precision(self):
        j = j_q_expansion(1)
        assert j.coeff((-1,)) == 1

    def test_j_times_delta_is_c4_cubed(self):
        N = 10
        j = j_q_expansion(N)
        dq = q_expansion(ModularForm.generator("Delta"), j.precision)
        c43 = q_expansion(ModularForm.generator("c4"), j.precision) ** 3
        assert (j * dq).agrees_with(c43)


class TestInjectivity:
    def test_expansions_separate_forms(self):
        rep = qexp_injectivity_check(36, 8)
        assert rep["all_independent"]
        assert rep["not_visible"] == []

    def test_insufficient_precision_reported(self):
        rep = qexp_injectivity_check(48, 2)
        assert not rep["all_independent"] or rep["not_visible"] == []


class TestSerialization:
    def test_roundtrip(self):
        f = ModularForm(ZZ, {(3, 0, 0): 2, (0, 1, 1): -7})
        assert ModularForm.from_json(f.to_json()) == f

    def test_term_order_deterministic(self):
        f = ModularForm(ZZ, {(3, 0, 0): 1, (0, 0, 1): 1, (0, 1, 1): 5})
        keys = [(t["c"], t["b"], t["a"]) for t in f.to_json()["terms"]]
        assert keys == sorted(keys)


@given(co=st.lists(st.integers(-9, 9), min_size=3, max_size=3),
       co2=st.lists(st.integers(-9, 9), min_size=3, max_size=3))
@settings(max_examples=25, deadline=None)
def test_expansion_ring_hom_random(co, co2):
    f = (ModularForm.generator("c4").scale(co[0])
         + ModularForm.generator("c6").scale(co[1])
         + ModularForm.generator("Delta").scale(co[2]))
    g = (ModularForm.monomial((2, 0, 0)).scale(co2[0])
         + ModularForm.monomial((0, 1, 1)).scale(co2[1])
         + ModularForm.constant(ZZ, co2[2]))
    N = 8
    # compare with agrees_with: when both factors are multiples of q the
    # valuation-aware product legitimately carries precision beyond N
    assert q_expansion(f * g, N).agrees_with(
        q_expansion(f, N) * q_expansion(g, N))
    assert q_expansion(f + g, N) == q_expansion(f, N) + q_expansion(g, N)

import random
from fractions import Fraction

import pytest

from algebra.errors import InputError, ResourceBoundError
from algebra.exactfield import CycloNumber, common_order, cyclo_arith, to_rational_coords

zeta3 = CycloNumber.root(3)
i = CycloNumber.root(4)


def test_cube_roots_sum_to_minus_one():
    assert zeta3 + zeta3 ** 2 == -1
    assert zeta3 ** 3 == 1


def test_i_squared():
    assert i * i == -1
    assert (i * -2) ** 2 == -4


def test_mixed_orders_lift_to_lcm():
    product = cyclo_arith(zeta3, i, "mul")
    assert product.order == 12
    assert product == CycloNumber.root(12, 7)


def test_inverse_and_division():
    a = 1 + zeta3
    assert a.inverse() * a == 1
    assert a.inverse() == -zeta3
    assert cyclo_arith(1, a, "div") == -zeta3
    assert CycloNumber.root(5) ** -1 == CycloNumber.root(5, 4)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        zeta3 / 0
    with pytest.raises(ZeroDivisionError):
        CycloNumber.rational(0, 3).inverse()


def test_literals():
    assert (zeta3 ** 2).to_literal() == "-1-zeta3"
    assert (i * 3).to_literal() == "3*zeta4"
    assert CycloNumber.rational(Fraction(1, 2)).to_literal() == "1/2"
    assert CycloNumber.rational(0).to_literal() == "0"


def test_rational_coords():
    assert to_rational_coords(zeta3) == (0, 1)
    assert to_rational_coords(Fraction(2, 3)) == (Fraction(2, 3),)
    assert len(to_rational_coords(zeta3, 12)) == 4


def test_common_order():
    assert common_order([zeta3, i, Fraction(1, 2)]) == 12
    assert common_order([]) == 1


def test_order_bound():
    with pytest.raises(ResourceBoundError):
        CycloNumber.root(121)


def test_unknown_operation():
    with pytest.raises(InputError):
        cyclo_arith(zeta3, i, "pow")


def test_equality_with_rationals():
    assert CycloNumber.rational(5, 3) == 5
    assert zeta3 != 1
    assert hash(CycloNumber.rational(2, 4)) == hash(CycloNumber.rational(2))


def random_element(rng, order):
    size = len(CycloNumber.rational(0, order).coeffs)
    return CycloNumber(order, [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(size)])


class TestFieldProperties:
    @pytest.mark.parametrize("order", [3, 4, 5, 8, 12])
    def test_axioms_on_random_elements(self, order):
        rng = random.Random(f"axioms:{order}")
        for _ in range(10):
            a, b, c = (random_element(rng, order) for _ in range(3))
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a * b == b * a
            assert (a + b) - b == a
            if not a.is_zero():
                assert a * a.inverse() == 1
                assert (b / a) * a == b

    @pytest.mark.parametrize("order", [3, 5, 12])
    def test_rational_coords_are_linear(self, order):
        rng = random.Random(f"coords:{order}")
        for _ in range(10):
            a, b = random_element(rng, order), random_element(rng, order)
            scalar = Fraction(rng.randint(-7, 7), rng.randint(1, 5))
            expected = tuple(x + scalar * y for x, y in zip(to_rational_coords(a), to_rational_coords(b)))
            assert to_rational_coords(a + b * scalar) == expected

    @pytest.mark.parametrize("order, target", [(3, 12), (4, 12), (5, 10), (3, 6)])
    def test_lift_commutes_with_arithmetic(self, order, target):
        rng = random.Random(f"lift:{order}:{target}")
        for _ in range(10):
            a, b = random_element(rng, order), random_element(rng, order)
            assert (a * b).lift(target) == a.lift(target) * b.lift(target)
            assert (a + b).lift(target) == a.lift(target) + b.lift(target)
            assert to_rational_coords(a, target) == a.lift(target).coeffs
            if not b.is_zero():
                assert (a / b).lift(target) == a.lift(target) / b.lift(target)

    def test_inverse_in_larger_field(self):
        a = CycloNumber.root(12) + 2
        assert a * a.inverse() == 1
        assert a.inverse().order == 12


class TestHashing:
    def test_equal_values_of_different_orders(self):
        assert hash(zeta3) == hash(zeta3.lift(12))
        assert hash(zeta3) == hash(zeta3.lift(6))
        assert hash(i * 3) == hash((i * 3).lift(8))
        assert zeta3.lift(12) in {zeta3}

    def test_minimal_field(self):
        low = zeta3.lift(12).minimal()
        assert low.order == 3
        assert low.coeffs == zeta3.coeffs
        assert CycloNumber.root(12).minimal().order == 12
        assert CycloNumber.rational(Fraction(1, 3), 5).minimal().order == 1

    def test_hash_separates_values(self):
        roots = {hash(CycloNumber.root(7, k)) for k in range(1, 7)}
        assert len(roots) > 1

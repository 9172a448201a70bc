import random

import pytest

from algebra.errors import InputError
from algebra.polyforms import DiffForm, poly_parse
from services.fermat_service import fermat_polynomial
from services.hodge_service import (
    HodgeService, MixedElement, boundary_devissage, classical_hodge_numbers, curved_differential,
    cycle_check, devissage_precondition, hn_dim, hn_dims, hp0_dim, nc_filtration, phi, phi_basis,
    pole_orders, polar_filtration_dims, psi, psi_equiv,
)
from services.verify_service import random_homogeneous


class TestDimensions:
    def test_cubic_surface(self, cubic_surface):
        assert pole_orders(cubic_surface) == [2]
        assert hp0_dim(cubic_surface) == 6
        assert nc_filtration(cubic_surface) == {0: 6}
        assert classical_hodge_numbers(cubic_surface) == {(2, 0): 0, (1, 1): 6, (0, 2): 0}
        assert hn_dims(cubic_surface) == {-1: 6, 0: 6, 1: 0}

    def test_quartic_k3(self, quartic_k3):
        assert hp0_dim(quartic_k3) == 21
        assert nc_filtration(quartic_k3) == {1: 1, 0: 19, -1: 1}
        assert classical_hodge_numbers(quartic_k3) == {(2, 0): 1, (1, 1): 19, (0, 2): 1}
        assert hn_dims(quartic_k3) == {-2: 21, -1: 21, 0: 20, 1: 1, 2: 0}
        assert hn_dim(quartic_k3, 5) == 0
        assert hn_dim(quartic_k3, -10) == 21

    @pytest.mark.parametrize("n", [0, 2, 4])
    def test_quadrics(self, registry, n):
        M = registry.get_algebra(fermat_polynomial(2, n + 2), n)
        assert hp0_dim(M) == 1

    @pytest.mark.parametrize("e", [2, 3, 4])
    @pytest.mark.parametrize("n", [0, 2])
    def test_exactness_and_polar_filtration(self, registry, e, n):
        M = registry.get_algebra(fermat_polynomial(e, n + 2), n)
        dims = hn_dims(M)
        for m, value in dims.items():
            assert value - dims.get(m + 1, 0) == M.omega_f_dimension((n // 2 + 1 - m) * e)
        assert polar_filtration_dims(M) == dims
        assert sum(nc_filtration(M).values()) == hp0_dim(M)

    @pytest.mark.parametrize("e, n", [(2, 0), (3, 0), (4, 0), (5, 0), (2, 2), (3, 2), (4, 2), (5, 2), (2, 4), (3, 4)])
    def test_hodge_symmetry(self, registry, e, n):
        numbers = classical_hodge_numbers(registry.get_algebra(fermat_polynomial(e, n + 2), n))
        for (p, q), value in numbers.items():
            assert numbers[(q, p)] == value
        assert sum(numbers.values()) == hp0_dim(registry.get_algebra(fermat_polynomial(e, n + 2), n))

    def test_describe_keys(self, quartic_k3):
        report = HodgeService().describe(quartic_k3)
        assert report["classical"] == {"h2,0": 1, "h1,1": 19, "h0,2": 1}
        assert report["nc_filtration"] == {"-1": 1, "0": 19, "1": 1}
        assert report["hp0_dim"] == 21


class TestPsi:
    def test_cubic_example(self, cubic_surface):
        q = poly_parse("x0*x1", 4)
        x = psi(cubic_surface, q, 2, 0)
        assert x.terms[(2, 0, False)] == DiffForm.volume(4, q.scale(3))
        assert x == psi_equiv(cubic_surface, q, 2, 0)
        assert cycle_check(x, cubic_surface)
        assert x.homological_degrees() == {0}
        assert x.gamma_degrees(3) == {0}

    def test_zero_input(self, cubic_surface):
        assert psi(cubic_surface, poly_parse("0", 4), 2, 0).is_zero()

    def test_zero_input_is_still_validated(self, cubic_surface):
        zero = poly_parse("0", 4)
        with pytest.raises(InputError):
            psi(cubic_surface, zero, 2, 1)
        with pytest.raises(InputError):
            psi_equiv(cubic_surface, zero, 0, 0)
        with pytest.raises(InputError):
            psi(cubic_surface, poly_parse("0", 3), 2, 0)

    def test_wrong_degree(self, cubic_surface):
        with pytest.raises(InputError):
            psi(cubic_surface, poly_parse("x0", 4), 2, 0)

    def test_negative_u_power(self, cubic_surface):
        with pytest.raises(InputError):
            psi(cubic_surface, poly_parse("x0*x1", 4), 2, 1)

    def test_random_cycles(self, quartic_k3):
        rng = random.Random(7)
        for j, m in [(1, 0), (1, 1), (2, 0), (2, -1), (3, -1)]:
            for _ in range(3):
                q = random_homogeneous(rng, 4, 4 * j - 4)
                x = psi(quartic_k3, q, j, m)
                assert cycle_check(x, quartic_k3)
                assert x == psi_equiv(quartic_k3, q, j, m)
                assert x.gamma_degrees(4) == {0}
                assert x.homological_degrees() == {2 * m}

    def test_curved_differential_is_not_trivial(self, cubic_surface):
        x = MixedElement.single(DiffForm.function(poly_parse("1", 4)))
        image = curved_differential(x, cubic_surface)
        assert not image.is_zero()
        assert not cycle_check(x, cubic_surface)


class TestPhiAndBoundary:
    def test_phi(self, cubic_surface):
        q = poly_parse("x0*x1", 4)
        klass = phi(cubic_surface, q, 2)
        assert klass.pole_order == 2
        assert klass.numerator == DiffForm.volume(4, q).euler_contract()

    def test_phi_zero_is_validated_first(self, cubic_surface):
        zero = poly_parse("0", 4)
        assert phi(cubic_surface, zero, 2).numerator.is_zero()
        with pytest.raises(InputError):
            phi(cubic_surface, zero, 0)
        with pytest.raises(InputError):
            phi(cubic_surface, zero, 1)
        with pytest.raises(InputError):
            phi(cubic_surface, poly_parse("0", 3), 2)

    def test_phi_basis_size(self, quartic_k3):
        assert len(phi_basis(quartic_k3)) == 21

    def test_boundary_matches_psi(self, cubic_surface):
        q = poly_parse("x1*x2", 4)
        alpha = DiffForm.volume(4, q).euler_contract()
        assert devissage_precondition(cubic_surface, alpha, 2)
        assert boundary_devissage(cubic_surface, alpha, 2, 3) == psi(cubic_surface, q, 2, 0)

    def test_boundary_validation(self, cubic_surface):
        alpha = DiffForm.volume(4, poly_parse("x1*x2", 4)).euler_contract()
        with pytest.raises(InputError):
            boundary_devissage(cubic_surface, alpha, 2, 2)
        with pytest.raises(InputError):
            boundary_devissage(cubic_surface, alpha, 0, 3)
        with pytest.raises(InputError):
            boundary_devissage(cubic_surface, alpha, 1, 3)

import json
import random
from itertools import combinations

import pytest

from algebra.errors import FactorizationError, InputError
from algebra.exactfield import CycloNumber
from algebra.polyforms import GradedPolynomial, poly_parse
from schemas import MatrixFactorizationInput
from services.fermat_service import fermat_polynomial
from services.mf_service import (
    ChernClass, chern, chern_form, chern_product, cubic_e1, cubic_e2, cubic_surface_six, direct_sum,
    dump_mf, knorrer_pair, knorrer_power, linear_factor_pair, load_mf, mf_from_payload, mf_tensor,
    mf_validate, placement_sign, q_rank, shift, tensor_blocks,
)

i = CycloNumber.root(4)


def random_rank_one(rng, e):
    """(ℓ₁⋯ℓ_k, ℓ_{k+1}⋯ℓ_e) для попарно независимых линейных форм от x0, x1"""
    while True:
        pairs = [(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(e)]
        if all(a * d - b * c != 0 for (a, b), (c, d) in combinations(pairs, 2)):
            break
    forms = [GradedPolynomial.variable(2, 0).scale(a) + GradedPolynomial.variable(2, 1).scale(b) for a, b in pairs]
    k = rng.randint(1, e - 1)
    A, B = GradedPolynomial.constant(2, 1), GradedPolynomial.constant(2, 1)
    for index, form in enumerate(forms):
        if index < k:
            A = A * form
        else:
            B = B * form
    return mf_validate([[A]], [[B]], A * B)


class TestValidation:
    def test_builtin_examples_validate(self):
        E1 = cubic_e1()
        assert E1.rank == 1
        assert E1.weights == ((0,), (1,))
        assert knorrer_pair().f == poly_parse("x0^2+x1^2", 2)

    def test_e1_from_entries(self):
        F = mf_validate([[poly_parse("x0+x1", 2)]], [[poly_parse("x0^2-x0*x1+x1^2", 2)]], poly_parse("x0^3+x1^3", 2))
        assert F.weights is not None

    def test_bad_factorization_reports_entry(self):
        x0 = poly_parse("x0", 1)
        with pytest.raises(FactorizationError) as error:
            mf_validate([[x0]], [[x0]], poly_parse("x0^3", 1))
        assert error.value.entry == ("AB", 0, 0)

    def test_non_square(self):
        x0 = poly_parse("x0", 1)
        with pytest.raises(FactorizationError):
            mf_validate([[x0, x0]], [[x0]], poly_parse("x0^2", 1))


class TestTensor:
    def test_knorrer_square(self):
        F = mf_tensor(knorrer_pair(4, 0, 1), knorrer_pair(4, 2, 3))
        assert F.rank == 2
        assert F.f == fermat_polynomial(2, 4)

    def test_cubic_tensor(self):
        F = mf_tensor(cubic_e1(4, 0, 1), cubic_e1(4, 2, 3))
        assert F.rank == 2
        assert F.f == fermat_polynomial(3, 4)

    def test_rank_zero(self):
        empty = mf_validate([], [], poly_parse("x2^3+x3^3", 4))
        F = mf_tensor(cubic_e1(4, 0, 1), empty)
        assert F.rank == 0
        assert F.f == fermat_polynomial(3, 4)
        assert chern_form(F).is_zero()

    def test_overlapping_variables(self):
        with pytest.raises(InputError):
            mf_tensor(cubic_e1(2, 0, 1), cubic_e2(2, 0, 1))

    def test_flipped_sign_fails_validation(self):
        F, G = knorrer_pair(4, 0, 1), knorrer_pair(4, 2, 3)
        A, B = tensor_blocks(F, G)
        with pytest.raises(FactorizationError):
            mf_validate(A, [[-x for x in row] for row in B], F.f + G.f)


class TestChern:
    def test_e1(self, cubic_points):
        c = chern(cubic_e1(), cubic_points)
        assert c.raw == poly_parse("3*x1-3*x0", 2)
        assert c.degree == 1
        assert c.reduced_map() == {"x0": "-3", "x1": "3"}

    def test_e2(self):
        assert chern_form(cubic_e2()) == poly_parse("3*zeta3*(zeta3*x1-x0)", 2)

    def test_knorrer(self):
        assert chern_form(knorrer_pair()) == GradedPolynomial.constant(2, i * -2)

    @pytest.mark.parametrize("copies", [1, 2, 3])
    def test_knorrer_powers(self, copies):
        expected = GradedPolynomial.constant(2 * copies, (i * -2) ** copies)
        assert chern_form(knorrer_power(copies)) == expected

    def test_f_mismatch(self, cubic_points):
        with pytest.raises(InputError):
            chern(knorrer_pair(), cubic_points)

    def test_cubic_surface_six(self, cubic_surface):
        six = cubic_surface_six()
        classes = []
        for item in six:
            c = chern(item.factorization, cubic_surface)
            assert c.raw == poly_parse(item.expected, 4).scale(item.sign)
            assert c.raw.homogeneous_degree() == 2
            classes.append(c)
        assert [item.sign for item in six] == [1, 1, 1, 1, -1, -1]
        assert q_rank(classes) == 6

    def test_multiplicativity(self, cubic_surface, cubic_points):
        for left in (cubic_e1, cubic_e2):
            for right in (cubic_e1, cubic_e2):
                F = mf_tensor(left(4, 0, 1), right(4, 2, 3))
                product = chern_product(chern(left(), cubic_points), chern(right(), cubic_points), cubic_surface)
                assert chern(F, cubic_surface).raw == product.raw
                assert chern(F, cubic_surface).reduced == product.reduced

    @pytest.mark.parametrize("e", [2, 3])
    def test_random_rank_one_multiplicativity(self, registry, e):
        rng = random.Random(f"rank-one:{e}")
        for _ in range(4):
            F, G = random_rank_one(rng, e), random_rank_one(rng, e)
            M = registry.get_algebra(F.f.substitute(4, (0, 1)) + G.f.substitute(4, (2, 3)), 2)
            product = chern_product(
                chern(F, registry.get_algebra(F.f, 0)), chern(G, registry.get_algebra(G.f, 0)), M
            )
            tensor = chern(mf_tensor(F.embed(4, (0, 1)), G.embed(4, (2, 3))), M)
            assert tensor.raw == product.raw
            assert tensor.reduced == product.reduced

    def test_mixed_multiplicativity_on_forms(self):
        F = mf_tensor(cubic_e1(4, 0, 1), knorrer_pair(4, 2, 3))
        expected = chern_form(cubic_e1()).substitute(4, (0, 1)) * chern_form(knorrer_pair()).substitute(4, (2, 3))
        assert chern_form(F) == expected

    def test_interleaved_placement(self, cubic_surface, cubic_points):
        F = mf_tensor(cubic_e1(4, 0, 2), cubic_e1(4, 1, 3))
        c = chern(cubic_e1(), cubic_points)
        product = chern_product(c, c, cubic_surface, placement=((0, 2), (1, 3)))
        assert chern_form(F) == poly_parse("-9*(x2-x0)*(x3-x1)", 4)
        assert product.raw == chern_form(F)
        assert placement_sign((0, 2, 1, 3)) == -1

    def test_product_with_zero_class(self, cubic_surface, cubic_points):
        c = chern(cubic_e1(), cubic_points)
        zero = ChernClass(cubic_points, GradedPolynomial.zero(2), (), 1)
        assert chern_product(c, zero, cubic_surface).raw.is_zero()

    def test_shift_negates(self):
        F = mf_tensor(cubic_e1(4, 0, 1), cubic_e2(4, 2, 3))
        assert chern_form(shift(F)) == -chern_form(F)
        assert chern_form(shift(cubic_e1())) == -chern_form(cubic_e1())

    def test_direct_sum_is_additive(self):
        F = cubic_e1()
        G = cubic_e2()
        assert chern_form(direct_sum(F, G)) == chern_form(F) + chern_form(G)

    def test_linear_factor_relation(self, registry):
        M = registry.get_algebra("x0^3-x0*x1^2", 0)
        total = None
        for text in ("x0", "x0-x1", "x0+x1"):
            c = chern(linear_factor_pair(poly_parse(text, 2), M.f), M)
            total = c.reduced if total is None else tuple(a + b for a, b in zip(total, c.reduced))
        assert all(x == 0 for x in total)

    def test_q_rank_over_rationals(self, cubic_surface):
        c = chern(mf_tensor(cubic_e1(4, 0, 1), cubic_e1(4, 2, 3)), cubic_surface)
        doubled = ChernClass(cubic_surface, c.raw.scale(2), tuple(x * 2 for x in c.reduced), c.degree)
        rotated = ChernClass(cubic_surface, c.raw.scale(i), tuple(x * i for x in c.reduced), c.degree)
        assert q_rank([c, doubled]) == 1
        assert q_rank([c, rotated]) == 2

    def test_q_rank_mixed_hypersurfaces(self, cubic_surface, quartic_k3):
        c = chern(mf_tensor(cubic_e1(4, 0, 1), cubic_e1(4, 2, 3)), cubic_surface)
        other = ChernClass(quartic_k3, c.raw, c.reduced, c.degree)
        with pytest.raises(InputError):
            q_rank([c, other])


class TestPayloads:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "e2.json"
        dump_mf(cubic_e2(), path)
        loaded = load_mf(path)
        assert loaded.f == cubic_e2().f
        assert loaded.A == cubic_e2().A
        assert json.loads(path.read_text())["nvars"] == 2

    def test_infers_variables(self):
        payload = MatrixFactorizationInput(f="x0^2+x1^2", A=[["x0+i*x1"]], B=[["x0-i*x1"]])
        assert mf_from_payload(payload).nvars == 2

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{\"f\": 1}")
        with pytest.raises(InputError):
            load_mf(path)

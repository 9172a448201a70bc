from fractions import Fraction
from itertools import permutations

import pytest

from algebra.errors import InputError
from services.fermat_service import (
    FermatService, ShiodaCharacter, b_set, fermat_polynomial, hdg_dim_fermat, is_in_u, units, weight,
)
from services.hodge_service import hp0_dim

CUBIC_SURFACE_B = [
    (1, 1, 2, 2), (1, 2, 1, 2), (1, 2, 2, 1), (2, 1, 1, 2), (2, 1, 2, 1), (2, 2, 1, 1),
]


@pytest.mark.parametrize("m, entries, expected", [
    (3, (1, 1, 2, 2), 2),
    (2, (1, 1, 1, 1), 2),
    (6, (2, 2, 3, 5), 2),
    (5, (1, 1, 1, 2), 1),
])
def test_weight(m, entries, expected):
    assert weight(ShiodaCharacter(m, entries)) == Fraction(expected)


def test_character_must_sum_to_zero():
    with pytest.raises(InputError):
        ShiodaCharacter(3, (1, 1, 1, 1))


def test_units_and_u():
    assert units(6) == [1, 5]
    assert units(7) == [1, 2, 3, 4, 5, 6]
    assert is_in_u(ShiodaCharacter(3, (1, 2, 1, 2)))
    assert not is_in_u(ShiodaCharacter(3, (0, 1, 2, 0)))


def test_quadric():
    assert [a.entries for a in b_set(2, 2)] == [(1, 1, 1, 1)]
    assert hdg_dim_fermat(2, 2) == 1


def test_cubic_surface(cubic_surface):
    assert [a.entries for a in b_set(3, 2)] == CUBIC_SURFACE_B
    assert hdg_dim_fermat(3, 2) == 6 == hp0_dim(cubic_surface)


def test_sextic_contains_known_class():
    assert (2, 2, 3, 5) in [a.entries for a in b_set(6, 2)]


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6, 7])
def test_shortcut_agrees_with_brute_force(m):
    assert b_set(m, 2, symmetric_shortcut=True) == b_set(m, 2)


def test_b_set_members():
    members = b_set(6, 2)
    entries = {a.entries for a in members}
    for alpha in members:
        assert all(alpha.entries)
        assert weight(alpha) == 2
        assert alpha.scale(5).entries in entries
        assert all(p in entries for p in permutations(alpha.entries))


def test_hdg_bounded_by_hp0(registry):
    M = registry.get_algebra(fermat_polynomial(4, 4), 2)
    assert hdg_dim_fermat(4, 2) <= hp0_dim(M)


@pytest.mark.parametrize("m, n", [(3, 3), (3, 0), (1, 2)])
def test_invalid_arguments(m, n):
    with pytest.raises(InputError):
        b_set(m, n)


def test_report():
    service = FermatService()
    assert service.report(3, 2, count_only=True) == {"count": 6}
    report = service.report(2, 2)
    assert report == {"count": 1, "classes": [[1, 1, 1, 1]]}


def test_fermat_polynomial():
    assert fermat_polynomial(3, 2).to_text() == "x0^3+x1^3"

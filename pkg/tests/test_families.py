from fractions import Fraction

import pytest

from conftest import family
from latc.families import (
    FamilySpec,
    default_modulus,
    dual_lambda_n_membership,
    generate,
    in_congruence_lattice,
    lambda_n_relevant_closed_form,
    lambda_n_relevant_coords,
)
from latc.linalg import det, mat_vec, transpose
from latc.voronoi import relevant_vectors


def test_spec_validation():
    with pytest.raises(ValueError):
        FamilySpec("Xn", 3)
    with pytest.raises(ValueError):
        FamilySpec("A2", 3)
    with pytest.raises(ValueError):
        FamilySpec("LambdaNA", 4, 1)
    with pytest.raises(ValueError):
        FamilySpec("Zn", 3, 2)
    assert FamilySpec("LambdaNA", 5).a == 3
    assert default_modulus(6) == 3 and default_modulus(7) == 4


def test_determinants():
    assert det(family("Zn", 4).gram) == 1
    for n in (3, 4, 5, 6):
        assert det(family("Dn", n).gram) == 4
    for n, a in ((4, 2), (5, 3), (6, 3)):
        assert det(family("LambdaNA", n, a).gram) == a ** (2 * (n - 1))
    for n in (2, 3, 4):
        assert det(family("AnStar", n).gram) == Fraction(1, n + 1)
    assert det(family("A2", 2).gram) == 3


def test_lambda_basis_generates_congruence_lattice():
    for n, a in ((4, 2), (5, 3), (6, 3)):
        lat = family("LambdaNA", n, a)
        for col in transpose(lat.ambient_basis):
            assert in_congruence_lattice(n, a, col)
        # index in Z^n: a^(n-1) on both sides
        assert abs(det(lat.ambient_basis)) == a ** (n - 1)


def test_closed_form_small_shapes():
    vs = lambda_n_relevant_closed_form(5, 3)
    assert (3, 0, 0, 0, 0) in vs
    assert (2, -1, -1, -1, -1) in vs
    assert tuple([1] * 5) in vs
    assert tuple([-1] * 5) in vs


def test_closed_form_count():
    assert len(lambda_n_relevant_closed_form(5, 3)) == 62
    assert len(lambda_n_relevant_closed_form(4, 2)) == 24


def test_closed_form_hypothesis_validation():
    with pytest.raises(ValueError):
        lambda_n_relevant_closed_form(3, 2)
    with pytest.raises(ValueError):
        lambda_n_relevant_closed_form(5, 2)


@pytest.mark.parametrize("n,a", [(4, 2), (5, 3)])
def test_closed_form_matches_enumeration(n, a):
    lat = family("LambdaNA", n, a)
    vd = relevant_vectors(lat)
    assert sorted(vd.strict) == lambda_n_relevant_coords(lat, n, a)


def test_closed_form_matches_enumeration_n6():
    lat = family("LambdaNA", 6, 3)
    vd = relevant_vectors(lat)
    assert sorted(vd.strict) == lambda_n_relevant_coords(lat, 6, 3)


def test_dn_strict_shell_counts():
    # n=4 pinned to 24; larger n checked against the enumeration itself
    for n in (4, 5):
        lat = family("Dn", n)
        vd = relevant_vectors(lat)
        shell = {
            tuple(sorted(abs(int(x)) for x in mat_vec(lat.ambient_basis, v)))
            for v in vd.strict
        }
        assert shell == {tuple([0] * (n - 2) + [1, 1])}
        assert len(vd.strict) == 2 * n * (n - 1)


def test_dual_lambda_membership():
    assert dual_lambda_n_membership(5, 3, (1, 0, 0, 0, 0))
    y = tuple([Fraction(1, 3)] + [0] * 3 + [Fraction(-1, 3)])
    assert dual_lambda_n_membership(5, 3, y)
    assert not dual_lambda_n_membership(5, 3, (Fraction(1, 3), 0, 0, 0, 0))
    assert not dual_lambda_n_membership(5, 3, (Fraction(1, 2), 0, 0, 0, Fraction(1, 2)))


def test_a3star_facets():
    vd = relevant_vectors(family("AnStar", 3))
    assert len(vd.strict) == 14

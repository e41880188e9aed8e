"""Algebra checker, twist constructions, and derivation spaces."""
import random
from fractions import Fraction

import pytest
import sympy

from homlie3 import (Algebra3, InputError, Mat, check_algebra,
                     composition_twist, derivation_space, is_derivation,
                     yau_twist)
from homlie3.homlie import derivation_system, is_bracket_morphism

from conftest import (N4_DIAG, N4_NEG, corrupted_n4, graded_twist, n4,
                      random_nilpotent)

F = Fraction


@pytest.mark.parametrize("twist", [Mat.identity(4), N4_DIAG, N4_NEG])
def test_n4_passes_all_parts(twist):
    rep = check_algebra(n4(twist), regular=True)
    assert rep.passed
    for name in ("skew", "hom_jacobi", "multiplicative", "regular"):
        assert rep.part(name).passed, name


def test_corrupted_n4_fails_with_lex_first_witness():
    rep = check_algebra(corrupted_n4())
    assert not rep.passed
    w = rep.part("skew").witness
    assert w is not None
    # first basis triple in lexicographic order whose row disagrees with
    # the sign-completed canonical row
    assert w.at == (0, 2, 1, 3)


def test_abelian_passes():
    assert check_algebra(Algebra3.abelian(3)).passed


def test_non_multiplicative_twist_detected():
    rep = check_algebra(n4(Mat.diag([F(2), F(1), F(1), F(1)])))
    assert rep.part("skew").passed
    assert not rep.part("multiplicative").passed


def test_singular_twist_fails_regular_only():
    a = n4(Mat.diag([F(0)] * 4))
    rep = check_algebra(a, regular=True)
    assert rep.part("multiplicative").passed
    assert not rep.part("regular").passed
    assert check_algebra(a, regular=False).passed


def test_yau_and_composition_twist_randomized(rng):
    for trial in range(50):
        gens = rng.choice([3, 3, 4])
        cdim = rng.choice([1, 2])
        lam = rng.choice([1, -1, 2, F(1, 2)])
        a = random_nilpotent(rng, gens, cdim, lam)
        assert check_algebra(a).passed
        mu = rng.choice([1, -1, 2, 3, F(1, 3)])
        phi = graded_twist(gens, cdim, mu)
        assert is_bracket_morphism(a, phi) is None
        # yau_twist starts from an untwisted algebra
        base = random_nilpotent(rng, gens, cdim, 1)
        assert check_algebra(yau_twist(base, phi)).passed, trial
        assert check_algebra(composition_twist(a, phi)).passed, trial


def test_yau_twist_rejects_non_morphism():
    bad = Mat.diag([F(2), F(1), F(1), F(1)])
    with pytest.raises(Exception):
        yau_twist(n4(), bad)


def test_yau_twist_of_n4_by_diag_morphism():
    phi = Mat.diag([F(2), F(3), F(5), F(30)])
    t = yau_twist(n4(), phi)
    assert t.twist == phi
    assert t.bracket.get(0, 1, 2, 3) == F(30)
    assert check_algebra(t).passed


def test_derivation_space_dimension_matches_independent_oracle():
    a = n4()
    basis = derivation_space(a)
    # independent route: sympy nullspace of the constraint system
    sys_m = derivation_system(a)
    sm = sympy.Matrix([[sympy.Rational(v) for v in row]
                       for row in sys_m.entries])
    assert len(basis) == 16 - sm.rank()
    assert len(basis) == 12
    for d in basis:
        assert is_derivation(a, d) is None


def test_derivation_space_respects_twist_commutation():
    basis = derivation_space(n4(N4_DIAG))
    for d in basis:
        assert d @ N4_DIAG == N4_DIAG @ d


def test_is_derivation_witnesses_failure():
    d = Mat.diag([F(1), F(0), F(0), F(0)])
    w = is_derivation(n4(), d)
    assert w is not None
    with pytest.raises(InputError):
        is_derivation(n4(), Mat.identity(3))


def test_random_derivations_leibniz(rng):
    for _ in range(10):
        a = random_nilpotent(rng, 3, 1, 1)
        for d in derivation_space(a):
            assert is_derivation(a, d) is None

"""Symplectic structures, metrics, derivation round-trips, phase spaces,
and the nilpotent-extension bundles."""
from fractions import Fraction

import pytest

from homlie3 import (Algebra3, BilForm, Mat, PreconditionError,
                     canonical_phase_form, check_algebra, check_metric,
                     check_phase_space, check_prelie, check_symplectic,
                     compatible_prelie_from_symplectic,
                     derivation_from_symplectic, nilpotent_extension,
                     phase_space_from_prelie, prelie_from_phase_space,
                     subadjacent, symplectic_from_derivation)
from homlie3.symplectic import is_metric_derivation
from homlie3.prelie import subadjacent_tensor

from conftest import N4_NEG, n4, n4_omega, n4_prelie, random_prelie

F = Fraction


def omega_form():
    return BilForm(4, n4_omega(), "skew")


def test_n4_symplectic_form_passes():
    r = check_symplectic(n4(), omega_form())
    assert r.passed
    for name in ("skew", "nondegenerate", "twist_compatible", "cocycle"):
        assert r.part(name).passed, name


def test_every_skew_form_on_n4_satisfies_cocycle():
    # n4 has a single bracket row, and in each four-term instance the two
    # surviving terms pair the same indices with opposite signs, so every
    # skew form is a cocycle (nondegeneracy is what singles out omega)
    import itertools
    for trial, vals in enumerate(itertools.product((F(0), F(1), F(-2)),
                                                   repeat=6)):
        m = [[F(0)] * 4 for _ in range(4)]
        for (i, j), v in zip(itertools.combinations(range(4), 2), vals):
            m[i][j] = v
            m[j][i] = -v
        r = check_symplectic(n4(), BilForm(4, Mat(m), "skew"))
        assert r.part("cocycle").passed, trial


def test_wrong_pairing_fails_cocycle():
    # dim 6, [e1,e2,e3] = e5 and [e1,e2,e4] = e6: the standard pairing
    # e_i <-> e_{i+3} is skew, nondegenerate, twist-compatible, yet fails
    # the four-term identity at (e1,e2,e3,e4)
    from conftest import skew_tensor
    c = skew_tensor(6, {(0, 1, 2): {4: 1}, (0, 1, 3): {5: 1}})
    a = Algebra3(6, c, Mat.identity(6))
    assert check_algebra(a).passed
    m = [[F(0)] * 6 for _ in range(6)]
    for i in range(3):
        m[i][i + 3] = F(1)
        m[i + 3][i] = F(-1)
    r = check_symplectic(a, BilForm(6, Mat(m), "skew"))
    assert not r.passed
    for name in ("skew", "nondegenerate", "twist_compatible"):
        assert r.part(name).passed, name
    assert not r.part("cocycle").passed
    w = r.part("cocycle").witness
    assert w is not None
    assert w.at == (0, 1, 2, 3)


def test_twist_compatibility_required():
    # w o (a x a) = w fails for the scaling twist
    from conftest import N4_DIAG
    r = check_symplectic(n4(N4_DIAG), omega_form())
    assert not r.part("twist_compatible").passed
    # but holds for -id (degree two)
    assert check_symplectic(n4(N4_NEG), omega_form()).part(
        "twist_compatible").passed


def test_degenerate_form_fails():
    r = check_symplectic(n4(), BilForm(4, Mat.zeros(4, 4), "skew"))
    assert not r.part("nondegenerate").passed


def test_metric_identity_has_no_twist():
    # ([x,y,z],w) + (z,[x,y,w]) = 0 with no twist application: for N4 the
    # hyperbolic form pairing e4 with e1 fails at ([e1,e2,e3],e1)
    m = Mat([[F(0), F(0), F(0), F(1)], [F(0), F(1), F(0), F(0)],
             [F(0), F(0), F(1), F(0)], [F(1), F(0), F(0), F(0)]])
    r = check_metric(n4(), BilForm(4, m, "symmetric"))
    assert not r.part("invariance").passed


def test_abelian_metric_passes():
    a = Algebra3.abelian(4)
    m = Mat.identity(4)
    assert check_metric(a, BilForm(4, m, "symmetric")).passed


def test_nilpotent_extension_bundles():
    # the full construction for steps 2, 3, 4: every artifact re-checked
    for steps in (2, 3, 4):
        bundle, rep = nilpotent_extension(n4(), steps)
        assert rep.passed, steps
        for name in ("extension_algebra", "derivation", "double_algebra",
                     "metric", "double_derivation", "symplectic"):
            assert rep.part(name).passed, (steps, name)
        assert bundle.extension.dim == 4 * (steps - 1)
        assert bundle.double.dim == 8 * (steps - 1)


@pytest.mark.parametrize("steps", [2, 3, 4])
def test_thm_5_3_roundtrip_exact_identity(steps):
    bundle, rep = nilpotent_extension(n4(), steps)
    assert rep.passed
    a, B, D = bundle.double, bundle.metric, bundle.double_derivation
    assert is_metric_derivation(a, B, D).passed
    omega, r1 = symplectic_from_derivation(a, B, D)
    assert r1.passed
    assert omega.matrix == bundle.omega.matrix
    D2, r2 = derivation_from_symplectic(a, B, omega)
    assert r2.passed
    assert D2 == D  # exact identity, both directions
    omega2, _ = symplectic_from_derivation(a, B, D2)
    assert omega2.matrix == omega.matrix


def test_symplectic_from_derivation_guards_non_skew():
    a = Algebra3.abelian(2)
    B = BilForm(2, Mat.identity(2), "symmetric")
    D = Mat([[F(1), F(0)], [F(0), F(2)]])  # symmetric w.r.t. B, not skew
    with pytest.raises(PreconditionError):
        symplectic_from_derivation(a, B, D)


def test_compatible_prelie_from_symplectic_roundtrip():
    a = n4()
    p, rep = compatible_prelie_from_symplectic(a, omega_form())
    assert rep.passed
    assert rep.part("prelie").passed
    assert rep.part("compatible").passed
    assert subadjacent_tensor(p.product) == a.bracket
    assert check_prelie(p).passed


def test_canonical_phase_form_shape():
    f = canonical_phase_form(2)
    assert f.kind == "skew"
    assert f.matrix.entries[0][2] == F(-1)
    assert f.matrix.entries[2][0] == F(1)


def test_phase_space_from_n4_prelie():
    p = n4_prelie()
    total, rep = phase_space_from_prelie(p)
    assert rep.passed
    assert total.dim == 8
    ps = check_phase_space(subadjacent(p), total)
    assert ps.passed
    for name in ("algebra", "twist_split", "subalgebras", "base_bracket",
                 "symplectic"):
        assert ps.part(name).passed, name


def test_phase_space_randomized_suite(rng):
    # 20 randomized valid pre-Lie algebras: phase space always passes
    for k in range(20):
        p = random_prelie(rng, rng.choice([3, 4]), rng.choice([1, 2]),
                          rng.choice([1, -1]))
        total, rep = phase_space_from_prelie(p)
        assert rep.passed, k
        assert check_phase_space(subadjacent(p), total).passed, k
        assert total.dim == 2 * p.dim


def test_prelie_recovered_from_phase_space():
    p = n4_prelie()
    total, _ = phase_space_from_prelie(p)
    q, rep = prelie_from_phase_space(subadjacent(p), total)
    assert rep.passed
    assert q is not None
    assert q.product == p.product


def test_phase_space_rejects_mismatched_total():
    base = n4()
    with pytest.raises(Exception):
        check_phase_space(base, n4())

import functools
import itertools

import numpy as np
import pytest

from mtckit import linalg
from mtckit.coend import (
    Module,
    build_coend,
    center_dimension_check,
    character_product_check,
    characters,
    integral_of_coend,
    invariant_subspace,
    pairing_omega,
    regular_module,
    restrict,
    sl2z_data,
    tensor_module,
    trivial_module,
)
from mtckit.errors import Degenerate, InvalidModule
from mtckit.hopf import BUILTIN_HOPF, builtin_hopf, exact_array, factorizable, first_difference, proportional, simplify
from mtckit.modular_data import derive_scalars, gen_pointed

RIBBON = sorted(name for name in BUILTIN_HOPF if builtin_hopf(name)[1] is not None)


@functools.cache
def coend(name):
    h, qt = builtin_hopf(name)
    return build_coend(h, qt)


def rank(vectors):
    return linalg.rank([list(v) for v in vectors])


@pytest.mark.parametrize("name", RIBBON)
def test_all_checks_pass(name):
    ce = coend(name)
    assert ce.checks.ok, [c.name for c in ce.checks.failures()]
    names = {c.name for c in ce.checks.checks}
    for required in ("associativity", "coassociativity", "Delta_multiplicative", "antipode_left", "antipode_right"):
        assert required in names
    assert any(n.startswith("equivariant_") for n in names)


def test_z1_is_trivial():
    ce = coend("Z1")
    assert ce.dim == 1
    assert ce.m_H.tolist() == [[[1]]]
    assert ce.Delta_H.tolist() == [[[1]]]
    assert list(ce.eps_H) == [1] and list(ce.eta_H) == [1]
    assert list(integral_of_coend(ce)) == [1]


def test_coalgebra_does_not_see_the_braiding():
    builds = [coend(n) for n in ("Z3_trivial", "Z3_form1", "Z3_form2")]
    for ce in builds[1:]:
        assert np.array_equal(ce.Delta_H, builds[0].Delta_H)
        assert np.array_equal(ce.eps_H, builds[0].eps_H)
    s0, s1 = coend("sweedler"), coend("sweedler_alpha1")
    assert np.array_equal(s0.Delta_H, s1.Delta_H) and np.array_equal(s0.eps_H, s1.eps_H)
    # the product does depend on R once the coadjoint action is nontrivial
    assert first_difference(s0.m_H, s1.m_H) is not None


@pytest.mark.parametrize("name", RIBBON)
def test_omega_rank_matches_factorizable(name):
    ce = coend(name)
    omega, r, symmetric = pairing_omega(ce)
    assert symmetric
    is_fact, fr = factorizable(*builtin_hopf(name))
    assert (r == ce.dim) == is_fact
    assert r == fr


def test_trivial_r_is_degenerate():
    for name in ("Z2_trivial", "Z3_trivial", "Z4_trivial"):
        _, r, _ = pairing_omega(coend(name))
        assert r == 1
        with pytest.raises(Degenerate):
            sl2z_data(coend(name))


@pytest.mark.parametrize("name", ["Z3_form1", "Z5_form1", "Z2xZ2_double"])
def test_integral_is_sum_of_characters(name):
    # all simples are 1-dimensional, so the weights are all 1
    ce = coend(name)
    total = sum(characters(ce, Module(r)).chi for r in ce.h.simples)
    assert proportional(integral_of_coend(ce), simplify(total))
    assert proportional(integral_of_coend(ce, "right"), integral_of_coend(ce))


def test_sweedler_integral_detects_non_semisimplicity():
    ce = coend("sweedler")
    mu = integral_of_coend(ce)
    assert ce.counit(mu) == 0
    for i in range(4):
        lhs = ce.mul(np.eye(4, dtype=object)[i], mu)
        assert np.array_equal(simplify(lhs), simplify(ce.eps_H[i] * mu))


def test_trivial_character_is_the_unit():
    for name in ("Z3_form1", "sweedler", "Z2xZ2_double"):
        ce = coend(name)
        chi = characters(ce, trivial_module(ce.h)).chi
        assert np.array_equal(chi, ce.eta_H)


@pytest.mark.parametrize("name", ["Z2_symmetric", "Z3_form1", "Z4_form1", "Z5_form1", "Z2xZ2_double"])
def test_character_ring_law_and_basis(name):
    ce = coend(name)
    simples = [Module(r) for r in ce.h.simples]
    for U, V in itertools.product(simples, repeat=2):
        ok, bad = character_product_check(ce, U, V)
        assert ok, bad
    chis = [characters(ce, U).chi for U in simples]
    assert rank(chis) == len(chis)
    inv = invariant_subspace(ce)
    assert inv.shape[0] == len(chis)
    # every character lies in Hom(1, H), so together they span it
    assert rank(list(inv) + chis) == len(chis)


def test_sweedler_characters():
    ce = coend("sweedler")
    h = ce.h
    plus, minus = (Module(r) for r in h.simples)
    chi_p, chi_m = characters(ce, plus).chi, characters(ce, minus).chi
    assert rank([chi_p, chi_m]) == 2
    # the regular module has composition factors +, +, -, -
    reg = characters(ce, regular_module(h)).chi
    assert np.array_equal(reg, simplify(2 * chi_p + 2 * chi_m))
    # Hom(1, H) is the space of functionals with phi(ab) = phi(S^2(b) a)
    A2 = h.antipode.dot(h.antipode)
    rows = [
        [h.m[x, y, k] - sum(A2[y, j] * h.m[j, x, k] for j in range(4)) for k in range(4)]
        for x in range(4)
        for y in range(4)
    ]
    assert invariant_subspace(ce).shape[0] == 4 - linalg.rank(rows) == 2
    for U, V in itertools.product([plus, minus], repeat=2):
        assert character_product_check(ce, U, V)[0]
    assert character_product_check(ce, plus, regular_module(h))[0]


def test_character_additivity():
    ce = coend("Z3_form1")
    h = ce.h
    U = Module(h.simples[1])
    V = Module(h.simples[2])
    rho = np.zeros((3, 2, 2), dtype=object)
    rho[:, 0, 0] = U.rho[:, 0, 0]
    rho[:, 1, 1] = V.rho[:, 0, 0]
    direct = characters(ce, Module(rho)).chi
    assert np.array_equal(direct, simplify(characters(ce, U).chi + characters(ce, V).chi))


def test_invalid_module():
    ce = coend("Z3_form1")
    bad = np.array([[[1]], [[2]], [[1]]], dtype=object)
    with pytest.raises(InvalidModule):
        characters(ce, bad)
    with pytest.raises(InvalidModule):
        characters(ce, np.ones((2, 1, 1), dtype=object))


@pytest.mark.parametrize("name", RIBBON)
def test_center_dimension(name):
    dc, dh = center_dimension_check(coend(name))
    assert dc == dh
    h = coend(name).h
    if name.startswith("Z"):
        assert dc == h.dim
    else:
        # only scalars commute with both g and x
        assert dc == 1


def test_sl2z_relations_on_factorizable_builtins():
    for name in RIBBON:
        ce = coend(name)
        if pairing_omega(ce)[1] != ce.dim:
            continue
        sd = sl2z_data(ce)
        S, T = sd.S, sd.T
        S2 = simplify(S.dot(S))
        assert np.array_equal(simplify(S2.dot(S2)), simplify(sd.kappa * np.eye(ce.dim, dtype=object)))
        ST = S.dot(T)
        assert np.array_equal(simplify(ST.dot(ST).dot(ST)), simplify(sd.xi * S2))


def test_z1_sl2z():
    sd = sl2z_data(coend("Z1"))
    assert sd.S.tolist() == [[1]] and sd.T.tolist() == [[1]]
    assert sd.kappa == 1 and sd.xi == 1


def test_z3_matches_pointed_modular_data():
    ce = coend("Z3_form1")
    sd = sl2z_data(ce)
    basis = exact_array([characters(ce, Module(r)).chi for r in ce.h.simples])
    S = restrict(sd.S, basis)
    T = restrict(sd.T, basis)
    md = gen_pointed(3, (0, 2, 2))
    target_S = exact_array(md.S)
    target_T = exact_array(np.diag(np.array(md.T, dtype=object)))
    assert proportional(S, target_S)
    assert proportional(T, target_T)
    sc = derive_scalars(md)
    # kappa = 1 / D^4 and xi = p_plus / D^2 for this normalisation of S
    assert sd.kappa * sc.D2 * sc.D2 == 1
    assert sd.xi * sc.D2 == sc.p_plus
    assert sd.xi_squared == sc.p_plus * sc.p_plus * (sc.D2 * sc.D2).inverse()
    assert sd.xi_squared * sd.xi_squared == sd.kappa * sc.p_plus * sc.p_plus * (sc.p_minus * sc.p_minus).inverse()


def test_projective_action_on_invariants():
    ce = coend("Z2xZ2_double")
    sd = sl2z_data(ce)
    inv = invariant_subspace(ce)
    S, T = restrict(sd.S, inv), restrict(sd.T, inv)
    ST = S.dot(T)
    assert np.array_equal(simplify(ST.dot(ST).dot(ST)), simplify(sd.xi * S.dot(S)))


def test_sweedler_has_no_s_matrix():
    ce = coend("sweedler")
    assert ce.S_H is None
    with pytest.raises(Degenerate):
        sl2z_data(ce)


def test_tensor_module_of_regular_is_a_module():
    from mtckit.coend import check_module

    h, _ = builtin_hopf("sweedler")
    check_module(h, tensor_module(h, regular_module(h), trivial_module(h)))


def test_coend_json_is_stable():
    a = coend("Z3_form1").to_json()
    h, qt = builtin_hopf("Z3_form1")
    b = build_coend(h, qt).to_json()
    assert a == b
    assert a["dim"] == 3 and "S" in a and "mu" in a

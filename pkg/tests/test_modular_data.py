import math

import pytest

from mtckit import linalg
from mtckit.cyclotomic import to_complex, zeta
from mtckit.errors import DegenerateForm, RelationFailure, ShapeError, UnknownName
from mtckit.modular_data import (
    NAMED,
    ModularData,
    derive_scalars,
    gen_named,
    gen_pointed,
    gen_sl2,
    pointed_forms,
    product,
    validate,
)

from oracles import sl2_numeric


def value(x, digits=15) -> complex:
    return complex(to_complex(x, digits).mid)


def test_sl2_level1_validates():
    rep = validate(gen_sl2(1))
    assert rep.ok, rep.failures()


def test_duplicated_rows_fail_det():
    md = gen_sl2(2)
    S = [list(r) for r in md.S]
    S[2] = list(S[0])
    S[0][2] = S[2][0]
    bad = ModularData(md.labels, S, md.T)
    rep = validate(bad)
    assert not rep["det_S_nonzero"].passed


def test_ising_with_zero_twist_fails_root_of_unity():
    md = gen_named("ising")
    bad = ModularData(md.labels, md.S, (md.T[0], 0, md.T[2]))
    assert not validate(bad)["theta_roots_of_unity"].passed


def test_ragged_input():
    with pytest.raises(ShapeError):
        ModularData(("a", "b"), ((1, 1), (1,)), (1, 1))
    with pytest.raises(ShapeError):
        ModularData.from_json({"S": [[1]]})


def test_semion_scalars():
    md = gen_pointed(2, (0, 1))
    sc = derive_scalars(md)
    assert sc.D2 == 2
    assert sc.p_plus == 1 + zeta(4)
    assert md.S == ((1, 1), (1, -1))
    assert gen_named("semion") == md


def test_trivial_scalars():
    sc = derive_scalars(gen_sl2(0))
    assert sc.D2 == 1 and sc.p_plus == 1 and sc.p_minus == 1
    assert sc.C == ((1,),)
    assert gen_pointed(1, (0,)).rank == 1


@pytest.mark.parametrize("k", range(0, 11))
def test_sl2_against_sine_formula(k):
    md = gen_sl2(k)
    S, T = sl2_numeric(k)
    assert md.rank == k + 1
    for a in range(k + 1):
        assert abs(value(md.T[a]) - T[a]) < 1e-12
        for b in range(k + 1):
            assert abs(value(md.S[a][b]) - S[a][b]) < 1e-10
    # dims positive in the standard embedding
    assert all(to_complex(d, 20).real_lower > 0 for d in md.dims)
    D2 = derive_scalars(md).D2
    h = k + 2
    assert abs(value(D2) - h / (2 * math.sin(math.pi / h) ** 2)) < 1e-9


def test_sl2_examples():
    md = gen_sl2(1)
    assert abs(value(md.S[1][1]) + 1) < 1e-12
    md = gen_sl2(2)
    assert abs(value(md.dims[1]) - math.sqrt(2)) < 1e-12
    assert md.dims[1] * md.dims[1] == 2


def test_degenerate_pointed():
    with pytest.raises(DegenerateForm):
        gen_pointed(2, (0, 0))


def test_unknown_name():
    with pytest.raises(UnknownName):
        gen_named("nonexistent")


def test_fibonacci_and_ising():
    fib = gen_named("fibonacci")
    d = fib.dims[1]
    assert d * d == d + 1
    assert abs(value(d) - (1 + math.sqrt(5)) / 2) < 1e-12
    ising = gen_named("ising")
    assert ising.dims[1] * ising.dims[1] == 2
    assert ising.rank == 3


def test_relation_failure_names_identity():
    md = gen_sl2(3)
    # a wrong but root-of-unity twist breaks (ST)^3 = p_plus S^2
    bad = ModularData(md.labels, md.S, (md.T[0], md.T[1], md.T[2], md.T[3] * zeta(3)))
    with pytest.raises(RelationFailure) as info:
        derive_scalars(bad)
    assert info.value.witness["relation"] in ("C*T=T*C", "(S*T)^3=p_plus*S^2")


def test_product():
    sem = gen_named("semion")
    sq = product(sem, sem)
    assert sq.rank == 4
    assert derive_scalars(sq).D2 == 4
    fib = gen_named("fibonacci")
    ff = product(fib, fib)
    assert linalg.det(ff.S_matrix()) != 0
    triv = product(fib, gen_sl2(0))
    assert triv.S == fib.S and triv.T == fib.T
    a, b = derive_scalars(fib), derive_scalars(sem)
    ab = derive_scalars(product(fib, sem))
    assert ab.D2 == a.D2 * b.D2
    assert ab.p_plus == a.p_plus * b.p_plus
    assert ab.p_minus == a.p_minus * b.p_minus


def test_json_round_trip_is_bit_exact():
    for md in [gen_sl2(5), gen_named("ising"), gen_pointed(5, pointed_forms(5)[0])]:
        text = md.dumps()
        back = ModularData.loads(text)
        assert back == md
        assert back.dumps() == text


def test_pointed_forms_all_validate():
    for n in range(1, 9):
        forms = pointed_forms(n)
        assert forms
        for q in forms:
            md = gen_pointed(n, q)
            assert validate(md).ok
            # S_ab = theta_(a+b) / (theta_a theta_b) up to the sign of a
            for a in range(n):
                for b in range(n):
                    beta = md.T[(a + b) % n] * (md.T[a] * md.T[b]).inverse()
                    assert md.S[a][b] * beta == 1


def test_named_zoo_validates():
    for name in NAMED:
        assert validate(gen_named(name)).ok

import itertools

import mpmath
import pytest

from mtckit.cyclotomic import to_complex, zeta
from mtckit.errors import NegativeCoefficient
from mtckit.fusion import ExpMultiset, characters, exp_of, verlinde
from mtckit.modular_data import ModularData, gen_named, gen_pointed, gen_sl2, pointed_forms, validate

from oracles import clebsch_gordan


@pytest.mark.parametrize("k", range(0, 9))
def test_sl2_matches_clebsch_gordan(k):
    N = verlinde(gen_sl2(k))
    assert [[list(r) for r in m] for m in N.N] == clebsch_gordan(k)
    assert N.check(gen_sl2(k).dims).ok


def test_fibonacci_rule_against_50_digit_sum():
    md = gen_named("fibonacci")
    with mpmath.workdps(50):
        S = [[to_complex(x, 45).mid for x in row] for row in md.S]
        Sinv = mpmath.inverse(mpmath.matrix(S))
        n11 = [
            sum(S[1][m] * S[1][m] * Sinv[m, k] / S[0][m] for m in range(2))
            for k in range(2)
        ]
        approx = [int(mpmath.nint(mpmath.re(x))) for x in n11]
        assert all(abs(x - a) < mpmath.mpf(10) ** -40 for x, a in zip(n11, approx))
    N = verlinde(md)
    assert approx == [1, 1]
    assert [N[1, 1, 0], N[1, 1, 1]] == approx


def test_trivial():
    assert verlinde(gen_sl2(0)).N == (((1,),),)


def test_pointed_gives_group_ring():
    for n in range(1, 9):
        for q in pointed_forms(n):
            N = verlinde(gen_pointed(n, q))
            for a, b, c in itertools.product(range(n), repeat=3):
                assert N[a, b, c] == int(c == (a + b) % n)


def test_non_categorical_input_rejected():
    # passes every modular relation, but N_11^1 = -1
    d = zeta(5) + zeta(5, 4)
    md = ModularData(("0", "1"), ((1, d), (d, -1)), (1, zeta(5)))
    assert validate(md).ok
    with pytest.raises(NegativeCoefficient) as info:
        verlinde(md)
    assert info.value.witness == (1, 1, 1)


def test_characters():
    md = gen_sl2(4)
    lam = characters(md)
    assert [lam[i][0] for i in range(md.rank)] == list(md.dims)
    N = verlinde(md)
    n = md.rank
    for i, j, m in itertools.product(range(n), repeat=3):
        rhs = sum((N[i, j, k] * lam[k][m] for k in range(n)), 0)
        assert lam[i][m] * lam[j][m] == rhs
    cols = {tuple(lam[i][m] for i in range(n)) for m in range(n)}
    assert len(cols) == n
    fib = characters(gen_named("fibonacci"))
    phi = (1 + 5 ** 0.5) / 2
    assert abs(complex(to_complex(fib[1][1]).mid) - (1 - phi)) < 1e-12
    assert characters(gen_sl2(0)) == [[1]]


def test_exp_of():
    exp, tr, tr2 = exp_of([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert exp == ExpMultiset({0: 1, 1: 1, 2: 1})
    assert (tr, tr2) == (3, 3)
    exp, tr, tr2 = exp_of([[0, 0], [0, 0]])
    assert exp.total == 0 and tr == 0 and tr2 == 0
    Z = [[1, 0, 1], [0, 2, 0], [1, 0, 1]]
    exp, tr, tr2 = exp_of(Z)
    assert tr == sum(Z[i][i] for i in range(3))
    assert tr2 == sum(x * x for r in Z for x in r)


def test_fusion_json():
    obj = verlinde(gen_named("fibonacci")).to_json()
    assert obj == {"N": {"0,0,0": 1, "0,1,1": 1, "1,0,1": 1, "1,1,0": 1, "1,1,1": 1}}

"""Modular data (S, T) of semisimple modular tensor categories.

S is the unnormalised matrix of double-braiding traces, so ``S[0][i]`` is the
quantum dimension of the i-th simple object and ``S[0][0] == 1``.  T is the
list of twist eigenvalues with ``T[0] == 1``.  Because the normalised
``S / D`` usually lives outside the cyclotomic field, all SL(2, Z) relations are
checked in the square-root free form::

    S^2 = D^2 C,   (S T)^3 = p_plus S^2,   p_plus p_minus = D^2
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Sequence

from . import linalg
from .cyclotomic import Cyclotomic, as_cyclotomic, zeta
from .errors import (
    DegenerateForm,
    InvalidForm,
    RelationFailure,
    ShapeError,
    UnknownName,
    ValidationReport,
)

__all__ = [
    "ModularData",
    "DerivedScalars",
    "validate",
    "derive_scalars",
    "gen_sl2",
    "gen_pointed",
    "gen_named",
    "pointed_forms",
    "product",
    "quantum_integer",
    "NAMED",
]


@dataclass(frozen=True)
class ModularData:
    labels: tuple[str, ...]
    S: tuple[tuple[Cyclotomic, ...], ...]
    T: tuple[Cyclotomic, ...]

    def __post_init__(self):
        n = len(self.labels)
        if len(self.S) != n or any(len(row) != n for row in self.S) or len(self.T) != n:
            raise ShapeError(
                f"inconsistent shapes: {n} labels, S rows {[len(r) for r in self.S]}, {len(self.T)} twists"
            )
        if n == 0:
            raise ShapeError("rank must be positive")
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        object.__setattr__(self, "S", tuple(tuple(as_cyclotomic(x) for x in row) for row in self.S))
        object.__setattr__(self, "T", tuple(as_cyclotomic(x) for x in self.T))

    @property
    def rank(self) -> int:
        return len(self.labels)

    unit_index = 0

    @property
    def dims(self) -> tuple[Cyclotomic, ...]:
        return self.S[0]

    def S_matrix(self) -> list[list[Cyclotomic]]:
        return [list(r) for r in self.S]

    def T_matrix(self) -> list[list]:
        return linalg.diag(list(self.T))

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "labels": list(self.labels),
            "S": [[x.to_json() for x in row] for row in self.S],
            "T": [x.to_json() for x in self.T],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_json(cls, obj: dict) -> ModularData:
        try:
            S = obj["S"]
            T = obj["T"]
        except (KeyError, TypeError) as exc:
            raise ShapeError(f"missing field {exc}") from None
        if not isinstance(S, list) or any(not isinstance(r, list) for r in S):
            raise ShapeError("S must be a list of rows")
        labels = obj.get("labels") or [str(i) for i in range(len(S))]
        if "rank" in obj and obj["rank"] != len(labels):
            raise ShapeError(f"rank {obj['rank']} does not match {len(labels)} labels")
        return cls(
            tuple(labels),
            tuple(tuple(Cyclotomic.from_json(x) for x in row) for row in S),
            tuple(Cyclotomic.from_json(x) for x in T),
        )

    @classmethod
    def loads(cls, text: str) -> ModularData:
        return cls.from_json(json.loads(text))


@dataclass(frozen=True)
class DerivedScalars:
    D2: Cyclotomic
    p_plus: Cyclotomic
    p_minus: Cyclotomic
    C: tuple[tuple[int, ...], ...]

    @property
    def dual(self) -> tuple[int, ...]:
        return tuple(row.index(1) for row in self.C)


def _is_root_of_unity(x: Cyclotomic) -> bool:
    if x.is_zero():
        return False
    m = x.order if x.order % 2 == 0 else 2 * x.order
    return x**m == 1


def _permutation_or_none(M) -> tuple[tuple[int, ...], ...] | None:
    n = len(M)
    out = []
    for row in M:
        if not all(x == 0 or x == 1 for x in row):
            return None
        ones = [j for j, x in enumerate(row) if x == 1]
        if len(ones) != 1:
            return None
        out.append(tuple(1 if j == ones[0] else 0 for j in range(n)))
    cols = [sum(r[j] for r in out) for j in range(n)]
    if any(c != 1 for c in cols):
        return None
    return tuple(out)


def _relations(md: ModularData, report: ValidationReport) -> DerivedScalars | None:
    S = md.S_matrix()
    T = list(md.T)
    dims = md.dims
    D2 = sum((d * d for d in dims), Cyclotomic.rational(0))
    if D2.is_zero():
        report.add("D2_nonzero", False, "global dimension vanishes")
        return None
    report.add("D2_nonzero", True)
    p_plus = sum((t * d * d for t, d in zip(T, dims)), Cyclotomic.rational(0))
    p_minus = sum((t.inverse() * d * d for t, d in zip(T, dims)), Cyclotomic.rational(0))
    S2 = linalg.matmul(S, S)
    Cm = linalg.scale(D2.inverse(), S2)
    C = _permutation_or_none(Cm)
    if not report.add("S2=D2*C", C is not None, "S^2 / D^2 is not a permutation matrix"):
        return None
    n = md.rank
    CC = linalg.matmul(C, C)
    report.add("C^2=1", linalg.mat_equal(CC, linalg.identity(n)), "charge conjugation is not an involution")
    report.add("C_0i=delta(i,0)", C[0][0] == 1, "the unit is not self-dual")
    dual = [row.index(1) for row in C]
    bad_t = next((i for i in range(n) if T[i] != T[dual[i]]), None)
    report.add("C*T=T*C", bad_t is None, {"index": bad_t})
    ST = [[S[i][j] * T[j] for j in range(n)] for i in range(n)]
    ST3 = linalg.matmul(linalg.matmul(ST, ST), ST)
    rhs = linalg.scale(p_plus, S2)
    bad = next(((i, j) for i in range(n) for j in range(n) if ST3[i][j] != rhs[i][j]), None)
    report.add("(S*T)^3=p_plus*S^2", bad is None, {"entry": bad})
    report.add("p_plus*p_minus=D2", p_plus * p_minus == D2, {"p_plus": str(p_plus), "p_minus": str(p_minus)})
    return DerivedScalars(D2, p_plus, p_minus, C)


def validate(md: ModularData) -> ValidationReport:
    """Check every defining axiom; never raises on a mathematically bad input."""
    report = ValidationReport()
    n = md.rank
    S = md.S
    bad = next(((i, j) for i in range(n) for j in range(i + 1, n) if S[i][j] != S[j][i]), None)
    report.add("S_symmetric", bad is None, {"entry": bad})
    report.add("S_00=1", S[0][0] == 1, str(S[0][0]))
    zero = next((i for i in range(n) if S[0][i].is_zero()), None)
    report.add("dims_nonzero", zero is None, {"index": zero})
    d = linalg.det(md.S_matrix())
    report.add("det_S_nonzero", bool(d), "S is singular")
    report.add("theta_0=1", md.T[0] == 1, str(md.T[0]))
    bad_t = next((i for i in range(n) if not _is_root_of_unity(md.T[i])), None)
    report.add("theta_roots_of_unity", bad_t is None, {"index": bad_t})
    if report.ok:
        _relations(md, report)
    return report


def derive_scalars(md: ModularData) -> DerivedScalars:
    """D^2, the Gauss sums p_plus/p_minus and charge conjugation, with the relations verified."""
    report = ValidationReport()
    scalars = _relations(md, report)
    bad = report.failures()
    if bad:
        raise RelationFailure(f"relation '{bad[0].name}' violated", {"relation": bad[0].name, "witness": bad[0].witness})
    return scalars


# generators ------------------------------------------------------------------


def quantum_integer(n: int, q: Cyclotomic) -> Cyclotomic:
    """[n]_q = (q^n - q^-n) / (q - q^-1), summed as q^(n-1) + q^(n-3) + ... + q^(1-n)."""
    if n == 0:
        return Cyclotomic.rational(0)
    sign = 1
    if n < 0:
        n, sign = -n, -1
    acc = Cyclotomic.rational(0)
    for j in range(n):
        acc = acc + q ** (n - 1 - 2 * j)
    return acc * sign


def gen_sl2(k: int) -> ModularData:
    """Affine sl(2) at level k: rank k+1, q = exp(i pi / (k+2))."""
    if k < 0:
        raise ValueError("level must be non-negative")
    order = 4 * (k + 2)
    q = zeta(order, 2)
    S = tuple(
        tuple(quantum_integer((a + 1) * (b + 1), q) for b in range(k + 1)) for a in range(k + 1)
    )
    # theta_a = q^(a(a+2)/2) = zeta_order^(a(a+2)); theta_0 = 1 already
    T = tuple(zeta(order, a * (a + 2)) for a in range(k + 1))
    return ModularData(tuple(str(a) for a in range(k + 1)), S, T)


def _pointed(elements: list[tuple[int, ...]], orders: tuple[int, ...], theta: dict, labels=None) -> ModularData:
    def plus(a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, orders))

    def minus(a):
        return tuple((-x) % n for x, n in zip(a, orders))

    for a in elements:
        if theta[a] != theta[minus(a)]:
            raise InvalidForm(f"theta({a}) != theta(-{a})", {"element": a})

    def beta(a, b):
        return theta[plus(a, b)] * (theta[a] * theta[b]).inverse()

    B = {(a, b): beta(a, b) for a in elements for b in elements}
    for a in elements:
        for b in elements:
            for c in elements:
                if B[a, plus(b, c)] != B[a, b] * B[a, c]:
                    raise InvalidForm("associated form is not a bicharacter", {"a": a, "b": b, "c": c})
    # S_ab = beta(-a, b): the double braiding of a's dual with b.  This is the
    # normalisation in which (S T)^3 = p_plus S^2 holds when C != 1.
    S = tuple(tuple(B[minus(a), b] for b in elements) for a in elements)
    if not linalg.det([list(r) for r in S]):
        raise DegenerateForm("the bicharacter of the quadratic form is degenerate")
    if labels is None:
        labels = ["".join(str(x) for x in a) if len(a) > 1 else str(a[0]) for a in elements]
    return ModularData(tuple(labels), S, tuple(theta[a] for a in elements))


def gen_pointed(n: int, q_exponents: Sequence[int]) -> ModularData:
    """Pointed category on Z_n with twists theta_a = zeta_(2n)^(q_a)."""
    if n < 1 or len(q_exponents) != n:
        raise ShapeError(f"need {n} exponents, got {len(q_exponents)}")
    theta = {(a,): zeta(2 * n, q_exponents[a]) for a in range(n)}
    if theta[(0,)] != 1:
        raise InvalidForm("theta_0 must be 1")
    return _pointed([(a,) for a in range(n)], (n,), theta)


def pointed_forms(n: int) -> list[tuple[int, ...]]:
    """Exponent vectors of all nondegenerate quadratic forms on Z_n.

    Every quadratic form on Z_n is a -> c a^2 / (2n) with c n even.
    """
    out = []
    for c in range(2 * n):
        if (c * n) % 2:
            continue
        qs = tuple((c * a * a) % (2 * n) for a in range(n))
        red = c // 2 if n % 2 else c
        if gcd(red, n) == 1 or n == 1:
            out.append(qs)
    return sorted(set(out))


def _fibonacci() -> ModularData:
    z5 = zeta(5)
    phi = -(z5**2) - z5**3
    return ModularData(("1", "tau"), ((1, phi), (phi, -1)), (1, z5**2))


def _ising() -> ModularData:
    s = zeta(8) + zeta(8, 7)
    S = ((1, s, 1), (s, 0, -s), (1, -s, 1))
    return ModularData(("1", "sigma", "psi"), S, (1, zeta(16), -1))


def _toric_code() -> ModularData:
    elements = [(0, 0), (1, 0), (0, 1), (1, 1)]
    theta = {a: Cyclotomic.rational((-1) ** (a[0] * a[1])) for a in elements}
    return _pointed(elements, (2, 2), theta, labels=["1", "e", "m", "f"])


def _semion() -> ModularData:
    return gen_pointed(2, (0, 1))


NAMED = {
    "trivial": lambda: gen_sl2(0),
    "semion": _semion,
    "fibonacci": _fibonacci,
    "ising": _ising,
    "toric_code": _toric_code,
}


def gen_named(name: str) -> ModularData:
    try:
        factory = NAMED[name]
    except KeyError:
        raise UnknownName(f"unknown built-in '{name}'; known: {sorted(NAMED)}", name) from None
    md = factory()
    validate(md).raise_if_failed()
    return md


def product(a: ModularData, b: ModularData) -> ModularData:
    """Deligne product: Kronecker product of S, pairwise product of T."""
    validate(a).raise_if_failed()
    validate(b).raise_if_failed()
    pairs = list(itertools.product(range(a.rank), range(b.rank)))
    labels = tuple(f"{a.labels[i]}*{b.labels[j]}" for i, j in pairs)
    S = tuple(tuple(a.S[i][k] * b.S[j][l] for k, l in pairs) for i, j in pairs)
    T = tuple(a.T[i] * b.T[j] for i, j in pairs)
    md = ModularData(labels, S, T)
    validate(md).raise_if_failed()
    return md


def product_all(factors: Sequence[ModularData]) -> ModularData:
    return reduce(product, factors)

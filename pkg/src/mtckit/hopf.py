"""Finite-dimensional Hopf algebras given by structure constants.

Conventions, for a basis ``e_0 .. e_{d-1}``:

* ``m[i, j, k]``      coefficient of ``e_k`` in ``e_i e_j``
* ``Delta[i, j, k]``  coefficient of ``e_j (x) e_k`` in ``Delta(e_i)``
* ``antipode[i, j]``  coefficient of ``e_j`` in ``S(e_i)``
* ``R[i, j]``         coefficient of ``e_i (x) e_j``

Elements of ``H^{(x)k}`` are object arrays of shape ``(d,) * k``.  Scalars are
``Fraction`` or :class:`~mtckit.cyclotomic.Cyclotomic`, never floats.
"""

from __future__ import annotations

import dataclasses
import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from . import linalg
from .cyclotomic import Cyclotomic
from .errors import DegeneratePairing, DimensionError, ShapeError, ValidationReport

__all__ = [
    "AlgebraSC",
    "CoalgebraSC",
    "HopfAlgebraSC",
    "QuasiTriangular",
    "IntegralData",
    "FrobeniusCheckReport",
    "validate_hopf",
    "integrals",
    "maschke_scalar",
    "frobenius_from_integral",
    "check_frobenius_symmetric_special",
    "check_rmatrix",
    "factorizable",
    "group_algebra",
    "dual_group_algebra",
    "sweedler",
    "builtin_hopf",
    "BUILTIN_HOPF",
    "load_hopf",
    "dump_hopf",
]


# scalars and arrays -----------------------------------------------------


def scalar(x: Any):
    """Coerce to an exact scalar; rational cyclotomics collapse to Fraction."""
    if isinstance(x, Cyclotomic):
        return x.to_fraction() if x.is_rational() else x
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, (str, dict)):
        return scalar(Cyclotomic.from_json(x))
    raise TypeError(f"not an exact scalar: {x!r}")


def exact_array(values, shape: tuple[int, ...] | None = None) -> np.ndarray:
    arr = np.array(values, dtype=object)
    if shape is not None and arr.shape != shape:
        raise ShapeError(f"expected shape {shape}, got {arr.shape}", list(arr.shape))
    out = np.empty(arr.shape, dtype=object)
    for idx in np.ndindex(arr.shape):
        out[idx] = scalar(arr[idx])
    return out


def zeros(*shape: int) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def simplify(arr: np.ndarray) -> np.ndarray:
    out = np.empty(arr.shape, dtype=object)
    for idx in np.ndindex(arr.shape):
        out[idx] = scalar(arr[idx])
    return out


def first_difference(a: np.ndarray, b: np.ndarray) -> tuple[int, ...] | None:
    """Index of the first entry where a and b differ, or None."""
    for idx in np.ndindex(a.shape):
        if a[idx] != b[idx]:
            return tuple(int(i) for i in idx)
    return None


def is_zero(arr: np.ndarray) -> bool:
    return all(x == 0 for x in arr.flat)


def _json_scalar(x):
    x = scalar(x)
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x.to_json()


def _json_array(arr: np.ndarray):
    if not isinstance(arr, np.ndarray):
        return _json_scalar(arr)
    if arr.ndim == 0:
        return _json_scalar(arr[()])
    return [_json_array(a) for a in arr]


# structures --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class AlgebraSC:
    m: np.ndarray
    eta: np.ndarray

    @property
    def dim(self) -> int:
        return self.eta.shape[0]

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("j,jk->k", y, np.einsum("i,ijk->jk", x, self.m))

    def left_matrix(self, x: np.ndarray) -> np.ndarray:
        """Row j is x e_j."""
        return np.einsum("i,ijk->jk", x, self.m)

    def right_matrix(self, x: np.ndarray) -> np.ndarray:
        """Row i is e_i x."""
        return np.einsum("j,ijk->ik", x, self.m)

    def unit(self) -> np.ndarray:
        return self.eta.copy()

    def basis_vector(self, i: int) -> np.ndarray:
        v = zeros(self.dim)
        v[i] = Fraction(1)
        return v

    def mul2(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """Product in H (x) H."""
        A = np.einsum("ij,iak->jak", X, self.m)
        C = np.einsum("jak,ab->kjb", A, Y)
        return np.einsum("kjb,jbl->kl", C, self.m)

    def mul3(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """Product in H (x) H (x) H."""
        A = np.einsum("ijk,iap->jkap", X, self.m)
        A = np.einsum("jkap,jbq->kapbq", A, self.m)
        A = np.einsum("kapbq,kcr->apbqcr", A, self.m)
        return np.einsum("apbqcr,abc->pqr", A, Y)

    def inverse(self, x: np.ndarray) -> np.ndarray | None:
        M = self.left_matrix(x)
        sol = linalg.solve(M.T.tolist(), list(self.eta))
        if sol is None:
            return None
        y = exact_array(sol)
        return y if first_difference(self.mul(y, x), self.eta) is None else None


@dataclass(frozen=True, eq=False)
class CoalgebraSC:
    Delta: np.ndarray
    eps: np.ndarray

    @property
    def dim(self) -> int:
        return self.eps.shape[0]

    def coproduct(self, x: np.ndarray) -> np.ndarray:
        return np.einsum("i,ijk->jk", x, self.Delta)

    def counit(self, x: np.ndarray):
        return scalar(np.dot(x, self.eps))


@dataclass(frozen=True, eq=False)
class HopfAlgebraSC:
    algebra: AlgebraSC
    coalgebra: CoalgebraSC
    antipode: np.ndarray
    basis: tuple[str, ...] = ()
    name: str = ""
    # known simple modules, each an array rho with rho[i] the action matrix of e_i
    simples: tuple = ()

    def __post_init__(self):
        d = self.algebra.dim
        shapes = {
            "m": (self.algebra.m.shape, (d, d, d)),
            "eta": (self.algebra.eta.shape, (d,)),
            "Delta": (self.coalgebra.Delta.shape, (d, d, d)),
            "eps": (self.coalgebra.eps.shape, (d,)),
            "antipode": (self.antipode.shape, (d, d)),
        }
        for key, (got, want) in shapes.items():
            if got != want:
                raise ShapeError(f"{key} has shape {got}, expected {want}", {"field": key, "shape": list(got)})
        if not self.basis:
            object.__setattr__(self, "basis", tuple(f"e{i}" for i in range(d)))
        elif len(self.basis) != d:
            raise ShapeError(f"{len(self.basis)} basis labels for dimension {d}")

    @classmethod
    def from_arrays(cls, m, eta, Delta, eps, antipode, basis: Sequence[str] = (), name: str = "") -> HopfAlgebraSC:
        eta = exact_array(eta)
        d = eta.shape[0]
        return cls(
            AlgebraSC(exact_array(m, (d, d, d)), eta),
            CoalgebraSC(exact_array(Delta, (d, d, d)), exact_array(eps, (d,))),
            exact_array(antipode, (d, d)),
            tuple(basis),
            name,
        )

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def m(self) -> np.ndarray:
        return self.algebra.m

    @property
    def eta(self) -> np.ndarray:
        return self.algebra.eta

    @property
    def Delta(self) -> np.ndarray:
        return self.coalgebra.Delta

    @property
    def eps(self) -> np.ndarray:
        return self.coalgebra.eps

    def mul(self, x, y):
        return self.algebra.mul(x, y)

    def coproduct(self, x):
        return self.coalgebra.coproduct(x)

    def counit(self, x):
        return self.coalgebra.counit(x)

    def S(self, x: np.ndarray) -> np.ndarray:
        return np.einsum("i,ij->j", x, self.antipode)

    def e(self, i: int) -> np.ndarray:
        return self.algebra.basis_vector(i)

    def one(self) -> np.ndarray:
        return self.eta.copy()

    def one2(self) -> np.ndarray:
        return np.einsum("i,j->ij", self.eta, self.eta)

    def flip(self, X: np.ndarray) -> np.ndarray:
        return X.T.copy()

    def antipode_inverse(self) -> np.ndarray:
        return exact_array(linalg.inverse(self.antipode.tolist()))


@dataclass(frozen=True, eq=False)
class QuasiTriangular:
    R: np.ndarray
    u: np.ndarray
    v: np.ndarray | None = None
    g: np.ndarray | None = None

    @classmethod
    def build(cls, h: HopfAlgebraSC, R, v=None) -> QuasiTriangular:
        d = h.dim
        R = exact_array(R, (d, d))
        # u = sum S(R2) R1
        u = zeros(d)
        for i, j in itertools.product(range(d), repeat=2):
            if R[i, j] != 0:
                u = u + R[i, j] * h.mul(h.S(h.e(j)), h.e(i))
        u = simplify(u)
        g = None
        if v is not None:
            v = exact_array(v, (d,))
            vinv = h.algebra.inverse(v)
            if vinv is not None:
                g = simplify(h.mul(u, vinv))
        return cls(R, u, v, g)

    @property
    def R21(self) -> np.ndarray:
        return self.R.T.copy()


@dataclass(frozen=True, eq=False)
class IntegralData:
    mu_left: np.ndarray
    mu_right: np.ndarray
    lambda_left: np.ndarray
    lambda_right: np.ndarray

    @property
    def two_sided(self) -> bool:
        return proportional(self.mu_left, self.mu_right)


@dataclass
class FrobeniusCheckReport:
    is_frobenius: bool
    is_symmetric: bool
    is_special: bool
    beta_1: Any = None
    beta_A: Any = None
    witnesses: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "is_frobenius": self.is_frobenius,
            "is_symmetric": self.is_symmetric,
            "is_special": self.is_special,
            "beta_1": None if self.beta_1 is None else _json_scalar(self.beta_1),
            "beta_A": None if self.beta_A is None else _json_scalar(self.beta_A),
        }


def proportional(a: np.ndarray, b: np.ndarray) -> bool:
    """a = c b for some nonzero scalar c (both nonzero)."""
    k = next((i for i, x in enumerate(b.flat) if x != 0), None)
    if k is None or a.flat[k] == 0:
        return False
    c = a.flat[k] / b.flat[k]
    return all(x == c * y for x, y in zip(a.flat, b.flat))


# validation --------------------------------------------------------------


def _check_algebra(a: AlgebraSC, rep: ValidationReport, prefix: str = "") -> None:
    m, eta = a.m, a.eta
    lhs = np.einsum("ijp,pkl->ijkl", m, m)
    rhs = np.einsum("jkp,ipl->ijkl", m, m)
    rep.add(prefix + "associativity", (w := first_difference(lhs, rhs)) is None, w and w[:3])
    ident = np.eye(a.dim, dtype=object)
    left = np.einsum("i,ijk->jk", eta, m)
    right = np.einsum("j,ijk->ik", eta, m)
    rep.add(prefix + "left_unit", (w := first_difference(left, ident)) is None, w)
    rep.add(prefix + "right_unit", (w := first_difference(right, ident)) is None, w)


def _check_coalgebra(c: CoalgebraSC, rep: ValidationReport, prefix: str = "") -> None:
    D, eps = c.Delta, c.eps
    lhs = np.einsum("ipk,pab->iabk", D, D)
    rhs = np.einsum("iap,pbk->iabk", D, D)
    rep.add(prefix + "coassociativity", (w := first_difference(lhs, rhs)) is None, w and w[:1])
    ident = np.eye(c.dim, dtype=object)
    left = np.einsum("ijk,j->ik", D, eps)
    right = np.einsum("ijk,k->ij", D, eps)
    rep.add(prefix + "left_counit", (w := first_difference(left, ident)) is None, w)
    rep.add(prefix + "right_counit", (w := first_difference(right, ident)) is None, w)


def validate_hopf(h: HopfAlgebraSC) -> ValidationReport:
    rep = ValidationReport()
    d = h.dim
    _check_algebra(h.algebra, rep)
    _check_coalgebra(h.coalgebra, rep)
    m, D, eps, eta = h.m, h.Delta, h.eps, h.eta
    # Delta(e_i e_j) = Delta(e_i) Delta(e_j)
    lhs = np.einsum("ijk,kab->ijab", m, D)
    rhs = np.empty((d, d, d, d), dtype=object)
    for i in range(d):
        for j in range(d):
            rhs[i, j] = h.algebra.mul2(D[i], D[j])
    rep.add("Delta_multiplicative", (w := first_difference(lhs, rhs)) is None, w and w[:2])
    rep.add("Delta_unital", (w := first_difference(h.coproduct(eta), h.one2())) is None, w)
    lhs = np.einsum("ijk,k->ij", m, eps)
    rhs = np.einsum("i,j->ij", eps, eps)
    rep.add("eps_multiplicative", (w := first_difference(lhs, rhs)) is None, w)
    rep.add("eps_unital", h.counit(eta) == 1, None)
    A = h.antipode
    # m (S (x) id) Delta (e_i) and m (id (x) S) Delta (e_i)
    left = np.einsum("iab,ac,cbk->ik", D, A, m)
    right = np.einsum("iab,bc,ack->ik", D, A, m)
    target = np.einsum("i,k->ik", eps, eta)
    rep.add("antipode_left", (w := first_difference(left, target)) is None, w and w[:1])
    rep.add("antipode_right", (w := first_difference(right, target)) is None, w and w[:1])
    return rep


# integrals ---------------------------------------------------------------


def _unique_solution(rows: list[list], d: int, what: str) -> np.ndarray:
    basis = linalg.nullspace(rows, d)
    if len(basis) != 1:
        raise DimensionError(f"space of {what} has dimension {len(basis)}, expected 1", {"what": what, "dimension": len(basis)})
    v = [scalar(x) for x in basis[0]]
    # first nonzero coordinate = 1
    lead = next(x for x in v if x != 0)
    return exact_array([scalar(x / lead) for x in v])


def integrals(h: HopfAlgebraSC) -> IntegralData:
    d = h.dim
    m, D, eps, eta = h.m, h.Delta, h.eps, h.eta
    left_rows, right_rows, lco_rows, rco_rows = [], [], [], []
    for i in range(d):
        for k in range(d):
            # e_i mu = eps(e_i) mu
            left_rows.append([m[i, j, k] - (eps[i] if j == k else 0) for j in range(d)])
            # mu e_i = eps(e_i) mu
            right_rows.append([m[j, i, k] - (eps[i] if j == k else 0) for j in range(d)])
            # sum e_i1 lambda(e_i2) = lambda(e_i) 1, coordinate k
            lco_rows.append([D[i, k, j] - (eta[k] if j == i else 0) for j in range(d)])
            # sum lambda(e_i1) e_i2 = lambda(e_i) 1
            rco_rows.append([D[i, j, k] - (eta[k] if j == i else 0) for j in range(d)])
    return IntegralData(
        _unique_solution(left_rows, d, "left integrals"),
        _unique_solution(right_rows, d, "right integrals"),
        _unique_solution(lco_rows, d, "left cointegrals"),
        _unique_solution(rco_rows, d, "right cointegrals"),
    )


def maschke_scalar(h: HopfAlgebraSC, ints: IntegralData | None = None):
    ints = ints if ints is not None else integrals(h)
    return h.counit(ints.mu_left)


# Frobenius structure -------------------------------------------------------


def frobenius_from_integral(
    h: HopfAlgebraSC, ints: IntegralData | None = None
) -> tuple[AlgebraSC, CoalgebraSC, FrobeniusCheckReport]:
    """Counit = right cointegral rescaled so that lambda(mu_left) = 1."""
    ints = ints if ints is not None else integrals(h)
    pairing = scalar(np.dot(ints.lambda_right, ints.mu_left))
    if pairing == 0:
        raise DegeneratePairing("lambda(mu) = 0", {"lambda": _json_array(ints.lambda_right)})
    lam = simplify(ints.lambda_right / pairing)
    G = np.einsum("ijk,k->ij", h.m, lam)
    try:
        Ginv = exact_array(linalg.inverse(G.tolist()))
    except ZeroDivisionError:
        raise DegeneratePairing("the form (a, b) -> lambda(ab) is degenerate", None) from None
    # Delta(e_i) = (e_i (x) 1) Delta(1), Delta(1) = sum Ginv_ab e_a (x) e_b
    Delta = simplify(np.einsum("iak,ab->ikb", h.m, Ginv))
    coalg = CoalgebraSC(Delta, lam)
    return h.algebra, coalg, check_frobenius_symmetric_special(h.algebra, coalg)


def check_frobenius_symmetric_special(a: AlgebraSC, c: CoalgebraSC) -> FrobeniusCheckReport:
    d = a.dim
    if a.m.shape != (d, d, d) or c.Delta.shape != (d, d, d) or c.eps.shape != (d,):
        raise ShapeError("algebra and coalgebra shapes do not match", None)
    rep = ValidationReport()
    _check_algebra(a, rep)
    _check_coalgebra(c, rep)
    m, D = a.m, c.Delta
    # Delta(e_i e_j) = (e_i (x) 1) Delta(e_j) = Delta(e_i) (1 (x) e_j)
    lhs = np.einsum("ijp,pab->ijab", m, D)
    left = np.einsum("ixa,jxb->ijab", m, D)
    right = np.einsum("iax,xjb->ijab", D, m)
    rep.add("left_module_map", (w := first_difference(lhs, left)) is None, w and w[:2])
    rep.add("right_module_map", (w := first_difference(lhs, right)) is None, w and w[:2])
    form = np.einsum("ijk,k->ij", m, c.eps)
    sym = first_difference(form, form.T)
    beta_1 = scalar(np.dot(c.eps, a.eta))
    mD = np.einsum("iab,abk->ik", D, m)
    beta_A = scalar(mD[0, 0]) if d else Fraction(0)
    scalar_mD = first_difference(mD, beta_A * np.eye(d, dtype=object)) is None
    special = scalar_mD and beta_1 != 0 and beta_A != 0
    return FrobeniusCheckReport(
        is_frobenius=rep.ok,
        is_symmetric=sym is None,
        is_special=special,
        beta_1=beta_1 if special else None,
        beta_A=beta_A if special else None,
        witnesses={c_.name: c_.witness for c_ in rep.failures()} | ({} if sym is None else {"symmetric": sym}),
    )


# R-matrices ----------------------------------------------------------------


def _r_inverse(h: HopfAlgebraSC, R: np.ndarray) -> np.ndarray | None:
    d = h.dim
    # columns: coordinates of R * (e_a (x) e_b)
    cols = []
    for a in range(d):
        for b in range(d):
            E = zeros(d, d)
            E[a, b] = Fraction(1)
            cols.append(list(h.algebra.mul2(R, E).flat))
    M = [list(r) for r in zip(*cols)]
    sol = linalg.solve(M, list(h.one2().flat))
    if sol is None:
        return None
    X = exact_array(sol).reshape(d, d)
    if first_difference(h.algebra.mul2(X, R), h.one2()) is not None:
        return None
    return X


def check_rmatrix(h: HopfAlgebraSC, qt: QuasiTriangular) -> ValidationReport:
    rep = ValidationReport()
    d = h.dim
    R = qt.R
    alg = h.algebra
    rep.add("R_invertible", _r_inverse(h, R) is not None, None)
    bad = None
    for i in range(d):
        Di = h.Delta[i]
        if first_difference(alg.mul2(Di.T, R), alg.mul2(R, Di)) is not None:
            bad = i
            break
    rep.add("intertwiner", bad is None, bad)
    R13R23 = np.einsum("ij,ab,jbk->iak", R, R, h.m)
    R13R12 = np.einsum("ij,ab,iak->kbj", R, R, h.m)
    DR = np.einsum("ij,ipq->pqj", R, h.Delta)
    RD = np.einsum("ij,jpq->ipq", R, h.Delta)
    rep.add("hexagon_1", (w := first_difference(DR, R13R23)) is None, w)
    rep.add("hexagon_2", (w := first_difference(RD, R13R12)) is None, w)
    if qt.v is not None:
        v = qt.v
        bad = next((i for i in range(d) if first_difference(h.mul(v, h.e(i)), h.mul(h.e(i), v)) is not None), None)
        rep.add("ribbon_central", bad is None, bad)
        rep.add("ribbon_square", first_difference(h.mul(v, v), h.mul(qt.u, h.S(qt.u))) is None, None)
        rep.add("ribbon_antipode", first_difference(h.S(v), v) is None, None)
        rep.add("ribbon_counit", h.counit(v) == 1, None)
        Q = alg.mul2(qt.R21, R)
        rep.add(
            "ribbon_coproduct",
            first_difference(alg.mul2(Q, h.coproduct(v)), np.einsum("i,j->ij", v, v)) is None,
            None,
        )
        rep.add("ribbon_invertible", qt.g is not None, None)
    return rep


def monodromy(h: HopfAlgebraSC, qt: QuasiTriangular) -> np.ndarray:
    return simplify(h.algebra.mul2(qt.R21, qt.R))


def factorizable(h: HopfAlgebraSC, qt: QuasiTriangular) -> tuple[bool, int]:
    """Rank of the Drinfeld map f -> (f (x) id)(R21 R); factorizable iff it is d."""
    Q = monodromy(h, qt)
    r = linalg.rank(Q.tolist())
    return r == h.dim, r


# built-ins -----------------------------------------------------------------


def _group_elements(orders: Sequence[int]) -> list[tuple[int, ...]]:
    return list(itertools.product(*(range(n) for n in orders)))


def _pairing_exponent(orders, a, b, K) -> Fraction:
    """beta(a, b) = exp(2 pi i * result)."""
    total = Fraction(0)
    for s, ns in enumerate(orders):
        for t, nt in enumerate(orders):
            if K[s][t]:
                total += Fraction(K[s][t] * a[s] * b[t], math.gcd(ns, nt))
    return total


def group_algebra(
    orders: int | Sequence[int],
    form: Sequence[Sequence[int]] | None = None,
) -> tuple[HopfAlgebraSC, QuasiTriangular]:
    """k[G] for G = Z_{n_1} x ... x Z_{n_r}, basis = group elements in lexicographic order.

    ``form`` is an integer matrix K defining a bicharacter on the dual group,
    beta(a, b) = prod exp(2 pi i K_st a_s b_t / gcd(n_s, n_t)), and
    R = sum beta(a, b) e_a (x) e_b over the character idempotents.  The ribbon
    element acts on the character a by beta(a, a)^-1.  ``form=None`` gives R = 1 (x) 1.
    """
    orders = (orders,) if isinstance(orders, int) else tuple(orders)
    G = _group_elements(orders)
    d = len(G)
    index = {g: i for i, g in enumerate(G)}

    def add(a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, orders))

    def neg(a):
        return tuple(-x % n for x, n in zip(a, orders))

    m = zeros(d, d, d)
    Delta = zeros(d, d, d)
    S = zeros(d, d)
    for g in G:
        i = index[g]
        Delta[i, i, i] = Fraction(1)
        S[i, index[neg(g)]] = Fraction(1)
        for h_ in G:
            m[i, index[h_], index[add(g, h_)]] = Fraction(1)
    eta = zeros(d)
    eta[0] = Fraction(1)
    eps = exact_array([1] * d)
    label = "x".join(f"Z{n}" for n in orders)
    basis = tuple("g" + "".join(str(x) for x in g) for g in G) if len(orders) > 1 else tuple(f"g{g[0]}" for g in G)
    N = math.lcm(*orders)
    simples = []
    for a in G:
        rho = zeros(d, 1, 1)
        for x in G:
            q = sum((Fraction(ai * xi, n) for ai, xi, n in zip(a, x, orders)), Fraction(0))
            rho[index[x], 0, 0] = scalar(Cyclotomic.zeta(N, int(q * N)))
        simples.append(rho)
    H = HopfAlgebraSC(AlgebraSC(m, eta), CoalgebraSC(Delta, eps), S, basis, f"k[{label}]", tuple(simples))
    if form is None:
        return H, QuasiTriangular.build(H, np.einsum("i,j->ij", eta, eta), eta)

    def chi(a, x) -> Fraction:
        # character a at group element x is exp(2 pi i chi(a, x))
        return sum((Fraction(ai * xi, n) for ai, xi, n in zip(a, x, orders)), Fraction(0))

    def expo(q: Fraction) -> int:
        return int(q * N)

    beta = {(a, b): _pairing_exponent(orders, a, b, form) for a in G for b in G}
    # e_a = (1/d) sum_x chi_a(x)^-1 x
    R = zeros(d, d)
    for x in G:
        for y in G:
            terms: dict[int, Fraction] = {}
            for a in G:
                for b in G:
                    e = expo(beta[(a, b)] - chi(a, x) - chi(b, y))
                    terms[e] = terms.get(e, Fraction(0)) + Fraction(1, d * d)
            R[index[x], index[y]] = scalar(Cyclotomic.from_exponents(N, terms))
    v = zeros(d)
    for x in G:
        terms = {}
        for a in G:
            e = expo(-beta[(a, a)] - chi(a, x))
            terms[e] = terms.get(e, Fraction(0)) + Fraction(1, d)
        v[index[x]] = scalar(Cyclotomic.from_exponents(N, terms))
    return H, QuasiTriangular.build(H, R, v)


def dual_group_algebra(n: int) -> HopfAlgebraSC:
    """Functions on Z_n, basis delta_0 .. delta_{n-1}."""
    m = zeros(n, n, n)
    Delta = zeros(n, n, n)
    S = zeros(n, n)
    for x in range(n):
        m[x, x, x] = Fraction(1)
        S[x, -x % n] = Fraction(1)
        for y in range(n):
            Delta[x, y, (x - y) % n] = Fraction(1)
    eta = exact_array([1] * n)
    eps = zeros(n)
    eps[0] = Fraction(1)
    simples = []
    for y in range(n):
        rho = zeros(n, 1, 1)
        rho[y, 0, 0] = Fraction(1)
        simples.append(rho)
    return HopfAlgebraSC(
        AlgebraSC(m, eta), CoalgebraSC(Delta, eps), S, tuple(f"d{x}" for x in range(n)), f"k^Z{n}", tuple(simples)
    )


def sweedler(alpha=0) -> tuple[HopfAlgebraSC, QuasiTriangular]:
    """Sweedler's 4-dimensional algebra, basis 1, g, x, gx; g^2 = 1, x^2 = 0, xg = -gx.

    R_alpha = (1 (x) 1 + 1 (x) g + g (x) 1 - g (x) g) / 2
            + alpha (x (x) x - x (x) gx + gx (x) x + gx (x) gx) / 2,
    with ribbon element 1 and Drinfeld element g.
    """
    words = [(0, 0), (1, 0), (0, 1), (1, 1)]  # g^a x^b
    idx = {w: i for i, w in enumerate(words)}
    m = zeros(4, 4, 4)
    for (a, b), i in idx.items():
        for (c, e), j in idx.items():
            if b + e > 1:
                continue
            # x g^c = (-1)^c g^c x
            m[i, j, idx[((a + c) % 2, b + e)]] = Fraction((-1) ** (b * c))
    one, g, x, gx = (exact_array([int(k == i) for k in range(4)]) for i in range(4))
    Delta = zeros(4, 4, 4)
    Delta[0] = np.einsum("i,j->ij", one, one)
    Delta[1] = np.einsum("i,j->ij", g, g)
    Delta[2] = np.einsum("i,j->ij", x, one) + np.einsum("i,j->ij", g, x)
    Delta[3] = np.einsum("i,j->ij", gx, g) + np.einsum("i,j->ij", one, gx)
    eps = exact_array([1, 1, 0, 0])
    S = exact_array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    # the two characters g -> +-1, x -> 0
    simples = tuple(exact_array([[[1]], [[sign]], [[0]], [[0]]]) for sign in (1, -1))
    H = HopfAlgebraSC(
        AlgebraSC(m, one), CoalgebraSC(simplify(Delta), eps), S, ("1", "g", "x", "gx"), "sweedler", simples
    )
    alpha = scalar(alpha)

    def t(p, q):
        return np.einsum("i,j->ij", p, q)

    R = (t(one, one) + t(one, g) + t(g, one) - t(g, g)) * Fraction(1, 2) + (
        t(x, x) - t(x, gx) + t(gx, x) + t(gx, gx)
    ) * (alpha / 2)
    return H, QuasiTriangular.build(H, simplify(R), one)


def _trivial_r(h: HopfAlgebraSC) -> QuasiTriangular:
    return QuasiTriangular.build(h, h.one2(), h.one())


def _builtins() -> dict:
    def pointed(n, c):
        # theta_a = zeta_n^(c a^2) from the bicharacter beta(a, b) = zeta_n^(c a b)
        return lambda: group_algebra(n, [[c]])

    def toric():
        # beta((a1, a2), (b1, b2)) = (-1)^(a2 b1), the Drinfeld double of Z_2
        return group_algebra((2, 2), [[0, 0], [1, 0]])

    def trivial_r(n):
        def make():
            H, _ = group_algebra(n)
            return H, _trivial_r(H)
        return make

    def dual(n):
        def make():
            H = dual_group_algebra(n)
            return H, None
        return make

    return {
        "Z1": trivial_r(1),
        "Z2_trivial": trivial_r(2),
        "Z3_trivial": trivial_r(3),
        "Z4_trivial": trivial_r(4),
        "Z2_symmetric": pointed(2, 1),
        "Z3_form1": pointed(3, 1),
        "Z3_form2": pointed(3, 2),
        "Z4_form1": pointed(4, 1),
        "Z4_form2": pointed(4, 2),
        "Z5_form1": pointed(5, 1),
        "Z2xZ2_double": toric,
        "dual_Z3": dual(3),
        "dual_Z4": dual(4),
        "sweedler": lambda: sweedler(0),
        "sweedler_alpha1": lambda: sweedler(1),
    }


BUILTIN_HOPF = _builtins()


def builtin_hopf(name: str) -> tuple[HopfAlgebraSC, QuasiTriangular | None]:
    from .errors import UnknownName

    try:
        make = BUILTIN_HOPF[name]
    except KeyError:
        raise UnknownName(f"unknown Hopf algebra {name!r}", sorted(BUILTIN_HOPF)) from None
    return make()


# file format ------------------------------------------------------------------


def _orders_in(arrays) -> int:
    N = 1
    for arr in arrays:
        if arr is None:
            continue
        for x in arr.flat:
            if isinstance(x, Cyclotomic):
                N = math.lcm(N, x.canonical().order)
    return N


def dump_hopf(h: HopfAlgebraSC, qt: QuasiTriangular | None = None) -> str:
    obj = {
        "dim": h.dim,
        "basis": list(h.basis),
        "m": _json_array(h.m),
        "eta": _json_array(h.eta),
        "Delta": _json_array(h.Delta),
        "eps": _json_array(h.eps),
        "antipode": _json_array(h.antipode),
    }
    arrays = [h.m, h.eta, h.Delta, h.eps, h.antipode]
    if qt is not None:
        obj["R"] = _json_array(qt.R)
        arrays.append(qt.R)
        if qt.v is not None:
            obj["ribbon"] = _json_array(qt.v)
            arrays.append(qt.v)
    if h.simples:
        obj["simples"] = [_json_array(r) for r in h.simples]
        arrays.extend(h.simples)
    obj["cyclotomic_order"] = _orders_in(arrays)
    if h.name:
        obj["name"] = h.name
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def load_hopf(text_or_obj) -> tuple[HopfAlgebraSC, QuasiTriangular | None]:
    obj = json.loads(text_or_obj) if isinstance(text_or_obj, str) else text_or_obj
    try:
        d = int(obj["dim"])
        h = HopfAlgebraSC.from_arrays(
            obj["m"], obj["eta"], obj["Delta"], obj["eps"], obj["antipode"],
            obj.get("basis") or (), obj.get("name", ""),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ShapeError(f"malformed Hopf algebra file: {exc}") from None
    if h.dim != d:
        raise ShapeError(f"dim {d} does not match structure constants of size {h.dim}")
    if obj.get("simples"):
        # optional list of irreducible representations, action arrays of shape (d, n, n)
        try:
            simples = tuple(exact_array(r) for r in obj["simples"])
        except (TypeError, ValueError) as exc:
            raise ShapeError(f"malformed simples: {exc}") from None
        if any(r.ndim != 3 or r.shape[0] != d or r.shape[1] != r.shape[2] for r in simples):
            raise ShapeError("each simple must be an action array of shape (d, n, n)")
        h = dataclasses.replace(h, simples=simples)
    qt = None
    if obj.get("R") is not None:
        R = obj["R"]
        R = np.array(R, dtype=object)
        if R.shape == (d * d,):
            R = R.reshape(d, d)
        qt = QuasiTriangular.build(h, R, obj.get("ribbon"))
    return h, qt

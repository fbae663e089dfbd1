"""The coend of H-Mod, realised on the dual space H* with the coadjoint action.

A vector ``phi`` of length d stands for the functional with ``phi[k] = phi(e_k)``.
The structure morphism of the coend for a module M is

    iota_M(f (x) m) = (h -> f(h.m)),

and every structural morphism F of the coend is defined by a family
``phi_X: X* (x) X -> B`` through ``F o iota_X = phi_X``.  Since
``iota_H(f (x) 1) = f`` on the regular module, F is obtained as
``phi_H o s`` with the section ``s(f) = f (x) 1``; the defining identity is
then re-checked on the whole regular module and on sample modules.

Module vectors are manipulated as object arrays with one axis per tensor
factor and a leading batch axis.  Action matrices use the column
convention ``rho[i] @ v = e_i . v``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .errors import Degenerate, DimensionError, InvalidModule, NotProportional, ValidationReport
from .hopf import (
    HopfAlgebraSC,
    QuasiTriangular,
    _r_inverse,
    check_rmatrix,
    exact_array,
    first_difference,
    scalar,
    simplify,
    validate_hopf,
    zeros,
)

__all__ = [
    "Module",
    "CoendHopf",
    "CharacterVector",
    "SL2ZData",
    "regular_module",
    "trivial_module",
    "dual_module",
    "tensor_module",
    "build_coend",
    "validate_coend",
    "pairing_omega",
    "integral_of_coend",
    "sl2z_data",
    "characters",
    "character_product_check",
    "invariant_subspace",
    "restrict",
    "center_dimension_check",
]


# modules -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Module:
    rho: np.ndarray
    name: str = ""

    @property
    def n(self) -> int:
        return self.rho.shape[1]

    def act(self, x: np.ndarray) -> np.ndarray:
        return np.einsum("i,iab->ab", x, self.rho)


def check_module(h: HopfAlgebraSC, M: Module) -> None:
    d = h.dim
    if M.rho.ndim != 3 or M.rho.shape[0] != d or M.rho.shape[1] != M.rho.shape[2]:
        raise InvalidModule(f"action must have shape (d, n, n) with d = {d}", list(M.rho.shape))
    ident = np.eye(M.n, dtype=object)
    if first_difference(M.act(h.eta), ident) is not None:
        raise InvalidModule("the unit does not act as the identity", None)
    for i, j in itertools.product(range(d), repeat=2):
        lhs = M.act(h.m[i, j])
        if first_difference(lhs, M.rho[i].dot(M.rho[j])) is not None:
            raise InvalidModule(f"action of e_{i} e_{j} is not the product of the actions", [i, j])


def regular_module(h: HopfAlgebraSC) -> Module:
    # e_i . e_b = sum_a m[i, b, a] e_a
    return Module(np.transpose(h.m, (0, 2, 1)).copy(), "H")


def trivial_module(h: HopfAlgebraSC) -> Module:
    return Module(h.eps.reshape(h.dim, 1, 1).copy(), "1")


def dual_module(h: HopfAlgebraSC, M: Module) -> Module:
    """(h.f)(m) = f(S(h) m), in the dual basis."""
    rhoS = np.einsum("ij,jab->iab", h.antipode, M.rho)
    return Module(np.transpose(rhoS, (0, 2, 1)).copy(), f"{M.name}*")


def tensor_module(h: HopfAlgebraSC, M: Module, N: Module) -> Module:
    """Basis e_p (x) e_q flattened as p * N.n + q."""
    rho = np.einsum("ijk,jab,kcd->iacbd", h.Delta, M.rho, N.rho)
    d = h.dim
    return Module(simplify(rho.reshape(d, M.n * N.n, M.n * N.n)), f"({M.name}x{N.name})")


# tensor-network helpers ----------------------------------------------------------


def _contract(state: np.ndarray, axes: Sequence[int], M: np.ndarray) -> np.ndarray:
    """Contract the given axes (flattened in order) against the columns of M.

    The result has one new last axis of length M.shape[0].  States built from
    basis tensors are mostly zero, so only nonzero entries are visited.
    """
    axes = list(axes)
    rest = [a for a in range(state.ndim) if a not in axes]
    s = np.transpose(state, rest + axes)
    rest_shape = s.shape[: len(rest)]
    flat = s.reshape(-1, M.shape[1])
    out = np.zeros((flat.shape[0], M.shape[0]), dtype=object)
    rows, cols = np.nonzero(flat)
    for j in np.unique(cols):
        r = rows[cols == j]
        out[r] += np.multiply.outer(flat[r, j], M[:, j])
    return out.reshape(rest_shape + (M.shape[0],))


def _apply(state: np.ndarray, axis: int, mat: np.ndarray) -> np.ndarray:
    return np.moveaxis(_contract(state, [axis], mat), -1, axis)


def _apply_element(state: np.ndarray, Z: np.ndarray, mods: Sequence[Module], axes: Sequence[int]) -> np.ndarray:
    """Action of Z in H^{(x)k} on the given tensor factors."""
    k = len(mods)
    idx = "ijkl"[:k]
    outs = "abcd"[:k]
    ins = "pqrs"[:k]
    subscripts = ",".join([idx] + [f"{idx[t]}{outs[t]}{ins[t]}" for t in range(k)]) + f"->{outs}{ins}"
    op = simplify(np.einsum(subscripts, Z, *[m.rho for m in mods], optimize=True))
    dims = op.shape[:k]
    size = int(np.prod(dims))
    out = _contract(state, axes, op.reshape(size, size))
    out = out.reshape(out.shape[:-1] + dims)
    return np.moveaxis(out, list(range(out.ndim - k, out.ndim)), list(axes))


def _iota(state: np.ndarray, axes: tuple[int, int], M: Module) -> np.ndarray:
    """Contract (M*, M) axes into a new last axis indexing H*."""
    return _contract(state, axes, M.rho.reshape(M.rho.shape[0], -1))


def _eval(state: np.ndarray, axes: tuple[int, int]) -> np.ndarray:
    """d_M: contract an (M*, M) pair."""
    return np.trace(state, axis1=axes[0], axis2=axes[1])


def _section(h: HopfAlgebraSC) -> np.ndarray:
    """Batch of f (x) 1 in H* (x) H for f running over the dual basis: shape (d, d, d)."""
    return np.einsum("ka,b->kab", np.eye(h.dim, dtype=object), h.eta)


def _pair_section(h: HopfAlgebraSC) -> np.ndarray:
    """Batch of (f (x) 1) (x) (f' (x) 1): shape (d, d, d, d, d, d) with batch axes first."""
    s = _section(h)
    return np.einsum("kab,lcd->klabcd", s, s)


def _basis_batch(n: int) -> np.ndarray:
    """All basis tensors of M* (x) M as a batch: shape (n, n, n, n)."""
    return np.einsum("ac,bd->abcd", np.eye(n, dtype=object), np.eye(n, dtype=object))


def _pair_batch(m: int, n: int) -> np.ndarray:
    a = _basis_batch(m)
    b = _basis_batch(n)
    return np.einsum("pqab,rscd->pqrsabcd", a, b)


# coend structure --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CoendHopf:
    h: HopfAlgebraSC
    qt: QuasiTriangular
    action: np.ndarray  # action[i] @ phi = e_i |> phi
    m_H: np.ndarray
    Delta_H: np.ndarray
    eta_H: np.ndarray
    eps_H: np.ndarray
    antipode_H: np.ndarray
    omega: np.ndarray
    Sigma: np.ndarray
    T_H: np.ndarray
    mu: np.ndarray | None = None
    S_H: np.ndarray | None = None
    product_braiding: str = "c"
    checks: ValidationReport = field(default_factory=ValidationReport)

    @property
    def dim(self) -> int:
        return self.eta_H.shape[0]

    @property
    def module(self) -> Module:
        return Module(self.action, "coend")

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.m_H)

    def counit(self, x: np.ndarray):
        return scalar(np.dot(x, self.eps_H))

    def Sigma_matrix(self) -> np.ndarray:
        """d^2 x d matrix, row i * d + j is Sigma(e^i (x) e^j)."""
        return self.Sigma.reshape(self.dim * self.dim, self.dim)

    def to_json(self) -> dict:
        from .hopf import _json_array

        out = {
            "dim": self.dim,
            "action": _json_array(self.action),
            "m": _json_array(self.m_H),
            "Delta": _json_array(self.Delta_H),
            "eta": _json_array(self.eta_H),
            "eps": _json_array(self.eps_H),
            "antipode": _json_array(self.antipode_H),
            "omega": _json_array(self.omega),
            "T": _json_array(self.T_H),
            "Sigma": _json_array(self.Sigma_matrix()),
            "checks": self.checks.to_json(),
        }
        if self.mu is not None:
            out["mu"] = _json_array(self.mu)
        if self.S_H is not None:
            out["S"] = _json_array(self.S_H)
        return out


def coadjoint_action(h: HopfAlgebraSC) -> np.ndarray:
    """(e_i |> phi)(e_k) = sum phi(S(e_i1) e_k e_i2)."""
    A = np.einsum("ipq,pr,rks,sqt->ikt", h.Delta, h.antipode, h.m, h.m)
    return simplify(A)


def _family_delta(h, X: Module, state):
    """(iota_X (x) iota_X) o (id (x) b_X (x) id), axes (X*, X)."""
    nb = state.ndim - 2
    # b_X = sum_i e_i (x) e^i, inserted as axes (i, i') after (f, x)
    s = np.multiply.outer(state, np.eye(X.n, dtype=object))
    s = _iota(s, (nb, nb + 2), X)  # (.., x, i', k1)
    s = _iota(s, (nb + 1, nb), X)  # (.., k1, k2)
    return s


def _family_eps(h, X: Module, state):
    nb = state.ndim - 2
    return _eval(state, (nb, nb + 1))


def _family_product(h, qt, Rinv, X: Module, Y: Module, state, braiding: str):
    """iota_{Y (x) X} o (gamma (x) id) o (id_{X*} (x) c), axes (X*, X, Y*, Y)."""
    nb = state.ndim - 4
    Yd = dual_module(h, Y)
    if braiding == "c":
        # c_{X, Y* (x) Y}: x (x) w -> R2.w (x) R1.x
        Z = np.einsum("ij,jpq->ipq", qt.R, h.Delta)
        s = _apply_element(state, Z, [X, Yd, Y], [nb + 1, nb + 2, nb + 3])
    else:
        # c^{-1}_{Y* (x) Y, X}: x (x) w -> Rbar1.w (x) Rbar2.x
        Z = np.einsum("ij,ipq->pqj", Rinv, h.Delta)
        s = _apply_element(state, Z, [Yd, Y, X], [nb + 2, nb + 3, nb + 1])
    # reorder to (X*, Y*, Y, X)
    s = np.moveaxis(s, nb + 1, nb + 3)
    # gamma: f (x) g -> (y (x) x -> g(y) f(x)); basis of (Y (x) X)* indexed by (y, x)
    s = np.moveaxis(s, nb, nb + 1)  # (Y*, X*, Y, X)
    sh = s.shape
    s = s.reshape(sh[:nb] + (Y.n * X.n, Y.n * X.n))
    return _iota(s, (nb, nb + 1), tensor_module(h, Y, X))


def _family_omega(h, qt, X: Module, Y: Module, state):
    """(d_X (x) d_Y) o (id (x) c_{Y*,X} c_{X,Y*} (x) id)."""
    nb = state.ndim - 4
    Yd = dual_module(h, Y)
    Q = h.algebra.mul2(qt.R21, qt.R)
    s = _apply_element(state, Q, [X, Yd], [nb + 1, nb + 2])
    s = _eval(s, (nb + 2, nb + 3))
    return _eval(s, (nb, nb + 1))


def _family_sigma(h, qt, X: Module, Y: Module, state):
    """(d_X (x) iota_Y) o (id (x) c_{Y*,X} c_{X,Y*} (x) id)."""
    nb = state.ndim - 4
    Yd = dual_module(h, Y)
    Q = h.algebra.mul2(qt.R21, qt.R)
    s = _apply_element(state, Q, [X, Yd], [nb + 1, nb + 2])
    s = _iota(s, (nb + 2, nb + 3), Y)
    return _eval(s, (nb, nb + 1))


def _family_twist(h, qt, vinv, X: Module, state):
    nb = state.ndim - 2
    s = _apply(state, nb + 1, X.act(vinv))
    return _iota(s, (nb, nb + 1), X)


def _family_unit(h):
    one = trivial_module(h)
    return _iota(np.ones((1, 1), dtype=object), (0, 1), one)


def _convolution_inverse(d: int, m: np.ndarray, Delta: np.ndarray, eta: np.ndarray, eps: np.ndarray) -> np.ndarray | None:
    """The unique A with m (A (x) id) Delta = eta eps, or None."""
    rows = []
    rhs = []
    for i in range(d):
        for k in range(d):
            # sum_{a,b} Delta[i,a,b] A[a,c] m[c,b,k]
            coeff = np.einsum("ab,cb->ac", Delta[i], m[:, :, k])
            rows.append(list(coeff.flat))
            rhs.append(eps[i] * eta[k])
    sol = linalg.solve(rows, rhs)
    if sol is None:
        return None
    return exact_array(sol).reshape(d, d)


def _invariant(action: np.ndarray, eps: np.ndarray, phi: np.ndarray) -> bool:
    return all(first_difference(simplify(action[i].dot(phi)), simplify(eps[i] * phi)) is None
               for i in range(len(eps)))


def _sample_modules(h: HopfAlgebraSC) -> list[Module]:
    mods = [trivial_module(h)]
    mods += [Module(r, f"U{i}") for i, r in enumerate(h.simples)]
    return mods


def build_coend(h: HopfAlgebraSC, qt: QuasiTriangular, *, verify: bool = True, braiding: str | None = None) -> CoendHopf:
    """Build every structural morphism from its defining family on the regular module.

    The braided product can use either c_{X, Y* (x) Y} or the inverse braiding
    c^{-1}_{Y* (x) Y, X}; by default the one that makes omega a Hopf pairing is kept.
    """
    if qt is None or qt.v is None:
        raise Degenerate("a ribbon structure is required", None)
    validate_hopf(h).raise_if_failed()
    check_rmatrix(h, qt).raise_if_failed()
    d = h.dim
    H = regular_module(h)
    Rinv = _r_inverse(h, qt.R)
    vinv = h.algebra.inverse(qt.v)
    sec = _section(h)
    sec2 = _pair_section(h)

    Delta_H = simplify(_family_delta(h, H, sec))
    eps_H = simplify(_family_eps(h, H, sec))
    eta_H = simplify(_family_unit(h).reshape(d))
    omega = simplify(_family_omega(h, qt, H, H, sec2))
    Sigma = simplify(_family_sigma(h, qt, H, H, sec2))
    T_H = simplify(_family_twist(h, qt, vinv, H, sec)).T.copy()
    action = coadjoint_action(h)

    options = [braiding] if braiding else ["c", "c_inv"]
    chosen = None
    for opt in options:
        m_H = simplify(_family_product(h, qt, Rinv, H, H, sec2, opt))
        anti = _convolution_inverse(d, m_H, Delta_H, eta_H, eps_H)
        ce = CoendHopf(h, qt, action, m_H, Delta_H, eta_H, eps_H, anti if anti is not None else zeros(d, d),
                       omega, Sigma, T_H, product_braiding=opt)
        if braiding or _hopf_pairing_ok(ce):
            chosen = ce
            break
    if chosen is None:
        # neither option makes omega a Hopf pairing; keep the first and let the checks report it
        m_H = simplify(_family_product(h, qt, Rinv, H, H, sec2, "c"))
        anti = _convolution_inverse(d, m_H, Delta_H, eta_H, eps_H)
        chosen = CoendHopf(h, qt, action, m_H, Delta_H, eta_H, eps_H, anti if anti is not None else zeros(d, d),
                           omega, Sigma, T_H, product_braiding="c")
    ce = chosen
    mu = None
    S_H = None
    try:
        mu = integral_of_coend(ce)
    except DimensionError:
        pass
    # the integral line may carry a nontrivial character; S needs a morphism 1 -> H
    if mu is not None and _invariant(action, h.eps, mu):
        # S_H = Sigma o (id (x) mu)
        S_H = simplify(np.einsum("ijk,j->ki", Sigma, mu))
    ce = CoendHopf(h, qt, action, ce.m_H, Delta_H, eta_H, eps_H, ce.antipode_H, omega, Sigma, T_H,
                   mu, S_H, ce.product_braiding)
    if verify:
        rep = validate_coend(ce)
        object.__setattr__(ce, "checks", rep)
    return ce


# checks ------------------------------------------------------------------------


def _braiding_HH(ce: CoendHopf) -> np.ndarray:
    """c_{H,H} as C[a, b, c, e]: coefficient of e^c (x) e^e in c(e^a (x) e^b)."""
    A = ce.action
    # c(x (x) y) = R2.y (x) R1.x
    return simplify(np.einsum("ij,jcb,iea->abce", ce.qt.R, A, A, optimize=True))


def _invert_4tensor(C: np.ndarray) -> np.ndarray | None:
    d = C.shape[0]
    try:
        inv = linalg.inverse(C.reshape(d * d, d * d).tolist())
    except ZeroDivisionError:
        return None
    return exact_array(inv).reshape(d, d, d, d)


def _pairing_checks(ce: CoendHopf) -> list[tuple[str, bool, object]]:
    w, m, D = ce.omega, ce.m_H, ce.Delta_H
    C = _braiding_HH(ce)
    out = []
    # omega(xy, z) = (omega (x) omega)(id (x) c (x) id)(x (x) y (x) Delta z)
    lhs = np.einsum("abp,pc->abc", m, w)
    rhs = np.einsum("cpq,bpst,as,tq->abc", D, C, w, w, optimize=True)
    out.append(("pairing_product_left", first_difference(lhs, rhs)))
    # omega(x, yz) = (omega (x) omega)(id (x) c^-1 (x) id)(Delta x (x) y (x) z)
    lhs = np.einsum("bcp,ap->abc", m, w)
    Cinv = _invert_4tensor(C)
    if Cinv is None:
        out.append(("pairing_product_right", "braiding not invertible"))
    else:
        rhs = np.einsum("apq,qbst,ps,tc->abc", D, Cinv, w, w, optimize=True)
        out.append(("pairing_product_right", first_difference(lhs, rhs)))
    bad = first_difference(np.einsum("i,ij->j", ce.eta_H, w), ce.eps_H)
    if bad is None:
        bad = first_difference(np.einsum("j,ij->i", ce.eta_H, w), ce.eps_H)
    out.append(("pairing_unit", bad))
    return [(name, wit is None, wit) for name, wit in out]


def _hopf_pairing_ok(ce: CoendHopf) -> bool:
    return all(ok for _, ok, _ in _pairing_checks(ce))


def _pair_action(h: HopfAlgebraSC, act: np.ndarray) -> np.ndarray:
    """Action on H* (x) H* through Delta, index pairs flattened."""
    d = act.shape[1]
    a2 = np.einsum("ipq,pab,qcd->iacbd", h.Delta, act, act, optimize=True)
    return simplify(a2.reshape(h.dim, d * d, d * d))


def _equivariance(ce: CoendHopf) -> list[tuple[str, bool, object]]:
    h = ce.h
    d = ce.dim
    act = ce.action
    a2 = _pair_action(h, act)
    m_col = ce.m_H.reshape(d * d, d).T
    D_col = ce.Delta_H.reshape(d, d * d).T
    A_col = ce.antipode_H.T
    w_row = ce.omega.reshape(d * d)
    S_col = ce.Sigma.reshape(d * d, d).T
    results = []
    names = ["m", "Delta", "eps", "eta", "antipode", "omega", "Sigma", "T"]
    if ce.S_H is not None:
        names += ["S", "mu"]
    for name in names:
        bad = None
        # F o (action on the source) = (action on the target) o F
        for i in range(h.dim):
            e = h.eps[i]
            a = act[i]
            if name == "m":
                x, y = m_col.dot(a2[i]), a.dot(m_col)
            elif name == "Delta":
                x, y = a2[i].dot(D_col), D_col.dot(a)
            elif name == "eps":
                x, y = ce.eps_H.dot(a), e * ce.eps_H
            elif name == "eta":
                x, y = a.dot(ce.eta_H), e * ce.eta_H
            elif name == "antipode":
                x, y = a.dot(A_col), A_col.dot(a)
            elif name == "omega":
                x, y = w_row.dot(a2[i]), e * w_row
            elif name == "Sigma":
                x, y = S_col.dot(a2[i]), a.dot(S_col)
            elif name == "T":
                x, y = a.dot(ce.T_H), ce.T_H.dot(a)
            elif name == "S":
                x, y = a.dot(ce.S_H), ce.S_H.dot(a)
            else:
                x, y = a.dot(ce.mu), e * ce.mu
            if first_difference(simplify(x), simplify(y)) is not None:
                bad = i
                break
        results.append((f"equivariant_{name}", bad is None, bad))
    return results


def _family_checks(ce: CoendHopf) -> list[tuple[str, bool, object]]:
    """F o iota_X = phi_X on the regular module and on the known simple modules."""
    h, qt = ce.h, ce.qt
    d = h.dim
    H = regular_module(h)
    Rinv = _r_inverse(h, qt.R)
    vinv = h.algebra.inverse(qt.v)
    small = _sample_modules(h)
    bad: dict[str, object] = {
        k: None for k in ("iota_equivariant", "dinatural_Delta", "dinatural_eps", "dinatural_T",
                          "dinatural_m", "dinatural_omega", "dinatural_Sigma")
    }

    def note(key, ok, where):
        if not ok and bad[key] is None:
            bad[key] = where

    for X in [H] + small:
        B = _basis_batch(X.n)
        io = _iota(B, (2, 3), X)
        lhs = np.einsum("abi,ijk->abjk", io, ce.Delta_H)
        note("dinatural_Delta", first_difference(simplify(lhs), simplify(_family_delta(h, X, B))) is None, X.name)
        lhs = np.einsum("abi,i->ab", io, ce.eps_H)
        note("dinatural_eps", first_difference(simplify(lhs), simplify(_family_eps(h, X, B))) is None, X.name)
        lhs = np.einsum("abi,ki->abk", io, ce.T_H)
        note("dinatural_T", first_difference(simplify(lhs), simplify(_family_twist(h, qt, vinv, X, B))) is None, X.name)
        rho2 = tensor_module(h, dual_module(h, X), X).rho
        I_col = io.reshape(X.n * X.n, d).T
        for i in range(d):
            ok = first_difference(simplify(I_col.dot(rho2[i])), simplify(ce.action[i].dot(I_col))) is None
            note("iota_equivariant", ok, [X.name, i])
    pairs = [(X, Y) for X in [H] + small for Y in [H] + small if X is not H or Y is not H]
    for X, Y in pairs:
        B = _pair_batch(X.n, Y.n)
        ioX = _iota(_basis_batch(X.n), (2, 3), X)
        ioY = _iota(_basis_batch(Y.n), (2, 3), Y)
        where = [X.name, Y.name]
        lhs = np.einsum("abi,cdj,ijk->abcdk", ioX, ioY, ce.m_H, optimize=True)
        rhs = _family_product(h, qt, Rinv, X, Y, B, ce.product_braiding)
        note("dinatural_m", first_difference(simplify(lhs), simplify(rhs)) is None, where)
        lhs = np.einsum("abi,cdj,ij->abcd", ioX, ioY, ce.omega, optimize=True)
        note("dinatural_omega", first_difference(simplify(lhs), simplify(_family_omega(h, qt, X, Y, B))) is None, where)
        lhs = np.einsum("abi,cdj,ijk->abcdk", ioX, ioY, ce.Sigma, optimize=True)
        note("dinatural_Sigma", first_difference(simplify(lhs), simplify(_family_sigma(h, qt, X, Y, B))) is None, where)
    return [(k, v is None, v) for k, v in bad.items()]


def validate_coend(ce: CoendHopf) -> ValidationReport:
    """Hopf axioms in the braided sense, equivariance, pairing identities and defining families."""
    from .hopf import AlgebraSC, CoalgebraSC, _check_algebra, _check_coalgebra

    rep = ValidationReport()
    _check_algebra(AlgebraSC(ce.m_H, ce.eta_H), rep)
    _check_coalgebra(CoalgebraSC(ce.Delta_H, ce.eps_H), rep)
    m, D = ce.m_H, ce.Delta_H
    C = _braiding_HH(ce)
    # Delta(xy) = (m (x) m)(id (x) c (x) id)(Delta x (x) Delta y)
    lhs = np.einsum("abp,pcd->abcd", m, D)
    rhs = np.einsum("apq,brs,qrtu,ptc,usd->abcd", D, D, C, m, m, optimize=True)
    rep.add("Delta_multiplicative", (w := first_difference(lhs, rhs)) is None, w)
    unit2 = np.einsum("j,k->jk", ce.eta_H, ce.eta_H)
    rep.add("Delta_unital", first_difference(np.einsum("i,ijk->jk", ce.eta_H, D), unit2) is None)
    lhs = np.einsum("abk,k->ab", m, ce.eps_H)
    rep.add("eps_multiplicative", (w := first_difference(lhs, np.einsum("a,b->ab", ce.eps_H, ce.eps_H))) is None, w)
    rep.add("eps_unital", ce.counit(ce.eta_H) == 1)
    A = ce.antipode_H
    target = np.einsum("i,k->ik", ce.eps_H, ce.eta_H)
    left = np.einsum("iab,ac,cbk->ik", D, A, m, optimize=True)
    right = np.einsum("iab,bc,ack->ik", D, A, m, optimize=True)
    rep.add("antipode_left", (w := first_difference(left, target)) is None, w)
    rep.add("antipode_right", (w := first_difference(right, target)) is None, w)
    for name, ok, wit in _equivariance(ce):
        rep.add(name, ok, wit)
    rep.add("omega_symmetric", (w := first_difference(ce.omega, ce.omega.T)) is None, w)
    for name, ok, wit in _pairing_checks(ce):
        rep.add(name, ok, wit)
    # Sigma = (omega (x) id)(id (x) Delta)
    alt = np.einsum("jpk,ip->ijk", D, ce.omega)
    rep.add("Sigma_from_omega", (w := first_difference(ce.Sigma, simplify(alt))) is None, w)
    for name, ok, wit in _family_checks(ce):
        rep.add(name, ok, wit)
    if ce.mu is not None:
        mu_eps = np.einsum("i,k->ik", ce.eps_H, ce.mu)
        lhs = np.einsum("j,ijk->ik", ce.mu, m)
        rep.add("integral_left", (w := first_difference(lhs, mu_eps)) is None, w)
        if linalg.rank(ce.omega.tolist()) == ce.dim:
            rhs = np.einsum("j,jik->ik", ce.mu, m)
            rep.add("integral_two_sided", (w := first_difference(rhs, mu_eps)) is None, w)
    return rep


# derived data --------------------------------------------------------------------


def pairing_omega(ce: CoendHopf) -> tuple[np.ndarray, int, bool]:
    """(omega, rank, symmetric)."""
    r = linalg.rank(ce.omega.tolist())
    return ce.omega, r, first_difference(ce.omega, ce.omega.T) is None


def _integrals(ce: CoendHopf, side: str) -> list:
    d = ce.dim
    m, eps = ce.m_H, ce.eps_H
    rows = []
    for i in range(d):
        for k in range(d):
            if side == "left":
                # e^i mu = eps(e^i) mu
                rows.append([m[i, j, k] - (eps[i] if j == k else 0) for j in range(d)])
            else:
                rows.append([m[j, i, k] - (eps[i] if j == k else 0) for j in range(d)])
    return linalg.nullspace(rows, d)


def integral_of_coend(ce: CoendHopf, side: str = "left") -> np.ndarray:
    basis = _integrals(ce, side)
    if len(basis) != 1:
        raise DimensionError(f"{side} integral space has dimension {len(basis)}", len(basis))
    v = [scalar(x) for x in basis[0]]
    lead = next(x for x in v if x != 0)
    return exact_array([scalar(x / lead) for x in v])


@dataclass(frozen=True, eq=False)
class SL2ZData:
    T: np.ndarray
    S: np.ndarray
    kappa: object
    xi: object
    omega_rank: int

    @property
    def xi_squared(self):
        return scalar(self.xi * self.xi)


def _ratio(a: np.ndarray, b: np.ndarray, what: str):
    """The scalar c with a = c b, or NotProportional."""
    k = next((i for i, x in enumerate(b.flat) if x != 0), None)
    if k is None:
        raise NotProportional(f"{what}: right-hand side vanishes", None)
    c = scalar(a.flat[k] / b.flat[k])
    bad = first_difference(a, simplify(b * c))
    if bad is not None:
        raise NotProportional(f"{what} is not an exact scalar multiple", list(bad))
    return c


def sl2z_data(ce: CoendHopf) -> SL2ZData:
    _, r, _ = pairing_omega(ce)
    if r != ce.dim:
        raise Degenerate(f"omega has rank {r} < {ce.dim}", r)
    if ce.S_H is None:
        raise DimensionError("the coend has no unique integral", None)
    S, T = ce.S_H, ce.T_H
    S2 = simplify(S.dot(S))
    S4 = simplify(S2.dot(S2))
    kappa = _ratio(S4, np.eye(ce.dim, dtype=object), "S^4")
    ST = simplify(S.dot(T))
    ST3 = simplify(ST.dot(ST).dot(ST))
    xi = _ratio(ST3, S2, "(ST)^3")
    return SL2ZData(T, S, kappa, xi, r)


@dataclass(frozen=True, eq=False)
class CharacterVector:
    chi: np.ndarray
    source: str = ""


def characters(ce: CoendHopf, module) -> CharacterVector:
    """chi_U = iota_U o b~_U, with b~_U(1) = sum e^i (x) g^-1 e_i."""
    h = ce.h
    M = module if isinstance(module, Module) else Module(exact_array(module))
    check_module(h, M)
    ginv = h.algebra.inverse(ce.qt.g)
    vec = np.einsum("ab->ab", M.act(ginv).T)  # coordinates (e^i, x) of sum e^i (x) g^-1 e_i
    chi = simplify(_iota(vec.reshape(1, M.n, M.n), (1, 2), M)[0])
    for i in range(h.dim):
        if first_difference(simplify(ce.action[i].dot(chi)), simplify(h.eps[i] * chi)) is not None:
            raise InvalidModule("character is not invariant", i)
    return CharacterVector(chi, M.name)


def character_product_check(ce: CoendHopf, U, V) -> tuple[bool, object]:
    """chi_{U (x) V} = m_H(chi_U (x) chi_V); returns (ok, first differing index)."""
    U = U if isinstance(U, Module) else Module(exact_array(U))
    V = V if isinstance(V, Module) else Module(exact_array(V))
    lhs = characters(ce, tensor_module(ce.h, U, V)).chi
    rhs = simplify(ce.mul(characters(ce, U).chi, characters(ce, V).chi))
    bad = first_difference(lhs, rhs)
    return bad is None, bad


def invariant_subspace(ce: CoendHopf) -> np.ndarray:
    """Basis (rows) of Hom(1, H) = {phi : h |> phi = eps(h) phi}."""
    d = ce.dim
    rows = []
    for i in range(ce.h.dim):
        rows.extend((ce.action[i] - ce.h.eps[i] * np.eye(d, dtype=object)).tolist())
    return exact_array(linalg.nullspace(rows, d)) if rows else np.eye(d, dtype=object)


def restrict(F: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Matrix of F on span(basis rows), column convention: F b_j = sum_i out[i, j] b_i."""
    B = basis.T  # columns are basis vectors
    k = B.shape[1]
    out = zeros(k, k)
    for j in range(k):
        sol = linalg.solve(B.tolist(), list(F.dot(B[:, j])))
        if sol is None:
            raise Degenerate("subspace is not invariant", j)
        out[:, j] = exact_array(sol)
    return out


def center_dimension_check(ce: CoendHopf) -> tuple[int, int]:
    """(dim Z(H), dim of coadjoint-equivariant functionals on H*); these must agree."""
    h = ce.h
    d = h.dim
    rows = []
    for i in range(d):
        # z e_i - e_i z = 0, coordinate k
        for k in range(d):
            rows.append([h.m[j, i, k] - h.m[i, j, k] for j in range(d)])
    dim_center = d - linalg.rank(rows)
    # F: H* -> k with F(h |> phi) = eps(h) F(phi); F is a row vector
    rows = []
    for i in range(d):
        M = ce.action[i] - h.eps[i] * np.eye(ce.dim, dtype=object)
        rows.extend(M.T.tolist())
    dim_hom = ce.dim - linalg.rank(rows)
    return dim_center, dim_hom

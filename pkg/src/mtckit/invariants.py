"""Modular invariants: non-negative integer matrices commuting with S and T.

The search runs in two stages.  First the rational commutant of ``S`` and
``diag(T)`` is computed exactly; every cyclotomic equation splits into one
rational equation per power-basis coordinate.  Then the lattice points of the
slice ``Z_00 = 1`` are enumerated by depth-first branch-and-bound over the free
coordinates of the reduced basis, with every entry boxed by
``0 <= Z_ij <= F * d_i * d_j``.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .cyclotomic import to_complex
from .errors import UnboundedSearch, ValidationFailure
from .fusion import ExpMultiset, exp_of
from .modular_data import ModularData, validate

__all__ = [
    "CommutantBasis",
    "ModularInvariant",
    "InvariantReport",
    "commutant",
    "enumerate_invariants",
    "entry_bounds",
    "is_invariant",
    "report",
    "dumps_reports",
]


@dataclass(frozen=True)
class CommutantBasis:
    """Rational basis of the commutant, in reduced form.

    ``free[j]`` is the flattened index ``i * n + k`` of the entry that equals
    the j-th coordinate: basis element j has a 1 there and a 0 at every other
    free position.
    """

    n: int
    basis: tuple[tuple[Fraction, ...], ...]
    free: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def matrix(self, j: int) -> list[list[Fraction]]:
        v = self.basis[j]
        n = self.n
        return [list(v[i * n:(i + 1) * n]) for i in range(n)]

    def matrices(self) -> list[list[list[Fraction]]]:
        return [self.matrix(j) for j in range(self.dimension)]

    def combine(self, coords: Sequence) -> list[list[Fraction]]:
        n = self.n
        flat = [sum((c * v[e] for c, v in zip(coords, self.basis) if c), Fraction(0)) for e in range(n * n)]
        return [flat[i * n:(i + 1) * n] for i in range(n)]


@dataclass(frozen=True)
class ModularInvariant:
    Z: tuple[tuple[int, ...], ...]

    @property
    def physical(self) -> bool:
        return bool(self.Z) and self.Z[0][0] == 1

    @property
    def flat(self) -> tuple[int, ...]:
        return tuple(x for row in self.Z for x in row)

    def is_permutation(self) -> bool:
        return all(sorted(row) == [0] * (len(row) - 1) + [1] for row in self.Z) and all(
            sum(col) == 1 for col in zip(*self.Z)
        )


@dataclass(frozen=True)
class InvariantReport:
    Z: ModularInvariant
    exp: ExpMultiset
    trace: int
    trace_ZZt: int
    bimodule_algebra_dims: tuple[int, ...]

    @property
    def physical(self) -> bool:
        return self.Z.physical

    def to_json(self) -> dict:
        return {
            "Z": [list(r) for r in self.Z.Z],
            "physical": self.physical,
            "exp": {str(k): v for k, v in sorted(self.exp.entries.items())},
            "trace": self.trace,
            "trace_ZZt": self.trace_ZZt,
            "blocks": list(self.bimodule_algebra_dims),
        }


def commutant(md: ModularData) -> CommutantBasis:
    validate(md).raise_if_failed()
    n = md.rank
    S = md.S
    theta = md.T
    elim = linalg.SparseEliminator(n * n, pivot="max")
    # Z diag(T) = diag(T) Z forces Z_ij = 0 unless theta_i = theta_j
    for i in range(n):
        for j in range(n):
            if theta[i] != theta[j]:
                elim.add({i * n + j: 1})
    order = math.lcm(*(x.order for row in S for x in row))
    coords = [[x.lift(order).coeffs for x in row] for row in S]
    width = len(coords[0][0])
    for i in range(n):
        for j in range(n):
            # (Z S - S Z)_ij = sum_k Z_ik S_kj - S_ik Z_kj
            for e in range(width):
                row: dict[int, Fraction] = {}
                for k in range(n):
                    a = coords[k][j][e]
                    if a:
                        row[i * n + k] = row.get(i * n + k, 0) + a
                    b = coords[i][k][e]
                    if b:
                        row[k * n + j] = row.get(k * n + j, 0) - b
                if any(row.values()):
                    elim.add(row)
    basis = elim.nullspace()
    free = tuple(c for c in range(n * n) if c not in elim.pivot_rows)
    return CommutantBasis(n, tuple(tuple(v) for v in basis), free)


def is_invariant(Z: Sequence[Sequence[int]], md: ModularData) -> bool:
    """Exact check of Z S = S Z and Z diag(T) = diag(T) Z."""
    n = md.rank
    if len(Z) != n or any(len(r) != n for r in Z):
        return False
    S = md.S_matrix()
    if not linalg.mat_equal(linalg.matmul(Z, S), linalg.matmul(S, Z)):
        return False
    return all(not Z[i][j] or md.T[i] == md.T[j] for i in range(n) for j in range(n))


def entry_bounds(md: ModularData, bound_factor: Fraction | int = 1) -> list[list[int]]:
    """floor(F * d_i * d_j) using a rigorous upper enclosure of d_i d_j."""
    n = md.rank
    dims = md.dims
    for i, d in enumerate(dims):
        if d != d.conjugate():
            raise UnboundedSearch(f"dimension d_{i} = {d} is not real", i)
        if not to_complex(d, 20).real_lower > 0:
            raise UnboundedSearch(f"dimension d_{i} = {d} is not positive", i)
    F = Fraction(bound_factor)
    if F <= 0:
        raise ValueError("bound factor must be positive")
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = dims[i] * dims[j] * F
            if prod.is_rational():
                row.append(math.floor(prod.to_fraction()))
            else:
                row.append(int(math.floor(to_complex(prod, 20).real_upper)))
        out.append(row)
    return out


class _Problem:
    """Integer form of the search: entry e equals (sum_j A[e][j] c_j) / L."""

    def __init__(self, cb: CommutantBasis, ub: list[list[int]]):
        n = cb.n
        m = cb.dimension
        L = 1
        for v in cb.basis:
            for x in v:
                L = math.lcm(L, x.denominator)
        self.L = L
        self.m = m
        self.n = n
        self.var_ub = [ub[f // n][f % n] for f in cb.free]
        rows = []
        for e in range(n * n):
            coeffs = tuple(int(cb.basis[j][e] * L) for j in range(m))
            if not any(coeffs):
                continue
            lo_val = L if e == 0 else 0
            hi_val = L if e == 0 else L * ub[e // n][e % n]
            rows.append((coeffs, lo_val, hi_val))
        if not any(cb.basis[j][0] for j in range(m)):
            # Z_00 is identically zero on the commutant, so the physical slice is empty
            rows.append(((0,) * m, L, L))
        self.rows = rows
        # suffix ranges of the not-yet-assigned part of every row
        self.rest_lo = []
        self.rest_hi = []
        self.last = []
        for coeffs, _, _ in rows:
            lo = [0] * (m + 1)
            hi = [0] * (m + 1)
            for j in range(m - 1, -1, -1):
                t = coeffs[j] * self.var_ub[j]
                lo[j] = lo[j + 1] + min(0, t)
                hi[j] = hi[j + 1] + max(0, t)
            self.rest_lo.append(lo)
            self.rest_hi.append(hi)
            self.last.append(max((j for j in range(m) if coeffs[j]), default=-1))
        self.rows_ending = [[r for r, l in enumerate(self.last) if l == j] for j in range(m)]
        self.rows_using = [[r for r, (c, _, _) in enumerate(rows) if c[j]] for j in range(m)]

    def candidates(self, j: int, partial: list[int]) -> range:
        lo, hi = 0, self.var_ub[j]
        for r in self.rows_using[j]:
            coeffs, lo_val, hi_val = self.rows[r]
            a = coeffs[j]
            # lo_val <= partial + a c + rest <= hi_val
            lo_rest = self.rest_lo[r][j + 1]
            hi_rest = self.rest_hi[r][j + 1]
            p = partial[r]
            if a > 0:
                lo = max(lo, -((p + hi_rest - lo_val) // a))
                hi = min(hi, (hi_val - p - lo_rest) // a)
            else:
                lo = max(lo, -((hi_val - p - lo_rest) // -a))
                hi = min(hi, (p + hi_rest - lo_val) // -a)
            if lo > hi:
                return range(0)
        return range(lo, hi + 1)

    def feasible_at_root(self) -> bool:
        return all(
            lo_val <= self.rest_hi[r][0] and self.rest_lo[r][0] <= hi_val
            for r, (_, lo_val, hi_val) in enumerate(self.rows)
        )

    def search(self, prefix: tuple[int, ...] = ()) -> list[tuple[int, ...]]:
        m = self.m
        partial = [0] * len(self.rows)
        for j, c in enumerate(prefix):
            if c not in self.candidates(j, partial):
                return []
            if not self._assign(j, c, partial):
                return []
        if not self.feasible_at_root():
            return []
        out: list[tuple[int, ...]] = []
        coords = list(prefix)

        def rec(j: int) -> None:
            if j == m:
                out.append(tuple(coords))
                return
            for c in self.candidates(j, partial):
                saved = [partial[r] for r in self.rows_using[j]]
                if self._assign(j, c, partial):
                    coords.append(c)
                    rec(j + 1)
                    coords.pop()
                for r, v in zip(self.rows_using[j], saved):
                    partial[r] = v

        rec(len(prefix))
        return out

    def _assign(self, j: int, c: int, partial: list[int]) -> bool:
        for r in self.rows_using[j]:
            partial[r] += self.rows[r][0][j] * c
        L = self.L
        for r in self.rows_ending[j]:
            v = partial[r]
            _, lo_val, hi_val = self.rows[r]
            if v % L or not lo_val <= v <= hi_val:
                return False
        return True

    def first_values(self) -> range:
        if self.m == 0 or not self.feasible_at_root():
            return range(0)
        return self.candidates(0, [0] * len(self.rows))


def _search_subtree(args) -> list[tuple[int, ...]]:
    problem, prefix = args
    return problem.search(prefix)


def enumerate_invariants(
    md: ModularData,
    basis: CommutantBasis | None = None,
    *,
    bound_factor: Fraction | int = 1,
    jobs: int = 1,
) -> list[ModularInvariant]:
    """All physical invariants with 0 <= Z_ij <= F d_i d_j, sorted by flattened Z."""
    cb = basis if basis is not None else commutant(md)
    ub = entry_bounds(md, bound_factor)
    problem = _Problem(cb, ub)
    if problem.m == 0:
        return []
    firsts = list(problem.first_values())
    if jobs > 1 and len(firsts) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_search_subtree, [(problem, (c,)) for c in firsts]))
    else:
        parts = [problem.search((c,)) for c in firsts]
    found = []
    for part in parts:
        for coords in part:
            M = cb.combine(coords)
            Z = tuple(tuple(int(x) for x in row) for row in M)
            found.append(Z)
    found.sort(key=lambda Z: tuple(x for row in Z for x in row))
    out = []
    for Z in found:
        # never trust the search alone
        if not is_invariant(Z, md) or Z[0][0] != 1 or any(x < 0 for row in Z for x in row):
            raise ValidationFailure("search produced a matrix that is not an invariant", [list(r) for r in Z])
        out.append(ModularInvariant(Z))
    return out



def report(Z: ModularInvariant | Sequence[Sequence[int]], md: ModularData | None = None) -> InvariantReport:
    inv = Z if isinstance(Z, ModularInvariant) else ModularInvariant(tuple(tuple(int(x) for x in r) for r in Z))
    if md is not None and md.rank != len(inv.Z):
        raise ValueError("Z and modular data have different rank")
    exp, trace, trace_zzt = exp_of(inv.Z)
    blocks = tuple(sorted((x for row in inv.Z for x in row if x), reverse=True))
    return InvariantReport(inv, exp, trace, trace_zzt, blocks)


def dumps_reports(reports: Iterable[InvariantReport]) -> str:
    return json.dumps([r.to_json() for r in reports], sort_keys=True, indent=1) + "\n"

"""Fusion rings from modular data.

The columns ``S[:, m] / S[0, m]`` are the one-dimensional representations of
the fusion algebra, so the structure constants are the unique numbers with::

    N_ij^k = sum_m S_im S_jm (S^-1)_mk / S_0m

Integrality and positivity are not assumed; they are checked on every entry.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .cyclotomic import Cyclotomic
from .errors import NegativeCoefficient, NotIntegral, ValidationReport
from .modular_data import ModularData, validate

__all__ = ["FusionRing", "ExpMultiset", "verlinde", "characters", "exp_of"]


@dataclass(frozen=True)
class FusionRing:
    N: tuple[tuple[tuple[int, ...], ...], ...]
    dual: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.N)

    def __getitem__(self, ijk: tuple[int, int, int]) -> int:
        i, j, k = ijk
        return self.N[i][j][k]

    def fusion_matrix(self, i: int) -> list[list[int]]:
        """(N_i)_{jk} = N_ij^k."""
        return [list(row) for row in self.N[i]]

    def check(self, dims: Sequence | None = None, exhaustive_limit: int = 12, samples: int = 2000) -> ValidationReport:
        n = self.rank
        N = self.N
        rep = ValidationReport()
        bad = next(((j, k) for j in range(n) for k in range(n) if N[0][j][k] != (j == k)), None)
        rep.add("unit", bad is None, bad)
        bad = next(((i, j, k) for i, j, k in itertools.product(range(n), repeat=3) if N[i][j][k] != N[j][i][k]), None)
        rep.add("commutative", bad is None, bad)
        bad = next(((i, j) for i in range(n) for j in range(n) if N[i][j][0] != (j == self.dual[i])), None)
        rep.add("duality", bad is None, bad)
        if n <= exhaustive_limit:
            quads = itertools.product(range(n), repeat=4)
        else:
            rng = random.Random(0)
            quads = (tuple(rng.randrange(n) for _ in range(4)) for _ in range(samples))
        bad = None
        for i, j, k, l in quads:
            lhs = sum(N[i][j][m] * N[m][k][l] for m in range(n))
            rhs = sum(N[j][k][m] * N[i][m][l] for m in range(n))
            if lhs != rhs:
                bad = (i, j, k, l)
                break
        rep.add("associative", bad is None, bad)
        if dims is not None:
            bad = next(
                ((i, j) for i in range(n) for j in range(n)
                 if sum((N[i][j][k] * dims[k] for k in range(n)), Cyclotomic.rational(0)) != dims[i] * dims[j]),
                None,
            )
            rep.add("dimension_homomorphism", bad is None, bad)
        return rep

    def to_json(self) -> dict:
        n = self.rank
        entries = {
            f"{i},{j},{k}": self.N[i][j][k]
            for i, j, k in itertools.product(range(n), repeat=3)
            if self.N[i][j][k]
        }
        return {"N": entries}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1) + "\n"


def characters(md: ModularData) -> list[list[Cyclotomic]]:
    """Lambda[i][m] = S_im / S_0m; column m is the m-th character of the fusion algebra."""
    validate(md).raise_if_failed()
    n = md.rank
    inv0 = [md.S[0][m].inverse() for m in range(n)]
    return [[md.S[i][m] * inv0[m] for m in range(n)] for i in range(n)]


def verlinde(md: ModularData) -> FusionRing:
    validate(md).raise_if_failed()
    n = md.rank
    S = md.S_matrix()
    Sinv = linalg.inverse(S)
    inv0 = [S[0][m].inverse() for m in range(n)]
    # W[m][k] = (S^-1)_mk / S_0m
    W = [[Sinv[m][k] * inv0[m] for k in range(n)] for m in range(n)]
    N = []
    for i in range(n):
        plane = []
        for j in range(n):
            row = []
            for k in range(n):
                acc = Cyclotomic.rational(0)
                for m in range(n):
                    acc = acc + S[i][m] * S[j][m] * W[m][k]
                if not acc.is_integer():
                    raise NotIntegral(f"N_{i}{j}^{k} = {acc} is not an integer", (i, j, k))
                v = acc.to_fraction()
                if v < 0:
                    raise NegativeCoefficient(f"N_{i}{j}^{k} = {v} is negative", (i, j, k))
                row.append(int(v))
            plane.append(tuple(row))
        N.append(tuple(plane))
    dual = tuple(next(j for j in range(n) if N[i][j][0]) for i in range(n))
    return FusionRing(tuple(N), dual)


@dataclass(frozen=True)
class ExpMultiset:
    entries: dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def elements(self) -> list[int]:
        return [i for i in sorted(self.entries) for _ in range(self.entries[i])]


def exp_of(Z: Sequence[Sequence[int]]) -> tuple[ExpMultiset, int, int]:
    """Exponents {i with multiplicity Z_ii}, together with tr Z and tr Z Z^t."""
    n = len(Z)
    if any(len(row) != n for row in Z):
        raise ValueError("Z must be square")
    entries = {i: int(Z[i][i]) for i in range(n) if Z[i][i]}
    trace = sum(int(Z[i][i]) for i in range(n))
    trace_zzt = sum(int(x) * int(x) for row in Z for x in row)
    return ExpMultiset(entries), trace, trace_zzt

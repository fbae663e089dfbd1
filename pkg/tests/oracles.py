"""Reference computations that share no code with the package.

Run as a script to regenerate ``tests/data/sl2_invariant_counts.json``.
"""

from __future__ import annotations

import cmath
import json
import math
import sys
from pathlib import Path

import mpmath

DATA = Path(__file__).parent / "data" / "sl2_invariant_counts.json"


def clebsch_gordan(k: int) -> list[list[list[int]]]:
    """Truncated tensor product rules of sl2 at level k (labels = twice the spin)."""
    n = k + 1
    N = [[[0] * n for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            for c in range(abs(a - b), min(a + b, 2 * k - a - b) + 1, 2):
                N[a][b][c] = 1
    return N


def sl2_numeric(k: int, dps: int | None = None):
    """S (unnormalised, S_00 = 1) and T of sl2 level k from the sine formula."""
    n = k + 1
    h = k + 2
    if dps is None:
        s0 = math.sin(math.pi / h)
        S = [[math.sin(math.pi * (a + 1) * (b + 1) / h) / s0 for b in range(n)] for a in range(n)]
        T = [cmath.exp(2j * math.pi * a * (a + 2) / (4 * h)) for a in range(n)]
        return S, T
    with mpmath.workdps(dps):
        s0 = mpmath.sin(mpmath.pi / h)
        S = [[mpmath.sin(mpmath.pi * (a + 1) * (b + 1) / h) / s0 for b in range(n)] for a in range(n)]
    return S, None


def sl2_twist_classes(k: int) -> list[int]:
    """theta_a = theta_b iff a(a+2) = b(b+2) mod 4(k+2)."""
    h4 = 4 * (k + 2)
    return [a * (a + 2) % h4 for a in range(k + 1)]


def brute_force_invariants(k: int, margin: float = 1e-6) -> list[tuple[tuple[int, ...], ...]]:
    """Every Z >= 0 with Z_00 = 1, Z_ij <= ceil(d_i d_j), Z_ij = 0 unless theta_i = theta_j,
    and Z S = S Z.  Float pruning, then re-checked at 50 digits; exact re-verification
    is left to the caller."""
    S, _ = sl2_numeric(k)
    n = k + 1
    cls = sl2_twist_classes(k)
    d = S[0]
    cells = [(i, j) for i in range(n) for j in range(n) if cls[i] == cls[j]]
    ub = {(i, j): (1 if (i, j) == (0, 0) else math.ceil(d[i] * d[j] - 1e-9)) for i, j in cells}
    lb = {c: (1 if c == (0, 0) else 0) for c in cells}
    # equation (a, b): sum_k Z_ak S_kb - S_ak Z_kb = 0, as {cell: coefficient}
    eqs = []
    for a in range(n):
        for b in range(n):
            coeff: dict = {}
            for c in range(n):
                if (a, c) in ub:
                    coeff[(a, c)] = coeff.get((a, c), 0.0) + S[c][b]
                if (c, b) in ub:
                    coeff[(c, b)] = coeff.get((c, b), 0.0) - S[a][c]
            coeff = {x: v for x, v in coeff.items() if abs(v) > 1e-12}
            if coeff:
                eqs.append(coeff)
    # order cells so that equations close as early as possible
    order: list = []
    remaining = set(cells)
    while remaining:
        best = min(
            remaining,
            key=lambda c: (min((len(set(e) - set(order) - {c}) for e in eqs if c in e), default=0), c),
        )
        order.append(best)
        remaining.remove(best)
    pos = {c: t for t, c in enumerate(order)}
    m = len(order)
    eq_terms = [sorted(((pos[c], v) for c, v in e.items())) for e in eqs]
    uses = [[] for _ in range(m)]
    for r, terms in enumerate(eq_terms):
        for t, v in terms:
            uses[t].append((r, v))
    rest_lo = []
    rest_hi = []
    for terms in eq_terms:
        lo = [0.0] * (m + 1)
        hi = [0.0] * (m + 1)
        coeff = dict(terms)
        for t in range(m - 1, -1, -1):
            v = coeff.get(t, 0.0)
            c = order[t]
            a, b = v * lb[c], v * ub[c]
            lo[t] = lo[t + 1] + min(a, b)
            hi[t] = hi[t + 1] + max(a, b)
        rest_lo.append(lo)
        rest_hi.append(hi)
    partial = [0.0] * len(eqs)
    values = [0] * m
    found = []

    def rec(t: int) -> None:
        if t == m:
            found.append(list(values))
            return
        c = order[t]
        for x in range(lb[c], ub[c] + 1):
            ok = True
            for r, v in uses[t]:
                partial[r] += v * x
            for r, v in uses[t]:
                p = partial[r]
                if p + rest_lo[r][t + 1] > margin or p + rest_hi[r][t + 1] < -margin:
                    ok = False
                    break
            if ok:
                values[t] = x
                rec(t + 1)
            for r, v in uses[t]:
                partial[r] -= v * x

    rec(0)
    Smp, _ = sl2_numeric(k, dps=50)
    out = []
    for vals in found:
        Z = [[0] * n for _ in range(n)]
        for c, x in zip(order, vals):
            Z[c[0]][c[1]] = x
        with mpmath.workdps(50):
            err = max(
                abs(sum(Z[a][c] * Smp[c][b] - Smp[a][c] * Z[c][b] for c in range(n)))
                for a in range(n)
                for b in range(n)
            )
        if err < mpmath.mpf(10) ** -40:
            out.append(tuple(tuple(r) for r in Z))
    out.sort(key=lambda Z: tuple(x for r in Z for x in r))
    return out


def main(levels=range(0, 11)) -> None:
    counts = {}
    for k in levels:
        res = brute_force_invariants(k)
        counts[str(k)] = {"count": len(res), "invariants": [[list(r) for r in Z] for Z in res]}
        print(k, len(res), file=sys.stderr)
    DATA.parent.mkdir(exist_ok=True)
    DATA.write_text(json.dumps(counts, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()

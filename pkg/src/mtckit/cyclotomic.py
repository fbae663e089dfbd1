"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element of order ``N`` is stored in the power basis ``1, z, ..., z^(f-1)``
with ``z = exp(2 pi i / N)`` and ``f = phi(N)``, i.e. as a polynomial reduced
modulo the N-th cyclotomic polynomial.  Coefficients are kept as a tuple of
integers over one positive common denominator, which is much faster than a
tuple of ``Fraction`` objects.

Elements of different orders combine by lifting both operands to the lcm of
their orders.  Equality is decided exactly after lifting, so the stored order
is an implementation detail; :meth:`Cyclotomic.canonical` gives the unique
representative of minimal order, which is what gets serialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Iterable, Mapping, Union

import mpmath

__all__ = [
    "Cyclotomic",
    "ComplexInterval",
    "add",
    "mul",
    "inverse",
    "conjugate",
    "to_complex",
    "zeta",
    "as_cyclotomic",
    "euler_phi",
    "cyclotomic_polynomial",
]

Scalar = Union["Cyclotomic", int, Fraction]


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def _moebius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # den is monic; coefficients low -> high
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + dn]
        out[k] = c
        if c:
            for j, dj in enumerate(den):
                num[k + j] -= c * dj
    assert not any(num), "inexact cyclotomic polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Sparse reductions of x^k mod Phi_n for 0 <= k < n."""
    f = euler_phi(n)
    phi_poly = cyclotomic_polynomial(n)
    rows = []
    cur = [0] * f
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple((i, c) for i, c in enumerate(cur) if c))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(f):
                cur[j] -= top * phi_poly[j]
    return tuple(rows)


@lru_cache(maxsize=None)
def _unit_group(n: int) -> tuple[int, ...]:
    return tuple(k for k in range(1, n + 1) if gcd(k, n) == 1)


def _normalize(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        nums = [-c for c in nums]
        den = -den
    g = gcd(den, *nums)
    if g != 1:
        nums = [c // g for c in nums]
        den //= g
    return tuple(nums), den


def _exponent_map(nums: tuple[int, ...], n: int, m: int, scale: int) -> list[int]:
    """Send z_n^e to z_m^(scale * e mod m) and reduce modulo Phi_m."""
    tab = _power_table(m)
    out = [0] * euler_phi(m)
    for e, c in enumerate(nums):
        if c:
            for idx, r in tab[(e * scale) % m]:
                out[idx] += c * r
    return out


class Cyclotomic:
    """Immutable element of Q(zeta_N).

    >>> z3 = Cyclotomic.zeta(3)
    >>> z3 + z3**2 == -1
    True
    """

    __slots__ = ("_order", "_nums", "_den", "_canonical")

    def __init__(self, order: int, coeffs: Iterable[Rational | str] = ()):
        order = int(order)
        if order < 1:
            raise ValueError("order must be positive")
        values = [Fraction(c) for c in coeffs]
        f = euler_phi(order)
        if len(values) != f:
            raise ValueError(f"expected {f} coefficients for order {order}, got {len(values)}")
        den = 1
        for v in values:
            den = _lcm(den, v.denominator)
        nums = [v.numerator * (den // v.denominator) for v in values]
        self._order = order
        self._nums, self._den = _normalize(nums, den)
        self._canonical = None

    @classmethod
    def _raw(cls, order: int, nums, den: int = 1) -> Cyclotomic:
        obj = object.__new__(cls)
        obj._order = order
        obj._nums, obj._den = _normalize(list(nums), den)
        obj._canonical = None
        return obj

    # constructors -----------------------------------------------------

    @classmethod
    def zeta(cls, n: int, power: int = 1) -> Cyclotomic:
        """The root of unity exp(2 pi i power / n)."""
        nums = [0] * euler_phi(n)
        for idx, r in _power_table(n)[power % n]:
            nums[idx] += r
        return cls._raw(n, nums)

    @classmethod
    def rational(cls, value: Rational | str) -> Cyclotomic:
        q = Fraction(value)
        return cls._raw(1, [q.numerator], q.denominator)

    @classmethod
    def from_exponents(cls, order: int, terms: Mapping[int, Rational | str]) -> Cyclotomic:
        """Sum of ``c * zeta_order**e`` over ``terms = {e: c}``; any integer exponents."""
        tab = _power_table(order)
        den = 1
        fracs = {int(e) % order: Fraction(0) for e in terms}
        for e, c in terms.items():
            fracs[int(e) % order] += Fraction(c)
        for v in fracs.values():
            den = _lcm(den, v.denominator)
        nums = [0] * euler_phi(order)
        for e, v in fracs.items():
            c = v.numerator * (den // v.denominator)
            if c:
                for idx, r in tab[e]:
                    nums[idx] += c * r
        return cls._raw(order, nums, den)

    # basic accessors ------------------------------------------------------

    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._nums)

    def is_zero(self) -> bool:
        return not any(self._nums)

    def __bool__(self) -> bool:
        return any(self._nums)

    def is_rational(self) -> bool:
        # the power basis starts with 1, so rational <=> higher coefficients vanish
        return not any(self._nums[1:])

    def is_integer(self) -> bool:
        return self.is_rational() and self._nums[0] % self._den == 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self._nums[0], self._den)

    def lift(self, order: int) -> Cyclotomic:
        if order == self._order:
            return self
        if order % self._order:
            raise ValueError(f"cannot lift order {self._order} to {order}")
        return Cyclotomic._raw(order, self._nums_at(order), self._den)

    # arithmetic -----------------------------------------------------------

    def _nums_at(self, order: int):
        # unnormalised lift, shares the denominator of self
        if order == self._order:
            return self._nums
        return _exponent_map(self._nums, self._order, order, order // self._order)

    def _common(self, other: Cyclotomic):
        if self._order == other._order:
            return self._order, self._nums, other._nums
        m = _lcm(self._order, other._order)
        return m, self._nums_at(m), other._nums_at(m)

    def __add__(self, other: Scalar) -> Cyclotomic:
        if isinstance(other, int) and other == 0:
            return self
        other = as_cyclotomic(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        m, a, b = self._common(other)
        da, db = self._den, other._den
        if da == db:
            nums = [x + y for x, y in zip(a, b)]
            return Cyclotomic._raw(m, nums, da)
        nums = [x * db + y * da for x, y in zip(a, b)]
        return Cyclotomic._raw(m, nums, da * db)

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic._raw(self._order, [-c for c in self._nums], self._den)

    def __pos__(self) -> Cyclotomic:
        return self

    def __sub__(self, other: Scalar) -> Cyclotomic:
        other = as_cyclotomic(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> Cyclotomic:
        return (-self) + other

    def __mul__(self, other: Scalar) -> Cyclotomic:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Cyclotomic._raw(1, [0])
            if other == 1:
                return self
            q = Fraction(other)
            return Cyclotomic._raw(
                self._order, [c * q.numerator for c in self._nums], self._den * q.denominator
            )
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if other._order == 1:
            return self * Fraction(other._nums[0], other._den)
        if self._order == 1:
            return other * Fraction(self._nums[0], self._den)
        m, a, b = self._common(other)
        f = len(a)
        prod = [0] * (2 * f - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        res = prod[:f]
        tab = _power_table(m)
        for k in range(f, 2 * f - 1):
            c = prod[k]
            if c:
                for idx, r in tab[k % m]:
                    res[idx] += c * r
        return Cyclotomic._raw(m, res, self._den * other._den)

    __rmul__ = __mul__

    def galois(self, k: int) -> Cyclotomic:
        """Image under the automorphism zeta_N -> zeta_N**k (k coprime to N)."""
        n = self._order
        if gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit modulo {n}")
        return Cyclotomic._raw(n, _exponent_map(self._nums, n, n, k), self._den)

    def conjugate(self) -> Cyclotomic:
        return self.galois(-1)

    def norm(self) -> Fraction:
        """Field norm from Q(zeta_N) down to Q."""
        return (self * self._norm_cofactor()).to_fraction()

    def _norm_cofactor(self) -> Cyclotomic:
        acc = Cyclotomic._raw(self._order, [1] + [0] * (len(self._nums) - 1))
        for k in _unit_group(self._order):
            if k % self._order != 1 % self._order:
                acc = acc * self.galois(k)
        return acc

    def inverse(self) -> Cyclotomic:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic")
        if self.is_rational():
            return Cyclotomic.rational(1 / Fraction(self._nums[0], self._den))
        co = self._norm_cofactor()
        n = (self * co).to_fraction()
        return co * (1 / n)

    def __truediv__(self, other: Scalar) -> Cyclotomic:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        other = as_cyclotomic(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> Cyclotomic:
        return as_cyclotomic(other) * self.inverse()

    def __pow__(self, exponent: int) -> Cyclotomic:
        if not isinstance(exponent, int):
            return NotImplemented
        base = self
        if exponent < 0:
            base, exponent = self.inverse(), -exponent
        result = Cyclotomic.rational(1)
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    # comparison and hashing -------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._nums[0], self._den) == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if self._order == other._order:
            return self._den == other._den and self._nums == other._nums
        _, a, b = self._common(other)
        return self._den == other._den and list(a) == list(b)

    def __hash__(self) -> int:
        # The normalised trace Tr(x)/[K:Q] does not depend on the field K
        # containing x, so it is compatible with equality across orders.
        n = self._order
        acc = Fraction(0)
        for e, c in enumerate(self._nums):
            if c:
                m = n // gcd(n, e)
                acc += Fraction(c * _moebius(m), euler_phi(m))
        return hash(acc / self._den)

    # canonical (minimal order) representative ---------------------------

    def canonical(self) -> Cyclotomic:
        """Same value expressed in the smallest possible order."""
        if self._canonical is None:
            self._canonical = self._find_canonical()
        return self._canonical

    def _find_canonical(self) -> Cyclotomic:
        n = self._order
        if self.is_rational():
            return Cyclotomic._raw(1, [self._nums[0]], self._den)
        for d in _divisors(n)[1:]:
            if d == n:
                return self
            # membership test: fixed by every automorphism that is trivial on Q(zeta_d)
            fixed = all(
                self.galois(k) == self for k in _unit_group(n) if k % d == 1 % d and k != 1
            )
            if not fixed:
                continue
            sol = _solve_descent(self, d)
            if sol is not None:
                return sol
        return self

    # numerics ---------------------------------------------------------

    def to_complex(self, digits: int = 15) -> ComplexInterval:
        return to_complex(self, digits)

    def __complex__(self) -> complex:
        mid = to_complex(self, 17).mid
        return complex(float(mid.real), float(mid.imag))

    def __repr__(self) -> str:
        return f"Cyclotomic({self._order}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        c = self.canonical()
        if c._order == 1:
            return str(Fraction(c._nums[0], c._den))
        terms = []
        for e, q in enumerate(c.coeffs):
            if not q:
                continue
            mono = "1" if e == 0 else (f"z{c._order}" if e == 1 else f"z{c._order}^{e}")
            if e == 0:
                terms.append(str(q))
            elif q == 1:
                terms.append(mono)
            elif q == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{q}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    # serialization ----------------------------------------------------

    def to_json(self) -> dict:
        c = self.canonical()
        coeffs = {}
        for e, q in enumerate(c.coeffs):
            if q:
                coeffs[str(e)] = f"{q.numerator}/{q.denominator}"
        return {"order": c._order, "coeffs": coeffs}

    @classmethod
    def from_json(cls, obj) -> Cyclotomic:
        if isinstance(obj, (int, str)):
            return cls.rational(obj)
        return cls.from_exponents(int(obj["order"]), {int(e): v for e, v in obj["coeffs"].items()})


def _solve_descent(x: Cyclotomic, d: int) -> Cyclotomic | None:
    """Coordinates of x in Q(zeta_d), or None when x lies outside it."""
    n = x.order
    fd = euler_phi(d)
    cols = [Cyclotomic.zeta(d, j)._nums_at(n) for j in range(fd)]
    rows = [[Fraction(cols[j][i]) for j in range(fd)] + [Fraction(x._nums[i], x._den)]
            for i in range(len(x._nums))]
    # plain Gauss-Jordan on the augmented system
    piv_row = 0
    pivots = []
    for col in range(fd):
        r = next((i for i in range(piv_row, len(rows)) if rows[i][col]), None)
        if r is None:
            continue
        rows[piv_row], rows[r] = rows[r], rows[piv_row]
        p = rows[piv_row][col]
        rows[piv_row] = [v / p for v in rows[piv_row]]
        for i in range(len(rows)):
            if i != piv_row and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[piv_row])]
        pivots.append(col)
        piv_row += 1
    if any(row[-1] for row in rows[piv_row:]):
        return None
    sol = [Fraction(0)] * fd
    for i, col in enumerate(pivots):
        sol[col] = rows[i][-1]
    return Cyclotomic(d, sol)


def as_cyclotomic(value, strict: bool = True):
    if isinstance(value, Cyclotomic):
        return value
    if isinstance(value, (int, Fraction)):
        return Cyclotomic.rational(value)
    if strict:
        raise TypeError(f"cannot interpret {type(value).__name__} as a cyclotomic number")
    return NotImplemented


def zeta(n: int, power: int = 1) -> Cyclotomic:
    return Cyclotomic.zeta(n, power)


def _upper(x) -> mpmath.mpf:
    return mpmath.mpf(x._mpi_[1])


def _ends(x) -> tuple[mpmath.mpf, mpmath.mpf, int]:
    """Exact endpoints of an interval and a working precision that holds them."""
    lo, hi = x._mpi_
    prec = max(lo[3], hi[3], 53) + 8
    with mpmath.workprec(prec):
        return mpmath.mpf(lo), mpmath.mpf(hi), prec


@dataclass(frozen=True)
class ComplexInterval:
    """Rectangular enclosure ``real x imag`` of a complex number."""

    real: mpmath.ctx_iv.ivmpf
    imag: mpmath.ctx_iv.ivmpf

    @property
    def mid(self) -> mpmath.mpc:
        parts = []
        for x in (self.real, self.imag):
            lo, hi, prec = _ends(x)
            with mpmath.workprec(prec):
                parts.append((lo + hi) / 2)
        return mpmath.mpc(*parts)

    @property
    def radius(self) -> mpmath.mpf:
        out = mpmath.mpf(0)
        for x in (self.real, self.imag):
            lo, hi, prec = _ends(x)
            with mpmath.workprec(prec):
                out = max(out, mpmath.fsub(hi, lo, rounding="u") / 2)
        return out

    @property
    def real_upper(self) -> mpmath.mpf:
        return _upper(self.real)

    @property
    def real_lower(self) -> mpmath.mpf:
        return mpmath.mpf(self.real._mpi_[0])

    def contains(self, z: complex) -> bool:
        z = mpmath.mpc(z)
        return z.real in self.real and z.imag in self.imag


def to_complex(a: Scalar, digits: int = 15) -> ComplexInterval:
    """Rigorous enclosure of the embedding zeta_N -> exp(2 pi i / N), radius <= 10**-digits."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    a = as_cyclotomic(a)
    iv = mpmath.iv
    target = mpmath.mpf(10) ** (-digits)
    prec = int(digits * 3.33) + 30
    saved = iv.prec
    while True:
        iv.prec = prec
        try:
            re = iv.mpf(0)
            im = iv.mpf(0)
            for e, c in enumerate(a.coeffs):
                if c:
                    q = iv.mpf(c.numerator) / c.denominator
                    ang = 2 * iv.pi * e / a.order
                    re += q * iv.cos(ang)
                    im += q * iv.sin(ang)
        finally:
            iv.prec = saved
        box = ComplexInterval(re, im)
        if box.radius <= target:
            return box
        prec *= 2


def add(a: Scalar, b: Scalar) -> Cyclotomic:
    return as_cyclotomic(a) + as_cyclotomic(b)


def mul(a: Scalar, b: Scalar) -> Cyclotomic:
    return as_cyclotomic(a) * as_cyclotomic(b)


def inverse(a: Scalar) -> Cyclotomic:
    return as_cyclotomic(a).inverse()


def conjugate(a: Scalar) -> Cyclotomic:
    return as_cyclotomic(a).conjugate()

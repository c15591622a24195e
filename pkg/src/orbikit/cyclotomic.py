"""Exact arithmetic in cyclotomic fields Q(zeta_N) = Q[x]/(Phi_N)."""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Sequence

from .errors import MixedLevelError, PreconditionError

MAX_LEVEL = 360

_lock = threading.Lock()
_phi_cache: dict[int, tuple[int, ...]] = {}
_table_cache: dict[int, tuple[tuple[int, ...], ...]] = {}


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _polydiv_exact(num: list[int], den: Sequence[int]) -> list[int]:
    """Quotient of integer polynomials (low degree first), ``den`` monic, exact division."""
    num = list(num)
    dn = len(den) - 1
    q = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        if c:
            q[k - dn] = c
            for i, d in enumerate(den):
                num[k - dn + i] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return q


def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Coefficients of Phi_N, constant term first."""
    if N < 1:
        raise PreconditionError("cyclotomic level must be >= 1")
    cached = _phi_cache.get(N)
    if cached is not None:
        return cached
    poly = [-1] + [0] * (N - 1) + [1]
    for d in _divisors(N)[:-1]:
        poly = _polydiv_exact(poly, cyclotomic_polynomial(d))
    with _lock:
        return _phi_cache.setdefault(N, tuple(poly))


def _power_table(N: int) -> tuple[tuple[int, ...], ...]:
    """``x^k mod Phi_N`` for ``0 <= k < max(N, 2 deg - 1)`` as integer vectors."""
    cached = _table_cache.get(N)
    if cached is not None:
        return cached
    phi = cyclotomic_polynomial(N)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1) if deg else []
    for _ in range(max(N, 2 * deg - 1)):
        rows.append(tuple(cur))
        # multiply by x and reduce with the monic Phi_N
        top = cur[-1] if deg else 0
        cur = [0] + cur[:-1] if deg else []
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    table = tuple(rows)
    with _lock:
        return _table_cache.setdefault(N, table)


def totient_degree(N: int) -> int:
    return len(cyclotomic_polynomial(N)) - 1


class Cyclo:
    """Element of Q(zeta_N) stored as rational coefficients of ``1, zeta, ..., zeta^(phi(N)-1)``."""

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs: Sequence):
        deg = totient_degree(level)
        c = [Fraction(x) for x in coeffs]
        if len(c) > deg:
            c = _reduce(level, c)
        c += [Fraction(0)] * (deg - len(c))
        self.level = level
        self.coeffs = tuple(c)

    @classmethod
    def zero(cls, N: int) -> "Cyclo":
        return cls(N, ())

    @classmethod
    def one(cls, N: int) -> "Cyclo":
        return cls(N, (1,))

    @classmethod
    def from_int(cls, N: int, k) -> "Cyclo":
        return cls(N, (k,))

    def _check(self, other: "Cyclo"):
        if other.level != self.level:
            raise MixedLevelError(f"levels {self.level} and {other.level} differ")

    def _coerce(self, other) -> "Cyclo":
        if isinstance(other, Cyclo):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclo.from_int(self.level, other)
        return NotImplemented

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        return hash((self.level, self.coeffs))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclo(self.level, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.level, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclo(self.level, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclo(self.level, _mul(self.level, self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        return Cyclo(self.level, _inverse(self.level, self.coeffs))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __pow__(self, k: int) -> "Cyclo":
        base = self if k >= 0 else self.inverse()
        out = Cyclo.one(self.level)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z^{i}")
        return f"Cyclo({self.level}: {' + '.join(terms) or '0'})"


def _reduce(N: int, coeffs: Sequence[Fraction]) -> list[Fraction]:
    table = _power_table(N)
    deg = totient_degree(N)
    out = [Fraction(0)] * deg
    for k, c in enumerate(coeffs):
        if c:
            if k >= len(table):
                # beyond the precomputed table: fold with zeta^N = 1 first
                k %= N
            for i, v in enumerate(table[k]):
                if v:
                    out[i] += c * v
    return out


def _mul(N: int, a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    prod = [Fraction(0)] * max(len(a) + len(b) - 1, 0)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    return _reduce(N, prod)


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, v in enumerate(b):
            a[shift + i] -= c * v
        a.pop()
        _trim(a)
    return q, a


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _inverse(N: int, coeffs: Sequence[Fraction]) -> list[Fraction]:
    """Extended Euclid in Q[x]: find s with s * a = 1 mod Phi_N."""
    r0 = [Fraction(c) for c in cyclotomic_polynomial(N)]
    r1 = _trim(list(coeffs))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        qs = _poly_mul(q, s1)
        s_new = [(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0) for i in range(max(len(s0), len(qs)))]
        r0, r1 = r1, r
        s0, s1 = s1, _trim(s_new)
    c = r1[0]
    return _reduce(N, [x / c for x in s1])


def cyclo_root(N: int, a: int) -> Cyclo:
    """``zeta_N ** a`` reduced mod Phi_N."""
    if N < 1:
        raise PreconditionError("cyclotomic level must be >= 1")
    if N > MAX_LEVEL:
        raise PreconditionError(f"cyclotomic level {N} exceeds the configured bound {MAX_LEVEL}")
    return Cyclo(N, _power_table(N)[a % N])


def evaluate_polynomial(coeffs: Sequence[int], z: Cyclo) -> Cyclo:
    """Horner evaluation of an integer polynomial (constant term first) at ``z``."""
    out = Cyclo.zero(z.level)
    for c in reversed(coeffs):
        out = out * z + c
    return out


def rank_over_cyclotomic(M: Sequence[Sequence[Cyclo]]) -> int:
    """Exact rank by Gaussian elimination with exact zero tests."""
    rows = [list(r) for r in M]
    if not rows or not rows[0]:
        return 0
    levels = {x.level for r in rows for x in r}
    if len(levels) > 1:
        raise MixedLevelError(f"matrix mixes cyclotomic levels {sorted(levels)}")
    (N,) = levels
    return _rank_raw(N, [[list(x.coeffs) for x in r] for r in rows])


def _rank_raw(N: int, rows: list[list[list[Fraction]]]) -> int:
    """Rank of a matrix whose entries are raw coefficient lists at level ``N``."""
    ncols = len(rows[0]) if rows else 0
    rank = 0
    live = [r for r in rows if any(any(e) for e in r)]
    for col in range(ncols):
        piv = next((i for i, r in enumerate(live) if any(r[col])), None)
        if piv is None:
            continue
        prow = live.pop(piv)
        inv = _inverse(N, prow[col])
        prow = [_mul(N, inv, e) if any(e) else e for e in prow]
        rank += 1
        nxt = []
        for r in live:
            f = r[col]
            if any(f):
                r = [
                    [a - b for a, b in zip(r[j], _mul(N, f, prow[j]))] if any(prow[j]) else r[j]
                    for j in range(ncols)
                ]
            if any(any(e) for e in r):
                nxt.append(r)
        live = nxt
        if not live:
            break
    return rank

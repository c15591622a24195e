import cmath
import random
from fractions import Fraction

import mpmath
import pytest
import sympy

from orbikit.cyclotomic import (
    MAX_LEVEL,
    Cyclo,
    cyclo_root,
    cyclotomic_polynomial,
    evaluate_polynomial,
    rank_over_cyclotomic,
    totient_degree,
)
from orbikit.errors import MixedLevelError, PreconditionError

x = sympy.symbols("x")


def rand_elem(rng, N):
    return Cyclo(N, [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(totient_degree(N))])


def to_complex(z):
    w = cmath.exp(2j * cmath.pi / z.level)
    return sum(float(c) * w ** i for i, c in enumerate(z.coeffs))


@pytest.mark.parametrize("N", range(1, 61))
def test_phi_matches_sympy_and_vanishes_at_zeta(N):
    ref = sympy.Poly(sympy.cyclotomic_poly(N, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(N)) == [int(c) for c in ref]
    assert evaluate_polynomial(cyclotomic_polynomial(N), cyclo_root(N, 1)).is_zero()
    # zeta is a primitive N-th root: zeta^N = 1 and zeta^d != 1 for proper divisors
    assert cyclo_root(N, 1) ** N == 1
    for d in range(1, N):
        if N % d == 0:
            assert cyclo_root(N, d) != 1


@pytest.mark.parametrize("N", range(1, 31))
def test_field_axioms(N):
    rng = random.Random(N)
    for _ in range(12):
        a, b, c = (rand_elem(rng, N) for _ in range(3))
        assert a + b == b + a and a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + Cyclo.zero(N) == a and a * Cyclo.one(N) == a
        assert (a - a).is_zero()
        if not a.is_zero():
            assert a * a.inverse() == 1
            assert (b / a) * a == b


@pytest.mark.parametrize("N", [3, 5, 8, 12, 30])
def test_arithmetic_agrees_with_complex_embedding(N):
    rng = random.Random(100 + N)
    for _ in range(10):
        a, b = rand_elem(rng, N), rand_elem(rng, N)
        assert abs(to_complex(a * b) - to_complex(a) * to_complex(b)) < 1e-9
        if not b.is_zero():
            assert abs(to_complex(a / b) - to_complex(a) / to_complex(b)) < 1e-6


def test_bounds_and_mixed_levels():
    with pytest.raises(PreconditionError):
        cyclo_root(MAX_LEVEL + 1, 1)
    with pytest.raises(MixedLevelError):
        Cyclo.one(3) + Cyclo.one(4)
    with pytest.raises(MixedLevelError):
        rank_over_cyclotomic([[Cyclo.one(3), Cyclo.one(4)]])
    with pytest.raises(ZeroDivisionError):
        Cyclo.zero(5).inverse()


def numeric_rank(M):
    mpmath.mp.dps = 40
    A = mpmath.matrix([[mpmath.mpc(to_complex(e)) for e in row] for row in M])
    s = mpmath.svd_c(A, compute_uv=False)
    return sum(1 for v in s if v > 1e-10)


def test_rank_small_example():
    z = cyclo_root(3, 1)
    one = Cyclo.one(3)
    # rows (1, z) and (z, z^2) are proportional
    assert rank_over_cyclotomic([[one, z], [z, z * z]]) == 1
    assert rank_over_cyclotomic([[one, z], [z, one]]) == 2


def test_rank_metamorphic_and_numeric():
    rng = random.Random(5)
    for N in (4, 5, 6, 7, 12):
        for _ in range(6):
            r, m, n = rng.randint(1, 3), rng.randint(2, 5), rng.randint(2, 5)
            B = [[cyclo_root(N, rng.randrange(N)) * rng.randint(-2, 2) for _ in range(r)] for _ in range(m)]
            C = [[cyclo_root(N, rng.randrange(N)) * rng.randint(-2, 2) for _ in range(n)] for _ in range(r)]
            M = [[sum((B[i][k] * C[k][j] for k in range(r)), Cyclo.zero(N)) for j in range(n)] for i in range(m)]
            rk = rank_over_cyclotomic(M)
            assert rk <= r
            assert rk == numeric_rank(M)
            # invertible row operation and row permutation preserve rank
            s = rand_elem(rng, N)
            M2 = [row[:] for row in M]
            M2[0] = [a + s * b for a, b in zip(M2[0], M2[-1])] if m > 1 else M2[0]
            rng.shuffle(M2)
            assert rank_over_cyclotomic(M2) == rk
            # transpose preserves rank
            assert rank_over_cyclotomic([list(c) for c in zip(*M)]) == rk

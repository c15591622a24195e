import random

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from orbikit.abelian import (
    AbelianQuotient,
    Character,
    character_count,
    characters,
    finite_abelian,
    h1,
    matmul,
    pull_back,
    smith_normal_form,
)
from orbikit.errors import InfiniteGroupError, NotHomomorphismError, NotSurjectiveError
from orbikit.fpgroup import OrbicurveSpec, Presentation, Word, free_group, orbicurve_group, seven_line_fixture


def random_matrices(count, seed=20260101):
    rng = random.Random(seed)
    for _ in range(count):
        m, n = rng.randint(1, 12), rng.randint(1, 12)
        sparse = rng.random() < 0.5
        yield [[(rng.randint(-9, 9) if not sparse or rng.random() < 0.3 else 0) for _ in range(n)] for _ in range(m)]


def check_snf(A):
    f = smith_normal_form(A)
    m, n = len(A), len(A[0])
    assert matmul(matmul(f.U, A), f.V) == f.S
    assert abs(sympy.Matrix(f.U).det()) == 1
    assert abs(sympy.Matrix(f.V).det()) == 1
    assert matmul(f.V, f.V_inv) == [[int(i == j) for j in range(n)] for i in range(n)]
    for i in range(m):
        for j in range(n):
            if i != j:
                assert f.S[i][j] == 0
    d = f.diagonal()
    assert all(x >= 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert (b == 0) if a == 0 else b % a == 0
    return d


def test_snf_properties_on_1000_random_matrices():
    for A in random_matrices(1000):
        check_snf(A)


def test_snf_matches_sympy_invariants():
    for A in random_matrices(150, seed=7):
        d = check_snf(A)
        ref = sympy_snf(sympy.Matrix(A), domain=sympy.ZZ)
        ref_d = sorted(abs(int(ref[i, i])) for i in range(min(ref.shape)))
        assert sorted(d) == ref_d


def test_snf_small_example():
    assert smith_normal_form([[2, 0], [0, 3]]).diagonal() == [1, 6]
    assert smith_normal_form([], ncols=3).V == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


@pytest.mark.parametrize(
    "indices,free,torsion",
    [((2, 2, 2), 0, (2, 2)), ((2, 3, 6), 0, (6,)), ((2, 3, 5), 0, ()), ((4, 4, 4, 4), 0, (4, 4, 4))],
)
def test_h1_of_sphere_orbifolds(indices, free, torsion):
    A = h1(orbicurve_group(OrbicurveSpec(0, 0, indices)))
    assert (A.free_rank, A.torsion) == (free, torsion)


def test_h1_examples():
    assert h1(seven_line_fixture()).torsion == (2,) * 6
    A = h1(orbicurve_group(OrbicurveSpec(1, 0, (2, 2))))
    assert (A.free_rank, A.torsion) == (2, (2,))
    assert A.describe() == "Z^2 + Z/2"
    assert h1(Presentation((), ())).describe() == "0"
    assert h1(orbicurve_group(OrbicurveSpec(0, 1, ()))).order == 1


def test_gen_images_respect_relators_and_basis_inverts():
    p = orbicurve_group(OrbicurveSpec(1, 1, (2, 4, 6)))
    A = h1(p)
    for r in p.relators:
        assert not any(A.image(r.exponent_sums(p.ngens)))
    # image of each basis element is the corresponding unit vector
    for i, b in enumerate(A.basis):
        assert A.image(b) == tuple(int(i == k) for k in range(A.rank))


def test_h1_agrees_with_sympy_on_random_presentations():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(1, 6)
        rels = [Word(tuple((rng.randrange(n), rng.randint(-4, 4)) for _ in range(rng.randint(1, 6)))) for _ in range(rng.randint(0, 6))]
        p = Presentation(tuple(f"g{i}" for i in range(n)), tuple(r for r in rels if r))
        A = h1(p)
        M = p.relator_matrix()
        if not M:
            assert A.free_rank == n
            continue
        ref = sympy_snf(sympy.Matrix(M), domain=sympy.ZZ)
        diag = [abs(int(ref[i, i])) for i in range(min(ref.shape))]
        tors = sorted(d for d in diag if d > 1)
        free = n - sum(1 for d in diag if d)
        assert (A.free_rank, sorted(A.torsion)) == (free, tors)


def test_characters_enumeration():
    A = finite_abelian([2, 3])
    assert A.torsion == (6,)
    chars = list(characters(A))
    assert len(chars) == character_count(A) == 6
    assert chars[0].is_trivial
    B = finite_abelian([2, 4])
    exps = [c.exponents for c in characters(B, include_trivial=False)]
    assert exps[0] == (0, 1) and len(exps) == 7
    assert all(c.level == 4 for c in characters(B))
    with pytest.raises(InfiniteGroupError):
        list(characters(h1(free_group(1))))


def test_character_group_law():
    a, b = Character(6, (1, 2)), Character(6, (5, 4))
    assert (a * b).is_trivial
    assert Character(6, (2, 4)).order == 3


def test_quotient_and_pull_back():
    p = orbicurve_group(OrbicurveSpec(0, 0, (2, 3, 6)))
    q = AbelianQuotient.abelianization(p)
    assert q.is_surjective()
    xi = Character(6, (1,))
    assert pull_back(xi, q).exponents == (3, 2, 1)
    q2 = AbelianQuotient.from_images(p, [2, 3], {"x1": [1, 0], "x2": [0, 1], "x3": [1, 2]})
    assert q2.target.torsion == (6,)
    assert q2.is_surjective()
    with pytest.raises(NotHomomorphismError):
        AbelianQuotient.from_images(p, [2], {"x2": [1]})
    bad = AbelianQuotient.from_images(p, [6, 2], {"x1": [3, 0], "x2": [2, 0], "x3": [1, 0]})
    with pytest.raises(NotSurjectiveError):
        bad.require_surjective()

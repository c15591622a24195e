"""First Betti numbers of finite abelian orbifold covers.

The Betti number of the cover is the Betti number of the base plus the sum
of the depths of the nontrivial characters of the deck group.  A brute-force
oracle builds the cover's group by Reidemeister-Schreier and abelianizes it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .abelian import AbelianQuotient, Character, h1
from .alexander import depth_table, fox_jacobian
from .covers import DEFAULT_COSET_LIMIT, reidemeister_schreier, regular_rep
from .errors import ConsistencyError, NambaCriterionError, NotSurjectiveError, PreconditionError
from .fpgroup import OrbicurveSpec

AbelianCoverSpec = AbelianQuotient


@dataclass
class SakumaReport:
    b1_base: int
    depth_table: list[tuple[Character, int]]
    b1_cover: int
    oracle_b1: int | None = None

    @property
    def depth_sum(self) -> int:
        return sum(d for _, d in self.depth_table)

    def check(self) -> "SakumaReport":
        if self.b1_cover != self.b1_base + self.depth_sum:
            raise ConsistencyError("b1 of the cover does not match the depth sum")
        if self.oracle_b1 is not None and self.oracle_b1 != self.b1_cover:
            raise ConsistencyError(f"formula gives b1 = {self.b1_cover}, oracle gives {self.oracle_b1}")
        return self


def oracle_b1(quotient: AbelianQuotient, coset_limit: int = DEFAULT_COSET_LIMIT) -> int:
    """Free rank of H1 of the kernel of the quotient map, via Reidemeister-Schreier."""
    rep = regular_rep(quotient)
    sub = reidemeister_schreier(quotient.presentation, rep, 0, coset_limit)
    return h1(sub).free_rank


def sakuma_b1(
    quotient: AbelianQuotient,
    with_oracle: bool = False,
    jobs: int = 1,
    coset_limit: int = DEFAULT_COSET_LIMIT,
) -> SakumaReport:
    if not quotient.is_surjective():
        raise NotSurjectiveError("the quotient map must be onto the deck group")
    p = quotient.presentation
    b1_base = h1(p).free_rank
    table = depth_table(quotient, jac=fox_jacobian(p), jobs=jobs)
    report = SakumaReport(b1_base, table, b1_base + sum(d for _, d in table))
    if with_oracle:
        report.oracle_b1 = oracle_b1(quotient, coset_limit)
    return report


def namba_uniformizing(indices: Sequence[int]) -> bool:
    """True iff every index divides the lcm of the others."""
    idx = list(indices)
    for i, d in enumerate(idx):
        others = idx[:i] + idx[i + 1 :]
        if math.lcm(1, *others) % d:
            return False
    return True


@dataclass(frozen=True)
class AbelianCoverGenus:
    degree: int
    genus: int


def _abelian_data(indices: Sequence[int]):
    if len(indices) < 2 or any(d < 2 for d in indices):
        raise PreconditionError("need at least two indices, each >= 2")
    D = math.prod(indices)
    d = math.lcm(*indices)
    return D, d


def abelian_cover_genus(indices: Sequence[int]) -> AbelianCoverGenus:
    """Genus of the universal abelian cover of the sphere with the given cone indices.

    Uses ``g = 1 + (D / 2d) * (sum(1 - 1/d_k) - 2)`` with ``D`` the product
    and ``d`` the lcm of the indices; refused unless the cover is a
    uniformization (each index divides the lcm of the others).
    """
    if not namba_uniformizing(indices):
        raise NambaCriterionError(
            f"indices {tuple(indices)}: some index does not divide the lcm of the others, "
            "so the abelian cover still has cone points"
        )
    D, d = _abelian_data(indices)
    g = 1 + Fraction(D, 2 * d) * (sum(1 - Fraction(1, k) for k in indices) - 2)
    if g.denominator != 1:
        raise ConsistencyError(f"non-integral genus {g}")
    return AbelianCoverGenus(D // d, int(g))


def genus_with_constant(indices: Sequence[int], constant: int) -> Fraction:
    """``1 + (D / 2d) * (sum(1 - 1/d_k) - constant)`` for an arbitrary constant.

    ``constant=2`` is the Riemann-Hurwitz value; ``constant=1`` reproduces
    the variant that contradicts Riemann-Hurwitz, kept for comparison.
    """
    D, d = _abelian_data(indices)
    return 1 + Fraction(D, 2 * d) * (sum(1 - Fraction(1, k) for k in indices) - constant)


def riemann_hurwitz_euler(indices: Sequence[int]) -> int:
    """``(1 - n) D/d + sum_k D/(d d_k)`` for ``n + 1`` indices."""
    D, d = _abelian_data(indices)
    n = len(indices) - 1
    chi = (1 - n) * Fraction(D, d) + sum(Fraction(D, d * k) for k in indices)
    return int(chi)


def _abelian_order(indices: Sequence[int]) -> int:
    if not indices:
        return 1
    return math.prod(indices) // math.lcm(*indices)


def length_count_b1(indices: Sequence[int]) -> int:
    """Betti number of the abelianization cover of the sphere with cone indices, by counting.

    Sums ``length(xi) - 2`` over nontrivial characters, where the length is the
    number of cone points with nontrivial character value.  The number of
    characters trivial at point ``k`` is the order of the abelianization with
    that point removed.
    """
    total = _abelian_order(indices)
    s = 0
    for k in range(len(indices)):
        s += total - _abelian_order(list(indices[:k]) + list(indices[k + 1 :]))
    return s - 2 * (total - 1)


def p1_spec(indices: Sequence[int]) -> OrbicurveSpec:
    return OrbicurveSpec(0, 0, tuple(indices))

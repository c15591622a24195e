"""Fox calculus over Z[H1], depth of torsion characters and characteristic varieties."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .abelian import AbelianQuotient, AbelianStructure, Character, characters, h1, pull_back
from .cyclotomic import _power_table, _rank_raw, totient_degree
from .errors import GeneratorMatchError, NotHomomorphismError, TrivialCharacterError
from .fpgroup import Presentation, Word

Monomial = tuple[int, ...]


class LaurentElement(dict):
    """Element of Z[H1]: maps a monomial (H1 coordinates) to a nonzero integer."""

    def add_term(self, mono: Monomial, coeff: int) -> None:
        v = self.get(mono, 0) + coeff
        if v:
            self[mono] = v
        else:
            self.pop(mono, None)

    def __add__(self, other: "LaurentElement") -> "LaurentElement":
        out = LaurentElement(self)
        for m, c in other.items():
            out.add_term(m, c)
        return out

    def times(self, other: "LaurentElement", A: AbelianStructure) -> "LaurentElement":
        out = LaurentElement()
        for m1, c1 in self.items():
            for m2, c2 in other.items():
                out.add_term(A.reduce([a + b for a, b in zip(m1, m2)]), c1 * c2)
        return out

    @classmethod
    def monomial(cls, mono: Monomial, coeff: int = 1) -> "LaurentElement":
        return cls({mono: coeff}) if coeff else cls()


@dataclass
class FoxJacobian:
    """Relators x generators matrix of Fox derivatives pushed to Z[H1]."""

    presentation: Presentation
    abelian: AbelianStructure
    entries: list[list[LaurentElement]]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), self.presentation.ngens

    def generator_monomial(self, j: int) -> Monomial:
        return self.abelian.gen_images[j]

    def evaluate(self, xi: Character) -> list[list[list[int]]]:
        """Entries at a generator-level character as integer coefficient vectors of Q(zeta_N)."""
        A = self.abelian
        N = xi.level
        basis_exp = [sum(b * x for b, x in zip(row, xi.exponents)) % N for row in A.basis]
        table = _power_table(N)
        deg = totient_degree(N)
        out = []
        for row in self.entries:
            vals = []
            for entry in row:
                acc = [0] * deg
                for mono, c in entry.items():
                    k = sum(m * e for m, e in zip(mono, basis_exp)) % N
                    for i, v in enumerate(table[k]):
                        if v:
                            acc[i] += c * v
                vals.append(acc)
            out.append(vals)
        return out


def fox_derivatives(word: Word, A: AbelianStructure, ngens: int) -> list[LaurentElement]:
    """Row of Fox derivatives of one word, using ``d(uv) = du + ab(u) dv``."""
    row = [LaurentElement() for _ in range(ngens)]
    prefix = [0] * A.rank
    for g, s in word.expanded():
        img = A.gen_images[g]
        if s > 0:
            row[g].add_term(A.reduce(prefix), 1)
            prefix = [a + b for a, b in zip(prefix, img)]
        else:
            prefix = [a - b for a, b in zip(prefix, img)]
            row[g].add_term(A.reduce(prefix), -1)
    return row


def fox_jacobian(p: Presentation, A: AbelianStructure | None = None) -> FoxJacobian:
    A = A if A is not None else h1(p)
    return FoxJacobian(p, A, [fox_derivatives(r, A, p.ngens) for r in p.relators])


def fox_identity_residual(jac: FoxJacobian, row: int) -> LaurentElement:
    """``sum_j dr/dx_j (t_j - 1) - (ab(r) - 1)``; zero for a correct Jacobian."""
    A = jac.abelian
    zero = tuple([0] * A.rank)
    acc = LaurentElement()
    for j, entry in enumerate(jac.entries[row]):
        t_minus_1 = LaurentElement({zero: -1})
        t_minus_1.add_term(A.reduce(jac.generator_monomial(j)), 1)
        acc = acc + entry.times(t_minus_1, A)
    r = jac.presentation.relators[row]
    ab_r = A.image(r.exponent_sums(jac.presentation.ngens))
    acc.add_term(ab_r, -1)
    acc.add_term(zero, 1)
    return acc


def _as_jacobian(p: Presentation | FoxJacobian) -> FoxJacobian:
    return p if isinstance(p, FoxJacobian) else fox_jacobian(p)


def _check_character(p: Presentation, xi: Character) -> None:
    if len(xi.exponents) != p.ngens:
        raise ValueError(f"character has {len(xi.exponents)} values for {p.ngens} generators")
    N = xi.level
    for r in p.relators:
        if sum(k * x for k, x in zip(r.exponent_sums(p.ngens), xi.exponents)) % N:
            raise NotHomomorphismError(f"character is nontrivial on relator {r.format(p.generators)}")
    if not any(x % N for x in xi.exponents):
        raise TrivialCharacterError("depth is only defined for nontrivial characters")


def depth(p: Presentation | FoxJacobian, xi: Character) -> int:
    """Depth of a nontrivial torsion character given by its values on the generators.

    Computed as ``ngens - 1 - rank J(xi)`` with ``J(xi)`` the Fox Jacobian
    evaluated at ``xi`` over Q(zeta_N).
    """
    jac = _as_jacobian(p)
    _check_character(jac.presentation, xi)
    M = [r for r in jac.evaluate(xi) if any(any(e) for e in r)]
    rank = _rank_raw(xi.level, M) if M else 0
    return jac.presentation.ngens - 1 - rank


def _depth_chunk(args) -> list[int]:
    jac, quotient, chars = args
    return [depth(jac, pull_back(xi, quotient)) for xi in chars]


def _chunks(seq: list, size: int) -> list[list]:
    return [seq[i : i + size] for i in range(0, len(seq), size)]


def depth_table(
    quotient: AbelianQuotient,
    jac: FoxJacobian | None = None,
    jobs: int = 1,
    chars: Iterable[Character] | None = None,
) -> list[tuple[Character, int]]:
    """Depth of every nontrivial character of the quotient target, in enumeration order.

    With ``jobs > 1`` the sweep is split into chunks evaluated in worker
    processes; results are reassembled in the original order.
    """
    jac = jac or fox_jacobian(quotient.presentation)
    chars = list(chars) if chars is not None else list(characters(quotient.target, include_trivial=False))
    if jobs <= 1 or len(chars) < 2 * jobs:
        return list(zip(chars, _depth_chunk((jac, quotient, chars))))
    size = max(1, len(chars) // (4 * jobs))
    parts = _chunks(chars, size)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = pool.map(_depth_chunk, [(jac, quotient, c) for c in parts])
        depths = [d for chunk in results for d in chunk]
    return list(zip(chars, depths))


def charvar(quotient: AbelianQuotient, k: int, jobs: int = 1, jac: FoxJacobian | None = None) -> list[Character]:
    """Nontrivial characters of the quotient target whose depth is at least ``k``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k >= quotient.presentation.ngens:
        return []
    return [xi for xi, d in depth_table(quotient, jac=jac, jobs=jobs) if d >= k]


@dataclass(frozen=True)
class RestrictionRow:
    character: Character
    depth_orbifold: int
    depth_open: int
    in_orbifold: bool
    in_open: bool

    @property
    def agree(self) -> bool:
        return self.in_orbifold == self.in_open


def open_quotient(
    p_open: Presentation,
    quotient: AbelianQuotient,
    matching: Mapping[str, Word | str] | None = None,
) -> AbelianQuotient:
    """Compose a quotient of the orbifold group with a generator matching from the open group.

    ``matching`` sends each open generator to a word (or generator name) of
    the orbifold presentation; by default generators are matched by name.
    """
    p_orb = quotient.presentation
    matching = matching if matching is not None else {g: g for g in p_open.generators}
    missing = [g for g in p_open.generators if g not in matching]
    extra = [g for g in matching if g not in p_open.generators]
    if missing or extra:
        raise GeneratorMatchError(f"matching misses {missing} / has unknown {extra}")
    images = []
    for g in p_open.generators:
        target = matching[g]
        if isinstance(target, str):
            if target not in p_orb.generators:
                raise GeneratorMatchError(f"{g} is matched to unknown generator {target!r}")
            target = Word.gen(p_orb.index(target))
        if target.max_generator() >= p_orb.ngens:
            raise GeneratorMatchError(f"word for {g} uses unknown generators")
        images.append(quotient.evaluate(target.exponent_sums(p_orb.ngens)))
    try:
        return AbelianQuotient(p_open, quotient.target, tuple(images))
    except NotHomomorphismError as exc:
        raise GeneratorMatchError(f"matched quotient is not defined on the open group: {exc}") from exc


def restriction_report(
    p_orb: Presentation,
    p_open: Presentation,
    quotient: AbelianQuotient,
    k: int,
    matching: Mapping[str, Word | str] | None = None,
    jobs: int = 1,
) -> list[RestrictionRow]:
    """Compare depths of each torsion character in the orbifold group and in the open group.

    This is a diagnostic table; it does not assert that the two
    characteristic varieties coincide.
    """
    if quotient.presentation != p_orb:
        raise GeneratorMatchError("quotient is not defined on the orbifold presentation")
    q_open = open_quotient(p_open, quotient, matching)
    orb = depth_table(quotient, jobs=jobs)
    opn = depth_table(q_open, jobs=jobs)
    return [
        RestrictionRow(xi, d1, d2, d1 >= k, d2 >= k)
        for (xi, d1), (_, d2) in zip(orb, opn)
    ]


def length(values: Sequence[int], level: int) -> int:
    """Number of nontrivial coordinates of a character given by exponents."""
    return sum(1 for v in values if v % level)

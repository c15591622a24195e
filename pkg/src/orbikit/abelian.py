"""Smith normal form, first homology of presentations, and finite-order characters."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .errors import InfiniteGroupError, NotHomomorphismError, NotSurjectiveError
from .fpgroup import Presentation

IntMatrix = list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


@dataclass
class SmithForm:
    """``S = U * A * V`` with ``U``, ``V`` unimodular; ``V_inv`` is ``V^-1``."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    V_inv: IntMatrix

    def diagonal(self) -> list[int]:
        return [self.S[i][i] for i in range(min(len(self.S), len(self.V)))]


def smith_normal_form(A: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    """Smith normal form over the integers with transformation matrices.

    ``ncols`` is only needed for matrices with no rows.  Pivoting always picks
    the nonzero entry of smallest absolute value in the active block.
    """
    S = [[int(x) for x in row] for row in A]
    m = len(S)
    n = len(S[0]) if m else (ncols or 0)
    U = identity(m)
    V = identity(n)
    Vi = identity(n)

    def swap_rows(i, j):
        if i != j:
            S[i], S[j] = S[j], S[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i == j:
            return
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        if q:
            rs, rd = S[src], S[dst]
            for k in range(n):
                if rs[k]:
                    rd[k] -= q * rs[k]
            us, ud = U[src], U[dst]
            for k in range(m):
                if us[k]:
                    ud[k] -= q * us[k]

    def add_col(dst, src, q):  # col dst -= q * col src
        if q:
            for row in S:
                if row[src]:
                    row[dst] -= q * row[src]
            for row in V:
                if row[src]:
                    row[dst] -= q * row[src]
            # inverse op on V^-1: row src += q * row dst
            vd, vs = Vi[dst], Vi[src]
            for k in range(n):
                if vd[k]:
                    vs[k] += q * vd[k]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = S[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, S[i][t] // p)
                    if S[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, S[t][j] // p)
                    if S[t][j]:
                        dirty = True
            if dirty:
                cands = [(abs(S[i][t]), i, t) for i in range(t + 1, m) if S[i][t]]
                cands += [(abs(S[t][j]), t, j) for j in range(t + 1, n) if S[t][j]]
                _, i, j = min(cands)
                if abs(S[i][j]) < abs(p):
                    swap_rows(t, i)
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(S[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, -1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return SmithForm(U, S, V, Vi)


@dataclass(frozen=True)
class AbelianStructure:
    """A finitely generated abelian group ``Z/e1 + ... + Z/ek + Z^free_rank``.

    ``gen_images[j]`` gives the coordinates of generator ``j`` (torsion
    coordinates first, reduced mod ``e_i``); ``basis[i]`` expresses basis
    element ``i`` as an integer combination of the generators.
    """

    free_rank: int
    torsion: tuple[int, ...]
    gen_images: tuple[tuple[int, ...], ...]
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.torsion) + self.free_rank

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        return math.prod(self.torsion) if self.is_finite else None

    @property
    def exponent(self) -> int:
        """lcm of the torsion orders (1 for the trivial group)."""
        return math.lcm(*self.torsion) if self.torsion else 1

    def reduce(self, vec: Sequence[int]) -> tuple[int, ...]:
        t = len(self.torsion)
        return tuple(v % e for v, e in zip(vec[:t], self.torsion)) + tuple(vec[t:])

    def image(self, exponent_sums: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of the class of a word with the given exponent sums."""
        acc = [0] * self.rank
        for j, k in enumerate(exponent_sums):
            if k:
                for i, v in enumerate(self.gen_images[j]):
                    acc[i] += k * v
        return self.reduce(acc)

    def element_order(self, vec: Sequence[int]) -> int | None:
        """Order of an element, ``None`` when it is infinite."""
        t = len(self.torsion)
        if any(vec[t:]):
            return None
        return math.lcm(1, *(e // math.gcd(e, v) for e, v in zip(self.torsion, vec[:t])))

    def describe(self) -> str:
        parts = ([f"Z^{self.free_rank}"] if self.free_rank else []) + [f"Z/{e}" for e in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def _sparse_eliminate(rows: list[dict[int, int]], ncols: int):
    """Eliminate generators through relators with a unit coefficient.

    Returns the remaining rows, the surviving columns and the eliminations
    ``(col, {other_col: coeff})`` in the order they were performed.
    """
    rows = [dict(r) for r in rows if r]
    alive = set(range(len(rows)))
    col_rows: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for c in r:
            col_rows.setdefault(c, set()).add(i)
    eliminated = []
    while True:
        best = None
        for i in alive:
            r = rows[i]
            for c, v in r.items():
                if v in (1, -1):
                    key = (len(r), len(col_rows[c]))
                    if best is None or key < best[0]:
                        best = (key, i, c)
        if best is None:
            break
        _, i, c = best
        pivot_row = rows[i]
        s = pivot_row[c]
        alive.discard(i)
        for k in pivot_row:
            col_rows[k].discard(i)
        for i2 in list(col_rows[c]):
            r2 = rows[i2]
            f = r2[c] * s
            for k, v in pivot_row.items():
                nv = r2.get(k, 0) - f * v
                if nv:
                    if k not in r2:
                        col_rows[k].add(i2)
                    r2[k] = nv
                else:
                    if k in r2:
                        del r2[k]
                        col_rows[k].discard(i2)
            if not r2:
                alive.discard(i2)
        del col_rows[c]
        eliminated.append((c, {k: -s * v for k, v in pivot_row.items() if k != c}))
    gone = {c for c, _ in eliminated}
    remaining_cols = [c for c in range(ncols) if c not in gone]
    return [rows[i] for i in sorted(alive) if rows[i]], remaining_cols, eliminated


def abelian_structure(rows: Sequence[Sequence[int]], ncols: int) -> AbelianStructure:
    """Cokernel of an integer relation matrix (rows are relations among ``ncols`` generators)."""
    sparse = [{j: int(v) for j, v in enumerate(r) if v} for r in rows]
    rest, cols, elims = _sparse_eliminate(sparse, ncols)
    pos = {c: k for k, c in enumerate(cols)}
    dense = [[r.get(c, 0) for c in cols] for r in rest]
    snf = smith_normal_form(dense, ncols=len(cols))
    nr = len(dense)
    diag = [snf.S[k][k] if k < nr else 0 for k in range(len(cols))]
    kept = [k for k, d in enumerate(diag) if d != 1]
    tors = [diag[k] for k in kept if diag[k] > 1]
    free = sum(1 for k in kept if diag[k] == 0)
    mods = [diag[k] for k in kept]

    def reduce(vec):
        return [v % d if d else v for v, d in zip(vec, mods)]

    images: dict[int, list[int]] = {c: reduce([snf.V[pos[c]][k] for k in kept]) for c in cols}
    for c, expr in reversed(elims):
        acc = [0] * len(kept)
        for other, coef in expr.items():
            for i, v in enumerate(images[other]):
                acc[i] += coef * v
        images[c] = reduce(acc)
    basis = []
    for k in kept:
        vec = [0] * ncols
        for c in cols:
            vec[c] = snf.V_inv[k][pos[c]]
        basis.append(tuple(vec))
    return AbelianStructure(
        free_rank=free,
        torsion=tuple(tors),
        gen_images=tuple(tuple(images[c]) for c in range(ncols)),
        basis=tuple(basis),
    )


def h1(p: Presentation) -> AbelianStructure:
    """Abelianization of a finitely presented group."""
    return abelian_structure(p.relator_matrix(), p.ngens)


def finite_abelian(orders: Sequence[int]) -> AbelianStructure:
    """``Z/o1 + ... + Z/ok`` put in invariant-factor form."""
    k = len(orders)
    return abelian_structure([[o if i == j else 0 for j in range(k)] for i, o in enumerate(orders)], k)


@dataclass(frozen=True)
class Character:
    """Character of finite order: basis element ``i`` goes to ``exp(2 pi i c_i / level)``."""

    level: int
    exponents: tuple[int, ...]

    @property
    def is_trivial(self) -> bool:
        return not any(self.exponents)

    @property
    def order(self) -> int:
        return self.level // math.gcd(self.level, *self.exponents)

    def __mul__(self, other: "Character") -> "Character":
        if self.level != other.level:
            raise ValueError("characters at different levels")
        return Character(self.level, tuple((a + b) % self.level for a, b in zip(self.exponents, other.exponents)))


def characters(A: AbelianStructure, include_trivial: bool = True) -> Iterator[Character]:
    """All characters of a finite abelian group, odometer order with the last coordinate fastest."""
    if not A.is_finite:
        raise InfiniteGroupError(f"group {A.describe()} is infinite; only torsion characters are enumerated")
    N = A.exponent
    steps = [range(0, N, N // e) for e in A.torsion]
    for exps in itertools.product(*steps):
        if include_trivial or any(exps):
            yield Character(N, tuple(exps))


def character_count(A: AbelianStructure, include_trivial: bool = True) -> int:
    return A.order - (0 if include_trivial else 1)


@dataclass(frozen=True)
class AbelianQuotient:
    """A homomorphism ``lambda`` from a presented group onto a finite abelian group.

    ``images[j]`` is the image of generator ``j`` in the coordinates of
    ``target``.  Construction verifies that every relator is killed.
    """

    presentation: Presentation
    target: AbelianStructure
    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.target.is_finite:
            raise InfiniteGroupError("abelian quotient must be finite")
        if len(self.images) != self.presentation.ngens:
            raise NotHomomorphismError("one image per generator is required")
        object.__setattr__(self, "images", tuple(self.target.reduce(v) for v in self.images))
        for r in self.presentation.relators:
            if any(self.evaluate(r.exponent_sums(self.presentation.ngens))):
                raise NotHomomorphismError(
                    f"relator {r.format(self.presentation.generators)} has nonzero image"
                )

    def evaluate(self, exponent_sums: Sequence[int]) -> tuple[int, ...]:
        acc = [0] * len(self.target.torsion)
        for j, k in enumerate(exponent_sums):
            if k:
                for i, v in enumerate(self.images[j]):
                    acc[i] += k * v
        return self.target.reduce(acc)

    def is_surjective(self) -> bool:
        t = len(self.target.torsion)
        if t == 0:
            return True
        rows = [list(v) for v in self.images] + [
            [e if i == j else 0 for j in range(t)] for i, e in enumerate(self.target.torsion)
        ]
        return all(d == 1 for d in smith_normal_form(rows).diagonal())

    def require_surjective(self) -> "AbelianQuotient":
        if not self.is_surjective():
            raise NotSurjectiveError("quotient map is not onto its target")
        return self

    @classmethod
    def abelianization(cls, p: Presentation) -> "AbelianQuotient":
        A = h1(p)
        if not A.is_finite:
            raise InfiniteGroupError(f"abelianization {A.describe()} is infinite")
        return cls(p, A, A.gen_images)

    @classmethod
    def from_images(
        cls, p: Presentation, orders: Sequence[int], images: Mapping[str, Sequence[int]]
    ) -> "AbelianQuotient":
        """Quotient onto ``Z/o1 + ... + Z/ok`` given per-generator-name coordinates.

        The target is normalized to invariant-factor form.  Generators not
        listed map to zero.
        """
        target = finite_abelian(orders)
        unknown = set(images) - set(p.generators)
        if unknown:
            raise NotHomomorphismError(f"images given for unknown generators {sorted(unknown)}")
        imgs = []
        for name in p.generators:
            v = list(images.get(name, [0] * len(orders)))
            if len(v) != len(orders):
                raise NotHomomorphismError(f"image of {name} has wrong length")
            imgs.append(target.image(v))
        return cls(p, target, tuple(imgs))


def pull_back(xi: Character, quotient: AbelianQuotient) -> Character:
    """The composite ``xi o lambda`` as a character with one exponent per group generator."""
    if len(xi.exponents) != len(quotient.target.torsion):
        raise ValueError("character does not match the quotient target")
    N = xi.level
    return Character(N, tuple(sum(a * c for a, c in zip(img, xi.exponents)) % N for img in quotient.images))

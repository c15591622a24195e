"""Permutation monodromy, unbranched orbifold covers and Reidemeister-Schreier rewriting.

Words act on points from the right: the leftmost letter is applied first,
so ``i . (g h) = (i . g) . h``.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .abelian import h1
from .errors import (
    ArityError,
    ConsistencyError,
    CosetLimitError,
    NotHomomorphismError,
    NotTransitiveError,
    PreconditionError,
)
from .fpgroup import OrbicurveSpec, Presentation, Word, orbicurve_group, orbicurve_meridians

DEFAULT_COSET_LIMIT = 100_000


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``{0, ..., n-1}``; ``images[i]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(i) for i in self.images))
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]], one_based: bool = True) -> "Permutation":
        img = list(range(n))
        off = 1 if one_based else 0
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a - off] = b - off
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """``self`` first, then ``other``."""
        o = other.images
        return Permutation(tuple(o[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self, points: Sequence[int] | None = None) -> list[tuple[int, ...]]:
        """Cycle decomposition (fixed points included), optionally restricted to an invariant set."""
        seen = set()
        out = []
        for start in points if points is not None else range(len(self.images)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self.images[start]
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt]
            out.append(tuple(cyc))
        return out

    def cycle_type(self, points: Sequence[int] | None = None) -> list[int]:
        return sorted((len(c) for c in self.cycles(points)), reverse=True)

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def one_based(self) -> list[int]:
        return [i + 1 for i in self.images]


@dataclass(frozen=True)
class PermRep:
    """One permutation per generator of ``presentation``."""

    presentation: Presentation
    images: tuple[Permutation, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.presentation.ngens:
            raise ArityError(f"{len(self.images)} permutations for {self.presentation.ngens} generators")
        if len({p.degree for p in self.images}) > 1:
            raise ArityError("permutations of different degrees")

    @property
    def degree(self) -> int:
        return self.images[0].degree if self.images else self._degree

    _degree: int = 1

    @classmethod
    def from_images(cls, p: Presentation, degree: int, images: Mapping[str, Sequence[int]]) -> "PermRep":
        """Build from 1-based image arrays keyed by generator name (missing ones are identity)."""
        unknown = set(images) - set(p.generators)
        if unknown:
            raise ArityError(f"images for unknown generators {sorted(unknown)}")
        perms = []
        for g in p.generators:
            arr = images.get(g)
            if arr is None:
                perms.append(Permutation.identity(degree))
                continue
            if len(arr) != degree:
                raise ArityError(f"image of {g} has length {len(arr)}, expected {degree}")
            perms.append(Permutation(tuple(i - 1 for i in arr)))
        rep = cls(p, tuple(perms))
        if not perms:
            object.__setattr__(rep, "_degree", degree)
        return rep

    def act(self, point: int, word: Word) -> int:
        inv = None
        for g, e in word.letters:
            if e > 0:
                for _ in range(e):
                    point = self.images[g].images[point]
            else:
                inv = inv or [q.inverse() for q in self.images]
                for _ in range(-e):
                    point = inv[g].images[point]
        return point

    def word_image(self, word: Word) -> Permutation:
        return Permutation(tuple(self.act(i, word) for i in range(self.degree)))

    def orbits(self) -> list[list[int]]:
        seen = set()
        out = []
        for s in range(self.degree):
            if s in seen:
                continue
            orbit = [s]
            seen.add(s)
            queue = deque([s])
            while queue:
                p = queue.popleft()
                for perm in self.images:
                    for q in (perm.images[p], perm.inverse().images[p]):
                        if q not in seen:
                            seen.add(q)
                            orbit.append(q)
                            queue.append(q)
            out.append(sorted(orbit))
        return out

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "images": {g: p.one_based() for g, p in zip(self.presentation.generators, self.images)},
        }


@dataclass(frozen=True)
class RepCheck:
    valid: bool
    relator: Word | None = None
    point: int | None = None

    def __bool__(self) -> bool:
        return self.valid


def validate_rep(p: Presentation, rep: PermRep) -> RepCheck:
    """Check that every relator acts trivially; on failure report the relator and a moved point."""
    if rep.presentation.ngens != p.ngens:
        raise ArityError(f"representation has {rep.presentation.ngens} generators, presentation {p.ngens}")
    for r in p.relators:
        for i in range(rep.degree):
            if rep.act(i, r) != i:
                return RepCheck(False, r, i)
    return RepCheck(True)


def euler_orb(spec: OrbicurveSpec) -> Fraction:
    """Orbifold Euler characteristic ``2 - 2g - s - sum(1 - 1/m)``."""
    return 2 - 2 * spec.genus - spec.punctures - sum(1 - Fraction(1, m) for m in spec.indices)


@dataclass
class UpstairsPoint:
    base_point: str
    cycle_length: int
    index: int  # 0 for punctures


@dataclass
class CoverReport:
    degree: int
    transitive: bool
    upstairs_points: list[UpstairsPoint]
    genus_upstairs: int | None
    euler_orb_upstairs: Fraction
    flags: dict[str, bool]
    components: list["CoverReport"] = field(default_factory=list)

    def upstairs_spec(self) -> OrbicurveSpec | None:
        """The total space as an orbicurve (connected covers only)."""
        if self.genus_upstairs is None:
            return None
        punct = sum(1 for u in self.upstairs_points if u.index == 0)
        idx = sorted(u.index for u in self.upstairs_points if u.index > 1)
        return OrbicurveSpec(self.genus_upstairs, punct, tuple(idx))


def _restrict(perm: Permutation, orbit: Sequence[int]) -> Permutation:
    pos = {q: k for k, q in enumerate(orbit)}
    return Permutation(tuple(pos[perm.images[q]] for q in orbit))


def _is_regular(perms: Sequence[Permutation]) -> bool:
    """Transitive group is regular iff every Schreier generator of a point stabilizer is trivial."""
    n = perms[0].degree if perms else 1
    trans: dict[int, Permutation] = {0: Permutation.identity(n)}
    queue = deque([0])
    while queue:
        p = queue.popleft()
        for g in perms:
            q = g.images[p]
            if q not in trans:
                trans[q] = trans[p] * g
                queue.append(q)
    inv = {q: t.inverse() for q, t in trans.items()}
    for p, t in trans.items():
        for g in perms:
            if not (t * g * inv[g.images[p]]).is_identity():
                return False
    return True


def _analyze_orbit(spec, perms, merids, labels, indices, n) -> CoverReport:
    upstairs = []
    n_cycles = 0
    virt_regular = True
    for label, m, w_perm in zip(labels, indices, merids):
        cyc = w_perm.cycle_type()
        n_cycles += len(cyc)
        for c in cyc:
            if m == 0:
                upstairs.append(UpstairsPoint(label, c, 0))
                continue
            if m % c:
                raise ConsistencyError(f"cycle of length {c} over {label} does not divide index {m}")
            upstairs.append(UpstairsPoint(label, c, m // c))
        if m > 1 and any(c != m for c in cyc):
            virt_regular = False
    k = len(spec.indices)
    chi_top = n * (2 - 2 * spec.genus - spec.punctures - k) + n_cycles
    if chi_top % 2:
        raise ConsistencyError(f"odd Euler characteristic {chi_top} for a connected cover")
    genus = (2 - chi_top) // 2
    s_up = sum(1 for u in upstairs if u.index == 0)
    chi_orb = chi_top - s_up - sum(1 - Fraction(1, u.index) for u in upstairs if u.index > 1)
    if chi_orb != n * euler_orb(spec):
        raise ConsistencyError(f"orbifold Euler characteristic {chi_orb} != {n} * {euler_orb(spec)}")
    flags = {
        "valid_unbranched": True,
        "uniformization": all(u.index in (0, 1) for u in upstairs),
        "virtually_regular": virt_regular,
        "regular": _is_regular(perms),
    }
    return CoverReport(n, True, upstairs, genus, chi_orb, flags)


def analyze_cover(spec: OrbicurveSpec, rep: PermRep, eliminate_puncture: bool = True) -> CoverReport:
    """Describe the unbranched orbifold cover defined by a monodromy representation.

    ``rep`` must be a representation of ``orbicurve_group(spec)``.
    Disconnected covers are analyzed orbit by orbit; the returned report
    then has ``transitive=False``, no genus, and one entry per orbit in
    ``components``.
    """
    p = orbicurve_group(spec, eliminate_puncture)
    if rep.presentation.ngens != p.ngens:
        raise ArityError("representation does not match the orbicurve presentation")
    check = validate_rep(p, rep)
    if not check:
        raise NotHomomorphismError(
            f"relator {check.relator.format(p.generators)} moves point {check.point + 1}"
        )
    labels = spec.point_labels()
    indices = spec.point_indices()
    merid_perms = [rep.word_image(w) for w in orbicurve_meridians(spec, eliminate_puncture)]
    orbits = rep.orbits() if rep.degree else [[]]
    comps = []
    for orbit in orbits:
        perms = [_restrict(g, orbit) for g in rep.images]
        merids = [_restrict(w, orbit) for w in merid_perms]
        comps.append(_analyze_orbit(spec, perms, merids, labels, indices, len(orbit)))
    if len(comps) == 1:
        return comps[0]
    total = sum((c.euler_orb_upstairs for c in comps), Fraction(0))
    flags = {key: all(c.flags[key] for c in comps) for key in comps[0].flags}
    return CoverReport(
        rep.degree,
        False,
        [u for c in comps for u in c.upstairs_points],
        None,
        total,
        flags,
        comps,
    )


def reidemeister_schreier(
    p: Presentation,
    rep: PermRep,
    basepoint: int = 0,
    coset_limit: int = DEFAULT_COSET_LIMIT,
) -> Presentation:
    """Presentation of the stabilizer of ``basepoint`` (0-based) under a transitive action.

    The transversal is a breadth-first spanning tree of the Schreier graph,
    scanning generators in order (positive edge before inverse edge).
    Schreier generators on tree edges are eliminated; nothing else is
    simplified.  Generator ``g_k`` of the result is the Schreier generator
    for generator ``g`` at point ``k`` (1-based).
    """
    n = rep.degree
    if n > coset_limit:
        raise CosetLimitError(f"{n} cosets exceed the limit {coset_limit}")
    if not 0 <= basepoint < n:
        raise PreconditionError(f"basepoint {basepoint} out of range")
    if rep.presentation.ngens != p.ngens:
        raise ArityError("representation does not match the presentation")
    fwd = [g.images for g in rep.images]
    bwd = [g.inverse().images for g in rep.images]
    trivial = set()
    seen = {basepoint}
    queue = deque([basepoint])
    while queue:
        q = queue.popleft()
        for j in range(p.ngens):
            r = fwd[j][q]
            if r not in seen:
                seen.add(r)
                trivial.add((q, j))
                queue.append(r)
            r = bwd[j][q]
            if r not in seen:
                seen.add(r)
                trivial.add((r, j))
                queue.append(r)
    if len(seen) != n:
        raise NotTransitiveError(f"action has {n - len(seen)} points outside the basepoint orbit")
    index: dict[tuple[int, int], int] = {}
    names = []
    for q in range(n):
        for j in range(p.ngens):
            if (q, j) not in trivial:
                index[(q, j)] = len(names)
                names.append(f"{p.generators[j]}_{q + 1}")

    def rewrite(word: Word, q: int) -> Word:
        out = []
        for j, s in word.expanded():
            if s > 0:
                k = index.get((q, j))
                if k is not None:
                    out.append((k, 1))
                q = fwd[j][q]
            else:
                q = bwd[j][q]
                k = index.get((q, j))
                if k is not None:
                    out.append((k, -1))
        return Word(tuple(out))

    rels = []
    for q in range(n):
        for r in p.relators:
            w = rewrite(r, q)
            if w:
                rels.append(w)
    return Presentation(tuple(names), tuple(rels))


def regular_rep(quotient) -> PermRep:
    """Action of a finite abelian quotient on its own elements by translation."""
    A = quotient.target
    elems = list(itertools.product(*(range(e) for e in A.torsion)))
    pos = {e: k for k, e in enumerate(elems)}
    perms = []
    for img in quotient.images:
        perms.append(
            Permutation(tuple(pos[tuple((a + b) % e for a, b, e in zip(el, img, A.torsion))] for el in elems))
        )
    rep = PermRep(quotient.presentation, tuple(perms))
    if not perms:
        object.__setattr__(rep, "_degree", len(elems))
    return rep


@dataclass
class SaturationRow:
    label: str
    declared: int
    order_h1: int | None
    order_rep: int | None

    @property
    def saturated(self) -> bool:
        for o in (self.order_h1, self.order_rep):
            if o is not None and self.declared and o != self.declared and self.declared % o == 0:
                return False
        return True

    @property
    def certified(self) -> bool:
        """The known orders already force the meridian to have exactly the declared order."""
        known = [o for o in (self.order_h1, self.order_rep) if o]
        return bool(known) and math.lcm(*known) == self.declared


def saturation_check(
    target: OrbicurveSpec | Presentation,
    rep: PermRep | None = None,
    meridians: Sequence[Word] | None = None,
    indices: Sequence[int] | None = None,
    labels: Sequence[str] | None = None,
) -> list[SaturationRow]:
    """Order of each marked meridian in H1 and in the image of ``rep``.

    A meridian is flagged as not saturated when one of these orders is a
    proper divisor of its declared index.  ``None`` orders mean infinite
    (H1) or not computed (no representation).
    """
    if isinstance(target, OrbicurveSpec):
        p = orbicurve_group(target)
        meridians = orbicurve_meridians(target)
        indices = target.point_indices()
        labels = target.point_labels()
    else:
        p = target
        if meridians is None or indices is None:
            raise PreconditionError("meridians and declared indices are required for a bare presentation")
        labels = labels or [f"m{i + 1}" for i in range(len(meridians))]
    A = h1(p)
    rows = []
    for label, w, m in zip(labels, meridians, indices):
        o_h1 = A.element_order(A.image(w.exponent_sums(p.ngens)))
        o_rep = rep.word_image(w).order() if rep is not None else None
        rows.append(SaturationRow(label, m, o_h1, o_rep))
    return rows


def is_suborbifold(sub: Sequence[int], sup: Sequence[int]) -> bool:
    """Pointwise divisibility of orbifold indices: each ``sub[i]`` divides ``sup[i]`` (0 only under 0)."""
    if len(sub) != len(sup):
        raise ValueError("index lists must describe the same marked points")
    for a, b in zip(sub, sup):
        if b == 0:
            if a != 0:
                return False
        elif a == 0 or b % a:
            return False
    return True


@dataclass
class FiberCoverReport:
    degree: int
    source_points: list[UpstairsPoint]
    source_genus: int
    source_spec: OrbicurveSpec
    euler_orb_source: Fraction
    euler_orb_target: Fraction

    @property
    def multiplicative(self) -> bool:
        return self.euler_orb_source == self.degree * self.euler_orb_target


def cover_from_fibers(
    target_genus: int,
    target_points: Mapping[str, int],
    fibers: Mapping[str, Sequence[int]],
    degree: int,
) -> FiberCoverReport:
    """Source orbifold of a finite map given its local degrees over the special fibers.

    ``target_points`` maps each marked target point to its index (0 for a
    puncture); ``fibers`` lists the local degrees over each special point,
    which may include unmarked points (index 1).  A preimage of local degree
    ``e`` over a point of index ``m`` gets index ``m/e``.
    """
    pts = []
    ram = 0
    for label, degs in fibers.items():
        if sum(degs) != degree:
            raise PreconditionError(f"local degrees over {label} sum to {sum(degs)}, not {degree}")
        m = target_points.get(label, 1)
        ram += sum(e - 1 for e in degs)
        for e in degs:
            if m == 0:
                pts.append(UpstairsPoint(label, e, 0))
            elif m % e:
                raise PreconditionError(f"local degree {e} over {label} does not divide index {m}")
            else:
                pts.append(UpstairsPoint(label, e, m // e))
    for label, m in target_points.items():
        if label not in fibers:
            pts.extend(UpstairsPoint(label, 1, m) for _ in range(degree))
    chi = degree * (2 - 2 * target_genus) - ram
    if chi % 2:
        raise ConsistencyError("ramification data gives an odd Euler characteristic")
    genus = (2 - chi) // 2
    spec = OrbicurveSpec(
        genus,
        sum(1 for u in pts if u.index == 0),
        tuple(sorted(u.index for u in pts if u.index > 1)),
    )
    tgt = OrbicurveSpec(
        target_genus,
        sum(1 for m in target_points.values() if m == 0),
        tuple(sorted(m for m in target_points.values() if m > 1)),
    )
    return FiberCoverReport(degree, pts, genus, spec, euler_orb(spec), euler_orb(tgt))

"""Words in free groups, finite presentations and orbicurve group constructors."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


def _reduce(letters: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    out: list[tuple[int, int]] = []
    for gen, exp in letters:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((gen, merged))
        else:
            out.append((gen, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word, stored as ``(generator index, exponent)`` syllables.

    Construction always reduces, so two words are equal in the free group
    iff they compare equal.
    """

    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce((int(g), int(e)) for g, e in self.letters))

    @classmethod
    def gen(cls, index: int, exponent: int = 1) -> "Word":
        return cls(((index, exponent),))

    @classmethod
    def identity(cls) -> "Word":
        return cls(())

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def expanded(self) -> list[tuple[int, int]]:
        """Letter-by-letter form: one ``(generator, +1 or -1)`` pair per letter."""
        out = []
        for g, e in self.letters:
            s = 1 if e > 0 else -1
            out.extend([(g, s)] * abs(e))
        return out

    def exponent_sums(self, ngens: int) -> list[int]:
        sums = [0] * ngens
        for g, e in self.letters:
            sums[g] += e
        return sums

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=-1)

    def conjugate(self, by: "Word") -> "Word":
        """Return ``by * self * by^-1``."""
        return by * self * by.inverse()

    def cyclic_shift(self, k: int) -> "Word":
        flat = self.expanded()
        if not flat:
            return self
        k %= len(flat)
        return Word(tuple(flat[k:] + flat[:k]))

    def format(self, names: Sequence[str]) -> str:
        if not self.letters:
            return "1"
        parts = []
        for g, e in self.letters:
            parts.append(names[g] if e == 1 else f"{names[g]}^{e}")
        return "*".join(parts)


def word_multiply(a: Word, b: Word) -> Word:
    return a * b


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u v u^-1 v^-1``."""
    return u * v * u.inverse() * v.inverse()


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        if len(set(self.generators)) != len(self.generators):
            raise ValueError(f"duplicate generator names in {self.generators}")
        n = len(self.generators)
        for r in self.relators:
            if r.max_generator() >= n:
                raise ValueError(f"relator {r.letters} uses a generator index >= {n}")

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r}") from None

    def word(self, pairs: Iterable[tuple[str, int]]) -> Word:
        """Build a word from ``(name, exponent)`` pairs."""
        return Word(tuple((self.index(n), e) for n, e in pairs))

    def relator_matrix(self) -> list[list[int]]:
        """Exponent-sum matrix, one row per relator."""
        return [r.exponent_sums(self.ngens) for r in self.relators]

    def with_relators(self, extra: Iterable[Word]) -> "Presentation":
        return Presentation(self.generators, self.relators + tuple(extra))

    def __str__(self) -> str:
        rels = ", ".join(r.format(self.generators) for r in self.relators)
        return f"< {', '.join(self.generators)} | {rels} >"


@dataclass(frozen=True)
class OrbicurveSpec:
    """Genus, number of punctures (index 0) and the cone point indices (each >= 2)."""

    genus: int = 0
    punctures: int = 0
    indices: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(m) for m in self.indices))
        if self.genus < 0 or self.punctures < 0:
            raise ValueError("genus and punctures must be non-negative")
        if any(m < 2 for m in self.indices):
            raise ValueError(f"orbifold indices must be >= 2, got {self.indices}")

    @property
    def compact(self) -> bool:
        return self.punctures == 0

    def point_labels(self) -> list[str]:
        return [f"p{j + 1}" for j in range(self.punctures)] + [
            f"x{i + 1}" for i in range(len(self.indices))
        ]

    def point_indices(self) -> list[int]:
        """Index of every marked point, punctures first (as 0)."""
        return [0] * self.punctures + list(self.indices)


def _surface_layout(spec: OrbicurveSpec):
    names = []
    for i in range(spec.genus):
        names += [f"a{i + 1}", f"b{i + 1}"]
    names += [f"p{j + 1}" for j in range(spec.punctures)]
    names += [f"x{i + 1}" for i in range(len(spec.indices))]
    handles = Word.identity()
    for i in range(spec.genus):
        handles = handles * commutator(Word.gen(2 * i), Word.gen(2 * i + 1))
    first_p = 2 * spec.genus
    first_x = first_p + spec.punctures
    return names, handles, first_p, first_x


def orbicurve_group(spec: OrbicurveSpec, eliminate_puncture: bool = True) -> Presentation:
    """Orbifold fundamental group of an orbicurve.

    Generators are ``a1, b1, ..., ag, bg`` (handles), ``p1..ps`` (puncture
    loops) and ``x1..xk`` (cone point meridians).  Relators are ``xi^mi``
    followed by the surface relation
    ``[a1,b1]...[ag,bg] p1...ps x1...xk``.

    With ``eliminate_puncture`` (the default) and at least one puncture, the
    last puncture generator ``ps`` is dropped together with the surface
    relation, giving the free-product normal form; its meridian is then the
    word returned by :func:`orbicurve_meridians`.
    """
    names, handles, first_p, first_x = _surface_layout(spec)
    power_rels = [Word.gen(first_x + i, m) for i, m in enumerate(spec.indices)]
    tail = Word(tuple((first_p + j, 1) for j in range(spec.punctures + len(spec.indices))))
    surface = handles * tail
    if not (eliminate_puncture and spec.punctures):
        return Presentation(tuple(names), tuple(power_rels) + (surface,))
    drop = first_x - 1
    keep = [i for i in range(len(names)) if i != drop]
    remap = {old: new for new, old in enumerate(keep)}
    rels = [Word(tuple((remap[g], e) for g, e in r.letters)) for r in power_rels]
    return Presentation(tuple(names[i] for i in keep), tuple(rels))


def orbicurve_meridians(spec: OrbicurveSpec, eliminate_puncture: bool = True) -> list[Word]:
    """Meridian word of every marked point (punctures first), matching :func:`orbicurve_group`."""
    names, handles, first_p, first_x = _surface_layout(spec)
    n_marked = spec.punctures + len(spec.indices)
    merid = [Word.gen(first_p + j) for j in range(n_marked)]
    if not (eliminate_puncture and spec.punctures):
        return merid
    drop = first_x - 1

    def shift(w: Word) -> Word:
        return Word(tuple((g - 1 if g > drop else g, e) for g, e in w.letters))

    prefix = handles * Word(tuple((first_p + j, 1) for j in range(spec.punctures - 1)))
    suffix = Word(tuple((first_x + i, 1) for i in range(len(spec.indices))))
    merid[spec.punctures - 1] = prefix.inverse() * suffix.inverse()
    return [shift(w) for w in merid]


def seven_line_fixture() -> Presentation:
    """Orbifold group of the 7-line arrangement with all indices 2."""
    names = ("x1", "x2", "x3", "y1", "y2", "y3", "gz")
    x = [Word.gen(i) for i in range(3)]
    y = [Word.gen(3 + j) for j in range(3)]
    gz = Word.gen(6)
    rels = [w ** 2 for w in x + y + [gz]]
    rels += [commutator(xi, yj) for xi in x for yj in y]
    rels.append(gz * x[0] * x[1] * x[2] * y[0] * y[1] * y[2])
    return Presentation(names, tuple(rels))


def gprime_fixture() -> Presentation:
    """Derived subgroup of :func:`seven_line_fixture`: ``[a_i,b_j]``, ``[a1,a2]=[b1,b2]=c^4``, ``c`` central."""
    names = ("a1", "a2", "b1", "b2", "c")
    a = [Word.gen(0), Word.gen(1)]
    b = [Word.gen(2), Word.gen(3)]
    c = Word.gen(4)
    rels = [commutator(ai, bj) for ai in a for bj in b]
    rels.append(commutator(a[0], a[1]) * c ** -4)
    rels.append(commutator(b[0], b[1]) * c ** -4)
    rels += [commutator(ai, c) for ai in a]
    rels += [commutator(bj, c) for bj in b]
    return Presentation(names, tuple(rels))


def free_group(rank: int, prefix: str = "f") -> Presentation:
    return Presentation(tuple(f"{prefix}{i + 1}" for i in range(rank)), ())

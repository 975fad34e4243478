"""Bar and disjoint-cone complexes of a matrix group, plus decorated simplices.

A k-simplex of the bar complex is a tuple ``(g_1, ..., g_k)`` of group
elements.  For a cusped manifold the bar complex is enlarged by cones: a cone
simplex over ``(g_1, ..., g_{n-1})`` with entries in the i-th cusp subgroup has
its cone point as the last vertex, and the apex itself is the 0-simplex
:class:`Apex`.

Decorated simplices record straight simplices in the universal cover whose
interior vertices lie in the orbit of the base point; the last vertex may
instead be the ideal point of a cusp.  The edge labels between consecutive
interior vertices are the ``words``.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping, Sequence

from .chaincore import Chain
from .errors import BoundaryOfBasepoint, InvalidDecoration, RelatorViolation
from .exactnum import Field, GroupElem, Matrix2

# ---------------------------------------------------------------------------
# group elements carrying a word


def free_reduce(word: str) -> str:
    """Cancel adjacent ``xX`` / ``Xx`` pairs (uppercase = inverse letter)."""
    out: list[str] = []
    for ch in word:
        if out and out[-1] != ch and out[-1].lower() == ch.lower():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def invert_word(word: str) -> str:
    return word[::-1].swapcase()


class GammaElem(GroupElem):
    """A group element given by a word in named generators together with its matrix.

    Equality and hashing use the matrix only, so distinct words for the same
    element are identified.
    """

    __slots__ = ("word",)

    @classmethod
    def make(cls, word: str, matrix: Matrix2) -> GammaElem:
        g = cls._raw(*matrix.entries())
        g.word = word
        return g

    @classmethod
    def from_word(cls, word: str, generators: Mapping[str, GroupElem], field: Field) -> GammaElem:
        m = evaluate_word(word, generators, field)
        return cls.make(free_reduce(word), m)

    def __matmul__(self, other):
        prod = GroupElem.__matmul__(self, other)
        if isinstance(other, GammaElem):
            return GammaElem.make(free_reduce(self.word + other.word), prod)
        return prod

    __mul__ = __matmul__

    def inverse(self) -> GammaElem:
        return GammaElem.make(invert_word(self.word), GroupElem.inverse(self))

    def __repr__(self):
        return f"Gamma({self.word or '1'})"


def evaluate_word(word: str, generators: Mapping[str, GroupElem], field: Field) -> GroupElem:
    m = GroupElem.identity(field)
    for ch in word:
        g = generators.get(ch)
        if g is None:
            base = generators.get(ch.lower())
            if base is None or not ch.isupper():
                raise InvalidDecoration(f"unknown generator letter {ch!r}")
            g = base.inverse()
        m = GroupElem._raw(*(m @ g).entries())
    return m


class WordEvaluator:
    """Memoized evaluation of words; long words are split in halves so shared pieces are reused."""

    def __init__(self, generators: Mapping[str, GroupElem], field: Field):
        self.generators = generators
        self.field = field
        self._cache: dict[str, GroupElem] = {}

    def __call__(self, word: str) -> GroupElem:
        m = self._cache.get(word)
        if m is None:
            if len(word) <= 2:
                m = evaluate_word(word, self.generators, self.field)
            else:
                mid = len(word) // 2
                m = GroupElem._raw(*(self(word[:mid]) @ self(word[mid:])).entries())
            self._cache[word] = m
        return m


def _elem_key(g) -> tuple:
    return g.sort_key()


# ---------------------------------------------------------------------------
# simplices


class BarSimplex:
    """The bar simplex ``(g_1, ..., g_k)``; ``k = 0`` is the base point."""

    __slots__ = ("elems", "_hash")

    def __init__(self, elems: Iterable[GroupElem] = ()):
        self.elems = tuple(elems)
        self._hash = hash(("bar",) + self.elems)

    @property
    def degree(self) -> int:
        return len(self.elems)

    def __eq__(self, other):
        return isinstance(other, BarSimplex) and self.elems == other.elems

    def __hash__(self):
        return self._hash

    def sort_key(self) -> tuple:
        return (0, len(self.elems)) + tuple(_elem_key(g) for g in self.elems)

    def face(self, j: int) -> BarSimplex:
        """The j-th face; inner faces merge entries j and j+1, outer faces drop an end entry."""
        g, k = self.elems, len(self.elems)
        if k == 0:
            raise BoundaryOfBasepoint("the base point simplex has no faces")
        if j == 0:
            return BarSimplex(g[1:])
        if j == k:
            return BarSimplex(g[:-1])
        return BarSimplex(g[: j - 1] + (g[j - 1] @ g[j],) + g[j + 1 :])

    def degeneracy(self, j: int, field: Field) -> BarSimplex:
        """s_j: insert the identity in position j."""
        one = GroupElem.identity(field)
        return BarSimplex(self.elems[:j] + (one,) + self.elems[j:])

    def vertices(self) -> list:
        """Homogeneous vertex labels (1, g_1, g_1 g_2, ...)."""
        if not self.elems:
            return []
        field = self.elems[0].field
        acc = GroupElem.identity(field)
        if isinstance(self.elems[0], GammaElem):
            acc = GammaElem.make("", acc)
        out = [acc]
        for g in self.elems:
            acc = acc @ g
            out.append(acc)
        return out

    def __repr__(self):
        return "(" + ", ".join(map(repr, self.elems)) + ")"


class ConeSimplex:
    """Cone over a bar simplex of cusp subgroup elements; the cone point is the last vertex."""

    __slots__ = ("base", "cusp", "_hash")

    def __init__(self, base: BarSimplex | Sequence[GroupElem], cusp: int):
        self.base = base if isinstance(base, BarSimplex) else BarSimplex(base)
        self.cusp = int(cusp)
        self._hash = hash(("cone", self.cusp, self.base))

    @property
    def degree(self) -> int:
        return self.base.degree + 1

    def __eq__(self, other):
        return isinstance(other, ConeSimplex) and self.cusp == other.cusp and self.base == other.base

    def __hash__(self):
        return self._hash

    def sort_key(self) -> tuple:
        return (1, self.cusp) + self.base.sort_key()

    def __repr__(self):
        return f"Cone{self.base!r}@{self.cusp}"


class Apex:
    """The cone point of cusp ``i`` as a 0-simplex."""

    __slots__ = ("cusp",)

    def __init__(self, cusp: int):
        self.cusp = int(cusp)

    degree = 0

    def __eq__(self, other):
        return isinstance(other, Apex) and self.cusp == other.cusp

    def __hash__(self):
        return hash(("apex", self.cusp))

    def sort_key(self) -> tuple:
        return (2, self.cusp)

    def __repr__(self):
        return f"Apex{self.cusp}"


def bar_boundary(b: BarSimplex, mode: str = "Z") -> Chain:
    if b.degree == 0:
        raise BoundaryOfBasepoint("the base point simplex has no boundary")
    return Chain([(b.face(j), (-1) ** j) for j in range(b.degree + 1)], mode)


def dcone_boundary(s, mode: str = "Z") -> Chain:
    """Boundary in the disjoint-cone complex."""
    if isinstance(s, BarSimplex):
        return bar_boundary(s, mode)
    if isinstance(s, Apex):
        raise BoundaryOfBasepoint("a cone point has no boundary")
    k = s.base.degree
    if k == 0:
        return Chain([(Apex(s.cusp), 1), (s.base, -1)], mode)
    terms = [(ConeSimplex(s.base.face(j), s.cusp), (-1) ** j) for j in range(k + 1)]
    terms.append((s.base, (-1) ** (k + 1)))
    return Chain(terms, mode)


def chain_boundary(c: Chain) -> Chain:
    return c.map(lambda s: dcone_boundary(s, c.mode))


# ---------------------------------------------------------------------------
# decorated simplices


class DecoratedSimplex:
    """A straight simplex with vertices in the base point orbit, optionally ending at a cusp.

    ``words`` are the labels ``(g_1, ..., g_m)`` of consecutive interior edges.
    With ``cusp=None`` the simplex has ``m + 1`` interior vertices; otherwise
    it has ``m + 1`` interior vertices followed by the ideal point of the cusp.
    """

    __slots__ = ("words", "cusp", "_hash")

    def __init__(self, words: Iterable[GroupElem], cusp: int | None = None):
        self.words = tuple(words)
        self.cusp = None if cusp is None else int(cusp)
        if self.cusp is not None and self.cusp < 1:
            raise InvalidDecoration(f"cusp indices start at 1, got {cusp}")
        self._hash = hash(("dec", self.cusp) + self.words)

    @property
    def is_ideal(self) -> bool:
        return self.cusp is not None

    @property
    def degree(self) -> int:
        return len(self.words) + (1 if self.is_ideal else 0)

    def __eq__(self, other):
        return (
            isinstance(other, DecoratedSimplex)
            and self.cusp == other.cusp
            and self.words == other.words
        )

    def __hash__(self):
        return self._hash

    def sort_key(self) -> tuple:
        return (self.cusp or 0, len(self.words)) + tuple(_elem_key(g) for g in self.words)

    def face(self, j: int):
        """Delete vertex j and recompose the labels; deleting the cusp vertex leaves the interior part."""
        if self.is_ideal:
            m = len(self.words)
            if j == m + 1:
                return DecoratedSimplex(self.words)
            if m == 0:
                return ApexVertex(self.cusp)
            return DecoratedSimplex(BarSimplex(self.words).face(j).elems, self.cusp)
        if not self.words:
            raise BoundaryOfBasepoint("a single interior vertex has no boundary")
        return DecoratedSimplex(BarSimplex(self.words).face(j).elems)

    def __repr__(self):
        tail = f" -> cusp {self.cusp}" if self.is_ideal else ""
        return f"Dec({', '.join(map(repr, self.words))}{tail})"


class ApexVertex:
    """The decorated 0-simplex sitting at the ideal point of a cusp."""

    __slots__ = ("cusp",)
    degree = 0

    def __init__(self, cusp: int):
        self.cusp = int(cusp)

    def __eq__(self, other):
        return isinstance(other, ApexVertex) and self.cusp == other.cusp

    def __hash__(self):
        return hash(("apexv", self.cusp))

    def sort_key(self) -> tuple:
        return (-1, self.cusp)

    def __repr__(self):
        return f"IdealVertex{self.cusp}"


def decorated_boundary(s, mode: str = "Z") -> Chain:
    if isinstance(s, ApexVertex):
        raise BoundaryOfBasepoint("a vertex has no boundary")
    return Chain([(s.face(j), (-1) ** j) for j in range(s.degree + 1)], mode)


def phi_hat(s):
    """Decorated simplex -> bar or cone simplex."""
    if isinstance(s, ApexVertex):
        return Apex(s.cusp)
    if s.is_ideal:
        return ConeSimplex(BarSimplex(s.words), s.cusp)
    return BarSimplex(s.words)


def phi_hat_chain(c: Chain) -> Chain:
    return c.map_gens(phi_hat)


# ---------------------------------------------------------------------------
# representations


class Representation:
    """Images of named generators in SL(2), with optional relators and boundary map.

    ``boundary_map`` is a matrix ``h`` such that ``rho(g) = h g h^-1`` for every
    generator; it induces the equivariant map on P^1 used to push base and cusp
    points.  ``matrix_action`` handles elements that carry no word (used for
    conjugation representations on arbitrary matrices).
    """

    def __init__(
        self,
        images: Mapping[str, GroupElem] | None = None,
        relators: Sequence[str] = (),
        boundary_map: GroupElem | None = None,
        matrix_action: Callable[[GroupElem], GroupElem] | None = None,
    ):
        self.images = dict(images or {})
        self.relators = list(relators)
        self.boundary_map = boundary_map
        self.matrix_action = matrix_action
        self._evaluators: dict = {}

    @classmethod
    def identity(cls) -> Representation:
        return cls(matrix_action=lambda g: g)

    @classmethod
    def conjugation(cls, h: GroupElem, generators: Mapping[str, GroupElem] | None = None,
                    relators: Sequence[str] = ()) -> Representation:
        images = {k: g.conjugate_by(h) for k, g in (generators or {}).items()}
        return cls(images, relators, boundary_map=h, matrix_action=lambda g: g.conjugate_by(h))

    def is_identity(self) -> bool:
        return not self.images and self.boundary_map is None

    def __call__(self, g: GroupElem) -> GroupElem:
        if isinstance(g, GammaElem) and self.images:
            ev = self._evaluators.get(g.field)
            if ev is None:
                ev = self._evaluators[g.field] = WordEvaluator(self.images, g.field)
            return GammaElem.make(g.word, ev(g.word))
        if self.matrix_action is None:
            raise InvalidDecoration(f"representation has no image for {g!r}")
        img = self.matrix_action(g)
        if isinstance(g, GammaElem):
            return GammaElem.make(g.word, img)
        return img

    def check_relators(self, field: Field) -> None:
        for rel in self.relators:
            m = evaluate_word(rel, self.images, field)
            if not m.is_identity():  # tolerance based in float mode
                raise RelatorViolation(f"relator {rel!r} maps to {m!r}, not the identity")

    def check_equivariance(self, generators: Mapping[str, GroupElem]) -> None:
        """The boundary map must intertwine the generators with their images."""
        h = self.boundary_map
        if h is None:
            return
        for k, g in generators.items():
            if k in self.images and self.images[k] != g.conjugate_by(h):
                raise RelatorViolation(f"boundary map does not intertwine generator {k!r}")

    def push_point(self, p):
        return p if self.boundary_map is None else self.boundary_map.apply(p)


def apply_representation(c: Chain, rho: Representation) -> Chain:
    """Entrywise replacement g -> rho(g) on bar and cone simplices."""

    def image(s):
        if isinstance(s, BarSimplex):
            return BarSimplex(rho(g) for g in s.elems)
        if isinstance(s, ConeSimplex):
            return ConeSimplex(BarSimplex(rho(g) for g in s.base.elems), s.cusp)
        return s

    return c.map_gens(image)

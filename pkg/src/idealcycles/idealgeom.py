"""Straight simplices in hyperbolic 3-space and the pointwise degree of straight chains.

Points of H^3 and of its boundary P^1 are lifted to Minkowski space R^{1,3}
through Hermitian matrices: an interior point (z, t) of the upper half-space
becomes ``(1/t) [[|z|^2 + t^2, z], [conj z, 1]]`` (a unit timelike vector), a
finite ideal point z becomes ``[[|z|^2, z], [conj z, 1]]`` and infinity
becomes ``[[1, 0], [0, 0]]`` (future null vectors).  A straight simplex is the
projectivized positive cone on its vertex vectors, so membership and
orientation reduce to linear algebra.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from scipy.stats import qmc

from .chaincore import Chain, IdealTuple, alternation_reduce, tuple_boundary
from .errors import OnBoundaryFace, SamplingExhausted
from .exactnum import Matrix2, ProjPoint, QuadraticField

FACE_TOLERANCE = 1e-6
_MINKOWSKI = np.diag([-1.0, 1.0, 1.0, 1.0])


@dataclass(frozen=True)
class H3Point:
    """Interior point (x + iy, t) of the upper half-space, t > 0."""

    x: float
    y: float
    t: float

    def __post_init__(self):
        if not self.t > 0:
            raise ValueError(f"height must be positive, got {self.t}")

    @classmethod
    def from_vector(cls, v: np.ndarray) -> H3Point:
        x0, x1, x2, x3 = v / np.sqrt(-minkowski(v, v))
        h22 = x0 - x3
        return cls(x1 / h22, x2 / h22, 1.0 / h22)


def minkowski(u: np.ndarray, v: np.ndarray) -> float:
    return float(u @ _MINKOWSKI @ v)


def _hermitian_to_vector(h11: float, h12: complex, h22: float) -> np.ndarray:
    return np.array([(h11 + h22) / 2, h12.real, h12.imag, (h11 - h22) / 2])


def lift(p) -> np.ndarray:
    """Minkowski vector of an H3Point or a ProjPoint."""
    if isinstance(p, H3Point):
        z = complex(p.x, p.y)
        return _hermitian_to_vector((abs(z) ** 2 + p.t**2) / p.t, z / p.t, 1.0 / p.t)
    if p.is_infinity:
        return np.array([0.5, 0.0, 0.0, 0.5])
    z = p.to_complex()
    return _hermitian_to_vector(abs(z) ** 2, z, 1.0)


def _vector_to_hermitian(v: np.ndarray) -> np.ndarray:
    x0, x1, x2, x3 = v
    return np.array([[x0 + x3, complex(x1, x2)], [complex(x1, -x2), x0 - x3]])


def isometry_vector(g: Matrix2, v: np.ndarray) -> np.ndarray:
    """Action H -> g H g^* of SL(2, C) on Minkowski vectors."""
    m = np.array([[complex(x.to_complex()) for x in g.entries()[:2]],
                  [complex(x.to_complex()) for x in g.entries()[2:]]])
    h = m @ _vector_to_hermitian(v) @ m.conj().T
    return _hermitian_to_vector(h[0, 0].real, h[0, 1], h[1, 1].real)


def act(g: Matrix2, p):
    """Isometry of H^3 extending the Moebius action on the boundary."""
    if isinstance(p, H3Point):
        return H3Point.from_vector(isometry_vector(g, lift(p)))
    return g.apply(p)


class StraightTetra:
    """The straight simplex on four vertices (H3Points or ProjPoints)."""

    __slots__ = ("vertices", "_vectors")

    def __init__(self, vertices: Sequence):
        verts = tuple(vertices)
        if len(verts) != 4:
            raise ValueError(f"a tetrahedron has 4 vertices, got {len(verts)}")
        if len(set(verts)) < 4:
            raise ValueError("tetrahedron vertices must be pairwise distinct")
        self.vertices = verts
        self._vectors = None

    @classmethod
    def from_tuple(cls, t: IdealTuple) -> StraightTetra:
        return cls(t.points)

    @property
    def vectors(self) -> np.ndarray:
        if self._vectors is None:
            self._vectors = np.column_stack([lift(v) for v in self.vertices])
        return self._vectors

    @property
    def is_ideal(self) -> bool:
        return all(isinstance(v, ProjPoint) for v in self.vertices)

    def __eq__(self, other):
        return isinstance(other, StraightTetra) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def sort_key(self):
        return tuple(
            (1, v.x, v.y, v.t) if isinstance(v, H3Point) else (0,) + v.sort_key()
            for v in self.vertices
        )

    def face_normals(self) -> list[np.ndarray]:
        """Unit spacelike normals n_i of the faces, with <v_i, n_i> > 0."""
        v = self.vectors
        normals = []
        for i in range(4):
            others = np.delete(v, i, axis=1)
            # cofactor vector w with det[others | x] = w . x
            w = np.array([
                (-1) ** (k + 3) * np.linalg.det(np.delete(others, k, axis=0)) for k in range(4)
            ])
            n = _MINKOWSKI @ w
            norm2 = minkowski(n, n)
            n = n / np.sqrt(norm2) if norm2 > 0 else n
            if minkowski(v[:, i], n) < 0:
                n = -n
            normals.append(n)
        return normals

    def __repr__(self):
        return f"StraightTetra{self.vertices!r}"


def _raw_det(vectors: np.ndarray) -> float:
    return float(np.linalg.det(vectors))


@lru_cache(maxsize=1)
def _reference_sign() -> int:
    """Global sign making (inf, 0, 1, i) positively oriented."""
    f = QuadraticField(-1)
    ref = StraightTetra((ProjPoint.infinity(f), ProjPoint(f.zero), ProjPoint(f.one), ProjPoint(f.gen)))
    return 1 if _raw_det(ref.vectors) > 0 else -1


def simplex_orientation(s: StraightTetra, tol: float = 1e-12) -> int:
    """+1, -1, or 0 when the vertices span a degenerate (flat) simplex."""
    v = s.vectors
    scale = float(np.prod([np.linalg.norm(v[:, i]) for i in range(4)]))
    d = _raw_det(v)
    if abs(d) <= tol * scale:
        return 0
    return _reference_sign() * (1 if d > 0 else -1)


def _face_distances(s: StraightTetra, y: np.ndarray) -> np.ndarray:
    """sinh of signed distances from y to the four face planes (positive = inner side)."""
    return np.array([minkowski(y, n) for n in s.face_normals()])


def contains(s: StraightTetra, y, tol: float = FACE_TOLERANCE) -> bool:
    """Interior membership; raises OnBoundaryFace within ``tol`` of a face plane."""
    vec = y if isinstance(y, np.ndarray) else lift(y)
    if simplex_orientation(s) == 0:
        return False
    d = _face_distances(s, vec)
    if np.min(np.abs(d)) < tol:
        raise OnBoundaryFace(f"point within {tol} of a face plane of {s!r}")
    return bool(np.all(d > 0))


def _as_tetra(g) -> StraightTetra:
    return g if isinstance(g, StraightTetra) else StraightTetra.from_tuple(g)


def point_degree(c: Chain | Iterable, y, tol: float = FACE_TOLERANCE) -> int:
    """sum_i a_i [y in tetra_i] orientation(tetra_i)."""
    items = c.items() if isinstance(c, Chain) else list(c)
    vec = y if isinstance(y, np.ndarray) else lift(y)
    total = 0
    for g, coeff in items:
        s = _as_tetra(g)
        o = simplex_orientation(s)
        if o == 0:
            continue
        if contains(s, vec, tol):
            total += coeff * o
    return int(total)


# ---------------------------------------------------------------------------
# fundamental cycle certificate


def _tuple_of(g) -> IdealTuple:
    return IdealTuple(g.vertices) if isinstance(g, StraightTetra) else g


def boundary_classes(c: Chain, pairings: Sequence[Matrix2] = ()) -> list:
    """Coefficient sums of boundary triangles, with triangles identified by the pairings.

    Triangles t and g.t (as alternating classes) are merged for every pairing g.
    The chain closes up in the quotient iff every sum is zero.
    """
    tuples = Chain([(_tuple_of(g), a) for g, a in c.items()], c.mode)
    bd = alternation_reduce(tuples.map(lambda t: tuple_boundary(t, c.mode)))
    terms = dict(bd.items())
    parent = {t: (t, 1) for t in terms}

    def find(t):
        sign = 1
        while parent[t][0] != t:
            t, s = parent[t]
            sign *= s
        return t, sign

    for t in list(terms):
        for g in list(pairings) + [p.inverse() for p in pairings]:
            image = alternation_reduce(Chain.single(t.act(g)))
            if not image:
                continue
            ((u, s),) = image.items()
            if u not in parent:
                continue
            rt, st = find(t)
            ru, su = find(u)
            if rt != ru:
                # t ~ s * u  =>  root(t) ~ st * s * su * root(u)
                parent[rt] = (ru, st * s * su)
    sums: dict = {}
    for t, a in terms.items():
        r, sgn = find(t)
        sums[r] = sums.get(r, 0) + sgn * a
    return sorted(sums.values())


def is_closed(c: Chain, pairings: Sequence[Matrix2] = ()) -> bool:
    return all(v == 0 for v in boundary_classes(c, pairings))


@dataclass
class DegreeReport:
    is_cycle: bool
    degrees: list = field(default_factory=list)
    l1_norm: object = 0
    seed: int = 0
    n_samples: int = 0

    @property
    def degrees_histogram(self) -> dict:
        return dict(sorted(Counter(self.degrees).items()))

    @property
    def all_degrees_one(self) -> bool:
        return bool(self.degrees) and all(d == 1 for d in self.degrees)

    @property
    def passed(self) -> bool:
        return self.is_cycle and self.all_degrees_one

    def as_dict(self) -> dict:
        return {
            "is_cycle": self.is_cycle,
            "degrees_histogram": {str(k): v for k, v in self.degrees_histogram.items()},
            "all_degrees_one": self.all_degrees_one,
            "l1_norm": str(self.l1_norm),
            "seed": self.seed,
            "n_samples": self.n_samples,
            "passed": self.passed,
        }


def sample_points(c: Chain, n_samples: int, seed: int, footprint: Chain | None = None,
                  tol: float = FACE_TOLERANCE, max_tries: int | None = None) -> list[np.ndarray]:
    """Quasi-random interior points of the footprint avoiding all face planes of ``c``.

    Each point is a positive combination of the vertex vectors of one
    footprint tetrahedron, so it lies inside that tetrahedron.
    """
    foot = [_as_tetra(g) for g, _ in (footprint or c).items()]
    foot = [s for s in foot if simplex_orientation(s) != 0]
    tetras = [_as_tetra(g) for g, _ in c.items()]
    normals = [s.face_normals() for s in tetras if simplex_orientation(s) != 0]
    if not foot:
        raise SamplingExhausted("the chain has no nondegenerate tetrahedra to sample from")
    engine = qmc.Halton(d=5, scramble=True, seed=seed)
    out: list[np.ndarray] = []
    tries, limit = 0, max_tries or 50 * n_samples + 100
    while len(out) < n_samples:
        for u in engine.random(max(8, n_samples)):
            tries += 1
            s = foot[min(int(u[0] * len(foot)), len(foot) - 1)]
            w = -np.log(np.clip(u[1:], 1e-12, 1.0))
            y = s.vectors @ w
            y = y / np.sqrt(-minkowski(y, y))
            if all(abs(minkowski(y, n)) >= tol for ns in normals for n in ns):
                out.append(y)
                if len(out) == n_samples:
                    break
            if tries >= limit:
                raise SamplingExhausted(f"only {len(out)} admissible samples after {tries} draws")
    return out


def check_ideal_fundamental_cycle(
    c: Chain,
    n_samples: int = 100,
    seed: int = 0,
    pairings: Sequence[Matrix2] = (),
    footprint: Chain | None = None,
) -> DegreeReport:
    """Closure (modulo face pairings) and sampled degree of a straight chain."""
    closed = is_closed(c, pairings)
    pts = sample_points(c, n_samples, seed, footprint)
    degrees = [point_degree(c, y) for y in pts]
    return DegreeReport(closed, degrees, c.l1_norm(), seed, n_samples)

"""Sparse chains on tuples of points of P^1 and their quotients.

Three levels of reduction are supported for a chain of ordered point tuples:

``free``
    nothing is identified;
``alternating``
    tuples with a repeated point vanish and ``(z_tau(0), ...) = sign(tau) (z_0, ...)``;
``coinvariant``
    additionally tuples are identified along the action of PGL(2) on P^1.

Coinvariant classes are represented by :class:`CoinvariantGen`, whose normal
tuple starts with ``(inf, 0, 1)``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from typing import Callable, Hashable, Iterable, Iterator, Mapping

from .errors import BoundaryOfVertex, MixedDegree, UnnormalizableTuple
from .exactnum import Matrix2, ProjPoint, bracket, format_point, parse_point

FREE, ALTERNATING, COINVARIANT = "free", "alternating", "coinvariant"


def _sort_key(gen) -> tuple:
    key = getattr(gen, "sort_key", None)
    return key() if key is not None else (repr(gen),)


class Chain:
    """A finite formal linear combination of hashable generators.

    ``mode`` is ``"Z"`` (integer coefficients) or ``"Q"`` (rational).  Zero
    coefficients are never stored.  Chains are immutable; arithmetic returns
    new chains.
    """

    __slots__ = ("_terms", "mode")

    def __init__(self, terms: Mapping | Iterable = (), mode: str = "Z"):
        if mode not in ("Z", "Q"):
            raise ValueError(f"unknown coefficient mode {mode!r}")
        self.mode = mode
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for gen, coeff in items:
            acc[gen] = acc.get(gen, 0) + coeff
        self._terms = {g: self._coerce(c) for g, c in acc.items() if c != 0}

    def _coerce(self, c):
        if self.mode == "Z":
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"non-integral coefficient {c} in a Z-chain")
                return c.numerator
            return int(c)
        return Fraction(c)

    @classmethod
    def single(cls, gen, coeff=1, mode: str = "Z") -> Chain:
        return cls({gen: coeff}, mode)

    @classmethod
    def _from_dict(cls, terms: dict, mode: str) -> Chain:
        c = object.__new__(cls)
        c.mode = mode
        c._terms = {g: v for g, v in terms.items() if v != 0}
        return c

    def items(self) -> list[tuple]:
        """Terms sorted by the canonical generator order."""
        return sorted(self._terms.items(), key=lambda kv: _sort_key(kv[0]))

    def __iter__(self) -> Iterator:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __getitem__(self, gen):
        return self._terms.get(gen, 0)

    def __contains__(self, gen) -> bool:
        return gen in self._terms

    def generators(self) -> list:
        return [g for g, _ in self.items()]

    def coefficients(self) -> list:
        return [c for _, c in self.items()]

    def _merge_mode(self, other: Chain) -> str:
        return "Q" if "Q" in (self.mode, other.mode) else "Z"

    def __add__(self, other: Chain) -> Chain:
        if not isinstance(other, Chain):
            return NotImplemented
        out = dict(self._terms)
        for g, c in other._terms.items():
            out[g] = out.get(g, 0) + c
        return Chain._from_dict(out, self._merge_mode(other))

    def __neg__(self) -> Chain:
        return Chain._from_dict({g: -c for g, c in self._terms.items()}, self.mode)

    def __sub__(self, other: Chain) -> Chain:
        return self + (-other)

    def __mul__(self, k) -> Chain:
        return Chain({g: k * c for g, c in self._terms.items()}, self.mode)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def with_mode(self, mode: str) -> Chain:
        return Chain(self._terms, mode)

    def map(self, fn: Callable[[Hashable], Chain], mode: str | None = None) -> Chain:
        """Linear extension of ``fn`` (generator -> chain)."""
        out: dict = {}
        for g, c in self._terms.items():
            for h, d in fn(g)._terms.items():
                out[h] = out.get(h, 0) + c * d
        return Chain._from_dict(out, mode or self.mode)

    def map_gens(self, fn: Callable[[Hashable], Hashable]) -> Chain:
        """Apply a generator-to-generator function, consolidating terms."""
        out: dict = {}
        for g, c in self._terms.items():
            h = fn(g)
            out[h] = out.get(h, 0) + c
        return Chain._from_dict(out, self.mode)

    def l1_norm(self):
        return sum(abs(c) for c in self._terms.values())

    def degrees(self) -> set:
        return {g.degree for g in self._terms}

    def __repr__(self):
        if not self._terms:
            return "Chain(0)"
        body = " ".join(f"{'+' if c > 0 else '-'}{abs(c)}*{g!r}" for g, c in self.items())
        return f"Chain({body})"


# ---------------------------------------------------------------------------
# ideal tuples


class IdealTuple:
    """An ordered tuple (z_0, ..., z_q) of points of P^1."""

    __slots__ = ("points", "_hash")

    def __init__(self, points: Iterable[ProjPoint]):
        pts = tuple(points)
        if not pts:
            raise ValueError("an ideal tuple needs at least one point")
        self.points = pts
        self._hash = hash(pts)

    @property
    def degree(self) -> int:
        return len(self.points) - 1

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __eq__(self, other):
        return isinstance(other, IdealTuple) and self.points == other.points

    def __hash__(self):
        return self._hash

    def sort_key(self) -> tuple:
        return (len(self.points),) + tuple(p.sort_key() for p in self.points)

    def face(self, i: int) -> IdealTuple:
        return IdealTuple(self.points[:i] + self.points[i + 1 :])

    def act(self, g: Matrix2) -> IdealTuple:
        return IdealTuple(g.apply(p) for p in self.points)

    def has_repeat(self) -> bool:
        return len(set(self.points)) < len(self.points)

    def __repr__(self):
        return "(" + ", ".join(_point_str(p) for p in self.points) + ")"


def _point_str(p: ProjPoint) -> str:
    return "inf" if p.is_infinity else str(p.num)


class CoinvariantGen:
    """PGL(2)-orbit of a tuple, stored through its normal tuple ``(inf, 0, 1, ...)``.

    ``torsion`` is set when the orbit of the normal tuple under the
    alternating relations contains it with both signs, i.e. the generator is
    its own negative.
    """

    __slots__ = ("normal_tuple", "torsion", "_hash")

    def __init__(self, normal_tuple: IdealTuple, torsion: bool = False):
        self.normal_tuple = normal_tuple
        self.torsion = bool(torsion)
        self._hash = hash((normal_tuple, self.torsion))

    @property
    def degree(self) -> int:
        return self.normal_tuple.degree

    @property
    def points(self):
        return self.normal_tuple.points

    @property
    def parameter(self) -> ProjPoint:
        """The fourth normal coordinate; the cross-ratio class for 4-tuples."""
        return self.normal_tuple.points[3]

    def __eq__(self, other):
        return (
            isinstance(other, CoinvariantGen)
            and self.torsion == other.torsion
            and self.normal_tuple == other.normal_tuple
        )

    def __hash__(self):
        return self._hash

    def sort_key(self) -> tuple:
        return self.normal_tuple.sort_key() + (self.torsion,)

    def __repr__(self):
        return f"<{self.normal_tuple!r}{' tors' if self.torsion else ''}>"


# ---------------------------------------------------------------------------
# operations


def permutation_sign(perm: tuple) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def tuple_boundary(t: IdealTuple, mode: str = "Z") -> Chain:
    """sum_i (-1)^i (z_0, ..., ^z_i, ..., z_q)."""
    if t.degree < 1:
        raise BoundaryOfVertex("a single point has no boundary")
    return Chain([(t.face(i), (-1) ** i) for i in range(len(t))], mode)


def boundary(c: Chain) -> Chain:
    """Linear extension of :func:`tuple_boundary` to chains of tuples or normal forms."""

    def facets(g):
        if isinstance(g, CoinvariantGen):
            g = g.normal_tuple
        return tuple_boundary(g, c.mode)

    return c.map(facets)


def _alternating_rep(t: IdealTuple) -> tuple[IdealTuple, int] | None:
    if t.has_repeat():
        return None
    order = sorted(range(len(t)), key=lambda i: t.points[i].sort_key())
    return IdealTuple(t.points[i] for i in order), permutation_sign(tuple(order))


def alternation_reduce(c: Chain) -> Chain:
    """Kill tuples with repeated points; sort the rest, carrying the permutation sign."""
    out: dict = {}
    for g, coeff in c._terms.items():
        rep = _alternating_rep(g)
        if rep is None:
            continue
        t, s = rep
        out[t] = out.get(t, 0) + s * coeff
    return Chain._from_dict(out, c.mode)


def _normalize_tail(p0, p1, p2, rest):
    """Images of ``rest`` under the map sending (p0, p1, p2) to (inf, 0, 1)."""
    k1 = bracket(p2, p0)
    k2 = bracket(p2, p1)
    out = []
    for z in rest:
        num = bracket(z, p1) * k1
        den = bracket(z, p0) * k2
        out.append(ProjPoint(num, den))
    return out


def _six_values(z: ProjPoint) -> list[tuple[ProjPoint, int]]:
    """The cross-ratios of all reorderings of a 4-tuple with parameter z, with parities."""
    f = z.field
    one = ProjPoint(f.one)
    zero = ProjPoint(f.zero)
    inf = ProjPoint.infinity(f)
    # z is never 0, 1 or inf here, so every expression below is finite and nonzero
    w = z.num
    return [
        (z, 1),
        (ProjPoint(f.one, f.one - w), 1),
        (ProjPoint(w - f.one, w), 1),
        (ProjPoint(f.one, w), -1),
        (ProjPoint(f.one - w), -1),
        (ProjPoint(w, w - f.one), -1),
    ] if z not in (zero, one, inf) else []


def _normal_form_4(pts: tuple) -> tuple[tuple, int, bool]:
    p0, p1, p2, p3 = pts
    (z,) = _normalize_tail(p0, p1, p2, [p3])
    best = min(_six_values(z), key=lambda vs: vs[0].sort_key())[0]
    signs = {s for v, s in _six_values(z) if v == best}
    f = p0.field
    head = (ProjPoint.infinity(f), ProjPoint(f.zero), ProjPoint(f.one))
    torsion = len(signs) == 2
    return head + (best,), (1 if torsion else signs.pop()), torsion


def _normal_form(pts: tuple) -> tuple[tuple, int, bool]:
    """Lexicographically least normalized permutation of distinct points.

    Returns (normal points, sign, torsion).  For a fixed leading triple the
    least tail is the sorted one, so only ordered triples need enumerating.
    """
    n = len(pts)
    field = pts[0].field
    inf, zero, one = ProjPoint.infinity(field), ProjPoint(field.zero), ProjPoint(field.one)
    if n == 1:
        return (inf,), 1, False
    if n == 2:
        # (inf, 0) is sent to (0, inf) by z -> 1/z, so it equals its negative
        return (inf, zero), 1, True
    best = None
    signs: set = set()
    idx = range(n)
    br = {}
    for i in idx:
        for j in range(i + 1, n):
            br[i, j] = x = bracket(pts[i], pts[j])
            br[j, i] = -x
    for i, j, k in permutations(idx, 3):
        rest_idx = [m for m in idx if m not in (i, j, k)]
        k1, k2 = br[k, i], br[k, j]
        tail = [ProjPoint(br[m, j] * k1, br[m, i] * k2) for m in rest_idx]
        order = sorted(range(len(tail)), key=lambda m: tail[m].sort_key())
        key = tuple(tail[m].sort_key() for m in order)
        perm = (i, j, k) + tuple(rest_idx[m] for m in order)
        sign = permutation_sign(perm)
        if best is None or key < best[0]:
            best = (key, tuple(tail[m] for m in order))
            signs = {sign}
        elif key == best[0]:
            signs.add(sign)
    torsion = len(signs) == 2
    return (inf, zero, one) + best[1], (signs.pop() if not torsion else 1), torsion


def coinvariant_gen(t: IdealTuple) -> tuple[CoinvariantGen, int] | None:
    """Normal generator and sign of one tuple, or None when it vanishes (repeat)."""
    if isinstance(t, CoinvariantGen):
        return t, 1
    if t.has_repeat():
        return None
    if len(t) == 4:
        pts, sign, torsion = _normal_form_4(t.points)
    else:
        pts, sign, torsion = _normal_form(t.points)
    return CoinvariantGen(IdealTuple(pts), torsion), sign


def coinvariant_reduce(c: Chain) -> Chain:
    """Reduce a chain of tuples to PGL(2)-coinvariant normal forms.

    Z-mode keeps torsion generators with coefficients mod 2, Q-mode drops them.
    Applying it to a chain that is already reduced returns it unchanged.
    """
    out: dict = {}
    for g, coeff in c._terms.items():
        if isinstance(g, CoinvariantGen):
            gen, sign = g, 1
        else:
            rep = coinvariant_gen(g)
            if rep is None:
                continue
            gen, sign = rep
        if gen.torsion and c.mode == "Q":
            continue
        out[gen] = out.get(gen, 0) + sign * coeff
    if c.mode == "Z":
        out = {g: (v % 2 if g.torsion else v) for g, v in out.items()}
    return Chain._from_dict(out, c.mode)


def is_cycle(c: Chain, quotient: str = ALTERNATING) -> bool:
    """True iff the boundary of ``c`` vanishes in the given quotient."""
    degrees = c.degrees()
    if len(degrees) > 1:
        raise MixedDegree(f"chain mixes degrees {sorted(degrees)}")
    if not c:
        return True
    b = boundary(c)
    if quotient == FREE:
        return not b
    if quotient == ALTERNATING:
        return not alternation_reduce(b)
    if quotient == COINVARIANT:
        return not coinvariant_reduce(b)
    raise ValueError(f"unknown quotient {quotient!r}")


def act(g: Matrix2, c: Chain) -> Chain:
    """Diagonal action of a Moebius map on a chain of tuples."""
    return c.map_gens(lambda t: t.act(g))


def ensure_normalizable(t: IdealTuple) -> None:
    if len(set(t.points)) < 3:
        raise UnnormalizableTuple(f"{t!r} has fewer than three distinct points")


# ---------------------------------------------------------------------------
# serialization


def chain_to_json(c: Chain, reduction: str = FREE) -> dict:
    terms = []
    for g, coeff in c.items():
        if isinstance(g, CoinvariantGen):
            item = {"tuple": [format_point(p) for p in g.points]}
            if g.torsion:
                item["torsion"] = True
        else:
            item = {"tuple": [format_point(p) for p in g.points]}
        terms.append([str(coeff), item])
    return {"mode": c.mode, "reduction": reduction, "terms": terms}


def chain_from_json(field, obj: dict) -> Chain:
    mode = obj.get("mode", "Z")
    reduction = obj.get("reduction", FREE)
    terms = []
    for coeff, item in obj["terms"]:
        t = IdealTuple(parse_point(field, p) for p in item["tuple"])
        gen = CoinvariantGen(t, item.get("torsion", False)) if reduction == COINVARIANT else t
        terms.append((gen, Fraction(coeff)))
    return Chain(terms, mode)


def combinations_of(points, k):
    return [IdealTuple(c) for c in combinations(points, k)]

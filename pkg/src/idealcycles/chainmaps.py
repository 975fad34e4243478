"""Evaluation maps from bar/cone chains and decorated chains to ideal-boundary tuples.

``ev`` sends a bar simplex ``(g_1, ..., g_n)`` to ``(c0, g_1 c0, ..., g_1...g_n c0)``
and a cone simplex over it (cusp i) to the same tuple followed by ``c_i``.
``psi_push`` sends a decorated simplex to the tuple of its vertices, with the
interior vertices pushed from the base point orbit to the orbit of ``c0``.
:func:`verify_commuting_square` compares the two resulting pre-Bloch chains.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import mpmath

from .barhomology import (
    Apex,
    ApexVertex,
    BarSimplex,
    ConeSimplex,
    DecoratedSimplex,
    Representation,
    apply_representation,
    chain_boundary,
    phi_hat,
)
from .blochmachine import algvol
from .chaincore import Chain, IdealTuple, coinvariant_gen, coinvariant_reduce
from .errors import (
    BasePointCollision,
    CuspFixedPointViolation,
    NotRelativeCycle,
)
from .exactnum import GroupElem, ProjPoint, format_point


@dataclass
class CuspData:
    """Cusp subgroups with their fixed points, plus the base ideal point c0."""

    generators: dict[int, list[GroupElem]]
    fixed_points: dict[int, ProjPoint]
    base_point: ProjPoint
    require_parabolic: bool = True
    warnings: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        for i, gens in self.generators.items():
            if i not in self.fixed_points:
                raise CuspFixedPointViolation(f"cusp {i} has no fixed point")
            c = self.fixed_points[i]
            for g in gens:
                if g.apply(c) != c:
                    raise CuspFixedPointViolation(f"generator {g!r} of cusp {i} moves {c!r}")
                tr = g.trace()
                if not (tr == 2 or tr == -2):
                    msg = f"generator {g!r} of cusp {i} has trace {tr}, not parabolic"
                    if self.require_parabolic:
                        raise CuspFixedPointViolation(msg)
                    self.warnings.append(msg)
        for i, c in self.fixed_points.items():
            if c == self.base_point:
                raise BasePointCollision(f"base point coincides with the fixed point of cusp {i}")

    def cusp_point(self, i: int) -> ProjPoint:
        try:
            return self.fixed_points[i]
        except KeyError:
            raise CuspFixedPointViolation(f"unknown cusp index {i}") from None

    def fixes(self, i: int, g: GroupElem) -> bool:
        c = self.cusp_point(i)
        return g.apply(c) == c

    def pushed(self, rho: Representation) -> CuspData:
        """Cusp data transported by the boundary map of ``rho``."""
        if rho.boundary_map is None:
            return self
        return CuspData(
            {i: [rho(g) for g in gens] for i, gens in self.generators.items()},
            {i: rho.push_point(c) for i, c in self.fixed_points.items()},
            rho.push_point(self.base_point),
            self.require_parabolic,
        )


# ---------------------------------------------------------------------------
# evaluation maps


def orbit_tuple(elems: Sequence[GroupElem], c0: ProjPoint) -> list[ProjPoint]:
    """(c0, g_1 c0, g_1 g_2 c0, ...)."""
    pts = [c0]
    acc = None
    for g in elems:
        acc = g if acc is None else acc @ g
        pts.append(acc.apply(c0))
    return pts


def ev_bar(b: BarSimplex, c0: ProjPoint) -> IdealTuple:
    return IdealTuple(orbit_tuple(b.elems, c0))


def ev_cone(c: ConeSimplex, cusps: CuspData, check: bool = True) -> IdealTuple:
    ci = cusps.cusp_point(c.cusp)
    if check:
        for g in c.base.elems:
            if g.apply(ci) != ci:
                raise CuspFixedPointViolation(f"cone entry {g!r} does not fix cusp point {ci!r}")
    return IdealTuple(orbit_tuple(c.base.elems, cusps.base_point) + [ci])


def ev(s, cusps: CuspData, check: bool = True) -> IdealTuple:
    if isinstance(s, BarSimplex):
        return ev_bar(s, cusps.base_point)
    if isinstance(s, ConeSimplex):
        return ev_cone(s, cusps, check)
    if isinstance(s, Apex):
        return IdealTuple((cusps.cusp_point(s.cusp),))
    raise TypeError(f"cannot evaluate {s!r}")


def ev_chain(c: Chain, cusps: CuspData, check: bool = True) -> Chain:
    return c.map_gens(lambda s: ev(s, cusps, check))


def psi_push(s, cusps: CuspData) -> IdealTuple:
    """Vertex tuple of a decorated simplex with the base point pushed to c0."""
    if isinstance(s, ApexVertex):
        return IdealTuple((cusps.cusp_point(s.cusp),))
    pts = orbit_tuple(s.words, cusps.base_point)
    if s.is_ideal:
        ci = cusps.cusp_point(s.cusp)
        for g in s.words:
            if g.apply(ci) != ci:
                raise CuspFixedPointViolation(f"edge label {g!r} does not fix cusp point {ci!r}")
        pts.append(ci)
    return IdealTuple(pts)


def psi_chain(c: Chain, cusps: CuspData) -> Chain:
    return c.map_gens(lambda s: psi_push(s, cusps))


def pushed_tuple(s, cusps: CuspData, rho: Representation) -> IdealTuple:
    """The decorated simplex's tuple transported by the boundary map of rho."""
    return IdealTuple(rho.push_point(p) for p in psi_push(s, cusps).points)


# ---------------------------------------------------------------------------
# the commuting square


@dataclass
class SquareReport:
    left_chain: Chain
    right_chain: Chain
    chains_equal: bool
    left_volume: object
    right_volume: object
    l1_norm: object
    warnings: list[str] = field(default_factory=list)
    diff: Chain | None = None
    generator_mismatches: int = 0

    @property
    def volume_diff(self):
        return self.left_volume - self.right_volume

    def ok(self, tol: float = 1e-8) -> bool:
        return self.chains_equal and abs(self.volume_diff) < tol

    def as_dict(self) -> dict:
        def chain_json(c: Chain):
            return [[str(a), format_point(g.parameter)] + (["torsion"] if g.torsion else [])
                    for g, a in c.items()]

        out = {
            "left_chain": chain_json(self.left_chain),
            "right_chain": chain_json(self.right_chain),
            "chains_equal": self.chains_equal,
            "left_volume": mpmath.nstr(self.left_volume, 13),
            "right_volume": mpmath.nstr(self.right_volume, 13),
            "volume_diff": mpmath.nstr(self.volume_diff, 5),
            "l1_norm": str(self.l1_norm),
            "generator_mismatches": self.generator_mismatches,
            "warnings": list(self.warnings),
        }
        if self.diff:
            out["diff"] = chain_json(self.diff)
        return out


def _collisions(cycle: Chain, cusps: CuspData, rho: Representation) -> list:
    return [s for s, _ in cycle.items() if pushed_tuple(s, cusps, rho).has_repeat()]


def suggest_base_points(cycle: Chain, cusps: CuspData, rho: Representation, count: int = 3) -> list:
    """A few base points for which no pushed tuple degenerates."""
    f = cusps.base_point.field
    gen = getattr(f, "gen", f.one)
    found = []
    for k in range(1, 40):
        p = ProjPoint(f.coerce(Fraction(k, 7)) + f.coerce(Fraction(k + 1, 5)) * gen)
        if p in cusps.fixed_points.values():
            continue
        trial = CuspData(cusps.generators, cusps.fixed_points, p, cusps.require_parabolic)
        if not _collisions(cycle, trial, rho):
            found.append(p)
            if len(found) == count:
                break
    return found


def check_base_point(cycle: Chain, cusps: CuspData, rho: Representation,
                     pushed: dict | None = None) -> None:
    """Pushed tuples must have pairwise distinct entries."""
    if pushed is None:
        bad = _collisions(cycle, cusps, rho)
    else:
        bad = [s for s, t in pushed.items() if t.has_repeat()]
    if bad:
        hints = ", ".join(str(p.num) for p in suggest_base_points(cycle, cusps, rho))
        raise BasePointCollision(
            f"{len(bad)} decorated simplices push to tuples with repeated points; "
            f"try one of these base points: {hints}"
        )


def _left_tuple(s, rho: Representation, target: CuspData) -> IdealTuple:
    image = apply_representation(Chain.single(phi_hat(s)), rho).generators()[0]
    return ev(image, target)


def _reduced_terms(tuples: dict, cycle: Chain, mode: str) -> tuple[Chain, dict]:
    """Reduced chain plus the normal form of every single tuple."""
    forms = {s: coinvariant_gen(t) for s, t in tuples.items()}
    terms = [(f[0], f[1] * a) for s, a in cycle.items() if (f := forms[s]) is not None]
    return coinvariant_reduce(Chain(terms, mode)), forms


def verify_commuting_square(
    cycle: Chain,
    cusps: CuspData,
    rho: Representation | None = None,
    mode: str = "Q",
) -> SquareReport:
    """Compare ev(rho(phi_hat(cycle))) with cr(pushed psi(cycle)) as pre-Bloch chains.

    The comparison is made both for the whole chains and simplex by simplex.
    """
    rho = rho or Representation.identity()
    if rho.images:
        rho.check_relators(cusps.base_point.field)
    bar = cycle.map_gens(phi_hat).with_mode(mode)
    closure = chain_boundary(bar)
    if closure:
        raise NotRelativeCycle(
            f"decorated chain is not closed in the cone complex ({len(closure)} boundary terms)"
        )
    pushed = {s: pushed_tuple(s, cusps, rho) for s, _ in cycle.items()}
    check_base_point(cycle, cusps, rho, pushed)
    target = cusps.pushed(rho)
    evaluated = {s: _left_tuple(s, rho, target) for s, _ in cycle.items()}
    left, left_forms = _reduced_terms(evaluated, cycle, mode)
    right, right_forms = _reduced_terms(pushed, cycle, mode)
    mismatches = sum(left_forms[s] != right_forms[s] for s in left_forms)
    equal = left == right and mismatches == 0
    return SquareReport(
        left_chain=left,
        right_chain=right,
        chains_equal=equal,
        left_volume=algvol(left),
        right_volume=algvol(right),
        l1_norm=cycle.l1_norm(),
        warnings=list(cusps.warnings),
        diff=None if left == right else left - right,
        generator_mismatches=mismatches,
    )

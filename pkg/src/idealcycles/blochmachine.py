"""Pre-Bloch classes of ideal tetrahedra and the Bloch-Wigner dilogarithm.

Elements of the pre-Bloch group are represented by chains of degree-3
:class:`CoinvariantGen` whose normal tuples are ``(inf, 0, 1, z)``.  The
pairing with volume uses ``D(z) = Im Li2(z) + arg(1 - z) log|z|``.
"""

from __future__ import annotations

from functools import lru_cache

import mpmath

from .chaincore import Chain, CoinvariantGen, IdealTuple, coinvariant_reduce, tuple_boundary
from .errors import DegenerateTuple, MixedDegree
from .exactnum import DEFAULT_PRECISION, ProjPoint, cross_ratio, format_point

# ---------------------------------------------------------------------------
# Bloch-Wigner dilogarithm


@lru_cache(maxsize=8)
def _bernoulli_coeffs(prec: int, terms: int) -> tuple:
    """B_n / (n+1)! for n < terms, with B_1 = -1/2."""
    with mpmath.workprec(prec):
        return tuple(mpmath.bernoulli(n) / mpmath.factorial(n + 1) for n in range(terms))


def _li2_small(z, prec: int):
    """Li2 via the Bernoulli series in u = -log(1 - z).

    Converges for |u| < 2 pi; after reflection |u| <= log 2 + pi/3.
    """
    u = -mpmath.log(1 - z)
    # |u| < 1.75 so terms shrink like (1.75 / 2pi)^n
    terms = int(prec * 0.55) + 10
    coeffs = _bernoulli_coeffs(prec, terms)
    total = mpmath.mpc(0)
    power = u
    for n in range(terms):
        c = coeffs[n]
        if c:
            total += c * power
        power *= u
    return total


def _d_raw(z, prec: int):
    li = _li2_small(z, prec)
    return mpmath.im(li) + mpmath.arg(1 - z) * mpmath.log(abs(z))


@lru_cache(maxsize=4096)
def _bloch_wigner_point(z: ProjPoint, prec: int):
    return bloch_wigner(z.num, prec)


def bloch_wigner(z, prec: int = DEFAULT_PRECISION):
    """D(z) as an mpmath real; 0 at z in {0, 1, inf}.

    ``z`` may be a Python complex, an mpmath number, a field scalar or a ProjPoint.
    """
    if isinstance(z, ProjPoint):
        if z.is_infinity:
            return mpmath.mpf(0)
        return _bloch_wigner_point(z, prec)
    if hasattr(z, "to_mpc"):
        z = z.to_mpc(prec)
    with mpmath.workprec(prec + 20):
        z = mpmath.mpc(z)
        if z == 0 or z == 1:
            return mpmath.mpf(0)
        # D is odd under z -> 1/z and z -> 1 - z; reduce into |z| <= 1, Re z <= 1/2
        sign = 1
        if abs(z) > 1:
            z, sign = 1 / z, -sign
        if mpmath.re(z) > 0.5:
            z, sign = 1 - z, -sign
            if abs(z) > 1:
                z, sign = 1 / z, -sign
        value = sign * _d_raw(z, prec + 20)
    with mpmath.workprec(prec):
        return +value


def bloch_wigner_float(z) -> float:
    return float(bloch_wigner(z))


# ---------------------------------------------------------------------------
# classes of ideal tetrahedra


def cr_class(t: IdealTuple | tuple, mode: str = "Q") -> Chain:
    """The coinvariant class of a 4-tuple; zero on degenerate tuples."""
    if not isinstance(t, IdealTuple):
        t = IdealTuple(t)
    if t.degree != 3:
        raise MixedDegree(f"cross-ratio classes need 4 points, got {len(t)}")
    return coinvariant_reduce(Chain.single(t, 1, mode))


def shape_generator(z: ProjPoint) -> tuple[CoinvariantGen, int] | None:
    """Normal generator and sign of the class [z] = (inf, 0, 1, z)."""
    f = z.field
    inf, zero, one = ProjPoint.infinity(f), ProjPoint(f.zero), ProjPoint(f.one)
    c = cr_class(IdealTuple((inf, zero, one, z)), "Z")
    if not c:
        return None
    (gen, coeff), = c.items()
    return gen, coeff


def shapes_to_chain(shapes, mode: str = "Q") -> Chain:
    """sum a_i [z_i] for a list of (coefficient, ProjPoint) pairs."""
    total = Chain((), mode)
    for coeff, z in shapes:
        f = z.field
        inf, zero, one = ProjPoint.infinity(f), ProjPoint(f.zero), ProjPoint(f.one)
        total = total + Chain.single(IdealTuple((inf, zero, one, z)), coeff, mode)
    return coinvariant_reduce(total)


def five_term_boundary(points, mode: str = "Q") -> Chain:
    """sum_i (-1)^i cr_class(facet i) of a 5-tuple of distinct points."""
    t = points if isinstance(points, IdealTuple) else IdealTuple(points)
    if t.degree != 4:
        raise MixedDegree(f"the five-term relation needs 5 points, got {len(t)}")
    if t.has_repeat():
        raise DegenerateTuple(f"repeated point in {t!r}")
    return coinvariant_reduce(tuple_boundary(t, mode))


def five_term_witness(points) -> Chain:
    """The 4-chain whose boundary is the five-term combination."""
    t = points if isinstance(points, IdealTuple) else IdealTuple(points)
    return Chain.single(t)


# ---------------------------------------------------------------------------
# volume pairing


def _gen_parameter(g) -> ProjPoint:
    if isinstance(g, CoinvariantGen):
        return g.parameter
    p0, p1, p2, p3 = g.points
    if len({p0, p1, p2, p3}) < 4:
        return None
    return cross_ratio(p0, p1, p2, p3)


def algvol(c: Chain, prec: int = DEFAULT_PRECISION):
    """sum of coefficient * D(parameter) over a degree-3 chain.

    Raw tuples are evaluated through their cross-ratio, which gives the
    orientation-signed volume of the straight ideal tetrahedron.
    """
    with mpmath.workprec(prec):
        total = mpmath.mpf(0)
        for g, coeff in c.items():
            if g.degree != 3:
                raise MixedDegree(f"volume pairing needs degree 3, got {g.degree}")
            if isinstance(g, CoinvariantGen) and g.torsion:
                continue
            z = _gen_parameter(g)
            if z is None:
                continue
            weight = mpmath.mpf(coeff.numerator) / coeff.denominator
            total += weight * bloch_wigner(z, prec)
        return +total


def pre_bloch_to_json(c: Chain) -> list:
    return [[str(coeff), format_point(g.parameter)] for g, coeff in c.items()]


def shape_form(c: Chain) -> list[tuple]:
    """(coefficient, z) pairs; the class of the generator (inf, 0, 1, z) is [z]."""
    return [(coeff, g.parameter) for g, coeff in c.items()]


def class_difference(a: Chain, b: Chain, witness: Chain | None = None) -> Chain:
    """a - b - reduce(boundary of witness); zero certifies equality in the pre-Bloch group."""
    diff = a - b
    if witness is not None:
        bd = Chain((), a.mode)
        for t, coeff in witness.items():
            bd = bd + tuple_boundary(t, a.mode) * coeff
        diff = diff - coinvariant_reduce(bd)
    return coinvariant_reduce(diff)

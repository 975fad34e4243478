"""Exact quadratic scalars and Moebius transformations of the projective line.

Two scalar flavours share one small interface (``+ - * /``, ``is_zero``,
``sort_key``, ``to_mpc``):

* :class:`QuadNumber` -- exact elements ``a + b*sqrt(d)`` of a quadratic
  field with rational ``a, b``.  For ``d < 0`` this is an imaginary quadratic
  field embedded in C with ``sqrt(d) = i*sqrt(|d|)``.
* :class:`FloatNumber` -- complex numbers at a fixed working precision,
  backed by mpmath.

All values are immutable.
"""

from __future__ import annotations

import math
import random
import re
from fractions import Fraction
from typing import Union

import mpmath

from .errors import (
    DegenerateTriple,
    DegenerateTuple,
    FieldMismatch,
    InvariantViolation,
    ParseError,
    ZeroPoint,
)

DEFAULT_PRECISION = 212

Rational = Union[int, Fraction]


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    if n < 2:
        return n == 1
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None."""
    if q < 0:
        return None
    p, r = q.numerator, q.denominator
    sp, sr = math.isqrt(p), math.isqrt(r)
    if sp * sp == p and sr * sr == r:
        return Fraction(sp, sr)
    return None


# ---------------------------------------------------------------------------
# exact quadratic fields


class QuadraticField:
    """The field Q(sqrt(d)) for a square-free integer d != 0, 1."""

    mode = "exact"
    __slots__ = ("d", "_zero", "_one")

    def __init__(self, d: int):
        d = int(d)
        if d in (0, 1) or not _is_squarefree(d):
            raise InvariantViolation(f"field discriminant {d} is not square-free and != 0, 1")
        self.d = d
        self._zero = QuadNumber(Fraction(0), Fraction(0), self)
        self._one = QuadNumber(Fraction(1), Fraction(0), self)

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and other.d == self.d

    def __hash__(self):
        return hash(("Q", self.d))

    def __repr__(self):
        return f"QuadraticField({self.d})"

    def __call__(self, a: Rational = 0, b: Rational = 0) -> QuadNumber:
        return QuadNumber(Fraction(a), Fraction(b), self)

    @property
    def zero(self) -> QuadNumber:
        return self._zero

    @property
    def one(self) -> QuadNumber:
        return self._one

    @property
    def gen(self) -> QuadNumber:
        """sqrt(d)."""
        return QuadNumber(Fraction(0), Fraction(1), self)

    def coerce(self, x) -> QuadNumber:
        if isinstance(x, QuadNumber):
            if x.field.d != self.d:
                raise FieldMismatch(f"Q(sqrt({x.field.d})) element used in Q(sqrt({self.d}))")
            return x
        if isinstance(x, (int, Fraction)):
            return QuadNumber(Fraction(x), Fraction(0), self)
        if isinstance(x, FloatNumber):
            raise FieldMismatch("float scalar used in an exact field")
        raise TypeError(f"cannot coerce {x!r} into {self!r}")

    # serialization: "a/b+c/d*s" with s = sqrt(d)
    _TERM = re.compile(r"[+-]?[^+-]+")

    def parse(self, text: str) -> QuadNumber:
        if not isinstance(text, str):
            if isinstance(text, int):
                return self(text)
            raise ParseError(f"scalar must be a string, got {text!r}")
        s = text.replace(" ", "")
        if not s:
            raise ParseError("empty scalar")
        a = Fraction(0)
        b = Fraction(0)
        terms = self._TERM.findall(s)
        if "".join(terms) != s:
            raise ParseError(f"cannot parse scalar {text!r}")
        try:
            for term in terms:
                sign = -1 if term[0] == "-" else 1
                body = term.lstrip("+-")
                if body == "s":
                    b += sign
                elif body.endswith("*s"):
                    b += sign * Fraction(body[:-2])
                elif "s" in body:
                    raise ValueError(body)
                else:
                    a += sign * Fraction(body)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"cannot parse scalar {text!r}") from exc
        return self(a, b)

    def format(self, x: QuadNumber) -> str:
        x = self.coerce(x)
        if x.b == 0:
            return str(x.a)
        tail = f"{abs(x.b)}*s" if abs(x.b) != 1 else "s"
        if x.a == 0:
            return ("-" if x.b < 0 else "") + tail
        return f"{x.a}{'-' if x.b < 0 else '+'}{tail}"

    def header(self) -> dict:
        return {"mode": "exact", "d": self.d}

    def random(self, rng: random.Random, height: int = 6) -> QuadNumber:
        def q():
            return Fraction(rng.randint(-height, height), rng.randint(1, height))

        return self(q(), q())


class QuadNumber:
    __slots__ = ("a", "b", "field")

    def __init__(self, a: Fraction, b: Fraction, field: QuadraticField):
        self.a = a
        self.b = b
        self.field = field

    def _co(self, other) -> QuadNumber | None:
        if isinstance(other, QuadNumber):
            if other.field.d != self.field.d:
                raise FieldMismatch(
                    f"mixed fields Q(sqrt({self.field.d})) and Q(sqrt({other.field.d}))"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadNumber(Fraction(other), Fraction(0), self.field)
        return None

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return QuadNumber(self.a + o.a, self.b + o.b, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return QuadNumber(self.a - o.a, self.b - o.b, self.field)

    def __rsub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return QuadNumber(-self.a, -self.b, self.field)

    def __mul__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        # integer cross-multiplication: one gcd per component instead of six
        an, ad = self.a.numerator, self.a.denominator
        bn, bd = self.b.numerator, self.b.denominator
        cn, cd = o.a.numerator, o.a.denominator
        en, ed = o.b.numerator, o.b.denominator
        if not bn and not en:
            return QuadNumber(Fraction(an * cn, ad * cd), Fraction(0), self.field)
        re = Fraction(an * cn * bd * ed + self.field.d * bn * en * ad * cd, ad * cd * bd * ed)
        im = Fraction(an * en * bd * cd + bn * cn * ad * ed, ad * ed * bd * cd)
        return QuadNumber(re, im, self.field)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.field.d * self.b * self.b

    def conjugate(self) -> QuadNumber:
        """Galois conjugate a - b*sqrt(d)."""
        return QuadNumber(self.a, -self.b, self.field)

    def inverse(self) -> QuadNumber:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadNumber(self.a / n, -self.b / n, self.field)

    def __truediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QuadNumber):
            return self.a == other.a and self.b == other.b and self.field.d == other.field.d
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.field.d))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sort_key(self) -> tuple:
        return (self.a, self.b)

    def sqrt(self) -> QuadNumber | None:
        """An exact square root inside the field, or None when there is none."""
        A, B, d = self.a, self.b, self.field.d
        if B == 0:
            r = rational_sqrt(A)
            if r is not None:
                return self.field(r, 0)
            r = rational_sqrt(A / d)
            if r is not None:
                return self.field(0, r)
            return None
        disc = rational_sqrt(A * A - d * B * B)
        if disc is None:
            return None
        for y2 in ((A + disc) / (2 * d), (A - disc) / (2 * d)):
            y = rational_sqrt(y2) if y2 > 0 else None
            if y:
                x = B / (2 * y)
                return self.field(x, y)
        return None

    def to_mpc(self, prec: int = DEFAULT_PRECISION):
        with mpmath.workprec(prec):
            a = mpmath.mpf(self.a.numerator) / self.a.denominator
            b = mpmath.mpf(self.b.numerator) / self.b.denominator
            d = self.field.d
            if d < 0:
                return mpmath.mpc(a, b * mpmath.sqrt(-d))
            return mpmath.mpc(a + b * mpmath.sqrt(d), 0)

    def to_complex(self) -> complex:
        r = math.sqrt(abs(self.field.d))
        if self.field.d < 0:
            return complex(float(self.a), float(self.b) * r)
        return complex(float(self.a) + float(self.b) * r, 0.0)

    def __repr__(self):
        return f"<{self.field.format(self)} in Q(sqrt({self.field.d}))>"

    def __str__(self):
        return self.field.format(self)


# ---------------------------------------------------------------------------
# big-float complex numbers


class ComplexFloatField:
    """C at a fixed working precision (bits)."""

    mode = "float"
    __slots__ = ("prec", "tol", "_quantum", "_zero", "_one")

    def __init__(self, prec: int = DEFAULT_PRECISION):
        if prec < 32:
            raise InvariantViolation("precision must be at least 32 bits")
        self.prec = int(prec)
        with mpmath.workprec(self.prec):
            self.tol = mpmath.mpf(2) ** (-(self.prec // 2))
            self._quantum = mpmath.mpf(2) ** (self.prec // 2 - 8)
        self._zero = FloatNumber(mpmath.mpc(0), self)
        self._one = FloatNumber(mpmath.mpc(1), self)

    def __eq__(self, other):
        return isinstance(other, ComplexFloatField) and other.prec == self.prec

    def __hash__(self):
        return hash(("C", self.prec))

    def __repr__(self):
        return f"ComplexFloatField({self.prec})"

    def __call__(self, re=0, im=0) -> FloatNumber:
        with mpmath.workprec(self.prec):
            if isinstance(re, Fraction):
                re = mpmath.mpf(re.numerator) / re.denominator
            if isinstance(im, Fraction):
                im = mpmath.mpf(im.numerator) / im.denominator
            return FloatNumber(mpmath.mpc(re, im), self)

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def coerce(self, x) -> FloatNumber:
        if isinstance(x, FloatNumber):
            if x.field.prec != self.prec:
                raise FieldMismatch("float scalars of different precision")
            return x
        if isinstance(x, (int, Fraction, float, complex)):
            if isinstance(x, complex):
                return self(x.real, x.imag)
            return self(x)
        if isinstance(x, QuadNumber):
            return FloatNumber(x.to_mpc(self.prec), self)
        raise TypeError(f"cannot coerce {x!r} into {self!r}")

    _FLOAT = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
    _COMPLEX = re.compile(rf"^({_FLOAT})?(?:([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)j)?$")

    def parse(self, text: str) -> FloatNumber:
        if not isinstance(text, str):
            raise ParseError(f"scalar must be a string, got {text!r}")
        s = text.replace(" ", "")
        if s.endswith("j") and re.fullmatch(rf"{self._FLOAT}j", s):
            re_part, im_part = "0", s[:-1]
        else:
            m = self._COMPLEX.match(s)
            if not m or not s:
                raise ParseError(f"cannot parse float scalar {text!r}")
            re_part, im_part = m.group(1) or "0", m.group(2) or "0"
        with mpmath.workprec(self.prec):
            return FloatNumber(mpmath.mpc(mpmath.mpf(re_part), mpmath.mpf(im_part)), self)

    def format(self, x: FloatNumber) -> str:
        x = self.coerce(x)
        digits = int(self.prec * 0.30103) + 1
        with mpmath.workprec(self.prec):
            re_s = mpmath.nstr(x.value.real, digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)
            im = x.value.imag
            im_s = mpmath.nstr(abs(im), digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)
        return f"{re_s}{'-' if im < 0 else '+'}{im_s}j"

    def header(self) -> dict:
        return {"mode": "float", "precision": self.prec}

    def random(self, rng: random.Random, height: int = 6) -> FloatNumber:
        return self(rng.uniform(-height, height), rng.uniform(-height, height))


class FloatNumber:
    __slots__ = ("value", "field")

    def __init__(self, value, field: ComplexFloatField):
        self.value = value
        self.field = field

    def _co(self, other):
        if isinstance(other, FloatNumber):
            if other.field.prec != self.field.prec:
                raise FieldMismatch("float scalars of different precision")
            return other.value
        if isinstance(other, (int, float, complex)):
            return other
        if isinstance(other, Fraction):
            return mpmath.mpf(other.numerator) / other.denominator
        if isinstance(other, QuadNumber):
            raise FieldMismatch("exact scalar used in float mode")
        return None

    def _wrap(self, v):
        return FloatNumber(v, self.field)

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        with mpmath.workprec(self.field.prec):
            return self._wrap(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        with mpmath.workprec(self.field.prec):
            return self._wrap(self.value - o)

    def __rsub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        with mpmath.workprec(self.field.prec):
            return self._wrap(o - self.value)

    def __neg__(self):
        return self._wrap(-self.value)

    def __mul__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        with mpmath.workprec(self.field.prec):
            return self._wrap(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        with mpmath.workprec(self.field.prec):
            return self._wrap(self.value / o)

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        with mpmath.workprec(self.field.prec):
            return self._wrap(o / self.value)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of (numerically) zero")
        return 1 / self

    def __eq__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        with mpmath.workprec(self.field.prec):
            return abs(self.value - o) <= self.field.tol

    def __hash__(self):
        return hash(self.sort_key())

    def is_zero(self) -> bool:
        return abs(self.value) <= self.field.tol

    def sort_key(self) -> tuple:
        q = self.field._quantum
        with mpmath.workprec(self.field.prec):
            return (int(mpmath.nint(self.value.real * q)), int(mpmath.nint(self.value.imag * q)))

    def to_mpc(self, prec: int = DEFAULT_PRECISION):
        return self.value

    def to_complex(self) -> complex:
        return complex(self.value)

    def __repr__(self):
        return f"<{mpmath.nstr(self.value, 15)} @{self.field.prec}b>"


Scalar = Union[QuadNumber, FloatNumber]
Field = Union[QuadraticField, ComplexFloatField]


def field_from_header(header: dict) -> Field:
    mode = header.get("mode", "exact")
    if mode == "exact":
        return QuadraticField(int(header["d"]))
    if mode == "float":
        return ComplexFloatField(int(header.get("precision", DEFAULT_PRECISION)))
    raise ParseError(f"unknown field mode {mode!r}")


# ---------------------------------------------------------------------------
# the projective line


class ProjPoint:
    """A point of P^1 stored in canonical form: (z : 1) or (1 : 0)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = num.field.one
        if not hasattr(num, "field"):
            num = den.field.coerce(num)
        if not hasattr(den, "field"):
            den = num.field.coerce(den)
        if den.is_zero():
            if num.is_zero():
                raise ZeroPoint("(0 : 0) is not a point of P^1")
            self.num, self.den = num.field.one, num.field.zero
        else:
            self.num, self.den = (num / den, den.field.one)

    @classmethod
    def infinity(cls, field: Field) -> ProjPoint:
        return cls(field.one, field.zero)

    @property
    def field(self) -> Field:
        return self.num.field

    @property
    def is_infinity(self) -> bool:
        return self.den.is_zero()

    @property
    def value(self):
        """The affine coordinate (None at infinity)."""
        return None if self.is_infinity else self.num

    def sort_key(self) -> tuple:
        # infinity is the largest point
        if self.is_infinity:
            return (1,)
        return (0,) + self.num.sort_key()

    def __lt__(self, other: ProjPoint) -> bool:
        return self.sort_key() < other.sort_key()

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.num == other.num

    def __hash__(self):
        return hash("inf") if self.is_infinity else hash(self.num)

    def to_complex(self) -> complex | None:
        return None if self.is_infinity else self.num.to_complex()

    def __repr__(self):
        return "ProjPoint(inf)" if self.is_infinity else f"ProjPoint({self.num})"


def proj_canonical(num, den=None) -> ProjPoint:
    """Canonical representative of the point (num : den); idempotent on ProjPoints."""
    if isinstance(num, ProjPoint):
        return num
    return ProjPoint(num, den)


def bracket(p: ProjPoint, q: ProjPoint):
    """The 2x2 determinant [p, q] of homogeneous coordinates."""
    return p.num * q.den - p.den * q.num


# ---------------------------------------------------------------------------
# 2x2 matrices acting by Moebius transformations


class Matrix2:
    """An invertible 2x2 matrix over a field, acting on P^1."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d, field: Field | None = None):
        f = field or next((x.field for x in (a, b, c, d) if hasattr(x, "field")), None)
        if f is None:
            raise InvariantViolation("matrix needs at least one field scalar entry")
        self.a, self.b, self.c, self.d = (f.coerce(x) for x in (a, b, c, d))

    @property
    def field(self) -> Field:
        return self.a.field

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    @property
    def unimodular(self) -> bool:
        return self.det() == 1

    def __matmul__(self, other: Matrix2) -> Matrix2:
        a, b, c, d = self.entries()
        e, f, g, h = other.entries()
        cls = GroupElem if isinstance(self, GroupElem) and isinstance(other, GroupElem) else Matrix2
        return cls._raw(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    __mul__ = __matmul__

    @classmethod
    def _raw(cls, a, b, c, d):
        m = object.__new__(cls)
        m.a, m.b, m.c, m.d = a, b, c, d
        return m

    def adjugate(self) -> Matrix2:
        return Matrix2._raw(self.d, -self.b, -self.c, self.a)

    def inverse(self) -> Matrix2:
        k = self.det().inverse()
        return Matrix2._raw(self.d * k, -self.b * k, -self.c * k, self.a * k)

    def apply(self, p: ProjPoint) -> ProjPoint:
        return ProjPoint(self.a * p.num + self.b * p.den, self.c * p.num + self.d * p.den)

    def __eq__(self, other):
        if not isinstance(other, Matrix2):
            return NotImplemented
        return all(x == y for x, y in zip(self.entries(), other.entries()))

    def __hash__(self):
        return hash(self.entries())

    def sort_key(self) -> tuple:
        return tuple(x.sort_key() for x in self.entries())

    def is_identity(self) -> bool:
        return self.b.is_zero() and self.c.is_zero() and self.a == 1 and self.d == 1

    def __repr__(self):
        return f"{type(self).__name__}([[{self.a}, {self.b}], [{self.c}, {self.d}]])"


class GroupElem(Matrix2):
    """Element of SL(2); the determinant is checked on construction."""

    __slots__ = ()

    def __init__(self, a, b, c, d, field: Field | None = None):
        super().__init__(a, b, c, d, field)
        det = self.det()
        if isinstance(det, FloatNumber):
            with mpmath.workprec(det.field.prec):
                ok = abs(det.value - 1) <= mpmath.mpf(2) ** (-det.field.prec + 8)
        else:
            ok = det == 1
        if not ok:
            raise InvariantViolation(f"determinant {det!r} != 1")

    @classmethod
    def identity(cls, field: Field) -> GroupElem:
        return cls._raw(field.one, field.zero, field.zero, field.one)

    def inverse(self) -> GroupElem:
        return GroupElem._raw(self.d, -self.b, -self.c, self.a)

    def conjugate_by(self, h: GroupElem) -> GroupElem:
        return h @ self @ h.inverse()


def mobius_apply(g: Matrix2, p: ProjPoint) -> ProjPoint:
    return g.apply(p)


def mobius_from_triple(p0: ProjPoint, p1: ProjPoint, p2: ProjPoint) -> Matrix2:
    """The Moebius map sending (p0, p1, p2) to (inf, 0, 1).

    Returned as a :class:`GroupElem` when the determinant has a square root in
    the field, otherwise as an unnormalized :class:`Matrix2`.
    """
    if p0 == p1 or p0 == p2 or p1 == p2:
        raise DegenerateTriple(f"points not pairwise distinct: {p0}, {p1}, {p2}")
    k1 = bracket(p2, p0)
    k2 = bracket(p2, p1)
    m = Matrix2._raw(p1.den * k1, -p1.num * k1, p0.den * k2, -p0.num * k2)
    det = m.det()
    if isinstance(det, FloatNumber):
        with mpmath.workprec(det.field.prec):
            r = FloatNumber(mpmath.sqrt(det.value), det.field)
    else:
        r = det.sqrt()
    if r is None:
        return m
    k = r.inverse()
    # fix the sign so that the first nonzero entry is "positive"
    lead = next(x for x in m.entries() if not x.is_zero()) * k
    if lead.sort_key() < lead.field.zero.sort_key():
        k = -k
    return GroupElem._raw(m.a * k, m.b * k, m.c * k, m.d * k)


def cross_ratio(p0: ProjPoint, p1: ProjPoint, p2: ProjPoint, p3: ProjPoint) -> ProjPoint:
    """Image of p3 under the map sending (p0, p1, p2) to (inf, 0, 1).

    The homogeneous bracket formula also covers tuples where p0, p1, p2 are not
    distinct but three of the four points are; the value is then 0, 1 or inf.
    """
    num = bracket(p3, p1) * bracket(p2, p0)
    den = bracket(p3, p0) * bracket(p2, p1)
    if num.is_zero() and den.is_zero():
        raise DegenerateTuple("fewer than three distinct points")
    return ProjPoint(num, den)


# ---------------------------------------------------------------------------
# serialization helpers


def format_scalar(x) -> str:
    return x.field.format(x)


def format_point(p: ProjPoint):
    if p.is_infinity:
        return "inf"
    return [format_scalar(p.num), format_scalar(p.den)]


def parse_point(field: Field, obj) -> ProjPoint:
    if isinstance(obj, str):
        if obj.strip() == "inf":
            return ProjPoint.infinity(field)
        return ProjPoint(field.parse(obj))
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return ProjPoint(field.parse(obj[0]), field.parse(obj[1]))
    raise ParseError(f"cannot parse projective point {obj!r}")


def format_matrix(m: Matrix2) -> list:
    return [format_scalar(x) for x in m.entries()]


def parse_matrix(field: Field, obj, *, unimodular: bool = True) -> Matrix2:
    if not isinstance(obj, (list, tuple)) or len(obj) != 4:
        raise ParseError(f"matrix must be a list of four scalars, got {obj!r}")
    entries = [field.parse(x) for x in obj]
    return GroupElem(*entries) if unimodular else Matrix2(*entries)

"""Reading and writing cycle files.

A cycle file is JSON.  Every scalar is a string in the syntax of the declared
field (``"1/2+1/2*s"`` with ``s = sqrt(d)`` for exact fields, ``"0.5+0.8j"``
for floating fields), so exact data survives a round trip.

Layout::

    {
      "header": {"field": {"mode": "exact", "d": -3}, "precision": 212,
                 "coefficient_mode": "Q", "primary": "decorated"},
      "generators": {"a": [4 scalars], ...},      # optional, for words
      "relators": ["..."],                        # optional
      "cusps": [{"index": 1, "generators": [word or 4 scalars], "fixed_point": point}],
      "base_point": point,
      "decorated": [{"coeff": "1", "words": [word or 4 scalars], "cusp": 1 or null}],
      "raw_cycle": {"terms": [{"coeff": "1", "points": [4 points]}],
                    "pairings": [word or 4 scalars]},
      "shapes": [{"coeff": "1", "z": scalar}],
      "representation": {"conjugate_by": [4 scalars]}      # optional
    }

A point is ``"inf"``, a scalar string, or a pair ``[num, den]``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .barhomology import DecoratedSimplex, GammaElem, Representation, WordEvaluator, free_reduce
from .chaincore import Chain, IdealTuple
from .chainmaps import CuspData
from .errors import CuspFixedPointViolation, FieldMismatch, IdealCyclesError, InvariantViolation, ParseError
from .exactnum import (
    DEFAULT_PRECISION,
    Field,
    GroupElem,
    ProjPoint,
    QuadraticField,
    field_from_header,
    format_matrix,
    format_point,
)

PAYLOADS = ("decorated", "raw_cycle", "shapes")
_WORD = re.compile(r"^[A-Za-z]*$")


@dataclass
class CycleFile:
    field: Field
    precision: int = DEFAULT_PRECISION
    coefficient_mode: str = "Q"
    primary: str = "decorated"
    generators: dict[str, GroupElem] = dc_field(default_factory=dict)
    relators: list[str] = dc_field(default_factory=list)
    cusp_generators: dict[int, list[GroupElem]] = dc_field(default_factory=dict)
    cusp_points: dict[int, ProjPoint] = dc_field(default_factory=dict)
    base_point: ProjPoint | None = None
    decorated: Chain | None = None
    raw_cycle: Chain | None = None
    pairings: list[GroupElem] = dc_field(default_factory=list)
    shapes: list[tuple] | None = None
    conjugator: GroupElem | None = None

    def cusp_data(self, base_point: ProjPoint | None = None, require_parabolic: bool = True) -> CuspData:
        bp = base_point or self.base_point
        if bp is None:
            bp = ProjPoint(self.field.zero)
        return CuspData(dict(self.cusp_generators), dict(self.cusp_points), bp, require_parabolic)

    def representation(self) -> Representation:
        if self.conjugator is None:
            return Representation.identity()
        return Representation.conjugation(self.conjugator, self.generators, self.relators)

    def payload(self, name: str | None = None):
        name = name or self.primary
        return {"decorated": self.decorated, "raw_cycle": self.raw_cycle, "shapes": self.shapes}[name]


# ---------------------------------------------------------------------------
# parsing helpers with locations


class _Reader:
    def __init__(self, f: Field):
        self.field = f
        self.generators: dict[str, GroupElem] = {}
        self._words: dict[str, GammaElem] = {}
        self._evaluate = WordEvaluator(self.generators, f)

    def scalar(self, text, where: str):
        try:
            return self.field.parse(text)
        except ParseError as exc:
            if isinstance(text, str) and self._foreign(text):
                raise FieldMismatch(f"{where}: scalar {text!r} is not in {self.field!r}") from exc
            raise ParseError(f"{where}: {exc}") from exc

    def _foreign(self, text: str) -> bool:
        if isinstance(self.field, QuadraticField):
            return bool(re.search(r"[ij]", text))
        return "s" in text

    def point(self, obj, where: str) -> ProjPoint:
        if isinstance(obj, str) and obj.strip() == "inf":
            return ProjPoint.infinity(self.field)
        if isinstance(obj, str):
            return ProjPoint(self.scalar(obj, where))
        if isinstance(obj, list) and len(obj) == 2:
            num, den = self.scalar(obj[0], where), self.scalar(obj[1], where)
            try:
                return ProjPoint(num, den)
            except IdealCyclesError as exc:
                raise InvariantViolation(f"{where}: {exc}") from exc
        raise ParseError(f"{where}: cannot read point {obj!r}")

    def matrix(self, obj, where: str) -> GroupElem:
        if not isinstance(obj, list) or len(obj) != 4:
            raise ParseError(f"{where}: a matrix is a list of four scalars, got {obj!r}")
        entries = [self.scalar(x, f"{where}[{k}]") for k, x in enumerate(obj)]
        try:
            return GroupElem(*entries, field=self.field)
        except InvariantViolation as exc:
            raise InvariantViolation(f"{where}: {exc}") from exc

    def element(self, obj, where: str) -> GroupElem:
        """A word in the named generators or an explicit matrix."""
        if isinstance(obj, str):
            if not _WORD.match(obj):
                raise ParseError(f"{where}: bad word {obj!r}")
            missing = {ch.lower() for ch in obj} - set(self.generators)
            if missing:
                raise InvariantViolation(f"{where}: unknown generators {sorted(missing)}")
            word = free_reduce(obj)
            if word not in self._words:
                self._words[word] = GammaElem.make(word, self._evaluate(word))
            return self._words[word]
        return self.matrix(obj, where)

    def coeff(self, obj, where: str, mode: str):
        try:
            c = Fraction(str(obj))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{where}: bad coefficient {obj!r}") from exc
        if mode == "Z" and c.denominator != 1:
            raise InvariantViolation(f"{where}: coefficient {obj!r} is not an integer")
        return c


def _need(obj: dict, key: str, where: str):
    if key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    return obj[key]


def from_dict(data: Any) -> CycleFile:
    if not isinstance(data, dict):
        raise ParseError("cycle file must be a JSON object")
    header = _need(data, "header", "file")
    try:
        f = field_from_header(_need(header, "field", "header"))
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"header.field: {exc}") from exc
    mode = header.get("coefficient_mode", "Q")
    if mode not in ("Z", "Q"):
        raise ParseError(f"header.coefficient_mode: unknown mode {mode!r}")
    present = [p for p in PAYLOADS if data.get(p)]
    if not present:
        raise ParseError("file has no payload (decorated, raw_cycle or shapes)")
    primary = header.get("primary", present[0])
    if primary not in present:
        raise ParseError(f"header.primary names {primary!r}, which is absent")
    cf = CycleFile(f, int(header.get("precision", DEFAULT_PRECISION)), mode, primary)
    rd = _Reader(f)

    for name, m in (data.get("generators") or {}).items():
        if not re.fullmatch(r"[a-z]", name):
            raise ParseError(f"generators: name {name!r} must be one lowercase letter")
        rd.generators[name] = rd.matrix(m, f"generators.{name}")
    cf.generators = dict(rd.generators)
    cf.relators = list(data.get("relators") or [])

    for k, cusp in enumerate(data.get("cusps") or []):
        where = f"cusps[{k}]"
        idx = int(_need(cusp, "index", where))
        cf.cusp_points[idx] = rd.point(_need(cusp, "fixed_point", where), f"{where}.fixed_point")
        cf.cusp_generators[idx] = [
            rd.element(g, f"{where}.generators[{j}]") for j, g in enumerate(cusp.get("generators", []))
        ]
    if "base_point" in data:
        cf.base_point = rd.point(data["base_point"], "base_point")

    if data.get("decorated"):
        terms = []
        for k, item in enumerate(data["decorated"]):
            where = f"decorated[{k}]"
            words = [rd.element(w, f"{where}.words[{j}]") for j, w in enumerate(_need(item, "words", where))]
            cusp = item.get("cusp")
            if cusp is not None and int(cusp) not in cf.cusp_points:
                raise InvariantViolation(f"{where}: unknown cusp {cusp}")
            terms.append((DecoratedSimplex(words, cusp), rd.coeff(_need(item, "coeff", where), where, mode)))
        cf.decorated = Chain(terms, mode)

    if data.get("raw_cycle"):
        raw = data["raw_cycle"]
        terms = []
        for k, item in enumerate(_need(raw, "terms", "raw_cycle")):
            where = f"raw_cycle.terms[{k}]"
            pts = [rd.point(p, f"{where}.points[{j}]") for j, p in enumerate(_need(item, "points", where))]
            if len(pts) != 4:
                raise InvariantViolation(f"{where}: an ideal tetrahedron needs 4 points")
            terms.append((IdealTuple(pts), rd.coeff(_need(item, "coeff", where), where, mode)))
        cf.raw_cycle = Chain(terms, mode)
        cf.pairings = [rd.element(g, f"raw_cycle.pairings[{j}]") for j, g in enumerate(raw.get("pairings", []))]

    if data.get("shapes"):
        cf.shapes = []
        for k, item in enumerate(data["shapes"]):
            where = f"shapes[{k}]"
            z = rd.point(_need(item, "z", where), f"{where}.z")
            cf.shapes.append((rd.coeff(_need(item, "coeff", where), where, mode), z))

    rep = data.get("representation")
    if rep:
        cf.conjugator = rd.matrix(_need(rep, "conjugate_by", "representation"), "representation.conjugate_by")
    _validate(cf)
    return cf


def _validate(cf: CycleFile) -> None:
    for i, gens in cf.cusp_generators.items():
        c = cf.cusp_points[i]
        for g in gens:
            if g.apply(c) != c:
                raise CuspFixedPointViolation(f"cusps: generator {_elem_json(g)} does not fix cusp point {format_point(c)}")
    if cf.decorated is not None and not cf.cusp_points and any(s.is_ideal for s, _ in cf.decorated.items()):
        raise InvariantViolation("decorated: ideal simplices need a cusp table")


def load(path: str | Path) -> CycleFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    return from_dict(data)


# ---------------------------------------------------------------------------
# writing


def _elem_json(g):
    return g.word if isinstance(g, GammaElem) else format_matrix(g)


def _coeff_json(c) -> str:
    return str(Fraction(c))


def to_dict(cf: CycleFile) -> dict:
    out: dict = {
        "header": {
            "field": cf.field.header(),
            "precision": cf.precision,
            "coefficient_mode": cf.coefficient_mode,
            "primary": cf.primary,
        }
    }
    if cf.generators:
        out["generators"] = {k: format_matrix(g) for k, g in cf.generators.items()}
    if cf.relators:
        out["relators"] = list(cf.relators)
    if cf.cusp_points:
        out["cusps"] = [
            {"index": i, "generators": [_elem_json(g) for g in cf.cusp_generators.get(i, [])],
             "fixed_point": format_point(c)}
            for i, c in sorted(cf.cusp_points.items())
        ]
    if cf.base_point is not None:
        out["base_point"] = format_point(cf.base_point)
    if cf.decorated is not None:
        out["decorated"] = [
            {"coeff": _coeff_json(a), "words": [_elem_json(g) for g in s.words], "cusp": s.cusp}
            for s, a in cf.decorated.items()
        ]
    if cf.raw_cycle is not None:
        out["raw_cycle"] = {
            "terms": [{"coeff": _coeff_json(a), "points": [format_point(p) for p in t.points]}
                      for t, a in cf.raw_cycle.items()],
            "pairings": [_elem_json(g) for g in cf.pairings],
        }
    if cf.shapes is not None:
        out["shapes"] = [{"coeff": _coeff_json(a), "z": format_point(z)} for a, z in cf.shapes]
    if cf.conjugator is not None:
        out["representation"] = {"conjugate_by": format_matrix(cf.conjugator)}
    return out


def dumps(cf: CycleFile) -> str:
    return json.dumps(to_dict(cf), indent=1) + "\n"


def dump(cf: CycleFile, path: str | Path) -> None:
    Path(path).write_text(dumps(cf), encoding="utf-8")


def fixture_path(name: str) -> Path:
    return Path(__file__).with_name("fixtures") / f"{name}.json"


def load_fixture(name: str) -> CycleFile:
    return load(fixture_path(name))


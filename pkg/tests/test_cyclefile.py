import copy
import json

import pytest

from conftest import K
from idealcycles import cyclefile
from idealcycles.errors import CuspFixedPointViolation, FieldMismatch, InvariantViolation, ParseError
from idealcycles.fixtures import cusp_torus, figure_eight


@pytest.fixture
def raw():
    return json.loads(cyclefile.fixture_path("figure_eight").read_text())


class TestFixtures:
    def test_shipped_files_match_builders(self):
        for mod, name in ((figure_eight, "figure_eight"), (cusp_torus, "cusp_torus")):
            assert json.loads(cyclefile.fixture_path(name).read_text()) == mod.build()

    def test_figure_eight_contents(self, fig8):
        assert fig8.field == K and fig8.field.d == -3
        assert len(fig8.raw_cycle) == 2
        assert list(fig8.cusp_points) == [1]
        assert fig8.primary == "decorated"
        assert len(fig8.decorated) == 190
        zeta = (K(1) + K.gen) / 2
        assert [(a, z.num) for a, z in fig8.shapes] == [(1, zeta), (1, zeta)]

    def test_face_pairings_are_consistent(self):
        figure_eight.check_pairings()

    def test_longitude_is_parabolic(self):
        lon = figure_eight.gamma(figure_eight.LONGITUDE)
        assert lon.trace() == -2
        assert lon.c == 0


class TestRoundTrip:
    @pytest.mark.parametrize("name", ["figure_eight", "cusp_torus"])
    def test_serialize_load(self, name, tmp_path):
        cf = cyclefile.load_fixture(name)
        d = cyclefile.to_dict(cf)
        assert cyclefile.to_dict(cyclefile.from_dict(d)) == d
        path = tmp_path / "x.json"
        cyclefile.dump(cf, path)
        again = cyclefile.load(path)
        assert again.decorated == cf.decorated and again.raw_cycle == cf.raw_cycle
        assert again.cusp_points == cf.cusp_points and again.base_point == cf.base_point

    def test_matrix_entries_survive(self, raw):
        raw["cusps"][0]["generators"][0] = ["1", "1", "0", "1"]
        cf = cyclefile.from_dict(raw)
        assert cyclefile.to_dict(cf)["cusps"][0]["generators"][0] == ["1", "1", "0", "1"]


class TestErrors:
    def test_empty_payload(self):
        with pytest.raises(ParseError):
            cyclefile.from_dict({"header": {"field": {"mode": "exact", "d": -3}}})

    def test_not_json(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{nope")
        with pytest.raises(ParseError):
            cyclefile.load(p)

    def test_det_not_one(self, raw):
        raw["generators"]["a"] = ["1", "2", "0", "2"]
        with pytest.raises(InvariantViolation, match="generators.a"):
            cyclefile.from_dict(raw)

    def test_foreign_scalar(self, raw):
        raw["base_point"] = "1+sqrt(2)"
        with pytest.raises((FieldMismatch, ParseError)):
            cyclefile.from_dict(raw)

    def test_corrupted_cusp_point(self, raw):
        raw["cusps"][0]["fixed_point"] = "0"
        with pytest.raises(CuspFixedPointViolation):
            cyclefile.from_dict(raw)

    def test_unknown_cusp(self, raw):
        raw["decorated"][0]["cusp"] = 7
        with pytest.raises(InvariantViolation):
            cyclefile.from_dict(raw)

    def test_wrong_arity(self, raw):
        raw["raw_cycle"]["terms"][0]["points"].pop()
        with pytest.raises(InvariantViolation):
            cyclefile.from_dict(raw)

    def test_primary_must_exist(self, raw):
        del raw["shapes"]
        raw["header"]["primary"] = "shapes"
        with pytest.raises(ParseError):
            cyclefile.from_dict(raw)

    def test_bad_word(self, raw):
        raw["decorated"][0]["words"][0] = "ab1"
        with pytest.raises((ParseError, InvariantViolation)):
            cyclefile.from_dict(raw)

import pytest

from tilecoh.fixtures import FixtureError, expected_group, load_fixtures
from tilecoh.limit import LimitGroup
from importlib import resources


def test_loads_with_checksum(ref):
    a2 = ref["a2_matrix"]
    assert len(a2["matrix"]) == 19 and a2["matrix"][0][0] == 25
    assert ref["m_matrix"]["matrix"][3][0] == 15300
    assert set(ref["h2_generators"]["vectors"][0]) == {1}
    assert len(ref["image_vectors"]["vectors"]) == 9


def test_tampered_file_aborts(tmp_path):
    raw = resources.files("tilecoh").joinpath("data", "reference.json").read_bytes()
    bad = tmp_path / "reference.json"
    bad.write_bytes(raw.replace(b"15300", b"15301", 1))
    with pytest.raises(FixtureError):
        load_fixtures(bad)


def test_wrong_checksum_aborts():
    with pytest.raises(FixtureError):
        load_fixtures(checksum="0" * 64)


def test_expected_group_forms():
    want = LimitGroup([(25, 1), (3, 2)], 2)
    assert expected_group({"localized": [[25, 1], [3, 2]], "free_rank": 2}) == want
    assert expected_group({"localized": [{"base": 25, "mult": 1}, {"base": 3, "mult": 2}],
                           "free_rank": 2}) == want

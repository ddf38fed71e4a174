import pytest

from vck import reproduce
from vck.diagram import data_dir

FAST = [t for t in reproduce.TABLES if t != "census4"]


def golden(name):
    return (data_dir() / "golden" / f"{name}.txt").read_text()


@pytest.mark.parametrize("table", FAST)
def test_table_matches_golden(table):
    assert reproduce.render(table) == golden(table)


@pytest.mark.long
def test_census4_matches_golden():
    assert reproduce.render("census4") == golden("census4")


def test_census_golden_flags_the_discrepancy():
    assert "note: n=3 aut-induced: computed 36, reported 38" in golden("census")


def test_vlinks_golden_places_the_square_on_one_link():
    text = golden("vlinks").split("[antiflip2-flip2]")[1]
    blocks = {b.split(":")[0]: b for b in text.split("  v")[1:]}
    square = [k for k, b in blocks.items() if "f(2,2)^-1 f(2,2)^-1" in b]
    assert square == ["3.4"]

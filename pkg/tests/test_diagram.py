import pytest

from vck.diagram import (
    R2_VARIANTS,
    VR2_VARIANTS,
    DiagramError,
    GaussSyntaxError,
    PairingError,
    SignMismatchError,
    catalog,
    catalog_names,
    insert_r2,
    insert_vr2,
    parse_gauss,
    serialize,
    surface_genus,
)


@pytest.mark.parametrize("name", catalog_names())
def test_catalog_round_trip_and_planar(name):
    d = catalog(name)
    assert parse_gauss(serialize(d)) == d
    assert surface_genus(d) == 0


def test_catalog_contains_reproduction_diagrams():
    names = set(catalog_names())
    assert {"k1", "k2", "k3", "paper-2comp", "v2.2", "v2.3", "v3.4", "hopf+", "hopf-", "trefoil", "unknot"} <= names


def test_unknown_catalog_name():
    with pytest.raises(KeyError):
        catalog("no-such-knot")


def test_parse_components_and_comments():
    d = parse_gauss("O1+ U2+ # comment\n ; U1+ O2+")
    assert d.num_components == 2
    assert [x.kind for x in d.crossings()] == ["+", "+"]
    assert parse_gauss("").num_components == 1
    assert parse_gauss(" ; ").arcs() == [(0, 0), (1, 0)]


def test_crossing_geometry():
    d = parse_gauss("O1+ V2l ; U1+ V2r ; O3- ; U3-")
    x1, x2, x3 = d.crossings()
    # positive: the under strand enters on the left
    assert (x1.left, x1.right) == ((1, 0), (0, 0))
    assert (x2.left, x2.right) == ((0, 1), (1, 1))
    # negative: the over strand enters on the left
    assert (x3.left, x3.right) == ((2, 0), (3, 0))


@pytest.mark.parametrize(
    "text,err",
    [
        ("O1+ X2+", GaussSyntaxError),
        ("O1+ U1+ O2+", PairingError),
        ("O1+ O1+", PairingError),
        ("O1+ U1-", SignMismatchError),
        ("V1l V1l", PairingError),
        ("O1+ V1l", PairingError),
    ],
)
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse_gauss(text)


def test_syntax_error_position():
    with pytest.raises(GaussSyntaxError) as info:
        parse_gauss("O1+ U1+ ; Q2")
    assert info.value.position == 2


def test_pairing_error_names_crossing():
    with pytest.raises(PairingError) as info:
        parse_gauss("O1+ U1+ O7+")
    assert info.value.crossing == 7


def test_rotate_preserves_crossings():
    d = catalog("k1")
    r = d.rotate(0, 5)
    assert sorted(x.kind for x in r.crossings()) == sorted(x.kind for x in d.crossings())
    assert r.rotate(0, len(d.components[0]) - 5) == d


@pytest.mark.parametrize("variant", R2_VARIANTS)
def test_r2_adds_cancelling_pair(variant):
    d = catalog("trefoil")
    e = insert_r2(d, 0, 1, 0, 4, variant)
    assert len(e.crossings()) == len(d.crossings()) + 2
    assert {x.kind for x in e.crossings()[-2:]} == {"+", "-"}


@pytest.mark.parametrize("variant", VR2_VARIANTS)
def test_vr2_adds_two_virtual_crossings(variant):
    d = catalog("hopf+")
    e = insert_vr2(d, 0, 0, 1, 2, variant)
    assert [x.kind for x in e.crossings()[-2:]] == ["v", "v"]


def test_move_errors():
    d = catalog("trefoil")
    with pytest.raises(DiagramError):
        insert_r2(d, 0, 99, 0, 0)
    with pytest.raises(DiagramError):
        insert_r2(d, 0, 0, 0, 0, "sideways")
    with pytest.raises(DiagramError):
        insert_vr2(d, 3, 0, 0, 0)


def test_genus_detects_nonplanar_codes():
    # the virtual trefoil drawn without its virtual crossing
    assert surface_genus(parse_gauss("O1+ U2+ U1+ O2+")) == 1
    # interlaced letters force a handle whatever the crossing types
    for code in ("O1+ V2l U1+ V2r", "O1- V2r U1- V2l"):
        assert surface_genus(parse_gauss(code)) == 1
    assert surface_genus(parse_gauss("O1+ V2l V2r U1+")) == 0
    assert surface_genus(catalog("unknot")) == 0

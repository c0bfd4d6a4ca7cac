import numpy as np
import pytest

from strongprox.descriptive import (FIG6_POINTS, Cell, DescriptorSpace, Tessellation, TessellationError, TimedFamily,
                                    descriptive_spc_check, descriptor_image, descriptor_of, descriptor_of_point,
                                    fig6_families, fig6_tessellation)
from strongprox.geometry import Rectangle
from strongprox.grid import PixelGrid


@pytest.fixture(scope="module")
def t():
    return fig6_tessellation()


def test_descriptor_space_codes():
    d = DescriptorSpace()
    assert d.code(["r", "g"]) == 0b011
    assert d.label(0b101) == "g,b" and d.label(0) == "{}"
    assert d.colors_of(0b110) == frozenset("rb")
    with pytest.raises(ValueError):
        d.code(["orange"])
    with pytest.raises(ValueError):
        DescriptorSpace(("g", "g"))


def test_descriptor_carrier():
    d = DescriptorSpace()
    assert d.carrier.n == 8
    # DERIVED: union closure of the seven default collections
    assert len(d.carrier.opens) == 45
    assert d.describe(d.interior(d.collection([("g",), ("g", "r")]))) == ["g,r"]


def test_fig6_point_descriptors(t):
    assert descriptor_of_point(t, *FIG6_POINTS["a"]) == frozenset("g")
    assert descriptor_of_point(t, *FIG6_POINTS["b"]) == frozenset("gr")
    assert descriptor_of_point(t, *FIG6_POINTS["c"]) == frozenset("grb")


def test_descriptors_collect_neighbouring_colours():
    g = PixelGrid(6, 2)
    cells = [Cell("l", "g", Rectangle((0, 0), (3, 2))), Cell("r", "b", Rectangle((3, 0), (6, 2)))]
    t = Tessellation(g, cells)
    assert [descriptor_of(t, (0, i)) for i in range(6)] == [1, 1, 5, 5, 4, 4]
    assert descriptor_image(t, t.cell_mask("l")) == (1 << 1) | (1 << 5)
    assert t.boundary()[0].tolist() == [False, False, True, True, False, False]
    with pytest.raises(KeyError):
        t.cell_mask("middle")


def test_uncovered_pixels_rejected():
    with pytest.raises(TessellationError):
        Tessellation(PixelGrid(4, 4), [Cell("half", "g", Rectangle((0, 0), (2, 4)))])


def test_fig6_families_pass(t):
    d = t.space
    t1, t2 = fig6_families(t)
    r1 = descriptive_spc_check(d, t, t1, [t2])
    assert r1.passed and r1.pairs_checked == 1
    assert r1.interiors["A1"] == r1.interiors["A2"] == ["g,r"]
    assert r1.excluded == ["t2:A3", "t2:A4"]
    r2 = descriptive_spc_check(d, t, t2)
    assert r2.passed and r2.interiors["A3"] == ["g,b"]


def test_planted_failure():
    # the regions meet on the seam but their descriptor sets have no interior in a coarse base
    cells = [Cell("l", "g", Rectangle((0, 0), (3, 2))), Cell("r", "b", Rectangle((3, 0), (6, 2)))]
    g = PixelGrid(6, 2)
    a, b = np.zeros(g.shape, bool), np.zeros(g.shape, bool)
    a[:, :3] = True
    b[:, 2:] = True
    fam = TimedFamily("t", [a, b])
    fine = DescriptorSpace()
    assert descriptive_spc_check(fine, Tessellation(g, cells, fine), fam).passed
    coarse = DescriptorSpace(base=((("r", "g", "b"),),))
    rep = descriptive_spc_check(coarse, Tessellation(g, cells, coarse), fam)
    assert not rep.passed and rep.witness == ("A1", "A2")
    assert rep.to_json()["witness"] == ["A1", "A2"]


def test_validate_rejects_shared_cells(t):
    left = t.cell_mask("top-left")
    with pytest.raises(TessellationError):
        TimedFamily("t", [left, left]).validate(t)
    with pytest.raises(TessellationError):
        TimedFamily("t", [left | t.cell_mask("top-right")]).validate(t)

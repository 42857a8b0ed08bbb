"""
Tests for Graded Root Rendering
"""

import pytest

from exceptions import InvariantViolation
from knots import parse_knot
from rendering import graded_root_view, render, render_ascii, render_json, render_svg
from staircase import Branch


def test_view_of_torus_knot(t34):
    view = graded_root_view(t34)
    assert view.knot == "T(3,4)"
    assert view.branch_exponents == (1, 1)
    assert [b.leaf for b in view.branches if b.merge_height is None] == ["y2"]


def test_view_of_tensor_has_no_branches(family_knot_1_2):
    view = graded_root_view(family_knot_1_2)
    assert view.branches is None
    assert view.tower_count == 1


def test_view_cross_checks_branch_lengths(mocker, t34):
    """Test disagreement between merge data and homology is an invariant violation"""
    mocker.patch('rendering.graded_root_branches', return_value=(
        Branch("y0", 0, None),
        Branch("y2", 1, -2, parent="y0"),
    ))
    with pytest.raises(InvariantViolation):
        graded_root_view(t34)


def test_ascii_rendering(t34):
    text = render_ascii(graded_root_view(t34))
    lines = text.splitlines()
    assert lines[0] == "graded root of T(3,4)"
    assert sum(1 for line in lines if line.strip().startswith("tower")) == 1
    assert sum(1 for line in lines if line.strip().startswith("branch")) == 2
    assert "joins y2 at -1" in text


def test_ascii_rendering_schematic(family_knot_1_2):
    text = render_ascii(graded_root_view(family_knot_1_2))
    assert "length 2" in text


def test_json_rendering(t34):
    data = render_json(graded_root_view(t34))
    assert data['tower_count'] == 1
    assert data['branch_exponents'] == [1, 1]
    tower = [b for b in data['branches'] if b['merge_height'] is None]
    assert tower == [{'leaf': "y2", 'height': 1, 'merge_height': None, 'parent': None, 'length': None}]


@pytest.mark.parametrize("text", ["U", "T(7,8)", "T(5,6) # mirror(T(3,4))"])
def test_svg_rendering(text):
    svg = render_svg(graded_root_view(parse_knot(text)))
    assert svg.lstrip().startswith("<?xml")
    assert "</svg>" in svg


def test_render_dispatch(t34):
    view = graded_root_view(t34)
    assert render(view, 'ascii') == render_ascii(view)
    with pytest.raises(ValueError):
        render(view, 'png')

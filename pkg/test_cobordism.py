"""
Tests for the Cobordism Move Model and Torsion Order Bounds
"""

import pytest

from cobordism import (
    BIRTH,
    DEATH,
    M1_BOUNDARY_FLAG,
    MERGE,
    NONORIENTABLE_SELF,
    SPLIT,
    CobordismStats,
    MoveSequence,
    batson_sequence,
    cobordism_report,
    dur_lower_bound,
    family_report,
    format_moves,
    min_local_minima,
    nonorientable_genus,
    normalize,
    parse_moves,
    random_move_sequence,
    ribbon_bound,
    stats,
    torsion_order_upper_bound,
    ulb_lower_bound,
    validate,
    wong_bound_check,
)
from exceptions import InfeasibleTraceError, InvalidInputError, MoveFileError, NoNonorientableBandError
from knots import Unknot, knot_family, order_u, parse_knot, torus_knot


def seq(*moves):
    return MoveSequence(tuple(moves))


# ============= VALIDATION AND STATS =============

def test_validate_traces():
    """Test component bookkeeping"""
    assert validate(seq(NONORIENTABLE_SELF)) == (1, 1)
    assert validate(seq(BIRTH, MERGE, SPLIT, DEATH)) == (1, 2, 1, 2, 1)
    assert validate(seq(), start_components=3) == (3,)


def test_validate_infeasible():
    """Test errors name the offending move"""
    with pytest.raises(InfeasibleTraceError) as excinfo:
        validate(seq(BIRTH, MERGE, DEATH))
    assert excinfo.value.move_index == 2
    assert "move 2" in str(excinfo.value)

    with pytest.raises(InfeasibleTraceError) as excinfo:
        validate(seq(MERGE))
    assert excinfo.value.move_index == 0

    with pytest.raises(InvalidInputError):
        validate(seq(), start_components=0)


def test_stats_single_band():
    """Test the genus-one band"""
    st = stats(seq(NONORIENTABLE_SELF))
    assert (st.m, st.b, st.M, st.chi, st.gamma, st.norm) == (0, 1, 0, -1, 1, 1)
    assert st.nonorientable
    assert st.ribbon


def test_stats_with_births_and_deaths():
    """Test m, b, M and derived values"""
    st = stats(seq(BIRTH, MERGE, NONORIENTABLE_SELF, SPLIT, DEATH))
    assert (st.m, st.b, st.M, st.chi, st.gamma, st.norm) == (1, 3, 1, -1, 1, 2)
    assert not st.ribbon


def test_stats_requires_knot_endpoints():
    """Test a trace ending on two components"""
    with pytest.raises(InvalidInputError):
        stats(seq(BIRTH))


def test_nonorientable_genus():
    """Test 2 - chi - n"""
    assert nonorientable_genus(-1, 2) == 1
    assert nonorientable_genus(1, 1) == 0


def test_random_sequences_satisfy_identities(rng):
    """Test chi, gamma and norm identities on random valid sequences"""
    for _ in range(100):
        s = random_move_sequence(rng, int(rng.integers(0, 12)))
        trace = validate(s)
        assert trace[-1] == 1
        st = stats(s)
        assert st.chi == st.m - st.b + st.M
        assert st.gamma == -st.chi
        assert st.norm == max(st.m, st.M) - st.chi


# ============= NORMAL FORM =============

def test_normalize_already_normal():
    """Test a single band is its own normal form"""
    assert normalize(seq(NONORIENTABLE_SELF)).moves == (NONORIENTABLE_SELF,)


def test_normalize_reorders():
    """Test births first, deaths last"""
    normal = normalize(seq(NONORIENTABLE_SELF, BIRTH, MERGE, SPLIT, DEATH))
    assert normal.moves == (BIRTH, MERGE, NONORIENTABLE_SELF, SPLIT, DEATH)


def test_normalize_three_bands():
    """Test that extra non-orientable bands become orientable pairs"""
    normal = normalize(seq(NONORIENTABLE_SELF, NONORIENTABLE_SELF, NONORIENTABLE_SELF))
    assert normal.moves == (SPLIT, MERGE, NONORIENTABLE_SELF)
    assert validate(normal) == (1, 2, 1, 1)


def test_normalize_errors():
    """Test orientable input and infeasible counts"""
    with pytest.raises(NoNonorientableBandError):
        normalize(seq(BIRTH, MERGE, SPLIT, DEATH))
    with pytest.raises(InvalidInputError):
        normalize(seq(NONORIENTABLE_SELF, NONORIENTABLE_SELF))
    with pytest.raises(InvalidInputError):
        normalize(seq(BIRTH, NONORIENTABLE_SELF, DEATH))


def test_normalize_preserves_counts(rng):
    """Test (m, b, M) survive normalization"""
    normalized = 0
    for _ in range(100):
        s = random_move_sequence(rng, int(rng.integers(1, 12)))
        try:
            normal = normalize(s)
        except InvalidInputError:
            continue
        before, after = stats(s), stats(normal)
        assert (before.m, before.b, before.M) == (after.m, after.b, after.M)
        normalized += 1
    assert normalized > 0


# ============= BOUNDS =============

def test_torsion_order_upper_bound():
    """Test max(order, M) + gamma"""
    st = CobordismStats(m=0, b=7, M=5, chi=-2, gamma=2, norm=7, nonorientable=True)
    assert torsion_order_upper_bound(3, st) == 7
    assert torsion_order_upper_bound(0, stats(seq(NONORIENTABLE_SELF))) == 1


def test_ribbon_bound():
    """Test the bound without local maxima"""
    assert ribbon_bound(2, stats(seq(NONORIENTABLE_SELF))) == 3
    with pytest.raises(InvalidInputError):
        ribbon_bound(0, stats(seq(BIRTH, MERGE, NONORIENTABLE_SELF, SPLIT, DEATH)))


def test_min_local_minima(family_knot_1_2):
    """Test Order_U - gamma + 1, floored at zero"""
    assert min_local_minima(family_knot_1_2, 1) == 2
    assert min_local_minima(Unknot(), 0) == 1
    assert min_local_minima(knot_family(2, 3), 2) == 3
    assert min_local_minima(Unknot(), 5) == 0


def test_dur_and_ulb_lower_bounds():
    """Test order differences and the band-unlinking bound"""
    assert dur_lower_bound(parse_knot("T(7,8)"), Unknot()) == 3
    assert dur_lower_bound(parse_knot("T(9,10)"), parse_knot("T(3,4)")) == 3
    assert dur_lower_bound(parse_knot("T(3,4)"), parse_knot("T(3,4)")) == 0
    assert ulb_lower_bound(parse_knot("T(8,9)")) == 4
    assert ulb_lower_bound(parse_knot("T(5,6) # T(7,8)")) == 3


def test_wong_bound_check():
    """Test |difference| <= m + b + M"""
    assert wong_bound_check(parse_knot("T(3,4)"), Unknot(), stats(seq(NONORIENTABLE_SELF)))
    assert wong_bound_check(Unknot(), Unknot(), stats(seq()))
    st = CobordismStats(m=1, b=1, M=1, chi=1, gamma=-1, norm=0, nonorientable=False)
    assert not wong_bound_check(parse_knot("T(9,10)"), Unknot(), st)


def test_batson_sequence():
    """Test band sequences between T(2r-1,2r) and T(2s-1,2s)"""
    s31 = batson_sequence(3, 1)
    assert s31.moves == (NONORIENTABLE_SELF, NONORIENTABLE_SELF)
    assert s31.source == torus_knot(5, 6)
    assert s31.target == Unknot()
    assert stats(s31).gamma == 2
    assert stats(batson_sequence(2, 1)).gamma == 1
    with pytest.raises(InvalidInputError):
        batson_sequence(2, 2)


def test_batson_sequences_are_tight():
    """Test the torsion order bound is exact on every band sequence with r <= 6"""
    for r in range(2, 7):
        for s in range(1, r):
            st = stats(batson_sequence(r, s))
            assert st.gamma == r - s
            bound = torsion_order_upper_bound(order_u(torus_knot(2 * s - 1, 2 * s)), st)
            assert bound == order_u(torus_knot(2 * r - 1, 2 * r)) == r - 1


def test_wong_bound_holds_on_band_sequences():
    """Test |Order_U difference| <= m + b + M on every band sequence with r <= 6"""
    for r in range(2, 7):
        for s in range(1, r):
            seq = batson_sequence(r, s)
            assert wong_bound_check(seq.source, seq.target, stats(seq))


# ============= FAMILY REPORTS =============

@pytest.mark.parametrize("gamma,m,expected", [
    (1, 2, (2, 1, 1, 2, 3, 3)),
    (2, 2, (3, 2, 2, 2, 4, 4)),
    (2, 3, (4, 2, 2, 3, 5, 6)),
])
def test_family_report(gamma, m, expected):
    """Test order_u, gamma4, d_u, minima and refined distance bounds"""
    report = family_report(gamma, m)
    values = (report.order_u, report.gamma4, report.d_u, report.min_minima, report.dur_lower, report.dur_upper)
    assert values == expected
    assert report.dur_lower_order_difference == gamma + m - 1
    assert report.flags == ()
    assert set(report.provenance) >= {'order_u', 'gamma4', 'dur_upper'}


@pytest.mark.parametrize("gamma", [1, 3])
def test_family_report_m1_boundary(gamma):
    """Test the refined upper bound is suppressed at m = 1"""
    report = family_report(gamma, 1)
    assert report.dur_upper is None
    assert report.flags == (M1_BOUNDARY_FLAG,)
    assert report.dur_lower == gamma + 1
    assert report.order_u == gamma


def test_family_minima_property():
    """Test min_local_minima(K_{gamma,m}, gamma) = m on a small grid"""
    for gamma in range(1, 4):
        for m in range(1, 4):
            assert min_local_minima(knot_family(gamma, m), gamma) == m


def test_family_report_rejects_out_of_range():
    with pytest.raises(InvalidInputError):
        family_report(0, 2)


# ============= MOVE FILES AND REPORTS =============

def test_parse_moves():
    """Test headers, comments and trailing comments"""
    text = (
        "# sample\n"
        "from: T(5,6) # mirror(T(3,4))\n"
        "to: U\n"
        "\n"
        "  Band   Nonorientable  # the only band\n"
    )
    parsed = parse_moves(text)
    assert parsed.source == parse_knot("T(5,6) # mirror(T(3,4))")
    assert parsed.target == Unknot()
    assert parsed.moves == (NONORIENTABLE_SELF,)


@pytest.mark.parametrize("text,line", [
    ("birth\nwiggle\n", 2),
    ("birth\nfrom: U\n", 2),
    ("from: T(2,4)\n", 1),
    ("from: U\nfrom: U\n", 2),
    ("to: T(2,3\n", 1),
])
def test_parse_moves_errors(text, line):
    """Test malformed move files report the line"""
    with pytest.raises(MoveFileError) as excinfo:
        parse_moves(text)
    assert excinfo.value.line_number == line


def test_format_moves():
    """Test move-file rendering and reparsing"""
    text = format_moves(batson_sequence(2, 1))
    assert text == "from: T(3,4)\nto: U\nband nonorientable\n"
    assert parse_moves(text) == batson_sequence(2, 1)


def test_cobordism_report_with_endpoints():
    """Test the genus-one band from T(3,4) to the unknot"""
    report = cobordism_report(parse_moves("from: T(3,4)\nto: U\nband nonorientable\n"))
    assert report.trace == (1, 1)
    assert report.torsion_order_upper_bound == 1
    assert report.source_order_u == 1
    assert report.bound_holds
    assert report.wong_bound_check
    assert report.dur_lower_bound == 1
    assert report.ribbon_bound == 1
    assert report.normalized.moves == (NONORIENTABLE_SELF,)


def test_cobordism_report_without_endpoints():
    """Test orientable sequences report why they have no normal form"""
    report = cobordism_report(seq(BIRTH, MERGE, SPLIT, DEATH))
    assert report.normalized is None
    assert "no non-orientable band" in report.normalize_note
    assert report.torsion_order_upper_bound is None
    assert report.stats.gamma == 0

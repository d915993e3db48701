"""Tests for S-matrix construction, classification, and the witness search."""

import math
from fractions import Fraction

import pytest

from rank3ribbon.characters import solve_characters
from rank3ribbon.exactnum import RootOfUnity
from rank3ribbon.fusion import Rank3Params, make_rank3_ring, make_z3_ring
from rank3ribbon.premodular import (
    ExactContext,
    SMatrix,
    StructureClass,
    Twists,
    Verdict,
    ZeroDimension,
    build_s_matrix,
    classify_s_matrix,
    nonmodular_filter,
    search_ribbon_data,
    symmetric_witness,
    verify_row_characters,
)


def _centers(sm):
    return [[sm.entry(i, j).center_complex() for j in range(3)] for i in range(3)]


@pytest.fixture(scope="module")
def rep_s3():
    ring = make_rank3_ring(Rank3Params(0, 1, 0, 1))
    return ring, solve_characters(ring)


@pytest.fixture(scope="module")
def ising():
    ring = make_rank3_ring(Rank3Params(0, 1, 0, 0))
    return ring, solve_characters(ring)


def test_rep_s3_symmetric_matrix(rep_s3):
    ring, system = rep_s3
    sm = build_s_matrix(ring, system.chars[0], Twists.of(RootOfUnity.one(), RootOfUnity.one()))
    centers = _centers(sm)
    expected = [[1, 1, 2], [1, 1, 2], [2, 2, 4]]
    for i in range(3):
        for j in range(3):
            assert centers[i][j] == pytest.approx(expected[i][j], abs=1e-25)
    assert classify_s_matrix(sm) == StructureClass.SYMMETRIC
    assert verify_row_characters(sm, system.chars[0], system, 1e-9)


def test_ising_modular_matrix(ising):
    ring, system = ising
    tw = Twists.of(RootOfUnity.make(1, 2), RootOfUnity.make(1, 16))
    sm = build_s_matrix(ring, system.chars[0], tw)
    centers = _centers(sm)
    y = math.sqrt(2)
    expected = [[1, 1, y], [1, 1, -y], [y, -y, 0]]
    for i in range(3):
        for j in range(3):
            assert centers[i][j] == pytest.approx(expected[i][j], abs=1e-25)
    assert classify_s_matrix(sm) == StructureClass.MODULAR
    assert verify_row_characters(sm, system.chars[0], system, 1e-9)


def test_unit_row_identity(ising, rep_s3):
    for (ring, system), theta in (
        (ising, (RootOfUnity.make(1, 2), RootOfUnity.make(3, 16))),
        (rep_s3, (RootOfUnity.one(), RootOfUnity.make(1, 3))),
    ):
        dims = system.chars[0]
        sm = build_s_matrix(ring, dims, Twists.of(*theta))
        for j in range(3):
            expected = dims.value_ball(j, 160)
            assert (sm.entry(0, j) - expected).mag_upper() < Fraction(1, 2**64)


def test_proper_premodular_matrix(rep_s3):
    """Cube-root twist on Y makes the corner -2: rows 1 and 2 of the matrix
    agree in the first two entries, so the matrix has rank 2 and determinant
    zero without being symmetric-class."""
    ring, system = rep_s3
    tw = Twists.of(RootOfUnity.one(), RootOfUnity.make(1, 3))
    sm = build_s_matrix(ring, system.chars[0], tw)
    centers = _centers(sm)
    expected = [[1, 1, 2], [1, 1, 2], [2, 2, -2]]
    for i in range(3):
        for j in range(3):
            assert centers[i][j] == pytest.approx(expected[i][j], abs=1e-25)
    assert classify_s_matrix(sm) == StructureClass.PROPER_PREMODULAR
    assert verify_row_characters(sm, system.chars[0], system, 1e-9)


def test_zero_dimension_rejected(ising):
    ring, system = ising
    # the character (-1, 0) has a vanishing value
    zero_char = next(c for c in system.chars if c.y.is_zero)
    with pytest.raises(ZeroDimension):
        build_s_matrix(ring, zero_char, Twists.of(RootOfUnity.one(), RootOfUnity.one()))


def test_corrupted_matrix_fails_row_check(ising):
    ring, system = ising
    tw = Twists.of(RootOfUnity.make(1, 2), RootOfUnity.make(1, 16))
    sm = build_s_matrix(ring, system.chars[0], tw)
    entries = [list(row) for row in sm.entries]
    entries[1][1] = -entries[1][1]
    corrupted = SMatrix(tuple(tuple(r) for r in entries), ring, sm.dims, tw, sm.precision_bits)
    assert not verify_row_characters(corrupted, system.chars[0], system, 1e-9)


def test_twists_require_unit():
    with pytest.raises(ValueError):
        Twists((RootOfUnity.make(1, 2), RootOfUnity.one(), RootOfUnity.one()))


# ---------------------------------------------------------------------------
# witness search
# ---------------------------------------------------------------------------

def test_search_ising_order16(ising):
    """Only the modular family survives: unit-twist -1 on X and a primitive
    16th root on Y, for both choices of the irrational dimension."""
    ring, _ = ising
    witnesses = search_ribbon_data(ring, 16)
    assert len(witnesses) == 16
    for w in witnesses:
        assert w.structure_class == StructureClass.MODULAR
        assert w.twists.theta[1] == RootOfUnity.make(1, 2)
        assert w.twists.theta[2].order == 16
        assert w.certificate["fs_indicators"][0] == 1
    assert sorted({w.dims_index for w in witnesses}) == [0, 2]
    # S-matrix shape with exact zero corner
    corner = witnesses[0].smatrix.entry(2, 2)
    assert abs(corner.center_complex()) < 1e-9


def test_search_rep_s3_contains_symmetric_witness(rep_s3):
    ring, _ = rep_s3
    witnesses = search_ribbon_data(ring, 3)
    assert any(
        w.structure_class == StructureClass.SYMMETRIC
        and w.dims_index == 0
        and w.twists.theta[1].is_one
        and w.twists.theta[2].is_one
        for w in witnesses
    )


def test_search_excluded_ring_is_empty():
    ring = make_rank3_ring(Rank3Params(0, 1, 0, 2))
    assert search_ribbon_data(ring, 16) == []


def test_search_include_degenerate(ising):
    """Degenerate candidates surface only on request; on the Ising-type ring
    they are the quarter-turn twists satisfying the exact relation."""
    ring, _ = ising
    default = search_ribbon_data(ring, 4)
    assert default == []  # modular family needs 16th roots; symmetric fails integrality
    degenerate = search_ribbon_data(ring, 4, include_degenerate=True)
    assert len(degenerate) == 4
    for w in degenerate:
        assert w.structure_class == StructureClass.PROPER_PREMODULAR
        assert w.twists.theta[1].is_one
        assert w.twists.theta[2].turn in (Fraction(1, 4), Fraction(3, 4))
        assert w.certificate["degenerate_rule"]["relation_holds"]


def test_search_z3():
    witnesses = search_ribbon_data(make_z3_ring(), 6)
    classes = sorted(w.structure_class.value for w in witnesses)
    assert classes == ["Modular", "Modular", "Symmetric"]
    modular = [w for w in witnesses if w.structure_class == StructureClass.MODULAR]
    assert {w.twists.theta[1].turn for w in modular} == {Fraction(1, 3), Fraction(2, 3)}
    for w in modular:
        assert w.twists.theta[1] == w.twists.theta[2]
        assert w.certificate["fs_indicators"] == [1, 0, 0]


def test_search_deterministic_under_threads(ising):
    ring, _ = ising
    a = search_ribbon_data(ring, 12, threads=1)
    b = search_ribbon_data(ring, 12, threads=4)
    key = lambda ws: [(w.dims_index, w.twists.theta[1].turn, w.twists.theta[2].turn) for w in ws]
    assert key(a) == key(b)


def test_symmetric_witness_is_rank_one_product(rep_s3):
    """A rational symmetric witness with unit twists has entries d_i * d_j."""
    ring, system = rep_s3
    w = symmetric_witness(ring, system)
    assert w is not None
    d = [1, 1, 2]
    for i in range(3):
        for j in range(3):
            assert w.smatrix.entry(i, j).center_complex() == pytest.approx(d[i] * d[j], abs=1e-25)


def test_modular_rows_pair_opposite_y(ising):
    """On the Ising-type ring every modular witness realizes the two
    conjugate characters on rows 0 and 1, with opposite y-values: the
    symmetry of the matrix is equivalent to y_2 = -y_1 there."""
    ring, system = ising
    for w in search_ribbon_data(ring, 16):
        s01 = w.smatrix.entry(0, 2).center_complex()
        s12 = w.smatrix.entry(1, 2).center_complex()
        assert s12 == pytest.approx(-s01, abs=1e-12)


def test_exact_context_agrees_with_ball_classifier(ising, rep_s3):
    ring, system = ising
    tw = Twists.of(RootOfUnity.make(1, 2), RootOfUnity.make(5, 16))
    ctx = ExactContext(ring, system.chars[0], tw)
    assert ctx.structure_class() == classify_s_matrix(
        build_s_matrix(ring, system.chars[0], tw)
    )


# ---------------------------------------------------------------------------
# nonmodular filter
# ---------------------------------------------------------------------------

def test_nonmodular_filter_passes_n0():
    v = nonmodular_filter(Rank3Params(0, 1, 0, 0))
    assert v.status == Verdict.PASS
    assert v.certificate["witness"]["theta_turn"] == "1/4"


def test_nonmodular_filter_passes_n1():
    v = nonmodular_filter(Rank3Params(0, 1, 0, 1))
    assert v.status == Verdict.PASS
    assert v.certificate["witness"] == {"d_Y": "2", "theta_turn": "1/3"}


def test_nonmodular_filter_fails_n2():
    v = nonmodular_filter(Rank3Params(0, 1, 0, 2))
    assert v.status == Verdict.FAIL
    assert "5.46410161514" in v.certificate["violated"]


def test_nonmodular_filter_not_applicable():
    v = nonmodular_filter(Rank3Params(1, 1, 0, 1))
    assert v.status == Verdict.NOT_APPLICABLE


def test_nonmodular_filter_swapped_orientation():
    v = nonmodular_filter(Rank3Params(1, 0, 1, 0))
    assert v.status == Verdict.PASS


def test_nonmodular_filter_large_n_fails():
    for n in (3, 5, 9):
        v = nonmodular_filter(Rank3Params(0, 1, 0, n))
        assert v.status == Verdict.FAIL

import pytest
from hypothesis import given, strategies as st

from cliffordtopo.clifford import (
    CliffordSignature,
    MatrixAlgebra,
    chessboard,
    classify_complex,
    classify_real,
    classify_real_recursive,
    star_index,
    tensor,
    verify_isomorphisms,
)

counts = st.integers(min_value=0, max_value=24)


@pytest.mark.parametrize("p, q, expected", [
    (0, 0, "R"),
    (1, 0, "C"),
    (2, 0, "H"),
    (3, 0, "H+H"),
    (0, 1, "R+R"),
    (0, 2, "R(2)"),
    (1, 1, "R(2)"),
    (4, 0, "H(2)"),
    (0, 8, "R(16)"),
    (8, 0, "R(16)"),
])
def test_known_algebras(p, q, expected):
    assert str(classify_real(CliffordSignature(p, q))) == expected


def test_chessboard_layout():
    board = chessboard(3, 4)
    assert len(board) == 3 and all(len(r) == 4 for r in board)
    # row s counts positive generators, column n negative ones
    assert str(board[0][1]) == "C"
    assert str(board[1][0]) == "R+R"
    with pytest.raises(ValueError):
        chessboard(0, 2)


def test_complex_algebras():
    assert str(classify_complex(0)) == "C"
    assert str(classify_complex(1)) == "C+C"
    assert str(classify_complex(4)) == "C(4)"


def test_parse_rejects_garbage():
    for bad in ("X", "R+C", "R(2)+R(2)+R(2)", "H(0)"):
        with pytest.raises(ValueError):
            MatrixAlgebra.parse(bad)


def test_negative_signature():
    with pytest.raises(ValueError):
        CliffordSignature(-1, 0)
    with pytest.raises(ValueError):
        star_index(-1, 0)


def test_isomorphism_sweep():
    report = verify_isomorphisms(12)
    assert report.ok, report.violations[:3]
    assert report.checked > 1000


@given(counts, counts)
def test_dimension_matches_signature(p, q):
    sig = CliffordSignature(p, q)
    assert classify_real(sig).real_dimension == 2 ** (p + q)


@given(counts, counts)
def test_direct_and_recursive_agree(p, q):
    sig = CliffordSignature(p, q)
    assert classify_real(sig) == classify_real_recursive(sig)


@given(counts, counts)
def test_string_round_trip(p, q):
    alg = classify_real(CliffordSignature(p, q))
    assert MatrixAlgebra.parse(str(alg)) == alg


@given(counts, counts)
def test_mod_eight_periodicity(p, q):
    a = classify_real(CliffordSignature(p + 8, q))
    b = classify_real(CliffordSignature(p, q))
    assert (a.ring, a.summands, a.block) == (b.ring, b.summands, 16 * b.block)


@given(counts, counts)
def test_one_one_shift_doubles_block(p, q):
    a = classify_real(CliffordSignature(p + 1, q + 1))
    assert a == tensor(classify_real(CliffordSignature(p, q)), MatrixAlgebra("R", 2))


@given(counts, counts)
def test_star_index_depends_on_difference(s, n):
    assert star_index(s, n) == star_index(s + 1, n + 1) == (s - n) % 8

import pytest
from hypothesis import given, strategies as st

from cliffordtopo.golden import load_golden
from cliffordtopo.tenfold import (
    COMPLEX_LABELS,
    REAL_LABELS,
    GroupTag,
    IndexForm,
    PeriodicTable,
    UnknownLabel,
    az_from_signature,
    az_signature,
    index_table,
    index_type,
    k_group,
    ko_group,
    ko_table,
    periodic_table,
    periodic_table_from_pi0,
    symmetric_space,
)

degrees = st.integers(min_value=-40, max_value=40)


def test_ko_of_point():
    assert [str(ko_group(k)) for k in range(8)] == ["Z", "Z2", "Z2", "0", "Z", "0", "0", "0"]
    assert [str(k_group(k)) for k in range(2)] == ["Z", "0"]


@given(degrees)
def test_periodicity(k):
    assert ko_group(k) == ko_group(k + 8)
    assert k_group(k) == k_group(k + 2)


@given(degrees)
def test_index_value_group_matches_ko(k):
    assert index_type(k, "R").value_group == ko_group(k)
    assert index_type(k, "C").value_group == k_group(k)


def test_index_forms():
    assert index_type(0).form is IndexForm.AHAT_INTEGER
    assert index_type(4).form is IndexForm.HALF_AHAT
    assert index_type(1).form is IndexForm.MOD_TWO_COMPLEX_DIM
    assert index_type(2).form is IndexForm.MOD_TWO_QUATERNION_DIM
    assert {index_type(k).form for k in (3, 5, 6, 7)} == {IndexForm.ZERO}
    assert index_type(2, "C").form is IndexForm.TODD_INTEGER


def test_tables_depend_on_difference():
    real = ko_table("R")
    idx = index_table("R")
    for s in range(8):
        for n in range(8):
            assert real[s][n] == ko_group(s - n)
            assert idx[s][n].k == (s - n) % 8
    with pytest.raises(ValueError):
        ko_table("Q")


def test_periodic_table_matches_reference():
    assert periodic_table().to_payload() == load_golden("periodic_table")


def test_pi0_route_agrees():
    assert periodic_table_from_pi0() == periodic_table()


def test_payload_round_trip():
    table = periodic_table()
    assert PeriodicTable.from_payload(table.to_payload()) == table


def test_real_rows_shift_right():
    table = periodic_table()
    for i, label in enumerate(REAL_LABELS):
        nxt = table.row(REAL_LABELS[(i + 1) % 8])
        for d in range(8):
            assert nxt.groups[d] == table.row(label).groups[(d - 1) % 8]


def test_complex_rows_alternate():
    table = periodic_table()
    assert table.row("A").groups == (GroupTag.Z, GroupTag.ZERO) * 4
    assert table.row("AIII").groups == (GroupTag.ZERO, GroupTag.Z) * 4


@pytest.mark.parametrize("label", COMPLEX_LABELS + REAL_LABELS)
def test_signature_round_trip(label):
    az = az_signature(label)
    assert az_from_signature(az.T, az.C, az.S) == az


def test_unknown_labels():
    with pytest.raises(UnknownLabel):
        az_signature("XYZ")
    with pytest.raises(UnknownLabel):
        periodic_table().row("BDII")


def test_symmetric_spaces():
    assert symmetric_space(0).coset == "O(2n)/O(n)×O(n)"
    assert symmetric_space(4).pi0 is GroupTag.Z
    assert symmetric_space(9).index == 1
    assert symmetric_space(1, "C").extension == (1, 2)
    for k in range(8):
        assert symmetric_space(k).pi0 == ko_group(k)
        assert symmetric_space(k).cartan_label == REAL_LABELS[k]

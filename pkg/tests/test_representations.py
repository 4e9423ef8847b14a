import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cliffordtopo.clifford import RING_DIM, CliffordSignature, classify_complex, classify_real
from cliffordtopo.representations import (
    GeneratorSet,
    SizeGuardExceeded,
    build_generators,
    commutant_dimension,
    complex_grothendieck,
    complex_restriction_quotient,
    even_subalgebra_generators,
    grothendieck,
    irreducible_pieces,
    restriction_quotient,
    verify_relations,
    volume_element,
)
from cliffordtopo.tenfold import GroupTag, k_group, ko_group

small = st.integers(min_value=0, max_value=5)


@given(small, small)
@settings(max_examples=40, deadline=None)
def test_generators_satisfy_relations(p, q):
    gens = build_generators(CliffordSignature(p, q))
    assert len(gens) == p + q
    assert verify_relations(gens)
    for g in gens.matrices:
        assert g.dtype.kind == "i"


@given(small, small)
@settings(max_examples=40, deadline=None)
def test_representation_size_matches_classification(p, q):
    sig = CliffordSignature(p, q)
    alg = classify_real(sig)
    gens = build_generators(sig)
    assert gens.dimension == alg.summands * alg.irrep_real_dim


def test_relations_detect_a_broken_generator():
    gens = build_generators(CliffordSignature(1, 1))
    broken = GeneratorSet(gens.signature, (gens.matrices[0], gens.matrices[0]))
    assert not verify_relations(broken)


def test_size_guard():
    with pytest.raises(SizeGuardExceeded):
        build_generators(CliffordSignature(7, 6))


@pytest.mark.parametrize("p, q", [(0, 0), (1, 0), (2, 0), (3, 0), (0, 1), (0, 2), (2, 3), (5, 0), (4, 4)])
def test_commutant_recovers_division_ring(p, q):
    sig = CliffordSignature(p, q)
    ring_dim = RING_DIM[classify_real(sig).ring]
    pieces = irreducible_pieces(build_generators(sig))
    assert len(pieces) == classify_real(sig).summands
    for piece in pieces:
        assert commutant_dimension(piece) == ring_dim


def test_commutant_of_reducible_representation():
    # two copies of the real line: commutant is all 2x2 real matrices
    gens = build_generators(CliffordSignature(0, 1))
    assert commutant_dimension(gens) == 2


def test_volume_element_is_central_for_split_algebras():
    gens = build_generators(CliffordSignature(0, 1 + 4))
    w = volume_element(gens)
    assert np.array_equal(w @ w, np.eye(w.shape[0], dtype=w.dtype))
    for g in gens.matrices:
        assert np.array_equal(w @ g, g @ w)


@pytest.mark.parametrize("p, q", [(1, 0), (2, 1), (3, 2), (4, 0)])
def test_even_subalgebra(p, q):
    even = even_subalgebra_generators(build_generators(CliffordSignature(p, q)))
    assert even.signature == CliffordSignature(p - 1, q)
    assert verify_relations(even)


def test_grothendieck_groups():
    groups = [str(grothendieck(k).group) for k in range(8)]
    assert groups == ["Z", "Z", "Z", "Z+Z", "Z", "Z", "Z", "Z+Z"]
    assert [str(complex_grothendieck(k).group) for k in range(2)] == ["Z", "Z+Z"]
    assert complex_grothendieck(0).irrep_dim == classify_complex(0).block


@pytest.mark.parametrize("k", range(16))
def test_restriction_quotient_matches_ko(k):
    assert restriction_quotient(k) == ko_group(k)
    assert complex_restriction_quotient(k) == k_group(k)


def test_quotient_values():
    assert [restriction_quotient(k) for k in range(8)] == [
        GroupTag.Z, GroupTag.Z2, GroupTag.Z2, GroupTag.ZERO,
        GroupTag.Z, GroupTag.ZERO, GroupTag.ZERO, GroupTag.ZERO,
    ]

"""Acceptance criteria 1-12, one test each, at their stated tolerances.

Run ``pytest tests/test_acceptance.py -v``; a PASS/FAIL line per criterion
is printed in the terminal summary.
"""

import json
import math
import time
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from cliffordtopo.charclass import CharacteristicNumbers, ahat_series, evaluate_genus, integrality_check, todd_series
from cliffordtopo.cli import main
from cliffordtopo.clifford import RING_DIM, CliffordSignature, classify_real, classify_real_recursive, verify_isomorphisms
from cliffordtopo.golden import load_golden
from cliffordtopo.invariants import chern_number, phase_diagram, solid_angle_degree, spin_chern_parity, z2_invariant
from cliffordtopo.linalg import eig_hermitian
from cliffordtopo.models import haldane, kane_mele
from cliffordtopo.representations import (
    build_generators,
    commutant_dimension,
    complex_restriction_quotient,
    irreducible_pieces,
    restriction_quotient,
    verify_relations,
)
from cliffordtopo.tenfold import k_group, ko_group


def cli_json(capsys, *argv):
    code = main(list(argv) + ["--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def character_norm(mats):
    """(1/|G|) sum over the Clifford group of chi(g)^2: the commutant dimension of a real rep."""
    n = len(mats)
    dim = mats[0].shape[0] if mats else 1
    total = 0.0
    for bits in product((0, 1), repeat=n):
        m = np.eye(dim)
        for b, g in zip(bits, mats):
            if b:
                m = m @ g
        total += np.trace(m) ** 2
    return total / 2 ** n  # the signs +/- g contribute equally


@pytest.mark.criterion(1, "chessboard reproduces the 8x8 reference table")
def test_criterion_01_chessboard(capsys):
    start = time.perf_counter()
    code, doc = cli_json(capsys, "chessboard", "--rows", "8", "--cols", "8")
    elapsed = time.perf_counter() - start
    assert code == 0
    table = doc["result"]["table"]
    golden = load_golden("chessboard")["table"]
    assert sum(len(r) for r in table) == 64
    assert table == golden
    assert elapsed < 1.0


@pytest.mark.criterion(2, "direct and recursive classification agree on 289 signatures")
def test_criterion_02_dual_path():
    start = time.perf_counter()
    cases = [(p, q) for p in range(17) for q in range(17)]
    assert len(cases) == 289
    for p, q in cases:
        sig = CliffordSignature(p, q)
        assert classify_real(sig) == classify_real_recursive(sig), (p, q)
    assert time.perf_counter() - start < 1.0


@pytest.mark.criterion(3, "isomorphism sweep to 12 has no violations")
def test_criterion_03_isomorphisms():
    report = verify_isomorphisms(12)
    assert report.violations == []


@pytest.mark.criterion(4, "generators satisfy the relations and commutants match the division ring")
def test_criterion_04_representations():
    for total in range(11):
        for p in range(total + 1):
            sig = CliffordSignature(p, total - p)
            gens = build_generators(sig)
            assert verify_relations(gens), (sig.p, sig.q)
            ring_dim = RING_DIM[classify_real(sig).ring]
            for piece in irreducible_pieces(gens):
                oracle = character_norm([np.asarray(g, dtype=float) for g in piece.matrices])
                assert abs(oracle - round(oracle)) < 1e-10
                assert round(oracle) == ring_dim, (sig.p, sig.q)
                assert commutant_dimension(piece) == ring_dim, (sig.p, sig.q)


@pytest.mark.criterion(5, "restriction quotients equal the K-groups of a point")
def test_criterion_05_abs_chain():
    real = [str(restriction_quotient(k)) for k in range(8)]
    assert real == [str(ko_group(k)) for k in range(8)]
    assert real == ["Z", "Z2", "Z2", "0", "Z", "0", "0", "0"]
    cplx = [str(complex_restriction_quotient(k)) for k in range(2)]
    assert cplx == [str(k_group(k)) for k in range(2)]
    assert cplx == ["Z", "0"]


@pytest.mark.criterion(6, "periodic table reproduces the 10-row reference with the Bott shift")
def test_criterion_06_periodic_table(capsys):
    code, doc = cli_json(capsys, "periodic-table")
    assert code == 0
    rows = doc["result"]["rows"]
    assert rows == load_golden("periodic_table")["rows"]
    assert len(rows) == 10 and all(len(r["groups"]) == 8 for r in rows)
    real = rows[2:]
    for i in range(8):
        nxt = real[(i + 1) % 8]["groups"]
        assert nxt == real[i]["groups"][-1:] + real[i]["groups"][:-1]


@pytest.mark.criterion(7, "A-hat and Todd coefficients are exact")
def test_criterion_07_genus_coefficients():
    start = time.perf_counter()
    ahat = ahat_series(12)
    want = {"p1": Fraction(-1, 24), "p1^2": Fraction(7, 5760), "p2": Fraction(-4, 5760),
            "p1^3": Fraction(-31, 967680), "p1*p2": Fraction(44, 967680), "p3": Fraction(-16, 967680)}
    for mono, coeff in want.items():
        assert ahat.coefficient(mono) == coeff, mono
    todd = todd_series(6)
    assert [todd.coefficient(m) for m in ("c1", "c1^2", "c2", "c1*c2")] == [
        Fraction(1, 2), Fraction(1, 12), Fraction(1, 12), Fraction(1, 24)]
    assert time.perf_counter() - start < 5.0


@pytest.mark.criterion(8, "genus evaluation on K3 and CP2")
def test_criterion_08_genus_evaluation():
    k3 = CharacteristicNumbers.from_mapping(4, {"p1": "-48"})
    assert evaluate_genus(ahat_series(4), k3) == 2
    assert integrality_check("ahat", k3, 4) == 1
    cp2 = CharacteristicNumbers.from_mapping(4, {"c1^2": "9", "c2": "3"})
    assert evaluate_genus(todd_series(4), cp2) == 1


@pytest.mark.criterion(9, "Haldane Chern number, solid-angle oracle and phase boundary")
def test_criterion_09_haldane():
    start = time.perf_counter()
    model = haldane(1.0, 0.2, math.pi / 2, 0.0)
    c = chern_number(model, n=24)
    assert abs(c) == 1
    assert c == solid_angle_degree(model)
    assert c == -1  # documented orientation: right-handed reduced coordinates
    assert chern_number(haldane(1.0, 0.2, math.pi / 2, 2.0), n=24) == 0
    pd = phase_diagram(resolution=41, n=24)
    assert pd.boundary_mismatches() == []
    assert time.perf_counter() - start < 30.0


@pytest.mark.criterion(10, "Kane-Mele Z2 against spin-Chern parity and under Rashba coupling")
def test_criterion_10_kane_mele():
    start = time.perf_counter()
    for M, expected in ((0.1, 1), (0.4, 0)):
        model = kane_mele(1.0, 0.06, 0.0, M)
        z2 = z2_invariant(model, n=24)
        assert z2 == expected
        assert spin_chern_parity(model, n=24) == expected
        assert z2_invariant(kane_mele(1.0, 0.06, 0.03, M), n=24) == expected
    assert time.perf_counter() - start < 30.0


@pytest.mark.criterion(11, "gauge invariance, grid stability, eigensolver accuracy, band sums")
def test_criterion_11_properties():
    rng = np.random.default_rng(2024)
    chern_points = [(math.pi / 2, 0.0), (math.pi / 2, 2.0), (-math.pi / 2, 0.0), (1.0, 0.5)]
    z2_points = [(0.06, 0.0, 0.1), (0.06, 0.0, 0.4), (0.06, 0.03, 0.1), (0.06, 0.05, 0.1)]
    # gauge invariance
    for _ in range(20):
        assert chern_number(haldane(1.0, 0.2, math.pi / 2, 0.0), rng=rng) == -1
        assert z2_invariant(kane_mele(1.0, 0.06, 0.03, 0.1), rng=rng) == 1
    # grid stability
    for phi, M in chern_points:
        model = haldane(1.0, 0.2, phi, M)
        assert chern_number(model, n=24) == chern_number(model, n=48)
    for lso, lr, M in z2_points:
        model = kane_mele(1.0, lso, lr, M)
        assert z2_invariant(model, n=24) == z2_invariant(model, n=48)
    # eigensolver reconstruction
    worst = 0.0
    for _ in range(1000):
        n = int(rng.integers(1, 9))
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        h = (a + a.conj().T) / 2
        err = np.linalg.norm(eig_hermitian(h).reconstruct() - h) / np.linalg.norm(h)
        worst = max(worst, err)
    assert worst <= 1e-10
    # total Chern number of all bands vanishes
    for phi, M in chern_points:
        model = haldane(1.0, 0.2, phi, M)
        assert chern_number(model, [0]) + chern_number(model, [1]) == 0
    for lso, lr, M in z2_points:
        model = kane_mele(1.0, lso, lr, M)
        assert chern_number(model, [0, 1]) + chern_number(model, [2, 3]) == 0


@pytest.mark.criterion(12, "verify-all exits 0 within three minutes")
def test_criterion_12_verify_all(capsys):
    start = time.perf_counter()
    code = main(["verify-all"])
    out = capsys.readouterr().out
    elapsed = time.perf_counter() - start
    assert code == 0, out
    assert "FAIL" not in out
    assert elapsed < 180.0

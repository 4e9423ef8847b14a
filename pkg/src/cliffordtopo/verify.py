"""Cross-module consistency suites run by ``cliffordtopo verify-all``.

Each suite returns a list of :class:`Check`; a suite never raises for a
mismatch, it records it.  Unexpected exceptions are caught by
:func:`run_all` and reported as failed checks.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import charclass, clifford, golden, invariants, linalg, models, representations, tenfold


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f": {self.detail}" if self.detail else ""
        return f"{status} {self.suite}/{self.name}{tail}"


def golden_tables() -> list[Check]:
    out = []
    for name, (kind, build) in golden.GOLDEN_SOURCES.items():
        payload = build()
        expected = golden.load_golden(name)
        out.append(Check("golden", f"{name}.json", payload == expected))
        text_ok = golden.render_text(kind, payload) == golden.golden_text(name, "txt")
        out.append(Check("golden", f"{name}.txt", text_ok))
    return out


def classification(limit: int = 16) -> list[Check]:
    bad = [(p, q) for p in range(limit + 1) for q in range(limit + 1)
           if clifford.classify_real(clifford.CliffordSignature(p, q))
           != clifford.classify_real_recursive(clifford.CliffordSignature(p, q))]
    out = [Check("clifford", "direct-vs-recursive", not bad, f"mismatches at {bad[:3]}" if bad else "")]
    report = clifford.verify_isomorphisms(12)
    detail = str(report.violations[0]) if report.violations else f"{report.checked} identities"
    out.append(Check("clifford", "isomorphisms", report.ok, detail))
    return out


def representation_layer(max_generators: int = 10) -> list[Check]:
    """Generator relations and commutant dimensions for all ``p + q <= max_generators``."""
    rel_bad, comm_bad = [], []
    for total in range(max_generators + 1):
        for p in range(total + 1):
            sig = clifford.CliffordSignature(p, total - p)
            gens = representations.build_generators(sig)
            if not representations.verify_relations(gens):
                rel_bad.append((sig.p, sig.q))
            ring_dim = clifford.RING_DIM[clifford.classify_real(sig).ring]
            for piece in representations.irreducible_pieces(gens):
                if representations.commutant_dimension(piece) != ring_dim:
                    comm_bad.append((sig.p, sig.q))
    return [
        Check("representations", "relations", not rel_bad, f"fails at {rel_bad[:3]}" if rel_bad else ""),
        Check("representations", "commutant", not comm_bad, f"fails at {comm_bad[:3]}" if comm_bad else ""),
    ]


def abs_chain() -> list[Check]:
    real = [str(representations.restriction_quotient(k)) for k in range(8)]
    cplx = [str(representations.complex_restriction_quotient(k)) for k in range(2)]
    return [
        Check("abs", "real", real == [str(tenfold.ko_group(k)) for k in range(8)], " ".join(real)),
        Check("abs", "complex", cplx == [str(tenfold.k_group(k)) for k in range(2)], " ".join(cplx)),
    ]


def periodic_structure() -> list[Check]:
    table = tenfold.periodic_table()
    real = [r for r in table.rows if r.az.label in tenfold.REAL_LABELS]
    shift_ok = all(
        real[(i + 1) % 8].groups[d] == real[i].groups[(d - 1) % 8] for i in range(8) for d in range(8)
    )
    return [
        Check("tenfold", "pi0-route", tenfold.periodic_table_from_pi0() == table),
        Check("tenfold", "bott-shift", shift_ok),
    ]


_AHAT_12 = {
    "p1": Fraction(-1, 24), "p1^2": Fraction(7, 5760), "p2": Fraction(-4, 5760),
    "p1^3": Fraction(-31, 967680), "p1*p2": Fraction(44, 967680), "p3": Fraction(-16, 967680),
}
_TODD_6 = {"c1": Fraction(1, 2), "c1^2": Fraction(1, 12), "c2": Fraction(1, 12), "c1*c2": Fraction(1, 24)}


def genera() -> list[Check]:
    ahat = charclass.ahat_series(12)
    todd = charclass.todd_series(6)
    ahat_ok = all(ahat.coefficient(m) == c for m, c in _AHAT_12.items()) and len(ahat.terms) == 7
    todd_ok = all(todd.coefficient(m) == c for m, c in _TODD_6.items())
    k3 = charclass.CharacteristicNumbers.from_mapping(4, {"p1": "-48"})
    cp2 = charclass.CharacteristicNumbers.from_mapping(4, {"c1^2": "9", "c2": "3"})
    k3_val = charclass.evaluate_genus(charclass.ahat_series(4), k3)
    k3_half = charclass.integrality_check("ahat", k3, 4)
    cp2_val = charclass.evaluate_genus(charclass.todd_series(4), cp2)
    return [
        Check("charclass", "ahat-coefficients", ahat_ok, str(ahat)),
        Check("charclass", "todd-coefficients", todd_ok, str(todd)),
        Check("charclass", "k3", k3_val == 2 and k3_half == 1, f"ahat={k3_val} half={k3_half}"),
        Check("charclass", "cp2", cp2_val == 1, f"todd={cp2_val}"),
    ]


def haldane_suite(n: int = 24) -> list[Check]:
    model = models.haldane(1.0, 0.2, np.pi / 2, 0.0)
    c = invariants.chern_number(model, n=n)
    deg = invariants.solid_angle_degree(model)
    trivial = invariants.chern_number(models.haldane(1.0, 0.2, np.pi / 2, 2.0), n=n)
    total = c + invariants.chern_number(model, occupied=[1], n=n)
    pd = invariants.phase_diagram(resolution=41, n=n)
    bad = pd.boundary_mismatches()
    return [
        Check("invariants", "haldane-chern", abs(c) == 1 and c == deg, f"fhs={c} degree={deg}"),
        Check("invariants", "haldane-trivial", trivial == 0, f"chern={trivial}"),
        Check("invariants", "haldane-total", total == 0, f"sum={total}"),
        Check("invariants", "phase-boundary", not bad, f"{len(bad)} cells off the boundary"),
    ]


def kane_mele_suite(n: int = 24) -> list[Check]:
    out = []
    for M, want in ((0.1, 1), (0.4, 0)):
        base = models.kane_mele(1.0, 0.06, 0.0, M)
        z2 = invariants.z2_invariant(base, n=n)
        spin = invariants.spin_chern_parity(base, n=n)
        rashba = invariants.z2_invariant(models.kane_mele(1.0, 0.06, 0.03, M), n=n)
        ok = z2 == spin == rashba == want
        out.append(Check("invariants", f"kane-mele-M{M}", ok, f"z2={z2} spin={spin} rashba={rashba}"))
    report = models.check_antiunitary(models.kane_mele(), models.time_reversal_spinful())
    out.append(Check("models", "kane-mele-T", report.passed, f"deviation={report.max_deviation:.1e}"))
    return out


def eigensolver(samples: int = 200, seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        size = int(rng.integers(1, 9))
        a = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
        h = a + a.conj().T
        dec = linalg.eig_hermitian(h)
        worst = max(worst, np.linalg.norm(dec.reconstruct() - h) / np.linalg.norm(h))
    return [Check("linalg", "reconstruction", worst <= 1e-10, f"worst relative error {worst:.1e}")]


SUITES = (
    golden_tables,
    classification,
    representation_layer,
    abs_chain,
    periodic_structure,
    genera,
    haldane_suite,
    kane_mele_suite,
    eigensolver,
)


def run_all(suites=SUITES) -> tuple[list[Check], float]:
    """Run every suite; returns the checks and the elapsed wall time in seconds."""
    start = time.perf_counter()
    checks = []
    for suite in suites:
        try:
            checks.extend(suite())
        except Exception as exc:  # a crash is a failed check, not an abort
            checks.append(Check(suite.__name__, "crashed", False, f"{type(exc).__name__}: {exc}"))
    return checks, time.perf_counter() - start

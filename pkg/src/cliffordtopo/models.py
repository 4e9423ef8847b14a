"""Two-dimensional Bloch Hamiltonians written as ``sum_a d_a(k) Gamma_a``.

Momenta are Cartesian 2-vectors (arrays of shape ``(..., 2)``).  Every
model carries a Bravais :class:`Lattice`; ``k`` values in reduced
coordinates ``(f1, f2)`` map to ``f1 G1 + f2 G2``.

A :class:`DGammaModel` is a list of Fourier terms per matrix coefficient:
``amp * cos(k . R)``, ``amp * sin(k . R)`` or a constant, with
``R = m1 A1 + m2 A2`` an integer combination of the Bravais vectors.  The
same format is used for JSON ingestion, and the Haldane and Kane-Mele
models are built from it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .tenfold import AZClass, az_from_signature

__all__ = [
    "PAULI",
    "Lattice",
    "HALDANE_LATTICE",
    "KANE_MELE_LATTICE",
    "HALDANE_NN",
    "HALDANE_NNN",
    "HALDANE_K",
    "KANE_MELE_K",
    "GammaSet",
    "gamma_set",
    "BlochModel",
    "DGammaModel",
    "haldane",
    "haldane_continuum",
    "kane_mele",
    "spin_sector",
    "load_model",
    "AntiUnitaryOp",
    "SymmetryReport",
    "DimensionMismatch",
    "AmbiguousClass",
    "check_antiunitary",
    "detect_az_class",
    "time_reversal_spinful",
    "SYMMETRY_TOL",
]

SYMMETRY_TOL = 1e-9
SQ3 = math.sqrt(3.0)

PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@dataclass(frozen=True)
class Lattice:
    """Bravais vectors ``A1, A2`` (rows) and reciprocal ``G1, G2`` with ``A_i . G_j = 2 pi delta_ij``."""

    vectors: np.ndarray

    def __post_init__(self):
        vec = np.asarray(self.vectors, dtype=float)
        if vec.shape != (2, 2) or abs(np.linalg.det(vec)) < 1e-12:
            raise ValueError("lattice needs two independent 2D vectors")
        object.__setattr__(self, "vectors", vec)

    @property
    def reciprocal(self) -> np.ndarray:
        return 2 * np.pi * np.linalg.inv(self.vectors).T

    @property
    def right_handed(self) -> bool:
        g = self.reciprocal
        return g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0] > 0

    def cartesian(self, reduced) -> np.ndarray:
        return np.asarray(reduced, dtype=float) @ self.reciprocal

    def reduced(self, k) -> np.ndarray:
        return np.asarray(k, dtype=float) @ self.vectors.T / (2 * np.pi)

    def grid(self, n: int) -> np.ndarray:
        """Cartesian momenta ``(i/n) G1 + (j/n) G2``, shape ``(n, n, 2)``, axis 0 along ``G1``."""
        f = np.arange(n) / n
        f1, f2 = np.meshgrid(f, f, indexing="ij")
        return self.cartesian(np.stack([f1, f2], axis=-1))


# nearest-neighbour displacements and next-nearest combinations, lattice constant 1
HALDANE_NN = np.array([[0.5, SQ3 / 2], [0.5, -SQ3 / 2], [-1.0, 0.0]])
HALDANE_NNN = np.array([HALDANE_NN[1] - HALDANE_NN[2], HALDANE_NN[2] - HALDANE_NN[0], HALDANE_NN[0] - HALDANE_NN[1]])
# A1 = a2 - a3 = b1, A2 = a1 - a3
HALDANE_LATTICE = Lattice(np.array([HALDANE_NN[1] - HALDANE_NN[2], HALDANE_NN[0] - HALDANE_NN[2]]))
HALDANE_K = np.array([0.0, -4 * np.pi / (3 * SQ3)])

KANE_MELE_LATTICE = Lattice(np.array([[0.5, SQ3 / 2], [-0.5, SQ3 / 2]]))
KANE_MELE_NN = np.array([[0.0, -1 / SQ3], [0.5, 1 / (2 * SQ3)], [-0.5, 1 / (2 * SQ3)]])
KANE_MELE_K = np.array([4 * np.pi / 3, 0.0])


@dataclass(frozen=True)
class GammaSet:
    """Five anticommuting 4x4 matrices (sublattice factor first) and their commutators."""

    gammas: tuple
    commutators: dict

    def __getitem__(self, key) -> np.ndarray:
        """``gs[1]`` .. ``gs[5]`` or ``gs[(i, j)]`` / ``gs["ij"]`` for ``[G_i, G_j]/(2i)``."""
        if isinstance(key, str):
            key = tuple(int(c) for c in key) if len(key) == 2 else int(key)
        if isinstance(key, tuple):
            i, j = key
            if i < j:
                return self.commutators[(i, j)]
            return -self.commutators[(j, i)]
        return self.gammas[key - 1]


def gamma_set() -> GammaSet:
    s0, s1, s2, s3 = PAULI
    gammas = (np.kron(s1, s0), np.kron(s3, s0), np.kron(s2, s1), np.kron(s2, s2), np.kron(s2, s3))
    comms = {}
    for i in range(5):
        for j in range(i + 1, 5):
            a, b = gammas[i], gammas[j]
            comms[(i + 1, j + 1)] = (a @ b - b @ a) / 2j
    return GammaSet(gammas, comms)


def _basis_matrices(name: str) -> dict:
    if name == "pauli":
        return {str(i): PAULI[i] for i in range(4)}
    if name == "kane-mele":
        gs = gamma_set()
        out = {"0": np.eye(4, dtype=complex)}
        out.update({str(i): gs[i] for i in range(1, 6)})
        out.update({f"{i}{j}": m for (i, j), m in gs.commutators.items()})
        return out
    raise ValueError(f"unknown gamma basis {name!r}; expected 'pauli' or 'kane-mele'")


class BlochModel:
    """Hermitian matrix function of Cartesian momentum on a Bravais lattice.

    Subclasses implement ``_evaluate(k)`` for ``k`` of shape ``(m, 2)``.
    """

    periodic = True

    def __init__(self, name: str, bands: int, params: dict, lattice: Lattice,
                 displacements: dict | None = None, points: dict | None = None):
        if bands < 2 or bands % 2:
            raise ValueError("bands must be an even positive integer")
        self.name = name
        self.bands = bands
        self.params = dict(params)
        self.lattice = lattice
        self.displacements = dict(displacements or {})
        self.points = dict(points or {})

    def hamiltonian(self, k) -> np.ndarray:
        k = np.asarray(k, dtype=float)
        if k.shape[-1] != 2:
            raise ValueError("momenta must have a trailing axis of length 2")
        flat = k.reshape(-1, 2)
        out = self._evaluate(flat)
        return out.reshape(k.shape[:-1] + (self.bands, self.bands))

    __call__ = hamiltonian

    def on_grid(self, n: int) -> np.ndarray:
        """Hamiltonians on the ``n x n`` reduced grid, shape ``(n, n, bands, bands)``."""
        return self.hamiltonian(self.lattice.grid(n))

    def _evaluate(self, k: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __repr__(self):
        args = ", ".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.name}({args})"


@dataclass(frozen=True)
class FourierTerm:
    fn: str
    harmonic: tuple
    amp: float

    def __post_init__(self):
        if self.fn not in ("cos", "sin", "const"):
            raise ValueError(f"term function must be cos, sin or const, got {self.fn!r}")

    def to_dict(self) -> dict:
        return {"fn": self.fn, "harmonic": list(self.harmonic), "amp": self.amp}


class DGammaModel(BlochModel):
    """``H(k) = sum_a d_a(k) B_a`` with each ``d_a`` a finite Fourier sum.

    Parameters
    ----------
    basis : {"pauli", "kane-mele"}
        ``pauli`` keys are ``"0"``..``"3"``; ``kane-mele`` keys are ``"1"``..``"5"``
        for the Gamma matrices, ``"ij"`` (``i < j``) for their commutators and
        ``"0"`` for the identity.
    d : dict
        Key -> list of :class:`FourierTerm` (or dicts with ``fn``, ``harmonic``, ``amp``).
    """

    def __init__(self, basis: str, d: dict, lattice: Lattice, name: str = "dgamma",
                 params: dict | None = None, symmetries: dict | None = None, **kw):
        mats = _basis_matrices(basis)
        terms = {}
        for key, items in d.items():
            key = str(key)
            if key not in mats:
                raise ValueError(f"coefficient {key!r} is not in the {basis} basis")
            terms[key] = tuple(t if isinstance(t, FourierTerm) else FourierTerm(
                t["fn"], tuple(int(m) for m in t.get("harmonic", (0, 0))), float(t.get("amp", 1.0))) for t in items)
        bands = next(iter(mats.values())).shape[0]
        super().__init__(name, bands, params or {}, lattice, **kw)
        self.basis = basis
        self.terms = terms
        self.symmetries = dict(symmetries or {})
        self._mats = {k: mats[k] for k in terms}

    def coefficients(self, k) -> dict:
        """Values of every ``d_a`` at momenta ``k`` (shape ``(..., 2)``)."""
        k = np.asarray(k, dtype=float)
        out = {}
        for key, items in self.terms.items():
            val = np.zeros(k.shape[:-1])
            for t in items:
                if t.fn == "const":
                    val = val + t.amp
                    continue
                r = t.harmonic[0] * self.lattice.vectors[0] + t.harmonic[1] * self.lattice.vectors[1]
                phase = k @ r
                val = val + t.amp * (np.cos(phase) if t.fn == "cos" else np.sin(phase))
            out[key] = val
        return out

    def _evaluate(self, k):
        h = np.zeros((k.shape[0], self.bands, self.bands), dtype=complex)
        for key, val in self.coefficients(k).items():
            h += val[:, None, None] * self._mats[key]
        return h

    def to_dict(self) -> dict:
        out = {
            "bands": self.bands,
            "gamma_basis": self.basis,
            "lattice": {"vectors": self.lattice.vectors.tolist()},
            "d": {k: [t.to_dict() for t in v] for k, v in self.terms.items()},
        }
        if self.symmetries:
            out["symmetries"] = {k: op.to_dict() for k, op in self.symmetries.items()}
        return out


class _HaldaneAtomic(BlochModel):
    """Haldane model with sublattice phases ``e^{i k . a_i}``; not periodic."""

    periodic = False

    def _evaluate(self, k):
        t1, t2, phi, m = (self.params[x] for x in ("t1", "t2", "phi", "M"))
        kb = k @ HALDANE_NNN.T
        ka = k @ HALDANE_NN.T
        d0 = 2 * t2 * np.cos(phi) * np.cos(kb).sum(-1)
        d1 = t1 * np.cos(ka).sum(-1)
        d2 = t1 * np.sin(ka).sum(-1)
        d3 = m - 2 * t2 * np.sin(phi) * np.sin(kb).sum(-1)
        return np.einsum("m,ij->mij", d0, PAULI[0]) + np.einsum("m,ij->mij", d1, PAULI[1]) \
            + np.einsum("m,ij->mij", d2, PAULI[2]) + np.einsum("m,ij->mij", d3, PAULI[3])


def haldane(t1: float = 1.0, t2: float = 0.2, phi: float = np.pi / 2, M: float = 0.0,
            gauge: str = "periodic") -> BlochModel:
    """Haldane honeycomb model.

    ``d0 = 2 t2 cos(phi) sum_i cos(k.b_i)``, ``d3 = M - 2 t2 sin(phi) sum_i sin(k.b_i)``
    and ``d1 + i d2 = t1 sum_i e^{i k.a_i}``.  In the default periodic gauge
    the B-sublattice orbital is rephased by ``e^{-i k.a3}`` so that
    ``d1 + i d2 = t1 (1 + e^{i k.A1} + e^{i k.A2})`` and ``H(k + G) = H(k)``.
    ``gauge="atomic"`` keeps the phases ``e^{i k.a_i}``; the spectrum is the
    same but the matrix is only periodic up to a diagonal unitary.

    The Dirac point ``K = (0, -4 pi / (3 sqrt 3))`` has ``d1 = d2 = 0`` and
    mass ``M - 3 sqrt(3) t2 sin(phi)``.
    """
    if t1 == 0:
        raise ValueError("t1 must be nonzero")
    params = {"t1": float(t1), "t2": float(t2), "phi": float(phi), "M": float(M)}
    disp = {"a": HALDANE_NN.copy(), "b": HALDANE_NNN.copy()}
    points = {"K": HALDANE_K.copy(), "K'": -HALDANE_K.copy(), "Gamma": np.zeros(2)}
    if gauge == "atomic":
        return _HaldaneAtomic("haldane", 2, params, HALDANE_LATTICE, disp, points)
    if gauge != "periodic":
        raise ValueError(f"gauge must be 'periodic' or 'atomic', got {gauge!r}")
    c2, s2 = 2 * t2 * np.cos(phi), 2 * t2 * np.sin(phi)
    # b1 = A1, b2 = -A2, b3 = A2 - A1
    nnn = [(1, 0), (0, -1), (-1, 1)]
    d = {
        "0": [FourierTerm("cos", h, c2) for h in nnn],
        "1": [FourierTerm("const", (0, 0), t1), FourierTerm("cos", (1, 0), t1), FourierTerm("cos", (0, 1), t1)],
        "2": [FourierTerm("sin", (1, 0), t1), FourierTerm("sin", (0, 1), t1)],
        "3": [FourierTerm("const", (0, 0), M)] + [FourierTerm("sin", h, -s2) for h in nnn],
    }
    return DGammaModel("pauli", d, HALDANE_LATTICE, name="haldane", params=params,
                       displacements=disp, points=points)


def haldane_continuum(kappa, t1: float = 1.0, t2: float = 0.2, phi: float = np.pi / 2,
                      M: float = 0.0) -> np.ndarray:
    """Dirac Hamiltonian at momentum ``kappa`` measured from ``K``."""
    k1, k2 = (float(x) for x in kappa)
    s0, s1, s2, s3 = PAULI
    return (-3 * t2 * np.cos(phi) * s0 + 1.5 * t1 * (k2 * s1 - k1 * s2)
            + (M - 3 * SQ3 * t2 * np.sin(phi)) * s3)


def kane_mele(t: float = 1.0, lso: float = 0.06, lr: float = 0.0, M: float = 0.1) -> DGammaModel:
    """Kane-Mele model with the eight nonzero coefficient functions.

    Basis order is sublattice first, spin second (index ``2 * sublattice + spin``).
    With ``x = k_x / 2`` and ``y = sqrt(3) k_y / 2``::

        d1  = t (1 + 2 cos x cos y)          d2  = M
        d3  = lr (1 - cos x cos y)           d4  = -sqrt(3) lr sin x sin y
        d12 = -2 t cos x sin y               d15 = lso (2 sin 2x - 4 sin x cos y)
        d23 = -lr cos x sin y                d24 = sqrt(3) lr sin x cos y

    written below as harmonics of ``A1 = (1/2, sqrt3/2)``, ``A2 = (-1/2, sqrt3/2)``.
    """
    if t == 0:
        raise ValueError("t must be nonzero")
    h1, h2, h12 = (1, 0), (0, 1), (1, -1)
    d = {
        "1": [FourierTerm("const", (0, 0), t), FourierTerm("cos", h1, t), FourierTerm("cos", h2, t)],
        "2": [FourierTerm("const", (0, 0), M)],
        "3": [FourierTerm("const", (0, 0), lr), FourierTerm("cos", h1, -lr / 2), FourierTerm("cos", h2, -lr / 2)],
        "4": [FourierTerm("cos", h2, -SQ3 * lr / 2), FourierTerm("cos", h1, SQ3 * lr / 2)],
        "12": [FourierTerm("sin", h1, -t), FourierTerm("sin", h2, -t)],
        "15": [FourierTerm("sin", h12, 2 * lso), FourierTerm("sin", h1, -2 * lso), FourierTerm("sin", h2, 2 * lso)],
        "23": [FourierTerm("sin", h1, -lr / 2), FourierTerm("sin", h2, -lr / 2)],
        "24": [FourierTerm("sin", h1, SQ3 * lr / 2), FourierTerm("sin", h2, -SQ3 * lr / 2)],
    }
    params = {"t": float(t), "lso": float(lso), "lr": float(lr), "M": float(M)}
    points = {"K": KANE_MELE_K.copy(), "K'": -KANE_MELE_K.copy(), "Gamma": np.zeros(2)}
    return DGammaModel("kane-mele", d, KANE_MELE_LATTICE, name="kane_mele", params=params,
                       displacements={"nn": KANE_MELE_NN.copy()}, points=points,
                       symmetries={"T": time_reversal_spinful()})


class _Restricted(BlochModel):
    def __init__(self, parent: BlochModel, indices, name):
        super().__init__(name, len(indices), parent.params, parent.lattice, parent.displacements, parent.points)
        self.parent = parent
        self.indices = np.asarray(indices)
        self.periodic = parent.periodic

    def _evaluate(self, k):
        h = self.parent._evaluate(k)
        return h[:, self.indices[:, None], self.indices[None, :]]


SPIN_INDICES = {"up": (0, 2), "down": (1, 3)}


def spin_sector(model: BlochModel, spin: str) -> BlochModel:
    """The ``2 x 2`` block of a 4-band model on one spin species.

    Only meaningful when the spin blocks decouple (``lr = 0`` for Kane-Mele).
    """
    if model.bands != 4:
        raise ValueError("spin sectors need a 4-band model")
    if spin not in SPIN_INDICES:
        raise ValueError("spin must be 'up' or 'down'")
    return _Restricted(model, SPIN_INDICES[spin], f"{model.name}[{spin}]")


class DimensionMismatch(ValueError):
    pass


class AmbiguousClass(ValueError):
    pass


@dataclass(frozen=True)
class AntiUnitaryOp:
    """``O = U K`` with ``K`` complex conjugation; ``kind`` is ``"T"`` or ``"C"``.

    ``square`` is the claimed sign of ``O^2 = U conj(U)``; use
    :meth:`square_deviation` to test the claim.
    """

    kind: str
    unitary: np.ndarray
    square: int

    def __post_init__(self):
        if self.kind not in ("T", "C"):
            raise ValueError("kind must be 'T' or 'C'")
        if self.square not in (1, -1):
            raise ValueError("square must be +1 or -1")
        u = np.asarray(self.unitary, dtype=complex)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise ValueError("unitary part must be a square matrix")
        if not np.allclose(u @ u.conj().T, np.eye(u.shape[0]), atol=1e-12):
            raise ValueError("unitary part is not unitary")
        object.__setattr__(self, "unitary", u)

    def square_deviation(self) -> float:
        u = self.unitary
        return float(np.abs(u @ u.conj() - self.square * np.eye(u.shape[0])).max())

    def to_dict(self) -> dict:
        return {"kind": self.kind, "square": self.square,
                "unitary": {"real": self.unitary.real.tolist(), "imag": self.unitary.imag.tolist()}}

    @classmethod
    def from_dict(cls, data: dict, kind: str | None = None) -> "AntiUnitaryOp":
        u = data["unitary"]
        if isinstance(u, str):
            mat = _NAMED_UNITARIES[u]
        else:
            mat = np.asarray(u["real"], dtype=float) + 1j * np.asarray(u.get("imag", np.zeros_like(u["real"])), dtype=float)
        return cls(data.get("kind", kind), mat, int(data["square"]))


def time_reversal_spinful() -> AntiUnitaryOp:
    """``sigma_0 (x) i s_2``, squaring to -1."""
    return AntiUnitaryOp("T", np.kron(PAULI[0], 1j * PAULI[2]), -1)


_NAMED_UNITARIES = {
    "identity2": np.eye(2, dtype=complex),
    "identity4": np.eye(4, dtype=complex),
    "sigma1": PAULI[1],
    "sigma3": PAULI[3],
    "spin-flip": np.kron(PAULI[0], 1j * PAULI[2]),
}


@dataclass(frozen=True)
class SymmetryReport:
    kind: str
    passed: bool
    max_deviation: float
    square: int
    square_deviation: float

    def to_dict(self) -> dict:
        return {"kind": self.kind, "passed": self.passed, "max_deviation": self.max_deviation,
                "square": self.square, "square_deviation": self.square_deviation}


def check_antiunitary(model: BlochModel, op: AntiUnitaryOp, grid: int = 12,
                      tol: float = SYMMETRY_TOL) -> SymmetryReport:
    """Test ``U conj(H(-k)) U^dagger = +H(k)`` (T) or ``-H(k)`` (C) on a ``grid x grid`` mesh.

    The mesh is offset by a fraction of a cell so generic momenta are
    sampled along with the lattice directions.
    """
    if grid < 2:
        raise ValueError("grid must be >= 2")
    if op.unitary.shape[0] != model.bands:
        raise DimensionMismatch(f"operator acts on {op.unitary.shape[0]} bands, model has {model.bands}")
    f = (np.arange(grid) + 0.137) / grid
    f1, f2 = np.meshgrid(f, f, indexing="ij")
    k = model.lattice.cartesian(np.stack([f1, f2], axis=-1)).reshape(-1, 2)
    h = model.hamiltonian(k)
    hm = model.hamiltonian(-k)
    u = op.unitary
    image = u @ hm.conj() @ u.conj().T
    sign = 1 if op.kind == "T" else -1
    dev = float(np.abs(image - sign * h).max())
    return SymmetryReport(op.kind, dev < tol, dev, op.square, op.square_deviation())


def detect_az_class(model: BlochModel, candidate_T: AntiUnitaryOp | None = None,
                    candidate_C: AntiUnitaryOp | None = None, grid: int = 12) -> AZClass:
    """Altland-Zirnbauer class from the candidates that hold on the mesh.

    Chiral symmetry is counted as present exactly when both T and C hold,
    so class AIII (chiral symmetry alone) is never returned.

    Raises
    ------
    AmbiguousClass
        If a candidate holds but ``U conj(U)`` is not its claimed square.
    """
    signs = {}
    for kind, op in (("T", candidate_T), ("C", candidate_C)):
        signs[kind] = 0
        if op is None:
            continue
        if op.kind != kind:
            raise ValueError(f"candidate for {kind} has kind {op.kind}")
        rep = check_antiunitary(model, op, grid)
        if rep.passed:
            if rep.square_deviation > SYMMETRY_TOL:
                raise AmbiguousClass(f"{kind} holds but does not square to {op.square}")
            signs[kind] = op.square
    s = 1 if signs["T"] and signs["C"] else 0
    return az_from_signature(signs["T"], signs["C"], s)


_NAMED_LATTICES = {"haldane": HALDANE_LATTICE, "kane-mele": KANE_MELE_LATTICE}
_DEFAULT_LATTICE = {"pauli": "haldane", "kane-mele": "kane-mele"}


def load_model(source) -> DGammaModel:
    """Build a :class:`DGammaModel` from a JSON file path, JSON text or a dict.

    Schema::

        {"bands": 4, "gamma_basis": "kane-mele",
         "lattice": "kane-mele" | {"vectors": [[x, y], [x, y]]},   (optional)
         "d": {"1": [{"fn": "cos", "harmonic": [1, 0], "amp": 1.0}, ...], ...},
         "symmetries": {"T": {"unitary": "spin-flip" | {"real": .., "imag": ..},
                              "square": -1}}}                          (optional)
    """
    if isinstance(source, dict):
        data = source
    elif isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        data = json.loads(Path(source).read_text())
    else:
        data = json.loads(source)
    basis = data.get("gamma_basis")
    if basis not in _DEFAULT_LATTICE:
        raise ValueError(f"gamma_basis must be 'pauli' or 'kane-mele', got {basis!r}")
    lat = data.get("lattice", _DEFAULT_LATTICE[basis])
    if isinstance(lat, str):
        if lat not in _NAMED_LATTICES:
            raise ValueError(f"unknown lattice {lat!r}")
        lattice = _NAMED_LATTICES[lat]
    else:
        lattice = Lattice(np.asarray(lat["vectors"], dtype=float))
    syms = {k: AntiUnitaryOp.from_dict(v, kind=k) for k, v in data.get("symmetries", {}).items()}
    model = DGammaModel(basis, data["d"], lattice, name=data.get("name", "dgamma"), symmetries=syms)
    if "bands" in data and int(data["bands"]) != model.bands:
        raise ValueError(f"bands = {data['bands']} does not match the {basis} basis ({model.bands})")
    return model

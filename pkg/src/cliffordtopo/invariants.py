"""Lattice Chern and Z2 invariants, the Haldane phase diagram and table witnesses.

Orientation: the Brillouin zone is sampled at ``(i/N) G1 + (j/N) G2`` with
``(G1, G2)`` a right-handed reciprocal basis; plaquettes are traversed
``+G1, +G2, -G1, -G2``.  The link variable from ``k`` to ``k'`` is the
normalised overlap determinant ``det(V(k')^dagger V(k))`` of the occupied
frame ``V``, i.e. ``exp(i A . dk)`` for the Berry connection
``A = i <u|grad u>``, so the plaquette field is the Berry curvature flux and
degenerate occupied bands need no special treatment.  With this convention
the lower band of a two-band ``d . sigma`` model has Chern number equal to
the degree of ``k -> d(k)/|d(k)|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import eigh_batched
from .models import (PAULI, AntiUnitaryOp, BlochModel, check_antiunitary, haldane, kane_mele,
                     spin_sector, time_reversal_spinful)
from .tenfold import GroupTag, periodic_table

__all__ = [
    "GapClosure",
    "NonIntegral",
    "SymmetryViolated",
    "WitnessInsufficient",
    "NotPeriodic",
    "BerryField",
    "GAP_TOL",
    "INTEGRALITY_TOL",
    "occupied_frames",
    "berry_field",
    "chern_from_frames",
    "chern_number",
    "solid_angle_degree",
    "z2_invariant",
    "spin_chern_parity",
    "PhaseDiagram",
    "phase_diagram",
    "haldane_boundary",
    "TableEntryReport",
    "verify_table_entry",
]

GAP_TOL = 1e-8
INTEGRALITY_TOL = 1e-6


class GapClosure(ArithmeticError):
    pass


class NonIntegral(ArithmeticError):
    pass


class SymmetryViolated(ValueError):
    pass


class WitnessInsufficient(ValueError):
    pass


class NotPeriodic(ValueError):
    pass


def _occupied_index(bands: int, occupied) -> np.ndarray:
    if occupied is None:
        occupied = range(bands // 2)
    occ = np.array(sorted(set(int(i) for i in occupied)))
    if occ.size == 0 or occ.min() < 0 or occ.max() >= bands or occ.size == bands:
        raise ValueError(f"occupied set must be a proper nonempty subset of 0..{bands - 1}")
    return occ


def _gap(values: np.ndarray, occ: np.ndarray) -> np.ndarray:
    """Smallest distance between occupied and empty levels, per grid point."""
    mask = np.zeros(values.shape[-1], dtype=bool)
    mask[occ] = True
    diff = np.abs(values[..., mask][..., :, None] - values[..., ~mask][..., None, :])
    return diff.min(axis=(-1, -2))


def occupied_frames(model: BlochModel, n: int, occupied=None, rng: np.random.Generator | None = None):
    """Eigenvectors of the occupied bands on the ``n x n`` grid.

    Returns ``(frames, gap)`` with ``frames`` of shape ``(n, n, bands, m)``.
    If ``rng`` is given each eigenvector is multiplied by a random phase.
    """
    if not model.periodic:
        raise NotPeriodic(f"{model!r} is not periodic on its lattice; use the periodic gauge")
    occ = _occupied_index(model.bands, occupied)
    values, vectors = eigh_batched(model.on_grid(n))
    frames = vectors[..., occ]
    if rng is not None:
        frames = frames * np.exp(2j * np.pi * rng.random(frames.shape[:-2] + (1, frames.shape[-1])))
    return frames, _gap(values, occ)


def _link(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Normalised ``det(b^dagger a)``: parallel transport from frame ``a`` to frame ``b``."""
    det = np.linalg.det(b.conj().swapaxes(-1, -2) @ a)
    mag = np.abs(det)
    if np.any(mag < 1e-14):
        raise NonIntegral("vanishing overlap between neighbouring frames; refine the grid")
    return det / mag


def _principal(z: np.ndarray) -> np.ndarray:
    """Argument in ``(-pi, pi]``."""
    ang = np.angle(z)
    return np.where(ang <= -np.pi, ang + 2 * np.pi, ang)


@dataclass
class BerryField:
    n: int
    links: np.ndarray
    plaquettes: np.ndarray
    gap_min: float

    @property
    def total(self) -> float:
        return float(self.plaquettes.sum() / (2 * np.pi))

    def chern(self) -> int:
        c = self.total
        r = round(c)
        if abs(c - r) > INTEGRALITY_TOL:
            raise NonIntegral(f"plaquette sum / 2pi = {c:.8f}; increase the grid")
        return int(r)


def chern_from_frames(frames: np.ndarray) -> BerryField:
    """Lattice field strength from frames on a periodic grid, shape ``(..., n, n, bands, m)``."""
    n = frames.shape[-4]
    ax1, ax2 = frames.ndim - 4, frames.ndim - 3
    u1 = _link(frames, np.roll(frames, -1, axis=ax1))
    u2 = _link(frames, np.roll(frames, -1, axis=ax2))
    loop = u1 * np.roll(u2, -1, axis=ax1) * np.roll(u1, -1, axis=ax2).conj() * u2.conj()
    return BerryField(n, np.stack([u1, u2]), _principal(loop), float("nan"))


def berry_field(model: BlochModel, occupied=None, n: int = 24, rng=None) -> BerryField:
    if n < 8:
        raise ValueError("grid must be at least 8")
    frames, gap = occupied_frames(model, n, occupied, rng)
    gmin = float(gap.min())
    if gmin < GAP_TOL:
        raise GapClosure(f"gap {gmin:.3e} below {GAP_TOL:g} on the {n}x{n} grid")
    field_ = chern_from_frames(frames)
    field_.gap_min = gmin
    return field_


def chern_number(model: BlochModel, occupied=None, n: int = 24, rng=None) -> int:
    """Chern number of the occupied bands (default: lower half) on an ``n x n`` grid.

    Raises
    ------
    GapClosure
        If the occupied and empty levels come within ``1e-8`` at a grid point.
    NonIntegral
        If the plaquette sum is not within ``1e-6`` of an integer.
    """
    return berry_field(model, occupied, n, rng).chern()


def _d_vector(model: BlochModel, k: np.ndarray) -> np.ndarray:
    h = model.hamiltonian(k)
    return np.stack([np.einsum("...ij,ji->...", h, s).real / 2 for s in PAULI[1:]], axis=-1)


def solid_angle_degree(model: BlochModel, n: int = 96) -> int:
    """Degree of ``k -> d(k)/|d(k)|`` for a two-band model.

    Each grid square is cut into two triangles, each contributing the
    signed solid angle ``2 atan2(a . (b x c), 1 + a.b + b.c + c.a)`` of its
    image on the unit sphere.
    """
    if model.bands != 2:
        raise ValueError("solid-angle degree needs a two-band model")
    d = _d_vector(model, model.lattice.grid(n))
    norm = np.linalg.norm(d, axis=-1)
    if norm.min() < GAP_TOL:
        raise GapClosure(f"|d| = {norm.min():.3e} on the grid")
    d = d / norm[..., None]
    p00 = d
    p10 = np.roll(d, -1, axis=0)
    p01 = np.roll(d, -1, axis=1)
    p11 = np.roll(p10, -1, axis=1)

    def omega(a, b, c):
        num = np.einsum("...i,...i->...", a, np.cross(b, c))
        den = 1 + np.einsum("...i,...i->...", a, b) + np.einsum("...i,...i->...", b, c) \
            + np.einsum("...i,...i->...", c, a)
        return 2 * np.arctan2(num, den)

    total = (omega(p00, p10, p11) + omega(p00, p11, p01)).sum() / (4 * np.pi)
    r = round(total)
    if abs(total - r) > INTEGRALITY_TOL:
        raise NonIntegral(f"solid-angle sum / 4pi = {total:.8f}")
    return int(r)


def _kramers_frame(space: np.ndarray, theta) -> np.ndarray:
    """Orthonormal basis ``[v1, T v1, v2, T v2, ...]`` of a T-invariant space."""
    m = space.shape[1]
    cols: list[np.ndarray] = []
    for s in range(m):
        if len(cols) == m:
            break
        v = space[:, s].copy()
        for c in cols:
            v -= c * (c.conj() @ v)
        if np.linalg.norm(v) < 1e-6:
            continue
        v /= np.linalg.norm(v)
        w = theta(v)
        for c in cols + [v]:
            w -= c * (c.conj() @ w)
        w /= np.linalg.norm(w)
        cols += [v, w]
    if len(cols) != m:
        raise ArithmeticError("could not build a Kramers basis")
    return np.stack(cols, axis=1)


def z2_invariant(model: BlochModel, T: AntiUnitaryOp | None = None, n: int = 24, rng=None) -> int:
    """Z2 index of the lower half of the bands of a time-reversal invariant model.

    Works on the half zone ``0 <= j <= n/2``.  On the two time-reversal
    invariant lines ``j = 0`` and ``j = n/2`` the frame at ``-k`` is set to
    ``T`` applied to the frame at ``k`` and the frames at the four invariant
    momenta are Kramers bases.  Each plaquette carries the integer
    ``(F - sum of its link angles) / 2 pi``; the index is their sum mod 2.

    Raises
    ------
    SymmetryViolated
        If ``T`` fails the symmetry check or does not square to -1.
    GapClosure
        If the gap below ``1e-8`` at a grid point.
    """
    if T is None:
        T = getattr(model, "symmetries", {}).get("T") or time_reversal_spinful()
    if T.kind != "T" or T.square != -1 or T.square_deviation() > 1e-9:
        raise SymmetryViolated("Z2 index needs a time-reversal operator squaring to -1")
    report = check_antiunitary(model, T)
    if not report.passed:
        raise SymmetryViolated(f"time reversal fails, deviation {report.max_deviation:.3e}")
    if n < 8 or n % 2:
        raise ValueError("grid must be even and at least 8")
    frames, gap = occupied_frames(model, n, None, rng)
    gmin = float(gap.min())
    if gmin < GAP_TOL:
        raise GapClosure(f"gap {gmin:.3e} below {GAP_TOL:g} on the {n}x{n} grid")
    u = T.unitary

    def theta(v):
        return u @ v.conj()

    m = frames.shape[-1]
    pair = np.kron(np.eye(m // 2), np.array([[0, 1], [-1, 0]]))
    half = n // 2
    frames = frames[:, : half + 1].copy()
    for j in (0, half):
        for i in (0, half):
            frames[i, j] = _kramers_frame(frames[i, j], theta)
        for i in range(1, half):
            frames[n - i, j] = u @ frames[i, j].conj() @ pair
    u1 = _link(frames, np.roll(frames, -1, axis=0))
    u2 = _link(frames[:, :-1], frames[:, 1:])
    loop = u1[:, :-1] * np.roll(u2, -1, axis=0) * u1[:, 1:].conj() * u2.conj()
    a1, a2 = _principal(u1), _principal(u2)
    vort = (_principal(loop) - (a1[:, :-1] + np.roll(a2, -1, axis=0) - a1[:, 1:] - a2)) / (2 * np.pi)
    total = vort.sum()
    r = round(total)
    if abs(total - r) > INTEGRALITY_TOL:
        raise NonIntegral(f"vorticity sum {total:.8f} is not an integer")
    return int(r) % 2


def spin_chern_parity(model: BlochModel, n: int = 24) -> int:
    """Parity of the spin-up Chern number; meaningful when spin is conserved."""
    return chern_number(spin_sector(model, "up"), [0], n) % 2


def haldane_boundary(phi, m_over_t2) -> np.ndarray:
    """Sign of ``3 sqrt(3) |sin phi| - |M / t2|``: +1 inside the Chern lobes, -1 outside."""
    return np.sign(3 * math.sqrt(3) * np.abs(np.sin(phi)) - np.abs(m_over_t2))


@dataclass
class PhaseDiagram:
    phis: np.ndarray
    m_over_t2: np.ndarray
    chern: np.ndarray  # int, meaningful where ~closed
    gap_min: np.ndarray
    closed: np.ndarray  # True where GapClosure or NonIntegral
    params: dict = field(default_factory=dict)

    def rows(self):
        for a, phi in enumerate(self.phis):
            for b, m in enumerate(self.m_over_t2):
                c = None if self.closed[a, b] else int(self.chern[a, b])
                yield float(phi), float(m), c, float(self.gap_min[a, b])

    def to_csv(self) -> str:
        lines = ["phi,m_over_t2,chern,gap_min"]
        for phi, m, c, g in self.rows():
            lines.append(f"{phi:.10g},{m:.10g},{'' if c is None else c},{g:.6e}")
        return "\n".join(lines) + "\n"

    def boundary_mismatches(self) -> list[tuple[int, int]]:
        """Cells whose topology disagrees with the analytic boundary and are not next to it.

        A cell is excused when it is gapless or when any of its eight
        neighbours lies on the other side of ``|M/t2| = 3 sqrt(3) |sin phi|``.
        """
        phi, m = np.meshgrid(self.phis, self.m_over_t2, indexing="ij")
        side = haldane_boundary(phi, m)
        bad = []
        na, nb = side.shape
        for a in range(na):
            for b in range(nb):
                if self.closed[a, b]:
                    continue
                expect_nontrivial = side[a, b] > 0
                ok = (abs(self.chern[a, b]) == 1) if expect_nontrivial else (self.chern[a, b] == 0)
                if ok:
                    continue
                neigh = side[max(a - 1, 0): a + 2, max(b - 1, 0): b + 2]
                if np.any(neigh != side[a, b]) or side[a, b] == 0:
                    continue
                bad.append((a, b))
        return bad


def phase_diagram(t1: float = 1.0, t2: float = 0.2, phi_range=(-np.pi, np.pi), m_range=(-6.0, 6.0),
                  resolution: int = 41, n: int = 24) -> PhaseDiagram:
    """Chern number of the lower Haldane band on a ``resolution x resolution`` grid of ``(phi, M/t2)``.

    Gapless or non-integral cells are flagged in ``closed`` rather than raised.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    if n < 8:
        raise ValueError("grid must be at least 8")
    phis = np.linspace(*phi_range, resolution)
    ms = np.linspace(*m_range, resolution)
    kgrid = None
    hs = []
    for phi in phis:
        for m in ms:
            model = haldane(t1, t2, phi, m * t2)
            if kgrid is None:
                kgrid = model.lattice.grid(n)
            hs.append(model.hamiltonian(kgrid))
    values, vectors = eigh_batched(np.array(hs))
    gap = (values[..., 1] - values[..., 0]).reshape(len(hs), -1).min(axis=1)
    frames = vectors[..., :1]
    chern = np.zeros(len(hs), dtype=int)
    closed = gap < GAP_TOL
    overlap = np.abs(np.linalg.det(frames.conj().swapaxes(-1, -2) @ np.roll(frames, -1, axis=1)))
    overlap = np.minimum(overlap, np.abs(np.linalg.det(frames.conj().swapaxes(-1, -2) @ np.roll(frames, -1, axis=2))))
    closed |= overlap.reshape(len(hs), -1).min(axis=1) < 1e-14
    ok = ~closed
    if ok.any():
        total = chern_from_frames(frames[ok]).plaquettes.sum(axis=(-1, -2)) / (2 * np.pi)
        rounded = np.round(total)
        integral = np.abs(total - rounded) <= INTEGRALITY_TOL
        idx = np.nonzero(ok)[0]
        chern[idx] = rounded.astype(int)
        closed[idx[~integral]] = True
    shape = (resolution, resolution)
    return PhaseDiagram(phis, ms, chern.reshape(shape), gap.reshape(shape), closed.reshape(shape),
                        {"t1": t1, "t2": t2, "grid": n})


@dataclass
class TableEntryReport:
    label: str
    dimension: int
    values: list
    table_entry: GroupTag
    consistent: bool
    witnesses: list

    def to_dict(self) -> dict:
        return {"label": self.label, "dimension": self.dimension, "values": self.values,
                "table_entry": str(self.table_entry), "consistent": self.consistent,
                "witnesses": self.witnesses}


def default_witnesses(label: str) -> list[BlochModel]:
    if label == "A":
        return [haldane(1, 0.2, np.pi / 2, 0.0), haldane(1, 0.2, -np.pi / 2, 0.0), haldane(1, 0.2, np.pi / 2, 2.0)]
    return [kane_mele(1, 0.06, 0.0, 0.1), kane_mele(1, 0.06, 0.0, 0.4)]


def verify_table_entry(label: str, dimension: int = 2, witness_models=None, n: int = 24) -> TableEntryReport:
    """Check the ``d = 2`` entry of class A (Z) or AII (Z2) against witness models.

    Class A is consistent when the witnesses realise at least two distinct
    Chern numbers and the table says Z.  Class AII is consistent when both
    Z2 values occur and the table says Z2.  ``witness_models=None`` uses a
    built-in set of Haldane or Kane-Mele models.
    """
    if dimension != 2:
        raise ValueError("only d = 2 entries have numerical witnesses")
    if label not in ("A", "AII"):
        raise ValueError("only classes A and AII are supported")
    if witness_models is None:
        witness_models = default_witnesses(label)
    witness_models = list(witness_models)
    if len(witness_models) < 2:
        raise WitnessInsufficient(f"need at least two witness models, got {len(witness_models)}")
    entry = periodic_table().entry(label, dimension)
    found = []
    for model in witness_models:
        value = chern_number(model, None, n) if label == "A" else z2_invariant(model, None, n)
        found.append({"model": repr(model), "value": value})
    values = sorted({w["value"] for w in found})
    if label == "A":
        consistent = entry is GroupTag.Z and len(values) >= 2
    else:
        consistent = entry is GroupTag.Z2 and values == [0, 1]
    return TableEntryReport(label, dimension, values, entry, consistent, found)

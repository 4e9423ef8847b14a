"""Explicit integer matrix representations of real Clifford algebras.

Generators are signed permutation matrices built recursively from a few
2x2 and 4x4 seeds, so the defining relations can be checked in exact
integer arithmetic.  Every tensor factor used in the recursion is of real
type (``R(2)``) or is applied to a real-type algebra, which keeps the
constructed module irreducible (or, for the two-summand algebras, the direct
sum of the two inequivalent irreducibles).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford import CliffordSignature, classify_complex, classify_real
from .tenfold import GroupTag

__all__ = [
    "SizeGuardExceeded",
    "RankAmbiguous",
    "GeneratorSet",
    "GrothendieckRecord",
    "build_generators",
    "verify_relations",
    "volume_element",
    "irreducible_pieces",
    "even_subalgebra_generators",
    "commutant_dimension",
    "grothendieck",
    "complex_grothendieck",
    "restriction_quotient",
    "complex_restriction_quotient",
]

MAX_GENERATORS = 12


class SizeGuardExceeded(ValueError):
    pass


class RankAmbiguous(ArithmeticError):
    pass


@dataclass(frozen=True)
class GeneratorSet:
    """Matrices ``e_1..e_{p+q}``; the first ``p`` square to -1."""

    signature: CliffordSignature
    matrices: tuple

    @property
    def dimension(self) -> int:
        if self.matrices:
            return self.matrices[0].shape[0]
        return 1

    def __len__(self):
        return len(self.matrices)


# 2x2 seeds: J^2 = -1, X^2 = Z^2 = +1, all mutually anticommuting
_J = np.array([[0, -1], [1, 0]], dtype=np.int64)
_X = np.array([[0, 1], [1, 0]], dtype=np.int64)
_Z = np.array([[1, 0], [0, -1]], dtype=np.int64)
_I2 = np.eye(2, dtype=np.int64)

# left multiplication by quaternion units i, j on H = R^4 (basis 1, i, j, k)
_QI = np.array([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]], dtype=np.int64)
_QJ = np.array([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]], dtype=np.int64)


def _gens(p, q, neg, pos):
    return GeneratorSet(CliffordSignature(p, q), tuple(neg) + tuple(pos))


_SEEDS = {
    (0, 0): ((), ()),
    (1, 0): ((_J,), ()),
    (0, 1): ((), (_Z,)),
    (1, 1): ((_J,), (_X,)),
    (0, 2): ((), (_X, _Z)),
    (2, 0): ((_QI, _QJ), ()),
}


def build_generators(sig: CliffordSignature) -> GeneratorSet:
    """Integer generators of a faithful representation of ``Cl_{p,q}``.

    For simple algebras the representation is irreducible; for the
    two-summand algebras it is the direct sum of both irreducibles.

    Raises
    ------
    SizeGuardExceeded
        If ``p + q > 12``.
    """
    if sig.n > MAX_GENERATORS:
        raise SizeGuardExceeded(f"p+q = {sig.n} exceeds the limit of {MAX_GENERATORS}")
    neg, pos = _build(sig.p, sig.q)
    return _gens(sig.p, sig.q, neg, pos)


def _build(p, q):
    if (p, q) in _SEEDS:
        return _SEEDS[(p, q)]
    if p >= 1 and q >= 1:
        # Cl_{p,q} = Cl_{p-1,q-1} (x) Cl_{1,1}; old generators pick up e1 e2
        neg, pos = _build(p - 1, q - 1)
        w = _J @ _X
        return (
            tuple(np.kron(g, w) for g in neg) + (np.kron(np.eye(_size(neg, pos), dtype=np.int64), _J),),
            tuple(np.kron(g, w) for g in pos) + (np.kron(np.eye(_size(neg, pos), dtype=np.int64), _X),),
        )
    if p == 0:
        # Cl_{0,q} = Cl_{q-2,0} (x) Cl_{0,2}
        neg, pos = _build(q - 2, 0)
        w = _X @ _Z
        eye = np.eye(_size(neg, pos), dtype=np.int64)
        return (), tuple(np.kron(g, w) for g in neg) + (np.kron(eye, _X), np.kron(eye, _Z))
    if p <= 3:
        # Cl_{p,0} = Cl_{0,p-2} (x) Cl_{2,0}; the first factor is R or R+R here
        neg, pos = _build(0, p - 2)
        w = _QI @ _QJ
        eye = np.eye(_size(neg, pos), dtype=np.int64)
        return tuple(np.kron(g, w) for g in pos) + (np.kron(eye, _QI), np.kron(eye, _QJ)), ()
    # Cl_{p,0} = Cl_{p-4,4}: four positive generators f_i become f_i f1 f2 f3 f4
    neg, pos = _build(p - 4, 4)
    omega = pos[0] @ pos[1] @ pos[2] @ pos[3]
    return tuple(neg) + tuple(f @ omega for f in pos), ()


def _size(neg, pos):
    mats = tuple(neg) + tuple(pos)
    return mats[0].shape[0] if mats else 1


def verify_relations(gens: GeneratorSet) -> bool:
    """Exact check of ``e_i e_j + e_j e_i = -/+ 2 delta_ij``."""
    p = gens.signature.p
    mats = gens.matrices
    if len(mats) != gens.signature.n:
        return False
    if not mats:
        return True
    eye = np.eye(gens.dimension, dtype=mats[0].dtype)
    for i, a in enumerate(mats):
        for j in range(i, len(mats)):
            b = mats[j]
            anti = a @ b + b @ a
            if i == j:
                target = (-2 if i < p else 2) * eye
            else:
                target = 0 * eye
            if np.issubdtype(anti.dtype, np.integer):
                if not np.array_equal(anti, target):
                    return False
            elif not np.allclose(anti, target, rtol=0, atol=1e-12):
                return False
    return True


def volume_element(gens: GeneratorSet) -> np.ndarray:
    out = np.eye(gens.dimension, dtype=np.int64)
    for g in gens.matrices:
        out = out @ g
    return out


def irreducible_pieces(gens: GeneratorSet) -> list[GeneratorSet]:
    """Split a two-summand representation with the central idempotents.

    For ``q - p = 1, 5 (mod 8)`` the volume element ``w`` is central with
    ``w^2 = 1``; the images of ``(1 +/- w)/2`` carry the two inequivalent
    irreducibles.  Restricted generators are returned in an orthonormal
    basis of each image, hence as floats.  Simple algebras are returned
    unchanged.
    """
    if classify_real(gens.signature).summands == 1:
        return [gens]
    w = volume_element(gens).astype(float)
    vals, vecs = np.linalg.eigh((w + w.T) / 2)
    pieces = []
    for sign in (-1.0, 1.0):
        basis = vecs[:, np.isclose(vals, sign)]
        mats = tuple(basis.T @ g @ basis for g in gens.matrices)
        pieces.append(GeneratorSet(gens.signature, mats))
    return pieces


def even_subalgebra_generators(gens: GeneratorSet) -> GeneratorSet:
    """Generators ``e_1 e_j`` (``j >= 2``) of the even part of ``Cl_{p,q}``, ``p >= 1``.

    They satisfy the relations of ``Cl_{p-1,q}``, realising the isomorphism
    between ``Cl_{p-1,q}`` and the even subalgebra of ``Cl_{p,q}``.
    """
    p, q = gens.signature.p, gens.signature.q
    if p < 1:
        raise ValueError("need at least one negative generator")
    e1 = gens.matrices[0]
    return GeneratorSet(CliffordSignature(p - 1, q), tuple(e1 @ g for g in gens.matrices[1:]))


_DENSE_LIMIT = 32


def _nullity(system: np.ndarray, threshold: float) -> int:
    sv = np.linalg.svd(system, compute_uv=False)
    near = sv[(sv > 1e-12) & (sv < 1e-8)]
    if near.size:
        raise RankAmbiguous(f"singular values near threshold: {near}")
    return int(system.shape[1] - np.sum(sv > threshold))


def _cyclic_words(mats, n):
    """Orbit of ``e_0`` under the generators: matrices ``a_i`` with ``a_i e_0`` a basis, or None."""
    words = [np.eye(n)]
    basis = [words[0][:, 0]]
    frontier = [words[0]]
    while frontier and len(words) < n:
        nxt = []
        for a in frontier:
            for g in mats:
                b = g @ a
                v = b[:, 0]
                r = v - np.array(basis).T @ (np.array(basis) @ v)
                if np.linalg.norm(r) > 1e-6:
                    basis.append(r / np.linalg.norm(r))
                    words.append(b)
                    nxt.append(b)
        frontier = nxt
    return words if len(words) == n else None


def commutant_dimension(gens: GeneratorSet, threshold: float = 1e-10) -> int:
    """Real dimension of ``{X : X g = g X for every generator g}``.

    If the first basis vector ``v`` is cyclic (always true for an
    irreducible module), a commuting ``X`` is fixed by ``w = X v`` through
    ``X(a v) = a w``, so the unknowns are the ``n`` entries of ``w`` and
    the commutation conditions form an ``(m n^2) x n`` system.  Otherwise
    the full system on ``vec(X)`` is used, for ``n <= 32``.  The nullity is
    read from the singular values in both cases.

    Raises
    ------
    RankAmbiguous
        If a singular value falls in ``(1e-12, 1e-8)``.
    SizeGuardExceeded
        If ``v`` is not cyclic and ``n > 32``.
    """
    n = gens.dimension
    if not gens.matrices:
        return n * n
    mats = [g.astype(float) for g in gens.matrices]
    words = _cyclic_words(mats, n)
    if words is None:
        if n > _DENSE_LIMIT:
            raise SizeGuardExceeded(f"reducible module of size {n} is too large for the dense system")
        eye = np.eye(n)
        system = np.vstack([np.kron(g.T, eye) - np.kron(eye, g) for g in mats])
        return _nullity(system, threshold)
    # X(w) = [a_i w] M^{-1} with M = [a_i v]; column j of X(w) is linear in w
    m_inv = np.linalg.inv(np.array([a[:, 0] for a in words]).T)
    stacked = np.array(words)  # (n, n, n): word i, row, col
    # basis_maps[j] = X(e_j)
    basis_maps = np.einsum("irj,ik->jrk", stacked, m_inv)
    rows = []
    for g in mats:
        comm = np.einsum("rs,jsk->jrk", g, basis_maps) - np.einsum("jrs,sk->jrk", basis_maps, g)
        rows.append(comm.reshape(n, n * n).T)
    return _nullity(np.vstack(rows), threshold)


@dataclass(frozen=True)
class GrothendieckRecord:
    """Irreducible modules of ``Cl_k`` (real) or ``Cl_k (x) C`` (complex)."""

    k: int
    group: GroupTag
    irrep_dim: int
    irrep_count: int


def grothendieck(k: int) -> GrothendieckRecord:
    """Group of ungraded real ``Cl_k`` modules; ``k`` is read mod 8."""
    k %= 8
    alg = classify_real(CliffordSignature(k, 0))
    group = GroupTag.ZPLUSZ if alg.summands == 2 else GroupTag.Z
    return GrothendieckRecord(k, group, alg.irrep_real_dim, alg.summands)


def complex_grothendieck(k: int) -> GrothendieckRecord:
    """Complex analogue; ``irrep_dim`` counts complex dimensions."""
    k %= 2
    alg = classify_complex(k)
    group = GroupTag.ZPLUSZ if alg.summands == 2 else GroupTag.Z
    return GrothendieckRecord(k, group, alg.block, alg.summands)


def _quotient(current: GrothendieckRecord, previous: GrothendieckRecord) -> GroupTag:
    # graded modules of Cl_k are ungraded modules of Cl_{k-1}: a two-summand
    # Cl_{k-1} leaves a free quotient; a doubling irrep leaves Z2
    if previous.irrep_count == 2:
        return GroupTag.Z
    if current.irrep_dim == 2 * previous.irrep_dim:
        return GroupTag.Z2
    return GroupTag.ZERO


def restriction_quotient(k: int) -> GroupTag:
    """Quotient of graded ``Cl_k`` modules by restrictions from ``Cl_{k+1}``."""
    return _quotient(grothendieck(k), grothendieck(k - 1))


def complex_restriction_quotient(k: int) -> GroupTag:
    return _quotient(complex_grothendieck(k), complex_grothendieck(k - 1))

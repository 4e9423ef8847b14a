"""K-groups of a point, index types, symmetric spaces and the periodic table."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .clifford import CliffordSignature, star_index

__all__ = [
    "GroupTag",
    "IndexForm",
    "IndexType",
    "SymmetricSpace",
    "AZClass",
    "PeriodicRow",
    "PeriodicTable",
    "UnknownLabel",
    "REAL_LABELS",
    "COMPLEX_LABELS",
    "ko_group",
    "k_group",
    "index_type",
    "index_table",
    "ko_table",
    "symmetric_space",
    "az_signature",
    "periodic_table",
    "periodic_table_from_pi0",
]


class GroupTag(enum.Enum):
    ZERO = "0"
    Z = "Z"
    Z2 = "Z2"
    ZPLUSZ = "Z+Z"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, text: str) -> "GroupTag":
        return cls(text)


_KO = (GroupTag.Z, GroupTag.Z2, GroupTag.Z2, GroupTag.ZERO,
       GroupTag.Z, GroupTag.ZERO, GroupTag.ZERO, GroupTag.ZERO)


def ko_group(k: int) -> GroupTag:
    """``KO^{-k}(pt)``, eight-periodic in ``k``."""
    return _KO[k % 8]


def k_group(k: int) -> GroupTag:
    """``K^{-k}(pt)``: Z in even degree, 0 in odd."""
    return GroupTag.Z if k % 2 == 0 else GroupTag.ZERO


def _check_family(family: str) -> str:
    family = family.upper()
    if family not in ("R", "C"):
        raise ValueError(f"family must be 'R' or 'C', got {family!r}")
    return family


class IndexForm(enum.Enum):
    AHAT_INTEGER = "AhatInteger"
    HALF_AHAT = "HalfAhat"
    MOD_TWO_COMPLEX_DIM = "ModTwoComplexDim"
    MOD_TWO_QUATERNION_DIM = "ModTwoQuaternionDim"
    TODD_INTEGER = "ToddInteger"
    ZERO = "Zero"

    @property
    def value_group(self) -> GroupTag:
        if self in (IndexForm.MOD_TWO_COMPLEX_DIM, IndexForm.MOD_TWO_QUATERNION_DIM):
            return GroupTag.Z2
        if self is IndexForm.ZERO:
            return GroupTag.ZERO
        return GroupTag.Z

    @property
    def symbol(self) -> str:
        return _INDEX_SYMBOLS[self]


_INDEX_SYMBOLS = {
    IndexForm.AHAT_INTEGER: "A(M)",
    IndexForm.HALF_AHAT: "A(M)/2",
    IndexForm.MOD_TWO_COMPLEX_DIM: "dimC H",
    IndexForm.MOD_TWO_QUATERNION_DIM: "dimH H",
    IndexForm.TODD_INTEGER: "Td(M)",
    IndexForm.ZERO: "0",
}

_REAL_INDEX = {
    0: IndexForm.AHAT_INTEGER,
    1: IndexForm.MOD_TWO_COMPLEX_DIM,
    2: IndexForm.MOD_TWO_QUATERNION_DIM,
    4: IndexForm.HALF_AHAT,
}


@dataclass(frozen=True)
class IndexType:
    k: int
    family: str
    form: IndexForm

    @property
    def value_group(self) -> GroupTag:
        return self.form.value_group


def index_type(k: int, family: str = "R") -> IndexType:
    """Which quantity computes the index of a ``Cl_k``-linear Dirac operator.

    Degrees with no nontrivial index (``k = 3, 5, 6, 7`` real, odd complex)
    map to ``IndexForm.ZERO``.
    """
    family = _check_family(family)
    if family == "R":
        k %= 8
        return IndexType(k, family, _REAL_INDEX.get(k, IndexForm.ZERO))
    k %= 2
    return IndexType(k, family, IndexForm.TODD_INTEGER if k == 0 else IndexForm.ZERO)


def index_table(family: str = "R") -> list[list[IndexType]]:
    """Row ``s``, column ``n`` holds the index type of degree ``s - n``."""
    family = _check_family(family)
    size = 8 if family == "R" else 2
    return [[index_type(star_index(s, n), family) for n in range(size)] for s in range(size)]


def ko_table(family: str = "R") -> list[list[GroupTag]]:
    """Row ``s``, column ``n``: ``KO^{-(s-n)}(pt)`` or ``K^{-(s-n)}(pt)``."""
    family = _check_family(family)
    if family == "R":
        return [[ko_group(s - n) for n in range(8)] for s in range(8)]
    return [[k_group(s - n) for n in range(2)] for s in range(2)]


REAL_LABELS = ("AI", "BDI", "D", "DIII", "AII", "CII", "C", "CI")
COMPLEX_LABELS = ("A", "AIII")


@dataclass(frozen=True)
class SymmetricSpace:
    family: str
    index: int
    coset: str
    pi0: GroupTag
    cartan_label: str
    extension: tuple

    @property
    def name(self) -> str:
        return f"{self.family}_{self.index}"


# (coset, pi0, extension source, extension target)
_REAL_SPACES = (
    ("O(2n)/O(n)×O(n)", GroupTag.Z, (0, 2), (1, 2)),
    ("O(n)×O(n)/O(n)", GroupTag.Z2, (1, 2), (1, 3)),
    ("O(2n)/U(n)", GroupTag.Z2, (0, 2), (0, 3)),
    ("U(2n)/Sp(n)", GroupTag.ZERO, (0, 3), (0, 4)),
    ("Sp(2n)/Sp(n)×Sp(n)", GroupTag.Z, (2, 0), (3, 0)),
    ("Sp(n)×Sp(n)/Sp(n)", GroupTag.ZERO, (3, 0), (3, 1)),
    ("Sp(n)/U(n)", GroupTag.ZERO, (2, 0), (2, 1)),
    ("U(n)/O(n)", GroupTag.ZERO, (2, 1), (2, 2)),
)
_COMPLEX_SPACES = (
    ("U(2n)/U(n)×U(n)", GroupTag.Z, 0, 1),
    ("U(n)×U(n)/U(n)", GroupTag.ZERO, 1, 2),
)


def symmetric_space(k: int, family: str = "R") -> SymmetricSpace:
    """Classifying space ``R_k`` or ``C_k`` with its Cartan label.

    ``extension`` is the Clifford algebra extension whose space of
    compatible new generators is the symmetric space: a pair of
    :class:`CliffordSignature` (real) or of complex indices.
    """
    family = _check_family(family)
    if family == "R":
        k %= 8
        coset, pi0, src, dst = _REAL_SPACES[k]
        ext = (CliffordSignature(*src), CliffordSignature(*dst))
        return SymmetricSpace("R", k, coset, pi0, REAL_LABELS[k], ext)
    k %= 2
    coset, pi0, src, dst = _COMPLEX_SPACES[k]
    return SymmetricSpace("C", k, coset, pi0, COMPLEX_LABELS[k], (src, dst))


class UnknownLabel(KeyError):
    pass


@dataclass(frozen=True)
class AZClass:
    """Altland-Zirnbauer class: squares of T and C (0 = absent), chiral S."""

    label: str
    T: int
    C: int
    S: int


_AZ = {
    "A": (0, 0, 0),
    "AIII": (0, 0, 1),
    "AI": (1, 0, 0),
    "BDI": (1, 1, 1),
    "D": (0, 1, 0),
    "DIII": (-1, 1, 1),
    "AII": (-1, 0, 0),
    "CII": (-1, -1, 1),
    "C": (0, -1, 0),
    "CI": (1, -1, 1),
}


def az_signature(label: str) -> AZClass:
    try:
        return AZClass(label, *_AZ[label])
    except KeyError:
        raise UnknownLabel(label) from None


def az_from_signature(T: int, C: int, S: int) -> AZClass:
    """Inverse of :func:`az_signature`."""
    for label, sig in _AZ.items():
        if sig == (T, C, S):
            return AZClass(label, *sig)
    raise UnknownLabel(f"no class with T={T}, C={C}, S={S}")


@dataclass(frozen=True)
class PeriodicRow:
    az: AZClass
    groups: tuple

    def to_dict(self) -> dict:
        return {
            "label": self.az.label,
            "T": self.az.T,
            "C": self.az.C,
            "S": self.az.S,
            "groups": [str(g) for g in self.groups],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PeriodicRow":
        az = AZClass(data["label"], data["T"], data["C"], data["S"])
        return cls(az, tuple(GroupTag.parse(g) for g in data["groups"]))


@dataclass(frozen=True)
class PeriodicTable:
    """Complex rows A, AIII first, then the eight real rows; columns d = 0..7."""

    rows: tuple

    def row(self, label: str) -> PeriodicRow:
        for r in self.rows:
            if r.az.label == label:
                return r
        raise UnknownLabel(label)

    def entry(self, label: str, dimension: int) -> GroupTag:
        return self.row(label).groups[dimension % 8]

    def to_payload(self) -> dict:
        return {"rows": [r.to_dict() for r in self.rows]}

    @classmethod
    def from_payload(cls, payload: dict) -> "PeriodicTable":
        return cls(tuple(PeriodicRow.from_dict(r) for r in payload["rows"]))


def periodic_table() -> PeriodicTable:
    """Row for space index ``s`` and dimension ``n`` holds the group of degree ``s - n``."""
    rows = [PeriodicRow(az_signature(lab), tuple(k_group(s - n) for n in range(8)))
            for s, lab in enumerate(COMPLEX_LABELS)]
    rows += [PeriodicRow(az_signature(lab), tuple(ko_group(s - n) for n in range(8)))
             for s, lab in enumerate(REAL_LABELS)]
    return PeriodicTable(tuple(rows))


def periodic_table_from_pi0() -> PeriodicTable:
    """Same table assembled from connected components of the symmetric spaces."""
    rows = []
    for family, labels, period in (("C", COMPLEX_LABELS, 2), ("R", REAL_LABELS, 8)):
        for s, lab in enumerate(labels):
            groups = tuple(symmetric_space((s - n) % period, family).pi0 for n in range(8))
            rows.append(PeriodicRow(az_signature(lab), groups))
    return PeriodicTable(tuple(rows))

"""Structure theorem for real and complex Clifford algebras.

Signatures follow the convention ``Cl_{p,q}``: ``p`` generators square to -1
and ``q`` generators square to +1.  Every algebra is classified as a matrix
algebra ``K(m)`` or ``K(m) + K(m)`` over ``K`` in {R, C, H}.

Two independent routes are provided: :func:`classify_real` reads off the
``q - p (mod 8)`` rule directly, while :func:`classify_real_recursive` only
uses periodicity, tensor-product isomorphisms and five small base cases.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

__all__ = [
    "RING_DIM",
    "CliffordSignature",
    "MatrixAlgebra",
    "IsomorphismReport",
    "classify_real",
    "classify_real_recursive",
    "classify_complex",
    "tensor",
    "chessboard",
    "star_index",
    "verify_isomorphisms",
]

RING_DIM = {"R": 1, "C": 2, "H": 4}


@dataclass(frozen=True)
class CliffordSignature:
    """``p`` negative and ``q`` positive generators."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError(f"signature counts must be non-negative, got ({self.p}, {self.q})")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def dimension(self) -> int:
        """Real dimension of the algebra."""
        return 2 ** self.n


@dataclass(frozen=True, order=True)
class MatrixAlgebra:
    """``summands`` copies of the ``block x block`` matrices over ``ring``."""

    ring: str
    block: int
    summands: int = 1

    def __post_init__(self):
        if self.ring not in RING_DIM:
            raise ValueError(f"unknown division ring {self.ring!r}")
        if self.block < 1:
            raise ValueError("block size must be positive")
        if self.summands not in (1, 2):
            raise ValueError("only simple or two-summand algebras occur")

    @property
    def real_dimension(self) -> int:
        return self.summands * self.block ** 2 * RING_DIM[self.ring]

    @property
    def irrep_real_dim(self) -> int:
        """Real dimension of one irreducible module."""
        return self.block * RING_DIM[self.ring]

    def __str__(self) -> str:
        one = self.ring if self.block == 1 else f"{self.ring}({self.block})"
        return "+".join([one] * self.summands)

    @classmethod
    def parse(cls, text: str) -> "MatrixAlgebra":
        """Inverse of ``str``: ``"H(2)+H(2)"`` -> ``MatrixAlgebra("H", 2, 2)``."""
        parts = text.replace(" ", "").split("+")
        if len(parts) not in (1, 2) or len(set(parts)) != 1:
            raise ValueError(f"cannot parse algebra {text!r}")
        m = re.fullmatch(r"([RCH])(?:\((\d+)\))?", parts[0])
        if m is None:
            raise ValueError(f"cannot parse algebra {text!r}")
        return cls(m.group(1), int(m.group(2) or 1), len(parts))


def classify_real(sig: CliffordSignature) -> MatrixAlgebra:
    """Classify ``Cl_{p,q}`` by the residue of ``q - p`` modulo 8."""
    n = sig.n
    r = (sig.q - sig.p) % 8
    if r in (0, 2):
        return MatrixAlgebra("R", 2 ** (n // 2))
    if r in (3, 7):
        return MatrixAlgebra("C", 2 ** ((n - 1) // 2))
    if r in (4, 6):
        return MatrixAlgebra("H", 2 ** ((n - 2) // 2))
    if r == 1:
        return MatrixAlgebra("R", 2 ** ((n - 1) // 2), 2)
    return MatrixAlgebra("H", 2 ** ((n - 3) // 2), 2)


# K (x)_R K' for division rings, as (ring, block, summands)
_RING_PRODUCT = {
    ("R", "R"): ("R", 1, 1),
    ("R", "C"): ("C", 1, 1),
    ("R", "H"): ("H", 1, 1),
    ("C", "C"): ("C", 1, 2),
    ("C", "H"): ("C", 2, 1),
    ("H", "H"): ("R", 4, 1),
}


def tensor(a: MatrixAlgebra, b: MatrixAlgebra) -> MatrixAlgebra:
    """Real tensor product of two descriptors.

    Raises ``ValueError`` if the product has more than two simple summands,
    which never happens for Clifford algebras.
    """
    key = (a.ring, b.ring) if (a.ring, b.ring) in _RING_PRODUCT else (b.ring, a.ring)
    ring, block, summands = _RING_PRODUCT[key]
    summands *= a.summands * b.summands
    if summands > 2:
        raise ValueError(f"{a} (x) {b} has {summands} simple summands")
    return MatrixAlgebra(ring, block * a.block * b.block, summands)


_BASE_CASES = {
    (0, 0): MatrixAlgebra("R", 1),
    (1, 0): MatrixAlgebra("C", 1),
    (0, 1): MatrixAlgebra("R", 1, 2),
    (1, 1): MatrixAlgebra("R", 2),
    (2, 0): MatrixAlgebra("H", 1),
    (0, 2): MatrixAlgebra("R", 2),
}
_R16 = MatrixAlgebra("R", 16)


def classify_real_recursive(sig: CliffordSignature) -> MatrixAlgebra:
    """Classify ``Cl_{p,q}`` using only isomorphisms and base cases.

    The reduction is deterministic: strip multiples of 8 from either count
    (each contributing a factor ``R(16)``), then strip ``(1, 1)`` pairs
    (factor ``R(2)``), then apply ``Cl_{p+2,0} = Cl_{0,p} (x) Cl_{2,0}`` or
    ``Cl_{0,q+2} = Cl_{q,0} (x) Cl_{0,2}`` until a base case remains.
    """
    return _reduce(sig.p, sig.q)


def _reduce(p: int, q: int) -> MatrixAlgebra:
    if p >= 8:
        return tensor(_reduce(p - 8, q), _R16)
    if q >= 8:
        return tensor(_reduce(p, q - 8), _R16)
    if (p, q) in _BASE_CASES:
        return _BASE_CASES[(p, q)]
    if p >= 1 and q >= 1:
        return tensor(_reduce(p - 1, q - 1), _BASE_CASES[(1, 1)])
    if q == 0:
        return tensor(_reduce(0, p - 2), _BASE_CASES[(2, 0)])
    return tensor(_reduce(q - 2, 0), _BASE_CASES[(0, 2)])


def classify_complex(n: int) -> MatrixAlgebra:
    """``Cl_n (x) C``: ``C(2^{n/2})`` for even ``n``, two copies otherwise."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return MatrixAlgebra("C", 2 ** (n // 2), 2 if n % 2 else 1)


def chessboard(rows: int = 8, cols: int = 8) -> list[list[MatrixAlgebra]]:
    """Table of ``Cl_{n,s}``: row ``s`` positive generators, column ``n`` negative."""
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be >= 1")
    return [[classify_real(CliffordSignature(n, s)) for n in range(cols)] for s in range(rows)]


def star_index(s: int, n: int) -> int:
    """Index ``k`` with ``Cl_{n,s}`` Morita-equivalent to ``Cl_{0,k}``."""
    if s < 0 or n < 0:
        raise ValueError("s and n must be non-negative")
    return (s - n) % 8


@dataclass
class IsomorphismReport:
    limit: int
    checked: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_isomorphisms(limit: int = 12) -> IsomorphismReport:
    """Check the standard Clifford isomorphisms on every ``0 <= p, q <= limit``.

    Rules checked (descriptor level)::

        Cl_{p,q}    = Cl_{p-4,q+4}              (p >= 4)
        Cl_{p,q+1}  = Cl_{q,p+1}
        Cl_{p,q+2}  = Cl_{q,p} (x) Cl_{0,2}
        Cl_{p+2,q}  = Cl_{q,p} (x) Cl_{2,0}
        Cl_{p+1,q+1} = Cl_{p,q} (x) Cl_{1,1}
        Cl_{p+8,q}  = Cl_{p,q} (x) Cl_{8,0},  Cl_{p,q+8} = Cl_{p,q} (x) Cl_{0,8}
    """
    if limit < 8:
        raise ValueError("limit must be >= 8")
    report = IsomorphismReport(limit)

    def cls(p, q):
        return classify_real(CliffordSignature(p, q))

    def check(rule, lhs, rhs, left, right):
        report.checked += 1
        if left != right:
            report.violations.append(
                {"rule": rule, "lhs": lhs, "rhs": rhs, "lhs_value": str(left), "rhs_value": str(right)}
            )

    cl02, cl20, cl11 = cls(0, 2), cls(2, 0), cls(1, 1)
    cl80, cl08 = cls(8, 0), cls(0, 8)
    for p in range(limit + 1):
        for q in range(limit + 1):
            if p >= 4:
                check("p-4,q+4", (p, q), (p - 4, q + 4), cls(p, q), cls(p - 4, q + 4))
            check("swap", (p, q + 1), (q, p + 1), cls(p, q + 1), cls(q, p + 1))
            check("tensor-02", (p, q + 2), (q, p), cls(p, q + 2), tensor(cls(q, p), cl02))
            check("tensor-20", (p + 2, q), (q, p), cls(p + 2, q), tensor(cls(q, p), cl20))
            check("tensor-11", (p + 1, q + 1), (p, q), cls(p + 1, q + 1), tensor(cls(p, q), cl11))
            check("period-p", (p + 8, q), (p, q), cls(p + 8, q), tensor(cls(p, q), cl80))
            check("period-q", (p, q + 8), (p, q), cls(p, q + 8), tensor(cls(p, q), cl08))
    return report

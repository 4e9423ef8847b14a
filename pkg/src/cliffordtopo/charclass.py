"""Multiplicative sequences in Pontryagin and Chern classes, in exact rationals.

A multiplicative sequence is fixed by a power series ``Q`` in one formal
root.  The product of ``Q`` over ``r`` roots is symmetric; its weight-``w``
part is written in the monomial symmetric basis (the coefficient of
``m_lambda`` is the product of the ``Q`` coefficients indexed by the parts of
``lambda``) and then converted to the elementary symmetric basis by Gaussian
elimination over :class:`fractions.Fraction`.  The elementary symmetric
polynomials are the characteristic classes.

For the A-hat genus the roots are ``y_i = x_i^2`` (weight one, degree 4), so
``e_i(y)`` is the Pontryagin class ``p_i``.  For the Todd class the roots are
the Chern roots ``x_i`` (degree 2) and ``e_i(x) = c_i``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .tenfold import index_type, IndexForm

__all__ = [
    "CutoffTooLarge",
    "DegreeMismatch",
    "NonIntegralIndex",
    "MAX_CUTOFF",
    "GradedPolynomial",
    "CharacteristicNumbers",
    "partitions",
    "invert_series",
    "multiplicative_sequence",
    "ahat_root_series",
    "todd_root_series",
    "ahat_series",
    "todd_series",
    "evaluate_genus",
    "integrality_check",
    "parse_monomial",
]

MAX_CUTOFF = 24
UNIT_DEGREE = {"p": 4, "c": 2}


class CutoffTooLarge(ValueError):
    pass


class DegreeMismatch(ValueError):
    pass


class NonIntegralIndex(ArithmeticError):
    pass


def partitions(n: int, largest: int | None = None) -> list[tuple]:
    """Partitions of ``n`` as non-increasing tuples, parts at most ``largest``."""
    if largest is None:
        largest = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return out


def _partition_str(var: str, part: tuple) -> str:
    if not part:
        return "1"
    counts: dict[int, int] = {}
    for i in part:
        counts[i] = counts.get(i, 0) + 1
    factors = []
    for i in sorted(counts):
        e = counts[i]
        factors.append(f"{var}{i}" if e == 1 else f"{var}{i}^{e}")
    return "*".join(factors)


_FACTOR = re.compile(r"([pc])(\d+)(?:\^(\d+))?")


def parse_monomial(text: str) -> tuple[str | None, tuple]:
    """``"p1^2*p2"`` -> ``("p", (2, 1, 1))``; ``"1"`` -> ``(None, ())``."""
    text = text.replace(" ", "")
    if text == "1":
        return None, ()
    var = None
    parts: list[int] = []
    for factor in text.split("*"):
        m = _FACTOR.fullmatch(factor)
        if m is None:
            raise ValueError(f"cannot parse monomial {text!r}")
        if var is not None and m.group(1) != var:
            raise ValueError(f"mixed variables in {text!r}")
        var = m.group(1)
        idx = int(m.group(2))
        if idx < 1:
            raise ValueError(f"class index must be positive in {text!r}")
        parts += [idx] * int(m.group(3) or 1)
    return var, tuple(sorted(parts, reverse=True))


@dataclass
class GradedPolynomial:
    """Polynomial in ``p_i`` (degree ``4i``) or ``c_i`` (degree ``2i``).

    ``terms`` maps a partition (the multiset of class indices of a
    monomial, non-increasing) to its coefficient.  Terms of degree above
    ``cutoff`` are dropped.
    """

    var: str
    cutoff: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.var not in UNIT_DEGREE:
            raise ValueError(f"variable must be 'p' or 'c', got {self.var!r}")
        clean = {}
        for part, coeff in self.terms.items():
            part = tuple(sorted(part, reverse=True))
            coeff = Fraction(coeff)
            if coeff != 0 and self.degree_of(part) <= self.cutoff:
                clean[part] = clean.get(part, 0) + coeff
        self.terms = {k: v for k, v in clean.items() if v != 0}

    @property
    def unit(self) -> int:
        return UNIT_DEGREE[self.var]

    def degree_of(self, part: tuple) -> int:
        return self.unit * sum(part)

    def coefficient(self, monomial) -> Fraction:
        """Coefficient of a monomial given as a partition or a string like ``"p1^2"``."""
        if isinstance(monomial, str):
            var, monomial = parse_monomial(monomial)
            if var is not None and var != self.var:
                raise ValueError(f"monomial uses {var}, polynomial uses {self.var}")
        return self.terms.get(tuple(sorted(monomial, reverse=True)), Fraction(0))

    def homogeneous(self, degree: int) -> "GradedPolynomial":
        return GradedPolynomial(
            self.var, self.cutoff, {k: v for k, v in self.terms.items() if self.degree_of(k) == degree}
        )

    def __add__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        self._check(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return GradedPolynomial(self.var, min(self.cutoff, other.cutoff), terms)

    def __mul__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        self._check(other)
        cutoff = min(self.cutoff, other.cutoff)
        terms: dict = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                if self.degree_of(a) + self.degree_of(b) > cutoff:
                    continue
                key = tuple(sorted(a + b, reverse=True))
                terms[key] = terms.get(key, 0) + x * y
        return GradedPolynomial(self.var, cutoff, terms)

    def _check(self, other):
        if other.var != self.var:
            raise ValueError("cannot combine polynomials in different classes")

    def __eq__(self, other):
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        return self.var == other.var and self.terms == other.terms

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        """Terms ordered by degree, powers of the lowest class first."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0][::-1]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for part, coeff in self.sorted_terms():
            sign = "-" if coeff < 0 else "+"
            mag = abs(coeff)
            if not part:
                body = str(mag)
            elif mag == 1:
                body = _partition_str(self.var, part)
            else:
                body = f"{mag}*{_partition_str(self.var, part)}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def to_payload(self) -> dict:
        return {
            "variable": self.var,
            "cutoff": self.cutoff,
            "terms": [
                {"monomial": _partition_str(self.var, part), "degree": self.degree_of(part), "coefficient": str(c)}
                for part, c in self.sorted_terms()
            ],
        }


def invert_series(coeffs: list[Fraction], order: int) -> list[Fraction]:
    """Coefficients of ``1/f`` through ``order`` given those of ``f`` (``f_0 != 0``)."""
    if coeffs[0] == 0:
        raise ZeroDivisionError("constant term must be nonzero")
    coeffs = list(coeffs) + [Fraction(0)] * (order + 1 - len(coeffs))
    out = [Fraction(1) / coeffs[0]]
    for n in range(1, order + 1):
        s = sum(coeffs[k] * out[n - k] for k in range(1, n + 1))
        out.append(-s / coeffs[0])
    return out


def ahat_root_series(order: int) -> list[Fraction]:
    """``(x/2)/sinh(x/2)`` as a series in ``y = x^2``."""
    sinhc = [Fraction(1, 4 ** k * math.factorial(2 * k + 1)) for k in range(order + 1)]
    return invert_series(sinhc, order)


def todd_root_series(order: int) -> list[Fraction]:
    """``x/(1 - e^{-x})`` as a series in ``x``."""
    base = [Fraction((-1) ** k, math.factorial(k + 1)) for k in range(order + 1)]
    return invert_series(base, order)


@lru_cache(maxsize=None)
def _zero_one_count(rows: tuple, cols: tuple) -> int:
    """Number of 0/1 matrices with the given row and column sums."""
    if not rows:
        return 1 if all(c == 0 for c in cols) else 0
    first, rest = rows[0], rows[1:]
    total = 0
    # choose which columns get a 1 in the first row
    n = len(cols)

    def choose(start, need, remaining):
        nonlocal total
        if need == 0:
            total += _zero_one_count(rest, tuple(sorted(remaining, reverse=True)))
            return
        for j in range(start, n):
            if remaining[j] > 0 and n - j >= need:
                remaining[j] -= 1
                choose(j + 1, need - 1, remaining)
                remaining[j] += 1

    choose(0, first, list(cols))
    return total


def _solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(rhs)
    a = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ArithmeticError("singular transition matrix")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def multiplicative_sequence(root_coeffs: list[Fraction], var: str, cutoff_degree: int,
                            roots: int | None = None) -> GradedPolynomial:
    """Expand ``prod_i Q(t_i)`` over ``roots`` formal roots in elementary symmetric classes.

    ``root_coeffs[k]`` is the coefficient of ``t^k``; each root has degree
    ``UNIT_DEGREE[var]``.  By default ``roots`` is one more than the top
    weight, which is enough for the result to be stable.
    """
    if var not in UNIT_DEGREE:
        raise ValueError(f"variable must be 'p' or 'c', got {var!r}")
    if cutoff_degree < 0:
        raise ValueError("cutoff_degree must be non-negative")
    top = cutoff_degree // UNIT_DEGREE[var]
    if roots is None:
        roots = top + 1
    coeffs = list(root_coeffs) + [Fraction(0)] * (top + 1 - len(root_coeffs))
    terms: dict = {}
    for w in range(top + 1):
        lambdas = [lam for lam in partitions(w) if len(lam) <= roots]
        mus = [mu for mu in partitions(w) if not mu or mu[0] <= roots]
        target = [math.prod((coeffs[i] for i in lam), start=Fraction(1)) for lam in lambdas]
        trans = [[Fraction(_zero_one_count(mu, lam)) for mu in mus] for lam in lambdas]
        for mu, b in zip(mus, _solve_exact(trans, target)):
            if b != 0:
                terms[mu] = b
    return GradedPolynomial(var, cutoff_degree, terms)


def _check_cutoff(cutoff_degree: int):
    if cutoff_degree > MAX_CUTOFF:
        raise CutoffTooLarge(f"cutoff {cutoff_degree} exceeds {MAX_CUTOFF}")


def ahat_series(cutoff_degree: int, roots: int | None = None) -> GradedPolynomial:
    """A-hat genus in Pontryagin classes through total degree ``cutoff_degree``.

    >>> str(ahat_series(8))
    '1 - 1/24*p1 + 7/5760*p1^2 - 1/1440*p2'
    """
    _check_cutoff(cutoff_degree)
    return multiplicative_sequence(ahat_root_series(cutoff_degree // 4), "p", cutoff_degree, roots)


def todd_series(cutoff_degree: int, roots: int | None = None) -> GradedPolynomial:
    """Todd class in Chern classes through total degree ``cutoff_degree``."""
    _check_cutoff(cutoff_degree)
    return multiplicative_sequence(todd_root_series(cutoff_degree // 2), "c", cutoff_degree, roots)


@dataclass
class CharacteristicNumbers:
    """Characteristic numbers of a closed manifold of real dimension ``dimension``.

    ``values`` maps partitions (or monomial strings) to the value of that
    monomial on the fundamental class.  Numbers are used as given; no sign
    convention is imposed on the Pontryagin classes.
    """

    dimension: int
    var: str
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.var not in UNIT_DEGREE:
            raise ValueError(f"variable must be 'p' or 'c', got {self.var!r}")
        clean = {}
        for key, val in self.values.items():
            if isinstance(key, str):
                var, part = parse_monomial(key)
                if var is not None and var != self.var:
                    raise DegreeMismatch(f"monomial {key!r} is not in {self.var}")
            else:
                part = tuple(sorted(key, reverse=True))
            if UNIT_DEGREE[self.var] * sum(part) != self.dimension:
                raise DegreeMismatch(
                    f"monomial {_partition_str(self.var, part)} has degree "
                    f"{UNIT_DEGREE[self.var] * sum(part)}, manifold dimension is {self.dimension}"
                )
            clean[part] = Fraction(val)
        self.values = clean

    @classmethod
    def from_mapping(cls, dimension: int, mapping: dict) -> "CharacteristicNumbers":
        """Build from ``{"p1": "-48"}``-style strings; the variable is read from the keys."""
        kinds = {parse_monomial(k)[0] for k in mapping} - {None}
        if len(kinds) != 1:
            raise ValueError("characteristic numbers must use exactly one of p or c")
        return cls(dimension, kinds.pop(), {k: Fraction(v) for k, v in mapping.items()})


def evaluate_genus(series: GradedPolynomial, nums: CharacteristicNumbers) -> Fraction:
    """Pair the degree-``dimension`` part of ``series`` with the characteristic numbers."""
    if series.var != nums.var:
        raise DegreeMismatch(f"series is in {series.var}, numbers are in {nums.var}")
    if series.cutoff < nums.dimension:
        raise DegreeMismatch(f"series cutoff {series.cutoff} is below dimension {nums.dimension}")
    total = Fraction(0)
    for part, coeff in series.homogeneous(nums.dimension).terms.items():
        total += coeff * nums.values.get(part, Fraction(0))
    return total


def integrality_check(series_id: str, nums: CharacteristicNumbers, k: int) -> int:
    """Index predicted by the genus for a ``Cl_k``-linear Dirac operator.

    ``ahat``: A-hat for ``k = 0 (mod 8)``, A-hat/2 for ``k = 4``, zero for
    ``k = 3, 5, 6, 7``.  ``k = 1, 2`` carry a mod-2 kernel dimension, which
    no genus computes, so those raise ``ValueError``.  ``todd``: the Todd
    genus for even ``k``, zero for odd ``k``.

    Raises
    ------
    NonIntegralIndex
        When the prescribed quantity is not an integer, meaning the numbers
        are inconsistent with the claimed ``k``.
    """
    series_id = series_id.lower()
    if series_id == "ahat":
        form = index_type(k, "R").form
        if form in (IndexForm.MOD_TWO_COMPLEX_DIM, IndexForm.MOD_TWO_QUATERNION_DIM):
            raise ValueError(f"k = {k} (mod 8) has a mod-2 index, not a genus")
        if form is IndexForm.ZERO:
            return 0
        value = evaluate_genus(ahat_series(nums.dimension), nums)
        if form is IndexForm.HALF_AHAT:
            value /= 2
    elif series_id == "todd":
        if index_type(k, "C").form is IndexForm.ZERO:
            return 0
        value = evaluate_genus(todd_series(nums.dimension), nums)
    else:
        raise ValueError(f"unknown series {series_id!r}; expected 'ahat' or 'todd'")
    if value.denominator != 1:
        raise NonIntegralIndex(f"{series_id} index evaluates to {value} for k = {k}")
    return int(value)

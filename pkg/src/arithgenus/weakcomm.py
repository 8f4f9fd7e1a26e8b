"""Weak commensurability of semi-simple elements through their eigenvalues.

An eigenvalue set generates a subgroup of Q-bar^x; two elements are weakly
commensurable when those subgroups share an element other than 1.  Rational
eigenvalues live in {+-1} x (free abelian group on the primes), so the test
is exact integer linear algebra on exponent vectors with the sign tracked as
a Z/2 coordinate.  Real quadratic units are supported through their field:
two infinite-order units of one field always share a power up to sign, while
unit groups of distinct fields meet only in +-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Union

from .arith import Rational, factor, is_prime
from .quadfield import QuadUnit


@dataclass(frozen=True)
class ExponentVector:
    """Coordinates of a nonzero rational on an ordered prime support."""

    primes: tuple[int, ...]
    exponents: tuple[int, ...]
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if len(self.primes) != len(self.exponents):
            raise ValueError("primes and exponents must align")
        if list(self.primes) != sorted(set(self.primes)):
            raise ValueError("support must be strictly increasing")

    def value(self) -> Fraction:
        v = Fraction(self.sign)
        for p, e in zip(self.primes, self.exponents):
            v *= Fraction(p) ** e
        return v


def to_exponent_vector(q: Rational, support: tuple[int, ...]) -> ExponentVector:
    support = tuple(support)
    for p in support:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    fact = factor(q)
    exponents = dict(fact.factors)
    missing = set(exponents) - set(support)
    if missing:
        raise ValueError(f"support is missing primes {sorted(missing)}")
    return ExponentVector(
        support, tuple(exponents.get(p, 0) for p in support), fact.sign
    )


@dataclass(frozen=True)
class RationalEigenvalues:
    """Eigenvalue data given by nonzero rational numbers."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("eigenvalue set must be nonempty")
        if any(v == 0 for v in self.values):
            raise ValueError("eigenvalues must be nonzero")

    @classmethod
    def of(cls, *values: Rational) -> "RationalEigenvalues":
        return cls(tuple(Fraction(v) for v in values))


@dataclass(frozen=True)
class QuadraticEigenvalues:
    """Eigenvalue data given by infinite-order units of one real quadratic
    field (torsion units +-1 carry no spectral information and are refused)."""

    units: tuple[QuadUnit, ...]

    def __post_init__(self):
        if not self.units:
            raise ValueError("eigenvalue set must be nonempty")
        fields = {u.field for u in self.units}
        if len(fields) != 1:
            raise ValueError("units must belong to a single field")
        if any(u.y == 0 for u in self.units):
            raise ValueError("units must have infinite order")


EigenvalueSet = Union[RationalEigenvalues, QuadraticEigenvalues]


# ---------------------------------------------------------------------------
# Integer lattice utilities (exact; no floating point anywhere).


def _left_kernel(rows: list[list[int]]) -> list[list[int]]:
    """Basis of the integer left kernel {u : u * M = 0} of the matrix with
    the given rows.

    Reduces [M | I] by unimodular row operations; the transformation rows
    facing zeroed-out matrix rows span (and saturate) the kernel.
    """
    m = len(rows)
    if m == 0:
        return []
    width = len(rows[0])
    a = [list(r) for r in rows]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    rank = 0
    for col in range(width):
        if rank == m:
            break
        while True:
            pivot = None
            for i in range(rank, m):
                if a[i][col] and (pivot is None or abs(a[i][col]) < abs(a[pivot][col])):
                    pivot = i
            if pivot is None:
                break
            a[rank], a[pivot] = a[pivot], a[rank]
            u[rank], u[pivot] = u[pivot], u[rank]
            if a[rank][col] < 0:
                a[rank] = [-x for x in a[rank]]
                u[rank] = [-x for x in u[rank]]
            head = a[rank][col]
            finished = True
            for i in range(rank + 1, m):
                q = a[i][col] // head
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[rank])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[rank])]
                if a[i][col]:
                    finished = False
            if finished:
                rank += 1
                break
    return [u[i] for i in range(m) if not any(a[i])]


def _union_support(*sets: RationalEigenvalues) -> tuple[int, ...]:
    primes: set[int] = set()
    for s in sets:
        for v in s.values:
            primes.update(factor(v).support)
    return tuple(sorted(primes))


def _vectors_and_signs(
    s: RationalEigenvalues, support: tuple[int, ...]
) -> tuple[list[list[int]], list[int]]:
    vectors, signs = [], []
    for v in s.values:
        ev = to_exponent_vector(v, support)
        vectors.append(list(ev.exponents))
        signs.append(0 if ev.sign == 1 else 1)
    return vectors, signs


def _contains_minus_one(vectors: list[list[int]], signs: list[int]) -> bool:
    # -1 lies in the generated group iff some integer combination has zero
    # exponent vector and odd total sign parity
    if not vectors:
        return False
    for u in _left_kernel(vectors):
        if sum(x * s for x, s in zip(u, signs)) % 2:
            return True
    return False


def _free_intersection_witness(
    s1: RationalEigenvalues, s2: RationalEigenvalues
) -> Optional[Fraction]:
    """A common element of infinite order of the two generated groups, if any.

    Solves x*A = y*B over Z via the left kernel of the stacked matrix
    [A; -B]; a kernel element with nonzero image gives |g| realized in both
    groups, and squaring reconciles the signs when they disagree.
    """
    support = _union_support(s1, s2)
    a_rows, _ = _vectors_and_signs(s1, support)
    b_rows, _ = _vectors_and_signs(s2, support)
    stacked = a_rows + [[-x for x in row] for row in b_rows]
    r1 = len(a_rows)
    for u in _left_kernel(stacked):
        x, y = u[:r1], u[r1:]
        image = [sum(xi * row[j] for xi, row in zip(x, a_rows)) for j in range(len(support))]
        if any(image):
            g1 = _power_product(s1.values, x)
            g2 = _power_product(s2.values, y)
            assert abs(g1) == abs(g2)
            return g1 if g1 == g2 else g1 * g1
    return None


def _power_product(values: tuple[Fraction, ...], exponents: list[int]) -> Fraction:
    out = Fraction(1)
    for v, e in zip(values, exponents):
        out *= v**e
    return out


# ---------------------------------------------------------------------------
# Public predicates.


def multiplicative_dependence(q1: Rational, q2: Rational) -> Optional[tuple[int, int]]:
    """Minimal positive (m, n) with q1**m == q2**n, or None.

    Exists iff the exponent vectors are proportional with the same
    orientation; the sign obstruction is cleared by doubling.
    """
    q1, q2 = Fraction(q1), Fraction(q2)
    if q1 in (1, -1) or q2 in (1, -1):
        raise ValueError("torsion values have no multiplicative dependence data")
    f1, f2 = factor(q1), factor(q2)
    e1, e2 = dict(f1.factors), dict(f2.factors)
    support = sorted(set(e1) | set(e2))
    v1 = [e1.get(p, 0) for p in support]
    v2 = [e2.get(p, 0) for p in support]
    g1 = gcd(*v1)
    g2 = gcd(*v2)
    if [x // g1 for x in v1] != [x // g2 for x in v2]:
        # covers opposite orientation too: no positive powers can match then
        return None
    g = gcd(g1, g2)
    m, n = g2 // g, g1 // g
    if (f1.sign == -1 and m % 2) != (f2.sign == -1 and n % 2):
        m, n = 2 * m, 2 * n
    return m, n


def groups_intersect(s1: EigenvalueSet, s2: EigenvalueSet) -> bool:
    """Whether the eigenvalue-generated subgroups of Q-bar^x share an element
    other than 1."""
    if isinstance(s1, RationalEigenvalues) and isinstance(s2, RationalEigenvalues):
        if _free_intersection_witness(s1, s2) is not None:
            return True
        support = _union_support(s1, s2)
        v1, sg1 = _vectors_and_signs(s1, support)
        v2, sg2 = _vectors_and_signs(s2, support)
        return _contains_minus_one(v1, sg1) and _contains_minus_one(v2, sg2)
    if isinstance(s1, QuadraticEigenvalues) and isinstance(s2, QuadraticEigenvalues):
        # same field: u1^(2k2) = u2^(2k1) up to nothing, a genuine common
        # element; distinct fields meet only in +-1, which our sets exclude
        return s1.units[0].field == s2.units[0].field
    # a rational and a quadratic-unit group meet only in +-1
    return False


def intersection_witness(
    s1: RationalEigenvalues, s2: RationalEigenvalues
) -> Optional[Fraction]:
    """A common element != 1 of the two rational eigenvalue groups, if any;
    prefers an infinite-order witness and falls back to -1."""
    witness = _free_intersection_witness(s1, s2)
    if witness is not None:
        return witness
    support = _union_support(s1, s2)
    v1, sg1 = _vectors_and_signs(s1, support)
    v2, sg2 = _vectors_and_signs(s2, support)
    if _contains_minus_one(v1, sg1) and _contains_minus_one(v2, sg2):
        return Fraction(-1)
    return None


def weakly_commensurable(e1: EigenvalueSet, e2: EigenvalueSet) -> bool:
    """Weak commensurability of the underlying semi-simple elements: the
    eigenvalue groups must share an element different from +-1."""
    for e in (e1, e2):
        if isinstance(e, RationalEigenvalues) and all(
            v in (1, -1) for v in e.values
        ):
            raise ValueError("eigenvalue set is torsion-only")
    if isinstance(e1, RationalEigenvalues) and isinstance(e2, RationalEigenvalues):
        return _free_intersection_witness(e1, e2) is not None
    return groups_intersect(e1, e2)

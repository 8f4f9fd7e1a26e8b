"""Exact arithmetic over Q and its completions.

Factorization, Kronecker/Legendre symbols, p-adic valuations, local square
tests and Hilbert symbols.  All computations are on exact integers and
Fractions; nothing in this module touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

Rational = Union[int, Fraction]

_TRIAL_BOUND = 10**6
# Deterministic Miller-Rabin witness set; proves primality for n < 3.317e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_RHO_TRIES = 32


# ---------------------------------------------------------------------------
# Places of Q


@dataclass(frozen=True)
class Place:
    """A place of Q: a finite prime, or the real place (prime=None)."""

    prime: int | None = None

    def __post_init__(self):
        if self.prime is not None and not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime, so not a finite place")

    @property
    def is_real(self) -> bool:
        return self.prime is None

    def sort_key(self) -> tuple[int, int]:
        # finite places ascending, the real place last
        return (1, 0) if self.prime is None else (0, self.prime)

    def __str__(self) -> str:
        return "inf" if self.prime is None else str(self.prime)

    @classmethod
    def parse(cls, text: str) -> "Place":
        text = text.strip()
        if text in ("inf", "oo", "real"):
            return REAL_PLACE
        return cls(int(text))


REAL_PLACE = Place(None)


# ---------------------------------------------------------------------------
# Primality and factorization


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int, c: int) -> int:
    # Brent's cycle variant of Pollard rho with a fixed increment c.
    # Returns a nontrivial factor or n on failure.
    if n % 2 == 0:
        return 2
    y, m, g, r, q = 2, 128, 1, 1, 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        r *= 2
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
    return g


def _factor_positive(n: int) -> dict[int, int]:
    """Factor n >= 1 into a prime -> exponent map.

    Trial division up to 10**6, then deterministic Brent-rho splitting with
    increasing increments.  A composite that survives every attempt raises
    rather than being reported as prime.
    """
    factors: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    d = 7
    while d * d <= n and d <= _TRIAL_BOUND:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 2
    if n == 1:
        return factors
    if d * d > n or is_prime(n):
        # either below the trial bound squared (so prime) or certified prime
        factors[n] = factors.get(n, 0) + 1
        return factors
    stack = [n]
    while stack:
        m = stack.pop()
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        for c in range(1, _RHO_TRIES + 1):
            g = _brent_rho(m, c)
            if 1 < g < m:
                stack.extend((g, m // g))
                break
        else:
            raise RuntimeError(f"factorization failed: composite leftover {m}")
    return factors


@dataclass(frozen=True)
class Factorization:
    """Signed factorization sign * prod p**e of a nonzero rational.

    Primes are strictly increasing and exponents nonzero (negative exponents
    for denominators).
    """

    sign: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise ValueError("primes must be strictly increasing")
        if any(e == 0 for _, e in self.factors):
            raise ValueError("exponents must be nonzero")

    def value(self) -> Fraction:
        v = Fraction(self.sign)
        for p, e in self.factors:
            v *= Fraction(p) ** e
        return v

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


def factor(q: Rational) -> Factorization:
    """Exact signed factorization of a nonzero rational."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("cannot factor 0")
    sign = 1 if q > 0 else -1
    num = _factor_positive(abs(q.numerator))
    den = _factor_positive(q.denominator)
    merged = dict(num)
    for p, e in den.items():
        merged[p] = merged.get(p, 0) - e
    items = tuple(sorted((p, e) for p, e in merged.items() if e != 0))
    return Factorization(sign, items)


def squarefree_part(n: int) -> int:
    """The unique squarefree s with n = s * m**2; the sign of n is kept."""
    if not isinstance(n, int):
        raise ValueError("squarefree_part expects an integer")
    if n == 0:
        raise ValueError("0 has no squarefree part")
    s = 1 if n > 0 else -1
    for p, e in _factor_positive(abs(n)).items():
        if e % 2:
            s *= p
    return s


def is_squarefree(n: int) -> bool:
    return n != 0 and squarefree_part(n) == n


# ---------------------------------------------------------------------------
# Residue symbols


def _jacobi(a: int, n: int) -> int:
    # n odd positive
    a %= n
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker_symbol(a: int, n: int) -> int:
    """The Kronecker symbol (a/n) with the standard conventions."""
    if a == 0 and n == 0:
        raise ValueError("(0/0) is undefined")
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    return result * _jacobi(a, n)


def legendre_symbol(a: int, p: int) -> int:
    if not is_prime(p) or p == 2:
        raise ValueError("legendre_symbol needs an odd prime")
    return _jacobi(a, p)


# ---------------------------------------------------------------------------
# Local analysis


def padic_valuation(q: Rational, p: int) -> int:
    """Exponent of the prime p in the nonzero rational q."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = Fraction(q)
    if q == 0:
        raise ValueError("valuation of 0 is undefined")
    v = 0
    num = abs(q.numerator)
    while num % p == 0:
        num //= p
        v += 1
    den = q.denominator
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _unit_part(q: Fraction, p: int) -> tuple[int, Fraction]:
    """Write q = p**v * u with u a p-adic unit; returns (v, u)."""
    v = padic_valuation(q, p)
    return v, q / Fraction(p) ** v


def _unit_mod(u: Fraction, p: int, modulus: int) -> int:
    # u has numerator and denominator coprime to p; reduce it mod `modulus`
    # (a power of p times a unit scale is fine as long as gcd(den, modulus)=1)
    return u.numerator * pow(u.denominator, -1, modulus) % modulus


def is_local_square(q: Rational, v: Place) -> bool:
    """Whether q is a square in the completion of Q at v."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("0 is not a unit; square test undefined")
    if v.is_real:
        return q > 0
    p = v.prime
    val, u = _unit_part(q, p)
    if val % 2:
        return False
    if p == 2:
        return _unit_mod(u, 2, 8) == 1
    return _jacobi(_unit_mod(u, p, p), p) == 1


def hilbert_symbol(a: Rational, b: Rational, v: Place) -> int:
    """The Hilbert symbol (a,b)_v: +1 iff z**2 = a*x**2 + b*y**2 has a
    nontrivial solution over the completion at v."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if v.is_real:
        return -1 if a < 0 and b < 0 else 1
    p = v.prime
    alpha, u = _unit_part(a, p)
    beta, w = _unit_part(b, p)
    if p == 2:
        eps_u = (_unit_mod(u, 2, 4) - 1) // 2
        eps_w = (_unit_mod(w, 2, 4) - 1) // 2
        omega_u = 1 if _unit_mod(u, 2, 8) in (3, 5) else 0
        omega_w = 1 if _unit_mod(w, 2, 8) in (3, 5) else 0
        e = eps_u * eps_w + alpha * omega_w + beta * omega_u
        return -1 if e % 2 else 1
    s = 1
    if alpha % 2 and beta % 2 and p % 4 == 3:
        s = -s
    if beta % 2:
        s *= _jacobi(_unit_mod(u, p, p), p)
    if alpha % 2:
        s *= _jacobi(_unit_mod(w, p, p), p)
    return s


def local_square_class_generators(v: Place) -> tuple[int, ...]:
    """A generating set for the square classes of the completion at v."""
    if v.is_real:
        return (-1,)
    p = v.prime
    if p == 2:
        return (-1, 2, 5)
    n_p = 2
    while _jacobi(n_p, p) != -1:
        n_p += 1
    return (p, n_p)


def support_places(*values: Rational) -> list[Place]:
    """The real place, 2, and every odd prime dividing one of the values.

    Hilbert symbols of the values are +1 at every place outside this list.
    """
    primes = {2}
    for q in values:
        primes.update(factor(q).support)
    return [Place(p) for p in sorted(primes)] + [REAL_PLACE]

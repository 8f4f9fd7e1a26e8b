"""Quadratic forms over Q and the group data built on them.

Local and global isotropy, Witt indices and equivalence are decided from the
classifying invariants (dimension, discriminant square class, Hasse symbols,
signature).  On top of the forms sit the odd-orthogonal/symplectic group
data, the twins test, and the commensurability verdict for arithmetic
triples (group datum, base-field tag, finite place set).
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .arith import (
    Place,
    Rational,
    hilbert_symbol,
    is_local_square,
    is_prime,
    squarefree_part,
    support_places,
)
from .brauer import BrauerClass, global_index


@dataclass(frozen=True)
class QuadraticForm:
    """A diagonal form <a_1, ..., a_n> with nonzero rational coefficients."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a form needs at least one coefficient")
        if any(a == 0 for a in self.coeffs):
            raise ValueError("coefficients must be nonzero")

    @classmethod
    def of(cls, *coeffs: Rational) -> "QuadraticForm":
        return cls(tuple(Fraction(a) for a in coeffs))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def scaled(self, factor: Rational) -> "QuadraticForm":
        factor = Fraction(factor)
        if factor == 0:
            raise ValueError("scaling factor must be nonzero")
        return QuadraticForm(tuple(factor * a for a in self.coeffs))

    def __str__(self) -> str:
        return ",".join(str(a) for a in self.coeffs)


@dataclass(frozen=True)
class LocalInvariants:
    """Classifying data of a form: dimension, discriminant square class,
    the places with Hasse invariant -1, and the real signature."""

    dim: int
    disc: int
    hasse_minus: tuple[Place, ...]
    signature: tuple[int, int]

    def __post_init__(self):
        if self.signature[0] + self.signature[1] != self.dim:
            raise ValueError("signature must sum to the dimension")
        if squarefree_part(self.disc) != self.disc:
            raise ValueError("disc must be squarefree")

    def hasse_at(self, v: Place) -> int:
        return -1 if v in self.hasse_minus else 1


def _disc_class(coeffs: tuple[Fraction, ...]) -> int:
    prod = Fraction(1)
    for a in coeffs:
        prod *= a
    return squarefree_part(prod.numerator * prod.denominator)


def _relevant_places(f: QuadraticForm, *extra: QuadraticForm) -> list[Place]:
    coeffs = list(f.coeffs)
    for g in extra:
        coeffs.extend(g.coeffs)
    return support_places(*coeffs)


def form_invariants(f: QuadraticForm) -> LocalInvariants:
    """Discriminant square class, Hasse invariants (nontrivial places only)
    and the real signature."""
    minus = []
    for v in _relevant_places(f):
        h = 1
        for i in range(f.dim):
            for j in range(i + 1, f.dim):
                h *= hilbert_symbol(f.coeffs[i], f.coeffs[j], v)
        if h == -1:
            minus.append(v)
    minus.sort(key=Place.sort_key)
    positives = sum(1 for a in f.coeffs if a > 0)
    return LocalInvariants(
        f.dim, _disc_class(f.coeffs), tuple(minus), (positives, f.dim - positives)
    )


def _tuple_isotropic_local(n: int, disc: int, hasse: int, v: Place) -> bool:
    # invariant-level local isotropy; callers handle the real place
    if n <= 1:
        return False
    if n == 2:
        return is_local_square(-disc, v)
    if n == 3:
        return hasse == hilbert_symbol(-1, -disc, v)
    if n == 4:
        return (not is_local_square(disc, v)) or hasse == hilbert_symbol(-1, -1, v)
    return True


def is_isotropic_local(f: QuadraticForm, v: Place) -> bool:
    inv = form_invariants(f)
    if v.is_real:
        return inv.signature[0] >= 1 and inv.signature[1] >= 1
    return _tuple_isotropic_local(inv.dim, inv.disc, inv.hasse_at(v), v)


def witt_index_local(f: QuadraticForm, v: Place) -> int:
    """Number of hyperbolic planes split off over the completion at v,
    by recursion on the residual invariants."""
    inv = form_invariants(f)
    if v.is_real:
        return min(inv.signature)
    n, disc, hasse = inv.dim, inv.disc, inv.hasse_at(v)
    index = 0
    while n > 0 and _tuple_isotropic_local(n, disc, hasse, v):
        hasse *= hilbert_symbol(-1, -disc, v)
        disc = squarefree_part(-disc)
        n -= 2
        index += 1
    return index


@dataclass(frozen=True)
class _GlobalState:
    dim: int
    disc: int
    hasse_minus: frozenset[Place]
    signature: tuple[int, int]


def _global_state(inv: LocalInvariants) -> _GlobalState:
    return _GlobalState(inv.dim, inv.disc, frozenset(inv.hasse_minus), inv.signature)


def _state_places(state: _GlobalState) -> list[Place]:
    places = set(support_places(state.disc))
    places.update(state.hasse_minus)
    return sorted(places, key=Place.sort_key)


def _state_isotropic(state: _GlobalState) -> bool:
    # Hasse-Minkowski from invariants: real place plus every finite place
    # where disc or hasse is nontrivial (the criterion holds automatically
    # elsewhere); dimensions <= 2 reduce to a rational square test
    if state.dim <= 1:
        return False
    if min(state.signature) == 0:
        return False
    if state.dim == 2:
        return state.disc == -1
    if state.dim >= 5:
        return True
    for v in _state_places(state):
        if v.is_real:
            continue
        hasse = -1 if v in state.hasse_minus else 1
        if not _tuple_isotropic_local(state.dim, state.disc, hasse, v):
            return False
    return True


def _state_residual(state: _GlobalState) -> _GlobalState:
    flips = set()
    for v in _state_places(state):
        if hilbert_symbol(-1, -state.disc, v) == -1:
            flips.add(v)
    return _GlobalState(
        state.dim - 2,
        squarefree_part(-state.disc),
        frozenset(state.hasse_minus) ^ flips,
        (state.signature[0] - 1, state.signature[1] - 1),
    )


def is_isotropic_global(f: QuadraticForm) -> bool:
    return _state_isotropic(_global_state(form_invariants(f)))


def witt_index_global(f: QuadraticForm) -> int:
    state = _global_state(form_invariants(f))
    index = 0
    while state.dim > 0 and _state_isotropic(state):
        state = _state_residual(state)
        index += 1
    return index


def forms_equivalent(f: QuadraticForm, g: QuadraticForm) -> bool:
    """Q-equivalence: equal dimension, discriminant class, signature and
    Hasse invariants (complete by the Hasse-Minkowski classification)."""
    return form_invariants(f) == form_invariants(g)


def _similarity_candidates(f: QuadraticForm, g: QuadraticForm) -> list[Fraction]:
    odd_primes = sorted(
        v.prime
        for v in support_places(_disc_class(f.coeffs), _disc_class(g.coeffs))
        if v.prime is not None and v.prime != 2
    )
    generators = [Fraction(-1), Fraction(2)] + [Fraction(p) for p in odd_primes]
    candidates = []
    for bits in itertools.product((0, 1), repeat=len(generators)):
        lam = Fraction(1)
        for b, gen in zip(bits, generators):
            if b:
                lam *= gen
        candidates.append(lam)
    return candidates


def _forms_similar(f: QuadraticForm, g: QuadraticForm) -> bool:
    # for odd dimension a similarity factor acts on the discriminant by its
    # own square class, so it must be supported on -1, 2 and the odd primes
    # of disc(f)*disc(g)
    return any(
        forms_equivalent(f.scaled(lam), g) for lam in _similarity_candidates(f, g)
    )


def so3_groups_isomorphic(f: QuadraticForm, g: QuadraticForm) -> bool:
    """Whether the rotation groups of two ternary forms are Q-isomorphic,
    i.e. whether the forms are similar."""
    if f.dim != 3 or g.dim != 3:
        raise ValueError("both forms must be ternary")
    return _forms_similar(f, g)


# ---------------------------------------------------------------------------
# Group data of types B and C, and the twins test.


@dataclass(frozen=True)
class GroupB:
    """The special orthogonal group of a form of odd dimension 2n+1, n >= 2."""

    form: QuadraticForm

    def __post_init__(self):
        if self.form.dim % 2 == 0 or self.form.dim < 5:
            raise ValueError("a type-B datum needs an odd-dimensional form, dim >= 5")

    @property
    def rank(self) -> int:
        return (self.form.dim - 1) // 2


@dataclass(frozen=True)
class GroupC:
    """A type-C datum: a quaternion class, the rank, and whether the
    hermitian form is definite at the (ramified) real place."""

    algebra: BrauerClass
    rank: int
    real_definite: bool = False

    def __post_init__(self):
        if self.rank < 2:
            raise ValueError("rank must be at least 2")
        if any(value.denominator > 2 for _, value in self.algebra.invariants):
            raise ValueError("the algebra must have local indices 1 or 2")
        if self.real_definite and not self._ramified_at_real():
            raise ValueError("real-definite requires ramification at the real place")

    def _ramified_at_real(self) -> bool:
        return any(v.is_real for v in self.algebra.support)


def twins(b: GroupB, c: GroupC) -> bool:
    """Whether the two groups are simultaneously split or simultaneously
    anisotropic at every place of Q.

    At finite places neither type can be anisotropic, so both must be split
    there; the real place allows the split/split and
    anisotropic/anisotropic matches.
    """
    if b.rank != c.rank:
        raise ValueError(f"rank mismatch: B side has rank {b.rank}, C side {c.rank}")
    n = b.rank
    finite = {v for v in _relevant_places(b.form) if not v.is_real}
    finite.update(v for v in c.algebra.support if not v.is_real)
    for v in sorted(finite, key=Place.sort_key):
        if witt_index_local(b.form, v) != n:
            return False
        if c.algebra.invariant_at(v):
            return False
    real_witt = min(form_invariants(b.form).signature)
    c_ramified = any(v.is_real for v in c.algebra.support)
    b_split, b_anisotropic = real_witt == n, real_witt == 0
    c_split = not c_ramified and not c.real_definite
    c_anisotropic = c_ramified and c.real_definite
    return (b_split and c_split) or (b_anisotropic and c_anisotropic)


# ---------------------------------------------------------------------------
# Arithmetic triples and the commensurability verdict.

GroupDatum = Union[QuadraticForm, GroupB, GroupC, BrauerClass, str]


@dataclass(frozen=True)
class ArithmeticTriple:
    """(group datum, base-field tag, finite place set).

    Only the tag "Q" supports group arithmetic; any other tag makes the
    group payload opaque and usable solely for tag-inequality verdicts.
    The set S holds finite places (the archimedean place is implicit).
    """

    group: GroupDatum
    field_tag: str = "Q"
    places: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        for p in self.places:
            if not is_prime(p):
                raise ValueError(f"S must contain primes; got {p}")
        if self.field_tag == "Q":
            self._validate_group()
            self._warn_anisotropic_places()

    def _validate_group(self):
        group = self.group
        if isinstance(group, QuadraticForm):
            if group.dim % 2 == 0:
                raise ValueError("orthogonal group data must use odd-dimensional forms")
        elif isinstance(group, BrauerClass):
            if global_index(group) > 2:
                raise ValueError("norm-one group data needs a quaternion class")
        elif isinstance(group, str):
            raise ValueError("opaque group payloads require a non-Q field tag")
        elif not isinstance(group, (GroupB, GroupC)):
            raise ValueError(f"unsupported group datum {group!r}")

    def _warn_anisotropic_places(self):
        # S must avoid places where the group is anisotropic: S-arithmetic
        # subgroups cannot detect such places
        form = None
        if isinstance(self.group, QuadraticForm):
            form = self.group
        elif isinstance(self.group, GroupB):
            form = self.group.form
        for p in sorted(self.places):
            v = Place(p)
            anisotropic = False
            if form is not None:
                anisotropic = witt_index_local(form, v) == 0
            elif isinstance(self.group, BrauerClass):
                anisotropic = self.group.invariant_at(v) != 0
            if anisotropic:
                warnings.warn(
                    f"place {p} in S but the group is anisotropic there; "
                    "it does not change the commensurability class",
                    stacklevel=3,
                )


def _group_kind(group: GroupDatum) -> tuple[str, int]:
    if isinstance(group, QuadraticForm):
        return ("orthogonal", group.dim)
    if isinstance(group, GroupB):
        return ("orthogonal", group.form.dim)
    if isinstance(group, GroupC):
        return ("symplectic", group.rank)
    if isinstance(group, BrauerClass):
        return ("norm-one", 0)
    return ("opaque", 0)


def _group_form(group: GroupDatum) -> QuadraticForm:
    return group.form if isinstance(group, GroupB) else group


def triple_verdict(t1: ArithmeticTriple, t2: ArithmeticTriple) -> tuple[bool, str | None]:
    """Commensurability of the arithmetic groups described by two triples:
    equal field tags, equal place sets, and Q-isomorphic group data."""
    if t1.field_tag != t2.field_tag:
        return False, f"base fields differ ({t1.field_tag} vs {t2.field_tag})"
    if t1.field_tag != "Q":
        raise ValueError(
            f"group comparison over {t1.field_tag} is not supported (only Q)"
        )
    kind1, kind2 = _group_kind(t1.group), _group_kind(t2.group)
    if kind1[0] != kind2[0]:
        return False, f"group kinds differ ({kind1[0]} vs {kind2[0]})"
    if kind1 != kind2:
        return False, f"group types differ ({kind1[0]} of sizes {kind1[1]} vs {kind2[1]})"
    if kind1[0] == "symplectic":
        raise ValueError(
            "type-C group data does not determine the group up to isomorphism; "
            "the comparison is not supported"
        )
    if t1.places != t2.places:
        return False, "place sets differ"
    if kind1[0] == "norm-one":
        if t1.group == t2.group:
            return True, None
        return False, "quaternion classes differ"
    if _forms_similar(_group_form(t1.group), _group_form(t2.group)):
        return True, None
    return False, "forms are not similar over Q"


def triple_commensurable(t1: ArithmeticTriple, t2: ArithmeticTriple) -> bool:
    return triple_verdict(t1, t2)[0]

"""Fermionic terms and their Jordan-Wigner images as weighted Pauli strings.

A ladder operator on mode m maps to (X_m + iY_m)/2 (annihilation) or
(X_m - iY_m)/2 (creation), times a Z chain on all lower modes.  Products of
ladder operators are expanded symbolically with
:func:`paulisched.pauli.multiply`; no sign or phase is ever hand-coded,
which is what the dense-matrix oracles in :mod:`paulisched.oracles` verify.

For a two-body term with four distinct mode indices the expansion is always
16 strings of coefficient magnitude 1/16, each matching a fixed shape: X or
Y at the four endpoint modes, Z on the two open intervals between the first
and second and between the third and fourth endpoint (in increasing order),
identity elsewhere.  :class:`JwPattern` captures that shape.
"""

from dataclasses import dataclass
from fractions import Fraction

from .pauli import ExactComplex, PauliString, WeightedPauliString, multiply

__all__ = [
    "FermionicTerm",
    "JwPattern",
    "UnsupportedTermError",
    "jw_excitation",
    "jw_ladder",
    "jw_term",
    "matches_pattern",
    "pattern_of",
]

_HALF = ExactComplex(Fraction(1, 2))
_PLUS_I_HALF = ExactComplex(0, Fraction(1, 2))
_MINUS_I_HALF = ExactComplex(0, Fraction(-1, 2))


class UnsupportedTermError(ValueError):
    """Raised for terms outside the supported one-body / two-body shapes."""


@dataclass(frozen=True)
class FermionicTerm:
    """A normal-ordered product of creation then annihilation operators.

    ``creates`` and ``annihilates`` are strictly descending mode-index
    tuples, either one index each (one-body) or two each (two-body).
    Repeats between the two tuples are allowed (those are the residual
    terms); repeats within a tuple would make the operator vanish and are
    rejected.
    """

    creates: tuple[int, ...]
    annihilates: tuple[int, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "creates", tuple(self.creates))
        object.__setattr__(self, "annihilates", tuple(self.annihilates))
        shape = (len(self.creates), len(self.annihilates))
        if shape not in ((1, 1), (2, 2)):
            raise UnsupportedTermError(f"unsupported operator shape {shape}")
        for side in (self.creates, self.annihilates):
            if any(not 0 <= m < self.n for m in side):
                raise ValueError(f"mode index out of range [0, {self.n}) in {side}")
            if any(a <= b for a, b in zip(side, side[1:])):
                raise UnsupportedTermError(f"indices must be strictly descending, got {side}")

    @classmethod
    def one_body(cls, p: int, q: int, n: int) -> "FermionicTerm":
        return cls((p,), (q,), n)

    @classmethod
    def two_body(cls, p: int, q: int, r: int, s: int, n: int) -> "FermionicTerm":
        return cls((p, q), (r, s), n)

    @property
    def is_two_body(self) -> bool:
        return len(self.creates) == 2

    def support(self) -> tuple[int, ...]:
        """Distinct touched modes, ascending."""
        return tuple(sorted(set(self.creates) | set(self.annihilates)))

    def has_distinct_indices(self) -> bool:
        return len(self.support()) == len(self.creates) + len(self.annihilates)

    def adjoint(self) -> "FermionicTerm":
        """Hermitian conjugate: daggers swap and the factor order reverses."""
        return FermionicTerm(self.annihilates, self.creates, self.n)


def jw_ladder(mode: int, dagger: bool, n: int) -> tuple[WeightedPauliString, WeightedPauliString]:
    """The two weighted strings encoding one ladder operator on ``mode``.

    Returns ((1/2) X_mode Zchain, (+-i/2) Y_mode Zchain) with -i/2 for a
    creation operator and +i/2 for an annihilation operator; the Z chain
    covers every mode below ``mode``.
    """
    if not 0 <= mode < n:
        raise ValueError(f"mode {mode} out of range [0, {n})")
    chain = (1 << mode) - 1
    x_part = PauliString(n, 1 << mode, chain)
    y_part = PauliString(n, 1 << mode, chain | (1 << mode))
    return (
        WeightedPauliString(_HALF, x_part),
        WeightedPauliString(_MINUS_I_HALF if dagger else _PLUS_I_HALF, y_part),
    )


def jw_term(term: FermionicTerm) -> list[WeightedPauliString]:
    """Expand a term's full ladder product into weighted Pauli strings.

    Equal strings arising from index repetition are combined and zero
    coefficients dropped, so nilpotent products come back empty.  The result
    is sorted by string text, which makes downstream output reproducible.
    """
    factors = [jw_ladder(m, True, term.n) for m in term.creates]
    factors += [jw_ladder(m, False, term.n) for m in term.annihilates]
    acc = [WeightedPauliString(ExactComplex(1), PauliString.identity(term.n))]
    for factor in factors:
        acc = [multiply(w, part) for w in acc for part in factor]
    combined: dict[PauliString, ExactComplex] = {}
    for w in acc:
        combined[w.string] = combined.get(w.string, ExactComplex()) + w.coefficient
    return [
        WeightedPauliString(c, s)
        for s, c in sorted(combined.items(), key=lambda item: item[0].text())
        if c
    ]


def jw_excitation(term: FermionicTerm) -> list[WeightedPauliString]:
    """Expansion of a two-body term whose four indices are all distinct.

    Exactly 16 strings, every coefficient of magnitude 1/16, every string
    matching ``pattern_of(term)``.

    Raises:
        UnsupportedTermError: for one-body terms or repeated indices.
    """
    if not (term.is_two_body and term.has_distinct_indices()):
        raise UnsupportedTermError(
            f"not a distinct-index two-body term: {term.creates} / {term.annihilates}"
        )
    strings = jw_term(term)
    assert len(strings) == 16
    return strings


@dataclass(frozen=True)
class JwPattern:
    """Shape of a distinct-index two-body encoding over an n-mode register.

    ``endpoints`` are the four touched modes in increasing order; the two
    ``z_segments`` are the open intervals (endpoints[0], endpoints[1]) and
    (endpoints[2], endpoints[3]) that carry repeated Z.
    """

    n: int
    endpoints: tuple[int, int, int, int]
    z_segments: tuple[tuple[int, int], tuple[int, int]]

    def endpoint_mask(self) -> int:
        mask = 0
        for t in self.endpoints:
            mask |= 1 << t
        return mask

    def z_mask(self) -> int:
        mask = 0
        for lo, hi in self.z_segments:
            for t in range(lo + 1, hi):
                mask |= 1 << t
        return mask

    def matches(self, p: PauliString) -> bool:
        """True iff p has X|Y exactly at the endpoints, Z on the segments, I elsewhere."""
        if p.n != self.n:
            return False
        e_mask = self.endpoint_mask()
        return p.x == e_mask and (p.z & ~e_mask) == self.z_mask()


def pattern_of(term: FermionicTerm) -> JwPattern:
    """The :class:`JwPattern` matched by exactly the strings of ``jw_excitation(term)``."""
    if not (term.is_two_body and term.has_distinct_indices()):
        raise UnsupportedTermError("pattern is defined for distinct-index two-body terms only")
    e0, e1, e2, e3 = term.support()
    return JwPattern(term.n, (e0, e1, e2, e3), ((e0, e1), (e2, e3)))


def matches_pattern(p: PauliString, pattern: JwPattern) -> bool:
    return pattern.matches(p)

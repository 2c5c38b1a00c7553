"""Independent brute-force checks for the algebra, the encoding and the schedules.

Everything in here recomputes from first principles: dense matrices are
assembled from 2x2 constants and the occupation-number action of ladder
operators, coverage is recounted from scratch, commutation audits touch all
pairs.  None of it reuses the bookkeeping of the modules it checks.

Validators return :class:`OracleReport` values and never raise on bad
input; reports serialize to plain dicts for CI consumption.
"""

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from .baranyai import SUBSET_SIZE, Schedule
from .fermion import FermionicTerm, jw_excitation, jw_term
from .pauli import PauliString, WeightedPauliString, anticommuting_index_count, commutes

__all__ = [
    "OracleReport",
    "anticommuting_chain_fixture",
    "ladder_matrix",
    "string_matrix",
    "term_matrix",
    "validate_families",
    "validate_schedule",
    "verify_anticommuting_chains",
    "verify_disjoint_term_commutation",
    "verify_jw_against_matrices",
    "verify_sliding_invariance",
    "weighted_sum_matrix",
]

PAULI_2X2 = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass
class OracleReport:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    counterexample: str | None = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "details": self.details}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


# ---------------------------------------------------------------------------
# Dense-matrix constructions (qubit 0 = first Kronecker factor / MSB)


def string_matrix(p: PauliString) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for t in range(p.n):
        out = np.kron(out, PAULI_2X2[p.letter(t)])
    return out


def weighted_sum_matrix(strings: list[WeightedPauliString]) -> np.ndarray:
    n = strings[0].string.n
    out = np.zeros((1 << n, 1 << n), dtype=complex)
    for w in strings:
        out += w.coefficient.as_complex() * string_matrix(w.string)
    return out


def ladder_matrix(mode: int, dagger: bool, n: int) -> np.ndarray:
    """Ladder operator in the occupation basis, built from its defining action.

    Basis state b has mode t occupied iff bit (n-1-t) of b is set, matching
    the Kronecker order of :func:`string_matrix`.  Annihilating mode m maps
    an occupied state to the cleared state with sign (-1)^(number of
    occupied modes below m); creation is the transpose action.
    """
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=complex)
    bit = 1 << (n - 1 - mode)
    below_mask = ((1 << mode) - 1) << (n - mode)  # bits of modes 0..mode-1
    for b in range(dim):
        occupied = bool(b & bit)
        if occupied == dagger:
            continue
        sign = -1 if (b & below_mask).bit_count() % 2 else 1
        out[b ^ bit, b] = sign
    return out


def term_matrix(term: FermionicTerm) -> np.ndarray:
    out = np.eye(1 << term.n, dtype=complex)
    for m in term.creates:
        out = out @ ladder_matrix(m, True, term.n)
    for m in term.annihilates:
        out = out @ ladder_matrix(m, False, term.n)
    return out


# ---------------------------------------------------------------------------
# Oracles


def verify_jw_against_matrices(n: int) -> OracleReport:
    """Check every one-body term and every distinct-index two-body term at size n.

    The weighted string expansion must reproduce the occupation-basis
    ladder-operator product matrix; with exact coefficients the match is
    expected to be exact, and anything above 1e-12 elementwise fails.
    """
    if n > 8:
        raise ValueError("dense check is meant for small registers")
    worst = 0.0
    checked = 0
    exact = 0
    bad: str | None = None
    terms = [FermionicTerm.one_body(p, q, n) for p in range(n) for q in range(n)]
    terms += [
        FermionicTerm.two_body(*sorted(sub, reverse=True), n)
        for sub in combinations(range(n), 4)
    ]
    for term in terms:
        strings = jw_term(term)
        got = (
            weighted_sum_matrix(strings)
            if strings
            else np.zeros((1 << n, 1 << n), dtype=complex)
        )
        want = term_matrix(term)
        diff = float(np.max(np.abs(got - want)))
        checked += 1
        if diff == 0.0:
            exact += 1
        worst = max(worst, diff)
        if diff > 1e-12 and bad is None:
            bad = f"term {term.creates}/{term.annihilates}: max deviation {diff}"
    return OracleReport(
        name=f"jw-dense-n{n}",
        passed=bad is None,
        details={"n": n, "terms_checked": checked, "exact_matches": exact, "max_deviation": worst},
        counterexample=bad,
    )


def verify_disjoint_term_commutation() -> OracleReport:
    """All interleavings of two index-disjoint two-body terms commute.

    Embeds each of the C(8,4) = 70 ways to deal the indices 0..7 to the two
    terms in an 8-mode register, expands both 16-string sets and checks all
    256 cross pairs.  Reports the per-case anticommuting-index counts;
    commutation requires them all even, and the extremes 0 and 6 both occur.
    """
    case_counts: list[int] = []
    pairs = 0
    bad: str | None = None
    for picked in combinations(range(8), 4):
        rest = tuple(sorted(set(range(8)) - set(picked)))
        term_a = FermionicTerm.two_body(*sorted(picked, reverse=True), 8)
        term_b = FermionicTerm.two_body(*sorted(rest, reverse=True), 8)
        counts = set()
        for wa in jw_excitation(term_a):
            for wb in jw_excitation(term_b):
                c = anticommuting_index_count(wa.string, wb.string)
                counts.add(c)
                pairs += 1
                if c % 2 and bad is None:
                    bad = (
                        f"{picked} vs {rest}: {wa.string} / {wb.string} "
                        f"anticommute at {c} indices"
                    )
        case_counts.extend(sorted(counts))
    histogram = {c: case_counts.count(c) for c in sorted(set(case_counts))}
    passed = bad is None and min(case_counts) == 0 and max(case_counts) == 6
    return OracleReport(
        name="disjoint-terms-exhaustive",
        passed=passed,
        details={
            "cases": 70,
            "cross_pairs": pairs,
            "count_histogram": histogram,
            "min_count": min(case_counts),
            "max_count": max(case_counts),
        },
        counterexample=bad,
    )


def verify_sliding_invariance(trials: int = 200, max_n: int = 12, seed: int = 7) -> OracleReport:
    """Moving one endpoint without crossing the other term's endpoints keeps
    every cross pair's anticommuting parity unchanged (and even)."""
    rng = random.Random(seed)
    bad: str | None = None
    done = 0
    while done < trials and bad is None:
        n = rng.randrange(8, max_n + 1)
        modes = rng.sample(range(n), 8)
        a = sorted(modes[:4], reverse=True)
        b = sorted(modes[4:], reverse=True)
        moving = rng.choice(a)
        fixed = set(b)
        gaps = sorted(fixed | {-1, n})
        lo = max(g for g in gaps if g < moving)
        hi = min(g for g in gaps if g > moving)
        free = [t for t in range(lo + 1, hi) if t not in a and t not in fixed]
        if not free:
            continue
        target = rng.choice(free)
        slid = sorted((set(a) - {moving}) | {target}, reverse=True)
        term_b = FermionicTerm.two_body(*b, n)
        before = _cross_parities(FermionicTerm.two_body(*a, n), term_b)
        after = _cross_parities(FermionicTerm.two_body(*slid, n), term_b)
        if before != after or any(p % 2 for p in before):
            bad = f"n={n}: {a} -> {slid} against {b} changed parity"
        done += 1
    return OracleReport(
        name="endpoint-sliding",
        passed=bad is None,
        details={"trials": done, "max_n": max_n},
        counterexample=bad,
    )


def _cross_parities(term_a: FermionicTerm, term_b: FermionicTerm) -> list[int]:
    return [
        anticommuting_index_count(wa.string, wb.string) % 2
        for wa in jw_excitation(term_a)
        for wb in jw_excitation(term_b)
    ]


def anticommuting_chain_fixture(n: int) -> list[PauliString]:
    """The 2n strings matching Z*(X|Y)I*; no two distinct members commute."""
    if n < 1:
        raise ValueError("need at least one qubit")
    return [
        PauliString.from_text("Z" * k + letter + "I" * (n - 1 - k))
        for k in range(n)
        for letter in "XY"
    ]


def verify_anticommuting_chains(max_n: int = 8) -> OracleReport:
    bad: str | None = None
    pairs = 0
    for n in range(1, max_n + 1):
        chain = anticommuting_chain_fixture(n)
        for a, b in combinations(chain, 2):
            pairs += 1
            if commutes(a, b) and bad is None:
                bad = f"n={n}: {a} and {b} commute"
    return OracleReport(
        name="anticommuting-chains",
        passed=bad is None,
        details={"max_n": max_n, "pairs_checked": pairs},
        counterexample=bad,
    )


def validate_schedule(schedule: Schedule) -> OracleReport:
    """Recount a schedule from scratch: subset shapes, per-round disjointness,
    exact cover of all C(n,4) subsets, and the round shape when 4 | n."""
    n = schedule.n
    checks = {"subset_shape": True, "round_disjoint": True, "exact_cover": True}
    bad: str | None = None

    def fail(check: str, message: str) -> None:
        nonlocal bad
        checks[check] = False
        if bad is None:
            bad = message

    seen: dict[frozenset, int] = {}
    for r, rnd in enumerate(schedule.rounds):
        used: set[int] = set()
        for subset in rnd:
            members = frozenset(subset)
            if len(subset) != SUBSET_SIZE or len(members) != SUBSET_SIZE or not all(
                isinstance(t, int) and 0 <= t < n for t in subset
            ):
                fail("subset_shape", f"round {r}: malformed subset {subset}")
                continue
            if used & members:
                fail("round_disjoint", f"round {r}: subsets overlap at {sorted(used & members)}")
            used |= members
            seen[members] = seen.get(members, 0) + 1
    expected = comb(n, SUBSET_SIZE)
    duplicates = [s for s, k in seen.items() if k > 1]
    if duplicates:
        fail("exact_cover", f"subset {tuple(sorted(duplicates[0], reverse=True))} appears more than once")
    elif len(seen) != expected:
        fail("exact_cover", f"{len(seen)} distinct subsets covered, expected {expected}")
    if n % 4 == 0:
        checks["round_shape"] = True
        if len(schedule.rounds) != comb(n - 1, 3):
            fail("round_shape", f"{len(schedule.rounds)} rounds, expected {comb(n - 1, 3)}")
        elif any(len(rnd) != n // SUBSET_SIZE for rnd in schedule.rounds):
            fail("round_shape", "a round does not hold n/4 subsets")
    return OracleReport(
        name="schedule-validation",
        passed=all(checks.values()),
        details={
            "n": n,
            "rounds": len(schedule.rounds),
            "subsets": schedule.subset_count,
            "checks": checks,
        },
        counterexample=bad,
    )


def validate_families(families) -> OracleReport:
    """All-pairs commutation audit over every family (O(size^2) per family)."""
    families = list(families)
    bad: str | None = None
    pairs = 0
    for idx, family in enumerate(families):
        strings = [w.string for w in family.strings]
        for a, b in combinations(strings, 2):
            pairs += 1
            if not commutes(a, b) and bad is None:
                bad = f"family {idx}: {a} and {b} do not commute"
    return OracleReport(
        name="family-validation",
        passed=bad is None,
        details={"families": len(families), "pairs_checked": pairs},
        counterexample=bad,
    )

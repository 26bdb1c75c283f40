"""Closed-form generation test for a triple of prefix reversals.

``classify`` decides whether <r_n, r_m, r_k> (with 2 <= k < m < n) is the full
symmetric group using only arithmetic on (n, m, k), and attaches a machine
checkable artifact to the verdict whenever one is available:

* ``NotGenerates`` verdicts carry a certificate: an invariant set, an
  invariant partition (block system), the all-even observation, or an
  explicit note when no simple invariant is known;
* ``Generates`` verdicts can be handed to :func:`build_generates_witness`,
  which reconstructs the explicit element identities behind the rule and
  verifies them, returning ``None`` for rules that rest on previously known
  special cases.

Every certificate is re-verified through :mod:`cubicpancake.grouptest` before
it is emitted, so a bug in the rule table cannot silently produce a bogus
invariant.  The verdicts themselves are cross-checked against the independent
order oracle in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from . import grouptest
from .perm import Perm, ReversalWord, from_cycles, reversal, word_eval
from .grouptest import (
    ALTERNATING,
    FULL_SYM,
    BlockPartition,
    GeneratorSet,
    block_partition_to_json,
    invariant_set_to_json,
    lemma_connected_transpositions,
    lemma_ncycle_3cycle,
    lemma_ncycle_transposition,
)


class InvalidTriple(ValueError):
    """Indices violate 2 <= k < m < n, n >= 4."""


class WitnessMismatch(RuntimeError):
    """A constructed witness element does not match its claimed form."""


class CertificateError(RuntimeError):
    """A closed-form certificate failed its verifier (implementation bug)."""


@dataclass(frozen=True, slots=True)
class Triple:
    """Reversal indices (n, m, k) with 2 <= k < m < n; r_n is always included."""

    n: int
    m: int
    k: int

    def __post_init__(self) -> None:
        if not (2 <= self.k < self.m < self.n) or self.n < 4:
            raise InvalidTriple(f"need 2 <= k < m < n and n >= 4, got {self}")

    @property
    def l(self) -> int:
        """Gap n - m between the two largest indices."""
        return self.n - self.m

    def generator_set(self) -> GeneratorSet:
        return GeneratorSet(self.n, (reversal(self.n, self.n),
                                     reversal(self.n, self.m),
                                     reversal(self.n, self.k)))


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class InvariantSet:
    points: frozenset[int]


@dataclass(frozen=True, slots=True)
class InvariantPartition:
    partition: BlockPartition


@dataclass(frozen=True, slots=True)
class AllEvenSubgroup:
    pass


@dataclass(frozen=True, slots=True)
class Uncertified:
    note: str


Certificate = Union[InvariantSet, InvariantPartition, AllEvenSubgroup, Uncertified]


def verify_certificate(t: Triple, cert: Certificate) -> bool:
    """Check a certificate against the actual generators (Uncertified passes)."""
    gens = t.generator_set()
    if isinstance(cert, InvariantSet):
        return grouptest.verify_invariant_set(gens, cert.points)
    if isinstance(cert, InvariantPartition):
        return grouptest.verify_block_partition(gens, cert.partition)
    if isinstance(cert, AllEvenSubgroup):
        return grouptest.all_even(gens)
    return True


def certificate_to_json(cert: Optional[Certificate]) -> Optional[dict]:
    if cert is None:
        return None
    if isinstance(cert, InvariantSet):
        return invariant_set_to_json(cert.points)
    if isinstance(cert, InvariantPartition):
        return block_partition_to_json(cert.partition)
    if isinstance(cert, AllEvenSubgroup):
        return {"type": "all_even"}
    return {"type": "uncertified", "note": cert.note}


def _partition(n: int, parts: list[list[int]]) -> InvariantPartition:
    norm = tuple(sorted((tuple(sorted(p)) for p in parts), key=lambda p: p[0]))
    return InvariantPartition(BlockPartition(n, norm))


def _residue_partition(n: int, mod: int, residue_groups: list[set[int]]) -> InvariantPartition:
    parts = [[t for t in range(1, n + 1) if t % mod in grp] for grp in residue_groups]
    return _partition(n, parts)


def _consecutive_blocks(n: int, size: int) -> InvariantPartition:
    parts = [list(range(a + 1, a + size + 1)) for a in range(0, n, size)]
    return _partition(n, parts)


def _parity_partition(n: int) -> InvariantPartition:
    return _partition(n, [list(range(1, n + 1, 2)), list(range(2, n + 1, 2))])


def _orbit_certificate(t: Triple) -> InvariantSet:
    orbit = grouptest.orbit_of(t.generator_set(), 1)
    return InvariantSet(orbit)


def _checked(t: Triple, cert: Certificate) -> Certificate:
    if not verify_certificate(t, cert):
        raise CertificateError(f"certificate failed verification for {t}: {cert}")
    return cert


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------

class Status(Enum):
    GENERATES = "generates"
    NOT_GENERATES = "not_generates"
    UNKNOWN = "unknown"


@dataclass(frozen=True, slots=True)
class Verdict:
    status: Status
    rule: Optional[str] = None
    certificate: Optional[Certificate] = None

    @property
    def decisive(self) -> bool:
        return self.status is not Status.UNKNOWN


def verdict_to_json(t: Triple, v: Verdict) -> dict:
    return {
        "n": t.n,
        "m": t.m,
        "k": t.k,
        "verdict": v.status.value,
        "rule": v.rule,
        "certificate": certificate_to_json(v.certificate),
    }


# ---------------------------------------------------------------------------
# necessary conditions (screened first, in order)
# ---------------------------------------------------------------------------

def necessary_conditions(t: Triple) -> Optional[Verdict]:
    """First failing structural condition, or None if all pass.

    C2: some index strictly between n/2 and n is required, so m > floor(n/2).
    C3: an even index is required (odd reversals preserve position parity).
    C4: not all three reversals may be even permutations.
    C5: gcd(n, m, k) = 1, else consecutive gcd-sized blocks are preserved.
    """
    n, m, k = t.n, t.m, t.k
    if m <= n // 2:
        return Verdict(Status.NOT_GENERATES, "C2",
                       Uncertified("no reversal index strictly between n/2 and n"))
    if n % 2 and m % 2 and k % 2:
        return Verdict(Status.NOT_GENERATES, "C3",
                       _checked(t, _parity_partition(n)))
    if (n // 2) % 2 == 0 and (m // 2) % 2 == 0 and (k // 2) % 2 == 0:
        return Verdict(Status.NOT_GENERATES, "C4", _checked(t, AllEvenSubgroup()))
    g = math.gcd(n, math.gcd(m, k))
    if g > 1:
        return Verdict(Status.NOT_GENERATES, "C5",
                       _checked(t, _consecutive_blocks(n, g)))
    return None


# ---------------------------------------------------------------------------
# residue-class invariant sets for k >= 4, m <= n-3
# ---------------------------------------------------------------------------

def prop1_certificate(t: Triple) -> Optional[InvariantSet]:
    """Invariant residue set when the gap l = n - m satisfies l >= 2k + 1.

    The ends {1..k} and {n-k+1..n} form an <r_n, r_k>-orbit Phi; the set of
    points congruent mod l to some member of Phi is preserved by all three
    reversals and is proper because Phi meets fewer than l residue classes.
    Returns None when the guard fails or the set does not verify.
    """
    n, m, k, l = t.n, t.m, t.k, t.l
    if l < 2 * k + 1 or not 1 < k < n - l:
        return None
    phi = set(range(1, k + 1)) | set(range(n - k + 1, n + 1))
    residues = {s % l for s in phi}
    delta = frozenset(x for x in range(1, n + 1) if x % l in residues)
    cert = InvariantSet(delta)
    if not grouptest.verify_invariant_set(t.generator_set(), delta):
        return None
    return cert


def prop2_certificate(t: Triple) -> Optional[InvariantSet]:
    """Invariant set of multiples of l when l >= k + 1 and l divides n + 1."""
    n, k, l = t.n, t.k, t.l
    if l < k + 1 or (n + 1) % l != 0 or n < 6:
        return None
    delta = frozenset(range(l, n + 1, l))
    if not delta:
        return None
    if not grouptest.verify_invariant_set(t.generator_set(), delta):
        return None
    return InvariantSet(delta)


# ---------------------------------------------------------------------------
# per-shape generation predicates (kept separately callable so overlapping
# rules can be cross-asserted in the tests)
# ---------------------------------------------------------------------------

def k2_generates(n: int, m: int) -> bool:
    """Characterization for k = 2."""
    if n % 2 == 0:
        return m == n - 1
    if n % 3 == 1:
        return m in (n - 1, n - 2, n - 3)
    return m in (n - 1, n - 2)


def k3_generates(n: int, m: int) -> bool:
    """Characterization for k = 3."""
    if n % 2 == 0 and m == n - 2:
        return True
    if m in (n - 3, n - 1) and n % 6 in (1, 5):
        return True
    if m == n - 1 and n % 6 == 3:
        return True
    return False


def mn1_generates(n: int, k: int) -> bool:
    """Characterization for m = n - 1."""
    if n % 2 == 0:
        return k % 2 == 0
    if n % 4 == 3:
        return True
    return k % 4 in (2, 3)


def mn2_generates(n: int, k: int) -> bool:
    """Characterization for m = n - 2."""
    return n % 2 != k % 2


def _k2_failure_certificate(t: Triple) -> Certificate:
    n, m = t.n, t.m
    if m == n - 3:
        if n % 3 == 0:
            return _checked(t, _consecutive_blocks(n, 3))
        if n % 6 == 4:
            return _checked(t, _residue_partition(n, 6, [{0, 1, 2}, {3, 4, 5}]))
        # n = 2, 5 (mod 6): the orbit of 1 avoids the multiples of 3
    return _checked(t, _orbit_certificate(t))


def _k3_failure_certificate(t: Triple) -> Certificate:
    n, m = t.n, t.m
    if m == n - 1:  # n even here, k = 3 odd: position parity is preserved
        return _checked(t, _parity_partition(n))
    if m == n - 4 and n % 2 == 0:
        if n % 4 == 0:
            return _checked(t, _consecutive_blocks(n, 4))
        if n % 8 == 6:
            return _checked(t, _residue_partition(n, 8, [{0, 1, 2, 3}, {4, 5, 6, 7}]))
        return _checked(t, _residue_partition(n, 8, [{1, 3, 4, 6}, {0, 2, 5, 7}]))
    if n % 2 == 1 or m <= n - 5:
        # odd n: the orbit of 1 avoids even integers for m = n-4 and is
        # short of residues for m <= n-5; both yield a proper orbit
        return _checked(t, _orbit_certificate(t))
    # n even with m = n-3 has no closed-form invariant; search for one
    block = grouptest.find_nontrivial_block_system(t.generator_set()) \
        if grouptest.is_transitive(t.generator_set()) else None
    if block is not None:
        return _checked(t, InvariantPartition(block))
    orbit = grouptest.orbit_of(t.generator_set(), 1)
    if len(orbit) < n:
        return _checked(t, InvariantSet(orbit))
    return Uncertified("no invariant found by search; verdict rests on the rule table")


def classify(t: Triple) -> Verdict:
    """Decide the triple by the rule table; the first applicable rule wins.

    Order: necessary conditions C2..C5, then the k = 2 and k = 3
    characterizations, then m = n-1 and m = n-2, then the residue invariant
    sets for wide gaps, otherwise Unknown.
    """
    failed = necessary_conditions(t)
    if failed is not None:
        return failed
    n, m, k = t.n, t.m, t.k
    if k == 2:
        if k2_generates(n, m):
            return Verdict(Status.GENERATES, "k2")
        return Verdict(Status.NOT_GENERATES, "k2", _k2_failure_certificate(t))
    if k == 3:
        if k3_generates(n, m):
            return Verdict(Status.GENERATES, "k3")
        return Verdict(Status.NOT_GENERATES, "k3", _k3_failure_certificate(t))
    if m == n - 1:
        if mn1_generates(n, k):
            return Verdict(Status.GENERATES, "mn1")
        # remaining failures have n even and k odd (the all-even family was
        # already caught by C4): reversal by r_n swaps the position parities
        return Verdict(Status.NOT_GENERATES, "mn1", _checked(t, _parity_partition(n)))
    if m == n - 2:
        if mn2_generates(n, k):
            return Verdict(Status.GENERATES, "mn2")
        return Verdict(Status.NOT_GENERATES, "mn2",
                       Uncertified("same-parity n and k fall to C3/C5 first"))
    cert = prop1_certificate(t)
    if cert is not None:
        return Verdict(Status.NOT_GENERATES, "mod_invariant_set", cert)
    cert = prop2_certificate(t)
    if cert is not None:
        return Verdict(Status.NOT_GENERATES, "divisor_invariant_set", cert)
    return Verdict(Status.UNKNOWN)


# ---------------------------------------------------------------------------
# witnesses for Generates verdicts
# ---------------------------------------------------------------------------

THREE_CYCLE = "three_cycle"
NCYCLE_PLUS_TRANSPOSITION = "ncycle_plus_transposition"
ADJACENT_TRANSPOSITIONS = "adjacent_transpositions"


@dataclass(frozen=True, slots=True)
class Witness:
    """Explicit elements certifying a Generates rule, with their claimed forms."""

    kind: str
    elements: tuple[tuple[str, Perm], ...]
    claims: tuple[tuple[str, tuple], ...]
    aux: tuple[tuple[str, int], ...]

    def element(self, name: str) -> Perm:
        return dict(self.elements)[name]

    def claim(self, name: str) -> tuple:
        return dict(self.claims)[name]

    def aux_value(self, name: str) -> int:
        return dict(self.aux)[name]


def left_rotation(n: int) -> Perm:
    """r_n r_{n-1}, the n-cycle sending x to x + 1 (mod n)."""
    return word_eval(ReversalWord(n, (n, n - 1)))


def right_rotation(n: int) -> Perm:
    """r_{n-1} r_n, the inverse rotation."""
    return word_eval(ReversalWord(n, (n - 1, n)))


def eight_factor_product(n: int, k: int) -> Perm:
    """r_k L r_k L r_k R r_k R with L = r_n r_{n-1}, R = r_{n-1} r_n.

    Evaluates to the 3-cycle (1 k k+2) for every 2 <= k <= n - 2.
    """
    w = (k, n, n - 1, k, n, n - 1, k, n - 1, n, k, n - 1, n)
    return word_eval(ReversalWord(n, w))


def _segment(start: int, step: int, last: int) -> list[int]:
    if last < start:
        return []
    return list(range(start, last + 1, step))


def sigma_k2_claimed_cycle(n: int) -> tuple[int, ...]:
    """Claimed cycle of r_n r_{n-3} r_2 for n = 1 (mod 6)."""
    s = n // 6
    return tuple([1] + _segment(5, 3, 6 * s - 1)
                 + _segment(3, 3, 6 * s)
                 + [2] + _segment(4, 3, 6 * s + 1))


def sigma1_k3_claimed_cycle(n: int) -> tuple[int, ...]:
    """Claimed cycle of r_n r_{n-3} r_3 for n = 1 (mod 6)."""
    s = n // 6
    return tuple([1] + _segment(6, 3, 6 * s)
                 + [2] + _segment(5, 3, 6 * s - 1)
                 + [3, 4] + _segment(7, 3, 6 * s + 1))


def sigma2_k3_claimed_cycle(n: int) -> tuple[int, ...]:
    """Claimed cycle of r_n r_{n-3} r_3 for n = 5 (mod 6)."""
    s = n // 6
    return tuple([1] + _segment(6, 3, 6 * s + 3)
                 + [3, 4] + _segment(7, 3, 6 * s + 4)
                 + [2] + _segment(5, 3, 6 * s + 5))


def mn2_rotation_cycles(n: int) -> tuple[tuple[int, ...], ...]:
    """Claimed cycles of r_{n-2} r_n: one n-cycle for even n, two cycles of
    lengths (n+1)/2 and (n-1)/2 for odd n."""
    down_odd = tuple(range(n, 0, -2))
    down_even = tuple(range(n - 1, 0, -2))
    if n % 2 == 0:
        return (down_odd + down_even,)
    return (down_odd, down_even)


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise WitnessMismatch(message)


def _ncycle_from_sequence(n: int, seq: tuple[int, ...]) -> Perm:
    return from_cycles(n, (seq,))


def build_generates_witness(t: Triple) -> Optional[Witness]:
    """Reconstruct and verify the explicit witness behind a Generates verdict.

    Returns None for rules resting on previously known special cases
    ({r_n, r_{n-1}, r_2} for every n, {r_n, r_{n-2}, r_2} for odd n and
    {r_n, r_{n-2}, r_3} for even n).  Raises WitnessMismatch when a product
    does not match its claimed form, which would indicate a convention bug.
    """
    v = classify(t)
    if v.status is not Status.GENERATES:
        raise ValueError(f"no witness: {t} is not classified as generating")
    n, m, k = t.n, t.m, t.k

    if v.rule == "k2":
        if m in (n - 1, n - 2):
            return None  # special-case citations
        return _witness_sigma_k2(t)
    if v.rule == "k3":
        if m == n - 2:
            return None  # special-case citation (n even)
        if m == n - 1:
            return _witness_rotation_plus_r3(t)
        if n % 6 == 1:
            return _witness_sigma_k3(t, sigma1_k3_claimed_cycle(n), 4 * (n // 6))
        return _witness_sigma_k3(t, sigma2_k3_claimed_cycle(n), 2 * (n // 6) + 1)
    if v.rule == "mn1":
        return _witness_eight_factor(t)
    if v.rule == "mn2":
        return _witness_power_transposition(t)
    raise ValueError(f"unhandled generating rule {v.rule!r} for {t}")


def _witness_sigma_k2(t: Triple) -> Witness:
    n = t.n
    s = n // 6
    sigma = word_eval(ReversalWord(n, (n, n - 3, 2)))
    claimed = sigma_k2_claimed_cycle(n)
    _expect(sigma == _ncycle_from_sequence(n, claimed),
            f"r_{n} r_{n-3} r_2 does not match its claimed cycle")
    _expect(sigma.cycle_type() == (n,), "claimed cycle is not an n-cycle")
    q = 4 * s
    _expect((sigma ** q).apply(1) == 2, "sigma^4s does not send 1 to 2")
    _expect(math.gcd(q, n) == 1, "gcd(4s, n) != 1")
    _expect(lemma_ncycle_transposition(sigma, 1, 2), "generation lemma failed")
    return Witness(
        kind=NCYCLE_PLUS_TRANSPOSITION,
        elements=(("sigma", sigma), ("transposition", reversal(n, 2))),
        claims=(("sigma", claimed), ("transposition", (1, 2))),
        aux=(("q", q), ("s", s)),
    )


def _witness_sigma_k3(t: Triple, claimed: tuple[int, ...], q: int) -> Witness:
    n = t.n
    sigma = word_eval(ReversalWord(n, (n, n - 3, 3)))
    _expect(sigma == _ncycle_from_sequence(n, claimed),
            f"r_{n} r_{n-3} r_3 does not match its claimed cycle")
    _expect(sigma.cycle_type() == (n,), "claimed cycle is not an n-cycle")
    _expect((sigma ** q).apply(1) == 3, "sigma^q does not send 1 to 3")
    _expect(math.gcd(q, n) == 1, "gcd(q, n) != 1")
    _expect(lemma_ncycle_transposition(sigma, 1, 3), "generation lemma failed")
    return Witness(
        kind=NCYCLE_PLUS_TRANSPOSITION,
        elements=(("sigma", sigma), ("transposition", reversal(n, 3))),
        claims=(("sigma", claimed), ("transposition", (1, 3))),
        aux=(("q", q), ("s", n // 6)),
    )


def _witness_rotation_plus_r3(t: Triple) -> Witness:
    n = t.n
    rot = left_rotation(n)
    _expect(rot.cycle_type() == (n,), "r_n r_{n-1} is not an n-cycle")
    _expect(rot == _ncycle_from_sequence(n, tuple(range(1, n + 1))),
            "r_n r_{n-1} is not the +1 rotation")
    _expect(lemma_ncycle_transposition(rot, 1, 3), "generation lemma failed")
    return Witness(
        kind=NCYCLE_PLUS_TRANSPOSITION,
        elements=(("sigma", rot), ("transposition", reversal(n, 3))),
        claims=(("sigma", tuple(range(1, n + 1))), ("transposition", (1, 3))),
        aux=(("q", 2), ("s", 0)),
    )


def _witness_eight_factor(t: Triple) -> Witness:
    n, k = t.n, t.k
    rot = left_rotation(n)
    _expect(rot == _ncycle_from_sequence(n, tuple(range(1, n + 1))),
            "r_n r_{n-1} is not the +1 rotation")
    prod = eight_factor_product(n, k)
    target = from_cycles(n, ((1, k, k + 2),))
    _expect(prod == target, "eight-factor product is not (1 k k+2)")
    d = math.gcd(math.gcd(k + 1, k - 1), n)
    _expect(d == 1, "gcd(k-1, k+1, n) != 1 on a generating triple")
    outcome = lemma_ncycle_3cycle(n, 1, k, k + 2)
    if n % 2 == 0:
        _expect(outcome == FULL_SYM, "3-cycle lemma did not give the full group")
    else:
        _expect(outcome == ALTERNATING, "3-cycle lemma did not give the alternating group")
        gens = t.generator_set()
        _expect(not grouptest.all_even(gens),
                "no odd generator available to leave the alternating group")
    return Witness(
        kind=THREE_CYCLE,
        elements=(("rotation", rot), ("product", prod)),
        claims=(("product", (1, k, k + 2)),),
        aux=(("d", d),),
    )


def _witness_power_transposition(t: Triple) -> Witness:
    n, k = t.n, t.k
    rot = word_eval(ReversalWord(n, (n - 2, n)))
    claimed_cycles = mn2_rotation_cycles(n)
    _expect(rot == from_cycles(n, claimed_cycles),
            "r_{n-2} r_n does not match its claimed cycle structure")
    if n % 2 == 0:
        e = (k - 3) // 2
        swap = (1, 3)
        mid_type = tuple(sorted((n - 3, 2, 1), reverse=True))
        power = n - 3
    else:
        e = (k - 2) // 2
        swap = (1, 2)
        mid_type = tuple(sorted((n - 2, 2), reverse=True))
        power = n - 2
    mid = (rot ** e) * reversal(n, k)
    _expect(mid.cycle_type() == mid_type,
            f"intermediate element has cycle type {mid.cycle_type()}, wanted {mid_type}")
    trans = mid ** power
    _expect(trans == from_cycles(n, (swap,)),
            f"power does not reduce to the transposition {swap}")
    if n % 2 == 0:
        # rot is an n-cycle with 1 and 3 at coprime cyclic distance
        _expect(lemma_ncycle_transposition(rot, swap[0], swap[1]),
                "generation lemma failed")
    else:
        # rot splits into two cycles of coprime lengths holding 1 and 2; its
        # conjugates of (1 2) link every pair of points across the cycles
        _expect(lemma_connected_transpositions(rot, swap[0], swap[1]),
                "conjugate transpositions do not connect all points")
    return Witness(
        kind=ADJACENT_TRANSPOSITIONS if n % 2 else NCYCLE_PLUS_TRANSPOSITION,
        elements=(("rotation", rot), ("intermediate", mid), ("transposition", trans)),
        claims=(("rotation", claimed_cycles), ("transposition", swap)),
        aux=(("rotation_exponent", e), ("power", power)),
    )


def verify_witness(t: Triple, w: Witness) -> bool:
    """All witness elements are words in the triple's generators and match
    their claimed forms; rebuilding from scratch checks both at once."""
    try:
        rebuilt = build_generates_witness(t)
    except (WitnessMismatch, ValueError):
        return False
    return rebuilt == w

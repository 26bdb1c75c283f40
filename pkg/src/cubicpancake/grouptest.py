"""Orbits, block systems and an exact group-order oracle.

Everything here works on plain generator sets and never looks at how a triple
was classified, so it can serve as an independent cross-check for the
closed-form classifier.  The order oracle is a deterministic Schreier-Sims
base-and-strong-generating-set construction; ``generates_sym`` adds sound
screens (transitivity, parity, primitivity, prime-cycle witnesses) in front of
it so that large scans stay cheap without giving up exactness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .perm import DegreeTooLarge, Perm, identity

MAX_ORACLE_DEGREE = 128
_DIRECT_BSGS_DEGREE = 12  # below this, skip the screens and just build the chain


class NotTransitive(ValueError):
    """The generated group does not act transitively on 1..n."""


class EqualPoints(ValueError):
    """Two distinct points were required."""


class NotNCycle(ValueError):
    """An n-cycle was required."""


class BadOrdering(ValueError):
    """Points violate the required ordering constraint."""


class NotAPartition(ValueError):
    """The given parts do not partition 1..n."""


@dataclass(frozen=True, slots=True)
class GeneratorSet:
    """A duplicate-free set of non-identity generators of equal degree."""

    degree: int
    gens: tuple[Perm, ...]

    def __post_init__(self) -> None:
        seen = set()
        for g in self.gens:
            if g.degree != self.degree:
                raise ValueError(
                    f"generator degree {g.degree} != {self.degree}")
            if g.is_identity():
                raise ValueError("identity is not allowed as a generator")
            if g.images in seen:
                raise ValueError(f"duplicate generator {g.to_text()}")
            seen.add(g.images)
        if not self.gens:
            raise ValueError("empty generator set")


def generator_set(gens: Iterable[Perm]) -> GeneratorSet:
    """Build a :class:`GeneratorSet`, dropping repeats (order preserved)."""
    unique: list[Perm] = []
    seen: set[tuple[int, ...]] = set()
    for g in gens:
        if g.images not in seen:
            seen.add(g.images)
            unique.append(g)
    if not unique:
        raise ValueError("empty generator set")
    return GeneratorSet(unique[0].degree, tuple(unique))


# ---------------------------------------------------------------------------
# orbits and block systems
# ---------------------------------------------------------------------------

def orbit_of(gens: GeneratorSet, x: int) -> frozenset[int]:
    """The orbit of x under the generated group, by closure in point space."""
    if not 1 <= x <= gens.degree:
        raise ValueError(f"point {x} outside 1..{gens.degree}")
    images = [g.images for g in gens.gens]
    seen = {x}
    stack = [x]
    while stack:
        y = stack.pop()
        for img in images:
            z = img[y - 1]
            if z not in seen:
                seen.add(z)
                stack.append(z)
    return frozenset(seen)


def is_transitive(gens: GeneratorSet) -> bool:
    return len(orbit_of(gens, 1)) == gens.degree


@dataclass(frozen=True, slots=True)
class BlockPartition:
    """A partition of 1..n into parts, each listed sorted, parts sorted by min."""

    degree: int
    parts: tuple[tuple[int, ...], ...]

    def is_trivial(self) -> bool:
        return len(self.parts) == 1 or all(len(p) == 1 for p in self.parts)

    def part_of(self, x: int) -> tuple[int, ...]:
        for p in self.parts:
            if x in p:
                return p
        raise ValueError(f"point {x} not covered")


def _normalize_parts(degree: int, classes: dict[int, set[int]]) -> BlockPartition:
    parts = sorted((tuple(sorted(c)) for c in classes.values()), key=lambda p: p[0])
    return BlockPartition(degree, tuple(parts))


def minimal_block(gens: GeneratorSet, a: int, b: int) -> BlockPartition:
    """Finest G-congruence placing a and b in the same class.

    Union-find closure: whenever two points are identified, their images under
    every generator are identified as well.  Requires a transitive action.
    """
    n = gens.degree
    if a == b:
        raise EqualPoints(f"need two distinct points, got {a} twice")
    if not (1 <= a <= n and 1 <= b <= n):
        raise ValueError(f"points {a},{b} outside 1..{n}")
    if not is_transitive(gens):
        raise NotTransitive("minimal_block requires a transitive action")

    parent = list(range(n + 1))

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:  # path compression
            parent[x], x = root, parent[x]
        return root

    queue = [b]
    parent[find(b)] = find(a)
    images = [g.images for g in gens.gens]
    while queue:
        x = queue.pop()
        rx = find(x)
        for img in images:
            gx, grx = img[x - 1], img[rx - 1]
            fa, fb = find(gx), find(grx)
            if fa != fb:
                parent[fa] = fb
                queue.append(fa)
    classes: dict[int, set[int]] = {}
    for x in range(1, n + 1):
        classes.setdefault(find(x), set()).add(x)
    return _normalize_parts(n, classes)


def find_nontrivial_block_system(gens: GeneratorSet) -> Optional[BlockPartition]:
    """A nontrivial block system of a transitive action, or None if primitive."""
    n = gens.degree
    for b in range(2, n + 1):
        part = minimal_block(gens, 1, b)
        if not part.is_trivial():
            return part
    return None


# ---------------------------------------------------------------------------
# invariant verification (used by certificate checks)
# ---------------------------------------------------------------------------

def verify_invariant_set(gens: GeneratorSet, delta: frozenset[int] | set[int]) -> bool:
    """True iff delta is a proper nonempty subset mapped onto itself by every generator."""
    n = gens.degree
    delta = frozenset(delta)
    if not delta or len(delta) >= n:
        return False
    if any(not 1 <= x <= n for x in delta):
        return False
    for g in gens.gens:
        img = g.images
        if any(img[x - 1] not in delta for x in delta):
            return False
    return True


def verify_block_partition(gens: GeneratorSet, partition: BlockPartition) -> bool:
    """True iff every generator maps every part onto some part, nontrivially.

    Under a transitive action the parts are additionally required to share one
    size (blocks of an imprimitive transitive group are equal-sized); for
    intransitive invariants the sizes are free.
    """
    n = gens.degree
    covered = [x for p in partition.parts for x in p]
    if sorted(covered) != list(range(1, n + 1)):
        raise NotAPartition(f"parts do not partition 1..{n}")
    if partition.is_trivial():
        return False
    part_index = {}
    for i, p in enumerate(partition.parts):
        for x in p:
            part_index[x] = i
    for g in gens.gens:
        img = g.images
        for p in partition.parts:
            targets = {part_index[img[x - 1]] for x in p}
            if len(targets) != 1:
                return False
    if is_transitive(gens):
        sizes = {len(p) for p in partition.parts}
        if len(sizes) != 1:
            return False
    return True


def all_even(gens: GeneratorSet) -> bool:
    return all(g.is_even() for g in gens.gens)


# ---------------------------------------------------------------------------
# generation lemmas for an n-cycle plus a short cycle
# ---------------------------------------------------------------------------

def lemma_ncycle_transposition(sigma: Perm, a: int, b: int) -> bool:
    """Whether <sigma, (a b)> is the full symmetric group, for an n-cycle sigma.

    Holds iff gcd(q, n) = 1 where sigma^q sends a to b.
    """
    n = sigma.degree
    if sigma.cycle_type() != (n,):
        raise NotNCycle(f"cycle type {sigma.cycle_type()} is not an n-cycle")
    if a == b:
        raise EqualPoints("transposition needs distinct points")
    if not (1 <= a <= n and 1 <= b <= n):
        raise ValueError(f"points {a},{b} outside 1..{n}")
    q = 0
    x = a
    while x != b:
        x = sigma.images[x - 1]
        q += 1
    return math.gcd(q, n) == 1


FULL_SYM = "full_sym"
ALTERNATING = "alternating"
SMALLER = "smaller"


def lemma_ncycle_3cycle(n: int, a: int, c: int, b: int) -> str:
    """Classify <(1 2 .. n), (a b c)> with 1 <= a < c < b <= n.

    Returns ``full_sym`` (n even, gcd(b-a, c-a, n) = 1), ``alternating``
    (n odd, same gcd condition) or ``smaller`` (gcd > 1).
    """
    if not 1 <= a < c < b <= n:
        raise BadOrdering(f"need 1 <= a < c < b <= n, got a={a}, c={c}, b={b}")
    if math.gcd(b - a, c - a, n) != 1:
        return SMALLER
    return FULL_SYM if n % 2 == 0 else ALTERNATING


def lemma_connected_transpositions(sigma: Perm, a: int, b: int) -> bool:
    """Whether the conjugates of (a b) under powers of sigma generate Sym_n.

    They do iff the graph on 1..n with edges {sigma^i(a), sigma^i(b)} is
    connected (a set of transpositions generates the symmetric group exactly
    when its graph is a connected spanning graph).
    """
    n = sigma.degree
    if a == b:
        raise EqualPoints("transposition needs distinct points")
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    x, y = a, b
    merged = 0
    for _ in range(sigma.order()):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry
            merged += 1
            if merged == n - 1:
                return True
        x = sigma.images[x - 1]
        y = sigma.images[y - 1]
    return merged == n - 1


# ---------------------------------------------------------------------------
# deterministic Schreier-Sims
# ---------------------------------------------------------------------------

def _compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """(a o b)(i) = a[b[i]] on 0-based tuples; the right factor acts first."""
    return tuple(map(a.__getitem__, b))


def _invert(a: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(a)
    for i, v in enumerate(a):
        inv[v] = i
    return tuple(inv)


class _Level:
    __slots__ = ("point", "gens", "gen_invs", "u", "w", "orbit_order", "tree")

    def __init__(self, point: int, id_perm: tuple[int, ...]):
        self.point = point
        self.gens: list[tuple[int, ...]] = []
        self.gen_invs: list[tuple[int, ...]] = []
        # u[x] maps point -> x; w[x] is its inverse
        self.u = {point: id_perm}
        self.w = {point: id_perm}
        self.orbit_order = [point]
        # tree[y] = (x, i) when y was first reached as gens[i] applied to x;
        # for that pair u[y] == gens[i] o u[x] holds by construction
        self.tree: dict[int, tuple[int, int]] = {}


class _Chain:
    """Mutable stabilizer chain; base points are chosen greedily (smallest moved)."""

    def __init__(self, n: int):
        self.n = n
        self.id_perm = tuple(range(n))
        self.levels: list[_Level] = []

    def order_bound(self) -> int:
        b = 1
        for lv in self.levels:
            b *= len(self.orbit_order(lv))
        return b

    @staticmethod
    def orbit_order(lv: _Level) -> list[int]:
        return lv.orbit_order

    def new_level(self, g: tuple[int, ...]) -> None:
        point = next(i for i, v in enumerate(g) if v != i)
        self.levels.append(_Level(point, self.id_perm))

    def add_gen(self, idx: int, g: tuple[int, ...]) -> None:
        lv = self.levels[idx]
        lv.gens.append(g)
        g_inv = _invert(g)
        lv.gen_invs.append(g_inv)
        gi = len(lv.gens) - 1
        # sweep existing orbit with the new generator, then close under all
        frontier = []
        for x in list(lv.orbit_order):
            y = g[x]
            if y not in lv.u:
                lv.u[y] = _compose(g, lv.u[x])
                lv.w[y] = _compose(lv.w[x], g_inv)
                lv.orbit_order.append(y)
                lv.tree[y] = (x, gi)
                frontier.append(y)
        while frontier:
            nxt = []
            for x in frontier:
                for si, (s, s_inv) in enumerate(zip(lv.gens, lv.gen_invs)):
                    y = s[x]
                    if y not in lv.u:
                        lv.u[y] = _compose(s, lv.u[x])
                        lv.w[y] = _compose(lv.w[x], s_inv)
                        lv.orbit_order.append(y)
                        lv.tree[y] = (x, si)
                        nxt.append(y)
            frontier = nxt

    def sift(self, g: tuple[int, ...], start: int) -> tuple[tuple[int, ...], int]:
        """Strip g through levels[start:]; returns (residue, drop-out index)."""
        for idx in range(start, len(self.levels)):
            lv = self.levels[idx]
            x = g[lv.point]
            if x == lv.point:
                continue
            wx = lv.w.get(x)
            if wx is None:
                return g, idx
            g = _compose(wx, g)
        return g, len(self.levels)

    def process_level(self, i: int) -> Optional[int]:
        """Sift all Schreier generators of level i; None when all strip to identity.

        On failure the residue is installed at levels i+1..j and j is returned.
        """
        lv = self.levels[i]
        idp = self.id_perm
        for x in lv.orbit_order:
            ux = lv.u[x]
            for si, s in enumerate(lv.gens):
                y = s[x]
                if lv.tree.get(y) == (x, si):
                    continue  # tree edge, Schreier generator is trivial
                g = _compose(lv.w[y], _compose(s, ux))
                if g == idp:
                    continue
                h, j = self.sift(g, i + 1)
                if h == idp:
                    continue
                if j == len(self.levels):
                    self.new_level(h)
                for l in range(i + 1, j + 1):
                    self.add_gen(l, h)
                return j
        return None


def _build_chain(raw_gens: list[tuple[int, ...]], n: int,
                 stop_at_bound: Optional[int] = None) -> tuple[_Chain, bool]:
    """Run the deterministic construction; returns (chain, complete).

    If ``stop_at_bound`` is given, stop as soon as the transversal-product
    lower bound reaches it (the bound is always a divisor-free lower bound on
    the true order, since distinct transversal products are distinct group
    elements); ``complete`` is False in that case.
    """
    chain = _Chain(n)
    for g in raw_gens:
        if g == chain.id_perm:
            continue
        # place g at level 0 and at every deeper level whose base prefix it fixes
        if not chain.levels:
            chain.new_level(g)
        chain.add_gen(0, g)
        idx = 1
        while idx < len(chain.levels) and g[chain.levels[idx - 1].point] == chain.levels[idx - 1].point:
            chain.add_gen(idx, g)
            idx += 1
    if not chain.levels:
        return chain, True
    if stop_at_bound is not None and chain.order_bound() >= stop_at_bound:
        return chain, False
    i = len(chain.levels) - 1
    while i >= 0:
        j = chain.process_level(i)
        if j is None:
            i -= 1
        else:
            i = j
            if stop_at_bound is not None and chain.order_bound() >= stop_at_bound:
                return chain, False
    return chain, True


def group_order(gens: GeneratorSet) -> int:
    """Exact order of the generated group (arbitrary precision).

    Deterministic Schreier-Sims with sifting; the only shortcut taken is
    stopping once the transversal-product lower bound already pins the answer
    (bound = n! forces the full symmetric group; bound = n!/2 with all-even
    generators forces the alternating group).
    """
    n = gens.degree
    if n > MAX_ORACLE_DEGREE:
        raise DegreeTooLarge(f"oracle degree bound is {MAX_ORACLE_DEGREE}")
    raw = [tuple(v - 1 for v in g.images) for g in gens.gens]
    full = math.factorial(n)
    even_only = all_even(gens)
    target = full // 2 if even_only else full
    chain, complete = _build_chain(raw, n, stop_at_bound=target)
    bound = chain.order_bound()
    if not complete:
        # bound >= target: the subgroup is pinned between bound and its ceiling
        if even_only:
            return full // 2
        if bound > full // 2:
            return full
        # bound == n!/2 and an odd generator exists, so the group is not
        # contained in the alternating group and has order n!
        return full
    return bound


def generates_sym(gens: GeneratorSet) -> bool:
    """True iff the generated group is the full symmetric group.

    For small degrees this is settled directly by the chain construction.
    For larger degrees a cascade of sound screens (intransitive, all-even,
    imprimitive, isolated-cycle witness inside a primitive group) usually
    decides before the chain is needed.
    """
    n = gens.degree
    if n > MAX_ORACLE_DEGREE:
        raise DegreeTooLarge(f"oracle degree bound is {MAX_ORACLE_DEGREE}")
    if n <= _DIRECT_BSGS_DEGREE:
        return group_order(gens) == math.factorial(n)
    if not is_transitive(gens):
        return False
    if all_even(gens):
        return False
    if find_nontrivial_block_system(gens) is not None:
        return False
    # Primitive and containing an odd permutation.  If some product has a
    # cycle of length l <= n-3 coprime to all its other cycle lengths, then
    # a power of it is a single l-cycle fixing at least three points, and a
    # primitive group containing such a cycle must contain the alternating
    # group (Jordan for prime l, the cycle classification theorem in
    # general), hence equals Sym_n here.
    if _isolated_cycle_witness(gens, 8, 4000):
        return True
    if _isolated_cycle_witness(gens, 14, 16384):
        return True
    return group_order(gens) == math.factorial(n)


def _isolated_cycle_witness(gens: GeneratorSet, max_len: int, cap: int) -> bool:
    """Search products of length <= max_len for a cycle length 2..n-3 that is
    coprime to every other cycle length of the same element."""
    n = gens.degree
    raw = [tuple(v - 1 for v in g.images) for g in gens.gens]
    idp = tuple(range(n))

    def has_witness(p: tuple[int, ...]) -> bool:
        lengths = _cycle_lengths(p)
        for i, length in enumerate(lengths):
            if not 2 <= length <= n - 3:
                continue
            if all(math.gcd(length, other) == 1
                   for j, other in enumerate(lengths) if j != i):
                return True
        return False

    frontier = [(g, i) for i, g in enumerate(raw)]
    for _ in range(max_len - 1):
        nxt = []
        for p, last in frontier:
            if p != idp and has_witness(p):
                return True
            for i, g in enumerate(raw):
                if i == last:
                    continue
                nxt.append((_compose(p, g), i))
        frontier = nxt
        if len(frontier) > cap:
            break
    return any(p != idp and has_witness(p) for p, _ in frontier)


def _cycle_lengths(p: tuple[int, ...]) -> list[int]:
    seen = [False] * len(p)
    out = []
    for s in range(len(p)):
        if seen[s]:
            continue
        ln = 0
        x = s
        while not seen[x]:
            seen[x] = True
            x = p[x]
            ln += 1
        out.append(ln)
    return out


# ---------------------------------------------------------------------------
# JSON forms for invariants
# ---------------------------------------------------------------------------

def invariant_set_to_json(delta: frozenset[int]) -> dict:
    return {"type": "invariant_set", "data": sorted(delta)}


def block_partition_to_json(partition: BlockPartition) -> dict:
    return {"type": "block_partition", "data": [list(p) for p in partition.parts]}

"""Cubic Cayley graphs on three prefix reversals.

The graph CP(n; m, k) has the n! permutations as vertices and an edge
{v, v r_i} for each i in {n, m, k}.  All three generators are involutions, so
the graph is simple, cubic, and vertex transitive; in particular the
eccentricity of the identity equals the diameter, and the cycles through the
identity determine the girth.

Three computations are provided:

* :func:`bfs_levels` / :func:`diameter` - breadth first search over ranked
  permutations, vectorized with numpy (feasible through degree 11);
* :func:`girth_classes` - the girth together with every equivalence class of
  shortest cycle words up to rotation and reversal, found by iterative
  deepening over non-backtracking reversal words;
* :func:`hamiltonian_cycle` - a depth-first edge-assignment search with
  forced-edge propagation; it either returns a verified Hamiltonian cycle,
  proves there is none, or gives up when its node budget runs out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import grouptest
from .classifier import Triple
from .perm import Perm, ReversalWord, reversal, word_eval

MAX_BFS_DEGREE = 11
GIRTH_CAP = 32

_CHUNK = 1 << 19
_UNSEEN = np.uint8(255)


class DegreeTooLargeForBFS(ValueError):
    pass


class Disconnected(RuntimeError):
    """The triple does not generate, so the Cayley graph is disconnected."""


class BudgetExceeded(RuntimeError):
    pass


class NotCyclicallyReduced(ValueError):
    """Cycle word has equal adjacent letters (cyclically)."""


# ---------------------------------------------------------------------------
# vectorized Lehmer ranking
# ---------------------------------------------------------------------------

def _rank_rows(rows: np.ndarray) -> np.ndarray:
    """Lexicographic rank of each row, rows holding 0-based permutations."""
    b, n = rows.shape
    rank = np.zeros(b, dtype=np.int64)
    for j in range(n - 1):  # the final factorial-base digit is always zero
        smaller = (rows[:, j + 1:] < rows[:, j:j + 1]).sum(axis=1)
        rank = rank * (n - j) + smaller
    return rank

def _unrank_rows(ranks: np.ndarray, n: int) -> np.ndarray:
    """Inverse of :func:`_rank_rows`; returns 0-based rows of width n."""
    b = ranks.shape[0]
    out = np.zeros((b, n), dtype=np.int8)
    rem = ranks.astype(np.int64).copy()
    for j in range(n - 1, -1, -1):
        # factorial-base digit for column j, extracted least significant first
        out[:, j] = rem % (n - j)
        rem //= (n - j)
    for j in range(n - 2, -1, -1):
        tail = out[:, j + 1:]
        tail += (tail >= out[:, j:j + 1])
    return out


# ---------------------------------------------------------------------------
# graph object
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class CubicPancakeGraph:
    triple: Triple

    @property
    def indices(self) -> tuple[int, int, int]:
        return (self.triple.n, self.triple.m, self.triple.k)

    @property
    def vertex_count(self) -> int:
        return math.factorial(self.triple.n)

    def neighbors(self, v: Perm) -> tuple[Perm, ...]:
        n = self.triple.n
        return tuple(v * reversal(n, i) for i in self.indices)

    def is_connected(self) -> bool:
        return grouptest.generates_sym(self.triple.generator_set())


@dataclass(frozen=True, slots=True)
class BfsSummary:
    vertices: int
    diameter: int
    level_sizes: tuple[int, ...]


def bfs_levels(graph: CubicPancakeGraph) -> BfsSummary:
    """Distance profile from the identity over the whole graph.

    Raises Disconnected when the triple does not generate (the search would
    only cover the subgroup it does generate) and DegreeTooLargeForBFS beyond
    degree 11, where the n!-sized distance table stops being reasonable.
    """
    n, m, k = graph.indices
    if n > MAX_BFS_DEGREE:
        raise DegreeTooLargeForBFS(f"n = {n} exceeds {MAX_BFS_DEGREE}")
    if not graph.is_connected():
        raise Disconnected(f"{graph.triple} does not generate the symmetric group")
    total = math.factorial(n)
    dist = np.full(total, _UNSEEN, dtype=np.uint8)
    dist[0] = 0
    frontier = np.zeros(1, dtype=np.int64)
    sizes = [1]
    level = 0
    while frontier.size:
        level += 1
        nxt_parts = []
        for lo in range(0, frontier.size, _CHUNK):
            rows = _unrank_rows(frontier[lo:lo + _CHUNK], n)
            for i in (n, m, k):
                flipped = rows.copy()
                flipped[:, :i] = rows[:, i - 1::-1]
                nxt_parts.append(_rank_rows(flipped))
        cand = np.unique(np.concatenate(nxt_parts))
        fresh = cand[dist[cand] == _UNSEEN]
        dist[fresh] = level
        frontier = fresh
        if frontier.size:
            sizes.append(int(frontier.size))
    if sum(sizes) != total:
        raise Disconnected("search did not reach every permutation")
    return BfsSummary(total, len(sizes) - 1, tuple(sizes))


def diameter(graph: CubicPancakeGraph) -> int:
    return bfs_levels(graph).diameter


# ---------------------------------------------------------------------------
# girth and shortest cycle words
# ---------------------------------------------------------------------------

def canonical_cycle_word(word: tuple[int, ...]) -> tuple[int, ...]:
    """Largest rotation of the word or its reversal; the class representative.

    >>> canonical_cycle_word((4, 3, 4, 2))
    (4, 3, 4, 2)
    >>> canonical_cycle_word((3, 4, 2, 4))
    (4, 3, 4, 2)
    >>> canonical_cycle_word((2, 4, 3, 4))
    (4, 3, 4, 2)
    """
    if len(word) < 3:
        raise NotCyclicallyReduced("cycle words have length at least 3")
    for i, j in zip(word, word[1:] + word[:1]):
        if i == j:
            raise NotCyclicallyReduced(f"adjacent equal letters in {word}")
    best = None
    for w in (word, word[::-1]):
        for s in range(len(w)):
            rot = w[s:] + w[:s]
            if best is None or rot > best:
                best = rot
    return best


def format_cycle_class(word: tuple[int, ...]) -> str:
    """Compact text form, e.g. (8.4)^4 for the word 8.4.8.4.8.4.8.4."""
    length = len(word)
    for period in range(1, length + 1):
        if length % period == 0 and word == word[:period] * (length // period):
            reps = length // period
            base = ".".join(str(i) for i in word[:period])
            return base if reps == 1 else f"({base})^{reps}"
    raise AssertionError("unreachable: full length always divides")


def _reversal_neighbors(state: tuple[int, ...], indices: tuple[int, int, int]):
    for i in indices:
        yield i, state[i - 1::-1] + state[i:]


@dataclass(frozen=True, slots=True)
class GirthResult:
    girth: int
    classes: tuple[tuple[int, ...], ...]

    def class_labels(self) -> tuple[str, ...]:
        return tuple(format_cycle_class(w) for w in self.classes)


def girth_classes(graph: CubicPancakeGraph, cap: int = GIRTH_CAP) -> GirthResult:
    """Girth and all shortest-cycle word classes of the identity component.

    By vertex transitivity the identity component determines the girth of the
    whole graph, so disconnected (non-generating) triples are fine here.
    Iterative deepening over cyclically reduced non-backtracking words with a
    distance-map bound; raises BudgetExceeded past ``cap``.
    """
    indices = graph.indices
    n = indices[0]
    start = tuple(range(n))

    # distances from the identity, grown lazily one radius at a time
    dist: dict[tuple[int, ...], int] = {start: 0}
    frontier = [start]
    radius = 0

    def grow_to(r: int) -> None:
        nonlocal radius, frontier
        while radius < r and frontier:
            nxt = []
            for st in frontier:
                for _, nb in _reversal_neighbors(st, indices):
                    if nb not in dist:
                        dist[nb] = radius + 1
                        nxt.append(nb)
            frontier = nxt
            radius += 1

    found: set[tuple[int, ...]] = set()

    def dfs(state: tuple[int, ...], word: list[int], target: int) -> None:
        depth = len(word)
        if depth == target:
            if state == start:
                found.add(canonical_cycle_word(tuple(word)))
            return
        rem = target - depth
        d = dist.get(state)
        if d is not None:
            if d > rem:
                return
        elif rem <= radius:
            return
        for i, nb in _reversal_neighbors(state, indices):
            if word and i == word[-1]:
                continue
            if rem == 1 and i == word[0]:
                continue  # keep the word cyclically reduced
            word.append(i)
            dfs(nb, word, target)
            word.pop()

    for target in range(3, cap + 1):
        grow_to((target + 1) // 2)
        found.clear()
        dfs(start, [], target)
        if found:
            return GirthResult(target, tuple(sorted(found, reverse=True)))
    raise BudgetExceeded(f"no cycle of length <= {cap} through the identity")


# ---------------------------------------------------------------------------
# Hamiltonian cycles
# ---------------------------------------------------------------------------

_UNDEC, _IN, _OUT = 0, 1, 2


@dataclass(frozen=True, slots=True)
class HamiltonianResult:
    # True with a verified cycle word, False for a completed refutation,
    # None when the node budget ran out first
    hamiltonian: Optional[bool]
    word: Optional[tuple[int, ...]]
    nodes: int


def _adjacency(n: int, indices: tuple[int, int, int]) -> np.ndarray:
    total = math.factorial(n)
    adj = np.empty((total, 3), dtype=np.int64)
    for lo in range(0, total, _CHUNK):
        ranks = np.arange(lo, min(lo + _CHUNK, total), dtype=np.int64)
        rows = _unrank_rows(ranks, n)
        for c, i in enumerate(indices):
            flipped = rows.copy()
            flipped[:, :i] = rows[:, i - 1::-1]
            adj[lo:lo + _CHUNK, c] = _rank_rows(flipped)
    return adj


# ---------------------------------------------------------------------------
# Hamiltonian cycles, phase 1: two-factor cycle merging
# ---------------------------------------------------------------------------
#
# Every prefix reversal is an involution, so each of the three edge classes
# is a perfect matching, and dropping one class leaves a 2-factor: a disjoint
# union of cycles alternating between the two kept classes.  The dropped
# class re-enters through toggles.  For a kept class g, the edges labelled
# (drop, g, drop, g, ...) close up into alternating cycles that partition the
# vertex set; toggling one such cycle swaps its g-edges for its drop-edges
# and leaves every vertex with degree two.  A toggle whose removed edges lie
# on distinct cycles of the current 2-factor splices those cycles into one,
# so greedy descent on the component count, with a few seeded sideways moves
# to slip off plateaus, tends to reach a single Hamiltonian cycle quickly.
# The phase is heuristic: on stagnation it gives up and the exact search of
# _HamSearch takes over.

_MERGE_STAGNATION = 60
_MERGE_SWEEP_CAP = 2000
_MERGE_SIDEWAYS = 400


def _alternating_cycles(nbr_drop: np.ndarray, nbr_keep: np.ndarray
                        ) -> list[np.ndarray]:
    """Partition vertices into cycles alternating drop-edges and keep-edges."""
    seen = np.zeros(nbr_drop.shape[0], dtype=bool)
    cycles = []
    for s in range(nbr_drop.shape[0]):
        if seen[s]:
            continue
        seq = []
        v = s
        while True:
            seq.append(v)
            seen[v] = True
            v = int(nbr_drop[v])
            seq.append(v)
            seen[v] = True
            v = int(nbr_keep[v])
            if v == s:
                break
        cycles.append(np.array(seq, dtype=np.int64))
    return cycles


def _two_factor_labels(f: np.ndarray, labels: np.ndarray) -> int:
    """Label the cycles of the 2-regular neighbor table f; returns the count."""
    labels.fill(-1)
    count = 0
    for s in range(labels.shape[0]):
        if labels[s] >= 0:
            continue
        v, prev = s, -1
        while labels[v] < 0:
            labels[v] = count
            a, b = int(f[v, 0]), int(f[v, 1])
            prev, v = v, (a if a != prev else b)
        count += 1
    return count


def _toggle(f: np.ndarray, cycle: np.ndarray, old: np.ndarray,
            new: np.ndarray) -> None:
    for i, v in enumerate(cycle):
        if f[v, 0] == old[i]:
            f[v, 0] = new[i]
        else:
            f[v, 1] = new[i]


def _merge_with_matching(nbr_drop: np.ndarray, nbr_a: np.ndarray,
                         nbr_b: np.ndarray, budget: "_NodeBudget",
                         seed: int) -> Optional[np.ndarray]:
    """Greedy cycle merging with one fixed choice of dropped class."""
    total = nbr_drop.shape[0]
    f = np.stack([nbr_a, nbr_b], axis=1)
    labels = np.empty(total, dtype=np.int64)
    ncomp = _two_factor_labels(f, labels)
    toggles = [(c, nbr_a) for c in _alternating_cycles(nbr_drop, nbr_a)]
    toggles += [(c, nbr_b) for c in _alternating_cycles(nbr_drop, nbr_b)]
    rng = np.random.default_rng(seed)
    sideways_left = _MERGE_SIDEWAYS
    stagnant = 0
    for _ in range(_MERGE_SWEEP_CAP):
        if ncomp == 1 or stagnant > _MERGE_STAGNATION:
            break
        improved = False
        for j in rng.permutation(len(toggles)):
            if ncomp == 1:
                break
            cycle, nbr_keep = toggles[int(j)]
            keep = nbr_keep[cycle]
            drop = nbr_drop[cycle]
            f0, f1 = f[cycle, 0], f[cycle, 1]
            # the toggle applies when one side's edges are all present and
            # the other side's all absent, in either orientation
            if np.all((f0 == keep) | (f1 == keep)) and \
                    np.all((f0 != drop) & (f1 != drop)):
                old, new = keep, drop
            elif np.all((f0 == drop) | (f1 == drop)) and \
                    np.all((f0 != keep) & (f1 != keep)):
                old, new = drop, keep
            else:
                continue
            if len(set(labels[cycle].tolist())) < 2:
                continue
            budget.spend(1)
            _toggle(f, cycle, old, new)
            nc = _two_factor_labels(f, labels)
            if nc < ncomp:
                ncomp = nc
                improved = True
            elif nc == ncomp and sideways_left > 0 and rng.integers(4) == 0:
                sideways_left -= 1
            else:
                _toggle(f, cycle, new, old)
                _two_factor_labels(f, labels)
        stagnant = 0 if improved else stagnant + 1
        if not improved and ncomp > 1:
            # random applicable toggle regardless of effect, to reshuffle
            for j in rng.permutation(len(toggles)):
                cycle, nbr_keep = toggles[int(j)]
                keep = nbr_keep[cycle]
                drop = nbr_drop[cycle]
                f0, f1 = f[cycle, 0], f[cycle, 1]
                if np.all((f0 == keep) | (f1 == keep)) and \
                        np.all((f0 != drop) & (f1 != drop)):
                    old, new = keep, drop
                elif np.all((f0 == drop) | (f1 == drop)) and \
                        np.all((f0 != keep) & (f1 != keep)):
                    old, new = drop, keep
                else:
                    continue
                budget.spend(1)
                _toggle(f, cycle, old, new)
                ncomp = _two_factor_labels(f, labels)
                break
            else:
                return None
    if ncomp != 1:
        return None
    seq = np.empty(total, dtype=np.int64)
    seq[0] = 0
    prev, v = -1, 0
    for t in range(1, total):
        a, b = int(f[v, 0]), int(f[v, 1])
        prev, v = v, (a if a != prev else b)
        seq[t] = v
    return seq


class _NodeBudget:
    """Shared work counter for both search phases."""

    def __init__(self, limit: int):
        self.limit = limit
        self.nodes = 0

    def spend(self, amount: int) -> None:
        self.nodes += amount
        if self.nodes > self.limit:
            raise BudgetExceeded(f"node budget {self.limit} exhausted")

    @property
    def remaining(self) -> int:
        return self.limit - self.nodes


def _merge_hamiltonian(adj: np.ndarray, indices: tuple[int, int, int],
                       budget: "_NodeBudget") -> Optional[np.ndarray]:
    """Try the cycle-merge phase with each class as the dropped one.

    Classes are tried in order of fewest 2-factor components first (long
    coset cycles leave less splicing to do).
    """
    nbrs = {i: adj[:, c] for c, i in enumerate(indices)}
    scratch = np.empty(adj.shape[0], dtype=np.int64)

    def component_count(drop: int) -> int:
        a, b = (i for i in indices if i != drop)
        return _two_factor_labels(np.stack([nbrs[a], nbrs[b]], axis=1),
                                  scratch)

    for drop in sorted(indices, key=component_count):
        a, b = (i for i in indices if i != drop)
        seq = _merge_with_matching(nbrs[drop], nbrs[a], nbrs[b], budget,
                                   seed=0)
        if seq is not None:
            return seq
    return None


class _HamSearch:
    """Edge-state backtracking with forced-edge propagation.

    Each edge is IN, OUT, or undecided.  A vertex must end with exactly two
    IN edges, so two IN edges force the third OUT, and one remaining
    undecided edge with fewer than two IN forces it IN.  A union-find over
    IN-path segments rejects premature cycles.  Branching extends the most
    recently touched path endpoint first, trying IN before OUT.
    """

    def __init__(self, adj: np.ndarray, budget: int):
        self.adj = adj
        self.nv = adj.shape[0]
        self.budget = budget
        self.nodes = 0
        # canonical edge id: (v, c) with v < adj[v, c]
        self.eid = {}
        edges = []
        for v in range(self.nv):
            for c in range(3):
                w = int(adj[v, c])
                if v < w:
                    self.eid[(v, w)] = len(edges)
                    edges.append((v, w))
        self.edges = edges
        self.state = bytearray(len(edges))
        self.deg_in = bytearray(self.nv)
        self.deg_out = bytearray(self.nv)
        self.in_count = 0
        # union-find without path compression so unions can be undone
        self.parent = list(range(self.nv))
        self.size = [1] * self.nv
        self.trail: list[tuple] = []
        self.endpoints: list[int] = []

    def edge_id(self, v: int, w: int) -> int:
        return self.eid[(v, w) if v < w else (w, v)]

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            x = p[x]
        return x

    def _set(self, e: int, val: int) -> bool:
        """Assign an edge; returns False on contradiction.  Records the trail."""
        if self.state[e] != _UNDEC:
            return self.state[e] == val
        v, w = self.edges[e]
        if val == _IN:
            rv, rw = self.find(v), self.find(w)
            if rv == rw and self.in_count + 1 < self.nv:
                return False  # premature cycle
            if rv != rw:
                if self.size[rv] < self.size[rw]:
                    rv, rw = rw, rv
                self.parent[rw] = rv
                self.size[rv] += self.size[rw]
                self.trail.append(("union", rw, rv))
            self.state[e] = _IN
            self.deg_in[v] += 1
            self.deg_in[w] += 1
            self.in_count += 1
            self.trail.append(("edge", e, _IN))
            self.endpoints.append(v)
            self.endpoints.append(w)
            return self.deg_in[v] <= 2 and self.deg_in[w] <= 2
        self.state[e] = _OUT
        self.deg_out[v] += 1
        self.deg_out[w] += 1
        self.trail.append(("edge", e, _OUT))
        return self.deg_out[v] <= 1 and self.deg_out[w] <= 1

    def _undo_to(self, mark: int) -> None:
        while len(self.trail) > mark:
            tag, a, b = self.trail.pop()
            if tag == "edge":
                e = a
                v, w = self.edges[e]
                if b == _IN:
                    self.deg_in[v] -= 1
                    self.deg_in[w] -= 1
                    self.in_count -= 1
                else:
                    self.deg_out[v] -= 1
                    self.deg_out[w] -= 1
                self.state[e] = _UNDEC
            else:
                child, root = a, b
                self.parent[child] = child
                self.size[root] -= self.size[child]

    def _propagate(self, seeds: list[int]) -> bool:
        queue = list(seeds)
        while queue:
            v = queue.pop()
            ein = self.deg_in[v]
            eout = self.deg_out[v]
            if ein > 2 or eout > 1:
                return False
            if ein == 2 and eout == 0:
                for c in range(3):
                    w = int(self.adj[v, c])
                    e = self.edge_id(v, w)
                    if self.state[e] == _UNDEC:
                        if not self._set(e, _OUT):
                            return False
                        queue.append(w)
            elif eout == 1 and ein < 2:
                for c in range(3):
                    w = int(self.adj[v, c])
                    e = self.edge_id(v, w)
                    if self.state[e] == _UNDEC:
                        if not self._set(e, _IN):
                            return False
                        queue.append(w)
                        queue.append(v)
        return True

    def _pick_edge(self) -> Optional[int]:
        while self.endpoints:
            v = self.endpoints[-1]
            if self.deg_in[v] == 1:
                for c in range(3):
                    e = self.edge_id(v, int(self.adj[v, c]))
                    if self.state[e] == _UNDEC:
                        return e
            self.endpoints.pop()
        # endpoint stack exhausted (fresh start, or stale after undo); any
        # undecided edge keeps the search complete
        for e, s in enumerate(self.state):
            if s == _UNDEC:
                return e
        return None

    def _try(self, e: int, val: int) -> bool:
        v, w = self.edges[e]
        return self._set(e, val) and self._propagate([v, w])

    def _complete(self) -> bool:
        return self.in_count == self.nv and all(d == 2 for d in self.deg_in)

    def search(self) -> bool:
        """Iterative backtracking; True leaves the solved state in place."""
        # frames: (edge, value taken, trail mark, endpoint mark)
        stack: list[tuple[int, int, int, int]] = []
        while True:
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceeded(f"node budget {self.budget} exhausted")
            e = self._pick_edge()
            if e is not None:
                mark, epm = len(self.trail), len(self.endpoints)
                if self._try(e, _IN):
                    stack.append((e, _IN, mark, epm))
                    if self._complete():
                        return True
                    continue
                self._undo_to(mark)
                del self.endpoints[epm:]
            elif self._complete():
                return True
            # dead end: unwind to the deepest frame with an untried branch
            while True:
                if not stack:
                    return False
                e0, val0, mark0, epm0 = stack.pop()
                self._undo_to(mark0)
                del self.endpoints[epm0:]
                if val0 == _OUT:
                    continue  # both branches exhausted here
                self.nodes += 1
                if self.nodes > self.budget:
                    raise BudgetExceeded(f"node budget {self.budget} exhausted")
                if self._try(e0, _OUT):
                    stack.append((e0, _OUT, mark0, epm0))
                    if self._complete():
                        return True
                    break  # resume forward search
                self._undo_to(mark0)
                del self.endpoints[epm0:]

    def cycle_vertices(self) -> list[int]:
        seq = [0]
        prev = -1
        cur = 0
        while True:
            for c in range(3):
                w = int(self.adj[cur, c])
                if w != prev and self.state[self.edge_id(cur, w)] == _IN:
                    prev, cur = cur, w
                    break
            else:
                raise AssertionError("broken cycle")
            if cur == 0:
                return seq
            seq.append(cur)


def hamiltonian_cycle(graph: CubicPancakeGraph,
                      node_budget: int = 2_000_000) -> HamiltonianResult:
    """Search for a Hamiltonian cycle; the refutation side is exact.

    Two phases share the node budget: cycle merging over a two-factor
    (finds cycles fast in practice, cannot refute) and then exhaustive
    edge-state backtracking.  Returns a verified generator word when a
    cycle is found, hamiltonian=False only after the backtracking phase
    completed an exhaustive search, or hamiltonian=None when the budget
    was exhausted (a one-sided failure: nothing is concluded).

    Raises Disconnected when the triple does not generate the symmetric
    group, since the graph then has no spanning cycle to look for.
    """
    n = graph.triple.n
    indices = graph.indices
    if not graph.is_connected():
        raise Disconnected(
            f"{graph.triple} does not generate the symmetric group")
    adj = _adjacency(n, indices)
    budget = _NodeBudget(node_budget)
    try:
        seq = _merge_hamiltonian(adj, indices, budget)
    except BudgetExceeded:
        return HamiltonianResult(None, None, budget.nodes)
    if seq is not None:
        word = _vertex_sequence_to_word([int(v) for v in seq], n, indices)
        _verify_hamiltonian_word(graph, word)
        return HamiltonianResult(True, word, budget.nodes)
    search = _HamSearch(adj, budget.remaining)
    try:
        ok = search.search()
    except BudgetExceeded:
        return HamiltonianResult(None, None, budget.nodes + search.nodes)
    if not ok:
        return HamiltonianResult(False, None, budget.nodes + search.nodes)
    word = _vertex_sequence_to_word(search.cycle_vertices(), n, indices)
    _verify_hamiltonian_word(graph, word)
    return HamiltonianResult(True, word, budget.nodes + search.nodes)


def _vertex_sequence_to_word(seq: list[int], n: int,
                             indices: tuple[int, int, int]) -> tuple[int, ...]:
    ranks = np.asarray(seq + [seq[0]], dtype=np.int64)
    rows = _unrank_rows(ranks, n)
    word = []
    for t in range(len(seq)):
        here, there = rows[t], rows[t + 1]
        for i in indices:
            if np.array_equal(there[:i], here[i - 1::-1]) and \
                    np.array_equal(there[i:], here[i:]):
                word.append(i)
                break
        else:
            raise AssertionError("consecutive vertices are not adjacent")
    return tuple(word)


def _verify_hamiltonian_word(graph: CubicPancakeGraph,
                             word: tuple[int, ...]) -> None:
    n = graph.triple.n
    if len(word) != math.factorial(n):
        raise AssertionError("cycle word has wrong length")
    if not word_eval(ReversalWord(n, word)).is_identity():
        raise AssertionError("cycle word does not return to the identity")
    seen = set()
    state = tuple(range(n))
    for i in word:
        seen.add(state)
        state = state[i - 1::-1] + state[i:]
    if len(seen) != math.factorial(n):
        raise AssertionError("cycle word revisits a vertex")


# ---------------------------------------------------------------------------
# combined per-triple metrics
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class GraphMetrics:
    n: int
    m: int
    k: int
    vertices: int
    diameter: int
    girth: int
    cycle_classes: tuple[tuple[int, ...], ...]
    hamiltonian: Optional[bool]

    def cycle_class_labels(self) -> tuple[str, ...]:
        return tuple(format_cycle_class(w) for w in self.cycle_classes)


def graph_metrics(triple: Triple, with_hamiltonian: bool = False,
                  node_budget: int = 2_000_000) -> GraphMetrics:
    graph = CubicPancakeGraph(triple)
    summary = bfs_levels(graph)
    g = girth_classes(graph)
    ham: Optional[bool] = None
    if with_hamiltonian:
        ham = hamiltonian_cycle(graph, node_budget).hamiltonian
    return GraphMetrics(triple.n, triple.m, triple.k, summary.vertices,
                        summary.diameter, g.girth, g.classes, ham)

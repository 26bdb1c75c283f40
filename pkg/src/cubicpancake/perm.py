"""Permutations of {1..n} in one-line notation, prefix reversals, and ranking.

Conventions used throughout the package:

* a permutation ``p`` of degree ``n`` stores its images as a tuple, so
  ``p.images[i - 1] == p(i)`` with 1-based points and values;
* composition is right-to-left: ``(sigma * pi)(x) == sigma(pi(x))``, i.e. the
  rightmost factor acts first;
* the prefix reversal ``reversal(n, i)`` reverses the first ``i`` positions and
  fixes the rest, so right-multiplying by it reverses the first ``i`` entries
  of the one-line string.

Ranking follows the lexicographic (Lehmer code) order on one-line strings and
is only offered while n! fits comfortably in a machine word (n <= 20).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

MAX_RANK_DEGREE = 20  # 21! no longer fits in 63 bits


class IndexOutOfRange(ValueError):
    """Reversal index outside 2..n."""


class DegreeMismatch(ValueError):
    """Operands act on different point sets."""


class PointOutOfRange(ValueError):
    """Point outside 1..n."""


class RankOutOfRange(ValueError):
    """Rank outside 0..n!-1."""


class DegreeTooLarge(ValueError):
    """Degree beyond the supported practical bound for the operation."""


@dataclass(frozen=True, slots=True)
class Perm:
    """A permutation of {1..n}, stored as the tuple of images.

    >>> p = Perm((2, 3, 1))
    >>> p.apply(1), p.apply(3)
    (2, 1)
    >>> (p * p.inverse()).is_identity()
    True
    """

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if n == 0:
            raise ValueError("degree must be at least 1")
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def apply(self, x: int) -> int:
        if not 1 <= x <= self.degree:
            raise PointOutOfRange(f"point {x} outside 1..{self.degree}")
        return self.images[x - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        """Composition; the right factor acts first."""
        if self.degree != other.degree:
            raise DegreeMismatch(
                f"degree {self.degree} vs {other.degree}")
        img = self.images
        return Perm(tuple(img[v - 1] for v in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for pos, v in enumerate(self.images):
            inv[v - 1] = pos + 1
        return Perm(tuple(inv))

    def __pow__(self, e: int) -> "Perm":
        if e < 0:
            return self.inverse() ** (-e)
        result = identity(self.degree)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.images))

    def cycles(self, *, include_fixed: bool = False) -> tuple[tuple[int, ...], ...]:
        """Disjoint cycles, each starting at its smallest point, ordered by it.

        >>> Perm((2, 3, 1, 4)).cycles()
        ((1, 2, 3),)
        """
        seen = [False] * self.degree
        out = []
        for start in range(1, self.degree + 1):
            if seen[start - 1]:
                continue
            cyc = [start]
            seen[start - 1] = True
            x = self.images[start - 1]
            while x != start:
                cyc.append(x)
                seen[x - 1] = True
                x = self.images[x - 1]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return tuple(out)

    def cycle_type(self) -> tuple[int, ...]:
        """Multiset of cycle lengths, including fixed points, sorted descending.

        >>> Perm((2, 3, 4, 5, 1)).cycle_type()
        (5,)
        """
        lengths = sorted(
            (len(c) for c in self.cycles(include_fixed=True)), reverse=True)
        return tuple(lengths)

    def order(self) -> int:
        return math.lcm(*self.cycle_type())

    def parity(self) -> int:
        """0 for even, 1 for odd (= parity of n minus number of cycles)."""
        n_cycles = len(self.cycles(include_fixed=True))
        return (self.degree - n_cycles) % 2

    def is_even(self) -> bool:
        return self.parity() == 0

    def to_text(self) -> str:
        return "[" + ",".join(str(v) for v in self.images) + "]"


def identity(n: int) -> Perm:
    return Perm(tuple(range(1, n + 1)))


def reversal(n: int, i: int) -> Perm:
    """The prefix reversal r_i of degree n: position p maps to i+1-p for p <= i.

    >>> reversal(7, 4).to_text()
    '[4,3,2,1,5,6,7]'
    """
    if not 2 <= i <= n:
        raise IndexOutOfRange(f"reversal index {i} outside 2..{n}")
    return Perm(tuple(range(i, 0, -1)) + tuple(range(i + 1, n + 1)))


def compose(sigma: Perm, pi: Perm) -> Perm:
    """sigma * pi, so pi acts first: compose(sigma, pi)(x) = sigma(pi(x))."""
    return sigma * pi


def from_cycles(n: int, cycles: tuple[tuple[int, ...], ...] | list) -> Perm:
    """Build a permutation of degree n from disjoint cycles of 1-based points."""
    img = list(range(1, n + 1))
    seen: set[int] = set()
    for cyc in cycles:
        for x in cyc:
            if not 1 <= x <= n:
                raise PointOutOfRange(f"point {x} outside 1..{n}")
            if x in seen:
                raise ValueError(f"point {x} repeated across cycles")
            seen.add(x)
        for a, b in zip(cyc, cyc[1:] + tuple(cyc[:1])):
            img[a - 1] = b
    return Perm(tuple(img))


def from_text(text: str) -> Perm:
    """Parse the one-line form '[4,3,2,1,5,6,7]'."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"expected '[..]' one-line form, got {text!r}")
    try:
        images = tuple(int(t) for t in body[1:-1].split(","))
    except ValueError as exc:
        raise ValueError(f"bad one-line form {text!r}") from exc
    return Perm(images)


# ---------------------------------------------------------------------------
# reversal words
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class ReversalWord:
    """A word over the reversal alphabet, leftmost letter written first.

    The word (i0, i1, ..., il-1) denotes the product r_i0 r_i1 ... r_il-1,
    which under the right-to-left convention applies r_il-1 first.
    """

    degree: int
    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        for i in self.indices:
            if not 2 <= i <= self.degree:
                raise IndexOutOfRange(
                    f"reversal index {i} outside 2..{self.degree}")

    def __len__(self) -> int:
        return len(self.indices)

    def to_text(self) -> str:
        return ".".join(str(i) for i in self.indices)


def word_from_text(n: int, text: str) -> ReversalWord:
    """Parse the dotted form '7.6.5.6'."""
    try:
        idx = tuple(int(t) for t in text.strip().split("."))
    except ValueError as exc:
        raise ValueError(f"bad word form {text!r}") from exc
    return ReversalWord(n, idx)


def word_eval(w: ReversalWord) -> Perm:
    """Evaluate a reversal word to a permutation.

    Because right-multiplication by r_i reverses the first i one-line entries,
    the product is folded left to right over the one-line string.

    >>> word_eval(ReversalWord(5, (5, 4))).to_text()
    '[2,3,4,5,1]'
    """
    line = list(range(1, w.degree + 1))
    for i in w.indices:
        line[:i] = line[i - 1::-1]
    return Perm(tuple(line))


# ---------------------------------------------------------------------------
# lexicographic (Lehmer) ranking
# ---------------------------------------------------------------------------

def rank(p: Perm) -> int:
    """Position of p in lexicographic order on one-line strings (0-based).

    >>> rank(identity(4))
    0
    >>> rank(Perm((3, 2, 1)))
    5
    """
    n = p.degree
    if n > MAX_RANK_DEGREE:
        raise DegreeTooLarge(f"ranking supported only for degree <= {MAX_RANK_DEGREE}")
    img = p.images
    r = 0
    for j in range(n):
        if j:
            r *= n - j
        vj = img[j]
        r += sum(1 for l in range(j + 1, n) if img[l] < vj)
    return r


def unrank(n: int, r: int) -> Perm:
    """Inverse of :func:`rank`.

    >>> unrank(3, 5).to_text()
    '[3,2,1]'
    """
    if n > MAX_RANK_DEGREE:
        raise DegreeTooLarge(f"ranking supported only for degree <= {MAX_RANK_DEGREE}")
    if not 0 <= r < math.factorial(n):
        raise RankOutOfRange(f"rank {r} outside 0..{n}!-1")
    avail = list(range(1, n + 1))
    images = []
    for j in range(n):
        f = math.factorial(n - 1 - j)
        d, r = divmod(r, f)
        images.append(avail.pop(d))
    return Perm(tuple(images))


def all_perms(n: int):
    """All degree-n permutations in rank order (small n only)."""
    for images in itertools.permutations(range(1, n + 1)):
        yield Perm(images)

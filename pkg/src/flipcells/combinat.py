"""Decorated permutations, Grassmann necklaces, and weakly separated collections.

Conventions used throughout the package:

* ground set is [n] = {1, ..., n}, indices are cyclic modulo n;
* a decorated permutation is a permutation whose fixed points carry a
  color in {white, black};
* the necklace <-> permutation bijection is driven by the exchange rule
  I_{i+1} = (I_i \\ {i}) u {pi(i)}, with a fixed point i colored black
  exactly when i lies in I_i.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ArgumentError, PreconditionError, ValidationError

WHITE = "white"
BLACK = "black"


@dataclass(frozen=True)
class DecoratedPermutation:
    """A permutation of [n] with colored fixed points.

    `image[i-1]` is the image of i.  `fixed_color` holds one (i, color)
    pair per fixed point, sorted by i.
    """

    n: int
    image: tuple[int, ...]
    fixed_color: tuple[tuple[int, str], ...]

    def __post_init__(self):
        if self.n < 0 or len(self.image) != self.n:
            raise ValidationError("image length does not match n")
        if sorted(self.image) != list(range(1, self.n + 1)):
            raise ValidationError("image is not a bijection on [n]")
        fixed = tuple(i for i in range(1, self.n + 1) if self.image[i - 1] == i)
        colored = tuple(i for i, _ in self.fixed_color)
        if colored != fixed:
            raise ValidationError(
                "fixed_color must be defined exactly on the fixed points %s" % (fixed,)
            )
        if any(c not in (WHITE, BLACK) for _, c in self.fixed_color):
            raise ValidationError("fixed point colors must be 'white' or 'black'")

    @staticmethod
    def make(image: Sequence[int], colors: dict[int, str] | None = None) -> "DecoratedPermutation":
        """Build from a one-line image array; `colors` maps fixed points to colors."""
        image = tuple(image)
        n = len(image)
        colors = dict(colors or {})
        fixed = [i for i in range(1, n + 1) if image[i - 1] == i]
        missing = [i for i in fixed if i not in colors]
        if missing:
            raise ArgumentError("missing colors for fixed points %s" % (missing,))
        extra = [i for i in colors if i not in fixed]
        if extra:
            raise ArgumentError("colors given for non-fixed points %s" % (extra,))
        return DecoratedPermutation(n, image, tuple(sorted(colors.items())))

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def inverse_image(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for i, j in enumerate(self.image, start=1):
            inv[j - 1] = i
        return tuple(inv)

    def color_of(self, i: int) -> str:
        for j, c in self.fixed_color:
            if j == i:
                return c
        raise ArgumentError("%d is not a fixed point" % i)

    @property
    def is_identity(self) -> bool:
        """True when the underlying permutation is the identity (any coloring)."""
        return all(self.image[i] == i + 1 for i in range(self.n))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "image": list(self.image),
            "fixed_color": {str(i): c for i, c in self.fixed_color},
        }

    @staticmethod
    def from_json(data: dict) -> "DecoratedPermutation":
        colors = {int(i): c for i, c in data.get("fixed_color", {}).items()}
        return DecoratedPermutation.make(data["image"], colors)


@dataclass(frozen=True)
class GrassmannNecklace:
    """A cyclic sequence I_1, ..., I_n of k-subsets of [n] obeying the exchange rule."""

    n: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.sets) != self.n or self.n == 0:
            raise ValidationError("necklace must have exactly n nonzero entries")
        k = len(self.sets[0])
        for s in self.sets:
            if len(s) != k:
                raise ValidationError("all necklace entries must have equal size")
            if not s <= set(range(1, self.n + 1)):
                raise ValidationError("necklace entries must be subsets of [n]")
        for i in range(1, self.n + 1):
            cur = self.sets[i - 1]
            nxt = self.sets[i % self.n]
            if not (cur - nxt) <= {i}:
                raise ValidationError("necklace exchange rule fails at index %d" % i)
            if len(nxt - cur) > 1:
                raise ValidationError("necklace exchange rule fails at index %d" % i)

    @property
    def k(self) -> int:
        return len(self.sets[0])

    def __getitem__(self, i: int) -> frozenset[int]:
        """1-based cyclic access."""
        return self.sets[(i - 1) % self.n]

    @staticmethod
    def make(n: int, sets: Iterable[Iterable[int]]) -> "GrassmannNecklace":
        return GrassmannNecklace(n, tuple(frozenset(s) for s in sets))

    def to_json(self) -> list[list[int]]:
        return [sorted(s) for s in self.sets]

    @staticmethod
    def from_json(n: int, data: Iterable[Iterable[int]]) -> "GrassmannNecklace":
        return GrassmannNecklace.make(n, data)


@dataclass(frozen=True)
class LabelCollection:
    """A collection of distinct k-subsets of [n]."""

    n: int
    k: int
    labels: frozenset[frozenset[int]]

    def __post_init__(self):
        for s in self.labels:
            if len(s) != self.k or not s <= set(range(1, self.n + 1)):
                raise ValidationError("labels must be k-subsets of [n]")

    @staticmethod
    def make(n: int, k: int, labels: Iterable[Iterable[int]]) -> "LabelCollection":
        return LabelCollection(n, k, frozenset(frozenset(s) for s in labels))


def cyclic_decorated(n: int, k: int) -> DecoratedPermutation:
    """The cyclic permutation i -> i + k (mod n); k = 0 gives all-white fixed
    points and k = n all-black ones."""
    if n < 1:
        raise ArgumentError("n must be positive")
    if not 0 <= k <= n:
        raise ArgumentError("k must lie in [0, n]")
    if k % n == 0:
        color = BLACK if k == n else WHITE
        image = tuple(range(1, n + 1))
        return DecoratedPermutation(n, image, tuple((i, color) for i in image))
    image = tuple((i - 1 + k) % n + 1 for i in range(1, n + 1))
    return DecoratedPermutation(n, image, ())


def necklace_of(p: DecoratedPermutation) -> GrassmannNecklace:
    """The Grassmann necklace corresponding to a decorated permutation.

    j sits in I_i iff j is a black fixed point, or j is non-fixed and i lies
    in the cyclic window (pi^{-1}(j), j].
    """
    n = p.n
    inv = p.inverse_image()
    blacks = {i for i, c in p.fixed_color if c == BLACK}
    sets = []
    for i in range(1, n + 1):
        cur = set(blacks)
        for j in range(1, n + 1):
            a = inv[j - 1]
            if a == j:
                continue
            # i in (a, j] cyclically
            if _in_cyclic_window(i, a, j):
                cur.add(j)
        sets.append(frozenset(cur))
    return GrassmannNecklace(n, tuple(sets))


def _in_cyclic_window(i: int, a: int, j: int) -> bool:
    """True iff i lies in the half-open cyclic interval (a, j]."""
    if a < j:
        return a < i <= j
    return i > a or i <= j


def decorated_of(necklace: GrassmannNecklace) -> DecoratedPermutation:
    """Inverse of `necklace_of`: read pi(i) off the exchange I_{i+1} = (I_i \\ {i}) u {pi(i)}."""
    n = necklace.n
    image = []
    colors = {}
    for i in range(1, n + 1):
        cur = necklace[i]
        nxt = necklace[i + 1]
        if cur == nxt:
            image.append(i)
            colors[i] = BLACK if i in cur else WHITE
        else:
            added = nxt - (cur - {i})
            if len(added) != 1:
                raise ValidationError("necklace exchange rule fails at index %d" % i)
            image.append(next(iter(added)))
    return DecoratedPermutation.make(tuple(image), colors)


def helicity(p: DecoratedPermutation) -> int:
    """Common size of the necklace entries of p."""
    return len(necklace_of(p)[1])


def necklace_shift(necklace: GrassmannNecklace, direction: str) -> GrassmannNecklace:
    """DOWN(I)_j = I_j n I_{iota(j)} and UP(I)_j = I_j u I_{lambda(j)}, where
    iota(j) / lambda(j) is the previous / next cyclic index whose entry differs
    from I_j.  Defined only for non-identity necklaces."""
    if direction not in ("up", "down"):
        raise ArgumentError("direction must be 'up' or 'down'")
    n = necklace.n
    if len(set(necklace.sets)) == 1:
        raise PreconditionError("UP/DOWN undefined for identity necklaces")
    out = []
    for j in range(1, n + 1):
        if direction == "down":
            other = necklace[_prev_differing(necklace, j)]
            out.append(necklace[j] & other)
        else:
            other = necklace[_next_differing(necklace, j)]
            out.append(necklace[j] | other)
    return GrassmannNecklace(n, tuple(out))


def _prev_differing(necklace: GrassmannNecklace, j: int) -> int:
    n = necklace.n
    for step in range(1, n):
        i = (j - 1 - step) % n + 1
        if necklace[i] != necklace[j]:
            return i
    raise PreconditionError("all necklace entries coincide")


def _next_differing(necklace: GrassmannNecklace, j: int) -> int:
    n = necklace.n
    for step in range(1, n):
        i = (j - 1 + step) % n + 1
        if necklace[i] != necklace[j]:
            return i
    raise PreconditionError("all necklace entries coincide")


def is_weakly_separated(a: Iterable[int], b: Iterable[int], n: int) -> bool:
    """No cyclically alternating quadruple between A \\ B and B \\ A.

    Equivalently, going around 1..n, the elements of the two difference sets
    form at most two blocks.
    """
    sa, sb = frozenset(a), frozenset(b)
    if len(sa) != len(sb):
        raise ArgumentError("weak separation is defined for equal-size subsets")
    only_a = sa - sb
    only_b = sb - sa
    if not only_a or not only_b:
        return True
    tags = [(x, 0) for x in only_a] + [(x, 1) for x in only_b]
    tags.sort()
    changes = sum(1 for i in range(len(tags)) if tags[i][1] != tags[i - 1][1])
    return changes <= 2


def _mask(s: Iterable[int]) -> int:
    m = 0
    for i in s:
        m |= 1 << (i - 1)
    return m


def _unmask(m: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(m.bit_length()) if m >> i & 1)


def is_weakly_separated_mask(a: int, b: int) -> bool:
    """Bitmask variant of `is_weakly_separated` (equal popcounts assumed)."""
    only_a = a & ~b
    only_b = b & ~a
    if not only_a or not only_b:
        return True
    changes = 0
    prev = None
    m = only_a | only_b
    while m:
        low = m & -m
        tag = bool(low & only_a)
        if prev is not None and tag != prev:
            changes += 1
        prev = tag
        m ^= low
    # close the cycle
    first = bool((only_a | only_b) & -(only_a | only_b) & only_a)
    if first != prev:
        changes += 1
    return changes <= 2


def extend_to_maximal_ws(collection: LabelCollection) -> LabelCollection:
    """Extend a weakly separated collection to a maximal one inside C([n], k).

    Candidates are scanned once in colexicographic order (ascending bitmask),
    which makes the output deterministic.
    """
    n, k = collection.n, collection.k
    members = [_mask(s) for s in collection.labels]
    for x, y in itertools.combinations(members, 2):
        if not is_weakly_separated_mask(x, y):
            raise ValidationError("input collection is not weakly separated")
    have = set(members)
    for cand in sorted(_mask(c) for c in itertools.combinations(range(1, n + 1), k)):
        if cand in have:
            continue
        if all(is_weakly_separated_mask(cand, m) for m in have):
            have.add(cand)
    return LabelCollection(n, k, frozenset(_unmask(m) for m in have))


def all_decorated_permutations(n: int) -> Iterator[DecoratedPermutation]:
    """All decorated permutations of [n], fixed points colored both ways."""
    for image in itertools.permutations(range(1, n + 1)):
        fixed = [i for i in range(1, n + 1) if image[i - 1] == i]
        for colors in itertools.product((WHITE, BLACK), repeat=len(fixed)):
            yield DecoratedPermutation.make(image, dict(zip(fixed, colors)))

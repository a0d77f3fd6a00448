"""Sign calculus for permutations, deletions, insertions and ordered splits.

All indices are 1-based. A permutation is given by its image sequence, so
``(3, 1, 2)`` sends 1 -> 3, 2 -> 1, 3 -> 2.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from numbers import Number
from typing import Iterable, Sequence, Union


class Sign(enum.Enum):
    """An orientation, +1 or -1.

    Signs multiply with each other and scale numbers, but do not add.
    """

    PLUS = 1
    MINUS = -1

    @classmethod
    def of_parity(cls, k: int) -> "Sign":
        """Return ``(-1)**k``."""
        return cls.MINUS if k % 2 else cls.PLUS

    def __int__(self) -> int:
        return self.value

    def __neg__(self) -> "Sign":
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS

    def __mul__(self, other):
        if isinstance(other, Sign):
            return Sign.PLUS if self is other else Sign.MINUS
        if isinstance(other, Number):
            return other if self is Sign.PLUS else -other
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self) -> str:
        return "+1" if self is Sign.PLUS else "-1"


@dataclass(frozen=True)
class Permutation:
    """Bijection of {1..m} stored as its image sequence."""

    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(i) for i in self.image)
        if not image or sorted(image) != list(range(1, len(image) + 1)):
            raise ValueError(f"not a permutation of 1..{len(image)}: {self.image}")
        object.__setattr__(self, "image", image)

    def __len__(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """``self o other``, i.e. apply ``other`` first."""
        if len(other) != len(self):
            raise ValueError("permutations of different length")
        return Permutation(tuple(self(other(i)) for i in range(1, len(self) + 1)))

    def inversions(self) -> int:
        p = self.image
        return sum(1 for a in range(len(p)) for b in range(a + 1, len(p)) if p[a] > p[b])


@dataclass(frozen=True)
class OrderedSubset:
    """Strictly increasing index tuple drawn from {1..n}."""

    n: int
    indices: tuple[int, ...] = ()

    def __post_init__(self):
        indices = tuple(int(i) for i in self.indices)
        if self.n < 1:
            raise ValueError(f"ground set size must be positive, got {self.n}")
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise ValueError(f"indices not strictly increasing: {indices}")
        if indices and (indices[0] < 1 or indices[-1] > self.n):
            raise ValueError(f"indices {indices} outside 1..{self.n}")
        object.__setattr__(self, "indices", indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, i) -> bool:
        return i in self.indices

    def position(self, j: int) -> int:
        """1-based position of ``j``."""
        try:
            return self.indices.index(j) + 1
        except ValueError:
            raise ValueError(f"{j} is not in {self.indices}") from None

    def complement(self) -> "OrderedSubset":
        return OrderedSubset(self.n, tuple(i for i in range(1, self.n + 1) if i not in self.indices))

    def without(self, j: int) -> "OrderedSubset":
        self.position(j)
        return OrderedSubset(self.n, tuple(i for i in self.indices if i != j))

    def with_(self, k: int) -> "OrderedSubset":
        if k in self.indices:
            raise ValueError(f"{k} already in {self.indices}")
        return OrderedSubset(self.n, tuple(sorted(self.indices + (k,))))


SubsetLike = Union[OrderedSubset, Sequence[int]]


def _indices(J: SubsetLike) -> tuple[int, ...]:
    if isinstance(J, OrderedSubset):
        return J.indices
    idx = tuple(int(i) for i in J)
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise ValueError(f"indices not strictly increasing: {idx}")
    return idx


def count_inversions(seq: Iterable[int]) -> int:
    s = list(seq)
    return sum(1 for a in range(len(s)) for b in range(a + 1, len(s)) if s[a] > s[b])


def perm_sign(p: Union[Permutation, Sequence[int]]) -> Sign:
    """Parity sign of a permutation, counted by inversions."""
    if not isinstance(p, Permutation):
        p = Permutation(tuple(p))
    return Sign.of_parity(p.inversions())


def sequence_sign(seq: Sequence[int]) -> Sign:
    """Sign of the permutation that sorts a sequence of distinct integers."""
    if len(set(seq)) != len(seq):
        raise ValueError(f"repeated entries in {tuple(seq)}")
    return Sign.of_parity(count_inversions(seq))


def deletion_sign(J: SubsetLike, j: int) -> Sign:
    """Sign of moving ``j`` to the end of ``J``, the rest staying ordered."""
    idx = _indices(J)
    if j not in idx:
        raise ValueError(f"{j} is not in {idx}")
    return Sign.of_parity(len(idx) - (idx.index(j) + 1))


def insertion_sign(J: SubsetLike, k: int) -> Sign:
    """Sign of sorting the concatenation ``(J, k)``."""
    idx = _indices(J)
    if k in idx:
        raise ValueError(f"{k} is already in {idx}")
    return Sign.of_parity(sum(1 for i in idx if i > k))


def split_sign(n: int, J: SubsetLike) -> Sign:
    """Sign of the permutation of {1..n} whose image is J followed by its complement."""
    idx = _indices(J)
    if idx and (idx[0] < 1 or idx[-1] > n):
        raise ValueError(f"{idx} is not a subset of 1..{n}")
    # each complement element below j_k contributes one inversion
    return Sign.of_parity(sum(j - pos for pos, j in enumerate(idx, start=1)))


def complement(n: int, J: SubsetLike) -> tuple[int, ...]:
    idx = set(_indices(J))
    return tuple(i for i in range(1, n + 1) if i not in idx)

"""Multivectors over R^n: wedge and cross products, boundary maps, Hodge star.

A grade-m multivector is stored sparsely as a mapping from ordered index
subsets (1-based, strictly increasing tuples of length m) to scalars.
Scalars are floats in the numeric path; integer and ``Fraction`` inputs stay
exact all the way through.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from numbers import Number, Rational
from typing import Iterable, Mapping, Sequence

import numpy as np

from .permcalc import (
    OrderedSubset,
    complement,
    deletion_sign,
    insertion_sign,
    split_sign,
)

# relative zero threshold for numeric dependence tests
DEPENDENCE_RTOL = 1e-12


class Multivector:
    """Element of the grade-``m`` exterior power of R^n.

    >>> e12 = Multivector.basis(3, (1, 2))
    >>> hodge_star(e12)
    Multivector(n=3, m=1, {(3,): 1})
    """

    __slots__ = ("n", "m", "_coeffs")

    def __init__(self, n: int, m: int, coeffs: Mapping | None = None, prune: float = 0.0):
        if n < 0 or not 0 <= m <= n:
            raise ValueError(f"grade {m} invalid in dimension {n}")
        self.n = n
        self.m = m
        store = {}
        for key, value in (coeffs or {}).items():
            if isinstance(key, OrderedSubset):
                key = key.indices
            key = tuple(int(i) for i in key)
            if len(key) != m or any(b <= a for a, b in zip(key, key[1:])):
                raise ValueError(f"key {key} is not an ordered {m}-subset")
            if key and (key[0] < 1 or key[-1] > n):
                raise ValueError(f"key {key} outside 1..{n}")
            if value == 0 or abs(value) <= prune:
                continue
            store[key] = store.get(key, 0) + value
        self._coeffs = dict(sorted(store.items()))

    @classmethod
    def zero(cls, n: int, m: int) -> "Multivector":
        return cls(n, m)

    @classmethod
    def basis(cls, n: int, J: Iterable[int], coef=1) -> "Multivector":
        J = tuple(J)
        return cls(n, len(J), {J: coef})

    @classmethod
    def from_dense(cls, n: int, m: int, values: Sequence, prune: float = 0.0) -> "Multivector":
        keys = list(combinations(range(1, n + 1), m))
        if len(values) != len(keys):
            raise ValueError(f"expected {len(keys)} values, got {len(values)}")
        return cls(n, m, dict(zip(keys, values)), prune=prune)

    # mapping-like access
    def __getitem__(self, J) -> Number:
        if isinstance(J, OrderedSubset):
            J = J.indices
        return self._coeffs.get(tuple(J), 0)

    def items(self):
        return self._coeffs.items()

    def keys(self):
        return self._coeffs.keys()

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def to_dense(self) -> np.ndarray:
        keys = combinations(range(1, self.n + 1), self.m)
        return np.array([float(self[k]) for k in keys])

    def pruned(self, threshold: float) -> "Multivector":
        return Multivector(self.n, self.m, self._coeffs, prune=threshold)

    def max_abs(self) -> float:
        return max((abs(v) for v in self._coeffs.values()), default=0)

    # linear structure
    def _check_same_space(self, other: "Multivector"):
        if (self.n, self.m) != (other.n, other.m):
            raise ValueError(
                f"multivectors live in different spaces: (n={self.n}, m={self.m}) vs (n={other.n}, m={other.m})"
            )

    def __add__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        self._check_same_space(other)
        out = dict(self._coeffs)
        for k, v in other.items():
            out[k] = out.get(k, 0) + v
        return Multivector(self.n, self.m, out)

    def __neg__(self):
        return Multivector(self.n, self.m, {k: -v for k, v in self.items()})

    def __sub__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, Multivector):
            return NotImplemented
        return Multivector(self.n, self.m, {k: scalar * v for k, v in self.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return (self.n, self.m) == (other.n, other.m) and self._coeffs == other._coeffs

    def allclose(self, other: "Multivector", atol: float = 1e-12) -> bool:
        self._check_same_space(other)
        keys = set(self.keys()) | set(other.keys())
        return all(abs(self[k] - other[k]) <= atol for k in keys)

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {v}" for k, v in self.items())
        return f"Multivector(n={self.n}, m={self.m}, {{{body}}})"

    # text form: one "J: coefficient" line per nonzero coefficient
    def to_text(self) -> str:
        lines = [f"{','.join(map(str, k))}: {_format_scalar(v)}" for k, v in self.items()]
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, text: str, n: int, m: int | None = None) -> "Multivector":
        coeffs = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if ":" not in line:
                raise ValueError(f"line {lineno}: expected 'J: coefficient', got {raw!r}")
            head, value = line.split(":", 1)
            key = tuple(int(t) for t in head.split(",") if t.strip())
            if m is None:
                m = len(key)
            coeffs[key] = _parse_scalar(value.strip())
        if m is None:
            raise ValueError("grade cannot be inferred from empty text")
        return cls(n, m, coeffs)


def _format_scalar(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _parse_scalar(s: str):
    try:
        return int(s)
    except ValueError:
        pass
    if "/" in s:
        return Fraction(s)
    return float(s)


class VectorSystem:
    """Ordered system of ``m`` vectors in R^n, stored row-wise."""

    __slots__ = ("n", "vectors")

    def __init__(self, vectors: Sequence[Sequence], n: int | None = None):
        rows = tuple(tuple(v) for v in vectors)
        if not rows:
            raise ValueError("a vector system needs at least one vector")
        n = len(rows[0]) if n is None else n
        if any(len(r) != n for r in rows):
            raise ValueError(f"all vectors must have length {n}")
        self.n = n
        self.vectors = rows

    @property
    def m(self) -> int:
        return len(self.vectors)

    def is_exact(self) -> bool:
        return all(isinstance(x, Rational) for row in self.vectors for x in row)

    def swapped(self, i: int, j: int) -> "VectorSystem":
        rows = list(self.vectors)
        rows[i], rows[j] = rows[j], rows[i]
        return VectorSystem(rows, self.n)

    def __repr__(self) -> str:
        return f"VectorSystem({list(self.vectors)!r})"


def as_system(vs) -> VectorSystem:
    return vs if isinstance(vs, VectorSystem) else VectorSystem(vs)


def det_exact(rows: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in rows]
    k = len(a)
    det = Fraction(1)
    for col in range(k):
        piv = next((r for r in range(col, k) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, k):
            f = a[r][col] / p
            if f:
                for c in range(col, k):
                    a[r][c] -= f * a[col][c]
    return det


def _exact_value(f: Fraction):
    return int(f) if f.denominator == 1 else f


def _minors(vs: VectorSystem, exact: bool | None) -> dict[tuple[int, ...], Number]:
    """All m x m minors keyed by the ordered column subset."""
    n, m = vs.n, vs.m
    if m > n:
        raise ValueError(f"{m} vectors in dimension {n}: no nonzero minors exist")
    if exact is None:
        exact = vs.is_exact()
    cols = list(combinations(range(1, n + 1), m))
    if exact:
        return {J: _exact_value(det_exact([[row[j - 1] for j in J] for row in vs.vectors])) for J in cols}
    x = np.asarray(vs.vectors, dtype=float)
    idx = np.array(cols, dtype=int) - 1
    blocks = x[:, idx].transpose(1, 0, 2)  # (subset, row, col)
    dets = np.linalg.det(blocks) if m else np.ones(len(cols))
    return {J: float(d) for J, d in zip(cols, dets)}


def wedge(vs, exact: bool | None = None) -> Multivector:
    """Exterior product: coefficient at J is the minor on columns J."""
    vs = as_system(vs)
    return Multivector(vs.n, vs.m, _minors(vs, exact))


def cross(vs, exact: bool | None = None) -> Multivector:
    """Vector product of ``m`` vectors, a grade ``n - m`` multivector."""
    vs = as_system(vs)
    n = vs.n
    return Multivector(
        n,
        n - vs.m,
        {complement(n, J): split_sign(n, J) * d for J, d in _minors(vs, exact).items()},
    )


def lower_boundary(x: Multivector) -> Multivector:
    """Grade-lowering map: delete each index with its deletion sign."""
    if x.m == 0:
        raise ValueError("lower boundary is undefined on grade 0")
    out: dict = {}
    for J, c in x.items():
        for j in J:
            K = tuple(i for i in J if i != j)
            out[K] = out.get(K, 0) + deletion_sign(J, j) * c
    return Multivector(x.n, x.m - 1, out)


def raise_boundary(x: Multivector) -> Multivector:
    """Grade-raising map: insert each missing index with its insertion sign."""
    if x.m == x.n:
        raise ValueError("raise boundary is undefined on the top grade")
    out: dict = {}
    for J, c in x.items():
        for k in complement(x.n, J):
            K = tuple(sorted(J + (k,)))
            out[K] = out.get(K, 0) + insertion_sign(J, k) * c
    return Multivector(x.n, x.m + 1, out)


def inner(x: Multivector, y: Multivector):
    """Scalar product induced by the orthonormal basis."""
    x._check_same_space(y)
    small, big = (x, y) if len(x) <= len(y) else (y, x)
    return sum((c * big[J] for J, c in small.items()), 0)


def gram_determinant(vs, exact: bool | None = None):
    vs = as_system(vs)
    if exact is None:
        exact = vs.is_exact()
    rows = vs.vectors
    if exact:
        g = [[sum(Fraction(a) * b for a, b in zip(u, v)) for v in rows] for u in rows]
        return _exact_value(det_exact(g))
    x = np.asarray(rows, dtype=float)
    return float(np.linalg.det(x @ x.T))


def gram_volume(vs) -> float:
    """m-dimensional volume of the parallelepiped spanned by ``vs``."""
    return math.sqrt(abs(gram_determinant(vs)))


def hodge_star(x: Multivector) -> Multivector:
    """Hodge dual for the positive-definite metric."""
    n = x.n
    return Multivector(n, n - x.m, {complement(n, J): split_sign(n, J) * c for J, c in x.items()})


def is_dependent(vs, exact: bool | None = None) -> bool:
    """True iff the vectors are linearly dependent, i.e. their wedge vanishes."""
    vs = as_system(vs)
    if vs.m > vs.n:
        return True
    if exact is None:
        exact = vs.is_exact()
    w = wedge(vs, exact=exact)
    if exact:
        return not w
    scale = max((abs(float(e)) for row in vs.vectors for e in row), default=0.0)
    if scale == 0.0:
        return True
    return w.max_abs() <= DEPENDENCE_RTOL * scale ** vs.m

"""Multivariate polynomials given as monomial tables.

A table is a ``;``-separated list of monomials ``coef e1 ... en``; for
example ``1 1 0 ; -2 0 2`` is ``x1 - 2 x2**2``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Polynomial:
    n: int
    terms: tuple[tuple[float, tuple[int, ...]], ...] = ()

    def __post_init__(self):
        terms = []
        for coef, exps in self.terms:
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.n or any(e < 0 for e in exps):
                raise ValueError(f"monomial exponents {exps} invalid for {self.n} variables")
            terms.append((coef, exps))
        object.__setattr__(self, "terms", tuple(terms))

    def __call__(self, x):
        """Evaluate at a point, or at an array of points with the last axis of length n."""
        x = np.asarray(x, dtype=float)
        total = np.zeros(x.shape[:-1]) if x.ndim > 1 else 0.0
        for coef, exps in self.terms:
            term = coef
            for xi, e in zip(np.moveaxis(x, -1, 0), exps):
                if e:
                    term = term * xi**e
            total = total + term
        return total

    def evaluate_grid(self, axes: list[np.ndarray]) -> np.ndarray:
        """Values on the tensor grid spanned by 1-D coordinate arrays."""
        mesh = np.meshgrid(*axes, indexing="ij")
        out = np.zeros(mesh[0].shape)
        for coef, exps in self.terms:
            term = np.full(mesh[0].shape, float(coef))
            for xi, e in zip(mesh, exps):
                if e:
                    term *= xi**e
            out += term
        return out

    def to_text(self) -> str:
        return " ; ".join(" ".join([_fmt(c), *map(str, e)]) for c, e in self.terms)

    @classmethod
    def parse(cls, text: str, n: int) -> "Polynomial":
        terms = []
        for chunk in text.split(";"):
            tokens = chunk.split()
            if not tokens:
                continue
            if len(tokens) != n + 1:
                raise ValueError(f"monomial {chunk.strip()!r} needs a coefficient and {n} exponents")
            coef = float(tokens[0])
            exps = []
            for t in tokens[1:]:
                e = int(t)
                if e < 0:
                    raise ValueError(f"negative exponent in {chunk.strip()!r}")
                exps.append(e)
            terms.append((coef, tuple(exps)))
        return cls(n, tuple(terms))


def _fmt(c) -> str:
    c = float(c)
    return str(int(c)) if c.is_integer() else repr(c)

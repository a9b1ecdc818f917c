"""Thimble bookkeeping on the A-side and the dimension cross-check with S.

Thimbles in the cover are labelled by a critical value index ``k`` in
``[0, n]`` and a winding ``i``; the mirror line bundle on P^n is
``O(-k + i(n+1))``.  Thimbles in the base are labelled by a single winding
``j`` and pull back to ``n + 1`` cover thimbles.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .coord_ring import RingMonomial, graded_basis, graded_dim, monomial_by_toric_degree


@dataclass(frozen=True, order=True)
class BaseThimble:
    j: int


@dataclass(frozen=True, order=True)
class CoverThimble:
    n: int
    k: int
    i: int

    def __post_init__(self):
        if not 0 <= self.k <= self.n:
            raise ValueError(f"critical value index {self.k} outside [0, {self.n}]")

    @property
    def mirror_degree(self) -> int:
        return -self.k + self.i * (self.n + 1)

    @classmethod
    def from_degree(cls, n: int, d: int) -> "CoverThimble":
        k = (-d) % (n + 1)
        return cls(n, k, (d + k) // (n + 1))

    def __str__(self):
        return f"({self.k},{self.i})"


def psi_decompose(n: int, j: int) -> list[CoverThimble]:
    """Cover thimbles over the base thimble with winding ``j``."""
    q, r = divmod(j, n + 1)
    return [CoverThimble(n, k, q if k <= n - r else q + 1) for k in range(n + 1)]


def psi_degree_identity(n: int, j: int) -> bool:
    got = sorted(t.mirror_degree for t in psi_decompose(n, j))
    return got == sorted(j - k for k in range(n + 1))


def serre_twist(t: CoverThimble) -> tuple[CoverThimble, int]:
    return CoverThimble(t.n, t.k, t.i - 1), t.n


def inverse_serre_twist(t: CoverThimble) -> tuple[CoverThimble, int]:
    return CoverThimble(t.n, t.k, t.i + 1), -t.n


def pn_hom_dim_with_shift(n: int, d_src: int, d_tgt: int) -> tuple[int, int]:
    """Dimension of hom(O(d_src), O(d_tgt)) on P^n and the degree it lives in."""
    gap = d_tgt - d_src
    if gap >= 0:
        return math.comb(gap + n, n), 0
    # Serre dual: Sym^(-gap - n - 1) V placed in degree n
    return math.comb(-gap - 1, n) if -gap - 1 >= n else 0, n


def pn_hom_dim(n: int, d_src: int, d_tgt: int) -> int:
    return pn_hom_dim_with_shift(n, d_src, d_tgt)[0]


def futaki_ueda_dim(n: int, i: int, j: int) -> int:
    """dim of the exterior power between the vanishing cycles C_i and C_j."""
    if j < i:
        return 0
    return math.comb(n + 1, j - i)


def exterior_euler_characteristic(n: int) -> int:
    return sum((-1) ** m * futaki_ueda_dim(n, 0, m) for m in range(n + 2))


# -- grading group ----------------------------------------------------------


@dataclass(frozen=True)
class GradingElement:
    """Class in Z^(n+1) / (1, ..., 1), stored by its normal form in Z^n."""

    n: int
    v: tuple[int, ...]

    def __add__(self, other: "GradingElement") -> "GradingElement":
        return GradingElement(self.n, tuple(a + b for a, b in zip(self.v, other.v)))

    def __neg__(self) -> "GradingElement":
        return GradingElement(self.n, tuple(-a for a in self.v))

    def is_zero(self) -> bool:
        return not any(self.v)


class GradingGroup:
    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be at least 1")
        self.n = n

    def normalize(self, w: Sequence[int]) -> GradingElement:
        if len(w) != self.n + 1:
            raise ValueError(f"expected a vector of length {self.n + 1}")
        return GradingElement(self.n, tuple(x - w[0] for x in w[1:]))

    def lift(self, g: GradingElement) -> tuple[int, ...]:
        return (0,) + g.v

    def generator(self, k: int) -> GradingElement:
        w = [0] * (self.n + 1)
        w[k] = 1
        return self.normalize(w)

    def zero(self) -> GradingElement:
        return GradingElement(self.n, (0,) * self.n)


def chord_to_monomial(n: int, g: GradingElement, d: int) -> RingMonomial | None:
    return monomial_by_toric_degree(n, d, g.v)


def dictionary_is_bijective(n: int, d: int) -> bool:
    """Every degree-d basis monomial is hit by exactly one grading class."""
    basis = graded_basis(n, d)
    G = GradingGroup(n)
    hits = [chord_to_monomial(n, G.normalize(m.x_exps), d) for m in basis]
    return hits == basis and len(set(hits)) == len(basis)


# -- dimension comparison ---------------------------------------------------


def b_side_dim(n: int, i: int, j: int) -> int:
    if j >= i:
        return graded_dim(n, j - i)
    return graded_dim(n, i - j - 1)


@dataclass(frozen=True)
class DimReport:
    n: int
    i: int
    j: int
    a_side: int
    b_side: int
    blocks: tuple[int, ...] = field(default=())

    @property
    def match(self) -> bool:
        return self.a_side == self.b_side

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "i": self.i,
            "j": self.j,
            "a_side": self.a_side,
            "b_side": self.b_side,
            "blocks": list(self.blocks),
            "match": self.match,
        }


def a_side_dim(n: int, i: int, j: int) -> DimReport:
    """Wrapped hom(L_i, L_j) as a sum over the cover thimbles of psi(L_j)."""
    blocks = tuple(pn_hom_dim(n, i, j - k) for k in range(n + 1))
    return DimReport(n, i, j, sum(blocks), b_side_dim(n, i, j), blocks)


def dims_grid(ns: Iterable[int], is_: Iterable[int], js: Iterable[int]) -> list[DimReport]:
    js = list(js)
    is_ = list(is_)
    return [a_side_dim(n, i, j) for n in ns for i in is_ for j in js]


def dims_csv(reports: Iterable[DimReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "i", "j", "a_side", "b_side", "match"])
    for r in reports:
        w.writerow([r.n, r.i, r.j, r.a_side, r.b_side, str(r.match).lower()])
    return buf.getvalue()

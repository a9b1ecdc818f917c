"""Homogeneous coordinate ring of X0 = V(t^(n+1) - x0...xn).

``S = k[x0..xn, t] / (t^(n+1) - x0...xn)`` is free over ``R = k[x0..xn]`` with
basis ``1, t, ..., t^n``, so every monomial has a unique normal form with
``t`` exponent at most ``n``.  The torus acts on ``x1..xn``, giving each
monomial the toric degree ``(a1 - a0, ..., an - a0)``.

Pushforward along the cover forgetting ``t`` is modelled as a block map
between ``E(i) = O(i) + O(i-1) + ... + O(i-n)`` and ``E(j)``: block ``(l, k)``
sends summand ``k`` of the source to summand ``l`` of the target and is a
homogeneous polynomial of degree ``(j - l) - (i - k)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

from .exact_poly import LaurentPolynomial, compositions, rational_rank


def x_vars(n: int) -> tuple[str, ...]:
    return tuple(f"x{k}" for k in range(n + 1))


@dataclass(frozen=True, order=True)
class RingMonomial:
    n: int
    t_exp: int
    x_exps: tuple[int, ...]

    def __post_init__(self):
        if len(self.x_exps) != self.n + 1:
            raise ValueError(f"need {self.n + 1} x-exponents, got {len(self.x_exps)}")
        if not 0 <= self.t_exp <= self.n or min(self.x_exps) < 0:
            raise ValueError(f"not a normal-form monomial: t^{self.t_exp} x^{self.x_exps}")

    @property
    def degree(self) -> int:
        return self.t_exp + sum(self.x_exps)

    def __mul__(self, other: "RingMonomial") -> "RingMonomial":
        if other.n != self.n:
            raise ValueError("monomials from different rings")
        return normal_form(
            self.n, self.t_exp + other.t_exp, [a + b for a, b in zip(self.x_exps, other.x_exps)]
        )

    def x_part(self) -> LaurentPolynomial:
        return LaurentPolynomial.monomial(x_vars(self.n), self.x_exps)

    def __str__(self):
        parts = [f"t^{self.t_exp}"] if self.t_exp else []
        parts += [f"x{k}^{a}" for k, a in enumerate(self.x_exps) if a]
        return "*".join(parts) or "1"

    def to_json(self) -> dict:
        return {"t": self.t_exp, "x": list(self.x_exps)}

    @classmethod
    def from_json(cls, n: int, data: dict) -> "RingMonomial":
        return normal_form(n, data["t"], data["x"])


def normal_form(n: int, t_exp: int, x_exps: Sequence[int]) -> RingMonomial:
    """Apply ``t^(n+1) = x0...xn`` until the t-exponent is at most n."""
    x_exps = list(x_exps)
    if t_exp < 0 or any(a < 0 for a in x_exps):
        raise ValueError(f"exponents must be nonnegative: t^{t_exp}, x^{x_exps}")
    if len(x_exps) != n + 1:
        raise ValueError(f"need {n + 1} x-exponents, got {len(x_exps)}")
    q, r = divmod(t_exp, n + 1)
    return RingMonomial(n, r, tuple(a + q for a in x_exps))


def graded_dim(n: int, d: int) -> int:
    """dim S_d = sum over a = 0..min(n, d) of C(d - a + n, n)."""
    if d < 0:
        return 0
    return sum(math.comb(d - a + n, n) for a in range(min(n, d) + 1))


def graded_basis(n: int, d: int) -> list[RingMonomial]:
    """Normal-form monomials of total degree d, sorted."""
    if d < 0:
        return []
    out = []
    for a in range(min(n, d) + 1):
        for xs in compositions(d - a, n + 1):
            out.append(RingMonomial(n, a, xs))
    return sorted(out)


def toric_degree(m: RingMonomial) -> tuple[int, ...]:
    a0 = m.x_exps[0]
    return tuple(a - a0 for a in m.x_exps[1:])


def monomial_by_toric_degree(n: int, d: int, v: Sequence[int]) -> RingMonomial | None:
    """The unique degree-d normal-form monomial with toric degree v, if any."""
    v = tuple(v)
    if len(v) != n:
        raise ValueError(f"toric degree must have length {n}")
    if d < 0:
        return None
    # d = t + (n+1) a0 + sum(v) with 0 <= t <= n and a0 >= max(0, -min v)
    a0, t = divmod(d - sum(v), n + 1)
    a0_min = max([0] + [-x for x in v])
    if a0 < a0_min:
        return None
    return RingMonomial(n, t, (a0,) + tuple(a0 + x for x in v))


# -- hom spaces between line bundles ----------------------------------------


@dataclass(frozen=True)
class HomSpace:
    """hom(O(i), O(j)) on X0.

    For ``j >= i`` the basis is the degree ``j - i`` monomials of S.  For
    ``j < i`` only the dimension is kept, through the Serre-dual space
    ``hom(O(j), O(i - 1))`` (dualizing sheaf O(-1)) with shift ``n``.
    """

    n: int
    i: int
    j: int
    dim: int
    basis: tuple[RingMonomial, ...] | None
    serre_dual_of: tuple[int, int] | None
    shift: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "i": self.i,
            "j": self.j,
            "dim": self.dim,
            "shift": self.shift,
            "basis": None if self.basis is None else [m.to_json() for m in self.basis],
            "serre_dual_of": None if self.serre_dual_of is None else list(self.serre_dual_of),
        }


def hom_space(n: int, i: int, j: int) -> HomSpace:
    if j >= i:
        basis = tuple(graded_basis(n, j - i))
        return HomSpace(n, i, j, len(basis), basis, None, 0)
    return HomSpace(n, i, j, graded_dim(n, i - 1 - j), None, (j, i - 1), n)


# -- pushforward block maps -------------------------------------------------


def _zero(n: int) -> LaurentPolynomial:
    return LaurentPolynomial(x_vars(n))


def product_f0(n: int) -> LaurentPolynomial:
    return LaurentPolynomial.monomial(x_vars(n), (1,) * (n + 1))


@dataclass(frozen=True)
class BlockMap:
    """Morphism E(source) -> E(target) as an (n+1) x (n+1) grid of polynomials."""

    n: int
    source: int
    target: int
    blocks: tuple[tuple[LaurentPolynomial, ...], ...]

    def __post_init__(self):
        size = self.n + 1
        if len(self.blocks) != size or any(len(row) != size for row in self.blocks):
            raise ValueError(f"block grid must be {size} x {size}")
        for l, row in enumerate(self.blocks):
            for k, p in enumerate(row):
                if p.is_zero():
                    continue
                deg = self.block_degree(l, k)
                if deg < 0 or not p.is_homogeneous(deg) or any(
                    a < 0 for e, _ in p.terms() for a in e
                ):
                    raise ValueError(f"block ({l},{k}) is not homogeneous of degree {deg}: {p}")

    def block_degree(self, l: int, k: int) -> int:
        return (self.target - l) - (self.source - k)

    def __matmul__(self, other: "BlockMap") -> "BlockMap":
        """Composition ``self o other`` (apply ``other`` first)."""
        if other.target != self.source or other.n != self.n:
            raise ValueError("block maps are not composable")
        size = self.n + 1
        blocks = tuple(
            tuple(
                reduce(
                    lambda acc, m: acc + self.blocks[l][m] * other.blocks[m][k],
                    range(size),
                    _zero(self.n),
                )
                for k in range(size)
            )
            for l in range(size)
        )
        return BlockMap(self.n, other.source, self.target, blocks)

    def nonzero_blocks(self) -> list[tuple[int, int, LaurentPolynomial]]:
        return [
            (l, k, p) for l, row in enumerate(self.blocks) for k, p in enumerate(row) if p
        ]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "source": self.source,
            "target": self.target,
            "blocks": [p.to_text() for row in self.blocks for p in row],
        }


def _check_f(n: int, f: LaurentPolynomial | None) -> LaurentPolynomial:
    if f is None:
        return product_f0(n)
    if f.variables != x_vars(n):
        raise ValueError(f"f must be a polynomial in {x_vars(n)}")
    if f.is_zero() or not f.is_homogeneous(n + 1) or any(a < 0 for e, _ in f.terms() for a in e):
        raise ValueError(f"f must be homogeneous of degree {n + 1}: {f}")
    return f


def pushforward_of_monomial(
    m: RingMonomial, i: int, j: int, f: LaurentPolynomial | None = None
) -> BlockMap:
    """Multiplication by ``m`` on S, written in the decomposition S = sum t^k R.

    ``t^k r`` goes to ``t^(k+a) x^alpha r``; when ``k + a > n`` the relation
    ``t^(n+1) = f`` moves it back to summand ``k + a - n - 1`` times ``f``.
    """
    n = m.n
    if m.degree != j - i:
        raise ValueError(f"monomial of degree {m.degree} cannot map O({i}) to O({j})")
    f = _check_f(n, f)
    x = m.x_part()
    grid = [[_zero(n) for _ in range(n + 1)] for _ in range(n + 1)]
    for k in range(n + 1):
        l = k + m.t_exp
        if l <= n:
            grid[l][k] = x
        else:
            grid[l - n - 1][k] = x * f
    return BlockMap(n, i, j, tuple(tuple(r) for r in grid))


def pushforward_of_t(n: int, f: LaurentPolynomial | None = None, i: int = 0) -> BlockMap:
    """Identity blocks O(i-k) -> O(i-k) shifted down one summand, and f in the corner."""
    return pushforward_of_monomial(RingMonomial(n, 1, (0,) * (n + 1)), i, i + 1, f)


def toric_block_sum(n: int, i: int, j: int, v: Sequence[int]) -> BlockMap:
    """Sum of every monomial of toric degree v across all blocks of hom(E(i), E(j))."""
    grid = [[_zero(n) for _ in range(n + 1)] for _ in range(n + 1)]
    vs = x_vars(n)
    s = sum(v)
    for l in range(n + 1):
        for k in range(n + 1):
            deg = (j - l) - (i - k)
            if deg < 0 or (deg - s) % (n + 1):
                continue
            a0 = (deg - s) // (n + 1)
            exps = (a0,) + tuple(a0 + x for x in v)
            if min(exps) >= 0:
                grid[l][k] = LaurentPolynomial.monomial(vs, exps)
    return BlockMap(n, i, j, tuple(tuple(r) for r in grid))


def multiplication_rank(n: int, d: int) -> tuple[int, int]:
    """Rank of S_1 (x) S_d -> S_{d+1} over Q, and dim S_{d+1}."""
    target = graded_basis(n, d + 1)
    index = {m: r for r, m in enumerate(target)}
    cols = []
    for a in graded_basis(n, 1):
        for b in graded_basis(n, d):
            col = [0] * len(target)
            col[index[a * b]] = 1
            cols.append(col)
    rows = [list(r) for r in zip(*cols)] if cols else [[0] for _ in target]
    return rational_rank(rows), len(target)

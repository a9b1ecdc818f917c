"""Exact multivariate Laurent polynomials over the rationals.

Every symbolic identity in the toolkit is checked on :class:`LaurentPolynomial`.
A polynomial lives in a fixed *variable context*, a tuple of names such as
``("y1", "y2")``; terms map integer exponent tuples to nonzero ``Fraction``
coefficients.  Values are immutable and all arithmetic is exact.

    >>> y1, = LaurentPolynomial.gens(("y1",))
    >>> (1 + y1) ** 2
    LaurentPolynomial('1 + 2 * y1^1 + 1 * y1^2', ('y1',))
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

__all__ = [
    "ContextError",
    "UnsupportedSubstitution",
    "LaurentPolynomial",
    "multinomial",
    "compositions",
    "rational_det",
    "rational_rank",
]


class ContextError(ValueError):
    """Operands live in different variable contexts."""


class UnsupportedSubstitution(ValueError):
    """Substitution image is not a Laurent monomial."""


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"exact coefficient required, got {type(c).__name__}")


class LaurentPolynomial:
    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping | Iterable = ()):
        self._vars = tuple(variables)
        nv = len(self._vars)
        acc: dict[tuple[int, ...], Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nv:
                raise ContextError(
                    f"exponent {exp} has length {len(exp)}, context has {nv} variables"
                )
            acc[exp] = acc.get(exp, Fraction(0)) + _as_fraction(c)
        self._terms = {e: c for e, c in acc.items() if c != 0}
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "LaurentPolynomial":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def monomial(cls, variables: Sequence[str], exp: Sequence[int], c=1) -> "LaurentPolynomial":
        return cls(variables, {tuple(exp): c})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> tuple["LaurentPolynomial", ...]:
        nv = len(variables)
        return tuple(
            cls.monomial(variables, tuple(int(i == k) for i in range(nv))) for k in range(nv)
        )

    # -- basic accessors --------------------------------------------------

    @property
    def variables(self) -> tuple[str, ...]:
        return self._vars

    @property
    def nvars(self) -> int:
        return len(self._vars)

    def terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in ascending lexicographic exponent order."""
        return sorted(self._terms.items())

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(e) for e in self._terms}
        if degree is None:
            return len(degs) <= 1
        return degs <= {degree}

    def total_degrees(self) -> set[int]:
        return {sum(e) for e in self._terms}

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            if other._vars != self._vars:
                raise ContextError(f"context {other._vars} does not match {self._vars}")
            return other
        if isinstance(other, (int, Rational)):
            return LaurentPolynomial.constant(self._vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return LaurentPolynomial(self._vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(self._vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return LaurentPolynomial(self._vars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative powers are defined only for monomials")
            (e, c), = self._terms.items()
            return LaurentPolynomial(self._vars, {tuple(-a for a in e): 1 / c}) ** (-k)
        result = LaurentPolynomial.constant(self._vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self._vars == other._vars and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self == LaurentPolynomial.constant(self._vars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._vars, frozenset(self._terms.items())))
        return self._hash

    def scale_exponents(self, shift: Sequence[int]) -> "LaurentPolynomial":
        """Multiply by the unit monomial with exponent ``shift``."""
        return LaurentPolynomial(
            self._vars,
            {tuple(a + s for a, s in zip(e, shift)): c for e, c in self._terms.items()},
        )

    def map_terms(self, fn) -> "LaurentPolynomial":
        """Rebuild from ``fn(exp, coeff) -> (exp, coeff)`` applied termwise."""
        return LaurentPolynomial(self._vars, [fn(e, c) for e, c in self._terms.items()])

    # -- calculus and evaluation -----------------------------------------

    def diff(self, i: int) -> "LaurentPolynomial":
        """Formal partial derivative in the i-th variable."""
        terms = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = c * e[i]
        return LaurentPolynomial(self._vars, terms)

    def __call__(self, *point):
        """Evaluate at a point; exact for rational input, floating otherwise."""
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = tuple(point[0])
        if len(point) != self.nvars:
            raise ContextError(f"expected {self.nvars} coordinates, got {len(point)}")
        exact = all(isinstance(p, (int, Rational)) for p in point)
        pt = [Fraction(p) for p in point] if exact else list(point)
        total = Fraction(0) if exact else 0
        for e, c in self._terms.items():
            term = c if exact else complex(c)
            for p, a in zip(pt, e):
                if a:
                    term = term * p**a
            total = total + term
        return total

    def substitute(self, images: Sequence["LaurentPolynomial"]) -> "LaurentPolynomial":
        """Compose with a Laurent-monomial substitution ``var_i -> images[i]``.

        Images may live in a different context; the result lives in theirs.
        """
        if len(images) != self.nvars:
            raise ContextError(f"need {self.nvars} images, got {len(images)}")
        if not images:
            return self
        target = images[0].variables
        mons = []
        for im in images:
            if im.variables != target:
                raise ContextError("substitution images must share one context")
            if not im.is_monomial():
                raise UnsupportedSubstitution(f"image {im} is not a Laurent monomial")
            (e, c), = im._terms.items()
            mons.append((e, c))
        terms: dict[tuple[int, ...], Fraction] = {}
        for e, c in self._terms.items():
            ne = [0] * len(target)
            coef = c
            for a, (me, mc) in zip(e, mons):
                if a:
                    coef *= mc**a
                    for k, b in enumerate(me):
                        ne[k] += a * b
            key = tuple(ne)
            terms[key] = terms.get(key, Fraction(0)) + coef
        return LaurentPolynomial(target, terms)

    # -- serialization ----------------------------------------------------

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.terms():
            factors = [f"{v}^{a}" for v, a in zip(self._vars, e) if a]
            if factors:
                parts.append(f"{c} * " + " * ".join(factors))
            else:
                parts.append(str(c))
        return " + ".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"LaurentPolynomial({self.to_text()!r}, {self._vars!r})"

    _TERM = re.compile(r"^\s*(-?\d+(?:/\d+)?)\s*((?:\*\s*\w+\^-?\d+\s*)*)$")

    @classmethod
    def from_text(cls, text: str, variables: Sequence[str]) -> "LaurentPolynomial":
        variables = tuple(variables)
        index = {v: k for k, v in enumerate(variables)}
        if text.strip() == "0":
            return cls(variables)
        terms = []
        for chunk in text.split(" + "):
            m = cls._TERM.match(chunk)
            if not m:
                raise ValueError(f"cannot parse term {chunk!r}")
            exp = [0] * len(variables)
            for name, a in re.findall(r"(\w+)\^(-?\d+)", m.group(2)):
                if name not in index:
                    raise ContextError(f"unknown variable {name!r}")
                exp[index[name]] += int(a)
            terms.append((exp, Fraction(m.group(1))))
        return cls(variables, terms)

    def to_json(self) -> list[dict]:
        return [
            {"exponent": list(e), "num": str(c.numerator), "den": str(c.denominator)}
            for e, c in self.terms()
        ]

    @classmethod
    def from_json(cls, data: list[dict], variables: Sequence[str]) -> "LaurentPolynomial":
        return cls(
            variables,
            [(t["exponent"], Fraction(int(t["num"]), int(t["den"]))) for t in data],
        )


def multinomial(top: int, parts: Sequence[int]) -> int:
    """``top! / prod(p!)`` for nonnegative ``parts`` summing to ``top``."""
    if any(p < 0 for p in parts):
        raise ValueError(f"parts must be nonnegative: {list(parts)}")
    if sum(parts) != top:
        raise ValueError(f"parts {list(parts)} do not sum to {top}")
    out = math.factorial(top)
    for p in parts:
        out //= math.factorial(p)
    return out


def compositions(total: int, length: int):
    """Yield all nonnegative integer vectors of given length and sum, in lex order."""
    if length == 0:
        if total == 0:
            yield ()
        return
    if length == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, length - 1):
            yield (first,) + rest


def _fraction_matrix(rows) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def rational_det(matrix) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    a = _fraction_matrix(matrix)
    size = len(a)
    if any(len(r) != size for r in a):
        raise ValueError("determinant needs a square matrix")
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, size):
            if a[r][col]:
                f = a[r][col] / a[col][col]
                for k in range(col, size):
                    a[r][k] -= f * a[col][k]
    return det


def rational_rank(matrix) -> int:
    """Exact rank over the rationals."""
    a = _fraction_matrix(matrix)
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        for r in range(nrows):
            if r != rank and a[r][col]:
                f = a[r][col] / a[rank][col]
                for k in range(col, ncols):
                    a[r][k] -= f * a[rank][k]
        rank += 1
        if rank == nrows:
            break
    return rank

"""Clifford algebra of a symmetric rational bilinear form.

Basis elements are ordered products ``e_S = e_{s1} e_{s2} ... e_{sk}`` with
``s1 < s2 < ... < sk``, stored as bitmasks.  Generators satisfy
``e_i e_j + e_j e_i = 2 B(i, j)``; the form need not be diagonal or
nondegenerate (``B = 0`` gives the exterior algebra).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .exact_poly import rational_det

Element = dict[int, Fraction]


def _bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def _add_into(acc: Element, other: Element, scale: Fraction) -> None:
    for k, v in other.items():
        c = acc.get(k, Fraction(0)) + scale * v
        if c:
            acc[k] = c
        else:
            acc.pop(k, None)


class CliffordAlgebra:
    def __init__(self, form):
        self.form = [[Fraction(x) for x in row] for row in form]
        self.n = len(self.form)
        for i in range(self.n):
            if len(self.form[i]) != self.n:
                raise ValueError("bilinear form must be square")
            for j in range(i):
                if self.form[i][j] != self.form[j][i]:
                    raise ValueError("bilinear form must be symmetric")
        self.dim = 1 << self.n
        self._times_gen = lru_cache(maxsize=None)(self._times_gen_uncached)
        self.table: dict[tuple[int, int], Element] = {
            (a, b): self._basis_product(a, b) for a in range(self.dim) for b in range(self.dim)
        }

    @property
    def nondegenerate(self) -> bool:
        return self.n == 0 or rational_det(self.form) != 0

    def _times_gen_uncached(self, mask: int, j: int) -> tuple[tuple[int, Fraction], ...]:
        # e_mask * e_j, reduced to the ordered basis
        if mask == 0:
            return ((1 << j, Fraction(1)),)
        top = mask.bit_length() - 1
        if top < j:
            return ((mask | 1 << j, Fraction(1)),)
        rest = mask & ~(1 << top)
        if top == j:
            b = self.form[j][j]
            return ((rest, b),) if b else ()
        # e_rest e_top e_j = -(e_rest e_j) e_top + 2 B(top, j) e_rest
        out: Element = {}
        for m, c in self._times_gen(rest, j):
            # every index in m is below top, so appending e_top keeps the order
            _add_into(out, {m | 1 << top: c}, Fraction(-1))
        b = self.form[top][j]
        if b:
            _add_into(out, {rest: Fraction(1)}, 2 * b)
        return tuple(sorted(out.items()))

    def _basis_product(self, a: int, b: int) -> Element:
        cur: Element = {a: Fraction(1)}
        for j in _bits(b):
            nxt: Element = {}
            for m, c in cur.items():
                _add_into(nxt, dict(self._times_gen(m, j)), c)
            cur = nxt
        return cur

    def mul(self, x: Element, y: Element) -> Element:
        out: Element = {}
        for a, ca in x.items():
            for b, cb in y.items():
                _add_into(out, self.table[a, b], ca * cb)
        return out

    def basis(self, mask: int) -> Element:
        return {mask: Fraction(1)}

    def generator(self, i: int) -> Element:
        return {1 << i: Fraction(1)}

    def anticommutator_defects(self) -> list[tuple[int, int, Element]]:
        """Pairs (i, j) where e_i e_j + e_j e_i - 2 B(i, j) is nonzero."""
        bad = []
        for i, j in product(range(self.n), repeat=2):
            s = self.mul(self.generator(i), self.generator(j))
            _add_into(s, self.mul(self.generator(j), self.generator(i)), Fraction(1))
            _add_into(s, {0: Fraction(1)}, -2 * self.form[i][j])
            if s:
                bad.append((i, j, s))
        return bad

    def structure_tensor(self) -> tuple[np.ndarray, int]:
        """Integer tensor ``T[a, b, m]`` and denominator ``D`` with e_a e_b = sum T/D e_m."""
        den = 1
        for v in self.table.values():
            for c in v.values():
                den = math.lcm(den, c.denominator)
        t = np.zeros((self.dim,) * 3, dtype=object)
        t[...] = 0
        for (a, b), v in self.table.items():
            for m, c in v.items():
                t[a, b, m] = c.numerator * (den // c.denominator)
        return t, den

    def associativity_defects(self) -> list[tuple[int, int, int]]:
        """Basis triples where (e_a e_b) e_c and e_a (e_b e_c) differ (exact)."""
        t, _ = self.structure_tensor()
        # left[a,b,c,:] = sum_m T[a,b,m] T[m,c,:];  right[a,b,c,:] = sum_m T[b,c,m] T[a,m,:]
        left = np.tensordot(t, t, axes=([2], [0]))
        right = np.tensordot(t, t, axes=([1], [2])).transpose(0, 2, 3, 1)
        diff = np.any(left != right, axis=3)
        return [tuple(int(x) for x in idx) for idx in zip(*np.nonzero(diff))]

    def label(self, mask: int) -> str:
        return "1" if mask == 0 else "".join(f"e{i + 1}" for i in _bits(mask))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "dim": self.dim,
            "form": [[str(x) for x in row] for row in self.form],
            "nondegenerate": self.nondegenerate,
            "table": [
                {
                    "left": self.label(a),
                    "right": self.label(b),
                    "product": {self.label(m): str(c) for m, c in sorted(v.items())},
                }
                for (a, b), v in sorted(self.table.items())
            ],
        }


def clifford_from_form(form) -> CliffordAlgebra:
    return CliffordAlgebra(form)

"""Landau-Ginzburg superpotential of the lifted Clifford torus.

Conventions
-----------
``W``      the disc potential  (1 + y1 + ... + yn)^(n+1) / (y1...yn) - (n+1)!
``W_hat``  the unshifted form  W + (n+1)!
``W_cl``   the Clifford-torus potential  y1 + ... + yn + 1/(y1...yn)

The covering map ``pi(y) = (y1*Y, ..., yn*Y)`` with ``Y = y1...yn`` satisfies
``W_hat o pi = W_cl^(n+1)``.  Critical values are reported for ``W_hat``
(``0`` and ``(n+1)^(n+1)``) with the shifted ``W`` values alongside.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact_poly import LaurentPolynomial, compositions, multinomial, rational_det

log = logging.getLogger(__name__)


def y_vars(n: int) -> tuple[str, ...]:
    return tuple(f"y{k}" for k in range(1, n + 1))


def z_vars(n: int) -> tuple[str, ...]:
    return tuple(f"z{k}" for k in range(n + 1))


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")


def build_W(n: int) -> LaurentPolynomial:
    _check_n(n)
    vs = y_vars(n)
    s = 1 + sum(LaurentPolynomial.gens(vs), LaurentPolynomial(vs))
    inv = LaurentPolynomial.monomial(vs, (-1,) * n)
    return s ** (n + 1) * inv - math.factorial(n + 1)


def build_W_hat(n: int) -> LaurentPolynomial:
    return build_W(n) + math.factorial(n + 1)


def build_W_cl(n: int) -> LaurentPolynomial:
    _check_n(n)
    vs = y_vars(n)
    return sum(LaurentPolynomial.gens(vs), LaurentPolynomial(vs)) + LaurentPolynomial.monomial(
        vs, (-1,) * n
    )


def covering_images(n: int) -> list[LaurentPolynomial]:
    """Images of the coordinates under ``y_i -> y_i * y1...yn``."""
    vs = y_vars(n)
    return [
        LaurentPolynomial.monomial(vs, tuple(1 + int(i == k) for i in range(n)))
        for k in range(n)
    ]


def covering_pullback(n: int) -> LaurentPolynomial:
    """``W_hat`` composed with the (n+1)-fold covering map."""
    return build_W_hat(n).substitute(covering_images(n))


# -- disc classes -----------------------------------------------------------


@dataclass(frozen=True, order=True)
class DiscClass:
    """Intersection numbers (alpha_0, ..., alpha_n) with the coordinate hyperplanes."""

    alpha: tuple[int, ...]

    def __post_init__(self):
        if any(a < 0 for a in self.alpha):
            raise ValueError(f"intersection numbers must be nonnegative: {self.alpha}")

    @property
    def n(self) -> int:
        return len(self.alpha) - 1

    @property
    def maslov(self) -> int:
        return 2 * sum(self.alpha)

    @property
    def is_spherical(self) -> bool:
        return all(a == 1 for a in self.alpha)


@dataclass(frozen=True)
class DiscCountTable:
    n: int
    rows: dict[DiscClass, int]

    def total(self) -> int:
        return sum(self.rows.values())

    def __getitem__(self, alpha) -> int:
        return self.rows[DiscClass(tuple(alpha))]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rows": [
                {"alpha": list(c.alpha), "maslov": c.maslov, "count": str(m)}
                for c, m in sorted(self.rows.items())
            ],
        }


def disc_counts(n: int) -> DiscCountTable:
    """Counts of Maslov 2(n+1) classes; the spherical class counts zero."""
    _check_n(n)
    rows = {}
    for alpha in compositions(n + 1, n + 1):
        c = DiscClass(alpha)
        rows[c] = 0 if c.is_spherical else multinomial(n + 1, alpha)
    return DiscCountTable(n, rows)


def reduce_product_relation(p: LaurentPolynomial) -> LaurentPolynomial:
    """Normal form modulo ``z0*z1*...*zn = 1``.

    Each monomial is divided by the largest power of the full product it
    contains, i.e. its minimum exponent is shifted to zero.
    """
    def step(e, c):
        m = min(e)
        return tuple(a - m for a in e), c

    return p.map_terms(step)


def verify_count_identity(n: int) -> tuple[bool, LaurentPolynomial]:
    """Compare sum m(alpha) z^alpha against (z0+...+zn)^(n+1) - (n+1)!.

    Returns ``(holds, residual)``; the residual is reduced and must be zero.
    """
    table = disc_counts(n)
    vs = z_vars(n)
    lhs = LaurentPolynomial(vs, [(c.alpha, m) for c, m in table.rows.items()])
    rhs = sum(LaurentPolynomial.gens(vs), LaurentPolynomial(vs)) ** (n + 1) - math.factorial(n + 1)
    residual = reduce_product_relation(lhs - rhs)
    return residual.is_zero(), residual


# -- numerical critical points ----------------------------------------------


@dataclass
class SolverConfig:
    starts: int = 64
    seed: int = 0
    newton_tol: float = 1e-10
    cluster_radius: float = 1e-6
    max_iter: int = 200
    hyperplane_samples: int = 4


class _CompiledLaurent:
    """Vectorized value, gradient and Hessian of a Laurent polynomial."""

    def __init__(self, p: LaurentPolynomial):
        terms = p.terms()
        self.exps = np.array([e for e, _ in terms], dtype=float).reshape(len(terms), p.nvars)
        self.coefs = np.array([float(c) for _, c in terms], dtype=float)

    def _weighted(self, y):
        return self.coefs * np.prod(y[None, :] ** self.exps, axis=1)

    def value(self, y):
        return self._weighted(y).sum()

    def grad(self, y):
        m = self._weighted(y)
        return (self.exps * m[:, None]).sum(axis=0) / y

    def hess(self, y):
        m = self._weighted(y)
        e = self.exps
        h = np.einsum("t,ti,tj->ij", m, e, e) - np.diag((e * m[:, None]).sum(axis=0))
        return h / np.outer(y, y)

    def grad_scale(self, y):
        """Per-entry sum of absolute term sizes in the gradient."""
        m = np.abs(self._weighted(y))
        return (np.abs(self.exps) * m[:, None]).sum(axis=0) / np.abs(y)

    def relative_grad_norm(self, y) -> float:
        return float(np.linalg.norm(self.grad(y) / np.maximum(1.0, self.grad_scale(y))))


@dataclass
class CriticalPoint:
    coordinates: np.ndarray
    value: complex
    grad_norm: float
    relative_grad_norm: float
    hessian_eigs: np.ndarray
    start_index: int

    def to_json(self) -> dict:
        return {
            "coordinates": [[float(z.real), float(z.imag)] for z in self.coordinates],
            "value": [float(self.value.real), float(self.value.imag)],
            "grad_norm": self.grad_norm,
            "relative_grad_norm": self.relative_grad_norm,
            "hessian_eigenvalue_magnitudes": [float(x) for x in self.hessian_eigs],
            "start_index": self.start_index,
        }


@dataclass
class CriticalReport:
    n: int
    config: SolverConfig
    points: list[CriticalPoint]
    values: list[complex]
    diverged: list[int]
    symmetric_value: Fraction

    @property
    def shift(self) -> int:
        return math.factorial(self.n + 1)

    @property
    def w_values(self) -> list[complex]:
        """The same critical values for the shifted potential ``W``."""
        return [v - self.shift for v in self.values]

    def to_json(self) -> dict:
        c = self.config
        return {
            "n": self.n,
            "solver": {
                "starts": c.starts,
                "seed": c.seed,
                "newton_tol": c.newton_tol,
                "cluster_radius": c.cluster_radius,
                "max_iter": c.max_iter,
                "hyperplane_samples": c.hyperplane_samples,
            },
            "critical_values_W_hat": [[float(v.real), float(v.imag)] for v in self.values],
            "critical_values_W": [[float(v.real), float(v.imag)] for v in self.w_values],
            "symmetric_value_exact": str(self.symmetric_value),
            "diverged_starts": self.diverged,
            "points": [p.to_json() for p in self.points],
        }


def _random_torus_point(rng, size: int) -> np.ndarray:
    return np.exp(rng.normal(0.0, 0.5, size)) * np.exp(1j * rng.uniform(0.0, 2 * np.pi, size))


def _start_points(n: int, config: SolverConfig, rng) -> list[np.ndarray]:
    starts = [np.ones(n, dtype=complex)]
    starts += [_random_torus_point(rng, n) for _ in range(config.starts)]
    # explicit samples of the degenerate locus 1 + sum(y) = 0
    for _ in range(config.hyperplane_samples):
        head = _random_torus_point(rng, n - 1)
        starts.append(np.concatenate([head, [-1.0 - head.sum()]]))
    return starts


def _newton(f: _CompiledLaurent, y0: np.ndarray, config: SolverConfig):
    """Damped Newton for y * grad(y) = 0 in logarithmic coordinates.

    Stops at an absolute gradient norm below tolerance, or when the line
    search stalls; a stalled point is accepted if its relative gradient
    norm is below tolerance (rounding floor near degenerate loci).
    """
    u = np.log(y0.astype(complex))

    def residual(u):
        y = np.exp(u)
        return y * f.grad(y)

    r = residual(u)
    with np.errstate(all="ignore"):
        for _ in range(config.max_iter):
            y = np.exp(u)
            if np.linalg.norm(f.grad(y)) < config.newton_tol:
                return y
            jac = np.diag(y) @ f.hess(y) @ np.diag(y) + np.diag(r)
            step = np.linalg.lstsq(jac, r, rcond=None)[0]
            length = np.linalg.norm(step)
            if length > 1.0:
                step = step / length
            r0, t = np.linalg.norm(r), 1.0
            while t >= 1e-4:
                u_new = u - t * step
                r_new = residual(u_new)
                if np.all(np.isfinite(r_new)) and np.linalg.norm(r_new) < (1 - 1e-4 * t) * r0:
                    break
                t /= 2
            else:
                break
            u, r = u_new, r_new
    y = np.exp(u)
    if np.all(np.isfinite(y)) and f.relative_grad_norm(y) < config.newton_tol:
        return y
    return None


def critical_points(n: int, config: SolverConfig | None = None) -> CriticalReport:
    """Multi-start Newton on grad W_hat over (C*)^n.

    Starts are the symmetric point, ``config.starts`` random torus points and
    ``config.hyperplane_samples`` points on the degenerate locus.  Distinct
    critical values of ``W_hat`` are clustered within ``cluster_radius``
    (relative to magnitude once it exceeds 1).
    """
    _check_n(n)
    config = config or SolverConfig()
    rng = np.random.default_rng(config.seed)
    w_hat = build_W_hat(n)
    f = _CompiledLaurent(w_hat)
    points: list[CriticalPoint] = []
    values: list[complex] = []
    diverged: list[int] = []
    for idx, y0 in enumerate(_start_points(n, config, rng)):
        if np.any(y0 == 0):
            log.warning("start %d has a zero coordinate; skipped", idx)
            continue
        y = _newton(f, y0, config)
        if y is None:
            log.info("start %d did not converge", idx)
            diverged.append(idx)
            continue
        val = complex(f.value(y))
        if not any(np.linalg.norm(p.coordinates - y) < config.cluster_radius for p in points):
            eigs = np.sort(np.abs(np.linalg.eigvals(f.hess(y))))
            points.append(
                CriticalPoint(
                    y, val, float(np.linalg.norm(f.grad(y))), f.relative_grad_norm(y), eigs, idx
                )
            )
        if not any(abs(val - v) < config.cluster_radius * max(1.0, abs(v)) for v in values):
            values.append(val)
    values.sort(key=lambda v: (v.real, v.imag))
    return CriticalReport(n, config, points, values, diverged, w_hat([1] * n))


# -- Hessian at the symmetric point -----------------------------------------


def hessian_at_symmetric_point(n: int) -> list[list[Fraction]]:
    """Exact second-derivative matrix of ``W_hat`` at ``y = (1, ..., 1)``."""
    w = build_W_hat(n)
    ones = [1] * n
    firsts = [w.diff(i) for i in range(n)]
    return [[firsts[i].diff(j)(ones) for j in range(n)] for i in range(n)]


def hessian_determinant(n: int) -> Fraction:
    return rational_det(hessian_at_symmetric_point(n))

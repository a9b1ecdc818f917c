"""Blaschke products, jets at the origin, and the branched-cover arithmetic.

Jets are computed from truncated power series.  ``(z - a) / (1 - conj(a) z)``
expands as ``(z - a) * sum (conj(a) z)^k``, so no symbolic differentiation is
needed and the coefficients are accurate to machine precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np


class NumericalError(RuntimeError):
    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


# -- truncated series -------------------------------------------------------


def series_mul(a: np.ndarray, b: np.ndarray, order: int) -> np.ndarray:
    return np.convolve(a, b)[: order + 1]


def series_inv(a: np.ndarray, order: int) -> np.ndarray:
    """Reciprocal of a power series with nonzero constant term."""
    a = np.asarray(a, dtype=complex)
    if a[0] == 0:
        raise ZeroDivisionError("series has no constant term")
    out = np.zeros(order + 1, dtype=complex)
    out[0] = 1 / a[0]
    for k in range(1, order + 1):
        s = sum(a[m] * out[k - m] for m in range(1, min(k, len(a) - 1) + 1))
        out[k] = -s / a[0]
    return out


def _pad(c, order: int) -> np.ndarray:
    out = np.zeros(order + 1, dtype=complex)
    c = np.asarray(c, dtype=complex)[: order + 1]
    out[: len(c)] = c
    return out


def mobius_series(a: complex, order: int) -> np.ndarray:
    geo = np.conj(a) ** np.arange(order + 1)
    return series_mul(_pad([-a, 1], order), geo, order)


# -- Blaschke products ------------------------------------------------------


@dataclass(frozen=True)
class BlaschkeProduct:
    xi: complex
    centers: tuple[complex, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "xi", complex(self.xi))
        object.__setattr__(self, "centers", tuple(complex(a) for a in self.centers))
        if abs(abs(self.xi) - 1) > 1e-12:
            raise ValueError(f"|xi| must be 1, got {abs(self.xi)}")
        for a in self.centers:
            if not abs(a) < 1:
                raise ValueError(f"center {a} is not inside the unit disc")

    @property
    def degree(self) -> int:
        return len(self.centers)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.full(z.shape, self.xi, dtype=complex)
        for a in self.centers:
            out *= (z - a) / (1 - np.conj(a) * z)
        return out if out.shape else complex(out)

    def __mul__(self, other: "BlaschkeProduct") -> "BlaschkeProduct":
        return BlaschkeProduct(self.xi * other.xi, self.centers + other.centers)

    def taylor(self, order: int) -> np.ndarray:
        out = _pad([self.xi], order)
        for a in self.centers:
            out = series_mul(out, mobius_series(a, order), order)
        return out


def blaschke_eval(b: BlaschkeProduct, z):
    return b(z)


def blaschke_jet(b: BlaschkeProduct, order: int) -> np.ndarray:
    """(h(0), h'(0), ..., h^(order)(0))."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    fact = np.array([math.factorial(k) for k in range(order + 1)], dtype=float)
    return b.taylor(order) * fact


def winding_number(b: BlaschkeProduct, samples: int = 4096) -> int:
    """Winding of the boundary loop around 0, which equals the degree."""
    theta = np.linspace(0, 2 * np.pi, samples + 1)
    phase = np.unwrap(np.angle(b(np.exp(1j * theta))))
    return int(round((phase[-1] - phase[0]) / (2 * np.pi)))


# -- jet map on normalized degree-d products --------------------------------


def _p_coeffs(lam: np.ndarray) -> np.ndarray:
    """Ascending coefficients of P(z) = sum (-1)^i lam_i z^(d-i), lam_0 = 1."""
    d = len(lam)
    c = np.zeros(d + 1, dtype=complex)
    c[d] = 1
    for i in range(1, d + 1):
        c[d - i] = (-1) ** i * lam[i - 1]
    return c


def _r_coeffs(lam: np.ndarray) -> np.ndarray:
    """Ascending coefficients of R(z) = sum (-1)^i conj(lam_i) z^i."""
    return np.concatenate([[1], [(-1) ** i * np.conj(l) for i, l in enumerate(lam, 1)]])


def jet_map(lam: Sequence[complex], derivatives: bool = False) -> np.ndarray:
    """First d Taylor coefficients at 0 of the degree-d product with v(1) = 1.

    ``lam`` holds the elementary symmetric functions of the centers; the map
    is ``v(z) = R(1) / R(z) * P(z) / P(1)``.
    """
    lam = np.asarray(lam, dtype=complex)
    d = len(lam)
    order = d - 1
    p, r = _p_coeffs(lam), _r_coeffs(lam)
    scale = np.polyval(r[::-1], 1) / np.polyval(p[::-1], 1)
    c = scale * series_mul(_pad(p, order), series_inv(r, order), order)
    if derivatives:
        c = c * np.array([math.factorial(k) for k in range(d)], dtype=float)
    return c


def wirtinger_fd(fun, x0: np.ndarray, steps=(1e-4, 5e-5), tol: float = 1e-6):
    """Richardson-extrapolated central differences, split into d/dz and d/dzbar."""
    x0 = np.asarray(x0, dtype=complex)
    m = len(fun(x0))
    hol = np.zeros((m, len(x0)), dtype=complex)
    anti = np.zeros((m, len(x0)), dtype=complex)
    h1, h2 = steps
    ratio = (h1 / h2) ** 2
    worst = 0.0
    for k in range(len(x0)):
        partial = []
        for direction in (1, 1j):
            e = np.zeros(len(x0), dtype=complex)
            e[k] = direction

            def central(h):
                return (fun(x0 + h * e) - fun(x0 - h * e)) / (2 * h)

            d1, d2 = central(h1), central(h2)
            rich = (ratio * d2 - d1) / (ratio - 1)
            gap = float(np.max(np.abs(rich - d2)))
            worst = max(worst, gap)
            if not np.all(np.isfinite(rich)) or gap > 1e3 * tol:
                raise NumericalError(
                    "Richardson extrapolation did not settle",
                    {"column": k, "direction": str(direction), "gap": gap, "steps": list(steps)},
                )
            partial.append(rich)
        dx, dy = partial
        hol[:, k] = (dx - 1j * dy) / 2
        anti[:, k] = (dx + 1j * dy) / 2
    return hol, anti, worst


def expected_jet_jacobian(d: int, derivatives: bool = False) -> np.ndarray:
    """Column i (lam_i) carries (-1)^i in slot d - i, scaled by (d-i)! for derivatives."""
    out = np.zeros((d, d), dtype=complex)
    for i in range(1, d + 1):
        out[d - i, i - 1] = (-1) ** i * (math.factorial(d - i) if derivatives else 1)
    return out


@dataclass
class JetJacobianReport:
    d: int
    holomorphic: np.ndarray
    antiholomorphic: np.ndarray
    pattern: list[tuple[int, int, int]]
    signed_permutation: bool
    determinant: complex
    anti_max: float
    expected_error: float
    extrapolation_gap: float
    tol: float

    @property
    def passed(self) -> bool:
        return (
            self.anti_max <= self.tol
            and self.signed_permutation
            and self.expected_error <= self.tol
            and abs(self.determinant) > 0.5
        )

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "pattern": [{"lambda": i, "slot": s, "sign": g} for i, s, g in self.pattern],
            "signed_permutation": self.signed_permutation,
            "abs_det": round(abs(self.determinant), 12),
            "anti_max": float(f"{self.anti_max:.3e}"),
            "expected_error": float(f"{self.expected_error:.3e}"),
            "passed": self.passed,
        }


def _signed_pattern(m: np.ndarray, tol: float) -> tuple[list[tuple[int, int, int]], bool]:
    pattern = []
    ok = True
    for col in range(m.shape[1]):
        rows = np.nonzero(np.abs(m[:, col]) > tol)[0]
        if len(rows) != 1:
            ok = False
            continue
        v = m[rows[0], col]
        ok &= abs(abs(v) - 1) <= tol and abs(v.imag) <= tol
        pattern.append((col + 1, int(rows[0]), 1 if v.real > 0 else -1))
    ok &= len({s for _, s, _ in pattern}) == m.shape[1]
    return pattern, bool(ok)


def jet_jacobian_at_zero(d: int, tol: float = 1e-6) -> JetJacobianReport:
    """Finite-difference Jacobian of the Taylor-coefficient jet map at lam = 0."""
    if d < 1:
        raise ValueError("d must be at least 1")
    hol, anti, gap = wirtinger_fd(jet_map, np.zeros(d, dtype=complex), tol=tol)
    pattern, ok = _signed_pattern(hol, tol)
    return JetJacobianReport(
        d=d,
        holomorphic=hol,
        antiholomorphic=anti,
        pattern=pattern,
        signed_permutation=ok,
        determinant=complex(np.linalg.det(hol)),
        anti_max=float(np.max(np.abs(anti))),
        expected_error=float(np.max(np.abs(hol - expected_jet_jacobian(d)))),
        extrapolation_gap=gap,
        tol=tol,
    )


# -- rigidity of order-(n+1) tangency at the origin -------------------------


def _tangency_residual(lam: np.ndarray, n: int):
    """Taylor coefficients 0..n of P/R and their Wirtinger derivatives."""
    d = n + 1
    p, r = _p_coeffs(lam), _r_coeffs(lam)
    rinv = series_inv(r, n)
    val = series_mul(_pad(p, n), rinv, n)
    rinv2 = series_mul(rinv, rinv, n)
    dl = np.zeros((d, d), dtype=complex)
    dlbar = np.zeros((d, d), dtype=complex)
    for i in range(1, d + 1):
        if d - i <= n:
            e = np.zeros(n + 1, dtype=complex)
            e[d - i] = (-1) ** i
            dl[:, i - 1] = series_mul(e, rinv, n)
        e = np.zeros(n + 1, dtype=complex)
        if i <= n:
            e[i] = (-1) ** i
        dlbar[:, i - 1] = -series_mul(series_mul(_pad(p, n), e, n), rinv2, n)
    return val, dl, dlbar


def fujiwara_bound(lam: np.ndarray) -> float:
    """Upper bound on the moduli of the roots of z^d - lam_1 z^(d-1) + ..."""
    lam = np.abs(np.asarray(lam, dtype=complex))
    return float(2 * max((lam[k - 1] ** (1 / k) for k in range(1, len(lam) + 1)), default=0.0))


def _solve_tangency(lam0: np.ndarray, n: int, target: float, max_iter: int = 200):
    lam = lam0.copy()
    for it in range(max_iter):
        if fujiwara_bound(lam) < target:
            return lam, it, True
        val, dl, dlbar = _tangency_residual(lam, n)
        # real Jacobian of (Re F, Im F) in (Re lam, Im lam)
        jx, jy = dl + dlbar, 1j * (dl - dlbar)
        J = np.block([[jx.real, jy.real], [jx.imag, jy.imag]])
        rhs = -np.concatenate([val.real, val.imag])
        step = np.linalg.lstsq(J, rhs, rcond=None)[0]
        delta = step[: n + 1] + 1j * step[n + 1 :]
        base = np.linalg.norm(val)
        t = 1.0
        while t > 1e-6:
            trial = lam + t * delta
            if np.linalg.norm(_tangency_residual(trial, n)[0]) < base or base == 0:
                break
            t /= 2
        lam = trial
    return lam, max_iter, fujiwara_bound(lam) < target


@dataclass
class RigidityTrial:
    trial: int
    start_centers: list[complex]
    converged: bool
    iterations: int
    center_bound: float
    max_root: float

    def to_json(self) -> dict:
        return {
            "trial": self.trial,
            "converged": self.converged,
            "iterations": self.iterations,
            "center_bound": float(f"{self.center_bound:.3e}"),
        }


@dataclass
class RigidityReport:
    n: int
    seed: int
    tol: float
    trials: list[RigidityTrial] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.trials) and all(
            t.converged and t.center_bound <= self.tol for t in self.trials
        )

    @property
    def failures(self) -> list[int]:
        return [t.trial for t in self.trials if not (t.converged and t.center_bound <= self.tol)]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "seed": self.seed,
            "tol": self.tol,
            "trials": len(self.trials),
            "failures": self.failures,
            "worst_center_bound": float(
                f"{max((t.center_bound for t in self.trials), default=0.0):.3e}"
            ),
            "passed": self.passed,
        }


def sample_disc(rng: np.random.Generator, size: int, radius: float = 0.9) -> np.ndarray:
    r = radius * np.sqrt(rng.uniform(size=size))
    return r * np.exp(2j * np.pi * rng.uniform(size=size))


def spherical_rigidity_check(
    n: int, trials: int = 100, seed: int = 0, tol: float = 1e-8
) -> RigidityReport:
    """Solve for n+1 Mobius factors whose product vanishes to order n+1 at 0.

    Each trial starts from random centers and runs damped Newton on the
    elementary symmetric functions of the centers.  A trial passes when the
    Fujiwara bound certifies every center of the solution lies within ``tol``
    of the origin.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    report = RigidityReport(n, seed, tol)
    for k in range(trials):
        rng = np.random.default_rng([seed, k])
        centers = sample_disc(rng, n + 1)
        lam0 = np.array([(-1) ** i * c for i, c in enumerate(np.poly(centers)[1:], 1)])
        lam, its, ok = _solve_tangency(lam0, n, target=tol / 10)
        poly = np.concatenate([[1], [(-1) ** i * l for i, l in enumerate(lam, 1)]])
        roots = np.roots(poly) if np.any(poly[1:]) else np.zeros(n + 1)
        report.trials.append(
            RigidityTrial(
                k,
                [complex(c) for c in centers],
                ok,
                its,
                fujiwara_bound(lam),
                float(np.max(np.abs(roots))) if len(roots) else 0.0,
            )
        )
    return report


# -- branched cover arithmetic ----------------------------------------------


@dataclass(frozen=True)
class BranchData:
    n: int
    m: int
    deg_X: int

    def __post_init__(self):
        if self.m < 1 or self.deg_X < 1:
            raise ValueError("m and deg_X must be positive")


@dataclass(frozen=True)
class BranchDegree:
    value: Fraction
    is_integer: bool
    divisible_by_n_plus_1: bool

    def to_json(self) -> dict:
        return {
            "deg_B": str(self.value),
            "is_integer": self.is_integer,
            "divisible_by_n_plus_1": self.divisible_by_n_plus_1,
        }


def branch_degree(bd: BranchData) -> BranchDegree:
    value = (bd.n + 1 - Fraction(1, bd.m)) * bd.deg_X
    is_int = value.denominator == 1
    return BranchDegree(value, is_int, is_int and value.numerator % (bd.n + 1) == 0)


def _recip(m):
    return Fraction(1, m) if isinstance(m, int) else 1 / m


def maslov_in_cover(n, m, deg_B, mu_base, vB):
    """Maslov index of a lift: mu_base - (2 / deg_B)(n + 1 - 1/m) vB.

    Exact for integer and Fraction input; symbolic input is passed through.
    """
    if isinstance(deg_B, (int, Fraction)):
        if deg_B <= 0:
            raise ValueError("deg_B must be positive")
        deg_B = Fraction(deg_B)
    return mu_base - 2 * (n + 1 - _recip(m)) * vB / deg_B


def ordered_partition_count(alpha: Sequence[int]) -> int:
    """Ways to send len(alpha) labelled factors into blocks of sizes alpha (brute force)."""
    slots = sum(alpha)
    target = tuple(alpha)
    count = 0
    for assignment in product(range(len(alpha)), repeat=slots):
        sizes = [0] * len(alpha)
        for b in assignment:
            sizes[b] += 1
        count += tuple(sizes) == target
    return count

"""One test per acceptance criterion, each with its time budget."""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from mirrorkit import cli
from mirrorkit.clifford import CliffordAlgebra
from mirrorkit.coord_ring import (
    graded_basis,
    product_f0,
    pushforward_of_t,
    toric_degree,
    x_vars,
)
from mirrorkit.disc_numerics import BranchData, branch_degree, jet_jacobian_at_zero, spherical_rigidity_check
from mirrorkit.exact_poly import LaurentPolynomial
from mirrorkit.fs_combinatorics import a_side_dim, dictionary_is_bijective, psi_degree_identity
from mirrorkit.superpotential import (
    build_W_cl,
    build_W_hat,
    covering_pullback,
    critical_points,
    disc_counts,
    hessian_at_symmetric_point,
    hessian_determinant,
    verify_count_identity,
)


@contextmanager
def criterion(number, title, budget):
    t0 = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - t0
        assert elapsed < budget, f"took {elapsed:.2f}s, budget {budget}s"
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - t0
        line = f"{number:>2} {status}  {title}  ({elapsed:.2f}s, budget {budget}s)"
        ACCEPTANCE_LINES.append(line)
        print(line)


def test_01_pullback_identity():
    with criterion(1, "covering pullback equals W_cl^(n+1), n=1..4", 5):
        for n in range(1, 5):
            assert covering_pullback(n) == build_W_cl(n) ** (n + 1)


def test_02_disc_count_identity():
    with criterion(2, "disc counts reproduce (sum z)^(n+1) - (n+1)!, n=1..5", 10):
        for n in range(1, 6):
            ok, residual = verify_count_identity(n)
            assert ok and residual.is_zero()
            assert disc_counts(n)[(1,) * (n + 1)] == 0


def test_03_critical_values():
    with criterion(3, "critical values of W_hat are {0, (n+1)^(n+1)}, n=1..6", 30):
        for n in range(1, 7):
            rep = critical_points(n)
            expected = [0, (n + 1) ** (n + 1)]
            assert len(rep.values) == 2, rep.values
            for v, e in zip(rep.values, expected):
                assert abs(v - e) <= 1e-8, (n, v, e)
            assert build_W_hat(n)([1] * n) == expected[1]


def test_04_hessian_clifford():
    with criterion(4, "nondegenerate Hessian and Clifford relations, n=1..5", 10):
        for n in range(1, 6):
            assert hessian_determinant(n) != 0
            alg = CliffordAlgebra(hessian_at_symmetric_point(n))
            assert alg.anticommutator_defects() == []
            assert alg.associativity_defects() == []


def test_05_hms_dimensions():
    with criterion(5, "A-side and B-side hom dimensions agree, n=2..4, |i|,|j|<=6", 10):
        for n in range(2, 5):
            for i in range(-6, 7):
                for j in range(-6, 7):
                    r = a_side_dim(n, i, j)
                    assert r.match, r
        r = a_side_dim(2, 0, 1)
        assert (r.a_side, r.b_side) == (4, 4)


def test_06_psi_decomposition():
    with criterion(6, "psi degree multiset, n<=6, |j|<=20", 1):
        for n in range(1, 7):
            for j in range(-20, 21):
                assert psi_degree_identity(n, j)


def test_07_toric_tag():
    with criterion(7, "toric tag injective and chord dictionary bijective, n<=4, d<=8", 10):
        for n in range(1, 5):
            for d in range(0, 9):
                tags = [toric_degree(m) for m in graded_basis(n, d)]
                assert len(set(tags)) == len(tags)
                assert dictionary_is_bijective(n, d)


def test_08_pushforward_algebra():
    with criterion(8, "pushforward of t composed n+1 times is diag(x0...xn), n<=3", 5):
        for n in range(1, 4):
            comp = pushforward_of_t(n)
            for k in range(1, n + 1):
                comp = pushforward_of_t(n, i=k) @ comp
            f, zero = product_f0(n), LaurentPolynomial(x_vars(n))
            for l in range(n + 1):
                for k in range(n + 1):
                    assert comp.blocks[l][k] == (f if l == k else zero)


def test_09_jet_regularity():
    with criterion(9, "jet-map Jacobian at 0 is a signed permutation, d<=5", 10):
        for d in range(1, 6):
            rep = jet_jacobian_at_zero(d)
            assert rep.anti_max <= 1e-6
            assert rep.signed_permutation
            assert abs(rep.determinant) > 0.5


def test_10_spherical_rigidity():
    with criterion(10, "spherical rigidity, 100 trials per n<=3", 30):
        for n in range(1, 4):
            rep = spherical_rigidity_check(n, trials=100, seed=0, tol=1e-8)
            assert rep.passed, rep.failures


def test_11_branch_degree():
    with criterion(11, "branch degree: sextic at (2,2,3), divisibility at m=1", 1):
        for n in range(1, 30):
            bd = branch_degree(BranchData(n, 1, n + 1))
            assert bd.is_integer and bd.divisible_by_n_plus_1
        sextic = branch_degree(BranchData(2, 2, 3))
        assert sextic.value == 6, f"(n+1-1/m) deg_X = {sextic.value} at (n,m,deg_X)=(2,2,3)"


def test_12_determinism(tmp_path):
    with criterion(12, "same seed gives byte-identical JSON report", 60):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for p in paths:
            code = cli.main(["report", "--seed", "0", "--no-timestamp", "-o", str(p)])
            assert code == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()

"""Command-line front end: verification suites, sweeps and small calculators."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import re
import sys
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .clifford import CliffordAlgebra
from .coord_ring import product_f0, pushforward_of_t, x_vars
from .disc_numerics import (
    BlaschkeProduct,
    BranchData,
    NumericalError,
    blaschke_jet,
    branch_degree,
    jet_jacobian_at_zero,
    ordered_partition_count,
    sample_disc,
    spherical_rigidity_check,
    wirtinger_fd,
    winding_number,
)
from .exact_poly import LaurentPolynomial, compositions, multinomial
from .fs_combinatorics import (
    a_side_dim,
    dictionary_is_bijective,
    dims_csv,
    dims_grid,
    psi_decompose,
    psi_degree_identity,
    serre_twist,
)
from .superpotential import (
    SolverConfig,
    build_W_cl,
    covering_pullback,
    critical_points,
    hessian_at_symmetric_point,
    hessian_determinant,
    verify_count_identity,
)

log = logging.getLogger("mirrorkit")

SUITES = ("superpotential", "hms", "discs")

DEFAULTS = {
    "n": {"superpotential": (1, 4), "hms": (2, 4), "discs": (1, 3)},
    "i": (-6, 6),
    "j": (-6, 6),
    "trials": 100,
    "seed": 0,
    "starts": 64,
    "newton_tol": 1e-10,
    "cluster_radius": 1e-6,
    "value_tol": 1e-8,
    "fd_tol": 1e-6,
    "rigidity_tol": 1e-8,
}


class UsageError(ValueError):
    pass


def parse_range(text: str) -> tuple[int, int]:
    """``"A..B"`` or ``"A"`` to an inclusive pair; empty ranges are rejected."""
    text = str(text).strip()
    try:
        if ".." in text:
            lo, hi = (int(p) for p in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}, expected A..B") from None
    if hi < lo:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def _as_range(value) -> tuple[int, int]:
    if isinstance(value, (list, tuple)) and len(value) == 2:
        lo, hi = int(value[0]), int(value[1])
        if hi < lo:
            raise UsageError(f"empty range {value!r}")
        return lo, hi
    if isinstance(value, int):
        return value, value
    return parse_range(value)


@dataclass
class RunConfig:
    n: tuple[int, int] | None = None
    i: tuple[int, int] = DEFAULTS["i"]
    j: tuple[int, int] = DEFAULTS["j"]
    trials: int = DEFAULTS["trials"]
    seed: int = DEFAULTS["seed"]
    starts: int = DEFAULTS["starts"]
    newton_tol: float = DEFAULTS["newton_tol"]
    cluster_radius: float = DEFAULTS["cluster_radius"]
    value_tol: float = DEFAULTS["value_tol"]
    fd_tol: float = DEFAULTS["fd_tol"]
    rigidity_tol: float = DEFAULTS["rigidity_tol"]

    def validate(self) -> "RunConfig":
        for name in ("newton_tol", "cluster_radius", "value_tol", "fd_tol", "rigidity_tol"):
            if not getattr(self, name) > 0:
                raise UsageError(f"{name} must be positive")
        if self.trials < 1 or self.starts < 0:
            raise UsageError("trials must be positive and starts nonnegative")
        if self.n is not None and self.n[0] < 1:
            raise UsageError("n must be at least 1")
        return self

    def n_range(self, suite: str) -> range:
        lo, hi = self.n or DEFAULTS["n"][suite]
        return range(lo, hi + 1)

    def echo(self) -> dict:
        out = asdict(self)
        for key in ("n", "i", "j"):
            if out[key] is not None:
                out[key] = f"{out[key][0]}..{out[key][1]}"
        return out


@dataclass
class VerificationReport:
    config: dict
    records: list[dict] = field(default_factory=list)
    timestamp: str | None = None

    def add(self, check: str, params: dict, status: str, details=None) -> None:
        self.records.append(
            {"check": check, "params": params, "status": status, "details": details or {}}
        )

    def check(self, check: str, params: dict, ok: bool, details=None) -> None:
        self.add(check, params, "pass" if ok else "fail", details)

    @property
    def summary(self) -> dict:
        counts = {"pass": 0, "fail": 0, "skip": 0}
        for r in self.records:
            counts[r["status"]] += 1
        counts["total"] = len(self.records)
        return counts

    @property
    def failed(self) -> bool:
        return self.summary["fail"] > 0

    def to_json(self) -> dict:
        out = {
            "version": __version__,
            "config": self.config,
            "records": self.records,
            "summary": self.summary,
        }
        if self.timestamp is not None:
            out["timestamp"] = self.timestamp
        return out


def _guard(report: VerificationReport, check: str, params: dict, fn) -> None:
    """Run one check; an unexpected exception becomes a failed record."""
    try:
        fn()
    except (ArithmeticError, ValueError, NumericalError, np.linalg.LinAlgError) as exc:
        log.warning("%s %s raised %s", check, params, exc)
        report.add(check, params, "fail", {"error": f"{type(exc).__name__}: {exc}"})


def _num(x: float) -> float:
    return float(f"{x:.10g}")


# -- suites -----------------------------------------------------------------


def cmd_superpotential(cfg: RunConfig, report: VerificationReport) -> None:
    for n in cfg.n_range("superpotential"):
        p = {"n": n}

        def pullback():
            diff = covering_pullback(n) - build_W_cl(n) ** (n + 1)
            report.check("superpotential.pullback", p, diff.is_zero(), {"residual": diff.to_text()})

        def counts():
            ok, residual = verify_count_identity(n)
            report.check("superpotential.count_identity", p, ok, {"residual": residual.to_text()})

        def critical():
            solver = SolverConfig(
                starts=cfg.starts,
                seed=cfg.seed,
                newton_tol=cfg.newton_tol,
                cluster_radius=cfg.cluster_radius,
            )
            rep = critical_points(n, solver)
            expected = [0, (n + 1) ** (n + 1)]
            vals = rep.values
            ok = len(vals) == 2 and all(abs(v - e) <= cfg.value_tol for v, e in zip(vals, expected))
            ok &= rep.symmetric_value == expected[1]
            report.check(
                "superpotential.critical_values",
                p,
                ok,
                {
                    "W_hat": [[_num(v.real), _num(v.imag)] for v in vals],
                    "W": [[_num(v.real), _num(v.imag)] for v in rep.w_values],
                    "expected_W_hat": expected,
                    "symmetric_value_exact": str(rep.symmetric_value),
                    "diverged_starts": len(rep.diverged),
                },
            )

        def hessian():
            det = hessian_determinant(n)
            report.check("superpotential.hessian", p, det != 0, {"det": str(det)})

        def clifford():
            if n > 5:
                report.add("superpotential.clifford", p, "skip", {"reason": "2^n too large"})
                return
            alg = CliffordAlgebra(hessian_at_symmetric_point(n))
            anti = alg.anticommutator_defects()
            assoc = alg.associativity_defects()
            report.check(
                "superpotential.clifford",
                p,
                not anti and not assoc and alg.nondegenerate,
                {"dim": alg.dim, "anticommutator_defects": len(anti), "associativity_defects": len(assoc)},
            )

        for name, fn in [
            ("superpotential.pullback", pullback),
            ("superpotential.count_identity", counts),
            ("superpotential.critical_values", critical),
            ("superpotential.hessian", hessian),
            ("superpotential.clifford", clifford),
        ]:
            _guard(report, name, p, fn)


def cmd_hms(cfg: RunConfig, report: VerificationReport) -> None:
    irange = range(cfg.i[0], cfg.i[1] + 1)
    jrange = range(cfg.j[0], cfg.j[1] + 1)
    for n in cfg.n_range("hms"):
        p = {"n": n}
        grid = dims_grid([n], irange, jrange)
        bad = [(r.i, r.j) for r in grid if not r.match]
        report.check(
            "hms.dimension_match", p, not bad, {"pairs": len(grid), "mismatches": bad[:20]}
        )
        js = range(min(cfg.j[0], -20), max(cfg.j[1], 20) + 1)
        bad_psi = [j for j in js if not psi_degree_identity(n, j)]
        report.check("hms.psi_degrees", p, not bad_psi, {"j_checked": len(js), "failures": bad_psi})
        twist_ok = all(
            [serre_twist(t)[0] for t in psi_decompose(n, j + n + 1)] == psi_decompose(n, j)
            for j in js
        ) and all(
            a_side_dim(n, i, j).a_side == a_side_dim(n, i + n + 1, j + n + 1).a_side
            for i in irange
            for j in jrange
        )
        report.check("hms.serre_twist", p, twist_ok)
        bad_d = [d for d in range(9) if not dictionary_is_bijective(n, d)]
        report.check("hms.chord_dictionary", p, not bad_d, {"degrees": "0..8", "failures": bad_d})
        if n <= 4:
            t = pushforward_of_t(n)
            composite = t
            for k in range(1, n + 1):
                composite = pushforward_of_t(n, i=k) @ composite
            f, zero = product_f0(n), LaurentPolynomial(x_vars(n))
            ok = all(
                composite.blocks[l][k] == (f if l == k else zero)
                for l in range(n + 1)
                for k in range(n + 1)
            )
            report.check("hms.pushforward_t_power", p, ok, {"power": n + 1})
        else:
            report.add("hms.pushforward_t_power", p, "skip", {"reason": "n > 4"})


def cmd_discs(cfg: RunConfig, report: VerificationReport) -> None:
    for n in cfg.n_range("discs"):
        p = {"n": n}
        rng = np.random.default_rng([cfg.seed, n])

        def boundary():
            worst = 0.0
            for _ in range(200):
                b = BlaschkeProduct(np.exp(2j * np.pi * rng.uniform()), sample_disc(rng, n + 1))
                theta = rng.uniform(0, 2 * np.pi, size=5)
                worst = max(worst, float(np.max(np.abs(np.abs(b(np.exp(1j * theta))) - 1))))
            report.check("discs.boundary_modulus", p, worst <= 1e-10, {"worst": float(f"{worst:.3e}")})

        def degree():
            a = BlaschkeProduct(1, sample_disc(rng, n))
            b = BlaschkeProduct(1, sample_disc(rng, n + 1))
            w = winding_number(a * b)
            report.check("discs.degree_additivity", p, w == 2 * n + 1, {"winding": w})

        def jet_fd():
            b = BlaschkeProduct(1, sample_disc(rng, n + 1))
            jet = blaschke_jet(b, n)
            # jet of the product in the center a_0, differentiated numerically
            def along(z):
                return blaschke_jet(BlaschkeProduct(1, (z[0],) + b.centers[1:]), n)

            hol, anti, _ = wirtinger_fd(along, np.array([b.centers[0]]))
            a = b.centers[0]
            rest = BlaschkeProduct(1, b.centers[1:]).taylor(n)
            # d/da of (z - a)/(1 - conj(a) z) is -1/(1 - conj(a) z)
            dseries = -np.convolve(rest, np.conj(a) ** np.arange(n + 1))[: n + 1]
            fact = np.array([math.factorial(k) for k in range(n + 1)])
            err = float(np.max(np.abs(hol[:, 0] - dseries * fact)))
            value_err = abs(jet[0] - b(0))
            ok = err <= cfg.fd_tol and value_err <= 1e-12
            report.check("discs.jet_series_vs_fd", p, ok, {"fd_error": float(f"{err:.3e}")})

        def jacobian():
            rep = jet_jacobian_at_zero(n + 1, tol=cfg.fd_tol)
            report.check("discs.jet_jacobian", {"d": n + 1}, rep.passed, rep.to_json())

        def rigidity():
            rep = spherical_rigidity_check(n, cfg.trials, cfg.seed, cfg.rigidity_tol)
            report.check("discs.spherical_rigidity", p, rep.passed, rep.to_json())

        def branch():
            bd = branch_degree(BranchData(n, 1, n + 1))
            ok = bd.divisible_by_n_plus_1 and bd.value == n * (n + 1)
            report.check("discs.branch_degree", p, ok, bd.to_json())

        def partitions():
            if n > 4:
                report.add("discs.multinomial_enumeration", p, "skip", {"reason": "n > 4"})
                return
            bad = [
                a for a in compositions(n + 1, n + 1)
                if ordered_partition_count(a) != multinomial(n + 1, a)
            ]
            report.check("discs.multinomial_enumeration", p, not bad, {"failures": bad})

        for name, fn in [
            ("discs.boundary_modulus", boundary),
            ("discs.degree_additivity", degree),
            ("discs.jet_series_vs_fd", jet_fd),
            ("discs.jet_jacobian", jacobian),
            ("discs.spherical_rigidity", rigidity),
            ("discs.branch_degree", branch),
            ("discs.multinomial_enumeration", partitions),
        ]:
            _guard(report, name, p, fn)


RUNNERS = {"superpotential": cmd_superpotential, "hms": cmd_hms, "discs": cmd_discs}


def run_suites(cfg: RunConfig, suites, timestamp: bool = True) -> VerificationReport:
    report = VerificationReport(config={"suites": list(suites), **cfg.echo()})
    for suite in suites:
        t0 = time.perf_counter()
        RUNNERS[suite](cfg, report)
        log.info("%s finished in %.2fs", suite, time.perf_counter() - t0)
    if timestamp:
        report.timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return report


# -- rendering --------------------------------------------------------------


def render_report(report: VerificationReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_json(), sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "params", "status"])
        for r in report.records:
            w.writerow([r["check"], json.dumps(r["params"], sort_keys=True), r["status"]])
        return buf.getvalue()
    lines = []
    for r in report.records:
        params = " ".join(f"{k}={v}" for k, v in r["params"].items())
        lines.append(f"{r['status'].upper():5} {r['check']:34} {params}")
    s = report.summary
    lines.append(f"{s['pass']} passed, {s['fail']} failed, {s['skip']} skipped")
    return "\n".join(lines) + "\n"


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- argument handling ------------------------------------------------------


def _common(p: argparse.ArgumentParser, fmt_default: str = "text") -> None:
    p.add_argument("--format", choices=["text", "json", "csv"], default=None)
    p.add_argument("-o", "--output", metavar="PATH")
    p.set_defaults(fmt_default=fmt_default)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mirrorkit", description=__doc__)
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def suite_flags(p):
        p.add_argument("--n")
        p.add_argument("--i")
        p.add_argument("--j")
        p.add_argument("--trials", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--starts", type=int)
        p.add_argument("--config", metavar="JSON")
        p.add_argument("--no-timestamp", action="store_true")

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("suite", choices=[*SUITES, "all"])
    suite_flags(v)
    _common(v)

    r = sub.add_parser("report", help="run every suite and write a JSON report")
    suite_flags(r)
    _common(r, "json")

    d = sub.add_parser("dims", help="A-side and B-side hom dimensions")
    d.add_argument("--n", default="2")
    d.add_argument("--i", default="0")
    d.add_argument("--j", default="0..3")
    _common(d)

    s = sub.add_parser("psi", help="cover thimbles over a base thimble")
    s.add_argument("--n", default="2")
    s.add_argument("--j", default="0")
    _common(s)

    b = sub.add_parser("branch", help="degree of the branch locus")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--m", type=int, default=1)
    b.add_argument("--degx", type=int, required=True)
    _common(b)

    jj = sub.add_parser("jet-jacobian", help="jet-map Jacobian at the origin")
    jj.add_argument("--d", default="3")
    _common(jj)
    return ap


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    unknown = set(data) - set(RunConfig.__dataclass_fields__)
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    return data


def make_config(args: argparse.Namespace) -> RunConfig:
    """Flags override the config file, which overrides defaults."""
    merged = _load_config(args.config)
    for key in ("n", "i", "j", "trials", "seed", "starts"):
        val = getattr(args, key, None)
        if val is not None:
            merged[key] = val
    for key in ("n", "i", "j"):
        if key in merged:
            merged[key] = _as_range(merged[key])
    try:
        return RunConfig(**merged).validate()
    except TypeError as exc:
        raise UsageError(str(exc)) from None


def _fmt(args) -> str:
    return args.format or args.fmt_default


def _cmd_verify(args) -> int:
    cfg = make_config(args)
    suites = SUITES if getattr(args, "suite", "all") == "all" else (args.suite,)
    report = run_suites(cfg, suites, timestamp=not args.no_timestamp)
    _emit(render_report(report, _fmt(args)), args.output)
    return 1 if report.failed else 0


def _cmd_dims(args) -> int:
    ns, is_, js = (parse_range(x) for x in (args.n, args.i, args.j))
    if ns[0] < 1:
        raise UsageError("n must be at least 1")
    grid = dims_grid(
        range(ns[0], ns[1] + 1), range(is_[0], is_[1] + 1), range(js[0], js[1] + 1)
    )
    fmt = _fmt(args)
    if fmt == "csv":
        text = dims_csv(grid)
    elif fmt == "json":
        text = json.dumps([r.to_json() for r in grid], sort_keys=True, indent=2) + "\n"
    else:
        text = "".join(
            f"n={r.n} i={r.i} j={r.j}: a_side {r.a_side}, b_side {r.b_side}"
            f" {'match' if r.match else 'MISMATCH'}\n"
            for r in grid
        )
    _emit(text, args.output)
    return 0 if all(r.match for r in grid) else 1


def _cmd_psi(args) -> int:
    ns, js = parse_range(args.n), parse_range(args.j)
    if ns[0] < 1:
        raise UsageError("n must be at least 1")
    rows = []
    for n in range(ns[0], ns[1] + 1):
        for j in range(js[0], js[1] + 1):
            ts = psi_decompose(n, j)
            rows.append({
                "n": n,
                "j": j,
                "thimbles": [[t.k, t.i] for t in ts],
                "degrees": [t.mirror_degree for t in ts],
                "identity": psi_degree_identity(n, j),
            })
    fmt = _fmt(args)
    if fmt == "json":
        text = json.dumps(rows, sort_keys=True, indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "j", "k", "i", "degree"])
        for r in rows:
            for (k, i), d in zip(r["thimbles"], r["degrees"]):
                w.writerow([r["n"], r["j"], k, i, d])
        text = buf.getvalue()
    else:
        text = "".join(
            " ".join(f"({k},{i})" for k, i in r["thimbles"])
            + " degrees {" + ",".join(map(str, r["degrees"])) + "}\n"
            for r in rows
        )
    _emit(text, args.output)
    return 0 if all(r["identity"] for r in rows) else 1


def _cmd_branch(args) -> int:
    try:
        bd = branch_degree(BranchData(args.n, args.m, args.degx))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    data = {"n": args.n, "m": args.m, "deg_X": args.degx, **bd.to_json()}
    fmt = _fmt(args)
    if fmt == "json":
        text = json.dumps(data, sort_keys=True, indent=2) + "\n"
    elif fmt == "csv":
        text = "n,m,deg_X,deg_B,is_integer,divisible_by_n_plus_1\n" + ",".join(
            str(data[k]).lower() if isinstance(data[k], bool) else str(data[k])
            for k in ("n", "m", "deg_X", "deg_B", "is_integer", "divisible_by_n_plus_1")
        ) + "\n"
    else:
        flags = []
        if not bd.is_integer:
            flags.append("not an integer")
        elif bd.divisible_by_n_plus_1:
            flags.append(f"divisible by {args.n + 1}")
        text = f"deg B = {bd.value}" + (f" ({', '.join(flags)})" if flags else "") + "\n"
    _emit(text, args.output)
    return 0


def _cmd_jet(args) -> int:
    ds = parse_range(args.d)
    if ds[0] < 1:
        raise UsageError("d must be at least 1")
    reps = [jet_jacobian_at_zero(d) for d in range(ds[0], ds[1] + 1)]
    fmt = _fmt(args)
    if fmt == "json":
        text = json.dumps([r.to_json() for r in reps], sort_keys=True, indent=2) + "\n"
    elif fmt == "csv":
        text = "d,lambda,slot,sign\n" + "".join(
            f"{r.d},{i},{s},{g}\n" for r in reps for i, s, g in r.pattern
        )
    else:
        parts = []
        for r in reps:
            parts.append(
                f"d={r.d}: anti-holomorphic max {r.anti_max:.1e}, |det| {abs(r.determinant):.6f}, "
                f"signed permutation {'yes' if r.signed_permutation else 'no'}\n"
            )
            parts += [f"  lambda_{i} -> slot {s}, sign {'+' if g > 0 else '-'}\n" for i, s, g in r.pattern]
        text = "".join(parts)
    _emit(text, args.output)
    return 0 if all(r.passed for r in reps) else 1


COMMANDS = {
    "verify": _cmd_verify,
    "report": _cmd_verify,
    "dims": _cmd_dims,
    "psi": _cmd_psi,
    "branch": _cmd_branch,
    "jet-jacobian": _cmd_jet,
}


_RANGE_FLAGS = {"--n", "--i", "--j", "--d"}
_NEG_RANGE = re.compile(r"^-\d+(\.\.-?\d+)?$")


def _join_negative_ranges(argv: list[str]) -> list[str]:
    """Turn ``--i -4..4`` into ``--i=-4..4`` so argparse does not see an option."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _RANGE_FLAGS:
            nxt = next(it, None)
            if nxt is not None and _NEG_RANGE.match(nxt):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_negative_ranges(argv))
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    return 2

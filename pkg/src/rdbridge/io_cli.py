"""Config ingestion and the command-line surface over the solvers.

The CLI reads a flat ``key = value`` config file (every key can also be
given as a ``--key`` flag, flags win), builds the requested source and
loss matrix, and runs one of five commands:

    curve     sweep a beta schedule, write the curve as CSV
    point     solve one point, by beta or by target distortion, as JSON
    check     verdict on a candidate reconstruction law, as JSON
    sinkhorn  Schrodinger potentials and dual values for (mu, nu), as JSON
    compare   swept rates against a closed-form oracle, as CSV

All outputs are deterministic byte-for-byte for a fixed config: the
solvers are seedless and the ``RD_BRIDGE_THREADS`` cap never changes
results, only scheduling.  Exit codes: 0 success, 1 invalid input or
config, 2 partial or failed convergence (or an inconclusive verdict /
exceeded comparison bound), 3 suboptimal verdict.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .blahut import RDCurve, RDPoint, ba_fixed_point, rd_curve, rd_value_from_nu
from .distortion import (
    DistortionMatrix,
    SourceSpec,
    d_floor,
    d_max,
    discretize_gaussian,
    discretize_uniform,
    expected_loss,
    hamming,
    squared_error,
)
from .errors import (
    ConvergenceError,
    EmptyComparisonError,
    InvalidInputError,
    StaleCertificateError,
)
from .measures import ProbabilityVector
from .schrodinger import eval_J, eval_L, schrodinger_residual, sinkhorn
from .verify import (
    ToleranceConfig,
    check_optimality,
    compare_curve,
    oracle_bernoulli_hamming,
    oracle_gaussian_mse,
)

LN2 = math.log(2.0)

SOURCE_KINDS = ("bernoulli", "uniform", "gaussian", "custom")
DISTORTION_KINDS = ("hamming", "mse", "custom")
UNITS = ("nats", "bits")

# Every config key, its parser, and its default.  The config file is a
# flat key=value document; '#' starts a comment.  All keys double as
# --key command-line flags, and flags override the file.
_BOOL_WORDS = {"true": True, "1": True, "yes": True, "false": False, "0": False, "no": False}


def _parse_bool(text: str) -> bool:
    try:
        return _BOOL_WORDS[text.strip().lower()]
    except KeyError:
        raise InvalidInputError(f"expected a boolean, got {text!r}") from None


def _parse_floats(text: str) -> np.ndarray:
    try:
        return np.array([float(tok) for tok in text.replace(",", " ").split()])
    except ValueError:
        raise InvalidInputError(f"expected a list of reals, got {text!r}") from None


_SCHEMA: dict[str, tuple] = {
    "source.kind": (str, "bernoulli"),
    "source.p": (float, 0.3),
    "source.sigma": (float, 1.0),
    "source.width": (float, 6.0),
    "source.points": (int, 257),
    "source.weights": (_parse_floats, None),
    "source.labels": (_parse_floats, None),
    "distortion.kind": (str, "hamming"),
    "distortion.file": (str, None),
    "betas.lo": (float, 0.1),
    "betas.hi": (float, 20.0),
    "betas.count": (int, 30),
    "betas.list": (_parse_floats, None),
    "tol": (float, 1e-9),
    "max_iter": (int, 100000),
    "min_iter": (int, 1),
    "units": (str, "nats"),
    "deterministic": (_parse_bool, True),
    "warm_start": (_parse_bool, True),
    "compare.bound": (float, 1e-6),
    "compare.d_lo": (float, 0.0),
    "compare.d_hi": (float, float("inf")),
}


@dataclass
class RunConfig:
    """Fully resolved run parameters (defaults + config file + flags)."""

    values: dict = field(default_factory=dict)

    def __getitem__(self, key: str):
        return self.values[key]

    def as_dict(self) -> dict:
        """JSON-ready copy of the resolved configuration."""
        out = {}
        for key, val in self.values.items():
            if isinstance(val, np.ndarray):
                out[key] = [float(v) for v in val]
            elif isinstance(val, float) and math.isinf(val):
                out[key] = "inf"
            else:
                out[key] = val
        return out


def parse_config_text(text: str) -> dict[str, str]:
    """Parse a flat key=value document into raw string values.

    Blank lines and '#' comments are ignored; later keys override
    earlier ones.
    """
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise InvalidInputError(f"config line {lineno} is not key = value: {line!r}")
        key, value = body.split("=", 1)
        raw[key.strip()] = value.strip()
    return raw


def resolve_config(
    file_values: dict[str, str] | None = None,
    overrides: dict[str, str] | None = None,
) -> RunConfig:
    """Layer defaults, config-file values, and flag overrides into a RunConfig.

    Raises:
        InvalidInputError: unknown key, unparseable value, or a value
            violating the documented invariants (tol range, geometric
            schedule shape, unit names).
    """
    values = {key: default for key, (_, default) in _SCHEMA.items()}
    for layer in (file_values or {}), (overrides or {}):
        for key, raw in layer.items():
            if key not in _SCHEMA:
                raise InvalidInputError(f"unknown config key {key!r}")
            parse = _SCHEMA[key][0]
            try:
                values[key] = parse(raw) if isinstance(raw, str) else raw
            except (TypeError, ValueError) as err:
                raise InvalidInputError(f"bad value for {key}: {err}") from None

    if not 0.0 < values["tol"] <= 1e-2:
        raise InvalidInputError(
            f"tol out of range: need 0 < tol <= 1e-2, got {values['tol']}"
        )
    if values["source.kind"] not in SOURCE_KINDS:
        raise InvalidInputError(
            f"source.kind must be one of {SOURCE_KINDS}, got {values['source.kind']!r}"
        )
    if values["distortion.kind"] not in DISTORTION_KINDS:
        raise InvalidInputError(
            f"distortion.kind must be one of {DISTORTION_KINDS}, "
            f"got {values['distortion.kind']!r}"
        )
    if values["units"] not in UNITS:
        raise InvalidInputError(f"units must be one of {UNITS}, got {values['units']!r}")
    if values["max_iter"] < 1:
        raise InvalidInputError(f"max_iter must be >= 1, got {values['max_iter']}")
    if values["betas.list"] is None:
        lo, hi, count = values["betas.lo"], values["betas.hi"], values["betas.count"]
        if lo <= 0 or hi <= lo or count < 2:
            raise InvalidInputError(
                "geometric beta schedule needs lo > 0, hi > lo, count >= 2; "
                f"got lo={lo}, hi={hi}, count={count}"
            )
    return RunConfig(values)


def resolve_threads(env: dict | None = None) -> int:
    """Read the RD_BRIDGE_THREADS cap; absent means 1."""
    raw = (env if env is not None else os.environ).get("RD_BRIDGE_THREADS")
    if raw is None:
        return 1
    try:
        threads = int(raw)
    except ValueError:
        raise InvalidInputError(
            f"RD_BRIDGE_THREADS must be an integer >= 1, got {raw!r}"
        ) from None
    if threads < 1:
        raise InvalidInputError(f"RD_BRIDGE_THREADS must be >= 1, got {threads}")
    return threads


def build_problem(
    cfg: RunConfig,
) -> tuple[ProbabilityVector, DistortionMatrix, np.ndarray | None, SourceSpec | None]:
    """Construct (mu, rho, reconstruction labels, source spec) from a config.

    The reconstruction alphabet always equals the source alphabet: the
    curve solvers prune unused reconstruction atoms on their own.
    """
    kind = cfg["source.kind"]
    spec: SourceSpec | None = None
    if kind == "bernoulli":
        p = cfg["source.p"]
        if not 0.0 < p < 1.0:
            raise InvalidInputError(f"source.p must lie in (0, 1), got {p}")
        mu = ProbabilityVector([1.0 - p, p], labels=[0.0, 1.0])
    elif kind == "uniform":
        spec = discretize_uniform(-1.0, 1.0, cfg["source.points"])
        mu = spec.weights
    elif kind == "gaussian":
        spec = discretize_gaussian(
            cfg["source.sigma"], cfg["source.width"], cfg["source.points"]
        )
        mu = spec.weights
    else:
        if cfg["source.weights"] is None:
            raise InvalidInputError("source.kind=custom requires source.weights")
        mu = ProbabilityVector(cfg["source.weights"], labels=cfg["source.labels"])

    labels = mu.labels
    dkind = cfg["distortion.kind"]
    if dkind == "hamming":
        dist = hamming(len(mu))
    elif dkind == "mse":
        if labels is None:
            raise InvalidInputError("mse distortion needs labelled source atoms")
        dist = squared_error(labels, labels)
    else:
        if cfg["distortion.file"] is None:
            raise InvalidInputError("distortion.kind=custom requires distortion.file")
        rows = [
            _parse_floats(line)
            for line in Path(cfg["distortion.file"]).read_text().splitlines()
            if line.strip()
        ]
        dist = DistortionMatrix(np.array(rows))
        if dist.shape[0] != len(mu):
            raise InvalidInputError(
                f"distortion matrix has {dist.shape[0]} rows for {len(mu)} source atoms"
            )
    return mu, dist, labels, spec


def _uniform_start(n: int, labels: np.ndarray | None) -> ProbabilityVector:
    return ProbabilityVector(np.full(n, 1.0 / n), labels=labels)


def solve_point_for_distortion(
    mu: ProbabilityVector,
    dist: DistortionMatrix,
    target: float,
    tol: float = 1e-9,
    max_iter: int = 100000,
    nu0: ProbabilityVector | None = None,
) -> RDPoint:
    """Find the curve point at a prescribed distortion by bisecting beta.

    D(beta) is nonincreasing, so a doubling search brackets the target
    and bisection closes in until |D(beta) - target| <= 10 * tol * d_max.
    Solves are warm-started along the search path.

    Raises:
        InvalidInputError: target outside (d_floor, d_max); note that
            R(D) = 0 for D > D_max, so no positive-rate point exists there.
        ConvergenceError: bracket or bisection failed to close (e.g. the
            tolerance band is finer than solver noise).
    """
    floor = d_floor(mu, dist)
    ceiling, _ = d_max(mu, dist)
    if not floor < target < ceiling:
        raise InvalidInputError(
            f"target distortion {target:g} outside ({floor:g}, {ceiling:g}); "
            "R(D) = 0 for D > D_max and no finite-rate point exists at or "
            "below the distortion floor"
        )
    band = 10.0 * tol * ceiling

    warm = nu0
    def solve(beta: float) -> RDPoint:
        nonlocal warm
        try:
            point = ba_fixed_point(mu, dist, beta, nu0=warm, tol=tol, max_iter=max_iter)
        except ConvergenceError as err:
            point = err.partial
        n = len(point.nu_star)
        mixed = (1.0 - 1e-6) * point.nu_star.weights + 1e-6 / n
        warm = ProbabilityVector(mixed / mixed.sum(), labels=point.nu_star.labels)
        return point

    lo = 0.0
    hi = 1.0
    point = solve(hi)
    doublings = 0
    while point.distortion > target:
        lo, hi = hi, 2.0 * hi
        point = solve(hi)
        doublings += 1
        if doublings > 60:
            raise ConvergenceError(
                f"no beta <= {hi:g} reaches distortion {target:g}", partial=point
            )
    best = point
    for _ in range(200):
        if abs(best.distortion - target) <= band and best.converged:
            return best
        mid = 0.5 * (lo + hi)
        point = solve(mid)
        if point.distortion > target:
            lo = mid
        else:
            hi = mid
        if abs(point.distortion - target) < abs(best.distortion - target):
            best = point
    if abs(best.distortion - target) <= band and best.converged:
        return best
    raise ConvergenceError(
        f"bisection stalled at distortion {best.distortion:g} for target "
        f"{target:g} (band {band:g}); loosen tol or widen the band",
        partial=best,
    )


def _rate_scale(units: str) -> float:
    """Single conversion site: multiply a nats-valued rate by this."""
    return 1.0 if units == "nats" else 1.0 / LN2


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _curve_csv(curve: RDCurve, units: str) -> str:
    scale = _rate_scale(units)
    lines = ["beta,distortion,rate,iterations,certificate_slack,converged"]
    for p in curve.points:
        lines.append(
            ",".join(
                [
                    _fmt(p.beta),
                    _fmt(p.distortion),
                    _fmt(p.rate * scale),
                    str(p.iterations),
                    _fmt(p.certificate_slack),
                    "1" if p.converged else "0",
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _json_none_if_nan(x: float) -> float | None:
    return None if isinstance(x, float) and math.isnan(x) else x


def _report_dict(report) -> dict:
    return {
        "beta": report.beta,
        "g_spread": report.g_spread,
        "g_spread_strict": report.g_spread_strict,
        "l_value": _json_none_if_nan(report.l_value),
        "dual_gap": report.dual_gap,
        "certificate_slack": report.certificate_slack,
        "verdict": report.verdict,
        "detail": report.detail,
    }


def _emit(text: str, out: str | None):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def load_nu(path: str, labels: np.ndarray | None = None) -> ProbabilityVector:
    """Read a reconstruction law from JSON or columned text.

    Accepted layouts: a JSON object with a ``nu_star`` entry (as written
    by ``point``), a JSON object with ``weights``/``labels``, a bare
    JSON array of weights, or plain text with one weight (or ``label
    weight`` pair) per line.

    Raises:
        InvalidInputError: unreadable file or no parse yields a valid
            probability vector.
    """
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise InvalidInputError(f"cannot read {path}: {err}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        rows = [line.split() for line in text.splitlines() if line.strip()]
        try:
            if all(len(r) == 1 for r in rows) and rows:
                return ProbabilityVector([float(r[0]) for r in rows], labels=labels)
            if all(len(r) == 2 for r in rows) and rows:
                return ProbabilityVector(
                    [float(r[1]) for r in rows], labels=[float(r[0]) for r in rows]
                )
        except ValueError:
            pass
        raise InvalidInputError(
            f"{path} is neither JSON nor one/two-column numeric text"
        ) from None
    if isinstance(obj, dict):
        node = obj.get("nu_star", obj)
        if not isinstance(node, dict) or "weights" not in node:
            raise InvalidInputError(f"{path}: JSON carries no weights")
        return ProbabilityVector(node["weights"], labels=node.get("labels", labels))
    if isinstance(obj, list):
        return ProbabilityVector(obj, labels=labels)
    raise InvalidInputError(f"{path}: JSON must be an object or array")


def _beta_schedule(cfg: RunConfig) -> np.ndarray:
    if cfg["betas.list"] is not None:
        return np.asarray(cfg["betas.list"], dtype=float)
    return np.geomspace(cfg["betas.lo"], cfg["betas.hi"], cfg["betas.count"])


def _cmd_curve(cfg: RunConfig, args) -> int:
    mu, dist, labels, _ = build_problem(cfg)
    threads = resolve_threads()
    curve = rd_curve(
        mu,
        dist,
        _beta_schedule(cfg),
        tol=cfg["tol"],
        max_iter=cfg["max_iter"],
        nu0=_uniform_start(dist.shape[1], labels),
        warm_start=cfg["warm_start"],
        threads=threads,
    )
    _emit(_curve_csv(curve, cfg["units"]), args.out)
    return 0 if all(p.converged for p in curve.points) else 2


def _zero_rate_endpoint(
    mu: ProbabilityVector, dist: DistortionMatrix, labels: np.ndarray | None
) -> RDPoint:
    """The beta = 0 end of the curve: all mass on the best single column."""
    value, col = d_max(mu, dist)
    weights = np.zeros(dist.shape[1])
    weights[col] = 1.0
    nu = ProbabilityVector(weights, labels=labels)
    distortion, rate = rd_value_from_nu(mu, dist, 0.0, nu)
    return RDPoint(
        beta=0.0,
        distortion=distortion,
        rate=rate,
        nu_star=nu,
        iterations=0,
        fixpoint_residual=0.0,
        certificate_slack=0.0,
        converged=True,
    )


def _cmd_point(cfg: RunConfig, args) -> int:
    if (args.beta is None) == (args.distortion is None):
        raise InvalidInputError("point needs exactly one of --beta or --distortion")
    mu, dist, labels, _ = build_problem(cfg)
    start = _uniform_start(dist.shape[1], labels)
    exit_code = 0
    if args.beta is not None:
        if args.beta == 0.0:
            point = _zero_rate_endpoint(mu, dist, labels)
        else:
            try:
                point = ba_fixed_point(
                    mu,
                    dist,
                    args.beta,
                    nu0=start,
                    tol=cfg["tol"],
                    max_iter=cfg["max_iter"],
                    min_iter=cfg["min_iter"],
                )
            except ConvergenceError as err:
                point = err.partial
                exit_code = 2
    else:
        try:
            point = solve_point_for_distortion(
                mu,
                dist,
                args.distortion,
                tol=cfg["tol"],
                max_iter=cfg["max_iter"],
                nu0=start,
            )
        except ConvergenceError as err:
            point = err.partial
            exit_code = 2
    report = check_optimality(mu, dist, point.beta, point.nu_star)
    scale = _rate_scale(cfg["units"])
    doc = {
        "config": cfg.as_dict(),
        "beta": point.beta,
        "distortion": point.distortion,
        "rate": point.rate * scale,
        "iterations": point.iterations,
        "converged": point.converged,
        "nu_star": {
            "weights": [float(w) for w in point.nu_star.weights],
            "labels": None
            if point.nu_star.labels is None
            else [float(v) for v in point.nu_star.labels],
        },
        "report": _report_dict(report),
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return exit_code


def _cmd_check(cfg: RunConfig, args) -> int:
    if args.beta is None:
        raise InvalidInputError("check needs --beta")
    if args.nu is None:
        raise InvalidInputError("check needs --nu FILE")
    mu, dist, labels, _ = build_problem(cfg)
    nu = load_nu(args.nu, labels=labels)
    if len(nu) != dist.shape[1]:
        raise InvalidInputError(
            f"nu has {len(nu)} atoms but the reconstruction alphabet has "
            f"{dist.shape[1]}"
        )
    report = check_optimality(mu, dist, args.beta, nu)
    doc = {"config": cfg.as_dict(), "report": _report_dict(report)}
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return {"optimal": 0, "suboptimal": 3, "inconclusive": 2}[report.verdict]


def _cmd_sinkhorn(cfg: RunConfig, args) -> int:
    if args.beta is None:
        raise InvalidInputError("sinkhorn needs --beta")
    if args.nu is None:
        raise InvalidInputError("sinkhorn needs --nu FILE")
    mu, dist, labels, _ = build_problem(cfg)
    nu = load_nu(args.nu, labels=labels)
    if len(nu) != dist.shape[1]:
        raise InvalidInputError(
            f"nu has {len(nu)} atoms but the reconstruction alphabet has "
            f"{dist.shape[1]}"
        )
    exit_code = 0
    try:
        pair, coupling = sinkhorn(mu, nu, dist, args.beta, tol=min(cfg["tol"], 1e-10))
    except ConvergenceError as err:
        pair, coupling = err.partial
        exit_code = 2
    row_res, col_res, eq8_res = schrodinger_residual(mu, nu, dist, pair)
    scale = _rate_scale(cfg["units"])
    try:
        distortion = expected_loss(coupling.joint, dist)
        j_value = eval_J(mu, nu, dist, args.beta, distortion, pair) * scale
        l_value = eval_L(mu, nu, dist, args.beta, pair)
    except StaleCertificateError:
        distortion = None
        j_value = None
        l_value = None
    doc = {
        "config": cfg.as_dict(),
        "beta": float(args.beta),
        "logF": [float(v) for v in pair.logF],
        "logG": [float(v) for v in pair.logG],
        "logK": pair.logK,
        "residuals": {"row": row_res, "col": col_res, "eq8": eq8_res},
        "distortion": distortion,
        "J": j_value,
        "L": l_value,
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return exit_code


def _cmd_compare(cfg: RunConfig, args) -> int:
    mu, dist, labels, spec = build_problem(cfg)
    if args.oracle == "bernoulli":
        if cfg["source.kind"] != "bernoulli" or cfg["distortion.kind"] != "hamming":
            raise InvalidInputError(
                "bernoulli oracle needs source.kind=bernoulli and "
                "distortion.kind=hamming"
            )
        p = cfg["source.p"]
        oracle = lambda d: oracle_bernoulli_hamming(p, d)
    elif args.oracle == "gaussian":
        if cfg["source.kind"] != "gaussian" or cfg["distortion.kind"] != "mse":
            raise InvalidInputError(
                "gaussian oracle needs source.kind=gaussian and distortion.kind=mse"
            )
        sigma = cfg["source.sigma"]
        oracle = lambda d: oracle_gaussian_mse(sigma, d)
    else:
        raise InvalidInputError(f"unknown oracle {args.oracle!r}")

    threads = resolve_threads()
    curve = rd_curve(
        mu,
        dist,
        _beta_schedule(cfg),
        tol=cfg["tol"],
        max_iter=cfg["max_iter"],
        nu0=_uniform_start(dist.shape[1], labels),
        warm_start=cfg["warm_start"],
        threads=threads,
    )
    max_err, table = compare_curve(curve, oracle, cfg["compare.d_lo"], cfg["compare.d_hi"])
    scale = _rate_scale(cfg["units"])
    lines = ["distortion,rate,rate_oracle,abs_err"]
    for d_val, rate, r_oracle in table:
        lines.append(
            ",".join(
                [
                    _fmt(d_val),
                    _fmt(rate * scale),
                    _fmt(r_oracle * scale),
                    _fmt(abs(rate - r_oracle) * scale),
                ]
            )
        )
    lines.append(f"max_abs_err={_fmt(max_err * scale)}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if max_err * scale <= cfg["compare.bound"] else 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rdbridge",
        description="Rate-distortion curves, Schrodinger potentials, and "
        "optimality certificates on finite alphabets.",
    )
    sub = parser.add_subparsers(dest="command")
    for name, help_text in [
        ("curve", "sweep a beta schedule and emit the curve as CSV"),
        ("point", "solve a single point by beta or target distortion"),
        ("check", "verdict on a candidate reconstruction law"),
        ("sinkhorn", "solve the scaling problem for a fixed (mu, nu)"),
        ("compare", "compare swept rates against a closed-form oracle"),
    ]:
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", help="flat key=value config file")
        cmd.add_argument("--out", help="output path (default stdout)")
        for key in _SCHEMA:
            cmd.add_argument(f"--{key}", dest=key, metavar="V")
        if name == "point":
            cmd.add_argument("--beta", type=float, help="solve at this slope")
            cmd.add_argument(
                "--distortion", type=float, help="bisect to this distortion"
            )
        if name in ("check", "sinkhorn"):
            cmd.add_argument("--beta", type=float, help="trade-off slope")
            cmd.add_argument("--nu", help="reconstruction law file (JSON or text)")
        if name == "compare":
            cmd.add_argument(
                "--oracle", choices=("bernoulli", "gaussian"), required=True
            )
    return parser


_COMMANDS = {
    "curve": _cmd_curve,
    "point": _cmd_point,
    "check": _cmd_check,
    "sinkhorn": _cmd_sinkhorn,
    "compare": _cmd_compare,
}


def main(argv: list[str] | None = None) -> int:
    """Entry point; returns the exit code instead of raising SystemExit."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help(sys.stderr)
        return 1
    try:
        file_values = None
        if args.config is not None:
            try:
                text = Path(args.config).read_text()
            except OSError as err:
                raise InvalidInputError(f"cannot read config: {err}") from None
            file_values = parse_config_text(text)
        overrides = {
            key: value
            for key, value in vars(args).items()
            if key in _SCHEMA and value is not None
        }
        cfg = resolve_config(file_values, overrides)
        return _COMMANDS[args.command](cfg, args)
    except (InvalidInputError, EmptyComparisonError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

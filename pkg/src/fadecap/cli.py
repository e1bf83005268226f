"""Batch front end: classify profiles, sweep SNR grids, emit CSV and SVG.

Subcommands:

* ``classify`` prints the decay-class verdict of a profile;
* ``sweep`` evaluates every applicable bound on a log-spaced SNR grid and
  writes one CSV row per grid point (plus an optional SVG plot);
* ``demo`` writes the bundled three-regime scenarios to a directory with
  a manifest.

Exit codes: 0 success, 1 usage error, 2 numeric failure. Runs are
deterministic given the resolved configuration, which is embedded in the
CSV header as '#' comment lines. Numbers are written with 12 significant
digits, '.' decimal separator, no locale dependence.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import bounds, mc
from .gains import GainModel, GainSpec, GaussMarkov, MemorylessGaussian, expected_log_sq
from .profiles import (
    FiniteProfile,
    GeometricProfile,
    SuperExponentialProfile,
    TableProfile,
    VarianceProfile,
    Verdict,
    choose_L,
    choose_L_geometric,
    classify,
)
from .signaling import SignalingScheme

CSV_COLUMNS = (
    "snr",
    "log10_snr",
    "upper_exponential",
    "upper_duality",
    "L",
    "tau",
    "lower_closed_form_raw",
    "lower_closed_form_clamped",
    "lower_mc",
    "lower_mc_stderr",
    "loglog_snr",
    "lower_over_loglog",
)

PLOT_COLUMNS = (
    "upper_exponential",
    "upper_duality",
    "lower_closed_form_raw",
    "lower_closed_form_clamped",
    "lower_mc",
    "loglog_snr",
)


class CliError(ValueError):
    """Bad profile/model/config syntax."""


def parse_profile(text: str) -> VarianceProfile:
    """Parse 'family:params' profile strings.

    Examples: geometric:rho=0.5, geometric:rho=0.5,alpha0=2,
    superexp:kappa=2, finite:1,0.5,0.25, table:1,0.5:tail=zero.
    """
    family, _, rest = text.strip().partition(":")
    family = family.lower()
    try:
        if family == "geometric":
            kv = _parse_kv(rest, {"rho", "alpha0"})
            return GeometricProfile(rho=float(kv["rho"]), alpha0=float(kv.get("alpha0", 1.0)))
        if family == "superexp":
            kv = _parse_kv(rest, {"kappa", "alpha0"})
            return SuperExponentialProfile(
                kappa=float(kv["kappa"]), alpha0=float(kv.get("alpha0", 1.0))
            )
        if family == "finite":
            return FiniteProfile([float(v) for v in rest.split(",") if v])
        if family == "table":
            values, _, tailpart = rest.partition(":")
            tail = "zero"
            if tailpart:
                kv = _parse_kv(tailpart, {"tail"})
                tail = None if kv["tail"] in ("none", "undeclared") else kv["tail"]
            return TableProfile([float(v) for v in values.split(",") if v], tail=tail)
    except (KeyError, ValueError) as exc:
        if isinstance(exc, CliError):
            raise
        raise CliError(f"cannot parse profile {text!r}: {exc}") from exc
    raise CliError(f"unknown profile family {family!r}")


def _parse_kv(text: str, allowed: set) -> dict:
    out = {}
    for item in text.split(","):
        if not item:
            continue
        key, _, value = item.partition("=")
        if key not in allowed:
            raise CliError(f"unknown parameter {key!r} (allowed: {sorted(allowed)})")
        out[key] = value
    return out


def parse_model(text: str) -> GainModel:
    """Parse 'memoryless' or 'gaussmarkov:a=<coeff>'."""
    name, _, rest = text.strip().partition(":")
    name = name.lower()
    if name == "memoryless":
        return MemorylessGaussian()
    if name == "gaussmarkov":
        kv = _parse_kv(rest, {"a"})
        return GaussMarkov(a=float(kv["a"]))
    raise CliError(f"unknown gain model {name!r}")


def profile_id(profile: VarianceProfile) -> str:
    if isinstance(profile, GeometricProfile):
        return f"geometric:rho={profile.rho!r},alpha0={profile.alpha0!r}"
    if isinstance(profile, SuperExponentialProfile):
        return f"superexp:kappa={profile.kappa!r},alpha0={profile.alpha0!r}"
    if isinstance(profile, FiniteProfile):
        return "finite:" + ",".join(repr(v) for v in profile.values)
    if isinstance(profile, TableProfile):
        tail = profile.tail if profile.tail is not None else "none"
        return "table:" + ",".join(repr(v) for v in profile.values) + f":tail={tail}"
    raise CliError(f"unknown profile type {type(profile).__name__}")


def model_id(model: GainModel) -> str:
    if isinstance(model, GaussMarkov):
        return f"gaussmarkov:a={model.a!r}"
    return "memoryless"


@dataclass(frozen=True)
class SweepSpec:
    """Fully resolved sweep configuration."""

    profile: str
    model: str = "memoryless"
    sigma2: float = 1.0
    snr_start_exp: float = 0.0
    snr_end_exp: float = 16.0
    snr_points: int = 17
    tau_rule: str = "L"
    l_rule: str = "auto"
    samples: int = 10000
    seed: int = 0

    def __post_init__(self):
        if self.snr_points < 1:
            raise CliError(f"need at least one grid point, got {self.snr_points}")
        if self.snr_points >= 2 and not self.snr_start_exp < self.snr_end_exp:
            raise CliError("snr grid must be strictly increasing")
        if self.samples < 1000:
            raise CliError(f"need at least 1000 MC samples, got {self.samples}")
        if not self.sigma2 > 0:
            raise CliError(f"sigma2 must be positive, got {self.sigma2}")
        parse_profile(self.profile)
        parse_model(self.model)
        _parse_tau_rule(self.tau_rule)
        _parse_l_rule(self.l_rule)

    def grid(self) -> np.ndarray:
        if self.snr_points == 1:
            return np.array([10.0**self.snr_start_exp])
        return 10.0 ** np.linspace(self.snr_start_exp, self.snr_end_exp, self.snr_points)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def _parse_tau_rule(rule: str):
    """tau rules: 'L' (tau = L), 'fixed:<n>', 'cL:<c>' (tau = ceil(c L))."""
    name, _, arg = rule.partition(":")
    if name == "L":
        return lambda L: L
    if name == "fixed":
        n = int(arg)
        if n < 1:
            raise CliError(f"fixed tau must be positive, got {n}")
        return lambda L: n
    if name == "cL":
        c = float(arg)
        if not c > 0:
            raise CliError(f"tau multiplier must be positive, got {c}")
        return lambda L: max(1, math.ceil(c * L))
    raise CliError(f"unknown tau rule {rule!r}")


def _parse_l_rule(rule: str):
    """Guard-length selectors: 'auto' (minimal) or 'geometric:<rho>'."""
    name, _, arg = rule.partition(":")
    if name == "auto":
        return lambda profile, P, sigma2: choose_L(profile, P, sigma2)
    if name == "geometric":
        rho = float(arg)
        return lambda profile, P, sigma2: choose_L_geometric(rho, P, sigma2)
    raise CliError(f"unknown guard-length rule {rule!r}")


def _mc_lower(profile, model, sigma2, scheme, samples, seed, point_index):
    """Capacity-level MC lower bound tau/(L+tau) * mean over slots."""
    per_nu = max(1000, samples // scheme.tau)
    values = []
    variances = []
    for nu in range(1, scheme.tau + 1):
        sub = int(np.random.SeedSequence([seed, 4, point_index, nu]).generate_state(1)[0])
        est = mc.lemma1_bound_mc(scheme, profile, model, sigma2, nu, per_nu, sub)
        values.append(est.value)
        variances.append(est.stderr**2)
    frac = scheme.tau / (scheme.L + scheme.tau)
    value = frac * float(np.mean(values))
    stderr = math.sqrt(sum(variances)) / (scheme.L + scheme.tau)
    return value, stderr


def evaluate_point(
    profile: VarianceProfile,
    model: GainModel,
    sigma2: float,
    snr: float,
    tau_of_L,
    select_L,
    samples: int,
    seed: int,
    point_index: int = 0,
) -> bounds.BoundReport:
    """All applicable bounds at one SNR; inapplicable entries stay None."""
    cls = classify(profile)
    upper_exp = (
        bounds.upper_bound_exponential(profile, model)
        if cls.verdict is Verdict.BOUNDED
        else None
    )
    upper_dual = bounds.upper_bound_duality(snr, profile, model)
    P = snr * sigma2

    L_used = tau_used = None
    raw = clamped = mc_val = mc_err = None
    if P > 1.0:
        L_used = select_L(profile, P, sigma2)
        tau_used = tau_of_L(L_used)
        scheme = SignalingScheme(L=L_used, tau=tau_used, P=P)
        alpha0 = profile.alpha(0)
        ups = bounds.upsilon(
            alpha0, profile.total_sum(), sigma2, expected_log_sq(GainSpec(model, alpha0))
        )
        raw = bounds.lower_bound_closed_form(P, sigma2, L_used, tau_used, ups)
        clamped = max(0.0, raw)
        if samples > 0:
            mc_val, mc_err = _mc_lower(profile, model, sigma2, scheme, samples, seed, point_index)

    return bounds.BoundReport(
        snr=snr,
        upper_exponential=upper_exp,
        upper_duality=upper_dual,
        lower_closed_form_raw=raw,
        lower_closed_form=clamped,
        lower_mc=mc_val,
        lower_mc_stderr=mc_err,
        L_used=L_used,
        tau_used=tau_used,
        metadata={
            "profile": profile_id(profile),
            "model": model_id(model),
            "sigma2": sigma2,
            "P": P,
        },
    )


def report_row(report: bounds.BoundReport) -> dict:
    snr = report.snr
    log_snr = math.log(snr) if snr > 0 else None
    loglog = math.log(log_snr) if log_snr is not None and log_snr > 0 else None
    ratio = None
    if loglog is not None and loglog > 0 and report.lower_closed_form_raw is not None:
        ratio = report.lower_closed_form_raw / loglog
    return {
        "snr": snr,
        "log10_snr": math.log10(snr),
        "upper_exponential": report.upper_exponential,
        "upper_duality": report.upper_duality,
        "L": report.L_used,
        "tau": report.tau_used,
        "lower_closed_form_raw": report.lower_closed_form_raw,
        "lower_closed_form_clamped": report.lower_closed_form,
        "lower_mc": report.lower_mc,
        "lower_mc_stderr": report.lower_mc_stderr,
        "loglog_snr": loglog,
        "lower_over_loglog": ratio,
    }


def compute_sweep(spec: SweepSpec) -> list[dict]:
    profile = parse_profile(spec.profile)
    model = parse_model(spec.model)
    tau_of_L = _parse_tau_rule(spec.tau_rule)
    select_L = _parse_l_rule(spec.l_rule)
    rows = []
    for i, snr in enumerate(spec.grid()):
        report = evaluate_point(
            profile, model, spec.sigma2, float(snr), tau_of_L, select_L,
            spec.samples, spec.seed, point_index=i,
        )
        rows.append(report_row(report))
    return rows


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return f"{value:.12g}"


def write_csv(path: Path, config: dict, rows: list[dict]) -> None:
    lines = [f"# {key} = {config[key]}" for key in sorted(config)]
    lines.append(",".join(CSV_COLUMNS))
    for row in rows:
        lines.append(",".join(_fmt(row[col]) for col in CSV_COLUMNS))
    path.write_text("\n".join(lines) + "\n")


def write_svg(path: Path, rows: list[dict], title: str) -> None:
    """Self-contained static plot of every bound column vs log10(SNR)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    styles = {
        "upper_exponential": dict(color="tab:red", marker="s"),
        "upper_duality": dict(color="tab:orange", marker="^"),
        "lower_closed_form_raw": dict(color="tab:blue", marker=".", linestyle="--"),
        "lower_closed_form_clamped": dict(color="tab:blue", marker="o"),
        "lower_mc": dict(color="tab:green", marker="x"),
        "loglog_snr": dict(color="gray", linestyle=":"),
    }
    for col in PLOT_COLUMNS:
        pts = [(r["log10_snr"], r[col]) for r in rows if r[col] is not None]
        if not pts:
            continue
        xs, ys = zip(*pts)
        ax.plot(xs, ys, label=col, markersize=4, linewidth=1.2, **styles[col])
    ax.set_xlabel("log10(SNR)")
    ax.set_ylabel("nats")
    ax.set_title(title)
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
    fig.savefig(path, format="svg", bbox_inches="tight")
    plt.close(fig)


def run_classify(profile: VarianceProfile) -> str:
    cls = classify(profile)
    if cls.verdict is Verdict.BOUNDED:
        return f"BOUNDED (rho={cls.rho:g}, l0={cls.ell0})"
    if cls.verdict is Verdict.UNBOUNDED:
        if cls.tag == "finite paths":
            return "UNBOUNDED (finite paths, pre-loglog regime)"
        return f"UNBOUNDED ({cls.tag})"
    return f"INDETERMINATE ({cls.tag})"


def run_sweep(spec: SweepSpec, out_dir: Path, name: str = "sweep", svg: bool = True) -> Path:
    rows = compute_sweep(spec)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{name}.csv"
    write_csv(csv_path, spec.as_dict(), rows)
    if svg:
        write_svg(out_dir / f"{name}.svg", rows, name)
    return csv_path


RHO_INV_E = math.exp(-1.0)


def demo_scenarios(samples: int = 20000, points_scale: int = 1) -> list[tuple[str, str, SweepSpec]]:
    """The bundled three-regime scenarios.

    (a) geometric decay: bounded capacity, constant ceiling;
    (b) super-exponential decay: unbounded but glacial double-log growth,
        shown with the minimal guard selector over an extremely wide grid
        and, for contrast, with a fixed-ratio selector that saturates;
    (c) finitely many paths: pre-loglog regime, guard fraction tau/(L+tau).
    """
    pts = lambda n: max(2, n // points_scale)
    scens = [
        (
            "a_geometric_bounded",
            "geometric rho=1/e: constant ceiling, saturating lower bounds",
            SweepSpec(profile=f"geometric:rho={RHO_INV_E!r}", sigma2=1.0,
                      snr_start_exp=0.0, snr_end_exp=16.0, snr_points=pts(17),
                      tau_rule="L", l_rule="auto", samples=samples, seed=7),
        ),
        (
            "b_superexp_minimal_L",
            "superexp kappa=2, minimal guard selector: slow unbounded growth",
            SweepSpec(profile="superexp:kappa=2", sigma2=1.0,
                      snr_start_exp=2.0, snr_end_exp=128.0, snr_points=pts(10),
                      tau_rule="L", l_rule="auto", samples=samples, seed=7),
        ),
        (
            "b_superexp_fixed_ratio",
            "superexp kappa=2, fixed-ratio selector rho=0.5: saturates",
            SweepSpec(profile="superexp:kappa=2", sigma2=1.0,
                      snr_start_exp=2.0, snr_end_exp=128.0, snr_points=pts(10),
                      tau_rule="L", l_rule="geometric:0.5", samples=samples, seed=7),
        ),
    ]
    finite_profiles = {
        1: "finite:1,0.5",
        2: "finite:1,0.5,0.25",
        4: "finite:1,0.5,0.25,0.125,0.0625",
    }
    for tau in (1, 10, 100, 1000):
        scens.append(
            (
                f"c_finite_L1_tau{tau}",
                f"finite two-path profile, tau={tau}: pre-loglog fraction {tau/(1+tau):.4g}",
                SweepSpec(profile=finite_profiles[1], sigma2=1.0,
                          snr_start_exp=4.0, snr_end_exp=16.0, snr_points=pts(7),
                          tau_rule=f"fixed:{tau}", l_rule="auto",
                          samples=samples, seed=7),
            )
        )
    for L in (2, 4):
        scens.append(
            (
                f"c_finite_L{L}_tau100",
                f"finite profile with {L+1} paths, tau=100",
                SweepSpec(profile=finite_profiles[L], sigma2=1.0,
                          snr_start_exp=4.0, snr_end_exp=16.0, snr_points=pts(7),
                          tau_rule="fixed:100", l_rule="auto",
                          samples=samples, seed=7),
            )
        )
    return scens


def run_regimes_demo(out_dir: Path, samples: int = 20000, points_scale: int = 1) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = {"scenarios": []}
    for name, description, spec in demo_scenarios(samples, points_scale):
        csv_path = run_sweep(spec, out_dir, name=name, svg=True)
        manifest["scenarios"].append(
            {
                "name": name,
                "description": description,
                "csv": csv_path.name,
                "svg": f"{name}.svg",
                "config": spec.as_dict(),
            }
        )
    summary = ["L,tau,preloglog_lower"]
    for L in (0, 1, 2, 4):
        for tau in (1, 10, 100, 1000):
            summary.append(f"{L},{tau},{_fmt(bounds.preloglog_lower(L, tau))}")
    (out_dir / "preloglog_summary.csv").write_text("\n".join(summary) + "\n")
    manifest["preloglog_summary"] = "preloglog_summary.csv"
    manifest_path = out_dir / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")
    return manifest_path


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _read_config_file(path: str) -> dict:
    """Plain-text key = value configuration."""
    out = {}
    for line_no, line in enumerate(Path(path).read_text().splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, value = stripped.partition("=")
        if not sep:
            raise CliError(f"{path}:{line_no}: expected 'key = value', got {line!r}")
        out[key.strip()] = value.strip()
    return out


_SPEC_FIELD_TYPES = {
    "profile": str,
    "model": str,
    "sigma2": float,
    "snr_start_exp": float,
    "snr_end_exp": float,
    "snr_points": int,
    "tau_rule": str,
    "l_rule": str,
    "samples": int,
    "seed": int,
}


def _build_spec(config_file: str | None, cli_values: dict) -> SweepSpec:
    merged = {}
    if config_file:
        raw = _read_config_file(config_file)
        for key, value in raw.items():
            if key not in _SPEC_FIELD_TYPES:
                raise CliError(f"unknown config key {key!r}")
            merged[key] = _SPEC_FIELD_TYPES[key](value)
    for key, value in cli_values.items():
        if value is not None:
            merged[key] = value
    if "profile" not in merged:
        raise CliError("a profile must be given (flag --profile or config key 'profile')")
    return SweepSpec(**merged)


def main(argv=None) -> int:
    parser = _Parser(prog="fadecap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_cls = sub.add_parser("classify", help="decay-class verdict of a profile")
    p_cls.add_argument("family", help="geometric | superexp | finite | table")
    p_cls.add_argument("params", nargs="*", help="rho=... / kappa=... / value list")

    p_sweep = sub.add_parser("sweep", help="evaluate bounds over an SNR grid")
    p_sweep.add_argument("--config", help="key = value configuration file")
    p_sweep.add_argument("--profile", help="e.g. geometric:rho=0.5, finite:1,0.5")
    p_sweep.add_argument("--model", help="memoryless | gaussmarkov:a=0.9")
    p_sweep.add_argument("--sigma2", type=float)
    p_sweep.add_argument("--snr-grid", metavar="START:END:POINTS",
                         help="log10 exponent range, e.g. 0:16:17")
    p_sweep.add_argument("--tau-rule", dest="tau_rule", help="L | fixed:<n> | cL:<c>")
    p_sweep.add_argument("--l-rule", dest="l_rule", help="auto | geometric:<rho>")
    p_sweep.add_argument("--samples", type=int)
    p_sweep.add_argument("--seed", type=int)
    p_sweep.add_argument("--out-dir", default=".", help="output directory")
    p_sweep.add_argument("--name", default="sweep", help="output file stem")
    p_sweep.add_argument("--no-svg", action="store_true", help="skip the plot")

    p_demo = sub.add_parser("demo", help="write the bundled three-regime scenarios")
    p_demo.add_argument("--out-dir", default="regimes_demo")
    p_demo.add_argument("--samples", type=int, default=20000)
    p_demo.add_argument("--points-scale", type=int, default=1,
                        help="divide grid sizes by this factor (smoke tests)")

    args = parser.parse_args(argv)
    try:
        if args.command == "classify":
            text = args.family + (":" + ",".join(args.params) if args.params else "")
            print(run_classify(parse_profile(text)))
            return 0
        if args.command == "sweep":
            values = {
                "profile": args.profile,
                "model": args.model,
                "sigma2": args.sigma2,
                "tau_rule": args.tau_rule,
                "l_rule": args.l_rule,
                "samples": args.samples,
                "seed": args.seed,
            }
            if args.snr_grid:
                try:
                    start, end, points = args.snr_grid.split(":")
                    values["snr_start_exp"] = float(start)
                    values["snr_end_exp"] = float(end)
                    values["snr_points"] = int(points)
                except ValueError as exc:
                    raise CliError(f"bad --snr-grid {args.snr_grid!r}: {exc}") from exc
            spec = _build_spec(args.config, values)
            csv_path = run_sweep(spec, Path(args.out_dir), name=args.name,
                                 svg=not args.no_svg)
            print(f"wrote {csv_path}")
            return 0
        if args.command == "demo":
            manifest = run_regimes_demo(Path(args.out_dir), samples=args.samples,
                                        points_scale=args.points_scale)
            print(f"wrote {manifest}")
            return 0
    except CliError as exc:
        print(f"fadecap: usage error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError) as exc:
        print(f"fadecap: numeric failure: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"fadecap: i/o failure: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

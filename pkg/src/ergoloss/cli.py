"""Command-line experiment runner.

Subcommands:

* ``dynamics``    -- time series of instantaneous information loss and the
  population-transfer weights for a channel, one CSV per parameter set.
* ``uncertainty`` -- coupling sweeps of the closed-form trace-distance
  uncertainty sum for the central-spin model, one CSV per panel.
* ``axioms``      -- randomized distance-axiom verification, JSON report.
* ``verify``      -- aggregate self-checks (axioms / oracle / relations /
  saturation), JSON report plus exit code.

Exit codes: 0 = all checks pass, 1 = a check failed, 2 = bad configuration.
CSV output is deterministic for a given config and seed: UTF-8, header row,
17-significant-digit floats.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import ergometrics, oracle
from .channels import (
    CentralSpinChannel,
    CentralSpinParams,
    MarkovianThermalParams,
    make_channel,
    params_from_dict,
    theta_bars_saturated,
)
from .distances import Measure, check_axioms
from .ergometrics import Relation
from .qstate import DensityMatrix, thermal_qubit

T_MAX_DEFAULT = 50.0
T_STEP_DEFAULT = 0.05
ALPHA_SWEEP_DEFAULT = (0.5, 1.0, 2.0, 5.0, 10.0, 20.0)

# Reconstructed figure-parameter grids: the captions fix the stated values
# and the remaining lists are reconstructions exposed through --config.
DYNAMICS_PRESETS = {
    "fig1": ("N", [10, 50, 100, 200], dict(omega0=1.0, omega=1.0, alpha=0.1, T=1.0)),
    "fig2": ("T", [0.5, 1.0, 5.0, 10.0], dict(omega0=1.0, omega=1.0, alpha=0.1, N=200)),
    "fig3": ("alpha", [0.05, 0.1, 0.2], dict(omega0=1.0, omega=1.0, T=1.0, N=200)),
}
UNCERTAINTY_PRESETS = {
    "fig5": ("T", [0.1, 1.0, 10.0, 100.0], dict(omega0=1.0, omega=1.0, N=1000)),
    "fig6": ("N", [100, 400, 700, 1000], dict(omega0=1.0, omega=1.0, T=10.0)),
    "fig6a": ("N", [100, 400, 700, 1000], dict(omega0=1.0, omega=1.0, T=0.01)),
}


class ConfigError(ValueError):
    """Invalid CLI configuration; maps to exit code 2."""


def _json_default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj)!r}")


def _fmt(x: float) -> str:
    return "%.17g" % x


def _label(key: str, value) -> str:
    if isinstance(value, float) and value == int(value):
        value = int(value)
    return f"{key}{value}"


def _write_csv(path: Path, header: list[str], rows: list[list[float]]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config root must be a JSON object")
    return data


def _dynamics_param_sets(args, config) -> list[tuple[str, object]]:
    """(label, channel params) pairs for the dynamics subcommand."""
    if config.get("channel") is not None:
        try:
            p = params_from_dict(config["channel"])
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"bad channel config: {exc}") from exc
        return [("custom", p)]
    preset = args.preset or "fig1"
    if preset not in DYNAMICS_PRESETS:
        raise ConfigError(
            f"unknown dynamics preset {preset!r}; choose from {sorted(DYNAMICS_PRESETS)}"
        )
    key, values, base = DYNAMICS_PRESETS[preset]
    out = []
    for v in values:
        kwargs = dict(base)
        kwargs[key] = v
        out.append((f"{preset}_{_label(key, v)}", CentralSpinParams(**kwargs)))
    return out


def cmd_dynamics(args) -> int:
    config = _load_config(args.config)
    t_max = float(config.get("t_max", T_MAX_DEFAULT))
    t_step = float(config.get("t_step", T_STEP_DEFAULT))
    if t_max <= 0.0 or t_step <= 0.0:
        raise ConfigError("t_max and t_step must be > 0")
    ts = np.arange(0.0, t_max + 0.5 * t_step, t_step)
    out_dir = Path(args.out or "out")
    for label, params in _dynamics_param_sets(args, config):
        ch = make_channel(params)
        rows = []
        for t in ts:
            a, b, delta = ch.affine(float(t))
            theta2 = b
            theta1 = 1.0 - a - b
            loss = 1.0 - min(abs(a), abs(delta))
            rows.append([float(t), loss, theta1, theta2, abs(delta)])
        _write_csv(
            out_dir / f"{label}.csv",
            ["t", "I_delta_T", "theta1", "theta2", "abs_delta"],
            rows,
        )
        print(f"wrote {out_dir / (label + '.csv')}")
    return 0


def cmd_uncertainty(args) -> int:
    config = _load_config(args.config)
    alphas = [float(a) for a in config.get("alphas", ALPHA_SWEEP_DEFAULT)]
    if not alphas or sorted(alphas) != alphas:
        raise ConfigError("alphas must be a nonempty sorted list")
    if config.get("channel") is not None:
        base = dict(config["channel"])
        if base.pop("model", "central_spin") != "central_spin":
            raise ConfigError("uncertainty sweeps support the central_spin model only")
        base.pop("alpha", None)
        panels = [("custom", base)]
    else:
        preset = args.preset or "fig5"
        if preset not in UNCERTAINTY_PRESETS:
            raise ConfigError(
                f"unknown uncertainty preset {preset!r}; choose from {sorted(UNCERTAINTY_PRESETS)}"
            )
        key, values, base = UNCERTAINTY_PRESETS[preset]
        panels = []
        for v in values:
            kwargs = dict(base)
            kwargs[key] = v
            panels.append((f"{preset}_{_label(key, v)}", kwargs))
    out_dir = Path(args.out or "out")
    for label, base in panels:
        rows = []
        for alpha in alphas:
            try:
                p = CentralSpinParams(alpha=alpha, include_zz=False, **base)
            except (ValueError, TypeError) as exc:
                raise ConfigError(f"bad panel parameters: {exc}") from exc
            ch = CentralSpinChannel(p)
            tb1, tb2 = ch.theta_bars()
            p1 = thermal_qubit(p.omega0, p.T).rho22
            ne = max(abs(p1 - tb1), abs((1.0 - p1) - tb2))
            lhs = tb1 + tb2 + 2.0 * ne
            rows.append([alpha, tb1 + tb2, ne, lhs, lhs - 1.0])
        _write_csv(
            out_dir / f"{label}.csv",
            ["alpha", "avg_info_loss", "nonergodicity_max", "lhs_sum", "slack"],
            rows,
        )
        print(f"wrote {out_dir / (label + '.csv')}")
    return 0


# ---------------------------------------------------------------------------
# axioms / verify
# ---------------------------------------------------------------------------

# Expected axiom profile: which of P1..P5 each measure must satisfy.
_EXPECTED_AXIOMS = {
    m: {"p1": True, "p2": True, "p3": True, "p4": True, "p5": True} for m in Measure
}
_EXPECTED_AXIOMS[Measure.RELATIVE_ENTROPY] = {
    "p1": True, "p2": True, "p3": True, "p4": False, "p5": False,
}


def _axiom_suite(samples: int, seed: int, measures=None) -> tuple[dict, bool]:
    results = {}
    ok = True
    for m in measures or list(Measure):
        rep = check_axioms(m, samples, seed=seed)
        expected = _EXPECTED_AXIOMS[m]
        match = all(rep.checks[k].passed == expected[k] for k in expected)
        witnesses_ok = all(
            rep.checks[k].witness_states is not None
            for k, want in expected.items()
            if not want
        )
        ok = ok and match and witnesses_ok
        results[m.value] = {
            "expected": expected,
            "observed": {k: c.passed for k, c in rep.checks.items()},
            "worst_violations": {k: c.worst_violation for k, c in rep.checks.items()},
            "as_expected": match and witnesses_ok,
        }
    return results, ok


def _oracle_suite(seed: int, sets_per_n: int = 4) -> tuple[dict, bool]:
    rng = np.random.default_rng(seed)
    temps = (0.5, 1.0, 10.0, math.inf)
    worst = 0.0
    for N in range(2, 7):
        for _ in range(sets_per_n):
            p = CentralSpinParams(
                N=N,
                omega0=float(rng.uniform(0.1, 5.0)),
                omega=float(rng.uniform(0.1, 5.0)),
                alpha=float(rng.uniform(0.01, 2.0)),
                T=temps[rng.integers(4)],
                include_zz=bool(rng.integers(2)),
            )
            ch = CentralSpinChannel(p)
            rho0 = DensityMatrix.from_populations(0.7, 0.3 + 0.1j)
            for t in np.linspace(0.0, 30.0, 8):
                got = ch.evolve(rho0, float(t))
                want = oracle.oracle_evolve(p, rho0, float(t))
                worst = max(worst, float(np.abs(got.mat - want.mat).max()))
    ok = worst <= 1e-8
    return {"max_entrywise_deviation": worst, "tolerance": 1e-8}, ok


def _relations_suite(seed: int, samples: int = 200) -> tuple[dict, bool]:
    from .channels import random_channel

    rng = np.random.default_rng(seed)
    bounded = [m for m in Measure if m.is_bounded]
    worst = math.inf
    count = 0
    for _ in range(samples):
        ch = random_channel(rng)
        m = bounded[rng.integers(len(bounded))]
        rep = ergometrics.check_relation(
            ch, Relation.GENERAL_GLOBAL, measure=m, grid=(16, 32)
        )
        worst = min(worst, rep.slack)
        count += 1
        rep = ergometrics.check_relation(ch, Relation.TRACE_GLOBAL)
        worst = min(worst, rep.slack)
        count += 1
    ok = worst >= -1e-9
    return {"min_slack": worst, "reports": count, "tolerance": -1e-9}, ok


def _saturation_suite() -> tuple[dict, bool]:
    p = CentralSpinParams(
        N=10_000, omega0=1.0, omega=1.0, alpha=1.0, T=1e6, include_zz=False
    )
    s1, s2 = theta_bars_saturated(p)
    tb1_big, _ = CentralSpinChannel(
        CentralSpinParams(
            N=p.N, omega0=p.omega0, omega=p.omega, alpha=1e6, T=p.T, include_zz=False
        )
    ).theta_bars()
    p1 = thermal_qubit(p.omega0, p.T).rho22
    ne = max(abs(p1 - s1), abs((1.0 - p1) - s2))
    lhs = s1 + s2 + 2.0 * ne
    mk = MarkovianThermalParams(gamma=1.0, omega0=1.0, T=1.0)
    mk_loss = ergometrics.avg_info_loss(make_channel(mk)).value

    reference = {
        "theta_bar_1": {"reference": 0.125, "value": s1, "match_1pct": abs(s1 - 0.125) <= 0.00125},
        "theta_bar_2": {"reference": 0.125, "value": s2, "match_1pct": abs(s2 - 0.125) <= 0.00125},
        "nonergodicity_max": {"reference": 0.375, "value": ne, "match_1pct": abs(ne - 0.375) <= 0.00375},
    }
    self_consistent = {
        "lhs_sum": {"value": lhs, "within_2pct_of_1": abs(lhs - 1.0) <= 0.02},
        "theta_bar_at_alpha_1e6": {
            "value": tb1_big,
            "saturated_value": s1,
            "within_1e-4": abs(tb1_big - s1) <= 1e-4,
        },
        "markovian_avg_info_loss": {
            "value": mk_loss,
            "within_1e-9_of_1": abs(mk_loss - 1.0) <= 1e-9,
        },
    }
    ok = (
        all(v["match_1pct"] for v in reference.values())
        and self_consistent["lhs_sum"]["within_2pct_of_1"]
        and self_consistent["theta_bar_at_alpha_1e6"]["within_1e-4"]
        and self_consistent["markovian_avg_info_loss"]["within_1e-9_of_1"]
    )
    return {"reference_constants": reference, "self_consistent": self_consistent}, ok


def cmd_axioms(args) -> int:
    measures = list(Measure) if args.measure == "all" else [Measure(args.measure)]
    results, ok = _axiom_suite(args.samples, args.seed, measures)
    payload = json.dumps({"scope": "axioms", "passed": ok, "results": results}, indent=2, default=_json_default)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(payload + "\n", encoding="utf-8")
    print(payload)
    return 0 if ok else 1


def cmd_verify(args) -> int:
    suites = {
        "axioms": lambda: _axiom_suite(args.samples, args.seed),
        "oracle": lambda: _oracle_suite(args.seed),
        "relations": lambda: _relations_suite(args.seed),
        "saturation": _saturation_suite,
    }
    scopes = list(suites) if args.scope == "all" else [args.scope]
    report = {}
    ok = True
    for scope in scopes:
        results, scope_ok = suites[scope]()
        report[scope] = {"passed": scope_ok, "results": results}
        ok = ok and scope_ok
    payload = json.dumps({"passed": ok, "scopes": report}, indent=2, default=_json_default)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(payload + "\n", encoding="utf-8")
    print(payload)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ergoloss",
        description="Information-loss / non-ergodicity uncertainty toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--out", help="output path (directory for CSV subcommands)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--grid-theta", type=int, default=64)
        p.add_argument("--grid-phi", type=int, default=128)

    p_dyn = sub.add_parser("dynamics", help="time series CSVs")
    p_dyn.add_argument("--preset", choices=sorted(DYNAMICS_PRESETS))
    common(p_dyn)
    p_dyn.set_defaults(func=cmd_dynamics)

    p_unc = sub.add_parser("uncertainty", help="coupling-sweep CSVs")
    p_unc.add_argument("--preset", choices=sorted(UNCERTAINTY_PRESETS))
    common(p_unc)
    p_unc.set_defaults(func=cmd_uncertainty)

    p_ax = sub.add_parser("axioms", help="distance axiom suite")
    p_ax.add_argument(
        "--measure", default="all", choices=["all"] + [m.value for m in Measure]
    )
    p_ax.add_argument("--samples", type=int, default=2000)
    common(p_ax)
    p_ax.set_defaults(func=cmd_axioms)

    p_ver = sub.add_parser("verify", help="aggregate self-checks")
    p_ver.add_argument(
        "--scope", default="all",
        choices=["all", "axioms", "oracle", "relations", "saturation"],
    )
    p_ver.add_argument("--samples", type=int, default=500)
    common(p_ver)
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

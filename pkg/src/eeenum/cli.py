"""Command-line front end: ``eeenum sweep | spectrum | entropy | configs``.

Exit codes: 0 success, 2 invalid configuration or usage, 1 runtime failure.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import __version__
from .array_model import ConfigError, GaussianNoise, MixtureNoise, ScenarioConfig, generate_snapshots
from .enumerators import EnumMethod
from .experiments import Axis, SweepSpec, run_sweep
from .kernel_entropy import (KernelConfig, delta_F, entropy_estimate, silverman_bandwidth,
                             tail_entropy_profile)
from .spectrum import snapshot_spectrum

SPEC_REVISION = "1"
CSV_HEADER = ["axis", "axis_value", "method", "trials", "p_detect", "p_fa", "p_missed", "seed"]

_KEYS = {
    "scenario": {"num_sensors", "num_sources", "num_snapshots", "snr_db", "element_spacing",
                 "doas_deg", "source_powers"},
    "noise": {"model", "sigma2", "epsilon", "eta"},
    "kernel": {"kernel", "bandwidth", "scope", "floor"},
    "sweep": {"axis", "values", "methods", "trials", "seed"},
}


@dataclass
class RunManifest:
    spec: SweepSpec
    kernel: KernelConfig
    output_path: str
    emitted_rows: int
    tool_version: str = __version__
    spec_revision: str = SPEC_REVISION

    def to_json(self):
        spec = self.spec
        return json.dumps({
            "spec": {
                "base": _scenario_dict(spec.base),
                "axis": spec.axis.value,
                "values": list(spec.values),
                "methods": [m.value for m in spec.methods],
                "trials_per_point": spec.trials_per_point,
                "master_seed": spec.master_seed,
            },
            "kernel": {"kernel": self.kernel.kernel, "bandwidth": self.kernel.bandwidth,
                       "scope": self.kernel.scope, "bandwidth_floor": self.kernel.bandwidth_floor},
            "output_path": self.output_path,
            "emitted_rows": self.emitted_rows,
            "tool_version": self.tool_version,
            "spec_revision": self.spec_revision,
        }, sort_keys=True)


def _scenario_dict(cfg: ScenarioConfig):
    noise = cfg.noise
    return {
        "num_sensors": cfg.num_sensors, "num_sources": cfg.num_sources,
        "num_snapshots": cfg.num_snapshots, "snr_db": cfg.snr_db,
        "element_spacing": cfg.element_spacing,
        "doas_deg": [float(np.rad2deg(d)) for d in cfg.directions],
        "source_powers": list(cfg.powers),
        "noise": {"model": "mixture" if isinstance(noise, MixtureNoise) else "gaussian",
                  "sigma2": noise.sigma2, "epsilon": noise.epsilon, "eta": noise.eta},
    }


# -- config parsing ---------------------------------------------------------

def resolve_config_path(name):
    """Return a readable path, falling back to the bundled ``configs/`` directory."""
    if os.path.exists(name):
        return name
    bundled = resources.files("eeenum") / "configs" / os.path.basename(name)
    if bundled.is_file():
        return str(bundled)
    raise ConfigError("config", f"no such file {name!r}")


def bundled_configs():
    return sorted(p.name for p in (resources.files("eeenum") / "configs").iterdir()
                  if p.name.endswith(".conf"))


def _number(section, key, raw, kind=float):
    try:
        value = kind(raw) if kind is float else int(raw, 0)
    except ValueError:
        raise ConfigError(key, f"[{section}] {key} = {raw!r} is not a valid number") from None
    return value


def _number_list(section, key, raw, kind=float):
    return [_number(section, key, item.strip(), kind) for item in raw.split(",") if item.strip()]


def read_config(text):
    """Parse config text into ``(ScenarioConfig, KernelConfig, sweep dict)``."""
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError("config", str(exc).splitlines()[0]) from None
    for section in parser.sections():
        if section not in _KEYS:
            raise ConfigError(section, f"unknown section [{section}]")
        for key in parser[section]:
            if key not in _KEYS[section]:
                raise ConfigError(key, f"unknown key {key!r} in [{section}]")
    if not parser.has_section("scenario"):
        raise ConfigError("scenario", "missing [scenario] section")
    sc = parser["scenario"]
    for key in ("num_sensors", "num_sources", "num_snapshots"):
        if key not in sc:
            raise ConfigError(key, f"missing required key {key!r} in [scenario]")

    noise_sec = parser["noise"] if parser.has_section("noise") else {}
    model = noise_sec.get("model", "gaussian").strip().lower()
    sigma2 = _number("noise", "sigma2", noise_sec.get("sigma2", "1.0"))
    if model == "gaussian":
        if "epsilon" in noise_sec or "eta" in noise_sec:
            raise ConfigError("model", "epsilon/eta require model = mixture")
        noise = GaussianNoise(sigma2)
    elif model == "mixture":
        noise = MixtureNoise(sigma2,
                             _number("noise", "epsilon", noise_sec.get("epsilon", "0.01")),
                             _number("noise", "eta", noise_sec.get("eta", "100")))
    else:
        raise ConfigError("model", f"noise model must be 'gaussian' or 'mixture', got {model!r}")

    doas = None
    if "doas_deg" in sc:
        doas = tuple(np.deg2rad(_number_list("scenario", "doas_deg", sc["doas_deg"])).tolist())
    powers = None
    if "source_powers" in sc:
        powers = tuple(_number_list("scenario", "source_powers", sc["source_powers"]))
    scenario = ScenarioConfig(
        num_sensors=_number("scenario", "num_sensors", sc["num_sensors"], int),
        num_sources=_number("scenario", "num_sources", sc["num_sources"], int),
        num_snapshots=_number("scenario", "num_snapshots", sc["num_snapshots"], int),
        snr_db=_number("scenario", "snr_db", sc.get("snr_db", "0")),
        element_spacing=_number("scenario", "element_spacing", sc.get("element_spacing", "0.5")),
        doas=doas, noise=noise, source_powers=powers)

    kernel_sec = parser["kernel"] if parser.has_section("kernel") else {}
    bandwidth = kernel_sec.get("bandwidth", "silverman").strip().lower()
    if bandwidth != "silverman":
        bandwidth = _number("kernel", "bandwidth", bandwidth)
    floor = kernel_sec.get("floor")
    try:
        kernel = KernelConfig(kernel=kernel_sec.get("kernel", "gaussian").strip().lower(),
                              bandwidth=bandwidth,
                              scope=kernel_sec.get("scope", "window").strip().lower(),
                              bandwidth_floor=None if floor is None else _number("kernel", "floor", floor))
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError("kernel", str(exc)) from None

    sweep = dict(parser["sweep"]) if parser.has_section("sweep") else {}
    return scenario, kernel, sweep


def build_sweep(scenario, sweep, seed=None, trials=None, methods=None):
    if "axis" not in sweep or "values" not in sweep:
        raise ConfigError("sweep", "[sweep] needs 'axis' and 'values'")
    try:
        axis = Axis(sweep["axis"].strip().lower())
    except ValueError:
        valid = ", ".join(a.value for a in Axis)
        raise ConfigError("axis", f"unknown axis {sweep['axis']!r} (expected one of {valid})") from None
    kind = int if axis.integral else float
    values = _number_list("sweep", "values", sweep["values"], kind)
    if methods is None:
        methods = sweep.get("methods", ",".join(m.value for m in EnumMethod))
    try:
        methods = [EnumMethod.parse(m) for m in methods.split(",") if m.strip()]
    except ValueError as exc:
        raise ConfigError("methods", str(exc)) from None
    if trials is None:
        trials = _number("sweep", "trials", sweep.get("trials", "1000"), int)
    if seed is None:
        seed = _number("sweep", "seed", sweep.get("seed", "0"), int)
    return SweepSpec(scenario, axis, tuple(values), tuple(methods), trials, seed)


def _load(path):
    path = resolve_config_path(path)
    with open(path, encoding="utf-8") as fh:
        return read_config(fh.read())


# -- output -----------------------------------------------------------------

def _format_axis_value(axis, value):
    return str(int(value)) if axis.integral else format(float(value), ".10g")


def sweep_csv(spec: SweepSpec, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        for st in sorted(row.stats, key=lambda s: s.method.value):
            writer.writerow([spec.axis.value, _format_axis_value(spec.axis, row.axis_value),
                             st.method.value, st.trials, f"{st.p_detect:.6f}", f"{st.p_fa:.6f}",
                             f"{st.p_missed:.6f}", row.seed])
    return buf.getvalue()


def write_atomic(path, text):
    """Write ``text`` to ``path`` via a temporary file in the same directory."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".eeenum-", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text, output):
    if output in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        write_atomic(output, text)


# -- commands ---------------------------------------------------------------

def cmd_sweep(args):
    scenario, kernel, sweep = _load(args.config)
    spec = build_sweep(scenario, sweep, seed=args.seed, trials=args.trials, methods=args.methods)
    rows = run_sweep(spec, kernel, workers=args.workers)
    _emit(sweep_csv(spec, rows), args.output)
    manifest = RunManifest(spec, kernel, args.output or "-", len(rows) * len(spec.methods))
    print(manifest.to_json(), file=sys.stderr)
    return 0


def cmd_spectrum(args):
    scenario, kernel, _ = _load(args.config)
    rng = np.random.default_rng(args.seed)
    spec = snapshot_spectrum(generate_snapshots(scenario, rng))
    profile = tail_entropy_profile(spec, kernel)
    dF = delta_F(profile)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "eigenvalue", "F", "delta_F"])
    for i, lam in enumerate(spec.values):
        writer.writerow([i + 1, f"{lam:.12g}", f"{profile[i]:.12g}",
                         f"{dF[i]:.12g}" if i < len(dF) else ""])
    _emit(buf.getvalue(), args.output)
    return 0


def cmd_entropy(args):
    if not args.values:
        raise ConfigError("values", "at least one value is required")
    values = np.asarray(args.values, dtype=np.float64)
    if args.bandwidth is None:
        if values.shape[0] < 2:
            raise ConfigError("bandwidth", "Silverman bandwidth needs at least 2 values; pass --bandwidth")
        h = silverman_bandwidth(values)
    else:
        h = args.bandwidth
        if not h > 0:
            raise ConfigError("bandwidth", f"must be > 0, got {h}")
    print(f"{entropy_estimate(values, h):.12g}")
    return 0


def cmd_configs(args):
    for name in bundled_configs():
        print(name)
    return 0


def _workers(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def make_parser():
    parser = argparse.ArgumentParser(
        prog="eeenum", description="Source enumeration benchmarks (EEE, AIC, MDL).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="run a Monte Carlo sweep and write CSV")
    p.add_argument("--config", required=True, help="config file (or name of a bundled one)")
    p.add_argument("--output", default="-", help="CSV path, '-' for stdout")
    p.add_argument("--seed", type=int, help="override the master seed")
    p.add_argument("--trials", type=int, help="override trials per point")
    p.add_argument("--workers", type=_workers, default=1, help="worker processes")
    p.add_argument("--methods", help="comma list of eee-tail,eee-head,aic,mdl")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("spectrum", help="dump one trial's eigenvalues and entropy profile")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("entropy", help="kernel entropy of a list of values")
    p.add_argument("values", nargs="*", type=float)
    p.add_argument("--bandwidth", type=float)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("configs", help="list bundled experiment configs")
    p.set_defaults(func=cmd_configs)
    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.command == "entropy" and not args.values:
        parser.error("entropy: at least one value is required")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"eeenum: invalid configuration: {exc}", file=sys.stderr)
        return 2
    except (OSError, RuntimeError, ValueError) as exc:
        print(f"eeenum: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

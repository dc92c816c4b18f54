"""Config-driven experiment harness and command-line entry point.

Subcommands:
  run <config>       sample chains and write trace.csv / report.csv / manifest
  rates <config>     rate and bound studies only (no sampling)
  validate <config>  parse the config and check the network

Configs are JSON; the full schema is documented in the README.  All floats
are written with 17 significant digits so artifacts round-trip losslessly,
and identical configs produce byte-identical artifacts regardless of
--threads.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__, gaussian_oracle, harness, metrics, rates
from .gaussian_oracle import GaussianDist
from .graph import BipartiteNetwork, make_network, validate
from .potentials import PotentialSpec, QUADRATIC, ZERO, quadratic, zero

MODES = ("sequential", "distributed-sim")


class ConfigError(ValueError):
    """The config file is malformed or describes an invalid experiment."""


# ----------------------------------------------------------------------
# Config model
# ----------------------------------------------------------------------


@dataclass
class PotentialConfig:
    kind: str
    center: Optional[list] = None
    precision: Optional[object] = None  # scalar or d x d nested list


@dataclass
class NetworkConfig:
    n: int
    m: int
    d: int
    eta: float
    edges: list  # [(i, j, weight), ...]
    f: list  # [PotentialConfig, ...]
    g: list


@dataclass
class InitConfig:
    kind: str = "gaussian"
    mean: object = 0.0  # scalar or (n, d) nested list
    std: float = 1.0
    x0: Optional[list] = None  # (n, d) nested list for kind="fixed"


@dataclass
class RunConfig:
    seed: int = 0
    sweeps: int = 50
    n_chains: int = 10_000
    mode: str = "sequential"


@dataclass
class SmallEtaConfig:
    grid: list = field(default_factory=list)
    shared_minimizer: bool = False
    smoothing: bool = False


@dataclass
class StudyConfig:
    rate_report: bool = False
    delta: float = 0.01
    small_eta: Optional[SmallEtaConfig] = None


@dataclass
class OutputConfig:
    trace: Optional[str] = "trace.csv"
    report: str = "report.csv"
    manifest: str = "manifest.json"


@dataclass
class ExperimentConfig:
    network: NetworkConfig
    init: InitConfig = field(default_factory=InitConfig)
    run: RunConfig = field(default_factory=RunConfig)
    study: StudyConfig = field(default_factory=StudyConfig)
    output: OutputConfig = field(default_factory=OutputConfig)


def _require_keys(section: dict, allowed: set, where: str):
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) {sorted(unknown)} in {where}")


def _potential_from_dict(raw: dict, d: int, where: str) -> PotentialConfig:
    if not isinstance(raw, dict) or "kind" not in raw:
        raise ConfigError(f"{where}: each potential needs a 'kind'")
    _require_keys(raw, {"kind", "center", "precision"}, where)
    kind = raw["kind"]
    if kind == ZERO:
        if raw.get("center") is not None or raw.get("precision") is not None:
            raise ConfigError(f"{where}: zero potentials take no parameters")
        return PotentialConfig(kind=ZERO)
    if kind != QUADRATIC:
        raise ConfigError(f"{where}: unknown potential kind {kind!r} (config supports 'quadratic' and 'zero')")
    center = raw.get("center")
    if center is None:
        raise ConfigError(f"{where}: quadratic potential needs a center")
    if isinstance(center, (int, float)):
        center = [float(center)] * d
    else:
        center = [float(c) for c in center]
    if len(center) != d:
        raise ConfigError(f"{where}: center has {len(center)} coordinates, expected d={d}")
    precision = raw.get("precision")
    if precision is None:
        raise ConfigError(f"{where}: quadratic potential needs a precision")
    if isinstance(precision, (int, float)):
        precision = float(precision)
        if precision <= 0:
            raise ConfigError(f"{where}: precision must be > 0")
    else:
        precision = [[float(v) for v in row] for row in precision]
        if len(precision) != d or any(len(r) != d for r in precision):
            raise ConfigError(f"{where}: precision matrix must be {d}x{d}")
    return PotentialConfig(kind=QUADRATIC, center=center, precision=precision)


def config_from_dict(raw: dict) -> ExperimentConfig:
    """Build a validated, fully-defaulted config from a parsed JSON object."""
    if not isinstance(raw, dict):
        raise ConfigError("config root must be an object")
    _require_keys(raw, {"network", "init", "run", "study", "output"}, "config root")
    if "network" not in raw:
        raise ConfigError("config needs a 'network' section")

    netraw = raw["network"]
    _require_keys(netraw, {"n", "m", "d", "eta", "edges", "f", "g"}, "network")
    for key in ("n", "m", "d", "eta", "edges", "f", "g"):
        if key not in netraw:
            raise ConfigError(f"network section is missing '{key}'")
    n, m, d = int(netraw["n"]), int(netraw["m"]), int(netraw["d"])
    edges = []
    for e in netraw["edges"]:
        if len(e) != 3:
            raise ConfigError(f"edge {e} must be [i, j, weight]")
        i, j, w = int(e[0]), int(e[1]), float(e[2])
        if w == 0:
            raise ConfigError(f"edge ({i}, {j}) has coupling weight 0; remove the edge instead")
        edges.append((i, j, w))
    if len(netraw["f"]) != n:
        raise ConfigError(f"network has n={n} X-vertices but {len(netraw['f'])} 'f' potentials")
    if len(netraw["g"]) != m:
        raise ConfigError(f"network has m={m} Y-vertices but {len(netraw['g'])} 'g' potentials")
    network = NetworkConfig(
        n=n,
        m=m,
        d=d,
        eta=float(netraw["eta"]),
        edges=edges,
        f=[_potential_from_dict(p, d, f"network.f[{i}]") for i, p in enumerate(netraw["f"])],
        g=[_potential_from_dict(p, d, f"network.g[{j}]") for j, p in enumerate(netraw["g"])],
    )

    initraw = raw.get("init", {})
    _require_keys(initraw, {"kind", "mean", "std", "x0"}, "init")
    init = InitConfig(
        kind=initraw.get("kind", "gaussian"),
        mean=initraw.get("mean", 0.0),
        std=float(initraw.get("std", 1.0)),
        x0=initraw.get("x0"),
    )
    if init.kind not in ("gaussian", "fixed"):
        raise ConfigError(f"init.kind must be 'gaussian' or 'fixed', got {init.kind!r}")
    if init.kind == "fixed" and init.x0 is None:
        raise ConfigError("init.kind='fixed' needs 'x0'")
    if init.kind == "gaussian" and init.std <= 0:
        raise ConfigError("init.std must be > 0")

    runraw = raw.get("run", {})
    _require_keys(runraw, {"seed", "sweeps", "n_chains", "mode"}, "run")
    run = RunConfig(
        seed=int(runraw.get("seed", 0)),
        sweeps=int(runraw.get("sweeps", 50)),
        n_chains=int(runraw.get("n_chains", 10_000)),
        mode=runraw.get("mode", "sequential"),
    )
    if run.sweeps < 1:
        raise ConfigError("run.sweeps must be >= 1")
    if run.n_chains < 1:
        raise ConfigError("run.n_chains must be >= 1")
    if run.mode not in MODES:
        raise ConfigError(f"run.mode must be one of {MODES}, got {run.mode!r}")

    studyraw = raw.get("study", {})
    _require_keys(studyraw, {"rate_report", "delta", "small_eta"}, "study")
    small_eta = None
    if studyraw.get("small_eta") is not None:
        seraw = studyraw["small_eta"]
        _require_keys(seraw, {"grid", "shared_minimizer", "smoothing"}, "study.small_eta")
        grid = [float(v) for v in seraw.get("grid", [])]
        if not grid:
            raise ConfigError("study.small_eta.grid must be a non-empty list")
        if any(v <= 0 for v in grid):
            raise ConfigError("study.small_eta.grid values must be > 0")
        small_eta = SmallEtaConfig(grid=grid, shared_minimizer=bool(seraw.get("shared_minimizer", False)), smoothing=bool(seraw.get("smoothing", False)))
    study = StudyConfig(
        rate_report=bool(studyraw.get("rate_report", False)),
        delta=float(studyraw.get("delta", 0.01)),
        small_eta=small_eta,
    )
    if not 0 < study.delta < 1:
        raise ConfigError("study.delta must be in (0, 1)")

    outraw = raw.get("output", {})
    _require_keys(outraw, {"trace", "report", "manifest"}, "output")
    output = OutputConfig(
        trace=outraw.get("trace", "trace.csv"),
        report=outraw.get("report", "report.csv"),
        manifest=outraw.get("manifest", "manifest.json"),
    )

    cfg = ExperimentConfig(network=network, init=init, run=run, study=study, output=output)
    report = validate(build_network(cfg))
    if not report.ok:
        raise ConfigError("network failed validation: " + "; ".join(report.problems))
    return cfg


def config_to_dict(cfg: ExperimentConfig) -> dict:
    """Plain-JSON echo of a config; config_from_dict inverts it exactly."""
    return asdict(cfg)


def load_config(path) -> ExperimentConfig:
    """Parse and validate a JSON config file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e
    return config_from_dict(raw)


def _build_potential(pc: PotentialConfig) -> PotentialSpec:
    if pc.kind == ZERO:
        return zero()
    return quadratic(pc.center, np.asarray(pc.precision, dtype=float))


def build_network(cfg: ExperimentConfig) -> BipartiteNetwork:
    nc = cfg.network
    try:
        return make_network(
            nc.n,
            nc.m,
            nc.d,
            nc.eta,
            nc.edges,
            [_build_potential(p) for p in nc.f],
            [_build_potential(p) for p in nc.g],
        )
    except ValueError as e:
        raise ConfigError(str(e)) from e


def _init_spec(cfg: ExperimentConfig) -> harness.InitSpec:
    nc = cfg.network
    if cfg.init.kind == "fixed":
        x0 = np.asarray(cfg.init.x0, dtype=float)
        if x0.shape != (nc.n, nc.d):
            raise ConfigError(f"init.x0 must be an {nc.n} x {nc.d} array")
        return harness.InitSpec(kind="fixed", x0=x0)
    mean = np.asarray(cfg.init.mean, dtype=float)
    if mean.ndim == 0:
        mean = np.full((nc.n, nc.d), float(mean))
    if mean.shape != (nc.n, nc.d):
        raise ConfigError(f"init.mean must be a scalar or an {nc.n} x {nc.d} array")
    return harness.InitSpec(kind="gaussian", mean=mean, std=float(cfg.init.std))


def _init_law(cfg: ExperimentConfig) -> Optional[GaussianDist]:
    """Exact law of the initial X block, when it is Gaussian."""
    if cfg.init.kind != "gaussian":
        return None
    spec = _init_spec(cfg)
    dim = cfg.network.n * cfg.network.d
    return GaussianDist(spec.mean.reshape(dim), spec.std**2 * np.eye(dim))


# ----------------------------------------------------------------------
# Studies
# ----------------------------------------------------------------------


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, float) or isinstance(x, np.floating):
        return f"{float(x):.17g}"
    return str(x)


def _rate_rows(cfg: ExperimentConfig, net: BipartiteNetwork, kl0: Optional[float]):
    summary = rates.NetworkSummary.from_network(net)
    report = rates.build_rate_report(summary, net.eta, kl0=kl0)
    rows = [
        ("rates", "C", report.C),
        ("rates", "per_sweep_contraction", report.per_sweep_contraction),
        ("rates", "degenerate", report.degenerate),
    ]
    delta = cfg.study.delta
    if kl0 is not None:
        try:
            rows.append(("rates", f"mixing_sweeps/delta={delta:g}", report.mixing_sweeps(delta)))
        except ValueError:
            pass
    if net.n == 1 and net.m == 1 and kl0 is not None:
        fpot, gpot = net.f[0], net.g[0]
        if math.isfinite(fpot.beta) and math.isfinite(gpot.beta):
            try:
                rows.append(
                    (
                        "rates",
                        f"mixing_sweeps_exact_rgo/delta={delta:g}",
                        rates.mixing_sweeps_exact_rgo(
                            fpot.alpha, gpot.alpha, fpot.beta, gpot.beta, net.d, net.eta, kl0, delta
                        ),
                    )
                )
                rows.append(
                    (
                        "rates",
                        f"mixing_o_form/delta={delta:g}",
                        rates.mixing_o_form(fpot.alpha, gpot.alpha, fpot.beta, gpot.beta, net.d, kl0, delta),
                    )
                )
            except ValueError:
                pass
    return rows


def _two_node_for_eta(net: BipartiteNetwork, eta: float) -> BipartiteNetwork:
    return make_network(1, 1, net.d, eta, [(0, 0, 1.0)], [net.f[0]], [net.g[0]])


def _isotropic_sigma_sq(pot: PotentialSpec, where: str) -> float:
    if pot.kind != QUADRATIC:
        raise ConfigError(f"{where}: potential must be quadratic")
    P = pot.precision
    if not np.allclose(P, P[0, 0] * np.eye(P.shape[0]), rtol=1e-12, atol=0.0):
        raise ConfigError(f"{where}: potential must be isotropic (precision proportional to identity)")
    return 1.0 / float(P[0, 0])


def _small_eta_rows(cfg: ExperimentConfig, net: BipartiteNetwork):
    se = cfg.study.small_eta
    rows = []
    if net.n != 1 or net.m != 1:
        raise ConfigError("small-eta studies require a two-node network (n = m = 1)")
    if net.edges != ((0, 0, 1.0),):
        raise ConfigError("small-eta studies require the single coupling weight to be 1")
    fpot, gpot = net.f[0], net.g[0]
    if se.shared_minimizer:
        if net.d != 1:
            raise ConfigError("the shared-minimizer small-eta study needs d = 1 for the exact TV reference")
        sigma_sq = _isotropic_sigma_sq(gpot, "small_eta.shared_minimizer g-potential")
        if fpot.kind != QUADRATIC:
            raise ConfigError("small_eta.shared_minimizer needs a quadratic X-side potential")
        if not np.allclose(fpot.center, gpot.center, atol=1e-12):
            raise ConfigError("small_eta.shared_minimizer requires f and g to share the same minimizer")
        nu_prec = fpot.precision + gpot.precision
        nu = GaussianDist(fpot.center, np.linalg.inv(nu_prec))
        for eta in se.grid:
            pi_x = gaussian_oracle.exact_joint(_two_node_for_eta(net, eta)).marginal([0])
            rows.append(("small_eta", f"shared_minimizer/eta={eta:g}/exact_tv", gaussian_oracle.tv_1d(pi_x, nu)))
            rows.append(("small_eta", f"shared_minimizer/eta={eta:g}/tv_bound", rates.shared_minimizer_tv_bound(net.d, fpot.alpha, sigma_sq, eta)))
            rows.append(("small_eta", f"shared_minimizer/eta={eta:g}/exact_kl", gaussian_oracle.kl(nu, pi_x)))
            rows.append(("small_eta", f"shared_minimizer/eta={eta:g}/kl_bound", rates.shared_minimizer_kl_bound(net.d, fpot.alpha, sigma_sq, eta)))
    if se.smoothing:
        if fpot.kind != ZERO:
            raise ConfigError("small_eta.smoothing requires the X-side potential to be zero")
        sigma_sq = _isotropic_sigma_sq(gpot, "small_eta.smoothing g-potential")
        alpha = beta = 1.0 / sigma_sq
        nu = GaussianDist(gpot.center, np.linalg.inv(gpot.precision))
        for eta in se.grid:
            pi_x = gaussian_oracle.exact_joint(_two_node_for_eta(net, eta)).marginal(list(range(net.d)))
            rows.append(("small_eta", f"smoothing/eta={eta:g}/exact_kl", gaussian_oracle.kl(pi_x, nu)))
            rows.append(("small_eta", f"smoothing/eta={eta:g}/kl_bound", rates.smoothing_kl_bound(net.d, alpha, beta, eta)))
            if net.d == 1:
                rows.append(("small_eta", f"smoothing/eta={eta:g}/exact_tv", gaussian_oracle.tv_1d(pi_x, nu)))
            rows.append(("small_eta", f"smoothing/eta={eta:g}/tv_bound", rates.smoothing_tv_bound(net.d, alpha, beta, eta)))
    return rows


def _theory_and_empirical_rows(cfg: ExperimentConfig, net: BipartiteNetwork, result: harness.BatchResult, kl0: Optional[float]):
    rows = []
    K = cfg.run.sweeps
    C = cfg.run.n_chains
    d = net.d

    for i in range(net.n):
        for c in range(d):
            col = result.X[:, K - 1, i, c]
            rows.append(("empirical", f"x_mean/k={K}/vertex={i}/coord={c}", float(col.mean())))
            rows.append(("empirical", f"x_var/k={K}/vertex={i}/coord={c}", float(col.var(ddof=1)) if C > 1 else 0.0))
    for j in range(net.m):
        for c in range(d):
            col = result.Y[:, K - 1, j, c]
            rows.append(("empirical", f"y_mean/k={K}/vertex={j}/coord={c}", float(col.mean())))
            rows.append(("empirical", f"y_var/k={K}/vertex={j}/coord={c}", float(col.var(ddof=1)) if C > 1 else 0.0))
    rows.append(("empirical", "mean_proposals", float((result.proposals_x.mean() + result.proposals_y.mean()) / 2.0)))

    if kl0 is None:
        return rows
    try:
        pi_x = gaussian_oracle.exact_joint(net).marginal(gaussian_oracle.x_indices(net))
        mu0 = _init_law(cfg)
        exact = gaussian_oracle.kl_decay_x(net, mu0, range(0, K + 1))
    except ValueError:
        return rows
    summary = rates.NetworkSummary.from_network(net)
    report = rates.build_rate_report(summary, net.eta, kl0=kl0)
    rows.append(("theory", "kl0", kl0))
    for k in range(1, K + 1):
        rows.append(("theory", f"kl_exact/k={k}", exact[k]))
        rows.append(("theory", f"kl_bound/k={k}", report.kl_bound_at_k(k)))
    if C >= net.n * d + 2:
        for k in range(1, K + 1):
            samples = result.X[:, k - 1].reshape(C, net.n * d)
            rows.append(("empirical", f"kl_x/k={k}", metrics.empirical_kl_vs_gaussian(samples, pi_x)))
    return rows


# ----------------------------------------------------------------------
# Artifact writers
# ----------------------------------------------------------------------


def _write_report(path: Path, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["study", "key", "value"])
        for study, key, value in rows:
            w.writerow([study, key, _fmt(value)])


def _write_trace(path: Path, net: BipartiteNetwork, result: harness.BatchResult):
    d = net.d
    header = ["chain", "k", "side", "vertex"] + [f"coord{c}" for c in range(d)] + ["proposals"]
    C, K = result.X.shape[0], result.X.shape[1]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for chain in range(C):
            for k in range(1, K + 1):
                for j in range(net.m):
                    coords = [_fmt(v) for v in result.Y[chain, k - 1, j]]
                    w.writerow([chain, k, "Y", j] + coords + [int(result.proposals_y[chain, k - 1, j])])
                for i in range(net.n):
                    coords = [_fmt(v) for v in result.X[chain, k - 1, i]]
                    w.writerow([chain, k, "X", i] + coords + [int(result.proposals_x[chain, k - 1, i])])


def _write_manifest(path: Path, cfg: ExperimentConfig, status: str, artifacts: dict, error: Optional[str] = None):
    doc = {
        "library": "netgibbs",
        "version": __version__,
        "status": status,
        "seed": cfg.run.seed,
        "config": config_to_dict(cfg),
        "artifacts": artifacts,
    }
    if error is not None:
        doc["error"] = error
    path.write_text(json.dumps(doc, indent=2) + "\n")


# ----------------------------------------------------------------------
# Experiment driver
# ----------------------------------------------------------------------


def run_experiment(cfg: ExperimentConfig, out_dir, threads: int = 1, quiet: bool = False, sample: bool = True) -> dict:
    """Execute the configured experiment and write its artifacts.

    Returns {artifact name: path}.  On a sampler error the manifest is still
    written with status "error" and whatever artifacts completed, then the
    error re-raises.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    net = build_network(cfg)
    report = validate(net)
    if not report.ok:
        raise ConfigError("network failed validation: " + "; ".join(report.problems))

    manifest_path = out_dir / cfg.output.manifest
    report_path = out_dir / cfg.output.report
    artifacts = {"report": str(report_path)}
    rows = []
    kl0 = None
    mu0 = _init_law(cfg)
    if mu0 is not None:
        try:
            pi_x = gaussian_oracle.exact_joint(net).marginal(gaussian_oracle.x_indices(net))
            kl0 = gaussian_oracle.kl(mu0, pi_x)
        except ValueError:
            kl0 = None

    try:
        if cfg.study.rate_report:
            rows.extend(_rate_rows(cfg, net, kl0))
        if cfg.study.small_eta is not None:
            rows.extend(_small_eta_rows(cfg, net))

        if sample:
            rows.insert(0, ("run", "mode", cfg.run.mode))
            rows.insert(1, ("run", "n_chains", cfg.run.n_chains))
            rows.insert(2, ("run", "sweeps", cfg.run.sweeps))
            rows.insert(3, ("run", "seed", cfg.run.seed))
            result = harness.run_chain_batch(
                net,
                n_chains=cfg.run.n_chains,
                sweeps=cfg.run.sweeps,
                seed=cfg.run.seed,
                init=_init_spec(cfg),
                distributed=(cfg.run.mode == "distributed-sim"),
                threads=threads,
            )
            if result.messages_per_sweep is not None:
                rows.append(("run", "messages_per_sweep", result.messages_per_sweep))
                rows.append(("run", "messages_total", result.messages_per_sweep * cfg.run.sweeps))
            rows.extend(_theory_and_empirical_rows(cfg, net, result, kl0))
            if cfg.output.trace is not None:
                trace_path = out_dir / cfg.output.trace
                _write_trace(trace_path, net, result)
                artifacts["trace"] = str(trace_path)
        _write_report(report_path, rows)
    except Exception as e:
        try:
            _write_report(report_path, rows)
        except Exception:
            pass
        artifacts["manifest"] = str(manifest_path)
        _write_manifest(manifest_path, cfg, "error", artifacts, error=f"{type(e).__name__}: {e}")
        raise

    artifacts["manifest"] = str(manifest_path)
    _write_manifest(manifest_path, cfg, "ok", artifacts)
    if not quiet:
        for name, p in artifacts.items():
            print(f"{name}: {p}")
    return artifacts


# ----------------------------------------------------------------------
# Entry point
# ----------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="netgibbs", description="Blocked Gibbs sampling experiments over bipartite networks")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("run", "sample chains and write trace/report/manifest"),
        ("rates", "write the rate and bound report without sampling"),
        ("validate", "check a config file and its network"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("config", help="path to a JSON experiment config")
        p.add_argument("--out", default="out", help="output directory (default: out)")
        p.add_argument("--threads", type=int, default=1, help="worker processes for chain blocks; 0 = one per CPU")
        p.add_argument("--quiet", action="store_true", help="suppress progress output")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2

    if args.command == "validate":
        if not args.quiet:
            print("ok")
        return 0

    try:
        run_experiment(cfg, args.out, threads=args.threads, quiet=args.quiet, sample=(args.command == "run"))
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    except Exception as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

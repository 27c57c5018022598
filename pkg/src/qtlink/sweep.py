"""Parameter sweeps, figure presets, and tabulated results.

Everything downstream of :mod:`qtlink.sensing` is deterministic: a given
spec always produces the identical table, so emitted CSV/JSON files are
byte-stable and can be golden-tested.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from . import sensing
from .sensing import ChannelPair, SensingConfig

__all__ = [
    "Range",
    "SweepSpec",
    "GridSpec",
    "SweepResult",
    "run_sweep",
    "run_grid",
    "run_compare_smsv",
    "preset_fig2",
    "preset_fig3",
    "preset_fig4",
    "PAPER_SCALE_CONFIG",
]

SWEEP_VARIABLES = ("eta_symmetric", "eta1", "eta2", "r_db", "n_in")
SCHEMES = ("TMSV", "SQL", "SMSV")

# LEO-link scale used by all figure presets: 815 nm carrier, 2*pi MHz
# spectral spread, a 1000-photon budget.
PAPER_SCALE_CONFIG = SensingConfig(
    r_db=5.0, n_in=1e3, lambda0=815e-9, delta_omega=2.0 * math.pi * 1e6
)


@dataclass(frozen=True)
class Range:
    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if self.steps < 2:
            raise ValueError(f"steps must be >= 2, got {self.steps}")
        if not self.start < self.stop:
            raise ValueError(f"need start < stop, got [{self.start}, {self.stop}]")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class SweepSpec:
    """One-dimensional sweep of a single variable at fixed everything-else."""

    variable: str
    range: Range
    config: SensingConfig = PAPER_SCALE_CONFIG
    channel: ChannelPair = ChannelPair(1.0, 1.0)
    schemes: tuple = SCHEMES

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ValueError(
                f"unknown sweep variable {self.variable!r}; pick one of {SWEEP_VARIABLES}"
            )
        unknown = set(self.schemes) - set(SCHEMES)
        if unknown or not self.schemes:
            raise ValueError(f"schemes must be a nonempty subset of {SCHEMES}")
        if self.variable.startswith("eta"):
            if self.range.start <= 0 or self.range.stop > 1.0:
                raise ValueError("eta sweeps must stay inside (0, 1]")
        elif self.variable == "r_db":
            if self.range.start < 0:
                raise ValueError("r_db sweeps must start at >= 0")
        elif self.range.start <= 0:
            raise ValueError("n_in sweeps must stay positive")


@dataclass(frozen=True)
class GridSpec:
    """Two-dimensional (eta1, eta2) grid at fixed squeezing."""

    eta1_range: Range
    eta2_range: Range
    config: SensingConfig = PAPER_SCALE_CONFIG
    quantity: str = "advantage"

    def __post_init__(self):
        for rng in (self.eta1_range, self.eta2_range):
            if rng.start <= 0 or rng.stop > 1.0:
                raise ValueError("eta grids must stay inside (0, 1]")
        if self.quantity not in ("advantage", "delta_u"):
            raise ValueError(f"unknown grid quantity {self.quantity!r}")


@dataclass
class SweepResult:
    """Tabulated sweep output: column names, float rows, config echo."""

    columns: list
    rows: list
    meta: dict = field(default_factory=dict)
    grid_shape: tuple | None = None

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError("row width does not match column count")
            if not all(math.isfinite(v) for v in row):
                raise ValueError(f"non-finite value in sweep row {row}")

    def column(self, name: str) -> np.ndarray:
        idx = self.columns.index(name)
        return np.array([row[idx] for row in self.rows])


def _echo(config: SensingConfig, channel: ChannelPair | None = None) -> dict:
    out = {"sensing": asdict(config)}
    if channel is not None:
        out["channel"] = asdict(channel)
    return out


def _apply_variable(spec: SweepSpec, value: float):
    cfg, ch = spec.config, spec.channel
    if spec.variable == "eta_symmetric":
        return cfg, replace(ch, eta1=value, eta2=value)
    if spec.variable == "eta1":
        return cfg, replace(ch, eta1=value)
    if spec.variable == "eta2":
        return cfg, replace(ch, eta2=value)
    if spec.variable == "r_db":
        return cfg.with_(r_db=value), ch
    return cfg.with_(n_in=value), ch


_SCHEME_COLUMNS = {"TMSV": "du_tmsv", "SQL": "du_sql", "SMSV": "du_smsv"}


def _evaluate(scheme: str, cfg: SensingConfig, ch: ChannelPair) -> float:
    if scheme == "TMSV":
        return sensing.delta_u_tmsv_real(cfg, ch).delta_u
    if scheme == "SQL":
        return sensing.delta_u_sql(cfg, ch).delta_u
    return sensing.delta_u_smsv_real(cfg, ch.eta1).delta_u


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate the requested schemes at every point of a one-variable sweep."""
    schemes = [s for s in SCHEMES if s in spec.schemes]
    columns = [spec.variable] + [_SCHEME_COLUMNS[s] for s in schemes]
    rows = []
    for value in spec.range.values():
        cfg, ch = _apply_variable(spec, float(value))
        rows.append([float(value)] + [_evaluate(s, cfg, ch) for s in schemes])
    meta = _echo(spec.config, spec.channel)
    meta["sweep"] = {"variable": spec.variable, **asdict(spec.range)}
    return SweepResult(columns, rows, meta)


def run_grid(spec: GridSpec) -> SweepResult:
    """Evaluate the advantage (or the lossy offset) over an (eta1, eta2) grid.

    Advantage rows carry the signed value plus a sign column so that
    no-advantage regions can be extracted without re-deriving them.
    """
    cfg = spec.config
    if spec.quantity == "advantage":
        columns = ["eta1", "eta2", "advantage", "sign"]
    else:
        columns = ["eta1", "eta2", "du_tmsv"]
    rows = []
    e1_values = spec.eta1_range.values()
    e2_values = spec.eta2_range.values()
    for e1 in e1_values:
        for e2 in e2_values:
            ch = ChannelPair(float(e1), float(e2))
            if spec.quantity == "advantage":
                adv = sensing.quantum_advantage(cfg, ch)
                rows.append([float(e1), float(e2), adv, float(np.sign(adv))])
            else:
                rows.append(
                    [float(e1), float(e2), sensing.delta_u_tmsv_real(cfg, ch).delta_u]
                )
    meta = _echo(cfg)
    meta["grid"] = {
        "eta1": asdict(spec.eta1_range),
        "eta2": asdict(spec.eta2_range),
        "quantity": spec.quantity,
    }
    return SweepResult(
        columns, rows, meta, grid_shape=(spec.eta1_range.steps, spec.eta2_range.steps)
    )


def run_compare_smsv(spec: SweepSpec) -> SweepResult:
    """Single-mode vs two-mode comparison along a symmetric-loss sweep."""
    if spec.variable != "eta_symmetric":
        raise ValueError("the comparison sweep runs over eta_symmetric only")
    columns = ["eta", "du_tmsv", "du_smsv", "du_sql", "ratio"]
    rows = []
    for value in spec.range.values():
        eta = float(value)
        ch = ChannelPair(eta, eta)
        du_tmsv = sensing.delta_u_tmsv_real(spec.config, ch).delta_u
        du_smsv = sensing.delta_u_smsv_real(spec.config, eta).delta_u
        du_sql = sensing.delta_u_sql(spec.config, ch).delta_u
        rows.append([eta, du_tmsv, du_smsv, du_sql, du_smsv / du_tmsv])
    meta = _echo(spec.config)
    meta["sweep"] = {"variable": spec.variable, **asdict(spec.range)}
    return SweepResult(columns, rows, meta)


def _label_db(r_db: float) -> str:
    return f"du_tmsv_{r_db:g}db"


def preset_fig2(
    config: SensingConfig | None = None,
    r_dbs: tuple = (3.0, 7.0, 11.0, 15.0),
    eta_range: Range = Range(0.01, 1.0, 100),
) -> SweepResult:
    """Offset-vs-transmissivity curves for several squeezing levels plus the baseline."""
    cfg = config or PAPER_SCALE_CONFIG
    columns = ["eta"] + ["du_sql"] + [_label_db(r) for r in r_dbs]
    rows = []
    for value in eta_range.values():
        eta = float(value)
        ch = ChannelPair(eta, eta)
        row = [eta, sensing.delta_u_sql(cfg, ch).delta_u]
        for r_db in r_dbs:
            row.append(sensing.delta_u_tmsv_real(cfg.with_(r_db=r_db), ch).delta_u)
        rows.append(row)
    meta = _echo(cfg)
    meta["preset"] = {"name": "fig2", "r_dbs": list(r_dbs), **asdict(eta_range)}
    return SweepResult(columns, rows, meta)


def preset_fig3(
    config: SensingConfig | None = None,
    eta_range: Range = Range(0.01, 1.0, 100),
) -> SweepResult:
    """Advantage surface over asymmetric (eta1, eta2) at fixed 5 dB squeezing."""
    cfg = config or PAPER_SCALE_CONFIG
    result = run_grid(GridSpec(eta_range, eta_range, cfg, "advantage"))
    result.meta["preset"] = {"name": "fig3", **asdict(eta_range)}
    return result


def preset_fig4(
    config: SensingConfig | None = None,
    eta_range: Range = Range(0.01, 1.0, 100),
) -> SweepResult:
    """Single-mode vs two-mode offset curves over symmetric loss at 5 dB."""
    cfg = config or PAPER_SCALE_CONFIG
    result = run_compare_smsv(SweepSpec("eta_symmetric", eta_range, cfg))
    result.meta["preset"] = {"name": "fig4", **asdict(eta_range)}
    return result

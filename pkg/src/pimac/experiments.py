"""Sweep harness, power-control regime detection, Monte-Carlo covariance
validation, and CSV output.

The sweep follows the convention ``h12 = h31 = h`` with ``h22`` held
fixed; rows are produced in ascending ``h`` and every computation is
deterministic, so identical configurations yield byte-identical CSV files.
"""

import math
from dataclasses import dataclass

import numpy as np

from .bounds import (
    GaussianJointModel,
    GenieParams,
    MAC_INPUTS,
    P2P_INPUT,
    RX1_OUTPUTS,
    RX2_OUTPUTS,
    build_genie_joint_cov,
    c_sigma_1,
    c_sigma_2,
    gaussian_mutual_info,
)
from .errors import ContractError, DomainError
from .model import PimacParams
from .optimize import OptConfig
from .schemes import (
    pc_tin_sum_rate,
    plain_tdma_sum_rate,
    sd_tin_sum_rate,
    tdma_tin_sum_rate,
)

CURVES = ("sd_tin", "tdma_tin", "pc_tin", "tdma", "ub1", "ub2")

CSV_COLUMNS = ("h", "sd_tin", "tdma_tin", "pc_tin", "tdma", "ub1", "ub2",
               "alpha_opt", "p1_opt", "p2_opt", "p3_opt",
               "rho1", "rho2", "eta1", "eta2", "regime")

FULL_POWER = "FULL_POWER"
USER1_SILENT = "USER1_SILENT"
USER3_SILENT = "USER3_SILENT"
OTHER = "OTHER"

RNG_NAME = "numpy PCG64 (numpy.random.default_rng)"


@dataclass(frozen=True)
class SweepConfig:
    """Gain sweep specification: ``h12 = h31 = h`` over [h_min, h_max]."""

    h_min: float
    h_max: float
    steps: int
    h22: float
    p1: float
    p2: float
    p3: float
    which_curves: tuple = CURVES
    seed: int = 0
    out: str | None = None

    def __post_init__(self):
        if not (math.isfinite(self.h_min) and math.isfinite(self.h_max)):
            raise DomainError("h_min and h_max must be finite")
        if self.h_min > self.h_max:
            raise DomainError(f"h_min={self.h_min!r} exceeds h_max={self.h_max!r}")
        if self.steps < 1:
            raise DomainError(f"steps must be >= 1, got {self.steps!r}")
        unknown = set(self.which_curves) - set(CURVES)
        if unknown:
            raise DomainError(f"unknown curves: {sorted(unknown)!r}")
        if self.seed < 0:
            raise DomainError("seed must be a nonnegative integer")


@dataclass(frozen=True)
class SweepRow:
    """One sweep point: rates in bits/channel use plus optimizer arguments."""

    h: float
    sd_tin: float | None = None
    tdma_tin: float | None = None
    pc_tin: float | None = None
    tdma: float | None = None
    ub1: float | None = None
    ub2: float | None = None
    alpha_opt: float | None = None
    p_opt: tuple | None = None
    genie_opt: tuple | None = None
    regime: str | None = None


def classify_power_point(p_opt, budgets, power_tol: float = 1e-3) -> str:
    """Label an allocation as one of the corner regimes or OTHER.

    A coordinate counts as zero (resp. full) when it is within
    ``power_tol * budget`` of 0 (resp. of the budget).
    """
    near_zero = []
    near_full = []
    for p, b in zip(p_opt, budgets):
        tol = power_tol * b
        near_zero.append(p <= tol)
        near_full.append(p >= b - tol)
    if all(near_full):
        return FULL_POWER
    if near_zero[0] and near_full[1] and near_full[2]:
        return USER1_SILENT
    if near_full[0] and near_full[1] and near_zero[2]:
        return USER3_SILENT
    return OTHER


def run_sweep(cfg: SweepConfig,
              genie_opt_cfg: OptConfig | None = None) -> list[SweepRow]:
    """Evaluate the requested curves at ``cfg.steps`` equally spaced gains.

    The closed-form upper bound column is marked unavailable on rows where
    ``h^2 > 1``; everything else is defined for all gains.
    """
    hs = np.linspace(cfg.h_min, cfg.h_max, cfg.steps)
    budgets = (cfg.p1, cfg.p2, cfg.p3)
    rows = []
    want = set(cfg.which_curves)
    for h in hs:
        h = float(h)
        params = PimacParams(h12=h, h22=cfg.h22, h31=h,
                             p1_max=cfg.p1, p2_max=cfg.p2, p3_max=cfg.p3)
        values: dict = {}
        if "sd_tin" in want:
            values["sd_tin"] = sd_tin_sum_rate(params).sum_rate
        if "tdma_tin" in want:
            res = tdma_tin_sum_rate(params)
            values["tdma_tin"] = res.sum_rate
            values["alpha_opt"] = res.arg.alpha
        if "pc_tin" in want:
            res = pc_tin_sum_rate(params)
            values["pc_tin"] = res.sum_rate
            values["p_opt"] = res.arg.as_tuple()
            values["regime"] = classify_power_point(values["p_opt"], budgets)
        if "tdma" in want:
            values["tdma"] = plain_tdma_sum_rate(params).sum_rate
        if "ub1" in want:
            res = c_sigma_1(params, genie_opt_cfg)
            values["ub1"] = res.sum_rate
            values["genie_opt"] = res.arg.as_tuple()
        if "ub2" in want and h * h <= 1.0:
            values["ub2"] = c_sigma_2(params)
        rows.append(SweepRow(h=h, **values))
    return rows


def detect_pc_tin_regimes(rows, budgets, power_tol: float = 1e-3):
    """Merge per-row power-control labels into gain intervals.

    Returns ``[((h_start, h_end), label), ...]`` with interval boundaries
    at the midpoints between adjacent rows whose labels differ. Rows must
    be sorted by gain and carry the power-control optimizer argument.
    """
    if not rows:
        return []
    labels = []
    for row in rows:
        if row.p_opt is None:
            raise ContractError(f"row at h={row.h!r} has no power-control argument")
        labels.append(classify_power_point(row.p_opt, budgets, power_tol))

    intervals = []
    start = rows[0].h
    for i in range(1, len(rows)):
        if labels[i] != labels[i - 1]:
            boundary = 0.5 * (rows[i - 1].h + rows[i].h)
            intervals.append(((start, boundary), labels[i - 1]))
            start = boundary
    intervals.append(((start, rows[-1].h), labels[-1]))
    return intervals


@dataclass(frozen=True)
class MiCheckEntry:
    name: str
    analytic: float
    sampled: float
    gap: float


@dataclass(frozen=True)
class CovarianceCheckReport:
    """Analytic vs sampled mutual information at one (params, genie) point."""

    params: PimacParams
    genie: GenieParams
    n_samples: int
    seed: int
    generator: str
    entries: tuple
    max_gap: float
    sample_min_eigenvalue: float


def montecarlo_covariance_check(params: PimacParams, genie: GenieParams,
                                n_samples: int, seed: int) -> CovarianceCheckReport:
    """Validate the joint covariance construction by direct sampling.

    Draws the inputs and correlated noise pairs, forms the sample
    covariance of all seven variables, and compares both mutual
    informations computed from the sample covariance against the analytic
    construction through the same log-det kernel. Deterministic for a
    given seed. Requires genie scalings above 0.05 so the sampled joint
    stays well conditioned.
    """
    if n_samples < 2:
        raise DomainError("n_samples must be >= 2")
    if not (genie.eta1 > 0.05 and genie.eta2 > 0.05):
        raise DomainError("genie scalings must exceed 0.05 for a stable estimate")

    rng = np.random.default_rng(seed)
    g = rng.standard_normal((int(n_samples), 7))
    x1 = math.sqrt(params.p1_max) * g[:, 0]
    x2 = math.sqrt(params.p2_max) * g[:, 1]
    x3 = math.sqrt(params.p3_max) * g[:, 2]
    z1 = g[:, 3]
    w1 = genie.rho1 * g[:, 3] + math.sqrt(1.0 - genie.rho1 ** 2) * g[:, 4]
    z2 = g[:, 5]
    w2 = genie.rho2 * g[:, 5] + math.sqrt(1.0 - genie.rho2 ** 2) * g[:, 6]

    y1 = x1 + x2 + params.h31 * x3 + z1
    s1 = params.h12 * x1 + params.h22 * x2 + genie.eta1 * w1
    y2 = params.h12 * x1 + params.h22 * x2 + x3 + z2
    s2 = params.h31 * x3 + genie.eta2 * w2

    data = np.stack([x1, x2, x3, y1, s1, y2, s2], axis=1)
    cov = np.cov(data, rowvar=False)
    cov = 0.5 * (cov + cov.T)
    sampled_model = GaussianJointModel(cov=cov)
    analytic_model = build_genie_joint_cov(params, genie)

    entries = []
    for name, ga, gb in (("mac_rx1", MAC_INPUTS, RX1_OUTPUTS),
                         ("p2p_rx2", P2P_INPUT, RX2_OUTPUTS)):
        analytic = gaussian_mutual_info(analytic_model, ga, gb)
        sampled = gaussian_mutual_info(sampled_model, ga, gb)
        entries.append(MiCheckEntry(name=name, analytic=analytic,
                                    sampled=sampled,
                                    gap=abs(analytic - sampled)))
    return CovarianceCheckReport(
        params=params, genie=genie, n_samples=int(n_samples), seed=int(seed),
        generator=RNG_NAME, entries=tuple(entries),
        max_gap=max(e.gap for e in entries),
        sample_min_eigenvalue=sampled_model.min_eigenvalue(),
    )


def _format_cell(value) -> str:
    if value is None:
        return "NA"
    if isinstance(value, str):
        return value
    return f"{float(value):.9g}"


def _row_cells(row: SweepRow) -> list[str]:
    p = row.p_opt if row.p_opt is not None else (None, None, None)
    g = row.genie_opt if row.genie_opt is not None else (None, None, None, None)
    return [_format_cell(v) for v in
            (row.h, row.sd_tin, row.tdma_tin, row.pc_tin, row.tdma,
             row.ub1, row.ub2, row.alpha_opt, p[0], p[1], p[2],
             g[0], g[1], g[2], g[3], row.regime)]


def render_csv(rows) -> str:
    """CSV text for a list of rows: fixed column order, 9 significant digits."""
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        lines.append(",".join(_row_cells(row)))
    return "\n".join(lines) + "\n"


def emit_csv(rows, path) -> None:
    """Write the sweep CSV; unavailable cells are the literal string NA."""
    text = render_csv(rows)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write sweep CSV to {path!r}: {exc}") from exc

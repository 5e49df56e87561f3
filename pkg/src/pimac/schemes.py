"""Achievable sum-rates: full-power TIN, TDMA-TIN, power-controlled TIN,
and plain TDMA between the MAC and the point-to-point user.

All receivers treat whatever interference they see as extra Gaussian
noise. The MAC receiver additionally decodes its two users successively,
so its sum constraint is the single log term with both powers pooled.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConstraintError, DegenerateInputError, DomainError
from .model import (
    MacRegionBounds,
    PimacParams,
    PowerAllocation,
    SchemeResult,
    TimeShare,
    effective_noise_at_rx1,
    half_log,
)
from .optimize import OptConfig, maximize_box, maximize_scalar

TDMA_TIN_OPT_CFG = OptConfig(grid_points_per_axis=1025, refine_tolerance=1e-6,
                             max_refine_iters=100)
PC_TIN_OPT_CFG = OptConfig(grid_points_per_axis=101, refine_tolerance=1e-6,
                           max_refine_iters=60)


@dataclass(frozen=True)
class TdmaTinDecomposition:
    """Time-sharing sum-rate split: MAC part and point-to-point part.

    Both parts are defined on the whole closed interval of shares; at the
    endpoints the vanishing-weight terms take their (zero) limits.
    """

    a_of_alpha: float
    b_of_alpha: float

    @property
    def total(self) -> float:
        return self.a_of_alpha + self.b_of_alpha


def _mac_slot(weight: float, power: float, noise: float) -> float:
    # weight * half_log((power/weight)/noise); continuous limit 0 at weight=0.
    if weight == 0.0:
        return 0.0
    return 0.5 * weight * math.log2(1.0 + power / (weight * noise))


def _p2p_slot(weight: float, p3: float, interference: float) -> float:
    # weight * half_log(p3 / (1 + interference/weight)); limit 0 at weight=0.
    if weight == 0.0:
        return 0.0
    return 0.5 * weight * math.log2(1.0 + p3 / (1.0 + interference / weight))


def sd_tin_region(params: PimacParams) -> MacRegionBounds:
    """Rate bounds when all users transmit at full power.

    The MAC receiver sees noise ``1 + h31^2 P3``; the point-to-point
    receiver sees noise ``1 + h12^2 P1 + h22^2 P2``.
    """
    noise = effective_noise_at_rx1(params, params.p3_max)
    r1 = half_log(params.p1_max / noise)
    r2 = half_log(params.p2_max / noise)
    r12 = half_log((params.p1_max + params.p2_max) / noise)
    p2p_noise = (1.0 + params.h12 * params.h12 * params.p1_max
                 + params.h22 * params.h22 * params.p2_max)
    r3 = half_log(params.p3_max / p2p_noise)
    return MacRegionBounds(r1=r1, r2=r2, r12=r12, r3=r3)


def sd_tin_sum_rate(params: PimacParams) -> SchemeResult:
    """Full-power TIN sum-rate: the pooled MAC constraint plus the P2P rate."""
    region = sd_tin_region(params)
    return SchemeResult(sum_rate=region.r12 + region.r3, arg=None,
                        diagnostics={"evaluations": 1, "status": "closed-form"})


def tdma_tin_components(params: PimacParams, share: TimeShare) -> TdmaTinDecomposition:
    """MAC and point-to-point contributions at a given time share.

    User 1 gets fraction ``alpha`` with power boosted to ``P1/alpha``;
    user 2 gets the rest. The point-to-point user transmits throughout and
    faces one boosted interferer per slot.
    """
    alpha = share.alpha
    noise = effective_noise_at_rx1(params, params.p3_max)
    c1 = params.h12 * params.h12 * params.p1_max
    c2 = params.h22 * params.h22 * params.p2_max
    a_val = (_mac_slot(alpha, params.p1_max, noise)
             + _mac_slot(1.0 - alpha, params.p2_max, noise))
    b_val = (_p2p_slot(alpha, params.p3_max, c1)
             + _p2p_slot(1.0 - alpha, params.p3_max, c2))
    return TdmaTinDecomposition(a_of_alpha=a_val, b_of_alpha=b_val)


def _tdma_objective_vec(params: PimacParams):
    """Vectorized twin of A(alpha)+B(alpha) for the optimizer's grid phase."""
    noise = effective_noise_at_rx1(params, params.p3_max)
    p1, p2, p3 = params.p1_max, params.p2_max, params.p3_max
    c1 = params.h12 * params.h12 * p1
    c2 = params.h22 * params.h22 * p2

    def obj(alphas):
        a = np.asarray(alphas, dtype=float)
        b = 1.0 - a
        sa = np.where(a > 0.0, a, 1.0)
        sb = np.where(b > 0.0, b, 1.0)
        term = np.where(a > 0.0, 0.5 * a * np.log2(1.0 + p1 / (sa * noise)), 0.0)
        term = term + np.where(b > 0.0, 0.5 * b * np.log2(1.0 + p2 / (sb * noise)), 0.0)
        term = term + np.where(a > 0.0, 0.5 * a * np.log2(1.0 + p3 / (1.0 + c1 / sa)), 0.0)
        term = term + np.where(b > 0.0, 0.5 * b * np.log2(1.0 + p3 / (1.0 + c2 / sb)), 0.0)
        return term

    return obj


def alpha_star(params: PimacParams) -> TimeShare:
    """Share that maximizes the MAC part: ``P1 / (P1 + P2)``."""
    total = params.p1_max + params.p2_max
    if total <= 0.0:
        raise DegenerateInputError(
            "both MAC power budgets are zero; any share is optimal")
    return TimeShare(params.p1_max / total)


def alpha_prime(params: PimacParams) -> TimeShare:
    """Share that minimizes the point-to-point part.

    Equals ``h12^2 P1 / (h12^2 P1 + h22^2 P2)``; the P2P part is convex in
    the share and flat exactly when both interference products vanish.
    """
    c1 = params.h12 * params.h12 * params.p1_max
    c2 = params.h22 * params.h22 * params.p2_max
    if c1 + c2 <= 0.0:
        raise DegenerateInputError(
            "no interference into the point-to-point receiver; "
            "its rate does not depend on the share")
    return TimeShare(c1 / (c1 + c2))


def tdma_tin_sum_rate(params: PimacParams,
                      opt_cfg: OptConfig | None = None) -> SchemeResult:
    """Best TDMA-TIN sum-rate over the time share.

    The candidate set always contains both endpoints and, when defined, the
    MAC-optimal and P2P-optimal shares, so the result is never below the
    full-power TIN sum-rate.
    """
    cfg = opt_cfg if opt_cfg is not None else TDMA_TIN_OPT_CFG
    seeds = [0.0, 1.0]
    try:
        seeds.append(alpha_star(params).alpha)
    except DegenerateInputError:
        pass
    try:
        seeds.append(alpha_prime(params).alpha)
    except DegenerateInputError:
        pass
    cfg = replace(cfg, seeds=tuple(seeds) + tuple(cfg.seeds))

    def obj(a: float) -> float:
        return tdma_tin_components(params, TimeShare(a)).total

    res = maximize_scalar(obj, 0.0, 1.0, cfg, f_vec=_tdma_objective_vec(params))
    return SchemeResult(sum_rate=res.value, arg=TimeShare(res.arg),
                        diagnostics=res.diagnostics())


def pc_tin_objective(params: PimacParams, alloc: PowerAllocation) -> float:
    """Sum-rate of full-power TIN evaluated at an arbitrary allocation."""
    budgets = (params.p1_max, params.p2_max, params.p3_max)
    for value, budget, name in zip(alloc.as_tuple(), budgets, ("p1", "p2", "p3")):
        if value > budget:
            raise ConstraintError(f"{name}={value!r} exceeds its budget {budget!r}")
    mac = half_log((alloc.p1 + alloc.p2) / (1.0 + params.h31 * params.h31 * alloc.p3))
    p2p = half_log(alloc.p3 / (1.0 + params.h12 * params.h12 * alloc.p1
                               + params.h22 * params.h22 * alloc.p2))
    return mac + p2p


def _pc_objective_vec(params: PimacParams):
    g31 = params.h31 * params.h31
    g12 = params.h12 * params.h12
    g22 = params.h22 * params.h22

    def obj(pts):
        p = np.asarray(pts, dtype=float)
        p1, p2, p3 = p[:, 0], p[:, 1], p[:, 2]
        mac = 0.5 * np.log2(1.0 + (p1 + p2) / (1.0 + g31 * p3))
        p2p = 0.5 * np.log2(1.0 + p3 / (1.0 + g12 * p1 + g22 * p2))
        return mac + p2p

    return obj


def pc_tin_sum_rate(params: PimacParams,
                    opt_cfg: OptConfig | None = None) -> SchemeResult:
    """Best TIN sum-rate over transmit powers within the budgets.

    All corners of the budget box are mandatory candidates, so shutting off
    transmitter 1 or 3 entirely is always representable and the result
    dominates both full-power TIN and plain TDMA.
    """
    cfg = opt_cfg if opt_cfg is not None else PC_TIN_OPT_CFG
    budgets = (params.p1_max, params.p2_max, params.p3_max)

    def obj(p):
        return pc_tin_objective(params, PowerAllocation(*p))

    res = maximize_box(obj, budgets, cfg, f_vec=_pc_objective_vec(params))
    return SchemeResult(sum_rate=res.value, arg=PowerAllocation(*res.arg),
                        diagnostics=res.diagnostics())


def plain_tdma_sum_rate(params: PimacParams) -> SchemeResult:
    """TDMA between the MAC pair and the point-to-point user.

    The optimal share is ``(P1+P2) / (P1+P2+P3)`` in closed form, where the
    achieved sum-rate collapses to ``half_log(P1+P2+P3)``.
    """
    mac_power = params.p1_max + params.p2_max
    total = mac_power + params.p3_max
    if total <= 0.0:
        raise DegenerateInputError("all power budgets are zero")
    alpha = mac_power / total
    value = (_mac_slot(alpha, mac_power, 1.0)
             + _mac_slot(1.0 - alpha, params.p3_max, 1.0))
    return SchemeResult(sum_rate=value, arg=TimeShare(alpha),
                        diagnostics={"evaluations": 1, "status": "closed-form"})

"""Achievable-rate evaluators for the fixed-gain (no fading) channel.

The model: a source talks to a destination directly and through a relay over
orthogonal bands, while an interferer (power ``p_i``, codebook rate ``r_i``)
known non-causally at the source corrupts the destination's channel. Noise is
unit variance everywhere, so powers are SNRs and rates are bits/channel use.

Each scheme evaluator maximizes a min-of-branches rate expression over the
scheme's power-split variables using :func:`relaymit.optimize.maximize` and
returns a :class:`relaymit.core.RateResult` whose ``branch_values`` reproduce
the rate at the argmax.

Scheme identifiers:

* ``nr``   no relay; dirty-paper coding on the direct link only;
* ``ni``   no interference; partial decode-forward upper bound (``du`` at r_i=0);
* ``du``   decoded interference sharing, unstructured (DPC) destination;
* ``cu``   compressed interference sharing, unstructured destination;
* ``cs1``  compressed sharing, structured destination, analog forwarding;
* ``cs2``  compressed sharing, structured destination, re-encoded index;
* ``aid``  analog input description of a DPC-precoded relay signal;
* ``nldf`` nested-lattice decode-forward baseline for the multihop topology.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .core import (
    ChannelGains,
    DomainError,
    PowerBudget,
    RateResult,
    SplitPowerBudget,
    cap_fn,
    pos_part,
)
from .optimize import Dim, OptimizerConfig, ParamSpace, SchemeParams, maximize

__all__ = [
    "AWGN_OPT_CFG",
    "DerivedQuantities",
    "derived_quantities",
    "rate_nr",
    "rate_ni",
    "rate_du",
    "rate_cu",
    "rate_cs1",
    "rate_cs2",
    "rate_aid",
    "rate_nldf",
    "c_srd_prime",
    "capacity_special",
    "scheme_program",
]

_LN2 = math.log(2.0)

#: default optimizer settings for the deterministic evaluators; the tight
#: refine tolerance keeps every scheme within 1e-9 of its no-interference
#: bound wherever the two coincide analytically.
AWGN_OPT_CFG = OptimizerConfig(
    grid_resolution=0.05,
    refine_iterations=300,
    refine_tolerance=1e-10,
    multistart_count=12,
    max_grid_points=1_500_000,
    polish=True,
)


def _c(x: np.ndarray) -> np.ndarray:
    """Vectorized C(x) = log2(1+x) with tiny-negative clamping."""
    return np.log1p(np.maximum(x, 0.0)) / _LN2


def _pos(x: np.ndarray) -> np.ndarray:
    return np.maximum(x, 0.0)


@dataclass(frozen=True)
class DerivedQuantities:
    """Intermediate powers of a structured-scheme evaluation at one point.

    ``p_wprime``/``p_wdprime``: effective SNRs of the relay-decoded and the
    direct part of the message; ``p_wi``: effective SNR of the interference
    component seen by the destination; ``p_u``: SNR of the compression-index
    codeword; ``d``: interference quantization distortion; ``xi``: residual
    interference amplitude after analog cancellation; ``n_eq``: equivalent
    noise power normalizing the branch SNRs; ``x``: side-information fraction
    used by the binned compression.
    """

    p_wprime: float = 0.0
    p_wdprime: float = 0.0
    p_wi: float = 0.0
    p_u: float = 0.0
    d: float = 0.0
    xi: float = 0.0
    n_eq: float = 1.0
    x: float = 0.0

    def __post_init__(self) -> None:
        if self.n_eq < 1.0:
            raise DomainError(f"n_eq must be >= 1, got {self.n_eq}")
        if not (0.0 <= self.x < 1.0):
            raise DomainError(f"x must be in [0, 1), got {self.x}")


# ----------------------------------------------------------------------
# scheme programs: (space, vectorized objective, labelled branch function)
# ----------------------------------------------------------------------

Branches = tuple[tuple[str, float], ...]
Program = tuple[ParamSpace, Callable[[np.ndarray], np.ndarray], Callable[[np.ndarray], Branches]]


def _du_program(g: ChannelGains, b: PowerBudget) -> Program:
    a_sr2, a_sd, a_rd = g.a_sr**2, g.a_sd, g.a_rd
    p_s, p_r, r_i = b.p_s, b.p_r, b.r_i
    rt_pr = math.sqrt(p_r)

    def parts(v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        gam, rp, rpp = v[:, 0], v[:, 1], v[:, 2]
        rt_gps = np.sqrt(gam * p_s)
        p_wp = (a_rd * rt_pr + a_sd * rp * rt_gps) ** 2
        p_wpp = a_sd**2 * rpp**2 * gam * p_s
        csr = _c(a_sr2 * (1.0 - gam) * p_s)
        return _c(p_wpp) + _pos(csr - r_i), _c(p_wpp + p_wp)

    def objective(v: np.ndarray) -> np.ndarray:
        b1, b2 = parts(v)
        return np.minimum(b1, b2)

    def branches(x: np.ndarray) -> Branches:
        b1, b2 = parts(x[None, :])
        return (("relay_path", float(b1[0])), ("direct_path", float(b2[0])))

    space = ParamSpace(
        dims=(Dim("gamma", 0.0, 1.0), Dim("rho_wp", 0.0, 1.0), Dim("rho_wpp", 0.0, 1.0)),
        quadratic_groups=((1, 2),),
    )
    return space, objective, branches


def _cu_program(g: ChannelGains, b: PowerBudget) -> Program:
    # note: the interferer's rate never enters this scheme; the destination
    # neither decodes nor partially decodes the interference codeword here
    a_sr2, a_sd, a_rd, a_i = g.a_sr**2, g.a_sd, g.a_rd, g.a_i
    p_s, p_r, p_i = b.p_s, b.p_r, b.p_i
    rt_pr = math.sqrt(p_r)
    rq_hi = cap_fn(a_sr2 * p_s)

    def parts(v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        gam, rq, rp, rpp, rwi = (v[:, j] for j in range(5))
        rt_gps = np.sqrt(gam * p_s)
        csr = _c(a_sr2 * (1.0 - gam) * p_s)
        p_wpp = a_sd**2 * rpp**2 * gam * p_s
        if p_i > 0.0:
            d = p_i * np.exp2(-rq)
            xi = a_i - a_sd * rwi * np.sqrt(gam * p_s / p_i)
            denom = 1.0 + xi**2 * d + p_wpp
        else:
            denom = 1.0 + p_wpp
        p_wp = (a_rd * rt_pr + a_sd * rp * rt_gps) ** 2 / denom
        b_relay = _pos(csr - rq) + _c(p_wpp)
        b_direct = _c(p_wp) + _c(p_wpp)
        # guard against probes outside the coupled constraint
        ok = rq <= csr + 1e-12
        return np.where(ok, b_relay, -np.inf), np.where(ok, b_direct, -np.inf)

    def objective(v: np.ndarray) -> np.ndarray:
        b1, b2 = parts(v)
        return np.minimum(b1, b2)

    def branches(x: np.ndarray) -> Branches:
        b1, b2 = parts(x[None, :])
        return (("relay_path", float(b1[0])), ("direct_path", float(b2[0])))

    def rq_le_csr(v: np.ndarray) -> np.ndarray:
        return v[:, 1] <= _c(a_sr2 * (1.0 - v[:, 0]) * p_s) + 1e-12

    space = ParamSpace(
        dims=(
            Dim("gamma", 0.0, 1.0),
            Dim("r_q", 0.0, rq_hi),
            Dim("rho_wp", 0.0, 1.0),
            Dim("rho_wpp", 0.0, 1.0),
            Dim("rho_wi", 0.0, 1.0),
        ),
        quadratic_groups=((2, 3, 4),),
        coupled_constraints=(("rq_le_csr", rq_le_csr),),
    )
    return space, objective, branches


def _cs1_program(g: ChannelGains, b: PowerBudget) -> Program:
    a_sr2, a_sd, a_rd, a_i = g.a_sr**2, g.a_sd, g.a_rd, g.a_i
    p_s, p_r, p_i, r_i = b.p_s, b.p_r, b.p_i, b.r_i
    rt_pr, rt_pi = math.sqrt(p_r), math.sqrt(p_i)
    rq_hi = cap_fn(a_sr2 * p_s)

    def parts(v: np.ndarray) -> tuple[np.ndarray, ...]:
        gam, rq, rp, rpp, rwi, rbwp, rbwi = (v[:, j] for j in range(7))
        rt_gps = np.sqrt(gam * p_s)
        csr = _c(a_sr2 * (1.0 - gam) * p_s)
        t = np.exp2(-rq)
        n_eq = a_rd**2 * rbwi**2 * p_r * t + 1.0
        p_wp = (a_rd * rbwp * rt_pr + a_sd * rp * rt_gps) ** 2 / n_eq
        p_wpp = a_sd**2 * rpp**2 * gam * p_s / n_eq
        p_wi = (a_sd * rwi * rt_gps + a_rd * rbwi * np.sqrt(p_r * (1.0 - t)) + a_i * rt_pi) ** 2 / n_eq
        sr_rem = _pos(csr - rq)
        b1 = _c(p_wpp) + sr_rem
        b2 = _pos(_c(p_wpp + p_wi) - r_i) + sr_rem
        b3 = _c(p_wpp + p_wp)
        b4 = _pos(_c(p_wpp + p_wp + p_wi) - r_i)
        ok = rq <= csr + 1e-12
        bad = ~ok
        out = []
        for arr in (b1, b2, b3, b4):
            arr = np.where(bad, -np.inf, arr)
            out.append(arr)
        return tuple(out)

    def objective(v: np.ndarray) -> np.ndarray:
        b1, b2, b3, b4 = parts(v)
        return np.minimum(np.minimum(b1, b2), np.minimum(b3, b4))

    def branches(x: np.ndarray) -> Branches:
        b1, b2, b3, b4 = parts(x[None, :])
        return (
            ("w2_relay", float(b1[0])),
            ("w2_int_relay", float(b2[0])),
            ("w1_w2_direct", float(b3[0])),
            ("w1_w2_int_direct", float(b4[0])),
        )

    def rq_le_csr(v: np.ndarray) -> np.ndarray:
        return v[:, 1] <= _c(a_sr2 * (1.0 - v[:, 0]) * p_s) + 1e-12

    space = ParamSpace(
        dims=(
            Dim("gamma", 0.0, 1.0),
            Dim("r_q", 0.0, rq_hi),
            Dim("rho_wp", 0.0, 1.0),
            Dim("rho_wpp", 0.0, 1.0),
            Dim("rho_wi", 0.0, 1.0),
            Dim("rho_bar_wp", 0.0, 1.0),
            Dim("rho_bar_wi", 0.0, 1.0),
        ),
        quadratic_groups=((2, 3, 4), (5, 6)),
        coupled_constraints=(("rq_le_csr", rq_le_csr),),
    )
    return space, objective, branches


def _cs2_program(g: ChannelGains, b: PowerBudget) -> Program:
    a_sr2, a_sd, a_rd, a_i = g.a_sr**2, g.a_sd, g.a_rd, g.a_i
    p_s, p_r, p_i, r_i = b.p_s, b.p_r, b.p_i, b.r_i
    rt_pr, rt_pi = math.sqrt(p_r), math.sqrt(p_i)
    rq_hi = cap_fn(a_sr2 * p_s)

    def raw(v: np.ndarray) -> tuple[np.ndarray, ...]:
        gam, rq, rp, rpp, rwi, ru, rbwp, rbu = (v[:, j] for j in range(8))
        rt_gps = np.sqrt(gam * p_s)
        csr = _c(a_sr2 * (1.0 - gam) * p_s)
        p_wp = (a_rd * rbwp * rt_pr + a_sd * rp * rt_gps) ** 2
        p_wpp = a_sd**2 * rpp**2 * gam * p_s
        p_wi = (a_sd * rwi * rt_gps + a_i * rt_pi) ** 2
        p_u = (a_sd * ru * rt_gps + a_rd * rbu * rt_pr) ** 2
        sig = p_wp + p_wpp + p_wi + 1.0
        x = p_wi / sig
        theta = (np.exp2(rq) - x) / (1.0 - x)
        sr_rem = _pos(csr - rq)
        b1 = _c(p_wpp) + sr_rem
        b2 = _pos(np.log2((1.0 + p_wpp) * theta + p_wi) - r_i) + sr_rem
        b3 = _c(p_wpp + p_wp)
        b4 = _pos(np.log2((1.0 + p_wpp + p_wp) * theta + p_wi) - r_i)
        ok = (rq <= csr + 1e-12) & (rq <= _c(p_u / sig) + 1e-12)
        return b1, b2, b3, b4, ok

    def objective(v: np.ndarray) -> np.ndarray:
        b1, b2, b3, b4, ok = raw(v)
        val = np.minimum(np.minimum(b1, b2), np.minimum(b3, b4))
        return np.where(ok, val, -np.inf)

    def branches(x: np.ndarray) -> Branches:
        b1, b2, b3, b4, _ok = raw(x[None, :])
        return (
            ("w2_relay", float(b1[0])),
            ("w2_int_relay", float(b2[0])),
            ("w1_w2_direct", float(b3[0])),
            ("w1_w2_int_direct", float(b4[0])),
        )

    def rq_le_csr(v: np.ndarray) -> np.ndarray:
        return v[:, 1] <= _c(a_sr2 * (1.0 - v[:, 0]) * p_s) + 1e-12

    def rq_le_index_rate(v: np.ndarray) -> np.ndarray:
        gam, rq, rp, rpp, rwi, ru, rbwp, rbu = (v[:, j] for j in range(8))
        rt_gps = np.sqrt(gam * p_s)
        p_wp = (a_rd * rbwp * rt_pr + a_sd * rp * rt_gps) ** 2
        p_wpp = a_sd**2 * rpp**2 * gam * p_s
        p_wi = (a_sd * rwi * rt_gps + a_i * rt_pi) ** 2
        p_u = (a_sd * ru * rt_gps + a_rd * rbu * rt_pr) ** 2
        sig = p_wp + p_wpp + p_wi + 1.0
        return rq <= _c(p_u / sig) + 1e-12

    space = ParamSpace(
        dims=(
            Dim("gamma", 0.0, 1.0),
            Dim("r_q", 0.0, rq_hi),
            Dim("rho_wp", 0.0, 1.0),
            Dim("rho_wpp", 0.0, 1.0),
            Dim("rho_wi", 0.0, 1.0),
            Dim("rho_u", 0.0, 1.0),
            Dim("rho_bar_wp", 0.0, 1.0),
            Dim("rho_bar_u", 0.0, 1.0),
        ),
        quadratic_groups=((2, 3, 4, 5), (6, 7)),
        coupled_constraints=(
            ("rq_le_csr", rq_le_csr),
            ("rq_le_index_rate", rq_le_index_rate),
        ),
    )
    return space, objective, branches


def _aid_program(g: ChannelGains, b: PowerBudget) -> Program:
    a_sr2, a_sd, a_rd = g.a_sr**2, g.a_sd, g.a_rd
    p_s, p_r = b.p_s, b.p_r

    def value(v: np.ndarray) -> np.ndarray:
        gam = v[:, 0]
        d = p_r / (a_sr2 * (1.0 - gam) * p_s + 1.0)
        num = (a_sd * np.sqrt(gam * p_s) + a_rd * np.sqrt(np.maximum(p_r - d, 0.0))) ** 2
        return _c(num / (1.0 + a_rd**2 * d))

    def branches(x: np.ndarray) -> Branches:
        return (("combined", float(value(x[None, :])[0])),)

    space = ParamSpace(dims=(Dim("gamma", 0.0, 1.0),))
    return space, value, branches


_PROGRAMS: dict[str, Callable[[ChannelGains, PowerBudget], Program]] = {
    "du": _du_program,
    "cu": _cu_program,
    "cs1": _cs1_program,
    "cs2": _cs2_program,
    "aid": _aid_program,
}


def scheme_program(scheme: str, gains: ChannelGains, budget: PowerBudget) -> Program:
    """Expose a scheme's (space, objective, branches) triple, e.g. for audits."""
    if scheme == "ni":
        return _du_program(gains, replace(budget, r_i=0.0))
    try:
        return _PROGRAMS[scheme](gains, budget)
    except KeyError:
        raise DomainError(f"no optimization program for scheme {scheme!r}") from None


def _to_params(scheme: str, x: np.ndarray) -> SchemeParams:
    if scheme in ("du", "ni"):
        return SchemeParams(gamma=float(x[0]), rho=(float(x[1]), float(x[2])))
    if scheme == "cu":
        return SchemeParams(gamma=float(x[0]), r_q=float(x[1]), rho=tuple(float(t) for t in x[2:5]))
    if scheme == "cs1":
        return SchemeParams(
            gamma=float(x[0]),
            r_q=float(x[1]),
            rho=tuple(float(t) for t in x[2:5]),
            rho_bar=(float(x[5]), float(x[6])),
        )
    if scheme == "cs2":
        return SchemeParams(
            gamma=float(x[0]),
            r_q=float(x[1]),
            rho=tuple(float(t) for t in x[2:6]),
            rho_bar=(float(x[6]), float(x[7])),
        )
    if scheme == "aid":
        return SchemeParams(gamma=float(x[0]))
    raise DomainError(f"unknown scheme {scheme!r}")


def _run_scheme(
    scheme: str,
    gains: ChannelGains,
    budget: PowerBudget,
    cfg: OptimizerConfig | None,
) -> RateResult:
    space, objective, branches = scheme_program(scheme, gains, budget)
    cfg = AWGN_OPT_CFG if cfg is None else cfg
    _value, arg = maximize(objective, space, cfg)
    bvals = branches(arg)
    rate = max(0.0, min(v for _, v in bvals))
    return RateResult(rate=rate, scheme=scheme, params=_to_params(scheme, arg), branch_values=bvals)


# ----------------------------------------------------------------------
# public evaluators
# ----------------------------------------------------------------------


def rate_nr(gains: ChannelGains, budget: PowerBudget) -> RateResult:
    """No-relay baseline: dirty-paper coding over the direct link alone."""
    r = cap_fn(gains.a_sd**2 * budget.p_s)
    return RateResult(rate=r, scheme="nr", params=None, branch_values=(("direct", r),))


def rate_ni(
    gains: ChannelGains, budget: PowerBudget, cfg: OptimizerConfig | None = None
) -> RateResult:
    """No-interference upper bound: partial decode-forward with r_i forced to 0."""
    res = _run_scheme("ni", gains, replace(budget, r_i=0.0), cfg)
    return res


def rate_du(
    gains: ChannelGains, budget: PowerBudget, cfg: OptimizerConfig | None = None
) -> RateResult:
    """Decoded interference sharing with an unstructured (DPC) destination.

    The relay decodes the interference codeword alongside its message share,
    then source and relay jointly dirty-paper precode toward the destination,
    which therefore sees an interference-free channel.
    """
    return _run_scheme("du", gains, budget, cfg)


def rate_cu(
    gains: ChannelGains, budget: PowerBudget, cfg: OptimizerConfig | None = None
) -> RateResult:
    """Compressed interference sharing with an unstructured destination.

    The source spends ``r_q`` bits/use of the source-relay link on a quantized
    interference description (distortion ``p_i * 2**-r_q``); the source's own
    analog cancellation component shrinks the residual seen by the relay-path
    stream, while the direct stream is precoded clean.
    """
    return _run_scheme("cu", gains, budget, cfg)


def rate_cs1(
    gains: ChannelGains, budget: PowerBudget, cfg: OptimizerConfig | None = None
) -> RateResult:
    """Compressed sharing, structured destination, analog index forwarding.

    The relay forwards an analog version of the quantized interference so the
    destination can decode the interferer's codeword; the quantization noise
    raises the equivalent noise floor ``n_eq``.
    """
    return _run_scheme("cs1", gains, budget, cfg)


def rate_cs2(
    gains: ChannelGains, budget: PowerBudget, cfg: OptimizerConfig | None = None
) -> RateResult:
    """Compressed sharing, structured destination, re-encoded index.

    The relay re-encodes the compression index digitally; the destination
    first recovers it (rate limited by the index stream's SNR), then uses the
    reconstruction as side information while jointly decoding message and
    interference. Binning shrinks the effective distortion by the
    side-information fraction ``x``.
    """
    return _run_scheme("cs2", gains, budget, cfg)


def rate_aid(
    gains: ChannelGains, budget: PowerBudget, cfg: OptimizerConfig | None = None
) -> RateResult:
    """Analog input description: the source precomputes the relay's DPC signal,
    quantizes it through the source-relay link, and the relay replays it."""
    return _run_scheme("aid", gains, budget, cfg)


def rate_nldf(gains: ChannelGains, budget: PowerBudget) -> RateResult:
    """Nested-lattice decode-forward baseline (multihop); independent of r_i."""
    a, bb = gains.a_sr**2, gains.a_rd**2
    p_s, p_r = budget.p_s, budget.p_r
    raw = math.log2((a * bb * p_s * p_r + a * p_s + bb * p_r + 1.0) / (a * p_s + bb * p_r + 2.0))
    return RateResult(
        rate=max(0.0, raw), scheme="nldf", params=None, branch_values=(("cascade", raw),)
    )


def c_srd_prime(gains: ChannelGains, budget: PowerBudget) -> tuple[float, str]:
    """Best relay-to-destination rate with an interference-unaware relay.

    Returns ``(value, winning_arm)`` where the arms are ``treat_as_noise``
    (interference buried in the noise floor) and ``joint_decode`` (destination
    decodes the interference codeword alongside the relay's stream). Ties go
    to ``treat_as_noise``.
    """
    snr_rd = gains.a_rd**2 * budget.p_r
    int_pow = gains.a_i**2 * budget.p_i
    arm_noise = cap_fn(snr_rd / (1.0 + int_pow))
    arm_joint = min(cap_fn(snr_rd), pos_part(cap_fn(snr_rd + int_pow) - budget.r_i))
    if arm_noise >= arm_joint:
        return arm_noise, "treat_as_noise"
    return arm_joint, "joint_decode"


def capacity_special(gains: ChannelGains, budget: SplitPowerBudget) -> tuple[float | None, str]:
    """Capacity of the parallel direct + multihop model when a regime applies.

    The direct band and the relay-to-destination band are mutually orthogonal
    and only the latter suffers interference. Returns ``(capacity, regime)``:

    * ``relay_limited``: the source-relay link is strong enough to carry both
      the interference description and a full relay-band message, so capacity
      is ``C_SD + C_RD``;
    * ``sr_limited``: the source-relay link is the bottleneck even against an
      interference-unaware relay strategy, so capacity is ``C_SD + C_SR``;
    * ``undetermined``: neither condition holds; the value is ``None``.
    """
    c_sr = cap_fn(gains.a_sr**2 * budget.p_sr)
    c_rd = cap_fn(gains.a_rd**2 * budget.p_r)
    c_sd = cap_fn(gains.a_sd**2 * budget.p_sd)
    if c_sr >= budget.r_i + c_rd:
        return c_sd + c_rd, "relay_limited"
    prime, _arm = c_srd_prime(
        gains, PowerBudget(p_s=budget.p_sr, p_r=budget.p_r, p_i=budget.p_i, r_i=budget.r_i)
    )
    if c_sr <= prime:
        return c_sd + c_sr, "sr_limited"
    return None, "undetermined"


def derived_quantities(
    scheme: str, gains: ChannelGains, budget: PowerBudget, params: SchemeParams
) -> DerivedQuantities:
    """Reconstruct the intermediate powers of a scheme evaluation at ``params``."""
    g, b = gains, budget
    gam = params.gamma if params.gamma is not None else 0.0
    rt_gps = math.sqrt(gam * b.p_s)
    if scheme in ("du", "ni"):
        rp, rpp = params.rho
        return DerivedQuantities(
            p_wprime=(g.a_rd * math.sqrt(b.p_r) + g.a_sd * rp * rt_gps) ** 2,
            p_wdprime=g.a_sd**2 * rpp**2 * gam * b.p_s,
        )
    if scheme == "cu":
        rq = params.r_q or 0.0
        rp, rpp, rwi = params.rho
        p_wpp = g.a_sd**2 * rpp**2 * gam * b.p_s
        if b.p_i > 0.0:
            d = b.p_i * 2.0**-rq
            xi = g.a_i - g.a_sd * rwi * math.sqrt(gam * b.p_s / b.p_i)
        else:
            d, xi = 0.0, 0.0
        n_eq = 1.0 + xi**2 * d + p_wpp
        return DerivedQuantities(
            p_wprime=(g.a_rd * math.sqrt(b.p_r) + g.a_sd * rp * rt_gps) ** 2 / n_eq,
            p_wdprime=p_wpp,
            d=d,
            xi=xi,
            n_eq=n_eq,
        )
    if scheme == "cs1":
        rq = params.r_q or 0.0
        rp, rpp, rwi = params.rho
        rbwp, rbwi = params.rho_bar
        t = 2.0**-rq
        n_eq = g.a_rd**2 * rbwi**2 * b.p_r * t + 1.0
        return DerivedQuantities(
            p_wprime=(g.a_rd * rbwp * math.sqrt(b.p_r) + g.a_sd * rp * rt_gps) ** 2 / n_eq,
            p_wdprime=g.a_sd**2 * rpp**2 * gam * b.p_s / n_eq,
            p_wi=(
                g.a_sd * rwi * rt_gps
                + g.a_rd * rbwi * math.sqrt(b.p_r * (1.0 - t))
                + g.a_i * math.sqrt(b.p_i)
            )
            ** 2
            / n_eq,
            d=b.p_i * t,
            n_eq=n_eq,
        )
    if scheme == "cs2":
        rq = params.r_q or 0.0
        rp, rpp, rwi, ru = params.rho
        rbwp, rbu = params.rho_bar
        p_wp = (g.a_rd * rbwp * math.sqrt(b.p_r) + g.a_sd * rp * rt_gps) ** 2
        p_wpp = g.a_sd**2 * rpp**2 * gam * b.p_s
        p_wi = (g.a_sd * rwi * rt_gps + g.a_i * math.sqrt(b.p_i)) ** 2
        p_u = (g.a_sd * ru * rt_gps + g.a_rd * rbu * math.sqrt(b.p_r)) ** 2
        sig = p_wp + p_wpp + p_wi + 1.0
        x = p_wi / sig
        t = 2.0**-rq
        d = b.p_i * t * (1.0 - x) / (1.0 - x * t)
        return DerivedQuantities(
            p_wprime=p_wp, p_wdprime=p_wpp, p_wi=p_wi, p_u=p_u, d=d, x=x
        )
    if scheme == "aid":
        d = b.p_r / (g.a_sr**2 * (1.0 - gam) * b.p_s + 1.0)
        n_eq = 1.0 + g.a_rd**2 * d
        return DerivedQuantities(
            p_wprime=(g.a_sd * rt_gps + g.a_rd * math.sqrt(max(b.p_r - d, 0.0))) ** 2 / n_eq,
            n_eq=n_eq,
        )
    raise DomainError(f"no derived quantities for scheme {scheme!r}")

"""Aggregate distributed-energy-resource model (DER_A).

Ten first-order states:

  S0 filtered voltage        S5 filtered frequency
  S1 filtered power          S6 active-power PI composite
  S2 Q-control integrator    S7 rate-limited power order
  S3 q-axis current command  S8 filtered power order
  S4 voltage-trip multiplier S9 d-axis current command

Sign conventions: S9 and S3 are d/q current commands with the terminal
voltage on the d axis, so P = Vt*S9 and Q = -Vt*S3 (positive reactive
injection corresponds to a negative q-axis current command). The stored
references follow the same orientation: Qref equals minus the initial
reactive output, and pfaref is the angle whose tangent is the commanded
q-axis current ratio, i.e. arctan(-Qgen0/Pgen0).

The voltage deadband treats dbd1 as the lower knee and dbd2 as the upper
knee, the same shape as the frequency deadband; parameter tables declare
dbd1 <= 0 <= dbd2 and the implementation follows those declarations.

Memory (running min/max voltage, band dwell timers, frequency-trip latch)
lives in DerATrackers and is advanced once per accepted integration step
with end-of-step values, never inside integrator stages.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import blocks
from .blocks import DeadbandLimits, SatLimits, NO_LIMIT
from .errors import InfeasibleInit, NonFiniteInput

# Floor applied to the filtered voltage before any division.
VOLTAGE_FLOOR = SatLimits(lo=0.01, hi=NO_LIMIT)

# Slack when testing an accumulated dwell timer against its duration, so a
# dwell of exactly ceil(duration/dt) steps latches despite float summation.
TIMER_EPS = 1e-12


@dataclass(frozen=True)
class DerAParams:
    Trv: float        # voltage transducer time constant (s)
    Tp: float         # power transducer time constant (s)
    Tiq: float        # Q-control time constant (s)
    Vref0: float      # voltage reference set-point (pu)
    Kqv: float        # proportional voltage-support gain (pu/pu)
    Tg: float         # current-control time constant (s)
    PfFlag: int       # 0 constant-Q control, 1 constant power factor control
    Imax: float       # maximum converter current (pu)
    dbd1: float       # lower voltage deadband knee <= 0 (pu)
    dbd2: float       # upper voltage deadband knee >= 0 (pu)
    Tv: float         # voltage-trip multiplier time constant (s)
    Vl0: float        # low-voltage cut-out: zero-output break-point (pu)
    Vl1: float        # low-voltage cut-out: full-output break-point (pu)
    Vh0: float        # high-voltage cut-out: zero-output break-point (pu)
    Vh1: float        # high-voltage cut-out: full-output break-point (pu)
    tvl0: float       # dwell timer for the Vl0 point (s)
    tvl1: float       # dwell timer for the Vl1 point (s)
    tvh0: float       # dwell timer for the Vh0 point (s)
    tvh1: float       # dwell timer for the Vh1 point (s)
    Vrfrac: float     # fraction of tripped devices that recovers, in [0, 1]
    Trf: float        # frequency transducer time constant (s), >= 0.02
    Kpg: float        # active-power control proportional gain
    Kig: float        # active-power control integral gain
    Ddn: float        # down-side frequency droop gain >= 0
    Dup: float        # up-side frequency droop gain >= 0
    femax: float      # frequency-control error upper limit >= 0 (pu)
    femin: float      # frequency-control error lower limit <= 0 (pu)
    fdbd1: float      # lower frequency deadband knee <= 0 (pu)
    fdbd2: float      # upper frequency deadband knee >= 0 (pu)
    Freqflag: int     # 0 frequency control disabled, 1 enabled
    Pmin: float       # minimum power order (pu)
    Pmax: float       # maximum power order (pu)
    Tpord: float      # power order time constant (s)
    dPmin: float      # power ramp rate down < 0 (pu/s)
    dPmax: float      # power ramp rate up > 0 (pu/s)
    Vtripflag: int    # 0 voltage tripping disabled, 1 enabled
    Iql1: float       # minimum voltage-support reactive injection (pu)
    Iqh1: float       # maximum voltage-support reactive injection (pu)
    Xe: float         # source reactance (pu); stored only, no network interface uses it
    Ftripflag: int    # 0 frequency tripping disabled, 1 enabled
    PQflag: int       # 0 Q priority, 1 P priority for the current limit
    typeflag: int     # 0 generator (Ipmin = 0), 1 storage (Ipmin = -Ipmax)
    Vpr: float        # voltage below which frequency tripping is disabled (pu)
    # Frequency-trip thresholds and dwells; library defaults, not preset-table
    # values, so configure them explicitly before relying on trip timing.
    fl: float = 0.94  # under-frequency trip threshold (pu)
    fh: float = 1.03  # over-frequency trip threshold (pu)
    tfl: float = 0.16  # under-frequency trip dwell (s)
    tfh: float = 0.16  # over-frequency trip dwell (s)

    def __post_init__(self):
        for name in ("Trv", "Tp", "Tiq", "Tg", "Tv", "Trf", "Tpord"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"time constant {name} must be > 0")
        if self.Trf < 0.02:
            raise ValueError(f"Trf must be >= 0.02 s, got {self.Trf}")
        if not (self.Vl0 < self.Vl1 < self.Vh1 < self.Vh0):
            raise ValueError("voltage break-points must satisfy Vl0 < Vl1 < Vh1 < Vh0")
        if not (self.dbd1 <= 0.0 <= self.dbd2):
            raise ValueError("voltage deadband knees must satisfy dbd1 <= 0 <= dbd2")
        if not (self.fdbd1 <= 0.0 <= self.fdbd2):
            raise ValueError("frequency deadband knees must satisfy fdbd1 <= 0 <= fdbd2")
        if not (0.0 <= self.Vrfrac <= 1.0):
            raise ValueError(f"Vrfrac must be in [0, 1], got {self.Vrfrac}")
        if self.Pmin > self.Pmax:
            raise ValueError("need Pmin <= Pmax")
        if not (self.dPmin < 0.0 < self.dPmax):
            raise ValueError("need dPmin < 0 < dPmax")
        if self.Imax <= 0.0:
            raise ValueError("need Imax > 0")
        if self.Iql1 > self.Iqh1:
            raise ValueError("need Iql1 <= Iqh1")
        if not (self.femin <= 0.0 <= self.femax):
            raise ValueError("need femin <= 0 <= femax")
        if self.Ddn < 0.0 or self.Dup < 0.0:
            raise ValueError("droop gains must be >= 0")
        for name in ("PfFlag", "Freqflag", "Vtripflag", "Ftripflag", "PQflag", "typeflag"):
            if getattr(self, name) not in (0, 1):
                raise ValueError(f"flag {name} must be 0 or 1")


@dataclass(slots=True)
class DerAState:
    S0: float
    S1: float
    S2: float
    S3: float
    S4: float
    S5: float
    S6: float
    S7: float
    S8: float
    S9: float

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.S0, self.S1, self.S2, self.S3, self.S4,
             self.S5, self.S6, self.S7, self.S8, self.S9]
        )

    @classmethod
    def from_array(cls, a) -> "DerAState":
        return cls(a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7], a[8], a[9])


@dataclass(frozen=True)
class DerATrackers:
    """Simulation memory advanced once per accepted step (end-of-step values).

    vmax_seen complements vmin_seen because the high-voltage partial-recovery
    branches of the protection function reference the running maximum the
    same way the low-voltage branches reference the running minimum.
    """

    vmin_seen: float          # running minimum of Vt since start (pu)
    vmax_seen: float          # running maximum of Vt since start (pu)
    low_v_timer: float = 0.0   # dwell below Vl1 (s); latched once >= tvl1
    high_v_timer: float = 0.0  # dwell above Vh1 (s); latched once >= tvh1
    freq_low_timer: float = 0.0   # dwell below fl while Vt >= Vpr (s)
    freq_high_timer: float = 0.0  # dwell above fh while Vt >= Vpr (s)
    tripped: bool = False      # frequency-trip latch; forces P = Q = 0


@dataclass(frozen=True)
class DerARefs:
    Pref: float     # active power reference (pu)
    Qref: float     # reactive reference in q-axis current orientation (pu)
    pfaref: float   # power-factor reference angle (rad)
    Freqref: float  # frequency reference (pu)


def current_limits(Ipcmd: float, Iqcmd: float, params: DerAParams) -> tuple[SatLimits, SatLimits]:
    """(Ip limits, Iq limits) under the configured current-limit priority.

    The priority axis gets the symmetric +/-Imax band; the other axis gets
    the circular headroom sqrt(Imax^2 - cmd^2) as its upper limit, with the
    lower limit -headroom for storage devices (typeflag 1) and 0 for
    generators. A companion command beyond Imax yields zero headroom rather
    than a complex root.
    """
    imax = params.Imax
    if params.PQflag == 0:  # Q priority
        iq_lim = SatLimits(-imax, imax)
        head = imax * imax - Iqcmd * Iqcmd
        ipmax = math.sqrt(head) if head > 0.0 else 0.0
        ip_lim = SatLimits(-ipmax if params.typeflag == 1 else 0.0, ipmax)
    else:  # P priority
        ip_lim = SatLimits(-imax, imax)
        head = imax * imax - Ipcmd * Ipcmd
        iqmax = math.sqrt(head) if head > 0.0 else 0.0
        iq_lim = SatLimits(-iqmax if params.typeflag == 1 else 0.0, iqmax)
    return ip_lim, iq_lim


def _low_expired(trackers: DerATrackers, params: DerAParams) -> bool:
    return trackers.low_v_timer >= params.tvl1 - TIMER_EPS


def _high_expired(trackers: DerATrackers, params: DerAParams) -> bool:
    return trackers.high_v_timer >= params.tvh1 - TIMER_EPS


def voltage_protection(Vt: float, trackers: DerATrackers, params: DerAParams) -> float:
    """Nine-branch voltage cut-out/recovery multiplier, in [0, 1].

    Branches are evaluated in a fixed order with first match winning:
    full-output derating lines between the break-points while the dwell
    timers have not expired, Vrfrac-scaled partial-recovery lines once they
    have, and 0 outside [Vl0, Vh0]. The raw branch expressions can leave
    [0, 1] when the running extreme sits outside the break-point band (for
    example a fresh tracker with vmin_seen at nominal voltage, or a dip far
    below Vl0), so the result is clamped; inside the bands the clamp never
    binds.
    """
    vmin = trackers.vmin_seen
    vmax = trackers.vmax_seen
    lv_exp = _low_expired(trackers, params)
    hv_exp = _high_expired(trackers, params)
    lo_slope = params.Vl1 - params.Vl0
    hi_slope = params.Vh0 - params.Vh1

    if params.Vl0 <= Vt <= vmin:
        r = (Vt - params.Vl0) / lo_slope
    elif vmin <= Vt <= params.Vl1 and not lv_exp:
        r = (Vt - params.Vl0) / lo_slope
    elif params.Vl1 < Vt < params.Vh1 and not lv_exp:
        r = 1.0
    elif params.Vh1 <= Vt <= params.Vh0 and not hv_exp:
        r = (params.Vh0 - Vt) / hi_slope
    elif vmin <= Vt <= params.Vl1 and lv_exp:
        r = params.Vrfrac * ((Vt - vmin) / lo_slope)
    elif params.Vl1 < Vt < params.Vh1 and lv_exp:
        r = params.Vrfrac * ((params.Vl1 - vmin) / lo_slope)
    elif params.Vh1 <= Vt <= vmax and hv_exp:
        r = params.Vrfrac * ((vmax - Vt) / hi_slope)
    elif vmax <= Vt <= params.Vh0:
        r = (params.Vh0 - Vt) / hi_slope
    else:
        r = 0.0
    return min(1.0, max(0.0, r))


def _g_down(x: float, params: DerAParams) -> float:
    """Down-droop feedthrough on the frequency filter error x = Freq - S5."""
    if (x < params.fdbd1 or x > params.fdbd2) and (params.Ddn / params.Trf) * x >= 0.0:
        return -(params.Kpg * params.Ddn / params.Trf) * x
    return 0.0


def _g_up(x: float, params: DerAParams) -> float:
    """Up-droop feedthrough on the frequency filter error x = Freq - S5."""
    if (x < params.fdbd1 or x > params.fdbd2) and (params.Dup / params.Trf) * x < 0.0:
        return -(params.Kpg * params.Dup / params.Trf) * x
    return 0.0


def _commands(state: DerAState, params: DerAParams):
    """Saturated (Ipcmd, Iqcmd) plus their active limits at this state."""
    s0f = blocks.saturate(state.S0, VOLTAGE_FLOOR)
    verr = blocks.deadband(params.Vref0 - state.S0, DeadbandLimits(params.dbd1, params.dbd2))
    iq_inj = blocks.saturate(params.Kqv * verr, SatLimits(params.Iql1, params.Iqh1))
    iq_raw = state.S2 + iq_inj
    ip_raw = blocks.saturate(state.S8, SatLimits(params.Pmin, params.Pmax)) / s0f
    if params.PQflag == 0:
        _, iq_lim = current_limits(0.0, 0.0, params)
        iqcmd = blocks.saturate(iq_raw, iq_lim)
        ip_lim, _ = current_limits(0.0, iqcmd, params)
        ipcmd = blocks.saturate(ip_raw, ip_lim)
    else:
        ip_lim, _ = current_limits(0.0, 0.0, params)
        ipcmd = blocks.saturate(ip_raw, ip_lim)
        _, iq_lim = current_limits(ipcmd, 0.0, params)
        iqcmd = blocks.saturate(iq_raw, iq_lim)
    return ipcmd, iqcmd, ip_lim, iq_lim, ip_raw, iq_raw


def dera_derivatives(
    state: DerAState,
    trackers: DerATrackers,
    Vt: float,
    Freq: float,
    params: DerAParams,
    refs: DerARefs,
    dt: float = 1e-3,
) -> DerAState:
    """Time derivatives of the ten DER_A states.

    dt is the tracking interval of the rate-limited power order S7: its
    derivative is realised as the ramp-band clip of (clipped S6 - S7)/dt,
    which reproduces the limiter-inside-rate-limiter block without an
    algebraic loop. Pass the integration step here (the bundled integrator
    does); this is the one place model behaviour is coupled to the step
    size, and it needs dt <= 5 ms. Unused when Freqflag is 0.
    """
    if not (math.isfinite(Vt) and math.isfinite(Freq)):
        raise NonFiniteInput("DER_A evaluation received a non-finite bus input")

    s0f = blocks.saturate(state.S0, VOLTAGE_FLOOR)
    dS0 = (Vt - state.S0) / params.Trv
    dS1 = (state.S8 - state.S1) / params.Tp
    dS5 = (Freq - state.S5) / params.Trf
    dS8 = (state.S7 - state.S8) / params.Tpord

    if params.PfFlag == 0:
        dS2 = -state.S2 / params.Tiq + refs.Qref / (params.Tiq * s0f)
    else:
        dS2 = -state.S2 / params.Tiq + math.tan(refs.pfaref) * state.S1 / (params.Tiq * s0f)

    ipcmd, iqcmd, _, _, _, _ = _commands(state, params)
    trip_mult = state.S4 if params.Vtripflag == 1 else 1.0
    dS3 = -(state.S3 - iqcmd * trip_mult) / params.Tg
    dS9 = (ipcmd * trip_mult - state.S9) / params.Tg

    dS4 = (voltage_protection(state.S0, trackers, params) - state.S4) / params.Tv

    ferr = blocks.deadband(refs.Freqref - state.S5, DeadbandLimits(params.fdbd1, params.fdbd2))
    pi_error = (
        refs.Pref
        - state.S1
        + blocks.neg_part(params.Ddn * ferr)
        + blocks.pos_part(params.Dup * ferr)
    )
    ffilt_err = Freq - state.S5
    dS6 = (
        params.Kig * blocks.saturate(pi_error, SatLimits(params.femin, params.femax))
        + (params.Kpg / params.Tp) * state.S1
        + _g_down(ffilt_err, params)
        + _g_up(ffilt_err, params)
        - state.S8 / params.Tp
    )

    if params.Freqflag == 0:
        dS7 = 0.0
    else:
        tracked = blocks.saturate(state.S6, SatLimits(params.Pmin, params.Pmax))
        dS7 = blocks.rate_limit(
            (tracked - state.S7) / dt, SatLimits(params.dPmin, params.dPmax)
        )

    return DerAState(dS0, dS1, dS2, dS3, dS4, dS5, dS6, dS7, dS8, dS9)


def dera_outputs(state: DerAState, Vt: float, tripped: bool = False) -> tuple[float, float]:
    """(P, Q) injected at the terminal; zero once the frequency trip latched.

    P = Vt*S9 and Q = -Vt*S3 (voltage on the d axis, generator convention:
    a negative q-axis current command injects positive reactive power).
    """
    if tripped:
        return 0.0, 0.0
    return Vt * state.S9, -Vt * state.S3


def frequency_trip(
    Freq: float, Vt: float, trackers: DerATrackers, params: DerAParams, dt: float
) -> DerATrackers:
    """Advance the frequency-trip timers for one step of length dt.

    Timers accumulate while the frequency sits outside [fl, fh] with
    Vt >= Vpr and tripping enabled; they freeze (do not reset) while the
    voltage is below Vpr, and reset when the frequency recovers. The latch
    fires when a timer reaches its dwell and is permanent for the run.
    """
    if params.Ftripflag != 1 or trackers.tripped:
        return trackers
    f_low = trackers.freq_low_timer
    f_high = trackers.freq_high_timer
    if Vt >= params.Vpr:
        if Freq < params.fl:
            f_low += dt
        elif Freq > params.fh:
            f_high += dt
        else:
            f_low = 0.0
            f_high = 0.0
    tripped = f_low >= params.tfl - TIMER_EPS or f_high >= params.tfh - TIMER_EPS
    return replace(
        trackers, freq_low_timer=f_low, freq_high_timer=f_high, tripped=tripped
    )


def advance_trackers(
    trackers: DerATrackers, Vt: float, Freq: float, dt: float, params: DerAParams
) -> DerATrackers:
    """End-of-step tracker update: voltage extremes, dwell timers, trip latch.

    The band dwell timers accumulate while the voltage sits outside the
    Vl1..Vh1 band, reset on recovery while unexpired, and hold once expired
    (expiry selects the partial-recovery branches permanently).
    """
    vmin = Vt if Vt < trackers.vmin_seen else trackers.vmin_seen
    vmax = Vt if Vt > trackers.vmax_seen else trackers.vmax_seen

    if Vt < params.Vl1:
        low = trackers.low_v_timer + dt
    elif _low_expired(trackers, params):
        low = trackers.low_v_timer
    else:
        low = 0.0

    if Vt > params.Vh1:
        high = trackers.high_v_timer + dt
    elif _high_expired(trackers, params):
        high = trackers.high_v_timer
    else:
        high = 0.0

    updated = replace(
        trackers, vmin_seen=vmin, vmax_seen=vmax, low_v_timer=low, high_v_timer=high
    )
    return frequency_trip(Freq, Vt, updated, params, dt)


def fresh_trackers(Vt0: float) -> DerATrackers:
    return DerATrackers(vmin_seen=Vt0, vmax_seen=Vt0)


def dera_initialize(
    Pgen0: float, Qgen0: float, Vt0: float, Freq0: float, params: DerAParams
) -> tuple[DerAState, DerARefs, DerATrackers]:
    """Algebraic flat-start equilibrium producing outputs (Pgen0, Qgen0).

    All ten derivatives vanish at (Vt0, Freq0). Raises InfeasibleInit when
    the operating point cannot be held: voltage at or below the 0.01 pu
    floor or outside the no-derating band Vl1..Vh1, power order outside
    Pmin..Pmax, commanded currents beyond the converter limit, or a
    zero integral gain that leaves the PI composite drifting.
    """
    if Vt0 <= 0.01:
        raise InfeasibleInit(f"initial voltage {Vt0} pu is at or below the 0.01 pu floor")
    if not (params.Vl1 < Vt0 < params.Vh1):
        raise InfeasibleInit(
            f"initial voltage {Vt0} pu lies outside the no-derating band "
            f"({params.Vl1}, {params.Vh1}); the trip multiplier could not hold steady"
        )
    if not (params.Pmin <= Pgen0 <= params.Pmax):
        raise InfeasibleInit(
            f"initial power {Pgen0} pu outside the power order limits "
            f"[{params.Pmin}, {params.Pmax}]"
        )

    trackers = fresh_trackers(Vt0)
    s9 = Pgen0 / Vt0
    s3 = -Qgen0 / Vt0
    verr = blocks.deadband(params.Vref0 - Vt0, DeadbandLimits(params.dbd1, params.dbd2))
    iq_inj = blocks.saturate(params.Kqv * verr, SatLimits(params.Iql1, params.Iqh1))
    s2 = s3 - iq_inj

    if params.Kig > 0.0:
        e_star = Pgen0 * (1.0 - params.Kpg) / (params.Tp * params.Kig)
        if not (params.femin <= e_star <= params.femax):
            raise InfeasibleInit(
                "PI error needed to hold the operating point exceeds the "
                f"frequency-control error limits ({e_star:.4g} pu)"
            )
        pref = Pgen0 + e_star
    else:
        if abs(Pgen0 * (params.Kpg - 1.0) / params.Tp) > 1e-8:
            raise InfeasibleInit(
                "integral gain is zero and the PI composite cannot be held at "
                "equilibrium for a nonzero operating point"
            )
        pref = Pgen0

    if params.PfFlag == 1 and Pgen0 == 0.0 and s2 * Vt0 != 0.0:
        raise InfeasibleInit(
            "constant power-factor control cannot hold reactive output with zero active power"
        )
    pfaref = math.atan(s2 * Vt0 / Pgen0) if Pgen0 != 0.0 else 0.0

    state = DerAState(
        S0=Vt0, S1=Pgen0, S2=s2, S3=s3, S4=1.0,
        S5=Freq0, S6=Pgen0, S7=Pgen0, S8=Pgen0, S9=s9,
    )
    refs = DerARefs(Pref=pref, Qref=s2 * Vt0, pfaref=pfaref, Freqref=Freq0)

    # The commanded currents must survive the limiters untouched.
    ipcmd, iqcmd, _, _, _, _ = _commands(state, params)
    if abs(iqcmd - s3) > 1e-12:
        raise InfeasibleInit(
            f"reactive current command {s3:.4g} pu violates the current limits"
        )
    if abs(ipcmd - s9) > 1e-12:
        raise InfeasibleInit(
            f"active current command {s9:.4g} pu violates the current limits"
        )

    d = dera_derivatives(state, trackers, Vt0, Freq0, params, refs)
    residual = float(np.max(np.abs(d.as_array())))
    if residual > 1e-8:
        raise InfeasibleInit(f"initialisation residual {residual:.3e} exceeds 1e-8")
    return state, refs, trackers


def dera_limiter_flags(
    state: DerAState, trackers: DerATrackers, params: DerAParams
) -> dict[str, bool]:
    """Which limiters are active at this state; used for run diagnostics.

    power_order_windup flags the PI composite sitting outside Pmin..Pmax
    while it keeps integrating (there is deliberately no anti-windup clamp).
    """
    _, _, ip_lim, iq_lim, ip_raw, iq_raw = _commands(state, params)
    verr = blocks.deadband(params.Vref0 - state.S0, DeadbandLimits(params.dbd1, params.dbd2))
    inj_raw = params.Kqv * verr
    return {
        "voltage_floor": state.S0 <= VOLTAGE_FLOOR.lo,
        "iq_command_limit": iq_raw < iq_lim.lo or iq_raw > iq_lim.hi,
        "iq_injection_limit": inj_raw < params.Iql1 or inj_raw > params.Iqh1,
        "ip_command_limit": ip_raw < ip_lim.lo or ip_raw > ip_lim.hi,
        "power_order_limit": state.S8 < params.Pmin or state.S8 > params.Pmax,
        "power_order_windup": state.S6 < params.Pmin or state.S6 > params.Pmax,
    }


# Preset matching the published DER_A validation setup; frequency-trip
# thresholds fl/fh/tfl/tfh keep the library defaults (not table values).
DERA_PRESETS: dict[str, DerAParams] = {
    "dera_table3": DerAParams(
        Trv=0.02, Tp=0.02, Tiq=0.02, Vref0=0.0, Kqv=5.0, Tg=0.02,
        PfFlag=1, Imax=1.2, dbd1=-99.0, dbd2=99.0, Tv=0.02,
        Vl0=0.44, Vl1=0.49, Vh0=1.2, Vh1=1.15,
        tvl0=0.16, tvl1=0.16, tvh0=0.16, tvh1=0.16, Vrfrac=0.7,
        Trf=0.02, Kpg=0.1, Kig=10.0, Ddn=20.0, Dup=0.0,
        femax=99.0, femin=-99.0, fdbd1=-0.0006, fdbd2=0.0006,
        Freqflag=0, Pmin=0.0, Pmax=1.1, Tpord=0.02, dPmin=-0.5, dPmax=0.5,
        Vtripflag=1, Iql1=-1.0, Iqh1=1.0, Xe=0.25, Ftripflag=1,
        PQflag=0, typeflag=1, Vpr=0.8,
    ),
}

# Per-unit system bases the presets were stated on; metadata only.
DERA_PRESET_BASES: dict[str, dict[str, float]] = {
    "dera_table3": {"base_kv": 12.47, "base_mva": 15.0},
}

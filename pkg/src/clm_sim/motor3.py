"""Fifth-order three-phase induction motor model (composite-load motors A/B/C).

States are the transient and subtransient EMFs plus rotor slip. The dq
current algebra keeps the (V + E'') sign combination used by the WECC
composite-model block diagrams; many machine texts write (E'' - V) instead,
so do not mix parameter sets or states across conventions. The terminal
bus supplies a voltage magnitude and angle; all bundled scenarios drive
magnitude only (angle 0, so Vd = |V| and Vq = 0).

Torque law: TL = Tm0 * (A*w^2 + B*w + C0 + D*w^Etrq) with w = 1 - slip.
For fractional Etrq the speed is clamped at zero before exponentiation to
stay real during extreme transients; the simulator counts those samples.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import NoEquilibrium, NonFiniteInput

logger = logging.getLogger(__name__)

NEWTON_MAX_ITER = 100
NEWTON_TOL = 1e-10


@dataclass(frozen=True)
class MotorParams:
    rs: float           # stator resistance (pu)
    Ls: float           # synchronous reactance (pu)
    Lp: float           # transient reactance (pu)
    Lpp: float          # subtransient reactance (pu)
    Tp0: float          # transient rotor time constant (s)
    Tpp0: float         # subtransient rotor time constant (s)
    H: float            # inertia constant (s)
    A: float            # torque-speed polynomial, w^2 coefficient
    B: float            # torque-speed polynomial, w coefficient
    C0: float           # torque-speed polynomial, constant coefficient
    D: float            # torque-speed polynomial, w^Etrq coefficient
    Etrq: float         # torque speed exponent
    p: float = -1.0     # power-convention sign on E''d*id torque term
    q: float = -1.0     # power-convention sign on E''q*iq torque term
    omega0: float = 120.0 * math.pi  # synchronous frequency (rad/s)

    def __post_init__(self):
        if not (self.Ls > self.Lp > self.Lpp > 0.0):
            raise ValueError(f"need Ls > Lp > Lpp > 0, got ({self.Ls}, {self.Lp}, {self.Lpp})")
        if not (self.Tp0 > self.Tpp0 > 0.0):
            raise ValueError(f"need Tp0 > Tpp0 > 0, got ({self.Tp0}, {self.Tpp0})")
        if self.H <= 0.0:
            raise ValueError(f"need H > 0, got {self.H}")
        if self.rs < 0.0:
            raise ValueError(f"need rs >= 0, got {self.rs}")


@dataclass(slots=True)
class MotorState:
    Eqp: float   # q-axis transient EMF (pu)
    Edp: float   # d-axis transient EMF (pu)
    Eqpp: float  # q-axis subtransient EMF (pu)
    Edpp: float  # d-axis subtransient EMF (pu)
    slip: float  # rotor slip

    def as_array(self) -> np.ndarray:
        return np.array([self.Eqp, self.Edp, self.Eqpp, self.Edpp, self.slip])

    @classmethod
    def from_array(cls, a) -> "MotorState":
        return cls(a[0], a[1], a[2], a[3], a[4])


@dataclass(slots=True)
class MotorOutputs:
    Id: float  # d-axis current (pu)
    Iq: float  # q-axis current (pu)
    P: float   # active power (pu, load convention)
    Q: float   # reactive power (pu, load convention)
    TL: float  # load torque (pu)
    w: float   # rotor speed (pu)


@dataclass(frozen=True)
class MotorInit:
    Tm0: float  # mechanical torque base (pu)


def _check_finite(state: MotorState, Vd: float, Vq: float) -> None:
    if not (
        math.isfinite(Vd)
        and math.isfinite(Vq)
        and math.isfinite(state.Eqp)
        and math.isfinite(state.Edp)
        and math.isfinite(state.Eqpp)
        and math.isfinite(state.Edpp)
        and math.isfinite(state.slip)
    ):
        raise NonFiniteInput("motor evaluation received a non-finite state or voltage")


def load_torque(w: float, params: MotorParams, init: MotorInit) -> float:
    """Speed-dependent load torque; w clamped at 0 for the exponent term only."""
    wc = w if w > 0.0 else 0.0
    poly = params.A * w * w + params.B * w + params.C0 + params.D * wc**params.Etrq
    return init.Tm0 * poly


def motor_algebra(
    state: MotorState, Vd: float, Vq: float, params: MotorParams, init: MotorInit
) -> MotorOutputs:
    """Currents, powers, speed and load torque at one state/voltage point."""
    _check_finite(state, Vd, Vq)
    den = params.rs * params.rs + params.Lpp * params.Lpp
    kr = params.rs / den
    kx = params.Lpp / den
    Id = kr * (Vd + state.Edpp) + kx * (Vq + state.Eqpp)
    Iq = kr * (Vq + state.Eqpp) - kx * (Vd + state.Edpp)
    w = 1.0 - state.slip
    return MotorOutputs(
        Id=Id,
        Iq=Iq,
        P=Vd * Id + Vq * Iq,
        Q=Vq * Id - Vd * Iq,
        TL=load_torque(w, params, init),
        w=w,
    )


def motor_derivatives(
    state: MotorState, Vd: float, Vq: float, params: MotorParams, init: MotorInit
) -> MotorState:
    """Time derivatives of the five motor states."""
    out = motor_algebra(state, Vd, Vq, params, init)
    Tp0, Tpp0 = params.Tp0, params.Tpp0
    dLs = params.Ls - params.Lp
    ws = params.omega0 * state.slip
    c_em = (Tp0 - Tpp0) / (Tp0 * Tpp0)
    c_i = (Tpp0 * dLs + Tp0 * (params.Lp - params.Lpp)) / (Tp0 * Tpp0)
    dEqp = (-state.Eqp - out.Id * dLs - state.Edp * ws * Tp0) / Tp0
    dEdp = (-state.Edp + out.Iq * dLs + state.Eqp * ws * Tp0) / Tp0
    dEqpp = c_em * state.Eqp - c_i * out.Id - state.Eqpp / Tpp0 - ws * state.Edpp
    dEdpp = c_em * state.Edp + c_i * out.Iq - state.Edpp / Tpp0 + ws * state.Eqpp
    dslip = -(params.p * state.Edpp * out.Id + params.q * state.Eqpp * out.Iq - out.TL) / (
        2.0 * params.H
    )
    return MotorState(dEqp, dEdp, dEqpp, dEdpp, dslip)


def electrical_torque(state: MotorState, out: MotorOutputs, params: MotorParams) -> float:
    return params.p * state.Edpp * out.Id + params.q * state.Eqpp * out.Iq


def _emf_power_residual(x: np.ndarray, Vd: float, Vq: float, params: MotorParams, P0: float):
    """EMF derivative residuals plus the active-power mismatch at slip x[4].

    Torque balance is not part of the residual: the torque base is chosen
    afterwards so the slip derivative vanishes at the solution.
    """
    state = MotorState.from_array(x)
    init = MotorInit(Tm0=0.0)  # TL does not enter the EMF equations or P
    out = motor_algebra(state, Vd, Vq, params, init)
    d = motor_derivatives(state, Vd, Vq, params, init)
    return np.array([d.Eqp, d.Edp, d.Eqpp, d.Edpp, out.P - P0])


def motor_initialize(
    P0: float,
    Q0: float | None,
    Vd0: float,
    Vq0: float,
    params: MotorParams,
) -> tuple[MotorState, MotorInit]:
    """Solve the constant-voltage equilibrium consuming P0 at (Vd0, Vq0).

    Damped Newton on (EMFs, slip) with the four EMF equations and the
    active-power match as residuals, started from slip 0.01 and EMFs equal
    to the terminal voltage rotated by 90 degrees. The torque base Tm0 is
    then set from the solved electrical torque divided by the speed
    polynomial, which leaves all five derivatives at zero. For the
    constant-torque motors (speed polynomial identically 1) this reduces to
    Tm0 equal to the solved electrical torque.

    Q is not a free boundary condition: at fixed voltage the machine's
    reactive power is determined by the solved slip. A requested Q0 is
    checked and a mismatch beyond 1e-6 pu is logged as a warning, never
    forced. Raises NoEquilibrium when the Newton solve stalls or exhausts
    its iteration budget (infeasible loading, e.g. beyond pull-out torque).
    """
    if math.hypot(Vd0, Vq0) <= 0.0:
        raise NoEquilibrium("terminal voltage magnitude must be positive")
    x = np.array([Vd0, -Vq0, Vd0, -Vq0, 0.01])
    fx = _emf_power_residual(x, Vd0, Vq0, params, P0)
    norm = float(np.max(np.abs(fx)))
    for _ in range(NEWTON_MAX_ITER):
        if norm < NEWTON_TOL:
            break
        jac = np.empty((5, 5))
        for j in range(5):
            h = 1e-7 * max(1.0, abs(x[j]))
            xp = x.copy()
            xp[j] += h
            xm = x.copy()
            xm[j] -= h
            jac[:, j] = (
                _emf_power_residual(xp, Vd0, Vq0, params, P0)
                - _emf_power_residual(xm, Vd0, Vq0, params, P0)
            ) / (2.0 * h)
        try:
            dx = np.linalg.solve(jac, -fx)
        except np.linalg.LinAlgError:
            raise NoEquilibrium("singular Jacobian in equilibrium solve", residual=norm)
        lam = 1.0
        while True:
            x_new = x + lam * dx
            f_new = _emf_power_residual(x_new, Vd0, Vq0, params, P0)
            n_new = float(np.max(np.abs(f_new)))
            if n_new < norm:
                break
            lam *= 0.5
            if lam < 2.0**-30:
                raise NoEquilibrium(
                    "equilibrium solve stalled; operating point likely infeasible",
                    residual=norm,
                )
        x, fx, norm = x_new, f_new, n_new
    if norm >= NEWTON_TOL:
        raise NoEquilibrium(
            "equilibrium solve did not converge in the iteration budget", residual=norm
        )

    state = MotorState.from_array(x)
    init0 = MotorInit(Tm0=0.0)
    out = motor_algebra(state, Vd0, Vq0, params, init0)
    wc = out.w if out.w > 0.0 else 0.0
    poly = params.A * out.w * out.w + params.B * out.w + params.C0 + params.D * wc**params.Etrq
    if abs(poly) < 1e-12:
        raise NoEquilibrium("torque-speed polynomial vanishes at the solved speed")
    te = electrical_torque(state, out, params)
    init = MotorInit(Tm0=te / poly)

    if Q0 is not None and abs(out.Q - Q0) > 1e-6:
        logger.warning(
            "requested Q0=%.6f pu is not consistent with the machine at P0=%.6f "
            "(achieved Q=%.6f); reactive power is not a free boundary condition",
            Q0,
            P0,
            out.Q,
        )
    return state, init


# Parameter presets for the three composite-model motor classes.
# motor_a: low inertia, constant torque (compressors, positive-displacement pumps)
# motor_b: high inertia, speed-squared torque (fans, air handling)
# motor_c: low inertia, speed-squared torque (centrifugal pumps)
MOTOR_PRESETS: dict[str, MotorParams] = {
    "motor_a": MotorParams(
        rs=0.04, Ls=1.8, Lp=0.1, Lpp=0.083, Tp0=0.092, Tpp0=0.002, H=0.05,
        A=0.0, B=0.0, C0=0.0, D=1.0, Etrq=0.0,
    ),
    "motor_b": MotorParams(
        rs=0.03, Ls=1.8, Lp=0.16, Lpp=0.12, Tp0=0.1, Tpp0=0.0026, H=1.0,
        A=0.0, B=0.0, C0=0.0, D=1.0, Etrq=2.0,
    ),
    "motor_c": MotorParams(
        rs=0.03, Ls=1.8, Lp=0.16, Lpp=0.12, Tp0=0.1, Tpp0=0.0026, H=0.1,
        A=0.0, B=0.0, C0=0.0, D=1.0, Etrq=2.0,
    ),
}

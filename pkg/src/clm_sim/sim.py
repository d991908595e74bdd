"""Fixed-step integration engine, trajectory recording and comparison metrics.

The integrator is deterministic: a fixed step (rk4, heun or euler), no
event location (piecewise switches are integrated through; the convergence
tests quantify the resulting error), and all simulation memory (voltage
extremes, dwell timers, trip latches, the electronic-load minimum tracker)
advanced exactly once per accepted step using end-of-step values, never
inside integrator stages. Identical inputs therefore produce bit-identical
trajectories.

Trajectories are uniformly sampled channel matrices with a leading time
column. CSV export writes 17 significant digits so float64 values
round-trip exactly; the binary dump is raw little-endian float64, row
major, one row per sample in channel order (interpret it with the channel
list from the CSV header or the run summary).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import dera as dera_mod
from . import staticloads
from .composite import LoadMix, composite_outputs
from .dera import DerAParams, DerARefs, DerAState, DerATrackers
from .errors import (
    ChannelError,
    ConfigError,
    FileFormatError,
    GridMismatch,
    NonFiniteState,
    OutOfRange,
)
from .motor3 import (
    MotorInit,
    MotorParams,
    MotorState,
    motor_algebra,
    motor_derivatives,
    motor_initialize,
)
from .staticloads import ElecParams, ZipParams

INTEGRATION_METHODS = ("rk4", "heun", "euler")

# Tolerance when deciding two time grids are the same grid.
GRID_ATOL = 1e-12

MOTOR_STATE_CHANNELS = ("Eqp", "Edp", "Eqpp", "Edpp", "slip")
DERA_STATE_CHANNELS = tuple(f"S{i}" for i in range(10))


@dataclass(frozen=True)
class IntegratorConfig:
    method: str = "rk4"
    dt: float = 1e-3        # step size (s)
    t_end: float = 5.0      # horizon (s)
    record_every: int = 1   # sample decimation (steps)

    def __post_init__(self):
        if self.method not in INTEGRATION_METHODS:
            raise ValueError(f"method must be one of {INTEGRATION_METHODS}, got {self.method!r}")
        if self.dt <= 0.0:
            raise ValueError(f"need dt > 0, got {self.dt}")
        if self.t_end <= 0.0:
            raise ValueError(f"need t_end > 0, got {self.t_end}")
        if self.record_every < 1 or int(self.record_every) != self.record_every:
            raise ValueError(f"record_every must be an integer >= 1, got {self.record_every}")


@dataclass
class MotorSetup:
    """One initialised motor component."""

    name: str
    params: MotorParams
    state0: MotorState
    init: MotorInit
    init_residual: float = 0.0


@dataclass
class DerASetup:
    """The initialised DER component."""

    params: DerAParams
    state0: DerAState
    refs: DerARefs
    trackers0: DerATrackers
    init_residual: float = 0.0


@dataclass
class Scenario:
    """A fully initialised component mix behind one scripted bus."""

    mix: LoadMix
    bus: object  # exposes voltage(t) and frequency(t)
    motors: list[MotorSetup] = field(default_factory=list)
    dera: DerASetup | None = None
    zip_load: ZipParams | None = None
    elec: ElecParams | None = None


def build_scenario(
    mix: LoadMix,
    bus,
    motor_loads: dict[str, tuple[MotorParams, float, float | None]] | None = None,
    dera_load: tuple[DerAParams, float, float] | None = None,
    zip_load: ZipParams | None = None,
    elec_load: ElecParams | None = None,
) -> Scenario:
    """Initialise every configured component at the bus's t = 0 conditions.

    motor_loads maps a motor slot name (motor_a / motor_b / motor_c) to
    (params, P0, Q0-or-None); dera_load is (params, Pgen0, Qgen0). A mix
    fraction may be zero for a configured component (it is simulated with
    weight zero), but a positive fraction without its component is an error.
    """
    motor_loads = motor_loads or {}
    v0 = bus.voltage(0.0)
    f0 = bus.frequency(0.0)

    for name, frac in (("motor_a", mix.f_a), ("motor_b", mix.f_b), ("motor_c", mix.f_c)):
        if frac > 0.0 and name not in motor_loads:
            raise ConfigError(f"mix gives {name} weight {frac} but it is not configured",
                              field=name)
    if mix.f_zip > 0.0 and zip_load is None:
        raise ConfigError("mix gives the ZIP load weight but it is not configured", field="zip")
    if mix.f_elec > 0.0 and elec_load is None:
        raise ConfigError("mix gives the electronic load weight but it is not configured",
                          field="elec")
    if mix.der_scale > 0.0 and dera_load is None:
        raise ConfigError("mix sets der_scale but the DER component is not configured",
                          field="dera")

    motors = []
    for name in ("motor_a", "motor_b", "motor_c"):
        if name not in motor_loads:
            continue
        params, p0, q0 = motor_loads[name]
        state0, init = motor_initialize(p0, q0, v0, 0.0, params)
        d = motor_derivatives(state0, v0, 0.0, params, init)
        residual = float(np.max(np.abs(d.as_array())))
        motors.append(MotorSetup(name, params, state0, init, residual))

    dera_setup = None
    if dera_load is not None:
        params, pgen0, qgen0 = dera_load
        state0, refs, trackers0 = dera_mod.dera_initialize(pgen0, qgen0, v0, f0, params)
        d = dera_mod.dera_derivatives(state0, trackers0, v0, f0, params, refs)
        residual = float(np.max(np.abs(d.as_array())))
        dera_setup = DerASetup(params, state0, refs, trackers0, residual)

    return Scenario(mix=mix, bus=bus, motors=motors, dera=dera_setup,
                    zip_load=zip_load, elec=elec_load)


class Trajectory:
    """Uniformly sampled channel matrix; column 0 is time."""

    def __init__(self, channels: list[str], data: np.ndarray):
        data = np.asarray(data, dtype=float)
        if data.ndim != 2 or data.shape[1] != len(channels):
            raise ValueError("trajectory data must be (n_samples, n_channels)")
        if not channels or channels[0] != "t":
            raise ValueError("first trajectory channel must be 't'")
        t = data[:, 0]
        if t.size >= 2:
            dt = np.diff(t)
            if np.any(dt <= 0.0):
                raise ValueError("trajectory time must be strictly increasing")
            if np.max(np.abs(dt - dt[0])) > 1e-9:
                raise ValueError("trajectory sample spacing must be constant")
        self.channels = list(channels)
        self.data = data
        self._index = {name: i for i, name in enumerate(self.channels)}

    @property
    def t(self) -> np.ndarray:
        return self.data[:, 0]

    def __len__(self) -> int:
        return self.data.shape[0]

    def channel(self, name: str) -> np.ndarray:
        try:
            return self.data[:, self._index[name]]
        except KeyError:
            raise ChannelError(f"no channel named {name!r}") from None

    def pq_channels(self) -> list[str]:
        return [c for c in self.channels if c.endswith(".P") or c.endswith(".Q")]


def grids_match(traj_a: Trajectory, traj_b: Trajectory) -> bool:
    ta, tb = traj_a.t, traj_b.t
    return ta.shape == tb.shape and float(np.max(np.abs(ta - tb))) <= GRID_ATOL


def mse(traj_a: Trajectory, traj_b: Trajectory, channel: str) -> float:
    """Mean squared difference of one channel over identical sample grids."""
    if not grids_match(traj_a, traj_b):
        raise GridMismatch(
            "trajectories are on different time grids; resample one onto the other first"
        )
    diff = traj_a.channel(channel) - traj_b.channel(channel)
    return float(np.mean(diff * diff))


def resample(traj: Trajectory, grid) -> Trajectory:
    """Linear-interpolate every channel onto the given time grid."""
    grid = np.asarray(grid, dtype=float)
    t = traj.t
    if grid.min() < t[0] - GRID_ATOL or grid.max() > t[-1] + GRID_ATOL:
        raise OutOfRange(
            f"resample grid [{grid.min()}, {grid.max()}] extends outside the "
            f"trajectory range [{t[0]}, {t[-1]}]"
        )
    out = np.empty((grid.size, len(traj.channels)))
    out[:, 0] = grid
    for j in range(1, len(traj.channels)):
        out[:, j] = np.interp(grid, t, traj.data[:, j])
    return Trajectory(traj.channels, out)


def _rk4_step(f, t, y, h):
    k1 = f(t, y)
    k2 = f(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = f(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = f(t + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _heun_step(f, t, y, h):
    k1 = f(t, y)
    k2 = f(t + h, y + h * k1)
    return y + 0.5 * h * (k1 + k2)


def _euler_step(f, t, y, h):
    return y + h * f(t, y)


_STEPPERS = {"rk4": _rk4_step, "heun": _heun_step, "euler": _euler_step}


@dataclass
class SimResult:
    trajectory: Trajectory
    summary: dict


def run_simulation(scenario: Scenario, config: IntegratorConfig) -> SimResult:
    """Integrate the scenario and collect the run summary alongside the data."""
    dt = config.dt
    n_steps = int(round(config.t_end / dt))
    step = _STEPPERS[config.method]
    bus = scenario.bus
    mix = scenario.mix

    channels = ["t", "V", "Freq"]
    for m in scenario.motors:
        channels += [f"{m.name}.{c}" for c in MOTOR_STATE_CHANNELS]
        channels += [f"{m.name}.P", f"{m.name}.Q"]
    if scenario.dera is not None:
        channels += [f"dera.{c}" for c in DERA_STATE_CHANNELS]
        channels += ["dera.P", "dera.Q", "dera.tripped"]
    if scenario.zip_load is not None:
        channels += ["zip.P", "zip.Q"]
    if scenario.elec is not None:
        channels += ["elec.P", "elec.Q", "elec.ct"]
    channels += ["total.P", "total.Q"]

    # Pack the continuous states into one vector.
    segments: list[tuple[int, int]] = []
    y_parts = []
    pos = 0
    for m in scenario.motors:
        y_parts.append(m.state0.as_array())
        segments.append((pos, pos + 5))
        pos += 5
    if scenario.dera is not None:
        y_parts.append(scenario.dera.state0.as_array())
        dera_seg = (pos, pos + 10)
        pos += 10
    y = np.concatenate(y_parts) if y_parts else np.zeros(0)

    trackers = scenario.dera.trackers0 if scenario.dera is not None else None
    elec_tracker = (
        staticloads.elec_tracker_init(bus.voltage(0.0), scenario.elec)
        if scenario.elec is not None
        else None
    )

    def rhs(t, yv):
        v = bus.voltage(t)
        f = bus.frequency(t)
        dy = np.empty_like(yv)
        for m, (a, b) in zip(scenario.motors, segments):
            st = MotorState(yv[a], yv[a + 1], yv[a + 2], yv[a + 3], yv[a + 4])
            d = motor_derivatives(st, v, 0.0, m.params, m.init)
            dy[a] = d.Eqp
            dy[a + 1] = d.Edp
            dy[a + 2] = d.Eqpp
            dy[a + 3] = d.Edpp
            dy[a + 4] = d.slip
        if scenario.dera is not None:
            a, b = dera_seg
            st = DerAState.from_array(yv[a:b])
            d = dera_mod.dera_derivatives(
                st, trackers, v, f, scenario.dera.params, scenario.dera.refs, dt
            )
            dy[a:b] = d.as_array()
        return dy

    limiter_counts: dict[str, int] = {}
    trip_events: list[dict] = []
    rows = []

    def record(t, yv):
        v = bus.voltage(t)
        f = bus.frequency(t)
        row = [t, v, f]
        pq = {}
        for m, (a, b) in zip(scenario.motors, segments):
            st = MotorState(yv[a], yv[a + 1], yv[a + 2], yv[a + 3], yv[a + 4])
            out = motor_algebra(st, v, 0.0, m.params, m.init)
            row += [st.Eqp, st.Edp, st.Eqpp, st.Edpp, st.slip, out.P, out.Q]
            pq[m.name] = (out.P, out.Q)
        if scenario.dera is not None:
            a, b = dera_seg
            st = DerAState.from_array(yv[a:b])
            p, q = dera_mod.dera_outputs(st, v, tripped=trackers.tripped)
            row += list(yv[a:b]) + [p, q, 1.0 if trackers.tripped else 0.0]
            pq["dera"] = (p, q)
        if scenario.zip_load is not None:
            p, q = staticloads.zip_power(v, scenario.zip_load)
            row += [p, q]
            pq["zip"] = (p, q)
        if scenario.elec is not None:
            p, q, ct, _ = staticloads.elec_power(v, elec_tracker, scenario.elec)
            row += [p, q, ct]
            pq["elec"] = (p, q)
        p_tot, q_tot = composite_outputs(pq, mix)
        row += [p_tot, q_tot]
        rows.append(row)

    def count_flags(t, yv):
        for m, (a, b) in zip(scenario.motors, segments):
            key = f"{m.name}.speed_clamped"
            active = (1.0 - yv[a + 4]) <= 0.0
            limiter_counts[key] = limiter_counts.get(key, 0) + (1 if active else 0)
        if scenario.dera is not None:
            a, b = dera_seg
            st = DerAState.from_array(yv[a:b])
            flags = dera_mod.dera_limiter_flags(st, trackers, scenario.dera.params)
            for name, active in flags.items():
                key = f"dera.{name}"
                limiter_counts[key] = limiter_counts.get(key, 0) + (1 if active else 0)

    for i in range(n_steps + 1):
        t = i * dt
        if i % config.record_every == 0:
            record(t, y)
        count_flags(t, y)
        if i == n_steps:
            break
        y = step(rhs, t, y, dt)
        if not np.all(np.isfinite(y)):
            raise NonFiniteState(
                "a state left the finite range during integration "
                "(instability or too large a step)",
                step=i + 1,
            )
        t_next = (i + 1) * dt
        v_next = bus.voltage(t_next)
        f_next = bus.frequency(t_next)
        if trackers is not None:
            prev = trackers
            trackers = dera_mod.advance_trackers(
                trackers, v_next, f_next, dt, scenario.dera.params
            )
            if trackers.tripped and not prev.tripped:
                trip_events.append({"type": "frequency_trip", "t": t_next})
            params = scenario.dera.params
            if dera_mod._low_expired(trackers, params) and not dera_mod._low_expired(prev, params):
                trip_events.append({"type": "low_voltage_dwell_expired", "t": t_next})
            if dera_mod._high_expired(trackers, params) and not dera_mod._high_expired(prev, params):
                trip_events.append({"type": "high_voltage_dwell_expired", "t": t_next})
        if elec_tracker is not None:
            elec_tracker = staticloads.elec_tracker_update(v_next, elec_tracker, scenario.elec)

    traj = Trajectory(channels, np.array(rows))
    residuals = {m.name: m.init_residual for m in scenario.motors}
    if scenario.dera is not None:
        residuals["dera"] = scenario.dera.init_residual
    summary = {
        "method": config.method,
        "dt": dt,
        "t_end_requested": config.t_end,
        "t_end_actual": n_steps * dt,
        "steps": n_steps,
        "samples": len(rows),
        "initial_residuals": residuals,
        "trip_events": trip_events,
        "limiter_activity": dict(sorted(limiter_counts.items())),
    }
    return SimResult(trajectory=traj, summary=summary)


def integrate(scenario: Scenario, config: IntegratorConfig) -> Trajectory:
    """Integrate the scenario and return the recorded trajectory."""
    return run_simulation(scenario, config).trajectory


def write_csv(traj: Trajectory, path, channels: list[str] | None = None) -> None:
    """Write the trajectory as CSV: header row, time first, 17 significant digits."""
    if channels is None:
        cols = list(range(len(traj.channels)))
        names = traj.channels
    else:
        for c in channels:
            if c not in traj.channels:
                raise ChannelError(f"no channel named {c!r}")
        names = ["t"] + [c for c in channels if c != "t"]
        cols = [traj.channels.index(c) for c in names]
    with open(path, "w", newline="") as fh:
        fh.write(",".join(names) + "\n")
        for row in traj.data:
            fh.write(",".join(f"{row[j]:.17g}" for j in cols) + "\n")


def read_csv(path) -> Trajectory:
    """Read a trajectory CSV produced by write_csv (or any same-layout file)."""
    try:
        fh = open(path, "r", newline="")
    except OSError as exc:
        raise FileFormatError(f"cannot read trajectory file: {exc}") from None
    with fh:
        header = fh.readline().rstrip("\n")
        if not header:
            raise FileFormatError(f"{path}:1: empty file")
        channels = header.split(",")
        if channels[0] != "t":
            raise FileFormatError(f"{path}:1: first column must be 't', got {channels[0]!r}")
        rows = []
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != len(channels):
                raise FileFormatError(
                    f"{path}:{lineno}: expected {len(channels)} columns, got {len(parts)}"
                )
            try:
                rows.append([float(p) for p in parts])
            except ValueError as exc:
                raise FileFormatError(f"{path}:{lineno}: {exc}") from None
    if not rows:
        raise FileFormatError(f"{path}: no data rows")
    return Trajectory(channels, np.array(rows))


def write_binary(traj: Trajectory, path) -> None:
    """Raw little-endian float64 dump, row major, one row per sample.

    The layout carries no header; pair it with the channel list (CSV header
    or run summary) to interpret the columns.
    """
    with open(path, "wb") as fh:
        fh.write(np.ascontiguousarray(traj.data, dtype="<f8").tobytes())


def read_binary(path, channels: list[str]) -> Trajectory:
    with open(path, "rb") as fh:
        buf = fh.read()
    flat = np.frombuffer(buf, dtype="<f8")
    if flat.size % len(channels) != 0:
        raise FileFormatError(
            f"{path}: {flat.size} values do not divide into {len(channels)} channels"
        )
    return Trajectory(channels, flat.reshape(-1, len(channels)).copy())

"""Per-request admission, content resolution and antenna sleep scheduling.

One request is processed at a time against a mutable ResourceState. Antennas
move OFF -> ON when selected, ON -> SLEEP_PENDING when service ends and back
to OFF (idle, selectable) once the safe switching delay t1 has elapsed. RF
chains are ON from selection until the same t1 deadline.
"""

from __future__ import annotations

import enum
import heapq
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ContentNotFoundError, DomainError, SimulationError
from .icn import ClusterTopology, NdoRequest, cache_lookup, flood_resolve
from .transition import TransitionWindow, max_t1


class CounterUnderflowError(SimulationError):
    pass


class UnitState(str, enum.Enum):
    ON = "ON"
    OFF = "OFF"
    SLEEP_PENDING = "SLEEP_PENDING"


class EventKind(str, enum.Enum):
    ANTENNA_SELECTED = "ANTENNA_SELECTED"
    RF_SELECTED = "RF_SELECTED"
    CACHE_HIT = "CACHE_HIT"
    FLOODED = "FLOODED"
    SERVED = "SERVED"
    SLEEP_SCHEDULED = "SLEEP_SCHEDULED"
    WAIT_LISTEN = "WAIT_LISTEN"
    BLOCKED = "BLOCKED"


@dataclass(frozen=True)
class TraceEvent:
    time: float
    request_id: int
    kind: EventKind
    detail: dict = field(default_factory=dict)


@dataclass
class DecisionTrace:
    request_id: int
    events: list[TraceEvent] = field(default_factory=list)

    def add(self, time: float, kind: EventKind, **detail) -> None:
        self.events.append(TraceEvent(time, self.request_id, kind, detail))

    @property
    def kinds(self) -> list[EventKind]:
        return [e.kind for e in self.events]

    def first(self, kind: EventKind) -> TraceEvent | None:
        return next((e for e in self.events if e.kind is kind), None)

    @property
    def served(self) -> bool:
        return self.first(EventKind.SERVED) is not None

    @property
    def blocked(self) -> bool:
        return self.first(EventKind.BLOCKED) is not None


@dataclass(frozen=True)
class UeRequest:
    id: int
    arrival: float
    duration: float
    name: str
    gains: np.ndarray
    origin_cluster: int = 0


@dataclass(frozen=True)
class Selection:
    antennas: tuple[int, ...]
    rf: int


@dataclass(frozen=True)
class SchedulerPolicy:
    tau: float
    antennas_per_ue: int = 1
    retry_limit: int = 10
    poll_interval: float = 0.1

    def __post_init__(self):
        if not self.tau > 0 or not self.poll_interval > 0:
            raise DomainError("tau and poll interval must be positive")
        if self.antennas_per_ue < 1 or self.retry_limit < 0:
            raise DomainError("antennas_per_ue >= 1 and retry_limit >= 0 required")


@dataclass
class Clock:
    now: float = 0.0

    def advance_to(self, t: float) -> float:
        if t < self.now:
            raise DomainError(f"clock cannot run backwards ({t} < {self.now})")
        self.now = t
        return t


class ResourceState:
    """Antenna and RF-chain states with idle counters and pending transitions."""

    def __init__(self, n_antennas: int, n_rf: int):
        if n_antennas < 1 or n_rf < 1:
            raise DomainError("need at least one antenna and one RF chain")
        self.antennas = [UnitState.OFF] * n_antennas
        self.rf = [UnitState.OFF] * n_rf
        self.idle_antennas = n_antennas
        self.idle_rf = n_rf
        self._pending: list[tuple[float, int, str, int, UnitState]] = []
        self._seq = 0

    def _decrement(self, counter: str) -> None:
        value = getattr(self, counter) - 1
        if value < 0:
            raise CounterUnderflowError(f"{counter} would underflow")
        setattr(self, counter, value)

    def power_on(self, sel: Selection) -> None:
        for a in sel.antennas:
            if self.antennas[a] is not UnitState.OFF:
                raise SimulationError(f"antenna {a} is not idle")
            self.antennas[a] = UnitState.ON
            self._decrement("idle_antennas")
        if self.rf[sel.rf] is not UnitState.OFF:
            raise SimulationError(f"RF chain {sel.rf} is not idle")
        self.rf[sel.rf] = UnitState.ON
        self._decrement("idle_rf")

    def _push(self, t: float, unit: str, index: int, new: UnitState) -> None:
        heapq.heappush(self._pending, (t, self._seq, unit, index, new))
        self._seq += 1

    def schedule_off(self, sel: Selection, service_end: float, idle_at: float) -> None:
        for a in sel.antennas:
            self._push(service_end, "antenna", a, UnitState.SLEEP_PENDING)
            self._push(idle_at, "antenna", a, UnitState.OFF)
        self._push(idle_at, "rf", sel.rf, UnitState.OFF)

    def release_until(self, now: float) -> None:
        while self._pending and self._pending[0][0] <= now:
            _, _, unit, i, new = heapq.heappop(self._pending)
            if unit == "antenna":
                self.antennas[i] = new
                if new is UnitState.OFF:
                    self.idle_antennas += 1
            else:
                self.rf[i] = new
                self.idle_rf += 1

    def next_release(self) -> float | None:
        return self._pending[0][0] if self._pending else None

    def check(self) -> None:
        if self.idle_antennas != self.antennas.count(UnitState.OFF):
            raise SimulationError("idle antenna counter out of sync")
        if self.idle_rf != self.rf.count(UnitState.OFF):
            raise SimulationError("idle RF counter out of sync")
        if self.idle_antennas < 0 or self.idle_rf < 0:
            raise CounterUnderflowError("negative idle counter")


def select_antenna_rf(state: ResourceState, gains: Sequence[float], count: int = 1) -> Selection | None:
    """Strongest idle antennas (lowest index on ties) and the first idle RF chain.

    Returns None when the caller has to wait and listen.
    """
    if state.idle_antennas < count or state.idle_rf < 1:
        return None
    gains = np.asarray(gains, dtype=float)
    idle = np.flatnonzero([s is UnitState.OFF for s in state.antennas])
    # stable sort on -gain keeps the lower index first among equal gains
    order = idle[np.argsort(-gains[idle], kind="stable")]
    rf = state.rf.index(UnitState.OFF)
    return Selection(antennas=tuple(int(a) for a in order[:count]), rf=rf)


def sleep_window(t_active: float, tau: float) -> TransitionWindow:
    if t_active < 0 or not tau > 0:
        raise DomainError("need t_active >= 0 and tau > 0")
    t2 = math.fmod(t_active, tau / 4)
    t1 = min(max(max_t1(t2, tau), 0.0), tau / 2)
    return TransitionWindow(t1=t1, t2=t2, tau=tau)


def schedule_sleep(t_active: float, tau: float) -> float:
    """Delay before switching the antenna off after ``t_active`` seconds of service."""
    return sleep_window(t_active, tau).t1


def handle_request(
    request: UeRequest,
    state: ResourceState,
    topology: ClusterTopology,
    clock: Clock,
    policy: SchedulerPolicy,
) -> DecisionTrace:
    trace = DecisionTrace(request.id)
    now = clock.advance_to(max(request.arrival, clock.now))
    state.release_until(now)

    polls = 0
    sel = select_antenna_rf(state, request.gains, policy.antennas_per_ue)
    while sel is None:
        if polls >= policy.retry_limit:
            trace.add(now, EventKind.BLOCKED, reason="no idle antenna or RF chain")
            return trace
        trace.add(now, EventKind.WAIT_LISTEN, idle_antennas=state.idle_antennas, idle_rf=state.idle_rf)
        polls += 1
        now = clock.advance_to(now + policy.poll_interval)
        state.release_until(now)
        sel = select_antenna_rf(state, request.gains, policy.antennas_per_ue)

    state.power_on(sel)
    trace.add(now, EventKind.ANTENNA_SELECTED, antennas=list(sel.antennas))
    trace.add(now, EventKind.RF_SELECTED, rf=sel.rf)

    ndo = NdoRequest(request.name, request.origin_cluster)
    if cache_lookup(topology, request.origin_cluster, request.name):
        hops, source = 1, request.origin_cluster
        trace.add(now, EventKind.CACHE_HIT, cluster=source)
    else:
        trace.add(now, EventKind.FLOODED, name=request.name)
        try:
            hops, source = flood_resolve(topology, ndo)
        except ContentNotFoundError:
            state.schedule_off(sel, now, now)
            state.release_until(now)
            trace.add(now, EventKind.BLOCKED, reason="content not found")
            return trace

    trace.add(now, EventKind.SERVED, hops=hops, source=source, duration=request.duration)
    window = sleep_window(request.duration, policy.tau)
    end = now + request.duration
    state.schedule_off(sel, end, end + window.t1)
    trace.add(end, EventKind.SLEEP_SCHEDULED, t1=window.t1, t2=window.t2)
    return trace


def run_schedule(
    requests: Iterable[UeRequest],
    state: ResourceState,
    topology: ClusterTopology,
    policy: SchedulerPolicy,
    check: bool = False,
) -> list[DecisionTrace]:
    clock = Clock()
    traces = []
    for req in requests:
        traces.append(handle_request(req, state, topology, clock, policy))
        if check:
            state.check()
    return traces


def generate_requests(
    n: int,
    catalog: Sequence[str],
    n_antennas: int,
    seed: int,
    arrival_rate: float = 20.0,
    mean_duration: float = 2.0,
    zipf_alpha: float = 0.8,
    origin_cluster: int = 0,
) -> list[UeRequest]:
    """Poisson arrivals, exponential holding times, Zipf content popularity.

    Per-antenna gains are |h|^2 of CN(0, 1) entries, i.e. Exp(1) draws.
    """
    if n < 0 or not catalog:
        raise DomainError("need n >= 0 and a non-empty catalog")
    rng = np.random.default_rng(seed)
    arrivals = np.cumsum(rng.exponential(1.0 / arrival_rate, n))
    durations = rng.exponential(mean_duration, n)
    ranks = np.arange(1, len(catalog) + 1, dtype=float)
    popularity = ranks**-zipf_alpha
    picks = rng.choice(len(catalog), size=n, p=popularity / popularity.sum())
    gains = rng.exponential(1.0, (n, n_antennas))
    return [
        UeRequest(
            id=i,
            arrival=float(arrivals[i]),
            duration=float(durations[i]),
            name=catalog[picks[i]],
            gains=gains[i],
            origin_cluster=origin_cluster,
        )
        for i in range(n)
    ]


def dump_traces(traces: Iterable[DecisionTrace], out) -> None:
    """One JSON object per line: time, request, event, detail."""
    for trace in traces:
        for e in trace.events:
            out.write(json.dumps({"time": e.time, "request": e.request_id, "event": e.kind.value, "detail": e.detail}, sort_keys=True))
            out.write("\n")

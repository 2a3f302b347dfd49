"""Network model: buses, lines, case-file ingestion, admittance matrix.

Cases are JSON documents (see :func:`parse_case`); all quantities are in
per unit, with consumption negative.  Networks and admittance matrices are
immutable after construction and safe to share between solver instances.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field, replace

import gmpy2


class CaseError(ValueError):
    """Malformed or inconsistent case input."""


class DuplicateBusError(CaseError):
    pass


class ZeroImpedanceError(CaseError):
    pass


class NoSlackError(CaseError):
    pass


class MultipleSlackError(CaseError):
    pass


class DisconnectedError(CaseError):
    pass


class BusKind(enum.Enum):
    SLACK = "slack"
    PQ = "pq"
    PV = "pv"
    EXP_LOAD = "exp_load"


@dataclass(frozen=True)
class LoadComponent:
    """One voltage-dependent load term: P = |V|**(mp/np) * Re(s0), etc."""

    s0: complex
    mp: int = 0
    np: int = 1
    mq: int = 0
    nq: int = 1

    def __post_init__(self):
        for m, n, label in ((self.mp, self.np, "active"), (self.mq, self.nq, "reactive")):
            if n < 1:
                raise CaseError(f"{label} exponent denominator must be >= 1")
            if m < 0:
                raise CaseError(f"{label} exponent numerator must be >= 0")
            if m != 0 and math.gcd(m, n) != 1:
                raise CaseError(f"{label} exponent {m}/{n} is not in lowest terms")

    @property
    def exponent_p(self) -> float:
        return self.mp / self.np

    @property
    def exponent_q(self) -> float:
        return self.mq / self.nq

    def as_dict(self):
        return {
            "s0": [self.s0.real, self.s0.imag],
            "mp": self.mp, "np": self.np, "mq": self.mq, "nq": self.nq,
        }


@dataclass(frozen=True)
class Bus:
    id: int
    kind: BusKind
    s: complex = 0j                      # PQ net injection
    p: float = 0.0                       # PV active power
    m_set: float = 0.0                   # PV voltage setpoint
    q_min: float | None = None
    q_max: float | None = None
    loads: tuple[LoadComponent, ...] = ()
    v_ref: complex = 0j                  # slack voltage, arg 0

    def __post_init__(self):
        if self.kind is BusKind.SLACK:
            if abs(self.v_ref) <= 0:
                raise CaseError(f"bus {self.id}: slack needs |v_ref| > 0")
            if self.v_ref.imag != 0:
                raise CaseError(f"bus {self.id}: slack v_ref must have arg 0")
        if self.kind is BusKind.PV and self.m_set <= 0:
            raise CaseError(f"bus {self.id}: PV needs m_set > 0")
        if self.q_min is not None and self.q_max is not None and self.q_min > self.q_max:
            raise CaseError(f"bus {self.id}: q_min > q_max")

    def as_dict(self):
        d = {"id": self.id, "kind": self.kind.value}
        if self.kind is BusKind.SLACK:
            d["v_ref"] = [self.v_ref.real, self.v_ref.imag]
        elif self.kind is BusKind.PQ:
            d["s"] = [self.s.real, self.s.imag]
        elif self.kind is BusKind.PV:
            d["p"] = self.p
            d["m_set"] = self.m_set
            if self.q_min is not None:
                d["q_min"] = self.q_min
            if self.q_max is not None:
                d["q_max"] = self.q_max
        elif self.kind is BusKind.EXP_LOAD:
            d["loads"] = [lc.as_dict() for lc in self.loads]
        return d


@dataclass(frozen=True)
class Line:
    from_bus: int
    to_bus: int
    z: complex

    def __post_init__(self):
        if self.z == 0:
            raise ZeroImpedanceError(
                f"line {self.from_bus}-{self.to_bus}: zero impedance"
            )
        if self.from_bus == self.to_bus:
            raise CaseError(f"line {self.from_bus}-{self.to_bus}: self loop")

    def as_dict(self):
        return {"from": self.from_bus, "to": self.to_bus, "z": [self.z.real, self.z.imag]}


@dataclass(frozen=True)
class Network:
    buses: tuple[Bus, ...]
    lines: tuple[Line, ...]
    _by_id: dict = field(init=False, repr=False, compare=False, hash=False, default=None)

    def __post_init__(self):
        by_id = {}
        for bus in self.buses:
            if bus.id in by_id:
                raise DuplicateBusError(f"duplicate bus id {bus.id}")
            by_id[bus.id] = bus
        slacks = [b for b in self.buses if b.kind is BusKind.SLACK]
        if not slacks:
            raise NoSlackError("no slack bus")
        if len(slacks) > 1:
            raise MultipleSlackError(
                f"multiple slack buses: {[b.id for b in slacks]}"
            )
        for line in self.lines:
            for end in (line.from_bus, line.to_bus):
                if end not in by_id:
                    raise CaseError(f"line references unknown bus {end}")
        self._check_connected(by_id)
        object.__setattr__(self, "_by_id", by_id)

    def _check_connected(self, by_id):
        if len(by_id) == 1:
            return
        adjacency = {bid: set() for bid in by_id}
        for line in self.lines:
            adjacency[line.from_bus].add(line.to_bus)
            adjacency[line.to_bus].add(line.from_bus)
        start = next(iter(by_id))
        seen = {start}
        stack = [start]
        while stack:
            for nxt in adjacency[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if len(seen) != len(by_id):
            missing = sorted(set(by_id) - seen)
            raise DisconnectedError(f"disconnected network: buses {missing} unreachable")

    def bus(self, bus_id: int) -> Bus:
        return self._by_id[bus_id]

    @property
    def slack(self) -> Bus:
        return next(b for b in self.buses if b.kind is BusKind.SLACK)

    def buses_of(self, *kinds: BusKind):
        return [b for b in self.buses if b.kind in kinds]

    def as_dict(self):
        return {
            "buses": [b.as_dict() for b in self.buses],
            "lines": [ln.as_dict() for ln in self.lines],
        }


def _as_complex(value, what: str) -> complex:
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (int, float)):
        return complex(float(value), 0.0)
    raise CaseError(f"{what}: expected [re, im], got {value!r}")


def _parse_bus(entry) -> Bus:
    if "id" not in entry or "kind" not in entry:
        raise CaseError(f"bus entry missing id/kind: {entry!r}")
    bus_id = int(entry["id"])
    try:
        kind = BusKind(entry["kind"])
    except ValueError:
        raise CaseError(f"bus {bus_id}: unknown kind {entry['kind']!r}") from None
    if kind is BusKind.SLACK:
        return Bus(id=bus_id, kind=kind, v_ref=_as_complex(entry.get("v_ref", [1.0, 0.0]), f"bus {bus_id} v_ref"))
    if kind is BusKind.PQ:
        return Bus(id=bus_id, kind=kind, s=_as_complex(entry.get("s", 0.0), f"bus {bus_id} s"))
    if kind is BusKind.PV:
        return Bus(
            id=bus_id, kind=kind,
            p=float(entry.get("p", 0.0)),
            m_set=float(entry.get("m_set", 0.0)),
            q_min=None if entry.get("q_min") is None else float(entry["q_min"]),
            q_max=None if entry.get("q_max") is None else float(entry["q_max"]),
        )
    loads = tuple(
        LoadComponent(
            s0=_as_complex(lc.get("s0", 0.0), f"bus {bus_id} load s0"),
            mp=int(lc.get("mp", 0)), np=int(lc.get("np", 1)),
            mq=int(lc.get("mq", 0)), nq=int(lc.get("nq", 1)),
        )
        for lc in entry.get("loads", [])
    )
    return Bus(id=bus_id, kind=kind, loads=loads)


def parse_case(text: str) -> Network:
    """Parse a JSON case document into a validated :class:`Network`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CaseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "buses" not in doc or "lines" not in doc:
        raise CaseError("case must be an object with 'buses' and 'lines'")
    buses = tuple(_parse_bus(e) for e in doc["buses"])
    lines = tuple(
        Line(
            from_bus=int(e["from"]), to_bus=int(e["to"]),
            z=_as_complex(e["z"], "line z"),
        )
        for e in doc["lines"]
    )
    return Network(buses=buses, lines=lines)


def serialize_case(net: Network, indent: int | None = 2) -> str:
    """Inverse of :func:`parse_case`; round-trips bit-exactly."""
    return json.dumps(net.as_dict(), indent=indent)


def load_case(path) -> Network:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_case(fh.read())


def scale_loading(net: Network, lam: float) -> Network:
    """Scale every PQ injection, PV active power, and load-component s0.

    The slack voltage and the PV voltage setpoints are left untouched.
    """
    if not lam > 0:
        raise ValueError(f"loading factor must be > 0, got {lam}")
    buses = []
    for bus in net.buses:
        if bus.kind is BusKind.PQ:
            buses.append(replace(bus, s=bus.s * lam))
        elif bus.kind is BusKind.PV:
            buses.append(replace(bus, p=bus.p * lam))
        elif bus.kind is BusKind.EXP_LOAD:
            buses.append(replace(bus, loads=tuple(replace(lc, s0=lc.s0 * lam) for lc in bus.loads)))
        else:
            buses.append(bus)
    return Network(buses=tuple(buses), lines=net.lines)


class AdmittanceMatrix:
    """Dense bus admittance matrix at a fixed working precision.

    ``y[i][k]`` is indexed by bus *position* in ``order`` (not bus id);
    ``index_of`` maps ids to positions.  Entries are gmpy2 mpc values.
    """

    def __init__(self, net: Network, bits: int = 256):
        from .precision import working_precision

        order = [b.id for b in net.buses]
        index = {bid: i for i, bid in enumerate(order)}
        n = len(order)
        with working_precision(bits):
            y = [[gmpy2.mpc(0) for _ in range(n)] for _ in range(n)]
            for line in net.lines:
                i = index[line.from_bus]
                k = index[line.to_bus]
                recip = 1 / gmpy2.mpc(line.z)
                y[i][i] = y[i][i] + recip
                y[k][k] = y[k][k] + recip
                y[i][k] = y[i][k] - recip
                y[k][i] = y[k][i] - recip
        self.net = net
        self.order = order
        self.index_of = index
        self.y = y
        self.bits = bits

    def __getitem__(self, pos):
        i, k = pos
        return self.y[i][k]

    @property
    def size(self) -> int:
        return len(self.order)

    def row(self, i: int):
        return self.y[i]

    def as_complex(self):
        """Double-precision copy (for the Newton-Raphson oracle)."""
        import numpy as np

        n = self.size
        out = np.zeros((n, n), dtype=complex)
        for i in range(n):
            for k in range(n):
                out[i, k] = complex(self.y[i][k])
        return out


def build_admittance(net: Network, bits: int = 256) -> AdmittanceMatrix:
    """Admittance matrix from line impedances: Y[i][i] = sum of 1/Z over
    incident lines, Y[i][k] = -1/Z for adjacent buses."""
    return AdmittanceMatrix(net, bits=bits)

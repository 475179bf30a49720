"""MATPOWER case file parsing, validation and serialization.

Only the ``baseMVA``, ``bus`` and ``branch`` sections are read; generator
and cost data are skipped because nothing downstream consumes them.  Bus
shunts are converted from MVA at V=1 to per-unit on the system base.
External bus labels may be non-consecutive; all matrix work elsewhere in
the package uses the 0-based positional indices defined by file order.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property


class CaseError(Exception):
    """Base class for case file problems."""


class CaseParseError(CaseError):
    """Malformed case text.  Carries the 1-based line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CaseValidationError(CaseError):
    """Structurally parseable but semantically invalid case."""


class BusKind(Enum):
    PQ = "PQ"
    PV = "PV"
    SLACK = "slack"


# MATPOWER bus type codes
_BUS_KIND = {1: BusKind.PQ, 2: BusKind.PV, 3: BusKind.SLACK}
_BUS_CODE = {v: k for k, v in _BUS_KIND.items()}


@dataclass(frozen=True)
class Bus:
    id: int                 # external label
    kind: BusKind
    p_demand: float = 0.0   # MW
    q_demand: float = 0.0   # MVAr
    g_shunt: float = 0.0    # p.u. on system base
    b_shunt: float = 0.0    # p.u. on system base
    v_mag: float = 1.0      # p.u.
    v_ang: float = 0.0      # degrees

    def __post_init__(self):
        if self.v_mag <= 0:
            raise CaseValidationError(f"bus {self.id}: v_mag must be > 0")


@dataclass(frozen=True)
class Branch:
    from_bus: int           # external label
    to_bus: int             # external label
    r: float                # p.u.
    x: float                # p.u.
    b_charging: float = 0.0  # total line charging, p.u.
    tap: float = 0.0        # 0 means unity
    shift: float = 0.0      # degrees
    in_service: bool = True

    def __post_init__(self):
        if self.from_bus == self.to_bus:
            raise CaseValidationError(
                f"branch {self.from_bus}-{self.to_bus}: endpoints coincide"
            )


@dataclass(frozen=True)
class PowerCase:
    name: str
    base_mva: float
    buses: tuple[Bus, ...]
    branches: tuple[Branch, ...]
    slack_index: int        # 0-based position in buses

    def __post_init__(self):
        validate_structure(self)

    @property
    def n(self):
        """Bus count."""
        return len(self.buses)

    @property
    def m(self):
        """In-service branch count."""
        return sum(1 for br in self.branches if br.in_service)

    @cached_property
    def index_of(self):
        """Bijection external bus label -> 0-based internal index."""
        return {bus.id: i for i, bus in enumerate(self.buses)}

    def bus_index(self, label):
        try:
            return self.index_of[label]
        except KeyError:
            raise CaseValidationError(f"unknown bus label {label}") from None


@dataclass(frozen=True)
class CaseWarning:
    code: str
    message: str


def validate_structure(case):
    """Enforce PowerCase invariants; raises CaseValidationError."""
    if len(case.buses) < 2:
        raise CaseValidationError("case needs at least 2 buses")
    seen = set()
    for bus in case.buses:
        if bus.id in seen:
            raise CaseValidationError(f"duplicate bus id {bus.id}")
        seen.add(bus.id)
    slack = [i for i, b in enumerate(case.buses) if b.kind is BusKind.SLACK]
    if len(slack) != 1:
        raise CaseValidationError(
            f"expected exactly one slack bus, found {len(slack)}"
        )
    if case.slack_index != slack[0]:
        raise CaseValidationError("slack_index does not point at the slack bus")
    for br in case.branches:
        for end in (br.from_bus, br.to_bus):
            if end not in seen:
                raise CaseValidationError(
                    f"branch {br.from_bus}-{br.to_bus} references unknown bus {end}"
                )
    if case.m < 1:
        raise CaseValidationError("case needs at least one in-service branch")


_SECTION_RE = re.compile(r"mpc\.(\w+)\s*=\s*\[")
_SCALAR_RE = re.compile(r"mpc\.(\w+)\s*=\s*([^\[;]+);")
_NAME_RE = re.compile(r"function\s+\w+\s*=\s*(\w+)")


def _strip_comment(line):
    return line.split("%", 1)[0]


def _extract_sections(text):
    """Split case text into matrix sections, tracking line numbers.

    Returns (name, scalars, sections) where sections maps a section name
    to a list of (line_no, row_fields).
    """
    name = None
    scalars = {}
    sections = {}
    current = None
    pending = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if current is None:
            m = _NAME_RE.match(line)
            if m:
                name = m.group(1)
                continue
            m = _SECTION_RE.match(line)
            if m:
                current = m.group(1)
                pending = []
                rest = line[m.end():].strip()
                if rest:
                    line = rest
                else:
                    continue
            else:
                m = _SCALAR_RE.match(line)
                if m:
                    scalars[m.group(1)] = m.group(2).strip().strip("'\"")
                continue
        # inside a matrix section
        closed = False
        if line.endswith("];"):
            closed = True
            line = line[:-2].strip()
        for piece in line.split(";"):
            piece = piece.strip()
            if piece:
                pending.append((lineno, piece.split()))
        if closed:
            sections[current] = pending
            current = None
    if current is not None:
        raise CaseParseError(f"section '{current}' never closed with '];'")
    return name, scalars, sections


def _row_floats(lineno, fields, minimum, what):
    if len(fields) < minimum:
        raise CaseParseError(
            f"{what} row has {len(fields)} columns, expected at least {minimum}",
            line=lineno,
        )
    try:
        return [float(f) for f in fields]
    except ValueError as exc:
        raise CaseParseError(f"non-numeric value in {what} row: {exc}",
                             line=lineno) from None


def parse_case(text, name=None):
    """Parse MATPOWER-style case text into a PowerCase.

    Bus order follows file order; external labels are preserved.  Raises
    CaseParseError for malformed text and CaseValidationError for
    semantic problems (duplicate ids, bad slack count, dangling branch).
    """
    file_name, scalars, sections = _extract_sections(text)
    if "bus" not in sections:
        raise CaseParseError("missing 'bus' section")
    if "branch" not in sections:
        raise CaseParseError("missing 'branch' section")
    if "baseMVA" not in scalars:
        raise CaseParseError("missing 'baseMVA' assignment")
    try:
        base_mva = float(scalars["baseMVA"])
    except ValueError:
        raise CaseParseError(
            f"baseMVA is not numeric: {scalars['baseMVA']!r}") from None

    buses = []
    for lineno, fields in sections["bus"]:
        row = _row_floats(lineno, fields, 13, "bus")
        code = int(row[1])
        if code not in _BUS_KIND:
            raise CaseParseError(f"unsupported bus type code {code}",
                                 line=lineno)
        buses.append(Bus(
            id=int(row[0]),
            kind=_BUS_KIND[code],
            p_demand=row[2],
            q_demand=row[3],
            g_shunt=row[4] / base_mva,
            b_shunt=row[5] / base_mva,
            v_mag=row[7],
            v_ang=row[8],
        ))

    branches = []
    for lineno, fields in sections["branch"]:
        row = _row_floats(lineno, fields, 11, "branch")
        branches.append(Branch(
            from_bus=int(row[0]),
            to_bus=int(row[1]),
            r=row[2],
            x=row[3],
            b_charging=row[4],
            tap=row[8],
            shift=row[9],
            in_service=row[10] != 0,
        ))

    slack = [i for i, b in enumerate(buses) if b.kind is BusKind.SLACK]
    if len(slack) != 1:
        raise CaseValidationError(
            f"expected exactly one slack bus, found {len(slack)}"
        )
    return PowerCase(
        name=name or file_name or "case",
        base_mva=base_mva,
        buses=tuple(buses),
        branches=tuple(branches),
        slack_index=slack[0],
    )


def validate_case(case):
    """Non-fatal checks; returns a list of CaseWarning.

    Flags in-service branches with negative series reactance (the metric
    property of the resistance distance is only guaranteed for
    nonnegative reactance), out-of-service branches, and buses with no
    in-service incident branch.
    """
    warnings = []
    for br in case.branches:
        if br.in_service and br.x < 0:
            warnings.append(CaseWarning(
                "negative-reactance",
                f"branch {br.from_bus}-{br.to_bus} has x = {br.x:g} < 0",
            ))
        if not br.in_service:
            warnings.append(CaseWarning(
                "out-of-service",
                f"branch {br.from_bus}-{br.to_bus} is out of service",
            ))
    touched = set()
    for br in case.branches:
        if br.in_service:
            touched.add(br.from_bus)
            touched.add(br.to_bus)
    for bus in case.buses:
        if bus.id not in touched:
            warnings.append(CaseWarning(
                "isolated-bus",
                f"bus {bus.id} has no in-service branch",
            ))
    return warnings


def serialize_case(case):
    """Render a PowerCase back to MATPOWER-style text.

    Columns not carried by the model (areas, ratings, voltage limits)
    are written as neutral defaults; re-parsing the output yields a
    PowerCase equal to the input field for field.
    """
    out = [f"function mpc = {case.name}", "mpc.version = '2';", "",
           f"mpc.baseMVA = {case.base_mva!r};", "", "mpc.bus = ["]
    for bus in case.buses:
        out.append(
            "\t%d\t%d\t%r\t%r\t%r\t%r\t1\t%r\t%r\t0\t1\t1.1\t0.9;"
            % (bus.id, _BUS_CODE[bus.kind], bus.p_demand, bus.q_demand,
               bus.g_shunt * case.base_mva, bus.b_shunt * case.base_mva,
               bus.v_mag, bus.v_ang)
        )
    out.append("];")
    out.append("")
    out.append("mpc.branch = [")
    for br in case.branches:
        out.append(
            "\t%d\t%d\t%r\t%r\t%r\t0\t0\t0\t%r\t%r\t%d\t-360\t360;"
            % (br.from_bus, br.to_bus, br.r, br.x, br.b_charging,
               br.tap, br.shift, 1 if br.in_service else 0)
        )
    out.append("];")
    return "\n".join(out) + "\n"


def case_to_dict(case):
    """Canonical JSON-ready representation (used by the dump command)."""
    return {
        "name": case.name,
        "base_mva": case.base_mva,
        "n": case.n,
        "m": case.m,
        "slack_bus": case.buses[case.slack_index].id,
        "buses": [
            {
                "id": b.id, "kind": b.kind.value,
                "p_demand": b.p_demand, "q_demand": b.q_demand,
                "g_shunt": b.g_shunt, "b_shunt": b.b_shunt,
                "v_mag": b.v_mag, "v_ang": b.v_ang,
            }
            for b in case.buses
        ],
        "branches": [
            {
                "from_bus": br.from_bus, "to_bus": br.to_bus,
                "r": br.r, "x": br.x, "b_charging": br.b_charging,
                "tap": br.tap, "shift": br.shift,
                "in_service": br.in_service,
            }
            for br in case.branches
        ],
    }


def case_to_json(case, indent=2):
    return json.dumps(case_to_dict(case), indent=indent)

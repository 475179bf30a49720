"""Bus admittance matrix, topological adjacency and the P-theta Jacobian.

The Jacobian block dP/dtheta evaluated at a fixed voltage profile is the
Laplacian-like conductance matrix that feeds the resistance-distance
computation.  At a flat profile its off-diagonal entries reduce to the
negated imaginary part of Ybus and every row sums to zero.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

import numpy as np

from .caseio import PowerCase
from .eadj import BinaryAdjacency


class SingularBranchError(ValueError):
    """In-service branch with zero series impedance."""


@dataclass(frozen=True)
class AdmittanceMatrix:
    n: int
    matrix: np.ndarray  # complex NxN, p.u. siemens on system base


@dataclass(frozen=True)
class VoltageProfile:
    v_mag: np.ndarray   # p.u.
    v_ang: np.ndarray   # radians

    def __post_init__(self):
        object.__setattr__(self, "v_mag", np.asarray(self.v_mag, dtype=float))
        object.__setattr__(self, "v_ang", np.asarray(self.v_ang, dtype=float))
        if self.v_mag.shape != self.v_ang.shape:
            raise ValueError("v_mag and v_ang must have the same length")
        if np.any(self.v_mag <= 0):
            raise ValueError("all voltage magnitudes must be > 0")

    @property
    def n(self):
        return self.v_mag.shape[0]


@dataclass(frozen=True)
class PAngleJacobian:
    n: int
    matrix: np.ndarray  # real NxN
    evaluated_at: VoltageProfile


def build_ybus(case: PowerCase) -> AdmittanceMatrix:
    """Standard bus admittance matrix from in-service branches and shunts.

    Raises SingularBranchError if an in-service branch has r = x = 0.
    """
    n = case.n
    y = np.zeros((n, n), dtype=complex)
    for br in case.branches:
        if not br.in_service:
            continue
        if br.r == 0 and br.x == 0:
            raise SingularBranchError(
                f"branch {br.from_bus}-{br.to_bus} has zero series impedance"
            )
        f = case.bus_index(br.from_bus)
        t = case.bus_index(br.to_bus)
        ys = 1.0 / complex(br.r, br.x)
        bc = 1j * br.b_charging / 2.0
        tap = br.tap if br.tap != 0 else 1.0
        shift = math.radians(br.shift)
        y[f, f] += (ys + bc) / tap**2
        y[t, t] += ys + bc
        y[f, t] -= ys / (tap * cmath.exp(-1j * shift))
        y[t, f] -= ys / (tap * cmath.exp(1j * shift))
    for i, bus in enumerate(case.buses):
        y[i, i] += complex(bus.g_shunt, bus.b_shunt)
    return AdmittanceMatrix(n=n, matrix=y)


def topological_adjacency(case: PowerCase) -> BinaryAdjacency:
    """0/1 connectivity from direct physical branches, unit diagonal.

    Parallel branches collapse to a single entry; out-of-service branches
    are ignored.
    """
    n = case.n
    a = np.eye(n, dtype=np.uint8)
    for br in case.branches:
        if not br.in_service:
            continue
        f = case.bus_index(br.from_bus)
        t = case.bus_index(br.to_bus)
        a[f, t] = 1
        a[t, f] = 1
    return BinaryAdjacency(n=n, matrix=a, source="topological")


def flat_profile(case: PowerCase) -> VoltageProfile:
    """All magnitudes 1 p.u., all angles zero."""
    n = case.n
    return VoltageProfile(v_mag=np.ones(n), v_ang=np.zeros(n))


def case_profile(case: PowerCase) -> VoltageProfile:
    """Voltage profile recorded in the case file (angles converted to rad)."""
    return VoltageProfile(
        v_mag=np.array([b.v_mag for b in case.buses]),
        v_ang=np.radians([b.v_ang for b in case.buses]),
    )


def load_profile(path) -> VoltageProfile:
    """Read a profile from JSON with ``v_mag`` and ``v_ang_deg`` arrays."""
    with open(path) as fh:
        data = json.load(fh)
    return VoltageProfile(
        v_mag=np.asarray(data["v_mag"], dtype=float),
        v_ang=np.radians(np.asarray(data["v_ang_deg"], dtype=float)),
    )


def power_angle_jacobian(case: PowerCase,
                         profile: VoltageProfile) -> PAngleJacobian:
    """dP/dtheta block of the power-flow Jacobian at the given profile.

    With Y_ij = G_ij + jB_ij and theta_ij = theta_i - theta_j:

        H_ij = V_i V_j (G_ij sin theta_ij - B_ij cos theta_ij)   (i != j)
        H_ii = sum_{j != i} V_i V_j (-G_ij sin theta_ij + B_ij cos theta_ij)

    so every row sums to zero at a flat profile.
    """
    y = build_ybus(case).matrix
    n = case.n
    if profile.n != n:
        raise ValueError(
            f"profile has {profile.n} entries for a {n}-bus case"
        )
    g = y.real
    b = y.imag
    v = profile.v_mag
    theta = profile.v_ang
    tij = theta[:, None] - theta[None, :]
    vv = np.outer(v, v)
    h = vv * (g * np.sin(tij) - b * np.cos(tij))
    np.fill_diagonal(h, 0.0)
    np.fill_diagonal(h, -h.sum(axis=1))
    return PAngleJacobian(n=n, matrix=h, evaluated_at=profile)

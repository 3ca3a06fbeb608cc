"""
Y and Delta resistor networks carrying a conserved current.

The Y legs R1, R2, R3 carry currents p, q, r with r = q - p.  Dividing the
dissipated power p^2 R1 + q^2 R2 + r^2 R3 by each squared current gives
ratios x = r^2/p^2, y = q^2/p^2, z = x/y.  The Delta resistor R_a then
dissipates like a Y whose legs carry the scaled currents p^2, y q^2, z r^2,
which is the pattern matched against the three-term triangle prefactors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def _check_positive(**values):
    for name, v in values.items():
        if not (math.isfinite(v) and v > 0):
            raise ValueError(f"resistance {name} must be positive, got {v!r}")


@dataclass(frozen=True)
class YNetwork:
    r1: float
    r2: float
    r3: float

    def __post_init__(self):
        _check_positive(r1=self.r1, r2=self.r2, r3=self.r3)


@dataclass(frozen=True)
class DeltaNetwork:
    ra: float
    rb: float
    rc: float

    def __post_init__(self):
        _check_positive(ra=self.ra, rb=self.rb, rc=self.rc)


@dataclass(frozen=True)
class LegCurrents:
    """Currents through R1, R2, R3; conservation requires r = q - p."""

    p: float
    q: float
    r: float

    def __post_init__(self):
        scale = max(abs(self.p), abs(self.q), abs(self.r))
        if abs(self.r - (self.q - self.p)) > 1e-12 * scale:
            raise ValueError(
                f"current not conserved: r={self.r!r} but q-p={self.q - self.p!r}"
            )

    @classmethod
    def from_pq(cls, p: float, q: float) -> "LegCurrents":
        return cls(p, q, q - p)


def y_to_delta(y: YNetwork) -> DeltaNetwork:
    r1, r2, r3 = y.r1, y.r2, y.r3
    return DeltaNetwork(
        r2 + r3 + r2 * r3 / r1,
        r1 + r3 + r1 * r3 / r2,
        r1 + r2 + r1 * r2 / r3,
    )


def delta_to_y(d: DeltaNetwork) -> YNetwork:
    """Inverse of :func:`y_to_delta`: R1 = Rb Rc / (Ra + Rb + Rc), and cyclic."""
    total = d.ra + d.rb + d.rc
    return YNetwork(d.rb * d.rc / total, d.ra * d.rc / total, d.ra * d.rb / total)


def y_power(y: YNetwork, i: LegCurrents) -> float:
    """Joule power p^2 R1 + q^2 R2 + r^2 R3 dissipated in the Y."""
    return i.p ** 2 * y.r1 + i.q ** 2 * y.r2 + i.r ** 2 * y.r3


@dataclass(frozen=True)
class PowerRatios:
    x: float
    y: float
    z: float
    consistency: tuple  # (y - x/z, z - x/y, 1 - y z / x)


def power_ratio_system(i: LegCurrents) -> PowerRatios:
    """Ratios x = r^2/p^2, y = q^2/p^2, z = x/y and their consistency residuals."""
    if i.p == 0 or i.q == 0 or i.r == 0:
        raise ValueError(f"all three currents must be nonzero, got {i}")
    p2, q2, r2 = i.p ** 2, i.q ** 2, i.r ** 2
    x = r2 / p2
    y = q2 / p2
    z = x / y
    residuals = (y - x / z, z - x / y, 1.0 - y * z / x)
    if any(abs(res) > 8 * 2.2e-16 * max(1.0, x, y, z) for res in residuals):
        raise ArithmeticError(f"ratio identities broken beyond rounding: {residuals}")
    return PowerRatios(x, y, z, residuals)


def scaled_current_check(y: YNetwork, i: LegCurrents) -> dict:
    """Power in the Delta resistor R_a written as a Y with scaled currents.

    I_a^2 R_a = p_a^2 R2 R3/R1 + q_a^2 R2 + r_a^2 R3 with p_a^2 = (yz/x) p^2,
    q_a^2 = y q^2 and r_a^2 = z r^2.  I_a^2 is whatever makes that hold.
    """
    ratios = power_ratio_system(i)
    x, yy, z = ratios.x, ratios.y, ratios.z
    p2, q2, r2 = i.p ** 2, i.q ** 2, i.r ** 2
    pa2 = yy * z / x * p2
    qa2 = yy * q2
    ra2 = z * r2
    legs = (y.r2 * y.r3 / y.r1, y.r2, y.r3)
    ra = y_to_delta(y).ra
    power_a = pa2 * legs[0] + qa2 * legs[1] + ra2 * legs[2]
    return {
        "x": x,
        "y": yy,
        "z": z,
        "scaled_currents": (pa2, qa2, ra2),
        "current_weights": (pa2 / p2, qa2 / q2, ra2 / r2),
        "delta_legs": legs,
        "R_a": ra,
        "legs_sum_to_R_a": abs(sum(legs) - ra) <= 1e-12 * ra,
        "power_a": power_a,
        "I_a_squared": power_a / ra,
        "p_a_equals_p": abs(pa2 - p2) <= 1e-12 * p2,
        "pattern": ("p^2", "y q^2", "z r^2"),
    }


def prefactor_pattern(terms) -> tuple:
    """Weights of three-term prefactors relative to (scale)^(omega-3)."""
    return tuple(t.weight for t in terms)

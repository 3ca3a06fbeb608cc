"""
Massless two-point functions: the one-loop bubble and the two-loop
"flying saucer" integrals obtained by nesting two bubbles.

Momentum powers are never folded into the gamma ratios.  Each stage of a
nested computation is written to an explicit exponent ledger so that the
power of the external momentum can be checked against
``loops * omega - (sum of propagator exponents)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .special_functions import gamma


def _w(omega) -> float:
    return float(getattr(omega, "omega", omega))


def bubble(a: float, b: float, omega) -> float:
    r"""Gamma-ratio part of the massless bubble.

    .. math::
        \int \frac{d^Dk}{(k^2)^a ((k-p)^2)^b}
        = \pi^\omega (p^2)^{\omega-a-b} G(a, b)

    with ``G = Gamma(a+b-w) Gamma(w-a) Gamma(w-b) / (Gamma(a) Gamma(b) Gamma(2w-a-b))``.
    """
    w = _w(omega)
    num = gamma(a + b - w, "a+b-omega") * gamma(w - a, "omega-a") * gamma(w - b, "omega-b")
    den = gamma(a, "a") * gamma(b, "b") * gamma(2 * w - a - b, "2*omega-a-b")
    return num / den


def flying_saucer(a: int, omega) -> float:
    """Closed gamma expression for the two-loop integral with (k^2)^a.

    The full integral is this number times ``pi^(2 omega) (p^2)^(2 omega - 3 - a)``
    (see :func:`flying_saucer_power`).
    """
    w = _w(omega)
    common = gamma(w - 1, "omega-1") ** 3 * gamma(2 - w, "2-omega") / gamma(2 * w - 2, "2*omega-2")
    if a == 1:
        return common * (gamma(2 * w - 3, "2*omega-3") * gamma(4 - 2 * w, "4-2*omega")
                         / (gamma(3 - w, "3-omega") * gamma(3 * w - 4, "3*omega-4")))
    if a == 2:
        return common * (gamma(2 * w - 4, "2*omega-4") * gamma(5 - 2 * w, "5-2*omega")
                         / (gamma(4 - w, "4-omega") * gamma(3 * w - 5, "3*omega-5")))
    raise ValueError(f"flying saucer exponent must be 1 or 2, got {a!r}")


def flying_saucer_power(a: int, omega) -> float:
    """Exponent of p^2 multiplying :func:`flying_saucer`."""
    return 2 * _w(omega) - 3 - a


@dataclass
class LedgerStage:
    """One integration step: which propagators were consumed and what came out."""

    name: str
    loop_momentum: str
    exponents: tuple
    result_momentum: str
    result_power: float
    gamma_factor: float
    loops_done: int
    original_exponents: float


@dataclass
class CompositionReport:
    a: int
    omega: float
    stages: list = field(default_factory=list)
    composed: float = 0.0
    closed_form: float = 0.0
    composed_power: float = 0.0
    closed_form_power: float = 0.0

    @property
    def ratio(self) -> float:
        return self.composed / self.closed_form

    @property
    def rel_error(self) -> float:
        return abs(self.composed - self.closed_form) / abs(self.closed_form)

    @property
    def homogeneous(self) -> bool:
        """Each stage's momentum power is loops*omega minus the original
        propagator exponents integrated so far."""
        return all(
            abs(st.result_power - (st.loops_done * self.omega - st.original_exponents)) < 1e-12
            for st in self.stages
        )


def sequential_composition_check(a: int, omega) -> CompositionReport:
    """Integrate q first, then k, and compare with :func:`flying_saucer`.

    Inner:  Int d^Dq / (q^2 (q-k)^2) = pi^w (k^2)^(w-2) G(1, 1).
    The factor (k^2)^(w-2) merges with 1/(k^2)^a into 1/(k^2)^(a+2-w), so
    Outer:  Int d^Dk / ((k^2)^(a+2-w) (k-p)^2) = pi^w (p^2)^(2w-3-a) G(a+2-w, 1).
    """
    w = _w(omega)
    report = CompositionReport(a, w)
    inner = bubble(1.0, 1.0, w)
    inner_power = w - 2.0
    report.stages.append(
        LedgerStage("inner", "q", (1.0, 1.0), "k", inner_power, inner, 1, 2.0))
    merged = a - inner_power
    outer = bubble(merged, 1.0, w)
    outer_power = w - merged - 1.0
    report.stages.append(
        LedgerStage("outer", "k", (merged, 1.0), "p", outer_power, outer, 2, 2.0 + a + 1.0))
    report.composed = inner * outer
    report.composed_power = outer_power
    report.closed_form = flying_saucer(a, w)
    report.closed_form_power = flying_saucer_power(a, w)
    return report

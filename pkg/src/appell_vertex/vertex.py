"""
Closed forms of the one-loop massless triangle in D = 2*omega dimensions.

Three evaluators share the :class:`TriangleValue` container:

``triangle_four_term``
    A F4(x,y) + B x^(1-g) F4 + C y^(1-g') F4 + D (xy)^(1-g) F4, all at the
    same point (x, y) = (r2/p2, q2/p2).
``reduce_four_to_three``
    The B and D terms folded into a single F4 at (x/y, 1/y) by running the
    continuation formula backwards.  The fold needs a complex coefficient;
    the folded term is stored as ``Omega * F4(x/y, 1/y + i0)`` plus its
    complex conjugate.
``triangle_three_term_paper``
    The three-term expression with the real coefficients
    Gamma_p = -Gamma_q = -Gamma_r, evaluated as written.

Everything works in the Euclidean region (p2, q2, r2 > 0), where the
integral is real and the Minkowski i*epsilon plays no role.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .errors import DegenerateParameterError, DomainError
from .oracle import triangle_feynman_param
from .special_functions import (
    DEFAULT_CONTROL,
    F4Params,
    Number,
    Point2,
    SeriesControl,
    continuation_terms,
    f4_continue,
    f4_series,
    gamma,
    neg_power,
)

# Ratio between the Euclidean integral and the bracketed four-term expression
# times pi^omega (p2)^(omega-3).  Matched once against the Feynman-parameter
# integral at D=4 (see match_normalization); the match gives 1 to ~1e-9.
EUCLIDEAN_NORMALIZATION = 1.0


@dataclass(frozen=True)
class OmegaParam:
    """Dimensional-regularization parameter; the dimension is D = 2*omega."""

    omega: float

    @property
    def D(self) -> float:
        return 2.0 * self.omega


def _omega(value) -> float:
    return float(value.omega if isinstance(value, OmegaParam) else value)


@dataclass(frozen=True)
class Kinematics:
    """Euclidean squared momenta of the three legs.

    ``x``, ``y`` and ``z`` are recomputed from the stored squares on every
    access, so ``z * y == x`` up to one rounding.
    """

    p2: float
    q2: float
    r2: float

    def __post_init__(self):
        for name in ("p2", "q2", "r2"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be positive and finite (Euclidean), got {v!r}")

    @classmethod
    def from_ratios(cls, x: float, y: float, p2: float = 1.0) -> "Kinematics":
        return cls(p2, y * p2, x * p2)

    @property
    def x(self) -> float:
        return self.r2 / self.p2

    @property
    def y(self) -> float:
        return self.q2 / self.p2

    @property
    def z(self) -> float:
        return self.r2 / self.q2

    def squares(self):
        return (self.p2, self.q2, self.r2)

    def scaled(self, lam: float) -> "Kinematics":
        return Kinematics(lam * self.p2, lam * self.q2, lam * self.r2)

    def permuted(self, order: Sequence[int]) -> "Kinematics":
        sq = self.squares()
        return Kinematics(*(sq[i] for i in order))


@dataclass
class TriangleTerm:
    """One ``coeff * prefactor * F4(params; point)`` piece of a closed form.

    The prefactor is ``weight * scale**(omega - 3)``: ``scale`` is the squared
    momentum whose power is pulled out and ``weight`` the remaining ratio.
    With ``conjugate_pair`` the piece stands for itself plus its complex
    conjugate, i.e. ``2 Re(coeff * prefactor * f4)``.
    """

    label: str
    coeff: Number
    scale: float
    weight: float
    prefactor: float
    params: F4Params
    point: Point2
    f4: Number
    f4_err: float
    method: str = "series"
    conjugate_pair: bool = False

    @property
    def contribution(self) -> float:
        c = self.coeff * self.prefactor * self.f4
        if self.conjugate_pair:
            return 2.0 * complex(c).real
        return float(np.real(c))

    @property
    def err(self) -> float:
        bound = abs(self.coeff * self.prefactor) * self.f4_err
        return 2.0 * bound if self.conjugate_pair else bound


@dataclass
class TriangleValue:
    """Total of a closed form with its per-term breakdown."""

    form: str
    omega: float
    value: float
    err: float
    terms: list = field(default_factory=list)
    include_pi: bool = True

    @property
    def normalization(self) -> float:
        norm = EUCLIDEAN_NORMALIZATION
        return norm * math.pi ** self.omega if self.include_pi else norm


def _assemble(form, omega, terms, include_pi) -> TriangleValue:
    out = TriangleValue(form, omega, 0.0, 0.0, terms, include_pi)
    norm = out.normalization
    out.value = norm * math.fsum(t.contribution for t in terms)
    out.err = abs(norm) * math.fsum(t.err for t in terms)
    return out


def coeff_ABCD(omega) -> tuple:
    """Gamma-ratio coefficients (A, B, C, D) of the four-term solution."""
    w = _omega(omega)
    g_m2 = gamma(w - 2, "omega-2")
    g_2m = gamma(2 - w, "2-omega")
    g_3m = gamma(3 - w, "3-omega")
    g_m1 = gamma(w - 1, "omega-1")
    g_den = gamma(2 * w - 3, "2*omega-3")
    A = g_m2 ** 2 * g_3m / g_den
    B = g_2m * g_m2 * g_m1 / g_den
    D = g_2m ** 2 * g_m1
    return A, B, B, D


def four_term_params(omega) -> dict:
    """F4 parameter sets of the four terms (alpha=1, beta=gamma=gamma'=3-omega)."""
    w = _omega(omega)
    al, be, ga, gp = 1.0, 3.0 - w, 3.0 - w, 3.0 - w
    return {
        "A": F4Params(al, be, ga, gp),
        "B": F4Params(al + 1 - ga, be + 1 - ga, 2 - ga, gp),
        "C": F4Params(al + 1 - gp, be + 1 - gp, ga, 2 - gp),
        "D": F4Params(al + 2 - ga - gp, be + 2 - ga - gp, 2 - ga, 2 - gp),
    }


def _four_terms(kin: Kinematics, w: float, ctrl: SeriesControl):
    pt = Point2(kin.x, kin.y)
    if not pt.radius < 1:
        raise DomainError(
            f"four-term form needs sqrt(x)+sqrt(y) < 1, got {pt.radius:.6g}"
        )
    A, B, C, D = coeff_ABCD(w)
    ga = gp = 3.0 - w
    x, y = kin.x, kin.y
    weights = {
        "A": 1.0,
        "B": x ** (1 - ga),
        "C": y ** (1 - gp),
        "D": x ** (1 - ga) * y ** (1 - gp),
    }
    coeffs = {"A": A, "B": B, "C": C, "D": D}
    base = kin.p2 ** (w - 3)
    terms = []
    for label, params in four_term_params(w).items():
        res = f4_series(params, pt, ctrl)
        terms.append(TriangleTerm(
            label, coeffs[label], kin.p2, weights[label], weights[label] * base,
            params, pt, res.value, res.err,
        ))
    return terms


def triangle_four_term(kin: Kinematics, omega, ctrl: SeriesControl = DEFAULT_CONTROL,
                       include_pi: bool = True) -> TriangleValue:
    """Four-term F4 solution of the massless triangle at (x, y) = (r2/p2, q2/p2)."""
    w = _omega(omega)
    return _assemble("four", w, _four_terms(kin, w, ctrl), include_pi)


def reduction_target(omega) -> F4Params:
    """F4 that the B and D terms fold into, at the point (x/y, 1/y).

    In terms of alpha, beta, gamma, gamma' this is
    F4(beta+2-gamma-gamma', 1+beta-gamma; 2-gamma, 1-alpha+beta).
    """
    w = _omega(omega)
    al, be, ga, gp = 1.0, 3.0 - w, 3.0 - w, 3.0 - w
    return F4Params(be + 2 - ga - gp, 1 + be - ga, 2 - ga, 1 - al + be)


def fold_coefficient(pair: Sequence[TriangleTerm], target: F4Params, y: float) -> complex:
    """Complex coefficient that folds two (x, y) terms into one continued F4.

    Expanding ``target`` at (x/y, 1/y + i0) gives
    ``sum_j k_j (-1/y - i0)**(-s_j) F4_j(x, y)``.  Each ``F4_j`` is matched to
    one of the ``pair`` terms by its parameters, and the real equations

        2 Re(Omega * k_j * phase_j) = coeff_j * prefactor_j

    are solved for Re(Omega) and Im(Omega).  No real Omega exists unless the
    two phases line up.
    """
    pieces = continuation_terms(target)
    rows, rhs = [], []
    for piece in pieces:
        matches = [t for t in pair if t.params.same_function(piece.params)]
        if len(matches) != 1:
            raise ValueError(
                f"continuation piece {piece.params} does not match exactly one paired term"
            )
        term = matches[0]
        amp = term.coeff * term.prefactor
        if piece.coeff == 0.0:
            if amp != 0.0:
                raise DegenerateParameterError(
                    f"continuation coefficient for {piece.params} vanishes "
                    f"(reciprocal gamma at a pole); term {term.label} has no image"
                )
            continue
        k = piece.coeff * neg_power(1.0 / y, piece.exponent, branch=1)
        # 2 Re(Omega k) = 2 (Re k) u - 2 (Im k) v
        rows.append([2.0 * k.real, -2.0 * k.imag])
        rhs.append(amp)
    if len(rows) < 2:
        raise DegenerateParameterError("fold is under-determined")
    mat = np.array(rows)
    if abs(np.linalg.det(mat)) <= 1e-14 * np.abs(mat).max() ** 2:
        raise DegenerateParameterError("continuation phases coincide; fold is singular")
    u, v = np.linalg.solve(mat, np.array(rhs))
    return complex(u, v)


def reduce_four_to_three(kin: Kinematics, omega, ctrl: SeriesControl = DEFAULT_CONTROL,
                         include_pi: bool = True) -> TriangleValue:
    """Fold the B and D terms of the four-term form into one F4 at (z, 1/y).

    The A and C terms are carried over unchanged.  The folded term keeps the
    prefactor ``z * (r2)**(omega-3)``, and its coefficient Omega comes from
    :func:`fold_coefficient`.  The continued F4 itself is evaluated with
    :func:`f4_continue` on the ``+i0`` side.
    """
    w = _omega(omega)
    four = {t.label: t for t in _four_terms(kin, w, ctrl)}
    target = reduction_target(w)
    prefactor = kin.z * kin.r2 ** (w - 3)
    omega_full = fold_coefficient((four["B"], four["D"]), target, kin.y)
    coeff = omega_full / prefactor
    pt = Point2(kin.z, 1.0 / kin.y)
    res = f4_continue(target, pt, ctrl, branch=1)
    a_term, c_term = four["A"], four["C"]
    y_term = TriangleTerm(
        "C", c_term.coeff, kin.q2, kin.y, kin.y * kin.q2 ** (w - 3),
        c_term.params, c_term.point, c_term.f4, c_term.f4_err,
    )
    folded = TriangleTerm(
        "BD", coeff, kin.r2, kin.z, prefactor, target, pt, res.value, res.err,
        method="continued", conjugate_pair=True,
    )
    return _assemble("reduced", w, [a_term, y_term, folded], include_pi)


def printed_prefactor_layout(kin: Kinematics) -> list:
    """(label, scale, weight) of the three printed prefactors weight*scale^(omega-3)."""
    return [("p", kin.p2, 1.0), ("q", kin.q2, kin.y), ("r", kin.r2, kin.z)]


def printed_three_term_params(omega) -> list:
    """(label, F4 params, point name) of each printed term."""
    w = _omega(omega)
    return [
        ("p", F4Params(1.0, 3 - w, 3 - w, 3 - w), "xy"),
        ("q", F4Params(1.0, w - 1, 3 - w, w - 1), "xy"),
        ("r", F4Params(1.0, w - 1, w - 1, 3 - w), "z1/y"),
    ]


def _f4_anywhere(params: F4Params, pt: Point2, ctrl: SeriesControl, continuation: str):
    try:
        res = f4_series(params, pt, ctrl)
        return res.value, res.err, "series"
    except DomainError:
        if continuation == "none":
            raise
    try:
        res = f4_continue(params, pt, ctrl)
        return res.value, res.err, "continued"
    except DomainError:
        if continuation != "principal":
            raise
    # principal value: average of the two sides of the cut, i.e. the real part
    res = f4_continue(params, pt, ctrl, branch=1)
    return complex(res.value).real, res.err, "continued-principal"


def triangle_three_term_paper(kin: Kinematics, omega, ctrl: SeriesControl = DEFAULT_CONTROL,
                              include_pi: bool = True,
                              continuation: str = "principal") -> TriangleValue:
    """Three-term expression with Gamma_p = -Gamma_q = -Gamma_r, as written.

    Terms whose series does not converge at their point are continued.
    ``continuation`` picks what happens then: ``"none"`` raises, ``"real"``
    only allows real continuations, ``"principal"`` (default) falls back to
    the average over both sides of the cut.  Each term records its
    ``method``.
    """
    if continuation not in ("none", "real", "principal"):
        raise ValueError(f"unknown continuation mode {continuation!r}")
    w = _omega(omega)
    gam_p = coeff_ABCD(w)[0]
    coeffs = {"p": gam_p, "q": -gam_p, "r": -gam_p}
    points = {"xy": Point2(kin.x, kin.y), "z1/y": Point2(kin.z, 1.0 / kin.y)}
    layout = {label: (scale, weight) for label, scale, weight in printed_prefactor_layout(kin)}
    terms = []
    for label, params, where in printed_three_term_params(w):
        pt = points[where]
        try:
            val, err, method = _f4_anywhere(params, pt, ctrl, continuation)
        except DomainError as exc:
            raise DomainError(f"term {label}: {exc}") from exc
        scale, weight = layout[label]
        terms.append(TriangleTerm(
            label, coeffs[label], scale, weight, weight * scale ** (w - 3),
            params, pt, val, err, method,
        ))
    return _assemble("paper3", w, terms, include_pi)


FORMS = {
    "four": triangle_four_term,
    "reduced": reduce_four_to_three,
    "paper3": triangle_three_term_paper,
}


def _rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def triangle_sym_check(kin: Kinematics, omega, quad_tol: float = 1e-10,
                       ctrl: SeriesControl = DEFAULT_CONTROL) -> dict:
    """Leg-permutation behaviour of the oracle and of the four-term form.

    The oracle is evaluated under all six permutations of (p2, q2, r2).  The
    four-term closed form is evaluated under each permutation whose relabelled
    point lies in its convergence domain; the others are listed as
    ``"domain"``.
    """
    w = _omega(omega)
    perms = list(itertools.permutations(range(3)))
    oracle_vals, closed_vals = {}, {}
    for perm in perms:
        relabeled = kin.permuted(perm)
        oracle_vals[perm] = triangle_feynman_param(relabeled, quad_tol)
        try:
            closed_vals[perm] = triangle_four_term(relabeled, w, ctrl).value
        except DomainError:
            closed_vals[perm] = "domain"
    ovals = [v[0] for v in oracle_vals.values()]
    oerr = max(v[1] for v in oracle_vals.values())
    ospread = max(ovals) - min(ovals)
    cvals = [v for v in closed_vals.values() if v != "domain"]
    cspread = max(_rel(a, cvals[0]) for a in cvals) if cvals else 0.0
    return {
        "omega": w,
        "oracle": {str(k): v[0] for k, v in oracle_vals.items()},
        "oracle_spread": ospread,
        "oracle_err": oerr,
        "oracle_symmetric": ospread <= 2 * oerr + 1e-14 * max(ovals),
        "closed_form": {str(k): v for k, v in closed_vals.items()},
        "closed_form_evaluated": len(cvals),
        "closed_form_rel_spread": cspread,
        "closed_form_symmetric": cspread < 1e-10,
    }


def richardson(steps: Sequence[float], values: Sequence[float]) -> float:
    """Polynomial extrapolation of ``values(step)`` to step = 0 (Neville)."""
    h = list(map(float, steps))
    t = list(map(float, values))
    n = len(t)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            t[i] = (h[i - j] * t[i] - h[i] * t[i - 1]) / (h[i - j] - h[i])
    return t[-1]


@dataclass
class PoleProbe:
    """Four-term totals and terms along omega = 2 + delta."""

    kin: Kinematics
    deltas: list
    totals: list
    terms: list
    max_term: list
    extrapolated: float
    extrapolated_plain: float
    oracle: Optional[float] = None
    oracle_err: Optional[float] = None

    @property
    def differences(self) -> list:
        return [abs(b - a) for a, b in zip(self.totals, self.totals[1:])]

    @property
    def contracting(self) -> bool:
        d = self.differences
        return all(later < earlier for earlier, later in zip(d, d[1:]))

    @property
    def growth_ratios(self) -> list:
        """max|term| ratio between consecutive rungs of the ladder."""
        return [b / a for a, b in zip(self.max_term, self.max_term[1:])]

    @property
    def term_ratios(self) -> dict:
        return {
            label: [abs(self.terms[i + 1][label] / self.terms[i][label])
                    for i in range(len(self.deltas) - 1)]
            for label in self.terms[0]
        }

    @property
    def oracle_rel_error(self) -> Optional[float]:
        if self.oracle is None:
            return None
        return abs(self.extrapolated - self.oracle) / abs(self.oracle)


def pole_cancellation_probe(kin: Kinematics, deltas: Sequence[float] = (0.1, 0.05, 0.025),
                            ctrl: SeriesControl = DEFAULT_CONTROL,
                            oracle_tol: Optional[float] = 1e-11) -> PoleProbe:
    """Four-term form at omega = 2 + delta: finite totals from divergent terms.

    The omega -> 2 limit is extrapolated from the ladder with Richardson
    steps applied to ``log(total)``; the log removes most of the curvature
    that ``total^(delta)`` inherits from the log-moments of the Feynman
    integrand.  The plain (linear-variable) extrapolation is kept as
    ``extrapolated_plain``.  Pass ``oracle_tol=None`` to skip the D=4 oracle.
    """
    deltas = [float(d) for d in deltas]
    if any(d <= 0 for d in deltas) or any(b >= a for a, b in zip(deltas, deltas[1:])):
        raise ValueError("deltas must be positive and strictly decreasing")
    totals, terms, max_term = [], [], []
    for d in deltas:
        val = triangle_four_term(kin, 2.0 + d, ctrl)
        totals.append(val.value)
        contribs = {t.label: val.normalization * t.contribution for t in val.terms}
        terms.append(contribs)
        max_term.append(max(abs(c) for c in contribs.values()))
    if all(t > 0 for t in totals) or all(t < 0 for t in totals):
        sign = 1.0 if totals[0] > 0 else -1.0
        extrap = sign * math.exp(richardson(deltas, [math.log(abs(t)) for t in totals]))
    else:
        extrap = richardson(deltas, totals)
    plain = richardson(deltas, totals)
    probe = PoleProbe(kin, deltas, totals, terms, max_term, extrap, plain)
    if oracle_tol is not None:
        probe.oracle, probe.oracle_err = triangle_feynman_param(kin, oracle_tol)
    return probe


def match_normalization(kin: Kinematics, delta: float = 1e-4,
                        ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Oracle / closed form at D=4, the closed form taken as the symmetric
    average over omega = 2 +- delta (error O(delta^2)).

    Used once to fix :data:`EUCLIDEAN_NORMALIZATION`; divides it back out so
    the answer does not depend on the frozen value.
    """
    up = triangle_four_term(kin, 2.0 + delta, ctrl).value
    down = triangle_four_term(kin, 2.0 - delta, ctrl).value
    closed = 0.5 * (up + down) / EUCLIDEAN_NORMALIZATION
    oracle, _ = triangle_feynman_param(kin, 1e-12)
    return oracle / closed

"""
Gamma-family helpers, the Gauss series and the Appell F4 double series.

F4 is evaluated by summing its double series anti-diagonal by anti-diagonal
(all terms with ``m + n = k`` at once), which is the order in which the
series converges inside ``sqrt|x| + sqrt|y| < 1``.  Outside that region
:func:`f4_continue` maps the point to ``(x/y, 1/y)`` with the classical
two-term continuation formula.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import ConvergenceError, DegenerateParameterError, DomainError, PoleError

EPS = float(np.finfo(float).eps)
Number = Union[float, complex]


def _is_nonpositive_integer(z: float) -> bool:
    return z <= 0 and float(z).is_integer()


def gamma(z: float, label: Optional[str] = None) -> float:
    """Gamma function on the real line.

    Raises :class:`PoleError` at ``0, -1, -2, ...``.  ``label`` is put into
    the error message so callers can say which factor blew up.
    """
    if _is_nonpositive_integer(z):
        what = f"Gamma({label})" if label else "Gamma"
        raise PoleError(f"{what} has a pole at argument {z!r}")
    return math.gamma(z)


def rgamma(z: float) -> float:
    """Reciprocal gamma function, 1/Gamma(z); zero at the poles of Gamma."""
    if _is_nonpositive_integer(z):
        return 0.0
    return 1.0 / math.gamma(z)


def pochhammer(a: float, n: int) -> float:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), by direct product."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    out = 1.0
    for k in range(n):
        out *= a + k
    return out


def real_power(base: float, exponent: float) -> float:
    """``base ** exponent`` restricted to real results.

    A negative base is only accepted with an integer exponent; anything else
    would need a branch choice and raises :class:`DomainError`.
    """
    if base > 0:
        return base ** exponent
    if base == 0:
        if exponent > 0:
            return 0.0
        if exponent == 0:
            return 1.0
        raise DomainError(f"0 ** {exponent!r} is infinite")
    if float(exponent).is_integer():
        return base ** int(exponent)
    raise DomainError(
        f"({base!r}) ** {exponent!r} is complex; pass an explicit branch"
    )


def neg_power(w: float, s: float, branch: Optional[int] = None) -> Number:
    """``(-w) ** (-s)`` as it appears in the continuation formula.

    With ``branch=None`` the result must be real (see :func:`real_power`).
    With ``branch=+1`` (``w + i0``) or ``branch=-1`` (``w - i0``) a positive
    ``w`` gives ``w**(-s) * exp(+-i pi s)``.
    """
    if branch is None or w < 0:
        return real_power(-w, -s)
    if branch not in (1, -1):
        raise ValueError("branch must be None, +1 or -1")
    return w ** (-s) * cmath.exp(1j * math.pi * s * branch)


@dataclass(frozen=True)
class F4Params:
    """Parameters (a, b; c1, c2) of F4(a, b; c1, c2; x, y)."""

    a: float
    b: float
    c1: float
    c2: float

    def __post_init__(self):
        for name in ("c1", "c2"):
            if _is_nonpositive_integer(getattr(self, name)):
                raise PoleError(f"{name}={getattr(self, name)!r} is a non-positive integer")

    def swapped(self) -> "F4Params":
        return F4Params(self.b, self.a, self.c1, self.c2)

    def same_function(self, other: "F4Params", rtol: float = 1e-12) -> bool:
        """True when both describe the same F4 (which is symmetric in a, b)."""

        def close(u, v):
            return abs(u - v) <= rtol * max(1.0, abs(u), abs(v))

        if not (close(self.c1, other.c1) and close(self.c2, other.c2)):
            return False
        return (close(self.a, other.a) and close(self.b, other.b)) or (
            close(self.a, other.b) and close(self.b, other.a)
        )

    def as_tuple(self):
        return (self.a, self.b, self.c1, self.c2)


@dataclass(frozen=True)
class Point2:
    """Evaluation point (x, y) of a two-variable series."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x!r}, {self.y!r})")

    @property
    def radius(self) -> float:
        """sqrt|x| + sqrt|y|; F4 converges when this is below one."""
        return math.sqrt(abs(self.x)) + math.sqrt(abs(self.y))


@dataclass(frozen=True)
class SeriesControl:
    """Truncation control: relative tolerance and per-index term budget."""

    tol: float = 1e-15
    max_terms: int = 4000

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")


DEFAULT_CONTROL = SeriesControl()


@dataclass
class SeriesResult:
    """A series value with its error estimate and how far the sum went."""

    value: Number
    err: float
    terms_used: int
    method: str = "series"


def _stop_rule(history, total, tol):
    # three consecutive contributions below tol * |partial sum|
    if len(history) < 3:
        return False
    bound = tol * abs(total)
    return all(h <= bound for h in history[-3:])


def gauss_2f1(a: float, b: float, c: float, x: float,
              ctrl: SeriesControl = DEFAULT_CONTROL) -> SeriesResult:
    """Power series of 2F1(a, b; c; x) for ``|x| < 1``."""
    if _is_nonpositive_integer(c):
        raise PoleError(f"c={c!r} is a non-positive integer")
    if not abs(x) < 1:
        raise DomainError(f"2F1 power series needs |x| < 1, got {x!r}")
    term = 1.0
    total = 1.0
    abs_total = 1.0
    history = [1.0]
    for n in range(ctrl.max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * x
        total += term
        abs_total += abs(term)
        history.append(abs(term))
        if _stop_rule(history, total, ctrl.tol) or (term == 0.0 and history[-2] == 0.0):
            rho = abs(x)
            tail = abs(term) * rho / (1.0 - rho) if term else 0.0
            err = tail + 2 * (n + 2) * EPS * abs_total
            return SeriesResult(total, err, n + 2)
    raise ConvergenceError(f"2F1 series not converged after {ctrl.max_terms} terms")


def f4_series(p: F4Params, pt: Point2,
              ctrl: SeriesControl = DEFAULT_CONTROL) -> SeriesResult:
    r"""Appell F4 by its double series.

    .. math::
        F_4 = \sum_{m,n} \frac{(a)_{m+n} (b)_{m+n}}{(c_1)_m (c_2)_n m! n!} x^m y^n

    Summation runs over anti-diagonals ``k = m + n``; it stops once three
    consecutive anti-diagonals (absolute sums) fall below ``tol * |S|``.

    Returns
    -------
    SeriesResult
        ``err`` is a tail estimate plus a rounding bound;
        ``terms_used`` is the number of anti-diagonals summed.
    """
    x, y = pt.x, pt.y
    if not pt.radius < 1:
        raise DomainError(
            f"F4 series needs sqrt|x|+sqrt|y| < 1, got {pt.radius:.6g} at ({x!r}, {y!r})"
        )
    a, b, c1, c2 = p.as_tuple()
    diag = np.array([1.0])
    total = 1.0
    history = [1.0]
    rounding = 1.0
    rho_inf = pt.radius ** 2
    for k in range(ctrl.max_terms):
        m = np.arange(k + 1)
        common = (a + k) * (b + k)
        step_y = diag * (common * y) / ((c2 + k - m) * (k - m + 1))
        step_x = diag[-1] * (common * x) / ((c1 + k) * (k + 1))
        diag = np.append(step_y, step_x)
        total += diag.sum()
        size = float(np.abs(diag).sum())
        history.append(size)
        rounding += (k + 2) * size
        if _stop_rule(history, total, ctrl.tol) or (
            size == 0.0 and history[-2] == 0.0 and history[-3] == 0.0
        ):
            prev = history[-2]
            rho = max(rho_inf, size / prev if prev > 0 else 0.0)
            rho = min(rho, 0.999)
            tail = size * rho / (1.0 - rho)
            err = float(tail + 3 * EPS * rounding)
            return SeriesResult(float(total), err, k + 2)
    raise ConvergenceError(f"F4 series not converged after {ctrl.max_terms} anti-diagonals")


@dataclass(frozen=True)
class ContinuationTerm:
    """One piece ``coeff * (-y)**(-exponent) * F4(params; x/y, 1/y)``."""

    coeff: float
    exponent: float
    params: F4Params


def continuation_terms(p: F4Params) -> tuple:
    """Gamma prefactors, powers and shifted parameters of the continuation.

    F4(a,b;c1,c2; x,y) equals the sum over the two returned pieces of
    ``coeff * (-y)**(-exponent) * F4(params; x/y, 1/y)``.
    """
    a, b, c1, c2 = p.as_tuple()
    if float(b - a).is_integer():
        raise DegenerateParameterError(
            f"b - a = {b - a!r} is an integer: logarithmic case not supported"
        )
    g = gamma(c2, "c2")
    first = ContinuationTerm(
        g * gamma(b - a, "b-a") * rgamma(b) * rgamma(c2 - a),
        a,
        F4Params(a, a + 1 - c2, c1, a + 1 - b),
    )
    second = ContinuationTerm(
        g * gamma(a - b, "a-b") * rgamma(a) * rgamma(c2 - b),
        b,
        F4Params(b + 1 - c2, b, c1, b + 1 - a),
    )
    return first, second


def f4_continue(p: F4Params, pt: Point2, ctrl: SeriesControl = DEFAULT_CONTROL,
                branch: Optional[int] = None) -> SeriesResult:
    """F4 at (x, y) through its continuation to (x/y, 1/y).

    For ``y < 0`` the result is real.  For ``y > 0`` the powers ``(-y)**(-a)``
    need a side of the cut: ``branch=+1`` means ``y + i0`` and ``-1`` means
    ``y - i0``; the return value is then complex.  Without a branch a positive
    ``y`` with non-integer exponents raises :class:`DomainError`.
    """
    x, y = pt.x, pt.y
    if y == 0:
        raise DomainError("continuation needs y != 0")
    inner = Point2(x / y, 1.0 / y)
    if not inner.radius < 1:
        raise DomainError(
            f"continued point ({inner.x:.6g}, {inner.y:.6g}) is outside the F4 domain"
        )
    value: Number = 0.0
    err = 0.0
    used = 0
    for piece in continuation_terms(p):
        if piece.coeff == 0.0:
            continue
        scale = piece.coeff * neg_power(y, piece.exponent, branch)
        res = f4_series(piece.params, inner, ctrl)
        value += scale * res.value
        err += abs(scale) * res.err
        used = max(used, res.terms_used)
    return SeriesResult(value, err, used, method="continued")

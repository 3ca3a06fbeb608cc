"""
Brute-force reference values.

* :func:`triangle_feynman_param` integrates the D=4 Euclidean massless
  triangle over its Feynman parameters.
* :func:`f4_raw` sums the F4 double series term by term in extended precision.

Neither routine shares code with the closed forms they are used to check.

The Feynman-parameter integral is

    I = pi^2 * Int_{simplex} dx1 dx2 / (x1 x2 p2 + x1 x3 q2 + x2 x3 r2),

which has integrable 1/rho singularities at the three corners.  The simplex
is split into the three sectors where one parameter is largest; inside each
the other two are scaled by the largest, and a second split by which of
those two is larger turns every piece into a smooth integrand on the unit
square:

    f(t, s) = 1 / ((1 + t + t s) (M1 + s M2 + t s M3))

with (M1, M2, M3) running over the six orderings of (p2, q2, r2).
"""

from __future__ import annotations

import heapq
import itertools
import math

import mpmath
import numpy as np

from .errors import QuadratureError
from .special_functions import F4Params, Point2

# 15-point Kronrod rule with its embedded 7-point Gauss rule on [-1, 1]
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
KRONROD_W = np.concatenate([_WK[:-1], _WK[::-1]])
GAUSS_IDX = np.array([1, 3, 5, 7, 9, 11, 13])
GAUSS_W = np.concatenate([_WG[:-1], _WG[::-1]])


def _rule(f, u0, u1, v0, v1):
    hu = 0.5 * (u1 - u0)
    hv = 0.5 * (v1 - v0)
    u = u0 + hu * (NODES + 1.0)
    v = v0 + hv * (NODES + 1.0)
    vals = np.broadcast_to(f(u[:, None], v[None, :]), (NODES.size, NODES.size))
    kron = hu * hv * (KRONROD_W @ vals @ KRONROD_W)
    sub = vals[np.ix_(GAUSS_IDX, GAUSS_IDX)]
    gauss = hu * hv * (GAUSS_W @ sub @ GAUSS_W)
    return kron, abs(kron - gauss)


def adaptive_square(f, rel_tol=1e-10, abs_tol=0.0, max_regions=4000):
    """Adaptive tensor Gauss-Kronrod cubature of ``f(u, v)`` over [0, 1]^2.

    The worst region (largest error estimate) is split into four until the
    summed error is below ``max(abs_tol, rel_tol * |integral|)``.

    Returns
    -------
    value, err, n_regions
    """
    counter = itertools.count()
    val, err = _rule(f, 0.0, 1.0, 0.0, 1.0)
    heap = [(-err, next(counter), (0.0, 1.0, 0.0, 1.0), val)]
    total_err = err
    while True:
        total = math.fsum(item[3] for item in heap)
        if total_err <= max(abs_tol, rel_tol * abs(total)):
            return total, total_err, len(heap)
        if len(heap) >= max_regions:
            raise QuadratureError(
                f"cubature stopped at {len(heap)} regions with error {total_err:.3g}"
            )
        neg_err, _, (u0, u1, v0, v1), _ = heapq.heappop(heap)
        um = 0.5 * (u0 + u1)
        vm = 0.5 * (v0 + v1)
        for box in ((u0, um, v0, vm), (um, u1, v0, vm), (u0, um, vm, v1), (um, u1, vm, v1)):
            bval, berr = _rule(f, *box)
            heapq.heappush(heap, (-berr, next(counter), box, bval))
        total_err = math.fsum(-item[0] for item in heap)


def _sector_integrand(m1, m2, m3):
    def f(t, s):
        return 1.0 / ((1.0 + t + t * s) * (m1 + s * m2 + t * s * m3))

    return f


def triangle_feynman_param(kin, quad_tol: float = 1e-10, max_regions: int = 4000):
    """D=4 Euclidean triangle integral by Feynman-parameter cubature.

    Parameters
    ----------
    kin : Kinematics or tuple
        Squared momenta ``(p2, q2, r2)``, all positive.
    quad_tol : float
        Relative tolerance asked of every sector.

    Returns
    -------
    (value, err) with the ``pi^2`` included.
    """
    p2, q2, r2 = _squares(kin)
    if not quad_tol > 0:
        raise ValueError("quad_tol must be positive")
    values, errors = [], []
    # each sector is refined on its own so the result is a permutation-symmetric
    # multiset of identical numbers, then summed exactly with fsum
    for m1, m2, m3 in sorted(itertools.permutations((p2, q2, r2))):
        val, err, _ = adaptive_square(_sector_integrand(m1, m2, m3), quad_tol,
                                      max_regions=max_regions)
        values.append(val)
        errors.append(err)
    norm = math.pi ** 2
    return norm * math.fsum(values), norm * math.fsum(errors)


def _squares(kin):
    if hasattr(kin, "p2"):
        p2, q2, r2 = kin.p2, kin.q2, kin.r2
    else:
        p2, q2, r2 = (float(v) for v in kin)
    if not (p2 > 0 and q2 > 0 and r2 > 0):
        raise ValueError("Euclidean kinematics need p2, q2, r2 > 0")
    return p2, q2, r2


def f4_raw(p: F4Params, pt: Point2, terms: int = 200, dps: int = 40) -> float:
    """Plain double sum of F4 over ``0 <= m, n < terms`` at ``dps`` digits."""
    if terms < 1:
        raise ValueError("terms must be positive")
    with mpmath.workdps(dps):
        a, b, c1, c2 = (mpmath.mpf(v) for v in p.as_tuple())
        x, y = mpmath.mpf(pt.x), mpmath.mpf(pt.y)
        top = [mpmath.rf(a, k) * mpmath.rf(b, k) for k in range(2 * terms - 1)]
        left = [x ** m / (mpmath.rf(c1, m) * mpmath.factorial(m)) for m in range(terms)]
        right = [y ** n / (mpmath.rf(c2, n) * mpmath.factorial(n)) for n in range(terms)]
        total = mpmath.mpf(0)
        for m in range(terms):
            for n in range(terms):
                term = top[m + n] * left[m] * right[n]
                if abs(term) > 1e300:
                    raise OverflowError(f"F4 term ({m}, {n}) exceeds 1e300; point diverges")
                total += term
        return float(total)

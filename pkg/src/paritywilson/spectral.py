"""Difference-equation eigenvalue problems for the boost decomposition.

The master three-point functional equation in the invariant W (with scalar
parameters B and M) quantizes ell_1 = 2n+1 when its solution, a prefactor
exp(i*pi*sqrt(W+B+1/4)) times a polynomial, is required to be pole-free.
This module builds the eigenpairs exactly for the two solved parameter
regimes (B = M = 0, and M = 0 with free B), evaluates residuals of the
master equation and of its z-space reduction, constructs second solutions
on unit lattices by reduction of order, and runs the exploratory
least-squares eigenvalue scan for M != 0.

Square roots always take the principal nonnegative real branch; arguments
with negative radicand are rejected (DomainPole), never continued.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

import numpy as np

from .errors import DomainPole, IllConditioned, LatticePole
from .numcore import BParamPolynomial, RationalPolynomial, poly_eval
from .wilson import (
    CASE_A,
    CASE_B,
    WilsonFamily,
    alternating_reflect,
    monic_from_recurrence,
)

try:  # mpmath is used for high-precision residual evaluation
    import mpmath as mp
except ImportError:  # pragma: no cover
    mp = None


def eigenvalue(n: int) -> tuple[int, Fraction]:
    """(ell_1, alpha) for the n-th eigenpair: ell_1 = 2n+1 and
    alpha = (ell_1^2 - 1)/3, both exact."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    ell1 = 2 * n + 1
    return ell1, Fraction(ell1 * ell1 - 1, 3)


def g_polynomial(case: str, n: int, b=None):
    """Polynomial part of the n-th z-space eigenfunction, in u = z^2.

    Case A: g_1 = 1, g_2 = z^2 + 3/4, ... (g_n pairs with the monic family
    member of degree n-1 at reflected argument); n = 0 is the rational
    exception 1/(z^2 - 1/4) and returns None.
    Case B: degree n; symbolic in B when b is None.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if case == CASE_A:
        if n == 0:
            return None
        fam = WilsonFamily.case_a()
        poly = monic_from_recurrence(fam, n - 1)[n - 1]
        return alternating_reflect(poly, n - 1)
    fam = WilsonFamily.case_b()
    poly = alternating_reflect(monic_from_recurrence(fam, n)[n], n)
    if b is None:
        return poly
    return poly.substitute_b(b if isinstance(b, Fraction) else Fraction(b))


def g_callable(case: str, n: int, b=None) -> Callable:
    """The n-th z-space eigenfunction as a callable of z (exact for exact z)."""
    poly = g_polynomial(case, n, b)
    if poly is None:  # Case A n=0 rational exception
        def g0(z):
            den = z * z - Fraction(1, 4) if isinstance(z, (int, Fraction)) else z * z - 0.25
            if not den:
                raise DomainPole("z = +-1/2 is a pole of the n=0 eigenfunction")
            return 1 / den
        return g0
    return lambda z: poly_eval(poly, z * z)


@dataclass(frozen=True)
class EigenpairRecord:
    """One eigenpair of the master equation at M = 0.

    ``poly`` holds the polynomial part of f in the invariant W (None for
    the Case A n=0 record, whose z-space solution is the rational exception
    and whose f is the bare prefactor).  ``prefactor`` is a descriptor of
    the common exponential factor.
    """

    n: int
    case: str
    b: Fraction | None
    ell1: int
    alpha: Fraction
    poly: RationalPolynomial | BParamPolynomial | None
    prefactor: str
    rational_g: bool = False

    def prefactor_shift(self) -> Fraction:
        """f's prefactor is exp(i*pi*sqrt(W + shift))."""
        if self.case == CASE_A:
            return Fraction(1, 4)
        if self.b is None:
            raise ValueError("symbolic record has no numeric prefactor shift")
        return self.b + Fraction(1, 4)

    def as_callable(self, high_precision: bool = False) -> Callable:
        """f as a function of W: exp(i*pi*sqrt(W+shift)) times the
        polynomial part.  With high_precision=True all arithmetic runs in
        mpmath at the caller's working precision (pass W as mpf)."""
        shift = self.prefactor_shift()
        coeffs = None if self.poly is None else self.poly.coeffs
        if high_precision:
            if mp is None:  # pragma: no cover
                raise RuntimeError("mpmath is not available")
            shift_mp = mp.mpf(shift.numerator) / shift.denominator
            cs = None if coeffs is None else [mp.mpf(c.numerator) / c.denominator for c in coeffs]

            def f_mp(w):
                rad = w + shift_mp
                if rad < 0:
                    raise DomainPole("negative radicand in prefactor")
                val = mp.e ** (1j * mp.pi * mp.sqrt(rad))
                if cs is None:
                    return val
                acc = mp.mpf(0)
                for c in reversed(cs):
                    acc = acc * w + c
                return val * acc
            return f_mp

        shift_f = float(shift)
        cs_f = None if coeffs is None else [float(c) for c in coeffs]

        def f(w):
            rad = w + shift_f
            if rad < 0:
                raise DomainPole("negative radicand in prefactor")
            val = cmath.exp(1j * math.pi * math.sqrt(rad))
            if cs_f is None:
                return val
            acc = 0.0
            for c in reversed(cs_f):
                acc = acc * w + c
            return val * acc
        return f


def eigenfunction_case_a(n: int) -> EigenpairRecord:
    """Case A eigenpair: f_0 is the bare prefactor; for n >= 1 the
    polynomial part is W times a monic degree n-1 polynomial in W."""
    ell1, alpha = eigenvalue(n)
    if n == 0:
        return EigenpairRecord(0, CASE_A, None, ell1, alpha, None,
                               "exp(i*pi*sqrt(W+1/4))", rational_g=True)
    g = g_polynomial(CASE_A, n)
    poly = g.shift_variable(Fraction(1, 4)) * RationalPolynomial([0, 1])
    return EigenpairRecord(n, CASE_A, None, ell1, alpha, poly, "exp(i*pi*sqrt(W+1/4))")


def eigenfunction_case_b(n: int, b=None) -> EigenpairRecord:
    """Case B eigenpair; b=None keeps the coefficients symbolic in B.

    Built symbolically and substituted exactly, so integer sqrt(B+1)
    (e.g. B = 0) yields the smooth limiting polynomial rather than an
    error; degeneracy is enforced where norms/prefactor normalizations
    are actually needed.
    """
    ell1, alpha = eigenvalue(n)
    g = g_polynomial(CASE_B, n)  # symbolic, in u = z^2
    inner = BParamPolynomial([RationalPolynomial([Fraction(1, 4), 1]),
                              RationalPolynomial([1])])  # u = W + (B + 1/4)
    poly = g.compose(inner)
    if b is None:
        return EigenpairRecord(n, CASE_B, None, ell1, alpha, poly,
                               "exp(i*pi*sqrt(W+B+1/4))")
    bq = b if isinstance(b, Fraction) else Fraction(b)
    if bq <= -1:
        raise DomainPole("Case B needs B > -1")
    return EigenpairRecord(n, CASE_B, bq, ell1, alpha, poly.substitute_b(bq),
                           "exp(i*pi*sqrt(W+B+1/4))")


def eigenfunction(case: str, n: int, b=None) -> EigenpairRecord:
    return eigenfunction_case_a(n) if case == CASE_A else eigenfunction_case_b(n, b)


# ---------------------------------------------------------------------------
# residual evaluators
# ---------------------------------------------------------------------------

def _as_g_values(g, points, b):
    if isinstance(g, BParamPolynomial):
        if b is None:
            raise ValueError("BParamPolynomial residual needs a numeric b")
        g = g.substitute_b(b if isinstance(b, Fraction) else Fraction(b))
    if isinstance(g, RationalPolynomial):
        return [poly_eval(g, z * z) for z in points]
    return [g(z) for z in points]


def residual_g(case: str, g, ell1, z, b=None):
    """LHS minus RHS of the z-space three-point relation at z.

    ``g`` may be a polynomial in z^2, a BParamPolynomial (with numeric b
    supplied), or a callable of z.  Exact for exact inputs.  The Case B
    form divides by 2z, so z = 0 raises DomainPole.
    """
    gm, g0, gp = _as_g_values(g, (z - 1, z, z + 1), b)
    if case == CASE_A:
        lhs = ((2 * z + 1) * (2 * z + 3) ** 2 * gp
               - 4 * z * (2 * z - 1) * (2 * z + 1) * g0
               + (2 * z - 1) * (2 * z - 3) ** 2 * gm)
        return lhs - 8 * z * (ell1 * ell1 - 1) * g0
    if not z:
        raise DomainPole("the Case B relation divides by 2z; z = 0 is excluded")
    if b is None:
        raise ValueError("Case B residual needs a numeric b")
    quarter = Fraction(1, 4) if isinstance(z, (int, Fraction)) and isinstance(b, (int, Fraction)) else 0.25
    threequarter = 3 * quarter
    d = z * z - b - quarter
    e = 3 * z * z - b - threequarter
    lhs = (2 * d * g0
           - (e + 2 * z * d) / (2 * z) * gp
           + (e - 2 * z * d) / (2 * z) * gm)
    return lhs - (1 - ell1 * ell1) * g0


def _numeric_ctx(*values):
    if mp is not None and any(isinstance(v, (mp.mpf, mp.mpc)) for v in values):
        return mp.sqrt
    return math.sqrt


def residual_master(f: Callable, b, m, ell1, w):
    """LHS minus RHS of the master three-point equation in W at (B, M, W) =
    (b, m, w) with eigenvalue parameter ell1.

    ``f`` is a callable of W evaluated at W and the two shifted arguments
    W + 1 +- sqrt(1+4B+4W).  Works in float or mpmath arithmetic according
    to the input types.  Raises DomainPole when B+W = 0 or the shift
    radicand is nonpositive.
    """
    if b + w == 0:
        raise DomainPole("B + W = 0 is a pole of the M-coupling term")
    rad = 1 + 4 * b + 4 * w
    if rad <= 0:
        raise DomainPole("nonpositive radicand 1 + 4B + 4W")
    sqrt = _numeric_ctx(b, m, ell1, w)
    r = sqrt(rad)
    coupling = m / (b + w)
    c_plus = 2 * b + 4 * w + (w - coupling) * (r - 1)
    c_minus = -2 * b - 4 * w + (w - coupling) * (r + 1)
    lhs = (2 * (w + coupling) * f(w)
           + (c_plus * f(w + 1 + r) + c_minus * f(w + 1 - r)) / r)
    return lhs - (1 - ell1 * ell1) * f(w)


def default_w_grid(b: float, count: int = 10, step: float = 0.5) -> tuple[float, ...]:
    """W grid keeping every shifted argument on the principal branch:
    sqrt(W+B+1/4) >= 1 requires W >= 3/4 - B, so the grid starts at
    max(1/2, 3/4 - B + 1/2)."""
    start = max(0.5, 0.75 - b + 0.5)
    return tuple(start + step * k for k in range(count))


# ---------------------------------------------------------------------------
# second solutions by reduction of order (Case A)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeFunction:
    """Values on the unit lattice anchor, anchor+1, ..."""

    anchor: Union[Fraction, float]
    values: tuple

    @property
    def step(self) -> int:
        return 1

    def points(self):
        return tuple(self.anchor + k for k in range(len(self.values)))

    def __call__(self, z):
        k = z - self.anchor
        kk = int(k)
        if k != kk or not (0 <= kk < len(self.values)):
            raise KeyError(f"{z} is not on the stored lattice")
        return self.values[kk]


def second_solution(n: int, z0=Fraction(2), length: int = 8):
    """Second, non-polynomial solution of the Case A z-space relation at
    eigenvalue 2n+1, by reduction of order on the lattice z0, z0+1, ...

    The free additive constant and overall scale are fixed by u(z0) = 0 and
    a unit numerator in the first-order step, so h = g*u is determined only
    up to an admixture of g; tests compare residuals and Casoratians.
    Returns (u, h) as LatticeFunctions, exact when z0 is rational.
    """
    if length < 4:
        raise ValueError("length must be at least 4")
    z0 = Fraction(z0) if isinstance(z0, (int, Fraction, str)) else z0
    g = g_callable(CASE_A, n)
    exact = isinstance(z0, Fraction)
    pts = [z0 + k for k in range(length)]
    for x in pts + [z0 - 1]:
        for factor in (2 * x - 3, 2 * x - 1, 2 * x + 1):
            if not factor:
                raise LatticePole(f"denominator factor vanishes at lattice point {x}")
    gvals = {}
    for x in [z0 - 1] + pts:
        if n == 0 and (x * x == Fraction(1, 4) if exact else abs(float(x * x) - 0.25) < 1e-12):
            raise LatticePole(f"rational eigenfunction pole at lattice point {x}")
        gx = g(x)
        if not gx:
            raise LatticePole(f"base solution vanishes at lattice point {x}")
        gvals[x] = gx
    one = Fraction(1) if exact else 1.0
    uvals = [0 * one]
    for k in range(1, length):
        x = z0 + k
        step = one / ((2 * x - 3) ** 2 * (2 * x - 1) ** 3 * (2 * x + 1) ** 2
                      * gvals[x - 1] * gvals[x])
        uvals.append(uvals[-1] + step)
    hvals = [gvals[z0 + k] * uvals[k] for k in range(length)]
    return (LatticeFunction(z0, tuple(uvals)), LatticeFunction(z0, tuple(hvals)))


def casoratian(n: int, h: LatticeFunction, z):
    """g_n(z) h(z+1) - g_n(z+1) h(z): nonzero certifies independence."""
    g = g_callable(CASE_A, n)
    return g(z) * h(z + 1) - g(z + 1) * h(z)


# ---------------------------------------------------------------------------
# conjecture scan: least-squares eigenvalue recovery for the full equation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScanReport:
    b: float
    m: float
    n: int
    degree: int
    ell1_sq: float
    residual: float
    iterations: int
    converged: bool
    grid: tuple


def conjecture_scan(b: float, m: float, n: int, degree: int,
                    grid: Sequence[float] | None = None,
                    max_iter: int = 200, tol: float = 1e-14) -> ScanReport:
    """Fit exp(i*pi*sqrt(W+B+1/4)) times a degree-``degree`` polynomial in W
    to the master equation over a W grid, minimizing jointly over the
    coefficients and ell_1^2 by alternating linear solves (the equation is
    linear in each separately).

    For M = 0 this must recover ell_1^2 = (2n+1)^2; for M != 0 the report
    is exploratory output.
    """
    if degree < n:
        raise ValueError("degree must be at least n")
    ws = np.asarray(grid if grid is not None else default_w_grid(b, count=20), dtype=float)
    if ws.size < degree + 2:
        raise IllConditioned("grid has fewer points than unknowns")
    shift = b + 0.25

    def pref(w):
        return np.exp(1j * np.pi * np.sqrt(w + shift))

    rad = 1.0 + 4.0 * b + 4.0 * ws
    if np.any(rad <= 0) or np.any(ws + b == 0) or np.any(ws + shift < 0):
        raise DomainPole("grid leaves the admissible domain")
    r = np.sqrt(rad)
    wp, wm = ws + 1 + r, ws + 1 - r
    if np.any(wp + shift < 0) or np.any(wm + shift < 0):
        raise DomainPole("shifted argument leaves the principal branch domain")
    coupling = m / (b + ws)
    c_plus = 2 * b + 4 * ws + (ws - coupling) * (r - 1)
    c_minus = -2 * b - 4 * ws + (ws - coupling) * (r + 1)

    powers = np.arange(degree + 1)
    fmat = pref(ws)[:, None] * ws[:, None] ** powers[None, :]
    lmat = (2 * (ws + coupling)[:, None] * fmat
            + ((c_plus * pref(wp))[:, None] * wp[:, None] ** powers[None, :]
               + (c_minus * pref(wm))[:, None] * wm[:, None] ** powers[None, :]) / r[:, None])
    scale = np.max(np.abs(fmat), axis=0)
    if np.any(scale == 0) or not np.all(np.isfinite(lmat)):
        raise IllConditioned("degenerate basis on the scan grid")
    fmat = fmat / scale
    lmat = lmat / scale

    mu = 1.0 - float((2 * n + 1) ** 2)  # mu = 1 - ell1^2
    coeff = None
    iters = 0
    converged = False
    for iters in range(1, max_iter + 1):
        _, svals, vh = np.linalg.svd(lmat - mu * fmat)
        coeff = vh[-1].conj()
        fa = fmat @ coeff
        la = lmat @ coeff
        denom = np.vdot(fa, fa).real
        if denom < 1e-300:
            raise IllConditioned("normal equations singular in the mu update")
        mu_new = (np.vdot(fa, la).real) / denom
        if abs(mu_new - mu) <= tol * (1.0 + abs(mu)):
            mu = mu_new
            converged = True
            break
        mu = mu_new
    resid = float(np.linalg.norm((lmat - mu * fmat) @ coeff) / math.sqrt(ws.size))
    return ScanReport(b=b, m=m, n=n, degree=degree, ell1_sq=1.0 - mu,
                      residual=resid, iterations=iters, converged=converged,
                      grid=tuple(ws.tolist()))

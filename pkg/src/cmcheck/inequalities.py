"""Inequality scans and the exact polynomial algebra behind the difference bound.

Two inequalities are scanned over log grids: the trigamma bound
psi'(t) < e^(1/t) - 1 (margin h(t) - 1) and the Bessel lower bound
I_1(t) > (t/2)^3 / (1 - e^(-(t/2)^2)).  The polynomial family f_i(t) that
drives the difference-derivative bound

    (-1)^i [h(t+1) - h(t)]^(i) < i! f_i(t) / (12 t^(i+3) (t+1)^(i+3))

is implemented in four algebraically equivalent displayed forms, evaluated
in exact rational arithmetic whenever t is exact, so form equivalence and
negativity can be checked with zero tolerance.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from mpmath import mp

from .cmdeg import LogGrid
from .laplace import u_ratio
from .laurent import h_derivative, h_function
from .specfun import DEFAULT_PRECISION, bessel_i, polygamma, to_mpf

FPOLY_FORMS = ("A", "B", "C", "D")

DEFAULT_TRIGAMMA_GRID = LogGrid(1e-2, 100, 500)
DEFAULT_BESSEL_GRID = LogGrid(1e-2, 50, 500)
DEFAULT_NEGATIVITY_GRID = LogGrid(1e-2, 1e3, 60)


def fpoly_validated(i, form):
    """Whether the chosen form is within its validated range.

    Forms C and D agree with A only for i >= 1; at i = 0 both reduce to
    -20 t^3 - 2, which is not f_0 = -2.  Their i = 0 values are still
    returned, marked out of range.
    """
    return form in ("A", "B") or i >= 1


def _convert(c, exact):
    if exact:
        return c
    if isinstance(c, Fraction):
        return mp.mpf(c.numerator) / mp.mpf(c.denominator)
    return mp.mpf(c)


def _fpoly_a(i, t):
    u = t + 1
    return (
        6 * (i + 1) * t * u * (u ** (i + 2) + t ** (i + 2))
        - 12 * t * t * u * u * (u ** (i + 1) - t ** (i + 1))
        - (i + 1) * (i + 2) * (u ** (i + 3) - t ** (i + 3))
    )


def _fpoly_b(i, t):
    u = t + 1
    s1 = sum(comb(i + 2, l) * t ** l for l in range(i + 3))
    s2 = sum(comb(i + 1, l) * t ** l for l in range(i + 1))
    s3 = sum(comb(i + 3, l) * t ** l for l in range(i + 3))
    return (
        6 * (i + 1) * t * u * (s1 + t ** (i + 2))
        - 12 * t * t * u * u * s2
        - (i + 1) * (i + 2) * s3
    )


def _fpoly_head(i, t, exact):
    c1 = _convert(Fraction((i - 1) * (i + 4) * (i + 5), 2), exact)
    c2 = _convert(Fraction((2 - i) * (i + 3), 3), exact)
    return c1 * (c2 * t - i) * t * t - i * (i + 1) * (i + 5) * t - (i + 1) * (i + 2)


def _fpoly_c(i, t, exact):
    total = _fpoly_head(i, t, exact)
    for l in range(4, i + 1):
        bracket = (
            (i + 1) * (i + 2) * comb(i + 3, l)
            - 6 * (i + 1) * comb(i + 3, l - 1)
            + 12 * comb(i + 3, l - 2)
        )
        total -= bracket * t ** l
    return total


def _fpoly_d(i, t, exact):
    total = _fpoly_head(i, t, exact)
    acc = _convert(Fraction(0), exact)
    for l in range(4, i + 1):
        c = Fraction((i - l + 1) * (i - l + 2), l * (i - l + 5)) * comb(i + 3, l - 1)
        acc += _convert(c, exact) * t ** l
    return total - (i + 4) * (i + 5) * acc


def f_poly(i, t, form="A", prec=DEFAULT_PRECISION):
    """f_i(t) in one of its four displayed forms.

    A: factored powers of t and t+1.  B: the same with each power expanded
    by the binomial theorem.  C: collected powers with the bracketed
    l = 4..i sum.  D: the collected form with that sum rewritten over
    binomial coefficients.  All empty sums are nil.  Exact Fraction
    arithmetic when t is an int or Fraction, mpf otherwise; forms C and D
    are only validated against A for i >= 1 (see fpoly_validated).
    """
    if not isinstance(i, int) or i < 0:
        raise ValueError(f"i must be a nonnegative integer, got {i!r}")
    if form not in FPOLY_FORMS:
        raise ValueError(f"form must be one of {FPOLY_FORMS}, got {form!r}")
    exact = isinstance(t, int) and not isinstance(t, bool) or isinstance(t, Fraction)
    if exact:
        t = Fraction(t)
        if t <= 0:
            raise ValueError(f"t must be positive, got {t}")
        if form == "A":
            return _fpoly_a(i, t)
        if form == "B":
            return _fpoly_b(i, t)
        if form == "C":
            return _fpoly_c(i, t, True)
        return _fpoly_d(i, t, True)
    with prec.workdps():
        t = to_mpf(t)
        if t <= 0:
            raise ValueError(f"t must be positive, got {t}")
        if form == "A":
            return _fpoly_a(i, t)
        if form == "B":
            return _fpoly_b(i, t)
        if form == "C":
            return _fpoly_c(i, t, False)
        return _fpoly_d(i, t, False)


@dataclass(frozen=True)
class InequalityScanReport:
    """Grid scan of a strict inequality: minimum margin and its location."""

    inequality: str
    grid: LogGrid
    min_margin: object
    argmin_t: object
    passed: bool
    evaluations: int


def _scan(inequality, margin_fn, grid, prec):
    with prec.workdps():
        floor = prec.noise_floor
        best = mp.inf
        best_t = None
        count = 0
        for t in grid.values(prec):
            m = margin_fn(t)
            count += 1
            if m < best:
                best = m
                best_t = t
        return InequalityScanReport(
            inequality=inequality,
            grid=grid,
            min_margin=best,
            argmin_t=best_t,
            passed=bool(best > floor),
            evaluations=count,
        )


def check_ineq_trigamma(grid=DEFAULT_TRIGAMMA_GRID, prec=DEFAULT_PRECISION):
    """Scan psi'(t) < e^(1/t) - 1, i.e. margin e^(1/t) - 1 - psi'(t) > 0.

    The margin equals h(t) - 1, so positivity here restates h > 1; at large
    t it decays like 1/(24 t^4), still far above the noise floor on the
    default grid.
    """

    def margin(t):
        return mp.exp(1 / t) - 1 - polygamma(1, t, prec)

    return _scan("trigamma", margin, grid, prec)


def check_ineq_bessel(grid=DEFAULT_BESSEL_GRID, prec=DEFAULT_PRECISION):
    """Scan I_1(t) > (t/2)^3 / (1 - e^(-(t/2)^2)).

    The right side is (t/2) u/(1 - e^-u) at u = (t/2)^2, series-expanded
    below u = 1/4.  For small t both sides open t/2 + t^3/16 + O(t^5) and
    the margin is ~ t^7/18432, which is why the scan needs the extended
    working precision.
    """

    def margin(t):
        u = (t / 2) ** 2
        return bessel_i(1, t, prec) - (t / 2) * u_ratio(u, prec)

    return _scan("bessel", margin, grid, prec)


@dataclass(frozen=True)
class DifferenceBoundCheck:
    """One instance of the difference-derivative bound, both sides negative."""

    i: int
    t: object
    lhs: object
    rhs: object
    passed: bool


def check_difference_bound(i, t, prec=DEFAULT_PRECISION):
    """Check (-1)^i [h^(i)(t+1) - h^(i)(t)] < i! f_i(t) / (12 t^(i+3) (t+1)^(i+3)).

    The left side uses the h engines (h_function for i = 0); the right uses
    form A of f_i.  Passing requires the strict inequality to clear the
    noise floor and both sides to be negative, which is the recursion step
    that drives complete monotonicity of h.
    """
    if not isinstance(i, int) or i < 0:
        raise ValueError(f"i must be a nonnegative integer, got {i!r}")
    with prec.workdps():
        t = to_mpf(t)
        if t <= 0:
            raise ValueError(f"t must be positive, got {t}")
        if i == 0:
            lhs = h_function(t + 1, prec) - h_function(t, prec)
        else:
            lhs = (-1) ** i * (h_derivative(i, t + 1, prec) - h_derivative(i, t, prec))
        rhs = (
            mp.factorial(i)
            * f_poly(i, t, "A", prec)
            / (12 * t ** (i + 3) * (t + 1) ** (i + 3))
        )
        floor = prec.noise_floor
        passed = bool(rhs - lhs > floor and lhs < -floor and rhs < -floor)
        return DifferenceBoundCheck(i=i, t=t, lhs=lhs, rhs=rhs, passed=passed)

"""Sign-pattern scanning and bracketing of the completely monotonic degree.

A function f is completely monotonic when (-1)^n f^(n)(t) >= 0 for all n
and t > 0; its degree with respect to t is the largest r such that t^r f(t)
stays completely monotonic.  check_sign_pattern tests the alternating-sign
property on a finite logarithmic grid up to a finite order; the degree
estimator bisects on r between a pattern-pass and a pattern-fail, driven by
the termwise derivatives of t^r H_k(t).  A grid scan can only certify
failure (a witness) or survive it (no claim beyond the grid), so the result
is a bracket, never an attained value.
"""

from dataclasses import dataclass
from typing import Optional

from mpmath import mp

from .laurent import tail_scaled_derivatives
from .specfun import DEFAULT_PRECISION, NumericFailure, to_mpf


class BracketError(ValueError):
    """The supplied r-interval does not straddle a pattern pass/fail change."""


@dataclass(frozen=True)
class LogGrid:
    """Geometric grid of `points` values from t_min to t_max inclusive."""

    t_min: float
    t_max: float
    points: int

    def __post_init__(self):
        if not isinstance(self.points, int) or self.points < 2:
            raise ValueError(f"points must be an integer >= 2, got {self.points!r}")
        if not 0 < float(self.t_min) < float(self.t_max):
            raise ValueError(
                f"need 0 < t_min < t_max, got {self.t_min!r}, {self.t_max!r}"
            )

    def values(self, prec=DEFAULT_PRECISION):
        with prec.workdps():
            lo = to_mpf(self.t_min)
            hi = to_mpf(self.t_max)
            ratio = (hi / lo) ** (mp.mpf(1) / (self.points - 1))
            out = [lo]
            for _ in range(self.points - 2):
                out.append(out[-1] * ratio)
            out.append(hi)
            return tuple(out)


@dataclass(frozen=True)
class Violation:
    """First grid point where the alternating-sign pattern fails."""

    order: int
    t: object
    value: object


@dataclass(frozen=True)
class SignPatternReport:
    """Outcome of a sign-pattern scan.

    min_signed is the smallest (-1)^n f^(n)(t) seen over all evaluated
    points, with its location; the scan passes when no signed value drops
    below minus the noise floor.
    """

    grid: LogGrid
    max_order: int
    passed: bool
    violation: Optional[Violation]
    min_signed: object
    argmin_order: int
    argmin_t: object
    evaluations: int


def check_sign_pattern(derivative_oracle, grid, max_order, prec=DEFAULT_PRECISION):
    """Scan (-1)^n f^(n)(t) >= 0 for n = 0..max_order over the grid.

    derivative_oracle(n, t) must return f^(n)(t) as a real.  Orders run
    outermost and t ascends, so a reported violation carries the smallest
    failing order and, within it, the smallest failing t.  Oracle errors
    surface as NumericFailure tagged with the offending (n, t).
    """
    if not isinstance(max_order, int) or max_order < 0:
        raise ValueError(f"max_order must be a nonnegative integer, got {max_order!r}")
    with prec.workdps():
        floor = prec.noise_floor
        ts = grid.values(prec)
        min_signed = mp.inf
        arg_n = -1
        arg_t = None
        evals = 0
        for n in range(max_order + 1):
            sign = (-1) ** n
            for t in ts:
                try:
                    value = derivative_oracle(n, t)
                except NumericFailure:
                    raise
                except (ValueError, ArithmeticError) as exc:
                    raise NumericFailure(
                        "check_sign_pattern", f"oracle failed: {exc}", n=n, t=t
                    ) from exc
                evals += 1
                signed = sign * to_mpf(value)
                if signed < min_signed:
                    min_signed = signed
                    arg_n = n
                    arg_t = t
                if signed < -floor:
                    return SignPatternReport(
                        grid=grid,
                        max_order=max_order,
                        passed=False,
                        violation=Violation(order=n, t=t, value=value),
                        min_signed=min_signed,
                        argmin_order=arg_n,
                        argmin_t=arg_t,
                        evaluations=evals,
                    )
        return SignPatternReport(
            grid=grid,
            max_order=max_order,
            passed=True,
            violation=None,
            min_signed=min_signed,
            argmin_order=arg_n,
            argmin_t=arg_t,
            evaluations=evals,
        )


@dataclass(frozen=True)
class DegreeEstimate:
    """Bisection bracket [r_lo, r_hi]: pattern passes at r_lo, fails at r_hi."""

    k: int
    r_lo: object
    r_hi: object
    tol: object
    grid: LogGrid
    max_order: int
    bisections: int

    @property
    def width(self):
        return self.r_hi - self.r_lo


DEFAULT_DEGREE_GRID = LogGrid(1e-2, 1e6, 200)


def estimate_cm_degree(
    k,
    search=None,
    tol=None,
    grid=DEFAULT_DEGREE_GRID,
    max_order=6,
    prec=DEFAULT_PRECISION,
    scaled_derivative=None,
):
    """Bracket the completely monotonic degree of H_k by bisection on r.

    Scans the sign pattern of d^n/dt^n [t^r H_k(t)] on the grid; the search
    interval defaults to (k, k+2) and must straddle (pass at r_lo, fail at
    r_hi), else BracketError.  Bisection stops once r_hi - r_lo <= tol
    (default 1/32).  scaled_derivative(r, n, t, prec) may replace the H_k
    family to bracket other scaled functions with the same machinery.
    """
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"k must be a nonnegative integer, got {k!r}")
    with prec.workdps():
        if search is None:
            search = (k, k + 2)
        r_lo = to_mpf(search[0])
        r_hi = to_mpf(search[1])
        if not r_lo < r_hi:
            raise ValueError(f"need r_lo < r_hi, got {search!r}")
        tol = to_mpf(tol) if tol is not None else mp.mpf(1) / 32
        if tol <= 0:
            raise ValueError(f"tol must be positive, got {tol}")

        def passes(r):
            if scaled_derivative is not None:
                oracle = lambda n, t: scaled_derivative(r, n, t, prec)
            else:
                cache = {}

                def oracle(n, t, _cache=cache, _r=r):
                    vals = _cache.get(t)
                    if vals is None:
                        vals = tail_scaled_derivatives(k, _r, t, max_order, prec)
                        _cache[t] = vals
                    return vals[n]

            return check_sign_pattern(oracle, grid, max_order, prec).passed

        if not passes(r_lo):
            raise BracketError(
                f"sign pattern already fails at r_lo = {r_lo}; bracket invalid"
            )
        if passes(r_hi):
            raise BracketError(
                f"sign pattern still passes at r_hi = {r_hi}; bracket invalid"
            )
        steps = 0
        while r_hi - r_lo > tol:
            mid = (r_lo + r_hi) / 2
            if passes(mid):
                r_lo = mid
            else:
                r_hi = mid
            steps += 1
            if steps > 200:
                raise NumericFailure(
                    "estimate_cm_degree", "bisection failed to converge", k=k
                )
        return DegreeEstimate(
            k=k,
            r_lo=r_lo,
            r_hi=r_hi,
            tol=tol,
            grid=grid,
            max_order=max_order,
            bisections=steps,
        )

"""Laurent-tail calculus for the remainder of e^(1/z) past its principal part.

The remainder of order k is

    H_k(z) = e^(1/z) - sum_{m=0}^{k} z^-m / m! = sum_{m=k+1}^inf z^-m / m!,

always evaluated from the convergent tail on the right, never by the
subtraction on the left (which cancels catastrophically once z is large).
Derivatives and the scaled family d^n/dt^n [t^r H_k(t)] differentiate the
tail termwise:

    d^n/dt^n [t^r H_k(t)] = sum_{m>k} (1/m!) prod_{j=0}^{n-1} (r-m-j) t^(r-m-n),

with all orders up to a maximum accumulated in a single pass over m.
Also hosts h(t) = e^(1/t) - psi'(t) and its derivatives, the difference of
the two engines from specfun.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from mpmath import mp

from .specfun import (
    DEFAULT_PRECISION,
    NumericFailure,
    _SERIES_LIMIT,
    exp_recip_derivative,
    polygamma,
    to_mpf,
)


def _validate_order(k):
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"remainder order must be a nonnegative integer, got {k!r}")


def tail_scaled_derivatives(k, r, t, max_order, prec=DEFAULT_PRECISION):
    """All of d^n/dt^n [t^r H_k(t)], n = 0..max_order, in one pass over m.

    Term m contributes (t^-m / m!) prod_{j<n} (r-m-j) to order n before the
    common factor t^(r-n).  Summation continues past the term-magnitude
    peak near m ~ 1/t and past m > r + max_order (where every order has
    uniform sign), then stops once each order's latest term is below the
    relative threshold of its absolute partial sum.
    """
    _validate_order(k)
    if not isinstance(max_order, int) or max_order < 0:
        raise ValueError(f"max_order must be a nonnegative integer, got {max_order!r}")
    with prec.workdps():
        t = to_mpf(t)
        r = to_mpf(r)
        if t <= 0:
            raise ValueError(f"t must be positive, got {t}")
        invt = 1 / t
        sums = [mp.mpf(0) for _ in range(max_order + 1)]
        asums = [mp.mpf(0) for _ in range(max_order + 1)]
        last = [mp.inf for _ in range(max_order + 1)]
        stop = prec.series_stop
        # uniform signs need m > r + max_order; the relative stop additionally
        # needs the term ratio ~ 1/(t m) safely below 1, hence the 1.5/t margin
        m_min = k + 3 + max(max_order + int(mp.ceil(max(r, 0))), int(mp.ceil(1.5 * invt)))
        m = k + 1
        q = invt ** (k + 1) / mp.factorial(k + 1)
        while m < _SERIES_LIMIT:
            sums[0] += q
            asums[0] += q
            last[0] = q
            prod = mp.mpf(1)
            for n in range(1, max_order + 1):
                prod *= r - m - (n - 1)
                c = q * prod
                sums[n] += c
                asums[n] += abs(c)
                last[n] = abs(c)
            if m >= m_min and all(
                last[n] < stop * asums[n] for n in range(max_order + 1)
            ):
                break
            m += 1
            q *= invt / m
        else:
            raise NumericFailure(
                "tail_scaled_derivatives", "series budget exhausted", k=k, r=r, t=t
            )
        scale = t ** r
        out = []
        for n in range(max_order + 1):
            out.append(sums[n] * scale)
            scale *= invt
        return out


def remainder_hk(k, z, prec=DEFAULT_PRECISION):
    """H_k(z) = sum_{m>k} z^-m / m! for z > 0; strictly positive."""
    return tail_scaled_derivatives(k, 0, z, 0, prec)[0]


def remainder_hk_derivative(k, n, t, prec=DEFAULT_PRECISION):
    """d^n/dt^n H_k(t) = (-1)^n sum_{m>k} (m)_n t^(-m-n) / m! for t > 0."""
    return tail_scaled_derivatives(k, 0, t, n, prec)[n]


def scaled_remainder_derivative(k, r, n, t, prec=DEFAULT_PRECISION):
    """d^n/dt^n [t^r H_k(t)] for t > 0 and real r."""
    return tail_scaled_derivatives(k, r, t, n, prec)[n]


@dataclass(frozen=True)
class TailSeries:
    """The tail series sum_{m>offset} t^-m / m! as a value object.

    coefficient(m) is exact (Fraction) through exact_cutoff and an mpf at
    the ambient precision beyond it; truncation_order bounds where the
    certified tail estimate clears the relative stop threshold.
    """

    offset: int
    exact_cutoff: int = 100

    def __post_init__(self):
        _validate_order(self.offset)

    def coefficient(self, m):
        """1/m! for m > offset, 0 otherwise."""
        if not isinstance(m, int) or m < 0:
            raise ValueError(f"index must be a nonnegative integer, got {m!r}")
        if m <= self.offset:
            return Fraction(0)
        if m <= self.exact_cutoff:
            return Fraction(1, factorial(m))
        return 1 / mp.factorial(m)

    def truncation_order(self, t, prec=DEFAULT_PRECISION):
        """Smallest M with certified tail bound below the stop threshold.

        Uses sum_{m>M} t^-m/m! <= [t^-(M+1)/(M+1)!] / (1 - q), q = 1/(t(M+2)),
        measured against the largest term of the series (the natural scale
        when t < 1 pushes the peak out to m ~ 1/t).
        """
        with prec.workdps():
            t = to_mpf(t)
            if t <= 0:
                raise ValueError(f"t must be positive, got {t}")
            invt = 1 / t
            m = self.offset + 1
            term = invt ** m / mp.factorial(m)
            peak = term
            stop = prec.series_stop
            while m < _SERIES_LIMIT:
                nxt = term * invt / (m + 1)
                q = invt / (m + 2)
                if q < mp.mpf("0.5"):
                    bound = nxt / (1 - q)
                    if bound <= stop * peak:
                        return m
                m += 1
                term = nxt
                peak = max(peak, term)
            raise NumericFailure(
                "truncation_order", "no admissible order found", offset=self.offset, t=t
            )

    def evaluate(self, t, prec=DEFAULT_PRECISION):
        return remainder_hk(self.offset, t, prec)

    def derivative(self, n, t, prec=DEFAULT_PRECISION):
        return remainder_hk_derivative(self.offset, n, t, prec)

    def scaled_derivative(self, r, n, t, prec=DEFAULT_PRECISION):
        return scaled_remainder_derivative(self.offset, r, n, t, prec)


def h_function(t, prec=DEFAULT_PRECISION):
    """h(t) = e^(1/t) - psi'(t) for t > 0; completely monotonic, limit 1."""
    with prec.workdps():
        t = to_mpf(t)
        if t <= 0:
            raise ValueError(f"t must be positive, got {t}")
        return exp_recip_derivative(0, t, prec) - polygamma(1, t, prec)


def h_derivative(i, t, prec=DEFAULT_PRECISION):
    """h^(i)(t) = (d^i/dt^i e^(1/t)) - psi^(i+1)(t) for i >= 1, t > 0.

    The two engines share no code, so their agreement downstream is a real
    cross-check; the subtraction cancels ~ (i+...) digits at large t, which
    the guard precision absorbs.
    """
    if not isinstance(i, int) or i < 1:
        raise ValueError(
            f"derivative order must be an integer >= 1 (use h_function for i = 0), got {i!r}"
        )
    with prec.workdps():
        t = to_mpf(t)
        if t <= 0:
            raise ValueError(f"t must be positive, got {t}")
        return exp_recip_derivative(i, t, prec) - polygamma(i + 1, t, prec)

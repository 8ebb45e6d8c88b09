"""Special-function engines: polygamma, modified Bessel I, and 1F2 series.

Everything here evaluates at an explicit, caller-supplied precision.  The
policy object is WorkingPrecision: user-facing digits plus a fixed guard,
a relative stop threshold for positive-term series, and the noise floor
against which sign claims are tested.  No function reads ambient mp.dps;
each enters a workdps block and returns a plain mpf.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from mpmath import mp

GUARD_DIGITS = 15

_SERIES_LIMIT = 200000


class NumericFailure(ArithmeticError):
    """An evaluation could not certify its target accuracy.

    Raised when a series or quadrature exhausts its budget, or an
    asymptotic tail fails to contract.  Carries the operation name and the
    offending inputs so reports can surface them.
    """

    def __init__(self, operation, detail, **inputs):
        self.operation = operation
        self.detail = detail
        self.inputs = inputs
        parts = ", ".join(f"{k}={v}" for k, v in inputs.items())
        super().__init__(f"{operation}: {detail} ({parts})")


@dataclass(frozen=True)
class WorkingPrecision:
    """Precision policy: requested digits, derived guard digits and thresholds.

    digits is the user-facing precision (>= 30).  Internal work runs at
    digits + 15.  Positive-term series stop once a term drops below
    10^-(digits+5) of the running sum; sign checks treat anything within
    10^(-digits+15) of zero as noise.
    """

    digits: int = 50

    def __post_init__(self):
        if not isinstance(self.digits, int) or self.digits < 30:
            raise ValueError(f"digits must be an integer >= 30, got {self.digits!r}")

    @property
    def working_dps(self):
        return self.digits + GUARD_DIGITS

    def workdps(self):
        """Context manager setting mp.dps to the guarded working precision."""
        return mp.workdps(self.working_dps)

    @property
    def series_stop(self):
        """Relative term threshold 10^-(digits+5) for positive-term series."""
        return mp.mpf(10) ** (-(self.digits + 5))

    @property
    def noise_floor(self):
        """Magnitude 10^(-digits+15) below which a computed sign is meaningless."""
        return mp.mpf(10) ** (-self.digits + 15)


DEFAULT_PRECISION = WorkingPrecision()


def to_mpf(x):
    """Convert int, float, str, Fraction, or mpf to mpf at the current precision."""
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / mp.mpf(x.denominator)
    try:
        v = mp.convert(x)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"cannot interpret {x!r} as a real number") from exc
    if not isinstance(v, mp.mpf):
        raise ValueError(f"cannot interpret {x!r} as a real number")
    return v


def shifted_factorial(a, n, prec=DEFAULT_PRECISION):
    """Rising product a (a+1) ... (a+n-1); empty product 1 for n = 0.

    Exact (int or Fraction) when a is exact; otherwise evaluated as mpf at
    the working precision.
    """
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    if isinstance(a, (int, Fraction)):
        out = 1
        for j in range(n):
            out *= a + j
        return out
    with prec.workdps():
        a = to_mpf(a)
        out = mp.mpf(1)
        for j in range(n):
            out *= a + j
        return out


def a_coeff(i, k):
    """Coefficient a_{i,k} = C(i,k) C(i-1,k) k! of the e^(1/t) derivative polynomial.

    d^i/dt^i e^(1/t) = (-1)^i e^(1/t) t^(-2i) sum_{k=0}^{i-1} a_{i,k} t^k.
    Exact integer; requires i >= 1 and 0 <= k <= i-1.
    """
    if not isinstance(i, int) or i < 1:
        raise ValueError(f"i must be an integer >= 1, got {i!r}")
    if not isinstance(k, int) or k < 0 or k > i - 1:
        raise ValueError(f"k must satisfy 0 <= k <= i-1 = {i - 1}, got {k!r}")
    return comb(i, k) * comb(i - 1, k) * factorial(k)


@dataclass(frozen=True)
class CoeffTable:
    """Triangular table of the a_{i,k}, rows i = 1 .. max_order.

    row(i) is the tuple (a_{i,0}, ..., a_{i,i-1}).  All entries are exact
    integers; row i always starts with a_{i,0} = 1 and ends with
    a_{i,i-1} = i! C(i-1, i-1)... i.e. the closed form above.
    """

    max_order: int
    rows: tuple

    @classmethod
    def up_to(cls, max_order):
        if not isinstance(max_order, int) or max_order < 1:
            raise ValueError(f"max_order must be an integer >= 1, got {max_order!r}")
        rows = tuple(
            tuple(a_coeff(i, k) for k in range(i)) for i in range(1, max_order + 1)
        )
        return cls(max_order=max_order, rows=rows)

    def row(self, i):
        if not 1 <= i <= self.max_order:
            raise ValueError(f"row index must be in 1..{self.max_order}, got {i!r}")
        return self.rows[i - 1]


def exp_recip_derivative(i, t, prec=DEFAULT_PRECISION):
    """i-th derivative of e^(1/t) via its closed-form coefficient polynomial.

    Returns (-1)^i e^(1/t) t^(-2i) sum_k a_{i,k} t^k; the i = 0 case is
    e^(1/t) itself.  t must be nonzero.
    """
    if not isinstance(i, int) or i < 0:
        raise ValueError(f"derivative order must be a nonnegative integer, got {i!r}")
    with prec.workdps():
        t = to_mpf(t)
        if t == 0:
            raise ValueError("t must be nonzero")
        core = mp.exp(1 / t)
        if i == 0:
            return +core
        acc = mp.mpf(0)
        for k in range(i - 1, -1, -1):
            acc = acc * t + a_coeff(i, k)
        return (-1) ** i * core * acc / t ** (2 * i)


def polygamma(n, t, prec=DEFAULT_PRECISION):
    """psi^(n)(t) for integer n >= 1 and real t > 0.

    Evaluates n! times the Hurwitz-style sum sum_{j>=0} (t+j)^-(n+1):
    explicit head terms shift the argument to a >= max(10(n+1), ~0.8 dps),
    then an Euler-Maclaurin tail

        a^(1-s)/(s-1) + a^(-s)/2 + sum_v B_{2v}/(2v)! (s)_{2v-1} a^(1-s-2v)

    with s = n+1 finishes the sum; the first omitted term bounds the error
    since the summand is completely monotone.  Sign is (-1)^(n+1).
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"derivative order must be an integer >= 1, got {n!r}")
    with prec.workdps():
        t = to_mpf(t)
        if t <= 0:
            raise ValueError(f"t must be positive, got {t}")
        s = n + 1
        target = max(10 * (n + 1), int(0.8 * prec.working_dps) + 1)
        shift = max(0, int(mp.ceil(target - t)))
        head = mp.mpf(0)
        for j in range(shift):
            head += (t + j) ** (-s)
        a = t + shift
        tail = a ** (1 - s) / (s - 1) + a ** (-s) / 2
        floor = prec.series_stop * (head + tail)
        poch = mp.mpf(s)
        apow = a ** (-s - 1)
        ainv2 = a ** (-2)
        prev = mp.inf
        for v in range(1, 300):
            term = mp.bernoulli(2 * v) / mp.factorial(2 * v) * poch * apow
            mag = abs(term)
            if mag > prev:
                raise NumericFailure(
                    "polygamma", "asymptotic tail failed to contract", n=n, t=t
                )
            tail += term
            if mag < floor:
                break
            poch *= (s + 2 * v - 1) * (s + 2 * v)
            apow *= ainv2
            prev = mag
        else:
            raise NumericFailure("polygamma", "tail budget exhausted", n=n, t=t)
        return (-1) ** (n + 1) * mp.factorial(n) * (head + tail)


def bessel_i(nu, z, prec=DEFAULT_PRECISION):
    """Modified Bessel I_nu(z) for integer nu >= 0 and real z >= 0, by power series.

    sum_j (z/2)^(2j+nu) / (j! (j+nu)!), positive terms; stops once the term
    falls below the relative threshold and the term ratio is below 1/2, at
    which point the geometric tail is dominated by the last term.
    """
    if not isinstance(nu, int) or nu < 0:
        raise ValueError(f"order must be a nonnegative integer, got {nu!r}")
    with prec.workdps():
        z = to_mpf(z)
        if z < 0:
            raise ValueError(f"argument must be nonnegative, got {z}")
        if z == 0:
            return mp.mpf(1) if nu == 0 else mp.mpf(0)
        half = z / 2
        q = half * half
        term = half ** nu / mp.factorial(nu)
        total = term
        stop = prec.series_stop
        for m in range(1, _SERIES_LIMIT):
            term *= q / (m * (m + nu))
            total += term
            if term < stop * total and 2 * q < (m + 1) * (m + 1 + nu):
                return total
        raise NumericFailure("bessel_i", "series budget exhausted", nu=nu, z=z)


def hyp1f2(b1, b2, t, prec=DEFAULT_PRECISION):
    """Hypergeometric 1F2(1; b1, b2; t) for b1, b2 > 0 and t >= 0, by power series.

    sum_n t^n / ((b1)_n (b2)_n); same positive-term stop rule as bessel_i.
    """
    with prec.workdps():
        t = to_mpf(t)
        b1 = to_mpf(b1)
        b2 = to_mpf(b2)
        if b1 <= 0 or b2 <= 0:
            raise ValueError(f"lower parameters must be positive, got {b1}, {b2}")
        if t < 0:
            raise ValueError(f"argument must be nonnegative, got {t}")
        term = mp.mpf(1)
        total = term
        stop = prec.series_stop
        for n in range(_SERIES_LIMIT):
            term *= t / ((b1 + n) * (b2 + n))
            total += term
            if term < stop * total and 2 * t < (b1 + n + 1) * (b2 + n + 1):
                return total
        raise NumericFailure("hyp1f2", "series budget exhausted", b1=b1, b2=b2, t=t)

"""The verification battery: every headline claim checked at desk scale.

Each criterion function returns a JSON-ready record with a passed flag and
the quantities that justify it (values as decimal strings).  run_suite
executes all of them; the CLI `suite` subcommand and the acceptance tests
both consume these records, so there is exactly one implementation of what
"passing" means.
"""

import time
from fractions import Fraction

from mpmath import mp

from .cmdeg import LogGrid, estimate_cm_degree
from .inequalities import (
    DEFAULT_BESSEL_GRID,
    DEFAULT_NEGATIVITY_GRID,
    DEFAULT_TRIGAMMA_GRID,
    check_difference_bound,
    check_ineq_bessel,
    check_ineq_trigamma,
    f_poly,
)
from .laplace import (
    KernelSpec,
    kernel_1f2,
    kernel_bessel,
    laplace_transform,
    u_ratio,
    verify_representation,
)
from .laurent import h_derivative, h_function
from .specfun import DEFAULT_PRECISION, bessel_i, polygamma, to_mpf


def _fmt(x, prec):
    # mp.mpf(x) would re-round an existing mpf to the ambient context, so
    # only convert non-mpf inputs, and do that at working precision
    if isinstance(x, mp.mpf):
        return mp.nstr(x, prec.digits)
    with prec.workdps():
        return mp.nstr(to_mpf(x), prec.digits)


def criterion_degree(prec=DEFAULT_PRECISION):
    """Degree brackets: width <= 1/32 containing k+1 for k = 0..4, under 60 s."""
    start = time.monotonic()
    grid = LogGrid(1e-2, 1e6, 200)
    brackets = []
    ok = True
    with prec.workdps():
        tol = mp.mpf(1) / 32
        for k in range(5):
            est = estimate_cm_degree(k, tol=tol, grid=grid, max_order=6, prec=prec)
            contains = bool(est.r_lo <= k + 1 <= est.r_hi)
            good = contains and est.width <= tol + mp.mpf("1e-30")
            ok = ok and good
            brackets.append(
                {
                    "k": k,
                    "r_lo": _fmt(est.r_lo, prec),
                    "r_hi": _fmt(est.r_hi, prec),
                    "width": _fmt(est.width, prec),
                    "contains_k_plus_1": contains,
                }
            )
    elapsed = time.monotonic() - start
    return {
        "id": "degree-brackets",
        "description": "bisected degree bracket of width <= 1/32 containing k+1, k = 0..4",
        "provenance": "series",
        "brackets": brackets,
        "elapsed_seconds": round(elapsed, 3),
        "budget_seconds": 60,
        "passed": bool(ok and elapsed < 60),
    }


def criterion_h_complete_monotonicity(prec=DEFAULT_PRECISION):
    """(-1)^i h^(i)(t) > 1e-35 for i <= 8 on [0.05, 1e3], h > 1, h(100) ~ 1."""
    grid = LogGrid(0.05, 1e3, 200)
    with prec.workdps():
        threshold = mp.mpf("1e-35")
        min_signed = mp.inf
        argmin = (None, None)
        min_h = mp.inf
        for t in grid.values(prec):
            hv = h_function(t, prec)
            min_h = min(min_h, hv)
            if hv < min_signed:
                min_signed = hv
                argmin = (0, t)
            for i in range(1, 9):
                signed = (-1) ** i * h_derivative(i, t, prec)
                if signed < min_signed:
                    min_signed = signed
                    argmin = (i, t)
        h100_gap = abs(h_function(100, prec) - 1)
        passed = bool(
            min_signed > threshold and min_h > 1 and h100_gap < mp.mpf("1e-8")
        )
        return {
            "id": "h-complete-monotonicity",
            "description": "alternating derivative signs of h through order 8, h > 1, h(100) -> 1",
            "provenance": "closed-form",
            "min_signed_derivative": _fmt(min_signed, prec),
            "argmin_order": argmin[0],
            "argmin_t": _fmt(argmin[1], prec),
            "min_h": _fmt(min_h, prec),
            "h100_minus_1": _fmt(h100_gap, prec),
            "passed": passed,
        }


def criterion_representations(prec=DEFAULT_PRECISION):
    """F12/BESSEL at 1e-10 for k <= 3, z in {0.5,1,2,5}; H, H' at 1e-8; under 30 s."""
    start = time.monotonic()
    checks = []
    ok = True
    for rep in ("f12", "bessel"):
        for k in range(4):
            for z in ("0.5", "1", "2", "5"):
                c = verify_representation(rep, k, z=z, rel_tol="1e-10", prec=prec)
                ok = ok and c.passed
                checks.append(
                    {
                        "rep": rep,
                        "index": k,
                        "z": z,
                        "rel_err": mp.nstr(c.rel_err, 6),
                        "passed": c.passed,
                    }
                )
    for rep, idx in (("h", 0), ("h_deriv", 1), ("h_deriv", 2)):
        for z in ("1", "2"):
            c = verify_representation(rep, idx, z=z, rel_tol="1e-8", prec=prec)
            ok = ok and c.passed
            checks.append(
                {
                    "rep": rep,
                    "index": idx,
                    "z": z,
                    "rel_err": mp.nstr(c.rel_err, 6),
                    "passed": c.passed,
                }
            )
    elapsed = time.monotonic() - start
    return {
        "id": "integral-representations",
        "description": "closed forms vs certified quadrature for all four representations",
        "provenance": "quadrature",
        "checks": checks,
        "elapsed_seconds": round(elapsed, 3),
        "budget_seconds": 30,
        "passed": bool(ok and elapsed < 30),
    }


def _tail_series_direct(k, t, prec):
    """sum_{m>k} t^(m-1)/(m!(m-1)!) by plain iteration, the alternate route."""
    term = t ** k / (mp.factorial(k) * mp.factorial(k + 1))
    total = term
    m = k + 1
    while True:
        term *= t / ((m + 1) * m)
        total += term
        m += 1
        if term < mp.mpf(10) ** (-(prec.digits + 10)) * total and t < m * (m + 1):
            return total


def criterion_kernel_identities(prec=DEFAULT_PRECISION):
    """Kernel routes agree to 1e-30 relative for k <= 5, t in {0.1, 1, 10, 100}."""
    with prec.workdps():
        tol = mp.mpf("1e-30")
        worst = mp.mpf(0)
        ok = True
        for k in range(6):
            for ts in ("0.1", "1", "10", "100"):
                t = mp.mpf(ts)
                v1 = kernel_1f2(k, t, prec)
                v2 = _tail_series_direct(k, t, prec)
                gap = abs(v1 - v2) / v2
                worst = max(worst, gap)
                ok = ok and gap < tol
                b1 = kernel_bessel(k, t, prec)
                b2 = bessel_i(k + 2, 2 * mp.sqrt(t), prec) / t ** (mp.mpf(k + 2) / 2)
                gap = abs(b1 - b2) / b2
                worst = max(worst, gap)
                ok = ok and gap < tol
        for ts in ("0.1", "1", "10", "100"):
            t = mp.mpf(ts)
            v1 = kernel_1f2(0, t, prec)
            v2 = bessel_i(1, 2 * mp.sqrt(t), prec) / mp.sqrt(t)
            gap = abs(v1 - v2) / v2
            worst = max(worst, gap)
            ok = ok and gap < tol
        return {
            "id": "kernel-identities",
            "description": "1F2 kernel vs tail series, Bessel kernel vs I-composite, k = 0 cross-identity",
            "provenance": "series",
            "worst_rel_gap": mp.nstr(worst, 6),
            "tolerance": "1e-30",
            "passed": bool(ok),
        }


def criterion_inequalities(prec=DEFAULT_PRECISION):
    """Both inequality scans strictly positive on their default grids."""
    bessel = check_ineq_bessel(DEFAULT_BESSEL_GRID, prec)
    trigamma = check_ineq_trigamma(DEFAULT_TRIGAMMA_GRID, prec)
    with prec.workdps():
        tight = sum(1 for t in DEFAULT_BESSEL_GRID.values(prec) if t <= mp.mpf("0.2"))
        # margin is increasing, so its value at t = 0.2 bounds the whole
        # tight region; below 1e-7 there, 30+ digits are genuinely needed
        t = mp.mpf("0.2")
        margin_02 = bessel_i(1, t, prec) - t / 2 * u_ratio((t / 2) ** 2, prec)
        tight_resolved = bool(mp.mpf(0) < margin_02 < mp.mpf("1e-7"))
    return {
        "id": "inequality-scans",
        "description": "Bessel lower bound on (0, 50] and trigamma bound on [0.01, 100]",
        "provenance": "series",
        "bessel_min_margin": _fmt(bessel.min_margin, prec),
        "bessel_argmin_t": _fmt(bessel.argmin_t, prec),
        "bessel_points": bessel.evaluations,
        "bessel_points_below_0.2": tight,
        "bessel_margin_at_0.2": mp.nstr(margin_02, 6),
        "trigamma_min_margin": _fmt(trigamma.min_margin, prec),
        "trigamma_argmin_t": _fmt(trigamma.argmin_t, prec),
        "passed": bool(
            bessel.passed and trigamma.passed and tight >= 30 and tight_resolved
        ),
    }


def criterion_proof_algebra(prec=DEFAULT_PRECISION):
    """Exact form equivalences, f_i negativity, and the difference bound."""
    points = (Fraction(1, 2), 1, Fraction(3, 2), 2, 7)
    ab_ok = all(
        f_poly(i, t, "A") == f_poly(i, t, "B") for i in range(13) for t in points
    )
    acd_ok = all(
        f_poly(i, t, "A") == f_poly(i, t, "C") == f_poly(i, t, "D")
        for i in range(1, 13)
        for t in points
    )
    anomaly_ok = (
        f_poly(0, 1, "C") == -22
        and f_poly(0, 1, "D") == -22
        and f_poly(0, 1, "A") == -2
    )
    with prec.workdps():
        neg_ok = all(
            f_poly(i, t, "A", prec) < 0
            for i in range(13)
            for t in DEFAULT_NEGATIVITY_GRID.values(prec)
        )
        diff_grid = LogGrid(0.25, 50, 25)
        diff_ok = all(
            check_difference_bound(i, t, prec).passed
            for i in range(7)
            for t in diff_grid.values(prec)
        )
    return {
        "id": "proof-algebra",
        "description": "f_i form equivalences (exact), negativity, difference-derivative bound",
        "provenance": "exact",
        "forms_a_b_equal_i_0_12": ab_ok,
        "forms_a_c_d_equal_i_1_12": acd_ok,
        "form_c_i0_anomaly_minus22_vs_minus2": anomaly_ok,
        "negativity_i_0_12": neg_ok,
        "difference_bound_i_0_6": diff_ok,
        "passed": bool(ab_ok and acd_ok and anomaly_ok and neg_ok and diff_ok),
    }


def criterion_polygamma_identities(prec=DEFAULT_PRECISION):
    """Closed-form polygamma identities to 40 digits plus the recurrence residual."""
    with prec.workdps():
        tol = mp.mpf("1e-40")
        checks = [
            ("psi1(1) = pi^2/6", polygamma(1, 1, prec), mp.pi ** 2 / 6),
            ("psi1(1/2) = pi^2/2", polygamma(1, "0.5", prec), mp.pi ** 2 / 2),
            ("psi2(1) = -2 zeta(3)", polygamma(2, 1, prec), -2 * mp.zeta(3)),
        ]
        identity_ok = True
        rows = []
        for label, got, want in checks:
            gap = abs(got - want) / abs(want)
            identity_ok = identity_ok and gap < tol
            rows.append({"identity": label, "rel_gap": mp.nstr(gap, 6)})
        grid = LogGrid(0.1, 100, 40)
        worst = mp.mpf(0)
        for n in (1, 2, 3):
            for t in grid.values(prec):
                res = abs(
                    polygamma(n, t + 1, prec)
                    - polygamma(n, t, prec)
                    - (-1) ** n * mp.factorial(n) / t ** (n + 1)
                )
                worst = max(worst, res)
        recurrence_ok = worst < tol
        return {
            "id": "polygamma-identities",
            "description": "trigamma/tetragamma closed forms to 40 digits, recurrence residual",
            "provenance": "closed-form",
            "identities": rows,
            "worst_recurrence_residual": mp.nstr(worst, 6),
            "passed": bool(identity_ok and recurrence_ok),
        }


def criterion_calibration(prec=DEFAULT_PRECISION):
    """Transform engine vs n!/z^(n+1) on monomials, rel 1e-12."""
    with prec.workdps():
        tol = mp.mpf("1e-12")
        worst = mp.mpf(0)
        ok = True
        q = laplace_transform(KernelSpec("const"), 2, "1e-13", prec)
        gap = abs(q.value - mp.mpf(1) / 2) * 2
        worst = max(worst, gap)
        ok = ok and gap < tol
        for n in range(5):
            for z in (1, 3):
                q = laplace_transform(KernelSpec("const", weight=n), z, "1e-13", prec)
                exact = mp.factorial(n) / mp.mpf(z) ** (n + 1)
                gap = abs(q.value - exact) / exact
                worst = max(worst, gap)
                ok = ok and gap < tol
        return {
            "id": "quadrature-calibration",
            "description": "monomial transforms against n!/z^(n+1)",
            "provenance": "quadrature",
            "worst_rel_err": mp.nstr(worst, 6),
            "tolerance": "1e-12",
            "passed": bool(ok),
        }


CRITERIA = (
    criterion_degree,
    criterion_h_complete_monotonicity,
    criterion_representations,
    criterion_kernel_identities,
    criterion_inequalities,
    criterion_proof_algebra,
    criterion_polygamma_identities,
    criterion_calibration,
)


def run_suite(prec=DEFAULT_PRECISION):
    """Run every criterion; returns (records, all_passed)."""
    records = [fn(prec) for fn in CRITERIA]
    return records, all(r["passed"] for r in records)

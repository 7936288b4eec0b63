"""Independent reference implementations used to pin expected test values.

Everything here is deliberately written against mpmath (or plain floats) and
never calls into the package under test, so each comparison is a genuine
dual-route check.
"""

import mpmath as mp


def bessel_series(order: int, x: float, dps: int = 40) -> float:
    """High-precision ascending-series Bessel J_n, summed in mpmath."""
    n = abs(int(order))
    sign = -1.0 if (int(order) < 0 and n % 2) else 1.0
    with mp.workdps(dps):
        xm = mp.mpf(repr(float(x)))
        if xm < 0:
            xm = -xm
            if n % 2:
                sign = -sign
        half = xm / 2
        term = half ** n / mp.factorial(n)
        total = term
        q = half * half
        for k in range(1, 2000):
            term *= -q / (k * (n + k))
            total += term
            if abs(term) < mp.mpf(10) ** (-dps) * (abs(total) + 1):
                break
        return sign * float(total)


def mp_besselj(order, x) -> float:
    """mpmath Bessel J (library route, independent of the package)."""
    return float(mp.besselj(order, x))


def mp_gamma(x: float) -> float:
    return float(mp.gamma(x))


def hyp_series(order: int, z: float, terms: int = 10_000) -> float:
    """Direct term-by-term 2F1(1/2, (1+N)/2; (3+N)/2; z) summation."""
    a, b, c = 0.5, 0.5 * (1 + order), 0.5 * (3 + order)
    term = 1.0
    total = 1.0
    for k in range(terms):
        term *= (a + k) * (b + k) / ((c + k) * (1.0 + k)) * z
        total += term
        if abs(term) < 1e-18 * abs(total):
            break
    return total


def mean_coupling_quad(order: int, ratio: float, dps: int = 30) -> float:
    """(1/pi) int_0^pi J_N(2 r |cos u|) du by mpmath adaptive quadrature."""
    with mp.workdps(dps):
        value = mp.quad(lambda u: mp.besselj(order, 2 * ratio * mp.cos(u)),
                        [0, mp.pi / 2])
        return float(2 / mp.pi * value)


def central_difference(f, t: float, h: float) -> float:
    return (f(t + h) - f(t - h)) / (2.0 * h)

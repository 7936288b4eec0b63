"""Self-contained special-function kernel.

Bessel functions of the first kind, the Gamma function, and the one Gauss
hypergeometric form needed by the weak-drive phase function.  Everything is
plain double precision with explicitly stitched accuracy regimes; the module
has no dependency on the rest of the package, and scalar inputs take a fast
pure-Python path while arrays are evaluated vectorised.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["bessel_j", "gamma_fn", "hyp2f1_reduced"]

MAX_ORDER = 200
MAX_ARGUMENT = 1.0e3

# regime boundaries for J_n: ascending series below, Miller recurrence above,
# Hankel asymptotics once the argument is large *and* dominates the order.
# The series boundary sits where alternating-sum cancellation still leaves
# ~1e-13 relative accuracy.
_SERIES_CUTOFF = 9.0
_ASYMPTOTIC_CUTOFF = 50.0


# ---------------------------------------------------------------------------
# Bessel J_n
# ---------------------------------------------------------------------------

def bessel_j(order: int, x):
    """Bessel function of the first kind J_order(x).

    Parameters
    ----------
    order:
        Integer order, |order| <= 200.  Negative orders use
        J_{-n}(x) = (-1)^n J_n(x).
    x:
        Real argument (scalar or array), |x| <= 1e3.

    Returns
    -------
    float or ndarray matching the shape of ``x``.
    """
    if order != int(order):
        raise ValueError(f"bessel_j order must be an integer, got {order!r}")
    n = int(order)
    if abs(n) > MAX_ORDER:
        raise ValueError(f"bessel_j order {n} outside |order| <= {MAX_ORDER}")

    parity = -1.0 if n < 0 and n % 2 else 1.0
    n = abs(n)

    if np.isscalar(x) and not isinstance(x, np.ndarray):
        xf = float(x)
        if not math.isfinite(xf) or abs(xf) > MAX_ARGUMENT:
            raise ValueError(f"bessel_j argument {x!r} outside |x| <= {MAX_ARGUMENT}")
        sign = parity * (-1.0 if xf < 0 and n % 2 else 1.0)
        return sign * _jn_scalar(n, abs(xf))

    xa = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xa)) or np.any(np.abs(xa) > MAX_ARGUMENT):
        raise ValueError(f"bessel_j argument outside |x| <= {MAX_ARGUMENT}")
    sign = np.where((xa < 0) & bool(n % 2), -parity, parity)
    ax = np.abs(xa)

    out = np.empty_like(ax)
    small = ax < _SERIES_CUTOFF
    if small.any():
        out[small] = _jn_series_vec(n, ax[small])
    large = ~small
    if large.any():
        asym = large & (ax > _ASYMPTOTIC_CUTOFF) & (n * n <= ax)
        miller = large & ~asym
        if miller.any():
            out[miller] = _jn_miller_vec(n, ax[miller])
        if asym.any():
            out[asym] = _jn_asymptotic_vec(n, ax[asym])
    return sign * out


def _jn_scalar(n: int, ax: float) -> float:
    if ax < _SERIES_CUTOFF:
        return _jn_series_scalar(n, ax)
    if ax > _ASYMPTOTIC_CUTOFF and n * n <= ax:
        return float(_jn_asymptotic_vec(n, np.array([ax]))[0])
    return float(_jn_miller_vec(n, np.array([ax]))[0])


def _jn_series_scalar(n: int, ax: float) -> float:
    # ascending series sum_k (-1)^k (x/2)^{n+2k} / (k! (n+k)!); the leading
    # term goes through logs so high orders underflow gracefully
    if ax == 0.0:
        return 1.0 if n == 0 else 0.0
    half = 0.5 * ax
    term = math.exp(n * math.log(half) - math.lgamma(n + 1))
    total = term
    q = half * half
    for k in range(1, 80):
        term *= -q / (k * (n + k))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
    return total


def _jn_series_vec(n: int, ax: np.ndarray) -> np.ndarray:
    half = 0.5 * ax
    positive = half > 0.0
    with np.errstate(divide="ignore"):
        logt = np.where(positive, n * np.log(np.where(positive, half, 1.0)), 0.0)
    term = np.where(positive, np.exp(logt - math.lgamma(n + 1)),
                    1.0 if n == 0 else 0.0)
    total = term.copy()
    q = half * half
    for k in range(1, 80):
        term = term * (-q) / (k * (n + k))
        total += term
        if np.all(np.abs(term) <= 1e-17 * np.maximum(np.abs(total), 1e-290)):
            break
    return total


def _jn_miller_vec(n: int, ax: np.ndarray) -> np.ndarray:
    # backward (Miller) recurrence seeded high above both order and argument,
    # normalised with J_0 + 2 sum_k J_{2k} = 1; the start margin grows with
    # sqrt(x) so the seed contamination decays below double precision even
    # at the top of the supported argument range
    top = max(n, float(ax.max()))
    start = int(top + 2.4 * math.sqrt(top) + 36.0)
    if start % 2:
        start += 1
    inv_x = 1.0 / ax
    jp = np.zeros_like(ax)
    jc = np.full_like(ax, 1e-30)
    norm = np.zeros_like(ax)
    out = np.zeros_like(ax)
    for k in range(start, 0, -1):
        jm = (2.0 * k) * inv_x * jc - jp
        jp = jc
        jc = jm
        idx = k - 1
        if idx % 2 == 0:
            norm += jc if idx == 0 else 2.0 * jc
        if idx == n:
            out = jc.copy()
        overflow = np.abs(jc) > 1e250
        if overflow.any():
            for arr in (jc, jp, norm, out):
                arr[overflow] *= 1e-250
    return out / norm


def _jn_asymptotic_vec(n: int, ax: np.ndarray) -> np.ndarray:
    # Hankel large-argument expansion; only entered for n^2 <= x where the
    # asymptotic terms decay to below double precision before turning
    mu = 4.0 * n * n
    inv8x = 1.0 / (8.0 * ax)
    p = np.ones_like(ax)
    q = np.zeros_like(ax)
    term = np.ones_like(ax)
    prev = np.inf
    for j in range(1, 32):
        term = term * (mu - (2 * j - 1) ** 2) * inv8x / j
        size = float(np.max(np.abs(term)))
        if size >= prev or size < 1e-18:
            if size < 1e-18:
                _accumulate_hankel(p, q, term, j)
            break
        _accumulate_hankel(p, q, term, j)
        prev = size
    chi = ax - (0.5 * n + 0.25) * math.pi
    return np.sqrt(2.0 / (math.pi * ax)) * (p * np.cos(chi) - q * np.sin(chi))


def _accumulate_hankel(p: np.ndarray, q: np.ndarray, term: np.ndarray, j: int) -> None:
    if j % 2 == 0:
        p += term if j % 4 == 0 else -term
    else:
        q += term if j % 4 == 1 else -term


# ---------------------------------------------------------------------------
# Gamma
# ---------------------------------------------------------------------------

_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_fn(x: float) -> float:
    """Gamma function for x > 0 (Lanczos approximation, g = 7, 9 terms)."""
    xf = float(x)
    if not math.isfinite(xf) or xf <= 0.0:
        raise ValueError(f"gamma_fn requires x > 0, got {x!r}")
    if xf < 0.5:
        # reflection keeps the rational approximation on z >= 0.5
        return math.pi / (math.sin(math.pi * xf) * gamma_fn(1.0 - xf))
    z = xf - 1.0
    acc = _LANCZOS_COEFFS[0]
    for i, coeff in enumerate(_LANCZOS_COEFFS[1:], start=1):
        acc += coeff / (z + i)
    t = z + _LANCZOS_G + 0.5
    try:
        value = math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * acc
    except OverflowError:
        value = math.inf
    if not math.isfinite(value):
        raise ValueError(f"gamma_fn({x!r}) overflows double precision")
    return value


# ---------------------------------------------------------------------------
# Gauss hypergeometric 2F1(1/2, (1+N)/2; (3+N)/2; z)
# ---------------------------------------------------------------------------

def hyp2f1_reduced(order: int, z: float) -> float:
    """2F1(1/2, (1+N)/2; (3+N)/2; z) for positive integer N <= 10 and 0 <= z <= 1.

    The parameter combination has c - a - b = 1/2, so the series converges on
    the whole closed interval; near z = 1 the direct series is algebraically
    slow and the linear 1-z transformation is used instead.
    """
    if order != int(order) or not 1 <= int(order) <= 10:
        raise ValueError(f"hyp2f1_reduced order must be an integer in [1, 10], got {order!r}")
    zf = float(z)
    if not 0.0 <= zf <= 1.0:
        raise ValueError(f"hyp2f1_reduced argument z={z!r} outside [0, 1]")
    n = int(order)
    b = 0.5 * (1 + n)
    c = 0.5 * (3 + n)
    if zf <= 0.75:
        return _hyp_series(0.5, b, c, zf)
    # 1-z transformation; with c = a the first companion series collapses to
    # the binomial z^{-b}, and the second prefactor reduces to -(1+N)
    first = math.sqrt(math.pi) * gamma_fn(c) / gamma_fn(1.0 + 0.5 * n) * zf ** (-b)
    if zf == 1.0:
        return first
    second = (1 + n) * math.sqrt(1.0 - zf) * _hyp_series(1.0 + 0.5 * n, 1.0, 1.5, 1.0 - zf)
    return first - second


def _hyp_series(a: float, b: float, c: float, w: float) -> float:
    term = 1.0
    total = 1.0
    for k in range(0, 600):
        ratio = (a + k) * (b + k) / ((c + k) * (1.0 + k)) * w
        term *= ratio
        total += term
        if 0.0 <= ratio < 1.0 and abs(term) * ratio / (1.0 - ratio) < 1e-16 * abs(total):
            return total
    raise RuntimeError(f"hypergeometric series failed to converge at w={w}")

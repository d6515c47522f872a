"""Independent reference computations used by the tests.

Everything here is deliberately naive: direct power series in 40-digit
arithmetic, no recurrences, no Jacobi-Anger identity, so agreement with the
package is a real cross-check rather than the same algorithm twice.
"""

from __future__ import annotations

import mpmath

_DPS = 40


def series_bessel_j(m: int, x: float) -> float:
    """J_m(x) summed term by term: sum_k (-1)^k (x/2)^(m+2k) / (k! (m+k)!)."""
    assert m >= 0 and x >= 0
    with mpmath.workdps(_DPS):
        half = mpmath.mpf(x) / 2
        total = mpmath.mpf(0)
        for k in range(200):
            term = (-mpmath.mpf(1)) ** k * half ** (m + 2 * k) / (
                mpmath.factorial(k) * mpmath.factorial(m + k))
            total += term
            if abs(term) < mpmath.mpf("1e-45") * max(1, abs(total)):
                break
        return float(total)

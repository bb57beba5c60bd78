"""Sign-change bisection shared by the threshold and boundary searches."""

from __future__ import annotations


def bisect(f, lo: float, hi: float, *, ftol: float = 0.0, xtol: float = 0.0, max_iter: int = 200) -> float:
    """Root of ``f`` in ``[lo, hi]``; ``f(lo)`` and ``f(hi)`` must differ in sign.

    Stops when ``|f(mid)| <= ftol``, when the bracket is narrower than
    ``xtol``, or after ``max_iter`` halvings.
    """
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise ValueError(f"no sign change on [{lo}, {hi}]: f={f_lo:.3g}, {f_hi:.3g}")
    mid = 0.5 * (lo + hi)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if abs(f_mid) <= ftol or (hi - lo) <= xtol:
            break
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return mid

"""Small shared helpers."""
import math

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def fmt17(x):
    """Format a float with 17 significant digits (round-trip safe)."""
    return format(float(x), ".17g")


def golden_max(fn, lo, hi, iterations=20):
    """Golden-section maximisation of ``fn`` on [lo, hi].

    Returns (argmax, max).  Plain bracketing loop; ``fn`` is assumed
    unimodal on the bracket (callers pass a bracket around a grid argmax).
    """
    a, b = float(lo), float(hi)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(iterations):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fn(d)
    if fc > fd:
        return c, fc
    return d, fd

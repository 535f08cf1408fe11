# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the numerical hot loops.

Mirrors the API of ``fracsmooth._pykernels`` (series partial sums and
Gauss-Kronrod panel evaluation); see that module for the contract.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport cos, fabs, hypot, pow, sin

cnp.import_array()

NAME = "compiled"

cdef double M_PI = 3.141592653589793238462643383279502884

cdef double[15] _NODES
cdef double[15] _WK
cdef double[15] _WG_FULL

_NODES_PY = [
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
]
_WK_PY = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
]
_WG_PY = [
    0.0,
    0.129484966168869693270611432679082,
    0.0,
    0.279705391489276667901467771423780,
    0.0,
    0.381830050505118944950369775488975,
    0.0,
    0.417959183673469387755102040816327,
    0.0,
    0.381830050505118944950369775488975,
    0.0,
    0.279705391489276667901467771423780,
    0.0,
    0.129484966168869693270611432679082,
    0.0,
]

cdef int _i
for _i in range(15):
    _NODES[_i] = _NODES_PY[_i]
    _WK[_i] = _WK_PY[_i]
    _WG_FULL[_i] = _WG_PY[_i]


def z_series_sum(double beta, double t, long nterms):
    cdef double x = t, y = 0.0
    cdef double cx = 0.0, cy = 0.0  # Kahan compensation
    cdef double s = 1.0, nu, ang, term, tmp
    cdef long v
    for v in range(1, nterms + 1):
        nu = <double> v
        s *= (nu - 1.0 - beta) / nu
        ang = nu * t
        term = s * sin(ang) / nu
        tmp = x + (term - cx)
        cx = (tmp - x) - (term - cx)
        x = tmp
        term = s * (1.0 - cos(ang)) / nu
        tmp = y + (term - cy)
        cy = (tmp - y) - (term - cy)
        y = tmp
    return x, y


def z_series_sum_batch(double beta, cnp.ndarray[cnp.float64_t, ndim=1] ts,
                       long nterms):
    cdef Py_ssize_t nt = ts.shape[0], j
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xs = ts.copy()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ys = np.zeros(nt)
    cdef double s = 1.0, nu, w, ang
    cdef long v
    for v in range(1, nterms + 1):
        nu = <double> v
        s *= (nu - 1.0 - beta) / nu
        w = s / nu
        for j in range(nt):
            ang = nu * ts[j]
            xs[j] += w * sin(ang)
            ys[j] += w * (1.0 - cos(ang))
    return xs, ys


def gk15_panels(double beta, cnp.ndarray[cnp.float64_t, ndim=1] a,
                cnp.ndarray[cnp.float64_t, ndim=1] b):
    cdef Py_ssize_t n = a.shape[0], j
    cdef int i
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] vals = np.empty(n, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] errs = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] absmag = np.empty(n)
    cdef double mid, hw, phi, s, mag, ang, fr, fi
    cdef double kr, ki, gr, gi, am
    for j in range(n):
        mid = 0.5 * (a[j] + b[j])
        hw = 0.5 * (b[j] - a[j])
        kr = ki = gr = gi = am = 0.0
        for i in range(15):
            phi = mid + hw * _NODES[i]
            s = 2.0 * sin(0.5 * phi)
            if s < 0.0:
                s = 0.0
            mag = pow(s, beta)
            ang = 0.5 * beta * (phi - M_PI)
            fr = mag * cos(ang)
            fi = mag * sin(ang)
            kr += _WK[i] * fr
            ki += _WK[i] * fi
            gr += _WG_FULL[i] * fr
            gi += _WG_FULL[i] * fi
            am += _WK[i] * mag
        vals[j] = complex(hw * kr, hw * ki)
        errs[j] = hypot(hw * (kr - gr), hw * (ki - gi))
        absmag[j] = hw * am
    return vals, errs, absmag

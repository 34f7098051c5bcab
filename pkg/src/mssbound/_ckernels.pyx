# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernels_py``. Same API, same semantics.

Coefficients stay Python objects (Fraction / ComplexRational / int) so results
are bit-identical to the fallback; the gain is loop and dispatch overhead.
"""


cdef inline void _axpy(dict acc, long mask, list poly, object scale, Py_ssize_t shift):
    cdef list cur = acc.get(mask)
    cdef Py_ssize_t need = len(poly) + shift
    cdef Py_ssize_t k, n = len(poly)
    cdef object c
    if cur is None:
        cur = [0] * need
        acc[mask] = cur
    elif len(cur) < need:
        cur.extend([0] * (need - len(cur)))
    for k in range(n):
        c = poly[k]
        if c:
            cur[k + shift] = cur[k + shift] + scale * c


def affine_mul_acc(dict acc, dict elem, object c0, object c1, list zterms):
    cdef long mask, bit
    cdef list poly
    cdef tuple zt
    cdef bint has0 = bool(c0), has1 = bool(c1)
    for m, p in elem.items():
        mask = m
        poly = p
        if has0:
            _axpy(acc, mask, poly, c0, 0)
        if has1:
            _axpy(acc, mask, poly, c1, 1)
        for zt in zterms:
            bit = zt[0]
            if not mask & bit:
                _axpy(acc, mask | bit, poly, zt[1], 0)


def subset_mul(dict e1, dict e2):
    cdef dict out = {}
    cdef long m1, m2, m
    cdef list p1, p2, cur
    cdef Py_ssize_t i, j, n1, n2, need
    cdef object a, b
    for k1, v1 in e1.items():
        m1 = k1
        p1 = v1
        n1 = len(p1)
        for k2, v2 in e2.items():
            m2 = k2
            if m1 & m2:
                continue
            p2 = v2
            n2 = len(p2)
            m = m1 | m2
            need = n1 + n2 - 1
            cur = out.get(m)
            if cur is None:
                cur = [0] * need
                out[m] = cur
            elif len(cur) < need:
                cur.extend([0] * (need - len(cur)))
            for i in range(n1):
                a = p1[i]
                if a:
                    for j in range(n2):
                        b = p2[j]
                        if b:
                            cur[i + j] = cur[i + j] + a * b
    return out


cpdef int sign_at(list coeffs, object num, object den):
    cdef Py_ssize_t k, n = len(coeffs) - 1
    cdef object acc = 0
    cdef object dpow = 1
    for k in range(n, -1, -1):
        acc = acc * num + coeffs[k] * dpow
        dpow = dpow * den
    return (acc > 0) - (acc < 0)


def sign_variations(list seq, object num, object den):
    cdef int count = 0, last = 0, s
    cdef list coeffs
    for coeffs in seq:
        s = sign_at(coeffs, num, den)
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def signed_pairing(dict e1, dict e2, int m):
    cdef long full = (1 << m) - 1
    cdef long mask, bit
    cdef list g = [None] * (full + 1)
    cdef list src, cur, poly, other, out = []
    cdef Py_ssize_t k, i, j, need, ns
    cdef object a, b
    cdef int s
    for km, v in e2.items():
        mask = km
        poly = v
        g[mask] = [-c for c in poly] if bin(mask).count("1") & 1 else list(poly)
    bit = 1
    while bit <= full:
        for mask in range(full + 1):
            if mask & bit and g[mask ^ bit] is not None:
                src = g[mask ^ bit]
                cur = g[mask]
                if cur is None:
                    g[mask] = list(src)
                else:
                    ns = len(src)
                    if len(cur) < ns:
                        cur.extend([0] * (ns - len(cur)))
                    for k in range(ns):
                        cur[k] = cur[k] + src[k]
        bit <<= 1
    for km, v in e1.items():
        mask = km
        other = g[full ^ mask]
        if other is None:
            continue
        poly = v
        s = -1 if bin(mask).count("1") & 1 else 1
        need = len(poly) + len(other) - 1
        if len(out) < need:
            out.extend([0] * (need - len(out)))
        for i in range(len(poly)):
            a = poly[i]
            if a:
                a = s * a
                for j in range(len(other)):
                    b = other[j]
                    if b:
                        out[i + j] = out[i + j] + a * b
    return out

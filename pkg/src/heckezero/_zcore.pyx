# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled cone-sum kernel: the 12*q^2-scaled partial zeta sum over one
minus-continued-fraction period, on C integers.

Falls back to arbitrary precision internally when the worst-case accumulator
bound does not fit in 64 bits.
"""

from . import _zcore_py

cimport cython
from libc.stdlib cimport free, malloc


def zeta12_times(q, C, D, digits):
    # bound check in Python integers so huge inputs never touch C types;
    # worst case |term| <= 16 * b_max * q^2, stay well below 2^62
    b_max = 0
    for b in digits:
        if b > b_max:
            b_max = b
    if q * q * b_max * 16 * (len(digits) + 1) >= 1 << 62:
        return _zcore_py.zeta12_times(q, C, D, digits)
    return _zeta12_ll(q, C, D, digits)


@cython.cdivision(True)
cdef long long _zeta12_ll(long long q, long long C, long long D, digits):
    cdef long long m = len(digits)
    cdef long long *b = <long long *> malloc(m * sizeof(long long))
    if b == NULL:
        raise MemoryError
    cdef long long i
    for i in range(m):
        b[i] = digits[i]
    cdef long long x_prev = (q - C - 1) % q
    if x_prev < 0:
        x_prev += q
    x_prev += 1
    cdef long long x_cur = (D - 1) % q
    if x_cur < 0:
        x_cur += q
    x_cur += 1
    cdef long long total = 0, x_next, bi, X, Y
    for i in range(m):
        x_next = (b[i] * x_cur + q - x_prev - 1) % q + 1
        x_prev = x_cur
        x_cur = x_next
        bi = b[(i + 1) % m]
        X = x_cur
        Y = q - x_prev
        total += 3 * (2 * X - q) * (2 * Y - q) + bi * (6 * X * X - 6 * q * X + q * q)
    free(b)
    return total

# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled model-set kernel: the scan loops over packed truth tables.

Same contracts as ``pybits``: tables are ints, bit v set iff model
value v is a member.  Only the model-level loops live here; the
plane-level mask algebra stays on Python big-ints in both backends.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize
from cpython.mem cimport PyMem_Free, PyMem_Malloc, PyMem_Realloc
from libc.string cimport memcpy

from . import pybits

ctypedef unsigned long long u64


cdef bytes _le_bytes(table):
    cdef object t = table
    return t.to_bytes((t.bit_length() + 7) // 8, "little")


def count(table):
    """Number of models in the table."""
    if table == 0:
        return 0
    cdef bytes data = _le_bytes(table)
    cdef const unsigned char[::1] buf = data
    cdef Py_ssize_t i, n = buf.shape[0]
    cdef u64 total = 0
    cdef unsigned int b
    for i in range(n):
        b = buf[i]
        while b:
            b &= b - 1
            total += 1
    return total


def indices(table):
    """Model values present in the table, ascending."""
    out = []
    if table == 0:
        return out
    cdef bytes data = _le_bytes(table)
    cdef const unsigned char[::1] buf = data
    cdef Py_ssize_t i, n = buf.shape[0]
    cdef int k
    cdef unsigned int b
    for i in range(n):
        b = buf[i]
        if b:
            for k in range(8):
                if b & (1u << k):
                    out.append((i << 3) | k)
    return out


cdef struct _Members:
    u64* vals
    Py_ssize_t cnt
    Py_ssize_t cap


cdef int _members_push(_Members* m, u64 v) except -1:
    cdef u64* grown
    if m.cnt == m.cap:
        m.cap = m.cap * 2
        grown = <u64*> PyMem_Realloc(m.vals, m.cap * sizeof(u64))
        if grown == NULL:
            raise MemoryError()
        m.vals = grown
    m.vals[m.cnt] = v
    m.cnt += 1
    return 0


cdef int _collect(const unsigned char[::1] buf, _Members* m) except -1:
    cdef Py_ssize_t i, n = buf.shape[0]
    cdef int k
    cdef unsigned int b
    for i in range(n):
        b = buf[i]
        if b:
            for k in range(8):
                if b & (1u << k):
                    _members_push(m, (<u64> i << 3) | <u64> k)
    return 0


def closure(table):
    """Least superset closed under pairwise AND of model values."""
    if table == 0:
        return 0
    cdef bytes data = _le_bytes(table)
    cdef const unsigned char[::1] buf = data
    cdef Py_ssize_t nbytes = buf.shape[0]
    cdef unsigned char* bits = <unsigned char*> PyMem_Malloc(nbytes)
    if bits == NULL:
        raise MemoryError()
    cdef _Members m
    m.cap = 64
    m.cnt = 0
    m.vals = <u64*> PyMem_Malloc(m.cap * sizeof(u64))
    if m.vals == NULL:
        PyMem_Free(bits)
        raise MemoryError()
    cdef Py_ssize_t i = 0, j
    cdef u64 a, c
    try:
        memcpy(bits, &buf[0], nbytes)
        _collect(buf, &m)
        while i < m.cnt:
            a = m.vals[i]
            for j in range(i):
                c = a & m.vals[j]
                if not (bits[c >> 3] & (1u << (c & 7))):
                    bits[c >> 3] |= 1u << (c & 7)
                    _members_push(&m, c)
            i += 1
        out = PyBytes_FromStringAndSize(<char*> bits, nbytes)
    finally:
        PyMem_Free(bits)
        PyMem_Free(m.vals)
    return int.from_bytes(out, "little")


def closure_update(closed, extra):
    """Closure of closed|extra, assuming `closed` is already closed."""
    if closed == 0:
        return closure(extra)
    fresh = extra & ~closed
    if fresh == 0:
        return closed
    cdef bytes base_data = _le_bytes(closed | fresh)
    cdef const unsigned char[::1] base = base_data
    cdef bytes fresh_data = _le_bytes(fresh)
    cdef const unsigned char[::1] fresh_buf = fresh_data
    cdef Py_ssize_t nbytes = base.shape[0]
    cdef unsigned char* bits = <unsigned char*> PyMem_Malloc(nbytes)
    if bits == NULL:
        raise MemoryError()
    cdef _Members m
    m.cap = 64
    m.cnt = 0
    m.vals = <u64*> PyMem_Malloc(m.cap * sizeof(u64))
    if m.vals == NULL:
        PyMem_Free(bits)
        raise MemoryError()
    cdef bytes closed_data = _le_bytes(closed)
    cdef const unsigned char[::1] closed_buf = closed_data
    cdef Py_ssize_t i, j, first_new
    cdef u64 a, c
    try:
        memcpy(bits, &base[0], nbytes)
        _collect(closed_buf, &m)
        first_new = m.cnt
        _collect(fresh_buf, &m)
        i = first_new
        while i < m.cnt:
            a = m.vals[i]
            for j in range(i):
                c = a & m.vals[j]
                if not (bits[c >> 3] & (1u << (c & 7))):
                    bits[c >> 3] |= 1u << (c & 7)
                    _members_push(&m, c)
            i += 1
        out = PyBytes_FromStringAndSize(<char*> bits, nbytes)
    finally:
        PyMem_Free(bits)
        PyMem_Free(m.vals)
    return int.from_bytes(out, "little")


def is_closed(table):
    """True iff the model set is closed under pairwise AND."""
    if table == 0:
        return True
    cdef bytes data = _le_bytes(table)
    cdef const unsigned char[::1] buf = data
    cdef _Members m
    m.cap = 64
    m.cnt = 0
    m.vals = <u64*> PyMem_Malloc(m.cap * sizeof(u64))
    if m.vals == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j
    cdef u64 c
    cdef bint ok = True
    try:
        _collect(buf, &m)
        for i in range(m.cnt):
            if not ok:
                break
            for j in range(i + 1, m.cnt):
                c = m.vals[i] & m.vals[j]
                if not (buf[c >> 3] & (1u << (c & 7))):
                    ok = False
                    break
    finally:
        PyMem_Free(m.vals)
    return bool(ok)


def closure_witness(table):
    """First pair of members (by value) whose AND is missing, else None."""
    if table == 0:
        return None
    cdef bytes data = _le_bytes(table)
    cdef const unsigned char[::1] buf = data
    cdef _Members m
    m.cap = 64
    m.cnt = 0
    m.vals = <u64*> PyMem_Malloc(m.cap * sizeof(u64))
    if m.vals == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j
    cdef u64 c
    witness = None
    try:
        _collect(buf, &m)
        for i in range(m.cnt):
            if witness is not None:
                break
            for j in range(i + 1, m.cnt):
                c = m.vals[i] & m.vals[j]
                if not (buf[c >> 3] & (1u << (c & 7))):
                    witness = (int(m.vals[i]), int(m.vals[j]))
                    break
    finally:
        PyMem_Free(m.vals)
    return witness


def common_ones(table, width):
    """Bitwise AND over all member values; the empty table gives all ones."""
    if width > 63:
        return pybits.common_ones(table, width)
    if table == 0:
        return (1 << width) - 1
    cdef bytes data = _le_bytes(table)
    cdef const unsigned char[::1] buf = data
    cdef Py_ssize_t i, n = buf.shape[0]
    cdef int k
    cdef unsigned int b
    cdef u64 acc = (<u64> 1 << width) - 1
    for i in range(n):
        b = buf[i]
        if b:
            for k in range(8):
                if b & (1u << k):
                    acc &= (<u64> i << 3) | <u64> k
            if acc == 0:
                break
    return int(acc)

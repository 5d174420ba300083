# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled mirrors of the pure-Python scan kernels.

Same algorithms, same first-hit order, typed loops over int32 tables.
"""


def idempotent_indices(const int[:, ::1] mul):
    cdef Py_ssize_t i, n = mul.shape[0]
    out = []
    for i in range(n):
        if mul[i, i] == i:
            out.append(i)
    return out


def inverse_table(const int[:, ::1] mul, int one):
    cdef Py_ssize_t i, j, n = mul.shape[0]
    out = []
    cdef int found
    for i in range(n):
        found = -1
        for j in range(n):
            if mul[i, j] == one and mul[j, i] == one:
                found = j
                break
        out.append(found)
    return out


def left_multiple_indices(const int[:, ::1] mul, int x):
    cdef Py_ssize_t r, n = mul.shape[0]
    seen = set()
    for r in range(n):
        seen.add(mul[r, x])
    return sorted(seen)


def right_multiple_indices(const int[:, ::1] mul, int x):
    cdef Py_ssize_t j, n = mul.shape[0]
    seen = set()
    for j in range(n):
        seen.add(mul[x, j])
    return sorted(seen)


def left_witness(const int[:, ::1] mul, int x, int target):
    cdef Py_ssize_t r, n = mul.shape[0]
    for r in range(n):
        if mul[r, x] == target:
            return r
    return -1


cdef _suitable_search(const int[:, ::1] add, const int[:, ::1] mul,
                      const int[::1] neg, int one, int x, int[::1] ry):
    cdef Py_ssize_t s, r, n = mul.shape[0]
    cdef int y, e, f, v
    y = add[one, neg[x]]
    for s in range(n):
        ry[s] = -1
    for s in range(n):
        v = mul[s, y]
        if ry[v] < 0:
            ry[v] = <int> s
    for r in range(n):
        e = mul[r, x]
        if mul[e, e] != e:
            continue
        f = add[one, neg[e]]
        if ry[f] >= 0:
            return (r, ry[f])
    return None


def suitable_search(const int[:, ::1] add, const int[:, ::1] mul,
                    const int[::1] neg, int one, int x):
    import numpy as np
    cdef int[::1] ry = np.empty(mul.shape[0], dtype=np.int32)
    return _suitable_search(add, mul, neg, one, x, ry)


def first_unsuitable(const int[:, ::1] add, const int[:, ::1] mul,
                     const int[::1] neg, int one):
    import numpy as np
    cdef Py_ssize_t x, n = mul.shape[0]
    cdef int[::1] ry = np.empty(n, dtype=np.int32)
    for x in range(n):
        if _suitable_search(add, mul, neg, one, x, ry) is None:
            return x
    return -1


cdef int _inner_inverse(const int[:, ::1] mul, int phi) nogil:
    cdef Py_ssize_t psi, n = mul.shape[0]
    for psi in range(n):
        if mul[mul[phi, psi], phi] == phi:
            return <int> psi
    return -1


def inner_inverse(const int[:, ::1] mul, int phi):
    return _inner_inverse(mul, phi)


def first_nonregular(const int[:, ::1] mul):
    cdef Py_ssize_t phi, n = mul.shape[0]
    for phi in range(n):
        if _inner_inverse(mul, <int> phi) < 0:
            return phi
    return -1


def power_inner_inverse(const int[:, ::1] mul, int phi, int nmax):
    cdef int pw = phi, psi
    cdef int n
    for n in range(1, nmax + 1):
        psi = _inner_inverse(mul, pw)
        if psi >= 0:
            return (n, psi)
        pw = mul[pw, phi]
    return None


def first_non_pi_regular(const int[:, ::1] mul, int nmax):
    cdef Py_ssize_t phi, n = mul.shape[0]
    cdef int pw, psi, k, found
    for phi in range(n):
        pw = <int> phi
        found = 0
        for k in range(nmax):
            psi = _inner_inverse(mul, pw)
            if psi >= 0:
                found = 1
                break
            pw = mul[pw, phi]
        if not found:
            return phi
    return -1


cdef int _stable_power(const int[:, ::1] mul, int x, int nmax) nogil:
    cdef Py_ssize_t t, n_elems = mul.shape[0]
    cdef int pw = x, nxt, n
    for n in range(1, nmax + 1):
        nxt = mul[pw, x]
        for t in range(n_elems):
            if mul[nxt, t] == pw:
                return n
        pw = nxt
    return -1


def stable_power(const int[:, ::1] mul, int x, int nmax):
    return _stable_power(mul, x, nmax)


def first_non_strongly_pi_regular(const int[:, ::1] mul, int nmax):
    cdef Py_ssize_t x, n = mul.shape[0]
    for x in range(n):
        if _stable_power(mul, <int> x, nmax) < 0:
            return x
    return -1


def first_non_dedekind(const int[:, ::1] mul, int one):
    cdef Py_ssize_t a, b, n = mul.shape[0]
    for a in range(n):
        for b in range(n):
            if mul[a, b] == one and mul[b, a] != one:
                return (a, b)
    return None


def first_cohopf_violation(const int[:, ::1] mul, int one, int zero, inv):
    cdef Py_ssize_t x, r, n = mul.shape[0]
    cdef int is_nzd
    for x in range(n):
        if inv[x] >= 0:
            continue
        is_nzd = 1
        for r in range(n):
            if r != zero and mul[x, r] == zero:
                is_nzd = 0
                break
        if is_nzd:
            return x
    return -1


def radical_indices(const int[:, ::1] add, const int[:, ::1] mul,
                    const int[::1] neg, int one,
                    const unsigned char[::1] unit_mask):
    cdef Py_ssize_t r, s, n = mul.shape[0]
    cdef int ok
    out = []
    for r in range(n):
        ok = 1
        for s in range(n):
            if not unit_mask[add[one, neg[mul[s, r]]]]:
                ok = 0
                break
        if ok:
            out.append(r)
    return out


def closure_indices(const int[:, ::1] add, const int[:, ::1] mul,
                    int zero, gens, int left, int right):
    import numpy as np
    cdef Py_ssize_t n = mul.shape[0]
    cdef unsigned char[::1] seen = np.zeros(n, dtype=np.uint8)
    cdef Py_ssize_t r
    cdef int a, b, c
    seen[zero] = 1
    members = [zero]
    queue = []
    for g in gens:
        if not seen[g]:
            seen[g] = 1
            members.append(g)
            queue.append(g)
    while queue:
        a = queue.pop()
        fresh = []
        for b in members:
            c = add[a, b]
            if not seen[c]:
                seen[c] = 1
                fresh.append(c)
        if left:
            for r in range(n):
                c = mul[r, a]
                if not seen[c]:
                    seen[c] = 1
                    fresh.append(c)
        if right:
            for r in range(n):
                c = mul[a, r]
                if not seen[c]:
                    seen[c] = 1
                    fresh.append(c)
        members.extend(fresh)
        queue.extend(fresh)
    return sorted(members)

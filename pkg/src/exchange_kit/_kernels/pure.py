"""Pure-Python scan kernels over materialized ring tables.

Reference implementations: short, obviously-correct loops over nested lists.
The compiled backend mirrors these signatures exactly; parity is enforced by
tests.  All searches walk indices in ascending order, so "first hit" always
means first in the ring's canonical element order.
"""

from __future__ import annotations


def idempotent_indices(mul):
    return [i for i in range(len(mul)) if mul[i][i] == i]


def inverse_table(mul, one):
    """inv[i] = index of the two-sided inverse of i, or -1."""
    n = len(mul)
    inv = [-1] * n
    for i in range(n):
        row = mul[i]
        for j in range(n):
            if row[j] == one and mul[j][i] == one:
                inv[i] = j
                break
    return inv


def left_multiple_indices(mul, x):
    """Sorted indices of the set {r * x : r in R}."""
    return sorted({mul[r][x] for r in range(len(mul))})


def right_multiple_indices(mul, x):
    row = mul[x]
    return sorted(set(row))


def left_witness(mul, x, target):
    """First r with r * x == target, or -1."""
    for r in range(len(mul)):
        if mul[r][x] == target:
            return r
    return -1


def suitable_search(add, mul, neg, one, x):
    """First (r, s) with r*x idempotent and s*(1-x) == 1 - r*x, or None."""
    n = len(mul)
    y = add[one][neg[x]]
    # first witness s for every attainable value of s*y
    ry = [-1] * n
    for s in range(n):
        v = mul[s][y]
        if ry[v] < 0:
            ry[v] = s
    for r in range(n):
        e = mul[r][x]
        if mul[e][e] != e:
            continue
        f = add[one][neg[e]]
        s = ry[f]
        if s >= 0:
            return (r, s)
    return None


def first_unsuitable(add, mul, neg, one):
    for x in range(len(mul)):
        if suitable_search(add, mul, neg, one, x) is None:
            return x
    return -1


def inner_inverse(mul, phi):
    """First psi with phi * psi * phi == phi, or -1."""
    n = len(mul)
    row = mul[phi]
    for psi in range(n):
        if mul[row[psi]][phi] == phi:
            return psi
    return -1


def first_nonregular(mul):
    for phi in range(len(mul)):
        if inner_inverse(mul, phi) < 0:
            return phi
    return -1


def power_inner_inverse(mul, phi, nmax):
    """Smallest n <= nmax with phi**n regular, plus its witness, or None."""
    pw = phi
    for n in range(1, nmax + 1):
        psi = inner_inverse(mul, pw)
        if psi >= 0:
            return (n, psi)
        pw = mul[pw][phi]
    return None


def first_non_pi_regular(mul, nmax):
    for phi in range(len(mul)):
        if power_inner_inverse(mul, phi, nmax) is None:
            return phi
    return -1


def stable_power(mul, x, nmax):
    """Smallest n <= nmax with x**n in x**(n+1) * R, or -1."""
    n_elems = len(mul)
    pw = x
    for n in range(1, nmax + 1):
        nxt = mul[pw][x]
        row = mul[nxt]
        for t in range(n_elems):
            if row[t] == pw:
                return n
        pw = nxt
    return -1


def first_non_strongly_pi_regular(mul, nmax):
    for x in range(len(mul)):
        if stable_power(mul, x, nmax) < 0:
            return x
    return -1


def first_non_dedekind(mul, one):
    n = len(mul)
    for a in range(n):
        row = mul[a]
        for b in range(n):
            if row[b] == one and mul[b][a] != one:
                return (a, b)
    return None


def first_cohopf_violation(mul, one, zero, inv):
    """First left non-zero-divisor that is not a unit, or -1."""
    n = len(mul)
    for x in range(n):
        if inv[x] >= 0:
            continue
        row = mul[x]
        if all(row[r] != zero for r in range(n) if r != zero):
            return x
    return -1


def radical_indices(add, mul, neg, one, unit_mask):
    """Indices r such that 1 - s*r is a unit for every s."""
    n = len(mul)
    out = []
    for r in range(n):
        ok = True
        for s in range(n):
            if not unit_mask[add[one][neg[mul[s][r]]]]:
                ok = False
                break
        if ok:
            out.append(r)
    return out


def closure_indices(add, mul, zero, gens, left, right):
    """Additive closure of gens, optionally closed under left/right products."""
    n = len(mul)
    seen = [False] * n
    seen[zero] = True
    members = [zero]
    queue = []
    for g in gens:
        if not seen[g]:
            seen[g] = True
            members.append(g)
            queue.append(g)
    while queue:
        a = queue.pop()
        fresh = []
        for b in members:
            c = add[a][b]
            if not seen[c]:
                seen[c] = True
                fresh.append(c)
        if left:
            col = [mul[r][a] for r in range(n)]
            for c in col:
                if not seen[c]:
                    seen[c] = True
                    fresh.append(c)
        if right:
            for c in mul[a]:
                if not seen[c]:
                    seen[c] = True
                    fresh.append(c)
        members.extend(fresh)
        queue.extend(fresh)
    return sorted(members)

"""Independent brute-force oracles.

Everything here recomputes properties from raw definitions with plain
Python scans over all elements — no kernels, no library search routines —
so a library bug and an oracle bug would have to coincide to hide a
failure.  Oracles are deliberately slow and only run on small rings.
"""

from __future__ import annotations

import itertools


def all_elements(R):
    return list(R.elements())


def units(R):
    """Two-sided units found by scanning all pairs."""
    elems = all_elements(R)
    out = []
    for a in elems:
        for b in elems:
            if R.eq(R.mul(a, b), R.one) and R.eq(R.mul(b, a), R.one):
                out.append(a)
                break
    return out


def idempotents(R):
    return [x for x in all_elements(R) if R.eq(R.mul(x, x), x)]


def left_ideal(R, x):
    """Re as a set of elements."""
    return {R.mul(r, x) for r in all_elements(R)}


def right_ideal(R, x):
    return {R.mul(x, r) for r in all_elements(R)}


def jacobson(R):
    """J(R) = {r : 1 - s r is a unit for every s}, by definition."""
    elems = all_elements(R)
    unit_set = set(units(R))
    out = []
    for r in elems:
        if all(R.sub(R.one, R.mul(s, r)) in unit_set for s in elems):
            out.append(r)
    return out


def suitable_pairs(R, x):
    """All (e, r, s) with e = r x idempotent and 1 - e = s (1 - x)."""
    elems = all_elements(R)
    y = R.sub(R.one, x)
    out = []
    for r in elems:
        e = R.mul(r, x)
        if not R.eq(R.mul(e, e), e):
            continue
        f = R.sub(R.one, e)
        for s in elems:
            if R.eq(R.mul(s, y), f):
                out.append((e, r, s))
                break
    return out


def strongly_iso_left(R, e, ep):
    return R.eq(R.mul(ep, e), ep) and R.eq(R.mul(e, ep), e)


def regular_elements(R):
    elems = all_elements(R)
    return [x for x in elems
            if any(R.eq(R.mul(R.mul(x, y), x), x) for y in elems)]


def is_pi_regular(R, x):
    elems = all_elements(R)
    p = x
    for _ in range(len(elems)):
        if any(R.eq(R.mul(R.mul(p, y), p), p) for y in elems):
            return True
        p = R.mul(p, x)
    return False


def c2_failures(R):
    """Pairs (e, a) where x -> a x embeds eR into R but a R is no summand.

    Right-module homs eR -> R biject with {a : a e = a} via left
    multiplication; the hom is injective iff |a eR| = |eR|; its image a R
    must then be g R for an idempotent g, else C2 fails for R_R.
    """
    elems = all_elements(R)
    idem = idempotents(R)
    summand_ideals = {frozenset(right_ideal(R, g)) for g in idem}
    failures = []
    for e in idem:
        e_right = right_ideal(R, e)
        for a in elems:
            if not R.eq(R.mul(a, e), a):
                continue
            image = {R.mul(a, v) for v in e_right}
            if len(image) != len(e_right):
                continue
            if frozenset(right_ideal(R, a)) not in summand_ideals:
                failures.append((e, a))
    return failures


def quotient_idempotent_lifts(R, radical_members):
    """For each coset idempotent of R/J, the set of idempotent representatives."""
    elems = all_elements(R)
    rad = set(radical_members)
    cosets = {}
    for x in elems:
        key = frozenset(R.add(x, j) for j in rad)
        cosets.setdefault(key, []).append(x)
    out = []
    for key, members in cosets.items():
        rep = members[0]
        sq = R.mul(rep, rep)
        # idempotent in the quotient: rep^2 - rep in J
        if R.sub(sq, rep) in rad:
            lifts = [m for m in members if R.eq(R.mul(m, m), m)]
            out.append((key, members, lifts))
    return out


def dense_window_mul(A_cols, B_cols, rows, cols):
    """Dense product of two column-dict matrices on a window, plain loops."""
    out = [[0] * cols for _ in range(rows)]
    for j in range(cols):
        for k, w in B_cols(j):
            for i, v in A_cols(k):
                if i < rows:
                    out[i][j] += v * w
    return out


# --- module-theory oracles -------------------------------------------------


def subgroups_by_subset_scan(M):
    """Every subgroup of M found by scanning all subsets (|M| <= 16 only)."""
    elems = list(M.elements())
    n = len(elems)
    assert n <= 16, "subset scan is 2^|M|"
    index = {e: i for i, e in enumerate(elems)}
    add = [[index[M.add(elems[i], elems[j])] for j in range(n)] for i in range(n)]
    zero = index[M.zero]
    out = []
    for mask in range(1 << n):
        if not (mask >> zero) & 1:
            continue
        members = [i for i in range(n) if (mask >> i) & 1]
        if all((mask >> add[i][j]) & 1 for i in members for j in members):
            out.append(frozenset(members))
    return out


def order_histogram(M, members):
    """Element-order multiset: a complete isomorphism invariant here."""
    hist = {}
    for e in members:
        k = 1
        acc = e
        while acc != M.zero:
            acc = M.add(acc, e)
            k += 1
        hist[k] = hist.get(k, 0) + 1
    return tuple(sorted(hist.items()))


def c2_by_definition(M):
    """C2 from scratch: complements by scan, isomorphism by order histogram.

    Returns (value, witness_members or None).
    """
    elems = list(M.elements())
    index = {e: i for i, e in enumerate(elems)}
    subs = subgroups_by_subset_scan(M)
    total = len(elems)
    zero = index[M.zero]

    def members_of(s):
        return [elems[i] for i in sorted(s)]

    def is_summand(s):
        want = total // len(s)
        for other in subs:
            if len(other) == want and s & other == {zero}:
                return True
        return False

    summand_hists = {order_histogram(M, members_of(s))
                     for s in subs if is_summand(s)}
    for s in sorted(subs, key=lambda s: (len(s), sorted(s))):
        if order_histogram(M, members_of(s)) in summand_hists and not is_summand(s):
            return False, members_of(s)
    return True, None

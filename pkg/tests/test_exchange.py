"""Suitable decomposition, the staged chain, certificates, and repairs."""

import itertools
import random

import pytest

import oracles
from exchange_kit import (
    ExchangeCertificate,
    MatrixRing,
    ZMod,
    exchange_chain,
    exchange_chain_via_quotient,
    first_certificate_violation,
    jacobson_radical,
    pi_regular_reduce,
    regularize,
    suitable_decompose,
    transfer_idempotent,
    triangular_ring,
    validate_certificate,
    verify_exchange_ring,
)
from exchange_kit import exchange as exchange_mod
from exchange_kit.errors import (
    NotPiRegular,
    NotRegular,
    NotSuitable,
    PreconditionFailed,
    RegularizationFailed,
)
from exchange_kit.idempotents import family


def test_decompose_frozen_z6():
    dec = suitable_decompose(ZMod(6), 3, 4)
    assert (dec.e, dec.f) == (3, 4)
    dec.check()


def test_decompose_agrees_with_pair_oracle(small_corpus):
    for name, R in small_corpus:
        if R.order > 16:
            continue
        for x in R.elements():
            dec = suitable_decompose(R, x, R.sub(R.one, x), backend="search")
            pairs = oracles.suitable_pairs(R, x)
            assert (dec.e, dec.r, dec.s) in pairs, (name, x)


def test_decompose_kernel_vs_search_all_elements():
    for base in (2, 3):
        R = MatrixRing(ZMod(base), 2)
        for x in R.elements():
            y = R.sub(R.one, x)
            a = suitable_decompose(R, x, y, backend="kernel")
            b = suitable_decompose(R, x, y, backend="search")
            a.check()
            b.check()
            # same split up to the witness: both e's generate the same left ideal
            assert R.is_idempotent(a.e) and R.is_idempotent(b.e)


def test_decompose_rejects_bad_input():
    R = ZMod(6)
    with pytest.raises(PreconditionFailed):
        suitable_decompose(R, 3, 3)
    with pytest.raises(ValueError):
        suitable_decompose(R, 3, 4, backend="kernel")  # not a matrix ring
    with pytest.raises(ValueError):
        suitable_decompose(R, 3, 4, backend="bogus")


def test_not_suitable_surfaces_via_doctored_search(monkeypatch):
    monkeypatch.setattr(exchange_mod._kernels, "suitable_search",
                        lambda t, i: None)
    with pytest.raises(NotSuitable):
        suitable_decompose(ZMod(6), 3, 4, backend="search")


def test_certificate_tamper_detection():
    R = ZMod(12)
    res = exchange_chain(R, (9, 8, 8))
    cert = res.certificate
    assert validate_certificate(cert)
    bad = ExchangeCertificate(ring=R, x=cert.x, e=(9, 1, 4),
                              memberships=cert.memberships)
    msg = first_certificate_violation(bad)
    assert msg is not None and "e_1" in msg
    short = ExchangeCertificate(ring=R, x=cert.x, e=cert.e[:2],
                                memberships=cert.memberships)
    assert first_certificate_violation(short) == \
        "length mismatch between x, e, and memberships"


def test_chain_frozen_values():
    res = exchange_chain(ZMod(6), (3, 4))
    assert res.certificate.e == (3, 4)
    res12 = exchange_chain(ZMod(12), (9, 8, 8))
    assert res12.certificate.e == (9, 0, 4)
    assert res12.certificate.memberships == (1, 0, 8)
    assert len(res12.stages) == 3
    assert res12.stages[-1].f == 0


def test_chain_stage_invariants_recheck():
    R = ZMod(12)
    res = exchange_chain(R, (9, 8, 8))
    diag = [res.stages[i].e[i] for i in range(len(res.stages))]
    for st in res.stages:
        st.verify(diag)     # would raise on any broken invariant
        assert R.eq(R.mul(st.v, st.v_inv), R.one)


def test_chain_exhaustive_small_rings(small_corpus):
    # every family of length <= 3 in rings of order <= 8 (full acceptance
    # sweep covers <= 16; this is the fast regression slice)
    for name, R in small_corpus:
        if R.order > 8:
            continue
        elems = R.elements()
        for x1, x2 in itertools.product(elems, repeat=2):
            x3 = R.sub(R.sub(R.one, x1), x2)
            res = exchange_chain(R, (x1, x2, x3))
            assert validate_certificate(res.certificate), (name, x1, x2)


def test_chain_sampled_larger_rings(small_corpus):
    rng = random.Random(43)
    for name, R in small_corpus:
        if R.order <= 8:
            continue
        elems = R.elements()
        for _ in range(40):
            k = rng.randrange(2, 6)
            xs = [rng.choice(elems) for _ in range(k - 1)]
            xs.append(R.sub(R.one, R.sum_many(xs)) if xs else R.one)
            res = exchange_chain(R, tuple(xs))
            assert validate_certificate(res.certificate), (name, xs)


def test_chain_rejects_bad_family():
    with pytest.raises(PreconditionFailed):
        exchange_chain(ZMod(6), (2, 2))
    with pytest.raises(PreconditionFailed):
        exchange_chain(ZMod(6), ())


def test_via_quotient_frozen_z12():
    res = exchange_chain_via_quotient(ZMod(12), (9, 8, 8))
    assert res.certificate.e == (9, 0, 4)
    assert res.certificate.memberships == (1, 0, 2)
    assert res.u == 1
    assert validate_certificate(res.certificate)


def test_via_quotient_equivalence(small_corpus):
    # both paths must deliver valid certificates on the same inputs, and the
    # lifted family must project onto the quotient-chain certificate
    rng = random.Random(47)
    for name, R in small_corpus:
        if R.order > 16:
            continue
        rad = jacobson_radical(R)
        elems = R.elements()
        for _ in range(25):
            x1 = rng.choice(elems)
            x2 = rng.choice(elems)
            x3 = R.sub(R.sub(R.one, x1), x2)
            xs = (x1, x2, x3)
            direct = exchange_chain(R, xs)
            viaq = exchange_chain_via_quotient(R, xs, rad=rad)
            assert validate_certificate(direct.certificate)
            assert validate_certificate(viaq.certificate)
            q_cert = viaq.quotient_chain.certificate
            assert tuple(rad.project(e) for e in viaq.lifted) == q_cert.e


def test_regularize_frozen_values():
    w = regularize(ZMod(6), 3)
    assert (w.psi, w.p, w.phi_prime, w.mode) == (1, 4, 1, "exact")
    R = ZMod(6)
    assert R.eq(R.mul(w.phi_prime, w.phi_prime_inv), R.one)
    assert R.eq(R.mul(w.phi, w.p), R.zero)

    with pytest.raises(NotRegular):
        regularize(ZMod(4), 2)

    # E12 in M_2(F_2) is regular but no inner inverse makes phi + p a unit
    M = MatrixRing(ZMod(2), 2)
    with pytest.raises(RegularizationFailed):
        regularize(M, ((0, 1), (0, 0)))


def test_regularize_mod_radical_frozen_z8():
    R = ZMod(8)
    rad = jacobson_radical(R)
    w = regularize(R, 2, rad=rad)
    assert w.mode == "mod_radical"
    assert (w.psi, w.p_tilde, w.phi_tilde, w.p, w.phi_prime) == (0, 1, 3, 3, 5)
    # both units verified in R itself
    assert R.eq(R.mul(w.phi_tilde, w.phi_tilde_inv), R.one)
    assert R.eq(R.mul(w.phi_prime, w.phi_prime_inv), R.one)


def test_regularize_mod_radical_units_in_r(small_corpus):
    # every witness the mod-radical mode emits has its units checked in R
    targets = {"zmod8", "zmod12", "z2xz4"}
    for name, R in small_corpus:
        if name not in targets:
            continue
        rad = jacobson_radical(R)
        for phi in R.elements():
            try:
                w = regularize(R, phi, rad=rad)
            except (NotRegular, RegularizationFailed):
                continue
            assert R.eq(R.mul(w.phi_prime, w.phi_prime_inv), R.one), (name, phi)
            assert R.eq(R.mul(w.phi_tilde, w.phi_tilde_inv), R.one), (name, phi)
            assert R.sub(w.p_tilde, R.sub(R.one, R.mul(w.psi, w.phi))) \
                in rad.closure


def test_regularize_family_assertion_paths():
    T2 = triangular_ring(2)
    # e22 * g = 0 one-sided; phi = e22 + g
    e22, g = 1, 6
    phi = T2.add(e22, g)
    fam = family(T2, (e22, g))
    w = regularize(T2, phi, fam=fam)
    assert T2.eq(T2.mul(w.phi_prime, w.phi_prime_inv), T2.one)
    with pytest.raises(ValueError):
        regularize(T2, phi, rad=jacobson_radical(T2), fam=fam)
    with pytest.raises(PreconditionFailed):
        regularize(T2, T2.one, fam=fam)   # family does not sum to 1


def test_pi_regular_reduce_paths():
    T2 = triangular_ring(2)
    e22, g = 1, 6
    phi = T2.add(e22, g)
    fam = family(T2, (e22, g))
    auto = pi_regular_reduce(T2, phi, fam)
    assert T2.eq(T2.mul(T2.mul(phi, auto.psi_prime), phi), phi)
    explicit = pi_regular_reduce(T2, phi, fam, n=2)
    assert explicit.n == 2
    assert T2.eq(T2.mul(T2.mul(phi, explicit.psi_prime), phi), phi)
    with pytest.raises(PreconditionFailed):
        pi_regular_reduce(T2, T2.one, fam)   # fam does not sum to phi


def test_pi_regular_reduce_property(small_corpus):
    for name, R in small_corpus:
        if R.order > 16:
            continue
        ids = R.idempotents()
        for g1 in ids:
            for g2 in ids:
                if not R.eq(R.mul(g1, g2), R.zero):
                    continue
                phi = R.add(g1, g2)
                w = pi_regular_reduce(R, phi, family(R, (g1, g2)))
                assert R.eq(R.mul(R.mul(phi, w.psi_prime), phi), phi), name


def test_pi_regular_reduce_doctored_failure(monkeypatch):
    T2 = triangular_ring(2)
    monkeypatch.setattr(exchange_mod._kernels, "power_inner_inverse",
                        lambda t, i: None)
    with pytest.raises(NotPiRegular):
        pi_regular_reduce(T2, T2.add(1, 6), family(T2, (1, 6)))


def test_transfer_idempotent_frozen_z12():
    w = transfer_idempotent(ZMod(12), 8, 4, [(8, 8)])
    assert (w.g, w.z, w.r_prime, w.f_double_prime) == (4, 8, 8, 4)


def test_transfer_idempotent_preconditions():
    R = ZMod(12)
    with pytest.raises(PreconditionFailed):
        # r_i y' f' != f'
        transfer_idempotent(R, 8, 4, [(1, 4)])
    with pytest.raises(PreconditionFailed):
        # history pair whose product is not idempotent
        transfer_idempotent(R, 8, 4, [(2, 4)])


def test_transfer_idempotent_from_chain_history(small_corpus):
    # rebuild f_j inside R y_j from the recorded stage witnesses
    for name, R in small_corpus:
        if R.order > 16:
            continue
        res = exchange_chain(R, (R.one, R.zero))
        for st in res.stages:
            if R.eq(st.f, R.zero):
                continue
            w = transfer_idempotent(R, st.y, st.f, [(st.f_witness, st.y)])
            assert R.is_idempotent(w.f_double_prime)


def test_verify_exchange_ring_modes():
    rep = verify_exchange_ring(ZMod(16))
    assert rep.suitable and rep.mode == "exhaustive" and rep.checked == 16
    rep = verify_exchange_ring(ZMod(257), sample_budget=40)
    assert rep.suitable and rep.mode == "sampled" and rep.checked == 40


def test_verify_exchange_ring_whole_corpus(corpus):
    for name, R in corpus:
        rep = verify_exchange_ring(R)
        assert rep.suitable, name

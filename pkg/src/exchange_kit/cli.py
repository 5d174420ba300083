"""Command-line surface: classification, chains, colfin demos, corpus runs.

All machine output is JSON on stdout (sorted keys, canonical separators, so
identical inputs give byte-identical output); diagnostics go to stderr.
Exit codes: 0 success / property verified, 1 verified negative finding
(NotSuitable, C2 failure, invalid certificate, ...), 2 malformed input.

    exchange-kit classify zmod6.ring
    exchange-kit chain zmod6.ring --family 3,4
    exchange-kit chain zmod12.ring --family 9,8,8 --via-quotient
    exchange-kit verify m2f2.ring
    exchange-kit chain zmod6.ring --family 3,4 | exchange-kit check -
    exchange-kit lemma lemma1 zmod6.ring 3 3
    exchange-kit radical zmod8.ring
    exchange-kit lift zmod12.ring --x 3
    exchange-kit colfin demo-limit --window 8
    exchange-kit colfin chain --family diagonal --depth 6 --window 8
    exchange-kit module c2 "2,4"
    exchange-kit corpus data/corpus.json
"""

from __future__ import annotations

import argparse
import json
import sys

from . import colfin as cf
from .descriptors import load_ring, ring_from_descriptor
from .errors import (
    CapExceeded,
    ExchangeKitError,
    InvariantViolated,
    MalformedTable,
    NoLift,
    NotIdempotent,
    NotRegular,
    NotStronglyIso,
    NotSuitable,
    PreconditionFailed,
)
from .exchange import (
    ExchangeCertificate,
    exchange_chain,
    exchange_chain_via_quotient,
    first_certificate_violation,
    verify_exchange_ring,
)
from .idempotents import (
    family as make_family,
    is_left_strongly_iso,
    is_right_strongly_iso,
    lemma1_equivalences,
    orthogonalize,
    power_kill,
    refine_three,
    transport_family,
    unit_from_strong_iso,
)
from .modules import FiniteAbelianModule, lemma8_check, module_has_C2
from .radical import classify, jacobson_radical, lift_idempotent
from .rings import Ring


# ---------------------------------------------------------------------------
# output and parsing helpers


def _emit(payload, pretty: bool = False) -> None:
    if pretty:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(json.dumps(payload, sort_keys=True,
                                    separators=(",", ":")) + "\n")


def _diag(msg: str) -> None:
    sys.stderr.write(msg.rstrip() + "\n")


class CliInputError(Exception):
    """Malformed input: maps to exit code 2."""


def _load_ring_checked(path: str) -> Ring:
    try:
        if path == "-":
            return ring_from_descriptor(json.load(sys.stdin))
        return load_ring(path)
    except FileNotFoundError:
        raise CliInputError(f"no such file: {path}")
    except json.JSONDecodeError as ex:
        raise CliInputError(
            f"parse error in {path} at line {ex.lineno} column {ex.colno}: {ex.msg}")
    except (ValueError, KeyError, TypeError, MalformedTable, CapExceeded) as ex:
        raise CliInputError(f"bad ring descriptor in {path}: {ex}")


def _split_top_level(text: str):
    """Split on commas outside brackets: "3,4" -> ["3", "4"];
    "[[1,0],[0,1]],[[0,0],[0,0]]" -> two matrix literals."""
    parts, depth, buf = [], 0, []
    for ch in text:
        if ch in "[{(":
            depth += 1
        elif ch in ")}]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(buf))
            buf = []
        else:
            buf.append(ch)
    if buf:
        parts.append("".join(buf))
    return [p.strip() for p in parts if p.strip()]


def _parse_element(ring: Ring, literal: str):
    try:
        obj = json.loads(literal)
    except json.JSONDecodeError as ex:
        raise CliInputError(
            f"bad element literal {literal!r} at line {ex.lineno} "
            f"column {ex.colno}: {ex.msg}")
    try:
        return ring.element_from_json(obj)
    except (ValueError, KeyError, TypeError, IndexError, PreconditionFailed) as ex:
        raise CliInputError(f"element {literal!r} is not in the ring: {ex}")


def _parse_family(ring: Ring, text: str):
    return tuple(_parse_element(ring, part) for part in _split_top_level(text))


def _ej(ring: Ring, x):
    return ring.element_to_json(x)


def _flags_payload(report) -> dict:
    out = {}
    for name in report.FLAG_NAMES:
        fl = report.flags[name]
        entry = {"value": fl.value}
        if fl.counterexample is not None:
            entry["counterexample"] = fl.counterexample
        if fl.detail:
            entry["detail"] = fl.detail
        out[name] = entry
    return out


def _stage_payload(ring: Ring, st) -> dict:
    return {
        "stage": st.stage,
        "e": [_ej(ring, g) for g in st.e],
        "f": _ej(ring, st.f),
        "v": _ej(ring, st.v),
        "v_inv": _ej(ring, st.v_inv),
        "memberships": [_ej(ring, s) for s in st.memberships],
        "f_witness": _ej(ring, st.f_witness),
    }


def _certificate_payload(ring: Ring, cert: ExchangeCertificate) -> dict:
    return {
        "x": [_ej(ring, v) for v in cert.x],
        "e": [_ej(ring, v) for v in cert.e],
        "memberships": [_ej(ring, v) for v in cert.memberships],
    }


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(args) -> int:
    ring = _load_ring_checked(args.ring)
    report = classify(ring)
    payload = {
        "ring": ring.describe(),
        "order": report.ring_order,
        "radical_size": report.radical_size,
        "nilpotency_index": report.nilpotency_index,
        "flags": _flags_payload(report),
    }
    _emit(payload, args.pretty)
    return 0


def cmd_chain(args) -> int:
    ring = _load_ring_checked(args.ring)
    fam = _parse_family(ring, args.family)
    total = ring.zero
    for v in fam:
        total = ring.add(total, v)
    if not ring.eq(total, ring.one):
        raise CliInputError(
            f"family does not sum to 1: {[_ej(ring, v) for v in fam]}")
    try:
        if args.via_quotient:
            result = exchange_chain_via_quotient(ring, fam)
            payload = {
                "ring": ring.describe(),
                "via_quotient": True,
                "certificate": _certificate_payload(ring, result.certificate),
                "quotient_stages": [
                    _stage_payload(result.quotient_chain.certificate.ring, st)
                    for st in result.quotient_chain.stages],
                "u": _ej(ring, result.u),
                "valid": True,
            }
        else:
            result = exchange_chain(ring, fam)
            payload = {
                "ring": ring.describe(),
                "via_quotient": False,
                "certificate": _certificate_payload(ring, result.certificate),
                "stages": [_stage_payload(ring, st) for st in result.stages],
                "valid": True,
            }
    except NotSuitable as ex:
        _emit({"ring": ring.describe(), "valid": False,
               "error": "not_suitable", "detail": str(ex)}, args.pretty)
        return 1
    _emit(payload, args.pretty)
    return 0


def cmd_verify(args) -> int:
    ring = _load_ring_checked(args.ring)
    report = verify_exchange_ring(ring, sample_budget=args.samples, seed=args.seed)
    payload = {
        "ring": ring.describe(),
        "order": report.order,
        "suitable": report.suitable,
        "mode": report.mode,
        "checked": report.checked,
    }
    if report.counterexample is not None:
        payload["counterexample"] = _ej(ring, report.counterexample)
    _emit(payload, args.pretty)
    return 0 if report.suitable else 1


def cmd_check(args) -> int:
    try:
        if args.certificate == "-":
            data = json.load(sys.stdin)
        else:
            with open(args.certificate, "r", encoding="utf-8") as fh:
                data = json.load(fh)
    except FileNotFoundError:
        raise CliInputError(f"no such file: {args.certificate}")
    except json.JSONDecodeError as ex:
        raise CliInputError(
            f"parse error at line {ex.lineno} column {ex.colno}: {ex.msg}")
    try:
        ring = ring_from_descriptor(data["ring"])
        cert_data = data["certificate"]
        cert = ExchangeCertificate(
            ring=ring,
            x=tuple(ring.element_from_json(v) for v in cert_data["x"]),
            e=tuple(ring.element_from_json(v) for v in cert_data["e"]),
            memberships=tuple(ring.element_from_json(v)
                              for v in cert_data["memberships"]),
        )
    except (KeyError, ValueError, TypeError, PreconditionFailed) as ex:
        raise CliInputError(f"bad certificate payload: {ex}")
    violation = first_certificate_violation(cert)
    payload = {"ring": ring.describe(), "valid": violation is None}
    if violation is not None:
        payload["violation"] = violation
    _emit(payload, args.pretty)
    return 0 if violation is None else 1


def cmd_radical(args) -> int:
    ring = _load_ring_checked(args.ring)
    rad = jacobson_radical(ring)
    payload = {
        "ring": ring.describe(),
        "members": [_ej(ring, v) for v in rad.members],
        "size": len(rad.members),
        "nilpotency_index": rad.nilpotency_index,
        "quotient_order": rad.quotient.order,
    }
    _emit(payload, args.pretty)
    return 0


def cmd_lift(args) -> int:
    ring = _load_ring_checked(args.ring)
    rad = jacobson_radical(ring)
    x = _parse_element(ring, args.x)
    eps = rad.project(x) if args.eps is None else rad.project(
        _parse_element(ring, args.eps))
    try:
        result = lift_idempotent(rad, x, eps, method=args.method)
    except NotIdempotent as ex:
        raise CliInputError(f"target is not idempotent in the quotient: {ex}")
    except NoLift as ex:
        _emit({"ring": ring.describe(), "lifted": False, "detail": str(ex)},
              args.pretty)
        return 1
    payload = {
        "ring": ring.describe(),
        "lifted": True,
        "e": _ej(ring, result.e),
        "witness": _ej(ring, result.witness),
        "method": args.method,
    }
    _emit(payload, args.pretty)
    return 0


def cmd_lemma(args) -> int:
    ring = _load_ring_checked(args.ring)
    kind = args.which
    pretty = args.pretty
    if kind == "iso":
        e = _parse_element(ring, args.args[0])
        ep = _parse_element(ring, args.args[1])
        try:
            if args.right:
                value = is_right_strongly_iso(ring, e, ep)
            else:
                value = is_left_strongly_iso(ring, e, ep)
        except NotIdempotent as ex:
            raise CliInputError(str(ex))
        _emit({"ring": ring.describe(), "side": "right" if args.right else "left",
               "strongly_iso": value}, pretty)
        return 0 if value else 1
    if kind == "lemma1":
        e = _parse_element(ring, args.args[0])
        ep = _parse_element(ring, args.args[1])
        try:
            rep = lemma1_equivalences(ring, e, ep)
        except NotIdempotent as ex:
            raise CliInputError(str(ex))
        payload = {
            "ring": ring.describe(),
            "clauses": {
                "strongly_iso": rep.strongly_iso,
                "same_left_ideal": rep.same_left_ideal,
                "perturbation": rep.perturbation,
                "unit_transport": rep.unit_transport,
                "complements_right_iso": rep.complements_right_iso,
            },
            "agree": rep.all_agree(),
        }
        if rep.u_witness is not None:
            payload["u"] = _ej(ring, rep.u_witness)
        if rep.r_witness is not None:
            payload["r"] = _ej(ring, rep.r_witness)
        _emit(payload, pretty)
        return 0 if rep.all_agree() else 1
    if kind == "unit":
        e = _parse_element(ring, args.args[0])
        ep = _parse_element(ring, args.args[1])
        try:
            wit = unit_from_strong_iso(ring, e, ep)
        except NotIdempotent as ex:
            raise CliInputError(str(ex))
        except NotStronglyIso as ex:
            _emit({"ring": ring.describe(), "strongly_iso": False,
                   "detail": str(ex)}, pretty)
            return 1
        _emit({"ring": ring.describe(), "strongly_iso": True,
               "u": _ej(ring, wit.u), "u_inv": _ej(ring, wit.u_inv),
               "identities": wit.identities()}, pretty)
        return 0
    if kind == "refine":
        x1 = _parse_element(ring, args.args[0])
        x2 = _parse_element(ring, args.args[1])
        x3 = _parse_element(ring, args.args[2])
        try:
            res = refine_three(ring, x1, x2, x3)
        except (NotIdempotent, PreconditionFailed) as ex:
            raise CliInputError(str(ex))
        _emit({"ring": ring.describe(),
               "e": [_ej(ring, res.e1), _ej(ring, res.e2), _ej(ring, res.e3)],
               "memberships": [_ej(ring, res.s1), _ej(ring, res.s2),
                               _ej(ring, res.s3)]}, pretty)
        return 0
    if kind == "transport":
        e = _parse_element(ring, args.args[0])
        ep = _parse_element(ring, args.args[1])
        fam = make_family(ring, _parse_family(ring, args.family))
        try:
            out = transport_family(ring, e, ep, fam)
        except (NotIdempotent, NotStronglyIso, PreconditionFailed) as ex:
            raise CliInputError(str(ex))
        _emit({"ring": ring.describe(),
               "members": [_ej(ring, g) for g in out.members]}, pretty)
        return 0
    if kind == "orthogonalize":
        fam = make_family(ring, _parse_family(ring, args.family))
        u = None if args.unit is None else _parse_element(ring, args.unit)
        rad = jacobson_radical(ring) if args.radical else None
        try:
            out = orthogonalize(ring, fam, u=u, radical=rad)
        except ExchangeKitError as ex:
            raise CliInputError(str(ex))
        _emit({"ring": ring.describe(),
               "members": [_ej(ring, g) for g in out.members]}, pretty)
        return 0
    if kind == "power-kill":
        r = _parse_element(ring, args.args[0])
        n = int(args.args[1])
        fam = make_family(ring, _parse_family(ring, args.family))
        try:
            ok = power_kill(ring, fam, r, n)
        except PreconditionFailed as ex:
            raise CliInputError(str(ex))
        _emit({"ring": ring.describe(), "killed": ok}, pretty)
        return 0 if ok else 1
    raise CliInputError(f"unknown lemma operation {kind!r}")


def cmd_colfin(args) -> int:
    if args.colfin_cmd == "demo-limit":
        report = cf.unit_limit_counterexample(window=args.window, depth=args.depth)
        _emit(report.to_payload(), args.pretty)
        return 0
    if args.colfin_cmd == "chain":
        spec = args.family
        if spec in cf.BUILTIN_FAMILIES:
            fam = cf.BUILTIN_FAMILIES[spec]()
        else:
            try:
                with open(spec, "r", encoding="utf-8") as fh:
                    payload = json.load(fh)
            except FileNotFoundError:
                raise CliInputError(
                    f"family {spec!r} is neither a builtin "
                    f"({', '.join(sorted(cf.BUILTIN_FAMILIES))}) nor a file")
            except json.JSONDecodeError as ex:
                raise CliInputError(
                    f"parse error in {spec} at line {ex.lineno} "
                    f"column {ex.colno}: {ex.msg}")
            try:
                fam = cf.load_family(payload)
            except (ValueError, KeyError, TypeError) as ex:
                raise CliInputError(f"bad family spec: {ex}")
        try:
            window = cf.TruncationWindow(depth=args.depth, width=args.window)
            report = cf.truncated_chain(fam, window)
        except PreconditionFailed as ex:
            raise CliInputError(str(ex))
        _emit(report.to_payload(), args.pretty)
        return 0
    raise CliInputError(f"unknown colfin subcommand {args.colfin_cmd!r}")


def _module_from_cli(spec: str) -> FiniteAbelianModule:
    """Parse "2,4" (prime-power moduli, comma separated) into a module."""
    factors = []
    for chunk in _split_top_level(spec):
        try:
            q = int(chunk)
        except ValueError:
            raise CliInputError(f"bad modulus {chunk!r}")
        if q < 2:
            raise CliInputError(f"modulus {q} must be >= 2")
        p = 2
        base, k = None, 0
        n = q
        while p * p <= n:
            if n % p == 0:
                base = p
                while n % p == 0:
                    n //= p
                    k += 1
                break
            p += 1
        if base is None:
            base, k, n = n, 1, 1
        if n != 1:
            raise CliInputError(f"modulus {q} is not a prime power")
        factors.append((base, k))
    if not factors:
        raise CliInputError("empty module spec")
    return FiniteAbelianModule(tuple(sorted(factors)))


def cmd_module(args) -> int:
    M = _module_from_cli(args.spec)
    if args.module_cmd == "c2":
        try:
            rep = module_has_C2(M)
        except CapExceeded as ex:
            raise CliInputError(str(ex))
        payload = {"module": M.describe(),
                   "factors": [list(f) for f in M.factors]}
        payload.update(rep.to_payload())
        _emit(payload, args.pretty)
        return 0 if rep.value else 1
    if args.module_cmd == "lemma8":
        try:
            rep = lemma8_check(M)
        except CapExceeded as ex:
            raise CliInputError(str(ex))
        _emit(rep.to_payload(), args.pretty)
        return 0
    raise CliInputError(f"unknown module subcommand {args.module_cmd!r}")


def cmd_corpus(args) -> int:
    import os
    try:
        with open(args.manifest, "r", encoding="utf-8") as fh:
            manifest = json.load(fh)
    except FileNotFoundError:
        raise CliInputError(f"no such file: {args.manifest}")
    except json.JSONDecodeError as ex:
        raise CliInputError(
            f"parse error in {args.manifest} at line {ex.lineno} "
            f"column {ex.colno}: {ex.msg}")
    if not isinstance(manifest, dict) or "entries" not in manifest:
        raise CliInputError("manifest must be an object with an 'entries' list")
    base = os.path.dirname(os.path.abspath(args.manifest))
    rows = []
    all_ok = True
    for entry in manifest["entries"]:
        name = entry.get("name", entry["ring"])
        path = entry["ring"]
        if not os.path.isabs(path):
            path = os.path.join(base, path)
        ring = _load_ring_checked(path)
        mismatches = []
        report = classify(ring)
        expected_flags = entry.get("expect", {}).get("flags", {})
        for flag, want in sorted(expected_flags.items()):
            if flag not in report.flags:
                mismatches.append(f"unknown flag {flag}")
                continue
            got = report.flags[flag].value
            if got != want:
                mismatches.append(f"flag {flag}: expected {want}, got {got}")
        for chain_spec in entry.get("chains", ()):
            fam = tuple(ring.element_from_json(v) for v in chain_spec["family"])
            want = chain_spec.get("expect", "valid")
            try:
                result = exchange_chain(ring, fam)
                got = "valid" if first_certificate_violation(
                    result.certificate) is None else "invalid"
            except NotSuitable:
                got = "not_suitable"
            if got != want:
                mismatches.append(
                    f"chain {chain_spec['family']}: expected {want}, got {got}")
        ok = not mismatches
        all_ok = all_ok and ok
        rows.append({
            "name": name,
            "ok": ok,
            "mismatches": mismatches,
            "provenance": entry.get("provenance", ""),
        })
    _emit({"entries": rows, "ok": all_ok}, args.pretty)
    return 0 if all_ok else 1


# ---------------------------------------------------------------------------
# argument wiring


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="exchange-kit",
        description="Finite-ring exchange laboratory: decompositions, "
                    "classification, chains, and exact column-finite demos.")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--pretty", action="store_true",
                       help="indent the JSON output")

    p = sub.add_parser("classify", help="classification report for a ring file")
    p.add_argument("ring")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("chain", help="run the staged exchange chain")
    p.add_argument("ring")
    p.add_argument("--family", required=True,
                   help="comma-separated element literals summing to 1")
    p.add_argument("--via-quotient", action="store_true",
                   help="chain in R/J(R), then lift")
    common(p)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("verify", help="suitability check over all of R (or samples)")
    p.add_argument("ring")
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check", help="re-validate an emitted chain certificate")
    p.add_argument("certificate", help="certificate JSON file, or - for stdin")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("lemma", help="idempotent-calculus operations")
    p.add_argument("which", choices=["iso", "lemma1", "unit", "refine",
                                     "transport", "orthogonalize", "power-kill"])
    p.add_argument("ring")
    p.add_argument("args", nargs="*",
                   help="element literals (see each operation)")
    p.add_argument("--family", default="",
                   help="family literals for transport/orthogonalize/power-kill")
    p.add_argument("--unit", default=None, help="unit for orthogonalize")
    p.add_argument("--radical", action="store_true",
                   help="orthogonalize: allow radical pairwise products")
    p.add_argument("--right", action="store_true",
                   help="iso: check the right-sided relation")
    common(p)
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("radical", help="Jacobson radical data")
    p.add_argument("ring")
    common(p)
    p.set_defaults(func=cmd_radical)

    p = sub.add_parser("lift", help="lift a quotient idempotent")
    p.add_argument("ring")
    p.add_argument("--x", required=True,
                   help="element whose multiple realizes the lift (e = s x)")
    p.add_argument("--eps", default=None,
                   help="idempotent target in R/J as a representative "
                        "(default: the image of x)")
    p.add_argument("--method", choices=["search", "newton"], default="search")
    common(p)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("colfin", help="column-finite sandbox")
    csub = p.add_subparsers(dest="colfin_cmd", required=True)
    pc = csub.add_parser("demo-limit",
                         help="limit-of-units counterexample report")
    pc.add_argument("--window", type=int, default=8)
    pc.add_argument("--depth", type=int, default=8)
    common(pc)
    pc.set_defaults(func=cmd_colfin)
    pc = csub.add_parser("chain", help="truncated chain on a summable family")
    pc.add_argument("--family", required=True,
                    help="builtin name (diagonal, block2, superdiagonal) "
                         "or a family spec file")
    pc.add_argument("--depth", type=int, default=6)
    pc.add_argument("--window", type=int, default=8)
    common(pc)
    pc.set_defaults(func=cmd_colfin)

    p = sub.add_parser("module", help="finite abelian module checks")
    msub = p.add_subparsers(dest="module_cmd", required=True)
    pm = msub.add_parser("c2", help="C2 check, e.g. module c2 \"2,4\"")
    pm.add_argument("spec", help="comma-separated prime-power moduli")
    common(pm)
    pm.set_defaults(func=cmd_module)
    pm = msub.add_parser("lemma8", help="endomorphism-ring transfer check")
    pm.add_argument("spec", help="comma-separated prime-power moduli")
    common(pm)
    pm.set_defaults(func=cmd_module)

    p = sub.add_parser("corpus", help="run a corpus manifest")
    p.add_argument("manifest")
    common(p)
    p.set_defaults(func=cmd_corpus)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliInputError as ex:
        _diag(f"error: {ex}")
        return 2
    except (PreconditionFailed, CapExceeded) as ex:
        _diag(f"error: {ex}")
        return 2
    except (NotSuitable, NotRegular) as ex:
        _diag(f"negative finding: {ex}")
        return 1
    except InvariantViolated as ex:
        _diag(f"invariant violated (this is a bug): {ex}")
        return 1
    except ExchangeKitError as ex:
        _diag(f"error: {ex}")
        return 1


if __name__ == "__main__":
    sys.exit(main())

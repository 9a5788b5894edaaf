"""Command line front end: ``braidcrypt <command> ...``.

Exit status: 0 on success, 1 when the answer is negative (not conjugate, no
root, unequal, failed attack), 2 when a resource cap was hit, 3 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict
from typing import Optional

import numpy as np

from . import attacks, harness, protocols
from .braid import BraidWord, format_braid, inverse, multiply, parse_braid, permutation_of, random_word, upper_block
from .conjugacy import DEFAULT_CAP, DEFAULT_COSET_BUDGET, ResourceCapExceeded, centralizer_gens, conjugacy_search
from .garside import equals, left_normal_form, word_product
from .roots import FOUND, kth_root

EXIT_OK, EXIT_NEGATIVE, EXIT_CAP, EXIT_USAGE = 0, 1, 2, 3


def _braid(text: str) -> BraidWord:
    try:
        return parse_braid(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, sort_keys=True) if args.json else text)


# ---------------------------------------------------------------------------
# braid arithmetic


def cmd_nf(args) -> int:
    nf = left_normal_form(args.braid)
    _emit(args, {"normal_form": str(nf), "inf": nf.inf, "sup": nf.sup, "length": nf.length}, str(nf))
    return EXIT_OK


def cmd_mul(args) -> int:
    out = args.braids[0]
    for b in args.braids[1:]:
        out = multiply(out, b)
    _emit(args, {"product": format_braid(out)}, format_braid(out))
    return EXIT_OK


def cmd_inv(args) -> int:
    out = inverse(args.braid)
    _emit(args, {"inverse": format_braid(out)}, format_braid(out))
    return EXIT_OK


def cmd_eq(args) -> int:
    same = equals(args.a, args.b)
    _emit(args, {"equal": same}, "true" if same else "false")
    return EXIT_OK if same else EXIT_NEGATIVE


def cmd_perm(args) -> int:
    perm = permutation_of(args.braid)
    _emit(args, {"permutation": list(perm)}, " ".join(map(str, perm)))
    return EXIT_OK


# ---------------------------------------------------------------------------
# search problems


def cmd_root(args) -> int:
    res = kth_root(args.braid, args.k, cap=args.cap)
    if res.root is not None:
        _emit(args, {"status": FOUND, "root": format_braid(res.root), "method": res.method}, format_braid(res.root))
        return EXIT_OK
    label = "gave up" if res.status == "gave_up" else res.status
    _emit(args, {"status": res.status, "root": None, "method": res.method}, f"NONE ({label})")
    return EXIT_CAP if res.method == "cap" else EXIT_NEGATIVE


def cmd_conj(args) -> int:
    try:
        wit = conjugacy_search(args.src, args.dst, args.cap)
    except ResourceCapExceeded as exc:
        _emit(args, {"status": "cap_exceeded", "detail": str(exc)}, f"CAP EXCEEDED ({exc})")
        return EXIT_CAP
    if wit is None:
        _emit(args, {"status": "not_conjugate"}, "NOT CONJUGATE")
        return EXIT_NEGATIVE
    text = format_braid(wit.conjugator)
    _emit(args, {"status": "conjugate", "conjugator": text}, text)
    return EXIT_OK


def cmd_centralizer(args) -> int:
    try:
        cent = centralizer_gens(args.braid, args.cap)
    except ResourceCapExceeded as exc:
        _emit(args, {"status": "cap_exceeded", "detail": str(exc)}, f"CAP EXCEEDED ({exc})")
        return EXIT_CAP
    gens = [format_braid(g) for g in cent.gens]
    payload = {"generators": gens, "generic": cent.generic_form is not None}
    if cent.generic_form is not None:
        payload["delta_exponent"] = cent.generic_form[0]
    _emit(args, payload, "\n".join(gens))
    return EXIT_OK


# ---------------------------------------------------------------------------
# protocols


def _b(u: BraidWord) -> str:
    return format_braid(u)


def _keygen(scheme: str, a, rng):
    if scheme == "as1":
        keys = protocols.as1_keygen(a.n, a.r, a.s, a.len, rng)
        return keys, {"X": _b(keys.X), "r": a.r, "s": a.s}, {"a": _b(keys.a), "b": _b(keys.b)}
    if scheme == "as2":
        keys = protocols.as2_keygen(a.n, a.r, a.s, a.len, a.c_len, rng)
        return keys, {"X": _b(keys.X), "c": _b(keys.c), "r": a.r, "s": a.s}, {"a": _b(keys.a)}
    if scheme == "as2g":
        keys = protocols.as2g_keygen(a.n, a.len, a.c_len, rng)
        return keys, {"X": _b(keys.X), "c": _b(keys.c)}, {"a1": _b(keys.a1), "a2": _b(keys.a2)}
    if scheme == "as3":
        keys = protocols.as3_keygen(a.n, a.len, a.rounds, rng)
        return keys, {"b": _b(keys.b), "k_rounds": keys.k_rounds}, {"a": _b(keys.a)}
    keys = protocols.sig_keygen(a.n, a.m, a.k, a.len, rng)
    return keys, {"m": a.m, "k": a.k, "b": [_b(x) for x in keys.b]}, {
        "a": [_b(x) for x in keys.a],
        "alpha": _b(keys.alpha),
    }


def _transcript(scheme: str, keys, a, rng) -> dict:
    if scheme == "as1":
        ch = protocols.as1_challenge(a.n, a.r, a.s, a.len, rng)
        Z = protocols.as1_respond(keys, ch.Y)
        return {"c": _b(ch.c), "d": _b(ch.d), "Y": _b(ch.Y), "Z": _b(Z), "verified": protocols.as1_verify(keys.X, ch, Z)}
    if scheme in ("as2", "as2g"):
        rs = dict(r=a.r, s=a.s) if scheme == "as2" else {}
        ch = protocols.as2_challenge(keys.c, a.len, rng, **rs)
        Z = protocols.as2_respond(keys, ch.Y)
        return {"b1": _b(ch.b1), "b2": _b(ch.b2), "Y": _b(ch.Y), "Z": _b(Z), "verified": protocols.as2_verify(keys.X, ch, Z)}
    if scheme == "as3":
        verdicts = protocols.as3_run(keys, rng)
        return {"rounds": len(verdicts), "verified": all(verdicts)}
    message = rng.bytes(16)
    sig = protocols.sig_sign(keys, message, rng)
    return {
        "message": message.hex(),
        "u": _b(sig.u),
        "gamma": _b(sig.gamma),
        "verified": protocols.sig_verify(keys.public, message, sig),
    }


def cmd_proto(args) -> int:
    rng = np.random.default_rng(args.seed)
    keys, public, secrets = _keygen(args.scheme, args, rng)
    out = {"scheme": args.scheme, "n": args.n, "seed": args.seed, "public": public}
    if args.dump_secrets:
        out["secrets"] = secrets
    ok = True
    if args.action == "run":
        out["transcripts"] = [_transcript(args.scheme, keys, args, rng) for _ in range(args.trials)]
        ok = all(t["verified"] for t in out["transcripts"])
    if args.json:
        print(json.dumps(out, sort_keys=True, indent=2))
    else:
        for k, v in public.items():
            print(f"{k} = {v}")
        for k, v in (secrets.items() if args.dump_secrets else ()):
            print(f"{k} = {v}  (secret)")
        if args.action == "run":
            print(f"{sum(t['verified'] for t in out['transcripts'])}/{args.trials} transcripts verified")
    return EXIT_OK if ok else EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# attacks


def _attack_from_instance(args, inst: dict) -> attacks.AttackReport:
    """Attack a dumped ``proto ... run --json`` instance; public values only."""
    pub = inst["public"]
    rng = np.random.default_rng(args.seed)
    start = time.perf_counter()
    kind = args.scheme
    detail: dict = {}
    try:
        if kind == "as1":
            X = parse_braid(pub["X"])
            r, s = pub["r"], pub["s"]
            A, B = attacks.attack_as1(X)
            ch = protocols.as1_challenge(X.n, r, s, args.len, rng)
            ok = protocols.as1_verify(X, ch, word_product(A, ch.Y, B))
            detail = {"A": _b(A), "B": _b(B)}
        elif kind in ("as2-alg1", "as2-alg2", "as2-coset"):
            X, c = parse_braid(pub["X"]), parse_braid(pub["c"])
            tr = inst["transcripts"][0]
            Y, Z = parse_braid(tr["Y"]), parse_braid(tr["Z"])
            if kind == "as2-alg1":
                rec = attacks.attack_as2_alg1(X, Y, Z, c, cap=args.cap, coset_budget=args.coset_budget)
            elif kind == "as2-alg2":
                rec = attacks.attack_as2_alg2(X, Y, Z, c, cap=args.cap, coset_budget=args.coset_budget, secret_len_hint=args.len)
            else:
                rec = attacks.attack_as2_double_coset(X, c, budget=args.coset_budget)
            b1 = random_word(X.n, args.len, upper_block(X.n), rng)
            b2 = random_word(X.n, args.len, upper_block(X.n), rng)
            fresh = protocols.as2_make_challenge(c, b1, b2)
            ok = protocols.as2_verify(X, fresh, word_product(rec.a1_hat, fresh.Y, rec.a2_hat))
            detail = {"a1_hat": _b(rec.a1_hat), "a2_hat": _b(rec.a2_hat), "method": rec.method}
        elif kind == "as3":
            b = parse_braid(pub["b"])
            res = attacks.attack_as3(b, cap=args.cap)
            rep = attacks.as3_impersonate(res.root, b, pub.get("k_rounds", 20), rng)
            ok = rep.success
            detail = {"root": _b(res.root) if res.root is not None else None, "status": res.status, **rep.detail}
        else:
            bs = tuple(parse_braid(x) for x in pub["b"])
            public = protocols.SigPublic(bs[0].n, pub["m"], pub["k"], bs)
            message = args.message.encode()
            sig = attacks.forge_signature(public, message, rng, args.cap)
            ok = sig is not None and protocols.sig_verify(public, message, sig)
            if sig is not None:
                detail = {"u": _b(sig.u), "gamma": _b(sig.gamma)}
    except ResourceCapExceeded as exc:
        return attacks.AttackReport(False, False, time.perf_counter() - start, attacks.CAP_EXCEEDED, {"error": str(exc)})
    except attacks.AS2AttackFailed as exc:
        return attacks.AttackReport(False, False, time.perf_counter() - start, detail={"error": str(exc)})
    return attacks.AttackReport(ok, ok, time.perf_counter() - start, detail=detail)


_PROTO_OF = {"as1": "as1", "as2-alg1": "as2g", "as2-alg2": "as2g", "as2-coset": "as2g", "as3": "as3", "sig": "sig"}


def cmd_attack(args) -> int:
    if args.instance:
        with open(args.instance) as fh:
            inst = json.load(fh)
    else:
        # build a fresh instance from the seed, then forget the secrets
        rng = np.random.default_rng(args.seed)
        proto = _PROTO_OF[args.scheme]
        keys, public, _ = _keygen(proto, args, rng)
        inst = {"public": public}
        if proto == "as2g":
            inst["transcripts"] = [_transcript(proto, keys, args, rng)]
        args.seed = None if args.seed is None else args.seed + 1
    report = _attack_from_instance(args, inst)
    print(json.dumps(asdict(report), sort_keys=True, indent=2))
    if report.resource_status == attacks.CAP_EXCEEDED:
        return EXIT_CAP
    return EXIT_OK if report.success else EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# experiments


def cmd_bench(args) -> int:
    res = harness.scaling_probe(args.lengths, args.trials, args.seed, args.n)
    if args.json:
        print(json.dumps(res, sort_keys=True))
    else:
        for length, t in res["table"]:
            print(f"{length:6d}  {t * 1000:10.3f} ms")
        if res["slope"] is not None:
            print(f"log-log slope {res['slope']:.3f}")
    return EXIT_OK


def cmd_experiment(args) -> int:
    if args.config:
        cfg = harness.ExperimentConfig.from_file(args.config)
    else:
        cfg = harness.ExperimentConfig(
            scheme=args.scheme,
            n=args.n,
            secret_len=args.len,
            r=args.r,
            s=args.s,
            k=args.k,
            m=args.m,
            trials=args.trials,
            seed=args.seed if args.seed is not None else 0,
            cap=args.cap,
            coset_budget=args.coset_budget,
            workers=args.workers,
            output=args.output,
        )
    report = harness.run_experiment(cfg)
    if args.json or cfg.output is None:
        print(report.to_json())
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="sliding circuit vertex budget")

    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--n", type=int, default=8)
    params.add_argument("--len", type=int, default=8, help="secret (and challenge) word length")
    params.add_argument("--c-len", dest="c_len", type=int, default=12)
    params.add_argument("--r", type=int, default=2)
    params.add_argument("--s", type=int, default=2)
    params.add_argument("--k", type=int, default=2)
    params.add_argument("--m", type=int, default=3)
    params.add_argument("--rounds", type=int, default=20, help="scheme III rounds")
    params.add_argument("--trials", type=int, default=1)
    params.add_argument("--seed", type=int, default=None)
    params.add_argument("--coset-budget", dest="coset_budget", type=int, default=DEFAULT_COSET_BUDGET)

    p = argparse.ArgumentParser(prog="braidcrypt", description="Braid group arithmetic and cryptanalysis")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("nf", parents=[common], help="left normal form")
    s.add_argument("braid", type=_braid)
    s.set_defaults(func=cmd_nf)

    s = sub.add_parser("mul", parents=[common], help="concatenate braids")
    s.add_argument("braids", type=_braid, nargs="+")
    s.set_defaults(func=cmd_mul)

    s = sub.add_parser("inv", parents=[common], help="inverse word")
    s.add_argument("braid", type=_braid)
    s.set_defaults(func=cmd_inv)

    s = sub.add_parser("eq", parents=[common], help="decide equality")
    s.add_argument("a", type=_braid)
    s.add_argument("b", type=_braid)
    s.set_defaults(func=cmd_eq)

    s = sub.add_parser("perm", parents=[common], help="induced permutation (1-based)")
    s.add_argument("braid", type=_braid)
    s.set_defaults(func=cmd_perm)

    s = sub.add_parser("root", parents=[common], help="k-th root")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("braid", type=_braid)
    s.set_defaults(func=cmd_root)

    s = sub.add_parser("conj-search", parents=[common], help="find g with g src g^-1 = dst")
    s.add_argument("--src", type=_braid, required=True)
    s.add_argument("--dst", type=_braid, required=True)
    s.set_defaults(func=cmd_conj)

    s = sub.add_parser("centralizer", parents=[common], help="centralizer generators")
    s.add_argument("braid", type=_braid)
    s.set_defaults(func=cmd_centralizer)

    s = sub.add_parser("proto", parents=[common, params], help="run a scheme honestly")
    s.add_argument("scheme", choices=["as1", "as2", "as2g", "as3", "sig"])
    s.add_argument("action", choices=["keygen", "run"])
    s.add_argument("--dump-secrets", dest="dump_secrets", action="store_true")
    s.set_defaults(func=cmd_proto)

    s = sub.add_parser("attack", parents=[common, params], help="attack one instance")
    s.add_argument("scheme", choices=sorted(_PROTO_OF))
    s.add_argument("--instance", help="JSON written by 'proto ... run --json'")
    s.add_argument("--message", default="forged message", help="message to sign (sig)")
    s.set_defaults(func=cmd_attack)

    s = sub.add_parser("bench", help="timing probes")
    bsub = s.add_subparsers(dest="bench", required=True)
    b = bsub.add_parser("scaling", parents=[common], help="normal form time against word length")
    b.add_argument("--lengths", type=int, nargs="+", default=[100, 200, 400, 800, 1600])
    b.add_argument("--n", type=int, default=8)
    b.add_argument("--trials", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(func=cmd_bench)

    s = sub.add_parser("experiment", parents=[common, params], help="seeded attack experiment")
    s.add_argument("--config", help="flat JSON config file")
    s.add_argument("--scheme", choices=harness.SCHEMES, default="as1")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--output")
    s.set_defaults(func=cmd_experiment)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

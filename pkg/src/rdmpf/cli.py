"""Command line front end.

Binary objects live in files; human-readable output goes to stdout and errors
to stderr.  Exit codes: 0 success, 1 verification or decapsulation mismatch,
2 usage or framing error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import codec, dsa, kem
from .params import PROFILES, get_profile
from .tools import benchmark, bruteforce, kat, security, timing

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _hex(s: str | None, nbytes: int | None = None, what: str = "value") -> bytes | None:
    if s is None:
        return None
    try:
        b = bytes.fromhex(s)
    except ValueError:
        raise UsageError(f"{what} is not valid hex") from None
    if nbytes is not None and len(b) != nbytes:
        raise UsageError(f"{what} must be {nbytes} bytes ({2 * nbytes} hex digits)")
    return b


def _need(path: str | None, flag: str) -> Path:
    if not path:
        raise UsageError(f"{flag} is required")
    return Path(path)


def _read(path: str | None, flag: str) -> bytes:
    p = _need(path, flag)
    try:
        return p.read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {p}: {exc.strerror}") from None


def cmd_keygen(args) -> int:
    out = _need(args.out, "--out")
    seed = _hex(args.seed, 32, "--seed") or os.urandom(32)
    if args.scheme == "kem":
        pk, sk = kem.keygen(seed, get_profile(args.profile))
    else:
        pk, sk = dsa.keygen_ds(seed, height=args.height)
    Path(f"{out}.pk").write_bytes(pk.to_bytes())
    Path(f"{out}.sk").write_bytes(sk.to_bytes())
    print(f"wrote {out}.pk ({len(pk.to_bytes())} bytes) and {out}.sk ({len(sk.to_bytes())} bytes)")
    return EXIT_OK


def cmd_encaps(args) -> int:
    pk = codec.decode_pk(_read(args.inp, "--in"))
    coins = _hex(args.seed, pk.params.kappa_bytes, "--seed") or os.urandom(pk.params.kappa_bytes)
    ct, k = kem.encaps(pk, coins)
    _need(args.out, "--out").write_bytes(ct.to_bytes())
    print(k.hex())
    return EXIT_OK


def cmd_decaps(args) -> int:
    sk = codec.decode_sk(_read(args.inp, "--in"))
    k = kem.decaps(sk, _read(args.ct, "--ct"))
    print(k.hex())
    if args.expect is not None:
        return EXIT_OK if k == _hex(args.expect, what="--expect") else EXIT_MISMATCH
    return EXIT_OK


def cmd_sign(args) -> int:
    sk = codec.decode_ds_sk(_read(args.inp, "--in"))
    sig = dsa.sign_ds(sk, _read(args.msg, "--msg"))
    _need(args.out, "--out").write_bytes(sig.to_bytes())
    print(f"t = {sig.t.hex()}")
    return EXIT_OK


def cmd_verify(args) -> int:
    pk = codec.decode_ds_pk(_read(args.inp, "--in"))
    z = None
    if args.sk:
        z = codec.decode_ds_sk(_read(args.sk, "--sk")).z
    outcome = dsa.verify_ds(pk, _read(args.msg, "--msg"), _read(args.sig, "--sig"), z=z)
    print(outcome)
    return EXIT_OK if outcome.accepted else EXIT_MISMATCH


def cmd_kat(args) -> int:
    if args.action == "gen":
        master = _hex(args.seed, what="--seed") or bytes(32)
        if args.scheme == "kem":
            text = kat.gen_kem_kat(get_profile(args.profile), master, args.count)
        else:
            text = kat.gen_dsa_kat(master, args.count, args.height)
        _need(args.out, "--out").write_text(text)
        print(f"wrote {args.count} {args.scheme} records to {args.out}")
        return EXIT_OK
    problems = kat.check_kat(_read(args.inp, "--in").decode("ascii"))
    for msg in problems:
        print(msg, file=sys.stderr)
    print("KAT check: " + ("FAILED" if problems else "PASSED"))
    return EXIT_MISMATCH if problems else EXIT_OK


def cmd_bench(args) -> int:
    params = get_profile(args.profile)
    for protocol in ("kem", "dsa"):
        records = benchmark.bench(params, args.runs, protocol, height=args.height)
        print(f"== {protocol.upper()} ({params.name}, {args.runs} runs) ==")
        print(benchmark.format_table(records))
        if args.out:
            path = Path(f"{args.out}.{protocol}.csv")
            path.write_text(benchmark.to_csv(records))
            print(f"wrote {path}")
    return EXIT_OK


def cmd_security_table(args) -> int:
    print(security.security_table())
    return EXIT_OK


def cmd_bruteforce(args) -> int:
    params = get_profile(args.profile)
    seed = _hex(args.seed, 32, "--seed") or os.urandom(32)
    pk, sk = kem.keygen(seed, params)
    try:
        res = bruteforce.brute_force_recover(pk)
    except bruteforce.SearchSpaceError as exc:
        raise UsageError(str(exc)) from None
    print(f"search space {res.space}, tried {res.tried}, found: {res.found}")
    if not res.found:
        return EXIT_MISMATCH
    good = 0
    for _ in range(args.runs):
        ct, k = kem.encapsulate(pk)
        good += kem.decapsulate_with(pk, res.uv, os.urandom(32), ct) == k
    print(f"recovered key decapsulated {good}/{args.runs} honest ciphertexts")
    return EXIT_OK if good == args.runs else EXIT_MISMATCH


def cmd_timing(args) -> int:
    rep = timing.timing_probe(get_profile(args.profile), args.runs)
    print(f"trials          {rep.trials}")
    print(f"accept median   {rep.accept_median:.6f} s (IQR {rep.accept_iqr:.6f})")
    print(f"reject median   {rep.reject_median:.6f} s (IQR {rep.reject_iqr:.6f})")
    print(f"ratio           {rep.ratio:.3f}")
    print(f"same op trace   {rep.same_ops}")
    print(f"flag (>20%)     {rep.flagged}")
    return EXIT_OK


def _common() -> argparse.ArgumentParser:
    # fresh per subcommand: argparse parents share Action objects, so
    # set_defaults on one subparser would leak into the others
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--profile", choices=sorted(PROFILES), default="toy-997")
    common.add_argument("--seed", help="hex seed (keygen seed, encaps coins, or KAT master)")
    common.add_argument("--in", dest="inp", metavar="PATH")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--runs", type=int, default=10)
    return common


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rdmpf", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("keygen", parents=[_common()], help="generate a key pair (PATH.pk, PATH.sk)")
    p.add_argument("--scheme", choices=("kem", "dsa"), default="kem")
    p.add_argument("--height", type=int, default=dsa.DEFAULT_HEIGHT)
    p.set_defaults(fn=cmd_keygen)

    p = sub.add_parser("encaps", parents=[_common()], help="encapsulate to a public key")
    p.set_defaults(fn=cmd_encaps)

    p = sub.add_parser("decaps", parents=[_common()], help="decapsulate a ciphertext")
    p.add_argument("--ct", metavar="PATH")
    p.add_argument("--expect", metavar="HEX", help="exit 1 unless the key equals this")
    p.set_defaults(fn=cmd_decaps)

    p = sub.add_parser("sign", parents=[_common()], help="sign a message file")
    p.add_argument("--msg", metavar="PATH")
    p.set_defaults(fn=cmd_sign)

    p = sub.add_parser("verify", parents=[_common()], help="verify a signature (exit 1 on reject*)")
    p.add_argument("--msg", metavar="PATH")
    p.add_argument("--sig", metavar="PATH")
    p.add_argument("--sk", metavar="PATH", help="secret key file supplying z for the placeholder")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("kat", parents=[_common()], help="generate or check known-answer files")
    p.add_argument("action", choices=("gen", "check"))
    p.add_argument("--scheme", choices=("kem", "dsa"), default="kem")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--height", type=int, default=kat.KAT_DSA_HEIGHT)
    p.set_defaults(fn=cmd_kat)

    p = sub.add_parser("bench", parents=[_common()], help="benchmark both protocols")
    p.add_argument("--height", type=int, default=dsa.DEFAULT_HEIGHT)
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("security-table", parents=[_common()], help="print the security estimates")
    p.set_defaults(fn=cmd_security_table)

    p = sub.add_parser("bruteforce", parents=[_common()], help="recover a planted key at micro size")
    p.set_defaults(fn=cmd_bruteforce, profile="micro")

    p = sub.add_parser("timing", parents=[_common()], help="accept vs reject decapsulation timing")
    p.set_defaults(fn=cmd_timing, runs=200)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, codec.FramingError, ValueError) as exc:
        print(f"rdmpf {args.cmd}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

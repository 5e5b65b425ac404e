"""Command line for Engel expansions, the isogeny KEM and the timing harness.

Exit codes: 0 success, 2 file I/O failure, 3 rejected parameters or usage,
4 malformed input.  Results go to stdout as ``key=value`` lines.

Fixed seeds are honored only with ``--test-mode`` (``--seed`` or the
``EPIK_TEST_SEED`` environment variable); otherwise randomness comes from
the operating system.
"""

from __future__ import annotations

import argparse
import binascii
import os
import random
import secrets
import sys
from fractions import Fraction
from pathlib import Path

from . import bench as bench_mod
from .codec import (
    decode_ct,
    decode_pk,
    decode_series,
    decode_sk,
    encode_ct,
    encode_pk,
    encode_series,
    encode_sk,
    pk_size_bits,
)
from .engel import EngelDigit, EngelExpansion, engel_decode, engel_encode
from .errors import DecodeError, DomainError, EpikError, ParameterError, PrecisionError
from .kem import decap, encap, keygen, pke_decrypt, pke_encrypt
from .keys import get_preset
from .laurent import LaurentSeries, PrecisionPolicy

EXIT_OK = 0
EXIT_IO = 2
EXIT_PARAM = 3
EXIT_MALFORMED = 4
SEED_ENV = "EPIK_TEST_SEED"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _emit(**fields) -> None:
    for k, v in fields.items():
        print(f"{k}={v}")


def _randomness(args):
    seed = args.seed
    if seed is None and os.environ.get(SEED_ENV):
        seed = os.environ[SEED_ENV]
    if seed is None:
        return secrets.SystemRandom()
    if not args.test_mode:
        print("warning: seed ignored without --test-mode", file=sys.stderr)
        return secrets.SystemRandom()
    try:
        value = int(seed, 0) if isinstance(seed, str) else int(seed)
    except ValueError:
        raise ParameterError(f"seed must be an integer, got {seed!r}") from None
    if not 0 <= value < 2**64:
        raise ParameterError("seed must fit in 64 bits")
    return random.Random(value)


def _write(path: str, data: bytes, fmt: str) -> None:
    if fmt == "hex":
        data = data.hex().encode() + b"\n"
    Path(path).write_bytes(data)


def _read_artifact(path: str) -> bytes:
    raw = Path(path).read_bytes()
    if raw.startswith(b"EPIK"):
        return raw
    try:
        return bytes.fromhex(raw.decode("ascii").strip())
    except (UnicodeDecodeError, ValueError):
        raise DecodeError(f"{path} is neither a binary artifact nor hex") from None


def cmd_keygen(args) -> int:
    ps = get_preset(args.preset)
    pk, sk = keygen(ps, _randomness(args))
    _write(args.out_pk, encode_pk(pk), args.format)
    _write(args.out_sk, encode_sk(sk), args.format)
    _emit(preset=ps.name, prime=ps.prime, pk_bits=pk_size_bits(ps), digits=len(pk.digits),
          pk=args.out_pk, sk=args.out_sk)
    return EXIT_OK


def cmd_encap(args) -> int:
    pk = decode_pk(_read_artifact(args.pk))
    rng = _randomness(args)
    if args.message:
        msg = Path(args.message).read_bytes()
        ct = pke_encrypt(pk, msg, rng)
        key = None
    else:
        ct, key = encap(pk, rng)
    _write(args.out_ct, encode_ct(ct), args.format)
    out = {"preset": pk.params.name, "ct": args.out_ct, "payload_bytes": len(ct.payload)}
    if key is not None and args.out_key:
        _write(args.out_key, key, args.format)
        out["key"] = args.out_key
    _emit(**out)
    return EXIT_OK


def cmd_decap(args) -> int:
    sk = decode_sk(_read_artifact(args.sk))
    ct = decode_ct(_read_artifact(args.ct))
    out = {"preset": sk.params.name}
    if args.out_key:
        _write(args.out_key, decap(sk, ct), args.format)
        out["key"] = args.out_key
    if args.out_message:
        Path(args.out_message).write_bytes(pke_decrypt(sk, ct))
        out["message"] = args.out_message
    _emit(**out)
    return EXIT_OK


def _policy(args) -> PrecisionPolicy:
    try:
        return PrecisionPolicy(args.window, args.precision)
    except ValueError as exc:
        raise ParameterError(str(exc)) from None


def _series_from_args(args, policy: PrecisionPolicy) -> LaurentSeries:
    if args.value is not None:
        try:
            vals = [Fraction(v) for v in args.value.split(",")]
        except (ValueError, ZeroDivisionError):
            raise DecodeError(f"cannot parse coefficients {args.value!r}") from None
        return LaurentSeries.from_values(args.prime, policy, vals)
    text = args.input
    if os.path.exists(text):
        text = Path(text).read_text()
    try:
        data = bytes.fromhex(text.strip())
    except ValueError:
        raise DecodeError("input is not hex") from None
    return decode_series(data, policy, args.prime)


def _read_expansion(text: str, prime: int, policy: PrecisionPolicy) -> EngelExpansion:
    fields = {}
    for line in text.splitlines():
        if "=" in line:
            k, v = line.split("=", 1)
            fields[k.strip()] = v.strip()
    try:
        count = int(fields["digits"])
        digits = tuple(
            EngelDigit(int(fields[f"scale.{k}"]),
                       decode_series(bytes.fromhex(fields[f"unit.{k}"]), policy, prime))
            for k in range(count))
    except (KeyError, ValueError) as exc:
        raise DecodeError(f"bad expansion listing: {exc}") from None
    return EngelExpansion(prime, policy, digits)


def cmd_engel(args) -> int:
    policy = _policy(args)
    if args.action == "encode":
        if args.input is None and args.value is None:
            raise ParameterError("encode needs --input or --value")
        if args.depth < 1:
            raise ParameterError("depth must be >= 1")
        e = engel_encode(_series_from_args(args, policy), args.depth)
        out = {"digits": len(e.digits), "terminated": str(e.terminated).lower()}
        for k, (a, v) in enumerate(zip(e.digits, e.residual_valuations)):
            out[f"scale.{k}"] = a.scale
            out[f"unit.{k}"] = encode_series(a.unit).hex()
            out[f"residual_valuation.{k}"] = v
        _emit(**out)
    else:
        if args.input is None:
            raise ParameterError("decode needs --input")
        text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
        e = _read_expansion(text, args.prime, policy)
        if len(e.digits) > args.depth:
            e = EngelExpansion(e.prime, e.policy, e.digits[:args.depth])
        _emit(digits=len(e.digits), series=encode_series(engel_decode(e)).hex())
    return EXIT_OK


def _parse_sizes(spec: str, step: int) -> list[int]:
    if ".." in spec:
        lo, hi = (int(x) for x in spec.split(".."))
        if step < 1 or lo < 0 or hi < lo:
            raise ParameterError("bad size range")
        return list(range(lo, hi + 1, step))
    return [int(x) for x in spec.split(",")]


def cmd_bench(args) -> int:
    ps = get_preset(args.preset)
    try:
        sizes = _parse_sizes(args.sizes, args.step)
    except ValueError:
        raise ParameterError(f"bad --sizes {args.sizes!r}") from None
    if len(sizes) < 3:
        raise ParameterError("need at least 3 sizes")
    if args.trials < bench_mod.MIN_TRIALS:
        raise ParameterError(f"need at least {bench_mod.MIN_TRIALS} trials")
    report = bench_mod.fit_linear(bench_mod.run_sweep(sizes, args.trials, ps, cold=args.cold))
    text = bench_mod.to_csv(report)
    if args.csv:
        Path(args.csv).write_text(text)
    _emit(samples=len(report.samples),
          encrypt_slope_us_per_byte=f"{report.encrypt.slope:.6g}",
          encrypt_r_squared=f"{report.encrypt.r_squared:.6f}",
          decrypt_slope_us_per_byte=f"{report.decrypt.slope:.6g}",
          decrypt_r_squared=f"{report.decrypt.r_squared:.6f}",
          dec_to_enc_ratio=f"{report.dec_to_enc_ratio:.4f}")
    if args.latency_ms is not None:
        if args.latency_ms < 0 or args.nodes < 1:
            raise ParameterError("latency must be >= 0 and nodes >= 1")
        for s in report.samples:
            compute = args.nodes * (s.encrypt_us + s.decrypt_us) / 1000
            total = args.nodes * args.latency_ms + compute
            print(f"chain.{s.size}=total_ms:{total:.3f},compute_share:{compute / total if total else 0:.5f}")
    if args.csv:
        _emit(csv=args.csv)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="epik", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def seeded(sp):
        sp.add_argument("--seed", help="64-bit seed (needs --test-mode)")
        sp.add_argument("--test-mode", action="store_true", help="allow fixed seeds")
        sp.add_argument("--format", default="binary", help="binary or hex")

    k = sub.add_parser("keygen", help="generate a key pair")
    k.add_argument("--preset", default="iot")
    k.add_argument("--out-pk", required=True)
    k.add_argument("--out-sk", required=True)
    seeded(k)
    k.set_defaults(func=cmd_keygen)

    e = sub.add_parser("encap", help="encapsulate a key (or encrypt with --message)")
    e.add_argument("--pk", required=True)
    e.add_argument("--out-ct", required=True)
    e.add_argument("--out-key")
    e.add_argument("--message", help="file to encrypt (PKE mode)")
    seeded(e)
    e.set_defaults(func=cmd_encap)

    d = sub.add_parser("decap", help="recover the key (or plaintext)")
    d.add_argument("--sk", required=True)
    d.add_argument("--ct", required=True)
    d.add_argument("--out-key")
    d.add_argument("--out-message")
    d.add_argument("--format", default="binary", help="binary or hex")
    d.set_defaults(func=cmd_decap)

    g = sub.add_parser("engel", help="Engel expansion utilities")
    g.add_argument("action", help="encode or decode")
    g.add_argument("--input", help="hex series (encode) or digit listing file, '-' for stdin (decode)")
    g.add_argument("--value", help="comma-separated rational coefficients, constant term first")
    g.add_argument("--depth", type=int, default=8)
    g.add_argument("--prime", type=int, default=251)
    g.add_argument("--window", type=int, default=8)
    g.add_argument("--precision", type=int, default=32)
    g.set_defaults(func=cmd_engel)

    b = sub.add_parser("bench", help="timing sweep")
    b.add_argument("--preset", default="iot")
    b.add_argument("--sizes", default="16..2000", help="LO..HI or a comma list")
    b.add_argument("--step", type=int, default=64)
    b.add_argument("--trials", type=int, default=bench_mod.MIN_TRIALS)
    b.add_argument("--csv")
    b.add_argument("--latency-ms", type=float)
    b.add_argument("--nodes", type=int, default=4)
    b.add_argument("--cold", action="store_true", help="clear chain caches before every timed call")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "format", "binary") not in ("binary", "hex"):
            raise ParameterError(f"unknown format {args.format!r}")
        if args.command == "engel" and args.action not in ("encode", "decode"):
            raise ParameterError("engel action must be encode or decode")
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except (DecodeError, DomainError, PrecisionError, binascii.Error) as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except EpikError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())

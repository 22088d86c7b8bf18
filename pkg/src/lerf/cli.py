"""Command-line front end.

    lerf decide   --spec F [--subgroup W] [--element W] [--out CERT] [--trace FILE]
    lerf separate --spec F [--subgroup W] [--element W] [--out CERT]
    lerf verify   CERT
    lerf nf       --spec F --element W
    lerf bs       M SIGN [--out F]

Exit codes: 0 success or valid, 1 invalid input or hypothesis violation,
2 usage, 3 unknown (limits exhausted).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import certificates
from .amalgam import SearchLimits, build_amalgam, decide_membership
from .effgroups import GroupError
from .finamalg import AmalgamError
from .specfile import SpecError, bs_amalgam, parse_amalgam_spec
from .words import WordError, format_word, parse_word, parse_word_list

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _positive_float(text):
    v = float(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_int(text):
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lerf", description="Membership and separation certificates "
                "for amalgams with normal amalgamated subgroups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def query(sp):
        sp.add_argument("--spec", required=True, help="amalgam description file")
        sp.add_argument("--subgroup", help="comma separated generators (overrides the file)")
        sp.add_argument("--element", help="target word (overrides the file)")
        sp.add_argument("--limit-time", type=_positive_float, default=60.0,
                        help="seconds per query (default 60)")
        sp.add_argument("--limit-order", type=_positive_int, default=100_000,
                        help="cap on finite groups built during the search (default 100000)")
        sp.add_argument("--window", type=_positive_int, default=3,
                        help="saturation window for U & H (default 3)")
        sp.add_argument("--out", default="certificate.txt", help="certificate output path")
        sp.add_argument("--trace", help="write search events to this file ('-' for stdout)")

    query(sub.add_parser("decide", help="decide membership of an element in a subgroup"))
    query(sub.add_parser("separate", help="write a certificate for a non-member"))
    v = sub.add_parser("verify", help="check a certificate file")
    v.add_argument("certificate")
    n = sub.add_parser("nf", help="print the reduced sequence of a word")
    n.add_argument("--spec", required=True)
    n.add_argument("--element", required=True)
    b = sub.add_parser("bs", help="write the description of BS(m, sign*m)")
    b.add_argument("m", type=_positive_int)
    b.add_argument("sign", choices=["+", "-", "+1", "-1", "1"])
    b.add_argument("--out", help="output path (default stdout)")
    return p


def _load(args):
    spec = parse_amalgam_spec(Path(args.spec).read_text(encoding="utf-8"))
    G = build_amalgam(spec)
    return spec, G


def _query(args, spec, G):
    names = G.names
    U = parse_word_list(args.subgroup, names) if args.subgroup is not None else spec.subgroup
    a = parse_word(args.element, names) if args.element is not None else spec.element
    if U is None or a is None:
        raise SpecError(0, "no subgroup/element given (use --subgroup/--element or the file)")
    return U, a


def _write_trace(args, trace):
    if not args.trace:
        return
    text = "".join(line + "\n" for line in trace)
    if args.trace == "-":
        sys.stdout.write(text)
    else:
        Path(args.trace).write_text(text, encoding="utf-8")


def cmd_decide(args, must_separate=False) -> int:
    spec, G = _load(args)
    U, a = _query(args, spec, G)
    limits = SearchLimits(time=args.limit_time, order=args.limit_order, window=args.window)
    d = decide_membership(G, U, a, limits)
    _write_trace(args, d.trace)
    if d.status == "member":
        if must_separate:
            print(f"MEMBER {d.witness_text()}")
            print("error: element lies in the subgroup; nothing to separate", file=sys.stderr)
            return EXIT_INVALID
        print(f"MEMBER {d.witness_text()}")
        return EXIT_OK
    if d.status == "non-member":
        Path(args.out).write_text(certificates.encode(d.certificate), encoding="utf-8")
        print(f"NON-MEMBER {args.out} case={d.case} degree={d.certificate.degree}")
        return EXIT_OK
    print(f"UNKNOWN limit-time={args.limit_time:g}s limit-order={args.limit_order} "
          f"level={d.stats.get('level')} elements={d.stats.get('elements')}")
    return EXIT_UNKNOWN


def cmd_verify(args) -> int:
    try:
        cert = certificates.decode(Path(args.certificate).read_text(encoding="utf-8"))
    except certificates.CertificateParseError as exc:
        print(f"INVALID malformed: {exc}")
        return EXIT_INVALID
    verdict = certificates.verify(cert)
    if verdict.valid:
        print("VALID")
        return EXIT_OK
    print(f"INVALID {verdict.category}: {verdict.reason}")
    return EXIT_INVALID


def cmd_nf(args) -> int:
    spec, G = _load(args)
    w = parse_word(args.element, G.names)
    r = G.reduce(w)
    print(r.format())
    print(f"length={len(r)} tags={r.tags() or '-'} word={format_word(r.word())}")
    return EXIT_OK


def cmd_bs(args) -> int:
    sign = -1 if args.sign.startswith("-") else 1
    text = bs_amalgam(args.m, sign).to_text()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if args.command == "decide":
            return cmd_decide(args)
        if args.command == "separate":
            return cmd_decide(args, must_separate=True)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "nf":
            return cmd_nf(args)
        return cmd_bs(args)
    except (SpecError, WordError, GroupError, AmalgamError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    raise SystemExit(run())


if __name__ == "__main__":
    main()

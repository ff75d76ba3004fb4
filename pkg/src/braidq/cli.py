"""
Command-line front end.

Exit codes: 0 on success, 2 when the answer is a mathematical obstruction (a failed gcd
hypothesis, a non-splitting extension, no element of the requested order), 1 for usage errors,
rejected certificates and internal faults.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .braid_words import parse_word
from .constructions import (
    EmbeddingCert, Obstruction, SemidirectSpec, cayley_embed, check_cert, example27, format_order,
    prime_power_embed, semidirect_embed, torsion_element,
)
from .finite_groups import SignObstruction, from_perm_gens, load_group, orbit_basis
from .perm_core import Perm, SignedTriple
from .quotient_group import q_of_word, q_order
from .splitting_solver import SplittingFailed

EXIT_OK, EXIT_ERROR, EXIT_OBSTRUCTION = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="braidq", description="Finite subgroups of B_n/Gamma_k(P_n), k = 2, 3.")
    p.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    p.add_argument("--out", type=Path, help="write JSON output to this file")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    o = sub.add_parser("orbits", help="orbits of the pair or triple basis under a permutation group")
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--gens", nargs="+", required=True, help='generators in cycle notation, e.g. "(1,2,3)(4,5,6)"')
    o.add_argument("--level", choices=["pairs", "triples"], default="pairs")

    e = sub.add_parser("embed", help="build and verify an embedding certificate")
    esub = e.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    c = esub.add_parser("cayley")
    c.add_argument("--group", type=Path, required=True)
    c.add_argument("--k", type=int, choices=[2, 3], required=True)
    s = esub.add_parser("semidirect")
    for name in ("n", "m", "t"):
        s.add_argument(f"--{name}", type=int, required=True)
    s.add_argument("--k", type=int, choices=[2, 3], required=True)
    pp = esub.add_parser("prime-power")
    for name in ("p", "r", "d1"):
        pp.add_argument(f"--{name}", type=int, required=True)
    pp.add_argument("--k", type=int, choices=[2, 3], required=True)

    v = sub.add_parser("verify", help="rebuild a worked example")
    vsub = v.add_subparsers(dest="example", required=True, parser_class=_Parser)
    ex = vsub.add_parser("example27")
    ex.add_argument("--variant", choices=["a", "b"], required=True)

    w = sub.add_parser("word", help="braid word utilities")
    wsub = w.add_subparsers(dest="action", required=True, parser_class=_Parser)
    nf = wsub.add_parser("nf", help="normal form of a braid word")
    nf.add_argument("--n", type=int, required=True)
    nf.add_argument("--k", type=int, choices=[2, 3], required=True)
    nf.add_argument("word")

    od = sub.add_parser("order", help="order of a braid word in B_n/Gamma_k")
    od.add_argument("--n", type=int, required=True)
    od.add_argument("--k", type=int, choices=[2, 3], required=True)
    od.add_argument("word")

    t = sub.add_parser("torsion", help="find an element of a given order")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--k", type=int, choices=[2, 3], required=True)
    t.add_argument("--order", type=int, required=True)

    cc = sub.add_parser("check-cert", help="re-verify a certificate file")
    cc.add_argument("file", type=Path)
    return p


def _emit(obj, args, pretty_lines: Sequence[str] | None = None) -> None:
    text = json.dumps(obj, indent=2)
    if args.out:
        args.out.write_text(text + "\n")
    if args.pretty and pretty_lines is not None:
        print("\n".join(pretty_lines))
    elif not args.out:
        print(text)


def _cert_lines(cert: EmbeddingCert) -> list[str]:
    lines = [f"group of order {cert.order} in B_{cert.n}/Gamma_{cert.k}(P_{cert.n})"]
    for t in cert.transcript():
        lines.append(f"  {t['check']:<11} {'ok' if t['passed'] else 'FAILED'} ({t['count']})")
    for note in cert.notes:
        lines.append(f"  - {note}")
    return lines


def _seed_str(x) -> str:
    if isinstance(x, SignedTriple):
        return str(x)
    return "A%d,%d" % x


def _cmd_orbits(args) -> int:
    gens = [Perm.parse(g, args.n) for g in args.gens]
    group, rep = from_perm_gens(args.n, gens)
    ob = orbit_basis(rep, args.level)
    data = {
        "level": ob.level,
        "group_order": group.order,
        "orbits": [{"representative": _seed_str(o.representative), "size": len(o.members), "free": o.free,
                    "members": [_seed_str(m) for m in o.members]} for o in ob.orbits],
    }
    lines = [f"group of order {group.order}, {len(ob.orbits)} orbits at the {ob.level} level"]
    lines += [f"  {_seed_str(o.representative):<10} size {len(o.members):>4}  {'free' if o.free else 'not free'}"
              for o in ob.orbits]
    _emit(data, args, lines)
    return EXIT_OK


def _cmd_embed(args) -> int:
    if args.kind == "cayley":
        group, _ = load_group(args.group)
        cert = cayley_embed(group, args.k)
    elif args.kind == "semidirect":
        try:
            spec = SemidirectSpec(args.n, args.m, args.t)
        except ValueError as exc:
            raise UsageError(str(exc))
        cert = semidirect_embed(spec, args.k)
    else:
        cert = prime_power_embed(args.p, args.r, args.d1, args.k)
    _emit(cert.to_json(), args, _cert_lines(cert))
    return EXIT_OK


def _cmd_verify(args) -> int:
    result = example27(args.variant)
    _emit(result.cert.to_json(), args, _cert_lines(result.cert))
    return EXIT_OK


def _cmd_word(args) -> int:
    g = q_of_word(parse_word(args.word, args.n), args.k)
    _emit(g.to_json(), args, [f"perm {g.pi}", f"pure {g.p}"])
    return EXIT_OK


def _cmd_order(args) -> int:
    print(format_order(q_order(q_of_word(parse_word(args.word, args.n), args.k))))
    return EXIT_OK


def _cmd_torsion(args) -> int:
    x = torsion_element(args.n, args.k, args.order)
    if x is None:
        print(f"no element of order {args.order} in B_{args.n}/Gamma_{args.k}", file=sys.stderr)
        return EXIT_OBSTRUCTION
    _emit(x.to_json(), args, [f"perm {x.pi}", f"pure {x.p}"])
    return EXIT_OK


def _cmd_check(args) -> int:
    report = check_cert(json.loads(args.file.read_text()))
    if report.ok:
        print("ok")
        return EXIT_OK
    for f in report.failures:
        print(f"rejected: {f}")
    return EXIT_ERROR


COMMANDS = {
    "orbits": _cmd_orbits, "embed": _cmd_embed, "verify": _cmd_verify, "word": _cmd_word,
    "order": _cmd_order, "torsion": _cmd_torsion, "check-cert": _cmd_check,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (Obstruction, SplittingFailed, SignObstruction) as exc:
        print(f"obstruction: {exc}", file=sys.stderr)
        return EXIT_OBSTRUCTION
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

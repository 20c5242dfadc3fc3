"""Command-line front end.

Exit codes: 0 success, 1 failed check, 2 usage error, 3 invalid input.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import constructions as con
from .analysis import find_c_cycles, is_sd, kappa_map, dual_kappa_map
from .enumeration import enumerate_lattices
from .errors import LatticeError
from .freelattice import (
    canonical_form,
    eq_free,
    leq_free,
    parse_term,
    random_term,
    s0_identities,
    s0_terms,
    verify_embedding,
)
from .io import BadLatticeFile, dumps, load_lattice, report_dict, to_dot
from .lemmas import LEMMAS, enumeration_agrees, run_lemmas
from .minimal_pairs import crowned_crown, find_crowned_cycles, find_mp_cycles, minimal_pairs

OK, FAILED, USAGE, BAD_INPUT = 0, 1, 2, 3


class _Failed(Exception):
    """A check ran and did not hold; carries the payload to print."""

    def __init__(self, payload):
        self.payload = payload


def _emit(args, payload, text=None):
    if args.json or text is None:
        print(dumps(payload))
    else:
        print(text)


def _cycle_text(L, c):
    steps = ", ".join(
        f"<{L.name(p)}; {{{', '.join(L.name(x) for x in sorted(J))}}}>" for p, J in c.pairs
    )
    forms = "".join(f or "-" for f in c.forms)
    return f"{steps}  forms={forms} fruitful={c.fruitful_count}"


# verbs -----------------------------------------------------------------------


def cmd_validate(args):
    L = load_lattice(args.file)
    _emit(args, {"valid": True, "n": L.size}, f"valid lattice with {L.size} elements")


def cmd_analyze(args):
    L = load_lattice(args.file)
    rep = report_dict(L)
    lines = [f"{k}: {rep[k]}" for k in rep if k != "crowned_cycles"]
    for c in find_crowned_cycles(L):
        lines.append("crowned cycle: " + _cycle_text(L, c))
    _emit(args, rep, "\n".join(lines))


def cmd_kappa(args):
    L = load_lattice(args.file)
    km, dk = kappa_map(L), dual_kappa_map(L)
    payload = {
        "kappa": [list(p) for p in km.pairs()],
        "undefined": sorted(km.undefined),
        "complete": km.complete,
        "dual_kappa": [list(p) for p in dk.pairs()],
        "dual_complete": dk.complete,
    }
    lines = [f"kappa({L.name(j)}) = {L.name(m)}" for j, m in km.pairs()]
    lines += [f"kappa({L.name(j)}) undefined" for j in sorted(km.undefined)]
    _emit(args, payload, "\n".join(lines) or "no join-irreducibles")


def cmd_cycles(args):
    L = load_lattice(args.file)
    cycles = find_c_cycles(L) if is_sd(L) else []
    payload = {
        "sd": is_sd(L),
        "c_cycles": [
            {"nodes": list(c.nodes), "labels": ["".join(sorted(s)) for s in c.labels]} for c in cycles
        ],
    }
    text = "\n".join(
        " -> ".join(L.name(p) for p in c.nodes) + "  " + " ".join("".join(sorted(s)) for s in c.labels)
        for c in cycles
    )
    _emit(args, payload, text or ("no C-cycles" if payload["sd"] else "not semidistributive"))


def cmd_minimal_pairs(args):
    L = load_lattice(args.file)
    pairs = minimal_pairs(L)
    cycles = find_mp_cycles(L, args.max_n)
    payload = {
        "minimal_pairs": [{"p": p, "J": sorted(J)} for p, J in pairs],
        "cycles": [c.to_dict() for c in cycles],
    }
    lines = [f"<{L.name(p)}; {{{', '.join(L.name(x) for x in sorted(J))}}}>" for p, J in pairs]
    lines += ["cycle: " + _cycle_text(L, c) for c in cycles]
    _emit(args, payload, "\n".join(lines) or "no nontrivial minimal pairs")


def cmd_crowned(args):
    L = load_lattice(args.file)
    cycles = find_crowned_cycles(L)
    payload = [dict(c.to_dict(crowned=True), crown=list(crowned_crown(L, c) or [])) for c in cycles]
    _emit(args, payload, "\n".join(_cycle_text(L, c) for c in cycles) or "no crowned cycles")


def cmd_snake(args):
    print(dumps(con.snake(args.n).to_dict()))


def _element(L, token):
    try:
        return L.index(token)
    except LatticeError:
        if token.isdigit() and int(token) < L.size:
            return int(token)
        raise


def cmd_double(args):
    L = load_lattice(args.file)
    parts = args.interval.split(",")
    if len(parts) != 2:
        raise BadLatticeFile("--interval expects u,v")
    u, v = (_element(L, t.strip()) for t in parts)
    print(dumps(con.day_double(L, u, v).to_dict()))


def cmd_catalog(args):
    if args.action == "list":
        names = con.catalog_list()
        _emit(args, names, "\n".join(names))
    else:
        if not args.name:
            raise _Usage("catalog get needs a name")
        print(dumps(con.catalog(args.name).lattice.to_dict()))


def cmd_enumerate(args):
    Ls = enumerate_lattices(args.n)
    payload = [L.to_dict() for L in Ls]
    text = f"{len(Ls)} lattices\n" + "\n".join(dumps(d) for d in payload)
    _emit(args, payload, text)


def cmd_dot(args):
    sys.stdout.write(to_dot(load_lattice(args.file)))


def cmd_fl(args):
    if args.action == "leq":
        if len(args.terms) != 2:
            raise _Usage("fl leq needs two terms")
        s, t = (parse_term(x) for x in args.terms)
        r = leq_free(s, t)
        _emit(args, {"leq": r}, "true" if r else "false")
    elif args.action == "canon":
        if len(args.terms) != 1:
            raise _Usage("fl canon needs one term")
        c = canonical_form(parse_term(args.terms[0]))
        _emit(args, {"canonical": str(c)}, str(c))
    else:
        verdict = verify_embedding(s0_terms(), con.catalog("s0").lattice)
        payload = dict(verdict.to_dict(), identities=s0_identities())
        if not verdict.ok:
            raise _Failed(payload)
        _emit(args, payload, "S0 embedding verified: closed under + and *, order isomorphic")


def cmd_check(args):
    if args.suite == "lemmas":
        res = run_lemmas(args.max_size)
        agree = enumeration_agrees(args.max_size)
        payload = {"enumeration_agrees": agree, "lemmas": [r.to_dict() for r in res.values()]}
        ok = agree and all(r.holds for r in res.values())
        lines = [f"{'ok  ' if r.holds else 'FAIL'} {r.name} ({r.checked} lattices)" for r in res.values()]
        lines.append(f"{'ok  ' if agree else 'FAIL'} enumeration methods agree")
    else:
        rng = random.Random(args.seed)
        bad = 0
        for _ in range(args.samples):
            a, b, c = (random_term(rng, 4) for _ in range(3))
            if not leq_free(a, a) or (leq_free(a, b) and leq_free(b, c) and not leq_free(a, c)):
                bad += 1
            t = random_term(rng, 5)
            ct = canonical_form(t)
            if canonical_form(ct) is not ct or not eq_free(ct, t):
                bad += 1
        payload = {"seed": args.seed, "samples": args.samples, "failures": bad}
        ok = bad == 0
        lines = [f"{'ok' if ok else 'FAIL'}: {args.samples} samples, seed {args.seed}, {bad} failures"]
    if not ok:
        raise _Failed(payload)
    _emit(args, payload, "\n".join(lines))


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized suites")

    p = argparse.ArgumentParser(prog="sdlattice", description="Finite lattice analysis tools.", parents=[common])
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(fn=fn)
        return sp

    for name, fn, help_ in [
        ("validate", cmd_validate, "check that a file describes a lattice"),
        ("analyze", cmd_analyze, "full structural report"),
        ("kappa", cmd_kappa, "the kappa map and its dual"),
        ("cycles", cmd_cycles, "C-cycles of an SD lattice"),
        ("crowned", cmd_crowned, "crowned cycles of minimal pairs"),
        ("dot", cmd_dot, "Hasse diagram in DOT"),
    ]:
        verb(name, fn, help_).add_argument("file", help="lattice JSON file, '-' for stdin")

    sp = verb("minimal-pairs", cmd_minimal_pairs, "minimal pairs and their cycles")
    sp.add_argument("file")
    sp.add_argument("--max-n", type=int, default=None)

    verb("snake", cmd_snake, "the snake lattice S_n").add_argument("n", type=int)

    sp = verb("double", cmd_double, "double an interval")
    sp.add_argument("file")
    sp.add_argument("--interval", required=True, help="u,v as names or ids")

    sp = verb("catalog", cmd_catalog, "built-in lattices")
    sp.add_argument("action", choices=["list", "get"])
    sp.add_argument("name", nargs="?")

    verb("enumerate", cmd_enumerate, "all lattices of a given size").add_argument("n", type=int)

    sp = verb("fl", cmd_fl, "free lattice terms")
    sp.add_argument("action", choices=["leq", "canon", "verify-s0"])
    sp.add_argument("terms", nargs="*")

    sp = verb("check", cmd_check, "verification suites")
    sp.add_argument("suite", choices=["lemmas", "free"])
    sp.add_argument("--max-size", type=int, default=7)
    sp.add_argument("--samples", type=int, default=1000)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code not in (0, None) else OK
    args.json = getattr(args, "json", False)
    args.seed = getattr(args, "seed", 0)
    try:
        args.fn(args)
    except _Usage as e:
        print(f"usage error: {e}", file=sys.stderr)
        return USAGE
    except _Failed as e:
        print(dumps(e.payload))
        return FAILED
    except (BadLatticeFile, LatticeError, OSError, ValueError) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return BAD_INPUT
    return OK


def run(argv=None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands: invariants, pairing, fillings, surface, moves, check-slice,
classify, verify.  Exit codes: 0 success, 1 failed verification,
2 parse error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from typing import Optional, Sequence

from .algebra import InvolutiveAlphabet, PhiSpec
from .explorer import (
    ALL_SUITES,
    classify,
    invariant_record,
    slice_status,
)
from .moves import (
    Caps,
    DEFAULT_CAPS,
    Metamorphosis,
    enumerate_bridges,
    enumerate_even_symmetric_factors,
    find_h1_sites,
    find_h2_sites,
    find_h3_sites,
    length_norm_bounds,
)
from .pairings import (
    enumerate_fillings,
    filling_is_annihilating,
    format_vector,
    genus,
    is_hyperbolic,
    pairing_of_nanoword,
    phi_sign_battery,
)
from .parsing import ParseError, parse_caps_option, parse_input
from .surfaces import (
    ribbon_graph_of,
    surface_stats,
    tautological_gram_rank,
)
from .words import Nanoword

PARSE_EXIT = 2
FAIL_EXIT = 1


def _read_source(value: str) -> str:
    if os.path.exists(value):
        with open(value, "r", encoding="utf-8") as handle:
            return handle.read()
    return value.replace(";", "\n")


def _load_item(args):
    chunks = []
    if args.alphabet:
        chunks.append(_read_source(args.alphabet))
    if not args.word:
        raise ParseError(0, "no word given (--word)")
    word_text = _read_source(args.word)
    if "word:" not in word_text and "phrase:" not in word_text:
        proj = args.proj or ""
        word_text = f"word: {word_text}\nproj: {proj}"
    chunks.append(word_text)
    parsed = parse_input("\n".join(chunks), strict=args.strict)
    if not parsed.items:
        raise ParseError(0, "input contains no word or phrase")
    return parsed.items[0]


def _load_word(args) -> Nanoword:
    item = _load_item(args)
    if not isinstance(item, Nanoword):
        raise ParseError(0, "this command needs a word, not a phrase")
    return item


def _load_templates(args) -> tuple:
    """Extra insertion factors for the search: each phrase in the file
    becomes a template, checked to be even and symmetric."""
    if not getattr(args, "templates", None):
        return ()
    parsed = parse_input(_read_source(args.templates), strict=args.strict)
    out = []
    for item in parsed.items:
        phrase = item.to_phrase() if isinstance(item, Nanoword) else item
        if not (phrase.is_even() and phrase.is_symmetric()):
            raise ParseError(0, "insertion templates must be even and symmetric")
        out.append((phrase.words, phrase.proj))
    return tuple(out)


def _load_alphabet(args) -> InvolutiveAlphabet:
    if not args.alphabet:
        raise ParseError(0, "no alphabet given (--alphabet)")
    parsed = parse_input(_read_source(args.alphabet), strict=args.strict)
    return parsed.alphabet


def _caps(args) -> Caps:
    caps = DEFAULT_CAPS
    if args.caps:
        caps = replace(caps, **parse_caps_option(args.caps))
    return caps


def _phis(args, ground: InvolutiveAlphabet) -> tuple[PhiSpec, ...]:
    if not args.phi or args.phi == "all":
        return phi_sign_battery(ground)
    values = {}
    for chunk in args.phi.replace(",", " ").split():
        rep, value = chunk.split("=", 1)
        values[rep] = int(value)
    return (PhiSpec.rationals(ground, values),)


def _emit(lines: Sequence[str], fmt: str) -> None:
    for line in lines:
        print(line if fmt == "text" else line.replace("\t", ","))


def cmd_invariants(args) -> int:
    item = _load_item(args)
    if not isinstance(item, Nanoword):
        witness = item.symmetry_witness()
        lines = [
            f"phrase\t{item}",
            f"even\t{'yes' if item.is_even() else 'no'}",
            f"symmetric\t{'yes' if witness is not None else 'no'}",
        ]
        if witness is not None:
            iota = " ".join(
                f"{item.names[a]}->{item.names[b]}" for a, b in witness.iota
            )
            lines.append(f"iota\t{iota}")
        _emit(lines, args.format)
        return 0
    w = item
    record = invariant_record(w, _phis(args, w.ground))
    lines = [
        f"word\t{' '.join(w.letter_seq()) or '(empty)'}",
        f"gamma\t{record.gamma}",
        f"gamma-class\t{' '.join(f'{r}^{e}' if e != 1 else r for r, e in record.gamma_cyclic) or '1'}",
        f"u\t{record.u}",
    ]
    for label, twice in record.genera:
        lines.append(f"sigma\t{label}\t{twice // 2 if twice % 2 == 0 else f'{twice}/2'}")
    lines.append(f"hyperbolic\t{'yes' if record.hyperbolic else 'no'}")
    lines.append(f"r\t{record.r.format(torsion_suffix=True)}")
    _emit(lines, args.format)
    return 0


def cmd_pairing(args) -> int:
    w = _load_word(args)
    p = pairing_of_nanoword(w)
    sep = "\t" if args.format == "text" else ","
    print(p.format_matrix(sep))
    return 0


def cmd_fillings(args) -> int:
    w = _load_word(args)
    p = pairing_of_nanoword(w)
    shown = 0
    annihilating = 0
    total = 0
    lines = []
    for filling in enumerate_fillings(p):
        total += 1
        ann = filling_is_annihilating(p, filling)
        annihilating += ann
        if shown < args.limit:
            shown += 1
            body = ", ".join(format_vector(p, v) for v in filling)
            lines.append(f"{'*' if ann else ' '} {{{body}}}")
    lines.append(f"fillings\t{total}\tannihilating\t{annihilating}")
    _emit(lines, args.format)
    return 0


def cmd_surface(args) -> int:
    if not args.alphabet:
        args.alphabet = "alphabet: + - ; tau: +<->-"
    w = _load_word(args)
    stats = surface_stats(ribbon_graph_of(w))
    rank = tautological_gram_rank(w)
    lines = [
        f"vertices\t{w.num_letters}",
        f"edges\t{w.length}",
        f"euler\t{stats.euler}",
        f"boundary\t{stats.boundary_components}",
        f"genus\t{stats.genus}",
        f"gram-rank\t{rank}",
        f"rank-equals-2-genus\t{'yes' if rank == 2 * stats.genus else 'no'}",
    ]
    _emit(lines, args.format)
    return 0 if rank == 2 * stats.genus else FAIL_EXIT


def cmd_moves(args) -> int:
    w = _load_word(args)
    caps = _caps(args)
    if args.replay:
        with open(args.replay, "r", encoding="utf-8") as handle:
            meta = Metamorphosis.from_log(handle.read())
        result = meta.replay(w)
        print(f"result\t{' '.join(result.letter_seq()) or '(empty)'}")
        print(f"proj\t{' '.join(f'{n}={a}' for n, a in zip(result.names, result.proj))}")
        print(f"arches\t{meta.total_arches}")
        return 0
    lines = []
    for move in find_h1_sites(w):
        lines.append(move.to_line())
    for move in find_h2_sites(w):
        lines.append(move.to_line())
    for move in find_h3_sites(w):
        lines.append(move.to_line())
    for factor in enumerate_even_symmetric_factors(w, caps.max_letters, caps.max_k):
        segs = ",".join(f"{a}-{b}" for a, b in factor.segments)
        names = ",".join(w.names[i] for i in factor.letters)
        lines.append(f"SURG letters={names} segs={segs}")
    bridges = enumerate_bridges(w, caps.max_letters, caps.max_k)
    lines.append(f"bridges\t{len(bridges)}")
    lower, upper = length_norm_bounds(w, caps)
    lines.append(f"length-norm\t[{lower}, {upper}]")
    _emit(lines, args.format)
    return 0


def cmd_check_slice(args) -> int:
    w = _load_word(args)
    verdict = slice_status(
        w, _caps(args), _phis(args, w.ground), _load_templates(args)
    )
    print(str(verdict))
    if verdict.witness is not None and verdict.witness.moves:
        print(verdict.witness.to_log())
    return 0


def cmd_classify(args) -> int:
    ground = _load_alphabet(args)
    table = classify(
        args.half_length,
        ground,
        _caps(args),
        _phis(args, ground),
        allow_large=args.allow_large,
        jobs=args.jobs,
    )
    if args.format == "csv":
        for line in table.csv_lines():
            print(line)
    else:
        for line in table.csv_lines():
            print(line.replace(",", "\t"))
    return 0


def cmd_verify(args) -> int:
    wanted = args.suite.split(",") if args.suite and args.suite != "all" else list(ALL_SUITES)
    failed = False
    for name in wanted:
        if name not in ALL_SUITES:
            print(f"unknown suite {name!r}", file=sys.stderr)
            return PARSE_EXIT
        suite = ALL_SUITES[name]
        if name == "genus-rank":
            result = suite(max_half_length=args.max_half_length, jobs=args.jobs)
        else:
            result = suite(seed=args.seed)
        print(result.line())
        failed = failed or not result.passed
    return FAIL_EXIT if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nanocob",
        description="nanoword cobordism toolkit: invariants, pairings, "
        "surfaces, moves, classification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--alphabet", help="alphabet file or inline text (';'-separated lines)")
        p.add_argument("--word", help="word file, inline text, or compact letters")
        p.add_argument("--proj", help="projection for compact words: 'A=a B=b'")
        p.add_argument("--caps", help="caps: k=4,letters=6,bfs=12,nodes=4000,sbound=2")
        p.add_argument("--phi", help="'all' (default battery) or 'a=1,b=-1'")
        p.add_argument("--format", choices=("text", "csv"), default="text")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1, help="worker cap for suites")
        p.add_argument("--strict", action="store_true", help="reject tau redeclarations")

    for name, fn in (
        ("invariants", cmd_invariants),
        ("pairing", cmd_pairing),
        ("fillings", cmd_fillings),
        ("surface", cmd_surface),
        ("moves", cmd_moves),
        ("check-slice", cmd_check_slice),
        ("classify", cmd_classify),
        ("verify", cmd_verify),
    ):
        p = sub.add_parser(name)
        common(p)
        p.set_defaults(fn=fn)
        if name == "fillings":
            p.add_argument("--limit", type=int, default=20)
        if name in ("check-slice", "moves"):
            p.add_argument(
                "--templates",
                help="file of even symmetric phrases to use as insertion templates",
            )
        if name == "moves":
            p.add_argument("--replay", help="metamorphosis log file to replay")
        if name == "classify":
            p.add_argument("--half-length", type=int, required=True)
            p.add_argument("--allow-large", action="store_true")
        if name == "verify":
            p.add_argument("--suite", default="all")
            p.add_argument("--max-half-length", type=int, default=5)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return PARSE_EXIT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PARSE_EXIT


if __name__ == "__main__":
    sys.exit(main())

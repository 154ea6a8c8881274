"""Text grammar for alphabets, words, and phrases.

    alphabet: a b c
    tau: a<->b c<->c
    word: A B A B
    proj: A=a B=b
    phrase: A B | B A
    proj: A=a B=b

Blank lines and ``#`` comments are skipped.  A ``word:`` value with a
single multi-character token is split into characters.  In strict mode
a symbol may appear in only one tau pair; otherwise consistent
redeclarations (``a<->b b<->a``) are accepted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .algebra import InvolutiveAlphabet
from .words import Nanophrase, Nanoword


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class ParsedInput:
    alphabet: InvolutiveAlphabet
    items: tuple[Union[Nanoword, Nanophrase], ...]

    def words(self) -> tuple[Nanoword, ...]:
        return tuple(x for x in self.items if isinstance(x, Nanoword))


def _tokens(value: str) -> list[str]:
    parts = value.split()
    if len(parts) == 1 and len(parts[0]) > 1 and "|" not in parts[0]:
        return list(parts[0])
    return parts


def _parse_proj(value: str, line_no: int) -> dict[str, str]:
    out = {}
    for chunk in value.replace(",", " ").split():
        if "=" not in chunk:
            raise ParseError(line_no, f"expected NAME=symbol, got {chunk!r}")
        name, symbol = chunk.split("=", 1)
        if name in out and out[name] != symbol:
            raise ParseError(line_no, f"conflicting projection for {name!r}")
        out[name] = symbol
    return out


def parse_input(text: str, strict: bool = False) -> ParsedInput:
    alphabet: Optional[InvolutiveAlphabet] = None
    symbols: list[str] = []
    tau: dict[str, str] = {}
    items: list[Union[Nanoword, Nanophrase]] = []
    pending: Optional[tuple[str, list[str], int]] = None  # kind, tokens, line

    def finish_alphabet(line_no: int) -> InvolutiveAlphabet:
        nonlocal alphabet
        if alphabet is None:
            if not symbols:
                raise ParseError(line_no, "alphabet must be declared first")
            missing = [a for a in symbols if a not in tau]
            if missing:
                raise ParseError(
                    line_no, f"tau missing for {', '.join(missing)}"
                )
            try:
                alphabet = InvolutiveAlphabet.build(symbols, tau)
            except ValueError as exc:
                raise ParseError(line_no, str(exc)) from exc
        return alphabet

    def attach_projection(proj: dict[str, str], line_no: int) -> None:
        nonlocal pending
        if pending is None:
            raise ParseError(line_no, "proj line without a preceding word/phrase")
        kind, tokens, word_line = pending
        ground = finish_alphabet(line_no)
        for name, symbol in proj.items():
            if symbol not in ground:
                raise ParseError(line_no, f"unknown symbol {symbol!r} in projection")
        try:
            if kind == "word":
                items.append(Nanoword.from_names(ground, tokens, proj))
            else:
                flat = [t for t in tokens if t != "|"]
                word = Nanoword.from_names(ground, flat, proj)
                splits = []
                chunk: list[int] = []
                pos = 0
                for t in tokens:
                    if t == "|":
                        splits.append(tuple(chunk))
                        chunk = []
                    else:
                        chunk.append(word.seq[pos])
                        pos += 1
                splits.append(tuple(chunk))
                items.append(
                    Nanophrase(ground, tuple(splits), word.proj, word.names)
                )
        except ValueError as exc:
            raise ParseError(word_line, str(exc)) from exc
        pending = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError(line_no, f"expected 'key: value', got {line!r}")
        key, value = (part.strip() for part in line.split(":", 1))
        if key == "alphabet":
            if symbols:
                raise ParseError(line_no, "alphabet declared twice")
            symbols.extend(value.split())
            if len(set(symbols)) != len(symbols):
                raise ParseError(line_no, "duplicate symbols in alphabet")
        elif key == "tau":
            if not symbols:
                raise ParseError(line_no, "tau before alphabet")
            for chunk in value.split():
                if "<->" not in chunk:
                    raise ParseError(line_no, f"expected x<->y, got {chunk!r}")
                a, b = chunk.split("<->", 1)
                for s in (a, b):
                    if s not in symbols:
                        raise ParseError(line_no, f"unknown symbol {s!r} in tau")
                for x, y in ((a, b), (b, a)):
                    if x in tau:
                        if strict:
                            raise ParseError(line_no, f"{x!r} declared twice in tau")
                        if tau[x] != y:
                            raise ParseError(line_no, f"conflicting tau for {x!r}")
                    tau[x] = y
        elif key in ("word", "phrase"):
            if pending is not None:
                raise ParseError(line_no, "previous word/phrase is missing its proj line")
            finish_alphabet(line_no)
            tokens = value.split() if key == "phrase" else _tokens(value)
            if key == "phrase":
                expanded: list[str] = []
                for t in tokens:
                    expanded.extend(_split_bars(t))
                tokens = expanded
            pending = (key, tokens, line_no)
        elif key == "proj":
            attach_projection(_parse_proj(value, line_no), line_no)
        else:
            raise ParseError(line_no, f"unknown key {key!r}")
    if pending is not None:
        raise ParseError(pending[2], "word/phrase is missing its proj line")
    if alphabet is None:
        finish_alphabet(len(text.splitlines()) or 1)
    return ParsedInput(alphabet, tuple(items))


def _split_bars(token: str) -> list[str]:
    if token == "|":
        return ["|"]
    out = []
    buff = ""
    for ch in token:
        if ch == "|":
            if buff:
                out.append(buff)
                buff = ""
            out.append("|")
        else:
            buff += ch
    if buff:
        out.append(buff)
    return out


def parse_caps_option(text: str) -> dict[str, int]:
    out = {}
    mapping = {
        "k": "max_k",
        "letters": "max_letters",
        "bfs": "bfs_length",
        "nodes": "bfs_nodes",
        "sbound": "s_bound",
    }
    for chunk in text.split(","):
        if not chunk.strip():
            continue
        if "=" not in chunk:
            raise ValueError(f"expected key=value in caps, got {chunk!r}")
        key, value = chunk.split("=", 1)
        key = key.strip()
        if key not in mapping:
            raise ValueError(f"unknown caps key {key!r}")
        out[mapping[key]] = int(value)
    return out

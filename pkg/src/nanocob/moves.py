"""Local moves on nanowords and bounded search over move sequences.

Three homotopy rewrites, deletion of even symmetric factors (surgery),
deletion of bridges (factors with a segment involution), circular
shifts, and a breadth-first explorer that works on canonical forms.
The inverse-surgery side of the search inserts factors from a small
template list, since arbitrary insertions are an infinite move space.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, replace
from typing import Iterator, Optional, Sequence

from .algebra import InvolutiveAlphabet
from .pairings import (
    genus,
    is_hyperbolic,
    pairing_of_nanoword,
    phi_sign_battery,
    u_degree,
    u_polynomial_of_nanoword,
)
from .words import Nanophrase, Nanoword, WordError


@dataclass(frozen=True)
class Caps:
    """Search bounds shared by factor/bridge enumeration and the BFS."""

    max_letters: int = 6
    max_k: int = 4
    bfs_length: Optional[int] = None  # default: start length + 4
    bfs_nodes: int = 4000
    s_bound: int = 2

    def describe(self) -> str:
        return (
            f"letters={self.max_letters},k={self.max_k},"
            f"bfs={self.bfs_length},nodes={self.bfs_nodes},sbound={self.s_bound}"
        )


DEFAULT_CAPS = Caps()


@dataclass(frozen=True)
class Factor:
    """A subset of letters realized by disjoint in-order segments covering
    exactly their entries."""

    letters: tuple[int, ...]
    segments: tuple[tuple[int, int], ...]  # half-open position ranges

    @property
    def num_segments(self) -> int:
        return len(self.segments)

    def phrase(self, w: Nanoword) -> Nanophrase:
        local = {g: i for i, g in enumerate(self.letters)}
        words = []
        for start, end in self.segments:
            chunk = w.seq[start:end]
            for x in chunk:
                if x not in local:
                    raise WordError("segment contains a letter outside the factor")
            words.append(tuple(local[x] for x in chunk))
        return Nanophrase(
            w.ground,
            tuple(words),
            tuple(w.proj[g] for g in self.letters),
            tuple(w.names[g] for g in self.letters),
        )


@dataclass(frozen=True)
class Bridge:
    """A factor plus an involution on its segment indices, with the forced
    letter involution and the per-letter twist indicator."""

    factor: Factor
    kappa: tuple[int, ...]
    iota: tuple[tuple[int, int], ...]
    epsilon: tuple[tuple[int, int], ...]

    @property
    def arches(self) -> int:
        return sum(1 for r, image in enumerate(self.kappa) if r < image)


@dataclass(frozen=True)
class Move:
    """One replayable rewrite.  ``data`` is kind-specific:

    H1: (i,)  H2: (i, j)  H3: (i, j, k)  SHIFT: ()
    SURG/BRIDGE: (letters, segments[, kappa]) referring to the source word
    INS: (words, proj, positions) describing the inserted factor
    """

    kind: str
    data: tuple
    inverse: bool = False
    arches: int = 0

    def apply(self, w: Nanoword) -> Nanoword:
        if self.kind == "H1":
            return apply_h1(w, self.data[0])
        if self.kind == "H2":
            return apply_h2(w, self.data)
        if self.kind == "H3":
            return apply_h3_inverse(w, self.data) if self.inverse else apply_h3(w, self.data)
        if self.kind == "SURG":
            letters, segments = self.data
            return apply_surgery(w, Factor(letters, segments))
        if self.kind == "BRIDGE":
            letters, segments, kappa = self.data
            bridge = validate_bridge(w, Factor(letters, segments), kappa)
            if bridge is None:
                raise WordError("recorded bridge no longer validates")
            return apply_bridge(w, bridge)
        if self.kind == "INS":
            words, proj, positions = self.data
            return insert_phrase(w, words, proj, positions)
        if self.kind == "SHIFT":
            return w.circular_shift()
        raise WordError(f"unknown move kind {self.kind!r}")

    def to_line(self) -> str:
        prefix = "INV " if self.inverse else ""
        if self.kind in ("H1", "H2", "H3"):
            return f"{prefix}{self.kind}@{','.join(str(x) for x in self.data)}"
        if self.kind == "SURG":
            letters, segments = self.data
            segs = ",".join(f"{a}-{b}" for a, b in segments)
            return f"{prefix}SURG letters={','.join(map(str, letters))} segs={segs}"
        if self.kind == "BRIDGE":
            letters, segments, kappa = self.data
            segs = ",".join(f"{a}-{b}" for a, b in segments)
            kap = ",".join(str(x) for x in kappa)
            return (
                f"{prefix}BRIDGE letters={','.join(map(str, letters))} "
                f"segs={segs} kappa={kap} arches={self.arches}"
            )
        if self.kind == "INS":
            words, proj, positions = self.data
            body = "|".join(".".join(str(x) for x in word) for word in words)
            return (
                f"{prefix}INS words={body} proj={','.join(proj)} "
                f"at={','.join(map(str, positions))}"
            )
        return f"{prefix}{self.kind}"

    @staticmethod
    def from_line(line: str) -> "Move":
        text = line.strip()
        inverse = text.startswith("INV ")
        if inverse:
            text = text[4:]
        if text == "SHIFT":
            return Move("SHIFT", (), inverse)
        if "@" in text:
            kind, rest = text.split("@", 1)
            return Move(kind, tuple(int(x) for x in rest.split(",")), inverse)
        fields = dict(
            part.split("=", 1) for part in text.split(" ")[1:] if "=" in part
        )
        kind = text.split(" ", 1)[0]
        if kind == "SURG":
            letters = tuple(int(x) for x in fields["letters"].split(","))
            segments = tuple(
                tuple(int(v) for v in seg.split("-")) for seg in fields["segs"].split(",")
            )
            return Move("SURG", (letters, segments), inverse)
        if kind == "BRIDGE":
            letters = tuple(int(x) for x in fields["letters"].split(","))
            segments = tuple(
                tuple(int(v) for v in seg.split("-")) for seg in fields["segs"].split(",")
            )
            kappa = tuple(int(x) for x in fields["kappa"].split(","))
            return Move(
                "BRIDGE", (letters, segments, kappa), inverse,
                arches=int(fields.get("arches", 0)),
            )
        if kind == "INS":
            words = tuple(
                tuple(int(x) for x in word.split("."))
                for word in fields["words"].split("|")
            )
            proj = tuple(fields["proj"].split(","))
            positions = tuple(int(x) for x in fields["at"].split(","))
            return Move("INS", (words, proj, positions), inverse)
        raise WordError(f"cannot parse move line {line!r}")


@dataclass(frozen=True)
class Metamorphosis:
    """A replayable move sequence.  Replay canonicalizes after every move,
    matching how the search generated it."""

    moves: tuple[Move, ...]

    @property
    def total_arches(self) -> int:
        return sum(m.arches for m in self.moves)

    def replay(self, start: Nanoword) -> Nanoword:
        current = start.canonical_form()
        for move in self.moves:
            current = move.apply(current).canonical_form()
        return current

    def to_log(self) -> str:
        return "\n".join(m.to_line() for m in self.moves)

    @staticmethod
    def from_log(text: str) -> "Metamorphosis":
        lines = [ln for ln in (l.strip() for l in text.splitlines()) if ln]
        return Metamorphosis(tuple(Move.from_line(ln) for ln in lines))

    def inverted(self, start: Nanoword) -> "Metamorphosis":
        """The reverse move sequence, with positions resolved by replaying
        from ``start``.  Replaying the result from the endpoint returns a
        word isomorphic to ``start``."""
        current = start.canonical_form()
        backward: list[Move] = []
        for move in self.moves:
            backward.extend(_invert_move(move, current))
            current = move.apply(current).canonical_form()
        return Metamorphosis(tuple(reversed(backward)))


def _canonical_ids(w: Nanoword) -> dict[int, int]:
    relabel: dict[int, int] = {}
    for x in w.seq:
        if x not in relabel:
            relabel[x] = len(relabel)
    return relabel


def _segments_to_phrase_payload(
    w: Nanoword, letters: Sequence[int], segments: Sequence[tuple[int, int]]
) -> tuple[tuple, tuple[str, ...], tuple[int, ...]]:
    """(local-id segment words, projections, reinsertion points) describing
    how to insert the deleted factor back."""
    local = {g: i for i, g in enumerate(sorted(letters))}
    words = tuple(
        tuple(local[x] for x in w.seq[start:end]) for start, end in segments
    )
    proj = tuple(w.proj[g] for g in sorted(letters))
    points = []
    removed = 0
    for start, end in segments:
        points.append(start - removed)
        removed += end - start
    return words, proj, tuple(points)


def _invert_move(move: Move, w: Nanoword) -> list[Move]:
    """Inverse of one move applied to (canonical) ``w``, as replayable
    moves against the canonical form of the move's result."""
    if move.kind == "H1":
        i = move.data[0]
        payload = (((0, 0),), (w.proj[w.seq[i]],), (i,))
        return [Move("INS", payload, inverse=True)]
    if move.kind == "H2":
        i, j = move.data
        a = w.proj[w.seq[i]]
        payload = (((0, 1), (1, 0)), (a, w.ground.tau(a)), (i, j - 2))
        return [Move("INS", payload, inverse=True)]
    if move.kind == "H3":
        return [Move("H3", move.data, inverse=not move.inverse)]
    if move.kind in ("SURG", "BRIDGE"):
        letters, segments = move.data[0], move.data[1]
        payload = _segments_to_phrase_payload(w, letters, segments)
        return [Move("INS", payload, inverse=True, arches=move.arches)]
    if move.kind == "INS":
        words, proj, positions = move.data
        result = move.apply(w)
        relabel = _canonical_ids(result)
        segments = []
        grown = 0
        for word, pos in zip(words, positions):
            at = pos + grown
            segments.append((at, at + len(word)))
            grown += len(word)
        inserted = sorted(
            {relabel[result.seq[p]] for s, e in segments for p in range(s, e)}
        )
        return [Move("SURG", (tuple(inserted), tuple(segments)), arches=move.arches)]
    if move.kind == "SHIFT":
        return [Move("SHIFT", ())] * (w.length - 1)
    raise WordError(f"cannot invert move {move.kind!r}")


# ---------------------------------------------------------------------------
# homotopy moves


def find_h1_sites(w: Nanoword) -> list[Move]:
    return [
        Move("H1", (i,))
        for i in range(w.length - 1)
        if w.seq[i] == w.seq[i + 1]
    ]


def apply_h1(w: Nanoword, i: int) -> Nanoword:
    if i < 0 or i + 1 >= w.length or w.seq[i] != w.seq[i + 1]:
        raise WordError(f"no adjacent doubled letter at position {i}")
    word, _ = w.delete_letters([w.seq[i]])
    return word


def find_h2_sites(w: Nanoword) -> list[Move]:
    sites = []
    for i in range(w.length - 1):
        a, b = w.seq[i], w.seq[i + 1]
        if a == b or w.proj[b] != w.ground.tau(w.proj[a]):
            continue
        for j in range(i + 2, w.length - 1):
            if w.seq[j] == b and w.seq[j + 1] == a:
                sites.append(Move("H2", (i, j)))
    return sites


def apply_h2(w: Nanoword, site: tuple[int, int]) -> Nanoword:
    i, j = site
    ok = (
        0 <= i < i + 1 < j < j + 1 < w.length
        and w.seq[i] == w.seq[j + 1]
        and w.seq[i + 1] == w.seq[j]
        and w.seq[i] != w.seq[i + 1]
        and w.proj[w.seq[i + 1]] == w.ground.tau(w.proj[w.seq[i]])
    )
    if not ok:
        raise WordError(f"no second-move pattern at positions {site}")
    word, _ = w.delete_letters([w.seq[i], w.seq[i + 1]])
    return word


def _h3_positions(w: Nanoword, i: int, j: int, k: int, forward: bool) -> Optional[tuple[int, int, int]]:
    if not (0 <= i and i + 1 < j and j + 1 < k and k + 1 < w.length):
        return None
    if forward:
        a, b = w.seq[i], w.seq[i + 1]
        a2, c = w.seq[j], w.seq[j + 1]
        b2, c2 = w.seq[k], w.seq[k + 1]
    else:
        b, a = w.seq[i], w.seq[i + 1]
        c, a2 = w.seq[j], w.seq[j + 1]
        c2, b2 = w.seq[k], w.seq[k + 1]
    if a != a2 or b != b2 or c != c2:
        return None
    if len({a, b, c}) != 3:
        return None
    if not (w.proj[a] == w.proj[b] == w.proj[c]):
        return None
    return (a, b, c)


def find_h3_sites(w: Nanoword, inverse: bool = False) -> list[Move]:
    sites = []
    for i in range(w.length):
        for j in range(i + 2, w.length):
            for k in range(j + 2, w.length - 1):
                if _h3_positions(w, i, j, k, forward=not inverse):
                    sites.append(Move("H3", (i, j, k), inverse=inverse))
    return sites


def apply_h3(w: Nanoword, site: tuple[int, int, int]) -> Nanoword:
    i, j, k = site
    letters = _h3_positions(w, i, j, k, forward=True)
    if letters is None:
        raise WordError(f"no third-move pattern at positions {site}")
    a, b, c = letters
    seq = list(w.seq)
    seq[i], seq[i + 1] = b, a
    seq[j], seq[j + 1] = c, a
    seq[k], seq[k + 1] = c, b
    return Nanoword(w.ground, tuple(seq), w.proj, w.names)


def apply_h3_inverse(w: Nanoword, site: tuple[int, int, int]) -> Nanoword:
    i, j, k = site
    letters = _h3_positions(w, i, j, k, forward=False)
    if letters is None:
        raise WordError(f"no inverse third-move pattern at positions {site}")
    a, b, c = letters
    seq = list(w.seq)
    seq[i], seq[i + 1] = a, b
    seq[j], seq[j + 1] = a, c
    seq[k], seq[k + 1] = b, c
    return Nanoword(w.ground, tuple(seq), w.proj, w.names)


# ---------------------------------------------------------------------------
# factors, surgeries, bridges


def _runs(positions: Sequence[int]) -> list[tuple[int, int]]:
    runs = []
    start = prev = positions[0]
    for p in positions[1:]:
        if p == prev + 1:
            prev = p
            continue
        runs.append((start, prev + 1))
        start = prev = p
    runs.append((start, prev + 1))
    return runs


def _segmentations(
    runs: Sequence[tuple[int, int]], max_k: int
) -> Iterator[tuple[tuple[int, int], ...]]:
    """Split each maximal run into nonempty consecutive segments; adjacent
    segments model empty context between them."""

    def split_run(start: int, end: int) -> Iterator[tuple[tuple[int, int], ...]]:
        length = end - start
        for parts in range(1, length + 1):
            for cuts in itertools.combinations(range(1, length), parts - 1):
                bounds = (0,) + cuts + (length,)
                yield tuple(
                    (start + bounds[t], start + bounds[t + 1]) for t in range(parts)
                )

    def rec(idx: int, acc: list, budget: int) -> Iterator[tuple[tuple[int, int], ...]]:
        if idx == len(runs):
            yield tuple(acc)
            return
        remaining_min = len(runs) - idx
        for pieces in split_run(*runs[idx]):
            if len(pieces) + (remaining_min - 1) > budget:
                continue
            acc.extend(pieces)
            yield from rec(idx + 1, acc, budget - len(pieces))
            del acc[-len(pieces):]

    if len(runs) > max_k:
        return iter(())
    return rec(0, [], max_k)


def enumerate_factors(
    w: Nanoword, max_letters: int, max_k: int
) -> Iterator[Factor]:
    """Every factor within the caps, in deterministic order."""
    m = w.num_letters
    for size in range(1, min(m, max_letters) + 1):
        for subset in itertools.combinations(range(m), size):
            chosen = set(subset)
            positions = [i for i, x in enumerate(w.seq) if x in chosen]
            runs = _runs(positions)
            if len(runs) > max_k:
                continue
            for segments in _segmentations(runs, max_k):
                yield Factor(tuple(subset), segments)


def enumerate_even_symmetric_factors(
    w: Nanoword, max_letters: int = DEFAULT_CAPS.max_letters, max_k: int = DEFAULT_CAPS.max_k
) -> list[Factor]:
    out = []
    for factor in enumerate_factors(w, max_letters, max_k):
        if any((end - start) % 2 for start, end in factor.segments):
            continue
        phrase = factor.phrase(w)
        if phrase.is_symmetric():
            out.append(factor)
    return out


def apply_surgery(w: Nanoword, factor: Factor) -> Nanoword:
    phrase = factor.phrase(w)
    if not phrase.is_even():
        raise WordError("surgery factor must be even")
    if not phrase.is_symmetric():
        raise WordError("surgery factor must be symmetric")
    word, _ = w.delete_letters(factor.letters)
    return word


def insert_phrase(
    w: Nanoword,
    words: Sequence[Sequence[int]],
    proj: Sequence[str],
    positions: Sequence[int],
) -> Nanoword:
    """Insert the segments of a phrase (given with local letter ids) at the
    given ascending positions of ``w``."""
    if len(words) != len(positions):
        raise WordError("one insertion point per segment required")
    if any(positions[t] > positions[t + 1] for t in range(len(positions) - 1)):
        raise WordError("insertion points must be ascending")
    if any(p < 0 or p > w.length for p in positions):
        raise WordError("insertion point out of range")
    base = w.num_letters
    seq = list(w.seq)
    for word, pos in zip(reversed(words), reversed(positions)):
        seq[pos:pos] = [base + x for x in word]
    names = list(w.names)
    used = set(names)
    for i in range(len(proj)):
        fresh = f"N{base + i + 1}"
        while fresh in used:
            fresh += "'"
        names.append(fresh)
        used.add(fresh)
    return Nanoword(w.ground, tuple(seq), w.proj + tuple(proj), tuple(names))


def factor_is_well_formed(w: Nanoword, factor: Factor) -> bool:
    """Segments disjoint, ascending, in range, covering exactly the entries
    of the factor's letters."""
    last = 0
    covered = []
    for start, end in factor.segments:
        if not (0 <= start < end <= w.length) or start < last:
            return False
        last = end
        covered.extend(range(start, end))
    chosen = set(factor.letters)
    expected = [i for i, x in enumerate(w.seq) if x in chosen]
    return covered == expected


def validate_bridge(
    w: Nanoword, factor: Factor, kappa: Sequence[int]
) -> Optional[Bridge]:
    """Check the bridge conditions for a factor and a segment involution:
    matching segment lengths, even length on fixed segments, a consistent
    mirrored letter involution, and the projection twist rule."""
    if not factor_is_well_formed(w, factor):
        return None
    k = factor.num_segments
    kappa = tuple(kappa)
    if sorted(kappa) != list(range(k)):
        return None
    if any(kappa[kappa[r]] != r for r in range(k)):
        return None
    lengths = [end - start for start, end in factor.segments]
    for r in range(k):
        if lengths[r] != lengths[kappa[r]]:
            return None
        if kappa[r] == r and lengths[r] % 2:
            return None

    iota: dict[int, int] = {}
    for r, (start, end) in enumerate(factor.segments):
        ts, te = factor.segments[kappa[r]]
        n = end - start
        for offset in range(n):
            x = w.seq[start + offset]
            y = w.seq[ts + (n - 1 - offset)]
            if iota.setdefault(x, y) != y:
                return None

    segment_of = {}
    for r, (start, end) in enumerate(factor.segments):
        for pos in range(start, end):
            segment_of[pos] = r

    def symmetric_position(pos: int) -> int:
        r = segment_of[pos]
        start, end = factor.segments[r]
        ts, _ = factor.segments[kappa[r]]
        return ts + (end - 1 - pos)

    epsilon: dict[int, int] = {}
    for b in factor.letters:
        first, second = w.occurrences(b)
        partner = iota[b]
        epsilon[b] = 1 if symmetric_position(first) == w.occurrences(partner)[0] else 0
    for b in factor.letters:
        expected = w.proj[b]
        if epsilon[b]:
            expected = w.ground.tau(expected)
        if w.proj[iota[b]] != expected:
            return None
    return Bridge(
        factor,
        kappa,
        tuple(sorted(iota.items())),
        tuple(sorted(epsilon.items())),
    )


def apply_bridge(w: Nanoword, bridge: Bridge) -> Nanoword:
    word, _ = w.delete_letters(bridge.factor.letters)
    return word


def arches(bridge: Bridge) -> int:
    return bridge.arches


def _involutions(k: int) -> Iterator[tuple[int, ...]]:
    def rec(assigned: dict[int, int]) -> Iterator[tuple[int, ...]]:
        free = [r for r in range(k) if r not in assigned]
        if not free:
            yield tuple(assigned[r] for r in range(k))
            return
        head = free[0]
        assigned[head] = head
        yield from rec(assigned)
        del assigned[head]
        for other in free[1:]:
            assigned[head] = other
            assigned[other] = head
            yield from rec(assigned)
            del assigned[head]
            del assigned[other]

    return rec({})


def enumerate_bridges(
    w: Nanoword, max_letters: int = DEFAULT_CAPS.max_letters, max_k: int = DEFAULT_CAPS.max_k
) -> list[Bridge]:
    out = []
    for factor in enumerate_factors(w, max_letters, max_k):
        for kappa in _involutions(factor.num_segments):
            bridge = validate_bridge(w, factor, kappa)
            if bridge is not None:
                out.append(bridge)
    return out


# ---------------------------------------------------------------------------
# bounded breadth-first search


def _insertion_templates(ground: InvolutiveAlphabet) -> list[tuple[tuple, tuple[str, ...]]]:
    """Factors inserted by the search: a doubled letter, and the two-letter
    split factors that undo the second homotopy move and its sibling."""
    out = []
    for a in ground.symbols:
        out.append((((0, 0),), (a,)))  # AA at one position
        b = ground.tau(a)
        out.append((((0, 1), (1, 0)), (a, b)))  # (AB | BA)
        out.append((((0, 1), (0, 1)), (a, b)))  # (AB | AB)
    return out


HOMOTOPY = "homotopy"
SURGERY = "surgery"
INSERTION = "insertion"
SHIFT = "shift"
DEFAULT_REPERTOIRE = (HOMOTOPY, SURGERY, INSERTION)


def neighbors(
    w: Nanoword,
    caps: Caps = DEFAULT_CAPS,
    repertoire: Sequence[str] = DEFAULT_REPERTOIRE,
    extra_templates: Sequence[tuple[tuple, tuple[str, ...]]] = (),
) -> Iterator[tuple[Move, Nanoword]]:
    max_len = caps.bfs_length if caps.bfs_length is not None else w.length + 4
    if HOMOTOPY in repertoire:
        for move in find_h1_sites(w):
            yield move, move.apply(w)
        for move in find_h2_sites(w):
            yield move, move.apply(w)
        for move in find_h3_sites(w):
            yield move, move.apply(w)
        for move in find_h3_sites(w, inverse=True):
            yield move, move.apply(w)
    if SURGERY in repertoire:
        for factor in enumerate_even_symmetric_factors(w, caps.max_letters, caps.max_k):
            move = Move("SURG", (factor.letters, factor.segments))
            yield move, apply_surgery(w, factor)
    if INSERTION in repertoire:
        templates = list(_insertion_templates(w.ground)) + list(extra_templates)
        for words, proj in templates:
            total = sum(len(word) for word in words)
            if w.length + total > max_len:
                continue
            slots = itertools.combinations_with_replacement(
                range(w.length + 1), len(words)
            )
            for positions in slots:
                move = Move("INS", (words, proj, positions), inverse=True)
                yield move, insert_phrase(w, words, proj, positions)
    if SHIFT in repertoire and w.length:
        yield Move("SHIFT", ()), w.circular_shift()


@dataclass(frozen=True)
class SearchOutcome:
    status: str  # "equivalent" or "unknown"
    metamorphosis: Optional[Metamorphosis]
    explored: int
    min_length: int

    @property
    def equivalent(self) -> bool:
        return self.status == "equivalent"


def bounded_bfs(
    w: Nanoword,
    v: Optional[Nanoword],
    caps: Caps = DEFAULT_CAPS,
    repertoire: Sequence[str] = DEFAULT_REPERTOIRE,
    extra_templates: Sequence[tuple[tuple, tuple[str, ...]]] = (),
) -> SearchOutcome:
    """Search move sequences from ``w``; with a target ``v`` stop when its
    isomorphism class is reached, otherwise exhaust the caps.  An
    "unknown" outcome is never a proof of inequivalence."""
    start = w.canonical_form()
    target_key = v.canonical_key() if v is not None else None
    parents: dict[tuple, Optional[tuple[tuple, Move]]] = {start.canonical_key(): None}
    state_words = {start.canonical_key(): start}
    min_length = start.length

    def witness(key: tuple) -> Metamorphosis:
        moves = []
        while parents[key] is not None:
            key, move = parents[key]
            moves.append(move)
        return Metamorphosis(tuple(reversed(moves)))

    if target_key is not None and start.canonical_key() == target_key:
        return SearchOutcome("equivalent", Metamorphosis(()), 1, min_length)

    queue = deque([start.canonical_key()])
    explored = 0
    max_len = caps.bfs_length if caps.bfs_length is not None else start.length + 4
    scoped = replace(caps, bfs_length=max_len)
    while queue and explored < caps.bfs_nodes:
        key = queue.popleft()
        explored += 1
        current = state_words[key]
        for move, result in neighbors(current, scoped, repertoire, extra_templates):
            if result.length > max_len:
                continue
            child = result.canonical_form()
            ckey = child.canonical_key()
            if ckey in parents:
                continue
            parents[ckey] = (key, move)
            state_words[ckey] = child
            min_length = min(min_length, child.length)
            if target_key is not None and ckey == target_key:
                return SearchOutcome("equivalent", witness(ckey), explored, min_length)
            queue.append(ckey)
    return SearchOutcome("unknown", None, explored, min_length)


def length_norm_bounds(
    w: Nanoword,
    caps: Caps = DEFAULT_CAPS,
    repertoire: Sequence[str] = DEFAULT_REPERTOIRE,
) -> tuple[int, int]:
    """Certified lower bound and search upper bound for half the minimal
    length in the equivalence class of ``w``.

    The lower bound combines: sliceness (bound 0), the no-value-1 gap,
    the degree of the polynomial invariant plus one, and half the genus
    plus one.  The upper bound is half the shortest length reached."""
    ground = w.ground
    empty = Nanoword.empty(ground)
    search = bounded_bfs(w, empty, caps, repertoire)
    if search.equivalent:
        return 0, 0
    upper = search.min_length // 2

    gamma = w.gamma()
    u = u_polynomial_of_nanoword(w)
    p = pairing_of_nanoword(w)
    battery = phi_sign_battery(ground)
    genera = [genus(p, phi).twice for phi in battery]
    non_slice = (
        not gamma.is_identity()
        or not u.is_zero()
        or any(g > 0 for g in genera)
        or is_hyperbolic(p) is None
    )
    if not non_slice:
        return 0, upper
    lower = 2  # non-slice rules out 0, and the norm never takes value 1
    if not ground.fixed_reps():
        for rep in ground.free_reps():
            lower = max(lower, u_degree(u, rep) + 1)
    for twice in genera:
        sigma = twice // 2
        lower = max(lower, (sigma + 1) // 2 + 1)
    return lower, upper

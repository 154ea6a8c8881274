"""Nanowords and nanophrases over an involutive ground alphabet.

A nanoword is a word in which every letter occurs exactly twice, each
letter carrying a projection to the ground alphabet.  Letters are dense
integer ids internally; display names live in a side table so canonical
forms and hashing stay cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .algebra import AlphabetError, InvolutiveAlphabet, PiWord


class WordError(ValueError):
    """Raised for sequences violating the twice-occurrence invariant."""


def _default_names(count: int) -> tuple[str, ...]:
    return tuple(f"L{i + 1}" for i in range(count))


def _validate_letters(seq: Sequence[int], num_letters: int) -> None:
    counts = [0] * num_letters
    for x in seq:
        if not 0 <= x < num_letters:
            raise WordError(f"letter id {x} out of range")
        counts[x] += 1
    bad = [i for i, c in enumerate(counts) if c != 2]
    if bad:
        detail = ", ".join(f"letter {i} occurs {counts[i]} times" for i in bad)
        raise WordError(f"not a nanoword: {detail}")


@dataclass(frozen=True)
class Nanoword:
    ground: InvolutiveAlphabet
    seq: tuple[int, ...]
    proj: tuple[str, ...]
    names: tuple[str, ...]

    def __post_init__(self):
        if len(self.proj) != len(self.names):
            raise WordError("projection/name tables misaligned")
        _validate_letters(self.seq, len(self.proj))
        if len(self.seq) != 2 * len(self.proj):
            raise WordError("length must be twice the letter count")
        for a in self.proj:
            self.ground.check(a)
        if len(set(self.names)) != len(self.names):
            raise WordError("duplicate letter names")

    @staticmethod
    def empty(ground: InvolutiveAlphabet) -> "Nanoword":
        return Nanoword(ground, (), (), ())

    @staticmethod
    def from_names(
        ground: InvolutiveAlphabet,
        letters: Sequence[str],
        proj: Mapping[str, str],
    ) -> "Nanoword":
        """Build from a sequence of letter names plus a projection map.
        ``letters`` may be a string when all names are single characters."""
        order: list[str] = []
        ids: dict[str, int] = {}
        seq = []
        for name in letters:
            if name not in ids:
                ids[name] = len(order)
                order.append(name)
            seq.append(ids[name])
        counts = {name: 0 for name in order}
        for name in letters:
            counts[name] += 1
        bad = [n for n, c in counts.items() if c != 2]
        if bad:
            detail = ", ".join(f"letter {n} occurs {counts[n]} times" for n in bad)
            raise WordError(f"not a nanoword: {detail}")
        missing = [n for n in order if n not in proj]
        if missing:
            raise WordError(f"projection missing for {', '.join(missing)}")
        return Nanoword(
            ground, tuple(seq), tuple(proj[n] for n in order), tuple(order)
        )

    # -- basic views ---------------------------------------------------

    @property
    def length(self) -> int:
        return len(self.seq)

    @property
    def num_letters(self) -> int:
        return len(self.proj)

    def letter_seq(self) -> tuple[str, ...]:
        return tuple(self.names[i] for i in self.seq)

    def occurrences(self, letter: int) -> tuple[int, int]:
        pos = [i for i, x in enumerate(self.seq) if x == letter]
        return pos[0], pos[1]

    def projection_of(self, letter: int) -> str:
        return self.proj[letter]

    def __str__(self) -> str:
        if not self.seq:
            return "(empty)"
        word = " ".join(self.letter_seq())
        proj = " ".join(f"{n}={a}" for n, a in zip(self.names, self.proj))
        return f"{word} [{proj}]"

    # -- canonical form ------------------------------------------------

    def canonical_key(self) -> tuple:
        """Isomorphism invariant: ids renumbered by first occurrence plus
        the projections in that order.  Two nanowords over the same ground
        alphabet are isomorphic iff their keys coincide."""
        relabel: dict[int, int] = {}
        seq = []
        for x in self.seq:
            if x not in relabel:
                relabel[x] = len(relabel)
            seq.append(relabel[x])
        proj = [""] * len(relabel)
        for old, new in relabel.items():
            proj[new] = self.proj[old]
        return (tuple(seq), tuple(proj))

    def canonical_form(self) -> "Nanoword":
        seq, proj = self.canonical_key()
        return Nanoword(self.ground, seq, proj, _default_names(len(proj)))

    def is_isomorphic(self, other: "Nanoword") -> bool:
        return self.ground == other.ground and self.canonical_key() == other.canonical_key()

    # -- elementary operations ------------------------------------------

    def opposite(self) -> "Nanoword":
        return Nanoword(self.ground, tuple(reversed(self.seq)), self.proj, self.names)

    def concatenate(self, other: "Nanoword") -> "Nanoword":
        if self.ground != other.ground:
            raise AlphabetError("ground alphabet mismatch")
        shift = self.num_letters
        names = list(self.names)
        used = set(names)
        for n in other.names:
            fresh = n
            while fresh in used:
                fresh += "'"
            names.append(fresh)
            used.add(fresh)
        return Nanoword(
            self.ground,
            self.seq + tuple(x + shift for x in other.seq),
            self.proj + other.proj,
            tuple(names),
        )

    def circular_shift(self) -> "Nanoword":
        """Move the first letter's two entries: AxAy -> x A~ y A~ where the
        fresh letter A~ projects to tau of the old projection."""
        if not self.seq:
            raise WordError("cannot shift the empty nanoword")
        head = self.seq[0]
        second = self.seq.index(head, 1)
        body = self.seq[1:second] + (head,) + self.seq[second + 1 :] + (head,)
        proj = list(self.proj)
        proj[head] = self.ground.tau(proj[head])
        names = list(self.names)
        fresh = names[head] + "~"
        while fresh in names:
            fresh += "~"
        names[head] = fresh
        return Nanoword(self.ground, body, tuple(proj), tuple(names))

    def push_forward(
        self, f: Mapping[str, str], target: InvolutiveAlphabet
    ) -> "Nanoword":
        for a in self.ground.symbols:
            if a not in f:
                raise AlphabetError(f"map undefined on {a!r}")
            if f[self.ground.tau(a)] != target.tau(f[a]):
                raise AlphabetError(f"map is not equivariant at {a!r}")
        return Nanoword(
            target, self.seq, tuple(f[a] for a in self.proj), self.names
        )

    def pull_back(self, beta: Iterable[str]) -> "Nanoword":
        sub = self.ground.restrict(beta)
        keep = {i for i, a in enumerate(self.proj) if a in sub}
        relabel = {old: new for new, old in enumerate(sorted(keep))}
        return Nanoword(
            sub,
            tuple(relabel[x] for x in self.seq if x in keep),
            tuple(self.proj[i] for i in sorted(keep)),
            tuple(self.names[i] for i in sorted(keep)),
        )

    def delete_letters(self, letters: Iterable[int]) -> tuple["Nanoword", dict[int, int]]:
        """Remove the given letters; also return the old->new id map for
        the survivors."""
        drop = set(letters)
        survivors = [i for i in range(self.num_letters) if i not in drop]
        relabel = {old: new for new, old in enumerate(survivors)}
        word = Nanoword(
            self.ground,
            tuple(relabel[x] for x in self.seq if x not in drop),
            tuple(self.proj[i] for i in survivors),
            tuple(self.names[i] for i in survivors),
        )
        return word, relabel

    def to_phrase(self) -> "Nanophrase":
        return Nanophrase(self.ground, (self.seq,), self.proj, self.names)

    def gamma(self) -> PiWord:
        """Product over entries of the orbit generator of the projection,
        inverted at each second occurrence."""
        seen: set[int] = set()
        out = PiWord.identity(self.ground)
        for x in self.seq:
            power = 1 if x not in seen else -1
            seen.add(x)
            out = out * PiWord.generator(self.ground, self.proj[x], power)
        return out


@dataclass(frozen=True)
class Nanophrase:
    """A sequence of words whose concatenation is a nanoword."""

    ground: InvolutiveAlphabet
    words: tuple[tuple[int, ...], ...]
    proj: tuple[str, ...]
    names: tuple[str, ...]

    def __post_init__(self):
        flat = [x for w in self.words for x in w]
        _validate_letters(flat, len(self.proj))
        if len(self.proj) != len(self.names):
            raise WordError("projection/name tables misaligned")
        for a in self.proj:
            self.ground.check(a)

    @property
    def num_words(self) -> int:
        return len(self.words)

    def concatenated(self) -> Nanoword:
        flat = tuple(x for w in self.words for x in w)
        return Nanoword(self.ground, flat, self.proj, self.names)

    def is_even(self) -> bool:
        return all(len(w) % 2 == 0 for w in self.words)

    def epsilon(self, letter: int) -> int:
        """0 when both entries of the letter sit in one constituent word."""
        homes = [r for r, w in enumerate(self.words) for x in w if x == letter]
        if len(homes) != 2:
            raise WordError(f"unknown letter id {letter}")
        return 0 if homes[0] == homes[1] else 1

    def symmetry_witness(self) -> Optional["SymmetryWitness"]:
        """The unique candidate pairing of mirrored positions, if it is a
        well-defined involution compatible with the projections."""
        iota: dict[int, int] = {}
        for w in self.words:
            n = len(w)
            for i, x in enumerate(w):
                y = w[n - 1 - i]
                if iota.setdefault(x, y) != y:
                    return None
        epsilon = {x: self.epsilon(x) for x in range(len(self.proj))}
        for x, y in iota.items():
            expected = self.proj[x]
            if epsilon[x]:
                expected = self.ground.tau(expected)
            if self.proj[y] != expected:
                return None
        return SymmetryWitness(tuple(sorted(iota.items())), tuple(sorted(epsilon.items())))

    def is_symmetric(self) -> bool:
        return self.symmetry_witness() is not None

    def __str__(self) -> str:
        body = " | ".join(" ".join(self.names[x] for x in w) for w in self.words)
        proj = " ".join(f"{n}={a}" for n, a in zip(self.names, self.proj))
        return f"({body}) [{proj}]"


@dataclass(frozen=True)
class SymmetryWitness:
    """Involution on letters realizing the phrase as its own reverse,
    with the per-letter word-crossing indicator."""

    iota: tuple[tuple[int, int], ...]
    epsilon: tuple[tuple[int, int], ...]

    def iota_of(self, letter: int) -> int:
        return dict(self.iota)[letter]

    def epsilon_of(self, letter: int) -> int:
        return dict(self.epsilon)[letter]


def canonical_form(w: Nanoword) -> Nanoword:
    return w.canonical_form()


def opposite(w: Nanoword) -> Nanoword:
    return w.opposite()


def concatenate(w1: Nanoword, w2: Nanoword) -> Nanoword:
    return w1.concatenate(w2)


def circular_shift(w: Nanoword) -> Nanoword:
    return w.circular_shift()


def push_forward(w: Nanoword, f: Mapping[str, str], target: InvolutiveAlphabet) -> Nanoword:
    return w.push_forward(f, target)


def pull_back(w: Nanoword, beta: Iterable[str]) -> Nanoword:
    return w.pull_back(beta)


def symmetry_witness(v: Nanophrase) -> Optional[SymmetryWitness]:
    return v.symmetry_witness()


def is_even(v: Nanophrase) -> bool:
    return v.is_even()


def epsilon(v: Nanophrase, letter: int) -> int:
    return v.epsilon(letter)

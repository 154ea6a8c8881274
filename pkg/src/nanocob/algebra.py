"""Ground alphabets with involution and the two groups built on them.

An involutive alphabet is a finite ordered set of symbols with a
self-inverse map ``tau``.  Its orbits index the cyclic factors of a free
product (one infinite cyclic group per free orbit, one order-2 group per
fixed point) and the summands of the abelianized value group (a copy of
Z per free orbit, a copy of Z/2 per fixed point).  Both groups are
implemented with exact integer arithmetic and eager reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union


class AlphabetError(ValueError):
    """Raised for malformed alphabets or symbols outside the alphabet."""


FREE = "free"
FIXED = "fixed"


@dataclass(frozen=True)
class InvolutiveAlphabet:
    """Ordered symbol set with an involution, given as canonical orbit pairs.

    ``pairs`` lists each orbit exactly once as ``(rep, other)`` with
    ``rep`` the member that comes first in declaration order; fixed
    points appear as ``(a, a)``.
    """

    symbols: tuple[str, ...]
    pairs: tuple[tuple[str, str], ...]

    @staticmethod
    def build(symbols: Sequence[str], tau: Mapping[str, str]) -> "InvolutiveAlphabet":
        symbols = tuple(symbols)
        if len(set(symbols)) != len(symbols):
            raise AlphabetError("duplicate symbols in alphabet")
        for a in symbols:
            if a not in tau:
                raise AlphabetError(f"tau undefined on {a!r}")
        for a, b in tau.items():
            if a not in symbols or b not in symbols:
                raise AlphabetError(f"tau mentions unknown symbol in {a!r}<->{b!r}")
            if tau[b] != a:
                raise AlphabetError(f"tau is not an involution at {a!r}")
        index = {a: i for i, a in enumerate(symbols)}
        pairs = []
        seen = set()
        for a in symbols:
            if a in seen:
                continue
            b = tau[a]
            seen.add(a)
            seen.add(b)
            rep, other = (a, b) if index[a] <= index[b] else (b, a)
            pairs.append((rep, other))
        return InvolutiveAlphabet(symbols, tuple(pairs))

    @staticmethod
    def fixed_point_free(reps: Sequence[str], partners: Sequence[str]) -> "InvolutiveAlphabet":
        """Alphabet with orbits (reps[i], partners[i]), all free."""
        if len(reps) != len(partners):
            raise AlphabetError("reps and partners must align")
        symbols: list[str] = []
        tau: dict[str, str] = {}
        for a, b in zip(reps, partners):
            symbols.extend((a, b))
            tau[a] = b
            tau[b] = a
        return InvolutiveAlphabet.build(symbols, tau)

    @staticmethod
    def plus_minus() -> "InvolutiveAlphabet":
        """The two-symbol alphabet {+, -} with the swap involution."""
        return InvolutiveAlphabet.build(("+", "-"), {"+": "-", "-": "+"})

    @cached_property
    def _tau(self) -> dict[str, str]:
        t: dict[str, str] = {}
        for a, b in self.pairs:
            t[a] = b
            t[b] = a
        return t

    @cached_property
    def _index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.symbols)}

    @cached_property
    def _rep(self) -> dict[str, str]:
        r: dict[str, str] = {}
        for a, b in self.pairs:
            r[a] = a
            r[b] = a
        return r

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._index

    def check(self, symbol: str) -> str:
        if symbol not in self._index:
            raise AlphabetError(f"unknown symbol {symbol!r}")
        return symbol

    def tau(self, symbol: str) -> str:
        return self._tau[self.check(symbol)]

    def index(self, symbol: str) -> int:
        return self._index[self.check(symbol)]

    def is_fixed(self, symbol: str) -> bool:
        return self.tau(symbol) == symbol

    def orbit_rep(self, symbol: str) -> str:
        return self._rep[self.check(symbol)]

    def orbits(self) -> tuple["Orbit", ...]:
        return tuple(
            Orbit(rep, FIXED if rep == other else FREE) for rep, other in self.pairs
        )

    def free_reps(self) -> tuple[str, ...]:
        return tuple(rep for rep, other in self.pairs if rep != other)

    def fixed_reps(self) -> tuple[str, ...]:
        return tuple(rep for rep, other in self.pairs if rep == other)

    def restrict(self, keep: Iterable[str]) -> "InvolutiveAlphabet":
        """Sub-alphabet on a tau-invariant symbol set, declaration order kept."""
        keep_set = set(keep)
        for a in keep_set:
            self.check(a)
            if self.tau(a) not in keep_set:
                raise AlphabetError(f"subset not involution-invariant at {a!r}")
        symbols = tuple(a for a in self.symbols if a in keep_set)
        return InvolutiveAlphabet.build(symbols, {a: self._tau[a] for a in symbols})

    def __str__(self) -> str:
        tau_text = " ".join(f"{a}<->{b}" for a, b in self.pairs)
        return f"alphabet: {' '.join(self.symbols)} | tau: {tau_text}"


@dataclass(frozen=True)
class Orbit:
    """One involution orbit, named by its first-declared member."""

    representative: str
    kind: str  # FREE or FIXED

    @property
    def is_free(self) -> bool:
        return self.kind == FREE


def orbit_decomposition(alphabet: InvolutiveAlphabet) -> tuple[Orbit, ...]:
    return alphabet.orbits()


@dataclass(frozen=True)
class PiElement:
    """Element of the abelian group on the alphabet with a + tau(a) = 0.

    Stored sparsely on orbit representatives: integer coefficients on
    free orbits, bits on fixed orbits.  Zero entries are never stored,
    so equality and hashing are structural.
    """

    alphabet: InvolutiveAlphabet
    free: tuple[tuple[str, int], ...]
    torsion: tuple[str, ...]

    @staticmethod
    def make(
        alphabet: InvolutiveAlphabet,
        free: Mapping[str, int] = (),
        torsion: Iterable[str] = (),
    ) -> "PiElement":
        idx = alphabet.index
        fr = {r: c for r, c in dict(free).items() if c != 0}
        for r in fr:
            if alphabet.orbit_rep(r) != r or alphabet.is_fixed(r):
                raise AlphabetError(f"{r!r} is not a free orbit representative")
        tor = set()
        for r in torsion:
            if not alphabet.is_fixed(r):
                raise AlphabetError(f"{r!r} is not a fixed point")
            tor.symmetric_difference_update({r})
        return PiElement(
            alphabet,
            tuple(sorted(fr.items(), key=lambda kv: idx(kv[0]))),
            tuple(sorted(tor, key=idx)),
        )

    @staticmethod
    def zero(alphabet: InvolutiveAlphabet) -> "PiElement":
        return PiElement(alphabet, (), ())

    @staticmethod
    def of_letter(alphabet: InvolutiveAlphabet, symbol: str) -> "PiElement":
        symbol = alphabet.check(symbol)
        if alphabet.is_fixed(symbol):
            return PiElement.make(alphabet, {}, (symbol,))
        rep = alphabet.orbit_rep(symbol)
        coeff = 1 if symbol == rep else -1
        return PiElement.make(alphabet, {rep: coeff})

    def _require_same(self, other: "PiElement") -> None:
        if self.alphabet != other.alphabet:
            raise AlphabetError("ground alphabet mismatch")

    def is_zero(self) -> bool:
        return not self.free and not self.torsion

    def __add__(self, other: "PiElement") -> "PiElement":
        self._require_same(other)
        acc = dict(self.free)
        for r, c in other.free:
            acc[r] = acc.get(r, 0) + c
        tor = set(self.torsion)
        tor.symmetric_difference_update(other.torsion)
        return PiElement.make(self.alphabet, acc, tor)

    def __neg__(self) -> "PiElement":
        return PiElement.make(
            self.alphabet, {r: -c for r, c in self.free}, self.torsion
        )

    def __sub__(self, other: "PiElement") -> "PiElement":
        return self + (-other)

    def scaled(self, k: int) -> "PiElement":
        return PiElement.make(
            self.alphabet,
            {r: k * c for r, c in self.free},
            self.torsion if k % 2 else (),
        )

    def coefficient(self, rep: str) -> int:
        """Coefficient on a free orbit rep, or torsion bit on a fixed one."""
        if self.alphabet.is_fixed(rep):
            return 1 if rep in self.torsion else 0
        return dict(self.free).get(rep, 0)

    def coordinates(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(free-orbit integer vector, fixed-orbit bit vector), orbit order."""
        free = dict(self.free)
        tor = set(self.torsion)
        return (
            tuple(free.get(r, 0) for r in self.alphabet.free_reps()),
            tuple(1 if r in tor else 0 for r in self.alphabet.fixed_reps()),
        )

    def format(self, torsion_suffix: bool = False) -> str:
        if self.is_zero():
            return "0"
        terms = []
        free = dict(self.free)
        tor = set(self.torsion)
        for a in self.alphabet.symbols:
            if a in free:
                c = free[a]
                mag = "" if abs(c) == 1 else str(abs(c))
                terms.append(("-" if c < 0 else "+") + mag + a)
            elif a in tor:
                terms.append("+" + a + ("(2)" if torsion_suffix else ""))
        out = "".join(terms)
        return out[1:] if out.startswith("+") else out

    def __str__(self) -> str:
        return self.format()


def pi_of_letter(alphabet: InvolutiveAlphabet, symbol: str) -> PiElement:
    return PiElement.of_letter(alphabet, symbol)


def pi_add(x: PiElement, y: PiElement) -> PiElement:
    return x + y


def pi_negate(x: PiElement) -> PiElement:
    return -x


@dataclass(frozen=True)
class PiWord:
    """Reduced word in the free product of cyclic groups on the orbits.

    Syllables are (orbit representative, exponent) with adjacent
    syllables in distinct orbits, nonzero exponents, and exponent 1 on
    order-2 (fixed-orbit) generators.
    """

    alphabet: InvolutiveAlphabet
    syllables: tuple[tuple[str, int], ...]

    @staticmethod
    def identity(alphabet: InvolutiveAlphabet) -> "PiWord":
        return PiWord(alphabet, ())

    @staticmethod
    def generator(alphabet: InvolutiveAlphabet, symbol: str, power: int = 1) -> "PiWord":
        """The generator attached to ``symbol``, i.e. its orbit generator
        raised to +1 for the representative and -1 for its partner."""
        symbol = alphabet.check(symbol)
        rep = alphabet.orbit_rep(symbol)
        if alphabet.is_fixed(symbol):
            exp = power % 2
        else:
            exp = power if symbol == rep else -power
        if exp == 0:
            return PiWord.identity(alphabet)
        return PiWord(alphabet, ((rep, exp),))

    @staticmethod
    def from_syllables(
        alphabet: InvolutiveAlphabet, syllables: Iterable[tuple[str, int]]
    ) -> "PiWord":
        out = PiWord.identity(alphabet)
        for rep, exp in syllables:
            out = out * PiWord.generator(alphabet, rep, exp)
        return out

    def _require_same(self, other: "PiWord") -> None:
        if self.alphabet != other.alphabet:
            raise AlphabetError("ground alphabet mismatch")

    def is_identity(self) -> bool:
        return not self.syllables

    def __mul__(self, other: "PiWord") -> "PiWord":
        self._require_same(other)
        stack = list(self.syllables)
        for rep, exp in other.syllables:
            if stack and stack[-1][0] == rep:
                merged = stack[-1][1] + exp
                if self.alphabet.is_fixed(rep):
                    merged %= 2
                stack.pop()
                if merged:
                    stack.append((rep, merged))
            else:
                stack.append((rep, exp))
        return PiWord(self.alphabet, tuple(stack))

    def inverse(self) -> "PiWord":
        out = []
        for rep, exp in reversed(self.syllables):
            out.append((rep, exp if self.alphabet.is_fixed(rep) else -exp))
        return PiWord(self.alphabet, tuple(out))

    def conjugated_by(self, g: "PiWord") -> "PiWord":
        return g.inverse() * self * g

    def cyclic_reduction(self) -> "PiWord":
        """Shortest conjugate obtained by merging matching end syllables."""
        syl = list(self.syllables)
        while len(syl) >= 2 and syl[0][0] == syl[-1][0]:
            rep = syl[0][0]
            merged = syl[-1][1] + syl[0][1]
            if self.alphabet.is_fixed(rep):
                merged %= 2
            syl = syl[1:-1]
            if merged:
                syl.insert(0, (rep, merged))
        return PiWord(self.alphabet, tuple(syl))

    def abelianized(self) -> PiElement:
        out = PiElement.zero(self.alphabet)
        for rep, exp in self.syllables:
            if self.alphabet.is_fixed(rep):
                out = out + PiElement.make(self.alphabet, {}, (rep,) * (exp % 2))
            else:
                out = out + PiElement.make(self.alphabet, {rep: exp})
        return out

    def cyclic_key(self) -> tuple[tuple[str, int], ...]:
        """Canonical representative of the conjugacy class: the least
        rotation of the cyclic reduction."""
        syl = self.cyclic_reduction().syllables
        if len(syl) <= 1:
            return syl
        rotations = [syl[i:] + syl[:i] for i in range(len(syl))]
        return min(rotations)

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        parts = []
        for rep, exp in self.syllables:
            parts.append(rep if exp == 1 else f"{rep}^{exp}")
        return " ".join(parts)


def pi_word_multiply(u: PiWord, v: PiWord) -> PiWord:
    return u * v


def pi_word_is_conjugate(u: PiWord, v: PiWord) -> bool:
    """Conjugacy via the free-product criterion: equal cyclic reductions
    up to syllable rotation (single-syllable and trivial cases compare
    directly since cyclic factors are abelian)."""
    u._require_same(v)
    ru = u.cyclic_reduction().syllables
    rv = v.cyclic_reduction().syllables
    if len(ru) != len(rv):
        return False
    if len(ru) <= 1:
        return ru == rv
    return any(rv[i:] + rv[:i] == ru for i in range(len(rv)))


def abelianize(u: PiWord) -> PiElement:
    return u.abelianized()


RATIONALS = "Q"
PRIME_FIELD = "F"


class PhiSpecError(ValueError):
    """Raised when a coefficient homomorphism violates the torsion relations."""


@dataclass(frozen=True)
class PhiSpec:
    """Additive map from the abelianized group into an exact coefficient
    field: the rationals or a prime field GF(p).

    Values are given on orbit representatives.  On a fixed orbit the
    relation a + a = 0 forces 2*phi(a) = 0, so rational targets (and odd
    prime fields) demand phi(a) = 0 there.
    """

    target: str
    prime: int
    values: tuple[tuple[str, Union[Fraction, int]], ...]

    @staticmethod
    def rationals(
        alphabet: InvolutiveAlphabet, values: Mapping[str, Union[int, Fraction]]
    ) -> "PhiSpec":
        vals = {}
        for rep, _ in alphabet.pairs:
            v = Fraction(values.get(rep, 0))
            if alphabet.is_fixed(rep) and v != 0:
                raise PhiSpecError(f"rational phi must vanish on fixed point {rep!r}")
            vals[rep] = v
        return PhiSpec(RATIONALS, 0, tuple(sorted(vals.items(), key=lambda kv: alphabet.index(kv[0]))))

    @staticmethod
    def prime_field(
        alphabet: InvolutiveAlphabet, p: int, values: Mapping[str, int]
    ) -> "PhiSpec":
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise PhiSpecError(f"{p} is not prime")
        vals = {}
        for rep, _ in alphabet.pairs:
            v = values.get(rep, 0) % p
            if alphabet.is_fixed(rep) and (2 * v) % p != 0:
                raise PhiSpecError(
                    f"phi over GF({p}) must satisfy 2*phi = 0 on fixed point {rep!r}"
                )
            vals[rep] = v
        return PhiSpec(PRIME_FIELD, p, tuple(sorted(vals.items(), key=lambda kv: alphabet.index(kv[0]))))

    @staticmethod
    def signs(alphabet: InvolutiveAlphabet, signs: Mapping[str, int]) -> "PhiSpec":
        """A +/-1 valued map on every symbol; requires tau fixed-point-free."""
        if alphabet.fixed_reps():
            raise PhiSpecError("sign-valued phi needs a fixed-point-free involution")
        for rep in alphabet.free_reps():
            if signs.get(rep, 1) not in (1, -1):
                raise PhiSpecError(f"sign for {rep!r} must be +-1")
        return PhiSpec.rationals(alphabet, {r: signs.get(r, 1) for r in alphabet.free_reps()})

    def value(self, rep: str) -> Union[Fraction, int]:
        return dict(self.values)[rep]

    def apply(self, x: PiElement) -> Union[Fraction, int]:
        vals = dict(self.values)
        if self.target == RATIONALS:
            acc = Fraction(0)
            for rep, c in x.free:
                acc += c * vals[rep]
            return acc  # torsion bits map to 0 over the rationals
        acc = 0
        for rep, c in x.free:
            acc = (acc + c * vals[rep]) % self.prime
        for rep in x.torsion:
            acc = (acc + vals[rep]) % self.prime
        return acc

    def zero(self) -> Union[Fraction, int]:
        return Fraction(0) if self.target == RATIONALS else 0

    def label(self) -> str:
        inside = ",".join(f"{r}={v}" for r, v in self.values)
        base = "Q" if self.target == RATIONALS else f"GF({self.prime})"
        return f"phi[{base}]({inside})"


def phi_apply(phi: PhiSpec, x: PiElement):
    return phi.apply(x)

"""Enumeration of nanowords, invariant tables, slice adjudication, and
randomized verification suites.

Everything that needs randomness takes an explicit seed; enumeration
orders are deterministic so tables are reproducible run to run.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Iterator, Optional, Sequence

from .algebra import InvolutiveAlphabet, PhiSpec, PiElement, PiWord
from .moves import (
    Caps,
    DEFAULT_CAPS,
    Factor,
    Metamorphosis,
    apply_bridge,
    apply_surgery,
    bounded_bfs,
    enumerate_bridges,
)
from .pairings import (
    AlphaPairing,
    UPoly,
    are_isomorphic,
    genus,
    is_hyperbolic,
    m_shift,
    pairing_of_nanoword,
    pairing_of_nanoword_alt,
    phi_sign_battery,
    r_of,
    sum_pairings,
    tuple_genus,
    u_polynomial,
    verify_surgery_filling,
)
from .surfaces import genus_rank_check
from .words import Nanoword


class EnumerationGuard(ValueError):
    """Raised when an enumeration request would blow up combinatorially."""


def parallel_map(fn: Callable, items: Sequence, jobs: int = 1) -> list:
    if jobs <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# enumeration


def enumerate_matchings(chords: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Perfect matchings of 2*chords positions, (2*chords - 1)!! of them."""

    def rec(free: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
        if not free:
            yield ()
            return
        head, rest = free[0], free[1:]
        for idx, other in enumerate(rest):
            for tail in rec(rest[:idx] + rest[idx + 1 :]):
                yield ((head, other),) + tail

    return rec(tuple(range(2 * chords)))


def matching_to_word(
    ground: InvolutiveAlphabet,
    matching: Sequence[tuple[int, int]],
    labels: Sequence[str],
) -> Nanoword:
    chords = sorted(matching)
    seq = [0] * (2 * len(chords))
    for cid, (i, j) in enumerate(chords):
        seq[i] = cid
        seq[j] = cid
    return Nanoword(
        ground,
        tuple(seq),
        tuple(labels),
        tuple(f"L{i + 1}" for i in range(len(chords))),
    )


def enumerate_nanowords(
    half_length: int, ground: InvolutiveAlphabet, allow_large: bool = False
) -> list[Nanoword]:
    """All isomorphism classes with the given number of letters: chord
    matchings crossed with projection labelings, deduplicated by canonical
    key (first-occurrence labeling already makes them canonical)."""
    if half_length < 0:
        raise EnumerationGuard("half-length must be nonnegative")
    if not allow_large and (len(ground.symbols) > 3 or half_length > 6):
        raise EnumerationGuard(
            "enumeration grows as (2n-1)!! * |alphabet|^n; pass allow_large=True"
        )
    if half_length == 0:
        return [Nanoword.empty(ground)]
    seen = set()
    out = []
    for matching in enumerate_matchings(half_length):
        for labels in itertools.product(ground.symbols, repeat=half_length):
            word = matching_to_word(ground, matching, labels)
            key = word.canonical_key()
            if key not in seen:
                seen.add(key)
                out.append(word)
    return out


# ---------------------------------------------------------------------------
# invariant records and slice verdicts


@dataclass(frozen=True)
class InvariantRecord:
    word: Nanoword
    gamma: PiWord
    gamma_cyclic: tuple
    u: UPoly
    genera: tuple[tuple[str, int], ...]
    hyperbolic: bool
    r: PiElement

    def cobordism_key(self) -> tuple:
        return (
            self.gamma.syllables,
            tuple((rep, poly.terms) for rep, poly in self.u.entries),
            self.genera,
            self.hyperbolic,
            (self.r.free, self.r.torsion),
        )

    def weak_key(self) -> tuple:
        return (
            self.gamma_cyclic,
            tuple((rep, poly.terms) for rep, poly in self.u.entries),
            self.genera,
        )


def invariant_record(
    w: Nanoword, phis: Optional[Sequence[PhiSpec]] = None
) -> InvariantRecord:
    phis = phi_sign_battery(w.ground) if phis is None else tuple(phis)
    p = pairing_of_nanoword(w)
    gamma = w.gamma()
    return InvariantRecord(
        word=w.canonical_form(),
        gamma=gamma,
        gamma_cyclic=gamma.cyclic_key(),
        u=u_polynomial(p),
        genera=tuple((phi.label(), genus(p, phi).twice) for phi in phis),
        hyperbolic=is_hyperbolic(p) is not None,
        r=r_of(p),
    )


SLICE = "slice"
NOT_SLICE = "not_slice"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class SliceVerdict:
    status: str
    obstruction: Optional[str] = None
    witness: Optional[Metamorphosis] = None
    caps: Caps = DEFAULT_CAPS

    def __str__(self) -> str:
        if self.status == SLICE:
            return f"Slice({len(self.witness.moves)} moves)"
        if self.status == NOT_SLICE:
            return f"NotSlice({self.obstruction})"
        return f"Unknown(caps {self.caps.describe()})"


def slice_status(
    w: Nanoword,
    caps: Caps = DEFAULT_CAPS,
    phis: Optional[Sequence[PhiSpec]] = None,
    extra_templates: Sequence[tuple[tuple, tuple[str, ...]]] = (),
) -> SliceVerdict:
    record = invariant_record(w, phis)
    if not record.gamma.is_identity():
        return SliceVerdict(NOT_SLICE, "gamma", caps=caps)
    if not record.u.is_zero():
        return SliceVerdict(NOT_SLICE, "u", caps=caps)
    if any(twice > 0 for _, twice in record.genera):
        return SliceVerdict(NOT_SLICE, "genus", caps=caps)
    if not record.hyperbolic:
        return SliceVerdict(NOT_SLICE, "pairing", caps=caps)
    search = bounded_bfs(
        w, Nanoword.empty(w.ground), caps, extra_templates=extra_templates
    )
    if search.equivalent:
        return SliceVerdict(SLICE, witness=search.metamorphosis, caps=caps)
    return SliceVerdict(UNKNOWN, caps=caps)


# ---------------------------------------------------------------------------
# classification


DISTINCT = "distinct"
COBORDANT = "cobordant"


@dataclass(frozen=True)
class ClassRow:
    index: int
    record: InvariantRecord
    verdict: SliceVerdict
    component: int


@dataclass(frozen=True)
class ClassificationTable:
    rows: tuple[ClassRow, ...]
    caps: Caps

    def pair_status(self, i: int, j: int) -> str:
        a, b = self.rows[i], self.rows[j]
        if a.component == b.component:
            return COBORDANT
        if a.record.cobordism_key() != b.record.cobordism_key():
            return DISTINCT
        return UNKNOWN

    def csv_lines(self) -> list[str]:
        lines = [
            "index,word,proj,length,gamma,u_hash,u,sigma,verdict,component"
        ]
        for row in self.rows:
            w = row.record.word
            sigma = ";".join(f"{label}:{twice}" for label, twice in row.record.genera)
            lines.append(
                ",".join(
                    (
                        str(row.index),
                        " ".join(w.letter_seq()) or "(empty)",
                        " ".join(f"{n}={a}" for n, a in zip(w.names, w.proj)),
                        str(w.length),
                        str(row.record.gamma),
                        row.record.u.fingerprint(),
                        str(row.record.u).replace(",", ";"),
                        sigma,
                        str(row.verdict),
                        str(row.component),
                    )
                )
            )
        return lines


def classify_words(
    words: Sequence[Nanoword],
    caps: Caps = DEFAULT_CAPS,
    phis: Optional[Sequence[PhiSpec]] = None,
    jobs: int = 1,
) -> ClassificationTable:
    """Bucket by invariant record, then merge bucket members whose
    equivalence the bounded search certifies.  Record and verdict
    computations are independent per word and honor the worker cap."""
    records = parallel_map(lambda w: invariant_record(w, phis), words, jobs)
    verdicts = parallel_map(lambda w: slice_status(w, caps, phis), words, jobs)

    parent = list(range(len(words)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    # slice words are all cobordant to the empty word, hence to each other
    slice_members = [i for i, v in enumerate(verdicts) if v.status == SLICE]
    for i, j in zip(slice_members, slice_members[1:]):
        union(i, j)

    merge_caps = replace(caps, bfs_nodes=min(caps.bfs_nodes, 600))
    buckets: dict[tuple, list[int]] = {}
    for i, rec in enumerate(records):
        buckets.setdefault(rec.cobordism_key(), []).append(i)
    for members in buckets.values():
        for pos, i in enumerate(members):
            for j in members[pos + 1 :]:
                if find(i) == find(j):
                    continue
                if records[i].word.canonical_key() == records[j].word.canonical_key():
                    union(i, j)
                    continue
                search = bounded_bfs(words[i], words[j], merge_caps)
                if search.equivalent:
                    union(i, j)

    rows = tuple(
        ClassRow(i, records[i], verdicts[i], find(i)) for i in range(len(words))
    )
    table = ClassificationTable(rows, caps)
    _assert_sound(table)
    return table


def _assert_sound(table: ClassificationTable) -> None:
    """A pair must never be both invariant-distinct and search-cobordant."""
    for i in range(len(table.rows)):
        for j in range(i + 1, len(table.rows)):
            a, b = table.rows[i], table.rows[j]
            if (
                a.component == b.component
                and a.record.cobordism_key() != b.record.cobordism_key()
            ):
                raise AssertionError(
                    f"classification soundness violated for rows {i}, {j}"
                )


def classify(
    half_length: int,
    ground: InvolutiveAlphabet,
    caps: Caps = DEFAULT_CAPS,
    phis: Optional[Sequence[PhiSpec]] = None,
    allow_large: bool = False,
    jobs: int = 1,
) -> ClassificationTable:
    return classify_words(
        enumerate_nanowords(half_length, ground, allow_large), caps, phis, jobs
    )


# ---------------------------------------------------------------------------
# random generators


def random_nanoword(
    rng: random.Random, ground: InvolutiveAlphabet, num_letters: int
) -> Nanoword:
    positions = list(range(2 * num_letters))
    rng.shuffle(positions)
    matching = [
        tuple(sorted(positions[2 * i : 2 * i + 2])) for i in range(num_letters)
    ]
    labels = [rng.choice(ground.symbols) for _ in range(num_letters)]
    return matching_to_word(ground, matching, labels)


def random_even_symmetric_phrase(
    rng: random.Random,
    ground: InvolutiveAlphabet,
    max_segments: int = 3,
    max_segment_length: int = 6,
) -> tuple[tuple[tuple[int, ...], ...], tuple[str, ...]]:
    """A random even symmetric nanophrase, as (segment words with local
    letter ids, projections).

    Positions are matched mirror-symmetrically, so the position-forced
    letter involution exists by construction; projections on each
    involution orbit are then chosen to satisfy the twist rule.
    """
    k = rng.randint(1, max_segments)
    lengths = [rng.randrange(2, max_segment_length + 1, 2) for _ in range(k)]
    positions = [(r, i) for r in range(k) for i in range(lengths[r])]

    def mirror(pos: tuple[int, int]) -> tuple[int, int]:
        r, i = pos
        return (r, lengths[r] - 1 - i)

    unmatched = set(positions)
    chord_of: dict[tuple[int, int], int] = {}
    chords: list[tuple[tuple[int, int], tuple[int, int]]] = []
    while unmatched:
        p = min(unmatched)
        unmatched.discard(p)
        q = rng.choice(sorted(unmatched))
        unmatched.discard(q)
        cid = len(chords)
        chords.append((p, q))
        chord_of[p] = cid
        chord_of[q] = cid
        mp, mq = mirror(p), mirror(q)
        if {mp, mq} != {p, q}:
            unmatched.discard(mp)
            unmatched.discard(mq)
            mid = len(chords)
            chords.append((mp, mq))
            chord_of[mp] = mid
            chord_of[mq] = mid

    iota = {}
    for cid, (p, q) in enumerate(chords):
        iota[cid] = chord_of[mirror(p)]
    eps = {cid: (0 if p[0] == q[0] else 1) for cid, (p, q) in enumerate(chords)}

    proj: dict[int, str] = {}
    for cid in range(len(chords)):
        if cid in proj:
            continue
        a = rng.choice(ground.symbols)
        proj[cid] = a
        partner = iota[cid]
        if partner != cid:
            proj[partner] = ground.tau(a) if eps[cid] else a

    words = tuple(
        tuple(chord_of[(r, i)] for i in range(lengths[r])) for r in range(k)
    )
    return words, tuple(proj[c] for c in range(len(chords)))


def random_surgery_instance(
    rng: random.Random,
    ground: InvolutiveAlphabet,
    max_total_length: int = 14,
    max_segments: int = 3,
) -> tuple[Nanoword, Factor]:
    """A word containing a random even symmetric factor, plus that factor."""
    words, proj = random_even_symmetric_phrase(rng, ground, max_segments)
    phrase_length = sum(len(word) for word in words)
    budget = max(0, (max_total_length - phrase_length) // 2)
    context = random_nanoword(rng, ground, rng.randint(0, budget))
    base = context.num_letters
    points = sorted(rng.randint(0, context.length) for _ in words)
    seq = list(context.seq)
    segments = []
    grown = 0
    for word, pos in zip(words, points):
        at = pos + grown
        seq[at:at] = [base + x for x in word]
        segments.append((at, at + len(word)))
        grown += len(word)
    names = list(context.names) + [f"F{i + 1}" for i in range(len(proj))]
    w = Nanoword(ground, tuple(seq), context.proj + proj, tuple(names))
    factor = Factor(tuple(range(base, base + len(proj))), tuple(segments))
    return w, factor


def random_pi_element(
    rng: random.Random, ground: InvolutiveAlphabet, spread: int = 2
) -> PiElement:
    free = {
        rep: rng.randint(-spread, spread)
        for rep in ground.free_reps()
        if rng.random() < 0.7
    }
    torsion = tuple(rep for rep in ground.fixed_reps() if rng.random() < 0.3)
    return PiElement.make(ground, free, torsion)


def random_skew_pairing(
    rng: random.Random, ground: InvolutiveAlphabet, num_letters: int
) -> AlphaPairing:
    zero = PiElement.zero(ground)
    entries: dict[tuple[int, int], PiElement] = {(0, 0): zero}
    proj = [rng.choice(ground.symbols) for _ in range(num_letters)]
    for i in range(1, num_letters + 1):
        es = random_pi_element(rng, ground)
        entries[(i, 0)] = es
        entries[(0, i)] = -es
        for j in range(i + 1, num_letters + 1):
            v = random_pi_element(rng, ground)
            entries[(i, j)] = v
            entries[(j, i)] = -v
    return AlphaPairing.build(ground, proj, entries)


# ---------------------------------------------------------------------------
# verification suites


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    checked: int
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.name}: {self.checked} checks{extra}"


def _random_alphabet(rng: random.Random, allow_fixed: bool = True) -> InvolutiveAlphabet:
    choices = [
        InvolutiveAlphabet.fixed_point_free(("a",), ("A",)),
        InvolutiveAlphabet.fixed_point_free(("a", "b"), ("A", "B")),
    ]
    if allow_fixed:
        choices.append(
            InvolutiveAlphabet.build(
                ("a", "A", "c"), {"a": "A", "A": "a", "c": "c"}
            )
        )
    return rng.choice(choices)


def suite_surgery_filling(seed: int = 0, count: int = 500, max_length: int = 14) -> SuiteResult:
    rng = random.Random(seed)
    for trial in range(count):
        ground = _random_alphabet(rng)
        w, factor = random_surgery_instance(rng, ground, max_length)
        if not verify_surgery_filling(w, factor):
            return SuiteResult(
                "surgery-filling", False, trial + 1, f"failed on {w}"
            )
    return SuiteResult("surgery-filling", True, count)


def _record_for_move_check(w: Nanoword, phis) -> tuple:
    p = pairing_of_nanoword(w)
    return (
        w.gamma().syllables,
        tuple((rep, poly.terms) for rep, poly in u_polynomial(p).entries),
        tuple(genus(p, phi).twice for phi in phis),
    )


def _random_move_instance(rng: random.Random, ground: InvolutiveAlphabet):
    """A (word, moved word) pair for a random move type, built by planting
    the move pattern inside a random context."""
    kind = rng.choice(("H1", "H2", "H3", "SURG"))
    if kind == "SURG":
        w, factor = random_surgery_instance(rng, ground, max_total_length=12)
        return kind, w, apply_surgery(w, factor)
    context = random_nanoword(rng, ground, rng.randint(0, 3))
    n = context.length
    base = context.num_letters
    seq = list(context.seq)
    if kind == "H1":
        at = rng.randint(0, n)
        seq[at:at] = [base, base]
        proj = context.proj + (rng.choice(ground.symbols),)
        w = Nanoword(ground, tuple(seq), proj, context.names + (f"P{base}",))
        return kind, w, w.delete_letters([base])[0]
    if kind == "H2":
        a = rng.choice(ground.symbols)
        i, j = sorted(rng.randint(0, n) for _ in range(2))
        seq[j:j] = [base + 1, base]
        seq[i:i] = [base, base + 1]
        proj = context.proj + (a, ground.tau(a))
        w = Nanoword(
            ground, tuple(seq), proj, context.names + (f"P{base}", f"P{base + 1}")
        )
        return kind, w, w.delete_letters([base, base + 1])[0]
    # H3: plant the pattern xAByACzBCt and rewrite it to xBAyCAzCBt
    a = rng.choice(ground.symbols)
    i, j, k = sorted(rng.randint(0, n) for _ in range(3))
    A, B, C = base, base + 1, base + 2
    seq[k:k] = [B, C]
    seq[j:j] = [A, C]
    seq[i:i] = [A, B]
    proj = context.proj + (a, a, a)
    names = context.names + (f"P{A}", f"P{B}", f"P{C}")
    w = Nanoword(ground, tuple(seq), proj, names)
    moved = list(w.seq)
    pos_i = i
    pos_j = j + 2
    pos_k = k + 4
    moved[pos_i], moved[pos_i + 1] = B, A
    moved[pos_j], moved[pos_j + 1] = C, A
    moved[pos_k], moved[pos_k + 1] = C, B
    return kind, w, Nanoword(ground, tuple(moved), proj, names)


def suite_move_invariance(seed: int = 0, count: int = 1000) -> SuiteResult:
    rng = random.Random(seed)
    shifts = count // 5
    for trial in range(count - shifts):
        ground = _random_alphabet(rng)
        phis = phi_sign_battery(ground)
        kind, w, moved = _random_move_instance(rng, ground)
        if _record_for_move_check(w, phis) != _record_for_move_check(moved, phis):
            return SuiteResult(
                "move-invariance", False, trial + 1, f"{kind} changed invariants on {w}"
            )
    for trial in range(shifts):
        ground = _random_alphabet(rng)
        phis = phi_sign_battery(ground)
        w = random_nanoword(rng, ground, rng.randint(1, 5))
        shifted = w.circular_shift()
        p, ps = pairing_of_nanoword(w), pairing_of_nanoword(shifted)
        ok = (
            w.gamma().cyclic_key() == shifted.gamma().cyclic_key()
            and u_polynomial(p) == u_polynomial(ps)
            and all(genus(p, phi).twice == genus(ps, phi).twice for phi in phis)
            and are_isomorphic(ps, m_shift(p, w.seq[0] + 1, 2))
        )
        if not ok:
            return SuiteResult(
                "move-invariance", False, count - shifts + trial + 1,
                f"shift changed invariants on {w}",
            )
    return SuiteResult("move-invariance", True, count)


def suite_genus_rank(max_half_length: int = 5, jobs: int = 1) -> SuiteResult:
    ground = InvolutiveAlphabet.plus_minus()
    words = []
    for n in range(max_half_length + 1):
        words.extend(enumerate_nanowords(n, ground))
    results = parallel_map(genus_rank_check, words, jobs)
    bad = [w for w, ok in zip(words, results) if not ok]
    if bad:
        return SuiteResult(
            "genus-rank", False, len(words), f"first failure {bad[0]}"
        )
    return SuiteResult("genus-rank", True, len(words))


def suite_inequalities(seed: int = 0, triples: int = 100, pairs: int = 100) -> SuiteResult:
    rng = random.Random(seed)
    checked = 0
    for _ in range(triples):
        ground = _random_alphabet(rng)
        phi = rng.choice(phi_sign_battery(ground))
        ps = [random_skew_pairing(rng, ground, rng.randint(1, 2)) for _ in range(3)]
        s12 = genus(sum_pairings(ps[0], ps[1].opposite()), phi).twice
        s23 = genus(sum_pairings(ps[1], ps[2].opposite()), phi).twice
        s13 = genus(sum_pairings(ps[0], ps[2].opposite()), phi).twice
        checked += 1
        if s12 + s23 < s13:
            return SuiteResult("inequalities", False, checked, "triangle violated")
    for _ in range(pairs):
        ground = _random_alphabet(rng)
        phi = rng.choice(phi_sign_battery(ground))
        p1 = random_skew_pairing(rng, ground, rng.randint(1, 2))
        p2 = random_skew_pairing(rng, ground, rng.randint(1, 2))
        checked += 1
        if genus(p1, phi).twice + genus(p2, phi).twice < genus(sum_pairings(p1, p2), phi).twice:
            return SuiteResult("inequalities", False, checked, "subadditivity violated")
    return SuiteResult("inequalities", True, checked)


def suite_sandwich(seed: int = 0, pairs: int = 100, s_bound: int = 2) -> SuiteResult:
    rng = random.Random(seed)
    for trial in range(pairs):
        ground = _random_alphabet(rng)
        phi = rng.choice(phi_sign_battery(ground))
        p1 = random_skew_pairing(rng, ground, rng.randint(1, 2))
        p2 = random_skew_pairing(rng, ground, rng.randint(1, 2))
        whole = genus(sum_pairings(p1, p2), phi).twice
        weak = tuple_genus((p1, p2), phi, s_bound).twice
        if not (whole >= weak >= whole - 2):
            return SuiteResult(
                "sandwich", False, trial + 1,
                f"tuple genus {weak} outside [{whole - 2}, {whole}] (doubled)",
            )
    return SuiteResult("sandwich", True, pairs)


@dataclass(frozen=True)
class BridgeReport:
    checked: int
    weak_checked: int
    violations: int
    min_slack_quadrupled: Optional[int]

    @property
    def passed(self) -> bool:
        return self.violations == 0


def bridge_inequality_suite(
    sample_size: int,
    ground: Optional[InvolutiveAlphabet] = None,
    seed: int = 0,
    max_letters_word: int = 3,
    caps: Caps = Caps(max_letters=3, max_k=4),
    weak_every: int = 4,
) -> BridgeReport:
    """Sample words over a fixed-point-free alphabet, enumerate their
    bridges, and check the arch count against half the genus of the
    before/after pairing sum, for every sign-valued coefficient map.
    Every ``weak_every``-th bridge also gets the weaker tuple-genus
    variant of the bound."""
    rng = random.Random(seed)
    checked = 0
    weak_checked = 0
    min_slack = None
    for _ in range(sample_size):
        g = ground if ground is not None else _random_alphabet(rng, allow_fixed=False)
        if g.fixed_reps():
            raise ValueError("bridge suite needs a fixed-point-free involution")
        phis = phi_sign_battery(g)
        w = random_nanoword(rng, g, rng.randint(1, max_letters_word))
        p_w = pairing_of_nanoword(w)
        sigma_cache: dict[tuple, list[int]] = {}
        for count, bridge in enumerate(
            enumerate_bridges(w, caps.max_letters, caps.max_k)
        ):
            x = apply_bridge(w, bridge)
            p_x = pairing_of_nanoword(x)
            key = x.canonical_key()
            if key not in sigma_cache:
                p_sum = sum_pairings(p_w, p_x.opposite())
                sigma_cache[key] = [genus(p_sum, phi).twice for phi in phis]
            for twice in sigma_cache[key]:
                checked += 1
                slack = 4 * bridge.arches - twice  # g >= sigma/2, quadrupled
                if slack < 0:
                    return BridgeReport(checked, weak_checked, 1, slack)
                min_slack = slack if min_slack is None else min(min_slack, slack)
            small = p_w.num_letters + p_x.num_letters <= 3
            if count % weak_every == 0 and small:
                for phi in phis:
                    weak_checked += 1
                    weak_twice = tuple_genus((p_w, p_x.opposite()), phi).twice
                    if 4 * bridge.arches - weak_twice < 0:
                        return BridgeReport(checked, weak_checked, 1, None)
    return BridgeReport(checked, weak_checked, 0, min_slack)


def suite_bridge_inequality(
    seed: int = 0,
    words: int = 200,
    max_letters_word: int = 3,
    caps: Caps = Caps(max_letters=3, max_k=4),
) -> SuiteResult:
    report = bridge_inequality_suite(
        words, None, seed, max_letters_word, caps
    )
    total = report.checked + report.weak_checked
    if not report.passed:
        return SuiteResult(
            "bridge-inequality", False, total, "arch count below genus bound"
        )
    detail = (
        f"min doubled slack {report.min_slack_quadrupled}"
        if report.min_slack_quadrupled is not None
        else ""
    )
    return SuiteResult("bridge-inequality", True, total, detail)


def suite_shift_consistency(seed: int = 0, count: int = 200) -> SuiteResult:
    rng = random.Random(seed)
    for trial in range(count):
        ground = _random_alphabet(rng)
        w = random_nanoword(rng, ground, rng.randint(1, 5))
        shifted = w.circular_shift()
        p, ps = pairing_of_nanoword(w), pairing_of_nanoword(shifted)
        if not are_isomorphic(ps, m_shift(p, w.seq[0] + 1, 2)):
            return SuiteResult(
                "shift-consistency", False, trial + 1, f"shift mismatch on {w}"
            )
        rotated = w
        for _ in range(w.length):
            rotated = rotated.circular_shift()
        if not rotated.is_isomorphic(w):
            return SuiteResult(
                "shift-consistency", False, trial + 1, f"full rotation moved {w}"
            )
    return SuiteResult("shift-consistency", True, count)


def suite_alt_pairing(seed: int = 0, count: int = 500, max_letters: int = 6) -> SuiteResult:
    rng = random.Random(seed)
    for trial in range(count):
        ground = _random_alphabet(rng)
        w = random_nanoword(rng, ground, rng.randint(0, max_letters))
        p1 = pairing_of_nanoword(w)
        p2 = pairing_of_nanoword_alt(w)
        if p1.matrix != p2.matrix:
            return SuiteResult(
                "alt-pairing", False, trial + 1, f"routes disagree on {w}"
            )
    return SuiteResult("alt-pairing", True, count)


ALL_SUITES: dict[str, Callable[..., SuiteResult]] = {
    "surgery-filling": suite_surgery_filling,
    "move-invariance": suite_move_invariance,
    "genus-rank": suite_genus_rank,
    "inequalities": suite_inequalities,
    "sandwich": suite_sandwich,
    "bridge-inequality": suite_bridge_inequality,
    "shift-consistency": suite_shift_consistency,
    "alt-pairing": suite_alt_pairing,
}

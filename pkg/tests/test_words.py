import random

import pytest
from hypothesis import given, settings, strategies as st

from nanocob.algebra import AlphabetError, InvolutiveAlphabet
from nanocob.words import (
    Nanophrase,
    Nanoword,
    WordError,
    canonical_form,
    circular_shift,
    concatenate,
    epsilon,
    is_even,
    opposite,
    pull_back,
    push_forward,
    symmetry_witness,
)


def random_word(rng, ground, letters):
    positions = list(range(2 * letters))
    rng.shuffle(positions)
    seq = [0] * (2 * letters)
    chords = sorted(
        tuple(sorted(positions[2 * i : 2 * i + 2])) for i in range(letters)
    )
    for cid, (i, j) in enumerate(chords):
        seq[i] = cid
        seq[j] = cid
    proj = tuple(rng.choice(ground.symbols) for _ in range(letters))
    names = tuple(f"L{i+1}" for i in range(letters))
    return Nanoword(ground, tuple(seq), proj, names)


class TestConstruction:
    def test_twice_occurrence_enforced(self, two_free):
        with pytest.raises(WordError):
            Nanoword(two_free, (0, 1, 0), ("a", "b"), ("A", "B"))

    def test_missing_projection(self, two_free):
        with pytest.raises(WordError):
            Nanoword.from_names(two_free, "ABAB", {"A": "a"})

    def test_from_string(self, two_free, word_factory):
        w = word_factory(two_free, "ABAB", A="a", B="b")
        assert w.length == 4 and w.num_letters == 2


class TestCanonicalForm:
    def test_relabeling(self, two_free, word_factory):
        w = word_factory(two_free, "XYXY", X="a", Y="b")
        c = w.canonical_form()
        assert c.names == ("L1", "L2")
        assert c.letter_seq() == ("L1", "L2", "L1", "L2")
        assert c.proj == ("a", "b")

    def test_idempotent(self, two_free):
        rng = random.Random(1)
        for _ in range(20):
            w = random_word(rng, two_free, rng.randint(0, 5))
            once = canonical_form(w)
            assert canonical_form(once) == once

    def test_isomorphism_detected_by_exhaustive_bijections(self, two_free, word_factory):
        w1 = word_factory(two_free, "BAAB", A="a", B="a")
        w2 = word_factory(two_free, "ABBA", A="a", B="a")
        # oracle: try both bijections on two letters
        seqs = []
        for mapping in ({"A": "A", "B": "B"}, {"A": "B", "B": "A"}):
            seqs.append(tuple(mapping[x] for x in "BAAB"))
        assert tuple("ABBA") in seqs
        assert w1.canonical_key() == w2.canonical_key()

    def test_canonical_equality_matches_bijection_search(self, two_free):
        """Oracle: equality of canonical keys must coincide with the
        existence of a projection-preserving letter bijection."""
        import itertools

        rng = random.Random(8)

        def isomorphic_by_search(w1, w2):
            if w1.num_letters != w2.num_letters or w1.length != w2.length:
                return False
            for perm in itertools.permutations(range(w2.num_letters)):
                if all(
                    w1.proj[i] == w2.proj[perm[i]] for i in range(w1.num_letters)
                ) and all(
                    perm[a] == b for a, b in zip(w1.seq, w2.seq)
                ):
                    return True
            return False

        words = [random_word(rng, two_free, rng.randint(1, 3)) for _ in range(14)]
        # add guaranteed-isomorphic partners by shuffling letter ids
        for w in words[:4]:
            ids = list(range(w.num_letters))
            rng.shuffle(ids)
            words.append(
                Nanoword(
                    two_free,
                    tuple(ids[x] for x in w.seq),
                    tuple(w.proj[ids.index(i)] for i in range(w.num_letters)),
                    tuple(w.names[ids.index(i)] for i in range(w.num_letters)),
                )
            )
        for w1 in words:
            for w2 in words:
                assert (w1.canonical_key() == w2.canonical_key()) == isomorphic_by_search(
                    w1, w2
                )

    def test_concatenation_depends_only_on_canonical_forms(self, two_free):
        rng = random.Random(2)
        for _ in range(10):
            w1 = random_word(rng, two_free, rng.randint(1, 3))
            w2 = random_word(rng, two_free, rng.randint(1, 3))
            direct = concatenate(w1, w2).canonical_key()
            via = concatenate(w1.canonical_form(), w2.canonical_form()).canonical_key()
            assert direct == via


class TestOppositeConcatenate:
    def test_opposite_reverses(self, two_free, word_factory):
        w = word_factory(two_free, "ABAB", A="a", B="b")
        assert opposite(w).letter_seq() == ("B", "A", "B", "A")

    def test_opposite_involution(self, two_free):
        rng = random.Random(3)
        for _ in range(10):
            w = random_word(rng, two_free, rng.randint(0, 4))
            assert opposite(opposite(w)) == w

    def test_opposite_longer(self, three_free, word_factory):
        w = word_factory(three_free, "ABCBAC", A="a", B="b", C="c")
        assert opposite(w).letter_seq() == tuple("CABCBA")

    def test_concatenate_simple(self, two_free, word_factory):
        w1 = word_factory(two_free, "AA", A="a")
        w2 = word_factory(two_free, "BB", B="b")
        assert concatenate(w1, w2).letter_seq() == ("A", "A", "B", "B")

    def test_concatenate_unit(self, two_free, word_factory):
        w = word_factory(two_free, "ABAB", A="a", B="b")
        assert concatenate(w, Nanoword.empty(two_free)).is_isomorphic(w)

    def test_concatenate_relabels_collisions(self, two_free, word_factory):
        w = word_factory(two_free, "ABAB", A="a", B="b")
        both = concatenate(w, w)
        assert both.canonical_form().letter_seq() == (
            "L1", "L2", "L1", "L2", "L3", "L4", "L3", "L4",
        )

    def test_length_additive(self, two_free):
        rng = random.Random(4)
        w1 = random_word(rng, two_free, 2)
        w2 = random_word(rng, two_free, 3)
        assert concatenate(w1, w2).length == w1.length + w2.length

    def test_ground_mismatch(self, two_free, three_free, word_factory):
        w1 = word_factory(two_free, "AA", A="a")
        w2 = word_factory(three_free, "BB", B="b")
        with pytest.raises(AlphabetError):
            concatenate(w1, w2)


class TestSymmetry:
    def test_abba_always_symmetric(self, two_free, word_factory):
        for pa in ("a", "A", "b"):
            for pb in ("a", "b", "B"):
                w = word_factory(two_free, "ABBA", A=pa, B=pb)
                witness = symmetry_witness(w.to_phrase())
                assert witness is not None
                assert witness.iota_of(0) == 0 and witness.iota_of(1) == 1

    def test_abab_symmetric_iff_equal_projection(self, two_free, word_factory):
        same = word_factory(two_free, "ABAB", A="a", B="a")
        diff = word_factory(two_free, "ABAB", A="a", B="b")
        assert symmetry_witness(same.to_phrase()) is not None
        assert symmetry_witness(diff.to_phrase()) is None

    def test_two_word_phrase_symmetric_iff_tau_related(self, two_free):
        def phrase(pa, pb):
            return Nanophrase(two_free, ((0, 1), (1, 0)), (pa, pb), ("A", "B"))

        assert symmetry_witness(phrase("a", "A")) is not None
        assert symmetry_witness(phrase("a", "b")) is None

    def test_even(self, two_free):
        even = Nanophrase(two_free, ((0, 1), (1, 0)), ("a", "b"), ("A", "B"))
        odd = Nanophrase(two_free, ((0,), (0,)), ("a",), ("A",))
        assert is_even(even)
        assert not is_even(odd)
        assert is_even(random_word(random.Random(0), two_free, 3).to_phrase())

    def test_epsilon(self, two_free):
        split = Nanophrase(two_free, ((0, 1), (1, 0)), ("a", "b"), ("A", "B"))
        assert epsilon(split, 0) == 1
        local = Nanophrase(two_free, ((0, 0), (1, 1)), ("a", "b"), ("A", "B"))
        assert epsilon(local, 0) == 0
        single = Nanophrase(two_free, ((0,), (0,)), ("a",), ("A",))
        assert epsilon(single, 0) == 1

    def test_witness_structure_invariants(self, mixed):
        """Any returned witness must be an involution whose twist values
        are mirror-invariant and consistent with the projections."""
        rng = random.Random(9)
        found = 0
        for _ in range(400):
            flat = random_word(rng, mixed, rng.randint(1, 3))
            cut = rng.randint(0, flat.length)
            phrase = Nanophrase(
                mixed, (flat.seq[:cut], flat.seq[cut:]), flat.proj, flat.names
            )
            witness = symmetry_witness(phrase)
            if witness is None:
                continue
            found += 1
            iota = dict(witness.iota)
            eps = dict(witness.epsilon)
            for a, b in iota.items():
                assert iota[b] == a
                assert eps[a] == eps[b]
                expected = phrase.proj[a]
                if eps[a]:
                    expected = mixed.tau(expected)
                assert phrase.proj[b] == expected
        assert found > 0

    def test_symmetric_implies_even_when_fixed_point_free(self, two_free):
        rng = random.Random(5)
        seen_symmetric = 0
        for _ in range(300):
            letters = rng.randint(1, 3)
            words = []
            flat = random_word(rng, two_free, letters)
            cut = rng.randint(0, flat.length)
            phrase = Nanophrase(
                two_free,
                (flat.seq[:cut], flat.seq[cut:]),
                flat.proj,
                flat.names,
            )
            if symmetry_witness(phrase) is not None:
                seen_symmetric += 1
                assert is_even(phrase)
        assert seen_symmetric > 0


class TestShift:
    def test_shift_of_linked_pair(self, two_free, word_factory):
        """Shifting the linked pair on (a, b) gives the linked pair on
        (b, tau(a))."""
        w = word_factory(two_free, "ABAB", A="a", B="b")
        shifted = circular_shift(w)
        target = word_factory(two_free, "XYXY", X="b", Y="A")
        assert shifted.is_isomorphic(target)

    def test_shift_doubled_letter(self, two_free, word_factory):
        w = word_factory(two_free, "AA", A="a")
        shifted = circular_shift(w)
        assert shifted.proj == ("A",)
        assert shifted.canonical_form().letter_seq() == ("L1", "L1")

    def test_full_rotation_returns_isomorphic(self, two_free):
        rng = random.Random(6)
        for _ in range(15):
            w = random_word(rng, two_free, rng.randint(1, 5))
            rotated = w
            for _ in range(w.length):
                rotated = circular_shift(rotated)
            assert rotated.is_isomorphic(w)

    def test_empty_shift_rejected(self, two_free):
        with pytest.raises(WordError):
            circular_shift(Nanoword.empty(two_free))


class TestPushPull:
    def test_identity_map(self, two_free, word_factory):
        w = word_factory(two_free, "ABAB", A="a", B="b")
        ident = {s: s for s in two_free.symbols}
        assert push_forward(w, ident, two_free) == w

    def test_push_to_signs(self, two_free, pm, word_factory):
        w = word_factory(two_free, "ABAB", A="a", B="B")
        f = {"a": "+", "A": "-", "b": "+", "B": "-"}
        out = push_forward(w, f, pm)
        assert out.proj == ("+", "-")
        assert out.ground == pm

    def test_non_equivariant_rejected(self, two_free, pm, word_factory):
        w = word_factory(two_free, "AA", A="a")
        f = {"a": "+", "A": "+", "b": "+", "B": "-"}
        with pytest.raises(AlphabetError):
            push_forward(w, f, pm)

    def test_pull_back_full_and_empty(self, two_free, word_factory):
        w = word_factory(two_free, "ABAB", A="a", B="b")
        assert pull_back(w, two_free.symbols).seq == w.seq
        assert pull_back(w, ()).length == 0

    def test_pull_back_orbit(self, word_factory):
        ground = InvolutiveAlphabet.fixed_point_free(("a", "c"), ("A", "C"))
        w = word_factory(ground, "ABACDCDB", A="a", B="a", C="c", D="c")
        out = pull_back(w, ("a", "A"))
        assert out.canonical_form().letter_seq() == ("L1", "L2", "L1", "L2")

    def test_pull_back_requires_invariant_subset(self, two_free, word_factory):
        w = word_factory(two_free, "AA", A="a")
        with pytest.raises(AlphabetError):
            pull_back(w, ("a",))  # partner A missing

    def test_pull_after_push_along_inclusion(self, two_free):
        sub = two_free.restrict(("a", "A"))
        big_inclusion = {"a": "a", "A": "A"}
        rng = random.Random(7)
        for _ in range(10):
            w = random_word(rng, sub, rng.randint(0, 3))
            pushed = push_forward(w, big_inclusion, two_free)
            back = pull_back(pushed, ("a", "A"))
            assert back.canonical_key() == w.canonical_key()
            assert back.ground == sub


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_gamma_lands_in_commutator(data):
    """The free-product value of any word abelianizes to zero."""
    ground = InvolutiveAlphabet.build(
        ("a", "A", "c"), {"a": "A", "A": "a", "c": "c"}
    )
    letters = data.draw(st.integers(0, 4))
    rng = random.Random(data.draw(st.integers(0, 10 ** 6)))
    w = random_word(rng, ground, letters)
    assert w.gamma().abelianized().is_zero()

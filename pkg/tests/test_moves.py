import random

import pytest

from nanocob.algebra import InvolutiveAlphabet
from nanocob.moves import (
    Caps,
    Factor,
    Metamorphosis,
    Move,
    apply_bridge,
    apply_h1,
    apply_h2,
    apply_h3,
    apply_h3_inverse,
    apply_surgery,
    bounded_bfs,
    enumerate_bridges,
    enumerate_even_symmetric_factors,
    find_h1_sites,
    find_h2_sites,
    find_h3_sites,
    length_norm_bounds,
    validate_bridge,
)
from nanocob.explorer import random_nanoword
from nanocob.words import Nanoword, WordError


def seqs(w):
    return w.canonical_form().letter_seq()


class TestH1:
    def test_site_and_apply(self, two_free, word_factory):
        w = word_factory(two_free, "AABB", A="a", B="b")
        sites = find_h1_sites(w)
        assert [m.data for m in sites] == [(0,), (2,)]
        assert seqs(apply_h1(w, 0)) == ("L1", "L1")

    def test_no_sites_on_linked(self, two_free, word_factory):
        assert find_h1_sites(word_factory(two_free, "ABAB", A="a", B="b")) == []

    def test_two_steps_to_empty(self, two_free, word_factory):
        w = word_factory(two_free, "AABB", A="a", B="b")
        assert apply_h1(apply_h1(w, 0), 0).length == 0


class TestH2:
    def test_minimal_instance(self, two_free, word_factory):
        w = word_factory(two_free, "ABBA", A="a", B="A")
        sites = find_h2_sites(w)
        assert [m.data for m in sites] == [(0, 2)]
        assert apply_h2(w, (0, 2)).length == 0

    def test_projection_condition(self, two_free, word_factory):
        w = word_factory(two_free, "ABBA", A="a", B="b")
        assert find_h2_sites(w) == []

    def test_with_context(self, two_free, word_factory):
        w = word_factory(two_free, "CABBAC", C="b", A="a", B="A")
        sites = find_h2_sites(w)
        assert [m.data for m in sites] == [(1, 3)]
        assert seqs(apply_h2(w, (1, 3))) == ("L1", "L1")


class TestH3:
    def test_minimal_instance(self, two_free, word_factory):
        w = word_factory(two_free, "ABACBC", A="a", B="a", C="a")
        sites = find_h3_sites(w)
        assert [m.data for m in sites] == [(0, 2, 4)]
        out = apply_h3(w, (0, 2, 4))
        assert out.letter_seq() == ("B", "A", "C", "A", "C", "B")

    def test_projection_condition(self, two_free, word_factory):
        w = word_factory(two_free, "ABACBC", A="a", B="b", C="a")
        assert find_h3_sites(w) == []

    def test_inverse_round_trip(self, two_free, word_factory):
        w = word_factory(two_free, "ABACBC", A="a", B="a", C="a")
        assert apply_h3_inverse(apply_h3(w, (0, 2, 4)), (0, 2, 4)) == w

    def test_length_preserved(self, two_free, word_factory):
        w = word_factory(two_free, "ABACBC", A="a", B="a", C="a")
        assert apply_h3(w, (0, 2, 4)).length == w.length


class TestSurgeryFactors:
    def test_doubled_letter_factor_found(self, two_free, word_factory):
        w = word_factory(two_free, "BAAB", A="a", B="b")
        a_id = w.names.index("A")
        factors = enumerate_even_symmetric_factors(w, 2, 4)
        assert any(
            f.letters == (a_id,) and f.segments == ((1, 3),) for f in factors
        )

    def test_split_pair_factor_found(self, two_free, word_factory):
        w = word_factory(two_free, "ABBA", A="a", B="A")
        factors = enumerate_even_symmetric_factors(w, 2, 4)
        assert any(
            f.letters == (0, 1) and f.segments == ((0, 2), (2, 4)) for f in factors
        )

    def test_two_segment_example(self, word_factory):
        ground = InvolutiveAlphabet.fixed_point_free(("a", "c"), ("A", "C"))
        w = word_factory(ground, "ABCACDBD", A="a", B="A", C="c", D="c")
        factors = enumerate_even_symmetric_factors(w, 4, 4)
        assert any(
            set(f.letters) == {0, 1, 2, 3} and f.segments == ((0, 2), (2, 8))
            for f in factors
        )

    def test_surgery_deletes_inner_square(self, word_factory):
        ground = InvolutiveAlphabet.fixed_point_free(("a", "c"), ("A", "C"))
        w = word_factory(ground, "ABACDCDB", A="a", B="a", C="c", D="c")
        factor = Factor((2, 3), ((3, 7),))
        assert seqs(apply_surgery(w, factor)) == ("L1", "L2", "L1", "L2")

    def test_whole_word_factor_for_symmetric(self, two_free, word_factory):
        w = word_factory(two_free, "ABBA", A="a", B="b")
        factor = Factor((0, 1), ((0, 4),))
        assert apply_surgery(w, factor).length == 0

    def test_two_segment_deletion_to_empty(self, word_factory):
        ground = InvolutiveAlphabet.fixed_point_free(("a", "c"), ("A", "C"))
        w = word_factory(ground, "ABCACDBD", A="a", B="A", C="c", D="c")
        factor = Factor((0, 1, 2, 3), ((0, 2), (2, 8)))
        assert apply_surgery(w, factor).length == 0

    def test_uneven_factor_rejected(self, two_free, word_factory):
        w = word_factory(two_free, "ABAB", A="a", B="a")
        with pytest.raises(WordError):
            apply_surgery(w, Factor((0,), ((0, 1), (2, 3))))

    def test_asymmetric_factor_rejected(self, two_free, word_factory):
        w = word_factory(two_free, "ABAB", A="a", B="b")
        with pytest.raises(WordError):
            apply_surgery(w, Factor((0, 1), ((0, 4),)))

    def test_h1_h2_agree_with_surgery(self, two_free, word_factory):
        w = word_factory(two_free, "CAAC", A="a", C="b")
        by_move = apply_h1(w, 1)
        by_surgery = apply_surgery(w, Factor((w.names.index("A"),), ((1, 3),)))
        assert by_move == by_surgery
        w2 = word_factory(two_free, "ABBA", A="a", B="A")
        assert apply_h2(w2, (0, 2)) == apply_surgery(
            w2, Factor((0, 1), ((0, 2), (2, 4)))
        )


class TestBridges:
    def test_single_letter_one_arch(self, two_free, word_factory):
        w = word_factory(two_free, "ABCBCA", A="a", B="b", C="b")
        factor = Factor((0,), ((0, 1), (5, 6)))
        bridge = validate_bridge(w, factor, (1, 0))
        assert bridge is not None
        assert bridge.arches == 1
        assert dict(bridge.epsilon)[0] == 0

    def test_adjacent_pair_bridge(self, two_free, word_factory):
        w = word_factory(two_free, "CABBAC", C="b", A="a", B="b")
        factor = Factor((1, 2), ((1, 3), (3, 5)))
        bridge = validate_bridge(w, factor, (1, 0))
        assert bridge is not None
        assert seqs(apply_bridge(w, bridge)) == ("L1", "L1")

    def test_middle_palindrome_bridge(self, two_free, word_factory):
        w = word_factory(two_free, "ABCBCDAD", A="a", B="b", C="b", D="a")
        factor = Factor((0, 1, 2), ((0, 1), (1, 5), (6, 7)))
        bridge = validate_bridge(w, factor, (2, 1, 0))
        assert bridge is not None
        assert bridge.arches == 1
        assert seqs(apply_bridge(w, bridge)) == ("L1", "L1")

    def test_double_arch_bridge(self, two_free, word_factory):
        w = word_factory(
            two_free, "ADEBCDCAEB", A="a", B="a", C="b", D="b", E="a"
        )
        letters = tuple(sorted(w.names.index(n) for n in "ABC"))
        factor = Factor(letters, ((0, 1), (3, 5), (6, 8), (9, 10)))
        bridge = validate_bridge(w, factor, (3, 2, 1, 0))
        assert bridge is not None
        assert bridge.arches == 2
        assert seqs(apply_bridge(w, bridge)) == ("L1", "L2", "L1", "L2")

    def test_identity_kappa_is_even_symmetric_factor(self, two_free):
        rng = random.Random(11)
        for _ in range(25):
            w = random_nanoword(rng, two_free, rng.randint(1, 4))
            surgeries = {
                (f.letters, f.segments)
                for f in enumerate_even_symmetric_factors(w, 4, 3)
            }
            identity_bridges = {
                (b.factor.letters, b.factor.segments)
                for b in enumerate_bridges(w, 4, 3)
                if b.kappa == tuple(range(len(b.kappa)))
            }
            assert surgeries == identity_bridges

    def test_enumeration_on_doubled_letter(self, two_free, word_factory):
        w = word_factory(two_free, "AA", A="a")
        bridges = enumerate_bridges(w, 2, 3)
        kinds = {(b.factor.segments, b.kappa, b.arches) for b in bridges}
        assert (((0, 2),), (0,), 0) in kinds  # whole factor, zero arches
        assert (((0, 1), (1, 2)), (1, 0), 1) in kinds  # split, one arch

    def test_empty_word_has_no_bridges(self, two_free):
        assert enumerate_bridges(Nanoword.empty(two_free), 4, 4) == []

    def test_enumerated_bridges_validate(self, two_free):
        rng = random.Random(12)
        for _ in range(10):
            w = random_nanoword(rng, two_free, rng.randint(1, 3))
            for b in enumerate_bridges(w, 3, 4):
                again = validate_bridge(w, b.factor, b.kappa)
                assert again is not None and again == b


class TestSearch:
    def test_symmetric_word_is_slice(self, two_free, word_factory):
        w = word_factory(two_free, "ABBA", A="a", B="b")
        out = bounded_bfs(w, Nanoword.empty(two_free))
        assert out.equivalent
        assert len(out.metamorphosis.moves) == 1

    def test_tau_linked_pair_is_slice(self, two_free, word_factory):
        w = word_factory(two_free, "ABAB", A="a", B="A")
        out = bounded_bfs(w, Nanoword.empty(two_free))
        assert out.equivalent
        assert out.metamorphosis.replay(w).length == 0

    def test_distinct_orbits_unknown_within_caps(self, two_free, word_factory):
        w = word_factory(two_free, "ABAB", A="a", B="b")
        caps = Caps(bfs_length=8, bfs_nodes=300)
        out = bounded_bfs(w, Nanoword.empty(two_free), caps)
        assert not out.equivalent
        assert not w.gamma().is_identity()  # the obstruction certifying it

    def test_two_surgery_witness_replays(self, word_factory):
        ground = InvolutiveAlphabet.fixed_point_free(("a", "c"), ("A", "C"))
        w = word_factory(ground, "ABACDCDB", A="a", B="a", C="c", D="c")
        out = bounded_bfs(w, Nanoword.empty(ground))
        assert out.equivalent
        assert [m.kind for m in out.metamorphosis.moves] == ["SURG", "SURG"]
        assert out.metamorphosis.replay(w).length == 0

    def test_log_round_trip(self, word_factory):
        ground = InvolutiveAlphabet.fixed_point_free(("a", "c"), ("A", "C"))
        w = word_factory(ground, "ABACDCDB", A="a", B="a", C="c", D="c")
        meta = bounded_bfs(w, Nanoword.empty(ground)).metamorphosis
        recovered = Metamorphosis.from_log(meta.to_log())
        assert recovered == meta
        assert recovered.replay(w).length == 0

    def test_bridge_move_log_round_trip(self, two_free, word_factory):
        w = word_factory(two_free, "ABCBCA", A="a", B="b", C="b")
        factor = Factor((0,), ((0, 1), (5, 6)))
        bridge = validate_bridge(w, factor, (1, 0))
        move = Move(
            "BRIDGE",
            (factor.letters, factor.segments, bridge.kappa),
            arches=bridge.arches,
        )
        line = move.to_line()
        assert "kappa=1,0" in line and "arches=1" in line
        recovered = Move.from_line(line)
        assert recovered == move
        assert recovered.apply(w).canonical_form().letter_seq() == (
            "L1", "L2", "L1", "L2",
        )

    def test_insertion_log_round_trip(self, two_free, word_factory):
        w = word_factory(two_free, "AA", A="a")
        move = Move("INS", (((0, 1), (1, 0)), ("a", "A"), (0, 2)), inverse=True)
        meta = Metamorphosis((move,))
        recovered = Metamorphosis.from_log(meta.to_log())
        assert recovered == meta
        assert recovered.replay(w).length == 6

    def test_inverse_replay_returns_start(self, two_free):
        rng = random.Random(13)
        checked = 0
        for _ in range(40):
            w = random_nanoword(rng, two_free, rng.randint(1, 4))
            out = bounded_bfs(
                w, Nanoword.empty(two_free), Caps(bfs_nodes=400, bfs_length=10)
            )
            if not out.equivalent or not out.metamorphosis.moves:
                continue
            checked += 1
            end = out.metamorphosis.replay(w)
            back = out.metamorphosis.inverted(w).replay(end)
            assert back.is_isomorphic(w)
        assert checked >= 3

    def test_moves_preserve_word_invariant(self, two_free):
        rng = random.Random(14)
        from nanocob.moves import neighbors

        for _ in range(15):
            w = random_nanoword(rng, two_free, rng.randint(1, 3)).canonical_form()
            for move, result in neighbors(w, Caps(bfs_length=w.length + 2)):
                assert result.length == 2 * result.num_letters  # constructor ran


class TestShiftRepertoire:
    def test_shift_connects_rotations(self, two_free, word_factory):
        from nanocob.moves import SHIFT, HOMOTOPY, SURGERY, INSERTION

        w = word_factory(two_free, "ABAB", A="a", B="b")
        target = word_factory(two_free, "XYXY", X="b", Y="A")  # the shift image
        no_shift = bounded_bfs(
            w, target, Caps(bfs_nodes=200, bfs_length=6), (HOMOTOPY, SURGERY)
        )
        assert not no_shift.equivalent  # distinct cobordism classes
        with_shift = bounded_bfs(
            w, target, Caps(bfs_nodes=200, bfs_length=6), (HOMOTOPY, SURGERY, SHIFT)
        )
        assert with_shift.equivalent
        assert [m.kind for m in with_shift.metamorphosis.moves] == ["SHIFT"]
        assert with_shift.metamorphosis.replay(w).is_isomorphic(target)


class TestInsertValidation:
    def test_descending_positions_rejected(self, two_free, word_factory):
        from nanocob.moves import insert_phrase

        w = word_factory(two_free, "AA", A="a")
        with pytest.raises(WordError):
            insert_phrase(w, ((0, 1), (1, 0)), ("a", "A"), (2, 0))

    def test_out_of_range_rejected(self, two_free, word_factory):
        from nanocob.moves import insert_phrase

        w = word_factory(two_free, "AA", A="a")
        with pytest.raises(WordError):
            insert_phrase(w, ((0, 0),), ("a",), (5,))

    def test_insert_then_delete_round_trip(self, two_free, word_factory):
        from nanocob.moves import insert_phrase

        w = word_factory(two_free, "ABAB", A="a", B="b")
        grown = insert_phrase(w, ((0, 1), (1, 0)), ("a", "A"), (1, 3))
        assert grown.length == 8
        back, _ = grown.delete_letters([2, 3])
        assert back.canonical_key() == w.canonical_key()


class TestLengthNormBounds:
    def test_linked_pair_distinct_orbits(self, two_free, word_factory):
        w = word_factory(two_free, "ABAB", A="a", B="b")
        assert length_norm_bounds(w, Caps(bfs_nodes=300, bfs_length=6)) == (2, 2)

    def test_six_letter_word(self, three_free, word_factory):
        w = word_factory(three_free, "ABCBAC", A="a", B="b", C="c")
        lower, upper = length_norm_bounds(w, Caps(bfs_nodes=200, bfs_length=8))
        assert lower == upper == 3

    def test_symmetric_is_zero(self, two_free, word_factory):
        w = word_factory(two_free, "ABBA", A="a", B="b")
        assert length_norm_bounds(w) == (0, 0)

    def test_lower_never_exceeds_upper(self, two_free):
        rng = random.Random(15)
        caps = Caps(bfs_nodes=250, bfs_length=8)
        for _ in range(12):
            w = random_nanoword(rng, two_free, rng.randint(1, 3))
            lower, upper = length_norm_bounds(w, caps)
            assert 0 <= lower <= upper <= w.length // 2

    def test_obstructed_words_never_reach_empty(self, two_free):
        """Soundness: a word with a nonzero invariant must not be reduced
        to the empty word by any replayable move sequence the search can
        produce."""
        rng = random.Random(16)
        caps = Caps(bfs_nodes=300, bfs_length=8)
        obstructed = 0
        for _ in range(30):
            w = random_nanoword(rng, two_free, rng.randint(2, 3))
            if w.gamma().is_identity():
                continue
            obstructed += 1
            out = bounded_bfs(w, Nanoword.empty(two_free), caps)
            assert not out.equivalent
        assert obstructed >= 5

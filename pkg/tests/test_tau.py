import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tiltcount import modules as rl
from tiltcount.algebra import semisimple
from tiltcount.dynkin import auslander_presentation, hereditary_a2, kronecker, middle_sink_a3
from tiltcount.tau import (
    BudgetExceeded,
    GuardRailError,
    MutationError,
    PairError,
    bottom_key,
    brute_force_stt,
    dagger,
    exchange_quiver,
    left_mutations,
    minimal_left_approximation,
    mutate,
    top_pair,
    validate_pair,
)

SINK = middle_sink_a3()
SINK_QUIVER = exchange_quiver(SINK)


def brute_keys(A, **kw):
    return sorted({pair.key for pair in brute_force_stt(A, **kw)})


def test_sink_quiver_size():
    Q = SINK_QUIVER
    assert len(Q.nodes) == 14
    assert len(Q.edges) == 21
    assert Q.root == top_pair(SINK).key
    assert Q.sink == bottom_key(SINK)


def test_sink_quiver_regular():
    # each pair has exactly n mutations, split into incoming and outgoing edges
    for key, (indeg, outdeg) in SINK_QUIVER.degrees().items():
        assert indeg + outdeg == SINK.n
    degs = SINK_QUIVER.degrees()
    assert degs[SINK_QUIVER.root] == [0, 3]
    assert degs[SINK_QUIVER.sink] == [3, 0]


def test_sink_quiver_matches_brute_force():
    assert sorted(SINK_QUIVER.nodes) == brute_keys(SINK)


@pytest.mark.parametrize(
    "algebra, expected",
    [(hereditary_a2(), 5), (semisimple(3), 8), (semisimple(1), 2), (auslander_presentation("A2"), 12)],
)
def test_small_counts(algebra, expected):
    Q = exchange_quiver(algebra)
    assert len(Q.nodes) == expected
    assert sorted(Q.nodes) == brute_keys(algebra)


def test_kronecker_brute_force_subset():
    # the Kronecker quiver has infinitely many pairs; small dimension vectors see only some
    Q = exchange_quiver(hereditary_a2())
    pairs = brute_force_stt(kronecker(), dim_cap=2)
    assert pairs and all(len(p) == 2 for p in pairs)
    assert len(Q.nodes) == 5


def test_mutation_is_involution():
    for key, pair in SINK_QUIVER.nodes.items():
        for pos in range(len(pair)):
            once = mutate(pair, pos)
            assert once.key != key
            assert once.key in SINK_QUIVER.nodes
            back = [mutate(once, q).key for q in range(len(once))]
            assert key in back


def test_edges_are_mutations():
    for s, t, pos in SINK_QUIVER.edges:
        assert mutate(SINK_QUIVER.nodes[s], pos).key == t


def test_left_mutation_from_top():
    muts = dict(left_mutations(top_pair(SINK)))
    assert len(muts) == 3
    for pair in muts.values():
        validate_pair(pair.module(), pair.killed)


def test_mutation_of_simple_projective():
    # P(3) = S(3) is replaced by the cokernel of S(3) -> P(4) + P(5)
    pair = top_pair(SINK)
    pos = next(k for k, s in enumerate(pair.summands) if s.dims == (1, 0, 0))
    new = mutate(pair, pos)
    assert sorted(s.dims for s in new.summands) == [(1, 0, 1), (1, 1, 0), (1, 1, 1)]
    assert not new.killed


def test_mutation_of_projective_kills_vertex():
    # removing P(5) leaves P(3) + P(4), whose only completion kills vertex 5
    pair = top_pair(SINK)
    pos = next(k for k, s in enumerate(pair.summands) if s.dims == (1, 0, 1))
    new = mutate(pair, pos)
    assert sorted(s.dims for s in new.summands) == [(1, 0, 0), (1, 1, 0)]
    assert new.killed == (5,)


def test_every_pair_revalidates():
    for pair in SINK_QUIVER.nodes.values():
        again = validate_pair(pair.module(), pair.killed)
        assert again.key == pair.key


def test_keys_are_injective():
    # distinct nodes have non-isomorphic modules
    pairs = list(SINK_QUIVER.nodes.values())
    for i, a in enumerate(pairs):
        for b in pairs[i + 1 :]:
            if a.killed == b.killed and a.profiles() == b.profiles():
                assert not rl.is_isomorphic(a.module(), b.module())


def test_validate_pair_errors(sink, kron):
    S3 = rl.simple(sink, 3)
    with pytest.raises(PairError) as err:
        validate_pair(S3, killed=[3, 4])
    assert err.value.clause == "support overlap"
    with pytest.raises(PairError) as err:
        validate_pair(S3, killed=[4])
    assert err.value.clause == "wrong summand count"
    one = np.ones((1, 1), dtype=np.int64)
    M = rl.Representation(kron, [1, 1], {"a": one, "b": one})
    with pytest.raises(PairError) as err:
        validate_pair(M, killed=[])
    assert err.value.clause == "not tau-rigid"
    assert validate_pair(S3, killed=[4], complete=False).killed == (4,)


def test_validate_pair_basic_ifies(sink):
    P3 = rl.projective(sink, 3)
    pair = validate_pair(rl.direct_sum(P3, P3, rl.projective(sink, 4)), killed=[5])
    assert len(pair.summands) == 2


def test_mutate_rejects_bad_position():
    with pytest.raises(MutationError):
        mutate(top_pair(SINK), 7)
    with pytest.raises(MutationError):
        mutate(top_pair(SINK), -1)


def test_dagger_is_involutive():
    for pair in SINK_QUIVER.nodes.values():
        image, posmap = dagger(pair)
        assert image.algebra is SINK.opposite()
        assert sorted(posmap) == list(range(len(pair)))
        back, _ = dagger(image)
        assert back.algebra is SINK
        assert back.key == pair.key


def test_minimal_approximation(sink):
    P = [rl.projective(sink, v) for v in (4, 5)]
    targets, maps = minimal_left_approximation(rl.projective(sink, 3), P)
    assert targets == [0, 1]
    for f, U in zip(maps, P):
        assert rl.is_morphism(f, rl.projective(sink, 3), U)
    assert minimal_left_approximation(rl.simple(sink, 4), P) == ([], [])


def test_thread_count_does_not_change_result():
    G = auslander_presentation("A3")
    a = exchange_quiver(G, threads=1)
    b = exchange_quiver(G, threads=4)
    assert list(a.nodes) == list(b.nodes)
    assert a.edges == b.edges


def test_budget():
    with pytest.raises(BudgetExceeded) as err:
        exchange_quiver(SINK, node_budget=5)
    assert err.value.budget == 5


def test_brute_force_guard_rails():
    with pytest.raises(GuardRailError):
        brute_force_stt(auslander_presentation("A3"))
    with pytest.raises(GuardRailError):
        brute_force_stt(SINK, dim_cap=4)
    with pytest.raises(GuardRailError):
        brute_force_stt(SINK, dim_cap=3, max_reps=10)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(sorted(SINK_QUIVER.nodes)), st.integers(0, 2))
def test_random_mutation_walks_stay_in_quiver(start, pos):
    pair = SINK_QUIVER.nodes[start]
    for step in range(4):
        pair = mutate(pair, (pos + step) % len(pair))
        assert pair.key in SINK_QUIVER.nodes

import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from morsewalk import rng
from morsewalk.enumeration import walks_of_length
from morsewalk.errors import PreconditionError
from morsewalk.lattice_walk import (Censored, Completed, CompletedWalk, Point, Step, StepProbabilities,
                                    apply_step, in_domain, simulate, simulate_batch, simulate_walks,
                                    step_counts, walk_probability)
from morsewalk.distributions import p_length

from conftest import REFERENCE_PROBS, UNIFORM


def test_apply_step():
    assert apply_step((1, 0), Step.R) == (2, 0)
    assert apply_step((1, 3), Step.L) == (0, 3)
    assert apply_step((3, 0), Step.D) == (2, 1)


def test_in_domain():
    assert in_domain((1, 0))
    assert not in_domain((0, 5))
    assert in_domain((2, 1))
    assert not in_domain((3, -1))


class TestStepProbabilities:
    def test_parse(self):
        p = StepProbabilities.parse("9/20", "1/20", "1/2")
        assert p == REFERENCE_PROBS
        assert p.p_exit == Fraction(11, 20)
        assert p.drift == Fraction(1, 10)

    @pytest.mark.parametrize("triple", [("1/2", "1/2", "0"), ("1/2", "1/4", "1/3"), ("0.45", "0.05", "0.5"),
                                        ("1/0", "1/2", "1/2"), ("-1/3", "2/3", "2/3")])
    def test_rejects(self, triple):
        with pytest.raises(PreconditionError):
            StepProbabilities.parse(*triple)

    def test_rejects_floats(self):
        with pytest.raises(PreconditionError):
            StepProbabilities(0.5, Fraction(1, 4), Fraction(1, 4))


class TestCompletedWalk:
    def test_positions(self):
        w = CompletedWalk.from_string("RRDD")
        assert w.positions == ((1, 0), (2, 0), (3, 0), (2, 1), (1, 2))
        assert (w.n, w.g) == (4, 2)

    def test_empty(self):
        w = CompletedWalk(())
        assert (w.n, w.g, w.positions) == (0, 0, (Point(1, 0),))
        assert str(w) == ""

    @pytest.mark.parametrize("bad", ["L", "D", "R", "RRD", "RLL", "X"])
    def test_invalid(self, bad):
        with pytest.raises((ValueError, PreconditionError)):
            CompletedWalk.from_string(bad)

    def test_string_and_json_round_trip(self):
        for w in walks_of_length(8, 2):
            assert CompletedWalk.from_string(str(w)) == w
            doc = json.dumps(w.to_json())
            assert CompletedWalk.from_json(doc) == w
            assert json.loads(doc) == {"steps": str(w), "n": 8, "g": 2}

    def test_json_mismatch(self):
        with pytest.raises(PreconditionError):
            CompletedWalk.from_json({"steps": "RD", "n": 2, "g": 0})

    def test_hashable(self):
        assert len({CompletedWalk.from_string("RD"), CompletedWalk.from_string("RD")}) == 1


class TestStepCounts:
    def test_genus3_walk(self, genus3_walk):
        assert genus3_walk.end == (1, 3)
        assert step_counts(genus3_walk) == (5, 2, 3)

    def test_empty(self):
        assert step_counts(CompletedWalk(())) == (0, 0, 0)

    def test_rrdd(self):
        assert step_counts(CompletedWalk.from_string("RRDD")) == (2, 0, 2)

    def test_exhaustive(self):
        for n in range(0, 15, 2):
            for g in range(n // 2 + 1):
                for w in walks_of_length(n, g):
                    r, l, d = step_counts(w)
                    assert r + l + d == n and r - l - d == 0 and d == g


class TestWalkProbability:
    def test_empty_walk(self):
        assert walk_probability(CompletedWalk(()), UNIFORM) == Fraction(2, 3)

    def test_rd(self):
        assert walk_probability(CompletedWalk.from_string("RD"), UNIFORM) == Fraction(2, 27)

    def test_rrdd(self):
        expected = Fraction(9, 20) ** 2 * Fraction(1, 2) ** 2 * Fraction(11, 20)
        assert walk_probability(CompletedWalk.from_string("RRDD"), REFERENCE_PROBS) == expected

    @pytest.mark.parametrize("probs", [UNIFORM, REFERENCE_PROBS])
    def test_sum_matches_length_distribution(self, probs):
        L = 12
        total = sum(walk_probability(w, probs)
                    for n in range(0, L + 1, 2) for g in range(n // 2 + 1) for w in walks_of_length(n, g))
        assert total == sum(p_length(n, probs) for n in range(0, L + 1, 2))


class TestRng:
    def test_scalar_matches_vector(self):
        keys = rng.trial_keys(99, np.arange(50, dtype=np.uint64))
        assert [int(k) for k in keys] == [rng.trial_key(99, i) for i in range(50)]
        for t in (0, 1, 17, 10**6):
            assert rng.uniform_array(keys, t).tolist() == [rng.uniform(rng.trial_key(99, i), t) for i in range(50)]

    def test_known_splitmix_output(self):
        # reference SplitMix64 sequence for seed 0
        assert rng.splitmix64(0, 0) == 0xE220A8397B1DCDAF
        assert rng.splitmix64(0, 1) == 0x6E789E6AA1B965F4

    def test_uniform_range(self):
        u = rng.uniform_array(rng.trial_keys(5, np.arange(10000, dtype=np.uint64)), 3)
        assert u.min() >= 0 and u.max() < 1
        assert abs(u.mean() - 0.5) < 0.02


class TestSimulate:
    def test_immediate_exit(self):
        # find a trial whose first draw is not Right: it must complete with the empty walk
        cut = float(UNIFORM.p_r)
        trial = next(i for i in range(100) if rng.uniform(rng.trial_key(1, i), 0) >= cut)
        out = simulate(UNIFORM, 1, 100, trial=trial)
        assert out == Completed(CompletedWalk(()))

    def test_deterministic(self):
        a = simulate_walks(REFERENCE_PROBS, 42, 200, 1000)
        b = simulate_walks(REFERENCE_PROBS, 42, 200, 1000)
        assert a == b
        assert a != simulate_walks(REFERENCE_PROBS, 43, 200, 1000)

    def test_max_steps_validation(self):
        with pytest.raises(PreconditionError):
            simulate(UNIFORM, 0, 0)

    def test_censoring_when_transient(self):
        probs = StepProbabilities(Fraction(4, 5), Fraction(1, 10), Fraction(1, 10))
        outs = simulate_walks(probs, 7, 500, 100)
        censored = [o for o in outs if isinstance(o, Censored)]
        assert censored
        for o in censored:
            assert len(o.steps) == 100 and in_domain(o.position)

    def test_censored_means_cap_reached(self):
        for o in simulate_walks(UNIFORM, 3, 300, 5):
            if isinstance(o, Censored):
                assert len(o.steps) == 5
            else:
                assert o.walk.n < 5

    def test_batch_matches_scalar(self):
        for probs in (REFERENCE_PROBS, UNIFORM):
            batch = simulate_batch(probs, 11, 3000, 50, chunk=700)
            for i, o in enumerate(simulate_walks(probs, 11, 3000, 50)):
                if isinstance(o, Completed):
                    assert batch.completed[i]
                    assert (batch.length[i], batch.genus[i]) == (o.walk.n, o.walk.g)
                else:
                    assert not batch.completed[i]
                    assert (batch.length[i], batch.genus[i]) == (len(o.steps), o.position.y)

    def test_batch_independent_of_threads_and_chunks(self):
        a = simulate_batch(REFERENCE_PROBS, 5, 20000, 10**4)
        b = simulate_batch(REFERENCE_PROBS, 5, 20000, 10**4, threads=4, chunk=3000)
        for x, y in zip(a, b):
            assert np.array_equal(x, y)

    def test_simulated_walks_are_valid(self):
        for o in simulate_walks(REFERENCE_PROBS, 2024, 2000, 10**4):
            w = o.walk
            assert all(in_domain(p) for p in w.positions) and w.end.x == 1
            r, l, d = step_counts(w)
            assert (r, l, d) == (w.n // 2, w.n // 2 - w.g, w.g)

    def test_mean_critical_points(self):
        batch = simulate_batch(REFERENCE_PROBS, 2718, 10**6, 10**5)
        crit = batch.length[batch.completed] + 2
        se = crit.std(ddof=1) / np.sqrt(crit.size)
        assert abs(crit.mean() - 11) <= 3 * se

    def test_censoring_vanishes_with_cap_when_recurrent(self):
        # p_l + p_d = p_r: zero drift, still returns with probability 1
        probs = StepProbabilities(Fraction(1, 2), Fraction(1, 4), Fraction(1, 4))
        fractions = [1 - simulate_batch(probs, 9, 10**5, cap).completed.mean() for cap in (10**2, 10**3, 10**4)]
        assert fractions[0] > fractions[1] > fractions[2]
        assert fractions[2] < 0.02


@given(st.integers(min_value=0, max_value=2**64 - 1), st.integers(min_value=0, max_value=10**6))
def test_simulate_is_pure(seed, trial):
    a = simulate(UNIFORM, seed, 200, trial=trial)
    b = simulate(UNIFORM, seed, 200, trial=trial)
    assert a == b

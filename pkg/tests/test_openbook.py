import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from csl.errors import DomainError, InputError
from csl.openbook import (DehnTwist, OpenBookPlan, Page, PlanOp, add_boundary_twist,
                          admissible_build, cap_off, inadmissible_build, inadmissible_split,
                          link_shift_move, lutz_full, lutz_half, lutz_quarter, model_plan,
                          new_trivial, shift_to_zero, stabilize, to_current_frame)
from csl.slope import INF, Slope, ncf_expand

S, TP, TN = PlanOp.STABILIZE, PlanOp.TWIST_POS, PlanOp.TWIST_NEG
positive = st.builds(Slope, st.integers(1, 60), st.integers(1, 60))
negative = st.builds(lambda p, q: Slope(-p, q), st.integers(1, 60), st.integers(1, 60))


def convergent_value(entries):
    h_prev, h, k_prev, k = 1, entries[0], 0, 1
    for a in entries[1:]:
        h_prev, h = h, a * h - h_prev
        k_prev, k = k, a * k - k_prev
    return Slope(h, k)


def test_new_trivial():
    p = new_trivial(1, 1)
    assert p.page == Page(1, ("K",)) and p.monodromy == ()
    assert new_trivial(2, 3).page.euler_characteristic == -5
    assert new_trivial(0, 1).page.euler_characteristic == 1
    with pytest.raises(DomainError):
        new_trivial(1, 0)


def test_page_and_twist_validation():
    with pytest.raises(DomainError):
        Page(-1, ("K",))
    with pytest.raises(DomainError):
        Page(0, ("K", "K"))
    with pytest.raises(DomainError):
        DehnTwist("K", 2)


def test_stabilize_examples():
    p = stabilize(new_trivial(1, 1))
    assert len(p.page.boundary_ids) == 2 and p.page.genus == 1
    assert p.monodromy == (DehnTwist("S1", 1),)
    assert p.east == Slope(-1) and p.west == INF
    assert stabilize(stabilize(new_trivial(0, 1))).east == Slope(-2)


def test_boundary_twists():
    assert add_boundary_twist(new_trivial(1, 1), -1).west == Slope(1)
    p = new_trivial(1, 1)
    for n in range(1, 7):
        p = add_boundary_twist(p, -1)
        assert p.west == Slope(1, n)
    assert add_boundary_twist(stabilize(new_trivial(0, 1)), 1).west == Slope(-2)
    with pytest.raises(DomainError):
        add_boundary_twist(p, 0)


def test_admissible_examples():
    p = admissible_build(new_trivial(0, 1), Slope(-8, 5))
    assert p.history == (S, TP, S, TP, TP)
    assert (p.west, p.east) == (Slope(-8, 5), Slope(-3, 2))
    assert admissible_build(new_trivial(0, 1), Slope(-1)).history == (TP,)
    p = admissible_build(new_trivial(0, 1), Slope(-2))
    assert p.history == (S, TP) and p.east == Slope(-1)
    for bad in (Slope(0), Slope(1, 2), INF):
        with pytest.raises(DomainError):
            admissible_build(new_trivial(0, 1), bad)


def test_admissible_east_label_exhaustive():
    for p in range(1, 21):
        for q in range(1, 21):
            r = Slope(-p, q)
            plan = admissible_build(new_trivial(0, 1), r)
            e = list(ncf_expand(r))
            bumped = e[:-1] + [e[-1] + 1]
            assert plan.west == r
            assert plan.east == convergent_value(bumped)


def test_inadmissible_examples():
    p = inadmissible_build(new_trivial(1, 1), Slope(8, 11))
    assert p.history == (TN, TN, S, TP, S, TP, TP)
    labels = p.west_labels()
    assert Slope(1, 2) in labels and labels[-1] == Slope(8, 11)
    assert inadmissible_build(new_trivial(1, 1), Slope(1, 4)).history == (TN,) * 4
    assert inadmissible_build(new_trivial(1, 1), Slope(3, 2)).history == (TN, S, S, TP)
    split = inadmissible_split(Slope(8, 11))
    assert (split.n, split.r_prime, split.a, split.b) == (2, Slope(-8, 5), 3, 5)
    for bad in (Slope(0), Slope(-1), INF):
        with pytest.raises(DomainError):
            inadmissible_build(new_trivial(1, 1), bad)


def test_inadmissible_exhaustive():
    for p in range(1, 31):
        for q in range(1, 31):
            r = Slope(p, q)
            plan = inadmissible_build(new_trivial(1, 1), r)
            n = math.ceil(Fraction(r.q, r.p))
            assert plan.west == r
            assert plan.history[:n] == (TN,) * n and TN not in plan.history[n:]
            split = inadmissible_split(r)
            assert split.n == n
            if r.q != n * r.p:
                assert split.r_prime == Slope(r.p, r.q - n * r.p)
            # r = a.(1/n) (+) b.(1/(n-1)) on the vectors (q, p)
            assert (split.a * 1 + split.b * 1, split.a * n + split.b * (n - 1)) == (r.p, r.q)


@given(positive)
def test_mediant_coefficients_non_negative(r):
    split = inadmissible_split(r)
    assert split.a > 0 and split.b >= 0
    assert Fraction(1, split.n) <= r.fraction
    if split.n > 1:
        assert r.fraction < Fraction(1, split.n - 1)


def test_model_plan():
    for g in range(1, 4):
        for n in range(1, 6):
            assert model_plan(g, n).west == Slope(n * (2 * g - 1) + 1, n)
    with pytest.raises(DomainError):
        model_plan(0, 1)


def test_lutz_twists():
    q = lutz_quarter(new_trivial(1, 1))
    assert q.history == (S, TN) and q.west == Slope(0)
    assert lutz_half(new_trivial(1, 1)).west == INF
    assert lutz_full(new_trivial(1, 1)).west == INF
    for n in (-3, -1, 1, 2, 5):
        assert lutz_quarter(new_trivial(1, 1), n).west == Slope(0)
    # on a stabilised plan the new meridian is the old page slope
    p = stabilize(new_trivial(0, 1))
    assert lutz_quarter(p).west == p.east


def test_cap_off():
    p = new_trivial(0, 2)
    assert cap_off(p, "B1").page == Page(0, ("K",))
    s = stabilize(new_trivial(1, 1))
    c = cap_off(s, "S1")
    assert c.monodromy == () and c.page.genus == 1
    with pytest.raises(DomainError):
        cap_off(s, "K")
    with pytest.raises(DomainError):
        cap_off(s, "nope")


def test_shift_moves():
    assert link_shift_move([2, 2], 1, 2) == [1, 3]
    assert link_shift_move([1, 1], 1, 2) == [0, 2]
    assert link_shift_move([3, 1, 2], 3, 1) == [4, 1, 1]
    with pytest.raises(IndexError):
        link_shift_move([1, 2], 0, 1)
    with pytest.raises(DomainError):
        link_shift_move([1, 2], 1, 1)
    with pytest.raises(DomainError):
        link_shift_move([1], 1, 1)


@given(st.lists(st.integers(1, 12), min_size=2, max_size=6))
def test_shift_to_zero_takes_min_steps(k):
    steps = shift_to_zero(k)
    assert len(steps) == min(k)
    assert 0 in steps[-1]["k"]
    assert all(sum(s["k"]) == sum(k) for s in steps)


@given(st.lists(st.sampled_from(["S", "+", "-"]), max_size=15), st.integers(0, 3))
def test_bookkeeping(word, genus):
    plan = new_trivial(genus, 1)
    for w in word:
        before = plan
        if w == "S":
            plan = stabilize(plan)
            assert plan.page.euler_characteristic == before.page.euler_characteristic - 1
        else:
            plan = add_boundary_twist(plan, 1 if w == "+" else -1)
        assert plan.page.genus == genus
    assert plan.replay_frame() == plan.frame
    assert OpenBookPlan.from_dict(plan.to_dict()) == plan


@given(st.lists(st.sampled_from(["S", "+", "-"]), max_size=8), negative)
def test_builders_use_the_current_frame(word, r):
    plan = new_trivial(1, 1)
    for w in word:
        plan = stabilize(plan) if w == "S" else add_boundary_twist(plan, 1 if w == "+" else -1)
    # r is read against the current page slope; West lands on its original label
    built = admissible_build(plan, r)
    assert built.west == plan.label(r)
    assert to_current_frame(plan, built.west) == r


def test_plan_from_dict_errors():
    good = new_trivial(1, 1).to_dict()
    for bad in ({}, {**good, "history": ["Q"]}, {**good, "tracked": "X"},
                {**good, "frame": [[1, 0]]}):
        with pytest.raises((InputError, DomainError)):
            OpenBookPlan.from_dict(bad)

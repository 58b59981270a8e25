import random

import pytest

from posetval import Poset, format_poset, parse_poset
from posetval.errors import OrderViolation, ParseError, TooLarge, UnknownElement

from conftest import make_chain, random_poset
from oracles import upper_sets_by_filtering


def test_leq_examples(m4):
    assert m4.leq("bot", "top")
    assert not m4.leq("a", "b")
    assert m4.leq("a", "a")
    with pytest.raises(UnknownElement):
        m4.leq("a", "zz")


def test_way_below_equals_leq_everywhere(m4, c3):
    for p in (m4, c3):
        for x in p.elements:
            for y in p.elements:
                assert p.way_below(x, y) == p.leq(x, y)


def test_way_below_examples(m4):
    assert m4.way_below("bot", "a")
    assert not m4.way_below("top", "a")
    assert m4.way_below("top", "top")


def test_upper_set_enumeration(m4, c3):
    m4_uppers = {u.members for u in m4.enumerate_upper_sets()}
    assert m4_uppers == set(upper_sets_by_filtering(m4))
    assert len(m4_uppers) == 6
    assert frozenset() in m4_uppers and frozenset(m4.elements) in m4_uppers

    single = Poset(["x"], [], "x")
    assert len(single.enumerate_upper_sets()) == 2
    assert len(c3.enumerate_upper_sets()) == 4
    assert {u.members for u in c3.enumerate_upper_sets()} \
        == set(upper_sets_by_filtering(c3))


def test_upper_sets_form_topology(m4):
    uppers = {u.members for u in m4.enumerate_upper_sets()}
    for u in uppers:
        for v in uppers:
            assert u | v in uppers
            assert u & v in uppers


def test_oracle_bound():
    big = Poset(["e%d" % i for i in range(17)],
                [("e0", "e%d" % i) for i in range(1, 17)], "e0")
    with pytest.raises(TooLarge):
        big.enumerate_upper_sets()


def test_classify(m4, c3):
    assert m4.classify() == {"is_chain": False, "is_bounded_complete": True,
                             "is_lattice": True}
    assert c3.classify() == {"is_chain": True, "is_bounded_complete": True,
                             "is_lattice": True}
    vee = Poset(["bot", "a", "b"], [("bot", "a"), ("bot", "b")], "bot")
    assert vee.classify() == {"is_chain": False, "is_bounded_complete": True,
                              "is_lattice": False}


def test_construction_rejects_bad_orders():
    with pytest.raises(OrderViolation):
        Poset(["a", "b"], [("a", "b"), ("b", "a")], "a")  # cycle
    with pytest.raises(OrderViolation):
        Poset(["a", "b"], [], "a")  # bottom not below b
    with pytest.raises(OrderViolation):
        Poset(["a", "a"], [], "a")  # duplicate
    with pytest.raises(UnknownElement):
        Poset(["a"], [("a", "b")], "a")


def test_up_down_sets(m4):
    assert m4.up_set("bot") == frozenset(m4.elements)
    assert m4.up_set("a") == frozenset({"a", "top"})
    assert m4.down_set("a") == frozenset({"bot", "a"})
    for x in m4.elements:
        assert m4.is_upper(m4.up_set(x))


def test_random_posets_are_valid_orders():
    rng = random.Random(7)
    for _ in range(30):
        p = random_poset(rng)
        for x in p.elements:
            assert p.leq(p.bottom, x)
            assert p.leq(x, x)
        for x in p.elements:
            for y in p.elements:
                for z in p.elements:
                    if p.leq(x, y) and p.leq(y, z):
                        assert p.leq(x, z)
                if x != y:
                    assert not (p.leq(x, y) and p.leq(y, x))


def test_lift(m4):
    lifted = m4.lift()
    assert len(lifted) == 5
    assert lifted.leq(lifted.bottom, "bot")
    assert lifted.bottom not in m4.index
    with pytest.raises(OrderViolation):
        m4.lift("a")  # name clash


def test_parse_format_round_trip(m4):
    text = format_poset(m4)
    again = parse_poset(text)
    assert again.elements == m4.elements
    assert again.covers == m4.covers
    assert again.bottom == m4.bottom


def test_parse_two_chain():
    p = parse_poset("element a\nelement b\nbottom a\ncover a b\n")
    assert p.classify()["is_chain"] and len(p) == 2


def test_parse_errors():
    with pytest.raises(OrderViolation):
        parse_poset("element a\nelement b\ncover a b\n")  # no bottom
    with pytest.raises(ParseError):
        parse_poset("element a\nelement a\nbottom a\n")  # duplicate line
    with pytest.raises(ParseError):
        parse_poset("elemnt a\nbottom a\n")  # typo directive
    with pytest.raises(ParseError) as err:
        parse_poset("element a\nbottom a\nbogus\n")
    assert err.value.line == 3


def test_dot_export(m4):
    dot = m4.to_dot()
    assert dot.startswith("digraph")
    assert '"bot" -> "a";' in dot


def test_chain_factory():
    c8 = make_chain(8)
    assert c8.classify()["is_chain"]
    assert len(c8.enumerate_upper_sets()) == 9

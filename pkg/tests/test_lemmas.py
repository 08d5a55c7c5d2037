"""Lemma constructors checked on the worked figures."""

import pytest

from quintet.core import BLACK
from quintet.patterns import (
    Attack,
    LemmaPreconditionError,
    PatternDomainError,
    Threat,
    Victory,
    classify_pattern,
    lemma_a1_a2_decomposition,
    lemma_combination_attack,
    lemma_combination_victory,
    lemma_intersection_attack,
    lemma_simple_attack,
    lemma_victory_decomposition,
    parse_pattern,
    pattern_union,
    strength_key,
)

X = BLACK


def cls(text):
    return classify_pattern(parse_pattern(text), X)


# --- Lemma 1: Simple Attack --------------------------------------------------

def test_simple_attack_from_five():
    produced = lemma_simple_attack(parse_pattern("XXXXX"), X)
    assert len(produced) == 5
    for p in produced:
        c = classify_pattern(p, X)
        assert isinstance(c, Attack) and c.steps == 1


def test_simple_attack_from_d4_yields_w3():
    d4 = parse_pattern("+XXXX+")
    produced = lemma_simple_attack(d4, X)
    end_emptied = next(p for p in produced if p.content_at((0, 1)) == 0)
    c = classify_pattern(end_emptied, X)
    assert isinstance(c, Attack) and c.steps == 2 and len(c.defence) == 3


def test_simple_attack_bound_holds():
    v = parse_pattern("....+\n+XX+X+\n....+\n....X\n....X\n....+")  # C3w3w, V2
    n = classify_pattern(v, X).steps
    for p in lemma_simple_attack(v, X):
        c = classify_pattern(p, X)
        assert strength_key(c) >= strength_key(Attack(n + 1, (), ((0, 0),) * 9))


def test_simple_attack_middle_of_c33_gives_a3():
    # Emptying the intersection stone of the C3w3w produces a novel A3.
    v = parse_pattern("...+\n+XXX++\n...+\n...X\n...X\n...+")
    assert classify_pattern(v, X) == Victory(2)
    emptied = v.empty_square((1, 3))
    c = classify_pattern(emptied, X)
    assert isinstance(c, Attack) and c.steps == 3


def test_simple_attack_rejects_attack_input():
    with pytest.raises(PatternDomainError):
        lemma_simple_attack(parse_pattern("XXXX+"), X)


# --- Lemma 3: Combination Victory ---------------------------------------------

def test_combination_victory_two_fours():
    a1 = parse_pattern("XXXX+")
    a2 = parse_pattern("+XXXX").translate(0, 0)
    # Overlap on the four stones: a2 shifted left by one.
    a2 = parse_pattern("+XXXX").translate(0, -1)
    union = lemma_combination_victory(a1, a2, X)
    assert classify_pattern(union, X) == Victory(1)


def test_combination_victory_s4_w3_cross_is_c43():
    s4 = parse_pattern("@1,0\nXXX+X")
    w3 = parse_pattern("@0,4\n+\nX\n+\nX\nX\n+")
    union = lemma_combination_victory(s4, w3, X)
    assert classify_pattern(union, X) == Victory(2)


def test_combination_victory_two_w3_cross_is_c33():
    w3a = parse_pattern("@1,0\n+XX+X+")
    w3b = parse_pattern("@0,4\n+\nX\n+\nX\nX\n+")
    union = lemma_combination_victory(w3a, w3b, X)
    assert classify_pattern(union, X) == Victory(2)


def test_combination_victory_rejects_overlapping_defences():
    w3a = parse_pattern("+XXX++")
    w3b = parse_pattern("@0,1\n+XXX++").translate(0, 0)
    with pytest.raises(LemmaPreconditionError):
        lemma_combination_victory(w3a, w3b, X)


# --- Lemma 4: Intersection Attack -----------------------------------------------

def test_intersection_attack_two_w3_make_d3():
    # Figure: +XXX++ and ++XXX+ overlapping into ++XXX++.
    w3a = parse_pattern("@0,1\n+XXX++")
    w3b = parse_pattern("++XXX+")
    got = lemma_intersection_attack(w3a, w3b, X)
    assert isinstance(got, Attack)
    assert got.steps == 2
    assert set(got.defence) == {(0, 1), (0, 5)}
    assert pattern_union(w3a, w3b) == parse_pattern("++XXX++")


def test_intersection_attack_idempotent():
    w3 = parse_pattern("++XXX+")
    got = lemma_intersection_attack(w3, w3, X)
    assert got == classify_pattern(w3, X)


def test_intersection_attack_rejects_disjoint_defences():
    s4a = parse_pattern("XXXX+")
    s4b = parse_pattern("@0,1\n+XXXX")
    with pytest.raises(LemmaPreconditionError):
        lemma_intersection_attack(s4a, s4b, X)


# --- Lemma 5: Combination Attack -------------------------------------------------

def test_combination_attack_figure():
    # XXX++ and ++XXX share the middle empty; union is the A2 XXX+++XXX.
    t1 = parse_pattern("XXX++")
    t2 = parse_pattern("@0,4\n++XXX")
    g = (0, 4)
    got = lemma_combination_attack(t1, t2, g, X)
    assert isinstance(got, Attack)
    assert got.steps == 2
    assert g in got.triggers
    assert set(got.defence) == {(0, 3), (0, 4), (0, 5)}


def test_combination_attack_cross_w3():
    t1 = parse_pattern("XXX++")
    t2 = parse_pattern("@0,4\n+\n+\nX\nX\nX")
    got = lemma_combination_attack(t1, t2, (0, 4), X)
    assert isinstance(got, Attack) and got.steps == 2
    assert len(got.defence) == 3


def test_combination_attack_rejects_non_common_trigger():
    t1 = parse_pattern("XXX++")
    t2 = parse_pattern("@0,4\n++XXX")
    with pytest.raises(LemmaPreconditionError):
        lemma_combination_attack(t1, t2, (0, 3), X)


# --- Lemma 6: Victory Decomposition ------------------------------------------------

def test_decompose_double_four():
    d4 = parse_pattern("+XXXX+")
    p1, p2 = lemma_victory_decomposition(d4, X)
    c1 = classify_pattern(p1, X)
    c2 = classify_pattern(p2, X)
    assert isinstance(c1, Attack) and isinstance(c2, Attack)
    assert not set(c1.defence) & set(c2.defence)
    assert c1.steps <= 1 and c2.steps <= 1


def test_decompose_c43():
    c43 = parse_pattern("....+\nXXX+X\n....+\n....X\n....X\n....+")
    p1, p2 = lemma_victory_decomposition(c43, X)
    steps = sorted(
        classify_pattern(p, X).steps for p in (p1, p2)
    )
    assert steps[0] == 1 and steps[1] <= 2


def test_decompose_rejects_v0():
    with pytest.raises(PatternDomainError):
        lemma_victory_decomposition(parse_pattern("XXXXX"), X)


# --- Lemma 7: A1/A2 decomposition ----------------------------------------------------

def test_a1_contains_s4():
    w = lemma_a1_a2_decomposition(parse_pattern("XX+XX"), X)
    assert isinstance(w.claimed_class, Attack) and w.claimed_class.steps == 1
    assert w.output.size == 5


def test_a2_w3_is_its_own_witness():
    p = parse_pattern("++XXX+")
    w = lemma_a1_a2_decomposition(p, X)
    assert isinstance(w.claimed_class, Attack) and w.claimed_class.steps == 2


def test_a2_cross_w3_found():
    p = parse_pattern("XXX++\n....+\n....X\n....X\n....X")
    w = lemma_a1_a2_decomposition(p, X)
    assert isinstance(w.claimed_class, Attack) and w.claimed_class.steps == 2
    assert w.output.size == 9


def test_decomposition_rejects_other_classes():
    with pytest.raises(PatternDomainError):
        lemma_a1_a2_decomposition(parse_pattern("+XXX+"), X)

"""Oracle classification of the named one- and two-step patterns."""

import pytest

from quintet.core import BLACK, WHITE
from quintet.patterns import (
    Attack,
    Generic,
    OracleCapacityError,
    PatternDomainError,
    RestrictedPattern,
    Threat,
    Victory,
    classify_pattern,
    format_pattern,
    is_irrational_double_attack,
    is_minimal,
    parse_pattern,
    restricted_winner,
    strength_compare,
)

X = BLACK
O = WHITE


def classify(text, owner=X):
    return classify_pattern(parse_pattern(text), owner)


# --- restricted game -------------------------------------------------------

def test_already_won_zero_plies():
    r = restricted_winner(parse_pattern("XXXXX"), X)
    assert (r.winner, r.plies) == (X, 0)
    r = restricted_winner(parse_pattern("XXXXX"), O)
    assert (r.winner, r.plies) == (X, 0)


def test_simple_four_first_mover_decides():
    p = parse_pattern("XXXX+")
    r = restricted_winner(p, X)
    assert (r.winner, r.plies) == (X, 1)
    r = restricted_winner(p, O)
    assert r.winner != X


def test_broken_four_wins_in_one():
    r = restricted_winner(parse_pattern("XX+XX"), X)
    assert (r.winner, r.plies) == (X, 1)


def test_double_four_second_player_win():
    # PY blocks one end, PX completes the other: one PX stone placed.
    r = restricted_winner(parse_pattern("+XXXX+"), O)
    assert r.winner == X
    assert r.plies == 2


def test_oracle_capacity_error():
    squares = tuple((0, c) for c in range(19))
    with pytest.raises(OracleCapacityError):
        restricted_winner(RestrictedPattern(squares, (0,) * 19), X)


# --- catalog classification (section: basic patterns) -----------------------

def test_simple_five_is_v0():
    assert classify("XXXXX") == Victory(0)


def test_double_four_is_v1():
    assert classify("+XXXX+") == Victory(1)
    assert classify("XXX+X+XXX") == Victory(1)


def test_not_a_victory_one_sided_four():
    cls = classify("XXXX++")
    assert isinstance(cls, Attack) and cls.steps == 1


def test_vertical_victory():
    p = parse_pattern("XXXX+\nX\nX\nX\n+")
    # Only the top row is a line of five with its trailing empty.
    cls = classify_pattern(p, X)
    assert isinstance(cls, Victory)


def test_simple_four_is_a1_with_unit_defence():
    for text in ("XXXX+", "XX+XX", "+XXXX", "X+XXX"):
        cls = classify(text)
        assert isinstance(cls, Attack)
        assert cls.steps == 1
        assert len(cls.defence) == 1
        assert cls.triggers == cls.defence


def test_weak_three_is_a2_with_three_defence():
    cls = classify("++XXX+")
    assert isinstance(cls, Attack)
    assert cls.steps == 2
    assert cls.triggers == ((0, 1),)
    assert set(cls.defence) == {(0, 0), (0, 1), (0, 5)}

    cls = classify("+X+XX+")
    assert isinstance(cls, Attack)
    assert (cls.steps, len(cls.defence)) == (2, 3)

    cls = classify("XXX+++XXX")
    assert isinstance(cls, Attack)
    assert cls.steps == 2
    assert set(cls.defence) == {(0, 3), (0, 4), (0, 5)}


def test_double_three_is_a2_with_two_defence():
    cls = classify("++XXX++")
    assert isinstance(cls, Attack)
    assert cls.steps == 2
    assert set(cls.triggers) == {(0, 1), (0, 5)}
    assert set(cls.defence) == {(0, 1), (0, 5)}


def test_simple_three_is_t2():
    cls = classify("+XXX+")
    assert cls == Threat(2, ((0, 0), (0, 4)), 1)


def test_t3_examples():
    cls = classify("++X+X++")
    assert isinstance(cls, Threat)
    assert cls.steps == 3
    assert set(cls.triggers) >= {(0, 1), (0, 3), (0, 5)}

    cls = classify("+++XX++++++XX+++")
    assert isinstance(cls, Threat) and cls.steps == 3

    cls = classify("XXX+++++++XX+++")
    assert isinstance(cls, Threat) and cls.steps == 2

    cls = classify("XXXX++++++XX+++")
    assert isinstance(cls, Attack) and cls.steps == 1


CROSS_W3 = "XXX++\n....+\n....X\n....X\n....X"

CROSS_C44 = "XXX+X\n....+\n....X\n....X\n....X"

C43W = "....+\nXXX+X\n....+\n....X\n....X\n....+"

C33WW = "....+\n+XX+X+\n....+\n....X\n....X\n....+"


def test_cross_w3_is_a2():
    cls = classify(CROSS_W3)
    assert isinstance(cls, Attack)
    assert cls.steps == 2
    assert len(cls.defence) == 3


def test_cross_c44_is_v1():
    assert classify(CROSS_C44) == Victory(1)


def test_cross_c43_is_v2():
    assert classify(C43W) == Victory(2)


def test_cross_c33_is_v2():
    assert classify(C33WW) == Victory(2)


def test_generic_pattern():
    assert classify("X+++X") == Generic()


# --- strength ordering -------------------------------------------------------

def test_strength_category_order():
    v1 = Victory(1)
    a1 = Attack(1, ((0, 0),), ((0, 0),))
    t2 = Threat(2, ((0, 0),), 1)
    g = Generic()
    assert strength_compare(v1, a1) > 0
    assert strength_compare(a1, t2) > 0
    assert strength_compare(t2, g) > 0
    assert strength_compare(g, Generic()) == 0


def test_strength_steps_and_defence():
    assert strength_compare(Victory(1), Victory(2)) > 0
    a_small = Attack(2, ((0, 0),), ((0, 0), (0, 1)))
    a_big = Attack(2, ((0, 0),), ((0, 0), (0, 1), (0, 2)))
    assert strength_compare(a_small, a_big) > 0


# --- minimality ---------------------------------------------------------------

def test_minimal_patterns():
    assert is_minimal(parse_pattern("XXXXX"), X)
    assert is_minimal(parse_pattern("+XXXX+"), X)
    assert is_minimal(parse_pattern("XXXX+"), X)
    assert is_minimal(parse_pattern("+XXX+"), X)


def test_non_minimal_patterns():
    assert not is_minimal(parse_pattern("XXXXX++"), X)
    assert not is_minimal(parse_pattern("+XXXX+X"), X)
    assert not is_minimal(parse_pattern("XXXX++"), X)


def test_minimality_rejects_generic():
    with pytest.raises(PatternDomainError):
        is_minimal(parse_pattern("X+++X"), X)


# --- irrational double attacks ------------------------------------------------

def test_irrational_two_w3_sharing_empties():
    assert is_irrational_double_attack(parse_pattern("+XXX++XXX+"), X)


def test_irrational_double_four_gap():
    assert is_irrational_double_attack(parse_pattern("XXXX+XXXX"), X)


def test_single_s4_not_irrational():
    assert not is_irrational_double_attack(parse_pattern("XXXX+"), X)


def test_d4_not_irrational():
    assert not is_irrational_double_attack(parse_pattern("+XXXX+"), X)


# --- classify preconditions -----------------------------------------------------

def test_classify_rejects_mixed_pattern():
    with pytest.raises(PatternDomainError):
        classify("XXOX+")


# --- oracle self-consistency -------------------------------------------------

def random_pure_pattern(rng):
    from quintet.patterns import RestrictedPattern

    while True:
        n = rng.randrange(5, 9)
        squares = set()
        while len(squares) < n:
            squares.add((rng.randrange(0, 2), rng.randrange(0, 6)))
        squares = tuple(sorted(squares))
        contents = tuple(X if rng.random() < 0.65 else 0 for _ in squares)
        if sum(1 for c in contents if c == X) >= 3:
            return RestrictedPattern(squares, contents)


def test_attack_oracle_self_consistency():
    """Triggers make victories; defence squares kill the first-move win;
    non-defence squares leave it winnable."""
    import random

    from quintet.core import WHITE
    from quintet.patterns import restricted_winner

    rng = random.Random(31337)
    attacks_seen = 0
    while attacks_seen < 25:
        p = random_pure_pattern(rng)
        cls = classify_pattern(p, X)
        if not isinstance(cls, Attack):
            continue
        attacks_seen += 1
        for trig in cls.triggers:
            sub = classify_pattern(p.fill(trig, X), X)
            assert isinstance(sub, Victory)
        for e in p.empties():
            winnable = restricted_winner(p.with_content(e, WHITE), X).winner == X
            assert winnable == (e not in cls.defence), (p, e)


def test_threat_triggers_yield_attacks():
    import random

    rng = random.Random(77)
    threats_seen = 0
    while threats_seen < 20:
        p = random_pure_pattern(rng)
        cls = classify_pattern(p, X)
        if not isinstance(cls, Threat):
            continue
        threats_seen += 1
        fastest = []
        for trig in cls.triggers:
            sub = classify_pattern(p.fill(trig, X), X)
            assert isinstance(sub, Attack)
            fastest.append(sub)
        best = min(a.steps for a in fastest)
        assert cls.steps == 1 + best
        assert cls.defence_size == min(
            len(a.defence) for a in fastest if a.steps == best
        )


# --- text round-trip -------------------------------------------------------------

def test_pattern_text_round_trip():
    for text in ("XXXX+", CROSS_C44, C33WW, "@3,4\nXX+XX"):
        p = parse_pattern(text)
        assert parse_pattern(format_pattern(p)) == p


def test_anchor_preserves_absolute_squares():
    p = parse_pattern("@2,3\nXXXXX")
    assert p.squares[0] == (2, 3)

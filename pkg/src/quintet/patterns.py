"""Ground-truth pattern algebra over restricted games.

A restricted game is played inside a fixed set of squares; whoever first
owns five aligned consecutive squares of that set wins.  Classification of
a pattern (victory / attack / threat / generic, with steps, triggers and
defences) is computed by exhaustive rational-play minimax and serves as the
oracle that the table-driven line classifier, the board analysis and the
solvers are all checked against.

Rational play: a winner wins in the fewest plies, a loser drags the game
out as long as possible.  Defence squares are defined by opponent fill:
an empty square is a defence of an attack when the opponent occupying it
leaves the owner unable to force a win moving first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import BLACK, CHAR_STONES, DIRECTIONS, EMPTY, STONE_CHARS, WHITE, opponent

Coord = tuple[int, int]

ORACLE_MAX_SQUARES = 18
ORACLE_MAX_EMPTIES = 14


class PatternDomainError(ValueError):
    pass


class OracleCapacityError(PatternDomainError):
    pass


class IncompatiblePatternsError(PatternDomainError):
    pass


class LemmaPreconditionError(PatternDomainError):
    pass


@dataclass(frozen=True)
class RestrictedPattern:
    """A set of absolute (row, col) squares with their contents."""

    squares: tuple[Coord, ...]
    contents: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.squares) != len(self.contents):
            raise PatternDomainError("squares/contents length mismatch")
        if len(set(self.squares)) != len(self.squares):
            raise PatternDomainError("duplicate squares in pattern")
        for c in self.contents:
            if c not in (EMPTY, BLACK, WHITE):
                raise PatternDomainError(f"bad square content: {c}")

    @property
    def size(self) -> int:
        return len(self.squares)

    def content_at(self, sq: Coord) -> int:
        return self.contents[self.squares.index(sq)]

    def empties(self) -> tuple[Coord, ...]:
        return tuple(sq for sq, c in zip(self.squares, self.contents) if c == EMPTY)

    def filled(self) -> tuple[Coord, ...]:
        return tuple(sq for sq, c in zip(self.squares, self.contents) if c != EMPTY)

    def with_content(self, sq: Coord, content: int) -> "RestrictedPattern":
        i = self.squares.index(sq)
        new = self.contents[:i] + (content,) + self.contents[i + 1 :]
        return RestrictedPattern(self.squares, new)

    def fill(self, sq: Coord, color: int) -> "RestrictedPattern":
        if self.content_at(sq) != EMPTY:
            raise PatternDomainError(f"square {sq} is not empty")
        return self.with_content(sq, color)

    def empty_square(self, sq: Coord) -> "RestrictedPattern":
        if self.content_at(sq) == EMPTY:
            raise PatternDomainError(f"square {sq} is already empty")
        return self.with_content(sq, EMPTY)

    def remove(self, sq: Coord) -> "RestrictedPattern":
        i = self.squares.index(sq)
        return RestrictedPattern(
            self.squares[:i] + self.squares[i + 1 :],
            self.contents[:i] + self.contents[i + 1 :],
        )

    def translate(self, dr: int, dc: int) -> "RestrictedPattern":
        return RestrictedPattern(
            tuple((r + dr, c + dc) for r, c in self.squares), self.contents
        )

    def sorted(self) -> "RestrictedPattern":
        order = sorted(range(self.size), key=lambda i: self.squares[i])
        return RestrictedPattern(
            tuple(self.squares[i] for i in order),
            tuple(self.contents[i] for i in order),
        )

    def canonical(self) -> tuple["RestrictedPattern", tuple[int, int]]:
        """Translate to the origin and sort squares; returns (pattern, offset)."""
        dr = min(r for r, _ in self.squares)
        dc = min(c for _, c in self.squares)
        return self.translate(-dr, -dc).sorted(), (dr, dc)

    def is_pure(self, owner: int) -> bool:
        other = opponent(owner)
        return all(c != other for c in self.contents)


def pattern_union(a: RestrictedPattern, b: RestrictedPattern) -> RestrictedPattern:
    """Union of two compatible patterns (equal contents on shared squares)."""
    merged = dict(zip(a.squares, a.contents))
    for sq, c in zip(b.squares, b.contents):
        if sq in merged and merged[sq] != c:
            raise IncompatiblePatternsError(f"conflicting contents at {sq}")
        merged[sq] = c
    items = sorted(merged.items())
    return RestrictedPattern(tuple(k for k, _ in items), tuple(v for _, v in items))


def pattern_intersection(a: RestrictedPattern, b: RestrictedPattern) -> RestrictedPattern:
    common = [sq for sq in a.squares if sq in set(b.squares)]
    for sq in common:
        if a.content_at(sq) != b.content_at(sq):
            raise IncompatiblePatternsError(f"conflicting contents at {sq}")
    common.sort()
    return RestrictedPattern(tuple(common), tuple(a.content_at(sq) for sq in common))


# --- text form -------------------------------------------------------------
#
# Rows of X / O / +, with '.' for squares that are not part of the pattern.
# An optional first line "@r,c" anchors the bounding box top-left corner on
# absolute coordinates.  parse/format round-trip exactly.

def parse_pattern(text: str) -> RestrictedPattern:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise PatternDomainError("empty pattern text")
    r0 = c0 = 0
    if lines[0].lstrip().startswith("@"):
        anchor = lines.pop(0).strip()[1:]
        r0, c0 = (int(x) for x in anchor.split(","))
    squares: list[Coord] = []
    contents: list[int] = []
    for r, ln in enumerate(lines):
        for c, ch in enumerate(ln):
            if ch in (" ", "."):
                continue
            if ch not in CHAR_STONES:
                raise PatternDomainError(f"bad pattern char {ch!r}")
            squares.append((r0 + r, c0 + c))
            contents.append(CHAR_STONES[ch])
    if not squares:
        raise PatternDomainError("pattern text has no squares")
    return RestrictedPattern(tuple(squares), tuple(contents)).sorted()


def format_pattern(p: RestrictedPattern) -> str:
    rmin = min(r for r, _ in p.squares)
    cmin = min(c for _, c in p.squares)
    rmax = max(r for r, _ in p.squares)
    cmax = max(c for _, c in p.squares)
    grid = [["." for _ in range(cmax - cmin + 1)] for _ in range(rmax - rmin + 1)]
    for (r, c), v in zip(p.squares, p.contents):
        grid[r - rmin][c - cmin] = STONE_CHARS[v]
    out = []
    if (rmin, cmin) != (0, 0):
        out.append(f"@{rmin},{cmin}")
    out.extend("".join(row) for row in grid)
    return "\n".join(out)


# --- classification result types -------------------------------------------

@dataclass(frozen=True)
class Victory:
    steps: int


@dataclass(frozen=True)
class Attack:
    steps: int
    triggers: tuple[Coord, ...]
    defence: tuple[Coord, ...]


@dataclass(frozen=True)
class Threat:
    steps: int
    triggers: tuple[Coord, ...]
    defence_size: int


@dataclass(frozen=True)
class Generic:
    pass


PatternClass = Victory | Attack | Threat | Generic


def strength_key(pc: PatternClass) -> tuple[int, int, int]:
    """Sort key: larger is stronger. Category, then steps, then defence size."""
    if isinstance(pc, Victory):
        return (3, -pc.steps, 0)
    if isinstance(pc, Attack):
        return (2, -pc.steps, -len(pc.defence))
    if isinstance(pc, Threat):
        return (1, -pc.steps, -pc.defence_size)
    return (0, 0, 0)


def strength_compare(a: PatternClass, b: PatternClass) -> int:
    ka, kb = strength_key(a), strength_key(b)
    return (ka > kb) - (ka < kb)


# --- restricted game solver -------------------------------------------------

@dataclass(frozen=True)
class RestrictedResult:
    winner: int | None  # BLACK / WHITE / None for a draw
    plies: int


@lru_cache(maxsize=None)
def _geometry(squares: tuple[Coord, ...]):
    """Blocks (5 aligned consecutive squares inside the set), as index tuples."""
    index = {sq: i for i, sq in enumerate(squares)}
    blocks: list[tuple[int, ...]] = []
    for r, c in squares:
        for dr, dc in DIRECTIONS:
            cells = [(r + k * dr, c + k * dc) for k in range(5)]
            if all(cell in index for cell in cells):
                blocks.append(tuple(index[cell] for cell in cells))
    blocks_through: list[list[tuple[int, ...]]] = [[] for _ in squares]
    for b in blocks:
        for i in b:
            blocks_through[i].append(b)
    return tuple(blocks), tuple(tuple(bs) for bs in blocks_through)


_solve_memo: dict = {}


def _has_five(contents: tuple[int, ...], blocks, color: int) -> bool:
    return any(all(contents[i] == color for i in b) for b in blocks)


def _solve(squares, blocks, blocks_through, contents, mover) -> tuple[int | None, int]:
    key = (squares, contents, mover)
    hit = _solve_memo.get(key)
    if hit is not None:
        return hit
    other = opponent(mover)
    # The non-mover notionally moved last; their five ends the game first.
    if _has_five(contents, blocks, other):
        result = (other, 0)
    elif _has_five(contents, blocks, mover):
        result = (mover, 0)
    else:
        empties = [i for i, c in enumerate(contents) if c == EMPTY]
        if not empties:
            result = (None, 0)
        else:
            result = None
            for i in empties:
                if any(
                    all(contents[j] == mover or j == i for j in b)
                    for b in blocks_through[i]
                ):
                    result = (mover, 1)
                    break
            if result is None:
                best = None
                for i in empties:
                    child = contents[:i] + (mover,) + contents[i + 1 :]
                    w, p = _solve(squares, blocks, blocks_through, child, other)
                    cand = (w, p + 1)
                    if best is None or _prefers(mover, cand, best):
                        best = cand
                result = best
    _solve_memo[key] = result
    return result


def _prefers(mover: int, a: tuple[int | None, int], b: tuple[int | None, int]) -> bool:
    """True when the mover strictly prefers outcome a over b."""

    def score(out):
        w, p = out
        if w == mover:
            return (2, -p)
        if w is None:
            return (1, 0)
        return (0, p)

    return score(a) > score(b)


def _check_capacity(p: RestrictedPattern) -> None:
    if p.size > ORACLE_MAX_SQUARES:
        raise OracleCapacityError(f"pattern size {p.size} exceeds oracle cap")
    n_empty = sum(1 for c in p.contents if c == EMPTY)
    if n_empty > ORACLE_MAX_EMPTIES:
        raise OracleCapacityError(f"{n_empty} empties exceed oracle cap")


def restricted_winner(p: RestrictedPattern, first: int) -> RestrictedResult:
    """Exact rational-play outcome of the game restricted to p's squares."""
    _check_capacity(p)
    canon, _ = p.canonical()
    blocks, through = _geometry(canon.squares)
    w, plies = _solve(canon.squares, blocks, through, canon.contents, first)
    return RestrictedResult(w, plies)


# --- classification ---------------------------------------------------------

_classify_memo: dict = {}


def classify_pattern(p: RestrictedPattern, owner: int) -> PatternClass:
    """Classify an owner-pure pattern per the victory/attack/threat algebra."""
    if not p.is_pure(owner):
        raise PatternDomainError("pattern contains opponent stones")
    _check_capacity(p)
    canon, (dr, dc) = p.canonical()
    result = _classify(canon, owner)
    if dr == 0 and dc == 0:
        return result
    return _shift_class(result, dr, dc)


def _shift_class(pc: PatternClass, dr: int, dc: int) -> PatternClass:
    shift = lambda sqs: tuple((r + dr, c + dc) for r, c in sqs)
    if isinstance(pc, Attack):
        return Attack(pc.steps, shift(pc.triggers), shift(pc.defence))
    if isinstance(pc, Threat):
        return Threat(pc.steps, shift(pc.triggers), pc.defence_size)
    return pc


def _result(pattern: RestrictedPattern, first: int) -> tuple[int | None, int]:
    blocks, through = _geometry(pattern.squares)
    return _solve(pattern.squares, blocks, through, pattern.contents, first)


def _victory_steps(pattern: RestrictedPattern, owner: int) -> int | None:
    """Steps when the pattern is a victory for owner, else None."""
    other = opponent(owner)
    w1, _ = _result(pattern, owner)
    if w1 != owner:
        return None
    w2, p2 = _result(pattern, other)
    if w2 != owner:
        return None
    return p2 // 2


def _classify(p: RestrictedPattern, owner: int) -> PatternClass:
    key = (p.squares, p.contents, owner)
    hit = _classify_memo.get(key)
    if hit is not None:
        return hit
    other = opponent(owner)

    result: PatternClass
    vsteps = _victory_steps(p, owner)
    if vsteps is not None:
        result = Victory(vsteps)
    else:
        empties = p.empties()
        trigger_steps: dict[Coord, int] = {}
        for e in empties:
            s = _victory_steps(p.fill(e, owner), owner)
            if s is not None:
                trigger_steps[e] = s
        if trigger_steps:
            steps = 1 + min(trigger_steps.values())
            defence = tuple(
                e for e in empties if _result(p.with_content(e, other), owner)[0] != owner
            )
            result = Attack(steps, tuple(trigger_steps), defence)
        else:
            triggered: dict[Coord, Attack] = {}
            for e in empties:
                sub = _classify(p.fill(e, owner), owner)
                if isinstance(sub, Attack):
                    triggered[e] = sub
            if triggered:
                fastest = min(a.steps for a in triggered.values())
                dsize = min(
                    len(a.defence) for a in triggered.values() if a.steps == fastest
                )
                result = Threat(1 + fastest, tuple(triggered), dsize)
            else:
                result = Generic()
    _classify_memo[key] = result
    return result


def threat_trigger_defence(
    p: RestrictedPattern, owner: int, trigger: Coord
) -> tuple[int, tuple[Coord, ...]]:
    """Steps and defence of the attack a threat triggers at the given square."""
    sub = classify_pattern(p.fill(trigger, owner), owner)
    if not isinstance(sub, Attack):
        raise LemmaPreconditionError(f"{trigger} does not trigger an attack")
    return sub.steps, sub.defence


def is_minimal(p: RestrictedPattern, owner: int) -> bool:
    """True when removing any single square strictly weakens the pattern."""
    base = classify_pattern(p, owner)
    if isinstance(base, Generic):
        raise PatternDomainError("minimality is defined for non-generic patterns")
    bk = strength_key(base)
    for sq in p.squares:
        residual = p.remove(sq)
        if residual.size == 0:
            continue
        if strength_key(classify_pattern(residual, owner)) >= bk:
            return False
    return True


# --- irrational double attacks ----------------------------------------------

def _aligned_windows(p: RestrictedPattern, owner: int, lengths=(5, 6, 7)):
    """Consecutive aligned square runs inside p with owner/empty contents only."""
    sset = dict(zip(p.squares, p.contents))
    other = opponent(owner)
    for r, c in p.squares:
        for dr, dc in DIRECTIONS:
            for n in lengths:
                cells = [(r + k * dr, c + k * dc) for k in range(n)]
                if all(cell in sset and sset[cell] != other for cell in cells):
                    yield RestrictedPattern(
                        tuple(cells), tuple(sset[cell] for cell in cells)
                    ).sorted()


def is_irrational_double_attack(p: RestrictedPattern, owner: int) -> bool:
    """Two minimal attack sub-patterns intersecting in no filled square.

    Detection enumerates straight catalog placements (S4/W3/D3 sized windows)
    inside the pattern; advisory only.
    """
    attacks: list[RestrictedPattern] = []
    seen = set()
    for w in _aligned_windows(p, owner):
        if w.squares in seen:
            continue
        seen.add(w.squares)
        cls = classify_pattern(w, owner)
        if isinstance(cls, Attack) and is_minimal(w, owner):
            attacks.append(w)
    for i in range(len(attacks)):
        si = set(attacks[i].squares)
        for j in range(i + 1, len(attacks)):
            shared = si.intersection(attacks[j].squares)
            if all(attacks[i].content_at(sq) == EMPTY for sq in shared):
                return True
    return False


# --- lemma constructors -------------------------------------------------------

@dataclass(frozen=True)
class LemmaWitness:
    inputs: tuple[RestrictedPattern, ...]
    output: RestrictedPattern
    claimed_class: PatternClass


def lemma_simple_attack(v: RestrictedPattern, owner: int) -> tuple[RestrictedPattern, ...]:
    """Empty each filled square of a victory; each result is an attack or better."""
    cls = classify_pattern(v, owner)
    if not isinstance(cls, Victory):
        raise PatternDomainError("input must classify as a victory")
    return tuple(v.empty_square(sq) for sq in v.filled())


def lemma_combination_victory(
    a1: RestrictedPattern, a2: RestrictedPattern, owner: int
) -> RestrictedPattern:
    """Union of two compatible attacks with disjoint defences: a victory."""
    c1 = classify_pattern(a1, owner)
    c2 = classify_pattern(a2, owner)
    if not (isinstance(c1, Attack) and isinstance(c2, Attack)):
        raise PatternDomainError("inputs must classify as attacks")
    if set(c1.defence) & set(c2.defence):
        raise LemmaPreconditionError("defences overlap; use the intersection lemma")
    return pattern_union(a1, a2)


def lemma_intersection_attack(
    a1: RestrictedPattern, a2: RestrictedPattern, owner: int
) -> PatternClass:
    """Union of two attacks with overlapping defences: an attack with defence
    equal to the intersection and steps equal to the quicker input."""
    c1 = classify_pattern(a1, owner)
    c2 = classify_pattern(a2, owner)
    if not (isinstance(c1, Attack) and isinstance(c2, Attack)):
        raise PatternDomainError("inputs must classify as attacks")
    if not set(c1.defence) & set(c2.defence):
        raise LemmaPreconditionError("defences are disjoint; combination victory applies")
    return classify_pattern(pattern_union(a1, a2), owner)


def lemma_combination_attack(
    t1: RestrictedPattern, t2: RestrictedPattern, g: Coord, owner: int
) -> PatternClass:
    """Union of two threats sharing trigger g with disjoint per-trigger defences."""
    c1 = classify_pattern(t1, owner)
    c2 = classify_pattern(t2, owner)
    if not (isinstance(c1, Threat) and isinstance(c2, Threat)):
        raise PatternDomainError("inputs must classify as threats")
    if g not in c1.triggers or g not in c2.triggers:
        raise LemmaPreconditionError(f"{g} is not a common trigger")
    _, d1 = threat_trigger_defence(t1, owner, g)
    _, d2 = threat_trigger_defence(t2, owner, g)
    if set(d1) & set(d2):
        raise LemmaPreconditionError("per-trigger defences overlap")
    return classify_pattern(pattern_union(t1, t2), owner)


def _sub_patterns(p: RestrictedPattern, min_size: int = 5):
    """All square subsets of p that contain at least one full block."""
    n = p.size
    for mask in range(1, 1 << n):
        if bin(mask).count("1") < min_size:
            continue
        squares = tuple(p.squares[i] for i in range(n) if mask >> i & 1)
        sub = RestrictedPattern(
            squares, tuple(p.contents[i] for i in range(n) if mask >> i & 1)
        )
        blocks, _ = _geometry(sub.canonical()[0].squares)
        if blocks:
            yield sub


def lemma_victory_decomposition(
    v: RestrictedPattern, owner: int
) -> tuple[RestrictedPattern, RestrictedPattern]:
    """Two attack sub-patterns of a victory with disjoint defences."""
    cls = classify_pattern(v, owner)
    if not isinstance(cls, Victory):
        raise PatternDomainError("input must classify as a victory")
    if cls.steps == 0:
        raise PatternDomainError("a zero-step victory has nothing to decompose")
    attacks: list[tuple[RestrictedPattern, Attack]] = []
    for sub in _sub_patterns(v):
        c = classify_pattern(sub, owner)
        if isinstance(c, Attack) and c.steps <= cls.steps:
            attacks.append((sub, c))
    for i in range(len(attacks)):
        for j in range(i + 1, len(attacks)):
            if not set(attacks[i][1].defence) & set(attacks[j][1].defence):
                return attacks[i][0], attacks[j][0]
    raise PatternDomainError("no decomposition found; input is not a proper victory")


def lemma_a1_a2_decomposition(p: RestrictedPattern, owner: int) -> LemmaWitness:
    """A1 contains a simple four; A2 contains a weak three (possibly crossed)."""
    cls = classify_pattern(p, owner)
    if not isinstance(cls, Attack) or cls.steps not in (1, 2):
        raise PatternDomainError("input must classify as A1 or A2")
    sset = dict(zip(p.squares, p.contents))
    blocks = _owner_blocks(sset, owner)
    if cls.steps == 1:
        for cells, empties in blocks:
            if len(empties) == 1:
                sub = RestrictedPattern(
                    tuple(cells), tuple(sset[c] for c in cells)
                ).sorted()
                return LemmaWitness((p,), sub, classify_pattern(sub, owner))
        raise PatternDomainError("A1 without a degree-4 block")
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            ei, ej = set(blocks[i][1]), set(blocks[j][1])
            if len(ei & ej) == 1:
                cells = tuple(sorted(set(blocks[i][0]) | set(blocks[j][0])))
                sub = RestrictedPattern(cells, tuple(sset[c] for c in cells))
                sub_cls = classify_pattern(sub, owner)
                if isinstance(sub_cls, Attack) and sub_cls.steps == 2:
                    return LemmaWitness((p,), sub, sub_cls)
    raise PatternDomainError("A2 without a contained weak three")


def _owner_blocks(sset: dict[Coord, int], owner: int):
    """Blocks of degree 3 or 4 (cells, empty cells) fully inside the square set."""
    out = []
    seen = set()
    for r, c in sset:
        for dr, dc in DIRECTIONS:
            cells = tuple((r + k * dr, c + k * dc) for k in range(5))
            if cells in seen:
                continue
            seen.add(cells)
            if not all(cell in sset for cell in cells):
                continue
            vals = [sset[cell] for cell in cells]
            if any(v not in (owner, EMPTY) for v in vals):
                continue
            empties = tuple(cell for cell, v in zip(cells, vals) if v == EMPTY)
            if len(empties) in (1, 2):
                out.append((cells, empties))
    return out


def clear_oracle_caches() -> None:
    _solve_memo.clear()
    _classify_memo.clear()
    _geometry.cache_clear()

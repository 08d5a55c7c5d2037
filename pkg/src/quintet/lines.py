"""Nine-square line encoding and table-driven classification.

A potential line is nine aligned squares with an empty centre.  The eight
peripheral cells take one of four values (subject stone, opponent stone,
empty, outside) and pack into 16 bits, so every possible line classifies
once at start-up into a 2^16 lookup table.

Classification assumes the subject's stone placed at the centre, then runs
the tracker-vector case analysis over the five blocks of the line: G is the
maximum degree of the live subject blocks, N how many blocks reach it, and
tracker vectors over block pairs decide between the single/double/weak
variants.  Dead blocks (opponent stones or outside cells) never count.
"""

from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass
from enum import IntEnum
from pathlib import Path

import numpy as np

from .core import EMPTY, OUTSIDE

SUBJECT = 1
OPPONENT = 2

LINE_LEN = 9
CENTER = 4
TABLE_SIZE = 1 << 16

_WINDOWS = tuple(tuple(range(s, s + 5)) for s in range(5))

# Peripheral cell positions and their 2-bit slot in the code.
_POSITIONS = (0, 1, 2, 3, 5, 6, 7, 8)
_SLOT_OF = {pos: slot for slot, pos in enumerate(_POSITIONS)}


class LineClass(IntEnum):
    """Line strength categories, weakest first."""

    GENERIC = 0
    SIMPLE_TWO = 1
    WEAK_TWO = 2
    DOUBLE_TWO = 3
    SIMPLE_THREE = 4
    WEAK_THREE = 5
    DOUBLE_THREE = 6
    SIMPLE_FOUR = 7
    DOUBLE_FOUR = 8
    SIMPLE_FIVE = 9


class CrossClass(IntEnum):
    NONE = 0
    C33 = 1
    C43 = 2
    C44 = 3


_ATTACK_MAKER = (LineClass.DOUBLE_THREE, LineClass.WEAK_THREE)


class LineDomainError(ValueError):
    pass


def encode_cells(cells: tuple[int, ...]) -> int:
    """Pack the 8 peripheral cells (positions 0-3, 5-8) into 16 bits."""
    if len(cells) != 8:
        raise LineDomainError("expected 8 peripheral cells")
    code = 0
    for slot, v in enumerate(cells):
        if not 0 <= v <= 3:
            raise LineDomainError(f"bad cell value {v}")
        code |= v << (2 * slot)
    return code


def decode_code(code: int) -> tuple[int, ...]:
    return tuple((code >> (2 * slot)) & 3 for slot in range(8))


def line_cells(code: int) -> tuple[int, ...]:
    """The full 9-cell line for a code, centre empty."""
    p = decode_code(code)
    return p[:4] + (EMPTY,) + p[4:]


def code_of_line(cells: tuple[int, ...]) -> int:
    if len(cells) != LINE_LEN or cells[CENTER] != EMPTY:
        raise LineDomainError("need 9 cells with an empty centre")
    return encode_cells(cells[:4] + cells[5:])


def legal_outside(code: int) -> bool:
    """Outside cells must be a contiguous run at either end, at most 4 total
    (any board direction has at least five on-board squares)."""
    cells = line_cells(code)
    left = 0
    while left < 4 and cells[left] == OUTSIDE:
        left += 1
    right = 0
    while right < 4 and cells[8 - right] == OUTSIDE:
        right += 1
    if left + right > 4:
        return False
    return all(
        cells[i] != OUTSIDE for i in range(LINE_LEN) if not (i < left or i > 8 - right)
    )


# --- tracker vectors ----------------------------------------------------------

def tracker_vector(cells: tuple[int, ...], a_start: int, b_start: int) -> tuple[int, ...]:
    """Count, per square, the empty appearances within the two blocks."""
    v = [0] * LINE_LEN
    for start in (a_start, b_start):
        for i in range(start, start + 5):
            if cells[i] == EMPTY:
                v[i] += 1
    return tuple(v)


def _tracker_type(v: tuple[int, ...], degree: int) -> int:
    """1 when the pair combines (disjoint shared empties), otherwise 2/3 per
    the case tables; only type 1 matters for classification."""
    ones = sum(1 for x in v if x == 1)
    twos = sum(1 for x in v if x == 2)
    if degree == 4:
        return 1 if ones == 2 else 2
    # degree 3: type 1 = one two and two ones; 2 = four ones; 3 = two twos
    if twos == 1 and ones == 2:
        return 1
    if twos == 2:
        return 3
    return 2


def _live_blocks(cells: tuple[int, ...]) -> list[tuple[int, int]]:
    """(start, degree) of blocks without opponent or outside cells and with at
    least one subject stone."""
    out = []
    for start in range(5):
        window = cells[start : start + 5]
        if any(v in (OPPONENT, OUTSIDE) for v in window):
            continue
        deg = sum(1 for v in window if v == SUBJECT)
        if deg:
            out.append((start, deg))
    return out


def _block_empties(cells: tuple[int, ...], start: int) -> tuple[int, ...]:
    return tuple(i for i in range(start, start + 5) if cells[i] == EMPTY)


def classify_filled_line(cells: tuple[int, ...], *_ignored) -> tuple[LineClass, tuple[int, ...]]:
    """Case analysis of a line as given (no hypothetical fill).

    Returns (class, payload): payload is the defence for the four/three
    attack classes and, for DOUBLE_FOUR, the intersected pair empties that
    the potential-line defence builds on.
    """
    if len(cells) != LINE_LEN:
        raise LineDomainError("need 9 cells")
    blocks = _live_blocks(cells)
    if not blocks:
        return LineClass.GENERIC, ()
    g = max(d for _, d in blocks)
    tops = [s for s, d in blocks if d == g]
    n = len(tops)

    if g >= 5:
        return LineClass.SIMPLE_FIVE, ()
    if g == 4:
        if n == 1:
            return LineClass.SIMPLE_FOUR, _block_empties(cells, tops[0])
        pair_sets = []
        for i in range(n):
            for j in range(i + 1, n):
                v = tracker_vector(cells, tops[i], tops[j])
                if _tracker_type(v, 4) == 1:
                    pair_sets.append({k for k, x in enumerate(v) if x})
        if pair_sets:
            inter = set.intersection(*pair_sets)
            return LineClass.DOUBLE_FOUR, tuple(sorted(inter))
        return LineClass.SIMPLE_FOUR, _block_empties(cells, tops[0])
    if g == 3:
        if n == 1:
            return LineClass.SIMPLE_THREE, ()
        defs = []
        for i in range(n):
            for j in range(i + 1, n):
                v = tracker_vector(cells, tops[i], tops[j])
                if _tracker_type(v, 3) == 1:
                    defs.append({k for k, x in enumerate(v) if x})
        if not defs:
            return LineClass.SIMPLE_THREE, ()
        inter = sorted(set.intersection(*defs))
        if len(inter) >= 3:
            return LineClass.WEAK_THREE, tuple(inter)
        return LineClass.DOUBLE_THREE, tuple(inter)
    if g == 2:
        if n == 1:
            return LineClass.SIMPLE_TWO, ()
        best = LineClass.SIMPLE_TWO
        for i, v in enumerate(cells):
            if v != EMPTY:
                continue
            probe = cells[:i] + (SUBJECT,) + cells[i + 1 :]
            sub, _ = classify_filled_line(probe)
            if sub == LineClass.DOUBLE_THREE:
                return LineClass.DOUBLE_TWO, ()
            if sub == LineClass.WEAK_THREE:
                best = LineClass.WEAK_TWO
        return best, ()
    return LineClass.GENERIC, ()


def classify_line(cells: tuple[int, ...], *_ignored) -> tuple[LineClass, tuple[int, ...]]:
    """Classify a potential line (empty centre) assuming the subject fills it.

    The defence comes back in potential-line semantics: an S5 is stopped only
    at the centre; a D4 is stopped in the defence of the weak three it still
    contains (the centre plus the intersected pair empties).
    """
    if len(cells) != LINE_LEN:
        raise LineDomainError("need 9 cells")
    if cells[CENTER] != EMPTY:
        raise LineDomainError("centre must be empty")
    filled = cells[:CENTER] + (SUBJECT,) + cells[CENTER + 1 :]
    cls, payload = classify_filled_line(filled)
    if cls == LineClass.SIMPLE_FIVE:
        return cls, (CENTER,)
    if cls == LineClass.DOUBLE_FOUR:
        return cls, tuple(sorted({CENTER, *payload}))
    return cls, payload


# --- the table -----------------------------------------------------------------

_MAGIC = b"QLNT"
_VERSION = 1


@dataclass
class LineTable:
    classes: np.ndarray  # uint8[65536]
    defences: np.ndarray  # int8[65536, 3], -1 padded
    swap: np.ndarray  # uint16[65536]: subject/opponent swapped code
    mirror: np.ndarray  # uint16[65536]: peripheral cells reversed

    def defence_offsets(self, code: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.defences[code] if x >= 0)


def _build_swap_tables() -> tuple[np.ndarray, np.ndarray]:
    codes = np.arange(TABLE_SIZE, dtype=np.uint32)
    swap = np.zeros(TABLE_SIZE, dtype=np.uint16)
    mirror = np.zeros(TABLE_SIZE, dtype=np.uint16)
    cells = np.zeros((TABLE_SIZE, 8), dtype=np.uint16)
    for slot in range(8):
        cells[:, slot] = (codes >> (2 * slot)) & 3
    swapped = cells.copy()
    swapped[cells == SUBJECT] = OPPONENT
    swapped[cells == OPPONENT] = SUBJECT
    for slot in range(8):
        swap |= swapped[:, slot].astype(np.uint16) << (2 * slot)
        mirror |= cells[:, 7 - slot].astype(np.uint16) << (2 * slot)
    return swap, mirror


def build_line_table() -> LineTable:
    """Classify all 2^16 codes; illegal outside placements become GENERIC."""
    classes = np.zeros(TABLE_SIZE, dtype=np.uint8)
    defences = np.full((TABLE_SIZE, 3), -1, dtype=np.int8)
    for code in range(TABLE_SIZE):
        if not legal_outside(code):
            continue
        cls, dfc = classify_line(line_cells(code))
        classes[code] = cls
        for i, off in enumerate(dfc[:3]):
            defences[code, i] = off
    swap, mirror = _build_swap_tables()
    return LineTable(classes, defences, swap, mirror)


def table_to_bytes(t: LineTable) -> bytes:
    body = bytearray()
    body += _MAGIC
    body += struct.pack("<HH", _VERSION, 0)
    records = np.zeros((TABLE_SIZE, 4), dtype=np.uint8)
    records[:, 0] = t.classes
    records[:, 1:] = t.defences.astype(np.int8).view(np.uint8)
    body += records.tobytes()
    body += struct.pack("<I", zlib.crc32(bytes(body)))
    return bytes(body)


def table_from_bytes(data: bytes) -> LineTable:
    if data[:4] != _MAGIC:
        raise LineDomainError("bad table magic")
    version, _ = struct.unpack_from("<HH", data, 4)
    if version != _VERSION:
        raise LineDomainError(f"unsupported table version {version}")
    (crc,) = struct.unpack_from("<I", data, len(data) - 4)
    if zlib.crc32(data[: len(data) - 4]) != crc:
        raise LineDomainError("table checksum mismatch")
    records = np.frombuffer(
        data, dtype=np.uint8, count=TABLE_SIZE * 4, offset=8
    ).reshape(TABLE_SIZE, 4)
    classes = records[:, 0].copy()
    defences = records[:, 1:].view(np.int8).copy()
    swap, mirror = _build_swap_tables()
    return LineTable(classes, defences, swap, mirror)


_cached_table: LineTable | None = None


def get_line_table(cache_path: str | Path | None = None) -> LineTable:
    """Process-wide table, rebuilt or loaded from the on-disk artifact."""
    global _cached_table
    if _cached_table is not None:
        return _cached_table
    import os

    path = Path(
        cache_path
        or os.environ.get("QUINTET_TABLE_CACHE")
        or Path.home() / ".cache" / "quintet" / f"line_table_v{_VERSION}.bin"
    )
    if path.exists():
        try:
            _cached_table = table_from_bytes(path.read_bytes())
            return _cached_table
        except (LineDomainError, ValueError):
            pass  # stale or corrupt cache: rebuild
    table = build_line_table()
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(table_to_bytes(table))
    except OSError:
        pass
    _cached_table = table
    return table


# --- cross patterns --------------------------------------------------------------

def cross_class(dir_classes) -> tuple[CrossClass, tuple[int, int] | None]:
    """Strongest qualifying pair among a square's four directional classes."""
    fours = [d for d, c in enumerate(dir_classes) if c == LineClass.SIMPLE_FOUR]
    threes = [d for d, c in enumerate(dir_classes) if c in _ATTACK_MAKER]
    if len(fours) >= 2:
        return CrossClass.C44, (fours[0], fours[1])
    if fours and threes:
        return CrossClass.C43, (fours[0], threes[0])
    if len(threes) >= 2:
        return CrossClass.C33, (threes[0], threes[1])
    return CrossClass.NONE, None


def potential_defence(lc: LineClass, code: int) -> tuple[int, ...]:
    """Defence offsets of a potential line. S5 is stopped only at the centre,
    a D4 in the three squares of its contained actual weak three."""
    cls, dfc = classify_line(line_cells(code))
    if cls != lc:
        raise LineDomainError(f"code classifies as {cls.name}, not {lc.name}")
    if lc not in (
        LineClass.SIMPLE_FIVE,
        LineClass.DOUBLE_FOUR,
        LineClass.SIMPLE_FOUR,
        LineClass.DOUBLE_THREE,
        LineClass.WEAK_THREE,
    ):
        raise LineDomainError(f"{lc.name} has no defined potential defence")
    return dfc


def c44_defence(code_a: int, code_b: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Defence of a potential C44: the intersection square (centre of both
    lines) plus each crossing four's own defence square."""
    out = []
    for code in (code_a, code_b):
        cls, dfc = classify_line(line_cells(code))
        if cls != LineClass.SIMPLE_FOUR:
            raise LineDomainError("C44 needs two simple-four lines")
        out.append(tuple(sorted({CENTER, *dfc})))
    return out[0], out[1]

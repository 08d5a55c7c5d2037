import os
from pathlib import Path

import pytest

os.environ.setdefault(
    "QUINTET_TABLE_CACHE", str(Path(__file__).parent / ".cache" / "line_table.bin")
)


@pytest.fixture(scope="session")
def line_table():
    from quintet.lines import get_line_table

    return get_line_table()

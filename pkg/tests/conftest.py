from typing import List, Sequence

import pytest

from app.core.degseq import DegreeSequence


def conjugate_by_definition(a: Sequence[int]) -> List[int]:
    """Corrected conjugate straight from the index-set definition, O(N^2)"""
    n = len(a)
    result = []
    for k in range(1, n + 1):
        before = sum(1 for i in range(1, k) if a[i - 1] >= k - 1)
        after = sum(1 for i in range(k + 1, n + 1) if a[i - 1] >= k)
        result.append(before + after)
    return result


@pytest.fixture
def three_cycle_seq() -> DegreeSequence:
    return DegreeSequence([(1, 1)] * 3)


@pytest.fixture
def four_ones_seq() -> DegreeSequence:
    return DegreeSequence([(1, 1)] * 4)


@pytest.fixture
def anchored_seq() -> DegreeSequence:
    return DegreeSequence([(3, 3), (2, 2), (2, 2), (2, 2)])


@pytest.fixture
def write_input(tmp_path):
    def _write(text: str, name: str = "degrees.txt"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write


@pytest.fixture
def conjugate_oracle():
    return conjugate_by_definition

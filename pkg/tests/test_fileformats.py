import pytest
from hypothesis import given
from hypothesis import strategies as st

from propchoose.cache import CacheConflict, CacheRecord, ResultCache
from propchoose.errors import InvalidArgument
from propchoose.fileformats import (format_assignment, parse_assignment, parse_coloring, read_assignment,
                                    read_coloring, write_assignment, write_coloring)
from propchoose.lists import ListAssignment
from propchoose.solver import NOT_CHOOSABLE, decide_choosable


@given(st.lists(st.sets(st.integers(1, 30), min_size=3, max_size=3), min_size=1, max_size=8))
def test_assignment_round_trip(lists):
    l = ListAssignment.of(lists)
    assert parse_assignment(format_assignment(l)) == l


def test_assignment_format():
    text = format_assignment(ListAssignment.of([{2, 1}, {1, 3}]))
    assert text == "k 2\n0: 1 2\n1: 1 3\n"


@pytest.mark.parametrize("text", ["k 2\n0: 1\n", "0: 1 2\n2: 1 2\n", "0 1 2\n", ""])
def test_bad_assignment_files(text):
    with pytest.raises(InvalidArgument):
        parse_assignment(text)


def test_file_helpers(tmp_path):
    l = ListAssignment.of([{1, 2}, {3, 4}])
    write_assignment(tmp_path / "a.txt", l)
    assert read_assignment(tmp_path / "a.txt") == l
    write_coloring(tmp_path / "c.txt", (3, 1, 2))
    assert read_coloring(tmp_path / "c.txt") == (3, 1, 2)
    assert parse_coloring("# comment\n0: 5\n1: 6\n") == (5, 6)


def test_cache_round_trip(tmp_path, K):
    path = tmp_path / "cache.txt"
    cache = ResultCache(path)
    verdict = decide_choosable(K(2, 2), 2)
    rec = cache.add_verdict(verdict)
    assert rec.outcome == NOT_CHOOSABLE and rec.witness_hash == verdict.witness_hash
    again = ResultCache(path)
    assert again.lookup("K2,2", 2) == rec
    again.add_verdict(decide_choosable(K(2, 2), 2))
    assert len(path.read_text().splitlines()) == 2


def test_cache_rejects_contradictions(tmp_path):
    cache = ResultCache(tmp_path / "cache.txt")
    cache.add(CacheRecord("K2,2", 2, "not-choosable", "abc"))
    with pytest.raises(CacheConflict):
        cache.add(CacheRecord("K2,2", 2, "choosable"))
    with pytest.raises(CacheConflict):
        cache.add(CacheRecord("K2,2", 2, "not-choosable", "def"))
    cache.add(CacheRecord("K2,2", 2, "undecided"))


def test_cache_record_line():
    rec = CacheRecord("K1,3", 3, "choosable", "-", 219, 5, "0.1.0", "2026-01-01T00:00:00")
    assert CacheRecord.parse(rec.line()) == rec

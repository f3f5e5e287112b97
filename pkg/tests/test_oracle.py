import itertools

import pytest

from sparsesuffix import InputError
from sparsesuffix.oracle import OracleRefused, guard, naive_lcp, naive_sort, naive_tree


def test_naive_lcp_examples():
    assert naive_lcp(b"banana", 2, 4) == 3
    assert naive_lcp(b"banana", 3, 3) == 4
    assert naive_lcp(b"ab", 1, 2) == 0
    with pytest.raises(InputError):
        naive_lcp(b"ab", 0, 1)


def test_naive_sort_examples():
    assert naive_sort(b"banana", [1, 3, 5]).sa == [1, 5, 3]
    assert naive_sort(b"banana", [2]).sa == [2]
    assert naive_sort(b"aaaa", [1, 2, 3, 4]).sa == [4, 3, 2, 1]


def test_naive_tree_small():
    tree = naive_tree(b"banana", [4])
    assert len(tree.root.children) == 1


TEXTS = [b"abracadabra", b"aaaaaaa", b"abababab", b"mississippi"]


@pytest.mark.parametrize("text", TEXTS)
def test_symmetry_and_shift_identity(text):
    n = len(text)
    for i, j in itertools.product(range(1, n + 1), repeat=2):
        lcp = naive_lcp(text, i, j)
        assert lcp == naive_lcp(text, j, i)
        for m in range(0, lcp + 1):
            if i + m <= n and j + m <= n:
                assert naive_lcp(text, i + m, j + m) + m == lcp


def test_guard():
    guard(10**4, 10**4)
    with pytest.raises(OracleRefused, match="oracle refused"):
        guard(10**5, 10**4)
    guard(10**5, 10**4, force=True)

import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from surfclass.errors import DimensionMismatchError
from surfclass.intlinalg import (
    FgAbelianGroup,
    IntMatrix,
    cokernel,
    group_format,
    minor_gcd_invariants,
    rank,
    rational_rank,
    smith_normal_form,
)


def M(rows):
    return IntMatrix.from_rows(rows)


def test_snf_examples():
    assert smith_normal_form(M([[1, 0], [0, 1]])) == (1, 1)
    assert smith_normal_form(M([[2, 4], [6, 8]])) == (2, 4)
    assert smith_normal_form(M([[0, 0, 0], [0, 0, 0], [0, 0, 0]])) == ()


def test_rank_examples():
    assert rank(M([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3
    assert rank(M([[2, 4], [6, 8]])) == 2
    assert rank(M([[0, 0]])) == 0


def test_cokernel_examples():
    g = cokernel(2, M([[2], [0]]))
    assert g == FgAbelianGroup(1, (2,))
    assert cokernel(3, IntMatrix.zeros(3, 0)) == FgAbelianGroup(3, ())
    assert cokernel(1, M([[1]])) == FgAbelianGroup(0, ())
    with pytest.raises(DimensionMismatchError):
        cokernel(3, M([[1], [2]]))


def test_cokernel_z2_by_coset_enumeration():
    # Z^2 / <(2,0)> truncated mod 4 has 4*4/2 = 8 cosets, matching
    # (Z (+) Z/2) truncated mod 4 with 4*2 = 8 elements
    sub = {((2 * k) % 4, 0) for k in range(4)}
    cosets = set()
    for x, y in product(range(4), range(4)):
        cosets.add(frozenset(((x + a) % 4, (y + b) % 4) for a, b in sub))
    assert len(cosets) == 8
    g = cokernel(2, M([[2], [0]]))
    assert 4 ** g.free_rank * (g.torsion[0] if g.torsion else 1) == 8


def test_group_format():
    assert group_format(FgAbelianGroup(2, ())) == "Z^2"
    assert group_format(FgAbelianGroup(1, (2,))) == "Z (+) Z/2"
    assert group_format(FgAbelianGroup(0, ())) == "0"
    assert group_format(FgAbelianGroup(0, (2, 4))) == "Z/2 (+) Z/4"


def test_divisibility_chain_enforced():
    with pytest.raises(ValueError):
        FgAbelianGroup(0, (3, 4))


small = st.integers(-9, 9)


@settings(max_examples=120, deadline=None)
@given(
    st.integers(1, 4),
    st.integers(1, 4),
    st.data(),
)
def test_snf_matches_minor_gcd_oracle(r, c, data):
    rows = [[data.draw(small) for _ in range(c)] for _ in range(r)]
    m = M(rows)
    assert smith_normal_form(m) == minor_gcd_invariants(m)


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_rank_matches_rational_rank(r, c, data):
    rows = [[data.draw(small) for _ in range(c)] for _ in range(r)]
    m = M(rows)
    assert rank(m) == rational_rank(m)


def test_snf_transpose_and_chain():
    rng = random.Random(2024)
    for _ in range(200):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        m = M([[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)])
        f = smith_normal_form(m)
        assert f == smith_normal_form(m.transpose())
        for a, b in zip(f, f[1:]):
            assert b % a == 0

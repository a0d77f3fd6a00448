from itertools import combinations, permutations

import pytest
from hypothesis import given, strategies as st

from parallelepipeds.permcalc import (
    OrderedSubset,
    Permutation,
    Sign,
    complement,
    count_inversions,
    deletion_sign,
    insertion_sign,
    perm_sign,
    sequence_sign,
    split_sign,
)


def brute_parity(seq):
    # bubble sort, counting swaps
    seq = list(seq)
    swaps = 0
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                swaps += 1
    return Sign.of_parity(swaps)


@pytest.mark.parametrize("image,expected", [((1, 2, 3), 1), ((2, 1), -1), ((3, 1, 2), 1)])
def test_perm_sign_examples(image, expected):
    assert int(perm_sign(image)) == expected


@pytest.mark.parametrize(
    "J,j,expected", [((1, 2), 2, 1), ((1, 2), 1, -1), ((1, 3, 5), 1, 1)]
)
def test_deletion_sign_examples(J, j, expected):
    assert int(deletion_sign(J, j)) == expected


@pytest.mark.parametrize("J,k,expected", [((1, 2), 3, 1), ((2, 3), 1, 1), ((1, 3), 2, -1)])
def test_insertion_sign_examples(J, k, expected):
    assert int(insertion_sign(J, k)) == expected


@pytest.mark.parametrize("n,J,expected", [(3, (1,), 1), (3, (2,), -1), (4, (3, 4), 1)])
def test_split_sign_examples(n, J, expected):
    assert int(split_sign(n, J)) == expected


def test_domain_errors():
    with pytest.raises(ValueError):
        deletion_sign((1, 2), 3)
    with pytest.raises(ValueError):
        insertion_sign((1, 2), 2)
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))
    with pytest.raises(ValueError):
        OrderedSubset(3, (2, 1))


def test_sign_arithmetic():
    assert Sign.PLUS * Sign.MINUS is Sign.MINUS
    assert -Sign.MINUS is Sign.PLUS
    assert Sign.MINUS * 3 == -3
    assert str(Sign.PLUS) == "+1" and str(Sign.MINUS) == "-1"
    assert Sign.of_parity(7) is Sign.MINUS


def test_signs_match_brute_force():
    for n in range(1, 6):
        for m in range(n + 1):
            for J in combinations(range(1, n + 1), m):
                for j in J:
                    rest = [i for i in J if i != j]
                    assert deletion_sign(J, j) is brute_parity(rest + [j])
                for k in complement(n, J):
                    assert insertion_sign(J, k) is brute_parity(list(J) + [k])
                assert split_sign(n, J) is brute_parity(list(J) + list(complement(n, J)))


@given(st.permutations(list(range(1, 8))))
def test_perm_sign_is_inversion_parity(p):
    assert perm_sign(p) is brute_parity(p)
    assert count_inversions(p) == Permutation(tuple(p)).inversions()


@given(st.permutations(list(range(1, 6))), st.permutations(list(range(1, 6))))
def test_sign_is_multiplicative(p, q):
    P, Q = Permutation(tuple(p)), Permutation(tuple(q))
    assert perm_sign(P.compose(Q)) is perm_sign(P) * perm_sign(Q)


def test_ordered_subset_ops():
    J = OrderedSubset(5, (1, 3, 4))
    assert J.position(3) == 2
    assert tuple(J.complement()) == (2, 5)
    assert tuple(J.without(3)) == (1, 4)
    assert tuple(J.with_(2)) == (1, 2, 3, 4)
    assert sequence_sign((2, 1, 3)) is Sign.MINUS

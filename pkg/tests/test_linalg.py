import random
from fractions import Fraction

import sympy

from sghilb.linalg import EchelonForm, dense_rank, rank


def _random_matrix(rng, r, c, low_rank=False):
    if low_rank:
        k = rng.randint(0, min(r, c))
        A = [[rng.randint(-4, 4) for _ in range(k)] for _ in range(r)]
        B = [[rng.randint(-4, 4) for _ in range(c)] for _ in range(k)]
        return [[sum(A[i][s] * B[s][j] for s in range(k)) for j in range(c)] for i in range(r)]
    return [[Fraction(rng.randint(-6, 6), rng.randint(1, 3)) if rng.random() < 0.5 else 0 for _ in range(c)]
            for _ in range(r)]


def test_dense_rank_against_sympy():
    rng = random.Random(11)
    for trial in range(60):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        M = _random_matrix(rng, r, c, low_rank=trial % 2 == 0)
        assert dense_rank(M) == sympy.Matrix(M).rank()


def test_sparse_rows_and_echelon():
    rows = [{0: 1, 2: 1}, {1: 2, 2: 2}, {0: 1, 1: 1, 2: 2}]
    assert rank(rows) == 2
    ech = EchelonForm()
    assert ech.add({0: Fraction(1, 2)})
    assert not ech.add({0: 3})
    assert ech.rank == 1
    assert rank([]) == 0

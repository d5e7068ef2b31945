# selftest_helpers.py
#
# Random generators and independent oracles shared by the selftest and the
# pytest suite.

from __future__ import annotations

import random
from fractions import Fraction

from .exact_algebra import IntMatrix, SnfDecomposition
from .heisenberg import HeisElement, from_unitriangular, unitriangular


# ----------------------------------------------------------------------
# Random values
# ----------------------------------------------------------------------

def random_int_matrix(rng: random.Random, rows: int, cols: int, bound: int) -> IntMatrix:
    return IntMatrix.from_rows(
        [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)], cols=cols
    )


def random_rational(rng: random.Random, bound: int = 9) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_heis(rng: random.Random, bound: int = 9, integral: bool = False) -> HeisElement:
    a = rng.randint(-bound, bound) if integral else random_rational(rng, bound)
    return HeisElement(a, rng.randint(-bound, bound), rng.randint(-bound, bound))


def random_cochain(rng: random.Random, rank: int = 2, bound: int = 3):
    """
    A normalized 1-cochain on Z², g(p,q) = p·u + q·v + pq·w + p²·z, with
    random integer vectors u, v, w, z; g(0,0) = 0.
    """
    coeffs = [[rng.randint(-bound, bound) for _ in range(rank)] for _ in range(4)]

    def g(x):
        p, q = x
        weights = (p, q, p * q, p * p)
        return tuple(sum(w * c[i] for w, c in zip(weights, coeffs)) for i in range(rank))

    return g


# ----------------------------------------------------------------------
# Unitriangular matrix oracle
# ----------------------------------------------------------------------

def mat3_mul(x, y):
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )


def mat3_inv(x):
    # inverse of [[1,b,a],[0,1,c],[0,0,1]]
    b, a, c = x[0][1], x[0][2], x[1][2]
    one, zero = Fraction(1), Fraction(0)
    return ((one, -b, b * c - a), (zero, one, -c), (zero, zero, one))


def oracle_mul(g: HeisElement, h: HeisElement) -> HeisElement:
    return from_unitriangular(mat3_mul(unitriangular(g), unitriangular(h)))


def oracle_inv(g: HeisElement) -> HeisElement:
    return from_unitriangular(mat3_inv(unitriangular(g)))


def oracle_pow(g: HeisElement, n: int) -> HeisElement:
    m = unitriangular(g) if n >= 0 else mat3_inv(unitriangular(g))
    result = unitriangular(HeisElement(0, 0, 0))
    for _ in range(abs(n)):
        result = mat3_mul(result, m)
    return from_unitriangular(result)


def oracle_conj(g: HeisElement, h: HeisElement) -> HeisElement:
    return oracle_mul(oracle_mul(g, h), oracle_inv(g))


def oracle_comm(g: HeisElement, h: HeisElement) -> HeisElement:
    return oracle_mul(oracle_conj(g, h), oracle_inv(h))


# ----------------------------------------------------------------------
# Smith normal form contract
# ----------------------------------------------------------------------

def snf_contract_violations(A: IntMatrix, snf: SnfDecomposition) -> list[str]:
    """Empty when U·A·V = S, U and V are unimodular, and S is a divisibility chain."""
    problems = []
    if snf.U @ A @ snf.V != snf.S:
        problems.append("U·A·V != S")
    if snf.U.det() not in (1, -1) or snf.V.det() not in (1, -1):
        problems.append("transform not unimodular")
    if not (snf.U @ snf.U_inv).is_identity() or not (snf.V @ snf.V_inv).is_identity():
        problems.append("recorded inverses are wrong")
    for i in range(snf.S.rows):
        for j in range(snf.S.cols):
            if i != j and snf.S[i, j] != 0:
                problems.append("S not diagonal")
                break
    diag = snf.diagonal
    if any(d < 0 for d in diag):
        problems.append("negative diagonal entry")
    for d, e in zip(diag, diag[1:]):
        if (d == 0 and e != 0) or (d != 0 and e % d != 0):
            problems.append(f"divisibility fails at {d} | {e}")
    return problems

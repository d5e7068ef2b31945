# exact_algebra.py
#
# Exact integer matrices, Smith normal form with transforms, and finitely
# generated abelian groups given as cokernels. Entries are Python ints
# (arbitrary precision); nothing here touches floating point.

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotInvertible

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# IntMatrix
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class IntMatrix:
    """
    Immutable integer matrix, stored row-major as a tuple of row tuples.

    The column count is stored explicitly so that 0×n and n×0 matrices keep
    their shape.
    """

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch(
                f"entry grid does not match declared shape {self.rows}x{self.cols}"
            )

    # ------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        grid = tuple(tuple(int(v) for v in r) for r in rows)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        return cls(len(grid), cols, grid)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def hstack(cls, blocks: Sequence["IntMatrix"], rows: int) -> "IntMatrix":
        """Place blocks side by side; `rows` fixes the shape when blocks is empty."""
        for b in blocks:
            if b.rows != rows:
                raise DimensionMismatch("hstack blocks must share a row count")
        grid = [sum((b.entries[i] for b in blocks), ()) for i in range(rows)]
        return cls.from_rows(grid, cols=sum(b.cols for b in blocks))

    @classmethod
    def vstack(cls, blocks: Sequence["IntMatrix"], cols: int) -> "IntMatrix":
        for b in blocks:
            if b.cols != cols:
                raise DimensionMismatch("vstack blocks must share a column count")
        grid = [row for b in blocks for row in b.entries]
        return cls.from_rows(grid, cols=cols)

    # ------------------------------------------------------------
    # Access
    # ------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_identity(self) -> bool:
        return self == IntMatrix.identity(self.rows) if self.is_square() else False

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.entries for v in r)

    # ------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix.from_rows(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            cols=self.cols,
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix.from_rows(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            cols=self.cols,
        )

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix.from_rows([[k * a for a in r] for r in self.entries], cols=self.cols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        cols_other = [other.column(j) for j in range(other.cols)]
        grid = [
            [sum(a * b for a, b in zip(r, c)) for c in cols_other]
            for r in self.entries
        ]
        return IntMatrix.from_rows(grid, cols=other.cols)

    def apply(self, vector: Sequence) -> tuple:
        """Matrix times column vector. Works for int and Fraction entries alike."""
        if len(vector) != self.cols:
            raise DimensionMismatch(
                f"vector of length {len(vector)} against {self.rows}x{self.cols} matrix"
            )
        return tuple(sum(a * v for a, v in zip(r, vector)) for r in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(
            [self.column(j) for j in range(self.cols)], cols=self.rows
        )

    def det(self) -> int:
        if not self.is_square():
            raise DimensionMismatch("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        if n == 1:
            return self.entries[0][0]
        if n == 2:
            (a, b), (c, d) = self.entries
            return a * d - b * c
        return int(self.to_sympy().det())

    def inverse_unimodular(self) -> "IntMatrix":
        """Integer inverse of a matrix with determinant ±1."""
        d = self.det()
        if d not in (1, -1):
            raise NotInvertible(f"determinant {d} is not ±1")
        if self.rows == 2:
            (a, b), (c, e) = self.entries
            return IntMatrix.from_rows([[d * e, -d * b], [-d * c, d * a]])
        inv = self.to_sympy().inv()
        return IntMatrix.from_rows([[int(v) for v in inv.row(i)] for i in range(self.rows)])

    def power(self, n: int) -> "IntMatrix":
        """Integer power; negative exponents require a unimodular matrix."""
        base = self if n >= 0 else self.inverse_unimodular()
        result = IntMatrix.identity(self.rows)
        for _ in range(abs(n)):
            result = result @ base
        return result

    # ------------------------------------------------------------
    # sympy bridge
    # ------------------------------------------------------------

    def to_sympy(self):
        from sympy import Matrix

        if self.rows == 0 or self.cols == 0:
            return Matrix.zeros(self.rows, self.cols)
        return Matrix(self.to_lists())

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch(
                f"shape {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __repr__(self):
        return f"IntMatrix({self.to_lists()!r})"


def as_int_matrix(value) -> IntMatrix:
    """Accept an IntMatrix or a row-major nested sequence of integers."""
    if isinstance(value, IntMatrix):
        return value
    rows = [list(r) for r in value]
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise DimensionMismatch(f"ragged matrix rows: {rows!r}")
    for r in rows:
        for v in r:
            if isinstance(v, bool) or int(v) != v:
                raise DimensionMismatch(f"non-integer matrix entry {v!r}")
    return IntMatrix.from_rows(rows)


# ----------------------------------------------------------------------
# Smith normal form
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SnfDecomposition:
    """
    U·A·V = S with U, V unimodular and S diagonal, d1 | d2 | ... | dk, di ≥ 0.

    The inverses of U and V are recorded as well; they are exact byproducts
    of the elimination and are needed to lift normal-form coordinates.
    """

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i, i] for i in range(min(self.S.rows, self.S.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


class _Reducer:
    """
    Mutable workspace for the elimination. Every row operation on S is
    mirrored on U (and inversely on U_inv); every column operation on S is
    mirrored on V (and inversely on V_inv).
    """

    def __init__(self, matrix: IntMatrix):
        n, m = matrix.rows, matrix.cols
        self.n, self.m = n, m
        self.S = matrix.to_lists()
        self.U = IntMatrix.identity(n).to_lists()
        self.U_inv = IntMatrix.identity(n).to_lists()
        self.V = IntMatrix.identity(m).to_lists()
        self.V_inv = IntMatrix.identity(m).to_lists()

    # row t += k * row s
    def add_row(self, t, s, k):
        if k == 0:
            return
        for M in (self.S, self.U):
            rt, rs = M[t], M[s]
            for j in range(len(rt)):
                rt[j] += k * rs[j]
        for row in self.U_inv:
            row[s] -= k * row[t]

    # column t += k * column s
    def add_col(self, t, s, k):
        if k == 0:
            return
        for M in (self.S, self.V):
            for row in M:
                row[t] += k * row[s]
        rs, rt = self.V_inv[s], self.V_inv[t]
        for j in range(len(rs)):
            rs[j] -= k * rt[j]

    def swap_rows(self, a, b):
        if a == b:
            return
        for M in (self.S, self.U):
            M[a], M[b] = M[b], M[a]
        for row in self.U_inv:
            row[a], row[b] = row[b], row[a]

    def swap_cols(self, a, b):
        if a == b:
            return
        for M in (self.S, self.V):
            for row in M:
                row[a], row[b] = row[b], row[a]
        self.V_inv[a], self.V_inv[b] = self.V_inv[b], self.V_inv[a]

    def negate_row(self, t):
        for M in (self.S, self.U):
            M[t] = [-v for v in M[t]]
        for row in self.U_inv:
            row[t] = -row[t]

    # ------------------------------------------------------------

    def smallest_in_block(self, t):
        best = None
        for i in range(t, self.n):
            for j in range(t, self.m):
                v = self.S[i][j]
                if v != 0 and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        return best

    def smallest_in_edging(self, t):
        best = (abs(self.S[t][t]), t, t)
        for i in range(t + 1, self.n):
            v = self.S[i][t]
            if v != 0 and abs(v) < best[0]:
                best = (abs(v), i, t)
        for j in range(t + 1, self.m):
            v = self.S[t][j]
            if v != 0 and abs(v) < best[0]:
                best = (abs(v), t, j)
        return best

    def clear_edging(self, t):
        """Reduce column t and row t by the pivot; True when both are zero."""
        p = self.S[t][t]
        clean = True
        for i in range(t + 1, self.n):
            self.add_row(i, t, -(self.S[i][t] // p))
            clean = clean and self.S[i][t] == 0
        for j in range(t + 1, self.m):
            self.add_col(j, t, -(self.S[t][j] // p))
            clean = clean and self.S[t][j] == 0
        return clean

    def non_divisible_row(self, t):
        p = self.S[t][t]
        for i in range(t + 1, self.n):
            for j in range(t + 1, self.m):
                if self.S[i][j] % p != 0:
                    return i
        return None

    def run(self):
        for t in range(min(self.n, self.m)):
            best = self.smallest_in_block(t)
            if best is None:
                break
            _, i, j = best
            self.swap_rows(t, i)
            self.swap_cols(t, j)

            while True:
                if not self.clear_edging(t):
                    _, i, j = self.smallest_in_edging(t)
                    self.swap_rows(t, i)
                    self.swap_cols(t, j)
                    continue
                r = self.non_divisible_row(t)
                if r is None:
                    break
                # pull a non-multiple into row t; the next clear shrinks the pivot
                self.add_row(t, r, 1)

            if self.S[t][t] < 0:
                self.negate_row(t)

    def decomposition(self) -> SnfDecomposition:
        return SnfDecomposition(
            U=IntMatrix.from_rows(self.U, cols=self.n),
            S=IntMatrix.from_rows(self.S, cols=self.m),
            V=IntMatrix.from_rows(self.V, cols=self.m),
            U_inv=IntMatrix.from_rows(self.U_inv, cols=self.n),
            V_inv=IntMatrix.from_rows(self.V_inv, cols=self.m),
        )


def smith_normal_form(matrix: IntMatrix) -> SnfDecomposition:
    """
    Smith normal form by Euclidean row/column reduction with a smallest-pivot
    heuristic. Empty matrices return empty decompositions.
    """
    reducer = _Reducer(matrix)
    reducer.run()
    snf = reducer.decomposition()
    logger.debug(
        "SNF of %dx%d matrix: diagonal %s", matrix.rows, matrix.cols, snf.diagonal
    )
    return snf


# ----------------------------------------------------------------------
# Finitely generated abelian groups
# ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FgAbelianGroup:
    """
    Z^n / L in normal form: invariant factors (0 marks a free summand, factors
    of 1 dropped) plus the reduction data mapping ambient vectors in Z^n to
    normal-form coordinates.

    projection: k×n rows of U for the kept positions.
    section:    n×k columns of U⁻¹ for the kept positions.

    Two groups compare equal iff their invariant factor lists agree.
    """

    invariant_factors: tuple[int, ...]
    projection: IntMatrix
    section: IntMatrix

    @property
    def ambient_rank(self) -> int:
        return self.projection.cols

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d == 0)

    @property
    def torsion_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d != 0)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if not self.is_finite():
            return None
        return self.torsion_order()

    def torsion_order(self) -> int:
        result = 1
        for d in self.torsion_factors:
            result *= d
        return result

    # ------------------------------------------------------------
    # Coordinates
    # ------------------------------------------------------------

    def normalize(self, coords: Sequence[int]) -> tuple[int, ...]:
        self._check_arity(coords)
        return tuple(
            v % d if d else v for v, d in zip(coords, self.invariant_factors)
        )

    def reduce(self, vector: Sequence[int]) -> tuple[int, ...]:
        """Ambient vector → normal-form coordinates."""
        if len(vector) != self.ambient_rank:
            raise DimensionMismatch(
                f"ambient vector of length {len(vector)}, expected {self.ambient_rank}"
            )
        return self.normalize(self.projection.apply(vector))

    def lift(self, coords: Sequence[int]) -> tuple[int, ...]:
        """Normal-form coordinates → an ambient representative."""
        self._check_arity(coords)
        return self.section.apply(coords)

    def add(self, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
        self._check_arity(u)
        return self.normalize([a + b for a, b in zip(u, v)])

    def neg(self, u: Sequence[int]) -> tuple[int, ...]:
        return self.normalize([-a for a in u])

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.invariant_factors)

    def element_order(self, coords: Sequence[int]) -> int | None:
        coords = self.normalize(coords)
        if not is_torsion(self, coords):
            return None
        order = 1
        for v, d in zip(coords, self.invariant_factors):
            if d:
                order = lcm(order, d // gcd(d, v))
        return order

    def torsion_elements(self) -> list[tuple[int, ...]]:
        """All elements of the torsion subgroup, in lexicographic coordinate order."""
        elements = [()]
        for d in self.invariant_factors:
            choices = range(d) if d else (0,)
            elements = [e + (v,) for e in elements for v in choices]
        return elements

    def describe(self) -> str:
        """Human form, e.g. 'Z x Z_6'; the trivial group is '0'."""
        if self.is_trivial():
            return "0"
        parts = ["Z" if d == 0 else f"Z_{d}" for d in self.invariant_factors]
        free = [p for p in parts if p == "Z"]
        return " x ".join(free + [p for p in parts if p != "Z"])

    def _check_arity(self, coords):
        if len(coords) != len(self.invariant_factors):
            raise DimensionMismatch(
                f"{len(coords)} coordinates for a group with "
                f"{len(self.invariant_factors)} invariant factors"
            )

    # ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, FgAbelianGroup):
            return NotImplemented
        return self.invariant_factors == other.invariant_factors

    def __hash__(self):
        return hash(self.invariant_factors)

    def __repr__(self):
        return f"FgAbelianGroup({list(self.invariant_factors)})"


def cokernel(relations: IntMatrix) -> FgAbelianGroup:
    """
    Z^n / column-span(relations), where n is the row count.
    """
    n = relations.rows
    snf = smith_normal_form(relations)
    diag = snf.diagonal
    factors = [diag[i] if i < len(diag) else 0 for i in range(n)]
    kept = [i for i, d in enumerate(factors) if d != 1]

    projection = IntMatrix.from_rows([snf.U.entries[i] for i in kept], cols=n)
    section = IntMatrix.from_rows(
        [[snf.U_inv[r, i] for i in kept] for r in range(n)], cols=len(kept)
    )
    return FgAbelianGroup(
        invariant_factors=tuple(factors[i] for i in kept),
        projection=projection,
        section=section,
    )


def free_group_of_rank(n: int) -> FgAbelianGroup:
    return cokernel(IntMatrix.zeros(n, 0))


def trivial_group(ambient_rank: int = 0) -> FgAbelianGroup:
    return cokernel(IntMatrix.identity(ambient_rank))


def is_torsion(group: FgAbelianGroup, coords: Sequence[int]) -> bool:
    """True iff the element has finite order (all free coordinates vanish)."""
    group._check_arity(coords)
    return all(v == 0 for v, d in zip(coords, group.invariant_factors) if d == 0)


# ----------------------------------------------------------------------
# Kernels and subquotients over Z
# ----------------------------------------------------------------------

def kernel_basis(matrix: IntMatrix) -> IntMatrix:
    """
    Columns form a Z-basis of ker(matrix) ⊆ Z^cols (a saturated sublattice).
    """
    snf = smith_normal_form(matrix)
    r = snf.rank
    return IntMatrix.from_rows(
        [row[r:] for row in snf.V.entries], cols=matrix.cols - r
    )


def subquotient(outgoing: IntMatrix, incoming: IntMatrix) -> FgAbelianGroup:
    """
    ker(outgoing) / im(incoming), for outgoing·incoming = 0.

    Coordinates are taken in the kernel basis given by the trailing columns
    of V; V⁻¹ converts the incoming image into those coordinates.
    """
    if outgoing.cols != incoming.rows:
        raise DimensionMismatch(
            f"cannot compose {outgoing.rows}x{outgoing.cols} after "
            f"{incoming.rows}x{incoming.cols}"
        )
    if not (outgoing @ incoming).is_zero():
        raise DimensionMismatch("subquotient needs outgoing·incoming = 0")

    snf = smith_normal_form(outgoing)
    r = snf.rank
    coords = snf.V_inv @ incoming
    relations = IntMatrix.from_rows(coords.entries[r:], cols=incoming.cols)
    return cokernel(relations)


# ----------------------------------------------------------------------
# Rational linear algebra (sympy)
# ----------------------------------------------------------------------

def to_fraction(value) -> Fraction:
    """sympy Rational / int / Fraction → Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(int(value.p), int(value.q))


def solve_linear_rational(
    matrix: Sequence[Sequence], rhs: Sequence
) -> tuple[Fraction, ...] | None:
    """
    Some x with A·x = b over Q, or None when the system is inconsistent.
    Free parameters are set to zero.
    """
    from sympy import Matrix, Rational

    rows = [list(r) for r in matrix]
    if len(rows) != len(rhs):
        raise DimensionMismatch(f"{len(rows)} equations but {len(rhs)} right-hand sides")
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise DimensionMismatch("ragged coefficient matrix")
    cols = widths.pop() if widths else 0

    if not rows:
        return (Fraction(0),) * cols
    if cols == 0:
        return () if all(v == 0 for v in rhs) else None

    def q(v):
        v = Fraction(v)
        return Rational(v.numerator, v.denominator)

    A = Matrix([[q(v) for v in r] for r in rows])
    b = Matrix([q(v) for v in rhs])
    try:
        solution, params = A.gauss_jordan_solve(b)
    except ValueError:
        return None
    solution = solution.xreplace({p: 0 for p in params})
    return tuple(to_fraction(v) for v in solution)


def left_nullspace_rational(matrix: IntMatrix) -> tuple[tuple[Fraction, ...], ...]:
    """
    Rows L with L·matrix = 0 spanning the rational left nullspace; L·v is then
    a coordinate system on Q^rows / column-span(matrix).
    """
    if matrix.cols == 0:
        return tuple(
            tuple(Fraction(int(i == j)) for j in range(matrix.rows))
            for i in range(matrix.rows)
        )
    if matrix.rows == 0:
        return ()
    basis = matrix.to_sympy().T.nullspace()
    return tuple(tuple(to_fraction(v) for v in vec) for vec in basis)


def apply_rows(rows: Iterable[Sequence], vector: Sequence) -> tuple:
    return tuple(sum(Fraction(a) * b for a, b in zip(r, vector)) for r in rows)

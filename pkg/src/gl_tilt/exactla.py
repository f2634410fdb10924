"""Exact linear algebra over the rationals and prime fields.

Matrices are sympy ``DomainMatrix`` instances over ``QQ`` or ``GF(q)``; vectors are
plain lists of domain elements. Everything here is exact: there is no floating point
anywhere in the toolkit.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy import GF, QQ, Rational, isprime
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

from .errors import ConfigurationError, DimensionMismatchError

Matrix = DomainMatrix
Vector = List


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: ``rational`` for QQ or ``prime`` for GF(q)."""

    kind: str = "rational"
    q: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("rational", "prime"):
            raise ConfigurationError(f"Unknown field kind '{self.kind}'")
        if self.kind == "prime":
            if self.q is None or not isprime(self.q):
                raise ConfigurationError(f"Prime field needs a prime q, got {self.q}")
        elif self.q is not None:
            raise ConfigurationError("The rational field takes no characteristic")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``Q``/``QQ``/``rational`` or ``GF(q)``/``Fq``/``q`` into a field."""
        cleaned = text.strip()
        if cleaned.lower() in ("q", "qq", "rational", "rationals"):
            return cls("rational")
        for prefix in ("GF(", "gf(", "F", "f"):
            if cleaned.startswith(prefix):
                cleaned = cleaned[len(prefix) :].rstrip(")")
                break
        try:
            return cls("prime", int(cleaned))
        except ValueError as e:
            raise ConfigurationError(f"Cannot parse field '{text}'") from e

    @property
    def domain(self) -> Domain:
        return QQ if self.kind == "rational" else GF(self.q)

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "rational" else self.q

    def element(self, value):
        """Convert an int, Fraction-like or sympy Rational into the field."""
        K = self.domain
        if isinstance(value, Rational) or hasattr(value, "numerator"):
            num, den = int(value.numerator), int(value.denominator)
            if self.kind == "prime" and den % self.q == 0:
                raise ConfigurationError(f"{value} has no image in GF({self.q})")
            return K(num) / K(den)
        return K(int(value))

    def __str__(self) -> str:
        return "QQ" if self.kind == "rational" else f"GF({self.q})"


RATIONALS = FieldSpec()


def matrix(rows: Sequence[Sequence], K: Domain, shape: Optional[Tuple[int, int]] = None) -> Matrix:
    """Build a dense matrix from rows of domain elements.

    ``shape`` is needed when there are no rows (or rows are empty).
    """
    rows = [list(r) for r in rows]
    if shape is None:
        shape = (len(rows), len(rows[0]) if rows else 0)
    if len(rows) != shape[0] or any(len(r) != shape[1] for r in rows):
        raise DimensionMismatchError(f"Rows do not match shape {shape}")
    if shape[0] == 0:
        return DomainMatrix.zeros(shape, K)
    return DomainMatrix(rows, shape, K).to_dense()


def zeros(r: int, c: int, K: Domain) -> Matrix:
    return DomainMatrix.zeros((r, c), K).to_dense()


def identity(n: int, K: Domain) -> Matrix:
    return DomainMatrix.eye(n, K).to_dense()


def entries(m: Matrix) -> List[List]:
    r, c = m.shape
    if r == 0:
        return []
    if c == 0:
        return [[] for _ in range(r)]
    return m.to_dense().to_list()


def column(vector: Sequence, K: Domain) -> Matrix:
    return matrix([[x] for x in vector], K, (len(vector), 1))


def from_columns(vectors: Sequence[Sequence], n: int, K: Domain) -> Matrix:
    """The n x len(vectors) matrix whose columns are the given vectors."""
    cols = [list(v) for v in vectors]
    if any(len(v) != n for v in cols):
        raise DimensionMismatchError(f"Columns must have length {n}")
    return matrix([[v[i] for v in cols] for i in range(n)], K, (n, len(cols)))


def columns(m: Matrix) -> List[List]:
    rows = entries(m)
    return [[row[j] for row in rows] for j in range(m.shape[1])]


def hstack(blocks: Sequence[Matrix], rows: int, K: Domain) -> Matrix:
    """Horizontal concatenation; tolerates zero-width blocks."""
    out = [[] for _ in range(rows)]
    width = 0
    for b in blocks:
        if b.shape[0] != rows:
            raise DimensionMismatchError(f"hstack: block has {b.shape[0]} rows, expected {rows}")
        for i, row in enumerate(entries(b)):
            out[i].extend(row)
        width += b.shape[1]
    return matrix(out, K, (rows, width))


def vstack(blocks: Sequence[Matrix], cols: int, K: Domain) -> Matrix:
    """Vertical concatenation; tolerates zero-height blocks."""
    out = []
    for b in blocks:
        if b.shape[1] != cols:
            raise DimensionMismatchError(f"vstack: block has {b.shape[1]} cols, expected {cols}")
        out.extend(entries(b))
    return matrix(out, K, (len(out), cols))


def block_diag(blocks: Sequence[Matrix], K: Domain) -> Matrix:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = [[K.zero] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(entries(b)):
            out[r0 + i][c0 : c0 + b.shape[1]] = row
        r0 += b.shape[0]
        c0 += b.shape[1]
    return matrix(out, K, (rows, cols))


def submatrix(m: Matrix, row_idx: Sequence[int], col_idx: Sequence[int]) -> Matrix:
    rows = entries(m)
    return matrix([[rows[i][j] for j in col_idx] for i in row_idx], m.domain, (len(row_idx), len(col_idx)))


def mul(a: Matrix, b: Matrix) -> Matrix:
    """Matrix product that also accepts zero inner or outer dimensions."""
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatchError(f"Cannot multiply {a.shape} by {b.shape}")
    if 0 in a.shape or 0 in b.shape:
        return zeros(a.shape[0], b.shape[1], a.domain)
    return (a * b).to_dense()


def apply(m: Matrix, vector: Sequence) -> List:
    if m.shape[1] != len(vector):
        raise DimensionMismatchError(f"Vector of length {len(vector)} for a matrix of shape {m.shape}")
    K = m.domain
    return [sum((a * x for a, x in zip(row, vector)), K.zero) for row in entries(m)] if m.shape[1] else [K.zero] * m.shape[0]


def is_zero(m: Matrix) -> bool:
    return all(x == m.domain.zero for row in entries(m) for x in row)


def rref(m: Matrix) -> Tuple[Matrix, Tuple[int, ...]]:
    if 0 in m.shape:
        return m, ()
    reduced, pivots = m.to_dense().rref()
    return reduced, tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def rank_kernel(m: Matrix) -> Tuple[int, List[List]]:
    """Rank of m and a basis of {x : m x = 0}.

    Args:
        m: Any matrix, possibly with zero rows or columns

    Returns:
        (rank, kernel_basis) with rank + len(kernel_basis) == number of columns
    """
    K = m.domain
    n = m.shape[1]
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    rows = entries(reduced)
    basis = []
    for free in (j for j in range(n) if j not in pivot_set):
        v = [K.zero] * n
        v[free] = K.one
        for i, p in enumerate(pivots):
            v[p] = -rows[i][free]
        basis.append(v)
    return len(pivots), basis


def kernel(m: Matrix) -> List[List]:
    return rank_kernel(m)[1]


def kernel_matrix(m: Matrix) -> Matrix:
    """Columns form a basis of ker m."""
    return from_columns(kernel(m), m.shape[1], m.domain)


def left_kernel_matrix(m: Matrix) -> Matrix:
    """Rows form a basis of {y : y m = 0}."""
    basis = kernel(m.transpose())
    return matrix(basis, m.domain, (len(basis), m.shape[0]))


def solve(m: Matrix, b: Sequence) -> Optional[List]:
    """A solution x of m x = b, or None when the system is inconsistent.

    Raises:
        DimensionMismatchError: If len(b) differs from the number of rows
    """
    r, n = m.shape
    if len(b) != r:
        raise DimensionMismatchError(f"Right-hand side has length {len(b)}, matrix has {r} rows")
    K = m.domain
    aug = hstack([m, column(b, K)], r, K)
    reduced, pivots = rref(aug)
    if n in pivots:
        return None
    rows = entries(reduced)
    x = [K.zero] * n
    for i, p in enumerate(pivots):
        x[p] = rows[i][n]
    return x


def solve_matrix(m: Matrix, rhs: Matrix) -> Optional[Matrix]:
    """X with m X = rhs, column by column, or None if some column is inconsistent."""
    K = m.domain
    sols = []
    for col in columns(rhs):
        x = solve(m, col)
        if x is None:
            return None
        sols.append(x)
    return from_columns(sols, m.shape[1], K)


def solve_left(m: Matrix, rhs: Matrix) -> Optional[Matrix]:
    """X with X m = rhs, or None."""
    sol = solve_matrix(m.transpose(), rhs.transpose())
    return None if sol is None else sol.transpose()


def equalizer_basis(pairs: Sequence[Tuple[Matrix, Matrix]], dim: int, K: Domain) -> List[List]:
    """Basis of {x : A_i x = B_i x for all i}.

    Args:
        pairs: (A_i, B_i) acting on a common source of dimension ``dim``
        dim: Source dimension, needed when ``pairs`` is empty
        K: Ground domain

    Raises:
        DimensionMismatchError: If a pair disagrees on shape or source dimension
    """
    diffs = []
    for a, b in pairs:
        if a.shape != b.shape or a.shape[1] != dim:
            raise DimensionMismatchError(f"Constraint pair of shapes {a.shape}, {b.shape} on source {dim}")
        diffs.append((a - b).to_dense() if 0 not in a.shape else a)
    if not diffs:
        return [[K.one if i == j else K.zero for i in range(dim)] for j in range(dim)]
    stacked = vstack(diffs, dim, K)
    return kernel(stacked)


def complement(span: Matrix, ambient: Optional[Matrix] = None) -> Matrix:
    """Columns extending the column space of ``span`` to that of ``ambient``.

    ``ambient`` defaults to the identity, giving a complement in the whole space. The
    returned columns are taken from ``ambient`` itself, chosen greedily left to right.
    """
    K = span.domain
    n = span.shape[0]
    if ambient is None:
        ambient = identity(n, K)
    stacked = hstack([span, ambient], n, K)
    _, pivots = rref(stacked)
    offset = span.shape[1]
    picked = [p - offset for p in pivots if p >= offset]
    return submatrix(ambient, list(range(n)), picked)


def image_basis(m: Matrix) -> Matrix:
    """Linearly independent columns of m spanning its column space."""
    _, pivots = rref(m)
    return submatrix(m, list(range(m.shape[0])), list(pivots))


def coordinates(basis: Matrix, vector: Sequence) -> Optional[List]:
    """Coordinates of ``vector`` in the (independent) columns of ``basis``, or None."""
    return solve(basis, vector)


def right_inverse(m: Matrix) -> Matrix:
    """S with m S = id, for m of full row rank."""
    K = m.domain
    sol = solve_matrix(m, identity(m.shape[0], K))
    if sol is None:
        raise DimensionMismatchError("Matrix has no right inverse")
    return sol


def left_inverse(m: Matrix) -> Matrix:
    """R with R m = id, for m of full column rank."""
    K = m.domain
    sol = solve_left(m, identity(m.shape[1], K))
    if sol is None:
        raise DimensionMismatchError("Matrix has no left inverse")
    return sol


def inverse(m: Matrix) -> Matrix:
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"Cannot invert a {m.shape} matrix")
    if m.shape[0] == 0:
        return m
    return m.to_dense().inv()


def charpoly(m: Matrix) -> List:
    """Coefficients of det(t - m), leading coefficient first."""
    if m.shape[0] == 0:
        return [m.domain.one]
    return list(m.to_dense().charpoly())


def scalar_matrix(n: int, value, K: Domain) -> Matrix:
    return matrix([[value if i == j else K.zero for j in range(n)] for i in range(n)], K, (n, n))


def lift(values: Iterable, K: Domain) -> List:
    return [K.convert(v) for v in values]


def add(a: Matrix, b: Matrix) -> Matrix:
    if a.shape != b.shape:
        raise DimensionMismatchError(f"Cannot add {a.shape} and {b.shape}")
    if 0 in a.shape:
        return a
    return (a + b).to_dense()


def sub(a: Matrix, b: Matrix) -> Matrix:
    if a.shape != b.shape:
        raise DimensionMismatchError(f"Cannot subtract {b.shape} from {a.shape}")
    if 0 in a.shape:
        return a
    return (a - b).to_dense()


def scale(m: Matrix, c) -> Matrix:
    K = m.domain
    return matrix([[c * x for x in row] for row in entries(m)], K, m.shape)


def equal(a: Matrix, b: Matrix) -> bool:
    return a.shape == b.shape and is_zero(sub(a, b))


def power(m: Matrix, k: int) -> Matrix:
    out = identity(m.shape[0], m.domain)
    for _ in range(k):
        out = mul(m, out)
    return out


def nilpotent_chains(n: Matrix) -> List[Tuple[int, List]]:
    """Jordan chains of a nilpotent operator.

    Returns (length, generator) pairs, longest first, such that the vectors
    ``n^i g`` for ``i < length`` form a basis of the space.

    Raises:
        DimensionMismatchError: If n is not square or not nilpotent
    """
    size = n.shape[0]
    if n.shape[1] != size:
        raise DimensionMismatchError(f"Jordan chains need a square matrix, got {n.shape}")
    K = n.domain
    kernels = [zeros(size, 0, K)]
    while kernels[-1].shape[1] < size:
        if len(kernels) > size:
            raise DimensionMismatchError("Operator is not nilpotent")
        kernels.append(kernel_matrix(power(n, len(kernels))))
    chains: List[Tuple[int, List]] = []
    for level in range(len(kernels) - 1, 0, -1):
        spanning = [kernels[level - 1]]
        for length, g in chains:
            spanning.append(column(apply(power(n, length - level), g), K))
        span = hstack(spanning, size, K)
        for g in columns(complement(span, kernels[level])):
            chains.append((level, g))
    return chains

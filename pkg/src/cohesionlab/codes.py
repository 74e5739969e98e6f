"""Linear codes over finite fields, Reed-Solomon construction, and the
code -> distribution conversion.

Reed-Solomon generators are built in the classical q = n case by
evaluating the monomial basis 1, z, ..., z^(k-1) at the point list
(0, 1, alpha, ..., alpha^(q-2)), giving a Vandermonde matrix. Codeword
enumeration runs messages in lexicographic order so table reproduction
is bit-exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import comb

from .dist import JointDistribution
from .errors import CodeError
from .gf import FieldSpec, matrix_rank

ENUM_LIMIT = 1 << 20
COLUMN_SUBSET_LIMIT = 10**6


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    q: int
    d: int

    @property
    def is_mds(self) -> bool:
        return self.d == self.n - self.k + 1

    def __post_init__(self):
        if self.d > self.n - self.k + 1:
            raise CodeError(
                f"distance d={self.d} violates the Singleton bound "
                f"n-k+1={self.n - self.k + 1}"
            )


@dataclass(frozen=True)
class LinearCode:
    """k x n generator matrix over a field; rows are label tuples."""

    field: FieldSpec
    k: int
    n: int
    generator: tuple  # k rows, each a length-n tuple of labels

    def __post_init__(self):
        if len(self.generator) != self.k or any(
            len(row) != self.n for row in self.generator
        ):
            raise CodeError("generator shape does not match (k, n)")
        if matrix_rank(self.field, self.generator) != self.k:
            raise CodeError("generator rows are linearly dependent")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows) -> "LinearCode":
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        return cls(field, len(rows), len(rows[0]), rows)

    @property
    def q(self) -> int:
        return self.field.order


def rs_generator(field: FieldSpec, k: int) -> LinearCode:
    """Classical Reed-Solomon generator with n = q evaluation points."""
    q = field.order
    if not 1 <= k <= q:
        raise CodeError(f"message length k={k} outside 1..{q}")
    points = [0, 1]
    x = 1
    for _ in range(q - 2):
        x = field.mul(x, field.primitive)
        points.append(x)
    points = points[:q]
    rows = tuple(
        tuple(field.pow(b, i) for b in points) for i in range(k)
    )
    return LinearCode(field, k, q, rows)


def enumerate_codewords(c: LinearCode) -> list[tuple]:
    """All q^k codewords, messages in lexicographic order."""
    if c.q**c.k > ENUM_LIMIT:
        raise CodeError(
            f"codeword count {c.q}^{c.k} exceeds the enumeration limit {ENUM_LIMIT}"
        )
    f = c.field
    words = []
    for message in product(range(c.q), repeat=c.k):
        word = [0] * c.n
        for m_i, row in zip(message, c.generator):
            if m_i:
                for j, g in enumerate(row):
                    word[j] = f.add(word[j], f.mul(m_i, g))
        words.append(tuple(word))
    return words


def min_distance(c: LinearCode) -> CodeParams:
    """Exact minimum distance by exhaustive nonzero-weight scan (the code
    is linear, so min distance equals min nonzero weight)."""
    best = c.n
    for word in enumerate_codewords(c):
        w = sum(1 for v in word if v)
        if 0 < w < best:
            best = w
    return CodeParams(c.n, c.k, c.q, best)


def k_column_independence(c: LinearCode) -> bool:
    """True iff every k-subset of generator columns has full rank."""
    if comb(c.n, c.k) > COLUMN_SUBSET_LIMIT:
        raise CodeError(
            f"C({c.n},{c.k}) column subsets exceed the limit {COLUMN_SUBSET_LIMIT}"
        )
    return all(column_subset_rank(c, cols) == c.k for cols in combinations(range(c.n), c.k))


def column_subset_rank(c: LinearCode, cols) -> int:
    sub = [[row[j] for j in cols] for row in c.generator]
    return matrix_rank(c.field, sub)


def subset_rank_entropy(c: LinearCode, mask: int) -> int:
    """Base-q entropy of the code distribution's marginal on `mask`.

    The marginal is uniform over the image of the message space under
    the selected columns, a linear map, so its entropy is exactly the
    rank of the column submatrix.
    """
    cols = [j for j in range(c.n) if mask >> j & 1]
    if not cols:
        return 0
    return column_subset_rank(c, cols)


def code_to_distribution(c: LinearCode) -> JointDistribution:
    """Uniform distribution with mass q^-k on each codeword."""
    words = enumerate_codewords(c)
    mass = 1.0 / len(words)
    return JointDistribution(c.n, c.q, {w: mass for w in words})


def generator_json(c: LinearCode) -> dict:
    params = None
    if c.q**c.k <= ENUM_LIMIT:
        cp = min_distance(c)
        params = {"n": cp.n, "k": cp.k, "q": cp.q, "d": cp.d, "is_mds": cp.is_mds}
    return {
        "q": c.q,
        "k": c.k,
        "n": c.n,
        "generator": [list(row) for row in c.generator],
        "params": params,
    }

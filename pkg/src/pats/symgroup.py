"""Symmetric group machinery: permutations, partitions, standard Young
tableaux, and representation matrices obtained from the tableau clash rule.

The representation matrix of a permutation is (R_id)^{-1} R_pi, where the
entry (i, j) of R_pi is zero when two numbers share a column of tableau T_i
and a row of pi(T_j), and otherwise the sign of the column-preserving
rearrangement of T_i that moves every number to the row it occupies in
pi(T_j).  Matrices for single permutations are exact rational; bulk work
(many permutations against one shape) runs through a vectorized modular
batch engine.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from .exactla import ExactMatrix, inverse_modp


class Permutation:
    """A permutation of {1..n}, stored as the tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a bijection on 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(images)

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, im in enumerate(self.images):
            inv[im - 1] = i + 1
        return Permutation(inv)

    def sign(self) -> int:
        seen = [False] * self.n
        s = 1
        for i in range(self.n):
            if seen[i]:
                continue
            j = i
            length = 0
            while not seen[j]:
                seen[j] = True
                j = self.images[j] - 1
                length += 1
            if length % 2 == 0:
                s = -s
        return s

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"

    def __setattr__(self, *args):
        raise AttributeError("Permutation is immutable")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """(p o q)(i) = p(q(i))."""
    if p.n != q.n:
        raise ValueError(f"degree mismatch: {p.n} != {q.n}")
    return Permutation(p.images[q.images[i] - 1] for i in range(p.n))


def sign(p: Permutation) -> int:
    return p.sign()


class Partition:
    """A weakly decreasing tuple of positive integers."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(int(x) for x in parts)
        if not parts or any(x < 1 for x in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        return Partition(
            sum(1 for x in self.parts if x > i) for i in range(self.parts[0])
        )

    def dimension(self) -> int:
        """Number of standard tableaux, by the hook length formula."""
        conj = self.conjugate().parts
        hooks = 1
        for i, row in enumerate(self.parts):
            for j in range(row):
                hooks *= row - j + conj[j] - i - 1
        return factorial(self.n) // hooks

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __str__(self) -> str:
        if self.parts[0] <= 9:
            return "".join(str(x) for x in self.parts)
        return ",".join(str(x) for x in self.parts)

    def __repr__(self) -> str:
        return f"Partition({list(self.parts)})"

    def __setattr__(self, *args):
        raise AttributeError("Partition is immutable")


def parse_partition(text: str) -> Partition:
    """Parse '421' or '4,2,1' into a partition."""
    if "," in text:
        return Partition(int(x) for x in text.split(","))
    return Partition(int(ch) for ch in text.strip())


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n, lexicographically decreasing by parts."""
    if n < 1:
        raise ValueError("n must be positive")

    def gen(total, largest):
        if total == 0:
            yield ()
            return
        for first in range(min(total, largest), 0, -1):
            for rest in gen(total - first, first):
                yield (first,) + rest

    return tuple(Partition(p) for p in gen(n, n))


class StandardTableau:
    """A standard filling of a partition frame by 1..n."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        object.__setattr__(self, "rows", rows)
        n = sum(len(r) for r in rows)
        if sorted(x for r in rows for x in r) != list(range(1, n + 1)):
            raise ValueError("entries must be exactly 1..n")
        for r in rows:
            if any(r[i] >= r[i + 1] for i in range(len(r) - 1)):
                raise ValueError("rows must increase left to right")
        for i in range(len(rows) - 1):
            if len(rows[i + 1]) > len(rows[i]):
                raise ValueError("row lengths must weakly decrease")
            if any(rows[i][j] >= rows[i + 1][j] for j in range(len(rows[i + 1]))):
                raise ValueError("columns must increase top to bottom")

    @property
    def n(self) -> int:
        return sum(len(r) for r in self.rows)

    @property
    def shape(self) -> Partition:
        return Partition(len(r) for r in self.rows)

    def row_word(self) -> tuple[int, ...]:
        return tuple(x for row in self.rows for x in row)

    def row_of(self) -> dict[int, int]:
        return {x: i for i, row in enumerate(self.rows) for x in row}

    def columns(self) -> list[tuple[int, ...]]:
        ncols = len(self.rows[0])
        return [
            tuple(row[c] for row in self.rows if c < len(row)) for c in range(ncols)
        ]

    def apply(self, p: Permutation) -> list[list[int]]:
        """Raw rows of p(T): every entry x replaced by p(x)."""
        return [[p(x) for x in row] for row in self.rows]

    def __eq__(self, other) -> bool:
        return isinstance(other, StandardTableau) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"StandardTableau({[list(r) for r in self.rows]})"

    def __setattr__(self, *args):
        raise AttributeError("StandardTableau is immutable")


@lru_cache(maxsize=None)
def standard_tableaux(lam: Partition) -> tuple[StandardTableau, ...]:
    """All standard tableaux of frame lam, sorted by row-reading word."""
    parts = lam.parts
    rows = [[] for _ in parts]

    found = []

    def place(k):
        if k > lam.n:
            found.append(StandardTableau([tuple(r) for r in rows]))
            return
        for i, row in enumerate(rows):
            if len(row) < parts[i] and (i == 0 or len(rows[i - 1]) > len(row)):
                row.append(k)
                place(k + 1)
                row.pop()

    place(1)
    found.sort(key=lambda t: t.row_word())
    return tuple(found)


# ---------------------------------------------------------------------------
# Clifton matrices


@lru_cache(maxsize=None)
def _tableau_data(lam: Partition):
    """(row-of array (d, n) with rowof[j][x-1] = row of x in T_j,
    column list of each tableau as 0-based index tuples)."""
    tabs = standard_tableaux(lam)
    n = lam.n
    row_of = np.zeros((len(tabs), n), dtype=np.int8)
    columns = []
    for j, t in enumerate(tabs):
        for i, row in enumerate(t.rows):
            for x in row:
                row_of[j, x - 1] = i
        columns.append([tuple(x - 1 for x in col) for col in t.columns()])
    return row_of, columns


def clifton_raw(lam: Partition, p: Permutation) -> ExactMatrix:
    """The matrix R^lam_pi of the tableau clash rule (entries 0, +-1)."""
    if p.n != lam.n:
        raise ValueError(f"permutation degree {p.n} != partition size {lam.n}")
    row_of, columns = _tableau_data(lam)
    d = row_of.shape[0]
    inv = p.inverse().images
    out = np.zeros((d, d), dtype=np.int64)
    for j in range(d):
        # row in pi(T_j) of number x = row in T_j of pi^{-1}(x)
        prow = [row_of[j, inv[x] - 1] for x in range(lam.n)]
        for i in range(d):
            val = 1
            for col in columns[i]:
                targets = [prow[x] for x in col]
                if len(set(targets)) != len(targets):
                    val = 0
                    break
                inversions = sum(
                    1
                    for a in range(len(targets))
                    for b in range(a + 1, len(targets))
                    if targets[a] > targets[b]
                )
                if inversions % 2:
                    val = -val
            out[i, j] = val
    return ExactMatrix.from_int_array(out, sn_degree=lam.n)


@lru_cache(maxsize=None)
def _clifton_id_inverse(lam: Partition, p: int | None):
    rid = clifton_raw(lam, Permutation.identity(lam.n))
    arr = rid.int_array()
    if p is not None:
        return inverse_modp(arr, p)
    return _invert_rational(arr)


def _invert_rational(arr: np.ndarray) -> list[list[Fraction]]:
    d = arr.shape[0]
    work = [
        [Fraction(int(arr[i, j])) for j in range(d)]
        + [Fraction(1 if j == i else 0) for j in range(d)]
        for i in range(d)
    ]
    for c in range(d):
        piv = next((r for r in range(c, d) if work[r][c] != 0), None)
        if piv is None:
            raise ValueError("identity Clifton matrix is singular (bug)")
        work[c], work[piv] = work[piv], work[c]
        f = work[c][c]
        work[c] = [v / f for v in work[c]]
        for r in range(d):
            if r != c and work[r][c] != 0:
                g = work[r][c]
                work[r] = [a - g * b for a, b in zip(work[r], work[c])]
    return [row[d:] for row in work]


@lru_cache(maxsize=None)
def rep_matrix(lam: Partition, p: Permutation, modulus: int | None = None) -> ExactMatrix:
    """The matrix representing p in partition lam: (R_id)^{-1} R_p."""
    raw = clifton_raw(lam, p).int_array()
    if modulus is not None:
        inv = _clifton_id_inverse(lam, modulus)
        return ExactMatrix.from_int_array(inv @ raw % modulus, p=modulus, sn_degree=lam.n)
    inv = _clifton_id_inverse(lam, None)
    d = raw.shape[0]
    rows = [
        [sum(inv[i][k] * int(raw[k, j]) for k in range(d)) for j in range(d)]
        for i in range(d)
    ]
    return ExactMatrix.from_rows(rows, sn_degree=lam.n)


class GroupAlgebraElement:
    """A finite rational combination of permutations of fixed degree n."""

    __slots__ = ("terms", "n")

    def __init__(self, n: int, terms=None):
        object.__setattr__(self, "n", n)
        clean = {}
        for perm, coeff in (terms or {}).items():
            if perm.n != n:
                raise ValueError(f"degree mismatch: {perm.n} != {n}")
            coeff = Fraction(coeff)
            if coeff:
                clean[perm] = coeff
        object.__setattr__(self, "terms", clean)

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        if self.n != other.n:
            raise ValueError("degree mismatch")
        out = dict(self.terms)
        for perm, coeff in other.terms.items():
            out[perm] = out.get(perm, Fraction(0)) + coeff
        return GroupAlgebraElement(self.n, out)

    def scale(self, c) -> "GroupAlgebraElement":
        c = Fraction(c)
        return GroupAlgebraElement(self.n, {p: c * v for p, v in self.terms.items()})

    def act_left(self, p: Permutation) -> "GroupAlgebraElement":
        """Left multiplication p . g."""
        return GroupAlgebraElement(
            self.n, {compose(p, q): c for q, c in self.terms.items()}
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupAlgebraElement)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"GroupAlgebraElement(n={self.n}, {len(self.terms)} terms)"

    def __setattr__(self, *args):
        raise AttributeError("GroupAlgebraElement is immutable")


def rep_of_element(
    lam: Partition, g: GroupAlgebraElement, modulus: int | None = None
) -> ExactMatrix:
    """Sum of coeff * rep_matrix over the terms of g (zero matrix if empty)."""
    if g.n != lam.n:
        raise ValueError(f"degree mismatch: {g.n} != {lam.n}")
    d = lam.dimension()
    if modulus is not None:
        acc = np.zeros((d, d), dtype=np.int64)
        for perm, coeff in g.terms.items():
            c = coeff.numerator % modulus * pow(coeff.denominator % modulus, -1, modulus)
            acc = (acc + c * rep_matrix(lam, perm, modulus)._num) % modulus
        return ExactMatrix.from_int_array(acc, p=modulus, sn_degree=lam.n)
    acc = [[Fraction(0)] * d for _ in range(d)]
    for perm, coeff in g.terms.items():
        m = rep_matrix(lam, perm)
        for i in range(d):
            for j in range(d):
                acc[i][j] += coeff * m.entry(i, j)
    return ExactMatrix.from_rows(acc, sn_degree=lam.n)


# ---------------------------------------------------------------------------
# batch engine: signed sums of Clifton matrices over many permutations


def clifton_signed_sums(
    lam: Partition,
    perms: np.ndarray,
    coeffs: np.ndarray,
    groups: np.ndarray,
    n_groups: int,
    p: int,
) -> np.ndarray:
    """For each group g, the matrix sum_{k in g} coeffs[k] * R^lam_{perms[k]} mod p.

    perms is (K, n) with 0-based images; coeffs and groups are length K.
    Returns an (n_groups, d, d) int64 array.  The clash test and the
    column sort signs are evaluated for all (tableau pair, permutation)
    triples at once, one tableau row at a time.
    """
    row_of, columns = _tableau_data(lam)
    d, n = row_of.shape
    perms = np.asarray(perms, dtype=np.int64)
    if perms.shape[0] == 0:
        return np.zeros((n_groups, d, d), dtype=np.int64)
    # the same permutation often occurs in several groups; fold duplicates
    perms, idx = np.unique(perms, axis=0, return_inverse=True)
    K = perms.shape[0]
    inv = np.empty_like(perms)
    inv[np.arange(K)[:, None], perms] = np.arange(n)[None, :]
    # prow[j, k, x] = row of x+1 in perms[k](T_j)
    prow = row_of[:, inv]
    cmat = np.zeros((K, n_groups), dtype=np.float64)
    np.add.at(cmat, (idx.ravel(), np.asarray(groups)), coeffs)
    out = np.empty((n_groups, d, d), dtype=np.int64)
    odd = np.empty((d, K), dtype=bool)
    clash = np.empty((d, K), dtype=bool)
    for i in range(d):
        odd[:] = False
        clash[:] = False
        for col in columns[i]:
            for a in range(len(col)):
                pa = prow[:, :, col[a]]
                for b in range(a + 1, len(col)):
                    pb = prow[:, :, col[b]]
                    clash |= pa == pb
                    odd ^= pa > pb
        val = np.where(clash, 0.0, np.where(odd, -1.0, 1.0))
        out[:, i, :] = (val @ cmat).T % p
    return out


def rep_signed_sums(
    lam: Partition,
    perms: np.ndarray,
    coeffs: np.ndarray,
    groups: np.ndarray,
    n_groups: int,
    p: int,
) -> np.ndarray:
    """Like clifton_signed_sums but left-multiplied by (R_id)^{-1} mod p."""
    sums = clifton_signed_sums(lam, perms, coeffs, groups, n_groups, p)
    rid_inv = _clifton_id_inverse(lam, p).astype(np.float64)
    # d * p^2 < 2^53, so the float64 products are exact
    prod = rid_inv[None, :, :] @ sums.astype(np.float64) % p
    return prod.astype(np.int64)

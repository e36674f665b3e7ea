"""Dense exact linear algebra over the rationals and over prime fields F_p.

Row reduction is fully deterministic: the pivot of every column is the first
row carrying a nonzero entry, so the reduced row echelon form, the pivot
columns and the canonical nullspace basis are reproducible bit for bit and
do not depend on chunking or panel sizes.

Two elimination engines sit behind :class:`ExactMatrix`:

* rational matrices use fraction-free integer elimination with one
  denominator per row (int64 with an automatic big-integer fallback);
* matrices over F_p are reduced in row chunks, each chunk eliminated with
  a panel-blocked algorithm whose trailing updates are float64 matrix
  products.  With p < 2^10 and fewer than 2^26 inner terms every product
  stays far below 2^53, so float64 arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np

DEFAULT_PRIME = 101

_CHUNK_ROWS = 8192
_PANEL = 120
_INT64_BOUND = 1 << 30  # |a*b - c*d| <= 2*BOUND^2 < 2^63


class RationalOverflow(Exception):
    """Internal signal: int64 fraction-free elimination outgrew its bound."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# engine over F_p


def _rref_dense_modp(a: np.ndarray, p: int, panel: int = _PANEL):
    """In-place RREF of a float64 matrix with entries in [0, p).

    Returns (pivot rows, pivot column list).  Elimination below the pivots
    is panel-blocked: within a panel only the panel columns are updated and
    the multipliers are parked in place of the zeros; the trailing columns
    are then updated with one matrix product per panel.  Modular reduction
    is deferred: one pivot step adds at most p^2 to any entry, so a panel
    of width w keeps every entry below w*p^2 + p < 2^53 exactly.
    """
    m, n = a.shape
    r = 0
    pivots: list[int] = []
    c0 = 0
    while c0 < n and r < m:
        c1 = min(c0 + panel, n)
        first = r
        cols: list[int] = []
        invs: list[float] = []
        for c in range(c0, c1):
            a[r:, c] %= p
            nz = np.flatnonzero(a[r:, c])
            if nz.size == 0:
                continue
            k = r + int(nz[0])
            if k != r:
                a[[r, k]] = a[[k, r]]
            a[r, c:c1] %= p
            inv = pow(int(a[r, c]), -1, p)
            a[r, c:c1] = a[r, c:c1] * inv % p
            if r + 1 < m:
                mult = a[r + 1 :, c].copy()
                a[r + 1 :, c:c1] -= np.outer(mult, a[r, c:c1])
                a[r + 1 :, c] = mult  # parked for the trailing update
            pivots.append(c)
            cols.append(c)
            invs.append(float(inv))
            r += 1
        k = len(cols)
        if k:
            a[first:, c0:c1] %= p
        if k and c1 < n:
            rows = np.arange(first, first + k)
            # replay the in-panel eliminations on the pivot rows' tails
            for i in range(k):
                tail = a[rows[i], c1:]
                if i:
                    tail = tail - a[rows[i], cols[:i]] @ a[rows[:i], c1:]
                a[rows[i], c1:] = tail % p * invs[i] % p
            if first + k < m:
                mult = a[np.ix_(np.arange(first + k, m), cols)]
                if np.any(mult):
                    a[first + k :, c1:] = (a[first + k :, c1:] - mult @ a[rows, c1:]) % p
        if k:
            for i, c in enumerate(cols):
                a[first + i + 1 :, c] = 0.0
        c0 = c1
    # back substitution: clear entries above the pivots, one block at a time
    nblocks = range(0, len(pivots), _PANEL)
    for s in reversed(list(nblocks)):
        e = min(s + _PANEL, len(pivots))
        for i in range(e - 1, s, -1):
            a[i] %= p
            mult = a[s:i, pivots[i]] % p
            a[s:i] -= np.outer(mult, a[i])
        a[s:e] %= p
        if s:
            mult = a[np.ix_(np.arange(0, s), pivots[s:e])]
            if np.any(mult):
                a[:s] = (a[:s] - mult @ a[s:e]) % p
    return a[: len(pivots)], pivots


def _reduce_modp(arr: np.ndarray, p: int, chunk: int = _CHUNK_ROWS):
    """RREF over F_p, streamed over row chunks.

    Returns (nonzero RREF rows as an int64 array, pivot columns).
    """
    m, n = arr.shape
    r = np.empty((0, n), dtype=np.float64)
    pivots: list[int] = []
    for start in range(0, m, chunk):
        c = arr[start : start + chunk].astype(np.float64) % p
        if pivots:
            coeff = c[:, pivots]
            if np.any(coeff):
                c = (c - coeff @ r) % p
        rc, pc = _rref_dense_modp(c, p)
        if not pc:
            continue
        if pivots:
            coeff = r[:, pc]
            if np.any(coeff):
                r = (r - coeff @ rc) % p
        r = np.vstack([r, rc])
        pivots.extend(pc)
        order = np.argsort(pivots, kind="stable")
        r = r[order]
        pivots = [pivots[i] for i in order]
    return np.rint(r).astype(np.int64), pivots


def inverse_modp(a: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square integer matrix over F_p (raises if singular)."""
    d = a.shape[0]
    work = np.concatenate([a.astype(np.int64) % p, np.eye(d, dtype=np.int64)], axis=1)
    rows, pivots = _reduce_modp(work, p, chunk=max(d, 1))
    if pivots[:d] != list(range(d)):
        raise ValueError(f"matrix is singular mod {p}")
    return rows[:, d:]


# ---------------------------------------------------------------------------
# engine over Q: fraction-free rows with per-row denominators


def _row_gcds(num: np.ndarray, dens: np.ndarray, rows) -> None:
    for i in rows:
        row = num[i]
        if row.dtype == object:
            g = 0
            for v in row:
                g = gcd(g, abs(int(v)))
                if g == 1:
                    break
        else:
            g = int(np.gcd.reduce(np.abs(row)))
        g = gcd(g, int(dens[i]))
        if g > 1:
            num[i] = row // g
            dens[i] = dens[i] // g


def _reduce_rational(num: np.ndarray, dens: np.ndarray):
    """Fraction-free Gauss-Jordan on rows stored as integers over a denominator.

    Row i represents num[i]/dens[i].  Eliminating with pivot value v at
    column c sends row x to (x*v - x_c*pivot)/(den_x*v): the pivot row's
    denominator cancels, so everything stays integral.  Returns
    (numerators, denominators, pivots) of the nonzero RREF rows; raises
    RationalOverflow when int64 entries could overflow.
    """
    m, n = num.shape
    guarded = num.dtype != object
    r = 0
    pivots: list[int] = []
    for c in range(n):
        nz = np.flatnonzero(num[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            num[[r, k]] = num[[k, r]]
            dens[[r, k]] = dens[[k, r]]
        pv = int(num[r, c])
        others = np.flatnonzero(num[:, c])
        others = others[others != r]
        if others.size:
            if guarded:
                bound = max(abs(pv), int(np.abs(num[others]).max()), int(np.abs(num[r]).max()))
                if bound >= _INT64_BOUND or int(dens.max()) * abs(pv) >= _INT64_BOUND**2:
                    raise RationalOverflow
            coeff = num[others, c].copy()
            num[others] = num[others] * pv - np.outer(coeff, num[r])
            dens[others] = dens[others] * abs(pv)
            if pv < 0:
                num[others] = -num[others]
            _row_gcds(num, dens, others)
        # scale the pivot row to leading entry 1: its denominator becomes pv
        if pv < 0:
            num[r] = -num[r]
            pv = -pv
        dens[r] = pv
        _row_gcds(num, dens, [r])
        pivots.append(c)
        r += 1
        if r == m:
            break
    return num[:r], dens[:r], pivots


def _normalize_null_vector(vals: list[Fraction]) -> list[int]:
    """Scale to integer entries with content 1 and positive first nonzero."""
    den = 1
    for v in vals:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    for v in ints:
        if v:
            if v < 0:
                ints = [-w for w in ints]
            break
    return ints


def _symmetric_lift(x: int, p: int) -> int:
    return x - p if x > p // 2 else x


# ---------------------------------------------------------------------------


class ExactMatrix:
    """Dense matrix over exact rationals or over F_p (p prime).

    Over F_p the entries live in an integer numpy array reduced mod p; over
    Q each row is an integer numpy vector over a positive denominator.
    ``sn_degree`` optionally records the symmetric-group degree n of the
    data the matrix represents; modular ranks then require p > n.
    """

    __slots__ = ("_num", "_dens", "p", "sn_degree")

    def __init__(self, num, dens=None, p=None, sn_degree=None):
        self._num = num
        self._dens = dens
        self.p = p
        self.sn_degree = sn_degree

    @classmethod
    def from_int_array(cls, arr, p=None, sn_degree=None) -> "ExactMatrix":
        arr = np.asarray(arr)
        if p is not None:
            _check_prime(p)
            return cls(arr.astype(np.int64) % p, None, p, sn_degree)
        dens = np.ones(arr.shape[0], dtype=np.int64)
        return cls(arr.astype(np.int64), dens, None, sn_degree)

    @classmethod
    def from_rows(cls, rows, p=None, sn_degree=None) -> "ExactMatrix":
        if p is not None:
            _check_prime(p)
            data = []
            for row in rows:
                out = []
                for x in row:
                    f = Fraction(x)
                    if f.denominator % p == 0:
                        raise ValueError(f"denominator of {f} vanishes mod {p}")
                    out.append(f.numerator % p * pow(f.denominator % p, -1, p) % p)
                data.append(out)
            return cls(np.array(data, dtype=np.int64), None, p, sn_degree)
        fracs = [[Fraction(x) for x in row] for row in rows]
        dens = []
        num = []
        for row in fracs:
            d = 1
            for v in row:
                d = d * v.denominator // gcd(d, v.denominator)
            dens.append(d)
            num.append([int(v * d) for v in row])
        arr = np.array(num, dtype=np.int64)
        return cls(arr, np.array(dens, dtype=np.int64), None, sn_degree)

    @classmethod
    def identity(cls, n: int, p=None) -> "ExactMatrix":
        return cls.from_int_array(np.eye(n, dtype=np.int64), p=p)

    # -- basic queries ------------------------------------------------------

    @property
    def rows(self) -> int:
        return self._num.shape[0]

    @property
    def cols(self) -> int:
        return self._num.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._num.shape[0], self._num.shape[1]

    def entry(self, i: int, j: int):
        if self.p is not None:
            return int(self._num[i, j])
        return Fraction(int(self._num[i, j]), int(self._dens[i]))

    def to_lists(self) -> list[list]:
        """Entries as Python numbers (ints where the value is integral)."""
        out = []
        for i in range(self.rows):
            row = []
            for j in range(self.cols):
                v = self.entry(i, j)
                if isinstance(v, Fraction) and v.denominator == 1:
                    v = int(v)
                row.append(v)
            out.append(row)
        return out

    def int_array(self) -> np.ndarray:
        """Integer entries as a numpy array (requires unit denominators)."""
        if self.p is None and np.any(self._dens != 1):
            raise ValueError("matrix has non-integer entries")
        return self._num.copy()

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.shape != other.shape or self.p != other.p:
            return False
        if self.p is not None:
            return bool(np.array_equal(self._num % self.p, other._num % other.p))
        left = self._num * other._dens[:, None]
        right = other._num * self._dens[:, None]
        return bool(np.array_equal(left, right))

    def __hash__(self):
        raise TypeError("ExactMatrix is not hashable")

    def __repr__(self) -> str:
        dom = f"F_{self.p}" if self.p is not None else "Q"
        return f"ExactMatrix({self.rows}x{self.cols} over {dom})"

    # -- reduction services --------------------------------------------------

    def _reduced(self):
        """(pivot rows as Fractions-compatible pair, pivots); cached."""
        if self.p is not None:
            rows, pivots = _reduce_modp(self._num, self.p)
            return rows, None, pivots
        num = self._num.copy()
        dens = self._dens.copy()
        try:
            return _reduce_rational(num, dens)
        except RationalOverflow:
            num = self._num.astype(object)
            dens = self._dens.astype(object)
            return _reduce_rational(num, dens)

    def rref(self) -> tuple["ExactMatrix", int, list[int]]:
        """Reduced row echelon form (full shape, zero rows last), rank, pivots."""
        if self.p is not None:
            rows, _, pivots = self._reduced()
            full = np.zeros(self.shape, dtype=np.int64)
            full[: len(pivots)] = rows
            return ExactMatrix(full, None, self.p, self.sn_degree), len(pivots), pivots
        num, dens, pivots = self._reduced()
        r = len(pivots)
        full = np.zeros(self.shape, dtype=num.dtype)
        full[:r] = num
        fdens = np.ones(self.rows, dtype=np.int64 if num.dtype != object else object)
        fdens[:r] = dens
        return ExactMatrix(full, fdens, None, self.sn_degree), r, pivots

    def rank(self) -> int:
        return len(self._reduced()[2])

    def pivot_columns(self) -> list[int]:
        return self._reduced()[2]

    def nullspace_basis(self) -> list[list[int]]:
        """Canonical nullspace basis: one integer vector per free column.

        Each vector sets its free variable to 1 and the other free variables
        to 0, is scaled to content 1 with a positive first nonzero entry;
        over F_p the entries are first lifted symmetrically to (-p/2, p/2).
        """
        num, dens, pivots = self._reduced()
        n = self.cols
        pivot_set = set(pivots)
        free = [c for c in range(n) if c not in pivot_set]
        basis = []
        if self.p is not None:
            p = self.p
            for f in free:
                v = [0] * n
                v[f] = 1
                for i, c in enumerate(pivots):
                    v[c] = _symmetric_lift(int(-num[i, f]) % p, p)
                g = 0
                for x in v:
                    g = gcd(g, abs(x))
                if g > 1:
                    v = [x // g for x in v]
                for x in v:
                    if x:
                        if x < 0:
                            v = [-y for y in v]
                        break
                basis.append(v)
            return basis
        for f in free:
            v = [Fraction(0)] * n
            v[f] = Fraction(1)
            for i, c in enumerate(pivots):
                v[c] = -Fraction(int(num[i, f]), int(dens[i]))
            basis.append(_normalize_null_vector(v))
        return basis

    def mod_p(self, p: int) -> "ExactMatrix":
        """Reduction of a rational matrix mod p (denominators must be units)."""
        _check_prime(p)
        if self.p is not None:
            raise ValueError("matrix is already modular")
        if np.any(self._dens % p == 0):
            raise ValueError(f"a row denominator is divisible by {p}")
        num = self._num.astype(object) if self._num.dtype == object else self._num
        arr = np.array(
            [[int(x) % p for x in row] for row in num], dtype=np.int64
        ).reshape(self.shape)
        inv = np.array([pow(int(d) % p, -1, p) for d in self._dens], dtype=np.int64)
        return ExactMatrix(arr * inv[:, None] % p, None, p, self.sn_degree)


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")


def rank_mod_p(m: ExactMatrix) -> int:
    """Rank over F_p; requires p prime and p > the recorded S_n degree."""
    if m.p is None:
        raise ValueError("matrix is rational; reduce mod p first")
    _check_prime(m.p)
    if m.sn_degree is not None and m.p <= m.sn_degree:
        raise ValueError(
            f"modulus {m.p} <= degree {m.sn_degree}: group algebra not semisimple"
        )
    return m.rank()


def rref(m: ExactMatrix) -> tuple[ExactMatrix, int, list[int]]:
    return m.rref()


def nullspace_basis(m: ExactMatrix) -> list[list[int]]:
    return m.nullspace_basis()

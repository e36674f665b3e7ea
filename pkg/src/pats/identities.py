"""Expansion of ternary monomials into the free dialgebra and nullspace
identity discovery.

The trilinear operation expands [x, y, z] into the six signed
concatenations

    ^xyz - ^xzy - y^xz + z^xy + yz^x - zy^x

where the hat marks the factor contributing the center; the non-center
factors contribute their letter sequences only.  A polynomial is an
identity of the operation exactly when its expansion vanishes, so the
degree-n identities are the nullspace of the matrix whose columns are the
expansions of the canonical degree-n monomials.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .dialgebra import DialgebraPolynomial, DialgebraWord
from .exactla import DEFAULT_PRIME, ExactMatrix
from .ternary import (
    _arrangements,
    apply_labels,
    canonicalize,
    degree_of,
    enumerate_monomials,
    format_monomial,
    leaves_of,
    monomial_type_index,
    pa_types,
    straighten,
)

_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


# ---------------------------------------------------------------------------
# expansion


def _expand_tree(tree) -> dict[tuple[tuple[str, ...], int], int]:
    """Map (letters, center) -> integer coefficient for a monomial tree."""
    if isinstance(tree, str):
        return {((tree,), 1): 1}
    ex = _expand_tree(tree[0])
    ey = _expand_tree(tree[1])
    ez = _expand_tree(tree[2])
    acc: dict[tuple[tuple[str, ...], int], int] = {}
    for (wx, cx), sx in ex.items():
        for (wy, _), sy in ey.items():
            sxy = sx * sy
            for (wz, _), sz in ez.items():
                s = sxy * sz
                ny, nz = len(wy), len(wz)
                for key, val in (
                    ((wx + wy + wz, cx), s),
                    ((wx + wz + wy, cx), -s),
                    ((wy + wx + wz, ny + cx), -s),
                    ((wz + wx + wy, nz + cx), s),
                    ((wy + wz + wx, ny + nz + cx), s),
                    ((wz + wy + wx, nz + ny + cx), -s),
                ):
                    new = acc.get(key, 0) + val
                    if new:
                        acc[key] = new
                    elif key in acc:
                        del acc[key]
    return acc


def expand_pats(m) -> DialgebraPolynomial:
    """Expansion of a ternary monomial (or TernaryPolynomial) in the free
    dialgebra."""
    if isinstance(m, TernaryPolynomial):
        acc: dict[tuple[tuple[str, ...], int], Fraction] = {}
        for tree, coeff in m.terms.items():
            for key, val in _expand_tree(tree).items():
                new = acc.get(key, Fraction(0)) + coeff * val
                if new:
                    acc[key] = new
                elif key in acc:
                    del acc[key]
        raw = acc
    else:
        raw = _expand_tree(m)
    return DialgebraPolynomial(
        {DialgebraWord(letters, center): c for (letters, center), c in raw.items()}
    )


# ---------------------------------------------------------------------------
# polynomials over straightened monomials


class TernaryPolynomial:
    """A rational combination of ternary monomials of one degree."""

    __slots__ = ("terms", "degree")

    def __init__(self, terms=None, degree: int | None = None):
        clean = {}
        for tree, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff:
                if degree is None:
                    degree = degree_of(tree)
                elif degree_of(tree) != degree:
                    raise ValueError("mixed degrees in one polynomial")
                clean[tree] = coeff
        if degree is None:
            raise ValueError("degree required for the zero polynomial")
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "degree", degree)

    @property
    def term_count(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "TernaryPolynomial") -> "TernaryPolynomial":
        acc = dict(self.terms)
        for t, c in other.terms.items():
            acc[t] = acc.get(t, Fraction(0)) + c
        return TernaryPolynomial(acc, degree=self.degree)

    def __sub__(self, other: "TernaryPolynomial") -> "TernaryPolynomial":
        return self + other.scale(-1)

    def scale(self, c) -> "TernaryPolynomial":
        c = Fraction(c)
        return TernaryPolynomial(
            {t: c * v for t, v in self.terms.items()}, degree=self.degree
        )

    def relabel(self, mapping: dict[str, str]) -> "TernaryPolynomial":
        def rec(tree):
            if isinstance(tree, str):
                return mapping.get(tree, tree)
            return tuple(rec(c) for c in tree)

        return TernaryPolynomial(
            {rec(t): c for t, c in self.terms.items()}, degree=self.degree
        )

    def straightened(self) -> "TernaryPolynomial":
        """Rewrite every term to the canonical form of this degree."""
        acc: dict = {}
        for tree, coeff in self.terms.items():
            s, canon = canonicalize(tree, self.degree)
            if s:
                acc[canon] = acc.get(canon, Fraction(0)) + s * coeff
        return TernaryPolynomial(acc, degree=self.degree)

    def type_indices(self) -> tuple[int, ...]:
        """Sorted 0-based association type indices touched by the terms."""
        return tuple(
            sorted({monomial_type_index(t, self.degree) for t in self.terms})
        )

    def coefficient_values(self) -> tuple[Fraction, ...]:
        return tuple(sorted(set(self.terms.values())))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TernaryPolynomial)
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        return f"TernaryPolynomial(degree={self.degree}, {len(self.terms)} terms)"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for tree in sorted(self.terms, key=lambda t: (monomial_type_index(t, self.degree), leaves_of(t))):
            c = self.terms[tree]
            s = "+" if c > 0 else "-"
            mag = abs(c)
            coeff = "" if mag == 1 else f"{mag}*"
            bits.append(f"{s} {coeff}{format_monomial(tree)}")
        text = " ".join(bits)
        return text[2:] if text.startswith("+ ") else text

    def __setattr__(self, *args):
        raise AttributeError("TernaryPolynomial is immutable")


class IdentityRecord(NamedTuple):
    polynomial: TernaryPolynomial
    term_count: int
    coefficients: tuple[Fraction, ...]
    types: tuple[int, ...]  # 0-based type indices

    @classmethod
    def of(cls, poly: TernaryPolynomial) -> "IdentityRecord":
        return cls(poly, poly.term_count, poly.coefficient_values(), poly.type_indices())


# ---------------------------------------------------------------------------
# expansion matrices


@lru_cache(maxsize=None)
def _word_index(n: int, vars_key: tuple[str, ...]):
    """Row order: center position first, then letter sequence lex."""
    arrangements = _arrangements(vars_key)
    index: dict[tuple[tuple[str, ...], int], int] = {}
    words: list[tuple[tuple[str, ...], int]] = []
    for center in range(1, n + 1):
        for letters in arrangements:
            index[(letters, center)] = len(words)
            words.append((letters, center))
    return index, words


def dialgebra_word_basis(n: int, vars=None) -> list[DialgebraWord]:
    """The expansion matrix row basis, in order."""
    if vars is None:
        vars = _ALPHABET[:n]
    _, words = _word_index(n, tuple(sorted(vars)))
    return [DialgebraWord(letters, center) for letters, center in words]


def build_expansion_matrix(n: int, vars=None, modulus: int | None = None) -> ExactMatrix:
    """Rows: dialgebra words over vars (center first, then lex); columns:
    canonical monomials; column j holds the expansion of monomial j."""
    if vars is None:
        vars = _ALPHABET[:n]
    vars_key = tuple(sorted(vars))
    monomials = enumerate_monomials(n, vars_key)
    index, words = _word_index(n, vars_key)
    arr = np.zeros((len(words), len(monomials)), dtype=np.int16)
    for j, tree in enumerate(monomials):
        for key, coeff in _expand_tree(tree).items():
            arr[index[key], j] = coeff
    return ExactMatrix.from_int_array(arr, p=modulus, sn_degree=n)


def _records_from_nullspace(matrix: ExactMatrix, monomials) -> list[IdentityRecord]:
    vectors = matrix.nullspace_basis()
    records = []
    for v in vectors:
        poly = TernaryPolynomial(
            {monomials[j]: c for j, c in enumerate(v) if c},
            degree=degree_of(monomials[0]),
        )
        records.append((len([x for x in v if x]), tuple(v), poly))
    records.sort(key=lambda r: (r[0], r[1]))
    return [IdentityRecord.of(poly) for _, _, poly in records]


@lru_cache(maxsize=None)
def _find_identities_cached(n, vars_key, modulus):
    matrix = build_expansion_matrix(n, vars_key, modulus=modulus)
    monomials = enumerate_monomials(n, vars_key)
    return tuple(_records_from_nullspace(matrix, monomials))


_AUTO = "auto"


def find_identities(n: int, vars=None, modulus=_AUTO) -> list[IdentityRecord]:
    """Nullspace basis of the expansion matrix as identity records, sorted
    by increasing term count with ties broken by the coefficient vector.

    modulus None means exact rationals, an integer means that prime field;
    the default follows degree: rationals through degree 5, F_101 beyond.
    """
    if vars is None:
        vars = _ALPHABET[:n]
    if modulus is _AUTO:
        modulus = None if n <= 5 else DEFAULT_PRIME
    return list(_find_identities_cached(n, tuple(sorted(vars)), modulus))


def is_identity(p: TernaryPolynomial) -> bool:
    """True when the expansion of p is exactly zero."""
    return expand_pats(p).is_zero()


# ---------------------------------------------------------------------------
# named identities


def _letter_sign(letters, reference) -> int:
    order = {x: i for i, x in enumerate(reference)}
    seq = [order[x] for x in letters]
    inv = sum(
        1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j]
    )
    return -1 if inv % 2 else 1


def _alternating_sum(shape, template, moving, coeff):
    """Sum of coeff * sign(s) * straighten(shape with template labels) over
    all arrangements s of the moving letters.  Template entries are letters
    (fixed) or integers (0-based slots into the arrangement)."""
    acc: dict = {}
    for arr in _arrangements(moving):
        sgn = _letter_sign(arr, sorted(moving))
        labels = [x if isinstance(x, str) else arr[x] for x in template]
        s, canon = straighten(apply_labels(shape, labels))
        if s:
            val = acc.get(canon, Fraction(0)) + coeff * sgn * s
            if val:
                acc[canon] = val
            elif canon in acc:
                del acc[canon]
    return acc


def _combine(degree, *sums):
    acc: dict = {}
    for part in sums:
        for tree, coeff in part.items():
            val = acc.get(tree, Fraction(0)) + coeff
            if val:
                acc[tree] = val
            elif tree in acc:
                del acc[tree]
    return TernaryPolynomial(acc, degree=degree)


@lru_cache(maxsize=None)
def builtin_identity(name: str) -> TernaryPolynomial:
    """The defining identities: P (degree 3), Q (degree 5), and the two
    degree-7 generators R and S (120 straightened terms each)."""
    if name == "P":
        return TernaryPolynomial(
            {("a", "b", "c"): 1, ("a", "c", "b"): 1}, degree=3
        )
    if name == "Q":
        return TernaryPolynomial(
            {
                ("a", ("b", "c", "d"), "e"): 1,
                ("a", ("c", "b", "d"), "e"): 1,
            },
            degree=5,
        )
    shapes = [t.shape for t in pa_types(7)]
    if name == "R":
        moving = "bcdefg"
        return _combine(
            7,
            _alternating_sum(shapes[1], ["a", 0, 1, 2, 3, 4, 5], moving, Fraction(1, 12)),
            _alternating_sum(shapes[2], ["a", 0, 1, 2, 3, 4, 5], moving, Fraction(-1, 12)),
        )
    if name == "S":
        m5 = "bcdef"
        return _combine(
            7,
            _alternating_sum(shapes[0], ["a", 0, 1, 2, "g", 3, 4], m5, Fraction(1, 4)),
            _alternating_sum(shapes[1], ["a", 0, 1, 2, 3, 4, "g"], m5, Fraction(-1, 6)),
            _alternating_sum(shapes[1], ["a", 0, 1, "g", 2, 3, 4], m5, Fraction(1, 4)),
            _alternating_sum(shapes[2], ["a", 0, 1, 2, 3, 4, "g"], m5, Fraction(1, 12)),
            _alternating_sum(shapes[3], ["a", 0, 1, 2, 3, "g", 4], m5, Fraction(-1, 6)),
            _alternating_sum(shapes[4], ["a", "b", 0, 1, 2, 3, 4], "cdefg", Fraction(-1, 12)),
        )
    raise ValueError(f"unknown identity {name!r}; expected P, Q, R or S")


@lru_cache(maxsize=None)
def nonlinear_identity(pattern: str, k: int = 1) -> TernaryPolynomial:
    """The short degree-7 identities in repeated variables.

    pattern 'aaabcde': the single 60-term identity; 'aabbcde': k in {1, 2}
    (2 swaps a and b); 'aabcdef': k in {1..5} (k > 1 swaps b with c, d, e, f).
    """
    shapes = [t.shape for t in pa_types(7)]
    if pattern == "aaabcde":
        if k != 1:
            raise ValueError("pattern aaabcde has a single identity")
        return _combine(
            7,
            _alternating_sum(shapes[0], ["a", 0, 1, "a", 2, 3, 4], "abcde", Fraction(1, 4)),
            _alternating_sum(shapes[1], ["a", 0, 1, 2, "a", 3, 4], "abcde", Fraction(-1, 12)),
            _alternating_sum(shapes[2], ["a", 0, 1, 2, 3, 4, "a"], "abcde", Fraction(-1, 12)),
            _alternating_sum(shapes[3], ["a", 1, 2, 3, "a", 4, 0], "abcde", Fraction(-1, 6)),
        )
    if pattern == "aabbcde":
        if k not in (1, 2):
            raise ValueError("pattern aabbcde has identities 1 and 2")
        base = _combine(
            7,
            _alternating_sum(shapes[0], ["a", 0, 1, "b", 2, 3, 4], "abcde", Fraction(1, 4)),
            _alternating_sum(shapes[1], ["a", 0, 1, 2, "b", 3, 4], "abcde", Fraction(-1, 12)),
            _alternating_sum(shapes[2], ["a", 0, 1, 2, 3, 4, "b"], "abcde", Fraction(-1, 12)),
            _alternating_sum(shapes[3], ["a", 0, 1, 2, "b", 3, 4], "abcde", Fraction(-1, 6)),
        )
        if k == 2:
            base = base.relabel({"a": "b", "b": "a"}).straightened()
        return base
    if pattern == "aabcdef":
        if k not in (1, 2, 3, 4, 5):
            raise ValueError("pattern aabcdef has identities 1..5")
        base = _combine(
            7,
            _alternating_sum(shapes[0], ["b", 0, 1, "a", 2, 3, 4], "acdef", Fraction(1, 4)),
            _alternating_sum(shapes[1], ["b", 0, 1, 2, "a", 3, 4], "acdef", Fraction(-1, 12)),
            _alternating_sum(shapes[2], ["b", 0, 1, 2, 3, 4, "a"], "acdef", Fraction(-1, 12)),
            _alternating_sum(shapes[3], ["b", 0, 1, 2, "a", 3, 4], "acdef", Fraction(-1, 6)),
        )
        if k > 1:
            other = "cdef"[k - 2]
            base = base.relabel({"b": other, other: "b"}).straightened()
        return base
    raise ValueError(f"unknown pattern {pattern!r}")


# ---------------------------------------------------------------------------
# orbits and degree-9 lifting


def orbit_rows(p: TernaryPolynomial, monomials=None) -> np.ndarray:
    """Integer coordinate rows of all variable permutations of p, in the
    canonical monomial basis (one row per arrangement, lex order)."""
    n = p.degree
    letters = sorted({x for t in p.terms for x in leaves_of(t)})
    if len(letters) != n:
        raise ValueError("orbits need a multilinear polynomial")
    if monomials is None:
        monomials = enumerate_monomials(n, letters)
    index = {m: j for j, m in enumerate(monomials)}
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // np.gcd(den, c.denominator)
    terms = [(tree, int(c * den)) for tree, c in p.terms.items()]
    arrangements = _arrangements(letters)
    rows = np.zeros((len(arrangements), len(monomials)), dtype=np.int64)
    for i, arr in enumerate(arrangements):
        mapping = dict(zip(letters, arr))
        row = rows[i]
        for tree, coeff in terms:
            s, canon = canonicalize(_relabel_tree(tree, mapping), n)
            if s:
                row[index[canon]] += s * coeff
    return rows


def _relabel_tree(tree, mapping):
    if isinstance(tree, str):
        return mapping.get(tree, tree)
    return (
        _relabel_tree(tree[0], mapping),
        _relabel_tree(tree[1], mapping),
        _relabel_tree(tree[2], mapping),
    )


def orbit_dimension(p: TernaryPolynomial, modulus: int | None = None) -> int:
    """Dimension of the span of all variable permutations of p."""
    if modulus is None:
        modulus = None if p.degree <= 5 else DEFAULT_PRIME
    mat = ExactMatrix.from_int_array(orbit_rows(p), p=modulus, sn_degree=p.degree)
    return mat.rank()


def lift_to_degree9(t: TernaryPolynomial) -> list[TernaryPolynomial]:
    """The ten degree-9 consequences of a multilinear degree-7 polynomial:
    substitute (x_k, h, i) for each of the seven arguments, then embed the
    whole polynomial in each slot of an outer product with h and i."""
    if t.degree != 7:
        raise ValueError("lifting starts from degree 7")
    letters = sorted({x for tree in t.terms for x in leaves_of(tree)})
    if letters != list("abcdefg"):
        raise ValueError("expected a multilinear polynomial in a..g")
    out = []
    for x in letters:
        def sub(tree, x=x):
            if isinstance(tree, str):
                return (tree, "h", "i") if tree == x else tree
            return tuple(sub(c) for c in tree)

        out.append(
            TernaryPolynomial(
                {sub(tree): c for tree, c in t.terms.items()}, degree=9
            ).straightened()
        )
    for wrap in (
        lambda tree: (tree, "h", "i"),
        lambda tree: ("h", tree, "i"),
        lambda tree: ("h", "i", tree),
    ):
        out.append(
            TernaryPolynomial(
                {wrap(tree): c for tree, c in t.terms.items()}, degree=9
            ).straightened()
        )
    return out

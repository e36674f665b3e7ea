"""The free associative dialgebra on a finite alphabet.

A basis monomial is a word with a marked letter, the center: any placement
of parentheses and products collapses to the normal form

    (a_1 |- ... |- a_{i-1}) |- a_i -| (a_{i+1} -| ... -| a_n),

written a_1 ... ^a_i ... a_n.  The two products act on normal forms by
concatenation: the left product keeps the left factor's center, the right
product keeps the right factor's center.  The conversion of multilinear
polynomials over a binary associative product into dialgebra polynomials
(choose one argument, make it the center of every monomial) is
``kp_transform``.
"""

from __future__ import annotations

from fractions import Fraction


class DialgebraWord:
    """A normal-form word: letter sequence plus center position (1-based)."""

    __slots__ = ("letters", "center")

    def __init__(self, letters, center: int):
        letters = tuple(letters)
        if not letters:
            raise ValueError("a word needs at least one letter")
        if not 1 <= center <= len(letters):
            raise ValueError(f"center {center} outside 1..{len(letters)}")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "center", int(center))

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DialgebraWord)
            and self.letters == other.letters
            and self.center == other.center
        )

    def __hash__(self):
        return hash((self.letters, self.center))

    def __repr__(self) -> str:
        return f"DialgebraWord({format_word(self)!r})"

    def __str__(self) -> str:
        return format_word(self)

    def __setattr__(self, *args):
        raise AttributeError("DialgebraWord is immutable")


def left_product(x: DialgebraWord, y: DialgebraWord) -> DialgebraWord:
    """x -| y: concatenate, keep the center of x."""
    return DialgebraWord(x.letters + y.letters, x.center)


def right_product(x: DialgebraWord, y: DialgebraWord) -> DialgebraWord:
    """x |- y: concatenate, keep the center of y."""
    return DialgebraWord(x.letters + y.letters, len(x.letters) + y.center)


def format_word(w: DialgebraWord) -> str:
    """bc^ade means letters b c a d e with the center at the third letter."""
    parts = list(w.letters)
    parts[w.center - 1] = "^" + parts[w.center - 1]
    return "".join(parts)


def parse_word(text: str) -> DialgebraWord:
    text = text.strip()
    if text.count("^") != 1:
        raise ValueError(f"word needs exactly one '^': {text!r}")
    idx = text.index("^")
    letters = text[:idx] + text[idx + 1 :]
    if not letters.isalpha() or not letters.islower():
        raise ValueError(f"letters must be a..z: {text!r}")
    return DialgebraWord(tuple(letters), idx + 1)


class DialgebraPolynomial:
    """A rational linear combination of normal-form words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for word, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff:
                clean[word] = coeff
        object.__setattr__(self, "terms", clean)

    @classmethod
    def from_pairs(cls, pairs) -> "DialgebraPolynomial":
        acc: dict[DialgebraWord, Fraction] = {}
        for coeff, word in pairs:
            acc[word] = acc.get(word, Fraction(0)) + Fraction(coeff)
        return cls(acc)

    def __add__(self, other: "DialgebraPolynomial") -> "DialgebraPolynomial":
        acc = dict(self.terms)
        for w, c in other.terms.items():
            acc[w] = acc.get(w, Fraction(0)) + c
        return DialgebraPolynomial(acc)

    def __sub__(self, other: "DialgebraPolynomial") -> "DialgebraPolynomial":
        return self + other.scale(-1)

    def scale(self, c) -> "DialgebraPolynomial":
        c = Fraction(c)
        return DialgebraPolynomial({w: c * v for w, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, DialgebraPolynomial) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "DialgebraPolynomial(0)"
        bits = []
        for w in sorted(self.terms, key=lambda w: (w.center, w.letters)):
            c = self.terms[w]
            s = "+" if c > 0 else "-"
            mag = abs(c)
            bits.append(f"{s} {'' if mag == 1 else str(mag)}{format_word(w)}")
        return "DialgebraPolynomial(" + " ".join(bits).lstrip("+ ") + ")"

    def __setattr__(self, *args):
        raise AttributeError("DialgebraPolynomial is immutable")


# ---------------------------------------------------------------------------
# operation trees and the algebra-to-dialgebra conversion

OpTree = object  # a leaf is a str; an internal node is a tuple of 2 or 3 subtrees


def validate_op_tree(tree) -> None:
    if isinstance(tree, str):
        return
    if isinstance(tree, tuple) and len(tree) in (2, 3):
        for child in tree:
            validate_op_tree(child)
        return
    raise ValueError(f"internal nodes must have 2 or 3 children: {tree!r}")


def op_tree_leaves(tree) -> tuple[str, ...]:
    if isinstance(tree, str):
        return (tree,)
    out: tuple[str, ...] = ()
    for child in tree:
        out += op_tree_leaves(child)
    return out


def kp_transform(m, center_leaf: str) -> DialgebraPolynomial:
    """Center-marking conversion of a multilinear binary-product expression.

    ``m`` is an operation tree or a list of (coefficient, tree) pairs; every
    product on the path to the chosen argument points at it, which in normal
    form just marks that argument as the center.  The result for a linear
    combination is the corresponding combination of words.
    """
    if isinstance(m, (str, tuple)):
        m = [(1, m)]
    acc: dict[DialgebraWord, Fraction] = {}
    for coeff, tree in m:
        validate_op_tree(tree)
        if any(not isinstance(node, str) and len(node) == 3 for node in _nodes(tree)):
            raise ValueError("conversion is defined over binary product trees")
        leaves = op_tree_leaves(tree)
        if len(set(leaves)) != len(leaves):
            raise ValueError(f"tree is not multilinear: {leaves}")
        if center_leaf not in leaves:
            raise ValueError(f"{center_leaf!r} is not a leaf of {tree!r}")
        word = DialgebraWord(leaves, leaves.index(center_leaf) + 1)
        acc[word] = acc.get(word, Fraction(0)) + Fraction(coeff)
    return DialgebraPolynomial(acc)


def _nodes(tree):
    yield tree
    if not isinstance(tree, str):
        for child in tree:
            yield from _nodes(child)


def alternating_sum_trees(a: str = "a", b: str = "b", c: str = "c"):
    """The alternating ternary sum xyz - xzy - yxz + yzx + zxy - zyx as
    signed binary product trees."""
    return [
        (1, ((a, b), c)),
        (-1, ((a, c), b)),
        (-1, ((b, a), c)),
        (1, ((b, c), a)),
        (1, ((c, a), b)),
        (-1, ((c, b), a)),
    ]

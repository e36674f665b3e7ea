"""Association types and canonical monomials for partially alternating
ternary products.

A monomial is a rooted ternary tree whose leaves carry letters: a leaf is a
one-character string, an internal node a 3-tuple of subtrees.  Association
types are the same trees with ``*`` at every leaf.  Two families of types
are generated together: completely alternating (CA) shapes, whose three
children all alternate, and partially alternating (PA) shapes, where only
the last two children alternate and the first child carries a nested PA
shape.  Monomials of the ternary operation itself always have a PA root.

Straightening rewrites a monomial to the canonical representative of its
equivalence class under those alternations, tracking the sign (0 when two
alternating arguments coincide).  Alternating siblings are put in canonical
order: larger degree first, and among equal degrees the recursive
first-difference order on subtrees.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from .symgroup import Permutation

LEAF = "*"

_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def degree_of(tree) -> int:
    if isinstance(tree, str):
        return 1
    return sum(degree_of(c) for c in tree)


def leaves_of(tree) -> tuple[str, ...]:
    if isinstance(tree, str):
        return (tree,)
    return leaves_of(tree[0]) + leaves_of(tree[1]) + leaves_of(tree[2])


def shape_of(tree):
    if isinstance(tree, str):
        return LEAF
    return tuple(shape_of(c) for c in tree)


def apply_labels(shape, labels):
    """Fill the leaves of a shape with the given letters, left to right."""
    labels = list(labels)

    def rec(node):
        if node == LEAF:
            return labels.pop(0)
        return tuple(rec(c) for c in node)

    out = rec(shape)
    if labels:
        raise ValueError("too many labels for shape")
    return out


def format_monomial(tree) -> str:
    if isinstance(tree, str):
        return tree
    return "(" + ",".join(format_monomial(c) for c in tree) + ")"


def parse_monomial(text: str):
    """Parse '(a,(b,c,d),e)' into a monomial tree."""
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def node():
        nonlocal pos
        skip_ws()
        if pos >= len(text):
            raise ValueError(f"unexpected end of monomial: {text!r}")
        if text[pos] == "(":
            pos += 1
            children = [node()]
            for _ in range(2):
                skip_ws()
                if pos >= len(text) or text[pos] != ",":
                    raise ValueError(f"expected ',' at {pos} in {text!r}")
                pos += 1
                children.append(node())
            skip_ws()
            if pos >= len(text) or text[pos] != ")":
                raise ValueError(f"expected ')' at {pos} in {text!r}")
            pos += 1
            return tuple(children)
        ch = text[pos]
        if ch not in _ALPHABET:
            raise ValueError(f"expected a letter at {pos} in {text!r}")
        pos += 1
        return ch

    out = node()
    skip_ws()
    if pos != len(text):
        raise ValueError(f"trailing input at {pos} in {text!r}")
    return out


# ---------------------------------------------------------------------------
# association types


class AssocType(NamedTuple):
    shape: tuple
    kind: str  # "CA" | "PA"
    degree: int

    def __str__(self) -> str:
        return format_monomial(apply_labels(self.shape, _ALPHABET[: self.degree]))


@lru_cache(maxsize=None)
def generate_types(n: int) -> tuple[tuple[AssocType, ...], tuple[AssocType, ...]]:
    """(CA types, PA types) of odd degree n, in canonical generation order.

    Degree splits n = i+j+k run with i descending, then j descending with
    j >= k; CA shapes additionally require i >= j.  Within a split, nested
    loops over the stored lower-degree type lists ascending, with weak
    precedence (repeats allowed) between equal-degree slots.
    """
    if n < 1 or n % 2 == 0:
        raise ValueError("degree must be odd and positive")
    if n == 1:
        t = (AssocType(LEAF, "CA", 1),)
        return t, (AssocType(LEAF, "PA", 1),)
    ca: list[AssocType] = []
    pa: list[AssocType] = []
    for i in range(n - 2, 0, -2):
        for j in range(min(i, n - i - 1), 0, -2):
            k = n - i - j
            if k < 1 or k > j:
                continue
            ca_i = generate_types(i)[0]
            ca_j = generate_types(j)[0]
            ca_k = generate_types(k)[0]
            for ti, t in enumerate(ca_i):
                for uj, u in enumerate(ca_j if i != j else ca_j[ti:]):
                    for v in ca_k if j != k else ca_k[(uj if i != j else ti + uj) :]:
                        ca.append(AssocType((t.shape, u.shape, v.shape), "CA", n))
    for i in range(n - 2, 0, -2):
        for j in range(n - i - 1, 0, -2):
            k = n - i - j
            if k < 1 or k > j:
                continue
            pa_i = generate_types(i)[1]
            ca_j = generate_types(j)[0]
            ca_k = generate_types(k)[0]
            for t in pa_i:
                for uj, u in enumerate(ca_j):
                    for v in ca_k if j != k else ca_k[uj:]:
                        pa.append(AssocType((t.shape, u.shape, v.shape), "PA", n))
    return tuple(ca), tuple(pa)


def ca_types(n: int) -> tuple[AssocType, ...]:
    return generate_types(n)[0]


def pa_types(n: int) -> tuple[AssocType, ...]:
    return generate_types(n)[1]


@lru_cache(maxsize=None)
def _pa_shape_index(n: int) -> dict:
    return {t.shape: i for i, t in enumerate(pa_types(n))}


def monomial_type_index(tree, n: int | None = None) -> int:
    """0-based index of the monomial's shape among the PA types of its degree."""
    if n is None:
        n = degree_of(tree)
    try:
        return _pa_shape_index(n)[shape_of(tree)]
    except KeyError:
        raise ValueError(f"{format_monomial(tree)} is not in canonical shape") from None


def countsymmetry(t: AssocType) -> int:
    """Order of the skew-symmetry group of an association type."""

    def rec(shape, complete: bool) -> int:
        if shape == LEAF:
            return 1
        c1, c2, c3 = shape
        if complete:
            d = rec(c1, True) * rec(c2, True) * rec(c3, True)
            if c1 == c2 == c3:
                return 6 * d
            if c1 == c2 or c2 == c3 or c1 == c3:
                return 2 * d
            return d
        d = rec(c1, False) * rec(c2, True) * rec(c3, True)
        return 2 * d if c2 == c3 else d

    return rec(t.shape, t.kind == "CA")


# ---------------------------------------------------------------------------
# comparison and straightening


def strictly_precedes(x, y) -> bool:
    """Total order on monomials: degree first, then first differing child
    recursively; letters compare alphabetically."""
    dx, dy = degree_of(x), degree_of(y)
    if dx != dy:
        return dx < dy
    if isinstance(x, str):
        return x < y
    for cx, cy in zip(x, y):
        if cx != cy:
            return strictly_precedes(cx, cy)
    return False


def _canonical_before(x, y) -> bool:
    """Sibling order at alternating positions: larger degree first, then
    the strictly_precedes order among equal degrees."""
    dx, dy = degree_of(x), degree_of(y)
    if dx != dy:
        return dx > dy
    if isinstance(x, str):
        return x < y
    for cx, cy in zip(x, y):
        if cx != cy:
            return _canonical_before(cx, cy)
    return False


class SignedMonomial(NamedTuple):
    sign: int  # +1, -1 or 0
    monomial: object  # tree, or None when sign == 0


_ZERO = SignedMonomial(0, None)


def _order_pair(a, b):
    """(sign, a', b') with the pair in canonical order; sign 0 if equal."""
    if a == b:
        return 0, a, b
    if _canonical_before(b, a):
        return -1, b, a
    return 1, a, b


def _complete(x):
    """Straighten with all three arguments alternating."""
    if isinstance(x, str):
        return 1, x
    s1, c1 = _complete(x[0])
    if s1 == 0:
        return 0, None
    s2, c2 = _complete(x[1])
    if s2 == 0:
        return 0, None
    s3, c3 = _complete(x[2])
    if s3 == 0:
        return 0, None
    sign = s1 * s2 * s3
    # three-element sort by adjacent swaps
    s, c1, c2 = _order_pair(c1, c2)
    if s == 0:
        return 0, None
    sign *= s
    s, c2, c3 = _order_pair(c2, c3)
    if s == 0:
        return 0, None
    sign *= s
    s, c1, c2 = _order_pair(c1, c2)
    if s == 0:
        return 0, None
    sign *= s
    return sign, (c1, c2, c3)


def _partial(x):
    """Straighten with only the last two arguments alternating at the root;
    the first argument is straightened the same way recursively."""
    if isinstance(x, str):
        return 1, x
    s1, c1 = _partial(x[0])
    if s1 == 0:
        return 0, None
    s2, c2 = _complete(x[1])
    if s2 == 0:
        return 0, None
    s3, c3 = _complete(x[2])
    if s3 == 0:
        return 0, None
    s, c2, c3 = _order_pair(c2, c3)
    if s == 0:
        return 0, None
    return s1 * s2 * s3 * s, (c1, c2, c3)


def straighten(x) -> SignedMonomial:
    """Canonical representative of a monomial with accumulated sign.

    The root alternates in its last two arguments only; every argument in
    an alternating position alternates completely.  Fixed points of this
    map are exactly the monomials whose shape is a canonical PA type and
    whose labels satisfy the type's ordering constraints.
    """
    s, t = _partial(x)
    return SignedMonomial(s, t) if s else _ZERO


def _pairwise(x):
    """Weaker rewriting: only the last two arguments of every node
    alternate (the symmetry available before complete alternation of
    nested arguments is established)."""
    if isinstance(x, str):
        return 1, x
    s1, c1 = _pairwise(x[0])
    if s1 == 0:
        return 0, None
    s2, c2 = _pairwise(x[1])
    if s2 == 0:
        return 0, None
    s3, c3 = _pairwise(x[2])
    if s3 == 0:
        return 0, None
    s, c2, c3 = _order_pair(c2, c3)
    if s == 0:
        return 0, None
    return s1 * s2 * s3 * s, (c1, c2, c3)


def canonicalize(tree, degree: int) -> SignedMonomial:
    """The canonical form a degree-n monomial basis uses.

    Degree 3 bases keep all labelings (no symmetry is assumed yet), degree
    5 bases use only the pairwise alternation in the last two arguments,
    and from degree 7 on the full straightening applies.
    """
    if degree <= 3:
        return SignedMonomial(1, tree)
    if degree == 5:
        s, t = _pairwise(tree)
    else:
        s, t = _partial(tree)
    return SignedMonomial(s, t) if s else _ZERO


# ---------------------------------------------------------------------------
# monomial enumeration


def _arrangements(symbols):
    """Distinct arrangements of a multiset of letters, lexicographically."""
    pool = sorted(symbols)
    counts: dict[str, int] = {}
    for s in pool:
        counts[s] = counts.get(s, 0) + 1
    distinct = sorted(counts)
    n = len(pool)
    out: list[tuple[str, ...]] = []
    cur: list[str] = []

    def rec():
        if len(cur) == n:
            out.append(tuple(cur))
            return
        for s in distinct:
            if counts[s]:
                counts[s] -= 1
                cur.append(s)
                rec()
                cur.pop()
                counts[s] += 1

    rec()
    return out


@lru_cache(maxsize=None)
def _enumerate_cached(n: int, vars_key: tuple[str, ...]):
    by_type: list[tuple] = []
    arrangements = _arrangements(vars_key)
    for t in pa_types(n):
        kept = []
        for labels in arrangements:
            tree = apply_labels(t.shape, labels)
            s, canon = canonicalize(tree, n)
            if s == 1 and canon == tree:
                kept.append(tree)
        by_type.append(tuple(kept))
    return tuple(by_type)


def enumerate_monomials_by_type(n: int, vars=None) -> list[list]:
    """Canonical monomials of degree n over the multiset vars, one list per
    PA type.  A monomial is kept when it equals its own canonical form."""
    if vars is None:
        vars = _ALPHABET[:n]
    vars_key = tuple(sorted(vars))
    if len(vars_key) != n:
        raise ValueError(f"need exactly {n} variables, got {len(vars_key)}")
    return [list(g) for g in _enumerate_cached(n, vars_key)]


def enumerate_monomials(n: int, vars=None) -> list:
    """Flat canonical monomial list, ordered by type then label sequence."""
    return [m for group in enumerate_monomials_by_type(n, vars) for m in group]


# ---------------------------------------------------------------------------
# skew-symmetry generators


class SkewIdentity(NamedTuple):
    type_index: int  # 0-based index into pa_types(n)
    permutation: Permutation  # m + m^perm == 0 for the identity labeling

    def monomial_pair(self, n: int):
        shape = pa_types(n)[self.type_index].shape
        base = _ALPHABET[:n]
        left = apply_labels(shape, base)
        right = apply_labels(shape, [base[self.permutation(i + 1) - 1] for i in range(n)])
        return left, right


def _block_swap(n: int, p1: int, p2: int, width: int) -> Permutation:
    images = list(range(1, n + 1))
    for i in range(width):
        images[p1 - 1 + i], images[p2 - 1 + i] = p2 + i, p1 + i
    return Permutation(images)


@lru_cache(maxsize=None)
def skew_identities(n: int) -> tuple[SkewIdentity, ...]:
    """One generator per adjacent equal-shape pair of alternating siblings,
    walked in post-order; the internals of a sibling equal in shape to its
    left neighbour are skipped (they follow by conjugation with the swap)."""
    out: list[SkewIdentity] = []
    for idx, t in enumerate(pa_types(n)):
        swaps: list[Permutation] = []

        def walk(shape, pos, spine):
            if shape == LEAF:
                return
            c1, c2, c3 = shape
            d1 = _shape_degree(c1)
            d2 = _shape_degree(c2)
            p1, p2, p3 = pos, pos + d1, pos + d1 + d2
            walk(c1, p1, spine)
            if spine or c2 != c1:
                walk(c2, p2, False)
            if c3 != c2:
                walk(c3, p3, False)
            if not spine and c1 == c2:
                swaps.append(_block_swap(n, p1, p2, d1))
            if c2 == c3:
                swaps.append(_block_swap(n, p2, p3, d2))

        walk(t.shape, 1, True)
        out.extend(SkewIdentity(idx, s) for s in swaps)
    return tuple(out)


@lru_cache(maxsize=None)
def _shape_degree(shape) -> int:
    if shape == LEAF:
        return 1
    return sum(_shape_degree(c) for c in shape)

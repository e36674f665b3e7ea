"""Per-partition rank analysis of the ternary operation's identities.

For each irreducible representation of S_n three ranks are compared:

* symrank: the rank of the association types' skew-symmetry identities,
  one block row I + rho(pi) per generator;
* exprank: the rank of the identities implied by dependence relations
  among the expansions of the association types, read off the reduced
  block matrix X (expansion blocks on the left, -I blocks on the right);
* symlifrank (degree 9): skew-symmetries together with the ten lifted
  consequences of each degree-7 generator.

A multilinear polynomial with type components I_1..I_t is an identity
exactly when sum_k rho(I_k) rho(E^k_j) vanishes for every center position
j, so identity block rows are the left nullspace of the X left side;
newrank = exprank - symrank counts identities beyond the skew-symmetries.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exactla import DEFAULT_PRIME, ExactMatrix, _reduce_modp
from .identities import (
    TernaryPolynomial,
    _expand_tree,
    builtin_identity,
    lift_to_degree9,
)
from .symgroup import Partition, partitions_of, rep_signed_sums
from .ternary import (
    apply_labels,
    leaves_of,
    monomial_type_index,
    pa_types,
    skew_identities,
)

_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class RankRow:
    partition: Partition
    dimension: int
    symrank: int
    exprank: int
    newrank: int
    symlifrank: int | None = None


@dataclass(frozen=True)
class RankTable:
    degree: int
    rows: tuple[RankRow, ...]

    def checksum(self) -> int:
        """Sum of newrank * dimension over all rows."""
        return sum(r.newrank * r.dimension for r in self.rows)


def _letters_to_perm0(letters) -> list[int]:
    return [ord(ch) - 97 for ch in letters]


@lru_cache(maxsize=None)
def _type_expansions(n: int):
    """Per association type: (perm array, coeff array, center array) of the
    expansion of the identity-labeled monomial."""
    out = []
    for t in pa_types(n):
        tree = apply_labels(t.shape, _ALPHABET[:n])
        perms, coeffs, centers = [], [], []
        for (letters, center), coeff in sorted(_expand_tree(tree).items()):
            perms.append(_letters_to_perm0(letters))
            coeffs.append(coeff)
            centers.append(center - 1)
        out.append(
            (
                np.array(perms, dtype=np.int64),
                np.array(coeffs, dtype=np.int64),
                np.array(centers, dtype=np.int64),
            )
        )
    return out


@lru_cache(maxsize=2)
def _lifted_generators() -> tuple[TernaryPolynomial, ...]:
    lifts = []
    for name in ("R", "S"):
        lifts.extend(lift_to_degree9(builtin_identity(name)))
    return tuple(lifts)


def _poly_instances(poly: TernaryPolynomial, t: int):
    """(perms, coeffs, type indices) of a multilinear polynomial's terms."""
    perms, coeffs, kinds = [], [], []
    den = 1
    for c in poly.terms.values():
        den = den * c.denominator // np.gcd(den, c.denominator)
    for tree, coeff in sorted(poly.terms.items(), key=lambda kv: leaves_of(kv[0])):
        perms.append(_letters_to_perm0(leaves_of(tree)))
        coeffs.append(int(coeff * den))
        kinds.append(monomial_type_index(tree, poly.degree))
    return (
        np.array(perms, dtype=np.int64),
        np.array(coeffs, dtype=np.int64),
        np.array(kinds, dtype=np.int64),
    )


@lru_cache(maxsize=None)
def _job_spec(n: int, include_lifts: bool):
    """One flat batch of (permutation, coefficient, group) instances per
    degree: expansion blocks (group i*n+j), skew generators, lift blocks."""
    types = _type_expansions(n)
    t = len(types)
    skews = skew_identities(n)
    perms, coeffs, groups = [], [], []
    for i, (tp, tc, tj) in enumerate(types):
        perms.append(tp)
        coeffs.append(tc)
        groups.append(i * n + tj)
    n_groups = t * n
    for s, sk in enumerate(skews):
        perms.append(np.array([[x - 1 for x in sk.permutation.images]], dtype=np.int64))
        coeffs.append(np.array([1], dtype=np.int64))
        groups.append(np.array([n_groups + s], dtype=np.int64))
    n_groups += len(skews)
    lift_start = n_groups
    if include_lifts:
        for lift in _lifted_generators():
            lp, lc, lk = _poly_instances(lift, t)
            perms.append(lp)
            coeffs.append(lc)
            groups.append(n_groups + lk)
            n_groups += t
    return (
        np.concatenate(perms),
        np.concatenate(coeffs),
        np.concatenate(groups),
        n_groups,
        lift_start,
    )


@lru_cache(maxsize=2)
def _partition_job(lam: Partition, n: int, p: int, include_lifts: bool):
    """All representation blocks for one partition: the X left side blocks,
    the skew-symmetry block rows, and (degree 9) the lifted block rows."""
    perms, coeffs, groups, n_groups, lift_start = _job_spec(n, include_lifts)
    sums = rep_signed_sums(lam, perms, coeffs, groups, n_groups, p)
    t = len(pa_types(n))
    skews = skew_identities(n)
    d = lam.dimension()
    eye = np.eye(d, dtype=np.int64)
    xleft = np.zeros((t * d, n * d), dtype=np.int64)
    for i in range(t):
        for j in range(n):
            xleft[i * d : (i + 1) * d, j * d : (j + 1) * d] = sums[i * n + j]
    msym = np.zeros((len(skews) * d, t * d), dtype=np.int64)
    for s, sk in enumerate(skews):
        block = (eye + sums[t * n + s]) % p
        k = sk.type_index
        msym[s * d : (s + 1) * d, k * d : (k + 1) * d] = block
    mlift = None
    if include_lifts:
        n_lifts = (n_groups - lift_start) // t
        mlift = np.zeros((n_lifts * d, t * d), dtype=np.int64)
        for l in range(n_lifts):
            for k in range(t):
                mlift[l * d : (l + 1) * d, k * d : (k + 1) * d] = sums[
                    lift_start + l * t + k
                ]
    return xleft, msym, mlift


def identity_block_row(
    lam: Partition, ident: TernaryPolynomial, p: int = DEFAULT_PRIME
) -> ExactMatrix:
    """The d x (t*d) block row [rho(I_1) ... rho(I_t)] of a multilinear
    polynomial, I_k collecting the terms of association type k."""
    n = ident.degree
    if lam.n != n:
        raise ValueError(f"partition size {lam.n} != polynomial degree {n}")
    t = len(pa_types(n))
    perms, coeffs, kinds = _poly_instances(ident, t)
    sums = rep_signed_sums(lam, perms, coeffs, kinds, t, p)
    d = lam.dimension()
    row = np.zeros((d, t * d), dtype=np.int64)
    for k in range(t):
        row[:, k * d : (k + 1) * d] = sums[k]
    return ExactMatrix.from_int_array(row, p=p, sn_degree=n)


def symrank(lam: Partition, n: int, p: int = DEFAULT_PRIME) -> int:
    """Rank of the stacked skew-symmetry block rows."""
    _, msym, _ = _partition_job(lam, n, p, n == 9)
    return len(_reduce_modp(msym, p)[1])


def build_X_lambda(lam: Partition, n: int, p: int = DEFAULT_PRIME) -> ExactMatrix:
    """The t*d x (n+t)*d block matrix: expansion blocks rho(E^i_j) on the
    left, -I_d in block (i, n+i) on the right."""
    xleft, _, _ = _partition_job(lam, n, p, n == 9)
    t = len(pa_types(n))
    d = lam.dimension()
    x = np.zeros((t * d, (n + t) * d), dtype=np.int64)
    x[:, : n * d] = xleft
    eye = np.eye(d, dtype=np.int64)
    for i in range(t):
        x[i * d : (i + 1) * d, (n + i) * d : (n + i + 1) * d] = (-eye) % p
    return ExactMatrix.from_int_array(x, p=p, sn_degree=n)


def exprank(lam: Partition, n: int, p: int = DEFAULT_PRIME) -> int:
    """Number of reduced rows of X with leading one in the right-side
    columns."""
    x = build_X_lambda(lam, n, p)
    d = lam.dimension()
    boundary = n * d
    return sum(1 for c in x.pivot_columns() if c >= boundary)


def symlifrank(lam: Partition, p: int = DEFAULT_PRIME) -> int:
    """Rank of the skew-symmetries stacked with the degree-9 consequences
    of the two degree-7 generators."""
    if lam.n != 9:
        raise ValueError("lifted consequences live in degree 9")
    _, msym, mlift = _partition_job(lam, 9, p, True)
    return len(_reduce_modp(np.vstack([msym, mlift]), p)[1])


def partition_ranks(lam: Partition, n: int, p: int = DEFAULT_PRIME) -> RankRow:
    sym = symrank(lam, n, p)
    exp = exprank(lam, n, p)
    lif = symlifrank(lam, p) if n == 9 else None
    return RankRow(
        partition=lam,
        dimension=lam.dimension(),
        symrank=sym,
        exprank=exp,
        newrank=exp - sym,
        symlifrank=lif,
    )


def rank_table(n: int, p: int = DEFAULT_PRIME, partitions=None, progress=None) -> RankTable:
    """Rank rows for every partition of n (or the given subset), in the
    canonical partition order."""
    rows = []
    for lam in partitions or partitions_of(n):
        row = partition_ranks(lam, n, p)
        if progress is not None:
            progress(row)
        rows.append(row)
    return RankTable(degree=n, rows=tuple(rows))

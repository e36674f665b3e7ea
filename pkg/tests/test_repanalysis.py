"""Per-partition rank computations against the reference tables."""

import json
from importlib import resources

import numpy as np
import pytest

from pats.exactla import ExactMatrix, _reduce_modp
from pats.identities import TernaryPolynomial, builtin_identity
from pats.repanalysis import (
    _type_expansions,
    build_X_lambda,
    exprank,
    identity_block_row,
    partition_ranks,
    rank_table,
    symlifrank,
    symrank,
)
from pats.symgroup import Partition, partitions_of, rep_matrix
from pats.ternary import apply_labels, pa_types, skew_identities


def golden(name):
    path = resources.files("pats").joinpath("golden", f"{name}.json")
    with path.open() as f:
        return json.load(f)


def test_type_expansion_center_partition():
    # the expansion of each type splits into n center classes whose sizes
    # sum to 6^((n-1)/2)
    for n in (3, 5, 7):
        for perms, coeffs, centers in _type_expansions(n):
            assert perms.shape[0] == 6 ** ((n - 1) // 2)
            assert set(centers) <= set(range(n))
            assert sorted(set(np.abs(coeffs))) == [1]


def test_identity_block_row_single_monomial():
    # one identity-labeled monomial of type k gives the identity matrix in
    # block k and zero elsewhere
    lam = Partition([3, 2])
    d = lam.dimension()
    for k, t in enumerate(pa_types(5)):
        poly = TernaryPolynomial({apply_labels(t.shape, "abcde"): 1}, degree=5)
        row = identity_block_row(lam, poly).int_array()
        for b in range(len(pa_types(5))):
            block = row[:, b * d : (b + 1) * d]
            want = np.eye(d, dtype=np.int64) if b == k else np.zeros((d, d))
            assert np.array_equal(block, want)


def test_identity_block_row_skew_identity():
    # a generator m + m^pi occupies one type block with I + rho(pi)
    lam = Partition([4, 2, 1])
    d = lam.dimension()
    si = skew_identities(7)[0]
    left, right = si.monomial_pair(7)
    poly = TernaryPolynomial({left: 1, right: 1}, degree=7)
    row = identity_block_row(lam, poly).int_array()
    want = (np.eye(d, dtype=np.int64) + rep_matrix(lam, si.permutation, 101)._num) % 101
    k = si.type_index
    assert np.array_equal(row[:, k * d : (k + 1) * d], want)


def test_block_row_ranks_weighted_by_dimension_give_orbit_dimension():
    # monomial spaces are quotients of the group algebra by the type
    # symmetries, so a generator's orbit dimension equals the total rank
    # its block row adds on top of the skew-symmetry rows, weighted by d
    from pats.repanalysis import _partition_job

    for name, want in (("R", 7), ("S", 42)):
        poly = builtin_identity(name)
        total = 0
        for lam in partitions_of(7):
            _, msym, _ = _partition_job(lam, 7, 101, False)
            row = identity_block_row(lam, poly).int_array()
            r_with = len(_reduce_modp(np.vstack([msym, row]), 101)[1])
            total += lam.dimension() * (r_with - symrank(lam, 7))
        assert total == want


def test_symrank_table4_spot_values():
    assert symrank(Partition([7]), 7) == 5
    assert symrank(Partition([1] * 7), 7) == 0
    assert symrank(Partition([2, 1, 1, 1, 1, 1]), 7) == 17


def test_exprank_table4_spot_values():
    assert exprank(Partition([3, 1, 1, 1, 1]), 7) == 64
    assert exprank(Partition([7]), 7) == 5
    assert exprank(Partition([1] * 7), 7) == 2


def test_x_lambda_shape_and_right_blocks():
    lam = Partition([7])
    x = build_X_lambda(lam, 7)
    assert x.shape == (5, 12)
    arr = x.int_array()
    assert np.array_equal(arr[:, 7:], (-np.eye(5, dtype=np.int64)) % 101)


def test_exprank_equals_block_count_minus_left_rank():
    # rows with right-side pivots are exactly t*d - rank(left side)
    for lam in (Partition([4, 3]), Partition([3, 2, 2])):
        x = build_X_lambda(lam, 7)
        d = lam.dimension()
        left = ExactMatrix.from_int_array(x.int_array()[:, : 7 * d], p=101)
        assert exprank(lam, 7) == 5 * d - left.rank()


def test_rank_table_degree7_matches_golden():
    want = golden("table4")
    table = rank_table(7)
    got = [
        {
            "partition": str(r.partition),
            "dimension": r.dimension,
            "symrank": r.symrank,
            "exprank": r.exprank,
            "newrank": r.newrank,
        }
        for r in table.rows
    ]
    assert got == want["rows"]
    assert table.checksum() == 49


def test_newrank_positive_partitions():
    table = rank_table(7)
    positive = {str(r.partition): r.newrank for r in table.rows if r.newrank > 0}
    assert positive == {"31111": 1, "22111": 1, "211111": 3, "1111111": 2}


def test_exprank_invariant_under_prime_choice():
    for lam in (Partition([3, 1, 1, 1, 1]), Partition([2, 2, 1, 1, 1])):
        assert exprank(lam, 7, p=101) == exprank(lam, 7, p=103)


def test_symlifrank_requires_degree9():
    with pytest.raises(ValueError):
        symlifrank(Partition([7]))


def test_degree9_small_partitions_sandwich_and_equality():
    for parts in ((9,), (8, 1), (2, 1, 1, 1, 1, 1, 1, 1), (1,) * 9):
        lam = Partition(parts)
        row = partition_ranks(lam, 9)
        assert row.symrank <= row.symlifrank <= row.exprank
        assert row.symlifrank == row.exprank


def test_degree9_golden_spot_rows():
    want = {r["partition"]: r for r in golden("degree9")["rows"]}
    for name in ("9", "81", "111111111"):
        lam = Partition([int(c) for c in name])
        row = partition_ranks(lam, 9)
        g = want[name]
        assert (row.symrank, row.symlifrank, row.exprank) == (
            g["symrank"], g["symlifrank"], g["exprank"],
        )


def test_identity_block_row_validates_degree():
    with pytest.raises(ValueError):
        identity_block_row(Partition([3, 2]), builtin_identity("R"))


def test_ranks_invariant_under_tableau_ordering():
    # reversing the tableau enumeration changes every Clifton matrix but
    # no rank; caches keyed on tableau data must be cleared around it
    import pats.repanalysis as ra
    import pats.symgroup as sg

    lam = Partition([3, 2, 2])
    base_exp = exprank(lam, 7)
    base_sym = symrank(lam, 7)
    original = sg.standard_tableaux

    def clear_caches():
        sg._tableau_data.cache_clear()
        sg._clifton_id_inverse.cache_clear()
        sg.rep_matrix.cache_clear()
        ra._partition_job.cache_clear()

    def reversed_tabs(l):
        return tuple(reversed(original(l)))

    try:
        sg.standard_tableaux = reversed_tabs
        clear_caches()
        assert exprank(lam, 7) == base_exp
        assert symrank(lam, 7) == base_sym
    finally:
        sg.standard_tableaux = original
        clear_caches()

"""Acceptance suite: every criterion checked at exact tolerance.

Each test prints one line; run with ``pytest tests/test_acceptance.py -v -s``
to see them as they complete.  All comparisons are exact (integer or
rational equality, or equality of ranks over F_p with p = 101).
"""

import itertools
import json
import random
import time
from fractions import Fraction
from importlib import resources
from math import factorial

import numpy as np

from pats.dialgebra import DialgebraWord, left_product, right_product
from pats.exactla import ExactMatrix
from pats.identities import (
    build_expansion_matrix,
    builtin_identity,
    expand_pats,
    find_identities,
    is_identity,
    nonlinear_identity,
    orbit_dimension,
    orbit_rows,
)
from pats.repanalysis import rank_table
from pats.symgroup import Partition, Permutation, compose, partitions_of, rep_matrix
from pats.ternary import (
    apply_labels,
    ca_types,
    enumerate_monomials,
    enumerate_monomials_by_type,
    pa_types,
    straighten,
)


def golden(name):
    path = resources.files("pats").joinpath("golden", f"{name}.json")
    with path.open() as f:
        return json.load(f)


def report(num, text, started):
    print(f"ACCEPTANCE {num}: PASS ({time.time() - started:.1f}s) {text}", flush=True)


def test_criterion_1_degree_3():
    started = time.time()
    m = build_expansion_matrix(3)
    assert m.shape == (18, 6)
    got_transpose = [[int(m.entry(i, j)) for i in range(18)] for j in range(6)]
    assert got_transpose == golden("table1")["matrix_transpose"]
    basis = m.nullspace_basis()
    assert basis == [
        [1, 1, 0, 0, 0, 0],
        [0, 0, 1, 1, 0, 0],
        [0, 0, 0, 0, 1, 1],
    ]
    records = find_identities(3)
    assert {str(r.polynomial) for r in records} == {
        "(a,b,c) + (a,c,b)",
        "(b,a,c) + (b,c,a)",
        "(c,a,b) + (c,b,a)",
    }
    report(1, "degree 3: 18x6 matrix bit-exact, nullity 3, pair-sum basis", started)


def test_criterion_2_degree_5():
    started = time.time()
    counts = [len(g) for g in enumerate_monomials_by_type(5)]
    assert counts == [30, 60]
    mq = build_expansion_matrix(5)
    assert mq.shape == (600, 90)
    assert mq.rank() == 50
    mp = build_expansion_matrix(5, modulus=101)
    assert mp.rank() == 50
    assert len(find_identities(5)) == 40
    want = golden("degree5_expansions")
    from pats.dialgebra import format_word
    from pats.ternary import parse_monomial

    for mono_text, terms in want.items():
        got = {
            format_word(w): int(c)
            for w, c in expand_pats(parse_monomial(mono_text)).terms.items()
        }
        assert got == terms
    report(2, "degree 5: 90 monomials, 600x90, rank 50 (Q and F_101), "
              "nullity 40, printed expansions term-for-term", started)


def test_criterion_3_degree_7_multilinear():
    started = time.time()
    counts = [len(g) for g in enumerate_monomials_by_type(7)]
    assert counts == [630, 420, 420, 420, 70]
    assert sum(counts) == 1960
    m = build_expansion_matrix(7, modulus=101)
    assert m.shape == (35280, 1960)
    records = find_identities(7, modulus=101)
    assert m.cols - len(records) == 1911  # rank
    assert len(records) == 49
    profile = {}
    for r in records:
        key = (
            r.term_count,
            tuple(sorted({abs(int(c)) for c in r.coefficients})),
            tuple(t + 1 for t in r.types),
        )
        profile[key] = profile.get(key, 0) + 1
    assert profile == {
        (120, (1,), (2, 3)): 7,
        (120, (1,), (1, 2, 3, 4)): 28,
        (120, (1,), (1, 2, 3, 4, 5)): 7,
        (180, (1, 2), (1, 2, 3, 4)): 7,
    }
    # term counts ascend, so the 180-term identities close the sorted basis
    assert [r.term_count for r in records] == sorted(r.term_count for r in records)
    report(3, "degree 7: 1960 monomials (630/420/420/420/70), 35280x1960, "
              "rank 1911 mod 101, nullity 49, profile 7/28/7 x120 + 7x180", started)


def test_criterion_4_generators_r_s():
    started = time.time()
    r = builtin_identity("R")
    s = builtin_identity("S")
    for poly in (r, s):
        assert poly.term_count == 120
        assert set(poly.terms.values()) <= {Fraction(1), Fraction(-1)}
        assert is_identity(poly)
    assert orbit_dimension(r) == 7
    assert orbit_dimension(s) == 42
    stacked = np.vstack([orbit_rows(r), orbit_rows(s)])
    combined = ExactMatrix.from_int_array(stacked, p=101, sn_degree=7).rank()
    assert combined == 49  # 7 + 42 with zero intersection
    report(4, "generators: 120 terms each, coefficients +-1, identities, "
              "orbits 7 and 42, direct sum of rank 49", started)


def test_criterion_5_rank_table_degree_7():
    started = time.time()
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
    positive = {str(r.partition): r.newrank for r in table.rows if r.newrank > 0}
    assert positive == {"31111": 1, "22111": 1, "211111": 3, "1111111": 2}
    assert table.checksum() == 49
    report(5, "degree-7 rank table: 15 rows cell-for-cell, checksum 49", started)


def test_criterion_6_nonlinear_degree_7():
    started = time.time()
    counts = [len(g) for g in enumerate_monomials_by_type(7, "aaabcde")]
    assert counts == [60, 34, 34, 34, 3] and sum(counts) == 165
    m = build_expansion_matrix(7, "aaabcde", modulus=101)
    records = find_identities(7, "aaabcde", modulus=101)
    assert m.cols - len(records) == 164
    assert len(records) == 1
    assert records[0].term_count == 60
    assert len(find_identities(7, "aabbcde", modulus=101)) == 2
    records6 = find_identities(7, "aabcdef", modulus=101)
    assert len(records6) == 12
    sixty = [r for r in records6 if r.term_count == 60]
    assert len(sixty) == 5
    for pattern, count in (("aaabcde", 1), ("aabbcde", 2), ("aabcdef", 5)):
        for k in range(1, count + 1):
            assert is_identity(nonlinear_identity(pattern, k))
    report(6, "nonlinear: 165 monomials rank 164 with one 60-term identity; "
              "nullities 2 and 12 (five 60-term); printed identities hold", started)


def test_criterion_7_degree_9():
    started = time.time()
    assert len(ca_types(9)) == 4
    assert len(pa_types(9)) == 12
    table = rank_table(9)
    want = {r["partition"]: r for r in golden("degree9")["rows"]}
    assert len(table.rows) == 30
    for row in table.rows:
        assert row.symrank <= row.symlifrank <= row.exprank
        assert row.symlifrank == row.exprank, str(row.partition)
        g = want[str(row.partition)]
        assert (row.dimension, row.symrank, row.symlifrank, row.exprank) == (
            g["dimension"], g["symrank"], g["symlifrank"], g["exprank"],
        )
    report(7, "degree 9: 4 CA / 12 PA types; symlifrank == exprank for all "
              "30 partitions with the sandwich property", started)


# -- criterion 8: property suites -------------------------------------------


def random_word(rng):
    n = rng.randint(1, 6)
    letters = [rng.choice("abcdefg") for _ in range(n)]
    return DialgebraWord(letters, rng.randint(1, n))


def all_ternary_shapes(degree):
    if degree == 1:
        return ["*"]
    shapes = []
    for i in range(1, degree - 1, 2):
        for j in range(1, degree - i, 2):
            k = degree - i - j
            if k < 1:
                continue
            for a in all_ternary_shapes(i):
                for b in all_ternary_shapes(j):
                    for c in all_ternary_shapes(k):
                        shapes.append((a, b, c))
    return shapes


def test_criterion_8_property_suites():
    started = time.time()

    # dialgebra axioms on 1000+ random triples
    rng = random.Random(99)
    for _ in range(1000):
        x, y, z = (random_word(rng) for _ in range(3))
        assert left_product(left_product(x, y), z) == left_product(x, left_product(y, z))
        assert right_product(right_product(x, y), z) == right_product(x, right_product(y, z))
        assert left_product(right_product(x, y), z) == right_product(x, left_product(y, z))
        assert right_product(left_product(x, y), z) == right_product(x, right_product(y, z))
        assert left_product(x, left_product(y, z)) == left_product(x, right_product(y, z))

    # straightening idempotence on 10^4 random monomials of degree <= 9
    from tests_support import random_ternary_shape

    for _ in range(10_000):
        degree = rng.choice([1, 3, 5, 7, 9])
        labels = [rng.choice("abcde") for _ in range(degree)]
        tree = apply_labels(random_ternary_shape(rng, degree), labels)
        s, m = straighten(tree)
        if s:
            assert straighten(m) == (1, m)

    # straightening soundness, exhaustively for multilinear degree <= 7
    for degree in (1, 3, 5, 7):
        letters = "abcdefg"[:degree]
        for shape in all_ternary_shapes(degree):
            for labels in itertools.permutations(letters):
                tree = apply_labels(shape, labels)
                s, m = straighten(tree)
                e = expand_pats(tree)
                if s == 0:
                    assert e.is_zero()
                else:
                    assert e == expand_pats(m).scale(s)

    # representation homomorphism on 100 random pairs per partition, n <= 7
    for n in (3, 5, 7):
        for lam in partitions_of(n):
            for _ in range(100):
                p = Permutation(rng.sample(range(1, n + 1), n))
                q = Permutation(rng.sample(range(1, n + 1), n))
                a = rep_matrix(lam, p, 101)._num
                b = rep_matrix(lam, q, 101)._num
                c = rep_matrix(lam, compose(p, q), 101)._num
                assert np.array_equal(a @ b % 101, c)

    # sum of squared dimensions
    for n in (3, 5, 7, 9):
        assert sum(lam.dimension() ** 2 for lam in partitions_of(n)) == factorial(n)

    # rank agreement Q vs F_p for every degree <= 5 expansion matrix
    patterns = ["abc", "aab", "aaa", "abcde", "aabcd", "aabbc", "aaabc",
                "aaabb", "aaaab", "aaaaa"]
    for pattern in patterns:
        degree = len(pattern)
        mq = build_expansion_matrix(degree, pattern)
        mp = build_expansion_matrix(degree, pattern, modulus=101)
        assert mq.rank() == mp.rank()

    report(8, "property suites: dialgebra axioms, idempotence, exhaustive "
              "soundness, homomorphism, dimension sums, Q/F_p agreement", started)

import itertools
import random

import pytest

import pircodex as px
from pircodex.fmatrix import Matrix

from conftest import EX1_ROWS
from oracle import (
    binary_codewords,
    binary_min_distance,
    ghw_by_subspaces,
    poly_long_division_remainder_gf2,
)


# -- constructors ------------------------------------------------------------------

def test_example_code_parameters(ex1):
    assert (ex1.n, ex1.k) == (5, 3)
    assert ex1.min_distance() == 2


def test_identity_generator_is_universe_code(gf2):
    code = px.code_from_generator(gf2, [[1, 0], [0, 1]])
    assert (code.n, code.k) == (2, 2)


def test_rank_deficient_generator_rejected(gf2):
    with pytest.raises(px.InvalidCodeError):
        px.code_from_generator(gf2, [[1, 0, 1, 1], [1, 0, 1, 1]])


def test_cyclic_hamming(hamming74):
    assert (hamming74.n, hamming74.k) == (7, 4)
    assert hamming74.min_distance() == 3
    assert hamming74.min_distance() == binary_min_distance(hamming74.G.rows)


def test_cyclic_unit_polynomial_gives_universe(gf2):
    code = px.code_cyclic(gf2, 5, [1])
    assert (code.n, code.k) == (5, 5)


def test_cyclic_rejects_nondivisor(gf2):
    # long-division oracle: x^7 + 1 has a nonzero remainder modulo x^2 + 1
    xn1 = [1, 0, 0, 0, 0, 0, 0, 1]
    assert poly_long_division_remainder_gf2(xn1, [1, 0, 1])
    with pytest.raises(px.InvalidPolynomialError):
        px.code_cyclic(gf2, 7, [1, 0, 1])


def test_reed_muller_first_order(rm13):
    assert (rm13.n, rm13.k) == (8, 4)
    assert rm13.min_distance() == 4
    assert rm13.min_distance() == binary_min_distance(rm13.G.rows)


def test_reed_muller_extremes():
    rep = px.code_reed_muller(0, 3)
    assert (rep.n, rep.k) == (8, 1)
    assert rep.G.rows[0] == [1] * 8
    universe = px.code_reed_muller(2, 2)
    assert (universe.n, universe.k) == (4, 4)
    with pytest.raises(ValueError):
        px.code_reed_muller(3, 2)


def test_mds_construction(mds53):
    assert (mds53.n, mds53.k) == (5, 3)
    assert mds53.min_distance() == 5 - 3 + 1


def test_mds_universe_and_field_bound(gf2, gf5):
    assert px.code_mds(gf5, 3, 3).G == Matrix.identity(gf5, 3)
    with pytest.raises(px.FieldTooSmallError):
        px.code_mds(gf2, 5, 3)


def test_repetition_distance(gf2):
    assert px.code_repetition(gf2, 6).min_distance() == 6


# -- information sets ----------------------------------------------------------------

def test_information_sets_of_example_code(ex1):
    assert ex1.is_information_set((1, 2, 3))
    assert not ex1.is_information_set((1, 2, 4))
    with pytest.raises(ValueError):
        ex1.is_information_set((1, 2))


def test_mds_information_set_from_listed_family(mds53):
    assert mds53.is_information_set((1, 4, 5))


def test_every_k_subset_of_mds_is_information_set():
    code = px.code_mds(px.Field(11), 8, 4)
    for coords in itertools.combinations(range(1, 9), 4):
        assert code.is_information_set(coords)


def test_find_information_set_within_support(ex1):
    assert ex1.find_information_set() == (1, 2, 3)
    assert ex1.find_information_set(within=(2, 3, 4, 5)) == (2, 3, 4)
    assert ex1.find_information_set(within=(1, 2, 4)) is None


def test_information_set_invariant_under_row_operations(ex1, gf2):
    rng = random.Random(101)
    subsets = list(itertools.combinations(range(1, 6), 3))
    trials = 0
    while trials < 100:
        r = Matrix(gf2, [[rng.randrange(2) for _ in range(3)] for _ in range(3)])
        if r.rank() < 3:
            continue
        trials += 1
        scrambled = px.LinearCode(gf2, r.mul(ex1.G))
        for coords in subsets:
            assert scrambled.is_information_set(coords) == ex1.is_information_set(coords)


# -- weight hierarchy -----------------------------------------------------------------

def test_example_code_second_weight(ex1):
    assert ex1.generalized_hamming_weight(2) == 3


def test_first_weight_equals_min_distance(ex1, hamming74, rm13, mds53):
    for code in (ex1, hamming74, rm13, mds53):
        assert code.generalized_hamming_weight(1) == code.min_distance()


def test_mds_weight_hierarchy(mds53):
    assert [mds53.generalized_hamming_weight(s) for s in (1, 2, 3)] == [3, 4, 5]


def test_weight_hierarchy_strictly_increasing(ex1, hamming74, rm13, mds53, gf2):
    codes = [ex1, hamming74, rm13, mds53,
             px.code_repetition(gf2, 5),
             px.code_mds(px.Field(2, 3), 8, 3),
             px.code_cyclic(gf2, 9, [1, 0, 0, 1])]
    for code in codes:
        weights = [code.generalized_hamming_weight(s) for s in range(1, code.k + 1)]
        assert all(a < b for a, b in zip(weights, weights[1:])), (code, weights)
        assert weights[-1] <= code.n


def test_weight_hierarchy_against_subspace_oracle():
    rng = random.Random(8080)
    gf2 = px.Field(2)
    checked = 0
    while checked < 20:
        n = rng.randrange(4, 9)
        k = rng.randrange(2, min(4, n) + 1)
        rows = [[rng.randrange(2) for _ in range(n)] for _ in range(k)]
        if Matrix(gf2, rows).rank() < k:
            continue
        checked += 1
        code = px.code_from_generator(gf2, rows)
        for s in range(1, k + 1):
            assert code.generalized_hamming_weight(s) == ghw_by_subspaces(code, s)


def test_weight_hierarchy_parameter_and_budget_errors(ex1):
    with pytest.raises(ValueError):
        ex1.generalized_hamming_weight(0)
    with pytest.raises(ValueError):
        ex1.generalized_hamming_weight(4)
    with pytest.raises(px.BudgetExceededError):
        ex1.generalized_hamming_weight(2, budget=4)
    with pytest.raises(px.BudgetExceededError):
        ex1.min_distance(budget=4)


# -- codeword enumeration ---------------------------------------------------------------

def test_codewords_match_oracle(ex1):
    assert sorted(ex1.codewords()) == sorted(binary_codewords(EX1_ROWS))


def test_encode_and_contains(ex1):
    word = ex1.encode([1, 0, 1])
    assert word == [1, 0, 1, 1, 1]
    assert ex1.contains(word)
    assert not ex1.contains([1, 0, 1, 0, 0])


# -- permutations and automorphisms --------------------------------------------------------

def test_cyclic_shift_is_automorphism(hamming74):
    shift = px.rotation_permutations(7)[1]
    assert hamming74.is_automorphism(shift)


def test_identity_is_automorphism(ex1):
    assert ex1.is_automorphism(tuple(range(1, 6)))


def test_transposition_is_not_automorphism(ex1):
    swap15 = (5, 2, 3, 4, 1)
    assert not ex1.is_automorphism(swap15)
    # witness: (0,0,1,0,1) permutes to (1,0,1,0,0), which is not a codeword
    assert ex1.contains([0, 0, 1, 0, 1])
    assert not ex1.contains([1, 0, 1, 0, 0])


def test_permuted_moves_columns(ex1):
    perm = (2, 3, 4, 5, 1)
    moved = ex1.permuted(perm)
    for row_old, row_new in zip(ex1.G.rows, moved.G.rows):
        for j in range(5):
            assert row_new[perm[j] - 1] == row_old[j]


def test_permutation_validation(ex1):
    with pytest.raises(ValueError):
        ex1.is_automorphism((1, 2, 3))
    with pytest.raises(ValueError):
        ex1.is_automorphism((1, 1, 2, 3, 4))


def test_rotation_family_on_cyclic_code(hamming74):
    fam = px.automorphism_family(hamming74, "cyclic_shifts")
    assert len(set(fam)) == 7
    for j in range(1, 8):
        assert sorted(p[j - 1] for p in fam) == list(range(1, 8))
    for p in fam:
        assert hamming74.is_automorphism(p)


def test_translation_family_on_rm(rm13):
    fam = px.automorphism_family(rm13, "rm_translations")
    assert len(set(fam)) == 8
    for p in fam:
        assert rm13.is_automorphism(p)
    for j in range(1, 9):
        assert sorted(p[j - 1] for p in fam) == list(range(1, 9))


def test_family_kind_mismatch(ex1):
    with pytest.raises(px.UnsupportedFamilyError):
        px.automorphism_family(ex1, "rm_translations")
    with pytest.raises(px.UnsupportedFamilyError):
        px.automorphism_family(ex1, "cyclic_shifts")
    with pytest.raises(px.UnsupportedFamilyError):
        px.automorphism_family(ex1, "reflections")


# -- serialization -----------------------------------------------------------------------

def test_code_file_roundtrip(tmp_path, ex1):
    path = tmp_path / "code.txt"
    px.save_code(ex1, path)
    again = px.load_code(path)
    assert again.G == ex1.G
    assert again.field == ex1.field


def test_code_file_roundtrip_extension_field(tmp_path, gf4):
    code = px.code_mds(gf4, 4, 2)
    path = tmp_path / "code_gf4.txt"
    px.save_code(code, path)
    again = px.load_code(path)
    assert again.G == code.G
    assert "0x" in path.read_text()


def test_code_text_rejects_malformed(gf2):
    with pytest.raises(ValueError):
        px.code_from_text("5 3\n1 0 0 1 0\n")
    with pytest.raises(ValueError):
        px.code_from_text("field: gf(2)\n5 3\n1 0 0 1 0\n")

import random

import pytest

import pircodex as px

EX1_ROWS = [[1, 0, 0, 1, 0],
            [0, 1, 0, 1, 0],
            [0, 0, 1, 0, 1]]

EX1_LAMBDA_ROWS = ((0, 1, 1, 1, 1),
                   (1, 0, 0, 1, 1),
                   (1, 1, 1, 0, 0))

MDS53_INFO_SETS = [(1, 2, 3), (1, 4, 5), (2, 3, 4), (1, 2, 5), (3, 4, 5)]


@pytest.fixture(scope="session")
def gf2():
    return px.Field(2)


@pytest.fixture(scope="session")
def gf4():
    return px.Field(2, 2)


@pytest.fixture(scope="session")
def gf5():
    return px.Field(5)


@pytest.fixture(scope="session")
def ex1(gf2):
    return px.code_from_generator(gf2, EX1_ROWS)


@pytest.fixture(scope="session")
def ex1_lambda():
    return px.RateMatrix(3, 2, EX1_LAMBDA_ROWS)


@pytest.fixture(scope="session")
def mds53(gf5):
    return px.code_mds(gf5, 5, 3)


@pytest.fixture(scope="session")
def mds53_lambda():
    rows = tuple(tuple(1 if j in info else 0 for j in range(1, 6))
                 for info in MDS53_INFO_SETS)
    return px.RateMatrix(5, 3, rows)


@pytest.fixture(scope="session")
def hamming74(gf2):
    return px.code_cyclic(gf2, 7, [1, 1, 0, 1])


@pytest.fixture(scope="session")
def hamming74_lambda(hamming74):
    perms = px.rotation_permutations(7)
    return px.rate_matrix_from_permutations(hamming74, perms,
                                            hamming74.find_information_set())


@pytest.fixture(scope="session")
def rm13():
    return px.code_reed_muller(1, 3)


@pytest.fixture(scope="session")
def rm13_lambda(rm13):
    perms = px.translation_permutations(3)
    return px.rate_matrix_from_permutations(rm13, perms, rm13.find_information_set())


def retrieve(code, lam, f, m, seed):
    """Run one full session against fresh random contents; return (ok, result, files)."""
    beta = lam.nu ** f
    files = px.random_files(code.field, f, beta, code.k, random.Random(f"{seed}:files"))
    storage = px.encode_storage(files, code)
    result = px.run_session(storage, code, lam, m, seed=f"{seed}:session")
    return result.decoded == files[m - 1], result, files

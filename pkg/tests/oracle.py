"""Independent reference computations the tests check the library against.

Everything here recomputes values from first principles, sharing as little
machinery with the package as possible.
"""

from itertools import combinations, product


def gf4_mul_table():
    """Multiplication table of GF(4) with modulus z^2 + z + 1.

    Elements are coefficient pairs packed as ints: value = c0 + 2*c1.
    Built by polynomial multiplication over GF(2) followed by reduction
    with z^2 = z + 1.
    """
    table = {}
    for a in range(4):
        for b in range(4):
            a0, a1 = a & 1, a >> 1
            b0, b1 = b & 1, b >> 1
            c0 = a0 * b0
            c1 = a0 * b1 + a1 * b0
            c2 = a1 * b1
            # z^2 -> z + 1
            c0 = (c0 + c2) % 2
            c1 = (c1 + c2) % 2
            table[(a, b)] = c0 + 2 * c1
    return table


def binary_codewords(rows):
    """All codewords of a binary code given 0/1 generator rows, as tuples."""
    k, n = len(rows), len(rows[0])
    words = []
    for picks in product((0, 1), repeat=k):
        w = [0] * n
        for p, row in zip(picks, rows):
            if p:
                w = [(x + y) % 2 for x, y in zip(w, row)]
        words.append(tuple(w))
    return words


def binary_min_distance(rows):
    return min(sum(w) for w in binary_codewords(rows) if any(w))


def ghw_by_subspaces(code, s):
    """Weight-hierarchy value via message-space subspace enumeration.

    Enumerates every s-dimensional subspace of GF(q)^k exactly once through
    reduced-echelon bases, maps the basis through the generator matrix, and
    takes the union of the image supports.
    """
    q, k, n = code.field.q, code.k, code.n
    best = n
    for pivots in combinations(range(k), s):
        free = [(i, j) for i in range(s) for j in range(k)
                if j > pivots[i] and j not in pivots]
        for vals in product(range(q), repeat=len(free)):
            basis = [[0] * k for _ in range(s)]
            for i, p in enumerate(pivots):
                basis[i][p] = 1
            for (i, j), v in zip(free, vals):
                basis[i][j] = v
            support = set()
            for msg in basis:
                word = code.encode(msg)
                support.update(j for j, v in enumerate(word) if v)
            if len(support) < best:
                best = len(support)
    return best


def download_by_rounds(kappa, nu, n, f):
    """Total download recomputed by summing the per-round schedule counts."""

    def u_cum(ell):
        return sum(kappa ** (f - h - 1) * (nu - kappa) ** (h - 1)
                   for h in range(1, ell + 1))

    from math import comb
    per_rep = kappa ** (f - 1)  # plain reads
    for ell in range(1, f):
        du = u_cum(ell) - u_cum(ell - 1)
        per_rep += comb(f - 1, ell) * du * kappa         # masking sums
        per_rep += comb(f - 1, ell) * du * (nu - kappa)  # combined sums
    return per_rep * kappa * n


def poly_long_division_remainder_gf2(num_coeffs, den_coeffs):
    """Remainder of GF(2) polynomial long division, coefficient lists ascending."""
    num = list(num_coeffs)
    den = list(den_coeffs)
    while den and den[-1] == 0:
        den.pop()
    d = len(den) - 1
    while True:
        while num and num[-1] == 0:
            num.pop()
        if len(num) - 1 < d:
            return num
        shift = len(num) - 1 - d
        for i, c in enumerate(den):
            num[shift + i] = (num[shift + i] + c) % 2

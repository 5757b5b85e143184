"""Linear [n,k] codes: constructors, information sets, weight hierarchy, automorphisms.

Coordinates are 1-based throughout the public surface, matching the usual
coding-theory convention; permutations are length-n tuples mapping coordinate
j to ``perm[j-1]``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .fields import Field
from .fmatrix import Matrix

DEFAULT_ENUMERATION_BUDGET = 2**24


class InvalidCodeError(ValueError):
    """Generator matrix does not define a code of the claimed dimension."""


class InvalidPolynomialError(ValueError):
    """Generator polynomial does not divide x^n - 1."""


class FieldTooSmallError(ValueError):
    """Construction needs more field elements than the field provides."""


class BudgetExceededError(RuntimeError):
    """Enumeration would exceed the configured codeword budget."""


class UnsupportedFamilyError(ValueError):
    """Requested permutation family does not apply to this code."""


# -- polynomial helpers (coefficient lists, ascending degree) -----------------

def poly_trim(coeffs):
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_divmod(num, den, field: Field):
    num = poly_trim(num)
    den = poly_trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [0] * max(0, len(num) - len(den) + 1)
    rem = list(num)
    dlead = field.inv(den[-1])
    for i in range(len(num) - len(den), -1, -1):
        if len(rem) < len(den) + i:
            continue
        coef = field.mul(rem[len(den) + i - 1], dlead)
        if coef == 0:
            continue
        quot[i] = coef
        for j, d in enumerate(den):
            rem[i + j] = field.sub(rem[i + j], field.mul(coef, d))
    return poly_trim(quot), poly_trim(rem)


class LinearCode:
    """An [n,k] code held as a full-row-rank generator matrix, kept verbatim."""

    __slots__ = ("field", "n", "k", "G")

    def __init__(self, field: Field, G: Matrix):
        if G.field != field:
            raise ValueError("generator matrix field mismatch")
        k, n = G.shape
        if not 1 <= k <= n:
            raise InvalidCodeError(f"bad dimensions k={k}, n={n}")
        if G.rank() != k:
            raise InvalidCodeError(f"generator matrix has rank below {k}")
        self.field = field
        self.n = n
        self.k = k
        self.G = G

    def __repr__(self):
        return f"LinearCode([{self.n},{self.k}] over {self.field.spec_string()})"

    def __eq__(self, other):
        return (isinstance(other, LinearCode) and self.field == other.field
                and self.G == other.G)

    def __hash__(self):
        return hash((self.field, self.G))

    def rate(self) -> Fraction:
        return Fraction(self.k, self.n)

    def encode(self, message) -> list:
        """Codeword for a length-k message row."""
        return self.G.left_vec_mul(list(message))

    def contains(self, word) -> bool:
        return self.G.row_space_contains(list(word))

    def same_code(self, other: "LinearCode") -> bool:
        if self.field != other.field or self.n != other.n or self.k != other.k:
            return False
        return all(self.contains(r) for r in other.G.rows)

    def codewords(self, budget: int = DEFAULT_ENUMERATION_BUDGET):
        """Iterate all q^k codewords as tuples."""
        total = self.field.q**self.k
        if total > budget:
            raise BudgetExceededError(f"{total} codewords exceed budget {budget}")
        for msg in itertools.product(range(self.field.q), repeat=self.k):
            yield tuple(self.encode(msg))

    # -- information sets ------------------------------------------------------

    def is_information_set(self, coords) -> bool:
        """True iff the size-k coordinate set indexes an invertible generator submatrix."""
        cs = sorted(set(coords))
        if len(cs) != self.k or len(cs) != len(list(coords)):
            raise ValueError(f"information set candidate must have exactly k={self.k} distinct coordinates")
        return self.G.select_columns(cs).rank() == self.k

    def find_information_set(self, within=None):
        """Smallest (lexicographic, greedy) information set inside `within`, or None."""
        pool = sorted(set(within)) if within is not None else range(1, self.n + 1)
        chosen: list[int] = []
        rank = 0
        for c in pool:
            if self.G.select_columns(chosen + [c]).rank() > rank:
                chosen.append(c)
                rank += 1
                if rank == self.k:
                    return tuple(chosen)
        return None

    # -- distance and weight hierarchy ------------------------------------------

    def min_distance(self, budget: int = DEFAULT_ENUMERATION_BUDGET) -> int:
        """Minimum nonzero codeword weight, by exhaustive enumeration."""
        if self.field.q**self.k > budget:
            raise BudgetExceededError(
                f"{self.field.q**self.k} codewords exceed budget {budget}")
        if self.field.q == 2:
            best = self.n
            for word in _gf2_codeword_masks(self):
                w = word.bit_count()
                if 0 < w < best:
                    best = w
            return best
        best = self.n
        for word in self.codewords(budget):
            w = sum(1 for v in word if v)
            if 0 < w < best:
                best = w
        return best

    def support(self) -> tuple[int, ...]:
        """1-based coordinates where some codeword is nonzero."""
        return tuple(j + 1 for j in range(self.n)
                     if any(r[j] for r in self.G.rows))

    def generalized_hamming_weight(self, s: int, budget: int = DEFAULT_ENUMERATION_BUDGET) -> int:
        """Smallest support size over s-dimensional subcodes.

        Brute force over s-tuples of linearly independent codewords; the
        support of the spanned subcode equals the union of the tuple supports.
        Tuples are taken over projective representatives (first nonzero entry
        scaled to 1), since every subcode has such a basis.
        """
        if not 1 <= s <= self.k:
            raise ValueError(f"s must satisfy 1 <= s <= k={self.k}")
        if self.field.q**self.k > budget:
            raise BudgetExceededError(
                f"{self.field.q**self.k} codewords exceed budget {budget}")
        if s == self.k:
            # the only k-dimensional subcode is the code itself
            return len(self.support())
        if self.field.q == 2:
            return _gf2_ghw(self, s)
        fld = self.field
        words = []
        for word in self.codewords(budget):
            if not any(word):
                continue
            lead = next(v for v in word if v)
            if lead != 1:
                continue
            mask = 0
            for j, v in enumerate(word):
                if v:
                    mask |= 1 << j
            words.append((word, mask))
        words.sort(key=lambda wm: (wm[1].bit_count(), wm[0]))
        best = self.n
        for combo in itertools.combinations(words, s):
            union = 0
            for _, m in combo:
                union |= m
            if union.bit_count() >= best:
                continue
            if Matrix(fld, [w for w, _ in combo]).rank() == s:
                best = union.bit_count()
        return best

    # -- permutations ------------------------------------------------------------

    def permuted(self, perm) -> "LinearCode":
        """Code with coordinate j moved to position perm[j-1]."""
        check_permutation(perm, self.n)
        rows = []
        for r in self.G.rows:
            out = [0] * self.n
            for j, v in enumerate(r):
                out[perm[j] - 1] = v
            rows.append(out)
        return LinearCode(self.field, Matrix(self.field, rows))

    def is_automorphism(self, perm) -> bool:
        """True iff the permuted code equals this code as a set of codewords."""
        check_permutation(perm, self.n)
        permuted = self.permuted(perm)
        return all(self.contains(r) for r in permuted.G.rows)


def check_permutation(perm, n: int):
    if len(perm) != n or sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {perm!r}")


def _gf2_codeword_masks(code: LinearCode):
    """All 2^k codewords of a binary code as bitmask ints (bit j-1 = coord j)."""
    gen = []
    for r in code.G.rows:
        m = 0
        for j, v in enumerate(r):
            if v:
                m |= 1 << j
        gen.append(m)
    word = 0
    yield 0
    for idx in range(1, 1 << code.k):
        word ^= gen[(idx & -idx).bit_length() - 1]
        yield word


def _gf2_rank(masks) -> int:
    rank = 0
    basis = []
    for m in masks:
        for b in basis:
            m = min(m, m ^ b)
        if m:
            basis.append(m)
            rank += 1
    return rank


def _gf2_ghw(code: LinearCode, s: int) -> int:
    words = sorted((w for w in _gf2_codeword_masks(code) if w),
                   key=lambda w: (w.bit_count(), w))
    best = code.n
    for combo in itertools.combinations(words, s):
        union = 0
        for m in combo:
            union |= m
        if union.bit_count() >= best:
            continue
        if _gf2_rank(combo) == s:
            best = union.bit_count()
    return best


# -- constructors ---------------------------------------------------------------

def code_from_generator(field: Field, rows) -> LinearCode:
    """Wrap a full-row-rank generator matrix verbatim (no systematization)."""
    return LinearCode(field, Matrix(field, rows))


def code_repetition(field: Field, n: int) -> LinearCode:
    return LinearCode(field, Matrix(field, [[1] * n]))


def code_cyclic(field: Field, n: int, gen_poly) -> LinearCode:
    """[n, n-deg(g)] cyclic code from a generator polynomial dividing x^n - 1.

    gen_poly is a coefficient list, ascending degree.
    """
    g = poly_trim(gen_poly)
    if not g:
        raise InvalidPolynomialError("zero generator polynomial")
    deg = len(g) - 1
    if deg >= n:
        raise InvalidPolynomialError(f"generator degree {deg} must be below n={n}")
    xn1 = [field.neg(1)] + [0] * (n - 1) + [1]
    _, rem = poly_divmod(xn1, g, field)
    if rem:
        raise InvalidPolynomialError("generator polynomial does not divide x^n - 1")
    k = n - deg
    rows = [[0] * i + list(g) + [0] * (n - deg - 1 - i) for i in range(k)]
    return LinearCode(field, Matrix(field, rows))


def code_reed_muller(r: int, e: int) -> LinearCode:
    """Binary RM(r,e): rows are evaluations of degree <= r monomials.

    Coordinate j is the point with binary expansion j-1 (first variable is
    the most significant bit), i.e. points in lexicographic order.
    """
    if not 0 <= r <= e:
        raise ValueError(f"need 0 <= r <= e, got r={r}, e={e}")
    field = Field(2)
    n = 2**e
    points = [[(j >> (e - 1 - b)) & 1 for b in range(e)] for j in range(n)]
    rows = []
    for size in range(r + 1):
        for mono in itertools.combinations(range(e), size):
            rows.append([1 if all(pt[v] for v in mono) else 0 for pt in points])
    return LinearCode(field, Matrix(field, rows))


def code_mds(field: Field, n: int, k: int) -> LinearCode:
    """[n,k] MDS code (generalized Reed-Solomon on points 0..n-1, unit multipliers)."""
    if field.q < n:
        raise FieldTooSmallError(f"need q >= n, got q={field.q}, n={n}")
    if not 1 <= k <= n:
        raise ValueError(f"bad dimensions k={k}, n={n}")
    if k == n:
        return LinearCode(field, Matrix.identity(field, n))
    rows = [[field.pow(j, i) for j in range(n)] for i in range(k)]
    return LinearCode(field, Matrix(field, rows))


# -- permutation families ---------------------------------------------------------

def rotation_permutations(n: int) -> list[tuple[int, ...]]:
    """The n cyclic rotations, identity first."""
    return [tuple((j + t) % n + 1 for j in range(n)) for t in range(n)]


def translation_permutations(e: int) -> list[tuple[int, ...]]:
    """The 2^e coordinate translations x -> x + v under the RM point labeling."""
    n = 2**e
    return [tuple(((j ^ v) + 1) for j in range(n)) for v in range(n)]


def automorphism_family(code: LinearCode, kind: str) -> list[tuple[int, ...]]:
    """n distinct automorphisms whose images cover every coordinate fully.

    kind "cyclic_shifts" needs a shift-invariant code; "rm_translations"
    needs blocklength 2^e with translations preserving the code.
    """
    if kind == "cyclic_shifts":
        perms = rotation_permutations(code.n)
        label = "cyclic shift"
    elif kind == "rm_translations":
        if code.n & (code.n - 1) or code.n < 2:
            raise UnsupportedFamilyError(f"blocklength {code.n} is not a power of two")
        perms = translation_permutations(code.n.bit_length() - 1)
        label = "translation"
    else:
        raise UnsupportedFamilyError(f"unknown family kind {kind!r}")
    for p in perms:
        if not code.is_automorphism(p):
            raise UnsupportedFamilyError(f"{label} {p} is not an automorphism of {code!r}")
    return perms


# -- text serialization ------------------------------------------------------------

def code_to_text(code: LinearCode) -> str:
    lines = [f"field: {code.field.spec_string()}", f"{code.n} {code.k}"]
    fmt = hex if code.field.e > 1 else str
    for r in code.G.rows:
        lines.append(" ".join(fmt(v) for v in r))
    return "\n".join(lines) + "\n"


def code_from_text(text: str) -> LinearCode:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines())
             if ln and not ln.startswith("#")]
    if len(lines) < 3:
        raise ValueError("code file needs a field line, a dimension line, and k rows")
    head = lines[0]
    if not head.startswith("field:"):
        raise ValueError("first line must be 'field: <spec>'")
    field = Field.parse(head.split(":", 1)[1])
    n, k = (int(t) for t in lines[1].split())
    rows = [[int(t, 0) for t in ln.split()] for ln in lines[2:2 + k]]
    if len(rows) != k or any(len(r) != n for r in rows):
        raise ValueError(f"expected {k} rows of {n} entries")
    return code_from_generator(field, rows)


def save_code(code: LinearCode, path):
    with open(path, "w", encoding="ascii") as fh:
        fh.write(code_to_text(code))


def load_code(path) -> LinearCode:
    with open(path, "r", encoding="ascii") as fh:
        return code_from_text(fh.read())

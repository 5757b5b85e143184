"""Achievable-rate matrices for PIR over a linear code, and their interference matrices.

A rate matrix is a nu x n binary matrix whose columns all have weight kappa
and whose row supports each contain an information set of the storage code.
Splitting each column's row indices into the kappa "one" rows (matrix A) and
the nu-kappa "zero" rows (matrix B) yields the interference pair that drives
the retrieval schedule.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .codes import LinearCode

SEARCH_NODE_BUDGET = 2_000_000


class RateMatrixError(ValueError):
    """Entries or column weights violate the rate-matrix shape constraints."""


@dataclass(frozen=True)
class RateMatrix:
    """nu x n binary matrix with uniform column weight kappa, 1 <= kappa < nu.

    kappa = nu is rejected: the zero-row matrix B would be empty and the
    retrieval schedule has no side information to align.
    """

    nu: int
    kappa: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.nu != len(self.rows) or self.nu < 2:
            raise RateMatrixError(f"expected {self.nu} rows")
        n = len(self.rows[0])
        for r in self.rows:
            if len(r) != n:
                raise RateMatrixError("ragged rows")
            if any(v not in (0, 1) for v in r):
                raise RateMatrixError("entries must be 0/1")
        if not 1 <= self.kappa < self.nu:
            raise RateMatrixError(
                f"need 1 <= kappa < nu, got kappa={self.kappa}, nu={self.nu}")
        for j in range(n):
            w = sum(r[j] for r in self.rows)
            if w != self.kappa:
                raise RateMatrixError(f"column {j + 1} has weight {w}, expected {self.kappa}")

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def row_support(self, i: int) -> tuple[int, ...]:
        """1-based support of row i (1-based)."""
        return tuple(j + 1 for j, v in enumerate(self.rows[i - 1]) if v)

    def ratio(self) -> Fraction:
        return Fraction(self.kappa, self.nu)


@dataclass(frozen=True)
class InterferencePair:
    """Column-wise split of a rate matrix's row indices: ones in A, zeros in B."""

    A: tuple[tuple[int, ...], ...]
    B: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.A[0])

    @property
    def kappa(self) -> int:
        return len(self.A)

    @property
    def nu(self) -> int:
        return len(self.A) + len(self.B)

    def a_column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j - 1] for row in self.A)

    def b_column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j - 1] for row in self.B)


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    row_information_sets: tuple  # per row: contained information set, or None
    failing_row: int | None      # 1-based first failing row


def validate_rate_matrix(lam: RateMatrix, code: LinearCode) -> ValidationResult:
    """Check row supports against the code; column weights are enforced by the type."""
    if lam.n != code.n:
        raise ValueError(f"rate matrix has {lam.n} columns, code has n={code.n}")
    witnesses = []
    for i in range(1, lam.nu + 1):
        info = code.find_information_set(within=lam.row_support(i))
        witnesses.append(info)
        if info is None:
            return ValidationResult(False, tuple(witnesses), i)
    return ValidationResult(True, tuple(witnesses), None)


def interference(lam: RateMatrix) -> InterferencePair:
    """Ascending canonical assignment of row indices to the A/B split."""
    a_cols, b_cols = [], []
    for j in range(lam.n):
        ones = [u for u in range(1, lam.nu + 1) if lam.rows[u - 1][j] == 1]
        zeros = [u for u in range(1, lam.nu + 1) if lam.rows[u - 1][j] == 0]
        a_cols.append(ones)
        b_cols.append(zeros)
    A = tuple(tuple(a_cols[j][i] for j in range(lam.n)) for i in range(lam.kappa))
    B = tuple(tuple(b_cols[j][i] for j in range(lam.n)) for i in range(lam.nu - lam.kappa))
    return InterferencePair(A, B)


def interference_to_rate_matrix(pair: InterferencePair) -> RateMatrix:
    """Inverse of `interference` up to the canonical column ordering."""
    nu, n = pair.nu, pair.n
    rows = [[0] * n for _ in range(nu)]
    for j in range(1, n + 1):
        for u in pair.a_column(j):
            rows[u - 1][j - 1] = 1
    return RateMatrix(nu, pair.kappa, tuple(tuple(r) for r in rows))


def s_set(pair: InterferencePair, a: int) -> tuple[int, ...]:
    """Columns of A holding the row index a."""
    if not 1 <= a <= pair.nu:
        raise ValueError(f"row index {a} out of range 1..{pair.nu}")
    return tuple(j for j in range(1, pair.n + 1) if a in pair.a_column(j))


@dataclass(frozen=True)
class Claim1Report:
    ok: bool
    s_set_witnesses: tuple            # per a=1..nu: (a, coords, info set or None)
    b_entry_witnesses: tuple          # per B entry: (i, j, coords, info set or None)
    failure: tuple | None


def verify_claim1(code: LinearCode, lam: RateMatrix) -> Claim1Report:
    """Check that every S(a|A) contains an information set, and that for every
    B entry b the set S(b|A) avoids that column and still contains one."""
    validation = validate_rate_matrix(lam, code)
    if not validation.ok:
        return Claim1Report(False, (), (), ("validate", validation.failing_row))
    pair = interference(lam)
    s_wit = []
    for a in range(1, lam.nu + 1):
        coords = s_set(pair, a)
        info = code.find_information_set(within=coords)
        s_wit.append((a, coords, info))
        if info is None:
            return Claim1Report(False, tuple(s_wit), (), ("s_set", a))
    b_wit = []
    for i, row in enumerate(pair.B, start=1):
        for j in range(1, pair.n + 1):
            b = row[j - 1]
            coords = s_set(pair, b)
            if j in coords:
                return Claim1Report(False, tuple(s_wit), tuple(b_wit),
                                    ("b_entry", i, j, "column not excluded"))
            info = code.find_information_set(within=coords)
            b_wit.append((i, j, coords, info))
            if info is None:
                return Claim1Report(False, tuple(s_wit), tuple(b_wit),
                                    ("b_entry", i, j, "no information set"))
    return Claim1Report(True, tuple(s_wit), tuple(b_wit), None)


def ratio_bound_check(lam: RateMatrix, code: LinearCode) -> bool:
    """Confirm kappa/nu >= k/n for a valid matrix; True iff equality holds.

    Equality is the capacity-achieving case.
    """
    validation = validate_rate_matrix(lam, code)
    if not validation.ok:
        raise ValueError(f"rate matrix invalid for code (row {validation.failing_row})")
    ratio, target = lam.ratio(), Fraction(code.k, code.n)
    if ratio < target:
        raise RuntimeError(
            f"valid rate matrix with kappa/nu = {ratio} below k/n = {target}; "
            "this contradicts the rate lower bound")
    return ratio == target


# -- construction from permutation families ------------------------------------

def rate_matrix_from_permutations(code: LinearCode, perms, info_set) -> RateMatrix:
    """Rows are the images of one information set under n coordinate permutations.

    The permutations must be distinct, their images must cover every
    coordinate fully (for each j, the multiset {perm_i(j)} is 1..n), and each
    image of the information set must itself be an information set (which
    holds automatically when the permutations are code automorphisms).
    """
    n = code.n
    if len(perms) != n:
        raise ValueError(f"need exactly n={n} permutations, got {len(perms)}")
    if len(set(perms)) != n:
        raise ValueError("permutations are not distinct")
    for j in range(1, n + 1):
        images = sorted(p[j - 1] for p in perms)
        if images != list(range(1, n + 1)):
            raise ValueError(f"images of coordinate {j} do not cover 1..{n}")
    info = tuple(sorted(info_set))
    if not code.is_information_set(info):
        raise ValueError(f"{info} is not an information set")
    rows = []
    for idx, p in enumerate(perms, start=1):
        image = tuple(sorted(p[c - 1] for c in info))
        if not code.is_information_set(image):
            raise ValueError(
                f"permutation {idx} maps {info} to {image}, which is not an information set")
        rows.append(tuple(1 if j in image else 0 for j in range(1, n + 1)))
    return RateMatrix(n, code.k, tuple(rows))


# -- exhaustive search -----------------------------------------------------------

@dataclass(frozen=True)
class SearchOutcome:
    status: str                  # "found" | "not_found" | "indeterminate"
    matrix: RateMatrix | None
    nodes: int                   # backtracking nodes explored
    exhausted: bool              # True iff the full space was covered

    @property
    def found(self) -> bool:
        return self.status == "found"


class _BudgetUp(Exception):
    pass


def valid_row_supports(code: LinearCode, exact_size: int | None = None) -> list[tuple[int, ...]]:
    """All coordinate sets containing an information set, as sorted tuples."""
    n = code.n
    out = []
    for mask in range(1, 1 << n):
        size = mask.bit_count()
        if size < code.k:
            continue
        if exact_size is not None and size != exact_size:
            continue
        coords = tuple(j + 1 for j in range(n) if mask >> j & 1)
        if code.G.select_columns(coords).rank() == code.k:
            out.append(coords)
    out.sort()
    return out


def search_rate_matrix(code: LinearCode, kappa: int, nu: int,
                       node_budget: int = SEARCH_NODE_BUDGET) -> SearchOutcome:
    """Exhaustive backtracking search for a valid nu x n rate matrix.

    The search covers columns left to right: the first column whose weight
    budget is open gets a nondecreasing batch of candidate rows covering it,
    then the next open column is processed with rows that avoid the closed
    ones.  Every row multiset decomposes uniquely this way, so the space is
    covered exactly once.  "not_found" is a proof of absence at this
    (kappa, nu); budget exhaustion is reported as "indeterminate" instead.
    """
    if not 1 <= kappa < nu:
        raise ValueError(f"need 1 <= kappa < nu, got kappa={kappa}, nu={nu}")
    n, k = code.n, code.k
    # every row support has at least k ones, so kappa*n >= nu*k is necessary
    if kappa * n < nu * k:
        return SearchOutcome("not_found", None, 0, True)
    # at equality the weight budget forces every row to be exactly an information set
    exact = k if kappa * n == nu * k else None
    cands = valid_row_supports(code, exact_size=exact)
    masks = [sum(1 << (c - 1) for c in coords) for coords in cands]
    by_col = [[i for i, m in enumerate(masks) if m >> j & 1] for j in range(n)]
    need = [kappa] * n
    chosen: list[int] = []
    state = {"nodes": 0}

    def dfs(col: int, start: int) -> bool:
        rem = nu - len(chosen)
        while col < n and need[col] == 0:
            col, start = col + 1, 0
        if col == n:
            return rem == 0
        if rem == 0:
            return False
        total = sum(need)
        if total < rem * k or total > rem * n:
            return False
        allowed = 0
        forced = 0
        for j in range(n):
            if need[j] > 0:
                allowed |= 1 << j
            if need[j] > rem:
                return False
            if need[j] == rem:
                forced |= 1 << j
        for pos in range(start, len(by_col[col])):
            idx = by_col[col][pos]
            m = masks[idx]
            if m & ~allowed or forced & ~m:
                continue
            state["nodes"] += 1
            if state["nodes"] > node_budget:
                raise _BudgetUp
            for c in cands[idx]:
                need[c - 1] -= 1
            chosen.append(idx)
            if dfs(col, pos):
                return True
            chosen.pop()
            for c in cands[idx]:
                need[c - 1] += 1
        return False

    try:
        found = dfs(0, 0)
    except _BudgetUp:
        return SearchOutcome("indeterminate", None, state["nodes"], False)
    if not found:
        return SearchOutcome("not_found", None, state["nodes"], True)
    rows = tuple(tuple(1 if j in cands[idx] else 0 for j in range(1, n + 1))
                 for idx in sorted(chosen))
    lam = RateMatrix(nu, kappa, rows)
    return SearchOutcome("found", lam, state["nodes"], False)


def capacity_ratio_pairs(code: LinearCode, multiples=(1, 2)) -> list[tuple[int, int]]:
    """(kappa, nu) pairs with kappa/nu = k/n, smallest first."""
    g = gcd(code.k, code.n)
    return [(c * code.k // g, c * code.n // g) for c in multiples
            if c * code.n // g >= 2 and c * code.k // g < c * code.n // g]


# -- text serialization ------------------------------------------------------------

def rate_matrix_to_text(lam: RateMatrix) -> str:
    lines = [f"{lam.nu} {lam.kappa} {lam.n}"]
    lines += [" ".join(str(v) for v in row) for row in lam.rows]
    return "\n".join(lines) + "\n"


def rate_matrix_from_text(text: str) -> RateMatrix:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines())
             if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty rate matrix file")
    nu, kappa, n = (int(t) for t in lines[0].split())
    rows = [tuple(int(t) for t in ln.split()) for ln in lines[1:1 + nu]]
    if len(rows) != nu or any(len(r) != n for r in rows):
        raise ValueError(f"expected {nu} rows of {n} entries")
    return RateMatrix(nu, kappa, tuple(rows))


def save_rate_matrix(lam: RateMatrix, path):
    with open(path, "w", encoding="ascii") as fh:
        fh.write(rate_matrix_to_text(lam))


def load_rate_matrix(path) -> RateMatrix:
    with open(path, "r", encoding="ascii") as fh:
        return rate_matrix_from_text(fh.read())

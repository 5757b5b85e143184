"""Closed-form rates and capacities, capacity-achievability tests, and the
weight-hierarchy/search agreement scan over small binary codes."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .codes import (
    DEFAULT_ENUMERATION_BUDGET,
    BudgetExceededError,
    LinearCode,
    code_from_generator,
    rotation_permutations,
    translation_permutations,
)
from .fields import Field
from .ratematrix import (
    RateMatrix,
    SEARCH_NODE_BUDGET,
    capacity_ratio_pairs,
    rate_matrix_from_permutations,
    search_rate_matrix,
    validate_rate_matrix,
)


def mds_pir_capacity(n: int, k: int, f: int) -> Fraction:
    """Maximum retrieval rate for MDS-coded storage of f files.

    For k = n the formula degenerates to 0/0; the value 1 is returned by
    convention (nothing beyond the file itself needs downloading).
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if f < 1:
        raise ValueError("need at least one file")
    if k == n:
        return Fraction(1)
    return Fraction(n - k, n) / (1 - Fraction(k, n)**f)


def mds_pir_capacity_limit(n: int, k: int) -> Fraction:
    """Many-files limit of the capacity."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if k == n:
        return Fraction(1)
    return Fraction(n - k, n)


def rate_formula(kappa: int, nu: int, k: int, n: int, f: int) -> Fraction:
    """Retrieval rate of the schedule driven by a kappa/nu rate matrix."""
    if not 1 <= kappa < nu:
        raise ValueError(f"need 1 <= kappa < nu, got {kappa}, {nu}")
    if f < 1:
        raise ValueError("need at least one file")
    return Fraction((nu - kappa) * k, kappa * n) / (1 - Fraction(kappa, nu)**f)


def rate_formula_limit(kappa: int, nu: int, k: int, n: int) -> Fraction:
    """Many-files limit of the schedule rate."""
    return Fraction((nu - kappa) * k, kappa * n)


def achievable_rate(lam: RateMatrix, code: LinearCode, f: int) -> Fraction:
    """Exact schedule rate for a rate matrix validated against the code."""
    validation = validate_rate_matrix(lam, code)
    if not validation.ok:
        raise ValueError(f"rate matrix invalid for code (row {validation.failing_row})")
    return rate_formula(lam.kappa, lam.nu, code.k, code.n, f)


def min_distance_rate_bound(code: LinearCode, f: int,
                            budget: int = DEFAULT_ENUMERATION_BUDGET) -> Fraction:
    """Rate guaranteed from the minimum distance alone."""
    d = code.min_distance(budget)
    r = min(code.k, d - 1)
    return Fraction(r, code.n) / (1 - Fraction(code.k, code.k + r)**f)


# -- necessary condition ---------------------------------------------------------

@dataclass(frozen=True)
class NecessaryConditionResult:
    passed: bool | None          # None when the budget ran out before a verdict
    failing_s: int | None
    failing_weight: int | None
    weights: dict                # s -> d_s for every s actually computed
    stopped_at: int | None       # first s whose weight could not be computed

    def __bool__(self):
        return self.passed is True


def necessary_condition(code: LinearCode, s_max: int | None = None,
                        budget: int = DEFAULT_ENUMERATION_BUDGET) -> NecessaryConditionResult:
    """Check d_s >= (n/k) s for s = 1..s_max (default k), in exact rationals.

    Any failure proves that no capacity-achieving rate matrix exists for the
    code under this schedule.
    """
    s_max = code.k if s_max is None else s_max
    if not 1 <= s_max <= code.k:
        raise ValueError(f"need 1 <= s_max <= k={code.k}")
    weights: dict[int, int] = {}
    for s in range(1, s_max + 1):
        try:
            d = code.generalized_hamming_weight(s, budget)
        except BudgetExceededError:
            return NecessaryConditionResult(None, None, None, weights, s)
        weights[s] = d
        if d * code.k < code.n * s:
            return NecessaryConditionResult(False, s, d, weights, None)
    return NecessaryConditionResult(True, None, None, weights, None)


# -- classification ----------------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    verdict: str                     # "capacity_achieving" | "ruled_out" | "indeterminate"
    witness: RateMatrix | None
    failing: tuple | None            # (s, d_s) for ruled_out
    note: str


def find_capacity_matrix(code: LinearCode, node_budget: int = SEARCH_NODE_BUDGET):
    """A rate matrix with kappa/nu = k/n, or (None, note).

    Tries the rotation and translation permutation families against one
    information set first, then falls back to exhaustive search at the
    reduced ratio and its double.
    """
    info = code.find_information_set()
    families = [("rotations", rotation_permutations(code.n))]
    if code.n >= 2 and code.n & (code.n - 1) == 0:
        families.append(("translations", translation_permutations(code.n.bit_length() - 1)))
    for name, perms in families:
        try:
            lam = rate_matrix_from_permutations(code, perms, info)
        except ValueError:
            continue
        return lam, f"constructed from the {name} permutation family"
    tried = []
    hit_budget = False
    for kappa, nu in capacity_ratio_pairs(code):
        outcome = search_rate_matrix(code, kappa, nu, node_budget)
        if outcome.found:
            return outcome.matrix, f"found by exhaustive search at nu={nu}"
        tried.append(nu)
        if outcome.status == "indeterminate":
            hit_budget = True
    if hit_budget:
        return None, f"search budget exhausted at nu in {tried}"
    return None, f"no matrix at nu in {tried} (absence proven at those sizes)"


def classify(code: LinearCode, node_budget: int = SEARCH_NODE_BUDGET,
             ghw_budget: int = DEFAULT_ENUMERATION_BUDGET) -> Classification:
    """Decide whether the code achieves the MDS-PIR capacity under this schedule."""
    if code.k == code.n:
        return Classification(
            "capacity_achieving", None, None,
            "k = n stores files in the clear at rate 1; no rate matrix is involved")
    nc = necessary_condition(code, budget=ghw_budget)
    if nc.passed is False:
        return Classification(
            "ruled_out", None, (nc.failing_s, nc.failing_weight),
            f"d_{nc.failing_s} = {nc.failing_weight} < (n/k)*{nc.failing_s}")
    lam, note = find_capacity_matrix(code, node_budget)
    if lam is not None:
        return Classification("capacity_achieving", lam, None, note)
    if nc.passed is None:
        note = f"{note}; weight hierarchy incomplete from s={nc.stopped_at}"
    return Classification("indeterminate", None, None, note)


# -- binary code enumeration and the agreement scan -----------------------------------

def enumerate_rref_generators(n: int, k: int):
    """All full-rank k x n matrices over GF(2) in reduced row echelon form.

    One per k-dimensional row space, so this enumerates every [n,k] binary
    code exactly once.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    for pivots in itertools.combinations(range(n), k):
        free = [(i, j) for i in range(k) for j in range(n)
                if j > pivots[i] and j not in pivots]
        for bits in itertools.product((0, 1), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), b in zip(free, bits):
                rows[i][j] = b
            yield rows


def column_multiset_signature(rows) -> tuple:
    """Sorted multiset of generator columns; equal signatures imply the codes
    differ only by a coordinate permutation."""
    k, n = len(rows), len(rows[0])
    return tuple(sorted(tuple(rows[i][j] for i in range(k)) for j in range(n)))


def dedupe_binary_codes(n: int, k: int) -> list[list[list[int]]]:
    """One RREF generator per column-multiset class (a safe, partial
    deduplication of permutation-equivalent codes)."""
    seen = set()
    reps = []
    for rows in enumerate_rref_generators(n, k):
        sig = column_multiset_signature(rows)
        if sig not in seen:
            seen.add(sig)
            reps.append(rows)
    return reps


@dataclass(frozen=True)
class ScanRow:
    n: int
    k: int
    generator: tuple
    weights: dict                # s -> d_s
    condition_pass: bool | None  # None when the weight budget ran out first
    failing_s: int | None
    matrix_status: str           # "found" | "not_found" | "indeterminate" | "degenerate"
    kappa: int | None
    nu: int | None
    agree: bool | None           # None when indeterminate

    def to_record(self) -> dict:
        return {
            "n": self.n, "k": self.k,
            "generator": ";".join("".join(str(v) for v in row) for row in self.generator),
            "weights": " ".join(str(self.weights[s]) for s in sorted(self.weights)),
            "condition_pass": self.condition_pass,
            "failing_s": self.failing_s,
            "matrix_status": self.matrix_status,
            "kappa": self.kappa, "nu": self.nu,
            "agree": self.agree,
        }


@dataclass
class ScanReport:
    rows: list[ScanRow]
    disagreements: list[ScanRow]
    indeterminate: int

    @property
    def total(self) -> int:
        return len(self.rows)

    def summary(self) -> dict:
        return {
            "codes": self.total,
            "agreements": sum(1 for r in self.rows if r.agree),
            "disagreements": len(self.disagreements),
            "indeterminate": self.indeterminate,
        }


def scan_code(rows, node_budget: int = SEARCH_NODE_BUDGET,
              ghw_budget: int = DEFAULT_ENUMERATION_BUDGET) -> ScanRow:
    """One agreement-scan row: weight-hierarchy verdict vs. search verdict."""
    field = Field(2)
    code = code_from_generator(field, rows)
    n, k = code.n, code.k
    gen = tuple(tuple(r) for r in rows)
    if k == n:
        return ScanRow(n, k, gen, {s: s for s in range(1, k + 1)}, True, None,
                       "degenerate", None, None, True)
    nc = necessary_condition(code, budget=ghw_budget)
    status, kappa, nu = "not_found", None, None
    for kp, np_ in capacity_ratio_pairs(code):
        outcome = search_rate_matrix(code, kp, np_, node_budget)
        if outcome.found:
            status, kappa, nu = "found", kp, np_
            break
        if outcome.status == "indeterminate":
            status = "indeterminate"
    if nc.passed is False and status == "found":
        raise RuntimeError(
            f"[{n},{k}] code fails the weight-hierarchy bound yet a capacity "
            f"matrix exists at nu={nu}; this contradicts the necessary condition")
    if nc.passed is None or status == "indeterminate":
        agree = None
    else:
        agree = nc.passed == (status == "found")
    return ScanRow(n, k, gen, nc.weights, nc.passed, nc.failing_s,
                   status, kappa, nu, agree)


def conjecture_scan(n_max: int, field: Field | None = None, *,
                    ks: dict | None = None, sample: dict | None = None,
                    seed: int = 0, node_budget: int = 2 * SEARCH_NODE_BUDGET,
                    dedupe: bool = True, jobs: int = 1) -> ScanReport:
    """Scan binary codes for agreement between the weight-hierarchy condition
    and the existence of a capacity-achieving rate matrix.

    sample maps (n, k) to a count for randomized spot checks instead of the
    exhaustive run; ks restricts the dimensions per blocklength.
    """
    if field is not None and field.q != 2:
        raise ValueError("code enumeration is implemented for gf(2) only")
    rng = random.Random(seed)
    work: list[list[list[int]]] = []
    blocklengths = sorted(ks) if ks else range(1, n_max + 1)
    for n in blocklengths:
        if n > n_max:
            raise ValueError(f"blocklength {n} exceeds n_max={n_max}")
        k_values = ks[n] if ks else range(1, n + 1)
        for k in k_values:
            pool = dedupe_binary_codes(n, k) if dedupe else list(enumerate_rref_generators(n, k))
            if sample and (n, k) in sample:
                count = min(sample[(n, k)], len(pool))
                pool = rng.sample(pool, count)
            work.extend(pool)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        from functools import partial
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(partial(scan_code, node_budget=node_budget),
                                 work, chunksize=16))
    else:
        rows = [scan_code(g, node_budget) for g in work]
    disagreements = [r for r in rows if r.agree is False]
    indeterminate = sum(1 for r in rows if r.agree is None)
    return ScanReport(rows, disagreements, indeterminate)

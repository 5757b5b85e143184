"""In-memory coded storage: file encoding, retrieval sessions, privacy audits."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .codes import LinearCode
from .fields import Field
from .fmatrix import Matrix
from .protocol import (
    ProtocolParams,
    QueryPlan,
    build_queries,
    decode,
    node_respond,
    response_digest,
)
from .ratematrix import RateMatrix


def random_files(field: Field, f: int, beta: int, k: int, rng: random.Random) -> list[Matrix]:
    """f uniformly random beta x k message matrices."""
    return [Matrix(field, [[rng.randrange(field.q) for _ in range(k)]
                           for _ in range(beta)]) for _ in range(f)]


class StorageArray:
    """The encoded beta*f x n array, one coded chunk per (file, node)."""

    def __init__(self, field: Field, blocks: list[Matrix]):
        self.field = field
        self.blocks = blocks
        self.f = len(blocks)
        self.beta = blocks[0].nrows
        self.n = blocks[0].ncols
        for b in blocks:
            if b.shape != (self.beta, self.n):
                raise ValueError("all encoded blocks must share dimensions")

    def node_column(self, j: int) -> list[int]:
        """Everything node j stores: f chunks of beta symbols, stacked."""
        return [block.rows[r][j - 1] for block in self.blocks for r in range(self.beta)]


def encode_storage(files: list[Matrix], code: LinearCode) -> StorageArray:
    """Encode each file row-by-row with the storage code."""
    blocks = []
    for X in files:
        if X.ncols != code.k:
            raise ValueError(f"file rows have length {X.ncols}, code expects k={code.k}")
        if X.field != code.field:
            raise ValueError("file entries and code use different fields")
        blocks.append(X.mul(code.G))
    return StorageArray(code.field, blocks)


@dataclass
class SessionResult:
    decoded: Matrix
    m: int
    seed: object
    download_total: int
    per_node_counts: list[int]
    rate: Fraction
    ledger: object
    trace: dict


def run_session(storage: StorageArray, code: LinearCode, lam: RateMatrix,
                m: int, seed=None, shuffle: bool = True,
                include_plan: bool = False) -> SessionResult:
    """Full retrieval of file m: build queries, answer them per node, decode."""
    params = ProtocolParams(code, lam, storage.f)
    if storage.beta != params.beta:
        raise ValueError(
            f"storage has beta={storage.beta} stripes, schedule needs nu^f={params.beta}")
    plan = build_queries(params, m, seed=seed, shuffle=shuffle)
    responses = [node_respond(code.field, storage.node_column(j), plan.wire(j), storage.beta)
                 for j in range(1, code.n + 1)]
    decoded, ledger = decode(responses, plan)
    counts = [plan.query_count(j) for j in range(1, code.n + 1)]
    total = sum(counts)
    rate = Fraction(params.beta * code.k, total)
    trace = {
        "field": code.field.spec_string(),
        "code": {"n": code.n, "k": code.k},
        "rate_matrix": {"nu": lam.nu, "kappa": lam.kappa},
        "files": storage.f,
        "stripes": params.beta,
        "requested": m,
        "seed": seed,
        "per_node_query_counts": counts,
        "download_total": total,
        "rate": f"{rate.numerator}/{rate.denominator}",
        "response_digests": [response_digest(r) for r in responses],
        "decoded_digest": response_digest(v for row in decoded.rows for v in row),
    }
    if include_plan:
        trace["plan"] = [
            [{"positions": list(map(list, q.positions)), "desired": q.desired,
              "repetition": q.rep, "round": q.round, "files": list(q.file_set)}
             for q in plan.queries(j)]
            for j in range(1, code.n + 1)
        ]
    return SessionResult(decoded, m, seed, total, counts, rate, ledger, trace)


# -- privacy audit ------------------------------------------------------------------

@dataclass
class ChiSquareTest:
    node: int
    statistic_name: str
    chi2: float
    p_value: float
    dof: int
    table: dict


@dataclass
class AuditReport:
    passed: bool
    structural_ok: bool
    structural_failures: list
    signatures: dict            # per file index: per node: file-set multiset
    tests: list[ChiSquareTest]
    alpha: float
    per_test_alpha: float
    trials_per_file: int
    seed: object

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "structural_ok": self.structural_ok,
            "structural_failures": self.structural_failures,
            "signatures": {
                str(m): [{"node": j + 1,
                          "multiset": {"+".join(map(str, fs)): c for fs, c in sig.items()}}
                         for j, sig in enumerate(per_node)]
                for m, per_node in self.signatures.items()
            },
            "chi_square": [
                {"node": t.node, "statistic": t.statistic_name, "chi2": t.chi2,
                 "p_value": t.p_value, "dof": t.dof}
                for t in self.tests
            ],
            "alpha": self.alpha,
            "per_test_alpha": self.per_test_alpha,
            "trials_per_file": self.trials_per_file,
            "seed": self.seed,
        }


def _first_query_categories(plan: QueryPlan, node: int, beta: int):
    q = plan.queries(node)[0]
    buckets = min(beta, 12)
    row_bucket = (q.positions[0][1] - 1) * buckets // beta
    return q.file_set, row_bucket


def privacy_audit(code: LinearCode, lam: RateMatrix, f: int, trials: int,
                  seed=0, alpha: float = 0.01,
                  disable_shuffle_for: int | None = None) -> AuditReport:
    """Two-part audit of a node's view across requested file indices.

    Structural part: the multiset of file sets touched by a node's queries
    must be identical for every requested file (one plan per file suffices;
    the multiset does not depend on the draw).  Statistical part: chi-square
    homogeneity of the first shuffled query's category across requested
    files, over seeded trials.  The overall significance alpha is split
    Bonferroni-style across the per-node tables.

    disable_shuffle_for injects a broken plan (no final shuffle) for one
    requested file index; it exists as a negative control for the audit.
    """
    from scipy.stats import chi2_contingency

    params = ProtocolParams(code, lam, f)
    n = code.n

    signatures = {}
    for m in range(1, f + 1):
        plan = build_queries(params, m, rng=random.Random(f"{seed}:structural:{m}"),
                             shuffle=(disable_shuffle_for != m))
        signatures[m] = [plan.signature(j) for j in range(1, n + 1)]
    structural_failures = []
    for m in range(2, f + 1):
        for j in range(n):
            if signatures[m][j] != signatures[1][j]:
                structural_failures.append({"node": j + 1, "files": [1, m]})
    structural_ok = not structural_failures

    trials_per_file = max(1, trials // f)
    fileset_counts = [{} for _ in range(n)]   # node -> {(m, file_set): count}
    rowbkt_counts = [{} for _ in range(n)]
    for m in range(1, f + 1):
        for t in range(trials_per_file):
            rng = random.Random(f"{seed}:{m}:{t}")
            plan = build_queries(params, m, rng=rng,
                                 shuffle=(disable_shuffle_for != m))
            for j in range(1, n + 1):
                fs, rb = _first_query_categories(plan, j, params.beta)
                fileset_counts[j - 1][(m, fs)] = fileset_counts[j - 1].get((m, fs), 0) + 1
                rowbkt_counts[j - 1][(m, rb)] = rowbkt_counts[j - 1].get((m, rb), 0) + 1

    tests: list[ChiSquareTest] = []
    for name, counts in (("first_query_file_set", fileset_counts),
                         ("first_query_row_bucket", rowbkt_counts)):
        for j in range(1, n + 1):
            cats = sorted({key[1] for key in counts[j - 1]}, key=str)
            table = [[counts[j - 1].get((m, c), 0) for c in cats]
                     for m in range(1, f + 1)]
            if len(cats) < 2:
                # a single category carries no file information
                tests.append(ChiSquareTest(j, name, 0.0, 1.0, 0,
                                           {str(cats[0]): table[0][0] if table else 0}))
                continue
            chi2, p, dof, _ = chi2_contingency(table)
            tests.append(ChiSquareTest(
                j, name, float(chi2), float(p), int(dof),
                {str(c): [table[m][ci] for m in range(f)] for ci, c in enumerate(cats)}))

    per_test_alpha = alpha / max(1, len(tests))
    statistical_ok = all(t.p_value >= per_test_alpha for t in tests)
    return AuditReport(
        passed=structural_ok and statistical_ok,
        structural_ok=structural_ok,
        structural_failures=structural_failures,
        signatures=signatures,
        tests=tests,
        alpha=alpha,
        per_test_alpha=per_test_alpha,
        trials_per_file=trials_per_file,
        seed=seed,
    )

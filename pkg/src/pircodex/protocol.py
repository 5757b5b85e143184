"""Private retrieval schedule: query construction, node responses, decoding.

The schedule runs kappa repetitions of f rounds against n nodes.  Round 1
reads single symbols of the requested file and downloads masking sums of the
other files; round ell+1 downloads sums that combine one new requested-file
symbol with a masking sum decodable from round ell.  Stripe indices are
permuted per file with user-private permutations, and each node's query list
is shuffled, so a node's view is distributed identically for every requested
file.
"""

from __future__ import annotations

import hashlib
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .codes import LinearCode
from .fmatrix import Matrix
from .ratematrix import (
    InterferencePair,
    RateMatrix,
    interference,
    s_set,
    validate_rate_matrix,
)


class DecodeIntegrityError(RuntimeError):
    """Responses are mutually inconsistent (a node answered incorrectly)."""


class LedgerError(RuntimeError):
    """A masking sum was consumed out of order."""


def _check_schedule_args(ell: int, f: int, kappa: int, nu: int):
    if f < 1:
        raise ValueError("need at least one file")
    if not 0 <= ell <= f - 1:
        raise ValueError(f"round offset {ell} out of range 0..{f - 1}")
    if not 1 <= kappa < nu:
        raise ValueError(f"need 1 <= kappa < nu, got {kappa}, {nu}")


def u_of(ell: int, f: int, kappa: int, nu: int) -> int:
    """Masking-sum stripe blocks consumed through round ell (per repetition)."""
    _check_schedule_args(ell, f, kappa, nu)
    return sum(kappa ** (f - h - 1) * (nu - kappa) ** (h - 1) for h in range(1, ell + 1))


def d_of(ell: int, f: int, kappa: int, nu: int) -> int:
    """Requested-file stripe blocks downloaded through round ell+1 (per repetition)."""
    _check_schedule_args(ell, f, kappa, nu)
    return kappa ** (f - 1) + sum(
        comb(f - 1, h) * kappa ** (f - h - 1) * (nu - kappa) ** h for h in range(1, ell + 1))


def n_of(ell: int, f: int) -> int:
    """Number of size-ell subsets of the non-requested files."""
    if f < 1 or not 0 <= ell <= f - 1:
        raise ValueError(f"round offset {ell} out of range 0..{f - 1}")
    return comb(f - 1, ell)


def total_download(kappa: int, nu: int, n: int, f: int) -> int:
    """Closed-form symbol count downloaded over all nodes."""
    return kappa * n * (nu**f - kappa**f) // (nu - kappa)


@dataclass(frozen=True)
class Query:
    """One downloaded symbol: a plain sum of stored positions.

    positions is the wire content; the remaining fields are user-private tags
    used for decoding and never sent to a node.
    """

    node: int
    positions: tuple[tuple[int, int], ...]  # (file, permuted stripe row), 1-based
    desired: bool
    rep: int
    round: int
    file_set: tuple[int, ...]   # actual file indices summed
    subset: tuple[int, ...]     # masking subset in relabeled (role) space
    u: int                      # rate-matrix row addressed at this node
    row: int | None = None      # unpermuted requested-file stripe row
    sigma: int | None = None    # masking stripe block
    t: int | None = None        # position within the node's A or B column
    side_u: int | None = None   # rate-matrix row of the subtracted masking sum


class ProtocolParams:
    """Validated (code, rate matrix, file count) bundle with decode tables."""

    def __init__(self, code: LinearCode, lam: RateMatrix, f: int):
        if f < 1:
            raise ValueError("need at least one file")
        validation = validate_rate_matrix(lam, code)
        if not validation.ok:
            raise ValueError(
                f"rate matrix is not valid for this code (row {validation.failing_row})")
        self.code = code
        self.lam = lam
        self.f = f
        self.kappa = lam.kappa
        self.nu = lam.nu
        self.beta = lam.nu**f
        self.pair: InterferencePair = interference(lam)
        # per rate-matrix row u: covering coordinates, an information set
        # inside them, and the inverse generator block for decoding
        self.coverage: dict[int, tuple[int, ...]] = {}
        self.decoders: dict[int, tuple[tuple[int, ...], Matrix]] = {}
        for u in range(1, self.nu + 1):
            coords = s_set(self.pair, u)
            info = code.find_information_set(within=coords)
            self.coverage[u] = coords
            self.decoders[u] = (info, code.G.select_columns(info).inverse())

    def expected_download(self) -> int:
        return total_download(self.kappa, self.nu, self.code.n, self.f)

    def rate(self) -> Fraction:
        return Fraction(self.beta * self.code.k, self.expected_download())


class QueryPlan:
    """Per-node query lists plus the user-private bookkeeping."""

    def __init__(self, params: ProtocolParams, m: int, seed, per_node, perms):
        self.params = params
        self.m = m
        self.seed = seed
        self.per_node = per_node            # list over nodes (0-based) of Query lists
        self.perms = perms                  # file -> tuple, stripe r -> perms[file][r-1]

    def wire(self, node: int) -> list[tuple[tuple[int, int], ...]]:
        """What node j actually receives: position lists only."""
        return [q.positions for q in self.per_node[node - 1]]

    def queries(self, node: int) -> list[Query]:
        return self.per_node[node - 1]

    def query_count(self, node: int) -> int:
        return len(self.per_node[node - 1])

    def total_queries(self) -> int:
        return sum(len(qs) for qs in self.per_node)

    def signature(self, node: int) -> dict[tuple[int, ...], int]:
        """Multiset of touched file sets at one node (node-visible structure)."""
        sig: dict[tuple[int, ...], int] = {}
        for q in self.per_node[node - 1]:
            sig[q.file_set] = sig.get(q.file_set, 0) + 1
        return sig


def build_queries(params: ProtocolParams, m: int, seed=None, rng=None,
                  shuffle: bool = True) -> QueryPlan:
    """Construct the full query plan for requesting file m."""
    f, kappa, nu = params.f, params.kappa, params.nu
    if not 1 <= m <= f:
        raise ValueError(f"requested file {m} out of range 1..{f}")
    if rng is None:
        rng = random.Random(seed)
    beta = params.beta
    # the requested file plays role 1; the rest keep their relative order
    actual_of_role = [None, m] + [x for x in range(1, f + 1) if x != m]
    # user-private stripe permutations, drawn independently per file
    perms = {}
    for fidx in range(1, f + 1):
        order = list(range(1, beta + 1))
        rng.shuffle(order)
        perms[fidx] = tuple(order)

    kf1 = kappa ** (f - 1)
    U = [u_of(ell, f, kappa, nu) for ell in range(f)]
    D = [d_of(ell, f, kappa, nu) for ell in range(f)]
    role_subsets = {ell: list(itertools.combinations(range(2, f + 1), ell))
                    for ell in range(1, f)}

    per_node = []
    for j in range(1, params.code.n + 1):
        a_col = params.pair.a_column(j)
        b_col = params.pair.b_column(j)
        qs: list[Query] = []
        for i in range(1, kappa + 1):
            u_i = a_col[i - 1]
            for c in range(1, kf1 + 1):
                row = kf1 * (u_i - 1) + c
                qs.append(Query(
                    node=j, positions=((m, perms[m][row - 1]),),
                    desired=True, rep=i, round=1, file_set=(m,), subset=(),
                    u=u_i, row=row))
            for ell in range(1, f):
                sig_lo = (i - 1) * U[f - 1] + U[ell - 1]
                sig_hi = (i - 1) * U[f - 1] + U[ell] - 1
                for roles in role_subsets[ell]:
                    files = tuple(sorted(actual_of_role[r] for r in roles))
                    for sigma in range(sig_lo, sig_hi + 1):
                        for t in range(1, kappa + 1):
                            u_t = a_col[t - 1]
                            row = sigma * nu + u_t
                            qs.append(Query(
                                node=j,
                                positions=tuple((a, perms[a][row - 1]) for a in files),
                                desired=False, rep=i, round=ell, file_set=files,
                                subset=roles, u=u_t, sigma=sigma, t=t))
                block = U[ell] - U[ell - 1]
                for l, roles in enumerate(role_subsets[ell]):
                    files = tuple(sorted((m,) + tuple(actual_of_role[r] for r in roles)))
                    rho = D[ell - 1] + l * block * (nu - kappa)
                    for sigma in range(sig_lo, sig_hi + 1):
                        for t in range(1, nu - kappa + 1):
                            b_t = b_col[t - 1]
                            drow = rho * nu + u_i
                            srow = sigma * nu + b_t
                            positions = ((m, perms[m][drow - 1]),) + tuple(
                                (actual_of_role[r], perms[actual_of_role[r]][srow - 1])
                                for r in roles)
                            qs.append(Query(
                                node=j, positions=positions,
                                desired=True, rep=i, round=ell + 1, file_set=files,
                                subset=roles, u=u_i, row=drow, sigma=sigma, t=t,
                                side_u=b_t))
                            rho += 1
        if shuffle:
            rng.shuffle(qs)
        per_node.append(qs)
    return QueryPlan(params, m, seed, per_node, perms)


def node_respond(field, stored_column: list, wire_queries, beta: int) -> list[int]:
    """Evaluate each query as the sum of the addressed stored symbols.

    stored_column stacks the f coded chunks of one node: position
    (file-1)*beta + row - 1 holds stripe `row` of that file's chunk.
    """
    if not stored_column or len(stored_column) % beta:
        raise ValueError("storage column length is not a multiple of beta")
    values = []
    for positions in wire_queries:
        if not positions:
            raise ValueError("empty query")
        acc = 0
        for fidx, row in positions:
            idx = (fidx - 1) * beta + row - 1
            if not 0 <= idx < len(stored_column):
                raise ValueError(f"query addresses position {idx} outside the column")
            acc = field.add(acc, stored_column[idx])
        values.append(acc)
    return values


class SideLedger:
    """Tracks when each masking sum is decoded and consumed."""

    def __init__(self):
        self.decoded_round: dict[tuple, int] = {}
        self.consumed: list[tuple] = []

    def note_decoded(self, key: tuple, round_: int):
        self.decoded_round[key] = round_

    def note_consumed(self, key: tuple, at_round: int):
        if key not in self.decoded_round:
            raise LedgerError(f"masking sum {key} consumed before being decoded")
        if at_round != self.decoded_round[key] + 1:
            raise LedgerError(
                f"masking sum {key} decoded in round {self.decoded_round[key]} "
                f"but consumed in round {at_round}")
        self.consumed.append((key, at_round))


def decode(responses, plan: QueryPlan):
    """Reconstruct the requested file from the per-node response lists.

    Returns (beta x k message matrix, SideLedger).
    """
    params = plan.params
    code, fldq = params.code, params.code.field
    nu, kappa, f, beta = params.nu, params.kappa, params.f, params.beta
    kf1 = kappa ** (f - 1)

    # pair every response with its query
    tagged: list[tuple[Query, int]] = []
    for j in range(1, code.n + 1):
        qs = plan.queries(j)
        vals = responses[j - 1]
        if len(vals) != len(qs):
            raise ValueError(f"node {j} returned {len(vals)} responses for {len(qs)} queries")
        tagged.extend(zip(qs, vals))

    ledger = SideLedger()

    # 1. decode every masking sum to a full codeword from its covering coordinates
    masked: dict[tuple, dict[int, int]] = {}
    for q, v in tagged:
        if not q.desired:
            key = (q.rep, q.round, q.subset, q.sigma, q.u)
            masked.setdefault(key, {})[q.node] = v
    mask_words: dict[tuple, list[int]] = {}
    for key, coords_vals in sorted(masked.items()):
        word = _decode_codeword(params, key[4], coords_vals)
        mask_words[key] = word
        ledger.note_decoded(key, key[1])

    # 2. collect requested-file stripe symbols per row
    row_vals: dict[int, dict[int, int]] = {}
    for q, v in tagged:
        if not q.desired:
            continue
        if q.round == 1:
            row_vals.setdefault(q.row, {})[q.node] = v
        else:
            key = (q.rep, q.round - 1, q.subset, q.sigma, q.side_u)
            ledger.note_consumed(key, q.round)
            side = mask_words[key][q.node - 1]
            row_vals.setdefault(q.row, {})[q.node] = fldq.sub(v, side)

    if len(row_vals) != beta:
        raise DecodeIntegrityError(
            f"collected {len(row_vals)} stripe rows, expected {beta}")

    # 3. decode each stripe row and undo the private permutation
    out_rows: list = [None] * beta
    perm = plan.perms[plan.m]
    for row, coords_vals in row_vals.items():
        if row <= nu * kf1:
            u = (row - 1) // kf1 + 1
        else:
            u = (row - 1) % nu + 1
        message = _decode_message(params, u, coords_vals)
        out_rows[perm[row - 1] - 1] = message
    return Matrix(fldq, out_rows), ledger


def _decode_message(params: ProtocolParams, u: int, coords_vals: dict[int, int]) -> list[int]:
    """Solve for the message behind a codeword sampled on S(u|A); verify the rest."""
    code = params.code
    info, inv = params.decoders[u]
    try:
        y = [coords_vals[j] for j in info]
    except KeyError as exc:
        raise DecodeIntegrityError(f"missing response at coordinate {exc}") from exc
    message = inv.left_vec_mul(y)
    word = code.encode(message)
    for j, v in coords_vals.items():
        if word[j - 1] != v:
            raise DecodeIntegrityError(
                f"response at coordinate {j} conflicts with the decoded codeword")
    return message


def _decode_codeword(params: ProtocolParams, u: int, coords_vals: dict[int, int]) -> list[int]:
    return params.code.encode(_decode_message(params, u, coords_vals))


def response_digest(values) -> str:
    h = hashlib.sha256()
    for v in values:
        h.update(str(v).encode())
        h.update(b",")
    return h.hexdigest()

"""Dense matrices over a finite field: elimination, rank, inverse, solving."""

from __future__ import annotations

from .fields import Field, FieldMismatchError


class SingularMatrixError(ValueError):
    """Square matrix has no inverse (rank below its size)."""


class Matrix:
    """Row-major matrix of field elements (ints), bound to one field."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field, rows):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged rows")
            for v in r:
                field.check(v)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, [[0] * ncols for _ in range(nrows)])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        return f"Matrix({self.field.spec_string()}, {self.rows})"

    def copy(self) -> "Matrix":
        return Matrix(self.field, self.rows)

    def row(self, i: int):
        return list(self.rows[i])

    def column(self, j: int):
        return [r[j] for r in self.rows]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [[self.rows[i][j] for i in range(self.nrows)]
                                   for j in range(self.ncols)])

    def select_columns(self, coords) -> "Matrix":
        """Submatrix of the given 1-based column coordinates, in given order."""
        idx = [c - 1 for c in coords]
        for c in idx:
            if not 0 <= c < self.ncols:
                raise ValueError(f"column coordinate {c + 1} out of range")
        return Matrix(self.field, [[r[c] for c in idx] for r in self.rows])

    def stack(self, other: "Matrix") -> "Matrix":
        if other.field != self.field:
            raise FieldMismatchError("cannot stack matrices over different fields")
        if other.ncols != self.ncols:
            raise ValueError("column count mismatch")
        return Matrix(self.field, self.rows + other.rows)

    def mul(self, other: "Matrix") -> "Matrix":
        if other.field != self.field:
            raise FieldMismatchError("cannot multiply matrices over different fields")
        if self.ncols != other.nrows:
            raise ValueError("inner dimension mismatch")
        fld = self.field
        out = []
        ot = other.transpose().rows
        for r in self.rows:
            out.append([_dot(fld, r, c) for c in ot])
        return Matrix(self.field, out)

    def left_vec_mul(self, vec) -> list:
        """Row vector times matrix: returns vec . self."""
        if len(vec) != self.nrows:
            raise ValueError("vector length mismatch")
        fld = self.field
        return [_dot(fld, vec, [self.rows[i][j] for i in range(self.nrows)])
                for j in range(self.ncols)]

    # -- elimination ----------------------------------------------------------

    def _eliminate(self, augment: "Matrix | None" = None):
        """Forward+back elimination in place on copies; returns (rows, aug_rows, pivots)."""
        fld = self.field
        a = [list(r) for r in self.rows]
        b = [list(r) for r in augment.rows] if augment is not None else None
        nrows, ncols = self.nrows, self.ncols
        pivots = []
        prow = 0
        for col in range(ncols):
            sel = None
            for i in range(prow, nrows):
                if a[i][col] != 0:
                    sel = i
                    break
            if sel is None:
                continue
            a[prow], a[sel] = a[sel], a[prow]
            if b is not None:
                b[prow], b[sel] = b[sel], b[prow]
            pv = fld.inv(a[prow][col])
            if pv != 1:
                a[prow] = [fld.mul(pv, v) for v in a[prow]]
                if b is not None:
                    b[prow] = [fld.mul(pv, v) for v in b[prow]]
            for i in range(nrows):
                if i != prow and a[i][col] != 0:
                    factor = a[i][col]
                    a[i] = [fld.sub(v, fld.mul(factor, w)) for v, w in zip(a[i], a[prow])]
                    if b is not None:
                        b[i] = [fld.sub(v, fld.mul(factor, w)) for v, w in zip(b[i], b[prow])]
            pivots.append(col)
            prow += 1
            if prow == nrows:
                break
        return a, b, pivots

    def rref(self):
        """Reduced row echelon form and 0-based pivot columns."""
        a, _, pivots = self._eliminate()
        return Matrix(self.field, a), pivots

    def rank(self) -> int:
        _, _, pivots = self._eliminate()
        return len(pivots)

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("only square matrices can be inverted")
        a, b, pivots = self._eliminate(Matrix.identity(self.field, self.nrows))
        if len(pivots) != self.nrows:
            raise SingularMatrixError(f"matrix of rank {len(pivots)} < {self.nrows}")
        return Matrix(self.field, b)

    def solve_right(self, rhs: list) -> list:
        """Unique x with self . x = rhs for square invertible self."""
        if self.nrows != self.ncols or len(rhs) != self.nrows:
            raise ValueError("solve_right needs a square system")
        a, b, pivots = self._eliminate(Matrix(self.field, [[v] for v in rhs]))
        if len(pivots) != self.nrows:
            raise SingularMatrixError(f"matrix of rank {len(pivots)} < {self.nrows}")
        return [r[0] for r in b]

    def row_space_contains(self, vec) -> bool:
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        r = self.rank()
        return self.stack(Matrix(self.field, [vec])).rank() == r


def _dot(field: Field, u, v) -> int:
    acc = 0
    for x, y in zip(u, v):
        if x and y:
            acc = field.add(acc, field.mul(x, y))
    return acc

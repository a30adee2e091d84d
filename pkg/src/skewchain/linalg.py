"""Small exact linear algebra over a Field: RREF, solving, incremental rank.

Everything here is dense-list or sparse-dict based and exact; matrices stay
small (a few hundred rows/columns), so no fraction-free tricks are needed.
"""

from __future__ import annotations

from .fields import Field


def rref(field: Field, rows):
    """Reduced row echelon form.  Returns (new_rows, pivot_columns)."""
    R = [list(r) for r in rows]
    m = len(R)
    n = len(R[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if R[i][c] != 0), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = field.inv(R[r][c])
        R[r] = [field.mul(inv, v) for v in R[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def rank(field: Field, rows) -> int:
    return len(rref(field, rows)[1])


class InconsistentSystem(ValueError):
    """Raised when solve() is asked for a solution that does not exist."""


class FactoredSolver:
    """RREF factorization of a matrix M, reusable for many right-hand sides.

    Stores a row transform T with T*M in reduced row echelon form, so that
    each solve of M x = b costs one matrix-vector product plus a
    back-substitution.  The particular solution sets all free variables to
    zero, which makes repeated runs deterministic.
    """

    def __init__(self, field: Field, rows):
        self.field = field
        m = len(rows)
        self.m = m
        self.n = len(rows[0]) if m else 0
        aug = [list(r) + [1 if i == j else 0 for j in range(m)]
               for i, r in enumerate(rows)]
        R, pivots = rref(field, aug) if m else ([], [])
        # Pivots inside the identity block are possible when a row of M is
        # zero; only pivots in the first n columns correspond to unknowns.
        self.pivots = [c for c in pivots if c < self.n]
        self.R = [row[: self.n] for row in R]
        self.T = [row[self.n:] for row in R]

    def solve(self, b):
        """A solution x of M x = b with free variables set to zero."""
        f = self.field
        x = [0] * self.n
        for r in range(self.m):
            acc = 0
            Tr = self.T[r]
            for j, bv in enumerate(b):
                if bv != 0 and Tr[j] != 0:
                    acc = f.add(acc, f.mul(Tr[j], bv))
            if r < len(self.pivots):
                x[self.pivots[r]] = acc
            elif acc != 0:
                raise InconsistentSystem("no solution for this right-hand side")
        return x


class IncrementalRank:
    """Sparse incremental row space: insert vectors, track the rank.

    Rows are dicts {column: scalar} with the leading (minimum) column
    normalized to 1.  ``insert`` reduces the vector against the current
    basis and absorbs any nonzero residual; it returns the residual so
    callers can detect dependence (empty dict) or collapse witnesses.
    """

    def __init__(self, field: Field):
        self.field = field
        self.rows: dict = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def insert(self, vec: dict) -> dict:
        f = self.field
        v = dict(vec)
        while v:
            lead = min(v)
            row = self.rows.get(lead)
            if row is None:
                inv = f.inv(v[lead])
                v = {c: f.mul(inv, x) for c, x in v.items()}
                self.rows[lead] = v
                return v
            coef = v[lead]
            for c, x in row.items():
                s = f.sub(v.get(c, 0), f.mul(coef, x))
                if s == 0:
                    v.pop(c, None)
                else:
                    v[c] = s
        return v

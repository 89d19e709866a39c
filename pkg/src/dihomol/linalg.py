"""Sparse exact matrices over a field, with rank, kernels and span bookkeeping.

Vectors are sparse dicts ``index -> scalar`` without stored zeros.
"""

from __future__ import annotations

from .fields import Field


class DimensionError(ValueError):
    pass


class ExactMatrix:
    """Immutable sparse matrix; ``rows_map[r][c]`` holds the nonzero entries."""

    __slots__ = ("nrows", "ncols", "field", "_rows")

    def __init__(self, nrows: int, ncols: int, field: Field, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        rows: dict[int, dict[int, object]] = {}
        if entries:
            items = entries.items() if isinstance(entries, dict) else entries
            for (r, c), v in items:
                if not (0 <= r < nrows and 0 <= c < ncols):
                    raise DimensionError(f"entry ({r}, {c}) outside {nrows}x{ncols}")
                v = field.coerce(v)
                row = rows.setdefault(r, {})
                v = field.add(row.get(c, field.zero()), v)
                if field.is_zero(v):
                    row.pop(c, None)
                    if not row:
                        del rows[r]
                else:
                    row[c] = v
        self._rows = rows

    @classmethod
    def _from_rows(cls, nrows, ncols, field, rows):
        m = cls.__new__(cls)
        m.nrows, m.ncols, m.field = nrows, ncols, field
        m._rows = {r: row for r, row in rows.items() if row}
        return m

    @classmethod
    def from_columns(cls, nrows: int, columns, field: Field):
        """Matrix whose j-th column is the sparse vector ``columns[j]``."""
        rows: dict[int, dict] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if not field.is_zero(v):
                    rows.setdefault(i, {})[j] = v
        return cls._from_rows(nrows, len(columns), field, rows)

    @classmethod
    def from_dense(cls, data, field: Field):
        data = [list(r) for r in data]
        ncols = len(data[0]) if data else 0
        return cls(len(data), ncols, field,
                   {(i, j): v for i, r in enumerate(data) for j, v in enumerate(r)})

    @classmethod
    def identity(cls, n: int, field: Field):
        return cls._from_rows(n, n, field, {i: {i: field.one()} for i in range(n)})

    @classmethod
    def zero(cls, nrows: int, ncols: int, field: Field):
        return cls._from_rows(nrows, ncols, field, {})

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def entries(self) -> dict:
        return {(r, c): v for r, row in self._rows.items() for c, v in row.items()}

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def row(self, r) -> dict:
        return dict(self._rows.get(r, {}))

    def rows_map(self) -> dict:
        return {r: dict(row) for r, row in self._rows.items()}

    def column(self, c) -> dict:
        return {r: row[c] for r, row in self._rows.items() if c in row}

    def get(self, r, c):
        return self._rows.get(r, {}).get(c, self.field.zero())

    def is_zero(self) -> bool:
        return not self._rows

    def to_dense(self):
        z = self.field.zero()
        return [[self._rows.get(r, {}).get(c, z) for c in range(self.ncols)]
                for r in range(self.nrows)]

    def transpose(self) -> "ExactMatrix":
        rows: dict[int, dict] = {}
        for r, row in self._rows.items():
            for c, v in row.items():
                rows.setdefault(c, {})[r] = v
        return ExactMatrix._from_rows(self.ncols, self.nrows, self.field, rows)

    def apply(self, vec: dict) -> dict:
        """Matrix times sparse column vector."""
        F = self.field
        out = {}
        for r, row in self._rows.items():
            acc = F.zero()
            for c, v in vec.items():
                w = row.get(c)
                if w is not None:
                    acc = F.add(acc, F.mul(w, v))
            if not F.is_zero(acc):
                out[r] = acc
        return out

    def __matmul__(self, other):
        return compose(self, other)

    def __eq__(self, other):
        return (isinstance(other, ExactMatrix) and self.shape == other.shape
                and self.field == other.field and self._rows == other._rows)

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols}, {self.field.name}, nnz={self.nnz()})"


def compose(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """The product ``a @ b``."""
    if a.ncols != b.nrows:
        raise DimensionError(f"cannot compose {a.nrows}x{a.ncols} with {b.nrows}x{b.ncols}")
    if a.field != b.field:
        raise DimensionError("matrices over different fields")
    F = a.field
    rows = {}
    brows = b._rows
    for r, arow in a._rows.items():
        acc: dict = {}
        for k, av in arow.items():
            brow = brows.get(k)
            if not brow:
                continue
            for c, bv in brow.items():
                acc[c] = F.add(acc.get(c, F.zero()), F.mul(av, bv))
        acc = {c: v for c, v in acc.items() if not F.is_zero(v)}
        if acc:
            rows[r] = acc
    return ExactMatrix._from_rows(a.nrows, b.ncols, F, rows)


def add(a: ExactMatrix, b: ExactMatrix, scale=None) -> ExactMatrix:
    """``a + scale*b`` (scale defaults to 1)."""
    if a.shape != b.shape:
        raise DimensionError("shape mismatch")
    F = a.field
    s = F.one() if scale is None else F.coerce(scale)
    rows = {r: dict(row) for r, row in a._rows.items()}
    for r, row in b._rows.items():
        tgt = rows.setdefault(r, {})
        for c, v in row.items():
            w = F.add(tgt.get(c, F.zero()), F.mul(s, v))
            if F.is_zero(w):
                tgt.pop(c, None)
            else:
                tgt[c] = w
    return ExactMatrix._from_rows(a.nrows, a.ncols, F, rows)


def _echelon(rows: dict, F: Field):
    """Sparse elimination with a sparsest-row / sparsest-column pivot rule.

    Returns pivots as a list of ``(column, normalised_row)`` in elimination
    order. Later pivot rows never contain earlier pivot columns.
    """
    active = {r: dict(row) for r, row in rows.items() if row}
    col_rows: dict = {}
    for r, row in active.items():
        for c in row:
            col_rows.setdefault(c, set()).add(r)
    pivots = []
    while active:
        rid = min(active, key=lambda r: (len(active[r]), r))
        row = active.pop(rid)
        for c in row:
            col_rows[c].discard(rid)
        if not row:
            continue
        pc = min(row, key=lambda c: (len(col_rows[c]), c))
        inv = F.inv(row[pc])
        row = {c: F.mul(v, inv) for c, v in row.items()}
        for other in sorted(col_rows[pc]):
            orow = active[other]
            f = orow[pc]
            for c, v in row.items():
                w = F.sub(orow.get(c, F.zero()), F.mul(f, v))
                if F.is_zero(w):
                    if c in orow:
                        del orow[c]
                        col_rows[c].discard(other)
                else:
                    if c not in orow:
                        col_rows.setdefault(c, set()).add(other)
                    orow[c] = w
        pivots.append((pc, row))
    return pivots


def rank(m: ExactMatrix) -> int:
    if m.nrows == 0 or m.ncols == 0 or m.is_zero():
        return 0
    # eliminate along the shorter side
    rows = m._rows if m.nrows <= m.ncols else m.transpose()._rows
    return len(_echelon(rows, m.field))


def kernel_basis(m: ExactMatrix) -> list[dict]:
    """Basis of the null space as sparse column vectors, each checked to map to 0."""
    F = m.field
    pivots = _echelon(m._rows, F)
    # back-substitute to reduced row echelon form
    for k in range(len(pivots) - 1, -1, -1):
        ck, rk = pivots[k]
        for j in range(k):
            cj, rj = pivots[j]
            f = rj.get(ck)
            if f is None:
                continue
            for c, v in rk.items():
                w = F.sub(rj.get(c, F.zero()), F.mul(f, v))
                if F.is_zero(w):
                    rj.pop(c, None)
                else:
                    rj[c] = w
    pivot_cols = {c for c, _ in pivots}
    free = [c for c in range(m.ncols) if c not in pivot_cols]
    basis = []
    for f in free:
        vec = {f: F.one()}
        for c, row in pivots:
            v = row.get(f)
            if v is not None:
                vec[c] = F.neg(v)
        basis.append(vec)
    for vec in basis:
        if m.apply(vec):
            raise ArithmeticError("kernel vector does not map to zero")
    return basis


def image_basis(m: ExactMatrix) -> list[dict]:
    """Independent columns spanning the column space."""
    span = SpanBasis(m.field)
    cols: dict[int, dict] = {}
    for r, row in m._rows.items():
        for c, v in row.items():
            cols.setdefault(c, {})[r] = v
    out = []
    for c in sorted(cols):
        if span.insert(cols[c]):
            out.append(cols[c])
    return out


class SpanBasis:
    """Incrementally built echelon basis that can express vectors in the span.

    ``insert`` returns True when the vector was independent of everything
    inserted before; ``express`` writes a vector as a combination of the
    independent inserted vectors (keyed by insertion id) or returns None.
    """

    def __init__(self, field: Field):
        self.field = field
        self._pivots: list[tuple[object, dict, dict]] = []
        self._pivot_of: dict = {}
        self.ids: list[int] = []
        self._count = 0

    def __len__(self):
        return len(self._pivots)

    def _reduce(self, vec: dict):
        F = self.field
        v = {k: x for k, x in vec.items() if not F.is_zero(x)}
        combo: dict = {}
        for col, pvec, pcombo in self._pivots:
            f = v.get(col)
            if f is None:
                continue
            for k, x in pvec.items():
                w = F.sub(v.get(k, F.zero()), F.mul(f, x))
                if F.is_zero(w):
                    v.pop(k, None)
                else:
                    v[k] = w
            for k, x in pcombo.items():
                w = F.add(combo.get(k, F.zero()), F.mul(f, x))
                if F.is_zero(w):
                    combo.pop(k, None)
                else:
                    combo[k] = w
        return v, combo

    def insert(self, vec: dict) -> bool:
        F = self.field
        ident = self._count
        self._count += 1
        v, combo = self._reduce(vec)
        if not v:
            return False
        col = min(v)
        inv = F.inv(v[col])
        v = {k: F.mul(x, inv) for k, x in v.items()}
        # v_reduced = vec - sum(combo) so vec-coordinates pick up -combo
        pc = {k: F.mul(F.neg(x), inv) for k, x in combo.items()}
        pc[ident] = inv
        self._pivots.append((col, v, pc))
        self.ids.append(ident)
        return True

    def contains(self, vec: dict) -> bool:
        return not self._reduce(vec)[0]

    def express(self, vec: dict):
        v, combo = self._reduce(vec)
        if v:
            return None
        return combo

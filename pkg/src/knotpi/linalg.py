"""Exact sparse linear algebra over the rationals.

Everything downstream (Lie algebra quotients, normalized columns, spectral
sequence pages) reduces to ranks, kernels, quotients and homology of sparse
matrices with Fraction entries.  No floating point is used anywhere; the
rationals are ``fractions.Fraction`` (always in lowest terms, positive
denominator).

Vectors are sparse dicts ``{index: Fraction}`` with no zero values stored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

Vector = dict  # {int: Fraction}, zero entries never stored


def vec(entries) -> Vector:
    """Build a sparse vector from a dict or iterable of (index, value)."""
    items = entries.items() if isinstance(entries, dict) else entries
    v = {}
    for i, x in items:
        x = Fraction(x)
        if x:
            v[i] = x
    return v


def vec_from_dense(values) -> Vector:
    return vec(enumerate(values))


def vec_add_scaled(target: Vector, c: Fraction, source: Vector) -> None:
    """In place target += c * source, dropping zeros."""
    if not c:
        return
    for i, x in source.items():
        y = target.get(i, 0) + c * x
        if y:
            target[i] = y
        else:
            target.pop(i, None)


def vec_scale(v: Vector, c) -> Vector:
    c = Fraction(c)
    if not c:
        return {}
    return {i: c * x for i, x in v.items()}


@dataclass(frozen=True)
class LabeledBasis:
    """An ordered list of pairwise distinct opaque basis tags."""

    labels: tuple

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be pairwise distinct")

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        return self.labels.index(label)


class SparseRationalMatrix:
    """Sparse matrix over Q; entries maps (row, col) -> nonzero Fraction."""

    __slots__ = ("n_rows", "n_cols", "entries")

    def __init__(self, n_rows: int, n_cols: int, entries=None):
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.entries = {}
        if entries:
            items = entries.items() if isinstance(entries, dict) else entries
            for (r, c), x in items:
                self[r, c] = x

    def __setitem__(self, rc, x):
        r, c = rc
        if not (0 <= r < self.n_rows and 0 <= c < self.n_cols):
            raise IndexError(f"entry {rc} out of bounds for {self.shape}")
        x = Fraction(x)
        if x:
            self.entries[r, c] = x
        else:
            self.entries.pop(rc, None)

    def __getitem__(self, rc):
        return self.entries.get(rc, Fraction(0))

    @property
    def shape(self):
        return (self.n_rows, self.n_cols)

    def __eq__(self, other):
        return (
            isinstance(other, SparseRationalMatrix)
            and self.shape == other.shape
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"SparseRationalMatrix({self.n_rows}x{self.n_cols}, nnz={len(self.entries)})"

    def is_zero(self) -> bool:
        return not self.entries

    @classmethod
    def identity(cls, n: int) -> "SparseRationalMatrix":
        m = cls(n, n)
        for i in range(n):
            m[i, i] = 1
        return m

    @classmethod
    def from_columns(cls, n_rows: int, columns) -> "SparseRationalMatrix":
        m = cls(n_rows, len(columns))
        for j, col in enumerate(columns):
            for i, x in col.items():
                m[i, j] = x
        return m

    def column(self, j: int) -> Vector:
        return {r: x for (r, c), x in self.entries.items() if c == j}

    def columns(self):
        cols = [{} for _ in range(self.n_cols)]
        for (r, c), x in self.entries.items():
            cols[c][r] = x
        return cols

    def rows(self):
        rows = [{} for _ in range(self.n_rows)]
        for (r, c), x in self.entries.items():
            rows[r][c] = x
        return rows

    def transpose(self) -> "SparseRationalMatrix":
        t = SparseRationalMatrix(self.n_cols, self.n_rows)
        for (r, c), x in self.entries.items():
            t.entries[c, r] = x
        return t

    def apply(self, v: Vector) -> Vector:
        """Matrix times sparse column vector."""
        out = {}
        for (r, c), x in self.entries.items():
            if c in v:
                y = out.get(r, 0) + x * v[c]
                if y:
                    out[r] = y
                else:
                    out.pop(r, None)
        return out

    def __mul__(self, other) -> "SparseRationalMatrix":
        if not isinstance(other, SparseRationalMatrix):
            return NotImplemented
        if self.n_cols != other.n_rows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        left_by_col = {}
        for (r, c), x in self.entries.items():
            left_by_col.setdefault(c, []).append((r, x))
        out = SparseRationalMatrix(self.n_rows, other.n_cols)
        acc = out.entries
        for (j, k), y in other.entries.items():
            for r, x in left_by_col.get(j, ()):
                key = (r, k)
                z = acc.get(key, 0) + x * y
                if z:
                    acc[key] = z
                else:
                    acc.pop(key, None)
        return out

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = SparseRationalMatrix(self.n_rows, self.n_cols, dict(self.entries))
        for rc, x in other.entries.items():
            out[rc] = out[rc] + x
        return out

    def __sub__(self, other):
        return self + other.scaled(-1)

    def scaled(self, c) -> "SparseRationalMatrix":
        c = Fraction(c)
        out = SparseRationalMatrix(self.n_rows, self.n_cols)
        if c:
            out.entries = {rc: c * x for rc, x in self.entries.items()}
        return out

    @classmethod
    def vstack(cls, mats) -> "SparseRationalMatrix":
        mats = list(mats)
        if not mats:
            return cls(0, 0)
        n_cols = mats[0].n_cols
        out = cls(sum(m.n_rows for m in mats), n_cols)
        off = 0
        for m in mats:
            if m.n_cols != n_cols:
                raise ValueError("column count mismatch in vstack")
            for (r, c), x in m.entries.items():
                out.entries[r + off, c] = x
            off += m.n_rows
        return out


class Echelon:
    """Reduced row echelon form of a growing span of sparse vectors.

    The reduced form of the row space is canonical, so ranks and reductions
    do not depend on the order in which vectors are added (asserted by the
    permuted-pivot tests).  Pivots are chosen as the smallest remaining
    column index.  With ``track=True`` each row remembers its expression in
    the vectors that were added, which turns the echelon into a coordinate
    solver for the original spanning set.
    """

    def __init__(self, n_cols: int, track: bool = False):
        self.n_cols = n_cols
        self.rows = []  # reduced rows, pivot coefficient 1
        self.combos = [] if track else None
        self.pivot_of = {}  # pivot column -> row position
        self.n_added = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self):
        return sorted(self.pivot_of)

    def _reduce(self, v: Vector, combo=None) -> Vector:
        v = dict(v)
        for p in sorted(c for c in v if c in self.pivot_of):
            c = v.get(p)
            if not c:
                continue
            idx = self.pivot_of[p]
            vec_add_scaled(v, -c, self.rows[idx])
            if combo is not None:
                vec_add_scaled(combo, -c, self.combos[idx])
        return v

    def reduce(self, v: Vector) -> Vector:
        """Residual of v modulo the current row space."""
        return self._reduce(v)

    def contains(self, v: Vector) -> bool:
        return not self._reduce(v)

    def add(self, v: Vector) -> bool:
        """Insert v; returns True when the rank increased."""
        tag = self.n_added
        self.n_added += 1
        combo = {tag: Fraction(1)} if self.combos is not None else None
        v = self._reduce(v, combo)
        if not v:
            return False
        for c in v:
            if not (0 <= c < self.n_cols):
                raise IndexError(f"coordinate {c} out of range 0..{self.n_cols - 1}")
        p = min(v)
        inv = Fraction(1) / v[p]
        row = {c: inv * x for c, x in v.items()}
        if combo is not None:
            combo = {t: inv * x for t, x in combo.items()}
        # keep the form fully reduced
        for j, other in enumerate(self.rows):
            c = other.get(p)
            if c:
                vec_add_scaled(other, -c, row)
                if self.combos is not None:
                    vec_add_scaled(self.combos[j], -c, combo)
        self.rows.append(row)
        if self.combos is not None:
            self.combos.append(combo)
        self.pivot_of[p] = len(self.rows) - 1
        return True

    def coordinates(self, v: Vector) -> Vector:
        """Express v in the added vectors; raises if v is outside the span."""
        if self.combos is None:
            raise ValueError("echelon was built without track=True")
        combo = {}
        res = self._reduce(v, combo)
        if res:
            raise ValueError("vector not in span")
        return {t: -c for t, c in combo.items() if c}


def rank_and_kernel(m: SparseRationalMatrix):
    """Rank of m and a basis of its kernel (RREF back substitution).

    rank + len(kernel) == n_cols always holds; the kernel basis has one
    vector per free column, with entry 1 at that column.
    """
    ech = Echelon(m.n_cols)
    for row in m.rows():
        ech.add(row)
    pivots = ech.pivots
    pivot_rows = {min(r): r for r in ech.rows}
    free = [c for c in range(m.n_cols) if c not in ech.pivot_of]
    kernel = []
    for f in free:
        v = {f: Fraction(1)}
        for p in pivots:
            c = pivot_rows[p].get(f)
            if c:
                v[p] = -c
        kernel.append(v)
    return ech.rank, kernel


def image_basis(m: SparseRationalMatrix):
    """Columns of m at the RREF pivot positions: a basis of the column space."""
    ech = Echelon(m.n_cols)
    for row in m.rows():
        ech.add(row)
    cols = m.columns()
    return [cols[p] for p in ech.pivots]


def quotient_basis(ambient_dim: int, subspace):
    """Dimension and representatives of ambient/span(subspace).

    Representatives are the standard basis vectors at non-pivot coordinates
    of the subspace echelon; they project to a basis of the quotient.
    """
    ech = Echelon(ambient_dim)
    for v in subspace:
        ech.add(v)
    reps = [{c: Fraction(1)} for c in range(ambient_dim) if c not in ech.pivot_of]
    return ambient_dim - ech.rank, reps


def homology_at(f: SparseRationalMatrix, g: SparseRationalMatrix):
    """Homology ker(g)/im(f) of a two-step complex  . --f--> . --g--> .

    Raises ValueError("not a complex") unless g@f == 0.  Returns the
    dimension together with cycle representatives that are linearly
    independent modulo the image of f.
    """
    if g.n_cols != f.n_rows:
        raise ValueError(f"maps not composable: f has {f.n_rows} rows, g has {g.n_cols} cols")
    if not (g * f).is_zero():
        raise ValueError("not a complex")
    _, cycles = rank_and_kernel(g)
    ech = Echelon(f.n_rows)
    for col in f.columns():
        ech.add(col)
    reps = [z for z in cycles if ech.add(z)]
    return len(reps), reps


class CoordinateSolver:
    """Coordinates with respect to a fixed list of linearly independent vectors."""

    def __init__(self, basis_vectors, n_coords: int):
        self.basis_vectors = list(basis_vectors)
        self.ech = Echelon(n_coords, track=True)
        for v in self.basis_vectors:
            if not self.ech.add(v):
                raise ValueError("basis vectors are linearly dependent")

    @property
    def dimension(self) -> int:
        return len(self.basis_vectors)

    def coordinates(self, v: Vector) -> Vector:
        return self.ech.coordinates(v)

"""Exact linear algebra over the rationals.

Everything downstream (cohomology, Massey solves, formality splits) reduces
to the handful of primitives here: kernels, images, deterministic particular
solutions, and subspace membership.  All arithmetic uses ``fractions.Fraction``
so results are exact; solutions are deterministic (reduced echelon form with
free variables set to zero) so higher-level representatives are reproducible.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ContainmentViolation

Vector = tuple[Fraction, ...]


def vec(values) -> Vector:
    return tuple(Fraction(v) for v in values)


def zero_vec(n: int) -> Vector:
    return (Fraction(0),) * n


class RatMatrix:
    """Sparse rational matrix keyed by (row, col); zero entries are never stored."""

    def __init__(self, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix shape")
        self.rows = rows
        self.cols = cols
        self.entries: dict[tuple[int, int], Fraction] = {}
        if entries:
            for (r, c), v in dict(entries).items():
                self[r, c] = v

    def __setitem__(self, key, value):
        r, c = key
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(f"entry {key} outside {self.rows}x{self.cols}")
        value = Fraction(value)
        if value == 0:
            self.entries.pop(key, None)
        else:
            self.entries[key] = value

    def __getitem__(self, key) -> Fraction:
        return self.entries.get(key, Fraction(0))

    @classmethod
    def from_rows(cls, rows) -> "RatMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        m = cls(len(rows), ncols)
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                m[i, j] = v
        return m

    @classmethod
    def from_columns(cls, cols, nrows=None) -> "RatMatrix":
        cols = [list(c) for c in cols]
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        m = cls(nrows, len(cols))
        for j, col in enumerate(cols):
            if len(col) != nrows:
                raise ValueError("ragged columns")
            for i, v in enumerate(col):
                m[i, j] = v
        return m

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        m = cls(n, n)
        for i in range(n):
            m[i, i] = Fraction(1)
        return m

    def row_dicts(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def mul_vec(self, v) -> Vector:
        v = list(v)
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        out = [Fraction(0)] * self.rows
        for (r, c), a in self.entries.items():
            if v[c]:
                out[r] += a * v[c]
        return tuple(out)

    def transpose(self) -> "RatMatrix":
        t = RatMatrix(self.cols, self.rows)
        for (r, c), v in self.entries.items():
            t[c, r] = v
        return t

    def __eq__(self, other):
        return (
            isinstance(other, RatMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"RatMatrix({self.rows}x{self.cols}, {len(self.entries)} entries)"


def _axpy(row: dict[int, Fraction], coef: Fraction, other: dict[int, Fraction]):
    """row += coef * other, in place on a sparse row dict."""
    for c, v in other.items():
        nv = row.get(c, Fraction(0)) + coef * v
        if nv == 0:
            row.pop(c, None)
        else:
            row[c] = nv


class _Echelon:
    """Incremental reduced echelon form over sparse row dicts."""

    def __init__(self):
        self.pivots: list[int] = []  # sorted pivot columns
        self.rows: list[dict[int, Fraction]] = []  # parallel to pivots

    def reduce(self, row: dict[int, Fraction]) -> dict[int, Fraction]:
        r = dict(row)
        for pc, prow in zip(self.pivots, self.rows):
            c = r.get(pc)
            if c:
                _axpy(r, -c, prow)
        return r

    def insert(self, row: dict[int, Fraction]) -> bool:
        """Reduce and insert; returns True if the row enlarged the span."""
        r = self.reduce(row)
        if not r:
            return False
        pc = min(r)
        inv = 1 / r[pc]
        r = {c: v * inv for c, v in r.items()}
        for prow in self.rows:
            c = prow.get(pc)
            if c:
                _axpy(prow, -c, r)
        idx = 0
        while idx < len(self.pivots) and self.pivots[idx] < pc:
            idx += 1
        self.pivots.insert(idx, pc)
        self.rows.insert(idx, r)
        return True

    def contains(self, row: dict[int, Fraction]) -> bool:
        return not self.reduce(row)


def _to_row(v) -> dict[int, Fraction]:
    return {i: Fraction(x) for i, x in enumerate(v) if x}


def _from_row(r: dict[int, Fraction], n: int) -> Vector:
    return tuple(r.get(i, Fraction(0)) for i in range(n))


class SubspaceBasis:
    """A list of independent rational vectors spanning a subspace of Q^n."""

    def __init__(self, ambient_dim: int, vectors=()):
        self.ambient_dim = ambient_dim
        self.vectors: tuple[Vector, ...] = tuple(vec(v) for v in vectors)
        ech = _Echelon()
        for v in self.vectors:
            if len(v) != ambient_dim:
                raise ValueError("vector length != ambient dimension")
            if not ech.insert(_to_row(v)):
                raise ValueError("basis vectors are linearly dependent")
        self._ech = ech

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def contains(self, v) -> bool:
        v = vec(v)
        if len(v) != self.ambient_dim:
            raise ValueError("vector length != ambient dimension")
        return self._ech.contains(_to_row(v))

    def __repr__(self):
        return f"SubspaceBasis(dim {self.dim} in Q^{self.ambient_dim})"


def span_basis(ambient_dim: int, vectors) -> SubspaceBasis:
    """Reduce a spanning set to a basis, keeping the first independent vectors."""
    ech = _Echelon()
    kept = []
    for v in vectors:
        v = vec(v)
        if ech.insert(_to_row(v)):
            kept.append(v)
    return SubspaceBasis(ambient_dim, kept)


def kernel_basis(m: RatMatrix) -> SubspaceBasis:
    """Basis of {v : m v = 0}, from the reduced echelon form of m."""
    ech = _Echelon()
    for row in m.row_dicts():
        ech.insert(row)
    pivot_set = set(ech.pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    vectors = []
    for f in free_cols:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for pc, prow in zip(ech.pivots, ech.rows):
            v[pc] = -prow.get(f, Fraction(0))
        vectors.append(tuple(v))
    return SubspaceBasis(m.cols, vectors)


def image_basis(m: RatMatrix) -> SubspaceBasis:
    """Basis of the column space: the nonzero rows of rref(m^T)."""
    ech = _Echelon()
    for row in m.transpose().row_dicts():
        ech.insert(row)
    return SubspaceBasis(m.rows, [_from_row(r, m.rows) for r in ech.rows])


def rank(m: RatMatrix) -> int:
    return image_basis(m).dim


class EchelonSolver:
    """Factored solver for m x = b with many right-hand sides.

    Row-reduces m once, recording each echelon row as a combination of the
    original rows; solving then costs one sparse dot per recorded row.  The
    particular solution is the reduced-echelon one with free variables zero.
    """

    def __init__(self, m: RatMatrix):
        self.m = m
        pivots: list[int] = []
        rows: list[dict[int, Fraction]] = []
        trans: list[dict[int, Fraction]] = []  # row as combo of original rows
        consistency: list[dict[int, Fraction]] = []  # combos that vanished
        for i, row in enumerate(m.row_dicts()):
            r = dict(row)
            t = {i: Fraction(1)}
            for pc, prow, ptrans in zip(pivots, rows, trans):
                c = r.get(pc)
                if c:
                    _axpy(r, -c, prow)
                    _axpy(t, -c, ptrans)
            if not r:
                if t:
                    consistency.append(t)
                continue
            pc = min(r)
            inv = 1 / r[pc]
            r = {c: v * inv for c, v in r.items()}
            t = {c: v * inv for c, v in t.items()}
            for prow, ptrans in zip(rows, trans):
                c = prow.get(pc)
                if c:
                    _axpy(prow, -c, r)
                    _axpy(ptrans, -c, t)
            idx = 0
            while idx < len(pivots) and pivots[idx] < pc:
                idx += 1
            pivots.insert(idx, pc)
            rows.insert(idx, r)
            trans.insert(idx, t)
        self.pivots = pivots
        self.rows = rows
        self.trans = trans
        self.consistency = consistency

    def solve(self, b):
        b = list(b)
        if len(b) != self.m.rows:
            raise ValueError("rhs length mismatch")
        for t in self.consistency:
            if sum(coef * b[i] for i, coef in t.items()):
                return None
        x = [Fraction(0)] * self.m.cols
        for pc, row, t in zip(self.pivots, self.rows, self.trans):
            rhs = sum((coef * b[i] for i, coef in t.items()), Fraction(0))
            # row is  x_pc + sum over free cols; free vars are zero
            x[pc] = rhs
        return tuple(x)


def solve(m: RatMatrix, b):
    """Deterministic particular solution of m x = b, or None if inconsistent."""
    return EchelonSolver(m).solve(b)


def membership(v, s: SubspaceBasis) -> bool:
    """True iff v is a rational combination of the basis vectors."""
    return s.contains(v)


def quotient_dim(sub: SubspaceBasis, total: SubspaceBasis) -> int:
    """dim(total) - dim(sub); raises unless sub lies inside span(total)."""
    if sub.ambient_dim != total.ambient_dim:
        raise ContainmentViolation("ambient dimensions differ")
    for v in sub.vectors:
        if not total.contains(v):
            raise ContainmentViolation("subspace not contained in total span")
    return total.dim - sub.dim


def complement_basis(sub: SubspaceBasis, candidates=None) -> SubspaceBasis:
    """Deterministic complement of sub inside the span of sub + candidates.

    Candidates default to the unit vectors (echelon completion inside the
    full ambient space); the first candidates that enlarge the span are kept.
    """
    n = sub.ambient_dim
    ech = _Echelon()
    for v in sub.vectors:
        ech.insert(_to_row(v))
    if candidates is None:
        candidates = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    kept = []
    for v in candidates:
        v = vec(v)
        if ech.insert(_to_row(v)):
            kept.append(v)
    return SubspaceBasis(n, kept)


def intersect_with_kernel(vectors, m: RatMatrix):
    """Basis of span(vectors) ∩ ker(m), as explicit ambient vectors."""
    vectors = [vec(v) for v in vectors]
    if not vectors:
        return []
    indep = span_basis(len(vectors[0]), vectors)
    cols = [m.mul_vec(v) for v in indep.vectors]
    combo = RatMatrix.from_columns(cols, m.rows) if cols else RatMatrix(m.rows, 0)
    out = []
    for coeffs in kernel_basis(combo).vectors:
        w = [Fraction(0)] * len(vectors[0])
        for c, bv in zip(coeffs, indep.vectors):
            if c:
                for i, x in enumerate(bv):
                    w[i] += c * x
        out.append(tuple(w))
    return out

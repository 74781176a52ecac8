"""Exact dense linear algebra over an abstract field.

Scalars only need +, -, *, /, unary -, equality and is_zero(); finite-field
elements and rational functions both qualify, and the field handle (FieldCtx
or FuncField) supplies zero()/one().  Convention used throughout: vectors are
columns and matrices act on the left, while a Subspace stores a row-echelon
basis of row vectors, so the image of U under S is spanned by the rows of
U.basis * S^T.
"""

from __future__ import annotations

from dataclasses import dataclass


class Mat:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, entries, cols=None):
        entries = tuple(tuple(row) for row in entries)
        if entries:
            cols = len(entries[0])
            if any(len(row) != cols for row in entries):
                raise ValueError("ragged rows")
        elif cols is None:
            raise ValueError("column count required for an empty matrix")
        self.field = field
        self.rows = len(entries)
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, field, rows, cols=None):
        return cls(field, rows, cols=cols)

    @classmethod
    def identity(cls, field, n):
        one, zero = field.one(), field.zero()
        return cls(field, tuple(
            tuple(one if i == j else zero for j in range(n)) for i in range(n)
        ), cols=n)

    @classmethod
    def zeros(cls, field, r, c):
        zero = field.zero()
        return cls(field, tuple(tuple(zero for _ in range(c)) for _ in range(r)), cols=c)

    def _check_field(self, other):
        if self.field != other.field:
            raise ValueError("matrices over different fields")

    def entry(self, i, j):
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def col(self, j):
        return tuple(r[j] for r in self.entries)

    def is_zero(self):
        return all(x.is_zero() for row in self.entries for x in row)

    def is_identity(self):
        if self.rows != self.cols:
            return False
        one = self.field.one()
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                if i == j:
                    if x != one:
                        return False
                elif not x.is_zero():
                    return False
        return True

    def __add__(self, other):
        self._check_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return Mat(self.field, tuple(
            tuple(a + b for a, b in zip(r1, r2))
            for r1, r2 in zip(self.entries, other.entries)
        ), cols=self.cols)

    def __sub__(self, other):
        self._check_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return Mat(self.field, tuple(
            tuple(a - b for a, b in zip(r1, r2))
            for r1, r2 in zip(self.entries, other.entries)
        ), cols=self.cols)

    def __neg__(self):
        return Mat(self.field, tuple(tuple(-a for a in row) for row in self.entries),
                   cols=self.cols)

    def __mul__(self, other):
        self._check_field(other)
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        bt = tuple(zip(*other.entries)) if other.entries else ()
        out = []
        for arow in self.entries:
            row = []
            for bcol in bt:
                acc = None
                for a, b in zip(arow, bcol):
                    term = a * b
                    acc = term if acc is None else acc + term
                row.append(acc if acc is not None else self.field.zero())
            out.append(tuple(row))
        return Mat(self.field, tuple(out), cols=other.cols)

    def scale(self, c):
        return Mat(self.field, tuple(tuple(c * a for a in row) for row in self.entries),
                   cols=self.cols)

    def __pow__(self, n):
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        if n < 0:
            return self.inverse() ** (-n)
        result = Mat.identity(self.field, self.rows)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def transpose(self):
        return Mat(self.field, tuple(zip(*self.entries)) if self.entries else (),
                   cols=self.rows)

    def kron(self, other):
        self._check_field(other)
        out = []
        for arow in self.entries:
            for brow in other.entries:
                out.append(tuple(a * b for a in arow for b in brow))
        return Mat(self.field, tuple(out), cols=self.cols * other.cols)

    def inverse(self):
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        zero, one = self.field.zero(), self.field.one()
        aug = [list(self.entries[i]) + [one if i == j else zero for j in range(n)]
               for i in range(n)]
        for col in range(n):
            pivot = None
            for r in range(col, n):
                if not aug[r][col].is_zero():
                    pivot = r
                    break
            if pivot is None:
                raise ValueError("matrix is singular")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = one / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(n):
                if r != col and not aug[r][col].is_zero():
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return Mat(self.field, tuple(tuple(row[n:]) for row in aug), cols=n)

    def flatten(self):
        return tuple(x for row in self.entries for x in row)

    def map_entries(self, fn, field=None):
        return Mat(field or self.field,
                   tuple(tuple(fn(x) for x in row) for row in self.entries),
                   cols=self.cols)

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.cols, self.entries))

    def __str__(self):
        return "[" + "; ".join(
            ", ".join(str(x) for x in row) for row in self.entries
        ) + "]"

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols}: {self})"


def mat_vec(M, v):
    """M applied to the column vector v."""
    if M.cols != len(v):
        raise ValueError("dimension mismatch")
    out = []
    for row in M.entries:
        acc = None
        for a, b in zip(row, v):
            term = a * b
            acc = term if acc is None else acc + term
        out.append(acc if acc is not None else M.field.zero())
    return tuple(out)


@dataclass
class RrefResult:
    rref: Mat
    rank: int
    pivots: tuple
    transform: Mat


def rref(A):
    """Reduced row echelon form with rank, pivot columns, and T with T*A = rref."""
    field = A.field
    m, n = A.rows, A.cols
    zero, one = field.zero(), field.one()
    rows = [list(r) for r in A.entries]
    trans = [[one if i == j else zero for j in range(m)] for i in range(m)]
    pivots = []
    pr = 0
    for col in range(n):
        if pr == m:
            break
        pivot = None
        for r in range(pr, m):
            if not rows[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            continue
        rows[pr], rows[pivot] = rows[pivot], rows[pr]
        trans[pr], trans[pivot] = trans[pivot], trans[pr]
        inv = one / rows[pr][col]
        rows[pr] = [x * inv for x in rows[pr]]
        trans[pr] = [x * inv for x in trans[pr]]
        for r in range(m):
            if r != pr and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[pr])]
                trans[r] = [x - f * y for x, y in zip(trans[r], trans[pr])]
        pivots.append(col)
        pr += 1
    return RrefResult(
        Mat(field, rows, cols=n),
        len(pivots),
        tuple(pivots),
        Mat(field, trans, cols=m),
    )


class Subspace:
    """Subspace of column vectors, stored as a row-echelon basis."""

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field, ambient, basis, pivots):
        self.field = field
        self.ambient = ambient
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def from_vectors(cls, field, ambient, vectors):
        vectors = [tuple(v) for v in vectors]
        if not vectors:
            return cls(field, ambient, Mat(field, (), cols=ambient), ())
        res = rref(Mat(field, vectors, cols=ambient))
        rows = res.rref.entries[: res.rank]
        return cls(field, ambient, Mat(field, rows, cols=ambient), res.pivots)

    @classmethod
    def zero(cls, field, ambient):
        return cls(field, ambient, Mat(field, (), cols=ambient), ())

    @classmethod
    def full(cls, field, ambient):
        return cls(field, ambient, Mat.identity(field, ambient),
                   tuple(range(ambient)))

    @property
    def dim(self):
        return self.basis.rows

    def contains(self, vec):
        v = list(vec)
        for idx, pc in enumerate(self.pivots):
            c = v[pc]
            if not c.is_zero():
                v = [a - c * b for a, b in zip(v, self.basis.entries[idx])]
        return all(x.is_zero() for x in v)

    def leq(self, other):
        return all(other.contains(row) for row in self.basis.entries)

    def apply(self, M):
        """The subspace M*U (columns transformed by M)."""
        if M.cols != self.ambient:
            raise ValueError("dimension mismatch")
        if self.dim == 0:
            return Subspace.zero(self.field, M.rows)
        image = self.basis * M.transpose()
        return Subspace.from_vectors(self.field, M.rows, image.entries)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient})"


def nullspace(E):
    """Right nullspace {v : E v = 0} as a Subspace."""
    res = rref(E)
    n = E.cols
    field = E.field
    zero, one = field.zero(), field.one()
    pivset = set(res.pivots)
    vectors = []
    for free in range(n):
        if free in pivset:
            continue
        v = [zero] * n
        v[free] = one
        for idx, pc in enumerate(res.pivots):
            v[pc] = -res.rref.entries[idx][free]
        vectors.append(tuple(v))
    return Subspace.from_vectors(field, n, vectors)


def intersect(U, W):
    """Intersection of two subspaces of the same ambient space."""
    if U.ambient != W.ambient:
        raise ValueError("subspaces of different ambient spaces")
    if U.dim == 0 or W.dim == 0:
        return Subspace.zero(U.field, U.ambient)
    a = U.dim
    stacked = Mat(U.field, U.basis.entries + W.basis.entries, cols=U.ambient)
    kernel = nullspace(stacked.transpose())
    vectors = []
    for z in kernel.basis.entries:
        coeffs = z[:a]
        vec = [U.field.zero()] * U.ambient
        for c, row in zip(coeffs, U.basis.entries):
            if not c.is_zero():
                vec = [x + c * y for x, y in zip(vec, row)]
        vectors.append(tuple(vec))
    return Subspace.from_vectors(U.field, U.ambient, vectors)


def coordinates(target, basis):
    """Coefficients expressing `target` in the linearly independent `basis`.

    Returns None when the target is outside the span; raises ValueError when
    the proffered basis is dependent.
    """
    basis = list(basis)
    if not basis:
        raise ValueError("empty basis")
    field = target.field
    d = len(basis)
    cols = [b.flatten() for b in basis]
    rhs = target.flatten()
    rows = [tuple(col[i] for col in cols) + (rhs[i],) for i in range(len(rhs))]
    res = rref(Mat(field, rows, cols=d + 1))
    if sum(1 for p in res.pivots if p < d) < d:
        raise ValueError("basis is linearly dependent")
    if any(p == d for p in res.pivots):
        return None
    x = [field.zero()] * d
    for idx, pc in enumerate(res.pivots):
        x[pc] = res.rref.entries[idx][d]
    return x


def induced_actions(S, A, U):
    """Actions of the matrices in S and A on an invariant subspace U and on
    the quotient, together with the basis-change matrix used.

    The basis of U is extended by standard vectors at its non-pivot positions
    (lowest index first); conjugating by that basis change must produce block
    upper-triangular matrices, whose diagonal blocks are returned.
    """
    field = U.field
    n = U.ambient
    a = U.dim
    for idx, M in enumerate(S):
        if not U.apply(M).leq(U):
            raise ValueError(f"subspace is not invariant under generator {idx}")
    pivset = set(U.pivots)
    comp = [j for j in range(n) if j not in pivset]
    cols = [tuple(row) for row in U.basis.entries]
    cols += [
        tuple(field.one() if i == j else field.zero() for i in range(n)) for j in comp
    ]
    P = Mat(field, cols, cols=n).transpose()
    Pinv = P.inverse()

    def split(M):
        C = Pinv * M * P
        for i in range(a, n):
            for j in range(a):
                if not C.entries[i][j].is_zero():
                    raise RuntimeError("conjugate is not block triangular")
        top = Mat(field, tuple(row[:a] for row in C.entries[:a]), cols=a)
        bottom = Mat(field, tuple(row[a:] for row in C.entries[a:]), cols=n - a)
        return top, bottom

    s_split = [split(M) for M in S]
    a_split = [split(M) for M in A]
    return (
        [t for t, _ in s_split],
        [t for t, _ in a_split],
        [b for _, b in s_split],
        [b for _, b in a_split],
        P,
    )


def dedupe_matrices(mats):
    """Order-preserving removal of exact duplicates."""
    seen = set()
    out = []
    for m in mats:
        if m not in seen:
            seen.add(m)
            out.append(m)
    return out

"""Exact integer linear algebra and finitely presented abelian groups.

Everything runs on Python ints, so no entry can overflow.  Sublattices of
``Z^g`` are kept in column Hermite normal form, which makes lattice
equality a comparison of tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class DimensionError(ValueError):
    pass


class IntMatrix:
    """Immutable integer matrix stored row-major."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, rows: int, cols: int, data: Iterable[Sequence[int]] | None = None):
        if rows < 0 or cols < 0:
            raise DimensionError("negative shape")
        if data is None:
            grid = tuple((0,) * cols for _ in range(rows))
        else:
            grid = tuple(tuple(int(x) for x in row) for row in data)
            if len(grid) != rows or any(len(row) != cols for row in grid):
                raise DimensionError(f"data does not match shape {rows}x{cols}")
        self.rows, self.cols, self._data, self._hash = rows, cols, grid, None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = list(rows)
        if cols is None:
            if not rows:
                raise DimensionError("column count needed for a matrix with no rows")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        columns = list(columns)
        if any(len(c) != rows for c in columns):
            raise DimensionError(f"columns must have length {rows}")
        return cls(rows, len(columns), [[c[i] for c in columns] for i in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    @classmethod
    def diagonal(cls, entries: Sequence[int], rows: int | None = None, cols: int | None = None):
        rows = len(entries) if rows is None else rows
        cols = len(entries) if cols is None else cols
        m = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(entries):
            m[i][i] = d
        return cls(rows, cols, m)

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def tolist(self) -> list:
        return [list(row) for row in self._data]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self._data)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, zip(*self._data) if self.rows else [() for _ in range(self.cols)])

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.shape == other.shape and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self):
        return f"IntMatrix({self.rows}, {self.cols}, {self.tolist()!r})"

    def __str__(self):
        if not self.rows or not self.cols:
            return f"[{self.rows}x{self.cols}]"
        width = max(len(str(x)) for row in self._data for x in row)
        return "\n".join(" ".join(str(x).rjust(width) for x in row) for row in self._data)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same(other)
        return IntMatrix(self.rows, self.cols,
                         [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same(other)
        return IntMatrix(self.rows, self.cols,
                         [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [[-a for a in r] for r in self._data])

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [[c * a for a in r] for r in self._data])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.columns()
        return IntMatrix(self.rows, other.cols,
                         [[_dot(r, c) for c in ocols] for r in self._data])

    def apply(self, v: Sequence[int]) -> tuple:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(_dot(r, v) for r in self._data)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def hstack(self, *others: "IntMatrix") -> "IntMatrix":
        for o in others:
            if o.rows != self.rows:
                raise DimensionError("hstack needs equal row counts")
        rows = [list(r) for r in self._data]
        for o in others:
            for r, extra in zip(rows, o._data):
                r.extend(extra)
        return IntMatrix(self.rows, self.cols + sum(o.cols for o in others), rows)

    def vstack(self, *others: "IntMatrix") -> "IntMatrix":
        for o in others:
            if o.cols != self.cols:
                raise DimensionError("vstack needs equal column counts")
        rows = list(self._data)
        for o in others:
            rows.extend(o._data)
        return IntMatrix(len(rows), self.cols, rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix(len(rows), len(cols), [[self._data[i][j] for j in cols] for i in rows])


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b) if x and y)


def block_diagonal(blocks: Sequence[IntMatrix]) -> IntMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    m = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            m[r0 + i][c0:c0 + b.cols] = b.row(i)
        r0 += b.rows
        c0 += b.cols
    return IntMatrix(rows, cols, m)


def determinant(M: IntMatrix) -> int:
    """Exact determinant via fraction-free Bareiss elimination."""
    if M.rows != M.cols:
        raise DimensionError("determinant of a non-square matrix")
    n = M.rows
    a = M.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


# -- Smith normal form ----------------------------------------------------

def snf(M: IntMatrix) -> tuple:
    """Return ``(U, S, V)`` with ``U @ M @ V == S``.

    ``U`` and ``V`` are unimodular and ``S`` is diagonal with nonnegative
    entries ``d_1 | d_2 | ...``.  Pivots are chosen by minimal absolute value.
    """
    m, n = M.rows, M.cols
    A = M.tolist()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(a, b):
        A[a], A[b] = A[b], A[a]
        U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for row in A:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]

    def add_row(src, dst, q):  # row dst += q * row src
        if q:
            A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
            U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, q):  # col dst += q * col src
        if q:
            for row in A:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // p))
            rest = [(abs(A[i][t]), i, None) for i in range(t + 1, m) if A[i][t]]
            rest += [(abs(A[t][j]), None, j) for j in range(t + 1, n) if A[t][j]]
            if rest:
                _, i, j = min(rest, key=lambda r: r[0])
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return IntMatrix(m, m, U), IntMatrix(m, n, A), IntMatrix(n, n, V)


def diagonal_entries(S: IntMatrix) -> list:
    return [S[i, i] for i in range(min(S.rows, S.cols))]


def rank(M: IntMatrix) -> int:
    return len(hnf(M).pivots)


# -- Hermite normal form and lattices -------------------------------------

@dataclass(frozen=True)
class HermiteForm:
    """Column-style HNF of ``A`` with transform: ``H = A @ V``.

    Columns ``0..len(pivots)-1`` of ``H`` form the canonical basis of the
    column lattice; the remaining columns are zero and the matching columns
    of ``V`` span the kernel of ``A``.
    """
    H: list            # columns
    V: list            # columns, or None when not tracked
    pivots: tuple      # pivot row of each basis column
    rows: int

    def basis(self) -> list:
        return self.H[:len(self.pivots)]

    def kernel(self) -> list:
        if self.V is None:
            raise ValueError("transform not tracked")
        return self.V[len(self.pivots):]

    def coefficients(self, v: Sequence[int]):
        """Integer ``y`` with ``sum(y_k * basis_k) == v``, or None."""
        w = list(v)
        if len(w) != self.rows:
            raise DimensionError(f"vector of length {len(w)} in Z^{self.rows}")
        y = []
        start = 0
        for k, r in enumerate(self.pivots):
            if any(w[start:r]):
                return None
            col = self.H[k]
            q, rem = divmod(w[r], col[r])
            if rem:
                return None
            if q:
                for i in range(r, self.rows):
                    if col[i]:
                        w[i] -= q * col[i]
            y.append(q)
            start = r + 1
        if any(w[start:]):
            return None
        return y

    def solve(self, v: Sequence[int]):
        """Integer ``x`` with ``A @ x == v`` (needs the transform), or None."""
        y = self.coefficients(v)
        if y is None:
            return None
        x = [0] * len(self.V)
        for q, col in zip(y, self.V):
            if q:
                for i, c in enumerate(col):
                    if c:
                        x[i] += q * c
        return x


def hnf(A: IntMatrix | None = None, *, columns: Sequence[Sequence[int]] | None = None,
        rows: int | None = None, transform: bool = False) -> HermiteForm:
    """Column Hermite normal form.

    Pivots sit in strictly increasing rows, are positive, and every entry to
    the left of a pivot (in its row) lies in ``[0, pivot)``.
    """
    if A is not None:
        cols = [list(c) for c in A.columns()]
        m = A.rows
    else:
        cols = [list(c) for c in columns]
        m = rows
    n = len(cols)
    V = [[int(i == j) for i in range(n)] for j in range(n)] if transform else None

    def axpy(dst, src, q):  # col dst += q * col src
        cd, cs = cols[dst], cols[src]
        for i in range(m):
            if cs[i]:
                cd[i] += q * cs[i]
        if V is not None:
            vd, vs = V[dst], V[src]
            for i in range(n):
                if vs[i]:
                    vd[i] += q * vs[i]

    def swap(a, b):
        cols[a], cols[b] = cols[b], cols[a]
        if V is not None:
            V[a], V[b] = V[b], V[a]

    pivots = []
    k = 0
    for r in range(m):
        if k >= n:
            break
        while True:
            nz = [j for j in range(k, n) if cols[j][r]]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(cols[j][r]))
            swap(k, j0)
            if len(nz) == 1:
                break
            p = cols[k][r]
            for j in range(k + 1, n):
                if cols[j][r]:
                    axpy(j, k, -(cols[j][r] // p))
        if not cols[k][r]:
            continue
        if cols[k][r] < 0:
            cols[k] = [-x for x in cols[k]]
            if V is not None:
                V[k] = [-x for x in V[k]]
        p = cols[k][r]
        for j in range(k):
            if cols[j][r]:
                axpy(j, k, -(cols[j][r] // p))
        pivots.append(r)
        k += 1
    return HermiteForm(cols, V, tuple(pivots), m)


class Lattice:
    """A subgroup of ``Z^dim`` with its canonical HNF basis."""

    __slots__ = ("dim", "_form", "basis")

    def __init__(self, dim: int, generators: Iterable[Sequence[int]] = ()):
        gens = [tuple(g) for g in generators]
        if any(len(g) != dim for g in gens):
            raise DimensionError(f"generators must lie in Z^{dim}")
        self.dim = dim
        self._form = hnf(columns=gens, rows=dim)
        self.basis = tuple(tuple(c) for c in self._form.basis())

    @classmethod
    def from_matrix(cls, M: IntMatrix) -> "Lattice":
        return cls(M.rows, M.columns())

    @classmethod
    def full(cls, dim: int) -> "Lattice":
        return cls(dim, IntMatrix.identity(dim).columns())

    @property
    def rank(self) -> int:
        return len(self.basis)

    def matrix(self) -> IntMatrix:
        return IntMatrix.from_columns(self.basis, self.dim)

    def coordinates(self, v: Sequence[int]):
        return self._form.coefficients(v)

    def __contains__(self, v) -> bool:
        return self._form.coefficients(v) is not None

    def contains_lattice(self, other: "Lattice") -> bool:
        return other.dim == self.dim and all(b in self for b in other.basis)

    def __add__(self, other: "Lattice") -> "Lattice":
        if other.dim != self.dim:
            raise DimensionError("lattices in different ambient spaces")
        return Lattice(self.dim, self.basis + other.basis)

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.dim == other.dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.dim, self.basis))

    def __repr__(self):
        return f"Lattice({self.dim}, {list(self.basis)!r})"


def kernel_basis(A: IntMatrix) -> list:
    """Basis of ``{x : A x = 0}`` as a list of integer vectors."""
    return [tuple(v) for v in hnf(A, transform=True).kernel()]


def solve(A: IntMatrix, b: Sequence[int]):
    """An integer solution of ``A x = b``, or None."""
    return hnf(A, transform=True).solve(b)


def membership(lattice: Lattice, v: Sequence[int]) -> bool:
    return v in lattice


# -- finitely presented groups --------------------------------------------

@dataclass(frozen=True)
class InvariantFactors:
    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        t = self.torsion
        if any(d < 2 for d in t) or any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"not an invariant factor chain: {t}")

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def orders(self) -> list:
        """Cyclic summand orders, torsion first, 0 for each free summand."""
        return list(self.torsion) + [0] * self.free_rank

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return "+".join(parts) if parts else "0"


@dataclass(frozen=True)
class FpAbGroup:
    """``Z^gens`` modulo the column span of ``relations`` (a ``gens x r`` matrix)."""
    gens: int
    relations: IntMatrix = None

    def __post_init__(self):
        if self.relations is None:
            object.__setattr__(self, "relations", IntMatrix(self.gens, 0))
        if self.relations.rows != self.gens:
            raise DimensionError(f"relation matrix needs {self.gens} rows")

    @classmethod
    def free(cls, rank: int) -> "FpAbGroup":
        return cls(rank)

    @classmethod
    def cyclic(cls, order: int) -> "FpAbGroup":
        if order == 0:
            return cls(1)
        return cls(1, IntMatrix(1, 1, [[order]]))

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> "FpAbGroup":
        """Direct sum of cyclic groups; order 0 means Z."""
        tors = [(i, d) for i, d in enumerate(orders) if d != 0]
        cols = []
        for i, d in tors:
            c = [0] * len(orders)
            c[i] = d
            cols.append(c)
        return cls(len(orders), IntMatrix.from_columns(cols, len(orders)))

    def relation_lattice(self) -> Lattice:
        return _relation_lattice(self)

    def is_zero_vector(self, v: Sequence[int]) -> bool:
        return v in self.relation_lattice()

    def __str__(self):
        return str(invariant_factors(self))


_LATTICE_CACHE: dict = {}


def _relation_lattice(G: FpAbGroup) -> Lattice:
    key = G.relations
    lat = _LATTICE_CACHE.get(key)
    if lat is None:
        if len(_LATTICE_CACHE) > 4096:
            _LATTICE_CACHE.clear()
        lat = _LATTICE_CACHE[key] = Lattice.from_matrix(G.relations)
    return lat


def invariant_factors(G: FpAbGroup) -> InvariantFactors:
    if G.relations.cols == 0:
        return InvariantFactors(G.gens, ())
    _, S, _ = snf(G.relations)
    diag = [d for d in diagonal_entries(S) if d]
    return InvariantFactors(G.gens - len(diag), tuple(d for d in diag if d > 1))


def direct_sum(*groups: FpAbGroup) -> FpAbGroup:
    return FpAbGroup(sum(G.gens for G in groups), block_diagonal([G.relations for G in groups]))


def quotient(G: FpAbGroup, sub: IntMatrix) -> FpAbGroup:
    """``G`` modulo the images of the columns of ``sub``."""
    if sub.rows != G.gens:
        raise DimensionError("subgroup generators live in the wrong space")
    return FpAbGroup(G.gens, G.relations.hstack(sub))


def is_isomorphic(G: FpAbGroup, H: FpAbGroup) -> bool:
    return invariant_factors(G) == invariant_factors(H)


@dataclass(frozen=True)
class GroupHom:
    source: FpAbGroup
    target: FpAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.gens, self.source.gens):
            raise DimensionError(
                f"matrix shape {self.matrix.shape} does not fit "
                f"{self.source.gens} -> {self.target.gens} generators")

    @classmethod
    def identity(cls, G: FpAbGroup) -> "GroupHom":
        return cls(G, G, IntMatrix.identity(G.gens))

    @classmethod
    def zero(cls, source: FpAbGroup, target: FpAbGroup) -> "GroupHom":
        return cls(source, target, IntMatrix(target.gens, source.gens))

    def __call__(self, v: Sequence[int]) -> tuple:
        return self.matrix.apply(v)

    def compose(self, first: "GroupHom") -> "GroupHom":
        """``self`` after ``first``."""
        if first.target.gens != self.source.gens:
            raise DimensionError("cannot compose homomorphisms")
        return GroupHom(first.source, self.target, self.matrix @ first.matrix)

    def equals(self, other: "GroupHom") -> bool:
        """Equality as maps of presented groups."""
        if self.matrix.shape != other.matrix.shape:
            return False
        lat = self.target.relation_lattice()
        return all(c in lat for c in (self.matrix - other.matrix).columns())

    def is_zero(self) -> bool:
        lat = self.target.relation_lattice()
        return all(c in lat for c in self.matrix.columns())


def well_defined(h: GroupHom) -> bool:
    lat = h.target.relation_lattice()
    return all(c in lat for c in (h.matrix @ h.source.relations).columns())


def image_lattice(h: GroupHom) -> Lattice:
    """Images of the source generators together with the target relations."""
    return Lattice(h.target.gens, h.matrix.columns() + h.target.relations.columns())


def kernel_lattice(h: GroupHom) -> Lattice:
    """``{x : h(x) = 0 in the target}`` as a sublattice of ``Z^source.gens``."""
    g = h.source.gens
    A = h.matrix.hstack(h.target.relations)
    return Lattice(g, [v[:g] for v in kernel_basis(A)])


def is_injective(h: GroupHom) -> bool:
    return kernel_lattice(h) == h.source.relation_lattice()


def is_surjective(h: GroupHom) -> bool:
    return image_lattice(h) == Lattice.full(h.target.gens)


def subgroup(G: FpAbGroup, generators: IntMatrix) -> FpAbGroup:
    """Presentation of the subgroup of ``G`` generated by the given columns."""
    t = generators.cols
    inc = GroupHom(FpAbGroup(t), G, generators)
    k = kernel_lattice(inc)
    return FpAbGroup(t, k.matrix())

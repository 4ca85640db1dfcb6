"""Exact linear algebra over the integers and over fields.

Everything in the bigraded pipelines reduces to a handful of integer
lattice computations: Smith normal forms with tracked unimodular
transforms, saturated kernel lattices, solving A x = b over Z, and
presenting subquotients ker(g)/im(f) of finitely presented abelian
groups with enough bookkeeping to express an arbitrary element in the
chosen generators.  All entries are Python ints, so results are exact.

Matrix convention: relation matrices act by columns (each column is one
relator), morphism matrices act on column vectors of generator
coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass


class LinalgError(ValueError):
    """A contract of this module was violated (unsolvable system, bad shapes, ...)."""


class IntMatrix:
    """Dense integer matrix.  0 x n and n x 0 shapes are legal.

    >>> IntMatrix([[1, 2], [3, 4]]) @ IntMatrix.identity(2) == IntMatrix([[1, 2], [3, 4]])
    True
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols=None):
        rows = [list(r) for r in rows]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise LinalgError("ragged rows")
            if ncols is not None and ncols != width:
                raise LinalgError("ncols disagrees with row width")
            ncols = width
        elif ncols is None:
            ncols = 0
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns, nrows):
        columns = [list(c) for c in columns]
        for c in columns:
            if len(c) != nrows:
                raise LinalgError("column of wrong height")
        return cls([[c[i] for c in columns] for i in range(nrows)], len(columns))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def copy(self):
        return IntMatrix([row[:] for row in self.rows], self.ncols)

    def transpose(self):
        return IntMatrix([[self.rows[i][j] for i in range(self.nrows)]
                          for j in range(self.ncols)], self.nrows)

    def column(self, j):
        return [row[j] for row in self.rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def hstack(self, other):
        if other.nrows != self.nrows:
            raise LinalgError("hstack height mismatch")
        return IntMatrix([self.rows[i] + other.rows[i] for i in range(self.nrows)],
                         self.ncols + other.ncols)

    def vstack(self, other):
        if other.ncols != self.ncols:
            raise LinalgError("vstack width mismatch")
        return IntMatrix([row[:] for row in self.rows] + [row[:] for row in other.rows],
                         self.ncols)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise LinalgError("matmul shape mismatch")
        bt = other.transpose().rows
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in bt] for row in self.rows],
            other.ncols)

    def mulvec(self, vec):
        vec = list(vec)
        if len(vec) != self.ncols:
            raise LinalgError("mulvec length mismatch")
        return [sum(a * b for a, b in zip(row, vec)) for row in self.rows]

    def scaled(self, c):
        return IntMatrix([[c * x for x in row] for row in self.rows], self.ncols)

    def __add__(self, other):
        if self.shape != other.shape:
            raise LinalgError("add shape mismatch")
        return IntMatrix([[a + b for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def is_zero(self):
        return all(x == 0 for row in self.rows for x in row)

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.shape == other.shape
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.shape, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        if self.nrows == 0 or self.ncols == 0:
            return f"IntMatrix(shape={self.shape})"
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"IntMatrix([{body}])"


@dataclass
class SmithDecomposition:
    """S = U @ A @ V with U, V unimodular and S diagonal, d1 | d2 | ... | dr > 0.

    U_inv is the inverse of U, tracked during reduction; it gives an
    explicit basis of the column lattice of A (d_i times column i of U_inv).
    """

    matrix: IntMatrix
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    rank: int
    divisors: tuple


def smith_normal_form(a):
    """Smith normal form with transforms, deterministic pivoting.

    Pivot choice: smallest nonzero absolute value in the working
    submatrix, ties broken by (row, column).

    >>> smith_normal_form(IntMatrix([[2, 0], [0, 3]])).divisors
    (1, 6)
    """
    m, n = a.nrows, a.ncols
    s = [row[:] for row in a.rows]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    ui = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_swap(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]
        for row in ui:  # inverse of a swap is the same swap, applied to columns
            row[i], row[j] = row[j], row[i]

    def row_neg(i):
        s[i] = [-x for x in s[i]]
        u[i] = [-x for x in u[i]]
        for row in ui:
            row[i] = -row[i]

    def row_add(i, j, c):
        # row_i += c * row_j on S and U; U_inv gets col_j -= c * col_i
        si, sj = s[i], s[j]
        for k in range(n):
            si[k] += c * sj[k]
        uirow, ujrow = u[i], u[j]
        for k in range(m):
            uirow[k] += c * ujrow[k]
        for row in ui:
            row[j] -= c * row[i]

    def col_swap(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def col_add(i, j, c):
        # col_i += c * col_j on S and V
        for row in s:
            row[i] += c * row[j]
        for row in v:
            row[i] += c * row[j]

    t = 0
    limit = min(m, n)
    while t < limit:
        best = None
        for i in range(t, m):
            row = s[i]
            for j in range(t, n):
                x = row[j]
                if x:
                    ax = abs(x)
                    if best is None or ax < best[0]:
                        best = (ax, i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            row_swap(t, bi)
        if bj != t:
            col_swap(t, bj)
        while True:
            if s[t][t] < 0:
                row_neg(t)
            p = s[t][t]
            dirty = False
            for i in range(t + 1, m):
                if s[i][t]:
                    q = s[i][t] // p
                    if q:
                        row_add(i, t, -q)
                    if s[i][t]:  # remainder is smaller than p: steal the pivot
                        row_swap(t, i)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, n):
                if s[t][j]:
                    q = s[t][j] // p
                    if q:
                        col_add(j, t, -q)
                    if s[t][j]:
                        col_swap(t, j)
                        dirty = True
                        break
            if dirty:
                continue
            # pivot divides its row and column; enforce divisibility of the rest
            pull = None
            for i in range(t + 1, m):
                row = s[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        pull = i
                        break
                if pull is not None:
                    break
            if pull is None:
                break
            row_add(t, pull, 1)
        t += 1

    divisors = tuple(s[i][i] for i in range(limit) if s[i][i])
    return SmithDecomposition(
        matrix=a,
        U=IntMatrix(u, m),
        S=IntMatrix(s, n),
        V=IntMatrix(v, n),
        U_inv=IntMatrix(ui, m),
        rank=len(divisors),
        divisors=divisors,
    )


class SmithSolver:
    """One Smith decomposition, many exact questions about A.

    solve(b) finds x with A x = b over Z (or None), kernel_basis() gives
    a basis of the saturated kernel lattice, column_lattice_basis() a
    basis of the image lattice.
    """

    def __init__(self, a):
        self.a = a
        self.dec = smith_normal_form(a)

    @property
    def rank(self):
        return self.dec.rank

    def solve(self, b):
        b = list(b)
        if len(b) != self.a.nrows:
            raise LinalgError("rhs length mismatch")
        y = self.dec.U.mulvec(b)
        n = self.a.ncols
        xhat = [0] * n
        for i, d in enumerate(self.dec.divisors):
            if y[i] % d:
                return None
            xhat[i] = y[i] // d
        if any(y[i] for i in range(self.dec.rank, len(y))):
            return None
        return self.dec.V.mulvec(xhat)

    def contains(self, b):
        return self.solve(b) is not None

    def kernel_basis(self):
        cols = [self.dec.V.column(j) for j in range(self.dec.rank, self.a.ncols)]
        return IntMatrix.from_columns(cols, self.a.ncols)

    def column_lattice_basis(self):
        cols = [[d * x for x in self.dec.U_inv.column(i)]
                for i, d in enumerate(self.dec.divisors)]
        return IntMatrix.from_columns(cols, self.a.nrows)


def kernel_basis(a):
    """Basis of the saturated lattice {x : A x = 0}."""
    return SmithSolver(a).kernel_basis()


def column_lattice_basis(a):
    """Basis of the lattice spanned by the columns of A."""
    return SmithSolver(a).column_lattice_basis()


def _factorize(n):
    factors = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def merge_torsion(orders):
    """Invariant factors of a direct sum of cyclic groups of the given orders.

    >>> merge_torsion([2, 3])
    (6,)
    >>> merge_torsion([2, 2, 4])
    (2, 2, 4)
    """
    by_prime = {}
    for n in orders:
        if n <= 1:
            raise LinalgError("cyclic order must exceed 1")
        for p, e in _factorize(n).items():
            by_prime.setdefault(p, []).append(e)
    if not by_prime:
        return ()
    width = max(len(v) for v in by_prime.values())
    factors = [1] * width
    for p, exps in by_prime.items():
        exps = sorted(exps, reverse=True)
        for i, e in enumerate(exps):
            factors[width - 1 - i] *= p ** e  # largest exponents go to the last factor
    return tuple(f for f in factors if f > 1)


class PresentedGroup:
    """Abelian group Z^n modulo the column lattice of a relation matrix."""

    __slots__ = ("n_gens", "relations", "_solver", "_invariants")

    def __init__(self, n_gens, relations=None):
        if relations is None:
            relations = IntMatrix.zeros(n_gens, 0)
        if relations.nrows != n_gens:
            raise LinalgError("relation matrix height must equal generator count")
        self.n_gens = n_gens
        self.relations = relations
        self._solver = None
        self._invariants = None

    @classmethod
    def free(cls, n):
        return cls(n)

    @classmethod
    def diagonal(cls, orders):
        """Group with one generator per entry; order 0 means free."""
        orders = list(orders)
        n = len(orders)
        cols = [[orders[k] if i == k else 0 for i in range(n)]
                for k in range(n) if orders[k]]
        return cls(n, IntMatrix.from_columns(cols, n))

    def relation_solver(self):
        if self._solver is None:
            self._solver = SmithSolver(self.relations)
        return self._solver

    def invariants(self):
        """(rank, invariant factors > 1, ascending divisibility)."""
        if self._invariants is None:
            dec = smith_normal_form(self.relations)
            torsion = tuple(d for d in dec.divisors if d > 1)
            self._invariants = (self.n_gens - dec.rank, torsion)
        return self._invariants

    @property
    def rank(self):
        return self.invariants()[0]

    @property
    def torsion(self):
        return self.invariants()[1]

    def is_trivial(self):
        rank, torsion = self.invariants()
        return rank == 0 and not torsion

    def element_is_zero(self, coords):
        """Whether a coordinate vector lies in the relation lattice."""
        coords = list(coords)
        if all(x == 0 for x in coords):
            return True
        return self.relation_solver().contains(coords)

    def __repr__(self):
        rank, torsion = self.invariants()
        parts = []
        if rank:
            parts.append("Z" if rank == 1 else f"Z^{rank}")
        parts.extend(f"C{d}" for d in torsion)
        return "PresentedGroup<%s>" % (" x ".join(parts) if parts else "0")


@dataclass
class GroupMorphism:
    """Morphism of presented groups, given on generators by an integer matrix."""

    source: PresentedGroup
    target: PresentedGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.n_gens, self.source.n_gens):
            raise LinalgError("morphism matrix has wrong shape")

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, IntMatrix.zeros(target.n_gens, source.n_gens))

    def is_valid(self):
        """Whether relations of the source land in the relation lattice of the target."""
        solver = self.target.relation_solver()
        for col in self.relations_image().columns():
            if not solver.contains(col):
                return False
        return True

    def relations_image(self):
        return self.matrix @ self.source.relations

    def compose(self, earlier):
        """self after earlier."""
        if earlier.target is not self.source and earlier.target.n_gens != self.source.n_gens:
            raise LinalgError("composition mismatch")
        return GroupMorphism(earlier.source, self.target, self.matrix @ earlier.matrix)

    def is_zero_map(self):
        return all(self.target.element_is_zero(self.matrix.column(j))
                   for j in range(self.matrix.ncols))


class Subquotient:
    """ker(g)/im(f) with normalized generators and an express() map.

    Generators are coordinate vectors in the middle group's generator
    basis.  Units are dropped; torsion generators come first, each with
    its order, then free generators with order 0.
    """

    __slots__ = ("middle_n", "rank", "torsion", "orders", "gens",
                 "_kernel_solver", "_ux", "_divisors", "_kept")

    def __init__(self, middle_n, rank, torsion, orders, gens,
                 kernel_solver, ux, divisors, kept):
        self.middle_n = middle_n
        self.rank = rank
        self.torsion = torsion
        self.orders = orders
        self.gens = gens
        self._kernel_solver = kernel_solver
        self._ux = ux
        self._divisors = divisors
        self._kept = kept

    @property
    def n_gens(self):
        return len(self.orders)

    def invariants(self):
        return (self.rank, self.torsion)

    def is_trivial(self):
        return self.rank == 0 and not self.torsion

    def express(self, vec):
        """Coordinates of the class of vec in the normalized generators.

        vec must represent an element of ker(g); torsion coordinates are
        reduced into [0, order).
        """
        a = self._kernel_solver.solve(list(vec))
        if a is None:
            raise LinalgError("vector does not lie in the kernel subgroup")
        z = self._ux.mulvec(a)
        coords = []
        for pos, i in enumerate(self._kept):
            d = self.orders[pos]
            coords.append(z[i] % d if d else z[i])
        return coords

    def class_is_zero(self, vec):
        return all(c == 0 for c in self.express(vec))

    def __repr__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts.extend(f"C{d}" for d in self.torsion)
        return "Subquotient<%s>" % (" x ".join(parts) if parts else "0")


def homology_of_pair(f, g):
    """ker(g)/im(f) for morphisms A --f--> B --g--> C with g∘f = 0.

    Raises LinalgError if the composite is nonzero or if f does not land
    in ker(g).  Generators are returned in the coordinates of B.
    """
    if f.target.n_gens != g.source.n_gens:
        raise LinalgError("f.target and g.source disagree")
    b = g.source
    n_b = b.n_gens

    composite = g.matrix @ f.matrix
    target_solver = g.target.relation_solver()
    for j in range(composite.ncols):
        col = composite.column(j)
        if any(col) and not target_solver.contains(col):
            raise LinalgError("g∘f is not the zero morphism")

    # lattice {x in Z^n_b : g(x) lies in the relation lattice of C}
    if g.target.n_gens == 0:
        ker = IntMatrix.identity(n_b)
    else:
        stacked = g.matrix.hstack(g.target.relations)
        full_kernel = kernel_basis(stacked)
        projected = IntMatrix(full_kernel.rows[:n_b], full_kernel.ncols)
        ker = column_lattice_basis(projected)

    kernel_solver = SmithSolver(ker)
    relators = f.matrix.hstack(b.relations)
    expressed = []
    for j in range(relators.ncols):
        x = kernel_solver.solve(relators.column(j))
        if x is None:
            raise LinalgError("im(f) or a relation of B escapes ker(g)")
        expressed.append(x)
    k = ker.ncols
    x_mat = IntMatrix.from_columns(expressed, k)
    dec = smith_normal_form(x_mat)

    divisors = list(dec.divisors) + [0] * (k - dec.rank)
    kept = [i for i in range(k) if divisors[i] != 1]
    orders = tuple(divisors[i] for i in kept)
    torsion = tuple(d for d in orders if d)
    rank = sum(1 for d in orders if d == 0)

    gen_cols = [ker.mulvec(dec.U_inv.column(i)) for i in kept]
    gens = IntMatrix.from_columns(gen_cols, n_b)

    return Subquotient(
        middle_n=n_b,
        rank=rank,
        torsion=torsion,
        orders=orders,
        gens=gens,
        kernel_solver=kernel_solver,
        ux=dec.U,
        divisors=tuple(divisors),
        kept=kept,
    )


def kernel_subgroup(g):
    """ker(g) as a subquotient of g.source (f = 0)."""
    zero = GroupMorphism.zero(PresentedGroup.free(0), g.source)
    return homology_of_pair(zero, g)


def _rank_bareiss(rows, nrows, ncols):
    m = [row[:] for row in rows]
    rank = 0
    denom = 1
    for col in range(ncols):
        pivot = None
        for i in range(rank, nrows):
            if m[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != rank:
            m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        for i in range(rank + 1, nrows):
            mi = m[i]
            mr = m[rank]
            factor = mi[col]
            for j in range(col, ncols):
                mi[j] = (mi[j] * pv - factor * mr[j]) // denom
        denom = pv
        rank += 1
        if rank == nrows:
            break
    return rank


def is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def field_rank(a, field):
    """Rank over Q (field='Q', fraction-free) or over F_p (field=p, p prime).

    >>> field_rank(IntMatrix([[2, 4], [1, 2]]), 'Q')
    1
    >>> field_rank(IntMatrix([[2, 4], [1, 2]]), 2)
    1
    """
    if field == "Q":
        return _rank_bareiss(a.rows, a.nrows, a.ncols)
    p = field
    if not isinstance(p, int) or not is_prime(p):
        raise LinalgError(f"not a prime: {p!r}")
    m = [[x % p for x in row] for row in a.rows]
    rank = 0
    for col in range(a.ncols):
        pivot = None
        for i in range(rank, a.nrows):
            if m[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        m[rank] = [(x * inv) % p for x in m[rank]]
        for i in range(a.nrows):
            if i != rank and m[i][col]:
                c = m[i][col]
                m[i] = [(x - c * y) % p for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == a.nrows:
            break
    return rank


class FieldOps:
    """Minimal dense linear algebra over Q (Fraction) or F_p, for the
    field fast paths.  Matrices are lists of rows of field elements."""

    def __init__(self, field):
        if field == "Q":
            self.p = None
        else:
            if not isinstance(field, int) or not is_prime(field):
                raise LinalgError(f"not a prime: {field!r}")
            self.p = field
        self.field = field

    def of_int(self, x):
        if self.p is None:
            from fractions import Fraction
            return Fraction(x)
        return x % self.p

    def of_int_matrix(self, a):
        return [[self.of_int(x) for x in row] for row in a.rows]

    def _inv(self, x):
        if self.p is None:
            return 1 / x
        return pow(x, self.p - 2, self.p)

    def rref(self, m):
        """Reduced row echelon form, returns (rows, pivot column list)."""
        m = [row[:] for row in m]
        nrows = len(m)
        ncols = len(m[0]) if m else 0
        pivots = []
        r = 0
        for col in range(ncols):
            pivot = None
            for i in range(r, nrows):
                if m[i][col]:
                    pivot = i
                    break
            if pivot is None:
                continue
            m[r], m[pivot] = m[pivot], m[r]
            inv = self._inv(m[r][col])
            m[r] = [self.mul(x, inv) for x in m[r]]
            for i in range(nrows):
                if i != r and m[i][col]:
                    c = m[i][col]
                    m[i] = [self._sub(x, self.mul(c, y)) for x, y in zip(m[i], m[r])]
            pivots.append(col)
            r += 1
            if r == nrows:
                break
        return m, pivots

    def mul(self, a, b):
        return (a * b) % self.p if self.p is not None else a * b

    def _sub(self, a, b):
        return (a - b) % self.p if self.p is not None else a - b

    def add(self, a, b):
        return (a + b) % self.p if self.p is not None else a + b

    def scale_int(self, c, x):
        if self.p is not None:
            return (c * x) % self.p
        return c * x

    def apply_int_matrix(self, int_matrix, vec):
        """Push a field vector through an integer matrix."""
        out = []
        for row in int_matrix.rows:
            acc = self.of_int(0)
            for coef, x in zip(row, vec):
                if coef:
                    acc = self.add(acc, self.scale_int(coef, x))
            out.append(acc)
        return out

    def rank(self, m):
        if not m or not m[0]:
            return 0
        return len(self.rref(m)[1])

    def kernel_basis(self, m, ncols):
        """Basis vectors of the right kernel of the matrix (rows given)."""
        if not m:
            return [[self.of_int(1) if i == j else self.of_int(0) for i in range(ncols)]
                    for j in range(ncols)]
        r, pivots = self.rref(m)
        pivot_set = set(pivots)
        free = [j for j in range(ncols) if j not in pivot_set]
        basis = []
        for fj in free:
            vec = [self.of_int(0)] * ncols
            vec[fj] = self.of_int(1)
            for i, pj in enumerate(pivots):
                vec[pj] = self._sub(self.of_int(0), r[i][fj])
            basis.append(vec)
        return basis

    def solve(self, columns, b):
        """Any coefficient vector x with sum x_j * columns[j] = b, or None."""
        n = len(b)
        aug = [[col[i] for col in columns] + [b[i]] for i in range(n)]
        r, pivots = self.rref(aug)
        width = len(columns)
        if width in pivots:
            return None  # pivot in the rhs column: inconsistent
        x = [self.of_int(0)] * width
        for i, pj in enumerate(pivots):
            x[pj] = r[i][width]
        return x


if __name__ == "__main__":
    import doctest

    doctest.testmod()

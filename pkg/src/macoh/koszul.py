"""The finite Koszul bicomplex of a simplicial complex and its double
cohomology, the second of the two independent pipelines.

R(K) has basis the monomials u_J v_I with I a face of K, J a subset of
the remaining vertices, in bidegree (k, l) = (|J|, |J| + |I|)
(displayed (-k, 2l)).  The two differentials are

    d(u_J v_I)  = sum over j in J with I+j a face of sign_eps(j, J) u_{J-j} v_{I+j}
    d'(u_J v_I) = sum over j in J of sign_eps(j, J) u_{J-j} v_I

with d^2 = 0, d'^2 = 0, d d' = -d' d, and d' the sum of the derivations
iota_i that strip u_i.  Cohomology of (R, d) is the bigraded cohomology
of Z_K; descending d' to it and taking homology again gives HH.

The multiplication is u_J v_I * u_{J'} v_{I'} = 0 unless the supports
are disjoint and I + I' is a face, in which case the coefficient is
(-1)^#{(a,b) in J x J' : b < a}.
"""

from __future__ import annotations

from .complexes import sign_eps, sign_eps_set, submasks, vertices_of
from .errors import VerificationError
from .homology import reduced_complex
from .linalg import (
    FieldOps,
    GroupMorphism,
    IntMatrix,
    PresentedGroup,
    homology_of_pair,
)


class RComplex:
    """Bigraded basis and differentials of R(K)."""

    __slots__ = ("complex", "bidegrees", "index", "_d", "_dp")

    def __init__(self, k):
        self.complex = k
        full = k.full_mask()
        bidegrees = {}
        for imask in sorted(k.faces):
            l_part = imask.bit_count()
            for jmask in submasks(full & ~imask):
                kk = jmask.bit_count()
                bidegrees.setdefault((kk, kk + l_part), []).append((jmask, imask))
        self.bidegrees = {b: sorted(mons) for b, mons in bidegrees.items()}
        self.index = {b: {mon: i for i, mon in enumerate(mons)}
                      for b, mons in self.bidegrees.items()}
        self._d = {}
        self._dp = {}

    def basis(self, b):
        return self.bidegrees.get(b, [])

    def dim(self, b):
        return len(self.bidegrees.get(b, ()))

    def d_matrix(self, b):
        """d: (k, l) -> (k-1, l)."""
        if b not in self._d:
            kk, l = b
            target = (kk - 1, l)
            rows = self.index.get(target, {})
            mat = IntMatrix.zeros(len(rows), self.dim(b))
            for c, (jmask, imask) in enumerate(self.basis(b)):
                rest = jmask
                while rest:
                    low = rest & -rest
                    rest ^= low
                    bigger = imask | low
                    if self.complex.has_face(bigger):
                        r = rows.get((jmask ^ low, bigger))
                        if r is not None:
                            mat.rows[r][c] += sign_eps(low.bit_length(), jmask)
            self._d[b] = mat
        return self._d[b]

    def dprime_matrix(self, b):
        """d': (k, l) -> (k-1, l-1)."""
        if b not in self._dp:
            kk, l = b
            target = (kk - 1, l - 1)
            rows = self.index.get(target, {})
            mat = IntMatrix.zeros(len(rows), self.dim(b))
            for c, (jmask, imask) in enumerate(self.basis(b)):
                rest = jmask
                while rest:
                    low = rest & -rest
                    rest ^= low
                    r = rows.get((jmask ^ low, imask))
                    if r is not None:
                        mat.rows[r][c] += sign_eps(low.bit_length(), jmask)
            self._dp[b] = mat
        return self._dp[b]

    def iota_matrix(self, b, i):
        """The derivation stripping u_i: (k, l) -> (k-1, l-1)."""
        kk, l = b
        rows = self.index.get((kk - 1, l - 1), {})
        mat = IntMatrix.zeros(len(rows), self.dim(b))
        bit = 1 << (i - 1)
        for c, (jmask, imask) in enumerate(self.basis(b)):
            if jmask & bit:
                r = rows.get((jmask ^ bit, imask))
                if r is not None:
                    mat.rows[r][c] = sign_eps(i, jmask)
        return mat

    def check_identities(self):
        """d^2 = 0, d'^2 = 0, d d' + d' d = 0, d' = sum of iotas.

        Raises VerificationError on any failure."""
        for b in self.bidegrees:
            kk, l = b
            if not (self.d_matrix((kk - 1, l)) @ self.d_matrix(b)).is_zero():
                raise VerificationError(f"d^2 != 0 at {b}")
            if not (self.dprime_matrix((kk - 1, l - 1)) @ self.dprime_matrix(b)).is_zero():
                raise VerificationError(f"d'^2 != 0 at {b}")
            anti = (self.d_matrix((kk - 1, l - 1)) @ self.dprime_matrix(b)
                    + self.dprime_matrix((kk - 1, l)) @ self.d_matrix(b))
            if not anti.is_zero():
                raise VerificationError(f"d d' + d' d != 0 at {b}")
            total = IntMatrix.zeros(self.dim((kk - 1, l - 1)), self.dim(b))
            for i in range(1, self.complex.m + 1):
                total = total + self.iota_matrix(b, i)
            if total != self.dprime_matrix(b):
                raise VerificationError(f"d' is not the sum of the iota derivations at {b}")
        return True

    # -- multiplication ----------------------------------------------------

    def monomial_product(self, mon1, mon2):
        """(sign, monomial) or None if the product vanishes."""
        j1, i1 = mon1
        j2, i2 = mon2
        if (j1 | i1) & (j2 | i2):
            return None
        iboth = i1 | i2
        if not self.complex.has_face(iboth):
            return None
        sign = 1
        rest = j1
        while rest:
            low = rest & -rest
            rest ^= low
            if (j2 & (low - 1)).bit_count() & 1:
                sign = -sign
        return sign, (j1 | j2, iboth)

    def multiply(self, b1, vec1, b2, vec2):
        """Product of homogeneous elements, in the basis of b1 + b2."""
        target = (b1[0] + b2[0], b1[1] + b2[1])
        out = [0] * self.dim(target)
        idx = self.index.get(target, {})
        basis1 = self.basis(b1)
        basis2 = self.basis(b2)
        for c1, x1 in enumerate(vec1):
            if not x1:
                continue
            for c2, x2 in enumerate(vec2):
                if not x2:
                    continue
                hit = self.monomial_product(basis1[c1], basis2[c2])
                if hit is None:
                    continue
                sign, mon = hit
                out[idx[mon]] += sign * x1 * x2
        return target, out


class KoszulCohomology:
    """Cohomology of (R, d) per bidegree, with representatives."""

    __slots__ = ("rc", "groups")

    def __init__(self, rc, groups):
        self.rc = rc
        self.groups = groups

    def bidegrees(self):
        return sorted(self.groups)

    def group(self, b):
        return self.groups.get(b)

    def invariants(self):
        return {b: sq.invariants() for b, sq in self.groups.items()}


def cohomology_via_koszul(k_or_rc):
    rc = k_or_rc if isinstance(k_or_rc, RComplex) else RComplex(k_or_rc)
    groups = {}
    for b in rc.bidegrees:
        kk, l = b
        n = rc.dim(b)
        mid = PresentedGroup.free(n)
        d_out = rc.d_matrix(b)
        d_in = rc.d_matrix((kk + 1, l))
        f = GroupMorphism(PresentedGroup.free(d_in.ncols), mid, d_in)
        g = GroupMorphism(mid, PresentedGroup.free(d_out.nrows), d_out)
        sq = homology_of_pair(f, g)
        if not sq.is_trivial():
            groups[b] = sq
    return KoszulCohomology(rc, groups)


def _descend_dprime(kc):
    """Class-level d' matrices on Koszul cohomology, keyed by source bidegree."""
    rc = kc.rc
    out = {}
    for b, sq in kc.groups.items():
        kk, l = b
        target_b = (kk - 1, l - 1)
        tgt = kc.groups.get(target_b)
        dp = rc.dprime_matrix(b)
        if tgt is None:
            out[b] = GroupMorphism.zero(PresentedGroup.diagonal(sq.orders),
                                        PresentedGroup.free(0))
            continue
        cols = []
        for j in range(sq.n_gens):
            pushed = dp.mulvec(sq.gens.column(j))
            cols.append(tgt.express(pushed))
        mat = IntMatrix.from_columns(cols, tgt.n_gens)
        out[b] = GroupMorphism(PresentedGroup.diagonal(sq.orders),
                               PresentedGroup.diagonal(tgt.orders), mat)
    for b, mor in out.items():
        kk, l = b
        nxt = out.get((kk - 1, l - 1))
        if nxt is None or mor.target.n_gens == 0 or nxt.target.n_gens == 0:
            continue
        comp = nxt.matrix @ mor.matrix
        for j in range(comp.ncols):
            if not nxt.target.element_is_zero(comp.column(j)):
                raise VerificationError(
                    f"descended d' does not square to zero at bidegree {b}")
    return out


class KoszulDouble:
    """HH from the Koszul side: per-bidegree subquotients of classes."""

    __slots__ = ("kc", "morphisms", "groups")

    def __init__(self, kc, morphisms, groups):
        self.kc = kc
        self.morphisms = morphisms
        self.groups = groups

    def bidegrees(self):
        return sorted(self.groups)

    def invariants(self):
        return {b: sq.invariants() for b, sq in self.groups.items()}

    def total_rank(self):
        return sum(sq.rank for sq in self.groups.values())

    def euler_characteristic(self):
        return sum((-1) ** (b[0] & 1) * sq.rank for b, sq in self.groups.items())


def hh_via_koszul(k_or_rc):
    kc = cohomology_via_koszul(k_or_rc)
    morphisms = _descend_dprime(kc)
    groups = {}
    for b, sq in kc.groups.items():
        kk, l = b
        mid = PresentedGroup.diagonal(sq.orders)
        f = morphisms.get((kk + 1, l + 1))
        if f is None or f.target.n_gens == 0:
            f = GroupMorphism.zero(PresentedGroup.free(0), mid)
        g = morphisms[b]
        hh = homology_of_pair(f, g)
        if not hh.is_trivial():
            groups[b] = hh
    return KoszulDouble(kc, morphisms, groups)


# ---------------------------------------------------------------------------
# the bridge between the two pipelines


def _hochster_cochain_bases(k):
    """Per bidegree, the pairs (I, L) with L a face of K inside I, |I| = l,
    |L| = l - k, ordered by ascending (I, L) masks."""
    full = k.full_mask()
    faces = sorted(k.faces)
    out = {}
    for imask in range(full + 1):
        l = imask.bit_count()
        for lmask in faces:
            if lmask & ~imask:
                continue
            kk = l - lmask.bit_count()
            out.setdefault((kk, l), []).append((imask, lmask))
    return out


def hochster_koszul_iso(k):
    """The signed bijection (I, L) -> sign_eps_set(L, I) u_{I-L} v_L.

    Builds the subset-side cochain differentials independently and
    checks the bijection intertwines both d and d' on every bidegree;
    raises VerificationError otherwise.  Returns the per-bidegree
    matrices.
    """
    rc = RComplex(k)
    bases = _hochster_cochain_bases(k)
    index = {b: {pair: i for i, pair in enumerate(pairs)} for b, pairs in bases.items()}

    iso = {}
    for b, pairs in bases.items():
        mat = IntMatrix.zeros(rc.dim(b), len(pairs))
        ridx = rc.index.get(b, {})
        for c, (imask, lmask) in enumerate(pairs):
            mat.rows[ridx[(imask & ~lmask, lmask)]][c] = sign_eps_set(lmask, imask)
        iso[b] = mat

    def subset_d(b):
        # coboundary inside each summand I: add a vertex of I to L
        kk, l = b
        target = index.get((kk - 1, l), {})
        mat = IntMatrix.zeros(len(target), len(bases[b]))
        for c, (imask, lmask) in enumerate(bases[b]):
            rest = imask & ~lmask
            while rest:
                low = rest & -rest
                rest ^= low
                bigger = lmask | low
                r = target.get((imask, bigger))
                if r is not None:
                    mat.rows[r][c] += sign_eps(low.bit_length(), lmask)
        return mat

    def subset_dprime(b):
        # (-1)^{|L|} sum over i in I - L of sign_eps(i, I) (I - i, L)
        kk, l = b
        target = index.get((kk - 1, l - 1), {})
        mat = IntMatrix.zeros(len(target), len(bases[b]))
        for c, (imask, lmask) in enumerate(bases[b]):
            sgn = -1 if lmask.bit_count() & 1 else 1
            rest = imask & ~lmask
            while rest:
                low = rest & -rest
                rest ^= low
                r = target.get((imask ^ low, lmask))
                if r is not None:
                    mat.rows[r][c] += sgn * sign_eps(low.bit_length(), imask)
        return mat

    for b, pairs in bases.items():
        kk, l = b
        if iso[b].ncols != rc.dim(b):
            raise VerificationError(f"basis sizes differ at bidegree {b}")
        left_d = rc.d_matrix(b) @ iso[b]
        right_d = iso.get((kk - 1, l), IntMatrix.zeros(rc.dim((kk - 1, l)), 0))
        if left_d != right_d @ subset_d(b):
            raise VerificationError(f"the bijection does not intertwine d at {b}")
        left_dp = rc.dprime_matrix(b) @ iso[b]
        right_dp = iso.get((kk - 1, l - 1),
                           IntMatrix.zeros(rc.dim((kk - 1, l - 1)), 0))
        if left_dp != right_dp @ subset_dprime(b):
            raise VerificationError(f"the bijection does not intertwine d' at {b}")
    return iso


def d_prime_acyclicity(k):
    """Homology of (R, d') per bidegree; nonzero only for a full simplex,
    where it is a single Z in bidegree (0, m) generated by v_1...v_m."""
    rc = RComplex(k)
    groups = {}
    for b in rc.bidegrees:
        kk, l = b
        n = rc.dim(b)
        mid = PresentedGroup.free(n)
        d_out = rc.dprime_matrix(b)
        d_in = rc.dprime_matrix((kk + 1, l + 1))
        f = GroupMorphism(PresentedGroup.free(d_in.ncols), mid, d_in)
        g = GroupMorphism(mid, PresentedGroup.free(d_out.nrows), d_out)
        sq = homology_of_pair(f, g)
        if not sq.is_trivial():
            groups[b] = sq
    return rc, groups


# ---------------------------------------------------------------------------
# products over a field


class _FieldLayer:
    """ker(out)/im(in) over a field with representatives in the ambient space."""

    __slots__ = ("ops", "bounds", "reps")

    def __init__(self, ops, n, out_rows, in_cols):
        self.ops = ops
        cycles = ops.kernel_basis(out_rows, n)
        self.bounds = in_cols
        self.reps = []
        if cycles:
            allcols = in_cols + cycles
            rows = [[col[i] for col in allcols] for i in range(n)]
            _, pivots = ops.rref(rows)
            self.reps = [allcols[j] for j in pivots if j >= len(in_cols)]

    @property
    def dim(self):
        return len(self.reps)

    def express(self, vec):
        x = self.ops.solve(self.bounds + self.reps, vec)
        if x is None:
            raise VerificationError("vector is not a cycle in the field layer")
        return x[len(self.bounds):]


class KoszulFieldAlgebra:
    """Cohomology and double cohomology of R(K) over a field, with the
    multiplicative structure on classes."""

    def __init__(self, k, field):
        self.rc = RComplex(k)
        self.ops = FieldOps(field)
        ops = self.ops
        self.h_layers = {}
        for b in self.rc.bidegrees:
            kk, l = b
            n = self.rc.dim(b)
            out_rows = ops.of_int_matrix(self.rc.d_matrix(b))
            in_mat = self.rc.d_matrix((kk + 1, l))
            in_cols = [[ops.of_int(x) for x in in_mat.column(j)]
                       for j in range(in_mat.ncols)]
            layer = _FieldLayer(ops, n, out_rows, in_cols)
            if layer.dim:
                self.h_layers[b] = layer
        # descended d' on class coordinates
        self.class_dprime = {}
        for b, layer in self.h_layers.items():
            kk, l = b
            tgt = self.h_layers.get((kk - 1, l - 1))
            if tgt is None:
                self.class_dprime[b] = None
                continue
            dp = self.rc.dprime_matrix(b)
            cols = [tgt.express(ops.apply_int_matrix(dp, rep)) for rep in layer.reps]
            self.class_dprime[b] = [[col[r] for col in cols] for r in range(tgt.dim)]
        # double cohomology layers in class coordinates
        self.hh_layers = {}
        for b, layer in self.h_layers.items():
            kk, l = b
            out_mat = self.class_dprime.get(b)
            out_rows = out_mat if out_mat else []
            incoming = self.class_dprime.get((kk + 1, l + 1))
            in_cols = []
            if incoming and self.h_layers.get((kk + 1, l + 1)):
                width = self.h_layers[(kk + 1, l + 1)].dim
                in_cols = [[incoming[r][c] for r in range(layer.dim)]
                           for c in range(width)]
            hh = _FieldLayer(ops, layer.dim, out_rows, in_cols)
            if hh.dim:
                self.hh_layers[b] = hh

    def h_dims(self):
        return {b: layer.dim for b, layer in self.h_layers.items()}

    def hh_dims(self):
        return {b: layer.dim for b, layer in self.hh_layers.items()}

    def hh_cocycle(self, b, i):
        """An R-cocycle representing the i-th double cohomology class at b."""
        h_layer = self.h_layers[b]
        class_coords = self.hh_layers[b].reps[i]
        n = self.rc.dim(b)
        vec = [self.ops.of_int(0)] * n
        for c, coef in enumerate(class_coords):
            if coef:
                rep = h_layer.reps[c]
                vec = [self.ops.add(x, self.ops.mul(coef, y))
                       for x, y in zip(vec, rep)]
        return vec

    def hh_product(self, b1, i, b2, j):
        """Coordinates of the product of two double cohomology classes in
        the double cohomology basis at b1 + b2 (empty if that is zero)."""
        x = self.hh_cocycle(b1, i)
        y = self.hh_cocycle(b2, j)
        target, z = self._multiply_field(b1, x, b2, y)
        h_layer = self.h_layers.get(target)
        if h_layer is None:
            return target, []
        h_coords = h_layer.express(z)
        hh_layer = self.hh_layers.get(target)
        if hh_layer is None:
            return target, []
        return target, hh_layer.express(h_coords)

    def _multiply_field(self, b1, vec1, b2, vec2):
        target = (b1[0] + b2[0], b1[1] + b2[1])
        out = [self.ops.of_int(0)] * self.rc.dim(target)
        idx = self.rc.index.get(target, {})
        basis1 = self.rc.basis(b1)
        basis2 = self.rc.basis(b2)
        for c1, x1 in enumerate(vec1):
            if not x1:
                continue
            for c2, x2 in enumerate(vec2):
                if not x2:
                    continue
                hit = self.rc.monomial_product(basis1[c1], basis2[c2])
                if hit is None:
                    continue
                sign, mon = hit
                pos = idx[mon]
                out[pos] = self.ops.add(out[pos],
                                        self.ops.scale_int(sign, self.ops.mul(x1, x2)))
        return target, out

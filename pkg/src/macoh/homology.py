"""Reduced simplicial cohomology of full subcomplexes, with representatives.

The reduced cochain complex of K0 = K_I is augmented: the empty face
sits in degree -1, so for I = ∅ the complex is a single Z in degree -1
and H^{-1} = Z there.  Bases are faces grouped by cardinality q (the
degree is p = q - 1), each group sorted by ascending bitmask, which
makes every matrix in the package byte-stable across runs.

The coboundary of the basis cochain dual to a face L is

    d(alpha_L) = sum over j in I \\ L with L + j a face of sign_eps(j, L) alpha_{L+j},

and the boundary operator on chains is its transpose.  Restriction to a
smaller subset deletes the faces that meet the removed vertex;
inclusion into a larger subset is the dual injection on chains.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import sign_eps, vertices_of
from .linalg import (
    GroupMorphism,
    IntMatrix,
    LinalgError,
    PresentedGroup,
    Subquotient,
    homology_of_pair,
    kernel_subgroup,
)


@dataclass
class ReducedComplex:
    """Cochain data of one full subcomplex K_I.

    bases[q] lists the faces with q vertices (q = 0 holds the empty
    face); coboundaries[q] maps q-cochains to (q+1)-cochains.  Degree p
    cochains live on bases[p + 1].
    """

    support: int
    bases: list
    coboundaries: list

    @property
    def top_cardinality(self):
        return len(self.bases) - 1

    def basis(self, p):
        q = p + 1
        if q < 0 or q >= len(self.bases):
            return []
        return self.bases[q]

    def coboundary(self, p):
        """Matrix of d: C^p -> C^{p+1}."""
        q = p + 1
        if 0 <= q < len(self.coboundaries):
            return self.coboundaries[q]
        rows = len(self.basis(p + 1))
        cols = len(self.basis(p))
        return IntMatrix.zeros(rows, cols)

    def boundary(self, p):
        """Matrix of the transpose operator C_p -> C_{p-1} on chains."""
        return self.coboundary(p - 1).transpose()


def reduced_complex(k, support=None):
    """Reduced cochain complex of the full subcomplex on the support mask."""
    if support is None:
        support = k.full_mask()
    groups = k.faces_within(support)
    index = [{mask: i for i, mask in enumerate(group)} for group in groups]
    coboundaries = []
    for q in range(len(groups)):
        cols = groups[q]
        rows = groups[q + 1] if q + 1 < len(groups) else []
        row_index = index[q + 1] if q + 1 < len(groups) else {}
        mat = [[0] * len(cols) for _ in rows]
        rest_support = support
        for ci, face in enumerate(cols):
            outside = rest_support & ~face
            rest = outside
            while rest:
                low = rest & -rest
                rest ^= low
                bigger = face | low
                ri = row_index.get(bigger)
                if ri is not None:
                    j = low.bit_length()
                    mat[ri][ci] = sign_eps(j, face)
        coboundaries.append(IntMatrix(mat, len(cols)))
    return ReducedComplex(support=support, bases=groups, coboundaries=coboundaries)


class ComplexCohomology:
    """Cohomology of one reduced complex, every degree, with representatives."""

    __slots__ = ("cx", "groups")

    def __init__(self, cx, groups):
        self.cx = cx
        self.groups = groups  # degree p -> Subquotient, only nondegenerate p kept

    def degrees(self):
        return sorted(self.groups)

    def group(self, p):
        return self.groups.get(p)

    def invariants(self, p):
        g = self.groups.get(p)
        return g.invariants() if g is not None else (0, ())

    def n_gens(self, p):
        g = self.groups.get(p)
        return g.n_gens if g is not None else 0


def cohomology(cx):
    """Reduced cohomology with representatives, per degree."""
    groups = {}
    for q in range(len(cx.bases)):
        p = q - 1
        n = len(cx.bases[q])
        if n == 0:
            continue
        mid = PresentedGroup.free(n)
        d_out = cx.coboundary(p)
        d_in = cx.coboundary(p - 1)
        f = GroupMorphism(PresentedGroup.free(d_in.ncols), mid, d_in)
        g = GroupMorphism(mid, PresentedGroup.free(d_out.nrows), d_out)
        sq = homology_of_pair(f, g)
        if not sq.is_trivial():
            groups[p] = sq
    return ComplexCohomology(cx, groups)


def homology(cx):
    """Reduced homology with representatives, per degree, on the same bases."""
    groups = {}
    for q in range(len(cx.bases)):
        p = q - 1
        n = len(cx.bases[q])
        if n == 0:
            continue
        mid = PresentedGroup.free(n)
        del_out = cx.boundary(p)       # C_p -> C_{p-1}
        del_in = cx.boundary(p + 1)    # C_{p+1} -> C_p
        f = GroupMorphism(PresentedGroup.free(del_in.ncols), mid, del_in)
        g = GroupMorphism(mid, PresentedGroup.free(del_out.nrows), del_out)
        sq = homology_of_pair(f, g)
        if not sq.is_trivial():
            groups[p] = sq
    return ComplexCohomology(cx, groups)


def restriction_matrix(cx_big, cx_small, p):
    """Cochain restriction C^p(K_I) -> C^p(K_J) for J a subset of I.

    Faces of K_J are faces of K_I; the matrix keeps their coordinates
    and drops the rest.
    """
    big = cx_big.basis(p)
    small = cx_small.basis(p)
    index = {mask: i for i, mask in enumerate(big)}
    mat = IntMatrix.zeros(len(small), len(big))
    for r, mask in enumerate(small):
        mat.rows[r][index[mask]] = 1
    return mat


def inclusion_matrix(cx_small, cx_big, p):
    """Chain inclusion C_p(K_I) -> C_p(K_J) for I a subset of J."""
    return restriction_matrix(cx_big, cx_small, p).transpose()


def induced_map(src_coh, dst_coh, chain_matrix, p):
    """Class-level matrix of a (co)chain map in degree p.

    chain_matrix sends source basis coordinates to target basis
    coordinates; representatives of the source classes are pushed
    through it and expressed in the target generators.
    """
    src = src_coh.group(p)
    dst = dst_coh.group(p)
    n_src = src.n_gens if src is not None else 0
    n_dst = dst.n_gens if dst is not None else 0
    if n_src == 0 or n_dst == 0:
        return IntMatrix.zeros(n_dst, n_src)
    cols = []
    for j in range(n_src):
        image = chain_matrix.mulvec(src.gens.column(j))
        cols.append(dst.express(image))
    return IntMatrix.from_columns(cols, n_dst)


def top_classes(k, coh=None):
    """Classes of H~*(K) killed by restriction to every (m-1)-vertex
    full subcomplex.  Returns a list of (degree, order, coords, cocycle)
    with coords in the generators of H~*(K) and the cocycle an explicit
    representative.
    """
    full = k.full_mask()
    cx = reduced_complex(k, full)
    if coh is None:
        coh = cohomology(cx)
    out = []
    for p in coh.degrees():
        src = coh.group(p)
        blocks = []
        orders = []
        for v in range(1, k.m + 1):
            sub_support = full & ~(1 << (v - 1))
            sub_cx = reduced_complex(k, sub_support)
            sub_coh = cohomology(sub_cx)
            tgt = sub_coh.group(p)
            if tgt is None or tgt.n_gens == 0:
                continue
            mat = induced_map(coh, sub_coh, restriction_matrix(cx, sub_cx, p), p)
            blocks.append(mat)
            orders.extend(tgt.orders)
        if blocks:
            stacked = blocks[0]
            for b in blocks[1:]:
                stacked = stacked.vstack(b)
        else:
            stacked = IntMatrix.zeros(0, src.n_gens)
        source_group = PresentedGroup.diagonal(src.orders)
        target_group = PresentedGroup.diagonal(orders)
        g = GroupMorphism(source_group, target_group, stacked)
        vanish = kernel_subgroup(g)
        for j in range(vanish.n_gens):
            coords = vanish.gens.column(j)
            cocycle = src.gens.mulvec(coords)
            out.append((p, vanish.orders[j], coords, cocycle))
    return out


def uct_consistency(cx):
    """Universal coefficients sanity data: for each degree p, cohomology
    rank equals homology rank and cohomology torsion equals homology
    torsion one degree down. Returns True or raises LinalgError."""
    co = cohomology(cx)
    ho = homology(cx)
    degrees = set(co.degrees()) | set(ho.degrees())
    for p in degrees:
        c_rank, c_tors = co.invariants(p)
        h_rank, _ = ho.invariants(p)
        _, h_tors_below = ho.invariants(p - 1)
        if c_rank != h_rank or c_tors != h_tors_below:
            raise LinalgError(
                f"universal coefficients mismatch in degree {p}: "
                f"H^ = {(c_rank, c_tors)}, H_ = {(h_rank, h_tors_below)}")
    return True


def describe_support(support):
    return "{" + ",".join(str(v) for v in vertices_of(support)) + "}"


class FieldComplexCohomology:
    """(Co)homology of one reduced complex over a field, with representatives.

    Representatives are cycle vectors whose classes form a basis; they
    are chosen deterministically as the pivot columns of the echelon
    form of [boundaries | cycles].
    """

    __slots__ = ("cx", "ops", "side", "data")

    def __init__(self, cx, ops, side="cohomology"):
        self.cx = cx
        self.ops = ops
        self.side = side
        self.data = {}
        for q in range(len(cx.bases)):
            p = q - 1
            n = len(cx.bases[q])
            if n == 0:
                continue
            if side == "cohomology":
                out_mat = cx.coboundary(p)
                in_mat = cx.coboundary(p - 1)
            else:
                out_mat = cx.boundary(p)
                in_mat = cx.boundary(p + 1)
            cycles = ops.kernel_basis(ops.of_int_matrix(out_mat), n)
            bounds = [[ops.of_int(x) for x in in_mat.column(j)]
                      for j in range(in_mat.ncols)]
            allcols = bounds + cycles
            reps = []
            if cycles:
                rows = [[col[i] for col in allcols] for i in range(n)]
                _, pivots = ops.rref(rows)
                reps = [allcols[j] for j in pivots if j >= len(bounds)]
            if reps:
                self.data[p] = (bounds, reps)

    def degrees(self):
        return sorted(self.data)

    def dim(self, p):
        entry = self.data.get(p)
        return len(entry[1]) if entry else 0

    def rep(self, p, i):
        return self.data[p][1][i]

    def express(self, p, vec):
        """Class coordinates of a cycle vector in the chosen representatives."""
        entry = self.data.get(p)
        if entry is None:
            return []
        bounds, reps = entry
        x = self.ops.solve(bounds + reps, vec)
        if x is None:
            raise LinalgError("vector is not a cycle of the subcomplex")
        return x[len(bounds):]

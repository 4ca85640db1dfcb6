"""Bigraded cohomology of a moment-angle complex via full subcomplexes,
and the double (co)homology built from the connecting differential.

Hochster's decomposition identifies H^{-k,2l}(Z_K) with the direct sum
of H~^{l-k-1}(K_I) over the vertex subsets I of size l; the empty
subset contributes H~^{-1} = Z in bidegree (0,0).  The connecting
differential of bidegree (-k,2l) -> (-k+1,2l-2) is

    d' = (-1)^{p+1} * sum over i in I of sign_eps(i, I) * psi_{i;I},

where p = l-k-1 and psi_{i;I} restricts classes from K_I to K_{I-i}.
Double cohomology HH is the homology of the bigraded groups under d'.
The homology-side mirror uses inclusions K_I -> K_{I+j} over vertices j
outside I, with the same sign rule, and moves by (-k,2l) -> (-k-1,2l+2).

Bidegrees are stored as pairs (k, l) with k >= 0; the displayed
bidegree is (-k, 2l).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .complexes import mask_of, sign_eps, vertices_of
from .errors import VerificationError
from .homology import (
    FieldComplexCohomology,
    cohomology,
    homology,
    induced_map,
    inclusion_matrix,
    reduced_complex,
    restriction_matrix,
)
from .linalg import (
    FieldOps,
    GroupMorphism,
    IntMatrix,
    PresentedGroup,
    homology_of_pair,
    merge_torsion,
)


@dataclass
class Summand:
    mask: int
    degree: int
    offset: int
    group: object  # Subquotient of the subset cohomology


@dataclass
class BidegreeLayout:
    orders: tuple
    summands: list
    presented: PresentedGroup


class HochsterDecomposition:
    """Per-bidegree direct sums of subset (co)homology, with layouts."""

    __slots__ = ("complex", "support", "side", "cxs", "cohs", "layouts")

    def __init__(self, complex_, support, side, cxs, cohs, layouts):
        self.complex = complex_
        self.support = support
        self.side = side  # "cohomology" or "homology"
        self.cxs = cxs
        self.cohs = cohs
        self.layouts = layouts

    def bidegrees(self):
        return sorted(self.layouts)

    def invariants(self):
        """dict (k, l) -> (rank, invariant factors) per nontrivial bidegree."""
        out = {}
        for b, layout in self.layouts.items():
            rank = sum(1 for d in layout.orders if d == 0)
            torsion = merge_torsion([d for d in layout.orders if d > 1])
            out[b] = (rank, torsion)
        return out

    def layout(self, b):
        return self.layouts.get(b)

    def n_gens(self, b):
        layout = self.layouts.get(b)
        return len(layout.orders) if layout else 0

    def summand_offset(self, b, mask):
        """Generator offset of the summand for a subset mask, or None."""
        layout = self.layouts.get(b)
        if layout is None:
            return None
        for s in layout.summands:
            if s.mask == mask:
                return s.offset
        return None


def _subset_data(k, support, side, threads):
    masks = [mask for mask in range(support + 1) if mask & ~support == 0]
    compute = cohomology if side == "cohomology" else homology

    def job(mask):
        cx = reduced_complex(k, mask)
        return mask, cx, compute(cx)

    cxs = {}
    cohs = {}
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for mask, cx, coh in pool.map(job, masks):
                cxs[mask] = cx
                cohs[mask] = coh
    else:
        for mask in masks:
            _, cx, coh = job(mask)
            cxs[mask] = cx
            cohs[mask] = coh
    return cxs, cohs


def _decompose(k, support, side, threads):
    cxs, cohs = _subset_data(k, support, side, threads)
    collected = {}
    for mask in sorted(cohs):
        l = mask.bit_count()
        coh = cohs[mask]
        for p in coh.degrees():
            collected.setdefault((l - p - 1, l), []).append((mask, p, coh.group(p)))
    layouts = {}
    for b, items in collected.items():
        summands = []
        orders = []
        offset = 0
        for mask, p, sq in items:
            summands.append(Summand(mask=mask, degree=p, offset=offset, group=sq))
            orders.extend(sq.orders)
            offset += sq.n_gens
        layouts[b] = BidegreeLayout(orders=tuple(orders), summands=summands,
                                    presented=PresentedGroup.diagonal(orders))
    return HochsterDecomposition(k, support, side, cxs, cohs, layouts)


def hochster_cohomology(k, support=None, threads=None):
    """Bigraded cohomology of Z_K as subset-graded direct sums."""
    if support is None:
        support = k.full_mask()
    return _decompose(k, support, "cohomology", threads)


def hochster_homology(k, support=None, threads=None):
    """Bigraded homology of Z_K as subset-graded direct sums."""
    if support is None:
        support = k.full_mask()
    return _decompose(k, support, "homology", threads)


def _next_bidegree(b, side):
    kk, l = b
    return (kk - 1, l - 1) if side == "cohomology" else (kk + 1, l + 1)


def _block_sign(p, vertex, mask, sign_fault):
    if sign_fault:
        return 1  # deliberately wrong, for harness negative controls
    sign = sign_eps(vertex, mask)
    return -sign if (p + 1) & 1 else sign


def d_prime(hd, sign_fault=False):
    """Connecting differentials per source bidegree, verified d'^2 = 0.

    Returns a dict bidegree -> GroupMorphism into the adjacent bidegree
    ((k-1, l-1) on the cohomology side, (k+1, l+1) on the homology
    side); a trivial target yields a morphism to the zero group.
    """
    morphisms = {}
    for b in hd.bidegrees():
        src_layout = hd.layouts[b]
        src_group = src_layout.presented
        dst_layout = hd.layouts.get(_next_bidegree(b, hd.side))
        if dst_layout is None:
            morphisms[b] = GroupMorphism.zero(src_group, PresentedGroup.free(0))
            continue
        dst_group = dst_layout.presented
        dst_index = {s.mask: s for s in dst_layout.summands}
        mat = IntMatrix.zeros(dst_group.n_gens, src_group.n_gens)
        for summand in src_layout.summands:
            mask, p = summand.mask, summand.degree
            if hd.side == "cohomology":
                moves = [(v, mask & ~(1 << (v - 1))) for v in vertices_of(mask)]
            else:
                moves = [(v, mask | (1 << (v - 1)))
                         for v in vertices_of(hd.support & ~mask)]
            for vertex, other in moves:
                dst_summand = dst_index.get(other)
                if dst_summand is None:
                    continue
                if hd.side == "cohomology":
                    chain = restriction_matrix(hd.cxs[mask], hd.cxs[other], p)
                else:
                    chain = inclusion_matrix(hd.cxs[mask], hd.cxs[other], p)
                block = induced_map(hd.cohs[mask], hd.cohs[other], chain, p)
                sign = _block_sign(p, vertex, mask, sign_fault)
                for r in range(block.nrows):
                    row = mat.rows[dst_summand.offset + r]
                    brow = block.rows[r]
                    for c in range(block.ncols):
                        row[summand.offset + c] += sign * brow[c]
        morphisms[b] = GroupMorphism(src_group, dst_group, mat)
    _verify_squares_to_zero(hd, morphisms)
    return morphisms


def _verify_squares_to_zero(hd, morphisms):
    for b, first in morphisms.items():
        second = morphisms.get(_next_bidegree(b, hd.side))
        if second is None or first.target.n_gens == 0 or second.target.n_gens == 0:
            continue
        composite = second.matrix @ first.matrix
        for j in range(composite.ncols):
            if not second.target.element_is_zero(composite.column(j)):
                raise VerificationError(
                    f"connecting differential does not square to zero at bidegree "
                    f"(-{b[0]}, {2 * b[1]})")


class DoubleGroups:
    """Double (co)homology: per-bidegree subquotients under d'."""

    __slots__ = ("decomposition", "morphisms", "groups")

    def __init__(self, decomposition, morphisms, groups):
        self.decomposition = decomposition
        self.morphisms = morphisms
        self.groups = groups  # (k, l) -> Subquotient, nontrivial only

    def bidegrees(self):
        return sorted(self.groups)

    def invariants(self):
        return {b: sq.invariants() for b, sq in self.groups.items()}

    def group(self, b):
        return self.groups.get(b)

    def total_rank(self):
        return sum(sq.rank for sq in self.groups.values())

    def euler_characteristic(self):
        return sum((-1) ** (b[0] & 1) * sq.rank for b, sq in self.groups.items())


def _double(hd, sign_fault=False):
    morphisms = d_prime(hd, sign_fault=sign_fault)
    groups = {}
    for b in hd.bidegrees():
        kk, l = b
        incoming_b = (kk + 1, l + 1) if hd.side == "cohomology" else (kk - 1, l - 1)
        mid = hd.layouts[b].presented
        f = morphisms.get(incoming_b)
        if f is None or f.target.n_gens == 0:
            f = GroupMorphism.zero(PresentedGroup.free(0), mid)
        g = morphisms[b]
        sq = homology_of_pair(f, g)
        if not sq.is_trivial():
            groups[b] = sq
    return DoubleGroups(hd, morphisms, groups)


def double_cohomology(k, threads=None, sign_fault=False):
    """HH*(Z_K) over Z, from the cohomology-side connecting differential."""
    return _double(hochster_cohomology(k, threads=threads), sign_fault=sign_fault)


def double_homology(k, threads=None, sign_fault=False):
    """HH_*(Z_K) over Z, from the homology-side connecting differential."""
    return _double(hochster_homology(k, threads=threads), sign_fault=sign_fault)


def euler_characteristic(double_groups):
    return double_groups.euler_characteristic()


# ---------------------------------------------------------------------------
# morphisms of decompositions


def _check_commutes(hd_src, hd_dst, matrices, message):
    d_src = d_prime(hd_src)
    d_dst = d_prime(hd_dst)
    side = hd_src.side
    for b in hd_src.bidegrees():
        nxt = _next_bidegree(b, side)
        dst_next = hd_dst.layouts.get(nxt)
        if dst_next is None:
            continue
        n_rows = len(dst_next.orders)
        n_cols = len(hd_src.layouts[b].orders)
        left = IntMatrix.zeros(n_rows, n_cols)
        if nxt in hd_src.layouts and nxt in matrices:
            left = matrices[nxt] @ d_src[b].matrix
        right = IntMatrix.zeros(n_rows, n_cols)
        if b in matrices and b in d_dst and hd_dst.layouts.get(b) is not None:
            right = d_dst[b].matrix @ matrices[b]
        diff = left - right
        for j in range(diff.ncols):
            if not dst_next.presented.element_is_zero(diff.column(j)):
                raise VerificationError(message)


def ch_restriction_morphism(k, vertices, threads=None):
    """Inclusion CH*(Z_{K_I}) -> CH*(Z_K) for a vertex subset I.

    The decomposition over subsets of I is a sub-collection of summands
    of the decomposition of K (identical generators, original labels),
    so the morphism is an offset-placed identity on every bidegree.
    Returns (hd_sub, hd_full, matrices keyed by sub bidegree) after
    checking commutation with d'.
    """
    imask = vertices if isinstance(vertices, int) else mask_of(vertices)
    hd_full = hochster_cohomology(k, threads=threads)
    hd_sub = hochster_cohomology(k, support=imask, threads=threads)
    matrices = {}
    for b, sub_layout in hd_sub.layouts.items():
        full_layout = hd_full.layouts.get(b)
        if full_layout is None:
            raise VerificationError("subcomplex summand missing from the ambient complex")
        full_index = {s.mask: s for s in full_layout.summands}
        mat = IntMatrix.zeros(len(full_layout.orders), len(sub_layout.orders))
        for summand in sub_layout.summands:
            target = full_index.get(summand.mask)
            if target is None or target.group.n_gens != summand.group.n_gens:
                raise VerificationError("subcomplex summand differs from ambient summand")
            for c in range(summand.group.n_gens):
                mat.rows[target.offset + c][summand.offset + c] = 1
        matrices[b] = mat
    _check_commutes(hd_sub, hd_full, matrices,
                    "full-subcomplex inclusion does not commute with d'")
    return hd_sub, hd_full, matrices


def _basis_injection(basis_small, basis_big):
    """Chains supported on a sub-list of faces include into the bigger list."""
    index = {mask: i for i, mask in enumerate(basis_big)}
    mat = IntMatrix.zeros(len(basis_big), len(basis_small))
    for c, mask in enumerate(basis_small):
        mat.rows[index[mask]][c] = 1
    return mat


def ch_subcomplex_morphisms(l_complex, k_complex, side="homology"):
    """Bigraded morphism induced by a subcomplex L of K on the same
    vertex set: the chain pushforward CH_*(Z_L) -> CH_*(Z_K) on the
    homology side, the cochain restriction CH*(Z_K) -> CH*(Z_L) on the
    cohomology side.  Returns (hd_src, hd_dst, matrices keyed by source
    bidegree) after checking commutation with the connecting
    differential.
    """
    if l_complex.m != k_complex.m:
        raise VerificationError("subcomplex morphism needs a common vertex set")
    for face in l_complex.maximal_faces:
        if not k_complex.has_face(face):
            raise VerificationError("L is not a subcomplex of K")
    if side == "homology":
        hd_src = hochster_homology(l_complex)
        hd_dst = hochster_homology(k_complex)
        small, big = hd_src, hd_dst
    else:
        hd_src = hochster_cohomology(k_complex)
        hd_dst = hochster_cohomology(l_complex)
        small, big = hd_dst, hd_src
    matrices = {}
    for b, src_layout in hd_src.layouts.items():
        dst_layout = hd_dst.layouts.get(b)
        n_dst = len(dst_layout.orders) if dst_layout else 0
        mat = IntMatrix.zeros(n_dst, len(src_layout.orders))
        if dst_layout is not None:
            dst_index = {(s.mask, s.degree): s for s in dst_layout.summands}
            for summand in src_layout.summands:
                target = dst_index.get((summand.mask, summand.degree))
                if target is None:
                    continue
                mask, p = summand.mask, summand.degree
                injection = _basis_injection(small.cxs[mask].basis(p),
                                             big.cxs[mask].basis(p))
                chain = injection if side == "homology" else injection.transpose()
                block = induced_map(hd_src.cohs[mask], hd_dst.cohs[mask], chain, p)
                for r in range(block.nrows):
                    for c in range(block.ncols):
                        mat.rows[target.offset + r][summand.offset + c] = block.rows[r][c]
        matrices[b] = mat
    _check_commutes(hd_src, hd_dst, matrices,
                    "subcomplex morphism does not commute with the connecting differential")
    return hd_src, hd_dst, matrices


# ---------------------------------------------------------------------------
# field coefficients


class FieldHochster:
    """Field-coefficient decomposition: dimensions and class maps only."""

    __slots__ = ("complex", "support", "side", "field", "ops", "cxs", "cohs",
                 "dims", "layouts")

    def __init__(self, complex_, support, side, field, ops, cxs, cohs, dims, layouts):
        self.complex = complex_
        self.support = support
        self.side = side
        self.field = field
        self.ops = ops
        self.cxs = cxs
        self.cohs = cohs
        self.dims = dims          # (k, l) -> dimension
        self.layouts = layouts    # (k, l) -> list of (mask, p, offset, dim)


def hochster_field(k, field, side="cohomology", support=None):
    """Bigraded (co)homology dimensions over Q or F_p, with class data."""
    if support is None:
        support = k.full_mask()
    ops = FieldOps(field)
    cxs = {}
    cohs = {}
    collected = {}
    for mask in range(support + 1):
        if mask & ~support:
            continue
        cx = reduced_complex(k, mask)
        cxs[mask] = cx
        coh = FieldComplexCohomology(cx, ops, side=side)
        cohs[mask] = coh
        l = mask.bit_count()
        for p in coh.degrees():
            collected.setdefault((l - p - 1, l), []).append((mask, p, coh.dim(p)))
    dims = {}
    layouts = {}
    for b, items in collected.items():
        offset = 0
        layout = []
        for mask, p, dim in items:
            layout.append((mask, p, offset, dim))
            offset += dim
        layouts[b] = layout
        dims[b] = offset
    return FieldHochster(k, support, side, field, ops, cxs, cohs, dims, layouts)


def d_prime_field(fh):
    """Connecting differential matrices over the field, keyed by source bidegree."""
    ops = fh.ops
    out = {}
    for b, layout in fh.layouts.items():
        target_b = _next_bidegree(b, fh.side)
        dst_layout = fh.layouts.get(target_b)
        if dst_layout is None:
            out[b] = None
            continue
        dst_index = {mask: (offset, dim, p) for mask, p, offset, dim in dst_layout}
        mat = [[ops.of_int(0)] * fh.dims[b] for _ in range(fh.dims[target_b])]
        for mask, p, offset, dim in layout:
            if fh.side == "cohomology":
                moves = [(v, mask & ~(1 << (v - 1))) for v in vertices_of(mask)]
            else:
                moves = [(v, mask | (1 << (v - 1)))
                         for v in vertices_of(fh.support & ~mask)]
            for vertex, other in moves:
                hit = dst_index.get(other)
                if hit is None:
                    continue
                dst_offset, dst_dim, _ = hit
                if fh.side == "cohomology":
                    chain = restriction_matrix(fh.cxs[mask], fh.cxs[other], p)
                else:
                    chain = inclusion_matrix(fh.cxs[mask], fh.cxs[other], p)
                sign = _block_sign(p, vertex, mask, False)
                for c in range(dim):
                    pushed = ops.apply_int_matrix(chain, fh.cohs[mask].rep(p, c))
                    coords = fh.cohs[other].express(p, pushed)
                    for r in range(dst_dim):
                        if coords[r]:
                            mat[dst_offset + r][offset + c] = ops.add(
                                mat[dst_offset + r][offset + c],
                                ops.scale_int(sign, coords[r]))
        out[b] = mat
    return out


def double_field(k, field, side="cohomology"):
    """Dimensions of double (co)homology over the field, per bidegree."""
    fh = hochster_field(k, field, side=side)
    mats = d_prime_field(fh)
    ops = fh.ops
    dims = {}
    for b, dim in fh.dims.items():
        kk, l = b
        incoming_b = (kk + 1, l + 1) if fh.side == "cohomology" else (kk - 1, l - 1)
        g_mat = mats.get(b)
        rank_g = ops.rank(g_mat) if g_mat else 0
        f_mat = mats.get(incoming_b)
        rank_f = ops.rank(f_mat) if f_mat else 0
        hh = dim - rank_g - rank_f
        if hh:
            dims[b] = hh
    return dims

"""Homology of a finite cubical set with coefficients in a contravariant system.

``C_n(X, F)`` is the direct sum of ``F(x)`` over all cubes ``x in X_n``
(degenerate ones included), in canonical cube order.  The normalized
complex divides out the subgroups ``D_n`` spanned by the images of the
degeneracy maps; its homology is ``H_n(X, F)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abgrp import (
    FpAbGroup,
    IntMatrix,
    Lattice,
    direct_sum,
    invariant_factors,
    subgroup,
)
from .chain import (
    ChainComplexFP,
    ChainMap,
    HomologyResult,
    LongExactSequence,
    direct_sum_complex,
    face_sign,
    induced_on_homology,
    snake_sequence,
)
from .coeff import ContraSystem, pullback
from .cubical_set import CubicalMap, CubicalSetFin, Cover, inclusion, sub_union_intersection


class HomologyError(ValueError):
    pass


class DegenerateLeakError(HomologyError):
    """A degenerate chain whose boundary is not degenerate."""

    def __init__(self, degree: int, chain: tuple, boundary: tuple):
        super().__init__(f"degenerate chain in degree {degree} has a nondegenerate boundary")
        self.degree, self.chain, self.boundary = degree, chain, boundary


class SplittingError(HomologyError):
    pass


@dataclass(frozen=True)
class ChainGroup:
    """``C_n(X, F)`` with the layout of its blocks."""
    degree: int
    group: FpAbGroup
    blocks: tuple              # (CubeRef, offset, size) in canonical order
    component_index: dict      # (CubeRef, generator) -> coordinate

    def offsets(self) -> dict:
        return {c: o for c, o, _ in self.blocks}

    def labels(self) -> list:
        """Human-readable coordinate labels."""
        return [f"{c}#{g}" for c, _, s in self.blocks for g in range(s)]


def chain_group(X: CubicalSetFin, F: ContraSystem, n: int) -> ChainGroup:
    if n > F.cap:
        raise HomologyError(f"system has cap {F.cap}, degree {n} requested")
    blocks, index, off = [], {}, 0
    for c in X.cubes(n):
        G = F.value(c)
        blocks.append((c, off, G.gens))
        for g in range(G.gens):
            index[(c, g)] = off + g
        off += G.gens
    group = direct_sum(*(F.value(c) for c, _, _ in blocks)) if blocks else FpAbGroup(0)
    return ChainGroup(n, group, tuple(blocks), index)


def _differential(X, F, src: ChainGroup, dst: ChainGroup) -> IntMatrix:
    n = src.degree
    m = [[0] * src.group.gens for _ in range(dst.group.gens)]
    offsets = dst.offsets()
    for c, o, size in src.blocks:
        for i in range(1, n + 1):
            for tau in (0, 1):
                sign = face_sign(i, tau)
                t = offsets[X.face(c, i, tau)]
                block = F.face_maps[(c, i, tau)]
                for r in range(block.rows):
                    row = m[t + r]
                    for s in range(size):
                        v = block[r, s]
                        if v:
                            row[o + s] += sign * v
    return IntMatrix(dst.group.gens, src.group.gens, m)


def _degenerate_generators(X, F, below: ChainGroup, here: ChainGroup) -> list:
    n = here.degree
    offsets = here.offsets()
    cols = []
    for c, _, size in below.blocks:
        for i in range(1, n + 1):
            t = offsets[X.degeneracy(c, i)]
            block = F.degen_maps[(c, i)]
            for s in range(size):
                v = [0] * here.group.gens
                for r in range(block.rows):
                    v[t + r] = block[r, s]
                cols.append(v)
    return cols


@dataclass(frozen=True, eq=False)
class NormalizedComplexBundle:
    base: CubicalSetFin
    system: ContraSystem
    groups: tuple             # ChainGroup per degree
    raw: ChainComplexFP
    degen: tuple              # Lattice D_n per degree
    normalized: ChainComplexFP

    @property
    def component_index(self) -> list:
        return [G.component_index for G in self.groups]

    def degenerate_part(self, n: int) -> FpAbGroup:
        """``D_n`` presented on its lattice basis."""
        D = self.degen[n]
        return subgroup(self.raw.terms[n], D.matrix())

    def splitting_holds(self, n: int) -> bool:
        """Invariant factors of ``C_n`` equal those of ``C_n^N + D_n``."""
        lhs = invariant_factors(self.raw.terms[n])
        rhs = invariant_factors(direct_sum(self.normalized.terms[n], self.degenerate_part(n)))
        return lhs == rhs

    def homology(self, n: int) -> HomologyResult:
        return self.normalized.homology(n)


def normalized_complex(X: CubicalSetFin, F: ContraSystem, n_max: int, *,
                       check_splitting: bool = True) -> NormalizedComplexBundle:
    """Raw and normalized complexes through degree ``n_max + 1``."""
    top = n_max + 1
    if F.cap < top:
        raise HomologyError(f"system has cap {F.cap}; degree {n_max} needs {top}")
    if F.base is not X:
        raise HomologyError("system is defined on a different cubical set")
    groups = [chain_group(X, F, n) for n in range(top + 1)]
    diffs = [_differential(X, F, groups[n], groups[n - 1]) for n in range(1, top + 1)]

    degen = [Lattice(groups[0].group.gens)]
    for n in range(1, top + 1):
        degen.append(Lattice(groups[n].group.gens,
                             _degenerate_generators(X, F, groups[n - 1], groups[n])))

    terms = []
    for n, G in enumerate(groups):
        rel = Lattice(G.group.gens, G.group.relations.columns() + list(degen[n].basis))
        terms.append(FpAbGroup(G.group.gens, rel.matrix()))
    for n in range(1, top + 1):
        lat = terms[n - 1].relation_lattice()
        for v in degen[n].basis:
            b = diffs[n - 1].apply(v)
            if b not in lat:
                raise DegenerateLeakError(n, tuple(v), b)
    raw = ChainComplexFP([G.group for G in groups], diffs)
    normalized = ChainComplexFP(terms, diffs)
    bundle = NormalizedComplexBundle(X, F, tuple(groups), raw, tuple(degen), normalized)
    if check_splitting:
        for n in range(top + 1):
            if not bundle.splitting_holds(n):
                raise SplittingError(f"C_{n} does not split as normalized + degenerate parts")
    return bundle


def homology(X: CubicalSetFin, F: ContraSystem, n: int) -> HomologyResult:
    return normalized_complex(X, F, n, check_splitting=False).homology(n)


def homology_range(X: CubicalSetFin, F: ContraSystem, n_max: int) -> list:
    bundle = normalized_complex(X, F, n_max, check_splitting=False)
    return [bundle.homology(n) for n in range(n_max + 1)]


# -- maps ------------------------------------------------------------------

def _push_components(f: CubicalMap, src: tuple, dst: tuple) -> list:
    comps = []
    for A, B in zip(src, dst):
        offsets = B.offsets()
        m = [[0] * A.group.gens for _ in range(B.group.gens)]
        for c, o, size in A.blocks:
            t = offsets[f(c)]
            for s in range(size):
                m[t + s][o + s] += 1
        comps.append(IntMatrix(B.group.gens, A.group.gens, m))
    return comps


def canonical_chain_map(f: CubicalMap, F: ContraSystem, n_max: int):
    """Normalized chain map ``C^N(X, f*F) -> C^N(Y, F)`` and both bundles."""
    top = n_max + 1
    src = normalized_complex(f.source, pullback(f, F, top), n_max, check_splitting=False)
    dst = normalized_complex(f.target, F, n_max, check_splitting=False)
    comps = _push_components(f, src.groups, dst.groups)
    return ChainMap(src.normalized, dst.normalized, comps), src, dst


def canonical_map(f: CubicalMap, F: ContraSystem, n: int):
    """``H_n(X, f*F) -> H_n(Y, F)``."""
    phi, _, _ = canonical_chain_map(f, F, n)
    return induced_on_homology(phi, n)


@dataclass
class MayerVietoris:
    cover: Cover
    bundles: dict             # "intersection", "X1", "X2", "union"
    sequence: LongExactSequence

    def is_exact(self) -> bool:
        return self.sequence.is_exact()


def mayer_vietoris(X: CubicalSetFin, ids1, ids2, F: ContraSystem, n_max: int) -> MayerVietoris:
    """Long exact sequence of the cover of ``X1 u X2`` by the subobjects
    generated by ``ids1`` and ``ids2``; ``F`` lives on ``X``."""
    top = n_max + 2
    if F.cap < top:
        raise HomologyError(f"system has cap {F.cap}; the sequence through {n_max} needs {top}")
    cover = sub_union_intersection(X, ids1, ids2)
    n_top = n_max + 1
    FU = pullback(inclusion(cover.union, X), F, top)
    bundles = {
        "union": normalized_complex(cover.union, FU, n_top, check_splitting=False),
        "X1": normalized_complex(cover.X1, pullback(cover.lambda1, FU, top), n_top,
                                 check_splitting=False),
        "X2": normalized_complex(cover.X2, pullback(cover.lambda2, FU, top), n_top,
                                 check_splitting=False),
        "intersection": normalized_complex(cover.intersection, pullback(cover.lambda0, FU, top),
                                           n_top, check_splitting=False),
    }
    I, A, B, U = (bundles[k] for k in ("intersection", "X1", "X2", "union"))
    middle = direct_sum_complex(A.normalized, B.normalized)
    to1 = _push_components(cover.to_X1, I.groups, A.groups)
    to2 = _push_components(cover.to_X2, I.groups, B.groups)
    from1 = _push_components(cover.lambda1, A.groups, U.groups)
    from2 = _push_components(cover.lambda2, B.groups, U.groups)
    incl = ChainMap(I.normalized, middle, [a.vstack(-b) for a, b in zip(to1, to2)])
    proj = ChainMap(middle, U.normalized, [a.hstack(b) for a, b in zip(from1, from2)])
    return MayerVietoris(cover, bundles, snake_sequence(incl, proj, n_max))


# -- reporting -------------------------------------------------------------

def result_record(res: HomologyResult, group: ChainGroup | None = None, *,
                  witnesses: bool = False) -> dict:
    out = {"degree": res.degree, "free_rank": res.group.free_rank,
           "torsion": list(res.group.torsion)}
    if witnesses:
        labels = group.labels() if group is not None else None
        cyc = []
        for z, d in zip(res.cycle_basis, res.orders):
            entry = {"order": d, "vector": list(z)}
            if labels is not None:
                entry["support"] = {labels[i]: x for i, x in enumerate(z) if x}
            cyc.append(entry)
        out["witnesses"] = cyc
    return out


def format_group(res: HomologyResult) -> str:
    return str(res.group)

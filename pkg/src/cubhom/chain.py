"""Chain complexes of finitely presented abelian groups.

A complex holds terms ``C_0 .. C_cap`` and differentials ``d_n : C_n -> C_{n-1}``
for ``1 <= n <= cap`` as integer generator matrices.  Terms may carry
relations, so a cycle is anything whose boundary lies in the relation
lattice of the term below.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import cube_cat
from .abgrp import (
    FpAbGroup,
    GroupHom,
    IntMatrix,
    InvariantFactors,
    Lattice,
    direct_sum,
    hnf,
    image_lattice,
    is_injective,
    is_surjective,
    kernel_lattice,
    snf,
    well_defined,
)


class ChainError(ValueError):
    pass


class ExactnessError(ChainError):
    def __init__(self, degree: int, reason: str):
        super().__init__(f"degree {degree}: {reason}")
        self.degree = degree
        self.reason = reason


@dataclass(frozen=True, eq=False)
class ChainComplexFP:
    terms: tuple
    differentials: tuple   # differentials[n - 1] is d_n
    check: bool = True
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "differentials", tuple(self.differentials))
        if len(self.differentials) != max(len(self.terms) - 1, 0):
            raise ChainError("need one differential per positive degree")
        for n, d in enumerate(self.differentials, 1):
            if d.shape != (self.terms[n - 1].gens, self.terms[n].gens):
                raise ChainError(f"d_{n} has shape {d.shape}")
        if self.check:
            for n in range(1, self.cap + 1):
                if not well_defined(self.d(n)):
                    raise ChainError(f"d_{n} does not respect relations")
            for n in range(2, self.cap + 1):
                if not self.d(n - 1).compose(self.d(n)).is_zero():
                    raise ChainError(f"d_{n - 1} d_{n} != 0")

    @property
    def cap(self) -> int:
        return len(self.terms) - 1

    def d(self, n: int) -> GroupHom:
        return GroupHom(self.terms[n], self.terms[n - 1], self.differentials[n - 1])

    def homology(self, n: int) -> "HomologyResult":
        if n not in self._cache:
            self._cache[n] = homology_at(self, n)
        return self._cache[n]


def free_complex(ranks: Sequence[int], matrices: Sequence[IntMatrix]) -> ChainComplexFP:
    return ChainComplexFP(tuple(FpAbGroup(r) for r in ranks), tuple(matrices))


def direct_sum_complex(A: ChainComplexFP, B: ChainComplexFP) -> ChainComplexFP:
    from .abgrp import block_diagonal
    cap = min(A.cap, B.cap)
    terms = [direct_sum(A.terms[n], B.terms[n]) for n in range(cap + 1)]
    diffs = [block_diagonal([A.differentials[n - 1], B.differentials[n - 1]])
             for n in range(1, cap + 1)]
    return ChainComplexFP(terms, diffs, check=False)


@dataclass(frozen=True, eq=False)
class ChainMap:
    source: ChainComplexFP
    target: ChainComplexFP
    components: tuple
    check: bool = True

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        top = min(self.source.cap, self.target.cap)
        if len(self.components) < top + 1:
            raise ChainError("chain map needs a component in every shared degree")
        if self.check:
            for n in range(top + 1):
                if not well_defined(self.at(n)):
                    raise ChainError(f"component {n} does not respect relations")
            for n in range(1, top + 1):
                left = self.target.d(n).compose(self.at(n))
                right = self.at(n - 1).compose(self.source.d(n))
                if not left.equals(right):
                    raise ChainError(f"square at degree {n} does not commute")

    def at(self, n: int) -> GroupHom:
        return GroupHom(self.source.terms[n], self.target.terms[n], self.components[n])


def identity_map(C: ChainComplexFP) -> ChainMap:
    return ChainMap(C, C, [IntMatrix.identity(T.gens) for T in C.terms])


def zero_map(A: ChainComplexFP, B: ChainComplexFP) -> ChainMap:
    top = min(A.cap, B.cap)
    return ChainMap(A, B, [IntMatrix(B.terms[n].gens, A.terms[n].gens) for n in range(top + 1)])


def unimodular_inverse(U: IntMatrix) -> IntMatrix:
    form = hnf(U, transform=True)
    if len(form.pivots) != U.rows or any(form.H[k][k] != 1 for k in range(U.rows)):
        raise ChainError("matrix is not unimodular")
    return IntMatrix.from_columns(form.V, U.rows)


@dataclass(frozen=True, eq=False)
class HomologyResult:
    """``H_n`` with witnesses.

    ``cycle_basis[i]`` represents the ``i``-th cyclic summand, whose order is
    ``orders[i]`` (0 for a free summand); torsion summands come first.
    """
    degree: int
    group: InvariantFactors
    cycle_basis: tuple
    orders: tuple
    cycles: Lattice = field(repr=False, default=None)
    _to_summands: IntMatrix = field(repr=False, default=None)
    _keep: tuple = field(repr=False, default=())

    def presentation(self) -> FpAbGroup:
        return FpAbGroup.from_orders(self.orders)

    def coordinates(self, z: Sequence[int]) -> tuple:
        """Class of the cycle ``z`` in summand coordinates."""
        y = self.cycles.coordinates(z)
        if y is None:
            raise ChainError(f"vector is not a cycle in degree {self.degree}")
        c = self._to_summands.apply(y) if y else ()
        out = []
        for i, d in zip(self._keep, self.orders):
            out.append(c[i] % d if d else c[i])
        return tuple(out)

    def is_zero_class(self, z: Sequence[int]) -> bool:
        return not any(self.coordinates(z))


def homology_at(C: ChainComplexFP, n: int) -> HomologyResult:
    if not 0 <= n < C.cap:
        raise ChainError(f"homology in degree {n} needs terms through {n + 1}; cap is {C.cap}")
    g = C.terms[n].gens
    Z = Lattice.full(g) if n == 0 else kernel_lattice(C.d(n))
    B = Lattice(g, C.differentials[n].columns() + C.terms[n].relations.columns())
    r = Z.rank
    ycols = []
    for b in B.basis:
        y = Z.coordinates(b)
        if y is None:
            raise ChainError(f"boundary escapes the cycles in degree {n}")
        ycols.append(y)
    Y = IntMatrix.from_columns(ycols, r)
    U, S, _ = snf(Y)
    diag = [S[i, i] if i < S.cols else 0 for i in range(r)]
    keep = tuple(i for i in range(r) if diag[i] != 1)
    orders = tuple(diag[i] for i in keep)
    Uinv = unimodular_inverse(U) if r else IntMatrix(0, 0)
    Zm = Z.matrix()
    gens = tuple(Zm.apply(Uinv.column(i)) for i in keep)
    group = InvariantFactors(sum(1 for d in orders if d == 0), tuple(d for d in orders if d))
    return HomologyResult(n, group, gens, orders, Z, U, keep)


def induced_on_homology(f: ChainMap, n: int) -> GroupHom:
    HA, HB = f.source.homology(n), f.target.homology(n)
    comp = f.components[n]
    cols = [HB.coordinates(comp.apply(z)) for z in HA.cycle_basis]
    return GroupHom(HA.presentation(), HB.presentation(),
                    IntMatrix.from_columns(cols, len(HB.orders)))


# -- long exact sequences -------------------------------------------------

def check_levelwise_exact(incl: ChainMap, proj: ChainMap, top: int) -> None:
    if incl.target is not proj.source:
        raise ChainError("maps do not share the middle complex")
    for n in range(top + 1):
        i, p = incl.at(n), proj.at(n)
        if not is_injective(i):
            raise ExactnessError(n, "first map is not injective")
        if not is_surjective(p):
            raise ExactnessError(n, "second map is not surjective")
        if image_lattice(i) != kernel_lattice(p):
            raise ExactnessError(n, "image of the first map differs from kernel of the second")


def exact_at(incoming: GroupHom, outgoing: GroupHom) -> bool:
    return image_lattice(incoming) == kernel_lattice(outgoing)


@dataclass
class LongExactSequence:
    n_max: int
    H_A: dict
    H_B: dict
    H_C: dict
    incl_star: dict
    proj_star: dict
    connecting: dict          # n -> H_n(C) -> H_{n-1}(A)
    exactness: list           # (label, bool), top of the sequence first

    def is_exact(self) -> bool:
        return all(ok for _, ok in self.exactness)


def connecting_map(incl: ChainMap, proj: ChainMap, n: int) -> GroupHom:
    """Snake-lemma boundary ``H_n(C) -> H_{n-1}(A)`` built on cycle witnesses."""
    A, B, C = incl.source, incl.target, proj.target
    HC, HA = C.homology(n), A.homology(n - 1)
    lift = hnf(proj.components[n].hstack(C.terms[n].relations), transform=True)
    back = hnf(incl.components[n - 1].hstack(B.terms[n - 1].relations), transform=True)
    gB = B.terms[n].gens
    gA = A.terms[n - 1].gens
    cols = []
    for c in HC.cycle_basis:
        x = lift.solve(c)
        if x is None:
            raise ChainError(f"cycle in degree {n} does not lift")
        db = B.differentials[n - 1].apply(x[:gB])
        y = back.solve(db)
        if y is None:
            raise ChainError(f"boundary of the lift is not in the image in degree {n - 1}")
        cols.append(HA.coordinates(y[:gA]))
    return GroupHom(HC.presentation(), HA.presentation(),
                    IntMatrix.from_columns(cols, len(HA.orders)))


def snake_sequence(incl: ChainMap, proj: ChainMap, n_max: int) -> LongExactSequence:
    A, B, C = incl.source, incl.target, proj.target
    if min(A.cap, B.cap, C.cap) < n_max + 2:
        raise ChainError(f"complexes must reach degree {n_max + 2}")
    check_levelwise_exact(incl, proj, n_max + 2)
    HA = {n: A.homology(n) for n in range(n_max + 1)}
    HB = {n: B.homology(n) for n in range(n_max + 1)}
    HC = {n: C.homology(n) for n in range(n_max + 2)}
    i_star = {n: induced_on_homology(incl, n) for n in range(n_max + 1)}
    p_star = {n: induced_on_homology(proj, n) for n in range(n_max + 1)}
    delta = {n: connecting_map(incl, proj, n) for n in range(1, n_max + 2)}
    zero = FpAbGroup(0)
    exactness = []
    for n in range(n_max, -1, -1):
        exactness.append((f"H{n}(A)", exact_at(delta[n + 1], i_star[n])))
        exactness.append((f"H{n}(B)", exact_at(i_star[n], p_star[n])))
        out = delta[n] if n >= 1 else GroupHom.zero(HC[0].presentation(), zero)
        exactness.append((f"H{n}(C)", exact_at(p_star[n], out)))
    return LongExactSequence(n_max, HA, HB, HC, i_star, p_star, delta, exactness)


# -- the complex of injective morphisms -----------------------------------

def face_sign(i: int, tau: int) -> int:
    """Coefficient of the ``(i, tau)`` face in ``sum (-1)^i (d_i^0 - d_i^1)``."""
    return (-1) ** i * (1 if tau == 0 else -1)


def plus_complex(n: int) -> ChainComplexFP:
    """Free complex on the injective morphisms ``I^k -> I^n``, ``0 <= k <= n + 1``.

    ``d_k f = sum_i (-1)^i (f . face(k, i, 0) - f . face(k, i, 1))``.  The
    term in degree ``n + 1`` is zero; it is kept so ``H_n`` is defined.
    """
    bases = [cube_cat.injective_hom(k, n) for k in range(n + 2)]
    index = [{f: j for j, f in enumerate(b)} for b in bases]
    diffs = []
    for k in range(1, n + 2):
        m = [[0] * len(bases[k]) for _ in bases[k - 1]]
        for col, f in enumerate(bases[k]):
            for i in range(1, k + 1):
                for tau in (0, 1):
                    g = cube_cat.compose(f, cube_cat.face(k, i, tau))
                    m[index[k - 1][g]][col] += face_sign(i, tau)
        diffs.append(IntMatrix(len(bases[k - 1]), len(bases[k]), m))
    return free_complex([len(b) for b in bases], diffs)

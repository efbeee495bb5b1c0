"""Contravariant systems of abelian groups on a finite cubical set.

A system ``F`` assigns a presented group to every cube of dimension at
most ``cap`` and a homomorphism to every generating arrow of the category
of singular cubes:

* face maps ``F(y) -> F(d_i^tau y)``,
* degeneracy maps ``F(x) -> F(s_i x)``.

Functoriality is checked on the lifted cubical identities, which present
the category of singular cubes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

from .abgrp import FpAbGroup, GroupHom, IntMatrix, Lattice, determinant, well_defined
from .chain import unimodular_inverse
from .cubical_set import CubeRef, CubicalMap, CubicalSetFin


class SystemError_(ValueError):
    pass


class MissingEntryError(SystemError_):
    pass


@dataclass(frozen=True)
class Violation:
    """A relation instance whose two composites disagree."""
    relation: str        # "face-face", "degeneracy-degeneracy", "degeneracy-face"
    degree: int
    cube: CubeRef
    indices: tuple
    left_path: str
    right_path: str

    def __str__(self):
        return (f"{self.relation} relation fails in degree {self.degree} at {self.cube} "
                f"{self.indices}: {self.left_path} != {self.right_path}")


class FunctorialityError(SystemError_):
    def __init__(self, violation: Violation):
        super().__init__(str(violation))
        self.violation = violation


class ContraSystem:
    def __init__(self, base: CubicalSetFin, cap: int, values: Mapping, face_maps: Mapping,
                 degen_maps: Mapping, *, validate: bool = True):
        self.base, self.cap = base, cap
        self.values = dict(values)
        self.face_maps = dict(face_maps)
        self.degen_maps = dict(degen_maps)
        self._check_coverage()
        if validate:
            validate_functoriality(self)

    def __repr__(self):
        return f"ContraSystem(cap={self.cap}, cubes={len(self.values)})"

    def _check_coverage(self):
        X = self.base
        for k in range(self.cap + 1):
            for c in X.cubes(k):
                if c not in self.values:
                    raise MissingEntryError(f"no value at {c}")
                if k >= 1:
                    for i in range(1, k + 1):
                        for t in (0, 1):
                            if (c, i, t) not in self.face_maps:
                                raise MissingEntryError(f"no face map d_{i}^{t} at {c}")
                if k + 1 <= self.cap:
                    for i in range(1, k + 2):
                        if (c, i) not in self.degen_maps:
                            raise MissingEntryError(f"no degeneracy map s_{i} at {c}")

    def value(self, c: CubeRef) -> FpAbGroup:
        return self.values[c]

    def face_map(self, c: CubeRef, i: int, tau: int) -> GroupHom:
        d = self.base.face(c, i, tau)
        return GroupHom(self.values[c], self.values[d], self.face_maps[(c, i, tau)])

    def degen_map(self, c: CubeRef, i: int) -> GroupHom:
        s = self.base.degeneracy(c, i)
        return GroupHom(self.values[c], self.values[s], self.degen_maps[(c, i)])


def find_violation(F: ContraSystem):
    """First failing relation instance, or None.  Ill-defined maps raise directly."""
    X, cap = F.base, F.cap
    for key in F.face_maps:
        if not well_defined(F.face_map(*key)):
            raise SystemError_(f"face map at {key[0]} {key[1:]} does not respect relations")
    for key in F.degen_maps:
        if not well_defined(F.degen_map(*key)):
            raise SystemError_(f"degeneracy map at {key[0]} {key[1:]} does not respect relations")

    for n in range(2, cap + 1):
        for y in X.cubes(n):
            for i, j in itertools.combinations(range(1, n + 1), 2):
                for a, b in itertools.product((0, 1), repeat=2):
                    lhs = F.face_map(X.face(y, j, b), i, a).compose(F.face_map(y, j, b))
                    rhs = F.face_map(X.face(y, i, a), j - 1, b).compose(F.face_map(y, i, a))
                    if not lhs.equals(rhs):
                        return Violation("face-face", n, y, (i, a, j, b),
                                         f"d_{i}^{a} d_{j}^{b}", f"d_{j - 1}^{b} d_{i}^{a}")

    for n in range(2, cap + 1):
        for x in X.cubes(n - 2):
            for i in range(1, n):
                for j in range(i, n):
                    lhs = F.degen_map(X.degeneracy(x, j), i).compose(F.degen_map(x, j))
                    rhs = F.degen_map(X.degeneracy(x, i), j + 1).compose(F.degen_map(x, i))
                    if not lhs.equals(rhs):
                        return Violation("degeneracy-degeneracy", n, x, (i, j),
                                         f"s_{i} s_{j}", f"s_{j + 1} s_{i}")

    for n in range(0, cap):
        for x in X.cubes(n):
            for j in range(1, n + 2):
                sx = X.degeneracy(x, j)
                up = F.degen_map(x, j)
                for i in range(1, n + 2):
                    for a in (0, 1):
                        lhs = F.face_map(sx, i, a).compose(up)
                        if i == j:
                            rhs, rdesc = GroupHom.identity(F.value(x)), "id"
                        elif i < j:
                            rhs = F.degen_map(X.face(x, i, a), j - 1).compose(F.face_map(x, i, a))
                            rdesc = f"s_{j - 1} d_{i}^{a}"
                        else:
                            rhs = F.degen_map(X.face(x, i - 1, a), j).compose(F.face_map(x, i - 1, a))
                            rdesc = f"s_{j} d_{i - 1}^{a}"
                        if not lhs.equals(rhs):
                            return Violation("degeneracy-face", n + 1, x, (i, a, j),
                                             f"d_{i}^{a} s_{j}", rdesc)
    return None


def validate_functoriality(F: ContraSystem) -> None:
    v = find_violation(F)
    if v is not None:
        raise FunctorialityError(v)


# -- constructors -----------------------------------------------------------

def constant_system(X: CubicalSetFin, G: FpAbGroup, cap: int) -> ContraSystem:
    ident = IntMatrix.identity(G.gens)
    values, faces, degens = {}, {}, {}
    for k in range(cap + 1):
        for c in X.cubes(k):
            values[c] = G
            for i in range(1, k + 1):
                faces[(c, i, 0)] = faces[(c, i, 1)] = ident
            if k < cap:
                for i in range(1, k + 2):
                    degens[(c, i)] = ident
    return ContraSystem(X, cap, values, faces, degens, validate=False)


def table_system(X: CubicalSetFin, values: Mapping, face_maps: Mapping, degen_maps: Mapping,
                 cap: int) -> ContraSystem:
    return ContraSystem(X, cap, values, face_maps, degen_maps, validate=True)


def _is_automorphism(u: IntMatrix, G: FpAbGroup) -> bool:
    if u.shape != (G.gens, G.gens) or abs(determinant(u)) != 1:
        return False
    lat = G.relation_lattice()
    inv = unimodular_inverse(u) if G.gens else u
    return all(c in lat for c in (u @ G.relations).columns()) and \
        all(c in lat for c in (inv @ G.relations).columns())


def twist(F: ContraSystem, units: Mapping) -> ContraSystem:
    """Conjugate every generating map by per-cube automorphisms.

    A map ``h : F(a) -> F(b)`` becomes ``u_b h u_a^{-1}``; the result is
    naturally isomorphic to ``F``.
    """
    inverses = {}
    for c, G in F.values.items():
        if c not in units:
            raise MissingEntryError(f"no twist at {c}")
        u = units[c]
        if not _is_automorphism(u, G):
            raise SystemError_(f"twist at {c} is not an automorphism of its value")
        inverses[c] = unimodular_inverse(u) if G.gens else u
    X = F.base
    faces = {(c, i, t): units[X.face(c, i, t)] @ m @ inverses[c]
             for (c, i, t), m in F.face_maps.items()}
    degens = {(c, i): units[X.degeneracy(c, i)] @ m @ inverses[c]
              for (c, i), m in F.degen_maps.items()}
    return ContraSystem(X, F.cap, F.values, faces, degens, validate=False)


def sign_twist(F: ContraSystem, signs: Mapping) -> ContraSystem:
    """Twist by ``+-1`` scalars, one per cube."""
    return twist(F, {c: IntMatrix.identity(G.gens).scale(signs[c]) for c, G in F.values.items()})


def pullback(f: CubicalMap, F: ContraSystem, cap: int | None = None) -> ContraSystem:
    """``F`` composed with the functor induced by ``f`` on singular cubes."""
    cap = F.cap if cap is None else cap
    if cap > F.cap:
        raise SystemError_(f"cannot pull back to cap {cap} from a system with cap {F.cap}")
    X = f.source
    values, faces, degens = {}, {}, {}
    for k in range(cap + 1):
        for c in X.cubes(k):
            fc = f(c)
            values[c] = F.values[fc]
            for i in range(1, k + 1):
                for t in (0, 1):
                    faces[(c, i, t)] = F.face_maps[(fc, i, t)]
            if k < cap:
                for i in range(1, k + 2):
                    degens[(c, i)] = F.degen_maps[(fc, i)]
    return ContraSystem(X, cap, values, faces, degens, validate=False)


def top_value(F: ContraSystem) -> FpAbGroup:
    """Value at the top cube of a standard cube (the terminal singular cube)."""
    X = F.base
    (top,) = X.nondeg[X.dim_cap]
    return F.value(X.ref(top))


def lattice_system(X: CubicalSetFin, gens: int, relations: Mapping, cap: int) -> ContraSystem:
    """System ``Z^gens / L(base of x)`` with identity matrices on every arrow.

    ``relations`` gives generating vectors per nondegenerate cube; each
    lattice is enlarged by those of all cubes having it as an iterated
    face, so every identity matrix is a well-defined homomorphism.
    """
    parents: dict = {z: set() for z in X.dims}
    for z in X.dims:
        for c in X.faces[z].values():
            parents[c.base].add(z)
    lattices = {}

    def collect(z, seen):
        if z in seen:
            return
        seen.add(z)
        for p in parents[z]:
            collect(p, seen)

    for z in X.dims:
        up: set = set()
        collect(z, up)
        vecs = [v for w in sorted(up) for v in relations.get(w, ())]
        lattices[z] = FpAbGroup(gens, Lattice(gens, vecs).matrix())
    ident = IntMatrix.identity(gens)
    values, faces, degens = {}, {}, {}
    for k in range(cap + 1):
        for c in X.cubes(k):
            values[c] = lattices[c.base]
            for i in range(1, k + 1):
                faces[(c, i, 0)] = faces[(c, i, 1)] = ident
            if k < cap:
                for i in range(1, k + 2):
                    degens[(c, i)] = ident
    return ContraSystem(X, cap, values, faces, degens, validate=False)

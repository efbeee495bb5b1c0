"""Finite cubical sets in Eilenberg-Zilber form.

Every cube of ``X_k`` is written uniquely as a surjection ``I^k ->> I^m``
applied to a nondegenerate ``m``-cube.  A surjection of the cube category
only forgets coordinates, so it is stored as the sorted tuple of deleted
input coordinates.  A presentation lists the nondegenerate cubes and, for
each of them, its faces as such pairs; everything else is derived.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from . import cube_cat as cc


class PresentationError(ValueError):
    """A face table or map that is not a valid cubical structure."""

    def __init__(self, message: str, instance=None):
        super().__init__(message)
        self.instance = instance


@dataclass(frozen=True, order=True)
class CubeRef:
    """The cube ``X(eta)(base)`` where ``eta`` deletes ``deleted`` from ``I^dim``."""
    dim: int
    base: str
    deleted: tuple = ()

    def __post_init__(self):
        d = self.deleted
        if any(a >= b for a, b in zip(d, d[1:])) or any(not 1 <= i <= self.dim for i in d):
            raise PresentationError(f"bad deletion list {d} in dimension {self.dim}")

    @property
    def base_dim(self) -> int:
        return self.dim - len(self.deleted)

    @property
    def eta(self) -> cc.CubeMorphism:
        return cc.surjection(self.dim, self.deleted)

    @property
    def is_degenerate(self) -> bool:
        return bool(self.deleted)

    def __str__(self):
        if not self.deleted:
            return self.base
        return f"{self.base}<{','.join(map(str, self.deleted))}>"


def _ref(dim: int, base: str, eta: cc.CubeMorphism) -> CubeRef:
    return CubeRef(dim, base, eta.deleted)


class CubicalSetFin:
    """A cubical set given by its nondegenerate cubes and their faces.

    ``dims`` maps each nondegenerate cube id to its dimension and
    ``faces[z][(i, tau)]`` is the face ``d_i^tau z`` as a :class:`CubeRef`.
    Construction validates the face table against the cubical identities.
    """

    def __init__(self, dims: Mapping[str, int], faces: Mapping[str, Mapping[tuple, CubeRef]],
                 *, validate: bool = True, origin: Mapping | None = None):
        self.dims = dict(dims)
        self.faces = {z: dict(faces.get(z, {})) for z in self.dims}
        self.origin = dict(origin or {})
        by_dim: dict = {}
        for z, m in self.dims.items():
            by_dim.setdefault(m, []).append(z)
        self.nondeg = {m: tuple(sorted(ids)) for m, ids in sorted(by_dim.items())}
        self.dim_cap = max(self.dims.values(), default=-1)
        self._push_cache: dict = {}
        if validate:
            self._validate_shape()
            self._validate_identities()

    def __repr__(self):
        counts = [len(self.nondeg.get(m, ())) for m in range(self.dim_cap + 1)]
        return f"CubicalSetFin(nondegenerate counts {counts})"

    # -- validation -------------------------------------------------------

    def _validate_shape(self):
        for z, m in self.dims.items():
            if m < 0:
                raise PresentationError(f"cube {z!r} has negative dimension")
            want = {(i, t) for i in range(1, m + 1) for t in (0, 1)}
            have = set(self.faces[z])
            if have != want:
                missing = sorted(want - have)
                extra = sorted(have - want)
                raise PresentationError(
                    f"cube {z!r} of dimension {m}: missing faces {missing}, unexpected {extra}",
                    (z,))
            for key, c in self.faces[z].items():
                if c.base not in self.dims:
                    raise PresentationError(f"face {key} of {z!r} names unknown cube {c.base!r}",
                                            (z, key))
                if c.dim != m - 1 or self.dims[c.base] != c.base_dim:
                    raise PresentationError(f"face {key} of {z!r} has inconsistent dimensions",
                                            (z, key))

    def _validate_identities(self):
        for z in sorted(self.dims, key=lambda z: (self.dims[z], z)):
            m = self.dims[z]
            top = CubeRef(m, z)
            for i, j in itertools.combinations(range(1, m + 1), 2):
                for a, b in itertools.product((0, 1), repeat=2):
                    lhs = self.face(self.face(top, j, b), i, a)
                    rhs = self.face(self.face(top, i, a), j - 1, b)
                    if lhs != rhs:
                        raise PresentationError(
                            f"cube {z!r}: d_{i}^{a} d_{j}^{b} = {lhs} but "
                            f"d_{j - 1}^{b} d_{i}^{a} = {rhs}",
                            (z, (i, a, j, b)))

    # -- cubes and operators ---------------------------------------------

    def ref(self, z: str) -> CubeRef:
        return CubeRef(self.dims[z], z)

    def cubes(self, k: int) -> list:
        """All cubes of ``X_k`` in canonical order."""
        out = []
        for m in range(min(k, self.dim_cap) + 1):
            for z in self.nondeg.get(m, ()):
                for gone in itertools.combinations(range(1, k + 1), k - m):
                    out.append(CubeRef(k, z, gone))
        out.sort()
        return out

    def count(self, k: int) -> int:
        from math import comb
        return sum(len(ids) * comb(k, m) for m, ids in self.nondeg.items() if m <= k)

    def act(self, c: CubeRef, g: cc.CubeMorphism) -> CubeRef:
        """``X(g)(c)`` for a morphism ``g : I^j -> I^{c.dim}``."""
        if g.target_dim != c.dim:
            raise cc.CubeError(f"cannot act by a map into I^{g.target_dim} on a {c.dim}-cube")
        epi, mono = cc.epi_mono_factor(cc.compose(c.eta, g))
        w = self._push(c.base, mono)
        return _ref(g.source_dim, w.base, cc.compose(w.eta, epi))

    def _push(self, z: str, mono: cc.CubeMorphism) -> CubeRef:
        key = (z, mono.entries)
        hit = self._push_cache.get(key)
        if hit is not None:
            return hit
        cur = CubeRef(self.dims[z], z)
        for j, tau in cc.normal_form(mono).delta_part:
            if cur.deleted:
                cur = self.act(cur, cc.face(cur.dim, j, tau))
            else:
                cur = self.faces[cur.base][(j, tau)]
        self._push_cache[key] = cur
        return cur

    def face(self, c: CubeRef, i: int, tau: int) -> CubeRef:
        if not 1 <= i <= c.dim:
            raise cc.CubeError(f"face index {i} out of range for a {c.dim}-cube")
        if not c.deleted:
            return self.faces[c.base][(i, tau)]
        return self.act(c, cc.face(c.dim, i, tau))

    def degeneracy(self, c: CubeRef, i: int) -> CubeRef:
        """``sigma_i`` of a ``(k-1)``-cube, landing in ``X_k``."""
        k = c.dim + 1
        if not 1 <= i <= k:
            raise cc.CubeError(f"degeneracy index {i} out of range for X_{k}")
        return _ref(k, c.base, cc.compose(c.eta, cc.degeneracy(k, i)))


def cubes(X: CubicalSetFin, k: int) -> list:
    return X.cubes(k)


def ez_face(X: CubicalSetFin, c: CubeRef, i: int, tau: int) -> CubeRef:
    return X.face(c, i, tau)


def ez_degeneracy(X: CubicalSetFin, c: CubeRef, i: int) -> CubeRef:
    return X.degeneracy(c, i)


def is_degenerate(c: CubeRef) -> bool:
    return c.is_degenerate


def empty_set() -> CubicalSetFin:
    return CubicalSetFin({}, {})


# -- standard cubes ---------------------------------------------------------

def std_id(mono: cc.CubeMorphism) -> str:
    """Name of an injective ``I^m -> I^n``: one of ``0``, ``1``, ``x`` per output slot."""
    return "[" + "".join("x" if isinstance(e, int) else e for e in mono.entries) + "]"


def std_mono(name: str) -> cc.CubeMorphism:
    body = name[1:-1]
    m = body.count("x")
    it = iter(range(1, m + 1))
    return cc.CubeMorphism(m, len(body), tuple(next(it) if ch == "x" else ch for ch in body))


def std_ref(f: cc.CubeMorphism) -> CubeRef:
    """The cube of ``h_{I^n}`` given by a morphism ``f : I^k -> I^n``."""
    epi, mono = cc.epi_mono_factor(f)
    return CubeRef(f.source_dim, std_id(mono), epi.deleted)


def std_morphism(c: CubeRef) -> cc.CubeMorphism:
    return cc.compose(std_mono(c.base), c.eta)


def standard_cube(n: int) -> CubicalSetFin:
    dims, faces = {}, {}
    for m in range(n + 1):
        for mu in cc.injective_hom(m, n):
            z = std_id(mu)
            dims[z] = m
            faces[z] = {(i, t): std_ref(cc.compose(mu, cc.face(m, i, t)))
                        for i in range(1, m + 1) for t in (0, 1)}
    return CubicalSetFin(dims, faces, origin={"standard": n})


def point() -> CubicalSetFin:
    return standard_cube(0)


def boundary_square() -> CubicalSetFin:
    """The boundary of ``h_{I^2}``: four vertices and four edges."""
    sq = standard_cube(2)
    keep = [z for z in sq.dims if sq.dims[z] <= 1]
    return subobject(sq, keep)


# -- maps -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CubicalMap:
    source: CubicalSetFin
    target: CubicalSetFin
    assignment: dict
    check: bool = True

    def __post_init__(self):
        if set(self.assignment) != set(self.source.dims):
            raise PresentationError("map must assign every nondegenerate source cube")
        if not self.check:
            return
        for z, c in self.assignment.items():
            m = self.source.dims[z]
            if c.dim != m or self.target.dims.get(c.base) != c.base_dim:
                raise PresentationError(f"{z!r} is sent to {c}, which is not a {m}-cube")
        for z in self.source.dims:
            top = self.source.ref(z)
            for i in range(1, top.dim + 1):
                for t in (0, 1):
                    lhs = self(self.source.face(top, i, t))
                    rhs = self.target.face(self(top), i, t)
                    if lhs != rhs:
                        raise PresentationError(
                            f"map does not commute with d_{i}^{t} at {z!r}: {lhs} vs {rhs}",
                            (z, i, t))

    def __call__(self, c: CubeRef) -> CubeRef:
        r = self.assignment[c.base]
        return _ref(c.dim, r.base, cc.compose(r.eta, c.eta))


def identity_map(X: CubicalSetFin) -> CubicalMap:
    return CubicalMap(X, X, {z: X.ref(z) for z in X.dims}, check=False)


def inclusion(S: CubicalSetFin, X: CubicalSetFin) -> CubicalMap:
    return CubicalMap(S, X, {z: S.ref(z) for z in S.dims})


def compose_maps(g: CubicalMap, f: CubicalMap) -> CubicalMap:
    """``g`` after ``f``."""
    if f.target is not g.source:
        raise PresentationError("maps are not composable")
    return CubicalMap(f.source, g.target, {z: g(c) for z, c in f.assignment.items()}, check=False)


def to_point(X: CubicalSetFin, pt: CubicalSetFin | None = None) -> CubicalMap:
    """The unique map to the terminal cubical set ``h_{I^0}``."""
    pt = pt if pt is not None else point()
    (p,) = pt.dims
    return CubicalMap(X, pt, {z: CubeRef(m, p, tuple(range(1, m + 1))) for z, m in X.dims.items()})


def standard_map(g: cc.CubeMorphism, source: CubicalSetFin | None = None,
                 target: CubicalSetFin | None = None) -> CubicalMap:
    """``h_g : h_{I^k} -> h_{I^n}``, postcomposition with ``g``."""
    source = source if source is not None else standard_cube(g.source_dim)
    target = target if target is not None else standard_cube(g.target_dim)
    return CubicalMap(source, target,
                      {z: std_ref(cc.compose(g, std_mono(z))) for z in source.dims})


def singular_cube(Y: CubicalSetFin, y: CubeRef, source: CubicalSetFin | None = None) -> CubicalMap:
    """The map ``h_{I^n} -> Y`` classifying ``y``."""
    source = source if source is not None else standard_cube(y.dim)
    return CubicalMap(source, Y, {z: Y.act(y, std_mono(z)) for z in source.dims})


# -- products ---------------------------------------------------------------

def _drop(deleted: Iterable[int], common: set) -> tuple:
    return tuple(i - sum(1 for c in common if c < i) for i in deleted if i not in common)


def pair_id(a: CubeRef, b: CubeRef) -> str:
    return f"({a},{b})"


def _canonical_pair(a: CubeRef, b: CubeRef, ids: dict) -> CubeRef:
    common = set(a.deleted) & set(b.deleted)
    p = a.dim - len(common)
    a2 = CubeRef(p, a.base, _drop(a.deleted, common))
    b2 = CubeRef(p, b.base, _drop(b.deleted, common))
    return CubeRef(a.dim, ids[(a2, b2)], tuple(sorted(common)))


def product(X: CubicalSetFin, Y: CubicalSetFin) -> CubicalSetFin:
    """Levelwise product; ``origin["factors"]`` maps each id to its pair of cubes."""
    pairs = []
    for ma, za_ids in X.nondeg.items():
        for mb, zb_ids in Y.nondeg.items():
            for p in range(max(ma, mb), ma + mb + 1):
                for za in za_ids:
                    for zb in zb_ids:
                        for A in itertools.combinations(range(1, p + 1), p - ma):
                            rest = [i for i in range(1, p + 1) if i not in A]
                            for B in itertools.combinations(rest, p - mb):
                                pairs.append((CubeRef(p, za, A), CubeRef(p, zb, B)))
    ids = {(a, b): pair_id(a, b) for a, b in pairs}
    dims, faces = {}, {}
    for a, b in pairs:
        z = ids[(a, b)]
        dims[z] = a.dim
        faces[z] = {(i, t): _canonical_pair(X.face(a, i, t), Y.face(b, i, t), ids)
                    for i in range(1, a.dim + 1) for t in (0, 1)}
    factors = {ids[k]: k for k in pairs}
    return CubicalSetFin(dims, faces, origin={"factors": factors, "left": X, "right": Y})


def projections(P: CubicalSetFin) -> tuple:
    factors = P.origin["factors"]
    X, Y = P.origin["left"], P.origin["right"]
    return (CubicalMap(P, X, {z: a for z, (a, _) in factors.items()}),
            CubicalMap(P, Y, {z: b for z, (_, b) in factors.items()}))


# -- subobjects -------------------------------------------------------------

def face_closure(X: CubicalSetFin, ids: Iterable[str]) -> set:
    todo, seen = list(ids), set()
    while todo:
        z = todo.pop()
        if z in seen:
            continue
        if z not in X.dims:
            raise PresentationError(f"unknown cube {z!r}")
        seen.add(z)
        todo.extend(c.base for c in X.faces[z].values())
    return seen


def subobject(X: CubicalSetFin, ids: Iterable[str]) -> CubicalSetFin:
    keep = set(ids)
    for z in keep:
        if z not in X.dims:
            raise PresentationError(f"unknown cube {z!r}")
        for key, c in X.faces[z].items():
            if c.base not in keep:
                raise PresentationError(f"subset is not face-closed: face {key} of {z!r} is {c}",
                                        (z, key))
    origin = {"parent": X}
    if "factors" in X.origin:
        origin.update(factors={z: X.origin["factors"][z] for z in keep},
                      left=X.origin["left"], right=X.origin["right"])
    return CubicalSetFin({z: X.dims[z] for z in keep}, {z: X.faces[z] for z in keep},
                         validate=False, origin=origin)


@dataclass
class Cover:
    """Two subobjects of a cubical set, their union and intersection, with inclusions."""
    X1: CubicalSetFin
    X2: CubicalSetFin
    union: CubicalSetFin
    intersection: CubicalSetFin
    lambda0: CubicalMap = field(repr=False)   # intersection -> union
    lambda1: CubicalMap = field(repr=False)   # X1 -> union
    lambda2: CubicalMap = field(repr=False)   # X2 -> union
    to_X1: CubicalMap = field(repr=False)     # intersection -> X1
    to_X2: CubicalMap = field(repr=False)     # intersection -> X2


def sub_union_intersection(X: CubicalSetFin, ids1: Iterable[str], ids2: Iterable[str]) -> Cover:
    s1, s2 = face_closure(X, ids1), face_closure(X, ids2)
    X1, X2 = subobject(X, s1), subobject(X, s2)
    U, I = subobject(X, s1 | s2), subobject(X, s1 & s2)
    return Cover(X1, X2, U, I, inclusion(I, U), inclusion(X1, U), inclusion(X2, U),
                 inclusion(I, X1), inclusion(I, X2))


# -- inverse images ---------------------------------------------------------

def inverse_image(f: CubicalMap, y: CubeRef) -> tuple:
    """Pullback of ``f`` along the singular cube of ``y``.

    Returns the cubical set together with its cone map to ``f.source``.  It
    is built inside ``f.source x h_{I^n}`` as the cubes ``(x, g)`` with
    ``f(x) = Y(g)(y)``.
    """
    X, Y = f.source, f.target
    P = product(X, standard_cube(y.dim))
    keep = [z for z, (a, b) in P.origin["factors"].items()
            if f(a) == Y.act(y, std_morphism(b))]
    S = subobject(P, keep)
    cone = CubicalMap(S, X, {z: S.origin["factors"][z][0] for z in S.dims})
    return S, cone

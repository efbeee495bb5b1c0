"""Random instances and property suites.

The generators here feed both the test suite and ``cubhom validate
--properties``.  Each suite returns a :class:`SuiteReport` counting checked
instances and collecting failure descriptions instead of raising.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import cube_cat as cc
from .abgrp import FpAbGroup, IntMatrix, determinant, diagonal_entries, snf
from .chain import ChainError
from .coeff import ContraSystem, _is_automorphism, constant_system, lattice_system, twist
from .cubical_set import CubeRef, CubicalSetFin
from .homology import HomologyError, normalized_complex


@dataclass
class SuiteReport:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, what: str):
        self.failures.append(what)

    def __str__(self):
        verdict = "PASS" if self.ok else f"FAIL ({len(self.failures)} failures)"
        return f"{self.name}: {verdict}, {self.checked} instances"


# -- cube category ----------------------------------------------------------

def random_word(rng: random.Random, max_len: int = 12, max_dim: int = 5) -> tuple:
    """``(source_dim, letters)`` with letters in application order."""
    k = rng.randint(0, max_dim)
    dim, letters = k, []
    for _ in range(rng.randint(0, max_len)):
        can_face, can_degen = dim < max_dim, dim > 0
        if can_face and (not can_degen or rng.random() < 0.5):
            letters.append(("d", rng.randint(1, dim + 1), rng.randint(0, 1)))
            dim += 1
        elif can_degen:
            letters.append(("e", rng.randint(1, dim)))
            dim -= 1
    return k, letters


def letter_morphism(letter: tuple, dim: int) -> cc.CubeMorphism:
    """The generator named by ``letter`` acting on ``I^dim``."""
    if letter[0] == "d":
        return cc.face(dim + 1, letter[1], letter[2])
    return cc.degeneracy(dim, letter[1])


def word_text(letters) -> str:
    return " ".join(f"d[{x[1]},{x[2]}]" if x[0] == "d" else f"e[{x[1]}]" for x in letters)


def check_words(rng: random.Random, count: int = 10_000) -> SuiteReport:
    rep = SuiteReport("normal-form round trip")
    for _ in range(count):
        k, letters = random_word(rng)
        maps, dim = [], k
        for x in letters:
            g = letter_morphism(x, dim)
            maps.append(g)
            dim = g.target_dim
        f = cc.identity(k)
        for g in maps:
            f = cc.compose(g, f)
        rep.checked += 1
        nf = cc.normal_form(f)
        if nf.to_morphism() != f:
            rep.fail(f"round trip of {word_text(letters)} from I^{k}")
            continue
        if cc.parse_word(cc.render(nf), source_dim=k) != f:
            rep.fail(f"rendered form of {word_text(letters)} does not parse back")
            continue
        if cc.parse_word(word_text(letters), source_dim=k, order="apply") != f:
            rep.fail(f"parsing {word_text(letters)} disagrees with composition")
            continue
        for p in cc.points(k):
            q = tuple(p)
            for g in maps:
                q = cc.evaluate(g, q)
            if q != cc.evaluate(f, p):
                rep.fail(f"evaluation of {word_text(letters)} at {p}")
                break
    return rep


def _table(f: cc.CubeMorphism) -> tuple:
    return tuple(cc.evaluate(f, p) for p in cc.points(f.source_dim))


def check_relations(n_max: int = 5) -> SuiteReport:
    """Cube identities compared as function tables, every instance up to ``n_max``."""
    rep = SuiteReport("cube identities")
    C, d, e = cc.compose, cc.face, cc.degeneracy

    def same(f, g, what):
        rep.checked += 1
        if (f.source_dim, f.target_dim) != (g.source_dim, g.target_dim) or _table(f) != _table(g):
            rep.fail(what)

    for n in range(2, n_max + 1):
        for i, j in itertools.combinations(range(1, n + 1), 2):
            for a, b in itertools.product((0, 1), repeat=2):
                same(C(d(n, j, b), d(n - 1, i, a)), C(d(n, i, a), d(n - 1, j - 1, b)),
                     f"face-face n={n} i={i} j={j}")
        for i in range(1, n):
            for j in range(i, n):
                same(C(e(n - 1, j), e(n, i)), C(e(n - 1, i), e(n, j + 1)),
                     f"degeneracy-degeneracy n={n} i={i} j={j}")
    for n in range(1, n_max + 1):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for a in (0, 1):
                    lhs = C(e(n, j), d(n, i, a))
                    if i == j:
                        rhs = cc.identity(n - 1)
                    elif i < j:
                        rhs = C(d(n - 1, i, a), e(n - 1, j - 1))
                    else:
                        rhs = C(d(n - 1, i - 1, a), e(n - 1, j))
                    same(lhs, rhs, f"degeneracy-face n={n} i={i} j={j} a={a}")
    return rep


# -- integer matrices -------------------------------------------------------

def random_matrix(rng: random.Random, max_size: int = 8, bound: int = 9) -> IntMatrix:
    r, c = rng.randint(0, max_size), rng.randint(0, max_size)
    return IntMatrix(r, c, [[rng.randint(-bound, bound) for _ in range(c)] for _ in range(r)])


def snf_contract_failure(M: IntMatrix):
    """Reason the Smith form of ``M`` breaks its contract, or None."""
    U, S, V = snf(M)
    if U @ M @ V != S:
        return "U M V != S"
    if abs(determinant(U)) != 1 or abs(determinant(V)) != 1:
        return "transform not unimodular"
    for i in range(S.rows):
        for j in range(S.cols):
            if i != j and S[i, j]:
                return "S not diagonal"
    diag = diagonal_entries(S)
    if any(x < 0 for x in diag):
        return "negative diagonal entry"
    for a, b in zip(diag, diag[1:]):
        if (a == 0 and b != 0) or (a and b % a):
            return "divisibility chain broken"
    return None


def check_snf(rng: random.Random, count: int = 1000) -> SuiteReport:
    rep = SuiteReport("Smith normal form contract")
    for _ in range(count):
        M = random_matrix(rng)
        rep.checked += 1
        why = snf_contract_failure(M)
        if why:
            rep.fail(f"{why} for {M.tolist()}")
    return rep


# -- cubical sets and systems -----------------------------------------------

def random_cubical_set(rng: random.Random, per_dim: int = 3, max_dim: int = 2) -> CubicalSetFin:
    """Random valid presentation with at most ``per_dim`` nondegenerate cubes per dimension."""
    dims, faces = {}, {}
    verts = [f"v{i}" for i in range(rng.randint(1, per_dim))]
    for v in verts:
        dims[v], faces[v] = 0, {}
    ends = {}
    if max_dim >= 1:
        for k in range(rng.randint(0, per_dim)):
            e = f"e{k}"
            p, q = rng.choice(verts), rng.choice(verts)
            dims[e] = 1
            faces[e] = {(1, 0): CubeRef(0, p), (1, 1): CubeRef(0, q)}
            ends[e] = (p, q)
    if max_dim >= 2:
        for k in range(rng.randint(0, per_dim)):
            for _ in range(50):
                v = {(a, b): rng.choice(verts) for a in (0, 1) for b in (0, 1)}

                def side(p, q):
                    opts = [CubeRef(1, e) for e, pq in sorted(ends.items()) if pq == (p, q)]
                    if p == q:
                        opts.append(CubeRef(1, p, (1,)))
                    return rng.choice(opts) if opts else None

                sides = {(1, a): side(v[(a, 0)], v[(a, 1)]) for a in (0, 1)}
                sides.update({(2, b): side(v[(0, b)], v[(1, b)]) for b in (0, 1)})
                if all(sides.values()):
                    s = f"s{k}"
                    dims[s], faces[s] = 2, sides
                    break
    return CubicalSetFin(dims, faces)


def random_group_relations(rng: random.Random, gens: int) -> list:
    out = []
    for _ in range(rng.randint(0, 2)):
        v = [rng.choice((0, 0, 1, 2, 3, -2)) for _ in range(gens)]
        if any(v):
            out.append(v)
    return out


def random_automorphism(rng: random.Random, G: FpAbGroup) -> IntMatrix:
    g = G.gens
    u = IntMatrix.identity(g).scale(rng.choice((1, -1)))
    if g == 0:
        return u
    for _ in range(3):
        rows = u.tolist()
        a, b = rng.randrange(g), rng.randrange(g)
        if a != b:
            q = rng.randint(-2, 2)
            rows[a] = [x + q * y for x, y in zip(rows[a], rows[b])]
        else:
            rows[a] = [-x for x in rows[a]]
        cand = IntMatrix(g, g, rows)
        if _is_automorphism(cand, G):
            u = cand
    return u


def random_system(rng: random.Random, X: CubicalSetFin, cap: int) -> ContraSystem:
    """A valid system: a lattice quotient system or a constant one, then twisted."""
    gens = rng.randint(1, 3)
    if rng.random() < 0.3:
        rel = random_group_relations(rng, gens)
        F = constant_system(X, FpAbGroup(gens, IntMatrix.from_columns(rel, gens)), cap)
    else:
        F = lattice_system(X, gens, {z: random_group_relations(rng, gens) for z in X.dims}, cap)
    return random_twist(rng, F)


def random_twist(rng: random.Random, F: ContraSystem) -> ContraSystem:
    return twist(F, {c: random_automorphism(rng, G) for c, G in F.values.items()})


def check_corpus(rng: random.Random, count: int = 100, n_max: int = 3) -> tuple:
    """Complex invariants and twist invariance on random sets and systems.

    Returns two reports: structural (d d = 0, degenerate chains preserved,
    splitting) and twist invariance of homology.
    """
    structural = SuiteReport("d^2 = 0, degenerate preservation, splitting")
    twisting = SuiteReport("twist invariance of homology")
    cap = n_max + 1
    for t in range(count):
        X = random_cubical_set(rng)
        F = random_system(rng, X, cap)
        structural.checked += 1
        try:
            B = normalized_complex(X, F, n_max)
        except (ChainError, HomologyError) as exc:
            structural.fail(f"instance {t}: {exc}")
            continue
        G = random_twist(rng, F)
        twisting.checked += 1
        try:
            B2 = normalized_complex(X, G, n_max, check_splitting=False)
        except (ChainError, HomologyError) as exc:
            twisting.fail(f"instance {t}: {exc}")
            continue
        for n in range(n_max + 1):
            if B.homology(n).group != B2.homology(n).group:
                twisting.fail(f"instance {t}: H_{n} {B.homology(n).group} vs {B2.homology(n).group}")
                break
    return structural, twisting


def run_all(seed: int = 0, *, words: int = 10_000, matrices: int = 1000, corpus: int = 100) -> list:
    rng = random.Random(seed)
    reports = [check_words(rng, words), check_relations(5), check_snf(rng, matrices)]
    reports.extend(check_corpus(rng, corpus))
    return reports

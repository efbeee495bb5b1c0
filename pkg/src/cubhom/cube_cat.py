"""The category of cubes.

A morphism ``I^k -> I^n`` is stored by its *entries*: one symbol per output
coordinate, either a constant (``"0"`` or ``"1"``) or a projection onto an
input coordinate (a positive int, 1-based).  The projection indices read
left to right are strictly increasing.  Composition is substitution of
entries, and the unique face/degeneracy word of a morphism is read off the
entries directly, so no rewriting system is needed.

    >>> f = compose(face(1, 1, 0), degeneracy(1, 1))
    >>> f
    CubeMorphism(1, 1, ('0',))
    >>> render(normal_form(f))
    'd[1,0] e[1]'
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

Entry = Union[int, str]

ZERO = "0"
ONE = "1"
_CONST = {0: ZERO, 1: ONE}


class CubeError(ValueError):
    pass


def _const(tau: int) -> str:
    if tau not in _CONST:
        raise CubeError(f"sign must be 0 or 1, got {tau!r}")
    return _CONST[tau]


@dataclass(frozen=True)
class CubeMorphism:
    source_dim: int
    target_dim: int
    entries: tuple

    def __post_init__(self):
        k, n = self.source_dim, self.target_dim
        if k < 0 or n < 0:
            raise CubeError("dimensions must be nonnegative")
        if len(self.entries) != n:
            raise CubeError(f"expected {n} entries, got {len(self.entries)}")
        last = 0
        for e in self.entries:
            if isinstance(e, str):
                if e not in (ZERO, ONE):
                    raise CubeError(f"bad constant entry {e!r}")
            elif isinstance(e, int) and not isinstance(e, bool):
                if not last < e <= k:
                    raise CubeError(f"projection indices must increase within 1..{k}: {self.entries}")
                last = e
            else:
                raise CubeError(f"bad entry {e!r}")

    def __call__(self, point: Sequence[int]) -> tuple:
        return evaluate(self, point)

    def __repr__(self):
        return f"CubeMorphism({self.source_dim}, {self.target_dim}, {self.entries!r})"

    def __str__(self):
        cells = ["x%d" % e if isinstance(e, int) else e for e in self.entries]
        return "(" + ", ".join(cells) + f") : I^{self.source_dim} -> I^{self.target_dim}"

    @property
    def projections(self) -> tuple:
        return tuple(e for e in self.entries if isinstance(e, int))

    @property
    def deleted(self) -> tuple:
        """Input coordinates that the morphism forgets, in increasing order."""
        kept = set(self.projections)
        return tuple(i for i in range(1, self.source_dim + 1) if i not in kept)

    def sort_key(self):
        return (self.source_dim, self.target_dim,
                tuple((0, e) if isinstance(e, int) else (1, int(e)) for e in self.entries))


def identity(k: int) -> CubeMorphism:
    return CubeMorphism(k, k, tuple(range(1, k + 1)))


def face(k: int, i: int, tau: int) -> CubeMorphism:
    """The face map ``I^{k-1} -> I^k`` inserting the constant ``tau`` at slot ``i``."""
    if k < 1 or not 1 <= i <= k:
        raise CubeError(f"face index out of range: k={k}, i={i}")
    entries = tuple(range(1, i)) + (_const(tau),) + tuple(range(i, k))
    return CubeMorphism(k - 1, k, entries)


def degeneracy(k: int, i: int) -> CubeMorphism:
    """The degeneracy ``I^k -> I^{k-1}`` deleting coordinate ``i``."""
    if k < 1 or not 1 <= i <= k:
        raise CubeError(f"degeneracy index out of range: k={k}, i={i}")
    return CubeMorphism(k, k - 1, tuple(j for j in range(1, k + 1) if j != i))


def surjection(k: int, deleted: Sequence[int]) -> CubeMorphism:
    """The surjection ``I^k -> I^{k-len(deleted)}`` forgetting the given coordinates."""
    gone = set(deleted)
    if len(gone) != len(deleted) or not all(1 <= i <= k for i in gone):
        raise CubeError(f"bad deletion set {deleted!r} for dimension {k}")
    return CubeMorphism(k, k - len(gone), tuple(i for i in range(1, k + 1) if i not in gone))


def compose(g: CubeMorphism, f: CubeMorphism) -> CubeMorphism:
    """``g`` after ``f``."""
    if f.target_dim != g.source_dim:
        raise CubeError(f"cannot compose I^{g.source_dim}->I^{g.target_dim} "
                        f"after I^{f.source_dim}->I^{f.target_dim}")
    fe = f.entries
    return CubeMorphism(f.source_dim, g.target_dim,
                        tuple(fe[e - 1] if isinstance(e, int) else e for e in g.entries))


def evaluate(f: CubeMorphism, point: Sequence[int]) -> tuple:
    if len(point) != f.source_dim:
        raise CubeError(f"point of length {len(point)} for source I^{f.source_dim}")
    return tuple(point[e - 1] if isinstance(e, int) else int(e) for e in f.entries)


def is_injective(f: CubeMorphism) -> bool:
    return len(f.projections) == f.source_dim


def is_surjective(f: CubeMorphism) -> bool:
    return all(isinstance(e, int) for e in f.entries)


# -- normal forms ---------------------------------------------------------

@dataclass(frozen=True)
class NormalFormWord:
    """``d[j1,t1] ... d[js,ts] e[i1] ... e[ir]`` with j decreasing and i increasing.

    The word is written in composition order: the rightmost letter acts first.
    """
    source_dim: int
    target_dim: int
    delta_part: tuple = ()
    epsilon_part: tuple = ()

    def __post_init__(self):
        js = [j for j, _ in self.delta_part]
        if any(a <= b for a, b in zip(js, js[1:])):
            raise CubeError("delta positions must strictly decrease")
        if any(a >= b for a, b in zip(self.epsilon_part, self.epsilon_part[1:])):
            raise CubeError("epsilon positions must strictly increase")
        r, s = len(self.epsilon_part), len(self.delta_part)
        if self.source_dim - r != self.target_dim - s or self.source_dim < r:
            raise CubeError("inconsistent word lengths")

    def letters(self) -> list:
        """Generators as morphisms, leftmost first."""
        n, k = self.target_dim, self.source_dim
        r = len(self.epsilon_part)
        out = [face(n - q, j, tau) for q, (j, tau) in enumerate(self.delta_part)]
        out += [degeneracy(k - r + q + 1, i) for q, i in enumerate(self.epsilon_part)]
        return out

    def to_morphism(self) -> CubeMorphism:
        f = identity(self.source_dim)
        for g in reversed(self.letters()):
            f = compose(g, f)
        return f


def normal_form(f: CubeMorphism) -> NormalFormWord:
    delta = tuple((pos, int(e)) for pos, e in reversed(list(enumerate(f.entries, 1)))
                  if isinstance(e, str))
    return NormalFormWord(f.source_dim, f.target_dim, delta, f.deleted)


def epi_mono_factor(f: CubeMorphism) -> tuple:
    """Split ``f`` as ``mono . epi`` through ``I^p`` with ``p`` the number of projections."""
    epi = surjection(f.source_dim, f.deleted)
    p = epi.target_dim
    it = iter(range(1, p + 1))
    mono = CubeMorphism(p, f.target_dim,
                        tuple(next(it) if isinstance(e, int) else e for e in f.entries))
    return epi, mono


def enumerate_hom(k: int, n: int) -> list:
    """All morphisms ``I^k -> I^n``, each exactly once."""
    out = []
    for s in range(min(k, n) + 1):
        for slots in itertools.combinations(range(n), s):
            for inputs in itertools.combinations(range(1, k + 1), s):
                for consts in itertools.product((ZERO, ONE), repeat=n - s):
                    entries = list(consts)
                    for slot, j in zip(slots, inputs):
                        entries.insert(slot, j)
                    out.append(CubeMorphism(k, n, tuple(entries)))
    return out


def count_hom(k: int, n: int) -> int:
    from math import comb
    return sum(comb(n, s) * comb(k, s) * 2 ** (n - s) for s in range(min(k, n) + 1))


def injective_hom(k: int, n: int) -> list:
    return [f for f in enumerate_hom(k, n) if is_injective(f)]


# -- text form ------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:d\[\s*(\d+)\s*,\s*([01])\s*\]|e\[\s*(\d+)\s*\]|(id))\s*")


def render(word: NormalFormWord) -> str:
    parts = [f"d[{j},{t}]" for j, t in word.delta_part]
    parts += [f"e[{i}]" for i in word.epsilon_part]
    return " ".join(parts) if parts else "id"


def parse_letters(text: str) -> list:
    """Tokens of a generator word as ``("d", j, tau)`` / ``("e", i)``, in written order."""
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise CubeError(f"cannot parse word at {text[pos:]!r}")
        if m.group(1):
            out.append(("d", int(m.group(1)), int(m.group(2))))
        elif m.group(3):
            out.append(("e", int(m.group(3))))
        pos = m.end()
    return out


def _trace(letters: Sequence[tuple], k: int):
    """Dimensions along a word acting first-to-last, or None if some index is invalid."""
    dim, maps = k, []
    for letter in letters:
        if letter[0] == "d":
            if not 1 <= letter[1] <= dim + 1:
                return None
            maps.append(face(dim + 1, letter[1], letter[2]))
            dim += 1
        else:
            if not 1 <= letter[1] <= dim:
                return None
            maps.append(degeneracy(dim, letter[1]))
            dim -= 1
    return maps


def parse_word(text: str, source_dim: int | None = None, order: str = "compose") -> CubeMorphism:
    """Evaluate a generator word.

    ``order="compose"`` reads the word like ``render`` writes it (rightmost
    letter acts first); ``order="apply"`` reads it left to right.  Without a
    ``source_dim`` the smallest source dimension that makes every index
    valid is used.
    """
    if order not in ("compose", "apply"):
        raise CubeError(f"unknown order {order!r}")
    letters = parse_letters(text)
    acting = letters[::-1] if order == "compose" else letters
    candidates = [source_dim] if source_dim is not None else range(0, 2 * len(letters) + 1)
    for k in candidates:
        maps = _trace(acting, k)
        if maps is not None:
            f = identity(k)
            for g in maps:
                f = compose(g, f)
            return f
    raise CubeError(f"word {text!r} has no valid source dimension"
                    + ("" if source_dim is None else f" (asked for {source_dim})"))


def points(k: int) -> Iterator[tuple]:
    return itertools.product((0, 1), repeat=k)

"""Graph maps: factorizations, admissible pairs and the Hom basis.

A triple ``u = u3.u2.u1`` (traversal order: ``u1`` first) is a quotient
factorization when the letter of ``u1`` adjacent to ``u2`` is inverse and
the letter of ``u3`` adjacent to ``u2`` is direct, empty parts allowed;
submodule factorizations are dual.  Each pair of a quotient factorization
of ``u`` and a submodule factorization of ``v`` with equivalent middles is
one basis element of Hom(M(u), M(v)).
"""

from __future__ import annotations

from dataclasses import dataclass

from .words import StringWord, canonical_string, is_string

QUOTIENT = "quotient"
SUBMODULE = "submodule"


@dataclass(frozen=True)
class Factorization:
    word: StringWord
    i: int
    j: int
    kind: str

    @property
    def parts(self) -> tuple[StringWord, StringWord, StringWord]:
        """(u3, u2, u1) with u1 traversed first."""
        w = self.word
        return (w.slice(self.j, len(w)), w.slice(self.i, self.j), w.slice(0, self.i))

    def splits(self) -> tuple[int, int]:
        return (self.i, self.j)


@dataclass(frozen=True)
class AdmissiblePair:
    quotient: Factorization
    submodule: Factorization

    def is_trivial(self) -> bool:
        u, v = self.quotient, self.submodule
        return (
            u.word == v.word
            and u.splits() == (0, len(u.word))
            and v.splits() == (0, len(v.word))
        )

    def splits(self) -> tuple[int, int, int, int]:
        return self.quotient.splits() + self.submodule.splits()


@dataclass(frozen=True)
class HomBasis:
    pairs: tuple[AdmissiblePair, ...]

    @property
    def dim(self) -> int:
        return len(self.pairs)


def _quotient_splits(w: StringWord) -> list[tuple[int, int]]:
    n = len(w)
    lo = [i for i in range(n + 1) if i == 0 or w.letters[i - 1].inverse]
    hi = [j for j in range(n + 1) if j == n or not w.letters[j].inverse]
    return [(i, j) for i in lo for j in hi if i <= j]


def _submodule_splits(w: StringWord) -> list[tuple[int, int]]:
    n = len(w)
    lo = [i for i in range(n + 1) if i == 0 or not w.letters[i - 1].inverse]
    hi = [j for j in range(n + 1) if j == n or w.letters[j].inverse]
    return [(i, j) for i in lo for j in hi if i <= j]


def quotient_factorizations(u: StringWord) -> list[Factorization]:
    """All factorizations inducing quotient maps M(u) ->> M(u2)."""
    return [Factorization(u, i, j, QUOTIENT) for i, j in _quotient_splits(u)]


def submodule_factorizations(u: StringWord) -> list[Factorization]:
    """All factorizations inducing inclusions M(u2) -> M(u)."""
    return [Factorization(u, i, j, SUBMODULE) for i, j in _submodule_splits(u)]


def _middle_key(w: StringWord, i: int, j: int, walk: list[str]) -> tuple:
    if i == j:
        return ("lazy", walk[i])
    c = canonical_string(w.slice(i, j))
    return ("word", c.sort_key())


def admissible_pairs(u: StringWord, v: StringWord) -> HomBasis:
    """The graph-map basis of Hom(M(u), M(v)), in split order."""
    if not is_string(u) or not is_string(v):
        raise ValueError("admissible_pairs needs strings")
    walk_u, walk_v = u.walk_vertices(), v.walk_vertices()
    sub_index: dict[tuple, list[tuple[int, int]]] = {}
    for i, j in _submodule_splits(v):
        sub_index.setdefault(_middle_key(v, i, j, walk_v), []).append((i, j))
    pairs = []
    for i, j in sorted(_quotient_splits(u)):
        key = _middle_key(u, i, j, walk_u)
        for i2, j2 in sorted(sub_index.get(key, ())):
            pairs.append(
                AdmissiblePair(
                    Factorization(u, i, j, QUOTIENT), Factorization(v, i2, j2, SUBMODULE)
                )
            )
    pairs.sort(key=AdmissiblePair.splits)
    return HomBasis(tuple(pairs))


def hom_dim(u: StringWord, v: StringWord) -> int:
    return admissible_pairs(u, v).dim


def is_brick(w: StringWord) -> bool:
    """One-dimensional endomorphism space: only the trivial pair survives.

    Scans short stripped sides first, which detects most non-bricks quickly,
    then falls back to the full enumeration.
    """
    if not is_string(w):
        raise ValueError(f"{w.render()} is not a string")
    walk = w.walk_vertices()
    q_splits = _quotient_splits(w)
    s_splits = _submodule_splits(w)
    sub_index: dict[tuple, list[tuple[int, int]]] = {}
    for i, j in s_splits:
        sub_index.setdefault(_middle_key(w, i, j, walk), []).append((i, j))
    n = len(w)
    trivial = (0, n)
    # short middles are the common witnesses; scan by middle length
    for i, j in sorted(q_splits, key=lambda t: t[1] - t[0]):
        key = _middle_key(w, i, j, walk)
        for other in sub_index.get(key, ()):
            if (i, j) == trivial and other == trivial:
                continue
            return False
    return True

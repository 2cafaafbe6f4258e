"""Strings and bands over a string algebra, and their string modules.

A letter is an arrow traversed forwards or backwards; a word is a sequence
of letters in traversal order (first step first).  The printed form follows
the right-to-left application convention: ``eps delta- gamma- beta`` is the
walk that applies ``beta`` first, so its traversal order is the reverse of
the printed one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .quiver import BoundQuiver, QuiverError


class Letter(NamedTuple):
    arrow: str
    inverse: bool

    def inv(self) -> "Letter":
        return Letter(self.arrow, not self.inverse)

    def render(self) -> str:
        return self.arrow + ("-" if self.inverse else "")


class WordError(QuiverError):
    """Raised on non-composable or otherwise malformed words."""


@dataclass(frozen=True)
class StringWord:
    """A reduced walk satisfying (S1)/(S2); empty words carry a basepoint."""

    quiver: BoundQuiver
    letters: tuple[Letter, ...]
    basepoint: str | None = None

    def __post_init__(self):
        if not self.letters and self.basepoint is None:
            raise WordError("empty word needs a basepoint")

    # -- walk geometry -------------------------------------------------------

    def _ends(self, letter: Letter) -> tuple[str, str]:
        a = self.quiver.arrow_by_name[letter.arrow]
        return (a.tgt, a.src) if letter.inverse else (a.src, a.tgt)

    @property
    def source(self) -> str:
        if not self.letters:
            return self.basepoint  # type: ignore[return-value]
        return self._ends(self.letters[0])[0]

    @property
    def target(self) -> str:
        if not self.letters:
            return self.basepoint  # type: ignore[return-value]
        return self._ends(self.letters[-1])[1]

    def __len__(self) -> int:
        return len(self.letters)

    def walk_vertices(self) -> list[str]:
        """The l+1 vertices visited, in traversal order."""
        if not self.letters:
            return [self.basepoint]  # type: ignore[list-item]
        verts = [self._ends(self.letters[0])[0]]
        for letter in self.letters:
            verts.append(self._ends(letter)[1])
        return verts

    def supported_arrows(self) -> set[str]:
        return {l.arrow for l in self.letters}

    def double_supported_arrows(self) -> set[str]:
        direct = {l.arrow for l in self.letters if not l.inverse}
        inv = {l.arrow for l in self.letters if l.inverse}
        return direct & inv

    # -- algebra -------------------------------------------------------------

    def inverse(self) -> "StringWord":
        return StringWord(
            self.quiver, tuple(l.inv() for l in reversed(self.letters)), self.basepoint
        )

    def concat(self, other: "StringWord") -> "StringWord":
        """``self`` then ``other`` (traversal order)."""
        if self.target != other.source:
            raise WordError("words do not compose")
        if not self.letters and not other.letters:
            return self
        return StringWord(self.quiver, self.letters + other.letters)

    def power(self, m: int) -> "StringWord":
        if not self.letters:
            return self
        return StringWord(self.quiver, self.letters * m)

    def rotate(self, k: int) -> "StringWord":
        """Cyclic rotation; only meaningful for closed walks."""
        if not self.letters:
            return self
        k %= len(self.letters)
        return StringWord(self.quiver, self.letters[k:] + self.letters[:k])

    def slice(self, i: int, j: int) -> "StringWord":
        if i == j:
            return StringWord(self.quiver, (), self.walk_vertices()[i])
        return StringWord(self.quiver, self.letters[i:j])

    # -- canonical form -------------------------------------------------------

    def sort_key(self) -> tuple:
        q = self.quiver
        if not self.letters:
            return (0, (), q.vertex_index[self.basepoint])  # type: ignore[index]
        return (
            len(self.letters),
            tuple((q.arrow_index[l.arrow], int(l.inverse)) for l in self.letters),
            -1,
        )

    def render(self) -> str:
        if not self.letters:
            return f"e({self.basepoint})"
        return " ".join(l.render() for l in reversed(self.letters))

    def __repr__(self) -> str:
        return f"<{self.render()}>"


def word_from_text(q: BoundQuiver, text: str) -> StringWord:
    """Parse the printed form; ``e(x)`` stands for the lazy word at ``x``."""
    text = text.strip()
    if text.startswith("e(") and text.endswith(")"):
        v = text[2:-1]
        if v not in q.vertex_index:
            raise WordError(f"no vertex {v!r}")
        return StringWord(q, (), v)
    letters = []
    for token in reversed(text.split()):
        inv = token.endswith("-")
        name = token[:-1] if inv else token
        if name not in q.arrow_by_name:
            raise WordError(f"no arrow {name!r}")
        letters.append(Letter(name, inv))
    if not letters:
        raise WordError("empty word literal; use e(<vertex>)")
    w = StringWord(q, tuple(letters))
    for a, b in zip(w.letters, w.letters[1:]):
        if w._ends(a)[1] != w._ends(b)[0]:
            raise WordError(f"letters {a.render()} {b.render()} do not compose")
    return w


def lazy_word(q: BoundQuiver, vertex: str) -> StringWord:
    return StringWord(q, (), vertex)


# -- the string axioms ---------------------------------------------------------


def _runs_ok(q: BoundQuiver, letters: Sequence[Letter]) -> bool:
    """(S2): no maximal one-directional run spells a vanishing path."""
    i, n = 0, len(letters)
    while i < n:
        j = i
        while j < n and letters[j].inverse == letters[i].inverse:
            j += 1
        run = [l.arrow for l in letters[i:j]]
        if letters[i].inverse:
            run.reverse()
        if q.path_in_ideal(run):
            return False
        i = j
    return True


def is_string_letters(q: BoundQuiver, letters: Sequence[Letter]) -> bool:
    for a, b in zip(letters, letters[1:]):
        ae = (q.arrow_by_name[a.arrow].src, q.arrow_by_name[a.arrow].tgt)
        be = (q.arrow_by_name[b.arrow].src, q.arrow_by_name[b.arrow].tgt)
        a_end = ae[0] if a.inverse else ae[1]
        b_start = be[1] if b.inverse else be[0]
        if a_end != b_start:
            raise WordError(f"letters {a.render()} {b.render()} do not compose")
        if a.arrow == b.arrow and a.inverse != b.inverse:
            return False
    return _runs_ok(q, letters)


def is_string(w: StringWord) -> bool:
    """(S1) and (S2) for a composable walk; lazy words are strings."""
    if not w.letters:
        return True
    return is_string_letters(w.quiver, w.letters)


def canonical_string(w: StringWord) -> StringWord:
    """The smaller of ``w`` and its inverse in the letter order."""
    wi = w.inverse()
    return w if w.sort_key() <= wi.sort_key() else wi


def enumerate_strings(q: BoundQuiver, max_len: int) -> list[StringWord]:
    """All canonical strings of length at most ``max_len``, sorted."""
    found: dict[tuple, StringWord] = {}
    for v in q.vertices:
        w = lazy_word(q, v)
        found[w.sort_key()] = w
    frontier: list[tuple[Letter, ...]] = []
    for a in q.arrows:
        if not q.path_in_ideal((a.name,)):
            for letter in (Letter(a.name, False), Letter(a.name, True)):
                frontier.append((letter,))
    while frontier:
        letters = frontier.pop()
        if len(letters) > max_len:
            continue
        w = StringWord(q, letters)
        c = canonical_string(w)
        key = c.sort_key()
        if key not in found:
            found[key] = c
        if len(letters) == max_len:
            continue
        for ext in _extensions(q, letters):
            frontier.append(letters + (ext,))
    return sorted(found.values(), key=StringWord.sort_key)


def _extensions(q: BoundQuiver, letters: tuple[Letter, ...]) -> list[Letter]:
    """Letters that extend a string on the right to a longer string."""
    last = letters[-1]
    a = q.arrow_by_name[last.arrow]
    at = a.src if last.inverse else a.tgt
    out: list[Letter] = []
    for b in q.outgoing(at):
        cand = Letter(b.name, False)
        if last.inverse and b.name == last.arrow:
            continue
        if _tail_run_ok(q, letters, cand):
            out.append(cand)
    for b in q.incoming(at):
        cand = Letter(b.name, True)
        if not last.inverse and b.name == last.arrow:
            continue
        if _tail_run_ok(q, letters, cand):
            out.append(cand)
    return out


def _tail_run_ok(q: BoundQuiver, letters: tuple[Letter, ...], cand: Letter) -> bool:
    """Incremental (S2): the run ending in the appended letter stays nonzero."""
    run = [cand.arrow]
    for l in reversed(letters):
        if l.inverse != cand.inverse:
            break
        run.append(l.arrow)
    if cand.inverse:
        path = tuple(run)  # reversed traversal already spells the path
    else:
        path = tuple(reversed(run))
    # only factors ending at the new letter are new
    for gen in q.monomials:
        g = len(gen)
        if g > len(path):
            continue
        if (not cand.inverse and path[-g:] == gen) or (cand.inverse and path[:g] == gen):
            return False
    return True


# -- bands ---------------------------------------------------------------------


@dataclass(frozen=True)
class BandClass:
    """A primitive cyclic string up to rotation and inversion."""

    representative: StringWord

    def length(self) -> int:
        return len(self.representative)

    def sort_key(self) -> tuple:
        return self.representative.sort_key()

    def render(self) -> str:
        return self.representative.render()

    def __repr__(self) -> str:
        return f"Band<{self.render()}>"


def _is_primitive(letters: tuple[Letter, ...]) -> bool:
    n = len(letters)
    for d in range(1, n):
        if n % d == 0 and letters == letters[:d] * (n // d):
            return False
    return True


def _power_bound(q: BoundQuiver, length: int) -> int:
    """Powers to test so every relation window across seams is exercised."""
    need = max(3, (q._max_rel_len + length - 1) // max(length, 1) + 1)
    return need


def is_band(w: StringWord) -> bool:
    q = w.quiver
    if len(w) == 0 or w.source != w.target:
        return False
    if not is_string(w):
        return False
    if not _is_primitive(w.letters):
        return False
    m = _power_bound(q, len(w))
    for k in range(2, m + 1):
        if not is_string(w.power(k)):
            return False
    return True


def canonical_band(w: StringWord) -> BandClass:
    """Least rotation over the word and its inverse."""
    best = None
    for base in (w, w.inverse()):
        for k in range(len(base)):
            r = base.rotate(k)
            if best is None or r.sort_key() < best.sort_key():
                best = r
    assert best is not None
    return BandClass(best)


def supports_once_per_direction(w: StringWord) -> bool:
    seen = set()
    for l in w.letters:
        if l in seen:
            return False
        seen.add(l)
    return True


def enumerate_bands(
    q: BoundQuiver, max_len: int, find_one: bool = False, minimal_only: bool = True
) -> list[BandClass]:
    """Band classes with representative length at most ``max_len``.

    By default only bands supporting each arrow at most once per direction
    are listed; every band arises from these by splicing repetitions, so
    nothing is lost for existence or reduction questions, and the list is
    finite without any length cap.  Pass ``minimal_only=False`` to opt into
    the unrestricted (potentially much larger) enumeration.  With
    ``find_one`` the search stops at the first band found.
    """
    classes: dict[tuple, BandClass] = {}
    frontier: list[tuple[Letter, ...]] = []
    for a in q.arrows:
        if not q.path_in_ideal((a.name,)):
            frontier.append((Letter(a.name, False),))
            frontier.append((Letter(a.name, True),))
    while frontier:
        letters = frontier.pop()
        w = StringWord(q, letters)
        if w.source == w.target and is_band(w):
            b = canonical_band(w)
            classes.setdefault(b.sort_key(), b)
            if find_one:
                return [b]
        if len(letters) < max_len:
            used = set(letters) if minimal_only else None
            for ext in _extensions(q, letters):
                if used is not None and ext in used:
                    continue
                frontier.append(letters + (ext,))
    return sorted(classes.values(), key=BandClass.sort_key)


def band_exists(q: BoundQuiver, bound: int | None = None) -> bool:
    """Rep-infiniteness test: a band exists iff one of length at most
    ``2 |Q1|`` does (a minimal band supports each arrow at most once per
    direction)."""
    if bound is None:
        bound = 2 * len(q.arrows)
    return bool(enumerate_bands(q, bound, find_one=True))


def longest_band_length(q: BoundQuiver, bound: int | None = None) -> int:
    bands = enumerate_bands(q, bound if bound is not None else 2 * len(q.arrows))
    return max((b.length() for b in bands), default=0)


# -- string modules -------------------------------------------------------------


@dataclass
class Representation:
    """Vertex dimensions plus one 0/1 integer matrix per arrow.

    The matrix of ``a`` has shape ``dims[tgt] x dims[src]`` and acts on
    column vectors.
    """

    quiver: BoundQuiver
    dims: dict[str, int]
    mats: dict[str, list[list[int]]]

    def matrix_of_path(self, path: Sequence[str]) -> list[list[int]]:
        m = self.mats[path[0]]
        for name in path[1:]:
            m = _matmul(self.mats[name], m)
        return m

    def relations_hold(self) -> bool:
        from .quiver import COMMUTATIVITY, MONOMIAL

        for r in self.quiver.relations:
            if r.kind == MONOMIAL:
                if any(x for row in self.matrix_of_path(r.path1) for x in row):
                    return False
            elif r.kind == COMMUTATIVITY:
                if self.matrix_of_path(r.path1) != self.matrix_of_path(r.path2):
                    return False
        return True

    def total_dim(self) -> int:
        return sum(self.dims.values())


def _matmul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            if ai[k]:
                bk = b[k]
                for j in range(cols):
                    oi[j] += ai[k] * bk[j]
    return out


def string_module(w: StringWord) -> Representation:
    """The string module M(w): one basis vector per visit, identity maps
    along the letters of the walk."""
    if not is_string(w):
        raise WordError(f"{w.render()} is not a string")
    q = w.quiver
    verts = w.walk_vertices()
    dims = {v: 0 for v in q.vertices}
    slot = []
    for v in verts:
        slot.append(dims[v])
        dims[v] += 1
    mats = {
        a.name: [[0] * dims[a.src] for _ in range(dims[a.tgt])] for a in q.arrows
    }
    for i, letter in enumerate(w.letters):
        if letter.inverse:
            # the walk runs against the arrow: position i+1 maps to i
            mats[letter.arrow][slot[i]][slot[i + 1]] = 1
        else:
            mats[letter.arrow][slot[i + 1]][slot[i]] = 1
    rep = Representation(q, dims, mats)
    if not rep.relations_hold():
        raise WordError(f"string module of {w.render()} violates a relation")
    return rep

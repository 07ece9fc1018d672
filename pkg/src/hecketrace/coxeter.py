"""Coxeter groups of classical types as signed permutations.

Conventions (window notation): an element w acting on {±1, ..., ±n} with
w(-i) = -w(i) is stored as the window (w(1), ..., w(n)).  Products compose
functions, (u*w)(i) = u(w(i)).

Generator indexing by type, rank n:

  * type A at level n: the symmetric group S_n; generators 1..n-1, where
    generator j transposes j and j+1 (windows stay positive);
  * type B: generators 0..n-1; generator 0 sends 1 -> -1;
  * type D (n >= 2): generator 0 stands for the fork generator t_{1'}
    (1 -> -2, 2 -> -1, printed as "1p"), plus 1..n-1 as in type B.
    Windows carry an even number of negative entries.

Degenerate ranks: level 0 of every type, A level 1, and D at ranks 0 and 1
are trivial groups (for D_1, evenness of signs forces the window (1), which
matches the group orders 2^{n-1} n! on the nose).

Length is computed by inversion statistics (inversions; plus negative-entry
and negative-sum-pair counts in type B; inversions plus negative-sum-pairs
in type D) and, in the test suite, cross-checked exhaustively against
breadth-first word length over enumerated groups.

>>> B2 = coxeter_context("B", 2)
>>> s0, s1 = B2.gen(0), B2.gen(1)
>>> (s0 * s1 == s1 * s0, (s0 * s1).length())
(False, 2)
>>> B2.longest_element().window
(-1, -2)
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator

DEFAULT_GROUP_BUDGET = 10_000


class BudgetError(RuntimeError):
    """Raised when an exhaustive operation would exceed the group budget."""


class CoxeterContext:
    """One group W(X_n); obtain instances through :func:`coxeter_context`."""

    def __init__(self, family: str, rank: int):
        if family not in ("A", "B", "D"):
            raise ValueError(f"unknown type {family!r}")
        if rank < 0:
            raise ValueError("rank must be nonnegative")
        self.family = family
        self.rank = rank
        self.npoints = rank
        if family == "A":
            self.generators = tuple(range(1, rank))
        elif family == "B":
            self.generators = tuple(range(rank))
        else:
            self.generators = tuple(range(rank)) if rank >= 2 else ()
        self._identity = GroupElement(self, tuple(range(1, rank + 1)))
        self._elements: list[GroupElement] | None = None
        self._index: dict[tuple[int, ...], int] | None = None
        self._tree: dict[tuple[int, ...], list[tuple[int, "GroupElement"]]] | None = None
        self._words: dict[tuple[int, ...], tuple[int, ...]] = {}
        self._right_cache: dict[tuple[tuple[int, ...], int], "GroupElement"] = {}
        self._left_cache: dict[tuple[tuple[int, ...], int], "GroupElement"] = {}

    def __repr__(self):
        return f"W({self.family}{self.rank})"

    # -- structure -------------------------------------------------------

    def coxeter_m(self, i: int, j: int) -> int:
        """Entry m_ij of the Coxeter matrix."""
        if i == j:
            return 1
        i, j = min(i, j), max(i, j)
        if self.family == "A":
            return 3 if j - i == 1 else 2
        if self.family == "B":
            if (i, j) == (0, 1):
                return 4
            return 3 if i >= 1 and j - i == 1 else 2
        # type D: generator 0 is the fork node attached to node 2
        if i == 0:
            return 3 if j == 2 else 2
        return 3 if j - i == 1 else 2

    def order(self) -> int:
        n = self.npoints
        fact = 1
        for k in range(2, n + 1):
            fact *= k
        if self.family == "A":
            return fact
        if self.family == "B":
            return (1 << n) * fact
        return (1 << (n - 1)) * fact if n >= 1 else 1

    @property
    def identity(self) -> "GroupElement":
        return self._identity

    def gen(self, i: int) -> "GroupElement":
        if i not in self.generators:
            raise ValueError(f"no generator {i} in {self!r}")
        return self._identity.right(i)

    def element(self, window: Iterable[int]) -> "GroupElement":
        w = tuple(window)
        if sorted(abs(x) for x in w) != list(range(1, self.npoints + 1)):
            raise ValueError(f"not a signed permutation window: {w}")
        negatives = sum(1 for x in w if x < 0)
        if self.family == "A" and negatives:
            raise ValueError("type A windows must be positive")
        if self.family == "D" and negatives % 2:
            raise ValueError("type D windows need an even number of sign changes")
        return GroupElement(self, w)

    def from_word(self, word: Iterable[int]) -> "GroupElement":
        w = self._identity
        for i in word:
            w = w.right(i)
        return w

    # -- enumeration -------------------------------------------------------

    def elements(self, budget: int = DEFAULT_GROUP_BUDGET) -> list["GroupElement"]:
        """All group elements, sorted by (length, window); breadth-first
        closure under the generators, verified against the closed order."""
        if self._elements is None:
            if self.order() > budget:
                raise BudgetError(f"|{self!r}| = {self.order()} exceeds budget {budget}")
            seen = {self._identity.window}
            frontier = [self._identity]
            out = [self._identity]
            while frontier:
                nxt = []
                for w in frontier:
                    for i in self.generators:
                        ws = w.right(i)
                        if ws.window not in seen:
                            seen.add(ws.window)
                            nxt.append(ws)
                            out.append(ws)
                frontier = nxt
            if len(out) != self.order():
                raise AssertionError("enumeration does not match the group order")
            out.sort(key=lambda w: (w.length(), w.window))
            self._elements = out
            self._index = {w.window: k for k, w in enumerate(out)}
        return self._elements

    def bfs_tree(self) -> dict[tuple[int, ...], list[tuple[int, "GroupElement"]]]:
        """Children lists of the canonical reduced-word trie: child = parent
        followed by one generator, keyed by the parent window."""
        if self._tree is None:
            tree: dict[tuple[int, ...], list[tuple[int, GroupElement]]] = {}
            for w in self.elements():
                tree.setdefault(w.window, [])
                if not w.is_identity():
                    s = w.last_descent()
                    parent = w.right(s)
                    tree.setdefault(parent.window, []).append((s, w))
            for kids in tree.values():
                kids.sort(key=lambda sk: (sk[0], sk[1].window))
            self._tree = tree
        return self._tree

    def longest_element(self) -> "GroupElement":
        """Greedy ascent: right-multiply by any length-increasing generator
        until none exists."""
        w = self._identity
        progress = True
        while progress:
            progress = False
            for i in self.generators:
                if not w.has_descent(i):
                    w = w.right(i)
                    progress = True
                    break
        return w

    def reduced_word(self, w: "GroupElement") -> tuple[int, ...]:
        word = self._words.get(w.window)
        if word is None:
            if w.is_identity():
                word = ()
            else:
                s = w.last_descent()
                word = self.reduced_word(w.right(s)) + (s,)
            self._words[w.window] = word
        return word

    def canonical(self, w: "GroupElement") -> "GroupElement":
        """The shared instance for this window, if the group is enumerated
        (shared instances keep cached lengths and inverses warm)."""
        if self._index is not None:
            return self._elements[self._index[w.window]]
        return w

    def right_cached(self, w: "GroupElement", i: int) -> "GroupElement":
        key = (w.window, i)
        out = self._right_cache.get(key)
        if out is None:
            out = self.canonical(w.right(i))
            self._right_cache[key] = out
        return out

    def left_cached(self, w: "GroupElement", i: int) -> "GroupElement":
        key = (w.window, i)
        out = self._left_cache.get(key)
        if out is None:
            out = self.canonical(w.left(i))
            self._left_cache[key] = out
        return out


@lru_cache(maxsize=None)
def coxeter_context(family: str, rank: int) -> CoxeterContext:
    return CoxeterContext(family, rank)


class GroupElement:
    """A signed permutation in window notation, bound to its context."""

    __slots__ = ("ctx", "window", "_len", "_inv")

    def __init__(self, ctx: CoxeterContext, window: tuple[int, ...]):
        self.ctx = ctx
        self.window = window
        self._len = -1
        self._inv = None

    # -- group operations ---------------------------------------------------

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.ctx is not self.ctx:
            raise ValueError("elements from different contexts")
        u = self.window
        return GroupElement(self.ctx, tuple(
            u[x - 1] if x > 0 else -u[-x - 1] for x in other.window))

    def inv(self) -> "GroupElement":
        if self._inv is None:
            out = [0] * len(self.window)
            for i, x in enumerate(self.window, start=1):
                if x > 0:
                    out[x - 1] = i
                else:
                    out[-x - 1] = -i
            self._inv = self.ctx.canonical(GroupElement(self.ctx, tuple(out)))
        return self._inv

    def right(self, i: int) -> "GroupElement":
        """Right multiplication by generator i."""
        w = self.window
        if i >= 1:
            if i >= len(w):
                raise ValueError(f"no generator {i} in {self.ctx!r}")
            return GroupElement(self.ctx, w[:i - 1] + (w[i], w[i - 1]) + w[i + 1:])
        if self.ctx.family == "B":
            return GroupElement(self.ctx, (-w[0],) + w[1:])
        if self.ctx.family == "D":
            return GroupElement(self.ctx, (-w[1], -w[0]) + w[2:])
        raise ValueError("type A has no generator 0")

    def left(self, i: int) -> "GroupElement":
        """Left multiplication by generator i (acts on window values)."""
        w = self.window
        if i >= 1:
            swap = {i: i + 1, i + 1: i, -i: -(i + 1), -(i + 1): -i}
        elif self.ctx.family == "B":
            swap = {1: -1, -1: 1}
        elif self.ctx.family == "D":
            swap = {1: -2, 2: -1, -1: 2, -2: 1}
        else:
            raise ValueError("type A has no generator 0")
        return GroupElement(self.ctx, tuple(swap.get(x, x) for x in w))

    # -- length and words ----------------------------------------------------

    def length(self) -> int:
        if self._len < 0:
            w = self.window
            n = len(w)
            inv = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])
            if self.ctx.family == "A":
                self._len = inv
            else:
                nsp = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] + w[j] < 0)
                if self.ctx.family == "B":
                    neg = sum(1 for x in w if x < 0)
                    self._len = inv + neg + nsp
                else:
                    self._len = inv + nsp
        return self._len

    def has_descent(self, i: int) -> bool:
        """True iff right multiplication by generator i shortens."""
        w = self.window
        if i >= 1:
            return w[i - 1] > w[i]
        if self.ctx.family == "B":
            return w[0] < 0
        return w[0] + w[1] < 0

    def has_left_descent(self, i: int) -> bool:
        return self.inv().has_descent(i)

    def last_descent(self) -> int:
        for i in self.ctx.generators:
            if self.has_descent(i):
                return i
        raise ValueError("the identity has no descents")

    def reduced_word(self) -> tuple[int, ...]:
        """A reduced word; generators applied left to right rebuild self."""
        return self.ctx.reduced_word(self)

    # -- predicates -----------------------------------------------------------

    def is_identity(self) -> bool:
        return self.window == self.ctx.identity.window

    def fixes_above(self, level: int) -> bool:
        """Membership in the level parabolic: w(j) = j for all j > level."""
        return all(self.window[j] == j + 1 for j in range(level, len(self.window)))

    # -- plumbing ---------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, GroupElement)
                and other.ctx is self.ctx and other.window == self.window)

    def __hash__(self):
        return hash(self.window)

    def __repr__(self):
        return f"{self.ctx.family}{self.ctx.rank}[{format_window(self)}]"


def format_window(w: GroupElement) -> str:
    return ",".join(str(x) for x in w.window)


def parse_window(text: str, ctx: CoxeterContext) -> GroupElement:
    return ctx.element(int(part) for part in text.split(","))


def gen_label(ctx: CoxeterContext, i: int) -> str:
    return "1p" if ctx.family == "D" and i == 0 else str(i)


def parse_gen_label(token: str, ctx: CoxeterContext) -> int:
    if token == "1p":
        if ctx.family != "D":
            raise ValueError("generator 1p only exists in type D")
        return 0
    return int(token)


def format_word(word: Iterable[int], ctx: CoxeterContext) -> str:
    return " ".join(gen_label(ctx, i) for i in word)


def parse_word(text: str, ctx: CoxeterContext) -> tuple[int, ...]:
    return tuple(parse_gen_label(tok, ctx) for tok in text.split())


def parabolic_elements(ctx: CoxeterContext, level: int,
                       budget: int = DEFAULT_GROUP_BUDGET) -> list[GroupElement]:
    """Elements of the level parabolic subgroup, in enumeration order."""
    if level > ctx.rank:
        raise ValueError("parabolic level exceeds the rank")
    return [w for w in ctx.elements(budget) if w.fixes_above(level)]

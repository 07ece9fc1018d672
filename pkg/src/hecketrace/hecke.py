"""Iwahori-Hecke algebras of types A, B (equal or unequal parameters), D.

Elements are sparse linear combinations of the standard basis {t_w} indexed
by the group, with coefficients from a pluggable domain: exact scalars for
symbolic computation, or prime-field point pairs for randomized identity
checks (see points.py).  Every generator satisfies

    t_s^2 = 1 + (v_s - v_s^-1) t_s,

where v_s is v0 for t_0 in unequal type B and v otherwise, together with
the braid relations of the Coxeter matrix.  Products are computed by
expanding the right factor into reduced words and applying the one-generator
action t_w t_s = t_{ws} (ascent) or t_{ws} + (v_s - v_s^-1) t_w (descent);
for right factors with large support the expansion walks the group's
canonical reduced-word trie once, reusing shared prefixes.

The second basis {t_w^-1} drives the trace functional: tau(h) is the
coefficient of t_e^-1 = t_e when h is rewritten in the inverse basis, and
the sesquilinear pairing is <h, h'> = tau(i(bar(h)) h').  The rewriting is
a triangular elimination, since t_w^-1 = t_{w^-1} + (shorter terms).

Involutions: bar is the Q-algebra involution with bar(c t_w) =
bar(c) t_{w^-1}^-1; i is the A-linear anti-involution t_w -> t_{w^-1}.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .coxeter import (
    DEFAULT_GROUP_BUDGET, CoxeterContext, GroupElement, coxeter_context, gen_label,
)
from .points import EXACT, PointDomain, ScalarDomain
from .scalars import BASE_RING, Scalar


class AlgebraContext:
    """A Hecke algebra: Coxeter context + parameter mode + coefficient domain."""

    def __init__(self, cox: CoxeterContext, unequal: bool, domain):
        if unequal and cox.family != "B":
            raise ValueError("unequal parameters only exist in type B")
        self.cox = cox
        self.unequal = unequal
        self.domain = domain
        v = domain.gen("v")
        self._alpha = {i: v - v.inv() for i in cox.generators}
        if unequal and 0 in self._alpha:
            v0 = domain.gen("v0")
            self._alpha[0] = v0 - v0.inv()
        self._binv: dict[tuple[int, ...], HeckeElement] = {}
        self._tau: dict[tuple[int, ...], object] | None = None

    def __repr__(self):
        mode = "v,v0" if self.unequal else "v"
        return f"H_{{{mode}}}({self.cox.family}{self.cox.rank})"

    @property
    def rank(self) -> int:
        return self.cox.rank

    @property
    def family(self) -> str:
        return self.cox.family

    def alpha_of(self, i: int):
        """The quadratic constant v_s - v_s^-1 of generator i."""
        return self._alpha[i]

    # -- element constructors ---------------------------------------------

    def zero(self) -> "HeckeElement":
        return HeckeElement(self, {})

    @property
    def one(self) -> "HeckeElement":
        return HeckeElement(self, {self.cox.identity: self.domain.one})

    def t(self, w: GroupElement) -> "HeckeElement":
        if w.ctx is not self.cox:
            raise ValueError("group element from a different context")
        return HeckeElement(self, {w: self.domain.one})

    def t_word(self, word: Iterable[int]) -> "HeckeElement":
        """The product t_{s_{i_1}} ... t_{s_{i_r}} (word need not be reduced)."""
        h = self.one
        for i in word:
            h = h.right_gen(i)
        return h

    def generator(self, i: int) -> "HeckeElement":
        return self.t(self.cox.gen(i))

    def from_terms(self, terms: Mapping[GroupElement, object]) -> "HeckeElement":
        return HeckeElement(self, {w: c for w, c in terms.items() if c})

    # -- inverse basis ------------------------------------------------------

    def basis_inverse(self, w: GroupElement) -> "HeckeElement":
        """t_w^-1 expanded in the t-basis (memoized along the word trie)."""
        out = self._binv.get(w.window)
        if out is None:
            if w.is_identity():
                out = self.one
            else:
                s = w.last_descent()
                parent = self.basis_inverse(w.right(s))
                # t_w^-1 = t_s^-1 t_{parent}^-1 = (t_s - alpha_s) t_{parent}^-1
                out = parent.left_gen(s) - parent.scale(self.alpha_of(s))
            self._binv[w.window] = out
        return out

    # -- the trace functional ------------------------------------------------

    def tau_of_basis(self, w: GroupElement):
        """tau(t_w), from the triangular inverse-basis rewriting.

        Built for the whole group on first use: in length order,
        tau(t_w) = [w = e] - sum over the non-leading t-basis terms of
        t_{w^-1}^-1, paired with already-known tau values.
        """
        if self._tau is None:
            tau: dict[tuple[int, ...], object] = {}
            for x in self.cox.elements():
                total = self.domain.one if x.is_identity() else self.domain.zero
                for u, c in self.basis_inverse(x.inv()).terms.items():
                    if u.window != x.window:
                        total = total - c * tau[u.window]
                tau[x.window] = total
            self._tau = tau
        return self._tau[w.window]


_EXACT_CONTEXTS: dict[tuple, AlgebraContext] = {}


def algebra(family: str, rank: int, unequal: bool = False, domain=None) -> AlgebraContext:
    """Algebra contexts; exact ones are shared, point-domain ones are fresh."""
    if domain is None:
        domain = EXACT
    cox = coxeter_context(family, rank)
    if isinstance(domain, ScalarDomain):
        key = (family, rank, unequal, domain.key())
        if key not in _EXACT_CONTEXTS:
            _EXACT_CONTEXTS[key] = AlgebraContext(cox, unequal, domain)
        return _EXACT_CONTEXTS[key]
    return AlgebraContext(cox, unequal, domain)


class HeckeElement:
    """A sparse t-basis combination; immutable by convention."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: AlgebraContext, terms: dict):
        self.ctx = ctx
        self.terms = terms

    # -- linear structure ---------------------------------------------------

    def _check(self, other: "HeckeElement"):
        if not isinstance(other, HeckeElement):
            raise TypeError("expected a Hecke element")
        if other.ctx is not self.ctx:
            raise ValueError("elements from different algebra contexts")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.one.scale(self.ctx.domain.from_fraction(other))
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            nc = out.get(w)
            nc = c if nc is None else nc + c
            if nc:
                out[w] = nc
            else:
                out.pop(w, None)
        return HeckeElement(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return HeckeElement(self.ctx, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.one.scale(self.ctx.domain.from_fraction(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "HeckeElement":
        if not c:
            return self.ctx.zero()
        return HeckeElement(self.ctx, {w: cc * c for w, cc in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(self.ctx.domain.from_fraction(other))
        if isinstance(other, HeckeElement):
            return other.__mul__(self)
        return self.scale(other)  # domain coefficient

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.one.scale(self.ctx.domain.from_fraction(other))
        if not isinstance(other, HeckeElement) or other.ctx is not self.ctx:
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, w: GroupElement):
        return self.terms.get(w, self.ctx.domain.zero)

    def support(self) -> list[GroupElement]:
        return sorted(self.terms, key=lambda w: (w.length(), w.window))

    # -- one-generator actions ------------------------------------------------

    def right_gen(self, i: int) -> "HeckeElement":
        """Multiply by t_{s_i} on the right."""
        alpha = self.ctx.alpha_of(i)
        cox = self.ctx.cox
        out: dict = {}
        for w, c in self.terms.items():
            ws = cox.right_cached(w, i)
            if w.has_descent(i):
                nc = out.get(ws)
                nc = c if nc is None else nc + c
                if nc:
                    out[ws] = nc
                else:
                    del out[ws]
                extra = c * alpha
                nc = out.get(w)
                nc = extra if nc is None else nc + extra
                if nc:
                    out[w] = nc
                else:
                    out.pop(w, None)
            else:
                nc = out.get(ws)
                nc = c if nc is None else nc + c
                if nc:
                    out[ws] = nc
                else:
                    del out[ws]
        return HeckeElement(self.ctx, out)

    def right_gen_inv(self, i: int) -> "HeckeElement":
        """Multiply by t_{s_i}^-1 = t_{s_i} - alpha_i on the right."""
        alpha = self.ctx.alpha_of(i)
        cox = self.ctx.cox
        out: dict = {}
        for w, c in self.terms.items():
            ws = cox.right_cached(w, i)
            nc = out.get(ws)
            nc = c if nc is None else nc + c
            if nc:
                out[ws] = nc
            else:
                del out[ws]
            if not w.has_descent(i):
                extra = c * alpha
                nc = out.get(w)
                nc = -extra if nc is None else nc - extra
                if nc:
                    out[w] = nc
                else:
                    out.pop(w, None)
        return HeckeElement(self.ctx, out)

    def left_gen(self, i: int) -> "HeckeElement":
        """Multiply by t_{s_i} on the left."""
        alpha = self.ctx.alpha_of(i)
        cox = self.ctx.cox
        out: dict = {}
        for w, c in self.terms.items():
            sw = cox.left_cached(w, i)
            if w.has_left_descent(i):
                nc = out.get(sw)
                nc = c if nc is None else nc + c
                if nc:
                    out[sw] = nc
                else:
                    del out[sw]
                extra = c * alpha
                nc = out.get(w)
                nc = extra if nc is None else nc + extra
                if nc:
                    out[w] = nc
                else:
                    out.pop(w, None)
            else:
                nc = out.get(sw)
                nc = c if nc is None else nc + c
                if nc:
                    out[sw] = nc
                else:
                    del out[sw]
        return HeckeElement(self.ctx, out)

    def right_word(self, word: Iterable[int]) -> "HeckeElement":
        h = self
        for i in word:
            h = h.right_gen(i)
        return h

    def right_word_inv(self, word: Iterable[int]) -> "HeckeElement":
        """Multiply by (t_{s_{i_1}} ... t_{s_{i_r}})^-1 on the right."""
        h = self
        for i in reversed(tuple(word)):
            h = h.right_gen_inv(i)
        return h

    def right_basis(self, w: GroupElement) -> "HeckeElement":
        return self.right_word(w.reduced_word())

    def right_basis_inv(self, w: GroupElement) -> "HeckeElement":
        return self.right_word_inv(w.reduced_word())

    # -- products ---------------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(self.ctx.domain.from_fraction(other))
        if not isinstance(other, HeckeElement):
            return self.scale(other)
        self._check(other)
        if len(other.terms) <= 4:
            out = self.ctx.zero()
            for w, c in other.terms.items():
                out = out + self.right_basis(w).scale(c)
            return out
        return self._mul_via_trie(other)

    def _mul_via_trie(self, other: "HeckeElement") -> "HeckeElement":
        """Walk the canonical reduced-word trie once, reusing shared prefixes
        of the right factor's support."""
        cox = self.ctx.cox
        tree = cox.bfs_tree()
        needed: set[tuple[int, ...]] = set()
        for w in other.terms:
            x = w
            while x.window not in needed:
                needed.add(x.window)
                if x.is_identity():
                    break
                x = cox.right_cached(x, x.last_descent())
        total = self.ctx.zero()

        def walk(w: GroupElement, prod: "HeckeElement"):
            nonlocal total
            c = other.terms.get(w)
            if c is not None:
                total = total + prod.scale(c)
            for s, child in tree[w.window]:
                if child.window in needed:
                    walk(child, prod.right_gen(s))

        walk(cox.identity, self)
        return total

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("element powers take nonnegative integers")
        out = self.ctx.one
        for _ in range(n):
            out = out * self
        return out

    # -- involutions and the pairing ----------------------------------------------

    def anti(self) -> "HeckeElement":
        """The anti-involution i: coefficients kept, t_w -> t_{w^-1}."""
        return HeckeElement(self.ctx, {w.inv(): c for w, c in self.terms.items()})

    def bar(self) -> "HeckeElement":
        """bar(sum c_w t_w) = sum bar(c_w) t_{w^-1}^-1."""
        out = self.ctx.zero()
        for w, c in self.terms.items():
            out = out + self.ctx.basis_inverse(w.inv()).scale(c.bar())
        return out

    def tau(self):
        """The t_e^-1 coefficient of the inverse-basis expansion (linear in
        the t-basis, so a dot product against precomputed tau(t_w))."""
        total = self.ctx.domain.zero
        for w, c in self.terms.items():
            total = total + c * self.ctx.tau_of_basis(w)
        return total

    def to_inverse_basis(self) -> dict[GroupElement, object]:
        """Coefficients {x: h_x} with h = sum h_x t_x^-1, by length-descending
        triangular elimination."""
        residue = dict(self.terms)
        out: dict[GroupElement, object] = {}
        while residue:
            w = max(residue, key=lambda u: (u.length(), u.window))
            c = residue[w]
            x = w.inv()
            out[x] = c
            for u, d in self.ctx.basis_inverse(x).terms.items():
                nc = residue.get(u)
                nc = -(c * d) if nc is None else nc - c * d
                if nc:
                    residue[u] = nc
                else:
                    residue.pop(u, None)
        return out

    # -- embeddings -----------------------------------------------------------------

    def embed(self, target: "AlgebraContext") -> "HeckeElement":
        """Image under the tower embedding (windows padded by fixed points)."""
        if (target.family != self.ctx.family or target.unequal != self.ctx.unequal
                or target.rank < self.ctx.rank):
            raise ValueError(f"cannot embed {self.ctx!r} into {target!r}")
        if target.domain is not self.ctx.domain:
            raise ValueError("embedding requires a shared coefficient domain")
        pad = tuple(range(self.ctx.rank + 1, target.rank + 1))
        return HeckeElement(target, {
            target.cox.element(w.window + pad): c for w, c in self.terms.items()})

    # -- predicates --------------------------------------------------------------------

    def is_central(self) -> bool:
        """h t_s = t_s h for every generator."""
        return all(self.right_gen(i) == self.left_gen(i) for i in self.ctx.cox.generators)

    def supported_outside_parabolic(self, level: int) -> bool:
        return all(not w.fixes_above(level) for w in self.terms)

    def map_coefficients(self, fn: Callable, domain=None) -> "HeckeElement":
        ctx = self.ctx
        if domain is not None and domain is not ctx.domain:
            ctx = AlgebraContext(self.ctx.cox, self.ctx.unequal, domain)
        out = {}
        for w, c in self.terms.items():
            nc = fn(c)
            if nc:
                out[w] = nc
        return HeckeElement(ctx, out)

    # -- printing -------------------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "(0)*T[]"
        pieces = []
        for w in self.support():
            word = ",".join(gen_label(self.ctx.cox, i) for i in w.reduced_word())
            pieces.append(f"({self.terms[w]})*T[{word}]")
        return " + ".join(pieces)

    def __repr__(self):
        return f"<{self}>"


# ---------------------------------------------------------------------------
# module-level operations

def basis_inverse(ctx: AlgebraContext, w: GroupElement) -> HeckeElement:
    return ctx.basis_inverse(w)


def tau(h: HeckeElement):
    return h.tau()


def pairing(h1: HeckeElement, h2: HeckeElement):
    """<h1, h2> = tau(i(bar(h1)) h2); antilinear in h1, linear in h2."""
    h1._check(h2)
    return (h1.bar().anti() * h2).tau()


def tau_row(X: HeckeElement, targets: Iterable[GroupElement] | None = None) -> dict:
    """tau(X t_w) for each target w, sharing reduced-word prefixes.

    Walking the canonical trie costs one generator sweep per edge on a path
    to some target, so batch trace evaluation over a parabolic's basis is
    linear in (edges) x (support size).
    """
    ctx = X.ctx
    cox = ctx.cox
    tree = cox.bfs_tree()
    if targets is None:
        target_windows = {w.window for w in cox.elements()}
    else:
        target_windows = {w.window for w in targets}
    needed: set[tuple[int, ...]] = set()
    for win in target_windows:
        x = cox.identity if win == cox.identity.window else GroupElement(cox, win)
        while x.window not in needed:
            needed.add(x.window)
            if x.is_identity():
                break
            x = x.right(x.last_descent())
    out: dict[GroupElement, object] = {}

    def walk(w: GroupElement, prod: HeckeElement):
        if w.window in target_windows:
            out[w] = prod.tau()
        for s, child in tree[w.window]:
            if child.window in needed:
                walk(child, prod.right_gen(s))

    walk(cox.identity, X)
    return out


def embed_D_to_B(h: HeckeElement, target: AlgebraContext) -> HeckeElement:
    """The inclusion of the type-D algebra into unequal type B at v0 = 1:
    t_{1'} -> t_0 t_1 t_0, t_i -> t_i, with every coefficient of the result
    specialized at v0 = 1 (under which t_0^2 = 1).
    """
    if h.ctx.family != "D":
        raise ValueError("source must be type D")
    if target.family != "B" or not target.unequal or target.rank != h.ctx.rank:
        raise ValueError("target must be unequal type B of the same rank")
    out = target.zero()
    for w, c in h.terms.items():
        img = target.one
        for i in w.reduced_word():
            img = img.right_word((0, 1, 0) if i == 0 else (i,))
        out = out + img.scale(c)
    return specialize_v0_one(out)


def specialize_v0_one(h: HeckeElement) -> HeckeElement:
    """Send v0 -> 1 in every coefficient (exact domains); point domains must
    already sit at a point with v0 = 1."""
    dom = h.ctx.domain
    if isinstance(dom, ScalarDomain):
        return h.map_coefficients(lambda c: c.specialize({"v0": 1}))
    if isinstance(dom, PointDomain) and dom.coords.get("v0") != 1:
        raise ValueError("point domain does not sit at v0 = 1")
    return h


def random_element(ctx: AlgebraContext, rng, nterms: int = 3,
                   coeffs: Callable | None = None) -> HeckeElement:
    """A random sparse element (for property tests); coefficients default to
    small integers."""
    out = ctx.zero()
    for _ in range(nterms):
        w = random_group_element(ctx.cox, rng)
        c = ctx.domain.from_fraction(rng.randint(-3, 3)) if coeffs is None else coeffs()
        out = out + ctx.t(w).scale(c)
    return out


def random_group_element(cox: CoxeterContext, rng) -> GroupElement:
    values = list(range(1, cox.npoints + 1))
    rng.shuffle(values)
    if cox.family == "A":
        return cox.element(values)
    signs = [rng.choice((1, -1)) for _ in values]
    if cox.family == "D" and sum(1 for s in signs if s < 0) % 2:
        signs[0] = -signs[0]
    return cox.element([s * x for s, x in zip(signs, values)])

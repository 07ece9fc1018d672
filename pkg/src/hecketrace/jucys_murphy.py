"""Full twists, Jucys-Murphy elements, and the central element families.

The full twist of a finite Hecke algebra is S = t_{w0}^-2 (w0 the longest
element); it is central, and multiplication by it enjoys the adjunction

    <h1, S h2> = bar(<h2, h1>).

The Jucys-Murphy element at level i is J_i = S(X_i)^-1 S(X_{i-1}), computed
in the level-i algebra and embedded upward.  The degenerate levels make the
base cases come out of the same formula: J_1 = 1 in type A (level-1 group is
trivial), J_1 = t_0^2 in type B (w0 = s_0), and J_1 = J_2-with-trivial-floor
in type D, whose level-1 parabolic is trivial in the signed-permutation
realization.  Consequently prod_{i<=n} J_i = S^-1 telescopes on the nose.

In types B and D the J_i are squares of explicit basis elements:

    j^B_i = t_{i-1} ... t_1 t_0 t_1 ... t_{i-1},
    j^D_i = t_{i-1} ... t_2 t_{1'} t_1 t_2 ... t_{i-1}   (j^D_1 = 1).

Central families represented here (products over i = 1..n):

    zeta_n  = prod (1 + a^-1 J_i)                          (types A, B, D)
    beta_n  = prod (1 + (yb + alpha0) j^B_i + a^-1 J^B_i)  (type B)
    delta_n = even part of prod (1 + yb j^D_i + a^-1 (j^D_i)^2),

the even part taken via the +/- averaging over the sign of the j's, which is
legitimate because the j's commute.  Each family also has a direct
construction of its evaluation kernel i(bar(z)) (inverses replacing the
generators-level ingredients), cross-checked against the generic involutions
at low rank by the test suite; trace evaluation uses the kernel.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .coxeter import GroupElement
from .hecke import AlgebraContext, HeckeElement, algebra
from .points import ScalarDomain

SymPoly = dict[tuple[int, ...], object]  # exponent tuple -> coefficient


def _cache(H: AlgebraContext) -> dict:
    if not hasattr(H, "cached"):
        H.cached = {}
    return H.cached


def tower_context(H: AlgebraContext, level: int) -> AlgebraContext:
    """The level algebra of the same type/mode, sharing H's domain."""
    if level == H.rank:
        return H
    key = ("tower", level)
    cache = _cache(H)
    if key not in cache:
        if isinstance(H.domain, ScalarDomain):
            cache[key] = algebra(H.family, level, H.unequal, H.domain)
        else:
            from .coxeter import coxeter_context
            cache[key] = AlgebraContext(coxeter_context(H.family, level), H.unequal, H.domain)
    return cache[key]


def full_twist(H: AlgebraContext) -> HeckeElement:
    """S = t_{w0}^-2 (the ground ring unit at rank 0)."""
    cache = _cache(H)
    if "full_twist" not in cache:
        w0 = H.cox.longest_element()
        cache["full_twist"] = H.one.right_basis_inv(w0).right_basis_inv(w0)
    return cache["full_twist"]


def full_twist_inverse(H: AlgebraContext) -> HeckeElement:
    """S^-1 = t_{w0}^2."""
    cache = _cache(H)
    if "full_twist_inverse" not in cache:
        w0 = H.cox.longest_element()
        cache["full_twist_inverse"] = H.one.right_basis(w0).right_basis(w0)
    return cache["full_twist_inverse"]


def serre_check(h1: HeckeElement, h2: HeckeElement) -> bool:
    """Does <h1, S h2> = bar(<h2, h1>) hold exactly for this pair?"""
    if h2.ctx is not h1.ctx:
        raise ValueError("elements from different algebra contexts")
    S = full_twist(h1.ctx)
    lhs = (h1.bar().anti() * (S * h2)).tau()
    rhs = (h2.bar().anti() * h1).tau().bar()
    return lhs == rhs


def jm_J(H: AlgebraContext, i: int) -> HeckeElement:
    """The level-i Jucys-Murphy element, embedded into H.

    Built by pure generator sweeps, J_i = t_{w0(i)}^2 (t_{w0(i-1)})^-2,
    which keeps every intermediate coefficient small.
    """
    if not 1 <= i <= H.rank:
        raise ValueError(f"level {i} out of range for rank {H.rank}")
    cache = _cache(H)
    key = ("J", i)
    if key not in cache:
        Hi = tower_context(H, i)
        hi = Hi.cox.longest_element()
        lo_word = tower_context(H, i - 1).cox.longest_element().reduced_word()
        out = Hi.one.right_basis(hi).right_basis(hi)
        out = out.right_word_inv(lo_word).right_word_inv(lo_word)
        cache[key] = out.embed(H)
    return cache[key]


def jm_J_inverse(H: AlgebraContext, i: int) -> HeckeElement:
    """J_i^-1 = S(X_i) S(X_{i-1})^-1 (the factors are central at level i)."""
    cache = _cache(H)
    key = ("Jinv", i)
    if key not in cache:
        Hi = tower_context(H, i)
        hi = Hi.cox.longest_element()
        lo_word = tower_context(H, i - 1).cox.longest_element().reduced_word()
        out = Hi.one.right_word(lo_word).right_word(lo_word)
        out = out.right_basis_inv(hi).right_basis_inv(hi)
        cache[key] = out.embed(H)
    return cache[key]


def jm_word(H: AlgebraContext, i: int) -> tuple[int, ...]:
    if H.family == "B":
        return tuple(range(i - 1, 0, -1)) + (0,) + tuple(range(1, i))
    if H.family == "D":
        if i == 1:
            return ()
        return tuple(range(i - 1, 1, -1)) + (0, 1) + tuple(range(2, i))
    raise ValueError("j-elements exist in types B and D only")


def jm_j(H: AlgebraContext, i: int) -> HeckeElement:
    """The square root j_i of J_i in types B/D: a single basis element."""
    if not 1 <= i <= H.rank:
        raise ValueError(f"level {i} out of range for rank {H.rank}")
    word = jm_word(H, i)
    w = H.cox.from_word(word)
    if w.length() != len(word):
        raise AssertionError("j-word is not reduced")
    return H.t(w)


def jm_j_element(H: AlgebraContext, i: int) -> GroupElement:
    return H.cox.from_word(jm_word(H, i))


def affine_relation_check(H: AlgebraContext) -> bool:
    """On the image t_0: t_1 t_0 t_1 t_0 = t_0 t_1 t_0 t_1, and t_i t_0 =
    t_0 t_i for i > 1."""
    if H.family != "B":
        raise ValueError("the image relations live in type B")
    if H.t_word((1, 0, 1, 0)) != H.t_word((0, 1, 0, 1)):
        return False
    return all(H.t_word((i, 0)) == H.t_word((0, i)) for i in H.cox.generators if i > 1)


# ---------------------------------------------------------------------------
# central families and their evaluation kernels

def zeta(H: AlgebraContext) -> HeckeElement:
    """prod_{i<=rank} (1 + a^-1 J_i); the empty product at rank 0."""
    cache = _cache(H)
    if "zeta" not in cache:
        a_inv = H.domain.gen("a").inv()
        out = H.one
        for i in range(1, H.rank + 1):
            out = out * (H.one + jm_J(H, i).scale(a_inv))
        cache["zeta"] = out
    return cache["zeta"]


def zeta_kernel(H: AlgebraContext) -> HeckeElement:
    """i(bar(zeta)) = prod (1 + a J_i^-1).

    i after bar is an anti-homomorphism, so the factors come out in
    descending order; that is also the cheap association (each right factor
    lives at a lower level of the tower).
    """
    cache = _cache(H)
    if "zeta_kernel" not in cache:
        a = H.domain.gen("a")
        out = H.one
        for i in range(H.rank, 0, -1):
            out = out * (H.one + jm_J_inverse(H, i).scale(a))
        cache["zeta_kernel"] = out
    return cache["zeta_kernel"]


def beta(H: AlgebraContext) -> HeckeElement:
    """prod (1 + (yb + alpha0) j^B_i + a^-1 J^B_i)."""
    if H.family != "B":
        raise ValueError("beta lives in type B")
    cache = _cache(H)
    if "beta" not in cache:
        a_inv = H.domain.gen("a").inv()
        yb0 = H.domain.gen("yb") + H.alpha_of(0)
        out = H.one
        for i in range(1, H.rank + 1):
            factor = H.one + jm_j(H, i).scale(yb0) + jm_J(H, i).scale(a_inv)
            out = out * factor
        cache["beta"] = out
    return cache["beta"]


def beta_kernel(H: AlgebraContext) -> HeckeElement:
    """i(bar(beta)) = prod (1 + (y - alpha0) j_i^-1 + a J_i^-1)."""
    if H.family != "B":
        raise ValueError("beta lives in type B")
    cache = _cache(H)
    if "beta_kernel" not in cache:
        a = H.domain.gen("a")
        y0 = H.domain.gen("y") - H.alpha_of(0)
        out = H.one
        for i in range(H.rank, 0, -1):  # anti-homomorphism order
            j_inv = H.basis_inverse(jm_j_element(H, i))
            factor = H.one + j_inv.scale(y0) + jm_J_inverse(H, i).scale(a)
            out = out * factor
        cache["beta_kernel"] = out
    return cache["beta_kernel"]


def delta(H: AlgebraContext) -> HeckeElement:
    """The even part of prod (1 + yb j^D_i + a^-1 (j^D_i)^2), via the +/-
    averaging over the signs of the (commuting) j's."""
    if H.family != "D":
        raise ValueError("delta lives in type D")
    cache = _cache(H)
    if "delta" not in cache:
        a_inv = H.domain.gen("a").inv()
        yb = H.domain.gen("yb")
        plus = H.one
        minus = H.one
        for i in range(1, H.rank + 1):
            j = jm_j(H, i)
            quad = H.one + jm_J(H, i).scale(a_inv)
            plus = plus * (quad + j.scale(yb))
            minus = minus * (quad - j.scale(yb))
        half = H.domain.from_fraction(1) / H.domain.from_fraction(2)
        cache["delta"] = (plus + minus).scale(half)
    return cache["delta"]


def delta_kernel(H: AlgebraContext) -> HeckeElement:
    """i(bar(delta)): the same averaging with y j_i^-1 and a J_i^-1."""
    if H.family != "D":
        raise ValueError("delta lives in type D")
    cache = _cache(H)
    if "delta_kernel" not in cache:
        a = H.domain.gen("a")
        y = H.domain.gen("y")
        plus = H.one
        minus = H.one
        for i in range(H.rank, 0, -1):  # anti-homomorphism order
            j_inv = H.basis_inverse(jm_j_element(H, i))
            quad = H.one + jm_J_inverse(H, i).scale(a)
            plus = plus * (quad + j_inv.scale(y))
            minus = minus * (quad - j_inv.scale(y))
        half = H.domain.from_fraction(1) / H.domain.from_fraction(2)
        cache["delta_kernel"] = (plus + minus).scale(half)
    return cache["delta_kernel"]


# ---------------------------------------------------------------------------
# the special elements of the one-parameter trace theory

def T_element(H: AlgebraContext, n: int | None = None) -> HeckeElement:
    """T_n = t_{n-1} ... t_1 t_0 t_1^-1 ... t_{n-1}^-1 in type B (T_1 = t_0).

    Being a conjugate of t_0, it satisfies T_n^-1 = T_n - alpha0.
    """
    if H.family != "B":
        raise ValueError("T_n lives in type B")
    n = H.rank if n is None else n
    if not 1 <= n <= H.rank:
        raise ValueError(f"T_{n} out of range for rank {H.rank}")
    head = H.t_word(tuple(range(n - 1, 0, -1)) + (0,))
    return head.right_word_inv(tuple(range(n - 1, 0, -1)))


def U_element(H: AlgebraContext, n: int | None = None) -> HeckeElement:
    """U_n = t_{n-1} ... t_2 t_1 t_{1'}^-1 t_2^-1 ... t_{n-1}^-1 in type D
    (U_1 = 1).

    The prime sits on the inverted middle letter: this is the reading pinned
    down by the identity iota_{D->B}(U_n) = T_n t_0 at v0 = 1, which fails
    for the transposed variant t_{1'} t_1^-1 already at rank 2, and it
    matches U_1 U_2 = t_1 t_{1'}^-1.
    """
    if H.family != "D":
        raise ValueError("U_n lives in type D")
    n = H.rank if n is None else n
    if not 1 <= n <= H.rank:
        raise ValueError(f"U_{n} out of range for rank {H.rank}")
    if n == 1:
        return H.one
    head = H.t_word(tuple(range(n - 1, 1, -1)) + (1,))
    return head.right_word_inv(tuple(range(n - 1, 1, -1)) + (0,))


# ---------------------------------------------------------------------------
# symmetric polynomials in commuting elements

def sym_poly_eval(poly: SymPoly, elements: Sequence[HeckeElement],
                  check_commuting: bool = True) -> HeckeElement:
    """Evaluate a polynomial (exponent tuple -> coefficient) at commuting
    algebra elements; raises if the inputs fail to commute pairwise."""
    if not elements:
        raise ValueError("need at least one element")
    H = elements[0].ctx
    if check_commuting:
        for i in range(len(elements)):
            for k in range(i + 1, len(elements)):
                if elements[i] * elements[k] != elements[k] * elements[i]:
                    raise ValueError(f"elements {i} and {k} do not commute")
    powers: list[dict[int, HeckeElement]] = [{0: H.one, 1: el} for el in elements]
    out = H.zero()
    for exps, coeff in poly.items():
        if len(exps) != len(elements):
            raise ValueError("exponent arity does not match the element count")
        term = H.one
        for i, e in enumerate(exps):
            cache = powers[i]
            if e not in cache:
                cache[e] = cache[1] ** e
            if e:
                term = term * cache[e]
        out = out + term.scale(coeff)
    return out


def elementary_poly(k: int, n: int, ring_one) -> SymPoly:
    """e_k in n variables; coefficients equal to the supplied unit."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    out: SymPoly = {}
    from itertools import combinations
    for combo in combinations(range(n), k):
        exps = [0] * n
        for i in combo:
            exps[i] = 1
        out[tuple(exps)] = ring_one
    return out


def _sympoly_mul(p: SymPoly, q: SymPoly) -> SymPoly:
    out: SymPoly = {}
    for ep, cp in p.items():
        for eq, cq in q.items():
            exp = tuple(x + y for x, y in zip(ep, eq))
            c = cp * cq
            if exp in out:
                c = out[exp] + c
            if c:
                out[exp] = c
            elif exp in out:
                del out[exp]
    return out


def e_prime_from_product(k: int, n: int, domain) -> SymPoly:
    """The total-degree-2k part of prod_i (1 + alpha x_i - x_i^2)."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    one = domain.one
    v = domain.gen("v")
    al = v - v.inv()
    prod: SymPoly = {(0,) * n: one}
    for i in range(n):
        factor: SymPoly = {}
        exp0 = [0] * n
        factor[tuple(exp0)] = one
        exp1 = list(exp0)
        exp1[i] = 1
        factor[tuple(exp1)] = al
        exp2 = list(exp0)
        exp2[i] = 2
        factor[tuple(exp2)] = -one
        prod = _sympoly_mul(prod, factor)
    return {exps: c for exps, c in prod.items() if sum(exps) == 2 * k}


def e_prime_from_sum(k: int, n: int, domain) -> SymPoly:
    """The explicit expansion: sum over i + j = 2k of (-1)^i v^(j-i) e_i e_j."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    one = domain.one
    v = domain.gen("v")
    total: SymPoly = {}
    for i in range(0, 2 * k + 1):
        j = 2 * k - i
        if i > n or j > n:
            continue
        coeff = (v ** (j - i)) * (one if i % 2 == 0 else -one)
        term = _sympoly_mul(elementary_poly(i, n, one), elementary_poly(j, n, one))
        scaled = {exps: c * coeff for exps, c in term.items()}
        for exps, c in scaled.items():
            if exps in total:
                c = total[exps] + c
            if c:
                total[exps] = c
            elif exps in total:
                del total[exps]
    return total

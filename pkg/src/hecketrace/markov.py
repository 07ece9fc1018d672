"""Trace functionals represented by central elements, and their verifiers.

A functional phi is represented by a central element z through the pairing,
phi(h) = <z, h>; centrality of z is exactly the trace property (M1).  The
families implemented here:

    zeta (types A, B, D)  -- the uniform tower,
    beta (type B)         -- one free parameter y,
    delta (type D)        -- restriction of beta along D -> B at v0 = 1,

all with tower constants rho = 1 + a (circle removal) and mu = v - v^-1
(stabilization).  Evaluation goes through the cached kernel K = i(bar(z)):
phi(h) = tau(K h), and batch evaluation over a parabolic's basis walks the
reduced-word trie once per rank (see hecke.tau_row).

The verifier checks, per rank n:

    (M1)  z_n is central (plus spot checks of phi(h h') = phi(h' h)),
    (U1)  phi_n(iota(h)) = rho phi_{n-1}(h),
    (M2)  phi_n(iota(h) t_top) = mu phi_{n-1}(h),

exhaustively over the smaller algebra's basis in exact mode, or at random
prime-field points on sampled basis elements in randomized ("zip") mode,
plus the rescaling closure: lambda1 lambda2^n phi_n is again a Markov trace
with constants lambda2 rho, lambda2 mu (checked at fixed nontrivial scalar
instances since the coefficient ring is frozen at five generators).

Geometric traces: in type B (equal parameters) tr_n = tr_{zeta_n} takes
values in polynomials in a of degree <= n, and the a^k coefficient is
represented by e_k(J_1, ..., J_n).  In type D the specialization lives in
the square-root ring (y -> s alpha with s^2 = -a), and the a^k coefficient
is (-1)^k <e'_k(j_1, ..., j_n; alpha), h> with e'_k the degree-2k part of
prod (1 + alpha x_i - x_i^2); both routes are computed and compared.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .coxeter import GroupElement, coxeter_context
from .hecke import (
    AlgebraContext, HeckeElement, algebra, embed_D_to_B, random_element,
    random_group_element, specialize_v0_one, tau_row,
)
from .jucys_murphy import (
    T_element, U_element, beta, beta_kernel, delta, delta_kernel,
    e_prime_from_product, e_prime_from_sum, elementary_poly, full_twist,
    full_twist_inverse, jm_J, jm_J_inverse, jm_j, serre_check, sym_poly_eval,
    zeta, zeta_kernel,
)
from .points import DEFAULT_TRIALS, EXACT, PointDomain, ScalarDomain, sample_point
from .scalars import BASE_RING, SQRT_RING, Scalar, alpha, to_sqrt_ring

FAMILIES = ("zeta", "beta", "delta")


# ---------------------------------------------------------------------------
# reports

@dataclass
class CheckRecord:
    suite: str
    axiom: str
    family: str
    algebra_type: str
    rank: int
    mode: str
    status: str
    witness: dict | None = None

    def line(self) -> str:
        rec = {k: v for k, v in self.__dict__.items() if v is not None}
        return json.dumps(rec, sort_keys=True)


@dataclass
class VerificationReport:
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status == "pass" for r in self.records)

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if r.status != "pass"]

    def add(self, suite, axiom, family, algebra_type, rank, mode, ok, witness=None):
        self.records.append(CheckRecord(
            suite, axiom, family, algebra_type, rank, mode,
            "pass" if ok else "fail", None if ok else witness))

    def extend(self, other: "VerificationReport"):
        self.records.extend(other.records)

    def to_jsonl(self) -> str:
        return "\n".join(r.line() for r in self.records)


def _witness(element=None, lhs=None, rhs=None, **extra) -> dict:
    out = dict(extra)
    if element is not None:
        out["element"] = str(element)
    if lhs is not None:
        out["lhs"] = str(lhs)
    if rhs is not None:
        out["rhs"] = str(rhs)
    return out


# ---------------------------------------------------------------------------
# trace functionals

_BUILDERS = {
    "zeta": (zeta, zeta_kernel),
    "beta": (beta, beta_kernel),
    "delta": (delta, delta_kernel),
}


class TraceFunctional:
    """A functional h -> <z, h> with z central; evaluation via the kernel."""

    def __init__(self, family: str, H: AlgebraContext,
                 z: HeckeElement, kernel: HeckeElement):
        self.family = family
        self.H = H
        self.z = z
        self.kernel = kernel
        dom = H.domain
        v = dom.gen("v")
        self.rho = dom.one + dom.gen("a")
        self.mu = v - v.inv()

    @staticmethod
    def build(family: str, H: AlgebraContext) -> "TraceFunctional":
        if family not in _BUILDERS:
            raise ValueError(f"unknown trace family {family!r}")
        if family == "beta" and H.family != "B":
            raise ValueError("beta requires type B")
        if family == "delta" and H.family != "D":
            raise ValueError("delta requires type D")
        build, build_kernel = _BUILDERS[family]
        return TraceFunctional(family, H, build(H), build_kernel(H))

    def tr(self, h: HeckeElement):
        """phi(h) = tau(kernel * h)."""
        if h.ctx is not self.H:
            raise ValueError("element from a different algebra context")
        return (self.kernel * h).tau()

    def row(self, targets: Iterable[GroupElement] | None = None) -> dict:
        """phi(t_w) for each target, sharing word prefixes."""
        return tau_row(self.kernel, targets)

    def is_trace(self) -> bool:
        return self.z.is_central()


def trace_functional(family: str, algebra_type: str, rank: int,
                     unequal: bool = False, domain=None) -> TraceFunctional:
    return TraceFunctional.build(family, algebra(algebra_type, rank, unequal, domain))


# ---------------------------------------------------------------------------
# the Markov axiom verifier

def _axiom_ranks(family: str, algebra_type: str, ranks: Sequence[int]) -> list[int]:
    """(U1)/(M2) relate ranks n and n-1; the delta tower starts at rank 2."""
    floor = 3 if family == "delta" else 2
    return [n for n in ranks if n >= floor]


def verify_markov(family: str, algebra_type: str, ranks: Sequence[int],
                  mode: str = "exact", seed: int = 0,
                  trials: int = DEFAULT_TRIALS, samples: int = 5,
                  unequal: bool | None = None) -> VerificationReport:
    """Check (M1), (U1), (M2) and the rescaling closure for one family."""
    report = VerificationReport()
    suite = f"markov-{family}"
    if unequal is None:
        unequal = family == "beta"
    if mode == "exact":
        for n in _axiom_ranks(family, algebra_type, ranks):
            _markov_at_rank(report, suite, family, algebra_type, n, unequal,
                            EXACT, "exact", None, seed)
    elif mode == "zip":
        rng = random.Random(seed)
        for trial in range(trials):
            dom = sample_point(rng, BASE_RING, trial=trial)
            for n in _axiom_ranks(family, algebra_type, ranks):
                _markov_at_rank(report, suite, family, algebra_type, n, unequal,
                                dom, "zip", samples, seed + trial)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return report


def _markov_at_rank(report, suite, family, algebra_type, n, unequal,
                    dom, mode, samples, seed):
    big = algebra(algebra_type, n, unequal, dom)
    small = algebra(algebra_type, n - 1, unequal, dom)
    phi_n = TraceFunctional.build(family, big)
    phi_m = TraceFunctional.build(family, small)
    top = max(big.cox.generators)
    meta = dict(prime=dom.prime, point=dom.coords) if isinstance(dom, PointDomain) else {}

    # (M1): centrality of the representing element, plus trace spot checks
    report.add(suite, "M1", family, algebra_type, n, mode, phi_n.is_trace(),
               _witness(element=phi_n.z, **meta))
    rng = random.Random(seed * 7919 + n)
    for _ in range(3):
        h1 = random_element(big, rng, nterms=2)
        h2 = random_element(big, rng, nterms=2)
        ok = phi_n.tr(h1 * h2) == phi_n.tr(h2 * h1)
        report.add(suite, "M1-trace", family, algebra_type, n, mode, ok,
                   _witness(element=h1, lhs=phi_n.tr(h1 * h2), rhs=phi_n.tr(h2 * h1), **meta))
        if not ok:
            break

    # probe set: the whole smaller basis (exact) or a sample (randomized)
    if samples is None:
        probes = small.cox.elements()
    else:
        probes = [random_group_element(small.cox, rng) for _ in range(samples)]
    emb = {u: big.cox.element(u.window + tuple(range(small.rank + 1, big.rank + 1)))
           for u in probes}
    iota_targets = list(emb.values())
    top_targets = {u: big.cox.canonical(emb[u].right(top)) for u in probes}
    row_small = phi_m.row(probes if samples is not None else None)
    row_iota = tau_row(phi_n.kernel, iota_targets)
    row_top = tau_row(phi_n.kernel, list(top_targets.values()))

    rho, mu = phi_n.rho, phi_n.mu
    u1_ok = m2_ok = True
    u1_wit = m2_wit = None
    for u in probes:
        lhs = row_iota[emb[u]]
        rhs = rho * row_small[u]
        if lhs != rhs and u1_ok:
            u1_ok, u1_wit = False, _witness(element=small.t(u), lhs=lhs, rhs=rhs, **meta)
        lhs2 = row_top[top_targets[u]]
        rhs2 = mu * row_small[u]
        if lhs2 != rhs2 and m2_ok:
            m2_ok, m2_wit = False, _witness(element=small.t(u), lhs=lhs2, rhs=rhs2, **meta)
    report.add(suite, "U1", family, algebra_type, n, mode, u1_ok, u1_wit)
    report.add(suite, "M2", family, algebra_type, n, mode, m2_ok, m2_wit)

    # rescaling closure at fixed nonzero scalar instances
    dom_ = big.domain
    lam1 = dom_.gen("v") + dom_.from_fraction(2)
    lam2 = dom_.gen("a") + dom_.from_fraction(3)
    ok = True
    wit = None
    for u in probes[: 4 if samples is None else len(probes)]:
        scaled_n = lam1 * lam2 ** n * row_iota[emb[u]]
        scaled_m = lam1 * lam2 ** (n - 1) * row_small[u]
        if scaled_n != (lam2 * rho) * scaled_m:
            ok, wit = False, _witness(element=small.t(u), **meta)
            break
        scaled_top = lam1 * lam2 ** n * row_top[top_targets[u]]
        if scaled_top != (lam2 * mu) * scaled_m:
            ok, wit = False, _witness(element=small.t(u), **meta)
            break
    report.add(suite, "rescaling", family, algebra_type, n, mode, ok, wit)


# ---------------------------------------------------------------------------
# the one-parameter tower properties

def verify_T_property(ranks: Sequence[int], mode: str = "exact",
                      seed: int = 0) -> VerificationReport:
    """tr_{beta_n}(iota(h) T_n) = y tr_{beta_{n-1}}(h), exhaustive over the
    smaller basis, plus tr_{beta_n}(T_1 ... T_n) = y^n."""
    report = VerificationReport()
    for n in ranks:
        if n < 1:
            continue
        big = algebra("B", n, unequal=True)
        phi_n = TraceFunctional.build("beta", big)
        y = big.domain.gen("y")
        if n >= 1:
            # product value T_1 T_2 ... T_n
            prod = big.one
            for k in range(1, n + 1):
                prod = _apply_T(prod, k)
            ok = phi_n.tr(prod) == y ** n
            report.add("property-B", "T-product", "beta", "B", n, mode, ok,
                       _witness(lhs=phi_n.tr(prod), rhs=y ** n))
        if n < 2:
            continue
        small = algebra("B", n - 1, unequal=True)
        phi_m = TraceFunctional.build("beta", small)
        row_small = phi_m.row()
        ok = True
        wit = None
        for u in small.cox.elements():
            hu = small.t(u).embed(big)
            lhs = (_apply_T(phi_n.kernel * hu, n)).tau()
            rhs = y * row_small[u]
            if lhs != rhs:
                ok, wit = False, _witness(element=small.t(u), lhs=lhs, rhs=rhs)
                break
        report.add("property-B", "T-recursion", "beta", "B", n, mode, ok, wit)
    return report


def _apply_T(h: HeckeElement, n: int) -> HeckeElement:
    """Right-multiply by T_n via generator sweeps."""
    if n == 1:
        return h.right_gen(0)
    return (h.right_word(tuple(range(n - 1, 0, -1)) + (0,))
            .right_word_inv(tuple(range(n - 1, 0, -1))))


def _apply_U(h: HeckeElement, n: int) -> HeckeElement:
    """Right-multiply by U_n via generator sweeps."""
    if n == 1:
        return h
    return (h.right_word(tuple(range(n - 1, 1, -1)) + (1,))
            .right_word_inv(tuple(range(n - 1, 1, -1)) + (0,)))


def verify_U_property(even_ranks: Sequence[int], mode: str = "exact",
                      seed: int = 0) -> VerificationReport:
    """tr^D_{2m}(iota^2(h) U_{2m-1} U_{2m}) = y^2 tr^D_{2m-2}(h), exhaustive
    over the rank-(2m-2) basis (h = 1 at 2m = 2), plus the restriction
    identity against beta at v0 = 1."""
    report = VerificationReport()
    for n in even_ranks:
        if n < 2 or n % 2:
            raise ValueError("U-property ranks must be even and >= 2")
        big = algebra("D", n)
        phi_n = TraceFunctional.build("delta", big)
        y = big.domain.gen("y")
        small = algebra("D", n - 2)
        phi_m = TraceFunctional.build("delta", small)
        row_small = phi_m.row()
        ok = True
        wit = None
        for u in small.cox.elements():
            hu = small.t(u).embed(big)
            lhs = _apply_U(_apply_U(phi_n.kernel * hu, n - 1), n).tau()
            rhs = y * y * row_small[u]
            if lhs != rhs:
                ok, wit = False, _witness(element=small.t(u), lhs=lhs, rhs=rhs)
                break
        report.add("property-D", "U-recursion", "delta", "D", n, mode, ok, wit)
    return report


def verify_restriction(ranks: Sequence[int], mode: str = "exact") -> VerificationReport:
    """tr_{delta_n}(h) = <beta_n at v0 = 1, embed_D_to_B(h)> on every basis
    element."""
    report = VerificationReport()
    for n in ranks:
        D = algebra("D", n)
        B = algebra("B", n, unequal=True)
        phi_d = TraceFunctional.build("delta", D)
        phi_b = TraceFunctional.build("beta", B)
        row_d = phi_d.row()
        row_b = phi_b.row()
        ok = True
        wit = None
        for w in D.cox.elements():
            img = embed_D_to_B(D.t(w), B)
            value = B.domain.zero
            for u, c in img.terms.items():
                value = value + c * row_b[u]
            value = value.specialize({"v0": 1}) if isinstance(value, Scalar) else value
            if value != row_d[w]:
                ok, wit = False, _witness(element=D.t(w), lhs=value, rhs=row_d[w])
                break
        report.add("property-D", "restriction", "delta", "D", n, mode, ok, wit)
    return report


# ---------------------------------------------------------------------------
# geometric traces

def geometric_trace_B(n: int, h: HeckeElement) -> dict[int, Scalar]:
    """tr_{zeta_n}(h) in equal-parameter type B, split by powers of a.

    The value must be a polynomial in a of degree at most n; returns
    {k: coefficient}, each coefficient free of a.
    """
    H = algebra("B", n)
    if h.ctx is not H:
        raise ValueError("element must live in equal-parameter B_n")
    value = TraceFunctional.build("zeta", H).tr(h)
    if not value.is_polynomial():
        raise AssertionError(f"geometric trace value is not polynomial: {value}")
    coeffs = value.coefficients_of("a")
    if any(k < 0 or k > n for k in coeffs):
        raise AssertionError("geometric trace has a-degree outside [0, n]")
    return coeffs


def geometric_coeff_B(n: int, k: int, h: HeckeElement) -> Scalar:
    """<e_k(J_1, ..., J_n), h>: the representing element of the a^k part."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    H = algebra("B", n)
    kernel = _ek_J_kernel(H, k)
    return (kernel * h).tau()


def _ek_J_kernel(H: AlgebraContext, k: int) -> HeckeElement:
    """i(bar(e_k(J_.))) = e_k(J_.^-1): e_k has integer coefficients and the
    J's commute, so only the J's themselves get dualized."""
    cache = H.cached if hasattr(H, "cached") else None
    key = ("ekJ_kernel", k)
    if cache is not None and key in cache:
        return cache[key]
    inv = [jm_J_inverse(H, i) for i in range(1, H.rank + 1)]
    out = sym_poly_eval(elementary_poly(k, H.rank, H.domain.one), inv,
                        check_commuting=False)
    if cache is not None:
        cache[key] = out
    return out


def geometric_trace_D(n: int, h: HeckeElement) -> dict[int, Scalar]:
    """tr_{delta_n}(h) at the geometric point y -> s alpha (so yb ->
    -alpha s^-1 and y^2 = -alpha^2 a), split by powers of a.

    The specialized value lives in the square-root ring with even powers of
    s only; s^{2k} carries the a^k coefficient via a = -s^2.
    """
    H = algebra("D", n)
    if h.ctx is not H:
        raise ValueError("element must live in D_n")
    value = TraceFunctional.build("delta", H).tr(h)
    s = SQRT_RING.gen("s")
    al = alpha(SQRT_RING)
    geo = value.specialize(
        {"y": s * al, "yb": -(al * s ** -1), "a": -(s * s)}, ring=SQRT_RING)
    if not geo.is_polynomial():
        raise AssertionError(f"geometric trace value is not polynomial: {geo}")
    out: dict[int, Scalar] = {}
    for e, c in geo.coefficients_of("s").items():
        if e % 2:
            raise AssertionError("odd power of s in a geometric trace value")
        k = e // 2
        if not 0 <= k <= n:
            raise AssertionError("geometric trace has a-degree outside [0, n]")
        out[k] = c if k % 2 == 0 else -c  # a^k = (-1)^k s^{2k}
    return out


def geometric_coeff_D(n: int, k: int, h: HeckeElement) -> Scalar:
    """(-1)^k <e'_k(j_1, ..., j_n; alpha), h>, computed in the base ring and
    lifted to the square-root ring for comparison with the specialization."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    H = algebra("D", n)
    cache = H.cached if hasattr(H, "cached") else None
    ck = ("eprime_kernel", k)
    if cache is not None and ck in cache:
        kernel = cache[ck]
    else:
        js = [jm_j(H, i) for i in range(1, n + 1)]
        E = sym_poly_eval(e_prime_from_product(k, n, H.domain), js, check_commuting=False)
        kernel = E.bar().anti()
        if cache is not None:
            cache[ck] = kernel
    value = (kernel * h).tau()
    signed = value if k % 2 == 0 else -value
    return to_sqrt_ring(signed) if isinstance(signed, Scalar) else signed


# ---------------------------------------------------------------------------
# suite entry points (shared by the CLI and the acceptance tests)

def suite_pairing(algebra_type: str, rank: int, mode: str = "exact",
                  seed: int = 0, samples: int = 200) -> VerificationReport:
    """Orthogonality <t_w1, t_w2^-1> = [w1 = w2^-1], exhaustively in exact
    mode, sampled in randomized mode."""
    report = VerificationReport()
    dom = EXACT if mode == "exact" else sample_point(random.Random(seed), BASE_RING)
    H = algebra(algebra_type, rank, domain=dom)
    elements = H.cox.elements()
    pairs: Iterable
    if mode == "exact":
        pairs = ((w1, w2) for w1 in elements for w2 in elements)
    else:
        rng = random.Random(seed)
        pairs = ((rng.choice(elements), rng.choice(elements)) for _ in range(samples))
    ok = True
    wit = None
    for w1, w2 in pairs:
        value = H.t(w1).bar().anti().right_basis_inv(w2).tau()
        expected = H.domain.one if w1 == w2.inv() else H.domain.zero
        if value != expected:
            ok, wit = False, _witness(element=f"{w1!r},{w2!r}", lhs=value, rhs=expected)
            break
    report.add("pairing", "orthogonality", "-", algebra_type, rank, mode, ok, wit)
    return report


def suite_serre(algebra_type: str, rank: int, mode: str = "exact",
                seed: int = 0, samples: int = 200) -> VerificationReport:
    """<h1, S h2> = bar(<h2, h1>) on random basis pairs (grouped by h1 so
    each left kernel is swept once)."""
    report = VerificationReport()
    dom = EXACT if mode == "exact" else sample_point(random.Random(seed), BASE_RING)
    H = algebra(algebra_type, rank, domain=dom)
    rng = random.Random(seed)
    elements = H.cox.elements()
    S = full_twist(H)
    ok = True
    wit = None
    groups = max(1, samples // 10)
    for _ in range(groups):
        w1 = rng.choice(elements)
        X = H.basis_inverse(w1) * S  # i(bar(t_w1)) = t_w1^-1
        for _ in range(10):
            w2 = rng.choice(elements)
            lhs = X.right_basis(w2).tau()
            rhs = (H.basis_inverse(w2) * H.t(w1)).tau().bar()
            if lhs != rhs:
                ok, wit = False, _witness(element=f"{w1!r},{w2!r}", lhs=lhs, rhs=rhs)
                break
        if not ok:
            break
    report.add("serre", "adjunction", "-", algebra_type, rank, mode, ok, wit)
    return report

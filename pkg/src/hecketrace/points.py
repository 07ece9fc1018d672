"""Randomized identity testing via evaluation at random points.

Exact computations in this library carry ``Scalar`` coefficients.  The
randomized mode replaces them with ``PointValue`` coefficients: the whole
computation is evaluated at a random point of a large prime field, which
keeps every coefficient machine-word sized no matter how deep the algebra
products get.

A point value is a *pair* (f, b): the evaluation of the symbolic quantity at
the chosen point and at its bar-image (v, v0, a inverted; y and yb values
swapped).  The pair map is a ring homomorphism commuting with the bar
involution -- ``bar`` on pairs is just the component swap -- so any identity
mixing arithmetic and bar can be tested pointwise.

Error bound (never asserted, sized here): a nonzero Laurent polynomial of
total degree at most D vanishes at a uniform point of GF(p) with probability
at most D/p.  The identities exercised at rank <= 5 stay below D = 2^11,
and p ~ 2^61, so one trial fails with probability < 2^-50.  Independent
trials use distinct primes and fresh points; three trials are the default,
far below the 2^-30 target.  (Evaluating over GF(p) rather than Q adds the
event that every integer coefficient of the exact difference is divisible by
the product of the trial primes ~ 2^183; coefficient magnitudes in these
computations stay far below that.)
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Mapping

from .scalars import BASE_RING, SQRT_RING, Ring, Scalar, unpack_exponents

TRIAL_PRIMES = (2305843009213693967, 2305843009513694029, 2305843709213693953)
DEFAULT_TRIALS = 3


class PointValue:
    """A pair of GF(p) evaluations (at a point and at its bar-image)."""

    __slots__ = ("dom", "f", "b")

    def __init__(self, dom: "PointDomain", f: int, b: int):
        self.dom = dom
        self.f = f
        self.b = b

    def _coerce(self, other):
        if isinstance(other, PointValue):
            if other.dom is not self.dom:
                raise ValueError("point values from different points")
            return other
        if isinstance(other, (int, Fraction)):
            return self.dom.from_fraction(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.dom.prime
        return PointValue(self.dom, (self.f + o.f) % p, (self.b + o.b) % p)

    __radd__ = __add__

    def __neg__(self):
        p = self.dom.prime
        return PointValue(self.dom, -self.f % p, -self.b % p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.dom.prime
        return PointValue(self.dom, (self.f - o.f) % p, (self.b - o.b) % p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.dom.prime
        return PointValue(self.dom, (self.f * o.f) % p, (self.b * o.b) % p)

    __rmul__ = __mul__

    def inv(self):
        if self.f == 0 or self.b == 0:
            raise ZeroDivisionError("point evaluation hit zero; resample the point")
        p = self.dom.prime
        return PointValue(self.dom, pow(self.f, p - 2, p), pow(self.b, p - 2, p))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        p = self.dom.prime
        return PointValue(self.dom, pow(self.f, n, p), pow(self.b, n, p))

    def bar(self):
        return PointValue(self.dom, self.b, self.f)

    def is_zero(self) -> bool:
        return self.f == 0 and self.b == 0

    def __bool__(self):
        return self.f != 0 or self.b != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.f == o.f and self.b == o.b

    __hash__ = None

    def __repr__(self):
        return f"PointValue({self.f}, {self.b} mod {self.dom.prime})"


class ScalarDomain:
    """Exact coefficient domain: elements are ``Scalar`` values of one ring."""

    __slots__ = ("ring", "zero", "one", "exact")

    def __init__(self, ring: Ring):
        self.ring = ring
        self.zero = ring.zero
        self.one = ring.one
        self.exact = True

    def gen(self, name: str) -> Scalar:
        if name == "a" and self.ring is SQRT_RING:
            s = self.ring.gen("s")
            return -(s * s)
        return self.ring.gen(name)

    def from_fraction(self, q) -> Scalar:
        return self.ring.const(q)

    def key(self):
        return ("exact", self.ring.names)

    def __repr__(self):
        return f"ScalarDomain{self.ring.names}"


class PointDomain:
    """Coefficients are GF(p) pair evaluations at one fixed random point."""

    __slots__ = ("ring", "prime", "coords", "_bar_coords", "zero", "one", "exact", "_serial")

    _counter = 0

    def __init__(self, ring: Ring, prime: int, coords: Mapping[str, int]):
        self.ring = ring
        self.prime = prime
        self.coords = {n: coords[n] % prime for n in ring.names}
        for n, c in self.coords.items():
            if c == 0:
                raise ValueError(f"coordinate {n!r} must be invertible")
        inv = lambda x: pow(x, prime - 2, prime)
        bc = dict(self.coords)
        for n in ("v", "v0", "a", "s"):
            if n in bc:
                bc[n] = inv(bc[n])
        bc["y"], bc["yb"] = bc["yb"], bc["y"]
        self._bar_coords = bc
        self.zero = PointValue(self, 0, 0)
        self.one = PointValue(self, 1, 1)
        self.exact = False
        PointDomain._counter += 1
        self._serial = PointDomain._counter

    def gen(self, name: str) -> PointValue:
        if name == "a" and self.ring is SQRT_RING:
            s = self.gen("s")
            return -(s * s)
        return PointValue(self, self.coords[name], self._bar_coords[name])

    def from_fraction(self, q) -> PointValue:
        q = Fraction(q)
        p = self.prime
        val = q.numerator % p * pow(q.denominator % p, p - 2, p) % p
        return PointValue(self, val, val)

    def eval_scalar(self, x: Scalar) -> PointValue:
        """Evaluate an exact scalar in this domain."""
        if x.ring is not self.ring:
            raise ValueError("scalar ring does not match the point's ring")
        p = self.prime

        def ev(poly, coords):
            total = 0
            vals = [coords[n] for n in self.ring.names]
            for key, c in poly.items():
                term = int(c.numerator) % p * pow(int(c.denominator) % p, p - 2, p) % p
                for base, e in zip(vals, unpack_exponents(key)):
                    if e:
                        term = term * pow(base, e % (p - 1), p) % p
                total = (total + term) % p
            return total

        nf, nb = ev(x.num, self.coords), ev(x.num, self._bar_coords)
        df, db = ev(x.den, self.coords), ev(x.den, self._bar_coords)
        if df == 0 or db == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return PointValue(self, nf * pow(df, p - 2, p) % p, nb * pow(db, p - 2, p) % p)

    def key(self):
        return ("point", self._serial)

    def __repr__(self):
        return f"PointDomain(p={self.prime}, {self.coords})"


EXACT = ScalarDomain(BASE_RING)
EXACT_SQRT = ScalarDomain(SQRT_RING)


def sample_point(rng: random.Random, ring: Ring = BASE_RING, trial: int = 0,
                 fixed: Mapping[str, int] | None = None) -> PointDomain:
    """Draw a fresh evaluation point; ``fixed`` pins chosen coordinates
    (e.g. v0 = 1 for computations in the specialized type-B algebra)."""
    prime = TRIAL_PRIMES[trial % len(TRIAL_PRIMES)]
    coords = {n: rng.randrange(2, prime - 1) for n in ring.names}
    if fixed:
        coords.update(fixed)
    return PointDomain(ring, prime, coords)

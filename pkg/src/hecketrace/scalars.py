"""Exact coefficient arithmetic for the Hecke-algebra modules.

A ``Scalar`` is a fraction of sparse Laurent polynomials over arbitrary
precision rationals.  The base ring has five generators, in this fixed order:

    v   -- the main quadratic parameter,
    v0  -- the separate parameter carried by t_0 in unequal type B,
    a   -- the weight variable of the trace tower (inverse powers of a
           weight the Jucys-Murphy factors, plain powers show up in values),
    y   -- the free parameter of the one-parameter trace families,
    yb  -- a second independent generator that the bar involution swaps
           with y (so that bar is total without committing y to a value).

A second ring replaces ``a`` by a square root: ``s`` with a = -s^2.  That
ring is needed by the type-D geometric specialization (y^2 = -alpha^2*a has
no solution over the base ring) and by the balanced normalization of link
invariants.  ``to_sqrt_ring`` embeds the base ring into it.

Representation: ``num`` and ``den`` map monomials to rational coefficients
(gmpy2.mpq).  A monomial is an exponent 5-vector packed into one integer,
32 bits per biased field, most-significant field first, so that monomial
multiplication is integer addition and integer comparison is lexicographic
comparison of exponent vectors.  Exponents may be negative (Laurent); the
packing is exact for |exponent| < 2^29, far beyond anything reachable here.

Canonical form makes equality structural:

  * zero is ``num == {}``, ``den == {PACKED_ZERO: 1}``;
  * ``den`` is a true polynomial with no monomial factor, monic at its
    lexicographically greatest monomial;
  * num's polynomial part and den are coprime (multivariate gcd, via
    sympy's sparse polynomial rings -- the one external routine used here).

The bar involution inverts v, v0, a (resp. s) and swaps y with yb; it is a
ring involution acting termwise on exponent vectors.

>>> v = BASE_RING.gen("v")
>>> (v - v**-1).bar() == -(v - v**-1)
True
>>> (v**2 - v**-2) / (v - v**-1) == v + v**-1
True
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from sympy import QQ
from sympy.polys.rings import ring as _sympy_ring

try:  # gmpy2 rationals are ~20x faster than Fraction; same semantics
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as _Q

NGENS = 5
_FIELD = 32
_BIAS = 1 << 30
_MASK = (1 << _FIELD) - 1
_SHIFTS = tuple((NGENS - 1 - i) * _FIELD for i in range(NGENS))
PACKED_ZERO = sum(_BIAS << s for s in _SHIFTS)

Monomial = int  # packed exponent vector
Poly = dict[Monomial, object]  # sparse Laurent polynomial over rationals

_ZERO = _Q(0)
_ONE = _Q(1)
_RATIONAL_TYPES = (int, Fraction, type(_Q(0)))


def pack_exponents(exps: Iterable[int]) -> Monomial:
    return sum((e + _BIAS) << s for e, s in zip(exps, _SHIFTS))


def unpack_exponents(key: Monomial) -> tuple[int, ...]:
    return tuple(((key >> s) & _MASK) - _BIAS for s in _SHIFTS)


def _raw_shift(exps: Iterable[int]) -> int:
    """Additive representation of a shift (no bias)."""
    return sum(e << s for e, s in zip(exps, _SHIFTS))


class Ring:
    """A fixed tuple of generator names plus cached helpers."""

    __slots__ = ("names", "index", "zero_exp", "one_poly", "_sring", "_gens", "cached")

    def __init__(self, names: tuple[str, ...]):
        if len(names) != NGENS:
            raise ValueError(f"rings here carry exactly {NGENS} generators")
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}
        self.zero_exp: Monomial = PACKED_ZERO
        # shared canonical denominator 1; treated as immutable everywhere
        self.one_poly: Poly = {PACKED_ZERO: _ONE}
        self._sring, *self._gens = _sympy_ring(",".join(names), QQ)
        self.cached: dict[str, "Scalar"] = {}

    def __repr__(self):
        return f"Ring{self.names}"

    @property
    def zero(self) -> "Scalar":
        return self.const(0)

    @property
    def one(self) -> "Scalar":
        return self.const(1)

    def gen(self, name: str, power: int = 1) -> "Scalar":
        """The generator ``name`` (optionally raised to an integer power)."""
        i = self.index[name]
        key = PACKED_ZERO + (power << _SHIFTS[i])
        return Scalar(self, {key: _ONE}, self.one_poly)

    def const(self, value) -> "Scalar":
        q = _Q(value)
        num = {} if q == 0 else {PACKED_ZERO: q}
        return Scalar(self, num, self.one_poly)

    def monomial(self, exps: Mapping[str, int], coeff=_ONE) -> "Scalar":
        vec = [0] * NGENS
        for name, e in exps.items():
            vec[self.index[name]] = e
        c = _Q(coeff)
        num = {} if c == 0 else {pack_exponents(vec): c}
        return Scalar(self, num, self.one_poly)


BASE_RING = Ring(("v", "v0", "a", "y", "yb"))
SQRT_RING = Ring(("v", "v0", "s", "y", "yb"))


# ---------------------------------------------------------------------------
# raw polynomial helpers (dicts are never mutated once attached to a Scalar)

def _padd(p: Poly, q: Poly) -> Poly:
    if not p:
        return q
    if not q:
        return p
    out = dict(p)
    for key, c in q.items():
        nc = out.get(key, _ZERO) + c
        if nc:
            out[key] = nc
        else:
            out.pop(key, None)
    return out


def _pneg(p: Poly) -> Poly:
    return {key: -c for key, c in p.items()}


def _pmul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return {}
    if len(q) > len(p):
        p, q = q, p
    if len(q) == 1:
        ((kq, cq),) = q.items()
        if kq == PACKED_ZERO:
            return {kp: cp * cq for kp, cp in p.items()}
        base = kq - PACKED_ZERO
        return {kp + base: cp * cq for kp, cp in p.items()}
    out: Poly = {}
    get = out.get
    for kq, cq in q.items():
        base = kq - PACKED_ZERO
        for kp, cp in p.items():
            key = kp + base
            nc = get(key, _ZERO) + cp * cq
            if nc:
                out[key] = nc
            else:
                del out[key]
    return out


def _pscale(p: Poly, c) -> Poly:
    if not c:
        return {}
    return {key: cc * c for key, cc in p.items()}


def _pshift(p: Poly, shift: tuple[int, ...]) -> Poly:
    if not any(shift):
        return p
    raw = _raw_shift(shift)
    return {key + raw: c for key, c in p.items()}


def _content_exp(p: Poly) -> tuple[int, ...]:
    """Componentwise minimum of the exponent vectors (the monomial content)."""
    it = iter(p)
    mins = list(unpack_exponents(next(it)))
    for key in it:
        for i, e in enumerate(unpack_exponents(key)):
            if e < mins[i]:
                mins[i] = e
    return tuple(mins)


def _to_sympy(ring: Ring, p: Poly):
    return ring._sring.from_dict(
        {unpack_exponents(k): QQ(int(c.numerator), int(c.denominator)) for k, c in p.items()})


def _from_sympy(sp) -> Poly:
    return {pack_exponents(exp): _Q(int(c.numerator), int(c.denominator))
            for exp, c in sp.terms()}


def _poly_gcd(ring: Ring, p: Poly, q: Poly) -> Poly:
    return _from_sympy(_to_sympy(ring, p).gcd(_to_sympy(ring, q)))


def _poly_quo(ring: Ring, p: Poly, g: Poly) -> Poly:
    """Exact quotient p/g (g must divide p)."""
    if g == ring.one_poly:
        return p
    return _from_sympy(_to_sympy(ring, p).quo(_to_sympy(ring, g)))


def _normalize(ring: Ring, num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if not den:
        raise ZeroDivisionError("scalar division by zero")
    if not num:
        return {}, ring.one_poly
    if len(den) == 1:
        (dkey, dc), = den.items()
        base = dkey - PACKED_ZERO
        if base == 0 and dc == 1:
            return num, ring.one_poly
        return {k - base: c / dc for k, c in num.items()}, ring.one_poly
    ncont = _content_exp(num)
    dcont = _content_exp(den)
    npoly = _pshift(num, tuple(-e for e in ncont))
    dpoly = _pshift(den, tuple(-e for e in dcont))
    g = _poly_gcd(ring, npoly, dpoly)
    if g != ring.one_poly:
        npoly = _poly_quo(ring, npoly, g)
        dpoly = _poly_quo(ring, dpoly, g)
    unit = tuple(n - d for n, d in zip(ncont, dcont))
    if len(dpoly) == 1:
        (dkey, dc), = dpoly.items()
        base = dkey - PACKED_ZERO
        return _pshift({k - base: c / dc for k, c in npoly.items()}, unit), ring.one_poly
    lead = dpoly[max(dpoly)]
    if lead != 1:
        inv = 1 / lead
        dpoly = _pscale(dpoly, inv)
        npoly = _pscale(npoly, inv)
    return _pshift(npoly, unit), dpoly


class Scalar:
    """An element of the fraction field, always in canonical form."""

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring: Ring, num: Poly, den: Poly):
        self.ring = ring
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------

    @staticmethod
    def fraction(ring: Ring, num: Poly, den: Poly) -> "Scalar":
        n, d = _normalize(ring, num, den)
        return Scalar(ring, n, d)

    def _coerce(self, other) -> "Scalar | None":
        if isinstance(other, Scalar):
            if other.ring is not self.ring:
                raise ValueError("scalars from different rings")
            return other
        if isinstance(other, _RATIONAL_TYPES):
            return self.ring.const(other)
        return None

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_one(self) -> bool:
        return self.num == self.ring.one_poly and self.den == self.ring.one_poly

    def is_polynomial(self) -> bool:
        """True when the denominator is 1 (the value is a Laurent polynomial)."""
        return self.den == self.ring.one_poly

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        one = self.ring.one_poly
        if self.den is one and o.den is one:
            return Scalar(self.ring, _padd(self.num, o.num), one)
        if self.den == o.den:
            num = _padd(self.num, o.num)
            if self.den == one:
                return Scalar(self.ring, num, one)
            return Scalar.fraction(self.ring, num, self.den)
        num = _padd(_pmul(self.num, o.den), _pmul(o.num, self.den))
        return Scalar.fraction(self.ring, num, _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.ring, _pneg(self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        one = self.ring.one_poly
        if (self.den is one or self.den == one) and (o.den is one or o.den == one):
            return Scalar(self.ring, _pmul(self.num, o.num), one)
        return Scalar.fraction(self.ring, _pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("scalar division by zero")
        return Scalar.fraction(self.ring, _pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def inv(self) -> "Scalar":
        if not self.num:
            raise ZeroDivisionError("scalar division by zero")
        return Scalar.fraction(self.ring, self.den, self.num)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        if len(self.num) == 1 and self.is_polynomial():
            (key, c), = self.num.items()
            return Scalar(self.ring, {PACKED_ZERO + (key - PACKED_ZERO) * n: c ** n},
                          self.ring.one_poly)
        out = self.ring.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    __hash__ = None  # unhashable by design; compare structurally

    # -- involution and specialization ----------------------------------

    def bar(self) -> "Scalar":
        """Ring involution: v, v0, a (or s) -> inverses; y <-> yb."""
        def remap(p: Poly) -> Poly:
            out: Poly = {}
            for key, c in p.items():
                e = unpack_exponents(key)
                out[pack_exponents((-e[0], -e[1], -e[2], e[4], e[3]))] = c
            return out
        return Scalar.fraction(self.ring, remap(self.num), remap(self.den))

    def specialize(self, assignment: Mapping[str, Union["Scalar", int, Fraction]],
                   ring: Ring | None = None) -> "Scalar":
        """Apply the ring homomorphism sending each named generator to the
        given value (other generators map to their namesakes in ``ring``).

        Substituting a value without an inverse into a negative exponent, or
        producing a vanishing denominator, raises ``ZeroDivisionError``.
        """
        target = ring
        if target is None:
            for val in assignment.values():
                if isinstance(val, Scalar):
                    target = val.ring
                    break
            else:
                target = self.ring
        values: list[Scalar] = []
        for name in self.ring.names:
            if name in assignment:
                val = assignment[name]
                values.append(val if isinstance(val, Scalar) else target.const(val))
            else:
                if name not in target.index:
                    raise ValueError(
                        f"generator {name!r} has no value and no namesake in {target!r}")
                values.append(target.gen(name))
        for val in values:
            if val.ring is not target:
                raise ValueError("specialization values from mixed rings")

        def ev(p: Poly) -> Scalar:
            powers: list[dict[int, Scalar]] = [{} for _ in values]
            total = target.zero
            for key, c in p.items():
                term = target.const(c)
                for i, e in enumerate(unpack_exponents(key)):
                    if e == 0:
                        continue
                    cache = powers[i]
                    if e not in cache:
                        cache[e] = values[i] ** e
                    term = term * cache[e]
                total = total + term
            return total

        return ev(self.num) / ev(self.den)

    def eval_rational(self, point: Mapping[str, Union[int, Fraction]]) -> Fraction:
        """Evaluate at rational coordinates (every generator needs a value)."""
        vals = [_Q(point[name]) for name in self.ring.names]

        def ev(p: Poly):
            total = _ZERO
            for key, c in p.items():
                term = c
                for x, e in zip(vals, unpack_exponents(key)):
                    if e:
                        if x == 0 and e < 0:
                            raise ZeroDivisionError("negative power of zero")
                        term *= x ** e
                total += term
            return total

        d = ev(self.den)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        q = ev(self.num) / d
        return Fraction(int(q.numerator), int(q.denominator))

    # -- structure helpers ----------------------------------------------

    def num_monomials(self) -> Iterator[tuple[tuple[int, ...], object]]:
        """(exponent vector, coefficient) pairs of the numerator."""
        for key, c in self.num.items():
            yield unpack_exponents(key), c

    def den_monomials(self) -> Iterator[tuple[tuple[int, ...], object]]:
        for key, c in self.den.items():
            yield unpack_exponents(key), c

    def coefficients_of(self, name: str) -> dict[int, "Scalar"]:
        """Split a polynomial value by the exponent of one generator.

        Requires denominator 1; returns {exponent: scalar free of ``name``}.
        """
        if not self.is_polynomial():
            raise ValueError(f"not a polynomial: {self}")
        i = self.ring.index[name]
        shift = _SHIFTS[i]
        buckets: dict[int, Poly] = {}
        for key, c in self.num.items():
            e = ((key >> shift) & _MASK) - _BIAS
            rest = key - (e << shift)
            buckets.setdefault(e, {})[rest] = c
        return {e: Scalar(self.ring, p, self.ring.one_poly)
                for e, p in sorted(buckets.items())}

    def degree_in(self, name: str) -> tuple[int, int]:
        """(min, max) exponent of ``name`` across num and den monomials."""
        shift = _SHIFTS[self.ring.index[name]]
        exps = [((k >> shift) & _MASK) - _BIAS for k in self.num]
        exps += [((k >> shift) & _MASK) - _BIAS for k in self.den]
        if not exps:
            return (0, 0)
        return (min(exps), max(exps))

    # -- printing --------------------------------------------------------

    def _poly_str(self, p: Poly) -> str:
        if not p:
            return "0"
        pieces: list[str] = []
        for key in sorted(p, reverse=True):
            c = p[key]
            factors = []
            for name, e in zip(self.ring.names, unpack_exponents(key)):
                if e == 1:
                    factors.append(name)
                elif e != 0:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            if not pieces:
                pieces.append(body if c > 0 else "-" + body)
            else:
                pieces.append((" + " if c > 0 else " - ") + body)
        return "".join(pieces)

    def __str__(self):
        if self.den == self.ring.one_poly:
            return self._poly_str(self.num)
        return f"({self._poly_str(self.num)})/({self._poly_str(self.den)})"

    def __repr__(self):
        return f"<{self.__str__()}>"


# ---------------------------------------------------------------------------
# named constants

def alpha(ring: Ring = BASE_RING) -> Scalar:
    """v - v^-1."""
    key = "alpha"
    if key not in ring.cached:
        ring.cached[key] = ring.gen("v") - ring.gen("v", -1)
    return ring.cached[key]


def alpha0(ring: Ring = BASE_RING) -> Scalar:
    """v0 - v0^-1."""
    key = "alpha0"
    if key not in ring.cached:
        ring.cached[key] = ring.gen("v0") - ring.gen("v0", -1)
    return ring.cached[key]


def to_sqrt_ring(x: Scalar) -> Scalar:
    """Embed the base ring into the square-root ring via a -> -s^2."""
    if x.ring is SQRT_RING:
        return x
    if x.ring is not BASE_RING:
        raise ValueError("expected a base-ring scalar")

    def remap(p: Poly) -> Poly:
        out: Poly = {}
        for key, c in p.items():
            e = unpack_exponents(key)
            nk = pack_exponents((e[0], e[1], 2 * e[2], e[3], e[4]))
            nc = out.get(nk, _ZERO) + (c if e[2] % 2 == 0 else -c)
            if nc:
                out[nk] = nc
            else:
                del out[nk]
        return out

    return Scalar.fraction(SQRT_RING, remap(x.num), remap(x.den))


# ---------------------------------------------------------------------------
# textual grammar: integers, generators, + - * / ^ with integer exponents,
# parentheses.  Canonical printing (above) round-trips through this parser.

class ScalarParseError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        if ch in "+-*/^(),[]":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ScalarParseError(f"unexpected character {ch!r} at position {i}")
    tokens.append(("end", None, n))
    return tokens


class _ScalarParser:
    def __init__(self, tokens, ring: Ring):
        self.tokens = tokens
        self.pos = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ScalarParseError(f"expected {kind!r}, got {tok[1]!r} at position {tok[2]}")
        self.pos += 1
        return tok

    def parse_expr(self) -> Scalar:
        value = self.parse_term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.parse_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_term(self) -> Scalar:
        value = self.parse_factor()
        while self.peek()[0] in "*/":
            op = self.take()[0]
            rhs = self.parse_factor()
            value = value * rhs if op == "*" else value / rhs
        return value

    def parse_factor(self) -> Scalar:
        sign = 1
        while self.peek()[0] in "+-":
            if self.take()[0] == "-":
                sign = -sign
        value = self.parse_primary()
        if self.peek()[0] == "^":
            self.take()
            value = value ** self.parse_int()
        return value if sign > 0 else -value

    def parse_int(self) -> int:
        sign = 1
        while self.peek()[0] in "+-":
            if self.take()[0] == "-":
                sign = -sign
        return sign * self.take("int")[1]

    def parse_primary(self) -> Scalar:
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            return self.ring.const(val)
        if kind == "name":
            self.take()
            if val not in self.ring.index:
                raise ScalarParseError(f"unknown generator {val!r} at position {pos}")
            return self.ring.gen(val)
        if kind == "(":
            self.take()
            value = self.parse_expr()
            self.take(")")
            return value
        raise ScalarParseError(f"unexpected token {val!r} at position {pos}")


def parse_scalar(text: str, ring: Ring = BASE_RING) -> Scalar:
    """Parse the textual scalar grammar.

    >>> print(parse_scalar("v^2 - 2 + v^-2"))
    v^2 - 2 + v^-2
    >>> print(parse_scalar("(v - v^-1)^2 / (v - v^-1)"))
    v - v^-1
    """
    parser = _ScalarParser(_tokenize(text), ring)
    value = parser.parse_expr()
    parser.take("end")
    return value

"""Pluggable exact ring arithmetic with canonical normal forms.

Every ring kind stores its elements in a single normal form, so payload
equality is ring equality and every operation returns a normalized result:

* ``Z``            -- plain int
* ``Q``            -- Fraction
* ``Z/n``          -- residue in [0, n)
* ``Z[i]``         -- pair (a, b) for a + b*i
* ``R[x]``         -- tuple of base payloads, constant first, no trailing zeros
* ``Z[t,1/t]``     -- sorted tuple of (exponent, coefficient), coefficients nonzero
* ``Q(t)``         -- pair (num, den) of integer polynomial tuples; num/den coprime,
                      contents coprime, den has positive leading coefficient
* ``Cyclo(p)``     -- integer residue vector of degree < deg chi_p
* ``B[x]/(mu)``    -- residue vector of degree < deg mu (mu needs a unit leading
                      coefficient so remainder division is defined over B = Z/n or Q)
* ``Q[t^(1/L)]``, ``Q(t^(1/L))`` -- polynomials/fractions in s = t^(1/L)

Elements are immutable; all operations are pure and safe to share across
threads.  Arithmetic on elements of different rings raises RingMismatchError.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cyclotomic import cyclotomic_poly
from .errors import (
    DomainError,
    NotInvertibleError,
    RingMismatchError,
    UnsupportedError,
)

# ---------------------------------------------------------------------------
# dense integer/Fraction polynomial helpers (tuples, constant term first)
# ---------------------------------------------------------------------------


def _zstrip(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _zadd(a, b):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] += c
    return _zstrip(out)


def _zneg(a):
    return tuple(-c for c in a)


def _zmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    if len(a) > len(b):
        a, b = b, a
    for i, c in enumerate(a):
        if c:
            for j, d in enumerate(b):
                if d:
                    out[i + j] += c * d
    return _zstrip(out)


def _zscale(a, c):
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def _zval(a):
    for i, c in enumerate(a):
        if c:
            return i
    return len(a)


def _zmono(a):
    """(degree, coefficient) when a has a single nonzero term, else None."""
    hit = None
    for i, c in enumerate(a):
        if c:
            if hit is not None:
                return None
            hit = (i, c)
    return hit


def _zcontent(a):
    g = 0
    for c in a:
        g = math.gcd(g, c)
    return g


def _zprim(a):
    """Split a = c * p with p primitive, positive leading coefficient."""
    a = _zstrip(a)
    if not a:
        return 0, ()
    c = _zcontent(a)
    if a[-1] < 0:
        c = -c
    return c, tuple(x // c for x in a)


def _qdivmod(a, b):
    """divmod for Fraction coefficient lists; b nonzero."""
    r = [Fraction(c) for c in a]
    while r and r[-1] == 0:
        r.pop()
    db = len(b) - 1
    inv = Fraction(1) / b[-1]
    q = [Fraction(0)] * max(0, len(r) - db)
    while len(r) - 1 >= db and r:
        c = r[-1] * inv
        k = len(r) - 1 - db
        q[k] = c
        for j, d in enumerate(b):
            r[k + j] -= c * d
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return q, r


def _zdivexact(a, b):
    """Exact quotient a / b in Z[t]; asserts divisibility (internal use)."""
    a, b = _zstrip(a), _zstrip(b)
    if not a:
        return ()
    mono = _zmono(b)
    if mono is not None:
        d, c = mono
        assert all(x == 0 for x in a[:d]), "inexact monomial division"
        out = []
        for x in a[d:]:
            q, r = divmod(x, c)
            assert r == 0, "inexact monomial division"
            out.append(q)
        return _zstrip(out)
    fb = [Fraction(c) for c in b]
    q, r = _qdivmod(a, fb)
    assert not r, "inexact polynomial division"
    out = []
    for c in q:
        assert c.denominator == 1, "non-integral exact quotient"
        out.append(int(c))
    return _zstrip(out)


def _zgcd(a, b):
    """Primitive gcd in Z[t] with positive leading coefficient."""
    a, b = _zstrip(a), _zstrip(b)
    if not a:
        return _zprim(b)[1]
    if not b:
        return _zprim(a)[1]
    ma, mb = _zmono(a), _zmono(b)
    if ma is not None:
        d = min(ma[0], mb[0] if mb is not None else _zval(b))
        return (0,) * d + (1,)
    if mb is not None:
        d = min(mb[0], _zval(a))
        return (0,) * d + (1,)
    fa = [Fraction(c) for c in a]
    fb = [Fraction(c) for c in b]
    while fb:
        _, fr = _qdivmod(fa, fb)
        fa, fb = fb, fr
    lcm_den = 1
    for c in fa:
        lcm_den = lcm_den * c.denominator // math.gcd(lcm_den, c.denominator)
    ints = [int(c * lcm_den) for c in fa]
    return _zprim(ints)[1]


def _totient(m):
    return sum(1 for i in range(1, m + 1) if math.gcd(i, m) == 1)


def _qalg_torsion_bound(n):
    """Largest possible order of a root of unity in a Q-algebra of dimension n.

    If q^m = 1 then Q[q] is a product of cyclotomic fields Q(zeta_d) with
    lcm of the d equal to the order of q and total degree at most n.
    """
    if n > 16:
        return None
    cands = [m for m in range(1, 2 * n * n + 3) if _totient(m) <= n]
    best = {1: 0}
    for c in cands:
        phi = _totient(c)
        for l, cost in sorted(best.items()):
            nl = l * c // math.gcd(l, c)
            nc = cost + phi
            if nc <= n and best.get(nl, n + 1) > nc:
                best[nl] = nc
    return max(best)


# ---------------------------------------------------------------------------
# element wrapper
# ---------------------------------------------------------------------------


class RingElement:
    """An element of a Ring, kept in that ring's normal form."""

    __slots__ = ("ring", "payload")

    def __init__(self, ring, payload):
        self.ring = ring
        self.payload = payload

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatchError(
                    f"elements of {self.ring} and {other.ring} cannot be combined"
                )
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RingElement(self.ring, self.ring._add(self.payload, other.payload))

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, self.ring._neg(self.payload))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RingElement(self.ring, self.ring._add(self.payload, self.ring._neg(other.payload)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RingElement(self.ring, self.ring._mul(self.payload, other.payload))

    __rmul__ = __mul__

    def __pow__(self, n):
        if isinstance(n, Fraction):
            if n.denominator == 1:
                n = int(n)
            else:
                return RingElement(self.ring, self.ring._frac_pow(self.payload, n))
        base = self
        if n < 0:
            base = self.inverse()
            n = -n
        acc = self.ring.one
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def try_invert(self):
        """Multiplicative inverse, or None when this element is not a unit."""
        inv = self.ring._invert(self.payload)
        if inv is None:
            return None
        return RingElement(self.ring, inv)

    def inverse(self):
        inv = self.try_invert()
        if inv is None:
            raise NotInvertibleError(f"{self} is not a unit of {self.ring}")
        return inv

    def is_zero(self):
        return self.payload == self.ring._zero()

    def is_one(self):
        return self.payload == self.ring._one()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.payload == other.payload
        if isinstance(other, int):
            return self.payload == self.ring._from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.descriptor(), self.payload))

    def __str__(self):
        return self.ring._text(self.payload)

    def __repr__(self):
        return self.ring._text(self.payload)


# ---------------------------------------------------------------------------
# ring base class
# ---------------------------------------------------------------------------


class Ring:
    """Base class: structural flags plus the payload-level operation protocol."""

    finite = False
    cardinality = None
    is_domain = False
    is_field = False
    torsion_free = False  # additive group has no Z-torsion
    commutative = True
    characteristic = 0

    # --- payload protocol (subclasses implement) ---

    def normalize(self, payload):
        raise NotImplementedError

    def _add(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _invert(self, a):
        raise NotImplementedError

    def _zero(self):
        raise NotImplementedError

    def _one(self):
        raise NotImplementedError

    def _from_int(self, n):
        raise NotImplementedError

    def _text(self, a):
        raise NotImplementedError

    def _frac_pow(self, a, r):
        raise DomainError(f"{self} does not support fractional powers")

    def descriptor(self):
        raise NotImplementedError

    # --- public element API ---

    @property
    def zero(self):
        return RingElement(self, self._zero())

    @property
    def one(self):
        return RingElement(self, self._one())

    def element(self, payload):
        return RingElement(self, self.normalize(payload))

    def from_int(self, n):
        return RingElement(self, self._from_int(n))

    @property
    def generator(self):
        """Distinguished element used as the default q, if the ring has one."""
        return None

    def atoms(self):
        """Named atoms available to the element parser."""
        return {}

    def payloads(self):
        raise UnsupportedError(f"{self} is not enumerable")

    def elements(self):
        """Every element exactly once; finite rings only, starting 0, 1."""
        for p in self.payloads():
            yield RingElement(self, p)

    def random_element(self, rng):
        raise NotImplementedError

    def is_unit(self, a):
        return self._invert(a.payload if isinstance(a, RingElement) else a) is not None

    def root_of_unity_order_bound(self):
        """Upper bound for orders of roots of unity in this ring, or None."""
        return None

    def __eq__(self, other):
        return isinstance(other, Ring) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(self.descriptor())

    def __repr__(self):
        return self._name()

    def __str__(self):
        return self._name()

    def _name(self):
        raise NotImplementedError


class IntegerRing(Ring):
    """The ring of integers."""

    is_domain = True
    torsion_free = True

    def normalize(self, payload):
        return int(payload)

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _invert(self, a):
        return a if a in (1, -1) else None

    def _zero(self):
        return 0

    def _one(self):
        return 1

    def _from_int(self, n):
        return n

    def _text(self, a):
        return str(a)

    def descriptor(self):
        return ("Z",)

    def _name(self):
        return "Z"

    def random_element(self, rng):
        return RingElement(self, rng.randint(-30, 30))

    def root_of_unity_order_bound(self):
        return 2


class RationalField(Ring):
    """The field of rational numbers (coefficient carrier for Q[x], Q(t))."""

    is_domain = True
    is_field = True
    torsion_free = True

    def normalize(self, payload):
        return Fraction(payload)

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a

    def _mul(self, a, b):
        return a * b

    def _invert(self, a):
        return None if a == 0 else 1 / a

    def _zero(self):
        return Fraction(0)

    def _one(self):
        return Fraction(1)

    def _from_int(self, n):
        return Fraction(n)

    def _text(self, a):
        return str(a)

    def descriptor(self):
        return ("Q",)

    def _name(self):
        return "Q"

    def random_element(self, rng):
        return RingElement(self, Fraction(rng.randint(-20, 20), rng.randint(1, 12)))

    def root_of_unity_order_bound(self):
        return 2


class ModularRing(Ring):
    """Z/nZ with residues in [0, n)."""

    finite = True

    def __init__(self, n):
        if n < 2:
            raise DomainError("modulus must be >= 2")
        self.n = n
        self.cardinality = n
        self.characteristic = n

    def normalize(self, payload):
        return int(payload) % self.n

    def _add(self, a, b):
        s = a + b
        return s - self.n if s >= self.n else s

    def _neg(self, a):
        return 0 if a == 0 else self.n - a

    def _mul(self, a, b):
        return a * b % self.n

    def _invert(self, a):
        g, x, _ = _xgcd(a, self.n)
        if g != 1:
            return None
        return x % self.n

    def _zero(self):
        return 0

    def _one(self):
        return 1 % self.n

    def _from_int(self, n):
        return n % self.n

    def _text(self, a):
        return str(a)

    def descriptor(self):
        return ("Z/", self.n)

    def _name(self):
        return f"Z/{self.n}"

    def payloads(self):
        return range(self.n)

    def random_element(self, rng):
        return RingElement(self, rng.randrange(self.n))


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


class GaussianRing(Ring):
    """Gaussian integers Z[i] as pairs (a, b) = a + b*i."""

    is_domain = True
    torsion_free = True

    def normalize(self, payload):
        a, b = payload
        return (int(a), int(b))

    def _add(self, x, y):
        return (x[0] + y[0], x[1] + y[1])

    def _neg(self, x):
        return (-x[0], -x[1])

    def _mul(self, x, y):
        a, b = x
        c, d = y
        return (a * c - b * d, a * d + b * c)

    def _invert(self, x):
        a, b = x
        if a * a + b * b != 1:
            return None
        return (a, -b)

    def _zero(self):
        return (0, 0)

    def _one(self):
        return (1, 0)

    def _from_int(self, n):
        return (n, 0)

    def _text(self, x):
        a, b = x
        if b == 0:
            return str(a)
        ib = "i" if abs(b) == 1 else f"{abs(b)}*i"
        if a == 0:
            return ib if b > 0 else f"-{ib}"
        return f"{a}+{ib}" if b > 0 else f"{a}-{ib}"

    def descriptor(self):
        return ("Z[i]",)

    def _name(self):
        return "Z[i]"

    @property
    def generator(self):
        return RingElement(self, (0, 1))

    def atoms(self):
        return {"i": (0, 1)}

    def random_element(self, rng):
        return RingElement(self, (rng.randint(-9, 9), rng.randint(-9, 9)))

    def root_of_unity_order_bound(self):
        return 4


# ---------------------------------------------------------------------------
# term formatting shared by all polynomial-like kinds
# ---------------------------------------------------------------------------


def _fmt_exp(e):
    if isinstance(e, Fraction):
        if e.denominator == 1:
            e = int(e)
        else:
            return f"({e.numerator}/{e.denominator})"
    return str(e)


def _signed_coeff(base, c):
    """(negated?, magnitude text) for a coefficient; negation done on the payload."""
    cs = base._text(c)
    if cs.startswith("-"):
        return True, base._text(base._neg(c))
    return False, cs


def _fmt_terms(terms, var):
    """terms: iterable of (exponent, negated?, magnitude text), ascending exponent."""
    parts = []
    for e, neg, mag in terms:
        if "+" in mag or "-" in mag:
            mag = f"({mag})"
        if not e:
            body = mag
        else:
            v = var if e == 1 else f"{var}^{_fmt_exp(e)}"
            body = v if mag == "1" else f"{mag}*{v}"
        parts.append((neg, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


class PolynomialRing(Ring):
    """Univariate polynomials over a base ring, dense payload tuples."""

    def __init__(self, base, var="t"):
        if not base.commutative:
            raise DomainError("polynomial base must be commutative")
        self.base = base
        self.var = var
        self.is_domain = base.is_domain
        self.torsion_free = base.torsion_free
        self.characteristic = base.characteristic

    def normalize(self, payload):
        cs = [self.base.normalize(c) for c in payload]
        z = self.base._zero()
        while cs and cs[-1] == z:
            cs.pop()
        return tuple(cs)

    def _strip(self, cs):
        z = self.base._zero()
        while cs and cs[-1] == z:
            cs.pop()
        return tuple(cs)

    def _add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        add = self.base._add
        for i, c in enumerate(b):
            out[i] = add(out[i], c)
        return self._strip(out)

    def _neg(self, a):
        neg = self.base._neg
        return tuple(neg(c) for c in a)

    def _mul(self, a, b):
        if not a or not b:
            return ()
        base = self.base
        z = base._zero()
        out = [z] * (len(a) + len(b) - 1)
        nz_a = sum(1 for c in a if c != z)
        nz_b = sum(1 for c in b if c != z)
        if nz_b < nz_a:
            a, b = b, a
        mul, add = base._mul, base._add
        for i, c in enumerate(a):
            if c != z:
                for j, d in enumerate(b):
                    if d != z:
                        out[i + j] = add(out[i + j], mul(c, d))
        return self._strip(out)

    def _invert(self, a):
        if not a:
            return None
        if len(a) == 1:
            inv = self.base._invert(a[0])
            return None if inv is None else (inv,)
        if self.base.is_domain:
            return None
        raise UnsupportedError(
            f"unit detection for nonconstant polynomials over {self.base} is not supported"
        )

    def _zero(self):
        return ()

    def _one(self):
        return (self.base._one(),)

    def _from_int(self, n):
        c = self.base._from_int(n)
        return () if c == self.base._zero() else (c,)

    def degree(self, a):
        return len(a) - 1

    def _divmod(self, a, b):
        """Remainder division; leading coefficient of b must be a unit."""
        base = self.base
        inv = base._invert(b[-1])
        if inv is None:
            raise UnsupportedError("division requires a unit leading coefficient")
        z = base._zero()
        r = list(a)
        q = [z] * max(0, len(a) - len(b) + 1)
        while len(r) >= len(b):
            if r[-1] == z:
                r.pop()
                continue
            c = base._mul(r[-1], inv)
            k = len(r) - len(b)
            q[k] = c
            for j, d in enumerate(b):
                r[k + j] = base._add(r[k + j], base._neg(base._mul(c, d)))
            r.pop()
        return self._strip(q), self._strip(r)

    def _text(self, a):
        base = self.base
        terms = [
            (e, *_signed_coeff(base, c))
            for e, c in enumerate(a)
            if c != base._zero()
        ]
        return _fmt_terms(terms, self.var)

    def descriptor(self):
        return ("poly", self.base.descriptor(), self.var)

    def _name(self):
        return f"{self.base}[{self.var}]"

    @property
    def generator(self):
        return RingElement(self, (self.base._zero(), self.base._one()))

    def atoms(self):
        return {self.var: (self.base._zero(), self.base._one())}

    def random_element(self, rng):
        deg = rng.randint(-1, 4)
        cs = [self.base.random_element(rng).payload for _ in range(deg + 1)]
        return self.element(tuple(cs))

    def root_of_unity_order_bound(self):
        # units of a polynomial ring over a domain are the base units
        return self.base.root_of_unity_order_bound() if self.base.is_domain else None


class PuiseuxRing(PolynomialRing):
    """Polynomials in t^(1/L) over Q, displayed with fractional exponents of t."""

    def __init__(self, denominator, base=None):
        if denominator < 1:
            raise DomainError("exponent denominator must be >= 1")
        base = base if base is not None else RationalField()
        super().__init__(base, var="t")
        self.denominator = denominator

    def _text(self, a):
        base = self.base
        L = self.denominator
        terms = [
            (Fraction(e, L), *_signed_coeff(base, c))
            for e, c in enumerate(a)
            if c != base._zero()
        ]
        return _fmt_terms(terms, "t")

    def descriptor(self):
        return ("puiseux-poly", self.base.descriptor(), self.denominator)

    def _name(self):
        return f"{self.base}[t^(1/{self.denominator})]"

    @property
    def generator(self):
        """The element t = s^L."""
        z, o = self.base._zero(), self.base._one()
        return RingElement(self, (z,) * self.denominator + (o,))

    def atoms(self):
        return {"t": self.generator.payload}

    def _frac_pow(self, a, r):
        mono = None
        for i, c in enumerate(a):
            if c != self.base._zero():
                if mono is not None:
                    raise DomainError("fractional powers only of single terms")
                mono = (i, c)
        if mono is None or mono[1] != self.base._one():
            raise DomainError("fractional powers only of monic monomials")
        e = mono[0] * r
        if e.denominator != 1 or e < 0:
            raise DomainError(f"exponent {e} is not covered by denominator {self.denominator}")
        return (self.base._zero(),) * int(e) + (self.base._one(),)


class LaurentRing(Ring):
    """Laurent polynomials over a domain: sparse (exponent, coefficient) pairs."""

    def __init__(self, base=None, var="t"):
        base = base if base is not None else IntegerRing()
        if not base.is_domain:
            raise DomainError("Laurent base must be an integral domain")
        self.base = base
        self.var = var
        self.is_domain = True
        self.torsion_free = base.torsion_free
        self.characteristic = base.characteristic

    def normalize(self, payload):
        acc = {}
        z = self.base._zero()
        for e, c in payload:
            c = self.base.normalize(c)
            if e in acc:
                c = self.base._add(acc[e], c)
            acc[e] = c
        return tuple((e, c) for e, c in sorted(acc.items()) if c != z)

    def _add(self, a, b):
        acc = dict(a)
        z = self.base._zero()
        for e, c in b:
            if e in acc:
                acc[e] = self.base._add(acc[e], c)
            else:
                acc[e] = c
        return tuple((e, c) for e, c in sorted(acc.items()) if c != z)

    def _neg(self, a):
        neg = self.base._neg
        return tuple((e, neg(c)) for e, c in a)

    def _mul(self, a, b):
        acc = {}
        z = self.base._zero()
        mul, add = self.base._mul, self.base._add
        for e1, c1 in a:
            for e2, c2 in b:
                e = e1 + e2
                p = mul(c1, c2)
                if e in acc:
                    acc[e] = add(acc[e], p)
                else:
                    acc[e] = p
        return tuple((e, c) for e, c in sorted(acc.items()) if c != z)

    def _invert(self, a):
        if len(a) != 1:
            return None
        e, c = a[0]
        inv = self.base._invert(c)
        return None if inv is None else ((-e, inv),)

    def _zero(self):
        return ()

    def _one(self):
        return ((0, self.base._one()),)

    def _from_int(self, n):
        c = self.base._from_int(n)
        return () if c == self.base._zero() else ((0, c),)

    def _text(self, a):
        base = self.base
        return _fmt_terms([(e, *_signed_coeff(base, c)) for e, c in a], self.var)

    def descriptor(self):
        return ("laurent", self.base.descriptor(), self.var)

    def _name(self):
        return f"{self.base}[{self.var},1/{self.var}]"

    @property
    def generator(self):
        return RingElement(self, ((1, self.base._one()),))

    def atoms(self):
        return {self.var: ((1, self.base._one()),)}

    def random_element(self, rng):
        n_terms = rng.randint(0, 4)
        pairs = [
            (rng.randint(-3, 3), self.base.random_element(rng).payload)
            for _ in range(n_terms)
        ]
        return self.element(tuple(pairs))

    def root_of_unity_order_bound(self):
        return self.base.root_of_unity_order_bound()


class RationalFunctionField(Ring):
    """Q(t), or Q(t^(1/L)) carried as rational functions in s = t^(1/L).

    Payload (num, den): integer polynomial tuples in s with gcd(num, den) = 1,
    coprime contents, and positive leading coefficient in den.
    """

    is_domain = True
    is_field = True
    torsion_free = True

    def __init__(self, var="t", denominator=1):
        if denominator < 1:
            raise DomainError("exponent denominator must be >= 1")
        self.var = var
        self.denominator = denominator

    def _norm(self, num, den):
        num, den = _zstrip(num), _zstrip(den)
        if not den:
            raise DomainError("zero denominator")
        if not num:
            return ((), (1,))
        an, P = _zprim(num)
        ad, Q = _zprim(den)
        G = _zgcd(P, Q)
        if len(G) > 1:
            P = _zdivexact(P, G)
            Q = _zdivexact(Q, G)
        g = math.gcd(an, ad)
        an //= g
        ad //= g
        if ad < 0:
            an, ad = -an, -ad
        return (_zscale(P, an), _zscale(Q, ad))

    def normalize(self, payload):
        if isinstance(payload, tuple) and len(payload) == 2 and (
            not payload or isinstance(payload[0], tuple)
        ):
            num, den = payload
        else:
            num, den = payload, (1,)
        return self._norm(tuple(int(c) for c in num), tuple(int(c) for c in den))

    def _add(self, x, y):
        n1, d1 = x
        n2, d2 = y
        if d1 == d2:
            return self._norm(_zadd(n1, n2), d1)
        return self._norm(_zadd(_zmul(n1, d2), _zmul(n2, d1)), _zmul(d1, d2))

    def _neg(self, x):
        return (_zneg(x[0]), x[1])

    def _mul(self, x, y):
        n1, d1 = x
        n2, d2 = y
        if not n1 or not n2:
            return ((), (1,))
        return self._norm(_zmul(n1, n2), _zmul(d1, d2))

    def _invert(self, x):
        num, den = x
        if not num:
            return None
        return self._norm(den, num)

    def _zero(self):
        return ((), (1,))

    def _one(self):
        return ((1,), (1,))

    def _from_int(self, n):
        return (((n,) if n else ()), (1,))

    def _poly_text(self, cs):
        L = self.denominator
        if L == 1:
            terms = [(e, c < 0, str(abs(c))) for e, c in enumerate(cs) if c]
        else:
            terms = [(Fraction(e, L), c < 0, str(abs(c))) for e, c in enumerate(cs) if c]
        return _fmt_terms(terms, self.var)

    def _text(self, x):
        num, den = x
        if den == (1,):
            return self._poly_text(num)
        if num and num[-1] < 0:
            return "-" + self._text((_zneg(num), den))
        ns = self._poly_text(num)
        if " + " in ns or " - " in ns:
            ns = f"({ns})"
        ds = self._poly_text(den)
        bare = _zmono(den) is not None and (len(den) == 1 or den[-1] == 1)
        if not bare or " " in ds or "*" in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def descriptor(self):
        return ("fracfield", self.var, self.denominator)

    def _name(self):
        if self.denominator == 1:
            return f"Q({self.var})"
        return f"Q({self.var}^(1/{self.denominator}))"

    @property
    def generator(self):
        """The element t (equal to s^L when L > 1)."""
        return RingElement(self, ((0,) * self.denominator + (1,), (1,)))

    def atoms(self):
        return {self.var: self.generator.payload}

    def _frac_pow(self, x, r):
        num, den = x
        mn, md = _zmono(num), _zmono(den)
        if mn is None or md is None or mn[1] != 1 or md[1] != 1:
            raise DomainError("fractional powers only of monomials t^k")
        e = (mn[0] - md[0]) * r
        if e.denominator != 1:
            raise DomainError(f"exponent {e} is not covered by denominator {self.denominator}")
        e = int(e)
        if e >= 0:
            return ((0,) * e + (1,), (1,))
        return ((1,), (0,) * (-e) + (1,))

    def random_element(self, rng):
        num = tuple(rng.randint(-9, 9) for _ in range(rng.randint(0, 4)))
        den = ()
        while not _zstrip(den):
            den = tuple(rng.randint(-6, 6) for _ in range(rng.randint(1, 3)))
        return self.element((num, den))

    def root_of_unity_order_bound(self):
        return 2


class CyclotomicRing(Ring):
    """Z[t]/chi_p: integer residue vectors of degree < deg chi_p."""

    is_domain = True
    torsion_free = True

    def __init__(self, p):
        if p < 2:
            raise DomainError("cyclotomic quotient index must be >= 2")
        self.p = p
        self.modulus = cyclotomic_poly(p)

    def _reduce(self, cs):
        r = list(cs)
        m = self.modulus
        while len(r) >= len(m):
            c = r[-1]
            if c:
                k = len(r) - len(m)
                for j, d in enumerate(m):
                    r[k + j] -= c * d
            r.pop()
        return _zstrip(r)

    def normalize(self, payload):
        return self._reduce([int(c) for c in payload])

    def _add(self, a, b):
        return _zadd(a, b)

    def _neg(self, a):
        return _zneg(a)

    def _mul(self, a, b):
        return self._reduce(_zmul(a, b))

    def _invert(self, a):
        if not a:
            return None
        # Bezout over Q[t] against the (irreducible) modulus; the inverse is a
        # unit of Z[t]/chi_p exactly when its field inverse has integer coords
        r0 = [Fraction(c) for c in self.modulus]
        r1 = [Fraction(c) for c in a]
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _qdivmod(r0, r1)
            qs = _qpolymul(q, s1)
            s0, s1 = s1, _qpolysub(s0, qs)
            r0, r1 = r1, r
        if len(r0) != 1:
            return None
        inv = [c / r0[0] for c in s0]
        out = []
        for c in inv:
            if c.denominator != 1:
                return None
            out.append(int(c))
        return self._reduce(out)

    def _zero(self):
        return ()

    def _one(self):
        return (1,)

    def _from_int(self, n):
        return self._reduce([n])

    def _text(self, a):
        return _fmt_terms([(e, c < 0, str(abs(c))) for e, c in enumerate(a) if c], "t")

    def descriptor(self):
        return ("cyclo", self.p)

    def _name(self):
        return f"Cyclo({self.p})"

    @property
    def generator(self):
        """The class of t, a primitive p-th root of unity."""
        return RingElement(self, self._reduce([0, 1]))

    def atoms(self):
        return {"t": self._reduce([0, 1])}

    def random_element(self, rng):
        d = len(self.modulus) - 1
        return self.element(tuple(rng.randint(-9, 9) for _ in range(d)))

    def root_of_unity_order_bound(self):
        # torsion units of Z[zeta_p] are +-zeta_p^j
        return 2 * self.p


def _qpolymul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            for j, d in enumerate(b):
                out[i + j] += c * d
    while out and out[-1] == 0:
        out.pop()
    return out


def _qpolysub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] -= c
    while out and out[-1] == 0:
        out.pop()
    return out


class QuotientRing(Ring):
    """B[x]/(mu) for B = Z/n or Q; mu nonconstant with unit leading coefficient."""

    def __init__(self, polyring, modulus):
        if not isinstance(polyring, PolynomialRing):
            raise DomainError("quotient base must be a polynomial ring")
        if isinstance(modulus, RingElement):
            if modulus.ring != polyring:
                raise RingMismatchError("modulus must live in the quotient's polynomial ring")
            modulus = modulus.payload
        modulus = polyring.normalize(modulus)
        if len(modulus) < 2:
            raise DomainError("modulus must be nonconstant")
        if polyring.base._invert(modulus[-1]) is None:
            raise DomainError("modulus needs a unit leading coefficient")
        self.polyring = polyring
        self.base = polyring.base
        self.modulus = modulus
        if self.base.finite:
            self.finite = True
            self.cardinality = self.base.cardinality ** (len(modulus) - 1)
        self.torsion_free = self.base.torsion_free
        self.characteristic = self.base.characteristic

    def normalize(self, payload):
        cs = self.polyring.normalize(payload)
        _, r = self.polyring._divmod(cs, self.modulus)
        return r

    def _add(self, a, b):
        return self.polyring._add(a, b)

    def _neg(self, a):
        return self.polyring._neg(a)

    def _mul(self, a, b):
        prod = self.polyring._mul(a, b)
        if len(prod) < len(self.modulus):
            return prod
        _, r = self.polyring._divmod(prod, self.modulus)
        return r

    def _invert(self, a):
        if not a:
            return None
        if self.base.is_field:
            base = self.base
            r0, s0 = list(self.modulus), []
            r1, s1 = list(a), [base._one()]
            while r1:
                q, r = self._field_divmod(r0, r1)
                qs = self._field_mul(q, s1)
                s0, s1 = s1, self._field_sub(s0, qs)
                r0, r1 = r1, r
            if len(r0) != 1:
                return None
            ginv = base._invert(r0[0])
            if ginv is None:
                return None
            return self.normalize(tuple(base._mul(c, ginv) for c in s0))
        one = self._one()
        for b in self.payloads():
            if self._mul(a, b) == one:
                return b
        return None

    def _field_divmod(self, a, b):
        base = self.base
        z = base._zero()
        inv = base._invert(b[-1])
        r = list(a)
        q = [z] * max(0, len(r) - len(b) + 1)
        while len(r) >= len(b):
            if r[-1] == z:
                r.pop()
                continue
            c = base._mul(r[-1], inv)
            q[len(r) - len(b)] = c
            k = len(r) - len(b)
            for j, d in enumerate(b):
                r[k + j] = base._add(r[k + j], base._neg(base._mul(c, d)))
            r.pop()
        while r and r[-1] == z:
            r.pop()
        while q and q[-1] == z:
            q.pop()
        return q, r

    def _field_mul(self, a, b):
        base = self.base
        if not a or not b:
            return []
        z = base._zero()
        out = [z] * (len(a) + len(b) - 1)
        for i, c in enumerate(a):
            if c != z:
                for j, d in enumerate(b):
                    out[i + j] = base._add(out[i + j], base._mul(c, d))
        while out and out[-1] == z:
            out.pop()
        return out

    def _field_sub(self, a, b):
        base = self.base
        z = base._zero()
        out = [z] * max(len(a), len(b))
        for i, c in enumerate(a):
            out[i] = c
        for i, c in enumerate(b):
            out[i] = base._add(out[i], base._neg(c))
        while out and out[-1] == z:
            out.pop()
        return out

    def _zero(self):
        return ()

    def _one(self):
        return self.polyring._one() if len(self.modulus) > 1 else ()

    def _from_int(self, n):
        c = self.base._from_int(n)
        return () if c == self.base._zero() else (c,)

    def _text(self, a):
        base = self.base
        terms = [
            (e, *_signed_coeff(base, c))
            for e, c in enumerate(a)
            if c != base._zero()
        ]
        return _fmt_terms(terms, self.polyring.var)

    def descriptor(self):
        return ("quot", self.polyring.descriptor(), self.modulus)

    def _name(self):
        return f"{self.base}[{self.polyring.var}]/({self.polyring._text(self.modulus)})"

    @property
    def generator(self):
        return RingElement(self, self.normalize((self.base._zero(), self.base._one())))

    def atoms(self):
        return {self.polyring.var: self.normalize((self.base._zero(), self.base._one()))}

    def payloads(self):
        if not self.finite:
            raise UnsupportedError(f"{self} is not enumerable")
        d = len(self.modulus) - 1
        base_payloads = list(self.base.payloads())
        n = len(base_payloads)
        z = self.base._zero()
        for idx in range(self.cardinality):
            cs = []
            v = idx
            for _ in range(d):
                cs.append(base_payloads[v % n])
                v //= n
            while cs and cs[-1] == z:
                cs.pop()
            yield tuple(cs)

    def random_element(self, rng):
        d = len(self.modulus) - 1
        return self.element(tuple(self.base.random_element(rng).payload for _ in range(d)))

    def root_of_unity_order_bound(self):
        if self.base == RationalField():
            return _qalg_torsion_bound(len(self.modulus) - 1)
        return None


# canonical shared instances
ZZ = IntegerRing()
QQ = RationalField()
ZI = GaussianRing()


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------


def try_invert(x):
    """Inverse of x, or None when x is not a unit (a value, not an error)."""
    return x.try_invert()


def enumerate_ring(ring):
    """Stream every element of a finite ring exactly once, starting 0, 1."""
    if not ring.finite:
        raise UnsupportedError(f"{ring} is infinite, enumeration unsupported")
    return ring.elements()


def is_zero_divisor(x):
    """True iff x != 0 and x*b = 0 for some b != 0."""
    ring = x.ring
    if x.is_zero():
        return False
    if isinstance(ring, ModularRing):
        return math.gcd(x.payload, ring.n) != 1
    if ring.finite:
        zero = ring._zero()
        for b in ring.payloads():
            if b != zero and ring._mul(x.payload, b) == zero:
                return True
        return False
    if ring.is_domain:
        return False
    raise UnsupportedError(f"zero-divisor test undecidable over {ring}")

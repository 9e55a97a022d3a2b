"""Quantum integers over a ring: states, factorials, binomial coefficients,
quantum characteristic, and flatness/divisibility certification.

The q-state of m >= 0 is the geometric sum 1 + q + ... + q^(m-1), built by the
inductive rule (m+1)_q = (m)_q + q^m; for m < 0 (q invertible) it is
-(q^-1 + ... + q^m).  Binomial coefficients are defined by the Pascal
recursion C(n,k) = C(n-1,k-1) + q^k * C(n-1,k), which needs no division; the
cyclotomic product and factorial quotient forms live in ``cyclotomic`` and the
test suite as independent cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cyclotomic import eval_cyclotomic
from .errors import DomainError, NotInvertibleError, RingMismatchError, UnsupportedError
from .rings import CyclotomicRing, Ring, RingElement

_UNSET = object()


class QContext:
    """A ring paired with a distinguished q.

    Caches powers of q, q-states and Pascal triangle rows; the caches are
    single-writer appends and never observable from outside, so contexts can
    be shared freely.
    """

    def __init__(self, ring, q, q_inverse=None):
        if isinstance(q, int):
            q = ring.from_int(q)
        if q.ring != ring:
            raise RingMismatchError("q must belong to the context ring")
        self.ring = ring
        self.q = q
        if q_inverse is not None:
            if isinstance(q_inverse, int):
                q_inverse = ring.from_int(q_inverse)
            if not (q * q_inverse).is_one():
                raise DomainError("q_inverse does not invert q")
        self._qinv = q_inverse if q_inverse is not None else _UNSET
        self._pows = [ring.one]
        self._neg_pows = [ring.one]
        self._states = [ring.zero]
        self._neg_states = [ring.zero]
        self._facts = [ring.one]
        self._pascal = [[ring.one]]

    @property
    def q_inverse(self) -> Optional[RingElement]:
        if self._qinv is _UNSET:
            self._qinv = self.q.try_invert()
        return self._qinv

    def q_power(self, k: int) -> RingElement:
        if k >= 0:
            pows = self._pows
            while len(pows) <= k:
                pows.append(pows[-1] * self.q)
            return pows[k]
        qinv = self.q_inverse
        if qinv is None:
            raise NotInvertibleError(f"q = {self.q} is not a unit of {self.ring}")
        pows = self._neg_pows
        while len(pows) <= -k:
            pows.append(pows[-1] * qinv)
        return pows[-k]

    def __repr__(self):
        return f"QContext({self.ring}, q={self.q})"


def q_state(ctx: QContext, m: int) -> RingElement:
    """(m)_q, for any integer m (negative m requires q invertible)."""
    if m >= 0:
        states = ctx._states
        while len(states) <= m:
            j = len(states) - 1
            states.append(states[j] + ctx.q_power(j))
        return states[m]
    states = ctx._neg_states
    while len(states) <= -m:
        j = len(states)  # building (-j)_q
        states.append(states[j - 1] - ctx.q_power(-j))
    return states[-m]


def q_factorial(ctx: QContext, m: int) -> RingElement:
    """(m)_q! = (m)_q (m-1)_q ... (1)_q, with (0)_q! = 1."""
    if m < 0:
        raise DomainError("q-factorial needs m >= 0")
    facts = ctx._facts
    while len(facts) <= m:
        facts.append(facts[-1] * q_state(ctx, len(facts)))
    return facts[m]


def q_binomial(ctx: QContext, n: int, k: int) -> RingElement:
    """Pascal-recursion q-binomial coefficient; zero for k > n."""
    if n < 0 or k < 0:
        raise DomainError("q-binomial arguments must be natural numbers")
    if k > n:
        return ctx.ring.zero
    rows = ctx._pascal
    while len(rows) <= n:
        prev = rows[-1]
        r = len(rows)
        row = [ctx.ring.one]
        for j in range(1, r):
            row.append(prev[j - 1] + ctx.q_power(j) * prev[j])
        row.append(prev[r - 1])
        rows.append(row)
    return rows[n][k]


@dataclass(frozen=True)
class QCharResult:
    """Outcome of the quantum characteristic search.

    p > 0: (p)_q = 0 and (m)_q != 0 for 0 < m < p.
    p = 0, certified: no positive m has (m)_q = 0.
    p = 0, not certified: undecided within ``bound`` iterations.
    """

    p: int
    certified: bool = True
    bound: Optional[int] = None

    @classmethod
    def finite(cls, p):
        return cls(p=p, certified=True)

    @classmethod
    def zero(cls):
        return cls(p=0, certified=True)

    @classmethod
    def unknown(cls, bound):
        return cls(p=0, certified=False, bound=bound)

    @property
    def is_finite(self):
        return self.p > 0

    @property
    def is_zero(self):
        return self.p == 0 and self.certified

    @property
    def is_unknown(self):
        return self.p == 0 and not self.certified

    def __str__(self):
        if self.is_finite:
            return str(self.p)
        if self.is_zero:
            return "0 (certified)"
        return f"unknown (bound={self.bound})"


def q_characteristic(ctx: QContext, bound: int = 10**6) -> QCharResult:
    """Smallest p > 0 with (p)_q = 0, or a certificate that none exists.

    Iterates the pair (s_m, q^m) = ((m)_q, q^m), which determines all later
    pairs.  Termination certificates, sound in any ring:

    * finite rings: the pair orbit is eventually periodic; a repeat with no
      zero seen proves there is no zero at all;
    * q^d = 1 observed with (d)_q != 0: zeros can only occur at multiples of
      d, where (kd)_q = k * (d)_q, so a Z-torsion-free ring has none;
    * q^m != 1 for every m up to the ring's root-of-unity order bound: q is
      not a root of unity, and (m)_q = 0 would force q^m = 1 since
      (1 - q)(m)_q = 1 - q^m.
    """
    ring = ctx.ring
    zero_p = ring._zero()
    one_p = ring._one()
    qp = ctx.q.payload
    seen = set() if ring.finite else None
    order_bound = None if ring.finite else ring.root_of_unity_order_bound()
    s, pw = zero_p, one_p
    for m in range(1, bound + 1):
        s = ring._add(s, pw)
        pw = ring._mul(pw, qp)
        if s == zero_p:
            return QCharResult.finite(m)
        if seen is not None:
            key = (s, pw)
            if key in seen:
                return QCharResult.zero()
            seen.add(key)
        else:
            if pw == one_p:
                if ring.torsion_free:
                    return QCharResult.zero()
                return QCharResult.unknown(bound)
            if order_bound is not None and m >= order_bound:
                return QCharResult.zero()
    return QCharResult.unknown(bound)


@dataclass(frozen=True)
class FlatnessCertificate:
    """Certified q-flatness / q-divisibility verdict.

    flat=False comes with a witness (m, a): (m)_q != 0, a != 0, (m)_q * a = 0.
    A nonunit_witness is the least m with (m)_q nonzero and not a unit.
    """

    flat: bool
    divisible: bool
    witness: Optional[tuple] = None
    nonunit_witness: Optional[int] = None

    def __str__(self):
        out = f"flat={str(self.flat).lower()} divisible={str(self.divisible).lower()}"
        if self.witness is not None:
            m, a = self.witness
            out += f" torsion_witness=(m={m}, a={a})"
        if self.nonunit_witness is not None:
            out += f" nonunit_witness=m={self.nonunit_witness}"
        return out


def certify_flatness(ctx: QContext, divisibility_scan: int = 64) -> FlatnessCertificate:
    """Decide q-flatness and q-divisibility with explicit witnesses.

    Finite rings: only the finitely many distinct q-state values need checking
    (they repeat with the (s, q^m) orbit); torsion and unit status of each are
    decided by enumeration.  Integral domains are flat; fields are divisible.
    When the quantum characteristic is p > 0 the value set is exactly
    {(r)_q : 0 <= r < p}, so divisibility is decided completely there too.
    """
    ring = ctx.ring
    if ring.finite:
        zero_p = ring._zero()
        qp = ctx.q.payload
        first_seen = {}
        orbit = set()
        s, pw, m = zero_p, ring._one(), 0
        while (s, pw) not in orbit:
            orbit.add((s, pw))
            if s not in first_seen:
                first_seen[s] = m
            s, pw, m = ring._add(s, pw), ring._mul(pw, qp), m + 1
        flat, divisible = True, True
        witness, nonunit = None, None
        payloads = list(ring.payloads())
        for v, fm in sorted(first_seen.items(), key=lambda kv: kv[1]):
            if v == zero_p:
                continue
            if ring._invert(v) is not None:
                continue  # units have no torsion
            divisible = False
            if nonunit is None:
                nonunit = fm
            for a in payloads:
                if a != zero_p and ring._mul(v, a) == zero_p:
                    flat = False
                    if witness is None:
                        witness = (fm, RingElement(ring, a))
                    break
        return FlatnessCertificate(flat, divisible, witness, nonunit)

    if ring.is_field:
        return FlatnessCertificate(flat=True, divisible=True)

    if ring.is_domain:
        qc = q_characteristic(ctx)
        if qc.is_finite:
            nonunit = None
            for m in range(1, qc.p):
                if q_state(ctx, m).try_invert() is None:
                    nonunit = m
                    break
            return FlatnessCertificate(True, nonunit is None, None, nonunit)
        if qc.is_zero:
            for m in range(1, divisibility_scan + 1):
                v = q_state(ctx, m)
                if not v.is_zero() and v.try_invert() is None:
                    return FlatnessCertificate(True, False, None, m)
            raise UnsupportedError(
                f"cannot certify divisibility over {ring}: no nonunit state "
                f"found within scan limit {divisibility_scan}"
            )
        raise UnsupportedError(f"quantum characteristic undecided over {ring}")

    raise UnsupportedError(f"flatness certification needs a finite ring, domain or field, not {ring}")


def symmetric_state(ctx: QContext, n: int) -> RingElement:
    """Symmetric quantum state [n]_v = (n)_{v^2} / v^(n-1), with v = ctx.q."""
    qinv = ctx.q_inverse
    if qinv is None:
        raise NotInvertibleError(f"symmetric states need invertible q in {ctx.ring}")
    sq = QContext(ctx.ring, ctx.q * ctx.q, q_inverse=qinv * qinv)
    return q_state(sq, n) * ctx.q_power(-(n - 1))


def symmetric_binomial(ctx: QContext, n: int, k: int) -> RingElement:
    """Symmetric q-binomial: v^(-k(n-k)) * C(n,k)_{v^2}."""
    if n < 0 or k < 0:
        raise DomainError("symmetric binomial arguments must be natural numbers")
    qinv = ctx.q_inverse
    if qinv is None:
        raise NotInvertibleError(f"symmetric binomials need invertible q in {ctx.ring}")
    sq = QContext(ctx.ring, ctx.q * ctx.q, q_inverse=qinv * qinv)
    return q_binomial(sq, n, k) * ctx.q_power(-k * (n - k))


@dataclass(frozen=True)
class CyclotomicEmbedding:
    """The ring map Z[t]/chi_p -> R sending the class of t to q."""

    source: CyclotomicRing
    target: Ring
    q: RingElement

    def __call__(self, elt: RingElement) -> RingElement:
        if elt.ring != self.source:
            raise RingMismatchError("element does not belong to the embedding source")
        acc = self.target.zero
        for c in reversed(elt.payload):
            acc = acc * self.q + self.target.from_int(c)
        return acc


@dataclass(frozen=True)
class CyclotomicObstruction:
    """Nonzero value chi_p(q): no embedding exists."""

    value: RingElement


def embed_cyclotomic(ctx: QContext, p: int):
    """Evaluation map Z[t]/chi_p -> R with t -> q, or the obstruction chi_p(q)."""
    if p < 2:
        raise DomainError("cyclotomic embedding needs p >= 2")
    v = eval_cyclotomic(p, ctx.q)
    if v.is_zero():
        return CyclotomicEmbedding(CyclotomicRing(p), ctx.ring, ctx.q)
    return CyclotomicObstruction(v)


def q_power_context(ctx: QContext, k: int) -> QContext:
    """The context (R, q^k); pair with q_characteristic for the p/gcd(p,k) law."""
    if k < 1:
        raise DomainError("power context needs k >= 1")
    if k == 1:
        return ctx
    qinv = ctx.q_inverse
    return QContext(ctx.ring, ctx.q_power(k), q_inverse=None if qinv is None else qinv**k)

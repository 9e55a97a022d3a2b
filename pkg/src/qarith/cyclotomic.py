"""Cyclotomic polynomials over the integers and divisor-indexed factorizations.

A polynomial over Z is a tuple of int coefficients, constant term first, with
no trailing zeros.  chi(m) is produced by the classical recursion: divide
t^m - 1 exactly by the product of chi(d) over the proper divisors d of m.
The exact divisions double as self-checks: a nonzero remainder means the
table is corrupt and raises immediately.

The factorization maps are symbolic (index sets and exponent maps); use
``evaluate_factors`` to multiply them out at a point of any ring.
"""

from __future__ import annotations

import functools

from .errors import DomainError


def _mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            for j, d in enumerate(b):
                out[i + j] += c * d
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _divexact(a, b):
    # long division by b with unit leading coefficient; remainder must vanish
    assert b and b[-1] in (1, -1)
    r = list(a)
    q = [0] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in reversed(range(len(q))):
        c = r[k + len(b) - 1] * lead
        q[k] = c
        if c:
            for j, d in enumerate(b):
                r[k + j] -= c * d
    assert not any(r), "cyclotomic table corruption: inexact division"
    while q and q[-1] == 0:
        q.pop()
    return tuple(q)


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@functools.lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficient vector of the m-th cyclotomic polynomial.

    >>> cyclotomic_poly(1)
    (-1, 1)
    >>> cyclotomic_poly(4)
    (1, 0, 1)
    >>> cyclotomic_poly(6)
    (1, -1, 1)
    """
    if m < 1:
        raise DomainError("cyclotomic index must be >= 1")
    if m == 1:
        return (-1, 1)
    poly = (-1,) + (0,) * (m - 1) + (1,)
    for d in divisors(m):
        if d < m:
            poly = _divexact(poly, cyclotomic_poly(d))
    return poly


def eval_poly(coeffs, x):
    """Evaluate an integer-coefficient polynomial at a ring element (Horner)."""
    ring = x.ring
    acc = ring.zero
    for c in reversed(coeffs):
        acc = acc * x + ring.from_int(c)
    return acc


def eval_cyclotomic(m: int, x):
    """chi_m evaluated at a ring element."""
    return eval_poly(cyclotomic_poly(m), x)


def factor_q_integer(n: int) -> tuple[int, ...]:
    """Indices m with (n)_q = prod chi_m(q): the divisors of n other than 1."""
    if n < 1:
        raise DomainError("q-integer factorization needs n >= 1")
    return tuple(d for d in divisors(n) if d != 1)


def factor_q_factorial(n: int) -> dict[int, int]:
    """Exponent map {m: floor(n/m)} with (n)_q! = prod chi_m(q)^floor(n/m), m >= 2."""
    if n < 0:
        raise DomainError("q-factorial factorization needs n >= 0")
    return {m: n // m for m in range(2, n + 1) if n // m > 0}


def factor_q_binomial(n: int, k: int) -> tuple[int, ...]:
    """Indices m >= 2 with floor(n/m) > floor(k/m) + floor((n-k)/m).

    Each such index contributes exponent exactly 1, and the product of the
    corresponding chi_m(q) is the (n, k) q-binomial coefficient.
    """
    if k < 0 or n < 0 or k > n:
        raise DomainError("q-binomial factorization needs 0 <= k <= n")
    return tuple(m for m in range(2, n + 1) if n // m > k // m + (n - k) // m)


def evaluate_factors(factors, x):
    """Multiply out chi_m(x)^e over an index iterable or an {index: e} map."""
    ring = x.ring
    acc = ring.one
    if isinstance(factors, dict):
        items = sorted(factors.items())
    else:
        items = [(m, 1) for m in factors]
    for m, e in items:
        acc = acc * eval_cyclotomic(m, x) ** e
    return acc

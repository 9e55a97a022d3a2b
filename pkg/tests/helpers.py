"""Independent oracles for the test suite.

Nothing in here reuses the code paths under test: subspace counts come from
explicit span enumeration, Stirling numbers from the classical recurrence,
totients from the gcd definition.
"""

import itertools
import math


def brute_totient(m):
    return sum(1 for i in range(1, m + 1) if math.gcd(i, m) == 1)


def stirling2_table(max_n):
    """S(n, k) by the recurrence S(n,k) = k*S(n-1,k) + S(n-1,k-1)."""
    table = {(0, 0): 1}
    for n in range(1, max_n + 1):
        table[(n, 0)] = 0
        for k in range(1, n + 1):
            table[(n, k)] = k * table.get((n - 1, k), 0) + table.get((n - 1, k - 1), 0)
    return table


def count_subspaces(field, n, k):
    """Number of k-dimensional subspaces of field^n, by span enumeration.

    Subspaces are built level by level: each (j+1)-dimensional space is the
    span of a j-dimensional one and a vector outside it, deduplicated by the
    reduced-row-echelon canonical basis.  No counting formula is involved;
    the field's own arithmetic is tabulated once up front for speed.
    """
    els = [e.payload for e in field.elements()]
    zero = field._zero()
    add = {(a, b): field._add(a, b) for a in els for b in els}
    mul = {(a, b): field._mul(a, b) for a in els for b in els}
    neg = {a: field._neg(a) for a in els}
    inv = {a: field._invert(a) for a in els}

    def reduce_vec(v, rows):
        v = list(v)
        for row, pivot in rows:
            c = v[pivot]
            if c != zero:
                nc = neg[c]
                for i in range(n):
                    v[i] = add[(v[i], mul[(nc, row[i])])]
        return v

    def insert(rows, v):
        # v already reduced against rows and nonzero; normalize and back-eliminate
        pivot = next(i for i in range(n) if v[i] != zero)
        s = inv[v[pivot]]
        v = [mul[(s, c)] for c in v]
        new_rows = []
        for row, p in rows:
            c = row[pivot]
            if c != zero:
                nc = neg[c]
                row = [add[(a, mul[(nc, b)])] for a, b in zip(row, v)]
            new_rows.append((tuple(row), p))
        new_rows.append((tuple(v), pivot))
        new_rows.sort(key=lambda rp: rp[1])
        return tuple(new_rows)

    vectors = list(itertools.product(els, repeat=n))
    level = {()}
    for _ in range(k):
        nxt = set()
        for rows in level:
            for v in vectors:
                red = reduce_vec(v, rows)
                if any(c != zero for c in red):
                    nxt.add(insert(rows, red))
        level = nxt
    return len(level)

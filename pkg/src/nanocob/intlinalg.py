"""Exact rank and lattice membership over the integers and prime fields.

Everything here works on small dense matrices (tens of rows at most),
so clarity beats asymptotics.  No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        lead = m[rank][col]
        for r in range(rank + 1, nrows):
            factor = m[r][col]
            for c in range(col, ncols):
                m[r][c] = (m[r][c] * lead - factor * m[rank][c]) // prev
        prev = lead
        rank += 1
        if rank == nrows:
            break
    return rank


def rational_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank over Q: clear denominators per row, then integer elimination."""
    scaled = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        denom = 1
        for x in fracs:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        scaled.append([int(x * denom) for x in fracs])
    return integer_rank(scaled)


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank over GF(p) by straightforward elimination."""
    m = [[x % p for x in r] for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if m[r][col] % p != 0:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        m[rank] = [(x * inv) % p for x in m[rank]]
        for r in range(nrows):
            if r != rank and m[r][col] % p:
                f = m[r][col]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


class IntegerLattice:
    """Integer row span of a set of generator vectors, with membership
    queries answered through an incrementally maintained echelon basis."""

    def __init__(self, dimension: int, generators: Sequence[Sequence[int]] = ()):
        self.dimension = dimension
        self._pivots: dict[int, list[int]] = {}
        for g in generators:
            self.add(g)

    def add(self, vector: Sequence[int]) -> None:
        v = list(vector)
        if len(v) != self.dimension:
            raise ValueError("vector dimension mismatch")
        for col in range(self.dimension):
            if v[col] == 0:
                continue
            if col not in self._pivots:
                if v[col] < 0:
                    v = [-x for x in v]
                self._pivots[col] = v
                return
            row = self._pivots[col]
            a, b = row[col], v[col]
            if b % a == 0:
                q = b // a
                v = [x - q * y for x, y in zip(v, row)]
            else:
                g, x, y = _xgcd(a, b)
                combined = [x * r + y * w for r, w in zip(row, v)]
                reduced = [(a // g) * w - (b // g) * r for r, w in zip(row, v)]
                self._pivots[col] = combined
                v = reduced
        # fully reduced to zero: nothing to add

    def contains(self, vector: Sequence[int]) -> bool:
        v = list(vector)
        if len(v) != self.dimension:
            raise ValueError("vector dimension mismatch")
        for col in range(self.dimension):
            if v[col] == 0:
                continue
            row = self._pivots.get(col)
            if row is None or v[col] % row[col] != 0:
                return False
            q = v[col] // row[col]
            v = [x - q * y for x, y in zip(v, row)]
        return all(x == 0 for x in v)

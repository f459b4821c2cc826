"""Homology of cyclic branched covers and generator-count lower bounds.

The double branched cover's first homology is presented by V + V^t; the
k-fold cover is presented by the hermitian Blanchfield matrix viewed over
Z[t]/(t^k - 1) and realified to an integer matrix.  Generator counts of
these modules (Wendt bound, Nakanishi bounds over F_p) bound the unknotting
number from below.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .matalg import snf_Z, snf_fp_laurent
from .rings import LaurentPoly
from .seifert import SeifertMatrix, akt, normalize, symmetrized, validate


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z/d_1 + ... + Z/d_r with d_1 | d_2 | ... and every d_i > 1.

    ``gens`` are representative column vectors for the canonical generators
    inside the presenting cokernel Z^ambient / M Z^ambient.
    """

    factors: tuple[int, ...]
    gens: tuple[tuple[int, ...], ...]
    ambient: int

    def __post_init__(self):
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")
        if any(d <= 1 for d in self.factors):
            raise ValueError("invariant factors must exceed 1")

    @property
    def rank(self) -> int:
        return len(self.factors)

    def order(self) -> int:
        n = 1
        for d in self.factors:
            n *= d
        return n

    def is_trivial(self) -> bool:
        return not self.factors

    def is_cyclic(self) -> bool:
        return len(self.factors) <= 1

    def elements(self):
        """All elements as coefficient tuples over the canonical factors."""
        return itertools.product(*(range(d) for d in self.factors))

    def element_order(self, x: tuple[int, ...]) -> int:
        n = 1
        for xi, d in zip(x, self.factors):
            o = d // gcd(d, xi)
            n = n * o // gcd(n, o)
        return n


INFINITE = type("InfiniteHomology", (), {"__repr__": lambda self: "INFINITE"})()


def group_from_presentation(M) -> FiniteAbelianGroup:
    """Cokernel of an integer matrix, with generators lifted to Z^n."""
    n = len(M)
    smith = snf_Z(M)
    diag = smith.diagonal()
    if any(d == 0 for d in diag) or len(M[0]) < n:
        raise ValueError("presentation has infinite cokernel")
    gens = []
    factors = []
    for i, d in enumerate(diag):
        if d != 1:
            factors.append(d)
            gens.append(tuple(smith.u_inv[r][i] for r in range(n)))
    return FiniteAbelianGroup(tuple(factors), tuple(gens), n)


def double_cover_group(V: SeifertMatrix) -> FiniteAbelianGroup:
    """H_1 of the double branched cover: the cokernel of V + V^t."""
    V = validate(V)
    if V.size == 0:
        return FiniteAbelianGroup((), (), 0)
    g = group_from_presentation(symmetrized(V))
    if g.order() % 2 == 0:
        raise ArithmeticError("double cover homology must have odd order")
    return g


def wendt_bound(V: SeifertMatrix) -> int:
    """Minimal generator count of the double cover homology."""
    return double_cover_group(V).rank


def nakanishi_fp(V: SeifertMatrix, p: int) -> int:
    """Generator count of the Alexander module over F_p[t, t^-1].

    Uses the presentation tV - V^t, which needs no normalization; the count
    is a lower bound for the Nakanishi index.
    """
    V = validate(V)
    if V.size == 0:
        return 0
    t = LaurentPoly.t()
    M = [
        [t * V.rows[i][j] - LaurentPoly.const(V.rows[j][i]) for j in range(V.size)]
        for i in range(V.size)
    ]
    return len(snf_fp_laurent(M, p))


def cyclic_realification(entries, k: int) -> list[list[int]]:
    """Replace each Laurent entry by its k x k block under t -> cyclic shift."""
    n = len(entries)
    out = [[0] * (n * k) for _ in range(n * k)]
    for bi in range(n):
        for bj in range(n):
            p = entries[bi][bj]
            for e, c in p.items():
                for col in range(k):
                    out[bi * k + (col + e) % k][bj * k + col] += c
    return out


def branched_cover_group(V: SeifertMatrix, k: int):
    """H_1 of the k-fold branched cover, or the INFINITE marker.

    Presented by the realification of the Blanchfield matrix over Z[Z/k];
    finite exactly when no Alexander root is a k-th root of unity.
    """
    V = validate(V)
    if k < 2:
        raise ValueError("cover degree must be at least 2")
    if V.size == 0:
        return FiniteAbelianGroup((), (), 0)
    A = akt(normalize(V))
    R = cyclic_realification([list(r) for r in A.entries], k)
    smith = snf_Z(R)
    diag = smith.diagonal()
    if any(d == 0 for d in diag):
        return INFINITE
    gens = []
    factors = []
    n = len(R)
    for i, d in enumerate(diag):
        if d != 1:
            factors.append(d)
            gens.append(tuple(smith.u_inv[r][i] for r in range(n)))
    return FiniteAbelianGroup(tuple(factors), tuple(gens), n)

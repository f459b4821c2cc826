"""Signature invariants: the knot signature, the signature/nullity profile
over a root-of-unity grid, and the grid lower bound derived from it.

The profile evaluates the hermitian matrix W(z) = (1-z)V + (1-z^-1)V^t at
every grid point z = exp(2*pi*i*k/n).  A point costs almost nothing on the
fast path: the leading principal minors of W(t) are computed once as integer
Laurent polynomials, each point only evaluates them in the smallest
cyclotomic field containing z and reads off certified signs (Jacobi's rule).
Points where some minor vanishes fall back to full congruence
diagonalization; the theory keeps those fields small, because a minor of
degree d can only vanish at roots of unity of conductor phi <= d.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .matalg import det_exact, hermitian_sig, identity, mat_mul, mat_transpose
from .rings import CycloNumber, LaurentPoly, eval_cyclo
from .seifert import SeifertMatrix, validate


@dataclass(frozen=True)
class SignatureProfile:
    """sigma_k, eta_k at z = exp(2*pi*i*k/order) for k = 0..order-1.

    By convention the k = 0 point is (0, 0); conjugate points agree:
    sigma_k = sigma_{order-k} and eta_k = eta_{order-k}.
    """

    order: int
    sigmas: tuple[int, ...]
    etas: tuple[int, ...]

    def point(self, k: int) -> tuple[int, int]:
        return self.sigmas[k % self.order], self.etas[k % self.order]


def _w_matrix(V: SeifertMatrix) -> list[list[LaurentPoly]]:
    """(1-t)V + (1-t^-1)V^t as a Laurent matrix."""
    t = LaurentPoly.t()
    one = LaurentPoly.const(1)
    a = one - t
    b = one - t.involute()
    n = V.size
    return [
        [a * V.rows[i][j] + b * V.rows[j][i] for j in range(n)] for i in range(n)
    ]


def lt_point(V: SeifertMatrix, n: int, k: int) -> tuple[int, int]:
    """Exact (signature, nullity) of W(z) at z = exp(2*pi*i*k/n).

    k = 0 (z = 1) returns (0, 0) by convention.
    """
    V = validate(V)
    if not 0 <= k < n:
        raise ValueError("need 0 <= k < n")
    if V.size == 0:
        return 0, 0
    g = gcd(k, n)
    if k == 0 or n // g == 1:
        return 0, 0
    n2, k2 = n // g, k // g
    z = CycloNumber.root_of_unity(n2, k2)
    zbar = z.conj()
    one = CycloNumber.from_rational(1, n2)
    a = one - z
    b = one - zbar
    m = V.size
    M = [
        [
            a * CycloNumber.from_rational(V.rows[i][j], n2)
            + b * CycloNumber.from_rational(V.rows[j][i], n2)
            for j in range(m)
        ]
        for i in range(m)
    ]
    return hermitian_sig(M)


def signature(V: SeifertMatrix) -> int:
    """The ordinary knot signature sign(V + V^t)."""
    return lt_point(V, 2, 1)[0]


def _leading_minors(V: SeifertMatrix) -> list[LaurentPoly] | None:
    """Laurent polynomials D_1..D_m, the leading principal minors of Q W Q^t
    for a unimodular Q chosen (deterministically) so none vanishes identically.
    Returns None if no such Q is found; W itself is always nonsingular, so
    this only fails with negligible probability.
    """
    W = _w_matrix(V)
    m = V.size
    rng = random.Random(0)
    Q = identity(m)
    for attempt in range(50):
        if attempt > 0:
            Q = identity(m)
            for _ in range(m + 2):
                i, j = rng.randrange(m), rng.randrange(m)
                if i != j:
                    c = rng.choice([-1, 1])
                    for r in range(m):
                        Q[i][r] += c * Q[j][r]
        QW = mat_mul(mat_mul(Q, W), mat_transpose(Q))
        minors = []
        ok = True
        for i in range(1, m + 1):
            d = det_exact([row[:i] for row in QW[:i]])
            if d.is_zero():
                ok = False
                break
            minors.append(d)
        if ok:
            return minors
    return None


def profile(V: SeifertMatrix, order: int = 1296) -> SignatureProfile:
    """The full signature/nullity profile over the order-th roots of unity.

    Conjugation symmetry halves the work; each point is exact.
    """
    V = validate(V)
    if order < 1:
        raise ValueError("grid order must be positive")
    if V.size == 0 or order == 1:
        return SignatureProfile(order, (0,) * order, (0,) * order)
    minors = _leading_minors(V)
    sigmas = [0] * order
    etas = [0] * order
    for k in range(1, order // 2 + 1):
        s, e = _point_via_minors(V, minors, order, k)
        sigmas[k], etas[k] = s, e
        sigmas[order - k], etas[order - k] = s, e
    return SignatureProfile(order, tuple(sigmas), tuple(etas))


def _point_via_minors(V, minors, n, k):
    g = gcd(k, n)
    n2, k2 = n // g, k // g
    if n2 == 1:
        return 0, 0
    if minors is None:
        return lt_point(V, n2, k2)
    signs = [1]
    for d in minors:
        v = eval_cyclo(d, n2, k2)
        if v.is_zero():
            return lt_point(V, n2, k2)
        signs.append(v.sign())
    sig = 0
    for prev, cur in zip(signs, signs[1:]):
        sig += 1 if prev == cur else -1
    return sig, 0


def mu_grid(prof: SignatureProfile) -> Fraction:
    """(max(eta+sigma) + max(eta-sigma)) / 2 over the grid.

    Each sampled point individually bounds the count of positive/negative
    crossing changes, so this is a valid lower bound; it is reported as a
    grid value, not as the supremum over the whole circle.
    """
    plus = max(e + s for s, e in zip(prof.sigmas, prof.etas))
    minus = max(e - s for s, e in zip(prof.sigmas, prof.etas))
    return Fraction(plus + minus, 2)

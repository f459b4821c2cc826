"""Seifert matrices and the invariants read off from them directly.

A Seifert matrix here is a square integer matrix V of even size whose
antisymmetrization V - V^t is unimodular.  This module validates and
normalizes such matrices, computes the Alexander polynomial and the signed
knot determinant, builds the hermitian Laurent matrix that presents the
Blanchfield pairing, and provides the S-equivalence moves (unimodular
congruence and stabilization) used by the verification harness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .matalg import (
    HermitianLaurentMatrix,
    block_diag,
    det_exact,
    identity,
    mat_mul,
    mat_sub,
    mat_transpose,
    symplectic_normalize,
)
from .rings import LaurentPoly


class SeifertError(ValueError):
    """Raised when an integer matrix is not a valid Seifert matrix."""


@dataclass(frozen=True)
class SeifertMatrix:
    """A validated Seifert matrix (even size, unimodular antisymmetrization)."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise SeifertError("matrix is not square")
        if n % 2:
            raise SeifertError(f"size {n} is odd")
        if n:
            a = mat_sub(self.as_lists(), mat_transpose(self.as_lists()))
            if abs(det_exact(a)) != 1:
                raise SeifertError(
                    f"det(V - V^t) = {det_exact(a)} is not a unit"
                )

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def genus(self) -> int:
        return len(self.rows) // 2

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def transpose(self) -> "SeifertMatrix":
        return SeifertMatrix(tuple(zip(*self.rows)) if self.rows else ())

    def __repr__(self) -> str:
        return f"SeifertMatrix({[list(r) for r in self.rows]})"


def validate(matrix) -> SeifertMatrix:
    """Accept an integer matrix as a Seifert matrix, or raise SeifertError."""
    if isinstance(matrix, SeifertMatrix):
        return matrix
    return SeifertMatrix(tuple(tuple(int(v) for v in row) for row in matrix))


UNKNOT = validate([])


STANDARD_SYMPLECTIC_OK = "V - V^t already equals [[0, I], [-I, 0]]"


def _standard_j(k: int) -> list[list[int]]:
    J = [[0] * (2 * k) for _ in range(2 * k)]
    for i in range(k):
        J[i][k + i] = 1
        J[k + i][i] = -1
    return J


def is_normalized(V: SeifertMatrix) -> bool:
    k = V.genus
    a = mat_sub(V.as_lists(), mat_transpose(V.as_lists()))
    return a == _standard_j(k)


def normalize(V: SeifertMatrix) -> SeifertMatrix:
    """A congruent representative with V - V^t the standard symplectic form."""
    V = validate(V)
    if V.size == 0 or is_normalized(V):
        return V
    W = mat_sub(V.as_lists(), mat_transpose(V.as_lists()))
    P = symplectic_normalize(W)
    return congruence(V, P)


def congruence(V: SeifertMatrix, P) -> SeifertMatrix:
    """P V P^t for a unimodular integer matrix P."""
    V = validate(V)
    P = [list(r) for r in P]
    if abs(det_exact(P)) != 1:
        raise SeifertError("congruence matrix is not unimodular")
    return validate(mat_mul(mat_mul(P, V.as_lists()), mat_transpose(P)))


def stabilize(V: SeifertMatrix, column=None, x: int = 0) -> SeifertMatrix:
    """Enlarge by two rows/columns: [[V, xi, 0], [0, x, 1], [0, 0, 0]].

    Any integer column xi and corner entry x give an S-equivalent matrix.
    """
    V = validate(V)
    n = V.size
    xi = [0] * n if column is None else [int(v) for v in column]
    if len(xi) != n:
        raise SeifertError("stabilization column has wrong length")
    out = [list(row) + [xi[i], 0] for i, row in enumerate(V.rows)]
    out.append([0] * n + [x, 1])
    out.append([0] * n + [0, 0])
    return validate(out)


def connected_sum(V1: SeifertMatrix, V2: SeifertMatrix) -> SeifertMatrix:
    V1, V2 = validate(V1), validate(V2)
    return validate(block_diag(V1.as_lists(), V2.as_lists()))


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------


def alexander(V: SeifertMatrix) -> LaurentPoly:
    """The Alexander polynomial t^-n det(Vt - V^t), normalized so that
    the value at 1 equals +1; satisfies p = p.involute()."""
    V = validate(V)
    n = V.genus
    if V.size == 0:
        return LaurentPoly.const(1)
    t = LaurentPoly.t()
    M = [
        [t * V.rows[i][j] - LaurentPoly.const(V.rows[j][i]) for j in range(V.size)]
        for i in range(V.size)
    ]
    p = det_exact(M).shift(-n)
    at_one = p.eval_int(1)
    if at_one == -1:
        p = -p
    elif at_one != 1:
        raise SeifertError(f"Alexander polynomial value at 1 is {at_one}")
    return p


def symmetrized(V: SeifertMatrix) -> list[list[int]]:
    """V + V^t."""
    return [
        [V.rows[i][j] + V.rows[j][i] for j in range(V.size)] for i in range(V.size)
    ]


def knot_determinant(V: SeifertMatrix) -> int:
    """The signed determinant (-1)^n det(V + V^t); always odd."""
    V = validate(V)
    if V.size == 0:
        return 1
    d = det_exact(symmetrized(V))
    return d if V.genus % 2 == 0 else -d


def akt(V: SeifertMatrix) -> HermitianLaurentMatrix:
    """The hermitian Laurent matrix presenting the Blanchfield pairing.

    Requires the normalized form (V - V^t standard symplectic).  Writing V in
    k x k blocks [[P, Q], [R, S]] with R^t = Q - I, the result is::

        [[ P,                 (1-t) Q - I       ],
         [ (1-t^-1) Q^t - I,  (2 - t - t^-1) S  ]]

    whose value at t = 1 is [[P, -I], [-I, 0]]-shaped up to sign conventions
    and is unimodular, and whose determinant is the Alexander polynomial up
    to a unit.
    """
    V = validate(V)
    if not is_normalized(V):
        raise SeifertError("matrix must be normalized before building A(t)")
    k = V.genus
    t = LaurentPoly.t()
    one = LaurentPoly.const(1)
    tinv = t.involute()
    n = V.size
    entries = [[None] * n for _ in range(n)]
    for i in range(k):
        for j in range(k):
            P_ij = V.rows[i][j]
            Q_ij = V.rows[i][k + j]
            Qt_ij = V.rows[j][k + i]  # (Q^t)_{ij}
            S_ij = V.rows[k + i][k + j]
            entries[i][j] = LaurentPoly.const(P_ij)
            top_right = (one - t) * Q_ij
            if i == j:
                top_right = top_right - one
            entries[i][k + j] = top_right
            bottom_left = (one - tinv) * Qt_ij
            if i == j:
                bottom_left = bottom_left - one
            entries[k + i][j] = bottom_left
            entries[k + i][k + j] = (LaurentPoly.const(2) - t - tinv) * S_ij
    return HermitianLaurentMatrix(tuple(tuple(row) for row in entries))


# ---------------------------------------------------------------------------
# random S-equivalence moves for the verification harness
# ---------------------------------------------------------------------------


def random_congruence(V: SeifertMatrix, rng: random.Random) -> SeifertMatrix:
    """Apply a random small unimodular congruence (product of shears/swaps)."""
    V = validate(V)
    n = V.size
    if n == 0:
        return V
    P = identity(n)
    for _ in range(rng.randint(2, 6)):
        kind = rng.random()
        i = rng.randrange(n)
        j = rng.randrange(n)
        if kind < 0.6 and i != j:
            c = rng.choice([-2, -1, 1, 2])
            for r in range(n):
                P[i][r] += c * P[j][r]
        elif kind < 0.8 and i != j:
            P[i], P[j] = P[j], P[i]
        else:
            P[i] = [-v for v in P[i]]
    return congruence(V, P)


def random_stabilization(V: SeifertMatrix, rng: random.Random) -> SeifertMatrix:
    column = [rng.randint(-2, 2) for _ in range(V.size)]
    return stabilize(V, column=column, x=rng.randint(-2, 2))

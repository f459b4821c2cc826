"""Linking pairings on finite abelian groups of odd order.

A linking form is carried on the cokernel of a symmetric integer matrix with
odd determinant, with values v^t A^-1 w in Q/Z.  This module constructs the
double-cover form of a knot, scales it, decides whether a candidate integer
matrix presents an isometric form (with a generating witness), and houses the
unknotting-number-one and -two obstructions that read off the form directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .matalg import snf_Z
from .presentation import FiniteAbelianGroup, double_cover_group, group_from_presentation
from .rings import QmodZ
from .seifert import SeifertMatrix, symmetrized, validate


@dataclass(frozen=True)
class LinkingForm:
    """A symmetric Q/Z-valued pairing on the canonical generators of a
    finite abelian group of odd order."""

    group: FiniteAbelianGroup
    gram: tuple[tuple[QmodZ, ...], ...]

    def __post_init__(self):
        r = self.group.rank
        if len(self.gram) != r or any(len(row) != r for row in self.gram):
            raise ValueError("gram size must match the group rank")
        for i in range(r):
            for j in range(r):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("gram must be symmetric")
                if self.gram[i][j].scale(self.group.factors[i]).num != 0:
                    raise ValueError("pairing value order exceeds generator order")

    def eval(self, x: tuple[int, ...], y: tuple[int, ...]) -> Fraction:
        """l(x, y) as a Fraction in [0, 1)."""
        total = Fraction(0)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    g = self.gram[i][j]
                    total += Fraction(xi * yj * g.num, g.den)
        return total % 1

    def eval_qz(self, x, y) -> QmodZ:
        return QmodZ.from_fraction(self.eval(x, y))


def _fraction_inverse(A) -> list[list[Fraction]]:
    n = len(A)
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [row[n:] for row in M]


def linking_from_matrix(A) -> LinkingForm:
    """The linking form of a symmetric integer matrix with odd determinant."""
    n = len(A)
    for i in range(n):
        for j in range(n):
            if A[i][j] != A[j][i]:
                raise ValueError("matrix must be symmetric")
    if n == 0:
        return LinkingForm(FiniteAbelianGroup((), (), 0), ())
    from .matalg import det_exact

    d = det_exact([row[:] for row in A])
    if d == 0 or d % 2 == 0:
        raise ValueError(f"determinant {d} must be odd and nonzero")
    group = group_from_presentation(A)
    inv = _fraction_inverse(A)
    gram = []
    for gi in group.gens:
        row = []
        for gj in group.gens:
            val = Fraction(0)
            for a in range(n):
                if gi[a]:
                    for b in range(n):
                        if gj[b]:
                            val += gi[a] * inv[a][b] * gj[b]
            row.append(QmodZ.from_fraction(val % 1))
        gram.append(tuple(row))
    return LinkingForm(group, tuple(gram))


def double_cover_linking(V: SeifertMatrix) -> LinkingForm:
    """l(K), presented by V + V^t."""
    V = validate(V)
    return linking_from_matrix(symmetrized(V))


def scale(form: LinkingForm, n: int) -> LinkingForm:
    """n * l for n coprime to the group order."""
    if gcd(n, form.group.order()) != 1:
        raise ValueError("scaling factor shares a divisor with the group order")
    return LinkingForm(
        form.group, tuple(tuple(v.scale(n) for v in row) for row in form.gram)
    )


# ---------------------------------------------------------------------------
# isometry testing against candidate presentation matrices
# ---------------------------------------------------------------------------


def isometry_test(C, target: LinkingForm):
    """Search for generators v_1..v_m of the target group whose pairwise
    pairing values equal the entries of C^-1 mod Z.

    Returns the lexicographically least witness tuple in the candidate order
    (elements sorted by order, then coordinates), or None.  Requires
    |det C| = |target group|.
    """
    m = len(C)
    for i in range(m):
        for j in range(m):
            if C[i][j] != C[j][i]:
                raise ValueError("candidate matrix must be symmetric")
    from .matalg import det_exact

    d = det_exact([row[:] for row in C]) if m else 1
    if abs(d) != target.group.order():
        raise ValueError(
            f"candidate determinant {d} does not match group order {target.group.order()}"
        )
    if m == 0:
        return () if target.group.is_trivial() else None
    inv = _fraction_inverse(C)
    required = [[inv[i][j] % 1 for j in range(m)] for i in range(m)]

    group = target.group
    elements = sorted(group.elements(), key=lambda x: (group.element_order(x), x))
    self_value = {x: target.eval(x, x) for x in elements}

    # candidates per slot, filtered by the diagonal value first
    slot_candidates = []
    for i in range(m):
        slot_candidates.append([x for x in elements if self_value[x] == required[i][i]])

    factors = group.factors
    r = group.rank

    def generates(chosen) -> bool:
        if r == 0:
            return True
        # the chosen columns generate iff [coords | diag(factors)] has trivial cokernel
        M = []
        for row in range(r):
            M.append([chosen[c][row] for c in range(m)] + [factors[row] * int(col == row) for col in range(r)])
        diag = snf_Z(M).diagonal()
        return all(x == 1 for x in diag)

    witness = []

    def dfs(i: int) -> bool:
        if i == m:
            return generates(witness)
        for x in slot_candidates[i]:
            ok = True
            for j in range(i):
                if target.eval(witness[j], x) != required[j][i]:
                    ok = False
                    break
            if ok:
                witness.append(x)
                if dfs(i + 1):
                    return True
                witness.pop()
        return False

    if dfs(0):
        return tuple(witness)
    return None


# ---------------------------------------------------------------------------
# unknotting-number obstructions read off the linking form
# ---------------------------------------------------------------------------


def lickorish_test(V: SeifertMatrix, eps: int) -> bool:
    """Whether some generator h of the double cover homology satisfies
    l(h, h) = -2*eps/det in Q/Z, with det the signed knot determinant.

    A knot admitting an eps-crossing unknotting move must pass; failure for
    both signs obstructs (algebraic) unknotting number one.  Non-cyclic
    homology fails outright since no single generator exists.
    """
    from .seifert import knot_determinant

    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    V = validate(V)
    det = knot_determinant(V)
    form = double_cover_linking(V)
    group = form.group
    if not group.is_cyclic():
        return False
    want = QmodZ(-2 * eps, det)
    if group.is_trivial():
        return want.is_zero()
    d = group.factors[0]
    g_val = form.gram[0][0]
    for u in range(1, d):
        if gcd(u, d) == 1 and g_val.scale(u * u) == want:
            return True
    return False


def stoimenow_test(sigma: int, det_k: int) -> bool:
    """Fires when |sigma| = 4, |det| is a perfect square, and no prime
    divisor of |det| is congruent to 3 mod 4; then the unknotting number
    exceeds two."""
    if abs(sigma) != 4:
        return False
    d = abs(det_k)
    r = _isqrt(d)
    if r * r != d:
        return False
    for p in _prime_factors(d):
        if p % 4 == 3:
            return False
    return True


def _isqrt(n: int) -> int:
    if n < 0:
        raise ValueError
    x = int(n**0.5)
    while x * x > n:
        x -= 1
    while (x + 1) * (x + 1) <= n:
        x += 1
    return x


def _prime_factors(n: int) -> set[int]:
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out

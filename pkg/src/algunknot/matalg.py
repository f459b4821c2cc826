"""Exact matrix algebra over Z, Z[t,t^-1], F_p[t] and cyclotomic fields.

Matrices are plain lists of lists; nothing here is numerical.  The four
workhorses are fraction-free determinants (Bareiss), Smith normal form with
recorded transformations, symplectic normalization of unimodular antisymmetric
matrices, and certified signature/nullity of Hermitian cyclotomic matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import CycloNumber, LaurentPoly, ModPLaurentPoly

IntMatrix = list[list[int]]


# ---------------------------------------------------------------------------
# generic helpers
# ---------------------------------------------------------------------------


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    rows, inner, cols = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(rows):
        Ai = A[i]
        row = []
        for j in range(cols):
            s = Ai[0] * B[0][j]
            for k in range(1, inner):
                s = s + Ai[k] * B[k][j]
            row.append(s)
        out.append(row)
    return out


def mat_transpose(A):
    return [list(col) for col in zip(*A)] if A else []


def mat_neg(A):
    return [[-v for v in row] for row in A]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def block_diag(A, B):
    n, m = len(A), len(B)
    zero_row_a = [0] * m
    zero_row_b = [0] * n
    return [row + zero_row_a for row in A] + [zero_row_b + row for row in B]


# ---------------------------------------------------------------------------
# exact determinants
# ---------------------------------------------------------------------------


def det_exact(M):
    """Exact determinant of a square matrix over Z or Z[t, t^-1].

    Integer matrices go through fraction-free (Bareiss) elimination.  Laurent
    matrices are first scaled row-wise by minimal t-powers into Z[t], run
    through the same elimination, and the t-power is divided back out.
    """
    n = len(M)
    if n == 0:
        return 1
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    if any(isinstance(v, LaurentPoly) for row in M for v in row):
        return _det_laurent(M)
    return _bareiss_int([row[:] for row in M])


def _bareiss_int(A: IntMatrix) -> int:
    n = len(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k] != 0:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = A[k][k]
        for i in range(k + 1, n):
            Aik = A[i][k]
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * pivot - Aik * A[k][j]) // prev
            A[i][k] = 0
        prev = pivot
    return sign * A[n - 1][n - 1]


def _det_laurent(M) -> LaurentPoly:
    n = len(M)
    A = []
    shift_total = 0
    for row in M:
        row = [v if isinstance(v, LaurentPoly) else LaurentPoly.const(v) for v in row]
        exps = [v.min_exp() for v in row if not v.is_zero()]
        if exps:
            m = min(exps)
            if m < 0:
                row = [v.shift(-m) for v in row]
                shift_total += -m
        A.append(row)
    det = _bareiss_generic(A, LaurentPoly.const(0), LaurentPoly.const(1), _lp_exact_div)
    return det.shift(-shift_total)


def _bareiss_generic(A, zero, one, exact_div):
    n = len(A)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if A[k][k] == zero:
            for r in range(k + 1, n):
                if A[r][k] != zero:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return zero
        pivot = A[k][k]
        for i in range(k + 1, n):
            Aik = A[i][k]
            for j in range(k + 1, n):
                A[i][j] = exact_div(A[i][j] * pivot - Aik * A[k][j], prev)
            A[i][k] = zero
        prev = pivot
    result = A[n - 1][n - 1]
    return result if sign == 1 else -result


def _lp_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact quotient a/b in Z[t, t^-1]; raises if the division is not exact."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if a.is_zero():
        return a
    sa, sb = a.min_exp(), b.min_exp()
    da = [a.coeff(e) for e in range(sa, a.max_exp() + 1)]
    db = [b.coeff(e) for e in range(sb, b.max_exp() + 1)]
    out = [0] * (len(da) - len(db) + 1)
    lead = db[-1]
    for i in range(len(da) - 1, len(db) - 2, -1):
        q, r = divmod(da[i], lead)
        if r:
            raise ArithmeticError("non-exact Laurent division")
        if q:
            out[i - len(db) + 1] = q
            for j, dv in enumerate(db):
                da[i - len(db) + 1 + j] -= q * dv
        da[i] = 0
    if any(da):
        raise ArithmeticError("non-exact Laurent division")
    return LaurentPoly({sa - sb + i: c for i, c in enumerate(out)})


# ---------------------------------------------------------------------------
# Smith normal form over Z
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ M @ V == D with U, V unimodular and D = diag(d_1 | d_2 | ...) >= 0."""

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix
    u_inv: IntMatrix
    v_inv: IntMatrix

    def diagonal(self) -> list[int]:
        return [self.d[i][i] for i in range(min(len(self.d), len(self.d[0]) if self.d else 0))]

    def invariant_factors(self) -> list[int]:
        """The diagonal entries different from 1 (0 entries included last)."""
        return [x for x in self.diagonal() if x != 1]


def snf_Z(M: IntMatrix) -> SmithDecomposition:
    """Smith normal form of an integer matrix, with transformation matrices."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    A = [[int(v) for v in row] for row in M]
    U, Uinv = identity(rows), identity(rows)
    V, Vinv = identity(cols), identity(cols)

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for r in Uinv:
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def row_add(dst, src, c):
        # row_dst += c * row_src ; U tracks left ops, Uinv the inverse
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]
        for r in Uinv:
            r[src] -= c * r[dst]

    def col_add(dst, src, c):
        for r in A:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]
        Vinv[src] = [a - c * b for a, b in zip(Vinv[src], Vinv[dst])]

    def row_negate(i):
        A[i] = [-v for v in A[i]]
        U[i] = [-v for v in U[i]]
        for r in Uinv:
            r[i] = -r[i]

    for t in range(min(rows, cols)):
        while True:
            pivot = None
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    v = abs(A[i][j])
                    if v and (best is None or v < best):
                        best, pivot = v, (i, j)
            if pivot is None:
                break
            pi, pj = pivot
            if pi != t:
                row_swap(t, pi)
            if pj != t:
                col_swap(t, pj)
            dirty = False
            for i in range(t + 1, rows):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    row_add(i, t, -q)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    col_add(j, t, -q)
                    if A[t][j]:
                        dirty = True
            if dirty:
                continue
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if A[i][j] % A[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(t, offender, 1)
        if t < rows and t < cols and A[t][t] < 0:
            row_negate(t)

    return SmithDecomposition(U, A, V, Uinv, Vinv)


# ---------------------------------------------------------------------------
# dense F_p[t] polynomials and Smith normal form over F_p[t]
# ---------------------------------------------------------------------------


def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_add(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, v in enumerate(a):
        out[i] = v
    for i, v in enumerate(b):
        out[i] = (out[i] + v) % p
    return _fp_trim(out)


def _fp_scale(a, c, p):
    c %= p
    return _fp_trim([v * c % p for v in a])


def _fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_trim(out)


def _fp_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - len(b)
        c = a[-1] * inv_lead % p
        q[shift] = c
        for i, bv in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bv) % p
        a.pop()
    return _fp_trim(q), _fp_trim(a)


def _fp_monic(a, p):
    if not a:
        return a
    return _fp_scale(a, pow(a[-1], p - 2, p), p)


def _fp_strip_t(a):
    """Drop the largest power of t dividing a (t is a unit in the Laurent ring)."""
    i = 0
    while i < len(a) and a[i] == 0:
        i += 1
    return a[i:]


@dataclass
class FpSmith:
    """SNF data over F_p[t]: U A V = D with all factors dense low-to-high lists."""

    p: int
    factors: list[list[int]]  # full diagonal, divisibility-ordered
    u: list[list[list[int]]]
    u_inv: list[list[list[int]]]


def _snf_fp(M: list[list[list[int]]], p: int) -> FpSmith:
    rows = len(M)
    cols = len(M[0]) if rows else 0
    A = [[list(v) for v in row] for row in M]
    U = [[[1] if i == j else [] for j in range(rows)] for i in range(rows)]
    Uinv = [[[1] if i == j else [] for j in range(rows)] for i in range(rows)]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for r in Uinv:
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]

    def row_add(dst, src, c):
        A[dst] = [_fp_add(a, _fp_mul(c, b, p), p) for a, b in zip(A[dst], A[src])]
        U[dst] = [_fp_add(a, _fp_mul(c, b, p), p) for a, b in zip(U[dst], U[src])]
        negc = _fp_scale(c, -1, p)
        for r in Uinv:
            r[src] = _fp_add(r[src], _fp_mul(negc, r[dst], p), p)

    def col_add(dst, src, c):
        for r in A:
            r[dst] = _fp_add(r[dst], _fp_mul(c, r[src], p), p)

    def row_scale(i, c):
        A[i] = [_fp_scale(v, c, p) for v in A[i]]
        U[i] = [_fp_scale(v, c, p) for v in U[i]]
        cinv = [pow(c, p - 2, p)]
        for r in Uinv:
            r[i] = _fp_mul(r[i], cinv, p)

    for t in range(min(rows, cols)):
        while True:
            pivot = None
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if A[i][j] and (best is None or len(A[i][j]) < best):
                        best, pivot = len(A[i][j]), (i, j)
            if pivot is None:
                break
            pi, pj = pivot
            if pi != t:
                row_swap(t, pi)
            if pj != t:
                col_swap(t, pj)
            dirty = False
            for i in range(t + 1, rows):
                if A[i][t]:
                    q, _ = _fp_divmod(A[i][t], A[t][t], p)
                    row_add(i, t, _fp_scale(q, -1, p))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if A[t][j]:
                    q, _ = _fp_divmod(A[t][j], A[t][t], p)
                    col_add(j, t, _fp_scale(q, -1, p))
                    if A[t][j]:
                        dirty = True
            if dirty:
                continue
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    _, r = _fp_divmod(A[i][j], A[t][t], p)
                    if r:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(t, offender, [1])
        if t < rows and t < cols and A[t][t] and A[t][t][-1] != 1:
            row_scale(t, pow(A[t][t][-1], p - 2, p))

    factors = [A[i][i] for i in range(min(rows, cols))]
    return FpSmith(p, factors, U, Uinv)


def snf_fp_laurent(M, p: int) -> list[ModPLaurentPoly]:
    """Invariant factors of the cokernel of M over the PID F_p[t, t^-1].

    M may contain LaurentPoly or ModPLaurentPoly entries.  Factors come back
    monic, free of t-power unit factors, nontrivial (units dropped), and in
    divisibility order.
    """
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    dense = []
    for row in M:
        mod_row = []
        for v in row:
            if isinstance(v, LaurentPoly):
                v = ModPLaurentPoly.from_laurent(v, p)
            elif not isinstance(v, ModPLaurentPoly):
                v = ModPLaurentPoly(p, {0: int(v)})
            mod_row.append(v)
        # scaling a whole row by the unit t^-min is an equivalence
        mins = [min(e for e, _ in v.items()) for v in mod_row if not v.is_zero()]
        row_shift = min(mins) if mins else 0
        drow = []
        for v in mod_row:
            if v.is_zero():
                drow.append([])
                continue
            items = dict(v.items())
            vec = [0] * (max(items) - row_shift + 1)
            for e, c in items.items():
                vec[e - row_shift] = c
            drow.append(vec)
        dense.append(drow)
    smith = _snf_fp(dense, p)
    out = []
    for f in smith.factors:
        f = _fp_strip_t(list(f))
        if not f:
            raise ArithmeticError("cokernel over F_p[t^pm1] is not torsion")
        if len(f) == 1:
            continue  # unit
        f = _fp_monic(f, p)
        out.append(ModPLaurentPoly(p, {i: c for i, c in enumerate(f)}))
    return out


# ---------------------------------------------------------------------------
# symplectic normalization
# ---------------------------------------------------------------------------


def symplectic_normalize(W: IntMatrix) -> IntMatrix:
    """A unimodular P with P W P^t = [[0, I],[-I, 0]] for antisymmetric W.

    Integer symplectic Gram-Schmidt: split off hyperbolic pairs, project the
    remaining lattice basis into the symplectic complement, repeat.
    """
    n = len(W)
    if n % 2:
        raise ValueError("antisymmetric matrix of odd size cannot be unimodular")
    for i in range(n):
        for j in range(n):
            if W[i][j] != -W[j][i]:
                raise ValueError("matrix is not antisymmetric")
    if abs(det_exact(W)) != 1:
        raise ValueError("antisymmetrization is not unimodular")

    def form(x, y):
        return sum(x[i] * W[i][j] * y[j] for i in range(n) for j in range(n))

    basis = [list(row) for row in identity(n)]
    a_vecs: list[list[int]] = []
    b_vecs: list[list[int]] = []
    while basis:
        a = basis.pop(0)
        # combine the remaining vectors into f with form(a, f) = 1
        vals = [form(a, v) for v in basis]
        g, coefs = _gcd_combination(vals)
        if g != 1:
            raise ValueError("matrix is not a unimodular symplectic form")
        f = [0] * n
        for c, v in zip(coefs, basis):
            if c:
                f = [x + c * y for x, y in zip(f, v)]
        rest = []
        for v in basis:
            av = form(a, v)
            fv = form(f, v)
            # v' = v - av*f + fv*a lies in the symplectic complement of (a, f)
            v2 = [x - av * y + fv * z for x, y, z in zip(v, f, a)]
            if any(v2):
                rest.append(v2)
        # one projected vector is a combination of the others; drop dependencies
        a_vecs.append(a)
        b_vecs.append(f)
        basis = _lattice_basis(rest, n)
    P = a_vecs + b_vecs
    return P


def _gcd_combination(vals: list[int]) -> tuple[int, list[int]]:
    """gcd of vals together with an integer combination achieving it."""
    coefs = [0] * len(vals)
    g = 0
    gcoefs = [0] * len(vals)
    for idx, v in enumerate(vals):
        if v == 0:
            continue
        if g == 0:
            g = abs(v)
            gcoefs = [0] * len(vals)
            gcoefs[idx] = 1 if v > 0 else -1
            continue
        old_g, s = _ext_gcd(g, v)
        # old_g = s*g + t*v
        t = (old_g - s * g) // v
        gcoefs = [s * c for c in gcoefs]
        gcoefs[idx] += t
        g = old_g
    return g, gcoefs


def _ext_gcd(a: int, b: int) -> tuple[int, int]:
    """Returns (g, s) with g = gcd(a,b) and s*a = g mod b (g = s*a + t*b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    if old_r < 0:
        old_r, old_s = -old_r, -old_s
    return old_r, old_s


def _lattice_basis(vecs: list[list[int]], n: int) -> list[list[int]]:
    """A basis (as rows) of the lattice spanned by vecs, via row HNF."""
    if not vecs:
        return []
    A = [list(v) for v in vecs]
    # integer row echelon via euclidean column sweeps
    pivot_row = 0
    for col in range(n):
        while True:
            nonzero = [r for r in range(pivot_row, len(A)) if A[r][col]]
            if not nonzero:
                break
            if len(nonzero) == 1:
                r = nonzero[0]
                A[pivot_row], A[r] = A[r], A[pivot_row]
                pivot_row += 1
                break
            nonzero.sort(key=lambda r: abs(A[r][col]))
            r0 = nonzero[0]
            for r in nonzero[1:]:
                q = A[r][col] // A[r0][col]
                A[r] = [x - q * y for x, y in zip(A[r], A[r0])]
        continue
    return [row for row in A[:pivot_row] if any(row)]


# ---------------------------------------------------------------------------
# Hermitian matrices over Z[t, t^-1] and cyclotomic signature
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HermitianLaurentMatrix:
    """A square Laurent-polynomial matrix equal to its conjugate transpose."""

    entries: tuple[tuple[LaurentPoly, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        for row in self.entries:
            if len(row) != n:
                raise ValueError("matrix must be square")
        for i in range(n):
            for j in range(n):
                if self.entries[j][i] != self.entries[i][j].involute():
                    raise ValueError("matrix is not hermitian")

    @property
    def size(self) -> int:
        return len(self.entries)

    def at_int(self, x: int) -> IntMatrix:
        """Evaluate at t = x for x in {1, -1}."""
        return [[v.eval_int(x) for v in row] for row in self.entries]

    def evaluate(self, n: int, k: int) -> list[list[CycloNumber]]:
        from .rings import eval_cyclo

        return [[eval_cyclo(v, n, k) for v in row] for row in self.entries]

    def determinant(self) -> LaurentPoly:
        return det_exact([list(row) for row in self.entries])


def hermitian_sig(M: list[list[CycloNumber]]) -> tuple[int, int]:
    """Exact (signature, nullity) of a Hermitian cyclotomic matrix.

    Congruence diagonalization with exact zero tests: symmetric pivot search
    preferring the widest-support diagonal entry (ties to the lowest index),
    a rank-two step when every diagonal candidate vanishes, and cross-term
    clearing by pivot-scaled row/column operations, which keeps everything in
    exact arithmetic without field inversion.  Signs of the resulting diagonal
    are certified by CycloNumber.sign().
    """
    n = len(M)
    if n == 0:
        return 0, 0
    for i in range(n):
        for j in range(n):
            if M[j][i] != M[i][j].conj():
                raise ValueError("matrix is not hermitian")
    A = [[v for v in row] for row in M]

    def add_row(dst, src, mu):
        # E M E*^t for E = I + mu * e_(dst,src)
        A[dst] = [a + mu * b for a, b in zip(A[dst], A[src])]
        mu_bar = mu.conj()
        for r in A:
            r[dst] = r[dst] + mu_bar * r[src]

    def scale_clear(dst, src, pivot, coef):
        # row_dst <- pivot*row_dst - coef*row_src, then the conjugate column op
        A[dst] = [pivot * a - coef * b for a, b in zip(A[dst], A[src])]
        pbar, cbar = pivot.conj(), coef.conj()
        for r in A:
            r[dst] = pbar * r[dst] - cbar * r[src]

    sig = 0
    rank = 0
    for i in range(n):
        pivot_idx = None
        best_support = -1
        for j in range(i, n):
            if not A[j][j].is_zero():
                support = sum(1 for c in A[j][j].coeffs if c)
                if support > best_support:
                    best_support = support
                    pivot_idx = j
        if pivot_idx is None:
            off = None
            for j in range(i, n):
                for l in range(j + 1, n):
                    if not A[j][l].is_zero():
                        off = (j, l)
                        break
                if off:
                    break
            if off is None:
                break  # remaining block is zero
            j, l = off
            add_row(j, l, A[j][l])  # makes A[j][j] = 2*|A[j][l]|^2 > 0
            pivot_idx = j
        if pivot_idx != i:
            A[i], A[pivot_idx] = A[pivot_idx], A[i]
            for r in A:
                r[i], r[pivot_idx] = r[pivot_idx], r[i]
        p = A[i][i]
        sig += p.sign()
        rank += 1
        for j in range(i + 1, n):
            if not A[j][i].is_zero():
                scale_clear(j, i, p, A[j][i])
    return sig, n - rank

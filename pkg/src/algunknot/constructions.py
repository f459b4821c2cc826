"""Seifert matrices for standard knot families.

Three generators cover the bundled corpus:

* ``seifert_from_braid`` -- Seifert's algorithm on a braid-closure diagram.
  The surface consists of one disk per strand and one band per crossing; the
  homology basis has one loop for each pair of consecutive crossings in the
  same column, and the linking numbers follow the usual combinatorial rules.
* ``pretzel_odd`` -- the genus-one surface of a (p, q, r)-pretzel with all
  parameters odd.
* ``two_bridge`` -- the plumbing surface along the even continued fraction of
  p/q for a two-bridge knot.

Sign conventions are calibrated so that the closure of sigma_1^3 (the
positive trefoil in braid form) has signature -2, matching the tables this
corpus is checked against.
"""

from __future__ import annotations

from .seifert import SeifertMatrix, connected_sum, validate


def seifert_from_braid(word: list[int]) -> SeifertMatrix:
    """Seifert matrix of the closure of a braid word.

    The word lists crossings top to bottom; letter +i is a positive crossing
    of strands i, i+1 and -i the negative one.  The closure must be a knot
    (one component) with an even-rank surface; both are checked.
    """
    if not word:
        return validate([])
    strands = max(abs(x) for x in word) + 1
    _check_knot(word, strands)
    columns: dict[int, list[tuple[int, int]]] = {}
    for pos, letter in enumerate(word):
        col = abs(letter)
        columns.setdefault(col, []).append((pos, 1 if letter > 0 else -1))
    loops = []  # (column, top position, bottom position, top sign, bottom sign)
    for col in sorted(columns):
        xs = columns[col]
        for (pa, sa), (pb, sb) in zip(xs, xs[1:]):
            loops.append((col, pa, pb, sa, sb))
    g2 = len(loops)
    V = [[0] * g2 for _ in range(g2)]
    for a, (col_a, top_a, bot_a, s_top_a, s_bot_a) in enumerate(loops):
        V[a][a] = -(s_top_a + s_bot_a) // 2
        for b in range(a + 1, g2):
            col_b, top_b, bot_b, s_top_b, _ = loops[b]
            if col_b == col_a:
                # consecutive loops share one band; the lk split depends on
                # the shared crossing sign, the intersection number does not
                if top_b == bot_a:
                    if s_bot_a > 0:
                        V[a][b], V[b][a] = 1, 0
                    else:
                        V[a][b], V[b][a] = 0, -1
            elif col_b == col_a + 1:
                # interleaved loops in adjacent columns link once, with
                # opposite orientation for the two interleaving patterns
                if top_a < top_b < bot_a < bot_b:
                    V[a][b], V[b][a] = 1, 0
                elif top_b < top_a < bot_b < bot_a:
                    V[a][b], V[b][a] = -1, 0
    return validate(V)


def _check_knot(word: list[int], strands: int) -> None:
    perm = list(range(strands))
    for letter in word:
        i = abs(letter) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    seen = set()
    cur = 0
    for _ in range(strands):
        seen.add(cur)
        cur = perm[cur]
    if len(seen) != strands:
        raise ValueError("braid closure is a link, not a knot")


def torus_2_odd(q: int) -> SeifertMatrix:
    """The (2, q)-torus knot for odd q >= 1, as the closure of sigma_1^q."""
    if q % 2 == 0 or q < 1:
        raise ValueError("need odd q")
    return seifert_from_braid([1] * q)


def pretzel_odd(p: int, q: int, r: int) -> SeifertMatrix:
    """Genus-one Seifert matrix of the (p, q, r)-pretzel knot, all odd."""
    if any(x % 2 == 0 for x in (p, q, r)):
        raise ValueError("pretzel parameters must all be odd")
    return validate(
        [[(p + q) // 2, (q + 1) // 2], [(q - 1) // 2, (q + r) // 2]]
    )


def two_bridge(p: int, q: int) -> SeifertMatrix:
    """Seifert matrix of the two-bridge knot with fraction p/q.

    Uses the plumbing surface along the even continued fraction
    p/q = 2b_1 - 1/(2b_2 - 1/(... - 1/(2b_2g))); the bands give a bidiagonal
    Seifert matrix with diagonal -b_i (sign fixed by the trefoil calibration
    b(3,1) -> signature -2) and unit superdiagonal.
    """
    if p % 2 == 0 or p < 3:
        raise ValueError("two-bridge knots have odd p >= 3")
    q %= p
    if q == 0 or _gcd(p, q) != 1:
        raise ValueError("q must be invertible mod p")
    bs = _even_continued_fraction(p, q)
    if len(bs) % 2:
        raise ValueError(f"no even-length expansion for {p}/{q}")
    n = len(bs)
    V = [[0] * n for _ in range(n)]
    for i, b in enumerate(bs):
        V[i][i] = -b
        if i + 1 < n:
            if i % 2 == 0:
                V[i][i + 1] = 1
            else:
                V[i + 1][i] = 1
    return validate(V)


def _even_continued_fraction(p: int, q: int) -> list[int]:
    """Write p/q = 2b_1 - 1/(2b_2 - 1/(...)) with all partial quotients even.

    For odd p and q of the opposite parity trick: replacing q by q - p if
    needed makes every quotient even; the expansion then terminates.
    """
    # Ensure an even expansion exists: run the algorithm, flipping q -> q - p
    # (same knot) when the parity forces an odd quotient at the first step.
    for q0 in (q, q - p):
        out = _try_even_cf(p, q0)
        if out is not None:
            return out
    raise ValueError(f"no even continued fraction for {p}/{q}")


def _try_even_cf(p: int, q: int) -> list[int] | None:
    out = []
    num, den = p, q
    for _ in range(10000):
        if den == 0:
            break
        # choose the even integer 2b closest to num/den with remainder shrink
        b = _round_div(num, 2 * den)
        a = 2 * b
        rem = a * den - num  # num/den = a - rem/den with |rem| < |den|
        if a % 2 or abs(rem) >= abs(den):
            return None
        out.append(b)
        num, den = den, rem
    if den != 0 or num not in (1, -1):
        return None
    return out


def _round_div(a: int, b: int) -> int:
    """Nearest integer to a/b, ties toward zero."""
    if b < 0:
        a, b = -a, -b
    q, r = divmod(a, b)
    if 2 * r > b:
        return q + 1
    if 2 * r < b:
        return q
    return q if q >= 0 else q + 1


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def granny() -> SeifertMatrix:
    """The granny knot: connected sum of two same-handed trefoils."""
    tre = torus_2_odd(3)
    return connected_sum(tre, tre)


def mirror(V: SeifertMatrix) -> SeifertMatrix:
    """Seifert matrix of the mirror image (negated transpose keeps validity)."""
    V = validate(V)
    return validate([[-V.rows[j][i] for j in range(V.size)] for i in range(V.size)])

"""Exact arithmetic foundations.

Everything downstream (determinants, signatures, linking forms) is built on
four scalar types:

* :class:`LaurentPoly` -- integer Laurent polynomials in one variable ``t``.
* :class:`ModPLaurentPoly` -- Laurent polynomials over the prime field F_p.
* :class:`CycloNumber` -- elements of the cyclotomic field Q(zeta_n), with a
  certified sign routine for real (self-conjugate) elements.
* :class:`QmodZ` -- residues in Q/Z, canonically reduced.

All values are immutable; all operations are pure.  Integer coefficients are
Python ints throughout, so nothing here can overflow.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Iterator, Mapping

import mpmath


class LaurentPoly:
    """An element of Z[t, t^-1], stored as a sparse exponent -> coefficient map.

    Zero coefficients are never stored, so equality of the internal maps is
    equality of ring elements.

    >>> t = LaurentPoly.t()
    >>> (t - 1) * (t.involute() - 1)
    -t + 2 - t^-1
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    c[int(e)] = int(v)
        self._c = c

    # -- constructors ----------------------------------------------------

    @classmethod
    def t(cls, exponent: int = 1) -> "LaurentPoly":
        return cls({exponent: 1})

    @classmethod
    def const(cls, n: int) -> "LaurentPoly":
        return cls({0: n})

    # -- basic queries ----------------------------------------------------

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._c.items()))

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    def is_zero(self) -> bool:
        return not self._c

    def is_one(self) -> bool:
        return self._c == {0: 1}

    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no support")
        return min(self._c)

    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no support")
        return max(self._c)

    def span(self) -> int:
        """max_exp - min_exp; the paper-style degree of a symmetric polynomial."""
        return 0 if not self._c else self.max_exp() - self.min_exp()

    def as_int(self) -> int:
        """The value of a constant polynomial."""
        if not self._c:
            return 0
        if set(self._c) == {0}:
            return self._c[0]
        raise ValueError(f"not a constant polynomial: {self}")

    # -- ring structure ----------------------------------------------------

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = _as_lp(other)
        c = dict(self._c)
        for e, v in other._c.items():
            nv = c.get(e, 0) + v
            if nv:
                c[e] = nv
            else:
                c.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = c
        return out

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {e: -v for e, v in self._c.items()}
        return out

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        return self + (-_as_lp(other))

    def __rsub__(self, other: int) -> "LaurentPoly":
        return _as_lp(other) - self

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = _as_lp(other)
        a, b = self._c, other._c
        if len(a) > len(b):
            a, b = b, a
        c: dict[int, int] = {}
        for e1, v1 in a.items():
            for e2, v2 in b.items():
                e = e1 + e2
                nv = c.get(e, 0) + v1 * v2
                if nv:
                    c[e] = nv
                else:
                    del c[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = c
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers only for monomials")
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    # -- the involution t -> t^-1 ----------------------------------------

    def involute(self) -> "LaurentPoly":
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {-e: v for e, v in self._c.items()}
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {e + k: v for e, v in self._c.items()}
        return out

    # -- evaluation --------------------------------------------------------

    def eval_int(self, x: int) -> int:
        return sum(v * x**e if e >= 0 else _int_neg_pow(v, x, e) for e, v in self._c.items())

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            v = self._c[e]
            sign = "-" if v < 0 else "+"
            mag = abs(v)
            if e == 0:
                term = f"{mag}"
            else:
                var = "t" if e == 1 else f"t^{e}"
                term = var if mag == 1 else f"{mag}*{var}"
            parts.append((sign, term))
        first_sign, first_term = parts[0]
        s = ("-" if first_sign == "-" else "") + first_term
        for sign, term in parts[1:]:
            s += f" {sign} {term}"
        return s


def _int_neg_pow(v: int, x: int, e: int) -> int:
    # Only valid at x = +-1, the integer points we ever evaluate at.
    if x == 1:
        return v
    if x == -1:
        return v if e % 2 == 0 else -v
    raise ValueError("integer evaluation with negative exponents needs x = +-1")


def _as_lp(x: "LaurentPoly | int") -> LaurentPoly:
    return LaurentPoly.const(x) if isinstance(x, int) else x


# ---------------------------------------------------------------------------
# Laurent polynomials over F_p
# ---------------------------------------------------------------------------


class ModPLaurentPoly:
    """An element of F_p[t, t^-1]; residues stored in {0, ..., p-1}."""

    __slots__ = ("p", "_c")

    def __init__(self, p: int, coeffs: Mapping[int, int] | None = None):
        self.p = p
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                r = v % p
                if r:
                    c[int(e)] = r
        self._c = c

    @classmethod
    def from_laurent(cls, lp: LaurentPoly, p: int) -> "ModPLaurentPoly":
        return cls(p, dict(lp.items()))

    def items(self):
        return iter(sorted(self._c.items()))

    def is_zero(self) -> bool:
        return not self._c

    def __add__(self, other):
        c = dict(self._c)
        for e, v in other._c.items():
            nv = (c.get(e, 0) + v) % self.p
            if nv:
                c[e] = nv
            else:
                c.pop(e, None)
        return ModPLaurentPoly(self.p, c)

    def __neg__(self):
        return ModPLaurentPoly(self.p, {e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = (c.get(e, 0) + v1 * v2) % self.p
        return ModPLaurentPoly(self.p, c)

    def __eq__(self, other):
        return (
            isinstance(other, ModPLaurentPoly)
            and self.p == other.p
            and self._c == other._c
        )

    def __hash__(self):
        return hash((self.p, frozenset(self._c.items())))

    def involute(self):
        return ModPLaurentPoly(self.p, {-e: v for e, v in self._c.items()})

    def __repr__(self):
        return f"ModPLaurentPoly(p={self.p}, {dict(sorted(self._c.items()))})"


# ---------------------------------------------------------------------------
# Cyclotomic polynomials and field elements
# ---------------------------------------------------------------------------

_CYCLO_CACHE: dict[int, tuple[int, ...]] = {}
_CYCLO_LOCK = threading.RLock()  # reentrant: the computation recurses on divisors


def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Dense coefficient tuple (low to high) of the n-th cyclotomic polynomial.

    Computed by exact division of x^n - 1 by the Phi_d for proper divisors d;
    results are cached, and the cache is safe for concurrent readers.
    """
    if n < 1:
        raise ValueError("order must be positive")
    got = _CYCLO_CACHE.get(n)
    if got is not None:
        return got
    with _CYCLO_LOCK:
        got = _CYCLO_CACHE.get(n)
        if got is not None:
            return got
        num = [0] * (n + 1)
        num[0], num[n] = -1, 1
        for d in range(1, n):
            if n % d == 0:
                num = _polydiv_exact_int(num, list(cyclotomic_poly(d)))
        result = tuple(num)
        _CYCLO_CACHE[n] = result
        return result


def _polydiv_exact_int(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (dense, low-to-high)."""
    while den and den[-1] == 0:
        den.pop()
    num = list(num)
    while num and num[-1] == 0:
        num.pop()
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(num) - 1, len(den) - 2, -1):
        q, r = divmod(num[i], lead)
        if r:
            raise ArithmeticError("non-exact polynomial division")
        if q:
            out[i - len(den) + 1] = q
            for j, dv in enumerate(den):
                num[i - len(den) + 1 + j] -= q * dv
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


def euler_phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


def _reduce_mod_cyclo(vec: list[Fraction], n: int) -> tuple[Fraction, ...]:
    """Reduce a dense coefficient vector modulo Phi_n, returning phi(n) coeffs."""
    phi = cyclotomic_poly(n)
    d = len(phi) - 1
    v = list(vec)
    for i in range(len(v) - 1, d - 1, -1):
        c = v[i]
        if c:
            v[i] = Fraction(0)
            for j in range(d):
                if phi[j]:
                    v[i - d + j] -= c * phi[j]
    v = v[:d]
    v += [Fraction(0)] * (d - len(v))
    return tuple(v)


class CycloNumber:
    """An element of Q(zeta_n) = Q[x]/Phi_n(x), with x standing for e^(2*pi*i/n).

    Arithmetic is exact field arithmetic; ``conj`` is the restriction of
    complex conjugation (x -> x^(n-1)); ``sign`` certifies the sign of a real
    element by exact zero testing plus interval refinement.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        self.order = order
        d = euler_phi(order)
        vec = [Fraction(c) for c in coeffs]
        if len(vec) > d:
            vec = list(_reduce_mod_cyclo(vec, order))
        else:
            vec += [Fraction(0)] * (d - len(vec))
        self.coeffs = tuple(vec)

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_rational(cls, q, order: int = 1) -> "CycloNumber":
        return cls(order, [Fraction(q)])

    @classmethod
    def root_of_unity(cls, order: int, k: int = 1) -> "CycloNumber":
        vec = [Fraction(0)] * (k % order) + [Fraction(1)]
        return cls(order, vec)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"not rational: {self}")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def _check_same_field(self, other: "CycloNumber") -> None:
        if self.order != other.order:
            raise ValueError(
                f"mixed cyclotomic orders {self.order} and {other.order}"
            )

    # -- field operations ---------------------------------------------------

    def __add__(self, other: "CycloNumber") -> "CycloNumber":
        self._check_same_field(other)
        out = CycloNumber.__new__(CycloNumber)
        out.order = self.order
        out.coeffs = tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        return out

    def __sub__(self, other: "CycloNumber") -> "CycloNumber":
        self._check_same_field(other)
        out = CycloNumber.__new__(CycloNumber)
        out.order = self.order
        out.coeffs = tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        return out

    def __neg__(self) -> "CycloNumber":
        out = CycloNumber.__new__(CycloNumber)
        out.order = self.order
        out.coeffs = tuple(-a for a in self.coeffs)
        return out

    def __mul__(self, other: "CycloNumber") -> "CycloNumber":
        self._check_same_field(other)
        a, b = self.coeffs, other.coeffs
        prod = [Fraction(0)] * (len(a) + len(b) - 1 if a and b else 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        out = CycloNumber.__new__(CycloNumber)
        out.order = self.order
        out.coeffs = _reduce_mod_cyclo(prod, self.order)
        return out

    def inverse(self) -> "CycloNumber":
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic zero has no inverse")
        phi = [Fraction(c) for c in cyclotomic_poly(self.order)]
        inv = _poly_modular_inverse(list(self.coeffs), phi)
        return CycloNumber(self.order, inv)

    def __truediv__(self, other: "CycloNumber") -> "CycloNumber":
        return self * other.inverse()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycloNumber):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    # -- conjugation and reality -------------------------------------------

    def conj(self) -> "CycloNumber":
        n = self.order
        vec = [Fraction(0)] * n
        for j, c in enumerate(self.coeffs):
            if c:
                vec[(-j) % n] += c
        out = CycloNumber.__new__(CycloNumber)
        out.order = n
        out.coeffs = _reduce_mod_cyclo(vec, n)
        return out

    def galois_map(self, k: int) -> "CycloNumber":
        """Apply the automorphism x -> x^k (k coprime to the order)."""
        n = self.order
        vec = [Fraction(0)] * n
        for j, c in enumerate(self.coeffs):
            if c:
                vec[(j * k) % n] += c
        out = CycloNumber.__new__(CycloNumber)
        out.order = n
        out.coeffs = _reduce_mod_cyclo(vec, n)
        return out

    def is_self_conjugate(self) -> bool:
        return self == self.conj()

    # -- the certified sign --------------------------------------------------

    def sign(self) -> int:
        """Exact sign of the real number this element embeds to.

        Requires a self-conjugate (real) element.  Returns 0 only when the
        element is exactly zero; otherwise refines an integer-interval
        enclosure of sum_j c_j * cos(2*pi*j/n) at doubling precision until the
        interval excludes zero, which terminates because the value is nonzero.
        """
        if self.is_zero():
            return 0
        if not self.is_self_conjugate():
            raise ValueError("sign is defined only for self-conjugate elements")
        if self.is_rational():
            return 1 if self.coeffs[0] > 0 else -1
        # clear denominators; the sign is unchanged
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // _gcd(den, c.denominator)
        nums = [int(c * den) for c in self.coeffs]
        prec = 64
        while prec <= (1 << 20):
            lo, hi = _cos_dot_enclosure(nums, self.order, prec)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2
        raise RuntimeError("sign refinement failed to converge")

    def __repr__(self) -> str:
        return f"CycloNumber(order={self.order}, {list(self.coeffs)})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


_COS_TABLE_CACHE: dict[tuple[int, int], list[tuple[int, int]]] = {}
_COS_LOCK = threading.Lock()


def _cos_table(n: int, prec: int) -> list[tuple[int, int]]:
    """Integer enclosures [lo, hi] of cos(2*pi*j/n) * 2^prec for j in 0..n-1."""
    key = (n, prec)
    got = _COS_TABLE_CACHE.get(key)
    if got is not None:
        return got
    with _COS_LOCK:
        got = _COS_TABLE_CACHE.get(key)
        if got is not None:
            return got
        table = []
        scale = 1 << prec
        with mpmath.workprec(prec + 40):
            two_pi = 2 * mpmath.pi
            for j in range(n):
                c = mpmath.cos(two_pi * j / n)
                v = mpmath.floor(c * scale)
                lo = int(v) - 1
                table.append((lo, lo + 3))
        _COS_TABLE_CACHE[key] = table
        return table


def _cos_dot_enclosure(nums: list[int], n: int, prec: int) -> tuple[int, int]:
    table = _cos_table(n, prec)
    lo = hi = 0
    for j, c in enumerate(nums):
        if not c:
            continue
        tlo, thi = table[j]
        if c >= 0:
            lo += c * tlo
            hi += c * thi
        else:
            lo += c * thi
            hi += c * tlo
    return lo, hi


def _poly_modular_inverse(a: list[Fraction], mod: list[Fraction]) -> list[Fraction]:
    """Inverse of a modulo mod in Q[x], via the extended Euclidean algorithm."""

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    def divmod_q(num, den):
        num = list(num)
        q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
        while len(num) >= len(den) and any(num):
            if num[-1] == 0:
                num.pop()
                continue
            shift = len(num) - len(den)
            factor = num[-1] / den[-1]
            q[shift] += factor
            for i, dv in enumerate(den):
                num[shift + i] -= factor * dv
            num.pop()
        return trim(q), trim(num)

    r0, r1 = [Fraction(c) for c in mod], trim([Fraction(c) for c in a])
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while r1:
        q, r = divmod_q(r0, r1)
        r0, r1 = r1, r
        # s0 - q*s1
        qs = [Fraction(0)] * (len(q) + len(s1) - 1 if q and s1 else 1)
        for i, qi in enumerate(q):
            if qi:
                for j, sj in enumerate(s1):
                    qs[i + j] += qi * sj
        new_s = [Fraction(0)] * max(len(s0), len(qs))
        for i, v in enumerate(s0):
            new_s[i] += v
        for i, v in enumerate(qs):
            new_s[i] -= v
        s0, s1 = s1, trim(new_s)
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible modulo the given polynomial")
    c = r0[0]
    return [v / c for v in s0]


def eval_cyclo(p: LaurentPoly, n: int, k: int) -> CycloNumber:
    """Exact image of p(t) under t -> zeta_n^k, as an element of Q(zeta_n)."""
    if n < 1:
        raise ValueError("order must be positive")
    if not 0 <= k < n:
        raise ValueError("root index must satisfy 0 <= k < n")
    vec = [Fraction(0)] * n
    for e, v in p.items():
        vec[(e * k) % n] += v
    return CycloNumber(n, vec)


# ---------------------------------------------------------------------------
# Q/Z
# ---------------------------------------------------------------------------


class QmodZ:
    """A residue in Q/Z, stored as num/den with 0 <= num < den and gcd = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int):
        if den == 0:
            raise ZeroDivisionError("denominator must be nonzero")
        if den < 0:
            num, den = -num, -den
        num %= den
        g = _gcd(num, den)
        self.num = num // g
        self.den = den // g

    @classmethod
    def from_fraction(cls, q: Fraction) -> "QmodZ":
        return cls(q.numerator, q.denominator)

    def __add__(self, other: "QmodZ") -> "QmodZ":
        return QmodZ(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "QmodZ":
        return QmodZ(-self.num, self.den)

    def __sub__(self, other: "QmodZ") -> "QmodZ":
        return self + (-other)

    def scale(self, n: int) -> "QmodZ":
        return QmodZ(self.num * n, self.den)

    def is_zero(self) -> bool:
        return self.num == 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QmodZ):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"{self.num}/{self.den}"

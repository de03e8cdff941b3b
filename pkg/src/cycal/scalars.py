"""Exact coefficient arithmetic.

A Scalar is an element of Q(zeta_N)[t] / (t^(K+1)): a polynomial in the formal
deformation parameter t whose coefficients live in the cyclotomic field
Q(zeta_N), with N always a multiple of 4 so that i = zeta_N^(N/4) is available.
Everything is exact: rationals are fractions.Fraction, cyclotomic elements are
vectors over the power basis {zeta^0, ..., zeta^(phi(N)-1)} reduced modulo the
N-th cyclotomic polynomial, and equality of canonical forms is decidable.

A Scalar either is an exact polynomial (trunc is None) or is only known modulo
t^(K+1) (trunc == K).  Exact scalars coerce freely into any truncated ring;
combining two series with different finite truncations raises
TruncationMismatch instead of silently losing precision.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


class TruncationMismatch(ValueError):
    pass


class InvalidOrder(ValueError):
    pass


def _poly_div_exact(num, den):
    # exact division of integer polynomials, den monic; coeffs low-to-high
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        out[i - dd] = c
        for j in range(dd + 1):
            num[i - dd + j] -= c * den[j]
    if any(num[:dd]):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(N):
    """Integer coefficients of the N-th cyclotomic polynomial, low to high."""
    if N < 1:
        raise InvalidOrder("root-of-unity order must be >= 1")
    poly = [-1] + [0] * (N - 1) + [1]  # x^N - 1
    for d in range(1, N):
        if N % d == 0:
            poly = _poly_div_exact(poly, cyclotomic_poly(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _cyclo_rows(N):
    """For each e in range(N), zeta_N^e written over the power basis.

    Returns (phi, rows) with rows[e] a tuple of (basis_exponent, int_coeff).
    """
    coeffs = cyclotomic_poly(N)
    phi = len(coeffs) - 1
    rows = []
    cur = {0: 1}
    for _ in range(N):
        rows.append(tuple(sorted(cur.items())))
        nxt = {}
        for b, c in cur.items():
            if b + 1 < phi:
                nxt[b + 1] = nxt.get(b + 1, 0) + c
            else:
                for j in range(phi):
                    cj = coeffs[j]
                    if cj:
                        nxt[j] = nxt.get(j, 0) - c * cj
        cur = {k: v for k, v in nxt.items() if v}
    return phi, tuple(rows)


def _lcm(a, b):
    return a * b // gcd(a, b)


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected rational, got {type(x).__name__}")


class Scalar:
    """Immutable exact scalar: data maps (t_power, zeta_exponent) -> Fraction."""

    __slots__ = ("N", "trunc", "data")

    def __init__(self, N, trunc, data, _canonical=False):
        if N % 4:
            raise InvalidOrder("internal root order must be a multiple of 4")
        self.N = N
        self.trunc = trunc
        if _canonical:
            self.data = data
        else:
            clean = {}
            for (k, e), v in data.items():
                v = _as_fraction(v)
                if v and (trunc is None or k <= trunc):
                    clean[(k, e)] = v
            self.data = clean

    # -- constructors -------------------------------------------------------

    @staticmethod
    def rational(q, N=4, trunc=None):
        q = _as_fraction(q)
        return Scalar(N, trunc, {(0, 0): q} if q else {})

    @staticmethod
    def zero(N=4, trunc=None):
        return Scalar(N, trunc, {}, _canonical=True)

    @staticmethod
    def one(N=4, trunc=None):
        return Scalar.rational(1, N, trunc)

    # -- coercion and promotion ---------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar.rational(x)
        return NotImplemented

    def _promote_N(self, N2):
        if N2 == self.N:
            return self
        r = N2 // self.N
        phi2, rows2 = _cyclo_rows(N2)
        data = {}
        for (k, e), v in self.data.items():
            for b, c in rows2[(e * r) % N2]:
                key = (k, b)
                nv = data.get(key, 0) + v * c
                if nv:
                    data[key] = nv
                else:
                    data.pop(key, None)
        return Scalar(N2, self.trunc, data, _canonical=True)

    @staticmethod
    def _align(a, b):
        N = _lcm(a.N, b.N)
        if a.trunc is None:
            trunc = b.trunc
        elif b.trunc is None:
            trunc = a.trunc
        else:
            # combining series known to different orders: the result is only
            # known to the coarser one (see expect_trunc for strict checks)
            trunc = min(a.trunc, b.trunc)
        return a._promote_N(N), b._promote_N(N), N, trunc

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, N, trunc = Scalar._align(self, other)
        data = dict(a.data)
        for key, v in b.data.items():
            nv = data.get(key, 0) + v
            if nv:
                data[key] = nv
            else:
                data.pop(key, None)
        if trunc is not None:
            data = {k: v for k, v in data.items() if k[0] <= trunc}
        return Scalar(N, trunc, data, _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.N, self.trunc,
                      {k: -v for k, v in self.data.items()}, _canonical=True)

    def __sub__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, N, trunc = Scalar._align(self, other)
        phi, rows = _cyclo_rows(N)
        data = {}
        for (k1, e1), v1 in a.data.items():
            for (k2, e2), v2 in b.data.items():
                k = k1 + k2
                if trunc is not None and k > trunc:
                    continue
                v = v1 * v2
                for bexp, c in rows[(e1 + e2) % N]:
                    key = (k, bexp)
                    nv = data.get(key, 0) + v * c
                    if nv:
                        data[key] = nv
                    else:
                        data.pop(key, None)
        return Scalar(N, trunc, data, _canonical=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = _as_fraction(other)
            if not q:
                raise ZeroDivisionError("scalar division by zero")
            return Scalar(self.N, self.trunc,
                          {k: v / q for k, v in self.data.items()},
                          _canonical=True)
        if isinstance(other, Scalar):
            return self * other.inverse_constant()
        return NotImplemented

    def inverse_constant(self):
        """Inverse of a nonzero t-constant cyclotomic scalar."""
        if not self.data:
            raise ZeroDivisionError("scalar division by zero")
        if any(k for (k, _) in self.data):
            raise ZeroDivisionError("can only divide by t-constant scalars")
        N = self.N
        phi, rows = _cyclo_rows(N)
        # multiplication-by-self matrix over the power basis, then solve M x = e0
        mat = [[Fraction(0)] * phi for _ in range(phi)]
        for j in range(phi):
            for (_, e), v in self.data.items():
                for bexp, c in rows[(e + j) % N]:
                    mat[bexp][j] += v * c
        rhs = [Fraction(1)] + [Fraction(0)] * (phi - 1)
        # Gaussian elimination
        for col in range(phi):
            piv = next((r for r in range(col, phi) if mat[r][col]), None)
            if piv is None:
                raise ZeroDivisionError("scalar is a zero divisor (impossible)")
            mat[col], mat[piv] = mat[piv], mat[col]
            rhs[col], rhs[piv] = rhs[piv], rhs[col]
            p = mat[col][col]
            mat[col] = [x / p for x in mat[col]]
            rhs[col] /= p
            for r in range(phi):
                if r != col and mat[r][col]:
                    f = mat[r][col]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
                    rhs[r] -= f * rhs[col]
        data = {(0, b): rhs[b] for b in range(phi) if rhs[b]}
        return Scalar(N, None, data, _canonical=True)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        out = Scalar.one(self.N, self.trunc)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- comparisons ----------------------------------------------------------

    def __eq__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, _, trunc = Scalar._align(self, other)
        if trunc is not None:
            da = {k: v for k, v in a.data.items() if k[0] <= trunc}
            db = {k: v for k, v in b.data.items() if k[0] <= trunc}
            return da == db
        return a.data == b.data

    __hash__ = None

    def is_zero(self):
        return not self.data

    def __bool__(self):
        return bool(self.data)

    # -- structure ------------------------------------------------------------

    def truncate(self, K):
        data = {k: v for k, v in self.data.items() if k[0] <= K}
        return Scalar(self.N, K, data, _canonical=True)

    def coeff_of_t(self, k):
        """Coefficient of t^k as an exact cyclotomic constant."""
        data = {(0, e): v for (kk, e), v in self.data.items() if kk == k}
        return Scalar(self.N, None, data, _canonical=True)

    def constant_term(self):
        return self.coeff_of_t(0)

    def t_degree(self):
        return max((k for (k, _) in self.data), default=0)

    def as_rational(self):
        """The value as a Fraction; raises if not a rational constant."""
        if any(k or e for (k, e) in self.data):
            raise ValueError(f"not a rational constant: {self}")
        return self.data.get((0, 0), Fraction(0))

    def as_root_power(self):
        """Return (num, N) with self == zeta_N^num, or raise."""
        if not self.data:
            raise ValueError("zero is not a root of unity")
        if len(self.data) != 1:
            # could still be a reduced root (e.g. zeta_3 over basis of N=12);
            # try all powers
            for num in range(self.N):
                if self == root_of_unity(num, self.N):
                    return num, self.N
            raise ValueError(f"not a root of unity: {self}")
        (k, e), v = next(iter(self.data.items()))
        if k == 0 and v == 1:
            return e, self.N
        if k == 0 and v == -1:
            return (e + self.N // 2) % self.N, self.N
        raise ValueError(f"not a root of unity: {self}")

    # -- rendering -------------------------------------------------------------

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if not self.data:
            return "0"
        by_k = {}
        for (k, e), v in sorted(self.data.items()):
            by_k.setdefault(k, []).append((e, v))
        parts = []
        for k, terms in sorted(by_k.items()):
            cyc = []
            for e, v in terms:
                if e == 0:
                    cyc.append(str(v))
                else:
                    z = f"z{self.N}" + (f"^{e}" if e > 1 else "")
                    if v == 1:
                        cyc.append(z)
                    elif v == -1:
                        cyc.append(f"-{z}")
                    else:
                        cyc.append(f"{v}*{z}")
            body = " + ".join(cyc).replace("+ -", "- ")
            if k == 0:
                parts.append(body)
            else:
                tk = "t" if k == 1 else f"t^{k}"
                if len(cyc) == 1 and "/" not in body and "+" not in body \
                        and body not in ("1", "-1"):
                    parts.append(f"{body}*{tk}")
                elif body == "1":
                    parts.append(tk)
                elif body == "-1":
                    parts.append(f"-{tk}")
                else:
                    parts.append(f"({body})*{tk}")
        return " + ".join(parts).replace("+ -", "- ")


# -- public constructors -------------------------------------------------------


def root_of_unity(num, N):
    """zeta_N^num in canonical cyclotomic form, living in Q(zeta_lcm(4,N))."""
    if N < 1:
        raise InvalidOrder("root-of-unity order must be >= 1")
    NN = _lcm(4, N)
    r = NN // N
    phi, rows = _cyclo_rows(NN)
    data = {}
    for b, c in rows[(num * r) % NN]:
        data[(0, b)] = Fraction(c)
    return Scalar(NN, None, data)


def imag_unit():
    return root_of_unity(1, 4)


def t_monomial(k=1, coeff=1, trunc=None):
    """coeff * t^k as an exact polynomial (or truncated if trunc given)."""
    c = _as_fraction(coeff)
    if trunc is not None and k > trunc:
        return Scalar.zero(4, trunc)
    return Scalar(4, trunc, {(k, 0): c} if c else {})


def exp_it(r, K):
    """Truncated series of e^(i r t): sum_{k<=K} (i r)^k t^k / k!."""
    if K < 0:
        raise ValueError("truncation order must be >= 0")
    r = _as_fraction(r)
    data = {}
    term = Fraction(1)  # r^k / k!
    for k in range(K + 1):
        if term:
            # (i)^k cycles through 1, i, -1, -i: zeta_4 exponent k mod 4
            e = k % 4
            sign = 1
            if e == 2:
                e, sign = 0, -1
            elif e == 3:
                e, sign = 1, -1
            data[(k, e)] = data.get((k, e), 0) + sign * term
        term = term * r / (k + 1)
    return Scalar(4, K, data)


def d_dt(s):
    """Formal t-derivative; a K-truncated input is only known to order K-1."""
    data = {}
    for (k, e), v in s.data.items():
        if k >= 1:
            data[(k - 1, e)] = v * k
    trunc = None if s.trunc is None else max(s.trunc - 1, -1)
    return Scalar(s.N, trunc, data, _canonical=True)


def expect_trunc(s, K, where=""):
    """Assert that s is known at least to order t^K; guards flat transport."""
    if s.trunc is not None and s.trunc < K:
        raise TruncationMismatch(
            f"{where or 'value'} only known mod t^{s.trunc + 1}, "
            f"needs mod t^{K + 1}")
    return s


def parse_rational(text):
    """Parse 'p' or 'p/q' into a Fraction."""
    return Fraction(text.strip())


ZERO = Scalar.zero()
ONE = Scalar.one()
I = imag_unit()

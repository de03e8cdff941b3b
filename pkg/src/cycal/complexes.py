"""Chains and the simplicial/cyclic operator calculus.

A "site" is a cyclic module described on basis keys: it knows faces,
degeneracies, and the unsigned cyclic rotation.  Three sites are provided:

* AlgebraSite: C_n = (A+)^(n+1) for a graded algebra A with adjoined unit TOP;
  keys are (n+1)-tuples of symbols, faces multiply adjacent slots, the last
  face wraps into slot 0, degeneracies insert TOP.
* NerveSite: B_n(Gamma) = Gamma^n; keys are n-tuples of group elements with
  the nerve faces/degeneracies and the cyclic structure
  t(g_1..g_n) = ((g_1...g_n)^-1, g_1, ..., g_{n-1}).
* ProductSite: the degreewise tensor product of two sites with diagonal
  structure maps.

Sign conventions, fixed once here and tested everywhere: the signed cyclic
operator is lambda_n = (-1)^n * rotation, b = sum (-1)^i d_i, b' drops the
last face, N = sum lambda^j, B = (1 - lambda) lambda s_n N, and total
differentials use b - B.  Normalized chains have no degenerate interior slot
(TOP for algebra sites, the group identity for nerve sites, simultaneous for
products).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from cycal.scalars import Scalar
from cycal.algebra import TOP


class ResourceBound(RuntimeError):
    pass


SHUFFLE_DEGREE_CAP = 6


def _acc(d, key, val):
    cur = d.get(key)
    if cur is None:
        if not val.is_zero():
            d[key] = val
    else:
        s = cur + val
        if s.is_zero():
            del d[key]
        else:
            d[key] = s


# ---------------------------------------------------------------------------
# sites


class AlgebraSite:
    def __init__(self, algebra):
        self.algebra = algebra

    def mul_plus(self, s1, s2):
        if s1 == TOP:
            return {s2: None}
        if s2 == TOP:
            return {s1: None}
        return self.algebra.mul_syms(s1, s2)

    def grade(self, sym):
        if sym == TOP:
            return self.algebra.group.identity
        return self.algebra.grade(sym)

    def face_terms(self, key, i, n):
        if i < n:
            prod = self.mul_plus(key[i], key[i + 1])
            head, tail = key[:i], key[i + 2:]
            for s, c in prod.items():
                yield head + (s,) + tail, c
        else:
            prod = self.mul_plus(key[n], key[0])
            tail = key[1:n]
            for s, c in prod.items():
                yield (s,) + tail, c

    def insert_unit(self, key, i, n, unit=None):
        u = TOP if unit is None else unit
        return key[:i + 1] + (u,) + key[i + 1:]

    def rotate(self, key, n):
        return (key[n],) + key[:n]

    def block_rotate(self, key, n, a):
        # rotate the interior slots 1..n cyclically, slot 0 stays put
        if n == 0 or a % n == 0:
            return key
        a = a % n
        body = key[1:]
        return (key[0],) + body[-a:] + body[:-a]

    def slot_degenerate(self, key, pos, n):
        return key[pos] == TOP

    def key_degree(self, key):
        return len(key) - 1

    def render_key(self, key):
        return "(" + "|".join(str(s) for s in key) + ")"

    def __eq__(self, other):
        return isinstance(other, AlgebraSite) and self.algebra is other.algebra

    __hash__ = None


class NerveSite:
    def __init__(self, group):
        self.group = group

    def face_terms(self, key, i, n):
        if i == 0:
            yield key[1:], None
        elif i < n:
            merged = self.group.op(key[i - 1], key[i])
            yield key[:i - 1] + (merged,) + key[i + 1:], None
        else:
            yield key[:n - 1], None

    def insert_unit(self, key, i, n, unit=None):
        u = self.group.identity if unit is None else unit
        return key[:i] + (u,) + key[i:]

    def rotate(self, key, n):
        if n == 0:
            return key
        g0 = self.group.inv(self.group.product(key))
        return (g0,) + key[:n - 1]

    def block_rotate(self, key, n, a):
        # the n stored entries are the movable block; the implicit slot-0
        # entry (g_1...g_n)^-1 is untouched by their cyclic rotation
        if n == 0 or a % n == 0:
            return key
        a = a % n
        return key[-a:] + key[:-a]

    def slot_degenerate(self, key, pos, n):
        return key[pos - 1] == self.group.identity

    def key_degree(self, key):
        return len(key)

    def render_key(self, key):
        return "[" + "|".join(str(g) for g in key) + "]"

    def __eq__(self, other):
        return isinstance(other, NerveSite) and self.group is other.group

    __hash__ = None


class ProductSite:
    def __init__(self, left, right):
        self.left = left
        self.right = right

    def face_terms(self, key, i, n):
        kl, kr = key
        for k1, c1 in self.left.face_terms(kl, i, n):
            for k2, c2 in self.right.face_terms(kr, i, n):
                if c1 is None:
                    yield (k1, k2), c2
                elif c2 is None:
                    yield (k1, k2), c1
                else:
                    yield (k1, k2), c1 * c2

    def insert_unit(self, key, i, n, unit=None):
        return (self.left.insert_unit(key[0], i, n),
                self.right.insert_unit(key[1], i, n))

    def rotate(self, key, n):
        return (self.left.rotate(key[0], n), self.right.rotate(key[1], n))

    def block_rotate(self, key, n, a):
        return (self.left.block_rotate(key[0], n, a),
                self.right.block_rotate(key[1], n, a))

    def slot_degenerate(self, key, pos, n):
        return (self.left.slot_degenerate(key[0], pos, n)
                and self.right.slot_degenerate(key[1], pos, n))

    def key_degree(self, key):
        return self.left.key_degree(key[0])

    def render_key(self, key):
        return self.left.render_key(key[0]) + "x" + self.right.render_key(key[1])

    def __eq__(self, other):
        return (isinstance(other, ProductSite) and self.left == other.left
                and self.right == other.right)

    __hash__ = None


# ---------------------------------------------------------------------------
# chains


class Chain:
    __slots__ = ("site", "degree", "terms")

    def __init__(self, site, degree, terms=None):
        self.site = site
        self.degree = degree
        self.terms = {}
        if terms:
            for k, v in terms.items():
                if not isinstance(v, Scalar):
                    v = Scalar.rational(v)
                if not v.is_zero():
                    self.terms[k] = v

    @staticmethod
    def single(site, key, coeff=1):
        deg = site.key_degree(key)
        return Chain(site, deg, {key: coeff})

    def __add__(self, other):
        assert self.degree == other.degree and \
            (self.site is other.site or self.site == other.site)
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, v)
        return Chain(self.site, self.degree, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        if not isinstance(c, Scalar):
            c = Scalar.rational(c)
        if c.is_zero():
            return Chain(self.site, self.degree)
        out = {k: c * v for k, v in self.terms.items()}
        return Chain(self.site, self.degree, out)

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        if self.degree != other.degree:
            return False
        keys = set(self.terms) | set(other.terms)
        zero = Scalar.zero()
        return all(self.terms.get(k, zero) == other.terms.get(k, zero)
                   for k in keys)

    __hash__ = None

    def is_zero(self):
        return all(v.is_zero() for v in self.terms.values())

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = [f"({v})*{self.site.render_key(k)}"
                for k, v in list(self.terms.items())[:8]]
        more = "" if len(self.terms) <= 8 else f" ... ({len(self.terms)} terms)"
        return " + ".join(bits) + more


def face(chain, i):
    n = chain.degree
    if not 0 <= i <= n:
        raise IndexError(f"face index {i} out of range for degree {n}")
    out = {}
    site = chain.site
    for key, c in chain.terms.items():
        for k2, w in site.face_terms(key, i, n):
            _acc(out, k2, c if w is None else c * w)
    return Chain(site, n - 1, out)


def degeneracy(chain, i, unit=None):
    n = chain.degree
    if not 0 <= i <= n:
        raise IndexError(f"degeneracy index {i} out of range for degree {n}")
    out = {}
    site = chain.site
    for key, c in chain.terms.items():
        _acc(out, site.insert_unit(key, i, n, unit), c)
    return Chain(site, n + 1, out)


def rot(chain):
    """Unsigned cyclic rotation t."""
    n = chain.degree
    out = {}
    for key, c in chain.terms.items():
        _acc(out, chain.site.rotate(key, n), c)
    return Chain(chain.site, n, out)


def lam(chain):
    """Signed cyclic operator lambda_n = (-1)^n t."""
    r = rot(chain)
    return r.scale(-1) if chain.degree % 2 else r


def b_op(chain):
    n = chain.degree
    out = Chain(chain.site, n - 1)
    for i in range(n + 1):
        f = face(chain, i)
        out = out + (f.scale(-1) if i % 2 else f)
    return out


def b_prime_op(chain):
    n = chain.degree
    out = Chain(chain.site, n - 1)
    for i in range(n):
        f = face(chain, i)
        out = out + (f.scale(-1) if i % 2 else f)
    return out


def N_op(chain):
    n = chain.degree
    out = chain
    cur = chain
    for _ in range(n):
        cur = lam(cur)
        out = out + cur
    return out


def extra_degeneracy(chain):
    """s = t_{n+1} s_n, the contracting homotopy of the b'-complex."""
    return rot(degeneracy(chain, chain.degree))


def B_op(chain):
    """B = (1 - lambda) t s_n N, the connecting operator.

    The middle rotation t s_n (insert the unit at slot 0) is unsigned; (1 -
    lambda) and N use the signed cyclic operator.  This is the unique sign
    placement for which b B + B b = 0 holds, via b'(t s) + (t s) b' = id.
    """
    x = N_op(chain)
    x = rot(degeneracy(x, chain.degree))
    return x - lam(x)


def normalize(chain):
    n = chain.degree
    site = chain.site
    out = {k: v for k, v in chain.terms.items()
           if not any(site.slot_degenerate(k, pos, n) for pos in range(1, n + 1))}
    return Chain(site, n, out)


def b_minus_B(total):
    """Total differential on a TotalChain."""
    return total.apply_b_minus_B()


class TotalChain:
    """Finitely supported sum of chains of degrees d, d-2, ... on one site."""

    def __init__(self, site, comps=None):
        self.site = site
        self.comps = {}
        if comps:
            for deg, ch in comps.items():
                if not ch.is_zero():
                    self.comps[deg] = ch

    @staticmethod
    def of(chain):
        return TotalChain(chain.site, {chain.degree: chain})

    def component(self, deg):
        return self.comps.get(deg, Chain(self.site, deg))

    def degrees(self):
        return sorted(self.comps)

    def __add__(self, other):
        out = dict(self.comps)
        for deg, ch in other.comps.items():
            out[deg] = out[deg] + ch if deg in out else ch
        return TotalChain(self.site, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return TotalChain(self.site,
                          {d: ch.scale(c) for d, ch in self.comps.items()})

    def normalized(self):
        return TotalChain(self.site,
                          {d: normalize(ch) for d, ch in self.comps.items()})

    def apply_b_minus_B(self, top_cap=None):
        out = {}
        for deg, ch in self.comps.items():
            if deg >= 1:
                lo = b_op(ch)
                if not lo.is_zero():
                    out[deg - 1] = out.get(deg - 1, Chain(self.site, deg - 1)) + lo
            if top_cap is None or deg + 1 <= top_cap:
                hi = B_op(ch).scale(-1)
                if not hi.is_zero():
                    out[deg + 1] = out.get(deg + 1, Chain(self.site, deg + 1)) + hi
        return TotalChain(self.site, out)

    def is_zero(self):
        return all(ch.is_zero() for ch in self.comps.values())

    def __eq__(self, other):
        degs = set(self.comps) | set(other.comps)
        return all(self.component(d) == other.component(d) for d in degs)

    __hash__ = None

    def __repr__(self):
        return "Total{" + ", ".join(f"{d}: {self.comps[d]!r}"
                                    for d in self.degrees()) + "}"


# ---------------------------------------------------------------------------
# shuffles


def _perm_sign(seq):
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


@lru_cache(maxsize=None)
def shuffle_set(p, q):
    """(p,q)-shuffles as (m_block, n_block, sign), blocks ascending, 1-based."""
    out = []
    universe = range(1, p + q + 1)
    for mblock in combinations(universe, p):
        nblock = tuple(x for x in universe if x not in mblock)
        out.append((mblock, nblock, _perm_sign(mblock + nblock)))
    return tuple(out)


@lru_cache(maxsize=None)
def cyclic_shuffle_set(p, q):
    """(p,q)-cyclic shuffles as (m_block, n_block, a, b, sign).

    sigma = mu . t1^a . t2^b restricted by sigma(1) < sigma(p+1); the sign is
    the permutation sign of the full sigma.
    """
    out = []
    for mblock, nblock, _ in shuffle_set(p, q):
        for a in range(max(p, 1)):
            for bb in range(max(q, 1)):
                sigma = [0] * (p + q)
                for x in range(1, p + 1):
                    sigma[x - 1] = mblock[(x - 1 + a) % p]
                for x in range(p + 1, p + q + 1):
                    sigma[x - 1] = nblock[(x - p - 1 + bb) % q]
                if p and q and not sigma[0] < sigma[p]:
                    continue
                out.append((mblock, nblock, a, bb, _perm_sign(sigma)))
    return tuple(out)


def _check_cap(p, q, cap=None):
    cap = SHUFFLE_DEGREE_CAP if cap is None else cap
    if p + q > cap:
        raise ResourceBound(
            f"shuffle degree {p}+{q} exceeds cap {cap}")


def _apply_degens(site, key, n, idxs):
    for idx in idxs:  # ascending 1-based global positions
        key = site.insert_unit(key, idx - 1, n)
        n += 1
    return key


class BiChain:
    """One (p, q)-component of (C tensor D): keys are (keyC, keyD) pairs."""

    __slots__ = ("siteC", "siteD", "p", "q", "terms")

    def __init__(self, siteC, siteD, p, q, terms=None):
        self.siteC = siteC
        self.siteD = siteD
        self.p = p
        self.q = q
        self.terms = {}
        if terms:
            for k, v in terms.items():
                if not isinstance(v, Scalar):
                    v = Scalar.rational(v)
                if not v.is_zero():
                    self.terms[k] = v

    @staticmethod
    def of_pair(x, y):
        """x a Chain over siteC, y a Chain over siteD."""
        terms = {}
        for kx, cx in x.terms.items():
            for ky, cy in y.terms.items():
                terms[(kx, ky)] = cx * cy
        return BiChain(x.site, y.site, x.degree, y.degree, terms)

    def is_zero(self):
        return not self.terms

    def scale(self, c):
        if not isinstance(c, Scalar):
            c = Scalar.rational(c)
        return BiChain(self.siteC, self.siteD, self.p, self.q,
                       {k: c * v for k, v in self.terms.items()})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, v)
        return BiChain(self.siteC, self.siteD, self.p, self.q, out)

    def normalized(self):
        out = {}
        for (kx, ky), v in self.terms.items():
            if any(self.siteC.slot_degenerate(kx, pos, self.p)
                   for pos in range(1, self.p + 1)):
                continue
            if any(self.siteD.slot_degenerate(ky, pos, self.q)
                   for pos in range(1, self.q + 1)):
                continue
            out[(kx, ky)] = v
        return BiChain(self.siteC, self.siteD, self.p, self.q, out)


class BiTotal:
    """Element of Tot (C tensor D): components indexed by (p, q)."""

    def __init__(self, siteC, siteD, comps=None):
        self.siteC = siteC
        self.siteD = siteD
        self.comps = {}
        if comps:
            for pq, bc in comps.items():
                if not bc.is_zero():
                    self.comps[pq] = bc

    @staticmethod
    def of_pair(x, y):
        bc = BiChain.of_pair(x, y)
        return BiTotal(x.site, y.site, {(x.degree, y.degree): bc})

    def _add_comp(self, out, p, q, bc):
        if (p, q) in out:
            out[(p, q)] = out[(p, q)] + bc
        else:
            out[(p, q)] = bc

    def apply_b_minus_B(self):
        """b(x@y) = bx@y + (-1)^p x@by, B likewise, total b - B."""
        out = {}
        for (p, q), bc in self.comps.items():
            left = {}
            right = {}
            for (kx, ky), v in bc.terms.items():
                cx = Chain.single(self.siteC, kx, v)
                left.setdefault(ky, Chain(self.siteC, p))
                left[ky] = left[ky] + cx
                cy = Chain.single(self.siteD, ky, v)
                right.setdefault(kx, Chain(self.siteD, q))
                right[kx] = right[kx] + cy
            sgn = -1 if p % 2 else 1
            # b parts
            if p >= 1:
                terms = {}
                for ky, chx in left.items():
                    for kx2, v in b_op(chx).terms.items():
                        _acc(terms, (kx2, ky), v)
                self._add_comp(out, p - 1, q,
                               BiChain(self.siteC, self.siteD, p - 1, q, terms))
            if q >= 1:
                terms = {}
                for kx, chy in right.items():
                    for ky2, v in b_op(chy).terms.items():
                        _acc(terms, (kx, ky2), v if sgn == 1 else -v)
                self._add_comp(out, p, q - 1,
                               BiChain(self.siteC, self.siteD, p, q - 1, terms))
            # B parts, subtracted
            terms = {}
            for ky, chx in left.items():
                for kx2, v in B_op(chx).terms.items():
                    _acc(terms, (kx2, ky), -v)
            self._add_comp(out, p + 1, q,
                           BiChain(self.siteC, self.siteD, p + 1, q, terms))
            terms = {}
            for kx, chy in right.items():
                for ky2, v in B_op(chy).terms.items():
                    _acc(terms, (kx, ky2), -v if sgn == 1 else v)
            self._add_comp(out, p, q + 1,
                           BiChain(self.siteC, self.siteD, p, q + 1, terms))
        return BiTotal(self.siteC, self.siteD, out)

    def normalized(self):
        return BiTotal(self.siteC, self.siteD,
                       {pq: bc.normalized() for pq, bc in self.comps.items()})


def sh_pq(bichain, cap=None):
    """The shuffle map C_p (x) D_q -> (C x D)_{p+q}."""
    p, q = bichain.p, bichain.q
    _check_cap(p, q, cap)
    siteC, siteD = bichain.siteC, bichain.siteD
    prod = ProductSite(siteC, siteD)
    out = {}
    for (kx, ky), v in bichain.terms.items():
        for mblock, nblock, sign in shuffle_set(p, q):
            kx2 = _apply_degens(siteC, kx, p, nblock)
            ky2 = _apply_degens(siteD, ky, q, mblock)
            _acc(out, (kx2, ky2), v if sign == 1 else -v)
    return Chain(prod, p + q, out)


def perp_pq(bichain, cap=None):
    """The cyclic shuffle map C_p (x) D_q -> (C x D)_{p+q}.

    The block rotations t^a, t^b move the p (resp. q) interior slots the same
    way the permutation sigma = mu t1^a t2^b moves the p + q shuffled
    positions; slot 0 of each factor stays put.  The sign is sgn(sigma).
    """
    p, q = bichain.p, bichain.q
    _check_cap(p, q, cap)
    siteC, siteD = bichain.siteC, bichain.siteD
    prod = ProductSite(siteC, siteD)
    out = {}
    for (kx, ky), v in bichain.terms.items():
        for mblock, nblock, a, bb, sign in cyclic_shuffle_set(p, q):
            kxr = siteC.block_rotate(kx, p, a)
            kyr = siteD.block_rotate(ky, q, bb)
            kx2 = _apply_degens(siteC, kxr, p, nblock)
            ky2 = _apply_degens(siteD, kyr, q, mblock)
            _acc(out, (kx2, ky2), v if sign == 1 else -v)
    return Chain(prod, p + q, out)


def sh_prime_pq(bichain, cap=None):
    """sh' = (-1)^p s(x) perp_{p+1, q+1} s(y), s the extra degeneracy.

    The (-1)^p is the Koszul sign of moving the odd operator s past the
    degree-p left factor; without it Sh fails to be a chain map.
    """
    p, q = bichain.p, bichain.q
    _check_cap(p + 1, q + 1, cap)
    siteC, siteD = bichain.siteC, bichain.siteD
    terms = {}
    for (kx, ky), v in bichain.terms.items():
        kx2 = siteC.rotate(siteC.insert_unit(kx, p, p), p + 1)
        ky2 = siteD.rotate(siteD.insert_unit(ky, q, q), q + 1)
        terms[(kx2, ky2)] = v if p % 2 == 0 else -v
    lifted = BiChain(siteC, siteD, p + 1, q + 1, terms)
    return perp_pq(lifted, cap)


def Sh(bitotal, cap=None):
    """Sh = sh - sh' : Tot (C tensor D) -> Tot (C x D)."""
    prod = ProductSite(bitotal.siteC, bitotal.siteD)
    out = TotalChain(prod)
    for (p, q), bc in bitotal.comps.items():
        s = sh_pq(bc, cap)
        out = out + TotalChain.of(s)
        sp = sh_prime_pq(bc, cap)
        out = out + TotalChain.of(sp).scale(-1)
    return out

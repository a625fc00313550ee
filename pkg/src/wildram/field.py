"""Exact arithmetic in F_{p^e} behind a canonical, reproducible modulus.

Everything else in the workbench stores its scalars as FqElem values tied
to a FieldCtx, so this module fixes the conventions once:

* the modulus for F_{p^e} is the lexicographically least monic irreducible
  polynomial of degree e over F_p, comparing coefficient tuples
  (c_0, ..., c_{e-1}) from the constant term upward, with the single
  exception e = 1 where the modulus is X itself;
* elements are coefficient tuples of length e in that basis;
* "least" element always means least coefficient tuple under the same
  lexicographic order.

Those three rules make every serialized object stable across runs and
machines, which the reproduction commands rely on.
"""

from __future__ import annotations

import itertools
import random

import numpy as np

from .errors import (
    BadParameters,
    ContextMismatch,
    DegreeOutOfRange,
    NonPrime,
    NotASubfieldDegree,
    ResourceLimit,
)

PUBLIC_DEGREE_CAP = 16
_INTERNAL_DEGREE_CAP = 128


def _is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# dense F_p[X] helpers for the modulus scan (little-endian int64 arrays)

def _fp_reduce(arr, mod_arr, p):
    """Remainder of arr modulo the monic polynomial mod_arr, length e."""
    e = len(mod_arr) - 1
    arr = arr % p
    for t in range(len(arr) - 1, e - 1, -1):
        c = arr[t]
        if c:
            arr[t - e:t] = (arr[t - e:t] - c * mod_arr[:e]) % p
            arr[t] = 0
    out = np.zeros(e, dtype=np.int64)
    out[: min(e, len(arr))] = arr[: min(e, len(arr))]
    return out


def _fp_frob_step(arr, mod_arr, p):
    # (sum c_i X^i)^p = sum c_i X^{ip} because c^p = c in F_p
    out = np.zeros((len(arr) - 1) * p + 1, dtype=np.int64)
    out[::p] = arr
    return _fp_reduce(out, mod_arr, p)


def _fp_trim(a):
    nz = np.nonzero(a)[0]
    return a[: nz[-1] + 1] if len(nz) else a[:0]


def _fp_gcd(a, b, p):
    a = _fp_trim(np.asarray(a, dtype=np.int64) % p)
    b = _fp_trim(np.asarray(b, dtype=np.int64) % p)
    while len(b):
        inv = pow(int(b[-1]), -1, p)
        r = a.copy()
        db = len(b) - 1
        for t in range(len(r) - 1, db - 1, -1):
            c = (r[t] * inv) % p
            if c:
                r[t - db: t + 1] = (r[t - db: t + 1] - c * b) % p
        a, b = b, _fp_trim(r)
    return a


def _fp_is_irreducible(cand, p):
    """Rabin test: X^(p^e) = X mod f, and X^(p^(e/r)) - X coprime to f."""
    e = len(cand) - 1
    if e == 1:
        return True
    mod_arr = np.asarray(cand, dtype=np.int64)
    x = np.zeros(e, dtype=np.int64)
    x[1] = 1
    checkpoints = sorted(e // r for r in _prime_divisors(e))
    t = x.copy()
    for m in range(1, e + 1):
        t = _fp_frob_step(t, mod_arr, p)
        if m in checkpoints:
            g = _fp_gcd((t - x) % p, mod_arr, p)
            if len(g) > 1:
                return False
    return bool(np.array_equal(t, x))


def _least_irreducible(p, e):
    if e == 1:
        return (0, 1)
    # a candidate with c_0 = 0 is divisible by X, so the scan may start
    # at c_0 = 1 without changing which polynomial is least
    for head in range(1, p):
        for tail in itertools.product(range(p), repeat=e - 1):
            cand = (head,) + tail + (1,)
            if _fp_is_irreducible(cand, p):
                return cand
    raise AssertionError("irreducible polynomial exists for every degree")


# ---------------------------------------------------------------------------
# contexts

_CTX_CACHE = {}


class FieldCtx:
    """Arithmetic context for F_{p^e} = F_p[X] / (modulus).

    Build instances through make_field or extension_field; both cache by
    (p, e), so element operations may compare contexts by identity.
    """

    __slots__ = ("p", "e", "q", "modulus", "zero", "one", "gen",
                 "_red_rows", "_frob_mats")

    def __init__(self, p, e, modulus):
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus = tuple(modulus)
        if e >= 2:
            base = tuple((-c) % p for c in self.modulus[:e])
            rows = [base]
            for _ in range(e - 2):
                prev = rows[-1]
                top = prev[e - 1]
                nxt = [0] + list(prev[: e - 1])
                if top:
                    nxt = [(a + top * b) % p for a, b in zip(nxt, base)]
                rows.append(tuple(nxt))
            self._red_rows = tuple(rows)
        else:
            self._red_rows = ()
        self._frob_mats = {}
        self.zero = FqElem(self, (0,) * e)
        self.one = FqElem(self, (1,) + (0,) * (e - 1))
        if e >= 2:
            self.gen = FqElem(self, (0, 1) + (0,) * (e - 2))
        else:
            self.gen = self.zero  # the class of X in F_p[X]/(X)

    def elem(self, value):
        """Coerce an int or a coefficient sequence into this field."""
        if isinstance(value, FqElem):
            if value.ctx is not self:
                raise ContextMismatch("element from a different context")
            return value
        if isinstance(value, int):
            return FqElem(self, (value % self.p,) + (0,) * (self.e - 1))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) > self.e:
            raise BadParameters(
                "coefficient sequence longer than the extension degree")
        return FqElem(self, coeffs + (0,) * (self.e - len(coeffs)))

    def elements(self):
        """All q elements, least coefficient tuple first."""
        for coeffs in itertools.product(range(self.p), repeat=self.e):
            yield FqElem(self, coeffs)

    def frob_matrix(self, k=1):
        """Matrix over F_p of x -> x^(p^k) in the power basis, row i the
        image of X^i."""
        k %= self.e
        mat = self._frob_mats.get(k)
        if mat is not None:
            return mat
        if k == 0:
            mat = tuple(tuple(int(i == j) for j in range(self.e))
                        for i in range(self.e))
        elif k == 1:
            rows = []
            for i in range(self.e):
                img = (self.gen ** (i * self.p)) if self.e > 1 else self.one
                rows.append(img.coeffs)
            mat = tuple(rows)
        else:
            prev = self.frob_matrix(k - 1)
            one_step = self.frob_matrix(1)
            p = self.p
            mat = tuple(
                tuple(sum(prev[i][t] * one_step[t][j] for t in range(self.e)) % p
                      for j in range(self.e))
                for i in range(self.e))
        self._frob_mats[k] = mat
        return mat

    def to_json(self):
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    def __eq__(self, other):
        return (isinstance(other, FieldCtx)
                and (self.p, self.e, self.modulus)
                == (other.p, other.e, other.modulus))

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return "FieldCtx(p=%d, e=%d)" % (self.p, self.e)


def _field(p, e):
    if not isinstance(p, int) or not _is_prime(p):
        raise NonPrime("p must be a prime integer, got %r" % (p,))
    if not isinstance(e, int) or e < 1:
        raise DegreeOutOfRange("extension degree must be a positive integer")
    if e > _INTERNAL_DEGREE_CAP:
        raise ResourceLimit(
            "extension degree %d exceeds the internal cap %d"
            % (e, _INTERNAL_DEGREE_CAP))
    key = (p, e)
    ctx = _CTX_CACHE.get(key)
    if ctx is None:
        ctx = FieldCtx(p, e, _least_irreducible(p, e))
        _CTX_CACHE[key] = ctx
    return ctx


def make_field(p, e=1):
    """Canonical context for F_{p^e}, 1 <= e <= PUBLIC_DEGREE_CAP."""
    if isinstance(e, int) and e > PUBLIC_DEGREE_CAP:
        raise DegreeOutOfRange(
            "degree %d is above the supported cap %d" % (e, PUBLIC_DEGREE_CAP))
    return _field(p, e)


def extension_field(p, e):
    """Like make_field but without the public degree cap.

    Splitting-field searches occasionally need degrees well past what the
    public constructor allows; they go through here and accept the cost.
    """
    return _field(p, e)


def field_from_json(obj):
    ctx = make_field(int(obj["p"]), int(obj["e"]))
    mod = obj.get("modulus")
    if mod is not None and tuple(int(c) for c in mod) != ctx.modulus:
        raise BadParameters(
            "modulus %r is not the canonical choice for p=%d, e=%d"
            % (mod, ctx.p, ctx.e))
    return ctx


# ---------------------------------------------------------------------------
# elements

class FqElem:
    """Immutable element of a FieldCtx, a length-e coefficient tuple."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, FqElem):
            if other.ctx is not self.ctx:
                raise ContextMismatch("mixed field contexts in arithmetic")
            return other
        if isinstance(other, int):
            return self.ctx.elem(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = self.ctx.p
        return FqElem(self.ctx, tuple((a + b) % p
                                      for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return FqElem(self.ctx, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = self.ctx.p
        return FqElem(self.ctx, tuple((a - b) % p
                                      for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        ctx = self.ctx
        p, e = ctx.p, ctx.e
        if e == 1:
            return FqElem(ctx, ((self.coeffs[0] * other.coeffs[0]) % p,))
        a, b = self.coeffs, other.coeffs
        conv = [0] * (2 * e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    conv[i + j] += ai * bj
        out = conv[:e]
        rows = ctx._red_rows
        for t in range(e, 2 * e - 1):
            c = conv[t]
            if c:
                row = rows[t - e]
                for j in range(e):
                    out[j] += c * row[j]
        return FqElem(ctx, tuple(v % p for v in out))

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ctx.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        return self ** (self.ctx.q - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def frobenius(self, k=1):
        """x -> x^(p^k)."""
        ctx = self.ctx
        k %= ctx.e
        if k == 0:
            return self
        mat = ctx.frob_matrix(k)
        p, e = ctx.p, ctx.e
        out = [0] * e
        for i, ci in enumerate(self.coeffs):
            if ci:
                row = mat[i]
                for j in range(e):
                    out[j] += ci * row[j]
        return FqElem(ctx, tuple(v % p for v in out))

    def pth_root(self):
        # Frobenius is a bijection, so the root is x^(p^(e-1))
        return self.frobenius(self.ctx.e - 1)

    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ctx.elem(other)
        return (isinstance(other, FqElem)
                and self.ctx is other.ctx
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.coeffs, self.ctx.p, self.ctx.e))

    def to_json(self):
        return list(self.coeffs)

    def __repr__(self):
        return "FqElem(%r in F_%d^%d)" % (list(self.coeffs),
                                          self.ctx.p, self.ctx.e)


def frobenius_trace(x, d=1):
    """Trace of x from F_{p^e} down to the subfield F_{p^d}, d | e."""
    e = x.ctx.e
    if d < 1 or e % d:
        raise NotASubfieldDegree("trace target degree %d does not divide %d"
                                 % (d, e))
    acc = x
    cur = x
    for _ in range(e // d - 1):
        cur = cur.frobenius(d)
        acc = acc + cur
    return acc


# ---------------------------------------------------------------------------
# sparse polynomials over one context

class FqPoly:
    """Immutable sparse polynomial: sorted tuple of (exponent, FqElem)."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms=()):
        acc = {}
        for exp, coeff in terms:
            coeff = ctx.elem(coeff)
            if not coeff:
                continue
            prev = acc.get(exp)
            cur = coeff if prev is None else prev + coeff
            if cur:
                acc[exp] = cur
            elif prev is not None:
                del acc[exp]
        self.ctx = ctx
        self.terms = tuple(sorted(acc.items()))

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, ())

    @classmethod
    def x(cls, ctx):
        return cls(ctx, ((1, ctx.one),))

    @classmethod
    def monomial(cls, ctx, exp, coeff=1):
        return cls(ctx, ((exp, ctx.elem(coeff)),))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        """Degree, with -1 for the zero polynomial."""
        return self.terms[-1][0] if self.terms else -1

    def leading_coeff(self):
        if not self.terms:
            return self.ctx.zero
        return self.terms[-1][1]

    def coeff(self, exp):
        for k, c in self.terms:
            if k == exp:
                return c
        return self.ctx.zero

    def _check(self, other):
        if other.ctx is not self.ctx:
            raise ContextMismatch("polynomials over different contexts")

    def __add__(self, other):
        if not isinstance(other, FqPoly):
            return NotImplemented
        self._check(other)
        return FqPoly(self.ctx, self.terms + other.terms)

    def __neg__(self):
        return FqPoly(self.ctx, tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other):
        if not isinstance(other, FqPoly):
            return NotImplemented
        self._check(other)
        return FqPoly(self.ctx,
                      self.terms + tuple((k, -c) for k, c in other.terms))

    def __mul__(self, other):
        if isinstance(other, (FqElem, int)):
            c = self.ctx.elem(other)
            return FqPoly(self.ctx, tuple((k, a * c) for k, a in self.terms))
        if not isinstance(other, FqPoly):
            return NotImplemented
        self._check(other)
        acc = {}
        for i, a in self.terms:
            for j, b in other.terms:
                k = i + j
                prod = a * b
                prev = acc.get(k)
                acc[k] = prod if prev is None else prev + prod
        return FqPoly(self.ctx, acc.items())

    __rmul__ = __mul__

    def pth_power(self, k=1):
        """Freshman power: coefficients to the p^k, exponents times p^k."""
        step = self.ctx.p ** k
        return FqPoly(self.ctx,
                      tuple((exp * step, c.frobenius(k) if self.ctx.e > 1 else c)
                            for exp, c in self.terms))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = FqPoly(self.ctx, ((0, self.ctx.one),))
        if k == 0:
            return result
        # base-p digits keep sparse polynomials sparse in characteristic p
        p = self.ctx.p
        level = self
        while k:
            d = k % p
            for _ in range(d):
                result = result * level
            k //= p
            if k:
                level = level.pth_power()
        return result

    def evaluate(self, x):
        """Value at a field element; coefficients embed upward if x lives
        in an extension of this polynomial's field."""
        if isinstance(x, FqElem) and x.ctx is not self.ctx:
            if x.ctx.p != self.ctx.p or x.ctx.e % self.ctx.e:
                raise ContextMismatch(
                    "cannot evaluate over an unrelated context")
            return embed_poly(self, x.ctx).evaluate(x)
        x = self.ctx.elem(x)
        acc = self.ctx.zero
        for exp, c in self.terms:
            acc = acc + c * x ** exp
        return acc

    def compose(self, g):
        """Substitution self(g(X))."""
        if not isinstance(g, FqPoly):
            raise ContextMismatch("compose expects a polynomial")
        self._check(g)
        acc = FqPoly.zero(self.ctx)
        frob_powers = [g]
        for exp, c in self.terms:
            acc = acc + _char_p_power(g, exp, frob_powers) * c
        return acc

    def map_coeffs(self, fn):
        return FqPoly(self.ctx, tuple((k, fn(c)) for k, c in self.terms))

    def to_json(self):
        return [[exp, c.to_json()] for exp, c in self.terms]

    @classmethod
    def from_json(cls, ctx, obj):
        return cls(ctx, ((int(exp), ctx.elem(c)) for exp, c in obj))

    def __eq__(self, other):
        return (isinstance(other, FqPoly)
                and self.ctx is other.ctx
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.e,
                     tuple((k, c.coeffs) for k, c in self.terms)))

    def __repr__(self):
        if not self.terms:
            return "FqPoly(0)"
        bits = []
        for exp, c in reversed(self.terms):
            bits.append("%r*X^%d" % (list(c.coeffs), exp))
        return "FqPoly(%s)" % " + ".join(bits)


def _char_p_power(g, k, frob_powers):
    """g**k via base-p digits, sharing the list of p^j-th powers of g."""
    p = g.ctx.p
    result = FqPoly(g.ctx, ((0, g.ctx.one),))
    j = 0
    while k:
        d = k % p
        if d:
            while j >= len(frob_powers):
                frob_powers.append(frob_powers[-1].pth_power())
            piece = frob_powers[j]
            for _ in range(d):
                result = result * piece
        k //= p
        j += 1
    return result


def reduce_pth_powers(f):
    """Strip p-th power monomials from f.

    Returns (reduced, constant, witness) with

        f = reduced + constant + witness^p - witness,

    where reduced has no constant term and no term whose exponent is a
    positive multiple of p.  The rewrite rule is a*X^(ip) -> a^(1/p)*X^i,
    applied until it stabilizes; the witness collects the replacement
    terms so callers can audit the identity.
    """
    ctx = f.ctx
    p = ctx.p
    acc = {exp: c for exp, c in f.terms}
    witness = {}
    pending = sorted((e for e in acc if e >= p and e % p == 0), reverse=True)
    while pending:
        exp = pending.pop()
        c = acc.pop(exp, None)
        if c is None or not c:
            continue
        new_exp = exp // p
        root = c.pth_root()
        for table in (acc, witness):
            prev = table.get(new_exp)
            cur = root if prev is None else prev + root
            if cur:
                table[new_exp] = cur
            elif prev is not None:
                del table[new_exp]
        if new_exp >= p and new_exp % p == 0 and new_exp in acc:
            pending.append(new_exp)
            pending.sort(reverse=True)
    constant = acc.pop(0, ctx.zero)
    return (FqPoly(ctx, acc.items()), constant,
            FqPoly(ctx, witness.items()))


# ---------------------------------------------------------------------------
# subfield embeddings

_EMBED_ROOTS = {}


def _elist_trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _elist_monic(a):
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _elist_mod(a, b):
    """Remainder of a modulo monic b, both little-endian FqElem lists."""
    r = list(a)
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        c = r[-1]
        if c:
            shift = len(r) - 1 - db
            for i in range(db):
                r[shift + i] = r[shift + i] - c * b[i]
        r.pop()
        _elist_trim(r)
    return r


def _elist_mulmod(a, b, m):
    ctx = m[-1].ctx
    out = [ctx.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
    return _elist_mod(out, m)


def _elist_powmod(a, k, m):
    ctx = m[-1].ctx
    result = [ctx.one]
    base = _elist_mod(list(a), m)
    while k:
        if k & 1:
            result = _elist_mulmod(result, base, m)
        k >>= 1
        if k:
            base = _elist_mulmod(base, base, m)
    return result


def _elist_gcd(a, b):
    a, b = _elist_trim(list(a)), _elist_trim(list(b))
    while b:
        b = _elist_monic(b)
        a, b = b, _elist_mod(a, b)
        _elist_trim(b)
    return a


def _elist_sub(a, b):
    ctx = (a[0] if a else b[0]).ctx
    n = max(len(a), len(b))
    out = [ctx.zero] * n
    for i, c in enumerate(a):
        out[i] = out[i] + c
    for i, c in enumerate(b):
        out[i] = out[i] - c
    return _elist_trim(out)


def _split_roots(g, ctx, rng, out):
    """All roots of monic g, assuming g splits into distinct linears."""
    if len(g) == 2:
        out.append(-g[0])
        return
    q = ctx.q
    x_poly = [ctx.zero, ctx.one]
    while True:
        delta = ctx.elem([rng.randrange(ctx.p) for _ in range(ctx.e)])
        if ctx.p == 2:
            # additive splitting: gcd with the trace polynomial of delta*X
            term = _elist_mod([ctx.zero, delta], g)
            acc = list(term)
            for _ in range(ctx.e - 1):
                term = _elist_mulmod(term, term, g)
                acc = _elist_sub(acc, [-c for c in term])
            h = acc
        else:
            shifted = _elist_sub(x_poly, [-delta])
            h = _elist_powmod(shifted, (q - 1) // 2, g)
            h = _elist_sub(h, [ctx.one])
        d1 = _elist_gcd(h, g)
        if 0 < len(d1) - 1 < len(g) - 1:
            d1 = _elist_monic(d1)
            d2 = _elist_monic(_elist_quotient(g, d1))
            _split_roots(d1, ctx, rng, out)
            _split_roots(d2, ctx, rng, out)
            return


def _elist_quotient(a, b):
    """Quotient of a by monic b, exact division."""
    r = list(a)
    db = len(b) - 1
    qcoeffs = [r[0].ctx.zero] * (len(a) - db)
    while len(r) - 1 >= db and r:
        c = r[-1]
        shift = len(r) - 1 - db
        qcoeffs[shift] = c
        if c:
            for i in range(db + 1):
                r[shift + i] = r[shift + i] - c * b[i]
        r.pop()
        _elist_trim(r)
    return qcoeffs


def subfield_root(small, big):
    """Least root in big of the modulus of small; the anchor of the
    canonical embedding F_{p^d} -> F_{p^e}."""
    if small.p != big.p or big.e % small.e:
        raise NotASubfieldDegree(
            "no embedding of degree %d into degree %d" % (small.e, big.e))
    key = (small.p, small.e, big.e)
    root = _EMBED_ROOTS.get(key)
    if root is None:
        if small.e == 1:
            root = big.zero  # modulus X, root 0; constants embed directly
        else:
            g = [big.elem(c) for c in small.modulus]
            roots = []
            # the seed only affects how fast the split lands, never the
            # answer: we always return the least root
            _split_roots(g, big, random.Random(11), roots)
            if len(roots) != small.e:
                raise AssertionError("modulus must split in the big field")
            root = min(roots, key=lambda r: r.coeffs)
        _EMBED_ROOTS[key] = root
    return root


def embed_elem(x, big):
    """Image of x under the canonical embedding into big."""
    small = x.ctx
    if small is big:
        return x
    rho = subfield_root(small, big)
    acc = big.zero
    power = big.one
    for c in x.coeffs:
        if c:
            acc = acc + power * c
        power = power * rho
    return acc


def embed_poly(f, big):
    """Coefficient-wise canonical embedding of a polynomial."""
    if f.ctx is big:
        return f
    return FqPoly(big, tuple((exp, embed_elem(c, big)) for exp, c in f.terms))

"""Additive (Frobenius-linear) operators over a finite field.

An AdditiveOp with coefficients (a_0, ..., a_d) is the operator

    x  ->  a_0 x + a_1 x^p + ... + a_d x^(p^d),

written sum a_j F^j in the twisted polynomial ring F_q{F}.  Composition
twists scalars past Frobenius, kernels are F_p-subspaces computable by
plain linear algebra over F_p, and separable operators (a_0 != 0) of
F-degree d have kernels of dimension exactly d over a splitting field.

The module also hosts the palindromic adjoint: for a polynomial of the
shape f = X*S(X) + c*X with S additive, the geometric translations of
the cover y^p - y = f(x) are the kernel of an explicit self-reciprocal
operator built from the coefficients of S.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import (
    BadParameters,
    ContextMismatch,
    InseparableOperator,
    NotASubfieldDegree,
    NotInXSXForm,
)
from .field import (
    FqPoly,
    embed_elem,
    embed_poly,
    extension_field,
    frobenius_trace,
    reduce_pth_powers,
)


# ---------------------------------------------------------------------------
# linear algebra mod p (int64 matrices, exact)

def rref_mod(M, p):
    """Row-reduced echelon form mod p; returns (R, pivot column list)."""
    R = np.array(M, dtype=np.int64) % p
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if R[i, c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            R[[r, pivot_row]] = R[[pivot_row, r]]
        R[r] = (R[r] * pow(int(R[r, c]), -1, p)) % p
        col = R[:, c].copy()
        col[r] = 0
        R = (R - np.outer(col, R[r])) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def nullspace_mod(M, p):
    """Rows spanning {x : M x = 0 mod p}."""
    M = np.asarray(M, dtype=np.int64)
    R, pivots = rref_mod(M, p)
    cols = M.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-int(R[i, fc])) % p
    return basis


def solve_mod(M, b, p):
    """One solution of M x = b mod p, or None if inconsistent."""
    M = np.asarray(M, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    aug = np.concatenate([M, b.reshape(-1, 1)], axis=1) % p
    R, pivots = rref_mod(aug, p)
    n = M.shape[1]
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, n]
    return x


# ---------------------------------------------------------------------------
# operators

class AdditiveOp:
    """Twisted polynomial sum a_j F^j acting as x -> sum a_j x^(p^j)."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        cs = [ctx.elem(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    @property
    def f_degree(self):
        return len(self.coeffs) - 1

    @property
    def separable(self):
        return bool(self.coeffs) and bool(self.coeffs[0])

    def is_zero(self):
        return not self.coeffs

    def coeff(self, j):
        return self.coeffs[j] if j < len(self.coeffs) else self.ctx.zero

    def as_poly(self):
        return FqPoly(self.ctx,
                      tuple((self.ctx.p ** j, c)
                            for j, c in enumerate(self.coeffs) if c))

    def evaluate(self, x):
        if x.ctx is not self.ctx:
            return self.embed(x.ctx).evaluate(x)
        acc = self.ctx.zero
        for j, c in enumerate(self.coeffs):
            if c:
                acc = acc + c * x.frobenius(j)
        return acc

    __call__ = evaluate

    def embed(self, big):
        return AdditiveOp(big, [embed_elem(c, big) for c in self.coeffs])

    def compose(self, other):
        """Twisted product: (self . other)(x) = self(other(x))."""
        if other.ctx is not self.ctx:
            raise ContextMismatch("operators over different contexts")
        out = [self.ctx.zero] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b.frobenius(i)
        return AdditiveOp(self.ctx, out)

    def __add__(self, other):
        if not isinstance(other, AdditiveOp):
            return NotImplemented
        if other.ctx is not self.ctx:
            raise ContextMismatch("operators over different contexts")
        n = max(len(self.coeffs), len(other.coeffs))
        return AdditiveOp(self.ctx,
                          [self.coeff(j) + other.coeff(j) for j in range(n)])

    def __sub__(self, other):
        if not isinstance(other, AdditiveOp):
            return NotImplemented
        if other.ctx is not self.ctx:
            raise ContextMismatch("operators over different contexts")
        n = max(len(self.coeffs), len(other.coeffs))
        return AdditiveOp(self.ctx,
                          [self.coeff(j) - other.coeff(j) for j in range(n)])

    def __mul__(self, scalar):
        c = self.ctx.elem(scalar)
        return AdditiveOp(self.ctx, [a * c for a in self.coeffs])

    __rmul__ = __mul__

    def to_json(self):
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, ctx, obj):
        return cls(ctx, [ctx.elem(c) for c in obj])

    def __eq__(self, other):
        return (isinstance(other, AdditiveOp)
                and self.ctx is other.ctx
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.e,
                     tuple(c.coeffs for c in self.coeffs)))

    def __repr__(self):
        if not self.coeffs:
            return "AdditiveOp(0)"
        bits = ["%r F^%d" % (list(c.coeffs), j)
                for j, c in enumerate(self.coeffs) if c]
        return "AdditiveOp(%s)" % " + ".join(bits)


def frobenius_operator(ctx, k=1):
    return AdditiveOp(ctx, [0] * k + [1])


def wp_operator(ctx):
    """The Artin-Schreier operator F - 1, x -> x^p - x."""
    return AdditiveOp(ctx, [-1, 1])


# ---------------------------------------------------------------------------
# kernels over extensions

class KernelBasis:
    """F_p-basis of the kernel of an additive operator inside one field."""

    __slots__ = ("field", "basis")

    def __init__(self, field, basis):
        self.field = field
        self.basis = tuple(basis)

    @property
    def dim(self):
        return len(self.basis)

    def elements(self):
        """All p^dim kernel elements (keep dim small)."""
        p = self.field.p
        for digits in itertools.product(range(p), repeat=len(self.basis)):
            acc = self.field.zero
            for d, b in zip(digits, self.basis):
                if d:
                    acc = acc + b * d
            yield acc

    def __repr__(self):
        return "KernelBasis(dim=%d over %r)" % (self.dim, self.field)


def _mult_matrix(alpha, E):
    # row i holds the coordinates of alpha * X^i
    rows = []
    cur = alpha
    for _ in range(E.e):
        rows.append(cur.coeffs)
        cur = cur * E.gen
    return np.array(rows, dtype=np.int64)


def operator_matrix(A, E):
    """Matrix of A on E over F_p, acting on coordinate row vectors."""
    if E.p != A.ctx.p or E.e % A.ctx.e:
        raise NotASubfieldDegree(
            "operator field F_%d^%d does not embed in degree %d"
            % (A.ctx.p, A.ctx.e, E.e))
    p, N = E.p, E.e
    phi = np.array(E.frob_matrix(1), dtype=np.int64)
    total = np.zeros((N, N), dtype=np.int64)
    phi_j = np.eye(N, dtype=np.int64)
    for j, aj in enumerate(A.coeffs):
        if j:
            phi_j = (phi_j @ phi) % p
        if aj:
            total = (total + phi_j @ _mult_matrix(embed_elem(aj, E), E)) % p
    return total


def linearize_kernel(A, N):
    """Kernel of A inside F_{p^N} as a KernelBasis.

    The operator is linearized to an N x N matrix over F_p and the kernel
    read off its nullspace; nothing here assumes A splits, the basis just
    spans whatever part of the kernel that field contains.
    """
    if A.is_zero():
        raise InseparableOperator("zero operator has no kernel basis")
    E = extension_field(A.ctx.p, N)
    mat = operator_matrix(A, E)
    rows = nullspace_mod(mat.T, E.p)
    return KernelBasis(E, [E.elem([int(v) for v in row]) for row in rows])


def image_membership(A, c, N=None):
    """A preimage w in F_{p^N} with A(w) = c, or None if c is not hit."""
    if N is None:
        N = c.ctx.e
    E = extension_field(A.ctx.p, N)
    target = embed_elem(c, E) if c.ctx is not E else c
    mat = operator_matrix(A, E)
    sol = solve_mod(mat.T, np.array(target.coeffs, dtype=np.int64), E.p)
    if sol is None:
        return None
    return E.elem([int(v) for v in sol])


# ---------------------------------------------------------------------------
# splitting fields of separable operators

def splitting_degree(A, cap=48):
    """Least N with the full kernel of A inside F_{p^N}, or None past cap.

    Advances R_N = X^(p^N) mod A(X) by one Frobenius per step; A splits
    over F_{p^N} exactly when R_N = X.  Each reduction step uses the
    sparse relation X^(p^d) = -(1/a_d) * sum_{j<d} a_j X^(p^j).
    """
    if not A.separable:
        raise InseparableOperator("splitting degree needs a separable operator")
    ctx = A.ctx
    p = ctx.p
    d = A.f_degree
    if d == 0:
        return 1  # kernel is {0}
    D = p ** d
    inv_lead = A.coeffs[d].inverse()
    lower = [(p ** j, aj) for j, aj in enumerate(A.coeffs[:d]) if aj]
    zero = ctx.zero
    x_vec = [zero] * D
    x_vec[1] = ctx.one
    R = list(x_vec)
    for N in range(1, cap + 1):
        new = [zero] * ((D - 1) * p + 1)
        for i, c in enumerate(R):
            if c:
                new[i * p] = c.frobenius()
        for t in range(len(new) - 1, D - 1, -1):
            c = new[t]
            if c:
                new[t] = zero
                factor = -(c * inv_lead)
                shift = t - D
                for pos, aj in lower:
                    new[shift + pos] = new[shift + pos] + factor * aj
        R = new[:D]
        if R == x_vec:
            return N
    return None


def splits_over(A, N, cap=48):
    deg = splitting_degree(A, cap=cap)
    return deg is not None and N % deg == 0


# ---------------------------------------------------------------------------
# palindromic adjoint and translation tests

def xsx_parts(f):
    """Split f = X*S(X) + c*X into (S as AdditiveOp, c).

    Raises NotInXSXForm unless the support of f lies in
    {1} union {1 + p^j : j >= 0} and S has F-degree at least 1.
    """
    ctx = f.ctx
    p = ctx.p
    c = ctx.zero
    s_coeffs = {}
    for exp, coeff in f.terms:
        if exp == 1:
            c = coeff
            continue
        j = _p_power_index(exp - 1, p)
        if j is None:
            raise NotInXSXForm("exponent %d is not 1 + p^j" % exp)
        s_coeffs[j] = coeff
    if not s_coeffs or max(s_coeffs) < 1:
        raise NotInXSXForm("S must have F-degree at least 1")
    s_op = AdditiveOp(ctx, [s_coeffs.get(j, 0)
                            for j in range(max(s_coeffs) + 1)])
    return s_op, c


def _p_power_index(n, p):
    if n < 1:
        return None
    j = 0
    while n % p == 0:
        n //= p
        j += 1
    return j if n == 1 else None


def palindromic_adjoint(f):
    """Adjoint operator whose kernel is the geometric translation group
    of the cover y^p - y = f(x), for f = X*S(X) + c*X.

    Writing S = sum_{j<=s} a_j F^j with a_s != 0, the linear-in-X part of
    f(X + y) - f(X) after stripping p-th power monomials is

        T(y) = 2 a_0 y + sum_{j>=1} (a_j y^(p^j) + (a_j y)^(1/p^j));

    the c*X term of f only moves the constant, so it never enters.  The
    adjoint is T^(p^s) scaled by 1/a_s, separable of F-degree 2s with
    constant coefficient 1.
    """
    s_op, _ = xsx_parts(f)
    ctx = f.ctx
    s = s_op.f_degree
    a_s = s_op.coeffs[s]
    inv = a_s.inverse()
    out = [ctx.zero] * (2 * s + 1)
    for j in range(1, s + 1):
        a_j = s_op.coeff(j)
        if a_j:
            out[s + j] = out[s + j] + a_j.frobenius(s)
            out[s - j] = out[s - j] + a_j.frobenius(s - j)
    mid = 2 * s_op.coeff(0)
    if mid:
        out[s] = out[s] + mid.frobenius(s)
    return AdditiveOp(ctx, [v * inv for v in out])


def translation_defect(f, y):
    """Reduced form of f(X + y) - f(X): (polynomial part, constant)."""
    if y.ctx is not f.ctx:
        f = embed_poly(f, y.ctx)
    ctx = f.ctx
    shift = FqPoly(ctx, ((1, ctx.one), (0, y)))
    delta = f.compose(shift) - f
    red, const, _ = reduce_pth_powers(delta)
    return red, const


def translation_test(f, y, mode="geometric"):
    """Whether x -> x + y fixes the cover y^p - y = f(x).

    Geometric mode ignores the constant term of the defect (any constant
    can be absorbed over the algebraic closure); arithmetic mode also
    requires the constant to be a p-th power residue under F - 1, i.e.
    to have zero trace down to F_p.
    """
    if mode not in ("geometric", "arithmetic"):
        raise BadParameters("mode must be geometric or arithmetic")
    red, const = translation_defect(f, y)
    if not red.is_zero():
        return False
    if mode == "geometric":
        return True
    return not frobenius_trace(const, 1)

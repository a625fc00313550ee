"""Covers of the affine line defined by additive equations.

A CoverSpec holds one equation over F_q = F_{p^e}:

* kind "witt": V(y) = (f_0(x), ..., f_{n-1}(x)) with V the Witt
  Artin-Schreier operator F - 1 on length-n Witt vectors, a cyclic
  p^n-cover (degree drops only when leading coordinates degenerate);
* kind "additive": A(y) = f(x) with A a separable additive operator that
  splits over F_q, an elementary abelian cover of degree p^(deg_F A).

Everything ramifies only above x = infinity.  Conductors come from the
reduced right hand sides: stripping a*X^(ip) -> a^(1/p)*X^i leaves
degrees prime to p, and for Witt vectors the coordinate rewrites are
carried exactly (length 2 uses the closed carry polynomial; longer
vectors must arrive with their leading coordinates already reduced).
Genera come from the conductor-discriminant ladder of the character
decomposition, which for additive covers is computed honestly: each dual
hyperplane yields a subspace polynomial u, a twisted factor l with
l . A = (F - 1) . u, and a rank-one piece y^p - y = l(f).
"""

from __future__ import annotations

from .errors import (
    BadParameters,
    ContextMismatch,
    DecompositionFailure,
    InseparableOperator,
    ZeroCover,
)
from .field import FqPoly, field_from_json, reduce_pth_powers
from .additive import (
    AdditiveOp,
    image_membership,
    linearize_kernel,
    nullspace_mod,
    rref_mod,
    splitting_degree,
    wp_operator,
)
from .ramify import ladder_filtration, tower_genus
from .witt import witt_ring, witt_trace, witt2_sub

import numpy as np


class CoverSpec:
    """One equation V(y) = rhs(x) over a fixed field context."""

    __slots__ = ("ctx", "kind", "op", "rhs", "label")

    def __init__(self, ctx, operator, rhs, label=""):
        kind, op = operator
        rhs = tuple(rhs)
        if any(f.ctx is not ctx for f in rhs):
            raise ContextMismatch("right hand side over a different context")
        if kind == "witt":
            n = int(op)
            if n < 1:
                raise BadParameters("Witt length must be at least 1")
            if len(rhs) != n:
                raise BadParameters(
                    "expected %d coordinates, got %d" % (n, len(rhs)))
        elif kind == "additive":
            if not isinstance(op, AdditiveOp) or op.ctx is not ctx:
                raise ContextMismatch("operator over a different context")
            if not op.separable:
                raise InseparableOperator(
                    "additive covers need a separable operator")
            if len(rhs) != 1:
                raise BadParameters("additive covers take a single rhs")
        else:
            raise BadParameters("operator kind must be 'witt' or 'additive'")
        self.ctx = ctx
        self.kind = kind
        self.op = op
        self.rhs = rhs
        self.label = label

    def to_json(self):
        if self.kind == "witt":
            op = {"witt": self.op}
        else:
            op = {"additive": self.op.to_json()}
        return {"field": self.ctx.to_json(), "operator": op,
                "rhs": [f.to_json() for f in self.rhs], "label": self.label}

    @classmethod
    def from_json(cls, obj):
        ctx = field_from_json(obj["field"])
        op_obj = obj["operator"]
        if "witt" in op_obj:
            operator = ("witt", int(op_obj["witt"]))
        else:
            operator = ("additive", AdditiveOp.from_json(ctx, op_obj["additive"]))
        rhs = [FqPoly.from_json(ctx, f) for f in obj["rhs"]]
        return cls(ctx, operator, rhs, obj.get("label", ""))

    def __repr__(self):
        return "CoverSpec(%s, %s, label=%r)" % (self.kind, self.op, self.label)


class ReducedForm:
    """Result of stripping p-th power monomials from one equation side."""

    __slots__ = ("poly", "constant", "witness", "mode")

    def __init__(self, poly, constant, witness, mode):
        self.poly = poly
        self.constant = constant
        self.witness = witness
        self.mode = mode

    @property
    def degree(self):
        return self.poly.degree()

    def __repr__(self):
        return "ReducedForm(deg=%d, mode=%s)" % (self.degree, self.mode)


def reduce_mod_wp(f, mode="geometric"):
    """Reduced form of f modulo p-th powers (and constants, geometrically)."""
    if mode not in ("geometric", "arithmetic"):
        raise BadParameters("mode must be geometric or arithmetic")
    red, const, wit = reduce_pth_powers(f)
    if mode == "geometric":
        return ReducedForm(red, const, wit, mode)
    return ReducedForm(red + FqPoly(f.ctx, ((0, const),)), const, wit, mode)


# ---------------------------------------------------------------------------
# Witt coordinate normalization

def normalized_witt_rhs(cover):
    """Coordinates rewritten so every one is free of p-th power exponents.

    Replacing f_0 by its reduction changes later coordinates through Witt
    carries; for n = 2 the correction is exact via the carry polynomial.
    Longer vectors are accepted only when coordinates 0..n-2 already
    carry no positive exponent divisible by p.
    """
    if cover.kind != "witt":
        raise BadParameters("normalization applies to Witt covers")
    n = cover.op
    ctx = cover.ctx
    if n == 1:
        red, const, _ = reduce_pth_powers(cover.rhs[0])
        return [red + FqPoly(ctx, ((0, const),))]
    if n == 2:
        f0, f1 = cover.rhs
        red0, c0, wit = reduce_pth_powers(f0)
        if not wit.is_zero():
            zero = FqPoly.zero(ctx)
            wp_pair = witt2_sub((wit.pth_power(), zero), (wit, zero))
            f0, f1 = witt2_sub((f0, f1), wp_pair)
            assert f0 == red0 + FqPoly(ctx, ((0, c0),))
        red1, c1, _ = reduce_pth_powers(f1)
        return [f0, red1 + FqPoly(ctx, ((0, c1),))]
    out = []
    for i, f in enumerate(cover.rhs[:-1]):
        if any(exp >= ctx.p and exp % ctx.p == 0 for exp, _ in f.terms):
            raise BadParameters(
                "coordinate %d carries a p-th power exponent; reduce the "
                "leading coordinates before asking for invariants" % i)
        out.append(f)
    red, const, _ = reduce_pth_powers(cover.rhs[-1])
    out.append(red + FqPoly(ctx, ((0, const),)))
    return out


def _poly_free_part(f):
    """Terms of f with exponent >= 1 (the part that can ramify)."""
    return FqPoly(f.ctx, tuple((e, c) for e, c in f.terms if e >= 1))


# ---------------------------------------------------------------------------
# character decompositions and conductor ladders

def _solve_fq(rows, rhs, ctx):
    """Gaussian elimination over F_q; returns a solution list or None."""
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    n_eq = len(m)
    n_un = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n_un):
        pr = None
        for i in range(r, n_eq):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c].inverse()
        m[r] = [v * inv for v in m[r]]
        for i in range(n_eq):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    for i in range(r, n_eq):
        if m[i][n_un]:
            return None
    sol = [ctx.zero] * n_un
    for i, c in enumerate(pivots):
        sol[c] = m[i][n_un]
    return sol


def op_on_poly(L, f):
    """Apply the additive operator L to a polynomial: sum l_i f^(p^i)."""
    acc = FqPoly.zero(f.ctx)
    for i, c in enumerate(L.coeffs):
        if c:
            acc = acc + f.pth_power(i) * c
    return acc


def split_kernel(cover):
    """Kernel of the additive operator inside its own field, validated full."""
    A = cover.op
    ctx = cover.ctx
    deg = splitting_degree(A, cap=ctx.e)
    if deg is None or ctx.e % deg:
        raise DecompositionFailure(
            "operator does not split over F_%d^%d" % (ctx.p, ctx.e))
    kern = linearize_kernel(A, ctx.e)
    if kern.dim != A.f_degree:
        raise DecompositionFailure("kernel dimension mismatch")
    return kern


def additive_characters(cover):
    """Rank-one pieces of an additive cover.

    Yields (dual_vector, subcover) per projective class of the dual of
    the kernel: dual_vector is a tuple over F_p in the kernel basis, and
    subcover is the degree-p cover y^p - y = l(f) with l . A = (F-1) . u
    for the subspace polynomial u of the class's hyperplane.
    """
    if cover.kind != "additive":
        raise BadParameters("character decomposition is for additive covers")
    ctx = cover.ctx
    p = ctx.p
    A = cover.op
    kern = split_kernel(cover)
    d = kern.dim
    f = cover.rhs[0]
    out = []
    for lam in _projective_duals(p, d):
        pivot = next(i for i, v in enumerate(lam) if v)
        hyper = []
        for j, v in enumerate(lam):
            if j == pivot:
                continue
            hyper.append(kern.basis[j] - kern.basis[pivot] * v)
        u = AdditiveOp(ctx, [1])
        for w in hyper:
            beta = u(w)
            assert beta, "hyperplane basis must stay outside ker u"
            u = AdditiveOp(ctx, [-(beta ** (p - 1)), 1]).compose(u)
        delta = u(kern.basis[pivot])
        assert delta, "pivot element must map onto F_p"
        u = u * delta.inverse()
        target = wp_operator(ctx).compose(u)
        t = max(target.f_degree - A.f_degree, 0)
        rows = [[A.coeff(k - i).frobenius(i) if 0 <= k - i else ctx.zero
                 for i in range(t + 1)]
                for k in range(target.f_degree + 1)]
        rhs_vec = [target.coeff(k) for k in range(target.f_degree + 1)]
        sol = _solve_fq(rows, rhs_vec, ctx)
        if sol is None:
            raise DecompositionFailure(
                "no twisted factor for dual class %r" % (lam,))
        ell = AdditiveOp(ctx, sol)
        sub = CoverSpec(ctx, ("additive", wp_operator(ctx)),
                        [op_on_poly(ell, f)],
                        label="%s chi%r" % (cover.label, list(lam)))
        out.append((lam, sub))
    return out


def _projective_duals(p, d):
    """Dual vectors of F_p^d up to scaling: first nonzero entry is 1."""
    def rec(prefix, started):
        if len(prefix) == d:
            if started:
                yield tuple(prefix)
            return
        if not started:
            yield from rec(prefix + [0], False)
            yield from rec(prefix + [1], True)
        else:
            for v in range(p):
                yield from rec(prefix + [v], True)
    return rec([], False)


def character_levels(cover):
    """The conductor ladder [(conductor, marginal degree), ...].

    Witt covers are cyclic: level j is the length-j truncation, with
    conductor 1 + max_{i<j} p^(j-1-i) M_i over the reduced coordinate
    degrees M_i.  Additive covers accumulate dual classes by rank, one
    degree-p level per independent ramified character class.
    """
    ctx = cover.ctx
    p = ctx.p
    if cover.kind == "witt":
        coords = normalized_witt_rhs(cover)
        frees = [_poly_free_part(f) for f in coords]
        while frees and frees[0].is_zero():
            # a leading constant coordinate absorbs into lower Witt length
            frees.pop(0)
        if not frees:
            raise ZeroCover("all coordinates reduce to constants")
        levels = []
        for j in range(1, len(frees) + 1):
            m = 1 + max(p ** (j - 1 - i) * g.degree()
                        for i, g in enumerate(frees[:j]) if not g.is_zero())
            levels.append((m, p))
        return levels
    chars = []
    for lam, sub in additive_characters(cover):
        red, _, _ = reduce_pth_powers(sub.rhs[0])
        free = _poly_free_part(red)
        if free.is_zero():
            continue
        chars.append((1 + free.degree(), lam))
    if not chars:
        raise ZeroCover("every character of the cover is unramified")
    chars.sort(key=lambda t: t[0])
    levels = []
    rows = []
    rank = 0
    for cond, lam in chars:
        rows.append(lam)
        _, pivots = rref_mod(np.array(rows, dtype=np.int64), p)
        if len(pivots) > rank:
            rank = len(pivots)
            levels.append((cond, p))
        else:
            rows.pop()
    return levels


def conductor(cover):
    """Largest character conductor of the cover."""
    return max(m for m, _ in character_levels(cover))


def cover_degree(cover):
    """Geometric degree: p^levels for Witt, p^rank for additive."""
    return cover.ctx.p ** len(character_levels(cover))


def cover_genus(cover, with_audit=False):
    return tower_genus(character_levels(cover), with_audit=with_audit)


def upper_filtration(cover):
    return ladder_filtration(character_levels(cover))


def splits_at(cover, y):
    """Whether the place x = y splits completely in the cover.

    For Witt covers this is vanishing of the Witt trace of the evaluated
    right hand side; for additive covers, solvability of A(w) = f(y) over
    the residue field of y.
    """
    ctx = y.ctx
    if cover.kind == "witt":
        ring = witt_ring(ctx, cover.op)
        vec = ring.vec([f.evaluate(y) for f in cover.rhs])
        return witt_trace(vec).is_zero()
    val = cover.rhs[0].evaluate(y)
    return image_membership(cover.op, val, ctx.e) is not None


def base_change(cover, S, label=None):
    """Pull the cover back along x -> S(x) for a separable additive S."""
    if not isinstance(S, AdditiveOp) or S.ctx is not cover.ctx:
        raise ContextMismatch("base change operator over a different context")
    if not S.separable:
        raise InseparableOperator("base change needs a separable operator")
    s_poly = S.as_poly()
    rhs = [f.compose(s_poly) for f in cover.rhs]
    return CoverSpec(cover.ctx, (cover.kind, cover.op), rhs,
                     label if label is not None else cover.label + " | pullback")


# ---------------------------------------------------------------------------
# families and towers

class FamilyItem:
    """A cover together with how much new degree it adds to its tower.

    marginal None means the cover enters with its full character ladder;
    an integer means the tower already contains everything below its top
    conductor, so it contributes one level (conductor, marginal).
    """

    __slots__ = ("cover", "label", "marginal")

    def __init__(self, cover, label, marginal=None):
        self.cover = cover
        self.label = label
        self.marginal = marginal

    def levels(self):
        if self.marginal is None:
            return character_levels(self.cover)
        return [(conductor(self.cover), self.marginal)]

    def __repr__(self):
        return "FamilyItem(%r, marginal=%r)" % (self.label, self.marginal)


def tower_compose(items):
    """Genus, degree and filtration of a compositum of covers.

    Accepts CoverSpec values (full ladder) and FamilyItem values (which
    may carry an explicit marginal degree when they overlap the rest of
    the tower below their top conductor).
    """
    levels = []
    for it in items:
        if isinstance(it, CoverSpec):
            levels.extend(character_levels(it))
        elif isinstance(it, FamilyItem):
            levels.extend(it.levels())
        else:
            raise BadParameters("tower items must be covers or family items")
    g, audit = tower_genus(levels, with_audit=True)
    return {"genus": g, "degree": audit["degree"],
            "levels": audit["levels"],
            "filtration": ladder_filtration(levels)}


def splits_everywhere(cover):
    """Whether every rational place of the line splits in the cover.

    Sweeps the whole field when it is small enough; otherwise samples 64
    deterministic points.  Returns (all_split, split_count, checked).
    """
    ctx = cover.ctx
    q = ctx.p ** ctx.e
    full = q <= 2048
    if full:
        sample = list(ctx.elements())
    else:
        state = 0x5eed
        sample = []
        for _ in range(64):
            state = (state * 6364136223846793005
                     + 1442695040888963407) % 2 ** 63
            sample.append(ctx.elem([(state >> (7 * t)) % ctx.p
                                    for t in range(ctx.e)]))
    if cover.kind == "additive" and full:
        image = {cover.op(z).coeffs for z in sample}
        hits = sum(cover.rhs[0].evaluate(y).coeffs in image for y in sample)
    else:
        hits = sum(splits_at(cover, y) for y in sample)
    return hits == len(sample), hits, len(sample)


def _gamma_kernel(ctx, s):
    """ker(F^s + 1) inside F_{p^2s} (or F_{p^e}), sorted, zero removed."""
    A = AdditiveOp(ctx, [1] + [0] * (s - 1) + [1])
    kern = linearize_kernel(A, ctx.e)
    elems = sorted((x for x in kern.elements() if x),
                   key=lambda x: x.coeffs)
    return kern, elems


def _monomials(ctx, pairs):
    return FqPoly(ctx, tuple((e, ctx.elem(c)) for e, c in pairs))


def family_build(ctx, kind, witt_len=2):
    """Built-in families of covers over F_{p^e}, returned as a dict with
    items, the second-jump conductor m2, and runtime splitting checks."""
    p, e = ctx.p, ctx.e
    items = []
    notes = {}
    if kind == "jump2-even":
        if e % 2 or e < 2:
            raise BadParameters("kind jump2-even needs even degree e = 2s")
        s = e // 2
        r = p ** s
        q = p ** e
        _, gamma = _gamma_kernel(ctx, s)
        a = gamma[0]
        m2 = 1 + p * (1 + r)
        w0 = CoverSpec(ctx, ("witt", 1), [_monomials(ctx, [(1 + r, a)])],
                       label="w0")
        items.append(FamilyItem(w0, "w0"))
        frob_op = AdditiveOp(ctx, [-1] + [0] * (e - 1) + [1])
        for i in range(1, p):
            f = _monomials(ctx, [(i * p ** (s - 1) + q, 1),
                                 (i * p ** (s - 1) + 1, -1)])
            cov = CoverSpec(ctx, ("additive", frob_op), [f],
                            label="q-row %d" % i)
            items.append(FamilyItem(cov, "q-row %d" % i))
        pair = CoverSpec(ctx, ("witt", 2),
                         [_monomials(ctx, [(1 + r, a)]), FqPoly.zero(ctx)],
                         label="pair")
        items.append(FamilyItem(pair, "pair", marginal=p))
        notes["m2"] = m2
        notes["gamma_dim"] = s
    elif kind == "jump2-odd":
        if e % 2 == 0:
            raise BadParameters("kind jump2-odd needs odd degree e = 2s - 1")
        s = (e + 1) // 2
        q = p ** e
        m2 = p ** (s + 1) + p + 1
        frob_op = AdditiveOp(ctx, [-1] + [0] * (e - 1) + [1])
        for i in range(1, p):
            f = _monomials(ctx, [(i * p ** (s - 1) + q, 1),
                                 (i * p ** (s - 1) + 1, -1)])
            items.append(FamilyItem(
                CoverSpec(ctx, ("additive", frob_op), [f],
                          label="f-row %d" % i), "f-row %d" % i))
        for j in range(1, p):
            g = _monomials(ctx, [(j * p ** (s - 1) + p * q, 1),
                                 (j * p ** (s - 1) + p, -1)])
            items.append(FamilyItem(
                CoverSpec(ctx, ("additive", frob_op), [g],
                          label="g-row %d" % j), "g-row %d" % j))
        zero = FqPoly.zero(ctx)
        coords = witt2_sub((_monomials(ctx, [(1 + p ** s, 1)]), zero),
                           (_monomials(ctx, [(1 + p ** (s - 1), 1)]), zero))
        pair = CoverSpec(ctx, ("witt", 2), list(coords), label="pair")
        items.append(FamilyItem(pair, "pair", marginal=p))
        notes["m2"] = m2
    elif kind == "table-full":
        if e % 2 or e < 2:
            raise BadParameters("kind table-full needs even degree e = 2s")
        s = e // 2
        r = p ** s
        q = p ** e
        kern_gamma, _ = _gamma_kernel(ctx, s)
        m2 = 1 + p * (1 + r)
        r_op = AdditiveOp(ctx, [1] + [0] * (s - 1) + [1])
        frob_op = AdditiveOp(ctx, [-1] + [0] * (e - 1) + [1])
        for u in range(1, p):
            f = _monomials(ctx, [(u * (1 + r), 1)])
            items.append(FamilyItem(
                CoverSpec(ctx, ("additive", r_op), [f],
                          label="r-row %d" % u), "r-row %d" % u))
        for u in range(2, p + 1):
            for v in range(1, u):
                f = _monomials(ctx, [(u * r + v * q, 1), (u * r + v, -1)])
                items.append(FamilyItem(
                    CoverSpec(ctx, ("additive", frob_op), [f],
                              label="q-row %d,%d" % (u, v)),
                    "q-row %d,%d" % (u, v)))
        # independent second-level pairs, one per basis vector of Gamma
        for t, a_t in enumerate(kern_gamma.basis):
            pair = CoverSpec(ctx, ("witt", 2),
                             [_monomials(ctx, [(1 + r, a_t)]),
                              FqPoly.zero(ctx)],
                             label="pair %d" % t)
            items.append(FamilyItem(pair, "pair %d" % t, marginal=p))
        notes["m2"] = m2
        notes["pair_count"] = s
    elif kind == "exponent-pn":
        if e % 2:
            raise BadParameters("kind exponent-pn needs even degree e = 2s")
        s = e // 2
        r = p ** s
        n = witt_len
        _, gamma = _gamma_kernel(ctx, s)
        a = gamma[0]
        rhs = [_monomials(ctx, [(1 + r, a)])] + \
              [FqPoly.zero(ctx) for _ in range(n - 1)]
        cov = CoverSpec(ctx, ("witt", n), rhs, label="exponent-p%d" % n)
        items.append(FamilyItem(cov, cov.label))
        notes["conductor"] = 1 + p ** (n - 1) * (1 + r)
    else:
        raise BadParameters("unknown family kind %r" % kind)

    # how the family sits over the rational places: split everywhere is
    # what embeds it in the small-conductor ray class tower, and it can
    # genuinely fail (p = 2), so it is measured rather than assumed
    split_all = all(splits_everywhere(it.cover)[0] for it in items)
    notes["splits_at_rational_places"] = split_all
    return {"kind": kind, "items": items, "notes": notes}

"""Command line surface.

Every invocation is parsed and validated into a Plan before anything is
computed, so a bad flag can never leave a half-written artifact.  Exit
codes: 0 success, 1 computational failure (the library error is printed
on stderr), 2 usage.  Identical invocations produce byte-identical
output: JSON is emitted with sorted keys, CSV with LF endings, and all
parameter choices (moduli, sample points) are deterministic.

The environment variable WR_RESOURCE_CAP, when set, bounds the ray
class computations by m*e; requests beyond it fail with a clear message
instead of grinding.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import _expected
from .additive import AdditiveOp, linearize_kernel, palindromic_adjoint
from .bigaction import ActionProfile, ratio_check
from .cover import (
    CoverSpec,
    base_change,
    character_levels,
    conductor,
    cover_degree,
    cover_genus,
    family_build,
    splits_everywhere,
    tower_compose,
    upper_filtration,
)
from .errors import UsageError, WildramError
from .field import FqPoly, field_from_json, make_field
from .rayclass import (
    digit_tensor,
    find_second_jump,
    format_table_csv,
    ray_class_invariants,
    ray_class_table,
)

FAMILY_KINDS = ("jump2-even", "jump2-odd", "table-full", "exponent-pn")


class Plan:
    """A fully validated invocation: command, parameters, output target."""

    __slots__ = ("command", "params", "out", "fmt")

    def __init__(self, command, params, out=None, fmt="json"):
        self.command = command
        self.params = params
        self.out = out
        self.fmt = fmt


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _field_args(sub):
    sub.add_argument("--p", type=int, required=True,
                     help="field characteristic (prime)")
    sub.add_argument("--e", type=int, required=True,
                     help="extension degree over the prime field")


def _out_args(sub, formats=("json",)):
    sub.add_argument("--out", help="write the artifact here (default stdout)")
    if len(formats) > 1:
        sub.add_argument("--format", choices=formats, default=formats[0],
                         help="output format")


def _build_parser():
    top = _Parser(prog="wr", description=__doc__.splitlines()[0])
    subs = top.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("field", parents=[], help="print a field context")
    _field_args(sp)
    _out_args(sp, ("json", "text"))

    sp = subs.add_parser("cover-analyze",
                         help="conductor, genus and splitting of one cover")
    sp.add_argument("cover", help="cover description (JSON file)")
    _out_args(sp)

    sp = subs.add_parser("adjoint",
                         help="palindromic adjoint and its kernel dimension")
    sp.add_argument("poly", help="field + polynomial (JSON file)")
    _out_args(sp)

    sp = subs.add_parser("rayclass-orders",
                         help="ray class group table over a conductor range")
    _field_args(sp)
    sp.add_argument("--m-max", type=int,
                    help="sweep conductors 2..m-max")
    sp.add_argument("--ms", help="comma-separated explicit conductor list")
    sp.add_argument("--order-only", action="store_true",
                    help="skip invariant factors, orders only")
    sp.add_argument("--jobs", type=int, default=1,
                    help="worker threads for the per-conductor runs")
    _out_args(sp, ("csv", "json"))

    sp = subs.add_parser("rayclass-m2",
                         help="least conductor with a nonelementary group")
    _field_args(sp)
    sp.add_argument("--cap", type=int,
                    help="give up beyond this conductor")
    _out_args(sp, ("text", "json"))

    sp = subs.add_parser("family-build",
                         help="construct a built-in cover family")
    _field_args(sp)
    sp.add_argument("--kind", required=True, choices=FAMILY_KINDS)
    sp.add_argument("--witt-len", type=int, default=2,
                    help="vector length for kind exponent-pn")
    _out_args(sp)

    sp = subs.add_parser("basechange",
                         help="pull a cover back along an additive map")
    sp.add_argument("cover", help="cover description (JSON file)")
    sp.add_argument("--sub", required=True,
                    help="additive map coefficients as a JSON array")
    sp.add_argument("--label", default=None)
    _out_args(sp)

    sp = subs.add_parser("bigaction-check",
                         help="ratio arithmetic and sieve for one profile")
    sp.add_argument("profile", help="action profile (JSON file)")
    sp.add_argument("--strict", action="store_true",
                    help="fail on rules missing their declarations")
    _out_args(sp)

    sp = subs.add_parser("reproduce-table",
                         help="rebuild the packaged (5,4) table and ratios")
    _field_args(sp)
    sp.add_argument("--jobs", type=int, default=1,
                    help="worker threads for the per-conductor runs")
    _out_args(sp, ("text",))
    return top


def parse_plan(argv):
    """Validate argv into a Plan; raises UsageError, never computes."""
    args = _build_parser().parse_args(argv)
    params = vars(args)
    command = params.pop("command")
    out = params.pop("out", None)
    fmt = params.pop("format", "json")

    if "p" in params:
        if not _is_prime(params["p"]):
            raise UsageError("--p must be prime, got %d" % params["p"])
        if params["e"] < 1:
            raise UsageError("--e must be positive, got %d" % params["e"])
    if command == "rayclass-orders":
        if params.get("ms"):
            try:
                ms = sorted({int(tok) for tok in params["ms"].split(",")})
            except ValueError:
                raise UsageError("--ms must be a comma-separated integer list")
            if any(m < 1 for m in ms):
                raise UsageError("--ms entries must be positive")
            params["ms"] = ms
        elif params.get("m_max"):
            if params["m_max"] < 2:
                raise UsageError("--m-max must be at least 2")
            params["ms"] = list(range(2, params["m_max"] + 1))
        else:
            raise UsageError("one of --m-max or --ms is required")
    if command in ("rayclass-orders", "reproduce-table"):
        if params.get("jobs", 1) < 1:
            raise UsageError("--jobs must be at least 1")
    if command == "reproduce-table":
        if (params["p"], params["e"]) != (_expected.P, _expected.E):
            raise UsageError(
                "embedded expected values exist for --p %d --e %d only"
                % (_expected.P, _expected.E))
    if command == "family-build" and params.get("witt_len", 2) < 1:
        raise UsageError("--witt-len must be at least 1")
    if command == "rayclass-m2" and params.get("cap") is not None \
            and params["cap"] < 2:
        raise UsageError("--cap must be at least 2")
    return Plan(command, params, out=out, fmt=fmt)


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _emit_json(payload, out):
    _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", out)


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _resource_cap():
    raw = os.environ.get("WR_RESOURCE_CAP")
    if raw is None:
        return None
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError("WR_RESOURCE_CAP must be an integer, got %r" % raw)
    if cap < 1:
        raise UsageError("WR_RESOURCE_CAP must be positive")
    return cap


def _sig6(x):
    return "%.6g" % float(x)


def _rows_for(ctx, ms, jobs, resource_cap, order_only=False):
    # one widest tensor up front so the workers only read shared state
    digit_tensor(ctx, max(ms))
    if jobs == 1:
        return ray_class_table(ctx, ms, resource_cap=resource_cap) \
            if not order_only else \
            [ray_class_invariants(ctx, m, resource_cap=resource_cap,
                                  order_only=True) for m in ms]

    def run(m):
        return ray_class_invariants(ctx, m, resource_cap=resource_cap,
                                    order_only=order_only)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run, ms))


def _splits_text(cover):
    all_split, hits, checked = splits_everywhere(cover)
    q = cover.ctx.p ** cover.ctx.e
    if checked == q:
        return "all q places" if all_split else \
            "%d of %d places" % (hits, checked)
    return "%d of %d sampled places" % (hits, checked)


def _cover_payload(cover):
    levels = character_levels(cover)
    filt = upper_filtration(cover)
    return {
        "label": cover.label,
        "conductor": conductor(cover),
        "degree": cover_degree(cover),
        "genus": cover_genus(cover),
        "levels": [[m, d] for m, d in levels],
        "upper_breaks": [[int(b.numerator), int(b.denominator), o]
                         for b, o in filt.segments],
        "splits": _splits_text(cover),
    }


def _exec_field(plan):
    ctx = make_field(plan.params["p"], plan.params["e"])
    if plan.fmt == "text":
        def term(i, c):
            if i == 0:
                return str(c)
            pow_ = "X" if i == 1 else "X^%d" % i
            return pow_ if c == 1 else "%d%s" % (c, pow_)
        mod = " + ".join(term(i, c)
                         for i, c in sorted(enumerate(ctx.modulus),
                                            reverse=True) if c)
        _emit("F_%d^%d with modulus %s\n" % (ctx.p, ctx.e, mod), plan.out)
    else:
        _emit_json(ctx.to_json(), plan.out)
    return 0


def _exec_cover_analyze(plan):
    cover = CoverSpec.from_json(_load_json(plan.params["cover"]))
    _emit_json(_cover_payload(cover), plan.out)
    return 0


def _exec_adjoint(plan):
    obj = _load_json(plan.params["poly"])
    ctx = field_from_json(obj["field"])
    f = FqPoly.from_json(ctx, obj["poly"])
    adj = palindromic_adjoint(f)
    kern = linearize_kernel(adj, ctx.e)
    # separable with unit constant coefficient, so the geometric kernel
    # has full F-degree; only part of it is rational over the base
    _emit_json({"adjoint": adj.to_json(), "kernel_dim": adj.f_degree,
                "kernel_dim_rational": kern.dim}, plan.out)
    return 0


def _exec_rayclass_orders(plan):
    ctx = make_field(plan.params["p"], plan.params["e"])
    rows = _rows_for(ctx, plan.params["ms"], plan.params["jobs"],
                     _resource_cap(), order_only=plan.params["order_only"])
    if plan.fmt == "csv":
        _emit(format_table_csv(rows), plan.out)
    else:
        _emit_json(rows, plan.out)
    return 0


def _exec_rayclass_m2(plan):
    ctx = make_field(plan.params["p"], plan.params["e"])
    cap = plan.params.get("cap")
    res = _resource_cap()
    if cap is None and res is not None:
        cap = max(2, res // ctx.e)
    m2 = find_second_jump(ctx, cap=cap)
    if plan.fmt == "json":
        _emit_json({"p": ctx.p, "e": ctx.e, "m2": m2}, plan.out)
    else:
        _emit("%d\n" % m2, plan.out)
    return 0


def _exec_family_build(plan):
    ctx = make_field(plan.params["p"], plan.params["e"])
    fam = family_build(ctx, plan.params["kind"],
                       witt_len=plan.params["witt_len"])
    tower = tower_compose(fam["items"])
    payload = {
        "kind": fam["kind"],
        "notes": fam["notes"],
        "tower": {
            "genus": tower["genus"],
            "degree": tower["degree"],
            "levels": [[m, d, c] for m, d, c in tower["levels"]],
        },
        "items": [{"label": it.label, "marginal": it.marginal,
                   "cover": it.cover.to_json()} for it in fam["items"]],
    }
    _emit_json(payload, plan.out)
    return 0


def _exec_basechange(plan):
    cover = CoverSpec.from_json(_load_json(plan.params["cover"]))
    try:
        coeffs = json.loads(plan.params["sub"])
    except json.JSONDecodeError:
        raise UsageError("--sub must be a JSON array of coefficients")
    if not isinstance(coeffs, list) or not coeffs:
        raise UsageError("--sub must be a nonempty JSON array")
    S = AdditiveOp(cover.ctx, coeffs)
    pulled = base_change(cover, S, label=plan.params["label"])
    _emit_json({
        "sub_degree": cover.ctx.p ** S.f_degree,
        "before": _cover_payload(cover),
        "after": _cover_payload(pulled),
        "cover": pulled.to_json(),
    }, plan.out)
    return 0


def _exec_bigaction_check(plan):
    profile = ActionProfile.from_json(_load_json(plan.params["profile"]))
    report = ratio_check(profile, strict=plan.params["strict"])
    _emit_json(report.to_json(), plan.out)
    return 0


def _exec_reproduce_table(plan):
    ctx = make_field(plan.params["p"], plan.params["e"])
    cap = _resource_cap()
    lines = []
    checks = []

    m2 = find_second_jump(ctx, cap=None if cap is None else max(2, cap // ctx.e))
    checks.append(("m2", m2 == _expected.M2))

    ms = [row[0] if row[0] > 0 else row[1] for row in _expected.TABLE_ROWS]
    rows = _rows_for(ctx, ms, plan.params["jobs"], cap)
    lines.append(format_table_csv(rows).rstrip("\n"))

    got = [(row["m"], row["order_exp"]) for row in rows]
    want = [(rm, exp) for rm, (_, _, exp) in zip(ms, _expected.TABLE_ROWS)]
    checks.append(("table", got == want))
    at_m2 = next(row for row in rows if row["m"] == _expected.M2)
    checks.append(("invariants",
                   tuple(at_m2["invariants"]) == _expected.INVARIANTS_AT_M2))

    full = tower_compose(family_build(ctx, "table-full")["items"])
    sub = tower_compose(family_build(ctx, "jump2-even")["items"])
    ladder = tuple((m, d) for m, d, _ in full["levels"])
    want_ladder = tuple((m, ctx.p ** k) for m, k in _expected.LADDER)
    checks.append(("ladder", ladder == want_ladder))
    checks.append(("genus_full", full["genus"] == _expected.GENUS_FULL))
    checks.append(("genus_subfamily",
                   sub["genus"] == _expected.GENUS_SUBFAMILY))
    # the tower carries p^e translations on top of the covering part
    q = ctx.p ** ctx.e
    r1 = Fraction(q * full["degree"], full["genus"])
    r2 = Fraction(q * sub["degree"], sub["genus"])
    checks.append(("ratio_full", _sig6(r1) == _expected.RATIO_FULL))
    checks.append(("ratio_subfamily", _sig6(r2) == _expected.RATIO_SUBFAMILY))

    lines.append("m2 = %d" % m2)
    lines.append("ratio_full_tower = %d/%d ~ %s"
                 % (r1.numerator, r1.denominator, _sig6(r1)))
    lines.append("ratio_subfamily = %d/%d ~ %s"
                 % (r2.numerator, r2.denominator, _sig6(r2)))
    ok = all(flag for _, flag in checks)
    detail = " ".join("%s=%s" % (name, "ok" if flag else "MISMATCH")
                      for name, flag in checks)
    lines.append(("PASS " if ok else "FAIL ") + detail)
    _emit("\n".join(lines) + "\n", plan.out)
    return 0 if ok else 1


_EXECUTORS = {
    "field": _exec_field,
    "cover-analyze": _exec_cover_analyze,
    "adjoint": _exec_adjoint,
    "rayclass-orders": _exec_rayclass_orders,
    "rayclass-m2": _exec_rayclass_m2,
    "family-build": _exec_family_build,
    "basechange": _exec_basechange,
    "bigaction-check": _exec_bigaction_check,
    "reproduce-table": _exec_reproduce_table,
}


def execute_plan(plan):
    """Run a validated plan; returns the process exit code."""
    return _EXECUTORS[plan.command](plan)


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    try:
        plan = parse_plan(argv)
    except UsageError as err:
        print("usage error: %s" % err, file=sys.stderr)
        return 2
    try:
        return execute_plan(plan)
    except UsageError as err:
        print("usage error: %s" % err, file=sys.stderr)
        return 2
    except WildramError as err:
        print("error: %s" % err, file=sys.stderr)
        return 1
    except OSError as err:
        print("error: %s" % err, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line surface and file formats.

Subcommands cover the whole pipeline: class-group inspection, building a
lift from a newform file, applying Hecke operators to table files,
membership checking, descent back to q-expansions, Euler-factor printing
and verification, and congruence-depth reports.  Every command has a
deterministic text mode and a ``--json`` line-record mode, and exits 0
exactly when all checks pass.

Newform files are line oriented (see ``hermlift.elliptic.parse_newform``).
Table files store one classical component in canonical point order::

    field 23
    k 8
    ring 1 0 1
    chiorder 3
    chi 0 1 2
    zetaexp 0
    bound_det 92
    bound_diag 2
    normalization unit i/sqrt(-D_K) dropped
    point <t1> <t3> <wa> <wb> <numerator coords> / <denominator>
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .congr import build_eigen_system, maass_ideal_report
from .elliptic import NewformData, parse_newform
from .hecke import HeckeOpId, act_split_on_lift, inert_action
from .hermitian import HermPoint, enumerate_points
from .maass import CoeffTable, MaassTuple, build_lift, check_maass, descend
from .lfun import bc_factor, std_factor_lift, verify_product134
from .quadfield import ClassChar, FieldParams, QuadInt, char_values, chi_K, class_group
from .ring import VAL_CAP, HeckeRing, primes_above

NORMALIZATION_NOTE = "unit i/sqrt(-D_K) dropped"


class CommandError(Exception):
    pass


# ---------------------------------------------------------------------------
# table file format


def write_table(path: str, t: MaassTuple, bound_det: int, bound_diag: int) -> CoeffTable:
    table = t.identity_table(bound_det, bound_diag)
    lines = [
        f"field {t.D}",
        f"k {t.k}",
        "ring " + " ".join(str(c) for c in t.ring.modulus),
        f"chiorder {t.chi.order}",
        "chi " + " ".join(str(e) for e in t.chi.exponents),
        f"zetaexp {t.zeta_exp}",
        f"bound_det {bound_det}",
        f"bound_diag {bound_diag}",
        f"normalization {NORMALIZATION_NOTE}",
    ]
    for h in sorted(table.values, key=HermPoint.sort_key):
        v = table.values[h]
        coords = " ".join(str(c) for c in v.num)
        lines.append(f"point {h.t1} {h.t3} {h.w.a} {h.w.b} {coords} / {v.den}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return table


def read_table(path: str) -> tuple[CoeffTable, ClassChar, int]:
    D = k = bound_det = bound_diag = None
    ring = None
    chiorder, chi_exps, zetaexp = 1, (0,), 0
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            key = parts[0]
            try:
                if key == "field":
                    D = int(parts[1])
                elif key == "k":
                    k = int(parts[1])
                elif key == "ring":
                    ring = HeckeRing([int(c) for c in parts[1:]])
                elif key == "chiorder":
                    chiorder = int(parts[1])
                elif key == "chi":
                    chi_exps = tuple(int(e) for e in parts[1:])
                elif key == "zetaexp":
                    zetaexp = int(parts[1])
                elif key == "bound_det":
                    bound_det = int(parts[1])
                elif key == "bound_diag":
                    bound_diag = int(parts[1])
                elif key == "normalization":
                    pass
                elif key == "point":
                    t1, t3, wa, wb = (int(x) for x in parts[1:5])
                    slash = parts.index("/")
                    num = [int(c) for c in parts[5:slash]]
                    den = int(parts[slash + 1])
                    h = HermPoint(t1, t3, QuadInt(wa, wb, D))
                    values[h] = (num, den)
                else:
                    raise ValueError(f"unknown key {key!r}")
            except (IndexError, ValueError) as exc:
                raise CommandError(f"{path}:{lineno}: malformed table line ({exc})") from exc
    if None in (D, k, bound_det, bound_diag) or ring is None:
        raise CommandError(f"{path}: missing table header fields")
    params = FieldParams(D, k)
    table = CoeffTable(
        params,
        ring,
        bound_det,
        bound_diag,
        {h: ring.element(num, den) for h, (num, den) in values.items()},
    )
    return table, ClassChar(chiorder, chi_exps), zetaexp


def table_as_tuple(table: CoeffTable, chi: ClassChar, zetaexp: int) -> MaassTuple:
    ok, res = check_maass(table)
    if not ok:
        raise CommandError(f"table is not in the Maass space (witness point {res})")
    return MaassTuple(
        params=table.params,
        chi=chi,
        ring=table.ring,
        alpha=res,
        alpha_max=table.bound_det,
        zeta_exp=zetaexp,
        source_label="table",
    )


# ---------------------------------------------------------------------------
# output helpers


class Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json

    def emit(self, record: dict, text: str):
        if self.as_json:
            print(json.dumps(record, sort_keys=True))
        else:
            print(text)


def _load_newform(path: str) -> NewformData:
    try:
        with open(path) as fh:
            return parse_newform(fh.read())
    except (OSError, ValueError) as exc:
        raise CommandError(f"{path}: {exc}") from exc


def _resolve_chi(D: int, index: int) -> ClassChar:
    chars = char_values(class_group(D))
    if not 0 <= index < len(chars):
        raise CommandError(f"chi index {index} out of range (h = {len(chars)})")
    return chars[index]


# ---------------------------------------------------------------------------
# subcommands


def cmd_classgroup(args, out: Out) -> int:
    cg = class_group(args.D)
    chars = char_values(cg)
    record = {
        "D": args.D,
        "h": cg.order,
        "forms": [[f.A, f.B, f.C] for f in cg.forms],
        "identity": cg.identity_index,
        "composition": cg.composition,
        "characters": [{"order": c.order, "exponents": list(c.exponents)} for c in chars],
    }
    text = [f"D = {args.D}: h = {cg.order}"]
    text.append("forms: " + ", ".join(str(f) for f in cg.forms))
    text.append("composition table:")
    for row in cg.composition:
        text.append("  " + " ".join(str(x) for x in row))
    for i, c in enumerate(chars):
        text.append(f"chi_{i}: order {c.order}, exponents {list(c.exponents)}")
    out.emit(record, "\n".join(text))
    return 0


def cmd_lift(args, out: Out) -> int:
    f = _load_newform(args.newform)
    chi = _resolve_chi(f.D, args.chi)
    t = build_lift(f, chi, args.bound_det)
    warn = None
    if t.is_zero():
        warn = "self-conjugate input: the lift vanishes identically"
    write_table(args.output, t, args.bound_det, args.bound_diag)
    support = sorted(t.alpha)
    record = {
        "output": args.output,
        "alpha_support": len(support),
        "alpha_max": t.alpha_max,
        "first_indices": support[:10],
        "warning": warn,
    }
    text = (
        f"wrote {args.output}: alpha supported on {len(support)} indices up to {t.alpha_max}"
        + (f"\nwarning: {warn}" if warn else "")
    )
    out.emit(record, text)
    return 0


def cmd_hecke(args, out: Out) -> int:
    table, chi, zetaexp = read_table(args.table)
    ops = [HeckeOpId.parse(name, table.D) for name in args.op]
    t = table_as_tuple(table, chi, zetaexp)
    reach = 1
    for op in ops:
        if op.kind in ("SplitT1", "SplitT2"):
            t = act_split_on_lift(t, op)
        elif op.kind in ("InertT0", "InertT", "InertUp"):
            # act through the oracle, materialise on the shrunken range,
            # then re-extract the generating function
            step = {"InertT0": 2, "InertT": 2, "InertUp": 4}[op.kind]
            new_max = t.alpha_max // op.p ** step
            src = inert_action(t, op.kind, op.p)
            values = {}
            for h in enumerate_points(t.D, new_max, table.bound_diag):
                v = src.getter(h.t1, h.t3, h.w.a, h.w.b)
                if not v.is_zero():
                    values[h] = v
            acted = CoeffTable(t.params, t.ring, new_max, table.bound_diag, values)
            t = table_as_tuple(acted, chi, t.zeta_exp)
        else:
            raise CommandError(f"operator {op} is not supported on tables")
    write_table(args.output, t, t.alpha_max, args.bound_diag or table.bound_diag)
    record = {"output": args.output, "ops": [str(o) for o in ops], "alpha_max": t.alpha_max, "zetaexp": t.zeta_exp}
    out.emit(record, f"wrote {args.output} after {' '.join(str(o) for o in ops)} (alpha valid to {t.alpha_max})")
    return 0


def cmd_check_maass(args, out: Out) -> int:
    from .maass import unconstrained_dets

    table, _, _ = read_table(args.table)
    ok, res = check_maass(table)
    if ok:
        skipped = sorted(unconstrained_dets(table))
        record = {"maass": True, "alpha_support": len(res), "unconstrained": skipped}
        note = f"; {len(skipped)} determinant values unconstrained" if skipped else ""
        out.emit(
            record,
            f"OK: table satisfies the divisor-sum condition (alpha on {len(res)} indices{note})",
        )
        return 0
    record = {"maass": False, "witness": list(res.coords())}
    out.emit(record, f"FAIL: condition violated at point {res.coords()}")
    return 1


def cmd_descend(args, out: Out) -> int:
    table, chi, zetaexp = read_table(args.table)
    t = table_as_tuple(table, chi, zetaexp)
    n_max = min(args.n_max or t.alpha_max, t.alpha_max)
    comps = descend(t, n_max)
    code = 0
    for b, (exp, q) in sorted(comps.items()):
        coeffs = {n: str(q.a(n)) for n in range(1, n_max + 1) if not q.a(n).is_zero()}
        record = {"component": b, "zeta_exp": exp, "coeffs": coeffs}
        text = f"component {b}: zeta exponent {exp}, " + ", ".join(
            f"a({n})={v}" for n, v in list(coeffs.items())[:8]
        )
        out.emit(record, text)
    return code


def cmd_euler(args, out: Out) -> int:
    f = _load_newform(args.newform)
    chi = _resolve_chi(f.D, args.chi)
    ok_all = True
    for p in args.p:
        if p == f.D:
            raise CommandError(f"p = {p} is the ramified prime; factors are defined away from it")
        factors = std_factor_lift(f, chi, p)
        bc = bc_factor(f, p, chi)
        record = {
            "p": p,
            "std_factors": [[str(c) for c in fac.coeffs] for fac in factors],
            "bc_factors": [[str(c) for c in fac.coeffs] for fac in bc],
        }
        text = [f"p = {p}:"]
        for fac in factors:
            text.append(f"  std (norm {fac.norm}): " + " | ".join(str(c) for c in fac.coeffs))
        for fac in bc:
            text.append(f"  bc  (norm {fac.norm}): " + " | ".join(str(c) for c in fac.coeffs))
        if args.verify_product134:
            ok, _ = verify_product134(f, chi, p)
            ok_all = ok_all and ok
            record["product134"] = "OK" if ok else "FAIL"
            text.append(f"  product134: {'OK' if ok else 'FAIL'}")
        out.emit(record, "\n".join(text))
    return 0 if ok_all else 1


def cmd_congruence(args, out: Out) -> int:
    forms = [_load_newform(path) for path in args.newforms]
    if not forms:
        raise CommandError("no newform files given")
    ref, others = forms[0], forms[1:]
    D = ref.D
    if any(g.D != D or g.ring != ref.ring for g in others):
        raise CommandError("all newforms must share the field and the coefficient ring")
    chi = _resolve_chi(D, args.chi)
    ops = []
    for p in range(2, args.p_max + 1):
        c = chi_K(D, p)
        if p in (D, args.ell) or not _is_prime(p):
            continue
        if p > ref.p_max():
            break
        if c == 1:
            ops.append(HeckeOpId.make("SplitT1", p, D, args.ell))
            ops.append(HeckeOpId.make("SplitT2", p, D, args.ell))
        else:
            ops.append(HeckeOpId.make("InertT0", p, D, args.ell))
            ops.append(HeckeOpId.make("InertUp", p, D, args.ell))
    systems = [build_eigen_system(g, chi, ops, label=g.label or f"form{i}") for i, g in enumerate(forms)]
    code = 0
    for prime in primes_above(ref.ring, args.ell):
        report = maass_ideal_report(systems[0], systems[1:], prime, cap=args.cap)
        record = report.to_dict()
        text = [
            f"ell = {args.ell}, prime {record['prime']}: max depth {report.max_depth} ({report.kind})"
        ]
        for e in report.entries:
            mark = " (self)" if e.get("self") else ""
            cap_mark = ">=" if e["capped"] else "="
            text.append(f"  {e['label']}{mark}: depth {cap_mark} {e['depth']}")
        out.emit(record, "\n".join(text))
    return code


def _is_prime(n: int) -> bool:
    from .ring import _is_prime as ip

    return ip(n)


# ---------------------------------------------------------------------------
# argument parsing


def _config_defaults() -> dict:
    path = os.environ.get("HERMLIFT_CONFIG")
    if not path:
        return {}
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CommandError(f"config {path}: {exc}") from exc


def build_parser(defaults: dict) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hermlift",
        description="Exact Maass lifts on U(2,2): Hecke action, descent, L-factors, congruences.",
    )
    parser.add_argument("--json", action="store_true", help="line-record JSON output")
    parser.add_argument(
        "--seed",
        type=int,
        default=defaults.get("seed", 0),
        help="seed for any randomized subroutine (all current commands are deterministic)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classgroup", help="class group of Q(sqrt(-D))")
    p.add_argument("D", type=int)
    p.set_defaults(func=cmd_classgroup)

    p = sub.add_parser("lift", help="build a lift table from a newform file")
    p.add_argument("newform")
    p.add_argument("output")
    p.add_argument("--chi", type=int, default=0, help="class character index")
    p.add_argument("--bound-det", type=int, default=defaults.get("bound_det", 200))
    p.add_argument("--bound-diag", type=int, default=defaults.get("bound_diag", 2))
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("hecke", help="apply Hecke operators to a table file")
    p.add_argument("table")
    p.add_argument("output")
    p.add_argument("--op", action="append", required=True, help="e.g. T0@3, T1@2, Up@5")
    p.add_argument("--bound-diag", type=int, default=None)
    p.set_defaults(func=cmd_hecke)

    p = sub.add_parser("check-maass", help="verify the divisor-sum condition on a table")
    p.add_argument("table")
    p.set_defaults(func=cmd_check_maass)

    p = sub.add_parser("descend", help="descend a lift table to elliptic q-expansions")
    p.add_argument("table")
    p.add_argument("--n-max", type=int, default=defaults.get("n_max"))
    p.set_defaults(func=cmd_descend)

    p = sub.add_parser("euler", help="Euler factors of a lift, with optional verification")
    p.add_argument("newform")
    p.add_argument("--p", type=int, action="append", required=True)
    p.add_argument("--chi", type=int, default=0)
    p.add_argument("--verify-product134", action="store_true")
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("congruence", help="eigenvalue congruence depth report")
    p.add_argument("newforms", nargs="+")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--chi", type=int, default=0)
    p.add_argument("--p-max", type=int, default=defaults.get("p_max", 20))
    p.add_argument("--cap", type=int, default=defaults.get("cap", VAL_CAP))
    p.set_defaults(func=cmd_congruence)

    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        defaults = _config_defaults()
        parser = build_parser(defaults)
        args = parser.parse_args(argv)
        import random as _random

        _random.seed(args.seed)
        out = Out(args.json)
        return args.func(args, out)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end.

Every invocation prints one report.  JSON reports have sorted keys and a
``"schema": "csl/1"`` field; slopes and rationals are written as exact
``"p/q"`` strings.  Exit status is 0 on success, 1 when a computation is
refused (domain, degenerate surgery, unmet hypothesis, ...) and 2 when
the input itself cannot be parsed.
"""

from __future__ import annotations

import argparse
import enum
import json
import os
import re
import sys
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from typing import Any, Sequence

from . import classifier as cl
from . import convert as cv
from . import invariants as inv
from . import openbook as ob
from .errors import CslError, DomainError, InputError
from .linalg import is_symmetric
from .slope import (FareyFrame, FrameOp, Slope, farey_combination, frame_apply,
                    frame_label, ncf_eval, ncf_expand, shortest_farey_path, tess_pair)

SCHEMA = "csl/1"
_NEGATIVE_TOKEN = re.compile(r"^-(\d|inf)[\d,/\s-]*$")


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgError(message)

    def exit(self, status=0, message=None):
        if status:
            raise _ArgError(message or "invalid arguments")
        raise SystemExit(status)


# -- value helpers -----------------------------------------------------------------------


def _slope(text: str) -> Slope:
    try:
        return Slope.parse(text)
    except DomainError as exc:
        raise InputError(str(exc)) from None


def _literal_pair(text: str) -> tuple[int, int]:
    m = re.match(r"^\s*([+-]?\d+)\s*/\s*([+-]?\d+)\s*$", text)
    if m:
        p, q = int(m.group(1)), int(m.group(2))
        if p == 0 and q == 0:
            raise InputError("0/0 is not a label")
        return p, q
    s = _slope(text)
    return (s.p, s.q)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in re.split(r"[,\s]+", text.strip()) if x]
    except ValueError:
        raise InputError(f"expected a comma separated list of integers, got {text!r}") from None


def _load_json(path: str) -> Any:
    try:
        if path == "-":
            raw = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                raw = fh.read()
        return json.loads(raw.decode("utf-8"))
    except (OSError, UnicodeDecodeError, ValueError, RecursionError) as exc:
        raise InputError(f"cannot read JSON from {path!r}: {exc}") from None


def _jsonable(x: Any) -> Any:
    if isinstance(x, (Slope, Fraction)):
        return str(x if isinstance(x, Slope) else Slope.from_fraction(x))
    if isinstance(x, enum.Enum):
        return x.value
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if is_dataclass(x) and not isinstance(x, type):
        if hasattr(x, "to_dict"):
            return _jsonable(x.to_dict())
        return _jsonable(asdict(x))
    return x


# -- report ----------------------------------------------------------------------------------


def make_report(command: str, payload=None, notes=(), error: CslError | None = None) -> dict:
    rep = {"schema": SCHEMA, "command": command, "notes": list(notes)}
    if error is None:
        rep["status"] = "ok"
        rep["payload"] = _jsonable(payload)
    else:
        rep["status"] = "error"
        rep["error"] = {"code": error.code, "message": str(error)}
    return rep


def emit_report(report: dict, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
    lines = []
    if report["status"] == "error":
        err = report["error"]
        lines.append(f"error: {err['code']}: {err['message']}")
    else:
        payload = report["payload"]
        if isinstance(payload, dict) and "verdict" in payload:
            lines.append(payload["verdict"])
        _text_lines(payload, "", lines)
    for n in report["notes"]:
        lines.append(f"note: {n}")
    return "\n".join(lines) + "\n"


def _text_lines(value, prefix, out):
    if isinstance(value, dict):
        for k in sorted(value):
            if k == "verdict":
                continue
            v = value[k]
            key = f"{prefix}{k}"
            if isinstance(v, (dict, list)) and v and any(isinstance(e, (dict, list)) for e in
                                                         (v.values() if isinstance(v, dict) else v)):
                out.append(f"{key}:")
                _text_lines(v, prefix + "  ", out)
            else:
                out.append(f"{key} = {_scalar_text(v)}")
    elif isinstance(value, list):
        for i, v in enumerate(value):
            if isinstance(v, (dict, list)):
                out.append(f"{prefix}[{i}]")
                _text_lines(v, prefix + "  ", out)
            else:
                out.append(f"{prefix}[{i}] = {_scalar_text(v)}")
    else:
        out.append(f"{prefix}{_scalar_text(value)}")


def _scalar_text(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar_text(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_scalar_text(v[k])}" for k in sorted(v)) + "}"
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "-"
    return str(v)


# -- command implementations -------------------------------------------------------------


def _plan_payload(plan: ob.OpenBookPlan) -> dict:
    return {
        "plan": plan.to_dict(),
        "west": plan.west,
        "east": plan.east,
        "west_labels": plan.west_labels(),
        "euler_characteristic": plan.page.euler_characteristic,
    }


def _start_plan(args) -> ob.OpenBookPlan:
    if getattr(args, "plan", None):
        return ob.OpenBookPlan.from_dict(_expect_dict(_load_json(args.plan), "plan"))
    if args.genus < 0 or args.boundaries < 1:
        raise InputError("need --genus >= 0 and --boundaries >= 1")
    return ob.new_trivial(args.genus, args.boundaries)


def _expect_dict(x, what):
    if not isinstance(x, dict):
        raise InputError(f"{what} must be a JSON object")
    return x


def cmd_farey(args):
    if args.sub == "sum":
        a = _literal_pair(args.a) if args.literal else tess_pair(_slope(args.a), north=args.north_a)
        b = _literal_pair(args.b) if args.literal else tess_pair(_slope(args.b), north=args.north_b)
        res = farey_combination(args.times, a, args.times_b, b)
        return {"sum": res, "a": f"{a[0]}/{a[1]}", "b": f"{b[0]}/{b[1]}"}, []
    if args.sub == "path":
        a, b = _slope(args.a), _slope(args.b)
        if a == b:
            raise InputError("path endpoints must differ")
        path = shortest_farey_path(a, b)
        return {"path": path, "length": len(path)}, []
    if args.sub == "label":
        ops = []
        for tok in re.split(r"[,\s]+", args.ops.strip()) if args.ops else []:
            key = {"S": FrameOp.STABILIZE, "P": FrameOp.POS_SURGERY, "N": FrameOp.NEG_SURGERY,
                   "+": FrameOp.POS_SURGERY, "-": FrameOp.NEG_SURGERY}.get(tok.upper())
            if key is None:
                raise InputError(f"unknown frame operation {tok!r} (use S, P, N)")
            ops.append(key)
        f = frame_apply(FareyFrame(), ops)
        out = {"west": f.west, "east": f.east, "north": f.north, "south": f.south,
               "frame": f.as_matrix()}
        if args.position is not None:
            out["label"] = frame_label(f, _slope(args.position))
        return out, []
    raise InputError("unknown farey subcommand")


def cmd_ncf(args):
    if args.sub == "expand":
        return {"entries": list(ncf_expand(_slope(args.slope)))}, []
    entries = []
    for tok in args.entries:
        entries += _int_list(tok)
    if not entries:
        raise InputError("no entries given")
    return {"value": ncf_eval(entries), "entries": entries}, []


def cmd_openbook(args):
    if args.sub in ("admissible", "inadmissible"):
        plan = _start_plan(args)
        r = _slope(args.slope)
        if args.original:
            r = ob.to_current_frame(plan, r)
        if args.sub == "admissible":
            return _plan_payload(ob.admissible_build(plan, r)), []
        split = ob.inadmissible_split(r)
        out = _plan_payload(ob.inadmissible_build(plan, r))
        out["split"] = {"n": split.n, "r_prime": split.r_prime, "a": split.a, "b": split.b}
        return out, []
    if args.sub == "lutz":
        plan = _start_plan(args)
        if args.kind == "quarter":
            plan = ob.lutz_quarter(plan, args.n)
        elif args.n:
            raise InputError("--n is only supported for quarter twists")
        elif args.kind == "half":
            plan = ob.lutz_half(plan)
        else:
            plan = ob.lutz_full(plan)
        return _plan_payload(plan), []
    if args.sub == "capoff":
        plan = ob.OpenBookPlan.from_dict(_expect_dict(_load_json(args.plan), "plan"))
        return _plan_payload(ob.cap_off(plan, args.component)), []
    if args.sub == "shift":
        k = _int_list(args.k)
        if args.to_zero:
            steps = ob.shift_to_zero(k)
            return {"k": k, "moves": steps, "count": len(steps)}, []
        if args.i is None or args.j is None:
            raise InputError("give --i and --j, or --to-zero")
        try:
            return {"k": ob.link_shift_move(k, args.i, args.j)}, []
        except IndexError as exc:
            raise InputError(str(exc)) from None
    raise InputError("unknown openbook subcommand")


def _sign_choice(text):
    return cv.SignChoice.ALL_POSITIVE if text == "positive" else cv.SignChoice.ALL_NEGATIVE


def _coefficient(args) -> Slope:
    """Contact coefficient relative to tb; ``--topological`` values are
    relative to the Seifert framing and get shifted by ``-tb``."""
    c = _slope(args.coefficient)
    if not args.topological:
        return c
    if args.tb is None:
        raise InputError("--topological needs --tb")
    if c.is_infinite:
        raise InputError("infinite coefficient has no contact counterpart")
    return c - args.tb


def cmd_convert(args):
    if args.sub == "t2c":
        spec = cv.transverse_to_contact(args.tb, _slope(args.slope))
        return {"coefficient": spec.coefficient, "sign_choice": spec.sign_choice,
                "kind": "positive contact surgery" if spec.coefficient.fraction > 0
                else "negative contact surgery"}, []
    if args.sub == "c2t":
        spec = cv.ContactSurgerySpec(_coefficient(args), _sign_choice(args.sign_choice))
        res = cv.contact_to_transverse(args.tb, spec)
        return {"slope": res.slope,
                "kind": "admissible" if res.admissible else "inadmissible"}, []
    if args.sub == "dg":
        spec = cv.ContactSurgerySpec(_coefficient(args), _sign_choice(args.sign_choice))
        d = cv.ding_geiges_expand(spec)
        out = {"entries": d.to_list(), "plus_count": d.plus_count}
        if args.tb is not None:
            diag = inv.diagram_from_expansion(args.tb, args.rot, d)
            out["diagram"] = diag.to_dict()
        return out, []
    if args.sub == "stabshift":
        tb, rot, n = cv.stabilization_shift(args.tb, args.rot, _slope(args.n))
        return {"tb": tb, "rot": rot, "n": n, "transverse": n + tb}, []
    raise InputError("unknown convert subcommand")


def _diagram(args) -> tuple[inv.SurgeryDiagram, list]:
    chosen = [x is not None for x in (args.diagram, args.model, args.contact)]
    if sum(chosen) != 1:
        raise InputError("give exactly one of --diagram FILE, --model G N, --contact TB ROT R")
    if args.diagram is not None:
        return inv.SurgeryDiagram.from_dict(_load_json(args.diagram)), []
    if args.model is not None:
        g, n = args.model
        return inv.model_diagram(g, n), inv.model_slides(g, n)
    tb, rot, r = args.contact
    d = cv.ding_geiges_expand(cv.ContactSurgerySpec(_slope(r)))
    return inv.diagram_from_expansion(int(tb), int(rot), d), []


def cmd_invariants(args):
    if args.sub == "signature":
        raw = args.matrix
        m = _load_json(raw[1:]) if raw.startswith("@") else _parse_json_text(raw)
        if (not isinstance(m, list) or not all(isinstance(r, list) for r in m)
                or not all(isinstance(x, int) and not isinstance(x, bool) for r in m for x in r)
                or any(len(r) != len(m) for r in m)):
            raise InputError("matrix must be a square JSON array of integer rows")
        if not is_symmetric(m):
            raise DomainError("matrix is not symmetric")
        return {"signature": inv.signature_sym(m), "size": len(m)}, []
    if args.sub == "dual":
        f = inv.dual_knot_closed_forms(args.t, args.r, args.n, args.g)
        out = {"tb_q": f.tb_q, "rot_q": f.rot_q, "order": f.order, "euler": f.euler, "m": f.m}
        if f.tb_q > 0:
            out["stabilized_dual_loose"] = inv.dual_stabilization_loose(args.t, args.r, args.n, args.g)
        return out, []
    d, slides = _diagram(args)
    if args.sub == "tbq":
        return {"tb_q": inv.tb_rational(d)}, []
    if args.sub == "rotq":
        return {"rot_q": inv.rot_rational(d)}, []
    if args.sub == "order":
        return {"order": inv.knot_order(d)}, []
    if args.sub == "pack":
        p = inv.fourmanifold_pack(d)
        out = {"euler": p.euler, "signature": p.signature, "c1_squared": p.c1_squared,
               "d3": p.d3,
               "pd_c1": [{"coefficient": c, "meridian": i}
                         for c, i in inv.c1_dual_class(d, slides)]}
        if slides:
            out["pd_c1_basis"] = "meridians after sliding each push-off over the first knot"
        return out, list(p.notes)
    raise InputError("unknown invariants subcommand")


def _parse_json_text(text):
    try:
        return json.loads(text)
    except (ValueError, RecursionError) as exc:
        raise InputError(f"invalid JSON: {exc}") from None


def _knot(spec_file, preset_name) -> cl.KnotData:
    if (spec_file is None) == (preset_name is None):
        raise InputError("give exactly one of --knot FILE or --preset NAME")
    if preset_name is not None:
        return cl.preset(preset_name)
    return cl.KnotData.from_dict(_load_json(spec_file))


def _verdict_payload(v: cl.Verdict) -> dict:
    out = v.to_dict()
    out["verdict"] = v.headline()
    return out


def _interval_payload(res: dict) -> dict:
    return {"regions": [r.to_dict() for r in res["regions"]],
            "infinity": _verdict_payload(res["infinity"])}


def cmd_classify(args):
    if args.batch:
        if args.sub:
            raise InputError("--batch cannot be combined with a subcommand")
        queries = _load_json(args.batch)
        if not isinstance(queries, list):
            raise InputError("batch file must hold a JSON array of queries")
        return [_batch_one(q) for q in queries], []
    if args.sub is None:
        raise InputError("classify needs a subcommand or --batch")
    if args.sub == "connectsum":
        a = _knot(args.a_file, args.a)
        b = _knot(args.b_file, args.b)
        return {"knot": cl.connect_sum(a, b).to_dict()}, []
    if args.sub == "link":
        return _verdict_payload(cl.classify_link_surgery(_int_list(args.k))), []
    k = _knot(args.knot, args.preset)
    if args.sub == "transverse":
        v = cl.classify_inadmissible_transverse(k, _slope(args.slope), use_facts=args.facts)
        return _verdict_payload(v), []
    if args.sub == "contact":
        tb = args.tb if args.tb is not None else k.tb_max
        rot = args.rot if args.rot is not None else k.rot_at_tbmax
        if tb is None or rot is None:
            raise InputError("give --tb and --rot (the knot has no tb_max/rot data)")
        n = args.n - tb if args.topological else args.n
        return _verdict_payload(cl.classify_contact_positive(k, tb, rot, n)), []
    if args.sub == "width":
        return {"width": cl.contact_width(k)}, []
    if args.sub == "interval":
        return _interval_payload(cl.tight_interval(k)), []
    raise InputError("unknown classify subcommand")


def _batch_one(q) -> dict:
    try:
        if not isinstance(q, dict):
            raise InputError("each query must be a JSON object")
        op = q.get("op")
        if op == "link":
            k = q.get("k")
            if not isinstance(k, list) or not all(isinstance(x, int) and not isinstance(x, bool)
                                                  for x in k):
                raise InputError("link query needs an integer array k")
            return {"status": "ok", "result": _verdict_payload(cl.classify_link_surgery(k))}
        if "preset" in q:
            if not isinstance(q["preset"], str):
                raise InputError("preset must be a string")
            knot = cl.preset(q["preset"])
        elif "knot" in q:
            knot = cl.KnotData.from_dict(q["knot"])
        else:
            raise InputError("query needs a preset or a knot")
        if op == "transverse":
            if not isinstance(q.get("slope"), (str, int)) or isinstance(q.get("slope"), bool):
                raise InputError("transverse query needs a slope")
            res = _verdict_payload(cl.classify_inadmissible_transverse(
                knot, _slope(str(q["slope"])), use_facts=bool(q.get("facts", False))))
        elif op == "contact":
            vals = [q.get("tb", knot.tb_max), q.get("rot", knot.rot_at_tbmax), q.get("n")]
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in vals):
                raise InputError("contact query needs integer tb, rot and n")
            res = _verdict_payload(cl.classify_contact_positive(knot, *vals))
        elif op == "width":
            res = {"width": cl.contact_width(knot)}
        elif op == "interval":
            res = _interval_payload(cl.tight_interval(knot))
        else:
            raise InputError(f"unknown query op {op!r}")
        return {"status": "ok", "result": _jsonable(res)}
    except CslError as exc:
        return {"status": "error", "error": {"code": exc.code, "message": str(exc)}}


# -- parser ---------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)

    p = _Parser(prog="csl", description="Slope arithmetic, open-book plans, invariants "
                                        "and tightness rules for contact surgery.",
                parents=[common])
    verbs = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    farey = verbs.add_parser("farey", help="Farey tessellation arithmetic")
    fs = farey.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    s = fs.add_parser("sum", parents=[common], help="Farey sum m.a (+) n.b")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--times", type=int, default=1, help="multiplier on a")
    s.add_argument("--times-b", type=int, default=1, help="multiplier on b")
    s.add_argument("--north-a", action="store_true", help="read 0 as 0/(-1)")
    s.add_argument("--north-b", action="store_true", help="read 0 as 0/(-1)")
    s.add_argument("--literal", action="store_true", help="take p/q pairs exactly as written")
    s = fs.add_parser("path", parents=[common], help="shortest counter-clockwise path")
    s.add_argument("a")
    s.add_argument("b")
    s = fs.add_parser("label", parents=[common], help="labels after frame operations")
    s.add_argument("--ops", default="", help="comma separated S (stabilise), P (+1), N (-1)")
    s.add_argument("--position", help="standard label of the point to read")

    ncf = verbs.add_parser("ncf", help="negative continued fractions")
    ns = ncf.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    s = ns.add_parser("expand", parents=[common])
    s.add_argument("slope")
    s = ns.add_parser("eval", parents=[common])
    s.add_argument("entries", nargs="+")

    book = verbs.add_parser("openbook", help="open-book surgery plans")
    bs = book.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    start = _Parser(add_help=False)
    start.add_argument("--genus", type=int, default=1)
    start.add_argument("--boundaries", type=int, default=1)
    start.add_argument("--plan", help="start from a plan JSON file instead")
    for name in ("admissible", "inadmissible"):
        s = bs.add_parser(name, parents=[common, start])
        s.add_argument("--slope", required=True)
        s.add_argument("--original", action="store_true",
                       help="slope is in starting coordinates, not the current frame")
    s = bs.add_parser("lutz", parents=[common, start])
    s.add_argument("--kind", choices=("quarter", "half", "full"), default="half")
    s.add_argument("--n", type=int, default=0, help="1/n pre-surgery for a quarter twist")
    s = bs.add_parser("capoff", parents=[common])
    s.add_argument("--plan", required=True)
    s.add_argument("--component", required=True)
    s = bs.add_parser("shift", parents=[common])
    s.add_argument("--k", required=True, help="comma separated coefficients")
    s.add_argument("--i", type=int)
    s.add_argument("--j", type=int)
    s.add_argument("--to-zero", action="store_true")

    conv = verbs.add_parser("convert", help="transverse / contact surgery coefficients")
    cs = conv.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    s = cs.add_parser("t2c", parents=[common])
    s.add_argument("--tb", type=int, required=True)
    s.add_argument("--slope", required=True)
    for name in ("c2t", "dg"):
        s = cs.add_parser(name, parents=[common])
        s.add_argument("--tb", type=int, required=(name == "c2t"))
        s.add_argument("--coefficient", required=True)
        s.add_argument("--sign-choice", choices=("negative", "positive"), default="negative")
        s.add_argument("--topological", action="store_true",
                       help="coefficient is relative to the Seifert framing, not tb")
        if name == "dg":
            s.add_argument("--rot", type=int, default=0)
    s = cs.add_parser("stabshift", parents=[common])
    s.add_argument("--tb", type=int, required=True)
    s.add_argument("--rot", type=int, required=True)
    s.add_argument("--n", required=True)

    invp = verbs.add_parser("invariants", help="invariants of surgery diagrams")
    isub = invp.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    source = _Parser(add_help=False)
    source.add_argument("--diagram", help="surgery diagram JSON file")
    source.add_argument("--model", type=int, nargs=2, metavar=("G", "N"))
    source.add_argument("--contact", nargs=3, metavar=("TB", "ROT", "R"),
                        help="contact R-surgery on a knot with the given tb, rot")
    for name in ("pack", "tbq", "rotq", "order"):
        isub.add_parser(name, parents=[common, source])
    s = isub.add_parser("signature", parents=[common])
    s.add_argument("--matrix", required=True, help="JSON array, or @FILE")
    s = isub.add_parser("dual", parents=[common])
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--g", type=int, required=True)

    clp = verbs.add_parser("classify", parents=[common], help="tightness rules")
    clp.add_argument("--batch", help="JSON array of queries")
    csub = clp.add_subparsers(dest="sub", parser_class=_Parser)
    knot = _Parser(add_help=False)
    knot.add_argument("--knot", help="knot data JSON file")
    knot.add_argument("--preset", help="named knot, e.g. right-trefoil, T(-2,3), K(1,2)")
    s = csub.add_parser("transverse", parents=[common, knot])
    s.add_argument("--slope", required=True)
    s.add_argument("--facts", action="store_true", help="enable the optional fact table")
    s = csub.add_parser("contact", parents=[common, knot])
    s.add_argument("--tb", type=int)
    s.add_argument("--rot", type=int)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--topological", action="store_true",
                   help="--n is the Seifert-framed coefficient tb + n")
    csub.add_parser("width", parents=[common, knot])
    csub.add_parser("interval", parents=[common, knot])
    s = csub.add_parser("connectsum", parents=[common])
    s.add_argument("--a", help="preset name")
    s.add_argument("--b", help="preset name")
    s.add_argument("--a-file")
    s.add_argument("--b-file")
    s = csub.add_parser("link", parents=[common])
    s.add_argument("--k", required=True)
    return p


HANDLERS = {"farey": cmd_farey, "ncf": cmd_ncf, "openbook": cmd_openbook,
            "convert": cmd_convert, "invariants": cmd_invariants, "classify": cmd_classify}


def _protect_negatives(argv: Sequence[str]) -> list[str]:
    # argparse would read "-8/5" as an option; a leading space hides it
    return [" " + a if _NEGATIVE_TOKEN.match(a) else a for a in argv]


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Execute one command; returns ``(exit code, rendered report)``."""
    argv = list(argv)
    fmt = os.environ.get("CSL_OUTPUT", "json")
    if fmt not in ("json", "text"):
        fmt = "json"
    command = " ".join(argv[:2])
    try:
        try:
            args = build_parser().parse_args(_protect_negatives(argv))
        except _ArgError as exc:
            raise InputError(str(exc)) from None
        fmt = getattr(args, "format", fmt)
        command = args.verb + (f" {args.sub}" if getattr(args, "sub", None) else "")
        payload, notes = HANDLERS[args.verb](args)
        return 0, emit_report(make_report(command, payload, notes), fmt)
    except InputError as exc:
        return 2, emit_report(make_report(command, error=exc), fmt)
    except CslError as exc:
        return 1, emit_report(make_report(command, error=exc), fmt)
    except Exception as exc:  # noqa: BLE001
        # anything a module lets through is still reported, never raised
        err = CslError(f"{type(exc).__name__}: {exc}")
        err.code = "internal"
        return 1, emit_report(make_report(command, error=err), fmt)


def main(argv: Sequence[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    if any(a in ("-h", "--help") for a in argv):
        try:
            build_parser().parse_args(list(argv))
        except SystemExit as exc:
            return int(exc.code or 0)
        except _ArgError:
            pass
    code, text = run(argv)
    # error reports are structured output too, so they also go to stdout
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())

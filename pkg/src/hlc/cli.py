"""Command-line interface: design, encode, repair, decode and verify codes.

Exit codes: 0 success, 1 verification failure, 2 unrecoverable data,
3 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import linalg
from .analysis import (DEFAULT_ORACLE_CAP, distance_bound, locality_audit, min_distance_oracle,
                       optimality_check, support_accumulation_audit)
from .coset_tree import HierarchyProfile, build_coset_tree
from .errors import CapExceededError, HLCError, UnrecoverableError
from .gf import field_from_json, find_field, make_field, prime_power
from .lrc import build_code, check_indicator_properties, constructive_assembly, encode_monomial
from .pyramid import PyramidSpec, build_pyramid, length_formula, pyramid_optimal
from .repair import decode_message, repair_all
from .shards import ShardSet

EXIT_OK, EXIT_VERIFY, EXIT_UNRECOVERABLE, EXIT_USAGE = 0, 1, 2, 3

RAW_HELP = """\
Raw byte messages (--raw) are packed into one stripe of k field elements:
the payload is read as a little-endian integer P, the value P * 2^32 + len
is written in base q, and digit j becomes message symbol j.  The payload
must satisfy (P * 2^32 + len) < q^k; decoding reverses this exactly.
"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


def profile_hash(doc: dict) -> str:
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


# -- argument parsing helpers ------------------------------------------------

def parse_levels(text: str) -> list[tuple[int, int]]:
    """``12:8,4:3`` -> [(12, 8), (4, 3)]."""
    try:
        out = []
        for part in text.split(","):
            a, b = part.split(":")
            out.append((int(a), int(b)))
        return out
    except ValueError:
        raise UsageError(f"--levels expects n1:r1,n2:r2,..., got {text!r}") from None


def parse_pyramid_levels(text: str) -> tuple[int, int]:
    """``r1=2,r2=1`` -> (2, 1)."""
    try:
        kv = dict(part.split("=") for part in text.split(","))
        return int(kv["r1"]), int(kv["r2"])
    except (ValueError, KeyError):
        raise UsageError(f"--levels expects r1=..,r2=.. for pyramid codes, got {text!r}") from None


def parse_field(text: str):
    try:
        if "^" in text:
            p, m = text.split("^")
            return make_field(int(p), int(m))
        pm = prime_power(int(text))
    except ValueError:
        raise UsageError(f"--field expects p, p^m or a prime power q, got {text!r}") from None
    if pm is None:
        raise UsageError(f"--field {text} is not a prime power")
    return make_field(*pm)


def _smallest_field_at_least(size: int):
    q = max(size, 2)
    while prime_power(q) is None:
        q += 1
    return make_field(*prime_power(q))


# -- profiles ------------------------------------------------------------------

def design_profile(construction: str, n=None, k=None, levels=None, d=None, delta1=None, field=None):
    """Build a code and its profile document."""
    if construction == "all_symbol":
        if n is None or k is None or levels is None:
            raise UsageError("all_symbol designs need --n, --k and --levels")
        prof = HierarchyProfile(n, k, tuple(levels))
        code = build_code(field, prof)
        params = code.locality_params
        bound = distance_bound(code.n, code.k, params)
        opt = optimality_check(code.n, code.k, params, code.designed_distance, prof.lengths)
        doc = {"construction": "all_symbol", "n": code.n, "k": code.k,
               "levels": prof.to_json()["levels"], "field": code.field.to_json(),
               "exp": list(code.exp.code), "eval_points": list(code.eval_points),
               "designed_d": code.designed_distance, "bound_d": bound,
               "locality": [list(p) for p in params], "optimal_by": opt.optimal_by if opt.optimal else []}
        return code, doc
    if construction == "pyramid":
        if k is None or d is None or levels is None or delta1 is None:
            raise UsageError("pyramid designs need --k, --d, --levels r1=..,r2=.. and --delta1")
        r1, r2 = levels
        spec = PyramidSpec(k, d, r1, r2, delta1)
        if field is None:
            field = _smallest_field_at_least(k + d - 1)
        code = build_pyramid(field, spec)
        bound = distance_bound(code.n, code.k, spec.locality_params)
        optimal = pyramid_optimal(spec) and bound == d
        doc = {"construction": "pyramid", "n": code.n, "k": k, "pyramid": spec.to_json(),
               "field": field.to_json(), "designed_d": d, "bound_d": bound,
               "length_formula": length_formula(spec),
               "locality": [list(p) for p in spec.locality_params],
               "optimal_by": ["pyramid_ceiling"] if optimal else []}
        return code, doc
    raise UsageError(f"unknown construction {construction!r}")


def load_profile(doc: dict):
    """Rebuild the code a profile describes; returns (code, list of mismatches)."""
    try:
        field = field_from_json(doc["field"])
        if doc["construction"] == "all_symbol":
            levels = [(lv["n_i"], lv["r_i"]) for lv in doc["levels"]]
            code, fresh = design_profile("all_symbol", doc["n"], doc["k"], levels, field=field)
        elif doc["construction"] == "pyramid":
            s = doc["pyramid"]
            code, fresh = design_profile("pyramid", k=s["k"], d=s["d"], levels=(s["r_1"], s["r_2"]),
                                         delta1=s["delta_1"], field=field)
        else:
            raise UsageError(f"unknown construction {doc['construction']!r}")
    except KeyError as exc:
        raise UsageError(f"profile lacks field {exc}") from None
    mismatches = [f"{key}: profile has {doc.get(key)!r}, rebuild gives {fresh[key]!r}"
                  for key in sorted(fresh) if doc.get(key) != fresh[key]]
    return code, mismatches


def _read_profile(path):
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read profile {path}: {exc}") from None
    return doc


def _consistent_profile(path):
    doc = _read_profile(path)
    code, mismatches = load_profile(doc)
    if mismatches:
        print(json.dumps({"error": "profile does not match its rebuild", "mismatches": mismatches}),
              file=sys.stderr)
        sys.exit(EXIT_VERIFY)
    return doc, code


def _read_shards(path, doc):
    try:
        shards = ShardSet.from_jsonl(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read shards {path}: {exc}") from None
    if shards.profile_hash != profile_hash(doc):
        print(json.dumps({"error": "shard file was written for a different profile"}), file=sys.stderr)
        sys.exit(EXIT_VERIFY)
    if len(shards) != doc["n"]:
        raise UsageError(f"shard file has {len(shards)} symbols, profile has n={doc['n']}")
    return shards


# -- raw byte packing ------------------------------------------------------------

def bytes_to_message(data: bytes, q: int, k: int) -> list[int]:
    x = (int.from_bytes(data, "little") << 32) | len(data)
    if len(data) >= 1 << 32 or x >= q ** k:
        raise UsageError(f"{len(data)} bytes do not fit in {k} symbols of GF({q})")
    out = []
    for _ in range(k):
        x, dgt = divmod(x, q)
        out.append(dgt)
    return out


def message_to_bytes(msg, q: int) -> bytes:
    x = 0
    for dgt in reversed(msg):
        x = x * q + dgt
    length = x & 0xFFFFFFFF
    return (x >> 32).to_bytes(length, "little")


# -- commands ---------------------------------------------------------------------

def cmd_design(args):
    field = parse_field(args.field) if args.field else None
    if args.construction == "pyramid":
        levels = parse_pyramid_levels(args.levels) if args.levels else None
    else:
        levels = parse_levels(args.levels) if args.levels else None
    code, doc = design_profile(args.construction, args.n, args.k, levels, args.d, args.delta1, field)
    if args.out:
        Path(args.out).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    f = code.field
    _emit({"construction": doc["construction"], "n": doc["n"], "k": doc["k"],
           "field": f"GF({f.p}^{f.m})" if f.m > 1 else f"GF({f.p})",
           "bound_d": doc["bound_d"], "designed_d": doc["designed_d"],
           "optimal": bool(doc["optimal_by"]), "optimal_by": doc["optimal_by"],
           "profile_hash": profile_hash(doc)})
    return EXIT_OK


def cmd_encode(args):
    doc, code = _consistent_profile(args.profile)
    raw = Path(args.input).read_bytes()
    if args.raw:
        msg = bytes_to_message(raw, code.field.q, code.k)
    else:
        try:
            msg = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise UsageError(f"message file is not a JSON array: {exc}") from None
        if not isinstance(msg, list) or len(msg) != code.k:
            raise UsageError(f"message must be a JSON array of k={code.k} field elements")
        for x in msg:
            if not isinstance(x, int) or not 0 <= x < code.field.q:
                raise UsageError(f"message symbol {x!r} is not an element of GF({code.field.q})")
    values = linalg.vecmat(code.field, msg, code.generator)
    shards = ShardSet(code.eval_points, values, profile_hash(doc), {"construction": doc["construction"]})
    Path(args.out).write_text(shards.to_jsonl(), encoding="utf-8")
    return EXIT_OK


def cmd_repair(args):
    doc, code = _consistent_profile(args.profile)
    shards = _read_shards(args.shards, doc)
    try:
        restored, reports = repair_all(code, shards)
    except UnrecoverableError as exc:
        _emit({"error": str(exc), "stuck": exc.stuck})
        return EXIT_UNRECOVERABLE
    out = args.out or str(Path(args.shards).with_suffix(".repaired.jsonl"))
    Path(out).write_text(restored.to_jsonl(), encoding="utf-8")
    _emit({"repairs": [r.to_json() for r in reports],
           "levels_used": sorted({r.level for r in reports}),
           "total_reads": sum(r.reads for r in reports), "out": out})
    return EXIT_OK


def cmd_decode(args):
    doc, code = _consistent_profile(args.profile)
    shards = _read_shards(args.shards, doc)
    try:
        msg = decode_message(code, shards)
    except UnrecoverableError as exc:
        _emit({"error": str(exc), "stuck": exc.stuck})
        return EXIT_UNRECOVERABLE
    if args.raw:
        data = message_to_bytes(msg, code.field.q)
        if args.out:
            Path(args.out).write_bytes(data)
        else:
            sys.stdout.buffer.write(data)
    elif args.out:
        Path(args.out).write_text(json.dumps(msg) + "\n", encoding="utf-8")
    else:
        print(json.dumps(msg))
    return EXIT_OK


def verify_profile(doc: dict, oracle: bool = False, audit: bool = False,
                   cap: int = DEFAULT_ORACLE_CAP) -> dict:
    """Run every consistency and locality check on a profile; returns the report."""
    code, mismatches = load_profile(doc)
    F = code.field
    params = code.locality_params
    bound = distance_bound(code.n, code.k, params)
    designed = code.designed_distance
    checks, violations = {}, list(mismatches)
    checks["profile_consistent"] = not mismatches
    checks["generator_rank"] = linalg.rank(F, code.generator) == code.k
    checks["designed_within_bound"] = designed <= bound
    cover = range(code.k) if code.construction == "pyramid" else None
    loc = locality_audit(F, code.generator, code.grouping, params, cover=cover, cap=cap)
    checks["locality_audit"] = loc.passed
    violations += loc.violations
    if code.construction == "all_symbol":
        bad = check_indicator_properties(build_coset_tree(F, code.profile))
        checks["indicator_properties"] = not bad
        violations += bad
        cons = constructive_assembly(code)
        same = linalg.rref(F, cons.generator) == linalg.rref(F, code.generator)
        checks["constructive_equivalence"] = same
        opt = optimality_check(code.n, code.k, params, designed, code.profile.lengths)
        optimal_by = opt.optimal_by if opt.optimal else []
    else:
        from .pyramid import collapse_to_mds
        checks["splits_collapse_to_mds"] = collapse_to_mds(code) == code.mds_generator
        optimal_by = ["pyramid_ceiling"] if pyramid_optimal(code.spec) and bound == designed else []
    report = {"bound": bound, "designed_d": designed, "oracle_d": None, "optimal_by": optimal_by}
    if oracle:
        d = min_distance_oracle(F, code.generator, cap)
        report["oracle_d"] = d
        checks["oracle_sandwich"] = designed <= d <= bound
    if audit:
        acc = support_accumulation_audit(F, code.generator, code.grouping, params)
        upper = acc.distance_upper
        lower = report["oracle_d"] if report["oracle_d"] is not None else designed
        checks["accumulation_audit"] = acc.passed and lower <= upper <= bound
        violations += acc.violations
        report["audit_distance_upper"] = upper
    report["checks"] = checks
    report["violations"] = violations
    report["passed"] = all(checks.values())
    return report


def cmd_verify(args):
    doc = _read_profile(args.profile)
    try:
        report = verify_profile(doc, args.oracle, args.audit)
    except CapExceededError as exc:
        raise UsageError(f"{exc}; drop --oracle or shrink the code") from None
    _emit(report)
    return EXIT_OK if report["passed"] else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hlc", description="Codes with hierarchical locality.",
                     epilog="Set HLC_MAX_FIELD to change the field-size cap (default 2^20).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("design", help="choose a field, build a code and write its profile")
    p.add_argument("--construction", choices=["all_symbol", "pyramid"], required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--levels", help="n1:r1,n2:r2,... (all_symbol) or r1=..,r2=.. (pyramid)")
    p.add_argument("--d", type=int, help="pyramid: distance of the base MDS code")
    p.add_argument("--delta1", type=int, help="pyramid: distance of the middle codes")
    p.add_argument("--field", help="p, p^m or q; default is the smallest admissible field")
    p.add_argument("--out", help="profile JSON to write")
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("encode", help="encode one message into a shard file",
                       epilog=RAW_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--profile", required=True)
    p.add_argument("--in", dest="input", required=True, help="JSON array of k elements, or bytes with --raw")
    p.add_argument("--raw", action="store_true", help="treat the input as raw bytes")
    p.add_argument("--out", required=True, help="shard file (JSON lines) to write")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("repair", help="restore erased shards (value null)")
    p.add_argument("--profile", required=True)
    p.add_argument("--shards", required=True)
    p.add_argument("--out", help="restored shard file (default: <shards>.repaired.jsonl)")
    p.set_defaults(func=cmd_repair)

    p = sub.add_parser("decode", help="recover the message from a shard file",
                       epilog=RAW_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--profile", required=True)
    p.add_argument("--shards", required=True)
    p.add_argument("--raw", action="store_true", help="unpack the message to raw bytes")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("verify", help="check a profile's structure, locality and distance")
    p.add_argument("--profile", required=True)
    p.add_argument("--oracle", action="store_true", help="brute-force the minimum distance")
    p.add_argument("--audit", action="store_true", help="run the support-accumulation audit")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"hlc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (HLCError, ValueError) as exc:
        print(f"hlc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

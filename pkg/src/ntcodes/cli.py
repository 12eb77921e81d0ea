"""Command-line front end.

Verbs:
  construct  build a catalog family and write its JSON code file
  verify     check all properties of a (code file, group) pair
  search     exhaustive union-of-orbits classification search
  catalog    list the construction families

Exit codes: 0 success, 1 property-check fail findings, 2 usage errors,
3 resource-cap aborts.
"""

import argparse
import json
import os
import sys

from . import codes as codes_mod
from . import geometry
from .gf import FieldError
from .johnson import Code, JohnsonError
from .perm import PermError, PermGroup, Permutation, ResourceCapError

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class UsageError(Exception):
    pass


def worker_threads():
    """Worker bound from JOHNSON_NT_THREADS (computations run on one)."""
    raw = os.environ.get("JOHNSON_NT_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"JOHNSON_NT_THREADS must be an integer, got {raw!r}")
    if n < 1:
        raise UsageError("JOHNSON_NT_THREADS must be >= 1")
    return n


# ---- group spec grammar ------------------------------------------------------

def parse_group_spec(spec):
    """Build a PermGroup from a spec string.

    Grammar: sym:n | alt:n | wreath:a,b | stab:v:i1,i2,... | agl:n,q |
    agammal:n,q | pgl:n,q | pgammal:n,q | psl:2,q | pgu:q | pgammau:q |
    gens:@file (first line = degree, then one permutation per line in
    cycle notation).
    """
    head, sep, rest = spec.partition(":")
    if not sep:
        raise UsageError(f"malformed group spec {spec!r} (missing ':')")

    def ints(text, n):
        parts = text.split(",")
        if len(parts) != n or not all(p.strip().lstrip("-").isdigit()
                                      for p in parts):
            raise UsageError(
                f"group spec {spec!r}: expected {n} integer parameter(s)")
        return [int(p) for p in parts]

    try:
        if head == "sym":
            return PermGroup.symmetric(ints(rest, 1)[0])
        if head == "alt":
            return PermGroup.alternating(ints(rest, 1)[0])
        if head == "wreath":
            a, b = ints(rest, 2)
            return geometry.wreath_stabilizer(a, b)
        if head == "stab":
            vpart, sep2, subset = rest.partition(":")
            if not sep2:
                raise UsageError(
                    f"group spec {spec!r}: use stab:v:i1,i2,...")
            v = ints(vpart, 1)[0]
            pts = [int(p) for p in subset.split(",") if p.strip()]
            if not pts or any(not 0 <= p < v for p in pts):
                raise UsageError(
                    f"group spec {spec!r}: subset points must lie in 0..{v-1}")
            return geometry.subset_stabilizer(v, pts)
        if head in ("agl", "agammal", "pgl", "pgammal"):
            n, q = ints(rest, 2)
            return geometry.group_generators(head, n=n, q=q)
        if head == "psl":
            n, q = ints(rest, 2)
            if n != 2:
                raise UsageError("only psl:2,q is supported")
            return geometry.group_generators("psl2", q=q)
        if head in ("pgu", "pgammau"):
            return geometry.group_generators(head, q=ints(rest, 1)[0])
        if head == "gens":
            if not rest.startswith("@"):
                raise UsageError("gens spec must be gens:@file")
            return _read_generators(rest[1:])
    except (PermError, FieldError, geometry.GeometryError, ValueError) as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"group spec {spec!r}: {exc}")
    raise UsageError(f"unknown group family in spec {spec!r}")


def _read_generators(path):
    try:
        with open(path) as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    except OSError as exc:
        raise UsageError(f"cannot read generator file: {exc}")
    if not lines or not lines[0].isdigit():
        raise UsageError(
            "generator file must start with the degree on its own line")
    degree = int(lines[0])
    try:
        gens = [Permutation.parse(ln, degree) for ln in lines[1:]]
    except PermError as exc:
        raise UsageError(f"generator file: {exc}")
    return PermGroup(degree, gens)


# ---- JSON code files ---------------------------------------------------------

def code_to_json(code):
    return json.dumps(code.as_dict(), indent=2) + "\n"


def parse_code_file(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read code file: {exc}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}")
    return parse_code_dict(data)


def parse_code_dict(data):
    if not isinstance(data, dict):
        raise UsageError("code file: top level must be an object")
    for field in ("v", "k", "codewords"):
        if field not in data:
            raise UsageError(f"code file: missing field {field!r}")
    v, k = data["v"], data["k"]
    if not (isinstance(v, int) and isinstance(k, int) and 1 <= k < v):
        raise UsageError("code file: need integers 1 <= k < v")
    words = data["codewords"]
    if not isinstance(words, list) or not words:
        raise UsageError("code file: codewords must be a non-empty array")
    masks = []
    for i, w in enumerate(words):
        loc = f"codewords[{i}]"
        if (not isinstance(w, list) or len(w) != k
                or not all(isinstance(x, int) for x in w)):
            raise UsageError(f"code file: {loc} must be a list of {k} integers")
        if any(not 0 <= x < v for x in w):
            raise UsageError(f"code file: {loc} has an index outside 0..{v-1}")
        if any(w[j] >= w[j + 1] for j in range(k - 1)):
            raise UsageError(f"code file: {loc} is not strictly ascending")
        m = 0
        for x in w:
            m |= 1 << x
        masks.append(m)
    if len(set(masks)) != len(masks):
        raise UsageError("code file: duplicate codeword")
    if any(words[j] > words[j + 1] for j in range(len(words) - 1)):
        raise UsageError("code file: codewords are not sorted lexicographically")
    return Code(v, k, masks, name=data.get("name", ""),
                params=data.get("params") or {})


# ---- verbs -------------------------------------------------------------------

def _write_output(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_construct(args):
    params = {}
    for key in ("v", "u", "k", "a", "b", "c", "line", "k0", "n", "q",
                "s", "q0"):
        val = getattr(args, key)
        if val is not None:
            params[key] = val
    try:
        code, _ = codes_mod.build(args.family, **params)
    except (codes_mod.ConstructionError, TypeError, FieldError,
            geometry.GeometryError, JohnsonError) as exc:
        raise UsageError(f"construct: {exc}")
    _write_output(code_to_json(code), args.output)
    return EXIT_OK


def cmd_verify(args):
    code = parse_code_file(args.code_file)
    G = parse_group_spec(args.group)
    if G.degree != code.v:
        raise UsageError(
            f"group degree {G.degree} does not match code ground set {code.v}")
    try:
        report = codes_mod.check_properties(
            code, G, cap_orbit=args.cap_orbit, cap_partition=args.cap_partition)
    except ValueError as exc:
        raise UsageError(str(exc))
    passed, failures = codes_mod.check_theorem_consistency(code, report=report)
    summary = _summarize(report, passed, failures)
    payload = report.as_dict()
    payload["consistency_ok"] = passed
    payload["consistency_failures"] = failures
    text = json.dumps(payload, indent=2) + "\n"
    if args.output:
        sys.stdout.write(summary)
        _write_output(text, args.output)
    else:
        sys.stdout.write(summary)
        sys.stdout.write(text)
    return EXIT_OK if passed else EXIT_FINDINGS


def _summarize(report, passed, failures):
    lines = [
        f"code {report.code.name or '(unnamed)'}: v={report.code.v} "
        f"k={report.code.k} |code|={len(report.code)} "
        f"|neighbours|={report.gamma1_size} "
        f"min_distance={report.delta}",
        f"group order {report.group_order}; "
        f"transitive={report.group_facts['transitive_on_V']} "
        f"primitive={report.group_facts['primitive_on_V']} "
        f"2-transitive={report.group_facts['two_transitive_on_V']}",
    ]
    flagtext = " ".join(
        f"{name}={report.flags[name]}" for name in report.FLAG_ORDER)
    lines.append(flagtext)
    for note in report.notes:
        lines.append(f"note: {note}")
    lines.append("consistency: " + ("pass" if passed
                                    else "FAIL (" + "; ".join(failures) + ")"))
    return "\n".join(lines) + "\n"


def cmd_search(args):
    G = parse_group_spec(args.group)
    if args.predicate not in codes_mod.PREDICATES:
        raise UsageError(
            f"unknown predicate {args.predicate!r}; choose from "
            + ", ".join(sorted(codes_mod.PREDICATES)))
    found = codes_mod.classify_search(
        G, args.k, args.predicate, max_union=args.max_union,
        cap=args.cap_orbit)
    text = json.dumps([c.as_dict() for c in found], indent=2) + "\n"
    _write_output(text, args.output)
    return EXIT_OK


def cmd_catalog(_args):
    rows = [(fam, codes_mod.FAMILY_PARAMS[fam],
             codes_mod.FAMILY_DESCRIPTIONS[fam])
            for fam in codes_mod.FAMILY_PARAMS]
    width = max(len(r[0]) for r in rows)
    for fam, params, desc in rows:
        sys.stdout.write(f"{fam:<{width}}  {desc}\n")
        sys.stdout.write(f"{'':<{width}}  parameters: {params}\n")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(
        prog="ntcodes",
        description="Construct and verify highly symmetric codes in "
                    "Johnson graphs J(v,k).")
    sub = p.add_subparsers(dest="verb", required=True)

    pc = sub.add_parser("construct", help="build a catalog code")
    pc.add_argument("--family", required=True,
                    choices=sorted(codes_mod.FAMILY_PARAMS))
    for key in ("v", "u", "k", "a", "b", "c", "line", "k0", "n", "q",
                "s", "q0"):
        pc.add_argument(f"--{key}", type=int, default=None)
    pc.add_argument("-o", "--output", default=None)
    pc.set_defaults(func=cmd_construct)

    pv = sub.add_parser("verify", help="verify a (code file, group) pair")
    pv.add_argument("code_file")
    pv.add_argument("--group", required=True)
    pv.add_argument("--cap-orbit", type=int, default=10 ** 6)
    pv.add_argument("--cap-partition", type=int, default=10 ** 6)
    pv.add_argument("-o", "--output", default=None)
    pv.set_defaults(func=cmd_verify)

    ps = sub.add_parser("search", help="union-of-orbits classification search")
    ps.add_argument("--group", required=True)
    ps.add_argument("--k", type=int, required=True)
    ps.add_argument("--predicate", required=True)
    ps.add_argument("--max-union", type=int, default=1)
    ps.add_argument("--cap-orbit", type=int, default=10 ** 6)
    ps.add_argument("-o", "--output", default=None)
    ps.set_defaults(func=cmd_search)

    pk = sub.add_parser("catalog", help="list construction families")
    pk.set_defaults(func=cmd_catalog)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize others
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        worker_threads()
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ResourceCapError as exc:
        sys.stderr.write(f"resource cap exceeded: {exc}\n")
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())

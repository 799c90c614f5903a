"""Command-line front end: parse JSON documents, dispatch, emit reports.

Exit codes: 0 success (including empty mathematical results), 1 verification
failure, 2 input error, 3 resource cap exceeded.  JSON reports are
byte-stable for identical inputs; timing appears only in the text format.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import jsonio
from .drinfeld import (
    DrinfeldModule,
    aut_group,
    iso_solver,
    restrict,
    twist_min_degree,
    verify_standard_form,
)
from .errors import (
    CapExceeded,
    InputError,
    SchemaError,
    ShapeMismatch,
    TaumodError,
    VerificationError,
)
from .extend import (
    ExtensionProblem,
    brute_oracle,
    enumerate_extensions,
    extension_iso_classes,
    galois_merge_report,
)
from .sheaves import (
    AbelianSheafLadder,
    enumerate_sheaf_module_structures,
    from_drinfeld,
    pushforward,
    semilinear_iso_solver,
    verify_abelian_sheaf,
)
from .shtuka import Shtuka, pushforward_shtuka, shtuka_iso_solver, verify_shtuka
from .jsonio import (
    cover_doc,
    ladder_doc,
    matrix_doc,
    module_doc,
    object_doc,
    shtuka_doc,
)


def _load(path: str):
    raw = Path(path).read_text(encoding="utf-8")
    data = jsonio.loads(raw)
    digest = hashlib.sha256(raw.encode("utf-8")).hexdigest()
    return jsonio.parse_document(data), digest


def _report(args, command, inputs, result, verification=()):
    payload = {
        "command": command,
        "inputs": inputs,
        "result": result,
        "verification": [r.as_dict() for r in verification],
    }
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        _print_text(payload, args)
    return payload


def _print_text(payload, args):
    print(f"command: {payload['command']}")
    for name, digest in payload["inputs"].items():
        print(f"input {name}: sha256 {digest[:16]}...")
    for rep in payload["verification"]:
        mark = "pass" if rep["passed"] else "FAIL"
        print(f"verification [{mark}] {rep['subject']}")
        for clause in rep["clauses"]:
            cm = "ok " if clause["passed"] else "FAIL"
            detail = f" ({clause['detail']})" if clause["detail"] else ""
            print(f"  [{cm}] {clause['name']}{detail}")
    print(json.dumps(payload["result"], sort_keys=True, indent=2))
    if getattr(args, "_start", None) is not None:
        print(f"elapsed: {(time.monotonic() - args._start) * 1000.0:.1f} ms")


def _verify_any(obj):
    if isinstance(obj, DrinfeldModule):
        return verify_standard_form(obj)
    if isinstance(obj, AbelianSheafLadder):
        return verify_abelian_sheaf(obj)
    if isinstance(obj, Shtuka):
        return verify_shtuka(obj)
    raise SchemaError(f"nothing to verify for {type(obj).__name__}")


def cmd_verify(args):
    obj, digest = _load(args.document)
    report = _verify_any(obj)
    _report(args, "verify", {"document": digest}, {"passed": report.ok}, [report])
    return 0 if report.ok else 1


def _push_any(obj, cover):
    if isinstance(obj, DrinfeldModule):
        return restrict(obj, cover)
    if isinstance(obj, AbelianSheafLadder):
        return pushforward(obj, cover)
    if isinstance(obj, Shtuka):
        return pushforward_shtuka(obj, cover)
    raise SchemaError(f"cannot push {type(obj).__name__} along a cover")


def cmd_push(args):
    obj, d1 = _load(args.document)
    cover, d2 = _load(args.cover)
    pushed = _push_any(obj, cover)
    report = _verify_any(pushed)
    _report(
        args,
        args.command,
        {"document": d1, "cover": d2},
        object_doc(pushed),
        [report],
    )
    return 0


def cmd_extend(args):
    module, d1 = _load(args.module)
    cover, d2 = _load(args.cover)
    if not isinstance(module, DrinfeldModule):
        raise SchemaError("extend expects a drinfeld_module document")
    target = args.target_rank or module.rank // cover.degree
    prob = ExtensionProblem(module, cover, target)
    solutions = enumerate_extensions(prob)
    result = {
        "solutions": [
            [jsonio.element_doc(c) for c in sol.delta.coeffs] for sol in solutions
        ],
        "count": len(solutions),
    }
    if args.oracle:
        result["oracle_agrees"] = solutions == brute_oracle(prob)
    if args.classes:
        classes = extension_iso_classes(prob, solutions)
        result["classes"] = [list(orbit) for orbit in classes.partition]
        result["aut_order"] = classes.aut_order
    if args.galois:
        merged = galois_merge_report(prob, args.galois)
        result["galois"] = {
            str(s): {"solutions": c[0], "classes": c[1]} for s, c in merged.items()
        }
    _report(args, "extend", {"module": d1, "cover": d2}, result)
    return 0


def cmd_isom(args):
    a, d1 = _load(args.document1)
    b, d2 = _load(args.document2)
    inputs = {"document1": d1, "document2": d2}
    if isinstance(a, DrinfeldModule) and isinstance(b, DrinfeldModule):
        witnesses = iso_solver(a, b)
        result = {
            "isomorphic": bool(witnesses),
            "witnesses": [jsonio.element_doc(w) for w in witnesses],
        }
        if not witnesses and args.twist:
            s = twist_min_degree(a, b, args.twist)
            result["min_twist_degree"] = s
        _report(args, "isom", inputs, result)
        return 0
    if isinstance(a, AbelianSheafLadder) and isinstance(b, AbelianSheafLadder):
        isos = semilinear_iso_solver(a, b)
        result = {
            "isomorphic": bool(isos),
            "witnesses": [
                {"shift": iso.shift, "maps": [matrix_doc(U) for U in iso.maps]}
                for iso in isos
            ],
        }
        _report(args, "isom", inputs, result)
        return 0
    if isinstance(a, Shtuka) and isinstance(b, Shtuka):
        isos = shtuka_iso_solver(a, b)
        result = {
            "isomorphic": bool(isos),
            "witnesses": [
                {"U": matrix_doc(i.U), "U_prime": matrix_doc(i.U_prime)} for i in isos
            ],
        }
        _report(args, "isom", inputs, result)
        return 0
    raise SchemaError("isom expects two documents of the same kind")


def cmd_aut(args):
    obj, digest = _load(args.document)
    if isinstance(obj, DrinfeldModule):
        group = aut_group(obj)
        result = {
            "order": group.order,
            "elements": [jsonio.element_doc(e) for e in group.elements],
        }
    elif isinstance(obj, AbelianSheafLadder):
        isos = semilinear_iso_solver(obj, obj)
        result = {
            "order": len(isos),
            "elements": [
                {"shift": i.shift, "maps": [matrix_doc(U) for U in i.maps]} for i in isos
            ],
        }
    elif isinstance(obj, Shtuka):
        isos = shtuka_iso_solver(obj, obj)
        result = {
            "order": len(isos),
            "elements": [
                {"U": matrix_doc(i.U), "U_prime": matrix_doc(i.U_prime)} for i in isos
            ],
        }
    else:
        raise SchemaError("aut expects a module, ladder, or shtuka document")
    _report(args, "aut", {"document": digest}, result)
    return 0


def cmd_twist(args):
    a, d1 = _load(args.document1)
    b, d2 = _load(args.document2)
    if not (isinstance(a, DrinfeldModule) and isinstance(b, DrinfeldModule)):
        raise SchemaError("twist expects two drinfeld_module documents")
    s = twist_min_degree(a, b, args.max)
    _report(
        args,
        "twist",
        {"document1": d1, "document2": d2},
        {"min_twist_degree": s, "searched_up_to": args.max},
    )
    return 0


def cmd_motive(args):
    module, digest = _load(args.module)
    if not isinstance(module, DrinfeldModule):
        raise SchemaError("motive expects a drinfeld_module document")
    ladder = from_drinfeld(module)
    _report(
        args,
        "motive",
        {"module": digest},
        ladder_doc(ladder),
        [verify_abelian_sheaf(ladder)],
    )
    return 0


def cmd_sheaf_structures(args):
    ladder, d1 = _load(args.ladder)
    cover, d2 = _load(args.cover)
    if not isinstance(ladder, AbelianSheafLadder):
        raise SchemaError("sheaf-structures expects an abelian_sheaf document")
    structures = enumerate_sheaf_module_structures(ladder, cover)
    result = {
        "count": len(structures),
        "structures": [
            {
                "y_action": [matrix_doc(Y) for Y in s.y_action],
                "ladder": None if s.ladder is None else ladder_doc(s.ladder),
                "note": s.note,
            }
            for s in structures
        ],
    }
    _report(args, "sheaf-structures", {"ladder": d1, "cover": d2}, result)
    return 0


def cmd_run(args):
    job, digest = _load(args.job)
    if not isinstance(job, dict) or job.get("kind") != "job":
        raise SchemaError("run expects a job document")
    command = job.get("command")
    docs = job.get("documents", [])
    flags = job.get("flags", {})
    argv = [command]
    tmp_paths = []
    import tempfile

    for i, doc in enumerate(docs):
        handle = tempfile.NamedTemporaryFile(
            "w", suffix=".json", delete=False, encoding="utf-8"
        )
        json.dump(doc, handle)
        handle.close()
        tmp_paths.append(handle.name)
        argv.append(handle.name)
    for key, value in sorted(flags.items()):
        if value is True:
            argv.append(f"--{key}")
        else:
            argv.extend([f"--{key}", str(value)])
    if args.json:
        argv.insert(0, "--json")
    try:
        return main(argv)
    finally:
        for p in tmp_paths:
            Path(p).unlink(missing_ok=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="taumod",
        description=(
            "Exact computations with Drinfeld modules, abelian-sheaf ladders,"
            " and shtukas over finite fields."
        ),
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="worker threads for candidate scans (output is schedule-independent)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify a module, ladder, or shtuka document")
    p.add_argument("document")
    p.set_defaults(func=cmd_verify)

    for name, help_text in (
        ("restrict", "restriction of coefficients along a cover"),
        ("push", "pushforward along a cover"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("document")
        p.add_argument("cover")
        p.set_defaults(func=cmd_push)

    p = sub.add_parser("extend", help="enumerate module structures over the cover")
    p.add_argument("module")
    p.add_argument("cover")
    p.add_argument("--target-rank", type=int, default=None)
    p.add_argument("--classes", action="store_true", help="classify up to isomorphism")
    p.add_argument("--galois", type=int, default=0, metavar="S_MAX")
    p.add_argument("--oracle", action="store_true", help="cross-check the brute-force scan")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("isom", help="solve for isomorphisms between two documents")
    p.add_argument("document1")
    p.add_argument("document2")
    p.add_argument("--twist", type=int, default=0, metavar="S_MAX")
    p.set_defaults(func=cmd_isom)

    p = sub.add_parser("aut", help="automorphisms of a document")
    p.add_argument("document")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("twist", help="minimal extension degree merging two modules")
    p.add_argument("document1")
    p.add_argument("document2")
    p.add_argument("--max", type=int, required=True)
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("motive", help="ladder attached to a module")
    p.add_argument("module")
    p.set_defaults(func=cmd_motive)

    p = sub.add_parser(
        "sheaf-structures", help="multiplication-by-y structures on a ladder"
    )
    p.add_argument("ladder")
    p.add_argument("cover")
    p.set_defaults(func=cmd_sheaf_structures)

    p = sub.add_parser("run", help="run a bundled job document")
    p.add_argument("job")
    p.set_defaults(func=cmd_run)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    args._start = time.monotonic()
    try:
        return args.func(args)
    except (InputError, ShapeMismatch, TaumodError) as exc:
        if isinstance(exc, CapExceeded):
            print(f"error: {exc}", file=sys.stderr)
            return 3
        if isinstance(exc, VerificationError):
            print(f"error: {exc}", file=sys.stderr)
            if exc.report is not None:
                print(exc.report.summary(), file=sys.stderr)
            return 1
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

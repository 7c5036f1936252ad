"""Command-line front end: validate, convert, rough, powerset, hierarchy, verify.

Exit codes: 0 success, 1 invalid instance (violations on stderr), 2 malformed
input or usage, 3 unsupported conversion or a size cap hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import hyperlift as hl
from . import lattice as lt
from . import rough as ro
from . import soft as so
from ._common import CapExceeded, LatticeError, UnknownKind, sorted_items
from .document import Document, DocumentError, element_json, emit, load

OK, INVALID, MALFORMED, UNSUPPORTED = 0, 1, 2, 3


@dataclass
class Outcome:
    code: int = OK
    out: list[str] = field(default_factory=list)
    err: list[str] = field(default_factory=list)

    def flush(self) -> int:
        for line in self.out:
            sys.stdout.write(line if line.endswith("\n") else line + "\n")
        sys.stdout.flush()
        for line in self.err:
            sys.stderr.write(line + "\n")
        sys.stderr.flush()
        return self.code


def _fail(code: int, message: str) -> Outcome:
    return Outcome(code, err=[message])


def _load(path: str) -> Document | Outcome:
    try:
        return load(path)
    except OSError as err:
        return _fail(MALFORMED, f"{path}: cannot read: {err.strerror or err}")
    except DocumentError as err:
        return _fail(MALFORMED, f"{path}: {err}")


def _violations(doc: Document) -> list[str]:
    return list(lt.default_registry().require(doc.kind).validate(doc.payload).violations)


# ---------------------------------------------------------------- validate


def validate_one(path: str) -> Outcome:
    doc = _load(path)
    if isinstance(doc, Outcome):
        return doc
    bad = _violations(doc)
    if bad:
        return Outcome(INVALID, [f"{path}: invalid {doc.kind}"], [f"{path}: {v}" for v in bad])
    return Outcome(OK, [f"{path}: valid {doc.kind}"])


def cmd_validate(args) -> int:
    with ThreadPoolExecutor(max(1, args.jobs)) as pool:
        outcomes = list(pool.map(validate_one, args.paths))
    # buffered per file and flushed in argument order, so output never interleaves
    return max(o.flush() for o in outcomes)


# ---------------------------------------------------------------- convert


def _params(pairs: list[str]) -> dict:
    out = {}
    for p in pairs or ():
        key, sep, raw = p.partition("=")
        if not sep or not key:
            raise DocumentError(f"parameter {p!r} is not key=value")
        try:
            out[key] = json.loads(raw)
        except json.JSONDecodeError:
            out[key] = raw
    return out


def convert_doc(doc: Document, target: str, params: dict) -> Outcome:
    try:
        lt.default_registry().require(target)
    except UnknownKind as err:
        return _fail(MALFORMED, str(err))
    bad = _violations(doc)
    if bad:
        return Outcome(INVALID, err=[f"input is not a valid {doc.kind}: {v}" for v in bad])
    try:
        result = lt.convert(doc.payload, target, source=doc.kind, params=params)
    except lt.UnknownParameter as err:
        return _fail(MALFORMED, str(err))
    except (LatticeError, ValueError, TypeError) as err:
        return _fail(UNSUPPORTED, f"cannot convert {doc.kind} -> {target}: {type(err).__name__}: {err}")
    return Outcome(OK, [emit(Document(target, result, doc.meta))])


def cmd_convert(args) -> int:
    doc = _load(args.path)
    if isinstance(doc, Outcome):
        return doc.flush()
    try:
        params = _params(args.param)
    except DocumentError as err:
        return _fail(MALFORMED, str(err)).flush()
    return convert_doc(doc, args.to, params).flush()


# ---------------------------------------------------------------- rough

ENGINE_KINDS = {
    "classic": ("Partition",),
    "soft": ("Soft",),
    "treesoft": ("TreeSoft",),
    "multi": ("PartitionFamily",),
    "hyper": ("HyperSoft", "SuperHyperSoft"),
}


def _out_set(xs) -> list:
    return [element_json(x) for x in sorted_items(xs)]


def _pair_report(pair: ro.RoughPair, ambient) -> dict:
    reg = ro.regions(pair, ambient)
    return {
        "lower": _out_set(pair.lower),
        "upper": _out_set(pair.upper),
        "regions": {"pos": _out_set(reg.pos), "neg": _out_set(reg.neg), "bnd": _out_set(reg.bnd),
                    "definable": reg.definable},
    }


def _target(tokens: str, universe) -> frozenset:
    lookup = {str(x): x for x in universe}
    names = [t.strip() for t in tokens.split(",") if t.strip()] if tokens else []
    missing = [n for n in names if n not in lookup]
    if missing:
        raise DocumentError(f"target elements outside the universe: {missing}")
    return frozenset(lookup[n] for n in names)


def rough_doc(doc: Document, target: str, engine: str, relation: Document | None = None) -> Outcome:
    if doc.kind not in ENGINE_KINDS[engine]:
        return _fail(MALFORMED, f"engine {engine} needs a {' or '.join(ENGINE_KINDS[engine])} document, got {doc.kind}")
    bad = _violations(doc)
    if relation is not None:
        bad += _violations(relation)
    if bad:
        return Outcome(INVALID, err=bad)
    x = doc.payload
    try:
        if engine == "classic":
            report = _pair_report(ro.rough_approx(x, _target(target, x.universe)), x.universe)
        elif engine == "soft":
            report = _pair_report(ro.soft_rough_approx(x, _target(target, x.universe)), x.universe)
        elif engine == "treesoft":
            pair, _ = ro.treesoft_rough_approx(x, _target(target, x.universe))
            report = _pair_report(pair, x.universe)
        elif engine == "multi":
            universe = x.relations[0].universe
            pairs = ro.multirough(x.relations, _target(target, universe))
            report = {"relations": [_pair_report(p, universe) for p in pairs]}
        else:
            if relation is None or relation.kind != "Partition":
                return _fail(MALFORMED, "engine hyper needs --relation with a Partition document")
            p = relation.payload
            fn = ro.hyperrough if isinstance(x, so.HyperSoftSet) else ro.superhyperrough
            # each key approximates its own value; --target is not used
            out = fn(x, p)
            key = element_json if isinstance(x, so.HyperSoftSet) else (lambda k: [_out_set(part) for part in k])
            report = {"keys": [{"key": key(k), "value": _pair_report(v, p.universe)} for k, v in out.items()]}
    except DocumentError as err:
        return _fail(MALFORMED, str(err))
    except LatticeError as err:
        return _fail(INVALID, f"{type(err).__name__}: {err}")
    report["engine"] = engine
    return Outcome(OK, [json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"])


def cmd_rough(args) -> int:
    doc = _load(args.path)
    if isinstance(doc, Outcome):
        return doc.flush()
    relation = None
    if args.relation:
        relation = _load(args.relation)
        if isinstance(relation, Outcome):
            return relation.flush()
    return rough_doc(doc, args.target, args.engine, relation).flush()


# ---------------------------------------------------------------- powerset


def powerset_lines(universe: str, n: int, cap: int) -> Outcome:
    base = [t.strip() for t in universe.split(",") if t.strip()] if universe else []
    try:
        tower = hl.iterated_powerset(base, n, cap)
    except CapExceeded as err:
        return _fail(UNSUPPORTED, f"level {n} over {len(set(base))} atoms has {err.predicted} elements, cap is {err.cap}")
    except ValueError as err:
        return _fail(MALFORMED, str(err))
    return Outcome(OK, [hl.encode(x) for x in tower.elements])


def cmd_powerset(args) -> int:
    return powerset_lines(args.universe, args.n, args.cap).flush()


# ---------------------------------------------------------------- hierarchy / verify


def hierarchy_doc(doc: Document) -> Outcome:
    bad = _violations(doc)
    if bad:
        return Outcome(INVALID, err=bad)
    res = lt.hierarchy_check(doc.payload, doc.kind)
    lines = [f"{'ok' if v == 'ok' else 'FAIL'} {doc.kind} -> {k}" + ("" if v == "ok" else f": {v}") for k, v in res.items()]
    return Outcome(OK if all(v == "ok" for v in res.values()) else INVALID, lines)


def cmd_hierarchy(args) -> int:
    if args.export:
        sys.stdout.write(lt.export_edge_list())
        return OK
    doc = _load(args.check)
    if isinstance(doc, Outcome):
        return doc.flush()
    return hierarchy_doc(doc).flush()


def cmd_verify(args) -> int:
    if args.samples < 1:
        return _fail(MALFORMED, "--samples must be >= 1").flush()
    report = lt.verify_lattice(args.samples, args.seed, workers=args.jobs)
    sys.stdout.write(report.summary() + "\n")
    return OK if report.ok else INVALID


# ---------------------------------------------------------------- entry


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="uncertain-lattice", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check documents against their kind's validator")
    p.add_argument("paths", nargs="+")
    p.add_argument("--jobs", type=int, default=4, help="files validated concurrently")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("convert", help="embed or reduce a document into another kind")
    p.add_argument("path")
    p.add_argument("--to", required=True, help="target kind name")
    p.add_argument("--param", action="append", metavar="KEY=VALUE", help="witness option, e.g. mode=Mean")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("rough", help="lower/upper approximations and regions")
    p.add_argument("path")
    p.add_argument("--target", default="", help="comma-separated target elements")
    p.add_argument("--engine", choices=sorted(ENGINE_KINDS), default="classic")
    p.add_argument("--relation", help="Partition document (hyper engine)")
    p.set_defaults(func=cmd_rough)

    p = sub.add_parser("powerset", help="list the n-th iterated powerset of a base set")
    p.add_argument("--universe", required=True, help="comma-separated atoms")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cap", type=int, default=hl.DEFAULT_CAP)
    p.set_defaults(func=cmd_powerset)

    p = sub.add_parser("hierarchy", help="export the edge list or embed one instance everywhere")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--export", action="store_true")
    g.add_argument("--check", metavar="PATH")
    p.set_defaults(func=cmd_hierarchy)

    p = sub.add_parser("verify", help="sample, embed and revalidate along every edge")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: every library operation on JSON files.

One verb per operation; each verb reads JSON documents, writes a single JSON
document to stdout (or --out), and puts a one-line human summary on stderr.
The dot verb emits DOT text instead of JSON.  Exit codes: 0 success, 1 domain
error (an {"error": ...} document is still emitted), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .axioms import AXIOMS, check_axiom, is_r_relation
from .closures import (antisym_step, antisymmetric_closure,
                       closure_result_to_json, l3, l4, l12, r_closure)
from .core import (DomainError, RelMap, Report, TernaryRelation,
                   interval, relation_from_json, relation_to_json)
from .fraisse import (AmalgamationError, StrongEmbedding, amalgamate,
                      audit_extension_property, canonical_form,
                      check_partial_homogeneity, find_embeddings,
                      fraisse_chain, jep)
from .orderlat import (BoundWitness, FiniteLattice, betweenness_from_lattice,
                       classify_direct, classify_via_betweenness,
                       detect_bounds, dm_betweenness_report, dm_completion,
                       distributive_reflection, lattice_from_json,
                       lattice_to_json, poset_from_json, poset_to_json,
                       recover_order)
from .rlattice import (ALL_R, ANTISYM_R, R3_ONLY, Cone, enumerate_relations,
                       initial_lift, join, meet, pullback)

FILTERS = {"r": ALL_R, "antisym": ANTISYM_R, "r3": R3_ONLY}


class UsageError(Exception):
    pass


def _load_doc(path: str) -> Any:
    try:
        with open(path) as handle:
            return json.load(handle)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}") from exc


def _load_relation(path: str) -> TernaryRelation:
    doc = _load_doc(path)
    if not isinstance(doc, dict) or "elements" not in doc or "leq" in doc:
        raise UsageError(f"{path} is not a relation document")
    return relation_from_json(doc)


def _load_order(path: str):
    doc = _load_doc(path)
    if not isinstance(doc, dict) or "elements" not in doc or "leq" not in doc:
        raise UsageError(f"{path} is not an order document")
    return poset_from_json(doc)


def _jsonable(value: Any) -> Any:
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_jsonable(v) for v in value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def _report_json(report: Report) -> dict:
    return {"holds": report.holds,
            "witnesses": [_jsonable(w) for w in report.witnesses]}


def _classification_json(report) -> dict:
    return {
        "flags": report.flags(),
        "reports": {name: _report_json(getattr(report, name))
                    for name in report.flags()},
    }


def _embedding_json(emb: StrongEmbedding) -> dict:
    return {"assignment": dict(emb.assignment)}


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="betweenness",
        description="compute with finite betweenness relations")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(verb, **flags):
        p = sub.add_parser(verb)
        for flag, kwargs in flags.items():
            p.add_argument("--" + flag.replace("_", "-"), **kwargs)
        p.add_argument("--out", help="write the output document here")
        return p

    add("validate", **{"in": dict(required=True, dest="infile")})
    add("check", **{"in": dict(required=True, dest="infile")},
        axiom=dict(required=True, choices=AXIOMS))
    add("close", **{"in": dict(required=True, dest="infile")},
        op=dict(required=True,
                choices=["l12", "l3", "l4", "l", "antisym-step", "antisym"]))
    add("meet", **{"in": dict(required=True, dest="infile"),
                   "in2": dict(required=True, dest="infile2")})
    add("join", **{"in": dict(required=True, dest="infile"),
                   "in2": dict(required=True, dest="infile2")})
    add("pullback", **{"in": dict(required=True, dest="infile")},
        map=dict(required=True, dest="mapfile"))
    add("lift", **{"in": dict(required=True, dest="infile")})
    add("enumerate", **{"in": dict(required=True, dest="infile")},
        filter=dict(default="r", choices=sorted(FILTERS)))
    add("from-lattice", **{"in": dict(required=True, dest="infile")})
    add("recover-order", **{"in": dict(required=True, dest="infile")},
        beta=dict(required=True))
    add("detect-bounds", **{"in": dict(required=True, dest="infile")})
    add("classify", **{"in": dict(required=True, dest="infile")},
        alpha=dict(), beta=dict())
    add("classify-oracle", **{"in": dict(required=True, dest="infile")})
    add("reflect", **{"in": dict(required=True, dest="infile")})
    add("dm", **{"in": dict(required=True, dest="infile")})
    add("dm-report", **{"in": dict(required=True, dest="infile")})
    add("embed", **{"in": dict(required=True, dest="infile"),
                    "in2": dict(required=True, dest="infile2")})
    add("jep", **{"in": dict(required=True, dest="infile"),
                  "in2": dict(required=True, dest="infile2")})
    add("amalgamate", **{"in": dict(required=True, dest="infile"),
                         "in2": dict(required=True, dest="infile2"),
                         "over": dict(required=True)})
    add("chain",
        size_bound=dict(required=True, type=int),
        rounds=dict(required=True, type=int),
        seed=dict(default=0, type=int))
    add("audit", **{"in": dict(required=True, dest="infile")},
        k=dict(required=True, type=int))
    add("homogeneity", **{"in": dict(required=True, dest="infile")},
        k=dict(required=True, type=int))
    add("dot", **{"in": dict(required=True, dest="infile")},
        pair=dict())
    return parser


def _order_doc(path: str) -> bool:
    doc = _load_doc(path)
    return isinstance(doc, dict) and "leq" in doc


def _run_close(args) -> dict:
    rel = _load_relation(args.infile)
    op = args.op
    if op == "l12":
        out = l12(rel)
        return {"relation": relation_to_json(out)}
    if op == "l4":
        out = l4(rel)
        return {"relation": relation_to_json(out)}
    result = {"l3": l3, "l": r_closure, "antisym-step": antisym_step,
              "antisym": antisymmetric_closure}[op](rel)
    return closure_result_to_json(result)


def _run_classify(args) -> dict:
    if _order_doc(args.infile):
        lattice = lattice_from_json(_load_doc(args.infile))
        rel = betweenness_from_lattice(lattice)

        def resolve(flag, default):
            if flag is None:
                return default
            if flag not in lattice.carrier:
                if flag == "bottom":
                    return lattice.bottom
                if flag == "top":
                    return lattice.top
            return flag

        alpha = resolve(args.alpha, lattice.bottom)
        beta = resolve(args.beta, lattice.top)
    else:
        rel = _load_relation(args.infile)
        if args.alpha and args.beta:
            alpha, beta = args.alpha, args.beta
        else:
            found = detect_bounds(rel)
            if not found:
                raise DomainError("no bound witness found; pass --alpha/--beta")
            alpha, beta = found[0].alpha, found[0].beta
    witness = BoundWitness(alpha, beta)
    doc = _classification_json(classify_via_betweenness(rel, witness))
    doc["witness"] = {"alpha": alpha, "beta": beta}
    return doc


def _run_amalgamate(args) -> dict:
    base = _load_relation(args.over)
    b1 = _load_relation(args.infile)
    b2 = _load_relation(args.infile2)
    f1 = RelMap(base, b1, {x: x for x in base.carrier})
    f2 = RelMap(base, b2, {x: x for x in base.carrier})
    out = amalgamate(base, b1, b2, f1, f2)
    return {"relation": relation_to_json(out.result),
            "g1": _embedding_json(out.g1), "g2": _embedding_json(out.g2)}


def _run_chain(args) -> dict:
    report = fraisse_chain(args.size_bound, args.rounds, args.seed)
    return {
        "stages": [relation_to_json(s) for s in report.stages],
        "links": [_embedding_json(l) for l in report.links],
        "satisfied_requests": [
            {"substructure": relation_to_json(u), "extension": relation_to_json(v)}
            for u, v in report.satisfied_requests],
        "pending_requests": [
            {"substructure": relation_to_json(u),
             "extension": relation_to_json(canonical_form(v))}
            for u, v in report.pending_requests],
    }


def _dot_escape(label: str) -> str:
    return label.replace("\\", "\\\\").replace('"', '\\"')


def _run_dot(args) -> str:
    if _order_doc(args.infile):
        poset = _load_order(args.infile)
        lines = ["digraph order {", "  rankdir=BT;"]
        for x in poset.carrier:
            lines.append(f'  "{_dot_escape(x)}";')
        for lo, hi in poset.covers():
            lines.append(f'  "{_dot_escape(lo)}" -> "{_dot_escape(hi)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"
    rel = _load_relation(args.infile)
    if not args.pair:
        raise UsageError("dot on a relation needs --pair a,b")
    parts = args.pair.split(",")
    if len(parts) != 2:
        raise UsageError("--pair takes two comma-separated labels")
    a, b = parts
    inside = interval(rel, a, b)
    lines = [f'graph interval {{', f'  label="[{_dot_escape(a)},{_dot_escape(b)}]";']
    for x in rel.carrier:
        style = ' style=filled fillcolor=lightgrey' if x in inside else ""
        lines.append(f'  "{_dot_escape(x)}"[{style.strip()}];'
                     if style else f'  "{_dot_escape(x)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _execute(args) -> tuple[Any, str]:
    """Returns (document or DOT text, stderr summary)."""
    verb = args.verb
    if verb == "validate":
        rel = _load_relation(args.infile)
        reports = {ax: check_axiom(rel, ax) for ax in ("R1", "R2", "R3", "R4")}
        doc = {"is_r_relation": all(r.holds for r in reports.values()),
               "reports": {ax: {"holds": r.holds,
                                "witnesses": [_jsonable(w) for w in r.witnesses]}
                           for ax, r in reports.items()}}
        return doc, ("all four axioms hold" if doc["is_r_relation"]
                     else "axiom failures: " + ",".join(
                         ax for ax, r in reports.items() if not r.holds))
    if verb == "check":
        rel = _load_relation(args.infile)
        report = check_axiom(rel, args.axiom)
        doc = {"axiom": args.axiom, "holds": report.holds,
               "witnesses": [_jsonable(w) for w in report.witnesses]}
        return doc, (f"{args.axiom} holds" if report.holds
                     else f"{args.axiom} fails with {len(report.witnesses)} witnesses")
    if verb == "close":
        doc = _run_close(args)
        tail = doc.get("trace", [])
        summary = " -> ".join(step["step"] for step in tail) if tail else args.op
        return doc, f"close --op {args.op}: {summary}"
    if verb in ("meet", "join"):
        rels = [_load_relation(args.infile), _load_relation(args.infile2)]
        out = (meet if verb == "meet" else join)(rels)
        return {"relation": relation_to_json(out)}, \
            f"{verb}: {len(out.triples)} triples"
    if verb == "pullback":
        rel = _load_relation(args.infile)
        mapdoc = _load_doc(args.mapfile)
        if not isinstance(mapdoc, dict) or "assignment" not in mapdoc:
            raise UsageError(f"{args.mapfile} is not a map document")
        out = pullback(mapdoc["assignment"], rel)
        return {"relation": relation_to_json(out)}, \
            f"pullback: {len(out.triples)} triples"
    if verb == "lift":
        doc = _load_doc(args.infile)
        if not isinstance(doc, dict) or "apex" not in doc:
            raise UsageError(f"{args.infile} is not a cone document")
        legs = [(leg["assignment"], relation_from_json(leg["target"]))
                for leg in doc.get("legs", [])]
        out = initial_lift(Cone(doc["apex"], legs))
        return {"relation": relation_to_json(out)}, \
            f"lift: {len(out.triples)} triples"
    if verb == "enumerate":
        doc = _load_doc(args.infile)
        if not isinstance(doc, dict) or "elements" not in doc:
            raise UsageError(f"{args.infile} needs an 'elements' list")
        rels = enumerate_relations(doc["elements"], FILTERS[args.filter])
        return {"filter": args.filter, "count": len(rels),
                "relations": [relation_to_json(r) for r in rels]}, \
            f"enumerate: {len(rels)} relations"
    if verb == "from-lattice":
        lattice = lattice_from_json(_load_doc(args.infile))
        out = betweenness_from_lattice(lattice)
        return {"relation": relation_to_json(out)}, \
            f"from-lattice: {len(out.triples)} triples"
    if verb == "recover-order":
        rel = _load_relation(args.infile)
        poset = recover_order(rel, args.beta)
        return poset_to_json(poset), f"recover-order at {args.beta}"
    if verb == "classify":
        doc = _run_classify(args)
        on = sorted(k for k, v in doc["flags"].items() if v)
        return doc, "classify: " + (",".join(on) if on else "nothing holds")
    if verb == "classify-oracle":
        lattice = lattice_from_json(_load_doc(args.infile))
        doc = _classification_json(classify_direct(lattice))
        on = sorted(k for k, v in doc["flags"].items() if v)
        return doc, "classify-oracle: " + (",".join(on) if on else "nothing holds")
    if verb == "detect-bounds":
        rel = _load_relation(args.infile)
        found = detect_bounds(rel)
        return {"witnesses": [{"alpha": w.alpha, "beta": w.beta} for w in found]}, \
            f"detect-bounds: {len(found)} witnesses"
    if verb == "reflect":
        lattice = lattice_from_json(_load_doc(args.infile))
        reflected, send = distributive_reflection(lattice)
        return {"lattice": lattice_to_json(reflected), "map": send}, \
            f"reflect: {len(lattice.carrier)} -> {len(reflected.carrier)} elements"
    if verb == "dm":
        poset = _load_order(args.infile)
        lattice, embedding = dm_completion(poset)
        return {"lattice": lattice_to_json(lattice), "embedding": embedding}, \
            f"dm: {len(lattice.carrier)} cuts"
    if verb == "dm-report":
        poset = _load_order(args.infile)
        report = dm_betweenness_report(poset)
        return _report_json(report), \
            ("dm-report: betweenness preserved" if report.holds
             else f"dm-report: {len(report.witnesses)} strays")
    if verb == "embed":
        small = _load_relation(args.infile)
        big = _load_relation(args.infile2)
        found = find_embeddings(small, big)
        return {"count": len(found),
                "embeddings": [_embedding_json(e) for e in found]}, \
            f"embed: {len(found)} embeddings"
    if verb == "jep":
        u = _load_relation(args.infile)
        v = _load_relation(args.infile2)
        w, e1, e2 = jep(u, v)
        return {"relation": relation_to_json(w),
                "e1": _embedding_json(e1), "e2": _embedding_json(e2)}, \
            f"jep: {len(w.carrier)} points"
    if verb == "amalgamate":
        doc = _run_amalgamate(args)
        return doc, f"amalgamate: {len(doc['relation']['carrier'])} points"
    if verb == "chain":
        doc = _run_chain(args)
        return doc, (f"chain: {len(doc['stages'])} stages, "
                     f"{len(doc['pending_requests'])} pending")
    if verb == "audit":
        rel = _load_relation(args.infile)
        report = audit_extension_property(rel, args.k)
        doc = {"holds": report.holds,
               "unmet": [{"substructure": relation_to_json(u),
                          "extension": relation_to_json(canonical_form(v))}
                         for u, v in report.witnesses]}
        return doc, (f"audit: all extensions met at k={args.k}" if report.holds
                     else f"audit: {len(report.witnesses)} unmet")
    if verb == "homogeneity":
        rel = _load_relation(args.infile)
        report = check_partial_homogeneity(rel, args.k)
        return _report_json(report), \
            ("homogeneity: one-step extensions all succeed" if report.holds
             else f"homogeneity: {len(report.witnesses)} failures")
    if verb == "dot":
        return _run_dot(args), "dot written"
    raise UsageError(f"unknown verb {verb!r}")


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        payload, summary = _execute(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except (DomainError, AmalgamationError) as exc:
        text = json.dumps({"error": str(exc)}, indent=2, sort_keys=True)
        if args.out:
            with open(args.out, "w") as handle:
                handle.write(text + "\n")
        else:
            print(text)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if isinstance(payload, str):
        text = payload
    else:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    print(summary, file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())

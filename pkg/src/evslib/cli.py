"""Command-line surface: validation, comparison, transforms, builtin metrics,
norm-family tooling, axiom suites, order tools, and demos. Every command
emits a single JSON report on stdout of the shape

    {"command": ..., "inputs": ..., "report": ...}

with all file inputs resolved inline, so any emitted report can be re-run and
re-checked with --replay. Rationals appear as "p/q" in lowest terms; no
floating point is printed anywhere.

Exit codes: 0 success, 1 domain failure (a failed validation, a refuted or
failed check -- always with a structured counterexample or refutation in the
report), 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import core, instances, metrics, norms, order
from .errors import InputError
from .rationals import fmt, parse_rational


# ---------------------------------------------------------------------------
# Input loading
# ---------------------------------------------------------------------------


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc


def _load_matrix_doc(path: str) -> dict:
    if path.endswith(".csv"):
        try:
            text = Path(path).read_text(encoding="utf-8")
        except FileNotFoundError as exc:
            raise InputError(f"no such file: {path}") from exc
        return metrics.MetricMatrix.from_csv_text(text).to_json()
    doc = _load_json(path)
    return metrics.MetricMatrix.from_json(doc).to_json()


def _parse_depths(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise InputError(f"bad depth list {text!r}") from exc


def _parse_lazy_spec(text: str, points_doc=None) -> dict:
    """Spec strings like "shrinking", "usual-grid:step=1", "cauchy-dn:n=10"."""
    name, _, tail = text.partition(":")
    params = {}
    if tail:
        for piece in tail.split(","):
            key, _, value = piece.partition("=")
            if not value:
                raise InputError(f"bad parameter {piece!r} in spec {text!r}")
            params[key.strip()] = value.strip()
    if name == "cauchy-dn" and points_doc is not None:
        params["points"] = points_doc
    return {"name": name, "params": params}


def _build_lazy(spec: dict) -> metrics.LazyMetric:
    if spec["name"] == "usual":
        # carrier-less alias, resolved against the partner in _lazy_pair
        return None
    return metrics.builtin_lazy(spec["name"], spec["params"])


def _lazy_pair(first: dict, second: dict) -> tuple:
    a, b = _build_lazy(first), _build_lazy(second)
    if a is None and b is None:
        raise InputError('the bare "usual" alias needs a coordinate carrier '
                         "on the other side")
    if a is None:
        a = metrics.usual_metric(b.carrier)
    if b is None:
        b = metrics.usual_metric(a.carrier)
    return a, b


# ---------------------------------------------------------------------------
# Universe loading for the order tools
# ---------------------------------------------------------------------------


def _universe_inline(manifest_path: str) -> dict:
    doc = _load_json(manifest_path)
    if not isinstance(doc, dict) or "instance" not in doc or "elements" not in doc:
        raise InputError('universe manifest needs "instance" and "elements"')
    base = Path(manifest_path).parent
    inline = {k: v for k, v in doc.items() if k != "elements"}
    inline["elements"] = []
    for ref in doc["elements"]:
        path = str(base / ref)
        if doc["instance"] == "metrics":
            inline["elements"].append(_load_matrix_doc(path))
        else:
            inline["elements"].append(_load_json(path))
    return inline


def _universe_from_inline(doc: dict) -> order.Universe:
    kind = doc["instance"]
    if kind == "metrics":
        mats = [metrics.MetricMatrix.from_json(e) for e in doc["elements"]]
        inst = instances.metric_matrix_instance(mats[0].labels)
        return order.Universe(inst, mats)
    if kind == "norm-family":
        depth = int(doc.get("depth", 0))
        part = norms.PartitionSpec(depth)
        inst = norms.norm_family_instance(part)
        elements = [norms.NormFamilyParams.from_json(e) for e in doc["elements"]]
        for e in elements:
            if e.partition.depth != depth:
                raise InputError("family element uses a different depth")
        return order.Universe(inst, elements)
    if kind == "cone":
        inst = instances.cone_instance(int(doc.get("dim", 2)))
        return order.Universe(
            inst, [inst.element_from_json(e) for e in doc["elements"]]
        )
    if kind == "hyperspace":
        inst = instances.hyperspace_instance(int(doc.get("dim", 2)))
        return order.Universe(
            inst, [inst.element_from_json(e) for e in doc["elements"]]
        )
    raise InputError(f"unknown universe instance {kind!r}")


# ---------------------------------------------------------------------------
# Handlers: inputs dict -> (report dict, exit code)
# ---------------------------------------------------------------------------


def _run_validate(inputs: dict):
    m = metrics.MetricMatrix.from_json(inputs["matrix"])
    verdict = metrics.validate_metric(m)
    return verdict.to_json(), 0 if verdict.passed else 1


def _run_combine(inputs: dict):
    a = metrics.MetricMatrix.from_json(inputs["a"])
    if inputs["op"] == "add":
        b = metrics.MetricMatrix.from_json(inputs["b"])
        result = metrics.add_metrics(a, b)
    else:
        result = metrics.scale_metric(parse_rational(inputs["alpha"]), a)
    return {"matrix": result.to_json(), "isZero": result.is_zero()}, 0


def _run_compare(inputs: dict):
    d = metrics.MetricMatrix.from_json(inputs["first"])
    rho = metrics.MetricMatrix.from_json(inputs["second"])
    return metrics.classify_pair(d, rho).to_json(), 0


def _run_transform(inputs: dict):
    m = metrics.MetricMatrix.from_json(inputs["matrix"])
    out = (metrics.transform_bounded if inputs["kind"] == "bounded"
           else metrics.transform_min)(m)
    verdict = metrics.validate_metric(out)
    return {
        "matrix": out.to_json(),
        "validation": verdict.to_json(),
        "belowInput": metrics.leq_metrics(out, m),
    }, 0 if verdict.passed else 1


def _run_builtin(inputs: dict):
    m = metrics.builtin_metric(inputs["name"], inputs["params"], inputs["depth"])
    return {"matrix": m.to_json()}, 0


def _run_partial_compare(inputs: dict):
    a, b = _lazy_pair(inputs["first"], inputs["second"])
    depths = inputs["depths"]
    values = metrics.partial_comparing_function(a, b, depths)
    classification = metrics.classify_lazy_pair(a, b, depths)
    return {
        "depths": depths,
        "upperBounds": [fmt(v) for v in values],
        "nonincreasing": all(y <= x for x, y in zip(values, values[1:])),
        "classification": classification,
    }, 0


def _run_cauchy_demo(inputs: dict):
    report = metrics.cauchy_incompleteness_demo(inputs["indices"], inputs["pairs"])
    return report, 0 if report["demonstratesIncompleteness"] else 1


def _run_norms_partition(inputs: dict):
    return norms.build_partition(inputs["depth"]).to_json(), 0


def _run_norms_weights(inputs: dict):
    params = norms.NormFamilyParams.from_json(inputs["spec"])
    return {
        "spec": params.to_json(),
        "weights": norms.weight_function(params).to_json(),
    }, 0


def _run_norms_eval(inputs: dict):
    vec = norms.FSVector.from_dict(inputs["vector"])
    if inputs.get("spec") is not None:
        params = norms.NormFamilyParams.from_json(inputs["spec"])
        w = norms.weight_function(params)
    else:
        w = norms.WeightMap.from_json(inputs["weights"])
    return {"value": fmt(norms.eval_weighted_norm(w, vec))}, 0


def _run_norms_witness(inputs: dict):
    p = norms.NormFamilyParams.from_json(inputs["first"])
    q = norms.NormFamilyParams.from_json(inputs["second"])
    report = norms.independence_witness(p, q, parse_rational(inputs["eps"]))
    return report.to_json(), 0


def _run_norms_embed(inputs: dict):
    w = norms.WeightMap.from_json(inputs["weights"])
    points = [norms.FSVector.from_dict(doc) for doc in inputs["points"]]
    m = norms.embed_norm_to_metric(w, points)
    verdict = metrics.validate_metric(m)
    return {
        "matrix": m.to_json(),
        "validation": verdict.to_json(),
    }, 0 if verdict.passed else 1


def _run_axioms(inputs: dict):
    inst, sample, scalars = instances.build_instance(
        inputs["instance"],
        carrier=inputs["carrier"],
        depth=inputs["depth"],
        dim=inputs["dim"],
        seed=inputs["seed"],
        sample=inputs["sample"],
    )
    report = core.check_axioms(inst, sample, scalars, inputs["seed"])
    doc = report.to_json()
    ok = report.passed()
    if inputs.get("properties"):
        props = core.check_properties(inst, sample, scalars)
        doc["properties"] = props.to_json()["properties"]
    return doc, 0 if ok else 1


def _run_order(inputs: dict):
    universe = _universe_from_inline(inputs["universe"])
    inst = universe.instance
    action = inputs["action"]
    kind = inputs["universe"]["instance"]

    def element(doc):
        if kind == "metrics":
            return metrics.MetricMatrix.from_json(doc)
        return inst.element_from_json(doc)

    if action == "in-l":
        x, y = element(inputs["x"]), element(inputs["y"])
        cert = order.in_l(inst, x, y, universe)
        return cert.to_json(inst), 0 if cert.status == order.POSITIVE else 1
    if action == "indep":
        eps = inputs.get("eps")
        report = order.orderly_independent_set(
            inst, list(universe.elements),
            eps=None if eps is None else parse_rational(eps),
            universe=universe,
        )
        doc = report.to_json(inst)
        return doc, 0 if report.status.startswith("pass") else 1
    if action == "generates":
        B = [element(doc) for doc in inputs["generators"]]
        report = order.generates(inst, B, universe)
        return report.to_json(inst), 0 if report.status == "pass" else 1
    if action == "basis":
        B = [element(doc) for doc in inputs["generators"]]
        eps = inputs.get("eps")
        doc = order.is_basis(
            inst, B, universe,
            eps=None if eps is None else parse_rational(eps),
        )
        return doc, 0 if doc["status"].startswith("pass") else 1
    if action == "feasible":
        x = element(inputs["x"])
        doc = order.feasible_in_universe(inst, x, universe)
        return doc, 0 if doc["status"] == "pass" else 1
    raise InputError(f"unknown order action {action!r}")


_HANDLERS = {
    "validate": _run_validate,
    "combine": _run_combine,
    "compare": _run_compare,
    "transform": _run_transform,
    "builtin": _run_builtin,
    "partial-compare": _run_partial_compare,
    "cauchy-demo": _run_cauchy_demo,
    "norms-partition": _run_norms_partition,
    "norms-weights": _run_norms_weights,
    "norms-eval": _run_norms_eval,
    "norms-witness": _run_norms_witness,
    "norms-embed": _run_norms_embed,
    "axioms": _run_axioms,
    "order": _run_order,
}


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evs",
        description="Exact comparability of metrics and norms over ordered "
                    "semigroup structure.",
    )
    parser.add_argument("--format", choices=("json",), default="json",
                        help="report format (json only)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the metric axioms on a table")
    p.add_argument("matrix", help="matrix file (JSON or CSV)")

    p = sub.add_parser("combine", help="add or scale metric tables")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--add", metavar="B", help="second matrix file")
    group.add_argument("--scale", metavar="ALPHA", help="scalar p/q")
    p.add_argument("matrix", help="first matrix file")
    p.add_argument("--out", help="write the resulting matrix JSON here")

    p = sub.add_parser("compare", help="classify a pair by comparing values")
    p.add_argument("first")
    p.add_argument("second")

    p = sub.add_parser("transform", help="bounded or truncated companion metric")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--bounded", action="store_true")
    group.add_argument("--min", action="store_true")
    p.add_argument("matrix")
    p.add_argument("--out")

    p = sub.add_parser("builtin", help="materialize a named metric")
    p.add_argument("name", choices=list(metrics.BUILTIN_NAMES))
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--step", help="grid step p/q (usual-grid, kappa)")
    p.add_argument("--n", help="cauchy-dn index")
    p.add_argument("--points", help="JSON file with plane points (cauchy-dn)")
    p.add_argument("--out")

    p = sub.add_parser("partial-compare",
                       help="depth-indexed comparing bounds for lazy metrics")
    p.add_argument("--first", required=True, help='e.g. "discrete", '
                   '"usual-grid:step=1", "kappa", "usual"')
    p.add_argument("--second", required=True)
    p.add_argument("--depths", required=True, help="comma separated, increasing")
    p.add_argument("--points", help="plane points file for cauchy-dn specs")

    p = sub.add_parser("cauchy-demo",
                       help="Cauchy family whose pointwise limit is not a metric")
    p.add_argument("--indices", required=True, help="comma separated n values")
    p.add_argument("--pairs", required=True,
                   help="JSON file: list of [[u,u'],[v,v']] point pairs")

    p = sub.add_parser("norms", help="norm-family tooling")
    nsub = p.add_subparsers(dest="action", required=True)

    q = nsub.add_parser("partition", help="deterministic backbone/fiber split")
    q.add_argument("--depth", type=int, required=True)

    q = nsub.add_parser("weights", help="family weights on the enumerated prefix")
    q.add_argument("--spec", required=True, help="family spec JSON file")

    q = nsub.add_parser("eval", help="evaluate a weighted sup norm")
    q.add_argument("--spec", help="family spec JSON file")
    q.add_argument("--weights", help="explicit weight map JSON file")
    q.add_argument("--vector", required=True, help="vector JSON file")

    q = nsub.add_parser("witness", help="independence decay witnesses")
    q.add_argument("--spec", action="append", required=True,
                   help="family spec file; give exactly twice")
    q.add_argument("--eps", required=True)

    q = nsub.add_parser("embed", help="norm-induced metric on sample points")
    q.add_argument("--weights", required=True)
    q.add_argument("--points", required=True, help="JSON list of vector maps")
    q.add_argument("--out")

    p = sub.add_parser("axioms", help="seeded structure-axiom suite")
    p.add_argument("--instance", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--sample", type=int, default=50)
    p.add_argument("--carrier", type=int, default=6,
                   help="carrier size for metric instances")
    p.add_argument("--depth", type=int, default=12,
                   help="enumeration depth for the norms instance")
    p.add_argument("--dim", type=int, default=2,
                   help="dimension for cone/hyperspace")
    p.add_argument("--properties", action="store_true",
                   help="also run the named-property suite")

    p = sub.add_parser("order", help="testing-set tools over a universe")
    osub = p.add_subparsers(dest="action", required=True)
    for name in ("in-l", "indep", "generates", "basis", "feasible"):
        q = osub.add_parser(name)
        q.add_argument("--universe", required=True, help="universe manifest file")
        if name == "in-l":
            q.add_argument("--x", required=True)
            q.add_argument("--y", required=True)
        if name == "feasible":
            q.add_argument("--x", required=True)
        if name in ("generates", "basis"):
            q.add_argument("--generator", action="append", required=True,
                           help="generator element file; repeatable")
        if name in ("indep", "basis"):
            q.add_argument("--eps")

    return parser


def _resolve_inputs(args) -> tuple[str, dict]:
    cmd = args.command
    if cmd == "validate":
        return cmd, {"matrix": _load_matrix_doc(args.matrix)}
    if cmd == "combine":
        inputs = {"a": _load_matrix_doc(args.matrix)}
        if args.add:
            inputs.update(op="add", b=_load_matrix_doc(args.add), alpha=None)
        else:
            inputs.update(op="scale", b=None,
                          alpha=fmt(parse_rational(args.scale)))
        return cmd, inputs
    if cmd == "compare":
        return cmd, {"first": _load_matrix_doc(args.first),
                     "second": _load_matrix_doc(args.second)}
    if cmd == "transform":
        return cmd, {"kind": "bounded" if args.bounded else "min",
                     "matrix": _load_matrix_doc(args.matrix)}
    if cmd == "builtin":
        params = {}
        if args.step is not None:
            params["step"] = args.step
        if args.n is not None:
            params["n"] = args.n
        if args.points is not None:
            params["points"] = _load_json(args.points)
        return cmd, {"name": args.name, "params": params, "depth": args.depth}
    if cmd == "partial-compare":
        points_doc = _load_json(args.points) if args.points else None
        return cmd, {
            "first": _parse_lazy_spec(args.first, points_doc),
            "second": _parse_lazy_spec(args.second, points_doc),
            "depths": _parse_depths(args.depths),
        }
    if cmd == "cauchy-demo":
        return cmd, {"indices": _parse_depths(args.indices),
                     "pairs": _load_json(args.pairs)}
    if cmd == "norms":
        action = args.action
        if action == "partition":
            return "norms-partition", {"depth": args.depth}
        if action == "weights":
            return "norms-weights", {"spec": _load_json(args.spec)}
        if action == "eval":
            if (args.spec is None) == (args.weights is None):
                raise InputError("give exactly one of --spec / --weights")
            return "norms-eval", {
                "spec": _load_json(args.spec) if args.spec else None,
                "weights": _load_json(args.weights) if args.weights else None,
                "vector": _load_json(args.vector),
            }
        if action == "witness":
            if len(args.spec) != 2:
                raise InputError("witness needs exactly two --spec files")
            return "norms-witness", {
                "first": _load_json(args.spec[0]),
                "second": _load_json(args.spec[1]),
                "eps": fmt(parse_rational(args.eps)),
            }
        if action == "embed":
            return "norms-embed", {"weights": _load_json(args.weights),
                                   "points": _load_json(args.points)}
    if cmd == "axioms":
        return cmd, {
            "instance": args.instance,
            "seed": args.seed,
            "sample": args.sample,
            "carrier": args.carrier,
            "depth": args.depth,
            "dim": args.dim,
            "properties": bool(args.properties),
        }
    if cmd == "order":
        inline = _universe_inline(args.universe)
        kind = inline["instance"]
        inputs = {"action": args.action, "universe": inline}
        if args.action == "in-l":
            inputs["x"] = _element_doc(kind, args.x)
            inputs["y"] = _element_doc(kind, args.y)
        if args.action == "feasible":
            inputs["x"] = _element_doc(kind, args.x)
        if args.action in ("generates", "basis"):
            inputs["generators"] = [
                _element_doc(kind, path) for path in args.generator
            ]
        if args.action in ("indep", "basis") and args.eps is not None:
            inputs["eps"] = fmt(parse_rational(args.eps))
        return cmd, inputs
    raise InputError(f"unknown command {cmd!r}")


def _element_doc(kind: str, path: str):
    if kind == "metrics":
        return _load_matrix_doc(path)
    return _load_json(path)


def _emit(doc: dict, out_path=None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True)
    print(text)
    if out_path:
        matrix = doc["report"].get("matrix")
        if matrix is not None:
            Path(out_path).write_text(
                json.dumps(matrix, indent=2, sort_keys=True) + "\n",
                encoding="utf-8",
            )


def _replay(path: str) -> int:
    doc = _load_json(path)
    if not isinstance(doc, dict) or "command" not in doc or "report" not in doc:
        raise InputError("not a replayable report (missing command/report)")
    handler = _HANDLERS.get(doc["command"])
    if handler is None:
        raise InputError(f"unknown command in report: {doc['command']!r}")
    fresh, code = handler(doc["inputs"])
    match = fresh == doc["report"]
    print(json.dumps({
        "replay": True,
        "command": doc["command"],
        "match": match,
    }, indent=2, sort_keys=True))
    return 0 if match else 1


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        if argv and argv[0] == "--replay":
            if len(argv) != 2:
                raise InputError("--replay takes exactly one report file")
            return _replay(argv[1])
        parser = _build_parser()
        args = parser.parse_args(argv)
        command, inputs = _resolve_inputs(args)
        report, code = _HANDLERS[command](inputs)
        _emit({"command": command, "inputs": inputs, "report": report},
              getattr(args, "out", None))
        return code
    except InputError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

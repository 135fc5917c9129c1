"""Command-line front end: JSON in, deterministic text or JSON reports out.

Exit codes: 0 success, 2 validation error (including bad usage), 3 catalog
incomplete.  Identical inputs produce byte-identical reports, modulo the
version banner (suppressible with --no-banner; JSON output never carries it).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .catalog import ActionCatalog, catalog_from_json, ensure_valid_catalog
from .errors import CatalogIncompleteError, ValidationError
from .fixtures import (
    catalog_names,
    center_names,
    fixture_catalog,
    fixture_center,
    fixture_model,
    model_names,
)
from .groups import FiniteGroup, Subgroup, build_group
from .models import (
    ModelDescription,
    center_from_json,
    class_of_action,
    invariant_I,
    invariant_counts,
    model_from_json,
    verdict,
    verify_blowup_invariance,
)
from .relations import (
    FilterSpec,
    classes_equal,
    filter_project,
    filtered_structure,
    generate_relations,
    phi_G,
    relation_lattice,
    structure,
)
from .symbols import BurnsideClass, Symbol, canonicalize, carrier_quotient, text_form


def _load_json_arg(arg: str) -> dict:
    if os.path.exists(arg):
        with open(arg, "r", encoding="utf-8") as fh:
            return json.load(fh)
    stripped = arg.strip()
    if stripped.startswith("{"):
        return json.loads(stripped)
    raise ValidationError(f"not a file or inline JSON object: {arg!r}")


def load_group(arg: str) -> FiniteGroup:
    return build_group(_load_json_arg(arg))


def _fixture_or_json(arg: str, kind: str, names):
    try:
        return _load_json_arg(arg)
    except ValidationError:
        raise ValidationError(
            f"unknown {kind} fixture or file {arg!r}; available fixtures: {', '.join(names())}"
        ) from None


def load_catalog(arg: str) -> ActionCatalog:
    if arg in catalog_names():
        return fixture_catalog(arg)
    data = _fixture_or_json(arg, "catalog", catalog_names)
    return ensure_valid_catalog(catalog_from_json(data, name=arg))


def load_model(arg: str) -> ModelDescription:
    if arg in model_names():
        return fixture_model(arg)
    data = _fixture_or_json(arg, "model", model_names)
    return model_from_json(data, fixture_catalog)


def load_center(arg: str):
    if arg in center_names():
        return fixture_center(arg)
    data = _fixture_or_json(arg, "center", center_names)
    return center_from_json(data)


def _symbol_from_json(data: dict, G: FiniteGroup, catalog: ActionCatalog) -> Symbol:
    try:
        kind = str(data["kind"])
        h = tuple(int(x) for x in data["h"])
        y_reps = tuple(int(x) for x in data.get("y_reps", [0]))
        action = str(data["action"])
        weights = tuple(tuple(int(c) for c in w) for w in data.get("weights", []))
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed symbol JSON: {exc!r}") from exc
    Q = carrier_quotient(G, h, kind)
    bad = [x for x in y_reps if x not in Q.coset_of]
    if bad:
        raise ValidationError(f"y_reps elements {bad} do not centralize/normalize the stabilizer {h}")
    y = Subgroup.generated(Q.group, Q.image(y_reps)).elements
    return canonicalize(Symbol(kind, h, y, action, weights), G, catalog)


def load_class(arg: str, G: FiniteGroup, catalog: ActionCatalog) -> BurnsideClass:
    data = _load_json_arg(arg)
    total = BurnsideClass.zero()
    for term in data.get("terms", []):
        coeff = int(term.get("coeff", 1))
        total = total + BurnsideClass.of(_symbol_from_json(term["symbol"], G, catalog), coeff)
    return total


def _class_json(cls: BurnsideClass, G: FiniteGroup) -> list[dict]:
    return [{"symbol": text_form(s, G), "coeff": c} for s, c in cls.terms()]


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        if not args.no_banner:
            print(f"burnloc {__version__}")
        for line in text_lines:
            print(line)


def _cmd_structure(args) -> int:
    G = load_group(args.group)
    catalog = load_catalog(args.catalog)
    if args.filter == "max-stabilizer":
        result = filtered_structure(G, catalog, FilterSpec.max_stabilizer(G))
    else:
        result = structure(G, catalog)
    payload = result.to_json()
    torsion = ", ".join(map(str, result.torsion)) or "(none)"
    _emit(args, payload, [f"free rank: {result.free_rank}", f"torsion: {torsion}"])
    return 0


def _cmd_relations(args) -> int:
    G = load_group(args.group)
    catalog = load_catalog(args.catalog)
    relations = generate_relations(G, catalog)
    by_rule: dict[str, int] = {}
    for rel in relations:
        by_rule[rel.rule] = by_rule.get(rel.rule, 0) + 1
    if args.dump:
        payload = {
            "relations": [
                {
                    "rule": rel.rule,
                    "params": dict(rel.params),
                    "terms": _class_json(rel.vector, G),
                }
                for rel in relations
            ]
        }
        lines = [rel.describe(G) for rel in relations]
    else:
        payload = {"count": len(relations), "by_rule": by_rule}
        lines = [f"relations: {len(relations)}"] + [
            f"  {rule}: {count}" for rule, count in sorted(by_rule.items())
        ]
    _emit(args, payload, lines)
    return 0


def _cmd_class(args) -> int:
    m = load_model(args.model)
    cls = class_of_action(m)
    payload = {"model": m.name or "(inline)", "class": _class_json(cls, m.group)}
    lines = [f"{c:+d} {text_form(s, m.group)}" for s, c in cls.terms()] or ["0"]
    _emit(args, payload, lines)
    return 0


def _cmd_equal(args) -> int:
    G = load_group(args.group)
    catalog = load_catalog(args.catalog)
    a = load_class(args.a, G, catalog)
    b = load_class(args.b, G, catalog)
    lattice = relation_lattice(G, catalog)
    result = classes_equal(a, b, lattice)
    _emit(args, {"equal": result}, ["true" if result else "false"])
    return 0


def _parse_counts(raw: str) -> tuple[int, int, int]:
    parts = raw.split(",")
    if len(parts) != 3:
        raise ValidationError("--counts takes three comma-separated integers, e.g. 0,1,0")
    try:
        c = tuple(int(p) for p in parts)
    except ValueError:
        raise ValidationError(f"--counts entries must be integers: {raw!r}") from None
    return c


def _cmd_invariant(args) -> int:
    if (args.counts is None) == (args.model is None):
        raise ValidationError("invariant takes exactly one of --counts or --model")
    if args.counts is not None:
        i1, i2, i3 = _parse_counts(args.counts)
    else:
        i1, i2, i3 = invariant_counts(load_model(args.model))
    value = invariant_I(i1, i2, i3)
    obstructed = value != 0
    payload = {"I1": i1, "I2": i2, "I3": i3, "I": value, "obstructed": obstructed}
    lines = [
        f"counts: I1={i1} I2={i2} I3={i3}",
        f"I = -I1 - 2*I2 + I3 = {value}",
        "verdict: OBSTRUCTED (not linearizable, not projectively linearizable)"
        if obstructed
        else "verdict: NO OBSTRUCTION FROM THIS INVARIANT",
    ]
    _emit(args, payload, lines)
    return 0


def _cmd_verdict(args) -> int:
    report = verdict(load_model(args.model))
    _emit(args, report.to_json(), report.to_text().splitlines())
    return 0


def _cmd_verify_blowup(args) -> int:
    m = load_model(args.model)
    center = load_center(args.center)
    holds = verify_blowup_invariance(m, center)
    _emit(args, {"holds": holds}, ["true" if holds else "false"])
    return 0


def _cmd_phi(args) -> int:
    G = load_group(args.group)
    catalog = load_catalog(args.catalog)
    cls = load_class(getattr(args, "class"), G, catalog)
    projected = filter_project(cls, FilterSpec.max_stabilizer(G), G, catalog)
    value = phi_G(projected, G, catalog)
    payload = {"phi": value, "filtered_class": _class_json(projected, G)}
    _emit(args, payload, [f"phi = {value}"])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="burnloc",
        description="Exact calculator for curve-localized equivariant Burnside groups.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report instead of text")
    common.add_argument("--no-banner", action="store_true", help="suppress the version banner in text output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **help_):
        p = sub.add_parser(name, parents=[common], help=help_.get("help"))
        p.set_defaults(fn=fn)
        return p

    p = add("structure", _cmd_structure, help="free rank and torsion of the symbol group modulo relations")
    p.add_argument("--group", required=True, help="group JSON (file, inline, e.g. {\"kind\":\"cyclic\",\"n\":2})")
    p.add_argument("--catalog", required=True, help="catalog fixture name or JSON file")
    p.add_argument("--filter", choices=["max-stabilizer"], help="restrict to maximal-stabilizer symbols")

    p = add("relations", _cmd_relations, help="generated relation instances with provenance")
    p.add_argument("--group", required=True)
    p.add_argument("--catalog", required=True)
    p.add_argument("--dump", action="store_true", help="emit every relation instance")

    p = add("class", _cmd_class, help="class of a model as a symbol combination")
    p.add_argument("--model", required=True, help="model fixture name or JSON file")

    p = add("equal", _cmd_equal, help="decide equality of two classes modulo relations")
    p.add_argument("--group", required=True)
    p.add_argument("--catalog", required=True)
    p.add_argument("--a", required=True, help="class JSON file")
    p.add_argument("--b", required=True, help="class JSON file")

    p = add("invariant", _cmd_invariant, help="the counts invariant I = -I1 - 2*I2 + I3")
    p.add_argument("--counts", help="I1,I2,I3")
    p.add_argument("--model", help="model fixture name or JSON file")

    p = add("verdict", _cmd_verdict, help="full linearizability obstruction report for a model")
    p.add_argument("--model", required=True)

    p = add("verify-blowup", _cmd_verify_blowup, help="check class invariance under a blow-up center")
    p.add_argument("--model", required=True)
    p.add_argument("--center", required=True, help="center fixture name or JSON file")

    p = add("phi", _cmd_phi, help="degree map on the maximal-stabilizer projection of a class")
    p.add_argument("--group", required=True)
    p.add_argument("--catalog", required=True)
    p.add_argument("--class", required=True, dest="class", help="class JSON file")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CatalogIncompleteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

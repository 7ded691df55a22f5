"""Workspace files, serialization and the command-line interface.

One JSON schema describes every structure: arrows always carry explicit
source and target, and composition tables are exhaustive lists of triples.
Artifacts are written with sorted keys and a fixed layout so identical
inputs produce byte-identical files; wall-clock timing goes to stderr only.

Exit codes: 0 for a positive outcome, 1 for a negative mathematical
outcome, 2 for usage errors, unresolved references or an enumeration cap.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from .colimit import (
    ColimCategory,
    ColimObject,
    CompositeTerm,
    Glue,
    LemmaInstance,
    NotSigmaFiltered,
    Premorphism,
    build_colimit,
    check_universal_property,
    enumerate_glues,
    enumerate_objects,
    enumerate_premorphisms,
    eval_term,
    lemma_engine,
)
from .diagram import CatDiagram, DiagramNatTransf, validate_diagram, validate_diagram_transf
from .exactness import diamond_cotensor, diamond_product, diamond_pseudoeq
from .filtered import is_sigma_filtered, sigma_cone_search, validate_cone
from .fincat import FinCategory, Functor, InputError, NatTransf, validate_category, validate_functor
from .two_cat import (
    ArrowGen,
    CellGen,
    Fin2Category,
    SigmaClass,
    TwoComputad,
    free_2category,
    two_functor_from_generators,
    validate_2category,
    validate_computad,
    validate_sigma,
)

SCHEMA_VERSION = 1

WORKSPACE_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "sigmacolim workspace",
    "type": "object",
    "required": ["schema_version"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "categories": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["objects", "arrows", "identities", "composition"],
                "properties": {
                    "objects": {"type": "array", "items": {"type": "string"}},
                    "arrows": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["name", "source", "target"],
                            "properties": {
                                "name": {"type": "string"},
                                "source": {"type": "string"},
                                "target": {"type": "string"},
                            },
                        },
                    },
                    "identities": {"type": "object"},
                    "composition": {
                        "type": "array",
                        "items": {
                            "type": "array",
                            "minItems": 3,
                            "maxItems": 3,
                            "items": {"type": "string"},
                        },
                    },
                },
            },
        },
        "two_categories": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["objects", "homs", "identity_cells", "horizontal_composition"],
                "properties": {
                    "objects": {"type": "array", "items": {"type": "string"}},
                    "homs": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["source", "target", "category"],
                        },
                    },
                    "identity_cells": {"type": "object"},
                    "horizontal_composition": {
                        "type": "object",
                        "required": ["one_cells", "two_cells"],
                    },
                },
            },
        },
        "sigma_classes": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["two_category", "members"],
            },
        },
        "diagrams": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["index", "sigma", "values", "functors"],
            },
        },
        "diagram_transformations": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["source", "target", "components"],
            },
        },
        "computads": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["objects", "arrows", "cells"],
            },
        },
        "shape_functors": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["computad", "two_category", "objects", "arrows", "cells"],
            },
        },
        "lemma_instances": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["premorphisms"],
            },
        },
    },
}


class WorkspaceError(InputError):
    """A workspace file failed parsing, validation or cross-referencing."""


@dataclass
class Workspace:
    path: str
    digest: str
    categories: dict[str, FinCategory] = field(default_factory=dict)
    two_categories: dict[str, Fin2Category] = field(default_factory=dict)
    sigma_classes: dict[str, SigmaClass] = field(default_factory=dict)
    diagrams: dict[str, CatDiagram] = field(default_factory=dict)
    diagram_transformations: dict[str, DiagramNatTransf] = field(default_factory=dict)
    computads: dict[str, TwoComputad] = field(default_factory=dict)
    shape_functors: dict = field(default_factory=dict)
    lemma_instances: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def category_to_json(C: FinCategory) -> dict:
    return {
        "objects": list(C.objects),
        "arrows": [
            {"name": f, "source": s, "target": t}
            for f, (s, t) in sorted(C.arrows.items())
        ],
        "identities": {x: C.identity[x] for x in C.objects},
        "composition": sorted([g, f, c] for (g, f), c in C.composition.items()),
    }


def category_from_json(name: str, data: dict) -> FinCategory:
    return FinCategory(
        name=name,
        objects=list(data["objects"]),
        arrows={a["name"]: (a["source"], a["target"]) for a in data["arrows"]},
        identity=dict(data["identities"]),
        composition={(g, f): c for g, f, c in data["composition"]},
    )


def two_category_to_json(A: Fin2Category, hom_names: dict[tuple[str, str], str]) -> dict:
    return {
        "objects": list(A.objects),
        "homs": [
            {"source": s, "target": t, "category": hom_names[(s, t)]}
            for (s, t) in sorted(A.hom)
        ],
        "identity_cells": {X: A.identity_1cell[X] for X in A.objects},
        "horizontal_composition": {
            "one_cells": sorted([g, f, c] for (g, f), c in A.hcompose1.items()),
            "two_cells": sorted([b, a, c] for (b, a), c in A.hcompose2.items()),
        },
    }


def functor_to_json(F: Functor) -> dict:
    return {
        "objects": {x: F.object_map[x] for x in sorted(F.object_map)},
        "arrows": {f: F.arrow_map[f] for f in sorted(F.arrow_map)},
    }


def diagram_to_json(F: CatDiagram, index_name: str, sigma_name: str, value_names: dict[str, str]) -> dict:
    out = {
        "index": index_name,
        "sigma": sigma_name,
        "values": {X: value_names[X] for X in sorted(value_names)},
        "functors": {u: functor_to_json(f) for u, f in sorted(F.on_1cells.items())},
        "transformations": {
            a: {"components": dict(sorted(t.components.items()))}
            for a, t in sorted(F.on_2cells.items())
        },
    }
    return out


def transformation_to_json(t: DiagramNatTransf, source: str, target: str) -> dict:
    return {
        "source": source,
        "target": target,
        "components": {X: functor_to_json(f) for X, f in sorted(t.components.items())},
    }


def computad_to_json(K: TwoComputad) -> dict:
    return {
        "objects": list(K.objects),
        "arrows": [
            {"name": a.name, "source": a.source, "target": a.target, "marked": a.in_sigma}
            for a in K.arrows
        ],
        "cells": [
            {"name": c.name, "source": list(c.source), "target": list(c.target)}
            for c in K.cells
        ],
    }


def workspace_roundtrip_json(ws: Workspace) -> dict:
    """Re-serialize a loaded workspace from its objects (references and
    sections that are pure data are taken from the parsed file)."""
    categories = {n: category_to_json(C) for n, C in sorted(ws.categories.items())}
    two_categories = {}
    for n, A in sorted(ws.two_categories.items()):
        hom_names = {
            (h["source"], h["target"]): h["category"]
            for h in ws.raw["two_categories"][n]["homs"]
        }
        two_categories[n] = two_category_to_json(A, hom_names)
    out = {"schema_version": SCHEMA_VERSION}
    if categories:
        out["categories"] = categories
    if two_categories:
        out["two_categories"] = two_categories
    if ws.sigma_classes:
        out["sigma_classes"] = {
            n: {
                "two_category": ws.raw["sigma_classes"][n]["two_category"],
                "members": sorted(S.members),
            }
            for n, S in sorted(ws.sigma_classes.items())
        }
    if ws.diagrams:
        out["diagrams"] = {
            n: diagram_to_json(
                F,
                ws.raw["diagrams"][n]["index"],
                ws.raw["diagrams"][n]["sigma"],
                dict(ws.raw["diagrams"][n]["values"]),
            )
            for n, F in sorted(ws.diagrams.items())
        }
    if ws.diagram_transformations:
        out["diagram_transformations"] = {
            n: transformation_to_json(
                t,
                ws.raw["diagram_transformations"][n]["source"],
                ws.raw["diagram_transformations"][n]["target"],
            )
            for n, t in sorted(ws.diagram_transformations.items())
        }
    if ws.computads:
        out["computads"] = {
            n: computad_to_json(K) for n, K in sorted(ws.computads.items())
        }
    if ws.shape_functors:
        out["shape_functors"] = {n: s for n, s in sorted(ws.shape_functors.items())}
    if ws.lemma_instances:
        out["lemma_instances"] = {n: s for n, s in sorted(ws.lemma_instances.items())}
    return out


def workspace_to_json(
    categories: dict[str, FinCategory],
    two_categories: dict[str, tuple[Fin2Category, dict]],
    sigma_classes: dict[str, tuple[str, SigmaClass]],
    diagrams: Optional[dict] = None,
    diagram_transformations: Optional[dict] = None,
    computads: Optional[dict] = None,
    shape_functors: Optional[dict] = None,
    lemma_instances: Optional[dict] = None,
) -> dict:
    out = {"schema_version": SCHEMA_VERSION}
    if categories:
        out["categories"] = {n: category_to_json(C) for n, C in sorted(categories.items())}
    if two_categories:
        out["two_categories"] = {
            n: two_category_to_json(A, hom_names)
            for n, (A, hom_names) in sorted(two_categories.items())
        }
    if sigma_classes:
        out["sigma_classes"] = {
            n: {"two_category": owner, "members": sorted(S.members)}
            for n, (owner, S) in sorted(sigma_classes.items())
        }
    for key, value in [
        ("diagrams", diagrams),
        ("diagram_transformations", diagram_transformations),
        ("computads", computads),
        ("shape_functors", shape_functors),
        ("lemma_instances", lemma_instances),
    ]:
        if value:
            out[key] = value
    return out


def dump_json(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# loading
# ---------------------------------------------------------------------------


def resolve_workspace_path(path: str) -> str:
    if os.path.exists(path):
        return path
    env = os.environ.get("SIGMACOLIM_FIXTURES")
    if env:
        candidate = os.path.join(env, path)
        if os.path.exists(candidate):
            return candidate
    bundled = os.path.join(os.path.dirname(__file__), "data", path)
    if os.path.exists(bundled):
        return bundled
    raise WorkspaceError(f"workspace file not found: {path}")


def load_workspace(path: str) -> Workspace:
    """Parse, validate and cross-reference one workspace file.

    Parse errors carry line and column; validation failures aggregate every
    module-level violation with its location.
    """
    real = resolve_workspace_path(path)
    with open(real, "rb") as fh:
        raw_bytes = fh.read()
    digest = hashlib.sha256(raw_bytes).hexdigest()
    try:
        data = json.loads(raw_bytes.decode("utf-8"))
    except json.JSONDecodeError as e:
        raise WorkspaceError(
            f"{path}: parse error at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from None
    try:
        import jsonschema

        jsonschema.validate(data, WORKSPACE_SCHEMA)
    except jsonschema.ValidationError as e:  # type: ignore[attr-defined]
        raise WorkspaceError(f"{path}: schema violation at {list(e.path)}: {e.message}")

    ws = Workspace(path=path, digest=digest, raw=data)
    problems: list[str] = []

    for name, spec in sorted(data.get("categories", {}).items()):
        C = category_from_json(name, spec)
        for v in validate_category(C):
            problems.append(f"categories.{name}: {v}")
        ws.categories[name] = C

    for name, spec in sorted(data.get("two_categories", {}).items()):
        homs = {}
        ok = True
        for h in spec["homs"]:
            ref = h["category"]
            if ref not in ws.categories:
                problems.append(f"two_categories.{name}: unresolved category {ref}")
                ok = False
                continue
            homs[(h["source"], h["target"])] = ws.categories[ref]
        if not ok:
            continue
        A = Fin2Category(
            name=name,
            objects=list(spec["objects"]),
            hom=homs,
            identity_1cell=dict(spec["identity_cells"]),
            hcompose1={
                (g, f): c for g, f, c in spec["horizontal_composition"]["one_cells"]
            },
            hcompose2={
                (b, a): c for b, a, c in spec["horizontal_composition"]["two_cells"]
            },
        )
        for v in validate_2category(A):
            problems.append(f"two_categories.{name}: {v}")
        ws.two_categories[name] = A

    for name, spec in sorted(data.get("sigma_classes", {}).items()):
        owner = spec["two_category"]
        if owner not in ws.two_categories:
            problems.append(f"sigma_classes.{name}: unresolved two-category {owner}")
            continue
        S = SigmaClass(ws.two_categories[owner], set(spec["members"]))
        for v in validate_sigma(S):
            problems.append(f"sigma_classes.{name}: {v}")
        ws.sigma_classes[name] = S

    for name, spec in sorted(data.get("diagrams", {}).items()):
        diagram = _load_diagram(ws, name, spec, problems)
        if diagram is not None:
            ws.diagrams[name] = diagram

    for name, spec in sorted(data.get("diagram_transformations", {}).items()):
        t = _load_transformation(ws, name, spec, problems)
        if t is not None:
            ws.diagram_transformations[name] = t

    for name, spec in sorted(data.get("computads", {}).items()):
        K = TwoComputad(
            name=name,
            objects=list(spec["objects"]),
            arrows=[
                ArrowGen(a["name"], a["source"], a["target"], bool(a.get("marked")))
                for a in spec["arrows"]
            ],
            cells=[
                CellGen(c["name"], tuple(c["source"]), tuple(c["target"]))
                for c in spec["cells"]
            ],
        )
        for v in validate_computad(K):
            problems.append(f"computads.{name}: {v}")
        ws.computads[name] = K

    for name, spec in sorted(data.get("shape_functors", {}).items()):
        ws.shape_functors[name] = spec
        if spec["computad"] not in ws.computads:
            problems.append(f"shape_functors.{name}: unresolved computad {spec['computad']}")
        if spec["two_category"] not in ws.two_categories:
            problems.append(
                f"shape_functors.{name}: unresolved two-category {spec['two_category']}"
            )

    for name, spec in sorted(data.get("lemma_instances", {}).items()):
        ws.lemma_instances[name] = spec
        for i, p in enumerate(spec.get("premorphisms", [])):
            if p.get("diagram") not in ws.diagrams:
                problems.append(
                    f"lemma_instances.{name}.premorphisms[{i}]: unresolved diagram"
                )

    if problems:
        raise WorkspaceError(f"{path}: " + "; ".join(problems))
    return ws


def _load_diagram(ws, name, spec, problems) -> Optional[CatDiagram]:
    if spec["index"] not in ws.two_categories or spec["sigma"] not in ws.sigma_classes:
        problems.append(f"diagrams.{name}: unresolved index or marked class")
        return None
    A = ws.two_categories[spec["index"]]
    S = ws.sigma_classes[spec["sigma"]]
    values = {}
    for X, ref in spec["values"].items():
        if ref not in ws.categories:
            problems.append(f"diagrams.{name}: unresolved value category {ref}")
            return None
        values[X] = ws.categories[ref]
    on_1cells = {}
    for u, fdata in spec["functors"].items():
        if u not in A._pair_of_1cell:
            problems.append(f"diagrams.{name}: unknown 1-cell {u}")
            return None
        src, tgt = A._pair_of_1cell[u]
        on_1cells[u] = Functor(values[src], values[tgt], dict(fdata["objects"]), dict(fdata["arrows"]))
    on_2cells = {}
    for a, tdata in spec.get("transformations", {}).items():
        if a not in A._pair_of_2cell:
            problems.append(f"diagrams.{name}: unknown 2-cell {a}")
            return None
        u, v = A.src2(a), A.tgt2(a)
        on_2cells[a] = NatTransf(on_1cells[u], on_1cells[v], dict(tdata["components"]))
    F = CatDiagram(
        name=name, index=A, sigma=S, on_objects=values, on_1cells=on_1cells, on_2cells=on_2cells
    )
    for v in validate_diagram(F):
        problems.append(f"diagrams.{name}: {v}")
    return F


def _load_transformation(ws, name, spec, problems) -> Optional[DiagramNatTransf]:
    if spec["source"] not in ws.diagrams or spec["target"] not in ws.diagrams:
        problems.append(f"diagram_transformations.{name}: unresolved diagram")
        return None
    F, G = ws.diagrams[spec["source"]], ws.diagrams[spec["target"]]
    comps = {}
    for X, fdata in spec["components"].items():
        comps[X] = Functor(
            F.on_objects[X], G.on_objects[X], dict(fdata["objects"]), dict(fdata["arrows"])
        )
    t = DiagramNatTransf(name, F, G, comps)
    for v in validate_diagram_transf(t):
        problems.append(f"diagram_transformations.{name}: {v}")
    return t


def build_shape_functor(ws: Workspace, name: str):
    spec = ws.shape_functors[name]
    free = free_2category(ws.computads[spec["computad"]])
    A = ws.two_categories[spec["two_category"]]
    G = two_functor_from_generators(
        free, A, dict(spec["objects"]), dict(spec["arrows"]), dict(spec["cells"])
    )
    return G, free


def build_lemma_instance(ws: Workspace, name: str) -> LemmaInstance:
    spec = ws.lemma_instances[name]
    diagrams = []
    prems = []
    for p in spec["premorphisms"]:
        F = ws.diagrams[p["diagram"]]
        diagrams.append(F)
        prems.append(
            Premorphism(
                ColimObject(p["source"][1], p["source"][0]),
                ColimObject(p["target"][1], p["target"][0]),
                p["left"],
                p["right"],
                p["apex"],
                p["arrow"],
            )
        )
    inst = LemmaInstance(diagrams, prems)

    def parse_term(t):
        if isinstance(t, int):
            return t
        glue = t["glue"]
        inner = parse_term(t["inner"])
        outer = parse_term(t["outer"])
        if glue == "auto":
            F1, pi = eval_term(inst, inner)
            _, po = eval_term(inst, outer)
            found = enumerate_glues(F1, po, pi, limit=1)
            if not found:
                raise WorkspaceError("no glue exists for a requested composite")
            g = found[0]
        else:
            g = Glue(glue["inner_leg"], glue["outer_leg"], glue["cell"])
        return CompositeTerm(outer=outer, inner=inner, glue=g)

    inst.terms = [parse_term(t) for t in spec.get("terms", [])]
    inst.equations = [
        (parse_term(a), parse_term(b)) for a, b in spec.get("equations", [])
    ]
    return inst


# ---------------------------------------------------------------------------
# reports and artifacts
# ---------------------------------------------------------------------------


@dataclass
class RunReport:
    command: str
    input_digest: str
    outcome: str  # "positive" | "negative" | "undecided"
    details: dict = field(default_factory=dict)
    caps_hit: list[str] = field(default_factory=list)
    elapsed_seconds: float = 0.0  # stderr only, never serialized

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "input_digest": self.input_digest,
            "outcome": self.outcome,
            "details": self.details,
            "caps_hit": self.caps_hit,
        }


def write_artifacts(out_dir: str, name: str, report: RunReport, text: str) -> None:
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, f"{name}.json"), "w") as fh:
        fh.write(dump_json(report.to_json()))
    with open(os.path.join(out_dir, f"{name}.txt"), "w") as fh:
        fh.write(text if text.endswith("\n") else text + "\n")


def colim_to_json(L: ColimCategory) -> dict:
    return {
        "category": category_to_json(L.category),
        "classes": {
            rep.ident(): [m.ident() for m in members]
            for rep, members in sorted(
                L.classes.items(), key=lambda kv: kv[0].ident()
            )
        },
        "closure_added_pairs": L.closure_added_pairs,
        "lambda": {
            "components": {
                A: functor_to_json(f) for A, f in sorted(L.lam.components.items())
            },
            "structural": {
                u: dict(sorted(t.components.items()))
                for u, t in sorted(L.lam.structural.items())
            },
        },
    }


def class_table_text(L: ColimCategory) -> str:
    lines = [f"colimit of {L.diagram.name}: "
             f"{len(L.category.objects)} objects, {len(L.category.arrows)} arrows"]
    lines.append(f"closure added pairs: {L.closure_added_pairs}")
    for rep, members in sorted(L.classes.items(), key=lambda kv: kv[0].ident()):
        lines.append(f"class {rep.ident()}")
        for m in members:
            lines.append(f"  {m.ident()}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_validate(ws: Workspace, args) -> tuple[RunReport, str]:
    counts = {
        "categories": len(ws.categories),
        "two_categories": len(ws.two_categories),
        "sigma_classes": len(ws.sigma_classes),
        "diagrams": len(ws.diagrams),
        "diagram_transformations": len(ws.diagram_transformations),
        "computads": len(ws.computads),
    }
    report = RunReport("validate", ws.digest, "positive", {"counts": counts})
    text = "all declarations valid\n" + "\n".join(
        f"{k}: {v}" for k, v in sorted(counts.items())
    )
    return report, text


def cmd_check_filtered(ws: Workspace, args) -> tuple[RunReport, str]:
    A = ws.two_categories[args.two_category]
    S = ws.sigma_classes[args.sigma]
    rep = is_sigma_filtered(A, S, require_source_marked_f2=args.strict_f2)
    details = {"failed_axioms": rep.failed_axioms}
    for name, ax in rep.axiom_reports.items():
        if not ax.holds:
            details[f"{name}_counterexample"] = list(ax.counterexample)
    out = RunReport(
        "check-filtered", ws.digest, "positive" if rep.holds else "negative", details
    )
    if rep.holds:
        text = f"pair ({args.two_category}, {args.sigma}) is filtered"
    else:
        text = (
            f"pair ({args.two_category}, {args.sigma}) is not filtered; "
            f"failing: {', '.join(rep.failed_axioms)}"
        )
    return out, text


def cmd_find_cone(ws: Workspace, args) -> tuple[RunReport, str]:
    G, _ = build_shape_functor(ws, args.shape_functor)
    S = ws.sigma_classes[args.sigma]
    cone = sigma_cone_search(G, S)
    if cone is None:
        return (
            RunReport("find-cone", ws.digest, "negative", {"cone": None}),
            "no marked cone exists",
        )
    details = {
        "vertex": cone.vertex,
        "components": dict(sorted(cone.components.items())),
        "structural": dict(sorted(cone.structural.items())),
    }
    text = "\n".join(
        [f"vertex: {cone.vertex}"]
        + [f"component {k}: {v}" for k, v in sorted(cone.components.items())]
        + [f"structural {k}: {v}" for k, v in sorted(cone.structural.items())]
    )
    return RunReport("find-cone", ws.digest, "positive", details), text


def _premorphism_total(F: CatDiagram) -> int:
    objs = enumerate_objects(F)
    return sum(
        len(enumerate_premorphisms(F, s, t)) for s in objs for t in objs
    )


def cmd_colimit(ws: Workspace, args) -> tuple[RunReport, str]:
    F = ws.diagrams[args.diagram]
    total = _premorphism_total(F)
    if total > args.max_premorphisms:
        return (
            RunReport(
                "colimit",
                ws.digest,
                "undecided",
                {"premorphisms": total},
                caps_hit=[f"max-premorphisms={args.max_premorphisms}"],
            ),
            f"cap hit: {total} premorphisms exceed the limit",
        )
    try:
        L = build_colimit(F)
    except NotSigmaFiltered as e:
        return (
            RunReport("colimit", ws.digest, "negative", {"reason": str(e)}),
            f"rejected: {e}",
        )
    report = RunReport("colimit", ws.digest, "positive", colim_to_json(L))
    return report, class_table_text(L)


def cmd_universal_check(ws: Workspace, args) -> tuple[RunReport, str]:
    F = ws.diagrams[args.diagram]
    E = ws.categories[args.target]
    try:
        L = build_colimit(F)
    except NotSigmaFiltered as e:
        return (
            RunReport("universal-check", ws.digest, "negative", {"reason": str(e)}),
            f"rejected: {e}",
        )
    rep = check_universal_property(L, E, max_functors=args.max_functors)
    details = {
        "functors": rep.functor_count,
        "cones": rep.cone_count,
        "objects_bijective": rep.objects_bijective,
        "arrows_bijective": rep.arrows_bijective,
    }
    if rep.capped:
        return (
            RunReport(
                "universal-check",
                ws.digest,
                "undecided",
                details,
                caps_hit=[f"max-functors={args.max_functors}"],
            ),
            "cap hit: too many functors to enumerate",
        )
    outcome = "positive" if rep.holds else "negative"
    text = (
        f"functors: {rep.functor_count}, cones: {rep.cone_count}, "
        f"objects bijective: {rep.objects_bijective}, arrows bijective: {rep.arrows_bijective}"
    )
    return RunReport("universal-check", ws.digest, outcome, details), text


def cmd_commute(ws: Workspace, args) -> tuple[RunReport, str]:
    if args.kind == "cotensor":
        inst = diamond_cotensor(ws.diagrams[args.diagram], ws.categories[args.weight])
    elif args.kind == "product":
        inst = diamond_product(ws.diagrams[args.diagram], ws.diagrams[args.diagram2])
    else:
        inst = diamond_pseudoeq(
            ws.diagrams[args.source],
            ws.diagrams[args.target],
            ws.diagram_transformations[args.alpha],
            ws.diagram_transformations[args.beta],
        )
    rep = inst.report
    details = {
        "kind": inst.kind,
        "lhs_objects": len(inst.lhs.category.objects),
        "rhs_objects": len(inst.rhs.objects),
        "essentially_surjective": rep.essentially_surjective,
        "full": rep.full,
        "faithful": rep.faithful,
        "checks": [[n, ok, d] for n, ok, d in inst.checks],
    }
    outcome = "positive" if inst.ok else "negative"
    text = (
        f"{inst.kind}: lhs {len(inst.lhs.category.objects)} objects, "
        f"rhs {len(inst.rhs.objects)} objects; equivalence: {rep.is_equivalence}"
    )
    return RunReport("commute", ws.digest, outcome, details), text


def cmd_lemma_run(ws: Workspace, args) -> tuple[RunReport, str]:
    inst = build_lemma_instance(ws, args.instance)
    out = lemma_engine(inst)
    details = {
        "vertex": out.vertex,
        "from_object": dict(sorted(out.from_object.items())),
        "checks": [[n, ok, d] for n, ok, d in out.checks],
    }
    outcome = "positive" if out.ok else "negative"
    text = "\n".join(
        [f"vertex: {out.vertex}"]
        + [f"check {'pass' if ok else 'FAIL'}: {n}" for n, ok, _ in out.checks]
    )
    return RunReport("lemma-run", ws.digest, outcome, details), text


COMMANDS = {
    "validate": cmd_validate,
    "check-filtered": cmd_check_filtered,
    "find-cone": cmd_find_cone,
    "colimit": cmd_colimit,
    "universal-check": cmd_universal_check,
    "commute": cmd_commute,
    "lemma-run": cmd_lemma_run,
}


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sigmacolim",
        description="marked colimits of category-valued diagrams, verified exhaustively",
    )
    parser.add_argument("--out", default="out", help="artifact directory")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--workspace", required=True)

    common(sub.add_parser("validate"))
    p = sub.add_parser("check-filtered")
    common(p)
    p.add_argument("--two-category", required=True)
    p.add_argument("--sigma", required=True)
    p.add_argument("--strict-f2", action="store_true")
    p = sub.add_parser("find-cone")
    common(p)
    p.add_argument("--shape-functor", required=True)
    p.add_argument("--sigma", required=True)
    p = sub.add_parser("colimit")
    common(p)
    p.add_argument("--diagram", required=True)
    p.add_argument("--max-premorphisms", type=int, default=10000)
    p = sub.add_parser("universal-check")
    common(p)
    p.add_argument("--diagram", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--max-functors", type=int, default=500)
    p = sub.add_parser("commute")
    common(p)
    p.add_argument("--kind", choices=["cotensor", "product", "pseudoeq"], required=True)
    p.add_argument("--diagram")
    p.add_argument("--weight")
    p.add_argument("--diagram2")
    p.add_argument("--source")
    p.add_argument("--target")
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p = sub.add_parser("lemma-run")
    common(p)
    p.add_argument("--instance", required=True)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    if args.command == "commute":
        need = {
            "cotensor": ["diagram", "weight"],
            "product": ["diagram", "diagram2"],
            "pseudoeq": ["source", "target", "alpha", "beta"],
        }[args.kind]
        missing = [n for n in need if getattr(args, n.replace("-", "_")) is None]
        if missing:
            print(f"missing options for --kind {args.kind}: {missing}", file=sys.stderr)
            return 2
    started = time.monotonic()
    try:
        ws = load_workspace(args.workspace)
        report, text = COMMANDS[args.command](ws, args)
    except WorkspaceError as e:
        print(str(e), file=sys.stderr)
        return 2
    except InputError as e:
        print(str(e), file=sys.stderr)
        return 2
    report.elapsed_seconds = time.monotonic() - started
    write_artifacts(args.out, args.command, report, text)
    print(text)
    print(f"elapsed: {report.elapsed_seconds:.3f}s", file=sys.stderr)
    if report.outcome == "positive":
        return 0
    if report.outcome == "negative":
        return 1
    return 2


if __name__ == "__main__":
    sys.exit(main())

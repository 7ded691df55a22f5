"""Bundled fixtures: the small categories, index 2-categories and diagrams
used by the test suite, the CLI examples and the acceptance battery.

Builders are deterministic; ``python -m sigmacolim.fixtures`` regenerates the
JSON workspaces shipped under ``sigmacolim/data``.
"""

from __future__ import annotations

from .fincat import (
    FinCategory,
    Functor,
    NatTransf,
    identity_functor,
    identity_transf,
    terminal_category,
)
from .two_cat import (
    ArrowGen,
    CellGen,
    Fin2Category,
    FreeTwoCategory,
    SigmaClass,
    TwoComputad,
    free_2category,
)
from .diagram import CatDiagram, DiagramNatTransf, diagram_from_computad


def walking_arrow(name: str = "2") -> FinCategory:
    """Two objects a, b and one non-identity arrow f: a -> b."""
    return FinCategory(
        name=name,
        objects=["a", "b"],
        arrows={"ida": ("a", "a"), "idb": ("b", "b"), "f": ("a", "b")},
        identity={"a": "ida", "b": "idb"},
        composition={
            ("ida", "ida"): "ida",
            ("idb", "idb"): "idb",
            ("f", "ida"): "f",
            ("idb", "f"): "f",
        },
    )


def walking_iso(name: str = "I") -> FinCategory:
    """Two objects with a pair of mutually inverse arrows between them."""
    return FinCategory(
        name=name,
        objects=["a", "b"],
        arrows={
            "ida": ("a", "a"),
            "idb": ("b", "b"),
            "s": ("a", "b"),
            "t": ("b", "a"),
        },
        identity={"a": "ida", "b": "idb"},
        composition={
            ("ida", "ida"): "ida",
            ("idb", "idb"): "idb",
            ("s", "ida"): "s",
            ("idb", "s"): "s",
            ("t", "idb"): "t",
            ("ida", "t"): "t",
            ("t", "s"): "ida",
            ("s", "t"): "idb",
        },
    )


def chain_category(n: int, name: str | None = None) -> FinCategory:
    """The poset 0 < 1 < ... < n as a category (thin, one arrow per pair)."""
    objects = [str(i) for i in range(n + 1)]
    arrows = {}
    identity = {}
    for i in range(n + 1):
        for j in range(i, n + 1):
            a = f"a{i}{j}"
            arrows[a] = (str(i), str(j))
            if i == j:
                identity[str(i)] = a
    composition = {}
    for i in range(n + 1):
        for j in range(i, n + 1):
            for k in range(j, n + 1):
                composition[(f"a{j}{k}", f"a{i}{j}")] = f"a{i}{k}"
    return FinCategory(
        name=name or f"chain{n}",
        objects=objects,
        arrows=arrows,
        identity=identity,
        composition=composition,
    )


def discrete_category(n: int, name: str | None = None) -> FinCategory:
    objects = [f"d{i}" for i in range(n)]
    return FinCategory(
        name=name or f"disc{n}",
        objects=objects,
        arrows={f"id{o}": (o, o) for o in objects},
        identity={o: f"id{o}" for o in objects},
        composition={(f"id{o}", f"id{o}"): f"id{o}" for o in objects},
    )


def parallel_pair_category(name: str = "PP") -> FinCategory:
    """Two objects with two distinct parallel arrows between them."""
    return FinCategory(
        name=name,
        objects=["a", "b"],
        arrows={
            "ida": ("a", "a"),
            "idb": ("b", "b"),
            "f": ("a", "b"),
            "g": ("a", "b"),
        },
        identity={"a": "ida", "b": "idb"},
        composition={
            ("ida", "ida"): "ida",
            ("idb", "idb"): "idb",
            ("f", "ida"): "f",
            ("idb", "f"): "f",
            ("g", "ida"): "g",
            ("idb", "g"): "g",
        },
    )


# ---------------------------------------------------------------------------
# index 2-categories
# ---------------------------------------------------------------------------


def terminal_index() -> FreeTwoCategory:
    """One object, identities only."""
    return free_2category(TwoComputad("T1", ["T"], [], []))


def empty_index() -> FreeTwoCategory:
    return free_2category(TwoComputad("T0", [], [], []))


def arrow_index() -> FreeTwoCategory:
    """Objects 0 and 1 with one marked arrow between them (fixture T2)."""
    return free_2category(
        TwoComputad("T2", ["0", "1"], [ArrowGen("u", "0", "1", True)], [])
    )


def chain_index() -> FreeTwoCategory:
    """The marked chain 0 -> 1 -> 2."""
    return free_2category(
        TwoComputad(
            "T6",
            ["0", "1", "2"],
            [ArrowGen("u01", "0", "1", True), ArrowGen("u12", "1", "2", True)],
            [],
        )
    )


def discrete_index() -> FreeTwoCategory:
    """Two objects, no connecting arrows; the marked class is identities."""
    return free_2category(TwoComputad("D2", ["0", "1"], [], []))


def parallel_pair_index() -> FreeTwoCategory:
    """Fixture T4: two parallel marked arrows and no 2-cells."""
    return free_2category(
        TwoComputad(
            "T4",
            ["0", "1"],
            [ArrowGen("f", "0", "1", True), ArrowGen("g", "0", "1", True)],
            [],
        )
    )


def cell_pair_index() -> tuple[Fin2Category, SigmaClass]:
    """Fixture T5: two parallel 2-cells that no marked arrow can merge.

    The arrows are f, g: 0 -> 1 with 2-cells al, be: f => g; only g (and the
    identities) is marked, so the merging axiom is the only one that fails.
    """
    free = free_2category(
        TwoComputad(
            "T5",
            ["0", "1"],
            [ArrowGen("f", "0", "1", False), ArrowGen("g", "0", "1", True)],
            [CellGen("al", ("f",), ("g",)), CellGen("be", ("f",), ("g",))],
        )
    )
    return free.category, free.sigma


def iso_cell_index() -> tuple[Fin2Category, SigmaClass]:
    """Fixture T3: two parallel arrows joined by an invertible 2-cell.

    Built by hand: free completions cannot carry the inverse relations.
    """
    h00 = FinCategory(
        "T3(0,0)",
        objects=["i0"],
        arrows={"ii0": ("i0", "i0")},
        identity={"i0": "ii0"},
        composition={("ii0", "ii0"): "ii0"},
    )
    h11 = FinCategory(
        "T3(1,1)",
        objects=["i1"],
        arrows={"ii1": ("i1", "i1")},
        identity={"i1": "ii1"},
        composition={("ii1", "ii1"): "ii1"},
    )
    h01 = FinCategory(
        "T3(0,1)",
        objects=["f", "g"],
        arrows={
            "idf": ("f", "f"),
            "idg": ("g", "g"),
            "c": ("f", "g"),
            "ci": ("g", "f"),
        },
        identity={"f": "idf", "g": "idg"},
        composition={
            ("idf", "idf"): "idf",
            ("idg", "idg"): "idg",
            ("c", "idf"): "c",
            ("idg", "c"): "c",
            ("ci", "idg"): "ci",
            ("idf", "ci"): "ci",
            ("ci", "c"): "idf",
            ("c", "ci"): "idg",
        },
    )
    hcompose1 = {}
    hcompose2 = {}
    for w in ("f", "g"):
        hcompose1[(w, "i0")] = w
        hcompose1[("i1", w)] = w
    hcompose1[("i0", "i0")] = "i0"
    hcompose1[("i1", "i1")] = "i1"
    for a in h01.arrows:
        hcompose2[(a, "ii0")] = a
        hcompose2[("ii1", a)] = a
    hcompose2[("ii0", "ii0")] = "ii0"
    hcompose2[("ii1", "ii1")] = "ii1"
    A = Fin2Category(
        name="T3",
        objects=["0", "1"],
        hom={("0", "0"): h00, ("0", "1"): h01, ("1", "1"): h11},
        identity_1cell={"0": "i0", "1": "i1"},
        hcompose1=hcompose1,
        hcompose2=hcompose2,
    )
    return A, SigmaClass(A, {"i0", "i1", "f", "g"})


# ---------------------------------------------------------------------------
# diagrams on the positive fixtures
# ---------------------------------------------------------------------------


def terminal_diagram(value: FinCategory | None = None) -> CatDiagram:
    """A diagram on the terminal index: a single category."""
    free = terminal_index()
    C = value if value is not None else walking_arrow("F*")
    return diagram_from_computad("F_T1", free, {"T": C}, {}, {})


def arrow_diagram() -> CatDiagram:
    """The bundled diagram on T2: a walking arrow mapping into a walking iso.

    The non-invertible arrow of the value at 0 becomes invertible at 1, so
    the colimit is equivalent (not isomorphic) to the value at 1.
    """
    free = arrow_index()
    C0 = walking_arrow("F0")
    C1 = walking_iso("F1")
    Fu = Functor(C0, C1, {"a": "a", "b": "b"}, {"ida": "ida", "idb": "idb", "f": "s"})
    return diagram_from_computad("F_T2", free, {"0": C0, "1": C1}, {"u": Fu}, {})


def arrow_diagram_small() -> CatDiagram:
    """A second diagram on T2 with terminal value at 0 (for products)."""
    free = arrow_index()
    one = terminal_category("G0")
    C1 = walking_arrow("G1")
    Gu = Functor(one, C1, {"*": "a"}, {"id*": "ida"})
    return diagram_from_computad("G_T2", free, {"0": one, "1": C1}, {"u": Gu}, {})


def chain_diagram() -> CatDiagram:
    free = chain_index()
    C0 = walking_arrow("H0")
    C1 = walking_arrow("H1")
    C2 = walking_iso("H2")
    F01 = identity_functor(C0)
    F01 = Functor(C0, C1, dict(F01.object_map), dict(F01.arrow_map))
    F12 = Functor(C1, C2, {"a": "a", "b": "b"}, {"ida": "ida", "idb": "idb", "f": "s"})
    return diagram_from_computad(
        "F_T6", free, {"0": C0, "1": C1, "2": C2}, {"u01": F01, "u12": F12}, {}
    )


def iso_cell_diagram() -> CatDiagram:
    """The bundled diagram on T3: the invertible 2-cell acts as a value iso."""
    A, sigma = iso_cell_index()
    one = terminal_category("E0")
    C1 = walking_iso("E1")
    Ff = Functor(one, C1, {"*": "a"}, {"id*": "ida"})
    Fg = Functor(one, C1, {"*": "b"}, {"id*": "idb"})
    ident0 = identity_functor(one)
    ident1 = identity_functor(C1)
    on_1cells = {"i0": ident0, "i1": ident1, "f": Ff, "g": Fg}
    on_2cells = {
        "ii0": identity_transf(ident0),
        "ii1": identity_transf(ident1),
        "idf": identity_transf(Ff),
        "idg": identity_transf(Fg),
        "c": NatTransf(Ff, Fg, {"*": "s"}),
        "ci": NatTransf(Fg, Ff, {"*": "t"}),
    }
    return CatDiagram(
        name="F_T3",
        index=A,
        sigma=sigma,
        on_objects={"0": one, "1": C1},
        on_1cells=on_1cells,
        on_2cells=on_2cells,
    )


def pseudoeq_input() -> tuple[CatDiagram, CatDiagram, DiagramNatTransf, DiagramNatTransf]:
    """Parallel transformations between diagrams on T2, for pseudo-equalizers."""
    free = arrow_index()
    one0 = terminal_category("P0")
    one1 = terminal_category("P1")
    Gu = Functor(one0, one1, {"*": "*"}, {"id*": "id*"})
    G = diagram_from_computad("G_peq", free, {"0": one0, "1": one1}, {"u": Gu}, {})
    I0 = walking_iso("Q0")
    I1 = walking_iso("Q1")
    Hu = identity_functor(I0)
    Hu = Functor(I0, I1, dict(Hu.object_map), dict(Hu.arrow_map))
    H = diagram_from_computad("H_peq", free, {"0": I0, "1": I1}, {"u": Hu}, {})
    alpha = DiagramNatTransf(
        "alpha",
        G,
        H,
        {
            "0": Functor(one0, I0, {"*": "a"}, {"id*": "ida"}),
            "1": Functor(one1, I1, {"*": "a"}, {"id*": "ida"}),
        },
    )
    beta = DiagramNatTransf(
        "beta",
        G,
        H,
        {
            "0": Functor(one0, I0, {"*": "b"}, {"id*": "idb"}),
            "1": Functor(one1, I1, {"*": "b"}, {"id*": "idb"}),
        },
    )
    return G, H, alpha, beta


def sigma_filtered_fixtures() -> dict[str, tuple[Fin2Category, SigmaClass]]:
    """The bundled pairs expected to satisfy every filteredness axiom."""
    t1 = terminal_index()
    t2 = arrow_index()
    t6 = chain_index()
    t3 = iso_cell_index()
    return {
        "terminal": (t1.category, t1.sigma),
        "arrow": (t2.category, t2.sigma),
        "chain": (t6.category, t6.sigma),
        "iso_cell": t3,
    }


def non_filtered_fixtures() -> dict[str, tuple[Fin2Category, SigmaClass]]:
    """The bundled pairs that each fail a specific filteredness condition."""
    t0 = empty_index()
    d2 = discrete_index()
    t4 = parallel_pair_index()
    return {
        "empty": (t0.category, t0.sigma),
        "discrete2": (d2.category, d2.sigma),
        "parallel_pair": (t4.category, t4.sigma),
        "cell_pair": cell_pair_index(),
    }


def bundled_diagrams() -> dict[str, CatDiagram]:
    """One diagram per sigma-filtered fixture, keyed like the fixture."""
    return {
        "terminal": terminal_diagram(),
        "arrow": arrow_diagram(),
        "chain": chain_diagram(),
        "iso_cell": iso_cell_diagram(),
    }


# ---------------------------------------------------------------------------
# the bundled workspace file
# ---------------------------------------------------------------------------


def workspace_payload() -> dict:
    """Every fixture serialized into one workspace dictionary."""
    from .cli import (
        SCHEMA_VERSION,
        category_to_json,
        diagram_to_json,
        transformation_to_json,
        two_category_to_json,
    )

    categories: dict[str, FinCategory] = {}
    two_cats: dict = {}
    sigmas: dict = {}
    diagrams: dict = {}

    def reg_cat(name: str, C: FinCategory) -> str:
        categories[name] = C
        return name

    def reg_2cat(name: str, A: Fin2Category):
        hom_names = {}
        for pair, H in sorted(A.hom.items()):
            hname = f"{name}.hom.{pair[0]}.{pair[1]}"
            reg_cat(hname, H)
            hom_names[pair] = hname
        two_cats[name] = (A, hom_names)

    pairs = dict(sigma_filtered_fixtures())
    pairs.update(non_filtered_fixtures())
    for name, (A, S) in sorted(pairs.items()):
        reg_2cat(name, A)
        sigmas[name] = (name, S)

    reg_cat("walking_arrow", walking_arrow("walking_arrow"))
    reg_cat("walking_iso", walking_iso("walking_iso"))
    reg_cat("point", terminal_category("point"))
    reg_cat("parallel_pair", parallel_pair_category("parallel_pair"))

    value_regs = {
        "F_terminal": (terminal_diagram(), "terminal", {"T": "walking_arrow"}),
        "F_arrow": (arrow_diagram(), "arrow", {"0": "walking_arrow", "1": "walking_iso"}),
        "G_arrow": (arrow_diagram_small(), "arrow", {"0": "point", "1": "walking_arrow"}),
        "F_chain": (
            chain_diagram(),
            "chain",
            {"0": "walking_arrow", "1": "walking_arrow", "2": "walking_iso"},
        ),
        "F_iso_cell": (iso_cell_diagram(), "iso_cell", {"0": "point", "1": "walking_iso"}),
    }
    for dname, (F, index_name, value_names) in sorted(value_regs.items()):
        diagrams[dname] = diagram_to_json(F, index_name, index_name, value_names)

    G, H, alpha, beta = pseudoeq_input()
    reg_cat("peq_point", terminal_category("peq_point"))
    reg_cat("peq_iso", walking_iso("peq_iso"))
    diagrams["G_peq"] = diagram_to_json(G, "arrow", "arrow", {"0": "peq_point", "1": "peq_point"})
    diagrams["H_peq"] = diagram_to_json(H, "arrow", "arrow", {"0": "peq_iso", "1": "peq_iso"})
    transformations = {
        "alpha_peq": transformation_to_json(alpha, "G_peq", "H_peq"),
        "beta_peq": transformation_to_json(beta, "G_peq", "H_peq"),
    }

    computads = {
        "cospan_shape": {
            "objects": ["M", "P", "Q"],
            "arrows": [
                {"name": "l", "source": "M", "target": "P", "marked": False},
                {"name": "r", "source": "M", "target": "Q", "marked": False},
            ],
            "cells": [],
        }
    }
    shape_functors = {
        "cospan_in_arrow": {
            "computad": "cospan_shape",
            "two_category": "arrow",
            "objects": {"M": "0", "P": "1", "Q": "1"},
            "arrows": {"l": "u", "r": "u"},
            "cells": {},
        }
    }
    lemma_instances = {
        "transitivity_iso_cell": {
            "premorphisms": [
                {
                    "diagram": "F_iso_cell",
                    "source": ["*", "0"],
                    "target": ["*", "0"],
                    "left": "i0",
                    "right": "i0",
                    "apex": "0",
                    "arrow": "id*",
                },
                {
                    "diagram": "F_iso_cell",
                    "source": ["*", "0"],
                    "target": ["*", "0"],
                    "left": "f",
                    "right": "g",
                    "apex": "1",
                    "arrow": "s",
                },
                {
                    "diagram": "F_iso_cell",
                    "source": ["*", "0"],
                    "target": ["*", "0"],
                    "left": "g",
                    "right": "f",
                    "apex": "1",
                    "arrow": "t",
                },
            ],
            "terms": [],
            "equations": [[0, 1], [1, 2]],
        }
    }

    out = {"schema_version": SCHEMA_VERSION}
    out["categories"] = {n: category_to_json(C) for n, C in sorted(categories.items())}
    out["two_categories"] = {
        n: two_category_to_json(A, hom_names) for n, (A, hom_names) in sorted(two_cats.items())
    }
    out["sigma_classes"] = {
        n: {"two_category": owner, "members": sorted(S.members)}
        for n, (owner, S) in sorted(sigmas.items())
    }
    out["diagrams"] = dict(sorted(diagrams.items()))
    out["diagram_transformations"] = transformations
    out["computads"] = computads
    out["shape_functors"] = shape_functors
    out["lemma_instances"] = lemma_instances
    return out


def write_bundled_data() -> list[str]:
    """Regenerate the shipped workspace and schema files; returns the paths."""
    import os

    from .cli import WORKSPACE_SCHEMA, dump_json

    data_dir = os.path.join(os.path.dirname(__file__), "data")
    os.makedirs(data_dir, exist_ok=True)
    core = os.path.join(data_dir, "core.json")
    with open(core, "w") as fh:
        fh.write(dump_json(workspace_payload()))
    written = [core]
    docs = os.path.join(
        os.path.dirname(os.path.dirname(os.path.dirname(__file__))), "docs"
    )
    if os.path.isdir(docs):
        schema_path = os.path.join(docs, "workspace-schema.json")
        with open(schema_path, "w") as fh:
            fh.write(dump_json(WORKSPACE_SCHEMA))
        written.append(schema_path)
    return written


__all__ = [
    "walking_arrow",
    "walking_iso",
    "chain_category",
    "discrete_category",
    "parallel_pair_category",
    "terminal_category",
    "terminal_index",
    "empty_index",
    "arrow_index",
    "chain_index",
    "discrete_index",
    "parallel_pair_index",
    "cell_pair_index",
    "iso_cell_index",
    "terminal_diagram",
    "arrow_diagram",
    "arrow_diagram_small",
    "chain_diagram",
    "iso_cell_diagram",
    "pseudoeq_input",
    "sigma_filtered_fixtures",
    "non_filtered_fixtures",
    "bundled_diagrams",
    "workspace_payload",
    "write_bundled_data",
]


if __name__ == "__main__":
    for path in write_bundled_data():
        print(path)

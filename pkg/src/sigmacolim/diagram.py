"""Category-valued diagrams: strict 2-functors from a finite 2-category
(with a marked 1-subcategory) into finite categories, given by tables."""

from __future__ import annotations

from dataclasses import dataclass

from .fincat import (
    FinCategory,
    Functor,
    InputError,
    NatTransf,
    compose_functors,
    horizontal_composite,
    identity_functor,
    identity_transf,
    validate_functor,
    validate_nat_transf,
    vertical_composite,
)
from .two_cat import Fin2Category, SigmaClass, validate_2category, validate_sigma


@dataclass
class CatDiagram:
    name: str
    index: Fin2Category
    sigma: SigmaClass
    on_objects: dict[str, FinCategory]
    on_1cells: dict[str, Functor]
    on_2cells: dict[str, NatTransf]

    def value(self, A: str) -> FinCategory:
        try:
            return self.on_objects[A]
        except KeyError:
            raise InputError(f"{self.name}: no value at object {A!r}") from None

    def functor(self, u: str) -> Functor:
        try:
            return self.on_1cells[u]
        except KeyError:
            raise InputError(f"{self.name}: no value at 1-cell {u!r}") from None

    def transf(self, a: str) -> NatTransf:
        try:
            return self.on_2cells[a]
        except KeyError:
            raise InputError(f"{self.name}: no value at 2-cell {a!r}") from None


def apply_diagram(F: CatDiagram, u: str, x: str) -> str:
    """The object F(u)(x), for x an object of the value at the source of u."""
    fun = F.functor(u)
    if x not in fun.domain.objects:
        raise InputError(f"{F.name}: {x!r} is not an object of the value at {F.index.src1(u)}")
    return fun.object_map[x]


def apply_diagram_arrow(F: CatDiagram, u: str, f: str) -> str:
    """The arrow F(u)(f)."""
    fun = F.functor(u)
    if f not in fun.domain.arrows:
        raise InputError(f"{F.name}: {f!r} is not an arrow of the value at {F.index.src1(u)}")
    return fun.arrow_map[f]


def whisker_component(F: CatDiagram, a: str, x: str) -> str:
    """The component at x of the transformation F(a), for a 2-cell a."""
    t = F.transf(a)
    if x not in t.components:
        raise InputError(f"{F.name}: no component of {a!r} at {x!r}")
    return t.components[x]


def _same_functor(F: Functor, G: Functor) -> bool:
    return F.object_map == G.object_map and F.arrow_map == G.arrow_map


def validate_diagram(F: CatDiagram) -> list[str]:
    """Strict 2-functoriality, checked on every composable entry."""
    out = []
    A = F.index
    if validate_2category(A):
        return [f"index 2-category is invalid"]
    if validate_sigma(F.sigma) or F.sigma.owner is not A:
        out.append("marked class is invalid or not owned by the index")
    for X in A.objects:
        if X not in F.on_objects:
            out.append(f"no value at object {X}")
    for u in A.one_cells():
        fun = F.on_1cells.get(u)
        if fun is None:
            out.append(f"no value at 1-cell {u}")
            continue
        if fun.domain != F.on_objects.get(A.src1(u)) or fun.codomain != F.on_objects.get(
            A.tgt1(u)
        ):
            out.append(f"value at {u} has wrong domain or codomain")
        for v in validate_functor(fun):
            out.append(f"value at {u}: {v}")
    for a in sorted(A._pair_of_2cell):
        t = F.on_2cells.get(a)
        if t is None:
            out.append(f"no value at 2-cell {a}")
            continue
        for v in validate_nat_transf(t):
            out.append(f"value at {a}: {v}")
        if not _same_functor(t.domain, F.on_1cells.get(A.src2(a), t.domain)):
            out.append(f"value at {a}: domain is not the value of {A.src2(a)}")
        if not _same_functor(t.codomain, F.on_1cells.get(A.tgt2(a), t.codomain)):
            out.append(f"value at {a}: codomain is not the value of {A.tgt2(a)}")
    if out:
        return out

    for X in A.objects:
        if not _same_functor(F.on_1cells[A.id1(X)], identity_functor(F.on_objects[X])):
            out.append(f"identity 1-cell at {X} is not sent to the identity functor")
    for (g, f), c in A.hcompose1.items():
        if not _same_functor(
            compose_functors(F.on_1cells[g], F.on_1cells[f]), F.on_1cells[c]
        ):
            out.append(f"composition not preserved on 1-cells ({g}, {f})")
    for u in A.one_cells():
        if F.on_2cells[A.id2(u)].components != identity_transf(F.on_1cells[u]).components:
            out.append(f"identity 2-cell at {u} is not sent to the identity")
    for pair, H in A.hom.items():
        for (b, a), c in H.composition.items():
            got = vertical_composite(F.on_2cells[b], F.on_2cells[a])
            if got.components != F.on_2cells[c].components:
                out.append(f"vertical composition not preserved on ({b}, {a})")
    for (b, a), c in A.hcompose2.items():
        got = horizontal_composite(F.on_2cells[b], F.on_2cells[a])
        if got.components != F.on_2cells[c].components:
            out.append(f"horizontal composition not preserved on ({b}, {a})")
    return out


@dataclass
class DiagramNatTransf:
    """A strict 2-natural transformation between diagrams on one index."""

    name: str
    domain: CatDiagram
    codomain: CatDiagram
    components: dict[str, Functor]

    def at(self, A: str) -> Functor:
        try:
            return self.components[A]
        except KeyError:
            raise InputError(f"{self.name}: no component at {A!r}") from None


def validate_diagram_transf(t: DiagramNatTransf) -> list[str]:
    out = []
    F, G = t.domain, t.codomain
    if F.index is not G.index and F.index != G.index:
        return ["domain and codomain live on different indexes"]
    A = F.index
    for X in A.objects:
        c = t.components.get(X)
        if c is None:
            out.append(f"no component at {X}")
            continue
        if c.domain != F.on_objects[X] or c.codomain != G.on_objects[X]:
            out.append(f"component at {X} has wrong domain or codomain")
        for v in validate_functor(c):
            out.append(f"component at {X}: {v}")
    if out:
        return out
    for u in A.one_cells():
        Asrc, Atgt = A.src1(u), A.tgt1(u)
        lhs = compose_functors(G.on_1cells[u], t.components[Asrc])
        rhs = compose_functors(t.components[Atgt], F.on_1cells[u])
        if not _same_functor(lhs, rhs):
            out.append(f"naturality square fails at 1-cell {u}")
    for a in sorted(A._pair_of_2cell):
        u = A.src2(a)
        Atgt = A.tgt1(u)
        comp = t.components[Atgt]
        for x in F.on_objects[A.src1(u)].objects:
            if comp.arrow_map[F.on_2cells[a].components[x]] != G.on_2cells[a].components[
                t.components[A.src1(u)].object_map[x]
            ]:
                out.append(f"2-cell compatibility fails at {a} on {x}")
                break
    return out


def identity_diagram_transf(F: CatDiagram) -> DiagramNatTransf:
    return DiagramNatTransf(
        name=f"id_{F.name}",
        domain=F,
        codomain=F,
        components={X: identity_functor(F.on_objects[X]) for X in F.index.objects},
    )


class CatOps:
    """The operations of the 2-category of categories, on explicit tables.

    Mirrors the Fin2Category interface so cone axioms and generator
    extensions can run unchanged over either ambient.
    """

    def id1(self, C: FinCategory) -> Functor:
        return identity_functor(C)

    def compose1(self, g: Functor, f: Functor) -> Functor:
        return compose_functors(g, f)

    def id2(self, F: Functor) -> NatTransf:
        return identity_transf(F)

    def vcompose(self, b: NatTransf, a: NatTransf) -> NatTransf:
        return vertical_composite(b, a)

    def hcompose(self, b: NatTransf, a: NatTransf) -> NatTransf:
        return horizontal_composite(b, a)

    def invert2(self, a: NatTransf):
        from .fincat import invert_transf

        return invert_transf(a)

    def equal2(self, a: NatTransf, b: NatTransf) -> bool:
        return (
            a.components == b.components
            and _same_functor(a.domain, b.domain)
            and _same_functor(a.codomain, b.codomain)
        )


def diagram_from_computad(
    name: str,
    free,
    values: dict[str, FinCategory],
    arrow_images: dict[str, Functor],
    cell_images: dict[str, NatTransf] | None = None,
) -> CatDiagram:
    """Build a diagram on a free completion from images of the generators."""
    from .two_cat import extend_generator_assignment

    on_1cells, on_2cells = extend_generator_assignment(
        free, CatOps(), values, arrow_images, cell_images or {}
    )
    return CatDiagram(
        name=name,
        index=free.category,
        sigma=free.sigma,
        on_objects={X: values[X] for X in free.category.objects},
        on_1cells=on_1cells,
        on_2cells=on_2cells,
    )

"""The colimit of a marked-filtered diagram of categories, as an explicit
finite category.

Objects are pairs (value object, index object).  Arrows are equivalence
classes of premorphisms (left leg marked, a connecting arrow at a common
apex, right leg arbitrary); two premorphisms are identified when some
four 2-cells paste them to equal arrows further along the index.  The
quotient composes over glue 2-cells supplied by marked cones on cospans.

``lemma_engine`` is the workhorse behind the structural results: it packs a
family of premorphisms, formal composites and homotopy equations into one
finite shape diagram, takes a marked cone over it, and returns the
transported premorphisms for which every requested equation becomes a
strict equality in the value category at the cone's vertex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Union

from .diagram import CatDiagram, CatOps
from .fincat import (
    FinCategory,
    Functor,
    InputError,
    NatTransf,
    compose_functors,
    enumerate_functors,
    enumerate_nat_transfs,
    horizontal_composite,
    identity_transf,
    invert_transf,
    tuple_id,
    validate_functor,
)
from .filtered import (
    SigmaCone,
    ConeMorphism,
    sigma_cone_iter,
    sigma_cone_search,
    is_sigma_filtered,
    validate_cone,
    validate_cone_morphism,
)
from .two_cat import (
    ArrowGen,
    CellGen,
    TwoComputad,
    free_2category,
    path_id,
    two_functor_from_generators,
)


class NotSigmaFiltered(InputError):
    """The diagram's index pair fails filteredness; the quotient is refused."""


@dataclass(frozen=True)
class ColimObject:
    index: str  # object of the index 2-category
    value: str  # object of the diagram's value there

    def ident(self) -> str:
        return tuple_id([self.value, self.index])


@dataclass(frozen=True)
class Premorphism:
    source: ColimObject
    target: ColimObject
    left: str   # 1-cell source.index -> apex; must be marked
    right: str  # 1-cell target.index -> apex
    apex: str
    arrow: str  # arrow of the value at the apex

    def sort_key(self):
        return (self.left, self.right, self.arrow)

    def ident(self) -> str:
        return tuple_id(
            [self.source.ident(), self.target.ident(), self.left, self.arrow, self.right]
        )


@dataclass(frozen=True)
class HomotopyWitness:
    """Four 2-cells pasting two parallel premorphisms to one arrow."""

    vertex: str
    from_source: str  # marked, source index -> vertex
    from_target: str  # marked, target index -> vertex
    from_apex1: str   # marked, first apex -> vertex
    from_apex2: str   # marked, second apex -> vertex
    alpha1: str       # invertible, from_source => from_apex1 . left1
    alpha2: str       # invertible, from_source => from_apex2 . left2
    beta1: str        # from_apex1 . right1 => from_target
    beta2: str        # from_apex2 . right2 => from_target


def validate_premorphism(F: CatDiagram, p: Premorphism) -> list[str]:
    out = []
    A = F.index
    if p.left not in A._pair_of_1cell or A._pair_of_1cell[p.left] != (
        p.source.index,
        p.apex,
    ):
        out.append("left leg has wrong endpoints")
    if p.right not in A._pair_of_1cell or A._pair_of_1cell[p.right] != (
        p.target.index,
        p.apex,
    ):
        out.append("right leg has wrong endpoints")
    if p.left not in F.sigma.members:
        out.append("left leg is not marked")
    if out:
        return out
    C = F.on_objects[p.apex]
    want = (
        F.on_1cells[p.left].object_map[p.source.value],
        F.on_1cells[p.right].object_map[p.target.value],
    )
    if C.arrows.get(p.arrow) != want:
        out.append("connecting arrow has wrong endpoints")
    return out


def enumerate_objects(F: CatDiagram) -> list[ColimObject]:
    return [
        ColimObject(A, x) for A in F.index.objects for x in F.on_objects[A].objects
    ]


def enumerate_premorphisms(
    F: CatDiagram, src: ColimObject, tgt: ColimObject
) -> list[Premorphism]:
    A = F.index
    out = []
    for C in A.objects:
        for u in A.one_cells_between(src.index, C):
            if u not in F.sigma.members:
                continue
            ux = F.on_1cells[u].object_map[src.value]
            for v in A.one_cells_between(tgt.index, C):
                vy = F.on_1cells[v].object_map[tgt.value]
                for xi in F.on_objects[C].hom(ux, vy):
                    out.append(Premorphism(src, tgt, u, v, C, xi))
    return sorted(out, key=Premorphism.sort_key)


def identity_premorphism(F: CatDiagram, o: ColimObject) -> Premorphism:
    i = F.index.id1(o.index)
    return Premorphism(o, o, i, i, o.index, F.on_objects[o.index].identity[o.value])


def _paste_side(
    F: CatDiagram, p: Premorphism, apex_leg: str, alpha: str, beta: str
) -> str:
    """The arrow obtained by pasting alpha, the transported connecting
    arrow, and beta, inside the value category at the witness vertex."""
    D_tail = F.index.tgt1(apex_leg)
    value_cat = F.on_objects[D_tail]
    a = F.on_2cells[alpha].components[p.source.value]
    mid = F.on_1cells[apex_leg].arrow_map[p.arrow]
    b = F.on_2cells[beta].components[p.target.value]
    return value_cat.compose(b, value_cat.compose(mid, a))


def validate_homotopy(
    F: CatDiagram, p1: Premorphism, p2: Premorphism, w: HomotopyWitness
) -> list[str]:
    A = F.index
    out = []
    if (p1.source, p1.target) != (p2.source, p2.target):
        return ["premorphisms are not parallel"]
    for leg, src in [
        (w.from_source, p1.source.index),
        (w.from_target, p1.target.index),
        (w.from_apex1, p1.apex),
        (w.from_apex2, p2.apex),
    ]:
        if leg not in F.sigma.members:
            out.append(f"witness leg {leg} is not marked")
        elif A._pair_of_1cell[leg] != (src, w.vertex):
            out.append(f"witness leg {leg} has wrong endpoints")
    if out:
        return out
    for alpha, apex_leg, pre in [(w.alpha1, w.from_apex1, p1), (w.alpha2, w.from_apex2, p2)]:
        if A.src2(alpha) != w.from_source or A.tgt2(alpha) != A.compose1(
            apex_leg, pre.left
        ):
            out.append(f"cell {alpha} has wrong endpoints")
        elif A.invert2(alpha) is None:
            out.append(f"cell {alpha} is not invertible")
    for beta, apex_leg, pre in [(w.beta1, w.from_apex1, p1), (w.beta2, w.from_apex2, p2)]:
        if A.src2(beta) != A.compose1(apex_leg, pre.right) or A.tgt2(beta) != w.from_target:
            out.append(f"cell {beta} has wrong endpoints")
    if out:
        return out
    lhs = _paste_side(F, p1, w.from_apex1, w.alpha1, w.beta1)
    rhs = _paste_side(F, p2, w.from_apex2, w.alpha2, w.beta2)
    if lhs != rhs:
        out.append("the two pastings differ")
    return out


def is_homotopic(
    F: CatDiagram,
    p1: Premorphism,
    p2: Premorphism,
    cache: Optional[dict] = None,
) -> Optional[HomotopyWitness]:
    """Exhaustive search for a homotopy witness, first in canonical order.

    The search enumerates the landing object, the four marked legs, then
    the pasting cells; results are memoized per unordered pair since a
    witness read backwards witnesses the swapped pair.
    """
    if (p1.source, p1.target) != (p2.source, p2.target):
        raise InputError("premorphisms do not share their endpoints")
    key = frozenset((p1, p2))
    if cache is not None and key in cache:
        got = cache[key]
        if got is None or got[0] == p1:
            return got if got is None else got[1]
        return _swap_witness(got[1])
    found = _homotopy_search(F, p1, p2)
    if cache is not None:
        cache[key] = None if found is None else (p1, found)
    return found


def _swap_witness(w: HomotopyWitness) -> HomotopyWitness:
    return HomotopyWitness(
        w.vertex,
        w.from_source,
        w.from_target,
        w.from_apex2,
        w.from_apex1,
        w.alpha2,
        w.alpha1,
        w.beta2,
        w.beta1,
    )


def _homotopy_search(F, p1, p2):
    A = F.index
    marked = F.sigma.members
    src_i, tgt_i = p1.source.index, p1.target.index
    for D in A.objects:
        ws_opts = [c for c in A.one_cells_between(src_i, D) if c in marked]
        wt_opts = [c for c in A.one_cells_between(tgt_i, D) if c in marked]
        for ws in ws_opts:
            for wt in wt_opts:
                side2: dict[str, tuple[str, str, str]] = {}
                for w2, a2, b2 in _side_options(F, p2, D, ws, wt):
                    value = _paste_side(F, p2, w2, a2, b2)
                    side2.setdefault(value, (w2, a2, b2))
                if not side2:
                    continue
                for w1, a1, b1 in _side_options(F, p1, D, ws, wt):
                    value = _paste_side(F, p1, w1, a1, b1)
                    hit = side2.get(value)
                    if hit is not None:
                        return HomotopyWitness(
                            D, ws, wt, w1, hit[0], a1, hit[1], b1, hit[2]
                        )
    return None


def _side_options(F, pre, D, ws, wt):
    """Triples (apex leg, alpha, beta) for one side, canonical order."""
    A = F.index
    for w in A.one_cells_between(pre.apex, D):
        if w not in F.sigma.members:
            continue
        alphas = [
            a
            for a in A.two_cells_between(ws, A.compose1(w, pre.left))
            if A.invert2(a) is not None
        ]
        betas = A.two_cells_between(A.compose1(w, pre.right), wt)
        for a in alphas:
            for b in betas:
                yield (w, a, b)


# ---------------------------------------------------------------------------
# composing premorphisms over a glue cell
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Glue:
    """Choice closing a composable pair: marked legs out of the two apexes
    and a 2-cell between the induced spans at the middle object."""

    inner_leg: str  # apex(first) -> vertex, marked
    outer_leg: str  # apex(second) -> vertex, marked
    cell: str       # inner_leg . right(first) => outer_leg . left(second)


def validate_glue(F: CatDiagram, zeta: Premorphism, xi: Premorphism, glue: Glue) -> list[str]:
    A = F.index
    out = []
    if xi.target != zeta.source:
        return ["premorphisms are not composable"]
    for leg, apex in [(glue.inner_leg, xi.apex), (glue.outer_leg, zeta.apex)]:
        if leg not in F.sigma.members:
            out.append(f"glue leg {leg} is not marked")
        elif A.src1(leg) != apex:
            out.append(f"glue leg {leg} does not start at the apex {apex}")
    if out:
        return out
    if A.tgt1(glue.inner_leg) != A.tgt1(glue.outer_leg):
        return ["glue legs land in different objects"]
    want_src = A.compose1(glue.inner_leg, xi.right)
    want_tgt = A.compose1(glue.outer_leg, zeta.left)
    if A.src2(glue.cell) != want_src or A.tgt2(glue.cell) != want_tgt:
        out.append("glue cell has wrong endpoints")
    return out


_COSPAN_SHAPE = TwoComputad(
    "cospan",
    ["M", "P", "Q"],
    [ArrowGen("l", "M", "P"), ArrowGen("r", "M", "Q")],
    [],
)


def _cospan_cones(F: CatDiagram, mid: str, v: str, s: str):
    """Marked cones over the cospan v: mid -> ., s: mid -> ., in order."""
    free = free_2category(_COSPAN_SHAPE)
    A = F.index
    G = two_functor_from_generators(
        free,
        A,
        {"M": mid, "P": A.tgt1(v), "Q": A.tgt1(s)},
        {"l": v, "r": s},
        {},
    )
    return sigma_cone_iter(G, F.sigma)


def enumerate_glues(
    F: CatDiagram, zeta: Premorphism, xi: Premorphism, limit: int = 2
) -> list[Glue]:
    """Distinct valid glue choices, drawn from marked cospan cones in order."""
    A = F.index
    out: list[Glue] = []
    for cone in _cospan_cones(F, xi.target.index, xi.right, zeta.left):
        gamma = A.vcompose(A.invert2(cone.structural["r"]), cone.structural["l"])
        glue = Glue(cone.components["P"], cone.components["Q"], gamma)
        if glue not in out:
            out.append(glue)
        if len(out) >= limit:
            break
    return out


def compose_premorphisms(
    F: CatDiagram,
    zeta: Premorphism,
    xi: Premorphism,
    glue: Optional[Glue] = None,
    glue_cache: Optional[dict] = None,
) -> tuple[Premorphism, Glue]:
    """zeta after xi, pasted over a glue cell.

    Without an explicit glue the canonical one is taken from the first
    marked cone on the cospan at the middle object; a missing cone means the
    index pair is not filtered and is reported as such.
    """
    if xi.target != zeta.source:
        raise InputError("premorphisms are not composable")
    A = F.index
    if glue is None:
        cache_key = (xi.right, zeta.left)
        if glue_cache is not None and cache_key in glue_cache:
            glue = glue_cache[cache_key]
        else:
            got = enumerate_glues(F, zeta, xi, limit=1)
            if not got:
                raise NotSigmaFiltered(
                    "no marked cone over the middle cospan; the index pair is not filtered"
                )
            glue = got[0]
            if glue_cache is not None:
                glue_cache[cache_key] = glue
    else:
        bad = validate_glue(F, zeta, xi, glue)
        if bad:
            raise InputError("invalid glue: " + "; ".join(bad))
    vertex = A.tgt1(glue.inner_leg)
    E = F.on_objects[vertex]
    first = F.on_1cells[glue.inner_leg].arrow_map[xi.arrow]
    step = F.on_2cells[glue.cell].components[xi.target.value]
    second = F.on_1cells[glue.outer_leg].arrow_map[zeta.arrow]
    arrow = E.compose(second, E.compose(step, first))
    composite = Premorphism(
        source=xi.source,
        target=zeta.target,
        left=A.compose1(glue.inner_leg, xi.left),
        right=A.compose1(glue.outer_leg, zeta.right),
        apex=vertex,
        arrow=arrow,
    )
    return composite, glue


# ---------------------------------------------------------------------------
# the homotopy quotient and the colimit category
# ---------------------------------------------------------------------------


@dataclass
class QuotientResult:
    class_of: dict[Premorphism, Premorphism]
    classes: dict[Premorphism, list[Premorphism]]
    closure_added_pairs: int


def homotopy_quotient(F: CatDiagram, cache: Optional[dict] = None) -> QuotientResult:
    """Partition of the premorphisms of each hom pair.

    The one-step relation is computed exhaustively, then closed
    transitively with a union-find; the representative of a class is its
    least member.  The number of pairs added by closure is reported: the
    theory says it is zero over a filtered pair, so a nonzero count is a
    diagnostic, never silently used.
    """
    if cache is None:
        cache = {}
    objects = enumerate_objects(F)
    parent: dict[Premorphism, Premorphism] = {}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    def union(p, q):
        rp, rq = find(p), find(q)
        if rp != rq:
            # keep the least premorphism at the root
            lo, hi = sorted((rp, rq), key=Premorphism.sort_key)
            parent[hi] = lo

    one_step: set[frozenset] = set()
    for src in objects:
        for tgt in objects:
            prems = enumerate_premorphisms(F, src, tgt)
            for p in prems:
                parent.setdefault(p, p)
            for i, p in enumerate(prems):
                for q in prems[i + 1:]:
                    if is_homotopic(F, p, q, cache) is not None:
                        one_step.add(frozenset((p, q)))
                        union(p, q)
    closure_added = 0
    for p in parent:
        for q in parent:
            if p.sort_key() < q.sort_key() and (p.source, p.target) == (
                q.source,
                q.target,
            ):
                if find(p) == find(q) and frozenset((p, q)) not in one_step:
                    closure_added += 1
    classes: dict[Premorphism, list[Premorphism]] = {}
    for p in parent:
        classes.setdefault(find(p), []).append(p)
    for members in classes.values():
        members.sort(key=Premorphism.sort_key)
    class_of = {p: find(p) for p in parent}
    return QuotientResult(class_of, classes, closure_added)


@dataclass
class ColimCategory:
    diagram: CatDiagram
    category: FinCategory
    class_of: dict[Premorphism, Premorphism]
    classes: dict[Premorphism, list[Premorphism]]
    lam: SigmaCone
    closure_added_pairs: int

    def object_of(self, o: ColimObject) -> str:
        return o.ident()

    def arrow_of(self, p: Premorphism) -> str:
        try:
            return self.class_of[p].ident()
        except KeyError:
            raise InputError("unknown premorphism") from None


def build_colimit(F: CatDiagram, _caches: Optional[dict] = None) -> ColimCategory:
    """The quotient category together with its universal marked cone.

    Refuses diagrams whose index pair is not filtered: composition and the
    equivalence relation are only justified there.
    """
    rep = is_sigma_filtered(F.index, F.sigma)
    if not rep.holds:
        raise NotSigmaFiltered(
            "index pair fails: " + ", ".join(rep.failed_axioms)
        )
    homotopy_cache: dict = {} if _caches is None else _caches.setdefault("homotopy", {})
    glue_cache: dict = {} if _caches is None else _caches.setdefault("glue", {})
    quotient = homotopy_quotient(F, homotopy_cache)
    objects = enumerate_objects(F)

    arrows: dict[str, tuple[str, str]] = {}
    for rep_pre in quotient.classes:
        arrows[rep_pre.ident()] = (rep_pre.source.ident(), rep_pre.target.ident())
    identity = {}
    for o in objects:
        identity[o.ident()] = quotient.class_of[identity_premorphism(F, o)].ident()
    composition = {}
    reps = sorted(quotient.classes, key=lambda p: (p.source.ident(), p.target.ident(), p.sort_key()))
    for b in reps:
        for a in reps:
            if a.target != b.source:
                continue
            comp, _ = compose_premorphisms(F, b, a, glue_cache=glue_cache)
            composition[(b.ident(), a.ident())] = quotient.class_of[comp].ident()
    category = FinCategory(
        name=f"Colim({F.name})",
        objects=[o.ident() for o in objects],
        arrows=arrows,
        identity=identity,
        composition=composition,
    )

    lam_components = {}
    for A in F.index.objects:
        CA = F.on_objects[A]
        omap = {x: ColimObject(A, x).ident() for x in CA.objects}
        amap = {}
        for f, (x, y) in CA.arrows.items():
            i = F.index.id1(A)
            pre = Premorphism(ColimObject(A, x), ColimObject(A, y), i, i, A, f)
            amap[f] = quotient.class_of[pre].ident()
        lam_components[A] = Functor(CA, category, omap, amap)
    lam_structural = {}
    for u in F.index.one_cells():
        Asrc, Atgt = F.index.src1(u), F.index.tgt1(u)
        dom = compose_functors(lam_components[Atgt], F.on_1cells[u])
        comps = {}
        for x in F.on_objects[Asrc].objects:
            ux = F.on_1cells[u].object_map[x]
            pre = Premorphism(
                ColimObject(Atgt, ux),
                ColimObject(Asrc, x),
                F.index.id1(Atgt),
                u,
                Atgt,
                F.on_objects[Atgt].identity[ux],
            )
            comps[x] = quotient.class_of[pre].ident()
        lam_structural[u] = NatTransf(dom, lam_components[Asrc], comps)
    lam = SigmaCone(
        diagram=F,
        sigma=F.sigma,
        vertex=category,
        components=lam_components,
        structural=lam_structural,
    )
    return ColimCategory(
        diagram=F,
        category=category,
        class_of=quotient.class_of,
        classes=quotient.classes,
        lam=lam,
        closure_added_pairs=quotient.closure_added_pairs,
    )


def inverse_leg_component(L: ColimCategory, u: str, x: str) -> str:
    """The inverse of the structural cell of the universal cone at a marked
    1-cell, evaluated at x: the class of the swapped identity premorphism."""
    F = L.diagram
    A = F.index
    if u not in F.sigma.members:
        raise InputError(f"{u} is not marked")
    Asrc, Atgt = A.src1(u), A.tgt1(u)
    ux = F.on_1cells[u].object_map[x]
    pre = Premorphism(
        ColimObject(Asrc, x),
        ColimObject(Atgt, ux),
        u,
        A.id1(Atgt),
        Atgt,
        F.on_objects[Atgt].identity[ux],
    )
    return L.arrow_of(pre)


# ---------------------------------------------------------------------------
# the universal property
# ---------------------------------------------------------------------------


def factor_cone(L: ColimCategory, cone: SigmaCone) -> Functor:
    """The unique functor out of the colimit restricting to the given cone.

    Acts on a class by pasting the inverted left structural cell, the
    transported connecting arrow, and the right structural cell; the value
    is recomputed on every member of the class as a well-definedness check.
    """
    bad = validate_cone(cone)
    if bad:
        raise InputError("invalid cone: " + "; ".join(bad))
    F = L.diagram
    if cone.diagram is not F and cone.diagram != F:
        raise InputError("cone is not over the colimit's diagram")
    X = cone.vertex
    omap = {}
    for A in F.index.objects:
        for x in F.on_objects[A].objects:
            omap[ColimObject(A, x).ident()] = cone.components[A].object_map[x]
    amap = {}
    for rep, members in L.classes.items():
        values = {_factor_premorphism(cone, m) for m in members}
        if len(values) != 1:
            raise RuntimeError(
                f"cone value is not constant on the class of {rep.ident()}"
            )
        amap[rep.ident()] = values.pop()
    return Functor(L.category, X, omap, amap)


def _factor_premorphism(cone: SigmaCone, p: Premorphism) -> str:
    X = cone.vertex
    inv = invert_transf(cone.structural[p.left])
    start = inv.components[p.source.value]
    mid = cone.components[p.apex].arrow_map[p.arrow]
    end = cone.structural[p.right].components[p.target.value]
    return X.compose(end, X.compose(mid, start))


def precompose_cone(L: ColimCategory, h: Functor) -> SigmaCone:
    """The cone obtained by following the universal cone with a functor."""
    F = L.diagram
    components = {
        A: compose_functors(h, L.lam.components[A]) for A in F.index.objects
    }
    structural = {
        u: horizontal_composite(identity_transf(h), L.lam.structural[u])
        for u in F.index.one_cells()
    }
    return SigmaCone(F, F.sigma, h.codomain, components, structural)


def enumerate_cones(F: CatDiagram, E: FinCategory, cap: Optional[int] = None):
    """All marked cones on F with the given vertex, canonical order."""
    A = F.index
    comp_opts = {X: enumerate_functors(F.on_objects[X], E) for X in A.objects}
    non_id = [u for u in A.one_cells() if u not in set(A.identity_1cell.values())]
    count = 0
    for combo in itertools.product(*(comp_opts[X] for X in A.objects)):
        components = dict(zip(A.objects, combo))
        struct_opts = []
        for u in non_id:
            dom = compose_functors(components[A.tgt1(u)], F.on_1cells[u])
            cands = enumerate_nat_transfs(dom, components[A.src1(u)])
            if u in F.sigma.members:
                cands = [t for t in cands if invert_transf(t) is not None]
            struct_opts.append(cands)
        for cells in itertools.product(*struct_opts):
            structural = dict(zip(non_id, cells))
            for X in A.objects:
                structural[A.id1(X)] = identity_transf(components[X])
            cone = SigmaCone(F, F.sigma, E, dict(components), structural)
            if not validate_cone(cone):
                yield cone
                count += 1
                if cap is not None and count >= cap:
                    return


def _cone_signature(cone: SigmaCone):
    parts = []
    for A in sorted(cone.components):
        c = cone.components[A]
        parts.append((A, tuple(sorted(c.object_map.items())), tuple(sorted(c.arrow_map.items()))))
    for u in sorted(cone.structural):
        parts.append((u, tuple(sorted(cone.structural[u].components.items()))))
    return tuple(parts)


def _functor_signature(h: Functor):
    return (tuple(sorted(h.object_map.items())), tuple(sorted(h.arrow_map.items())))


@dataclass
class UniversalPropertyReport:
    holds: bool
    functor_count: int
    cone_count: int
    objects_bijective: bool
    arrows_bijective: bool
    capped: bool
    detail: str = ""


def check_universal_property(
    L: ColimCategory, E: FinCategory, max_functors: int = 500
) -> UniversalPropertyReport:
    """Pre-composition with the universal cone must identify the functor
    category into E with the category of marked cones on E.

    Both sides are enumerated exhaustively: functors against cones, and
    natural transformations against cone morphisms for every functor pair.
    Enumeration beyond the cap is reported, never silently truncated.
    """
    F = L.diagram
    functors = enumerate_functors(L.category, E)
    if len(functors) > max_functors:
        return UniversalPropertyReport(
            False, len(functors), -1, False, False, True, "functor cap exceeded"
        )
    cones = list(enumerate_cones(F, E))
    images = [precompose_cone(L, h) for h in functors]
    image_sigs = [_cone_signature(c) for c in images]
    cone_sigs = {_cone_signature(c): c for c in cones}
    objects_ok = (
        len(set(image_sigs)) == len(functors)
        and len(cones) == len(functors)
        and all(sig in cone_sigs for sig in image_sigs)
    )

    arrows_ok = True
    detail = ""
    for i, h1 in enumerate(functors):
        for j, h2 in enumerate(functors):
            nats = enumerate_nat_transfs(h1, h2)
            mors = _enumerate_cone_morphisms(images[i], images[j])
            mapped = []
            for t in nats:
                comp = {
                    A: horizontal_composite(t, identity_transf(L.lam.components[A]))
                    for A in F.index.objects
                }
                mapped.append(tuple(sorted(
                    (A, tuple(sorted(c.components.items()))) for A, c in comp.items()
                )))
            mor_sigs = {
                tuple(sorted(
                    (A, tuple(sorted(c.components.items()))) for A, c in m.components.items()
                ))
                for m in mors
            }
            if len(set(mapped)) != len(nats) or set(mapped) != mor_sigs:
                arrows_ok = False
                detail = f"arrow-level mismatch between functors {i} and {j}"
                break
        if not arrows_ok:
            break
    return UniversalPropertyReport(
        holds=objects_ok and arrows_ok,
        functor_count=len(functors),
        cone_count=len(cones),
        objects_bijective=objects_ok,
        arrows_bijective=arrows_ok,
        capped=False,
        detail=detail,
    )


def _enumerate_cone_morphisms(c1: SigmaCone, c2: SigmaCone):
    F = c1.diagram
    opts = []
    objs = F.index.objects
    for A in objs:
        opts.append(enumerate_nat_transfs(c1.components[A], c2.components[A]))
    out = []
    for combo in itertools.product(*opts):
        m = ConeMorphism(c1, c2, dict(zip(objs, combo)))
        if not validate_cone_morphism(m):
            out.append(m)
    return out


# ---------------------------------------------------------------------------
# the finite-diagram engine
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CompositeTerm:
    outer: "Term"
    inner: "Term"
    glue: Glue


Term = Union[int, CompositeTerm]


@dataclass
class LemmaInstance:
    """A family of premorphisms (each tagged with its diagram), formal
    composites over explicit glue cells, and homotopy equations."""

    diagrams: list[CatDiagram]
    premorphisms: list[Premorphism]
    terms: list[Term] = field(default_factory=list)
    equations: list[tuple[Term, Term]] = field(default_factory=list)


@dataclass
class LemmaOutput:
    vertex: str
    from_object: dict[str, str]
    apex_leg: dict[Term, str]
    mu: dict[Term, str]
    nu: dict[Term, str]
    tilde: dict[Term, Premorphism]
    cone: SigmaCone
    checks: list[tuple[str, bool, str]]

    @property
    def ok(self) -> bool:
        return all(flag for _, flag, _ in self.checks)


def eval_term(instance: LemmaInstance, term: Term) -> tuple[CatDiagram, Premorphism]:
    if isinstance(term, int):
        return instance.diagrams[term], instance.premorphisms[term]
    F1, inner = eval_term(instance, term.inner)
    F2, outer = eval_term(instance, term.outer)
    if F1 is not F2 and F1 != F2:
        raise InputError("composition mixes premorphisms of different diagrams")
    pre, _ = compose_premorphisms(F1, outer, inner, glue=term.glue)
    return F1, pre


def _closed_terms(instance: LemmaInstance) -> list[Term]:
    seen: list[Term] = []

    def add(t: Term):
        if isinstance(t, CompositeTerm):
            add(t.inner)
            add(t.outer)
        if t not in seen:
            seen.append(t)

    for i in range(len(instance.premorphisms)):
        add(i)
    for t in instance.terms:
        add(t)
    for a, b in instance.equations:
        add(a)
        add(b)
    return seen


def lemma_engine(instance: LemmaInstance) -> LemmaOutput:
    """Transport a family of premorphisms far enough that the requested
    homotopy equations hold strictly.

    Builds one finite shape holding every premorphism, every composite and
    every homotopy witness, takes the first marked cone over it, and pastes
    each premorphism with the cone's structural cells.  The output records
    how each transported premorphism arises and re-verifies, by direct
    table evaluation, the characteristic equalities of the construction.
    """
    if len(instance.diagrams) != len(instance.premorphisms):
        raise InputError("each premorphism needs its diagram")
    if not instance.premorphisms:
        raise InputError("empty instance")
    index = instance.diagrams[0].index
    sigma = instance.diagrams[0].sigma
    for F in instance.diagrams:
        if F.index is not index and F.index != index:
            raise InputError("premorphisms live over different index pairs")
        if F.sigma.members != sigma.members:
            raise InputError("premorphisms live over different marked classes")
    for i, (F, p) in enumerate(zip(instance.diagrams, instance.premorphisms)):
        bad = validate_premorphism(F, p)
        if bad:
            raise InputError(f"premorphism {i}: " + "; ".join(bad))

    terms = _closed_terms(instance)
    diagram_of: dict[Term, CatDiagram] = {}
    value_of: dict[Term, Premorphism] = {}
    for t in terms:
        diagram_of[t], value_of[t] = eval_term(instance, t)

    witnesses = []
    for a, b in instance.equations:
        va, vb = value_of[a], value_of[b]
        if (va.source, va.target) != (vb.source, vb.target):
            raise InputError("equation sides do not share their endpoints")
        w = is_homotopic(diagram_of[a], va, vb)
        if w is None:
            raise InputError("a requested homotopy equation does not hold")
        witnesses.append(w)

    shape, gmaps, chosen, node_of = _build_shape(instance, terms, value_of, witnesses)
    free = free_2category(shape)
    G = two_functor_from_generators(free, index, *gmaps)
    cone = sigma_cone_search(G, sigma)
    if cone is None:
        raise NotSigmaFiltered("no marked cone over the engine shape")

    from_object = {obj: cone.components[node] for obj, node in node_of.items()}
    apex_leg: dict[Term, str] = {}
    mu: dict[Term, str] = {}
    nu: dict[Term, str] = {}
    tilde: dict[Term, Premorphism] = {}
    for t in terms:
        star, a_path, b_path = chosen[t]
        F, p = diagram_of[t], value_of[t]
        z = cone.components[star]
        m = index.invert2(cone.structural[path_id(node_of[p.source.index], a_path)])
        n = cone.structural[path_id(node_of[p.target.index], b_path)]
        apex_leg[t], mu[t], nu[t] = z, m, n
        arrow = _paste_side(F, p, z, m, n)
        tilde[t] = Premorphism(
            p.source,
            p.target,
            from_object[p.source.index],
            from_object[p.target.index],
            cone.vertex,
            arrow,
        )

    checks = _lemma_checks(
        instance, terms, diagram_of, value_of, from_object, apex_leg, mu, nu, tilde, index
    )
    return LemmaOutput(
        vertex=cone.vertex,
        from_object=from_object,
        apex_leg=apex_leg,
        mu=mu,
        nu=nu,
        tilde=tilde,
        cone=cone,
        checks=checks,
    )


def _build_shape(instance, terms, value_of, witnesses):
    index = instance.diagrams[0].index
    identity_cells = set(index.identity_1cell.values())

    objects: list[str] = []
    arrows: list[ArrowGen] = []
    cells: list[CellGen] = []
    arrow_images: dict[str, str] = {}
    cell_images: dict[str, str] = {}

    node_of: dict[str, str] = {}
    endpoint_objs = sorted(
        {value_of[t].source.index for t in terms}
        | {value_of[t].target.index for t in terms}
    )
    for k, obj in enumerate(endpoint_objs):
        node_of[obj] = f"n{k}"
        objects.append(f"n{k}")

    star_of_apex: dict[str, str] = {}
    gen_of_leg: dict[str, str] = {}
    leaf_terms = [t for t in terms if isinstance(t, int)]
    plain = [
        t
        for t in leaf_terms
        if not (
            value_of[t].left in identity_cells and value_of[t].right in identity_cells
        )
    ]
    for t in plain:
        p = value_of[t]
        if p.apex not in star_of_apex:
            star_of_apex[p.apex] = f"s{len(star_of_apex)}"
            objects.append(star_of_apex[p.apex])
    for t in plain:
        p = value_of[t]
        for leg, start in [(p.left, p.source.index), (p.right, p.target.index)]:
            if leg not in gen_of_leg:
                name = f"a{len(gen_of_leg)}"
                gen_of_leg[leg] = name
                arrows.append(
                    ArrowGen(name, node_of[start], star_of_apex[p.apex],
                             leg in instance.diagrams[0].sigma.members)
                )
                arrow_images[name] = leg

    chosen: dict[Term, tuple[str, tuple, tuple]] = {}
    for t in leaf_terms:
        p = value_of[t]
        if t in plain:
            chosen[t] = (
                star_of_apex[p.apex],
                (gen_of_leg[p.left],),
                (gen_of_leg[p.right],),
            )
        else:
            chosen[t] = (node_of[p.source.index], (), ())

    # one fresh node, two arrows and one cell per composite occurrence
    comp_terms = [t for t in terms if isinstance(t, CompositeTerm)]
    for k, t in enumerate(comp_terms):
        star = f"c{k}"
        objects.append(star)
        c, d = f"cl{k}", f"cr{k}"
        inner_star, inner_a, inner_b = chosen[t.inner]
        outer_star, outer_a, outer_b = chosen[t.outer]
        arrows.append(ArrowGen(c, inner_star, star, True))
        arrows.append(ArrowGen(d, outer_star, star, True))
        arrow_images[c] = t.glue.inner_leg
        arrow_images[d] = t.glue.outer_leg
        cname = f"cg{k}"
        cells.append(CellGen(cname, inner_b + (c,), outer_a + (d,)))
        cell_images[cname] = t.glue.cell
        chosen[t] = (star, inner_a + (c,), outer_b + (d,))

    # one fresh node, four arrows and four cells per homotopy equation
    for k, ((ta, tb), w) in enumerate(zip(instance.equations, witnesses)):
        node = f"h{k}"
        objects.append(node)
        pa = value_of[ta]
        sa, aa, ba = chosen[ta]
        sb, ab, bb = chosen[tb]
        c, d, e, f = f"hc{k}", f"hd{k}", f"he{k}", f"hf{k}"
        arrows.append(ArrowGen(c, sa, node, True))
        arrows.append(ArrowGen(d, sb, node, True))
        arrows.append(ArrowGen(e, node_of[pa.source.index], node, True))
        arrows.append(ArrowGen(f, node_of[pa.target.index], node, True))
        arrow_images.update(
            {c: w.from_apex1, d: w.from_apex2, e: w.from_source, f: w.from_target}
        )
        names = [f"hx{k}_{i}" for i in range(4)]
        cells.append(CellGen(names[0], (e,), aa + (c,)))
        cells.append(CellGen(names[1], ba + (c,), (f,)))
        cells.append(CellGen(names[2], (e,), ab + (d,)))
        cells.append(CellGen(names[3], bb + (d,), (f,)))
        cell_images.update(
            {
                names[0]: w.alpha1,
                names[1]: w.beta1,
                names[2]: w.alpha2,
                names[3]: w.beta2,
            }
        )

    shape = TwoComputad("engine", objects, arrows, cells)
    on_objects = {node: obj for obj, node in node_of.items()}
    for apex, star in star_of_apex.items():
        on_objects[star] = apex
    for k, t in enumerate(comp_terms):
        on_objects[f"c{k}"] = index.tgt1(t.glue.inner_leg)
    for k, (_, w) in enumerate(zip(instance.equations, witnesses)):
        on_objects[f"h{k}"] = w.vertex
    return shape, (on_objects, arrow_images, cell_images), chosen, node_of


def compose_in_value(
    F: CatDiagram, second: Premorphism, first: Premorphism
) -> Premorphism:
    """Direct composite of premorphisms sharing a middle leg at one apex."""
    if first.target != second.source or first.apex != second.apex:
        raise InputError("premorphisms do not meet at one apex")
    if first.right != second.left:
        raise InputError("middle legs differ")
    E = F.on_objects[first.apex]
    return Premorphism(
        first.source,
        second.target,
        first.left,
        second.right,
        first.apex,
        E.compose(second.arrow, first.arrow),
    )


def _lemma_checks(
    instance, terms, diagram_of, value_of, from_object, apex_leg, mu, nu, tilde, index
):
    checks = []
    for i, (a, b) in enumerate(instance.equations):
        checks.append(
            (
                f"equation {i} transported to an equality",
                tilde[a] == tilde[b],
                f"{tilde[a].ident()} vs {tilde[b].ident()}",
            )
        )
    for t in terms:
        if not isinstance(t, CompositeTerm):
            continue
        direct = compose_in_value(diagram_of[t], tilde[t.outer], tilde[t.inner])
        checks.append(
            (
                "composite transported to the direct composite",
                tilde[t] == direct,
                f"term over glue {t.glue.cell}",
            )
        )
    legs_ok = all(
        tilde[t].left == from_object[value_of[t].source.index]
        and tilde[t].right == from_object[value_of[t].target.index]
        for t in terms
    )
    checks.append(("vertex legs depend only on the endpoint objects", legs_ok, ""))
    identity_cells = set(index.identity_1cell.values())
    for t in terms:
        if not isinstance(t, int):
            continue
        p = value_of[t]
        if p.left in identity_cells and p.right in identity_cells:
            ok = (
                apex_leg[t]
                == from_object[p.source.index]
                == from_object[p.target.index]
                and mu[t] == index.id2(apex_leg[t])
                and nu[t] == index.id2(apex_leg[t])
            )
            checks.append(("identity-shaped legs stay put", ok, f"leaf {t}"))
    failures = []
    leaves = [t for t in terms if isinstance(t, int)]
    for i in leaves:
        for j in leaves:
            pi, pj = value_of[i], value_of[j]
            ii = pi.left in identity_cells and pi.right in identity_cells
            jj = pj.left in identity_cells and pj.right in identity_cells
            if ii or jj:
                continue
            if pi.left == pj.left and mu[i] != mu[j]:
                failures.append(f"left legs of {i}, {j}")
            if pi.right == pj.right and nu[i] != nu[j]:
                failures.append(f"right legs of {i}, {j}")
            # a shared arrow used on both sides carries one structural cell,
            # entering inverted on the left side
            if pi.left == pj.right and mu[i] != index.invert2(nu[j]):
                failures.append(f"left leg of {i} against right leg of {j}")
    checks.append(
        ("leg cells depend only on the legs", not failures, "; ".join(failures))
    )
    for i, (a, b) in enumerate(instance.equations):
        ea = _eval_tilde(diagram_of[a], tilde, a)
        eb = _eval_tilde(diagram_of[b], tilde, b)
        checks.append(
            (f"equation {i} holds in the value at the vertex", ea == eb, "")
        )
    return checks


def _eval_tilde(F, tilde, term: Term) -> Premorphism:
    if isinstance(term, CompositeTerm):
        return compose_in_value(
            F, _eval_tilde(F, tilde, term.outer), _eval_tilde(F, tilde, term.inner)
        )
    return tilde[term]


def shared_homotopy(
    diagrams: list[CatDiagram],
    etas: list[Premorphism],
    xis: list[Premorphism],
) -> HomotopyWitness:
    """One witness serving every pair, for families sharing their legs.

    All the first-family premorphisms must share their two legs, likewise
    the second family, with each pair homotopic; the engine then yields leg
    cells depending only on the legs, so one four-tuple works throughout.
    """
    if not (len(diagrams) == len(etas) == len(xis)) or not etas:
        raise InputError("families must be nonempty and aligned")
    if len({(p.left, p.right) for p in etas}) != 1 or len(
        {(p.left, p.right) for p in xis}
    ) != 1:
        raise InputError("families do not share their legs")
    instance = LemmaInstance(
        diagrams=list(diagrams) + list(diagrams),
        premorphisms=list(etas) + list(xis),
        terms=[],
        equations=[(k, k + len(etas)) for k in range(len(etas))],
    )
    out = lemma_engine(instance)
    if not out.ok:
        raise RuntimeError("engine checks failed: " + repr(out.checks))
    k = 0
    witness = HomotopyWitness(
        vertex=out.vertex,
        from_source=out.from_object[etas[0].source.index],
        from_target=out.from_object[etas[0].target.index],
        from_apex1=out.apex_leg[k],
        from_apex2=out.apex_leg[k + len(etas)],
        alpha1=out.mu[k],
        alpha2=out.mu[k + len(etas)],
        beta1=out.nu[k],
        beta2=out.nu[k + len(etas)],
    )
    for i in range(len(etas)):
        bad = validate_homotopy(diagrams[i], etas[i], xis[i], witness)
        if bad:
            raise RuntimeError(f"shared witness fails on pair {i}: " + "; ".join(bad))
    return witness

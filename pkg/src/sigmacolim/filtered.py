"""Filteredness of a marked pair and exhaustive search for marked cones.

A lax cone over a diagram has components into a vertex and one structural
2-cell per 1-cell of the diagram's domain, subject to

    LC0:  theta_id      = id
    LC1:  theta_(g.f)   = theta_f . (theta_g * F f)
    LC2:  theta_f       = theta_g . (theta_B * F c)   for each 2-cell c: f => g
    LCM:  theta'_f . (phi_B * F f) = phi_A . theta_f  for cone morphisms

(``.`` vertical, ``*`` horizontal composition).  A marked cone additionally
has invertible structural cells on the marked 1-cells.  Cones live either
inside a finite 2-category (components are 1-cells) or in the 2-category of
categories (components are functors); both run through the same ops
interface.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Union

from .diagram import CatDiagram, CatOps
from .fincat import InputError, validate_functor, validate_nat_transf
from .two_cat import Fin2Category, SigmaClass, TwoFunctor


@dataclass
class SigmaCone:
    """A lax cone; ``sigma`` is the marked class driving invertibility."""

    diagram: Union[TwoFunctor, CatDiagram]
    sigma: SigmaClass
    vertex: object
    components: dict
    structural: dict

    def shape(self) -> Fin2Category:
        if isinstance(self.diagram, CatDiagram):
            return self.diagram.index
        return self.diagram.domain


@dataclass
class ConeMorphism:
    source: SigmaCone
    target: SigmaCone
    components: dict


def _cone_context(cone: SigmaCone):
    """(shape, ops, 1-cell action, 2-cell action, marked shape 1-cells)."""
    if isinstance(cone.diagram, CatDiagram):
        F = cone.diagram
        shape = F.index
        marked = {u for u in shape.one_cells() if u in cone.sigma.members}
        return shape, CatOps(), F.on_1cells.get, F.on_2cells.get, marked
    G = cone.diagram
    shape = G.domain
    marked = {
        f for f in shape.one_cells() if G.on_1cells.get(f) in cone.sigma.members
    }
    return shape, G.codomain, G.on_1cells.get, G.on_2cells.get, marked


def _component_violations(cone: SigmaCone, shape, act1) -> list[str]:
    out = []
    if isinstance(cone.diagram, CatDiagram):
        for X in shape.objects:
            comp = cone.components.get(X)
            if comp is None:
                out.append(f"no component at {X}")
            elif comp.domain != cone.diagram.on_objects[X] or comp.codomain != cone.vertex:
                out.append(f"component at {X} has wrong domain or codomain")
            elif validate_functor(comp):
                out.append(f"component at {X} is not a functor")
        for f in shape.one_cells():
            t = cone.structural.get(f)
            if t is None:
                out.append(f"no structural cell at {f}")
                continue
            bad = validate_nat_transf(t)
            if bad:
                out.append(f"structural cell at {f} is not natural: {bad[0]}")
    else:
        A = cone.diagram.codomain
        for X in shape.objects:
            comp = cone.components.get(X)
            if comp is None or comp not in A._pair_of_1cell:
                out.append(f"no component at {X}")
            elif A._pair_of_1cell[comp] != (cone.diagram.on_objects[X], cone.vertex):
                out.append(f"component at {X} has wrong endpoints")
        for f in shape.one_cells():
            t = cone.structural.get(f)
            if t is None or t not in A._pair_of_2cell:
                out.append(f"no structural cell at {f}")
                continue
            X, Y = shape.src1(f), shape.tgt1(f)
            want_src = A.compose1(cone.components[Y], act1(f))
            if A.src2(t) != want_src or A.tgt2(t) != cone.components[X]:
                out.append(f"structural cell at {f} has wrong endpoints")
    return out


def validate_cone(cone: SigmaCone) -> list[str]:
    shape, ops, act1, act2, marked = _cone_context(cone)
    out = _component_violations(cone, shape, act1)
    if out:
        return out
    th = cone.structural
    comp = cone.components
    for X in shape.objects:
        if not ops.equal2(th[shape.id1(X)], ops.id2(comp[X])):
            out.append(f"LC0 fails at {X}")
    for (g, f), c in shape.hcompose1.items():
        lhs = th[c]
        rhs = ops.vcompose(th[f], ops.hcompose(th[g], ops.id2(act1(f))))
        if not ops.equal2(lhs, rhs):
            out.append(f"LC1 fails at ({g}, {f})")
    for a in sorted(shape._pair_of_2cell):
        f, g = shape.src2(a), shape.tgt2(a)
        Y = shape.tgt1(f)
        rhs = ops.vcompose(th[g], ops.hcompose(ops.id2(comp[Y]), act2(a)))
        if not ops.equal2(th[f], rhs):
            out.append(f"LC2 fails at {a}")
    for f in sorted(marked):
        if ops.invert2(th[f]) is None:
            out.append(f"structural cell at marked {f} is not invertible")
    return out


def cone_has_marked_arrows(cone: SigmaCone) -> bool:
    """True when every component lies in the marked class (index cones only)."""
    if isinstance(cone.diagram, CatDiagram):
        raise InputError("marked arrows only make sense for cones inside the index")
    return all(c in cone.sigma.members for c in cone.components.values())


def validate_cone_morphism(m: ConeMorphism) -> list[str]:
    out = []
    src, tgt = m.source, m.target
    if src.diagram is not tgt.diagram and src.diagram != tgt.diagram:
        return ["source and target cones are over different diagrams"]
    if src.vertex != tgt.vertex:
        return ["source and target cones have different vertices"]
    shape, ops, act1, act2, _ = _cone_context(src)
    if isinstance(src.diagram, CatDiagram):
        for X in shape.objects:
            phi = m.components.get(X)
            if phi is None or validate_nat_transf(phi):
                out.append(f"component at {X} missing or not natural")
    else:
        A = src.diagram.codomain
        for X in shape.objects:
            phi = m.components.get(X)
            if phi is None or phi not in A._pair_of_2cell:
                out.append(f"component at {X} missing")
            elif A.src2(phi) != src.components[X] or A.tgt2(phi) != tgt.components[X]:
                out.append(f"component at {X} has wrong endpoints")
    if out:
        return out
    for f in shape.one_cells():
        X, Y = shape.src1(f), shape.tgt1(f)
        lhs = ops.vcompose(tgt.structural[f], ops.hcompose(m.components[Y], ops.id2(act1(f))))
        rhs = ops.vcompose(m.components[X], src.structural[f])
        if not ops.equal2(lhs, rhs):
            out.append(f"LCM fails at {f}")
    return out


# ---------------------------------------------------------------------------
# filteredness of a marked pair
# ---------------------------------------------------------------------------


@dataclass
class AxiomReport:
    axiom: str
    holds: bool
    witnesses: dict = field(default_factory=dict)
    counterexample: Optional[tuple] = None


def check_sigmaF0(A: Fin2Category, S: SigmaClass) -> AxiomReport:
    """Every object pair admits a marked cospan."""
    rep = AxiomReport("sigmaF0", True)
    for pair in itertools.product(A.objects, repeat=2):
        X, Y = pair
        found = None
        for E in A.objects:
            for f in A.one_cells_between(X, E):
                if f not in S.members:
                    continue
                for g in A.one_cells_between(Y, E):
                    if g in S.members:
                        found = (E, f, g)
                        break
                if found:
                    break
            if found:
                break
        if found:
            rep.witnesses[pair] = found
        else:
            return AxiomReport("sigmaF0", False, rep.witnesses, pair)
    return rep


def check_sigmaF1(A: Fin2Category, S: SigmaClass) -> AxiomReport:
    """Parallel pairs into a marked arrow admit a comparison 2-cell after a
    marked arrow; invertible when the unmarked side is marked too."""
    rep = AxiomReport("sigmaF1", True)
    for X in A.objects:
        for Y in A.objects:
            cells = A.one_cells_between(X, Y)
            for f in cells:
                for g in cells:
                    if g not in S.members:
                        continue
                    need_invertible = f in S.members
                    found = _search_F1(A, S, X, Y, f, g, invertible=False)
                    found_inv = (
                        _search_F1(A, S, X, Y, f, g, invertible=True)
                        if need_invertible
                        else None
                    )
                    if found is None or (need_invertible and found_inv is None):
                        return AxiomReport("sigmaF1", False, rep.witnesses, (f, g))
                    rep.witnesses[(f, g)] = (found, found_inv)
    return rep


def _search_F1(A, S, X, Y, f, g, invertible):
    for E in A.objects:
        for h in A.one_cells_between(Y, E):
            if h not in S.members:
                continue
            for a in A.two_cells_between(A.compose1(h, f), A.compose1(h, g)):
                if invertible and A.invert2(a) is None:
                    continue
                return (h, a)
    return None


def check_sigmaF2(
    A: Fin2Category, S: SigmaClass, require_source_marked: bool = False
) -> AxiomReport:
    """Parallel 2-cells into a marked arrow are merged by a marked arrow.

    The displayed hypothesis marks only the target arrow; pass
    ``require_source_marked=True`` for the stricter reading that also marks
    the source arrow.
    """
    rep = AxiomReport("sigmaF2", True)
    for X in A.objects:
        for Y in A.objects:
            for f in A.one_cells_between(X, Y):
                if require_source_marked and f not in S.members:
                    continue
                for g in A.one_cells_between(X, Y):
                    if g not in S.members:
                        continue
                    cells = A.two_cells_between(f, g)
                    for a in cells:
                        for b in cells:
                            found = None
                            for E in A.objects:
                                for h in A.one_cells_between(Y, E):
                                    if h not in S.members:
                                        continue
                                    if A.post_whisker(h, a) == A.post_whisker(h, b):
                                        found = h
                                        break
                                if found:
                                    break
                            if found is None:
                                return AxiomReport(
                                    "sigmaF2", False, rep.witnesses, (a, b)
                                )
                            rep.witnesses[(a, b)] = found
    return rep


@dataclass
class FilteredReport:
    holds: bool
    nonempty: bool
    axiom_reports: dict[str, AxiomReport]

    @property
    def failed_axioms(self) -> list[str]:
        out = [] if self.nonempty else ["nonempty"]
        out += [n for n, r in self.axiom_reports.items() if not r.holds]
        return out


def is_sigma_filtered(
    A: Fin2Category, S: SigmaClass, require_source_marked_f2: bool = False
) -> FilteredReport:
    nonempty = bool(A.objects)
    reports = {}
    if nonempty:
        reports["sigmaF0"] = check_sigmaF0(A, S)
        reports["sigmaF1"] = check_sigmaF1(A, S)
        reports["sigmaF2"] = check_sigmaF2(A, S, require_source_marked_f2)
    holds = nonempty and all(r.holds for r in reports.values())
    return FilteredReport(holds, nonempty, reports)


# ---------------------------------------------------------------------------
# exhaustive search for marked cones over finite 2-diagrams
# ---------------------------------------------------------------------------


def _derivation_plan(shape: Fin2Category) -> tuple[list[str], list[str]]:
    """(1-cells to search, 1-cells derivable from them through LC1)."""
    generators = shape.generating_1cells()
    known = set(shape.identity_1cell.values()) | set(generators)
    changed = True
    while changed:
        changed = False
        for (g, f), c in shape.hcompose1.items():
            if g in known and f in known and c not in known:
                known.add(c)
                changed = True
    underived = [f for f in shape.one_cells() if f not in known]
    return generators + underived, underived


def sigma_cone_iter(G: TwoFunctor, S: SigmaClass):
    """All marked cones over the finite 2-diagram G, in canonical order.

    Enumerates the vertex, then marked components per shape object, then
    structural cells per generating 1-cell; composites are filled in through
    LC1 and the full axiom set is re-checked before a cone is yielded.
    """
    A = G.codomain
    if S.owner is not A and S.owner != A:
        raise InputError("marked class does not belong to the diagram's codomain")
    shape = G.domain
    objs = shape.objects
    search_cells, _ = _derivation_plan(shape)

    def candidates_for(f: str, components: dict) -> list[str]:
        X, Y = shape.src1(f), shape.tgt1(f)
        src = A.compose1(components[Y], G.on_1cells[f])
        cells = A.two_cells_between(src, components[X])
        if G.on_1cells[f] in S.members:
            cells = [a for a in cells if A.invert2(a) is not None]
        return cells

    for E in A.objects:
        yield from _cones_at_vertex(G, S, E, objs, search_cells, candidates_for)


def sigma_cone_search(G: TwoFunctor, S: SigmaClass) -> Optional[SigmaCone]:
    """First marked cone in canonical order, or None.

    None is possible only over a pair that is not filtered; callers treat it
    as a rejection of the input.
    """
    return next(sigma_cone_iter(G, S), None)


def _cones_at_vertex(G, S, E, objs, search_cells, candidates_for):
    A = G.codomain
    shape = G.domain
    components: dict[str, str] = {}

    def component_options(X: str) -> list[str]:
        return [
            c for c in A.one_cells_between(G.on_objects[X], E) if c in S.members
        ]

    def assign(i: int):
        if i == len(objs):
            yield from _structural_choices(G, S, E, components, search_cells, candidates_for)
            return
        X = objs[i]
        for c in component_options(X):
            components[X] = c
            # prune: every fully-anchored searched 1-cell still needs a candidate
            ok = True
            for f in search_cells:
                if shape.src1(f) in components and shape.tgt1(f) in components:
                    if not candidates_for(f, components):
                        ok = False
                        break
            if ok:
                yield from assign(i + 1)
            del components[X]

    yield from assign(0)


def _structural_choices(G, S, E, components, search_cells, candidates_for):
    A = G.codomain
    shape = G.domain
    options = [candidates_for(f, components) for f in search_cells]
    for choice in itertools.product(*options):
        structural = dict(zip(search_cells, choice))
        for X in shape.objects:
            structural[shape.id1(X)] = A.id2(components[X])
        if not _derive_composites(G, structural):
            continue
        cone = SigmaCone(
            diagram=G,
            sigma=S,
            vertex=E,
            components=dict(components),
            structural=structural,
        )
        if not validate_cone(cone):
            yield cone


def _derive_composites(G: TwoFunctor, structural: dict) -> bool:
    """Fill structural cells of composite 1-cells through LC1; False when a
    composite would receive two different values."""
    A = G.codomain
    shape = G.domain
    changed = True
    while changed:
        changed = False
        for (g, f), c in sorted(shape.hcompose1.items()):
            if g not in structural or f not in structural:
                continue
            value = A.vcompose(
                structural[f], A.hcompose(structural[g], A.id2(G.on_1cells[f]))
            )
            if c not in structural:
                structural[c] = value
                changed = True
            elif structural[c] != value:
                return False
    return all(f in structural for f in shape.one_cells())

"""Finite categories as explicit tables.

A category is stored as plain data: object identifiers, arrow identifiers
with endpoints, an identity table, and a total composition table on
composable pairs.  Every check in this module is an exhaustive scan of the
tables; nothing is ever assumed to hold.

Convention: ``composition[(g, f)]`` is the composite "g after f", defined
exactly when ``target(f) == source(g)``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterator, Optional


class InputError(ValueError):
    """An operation received identifiers or structures it cannot use."""


def tuple_id(payload) -> str:
    """Stable, collision-free identifier for a synthesized object or arrow.

    The payload (nested lists of strings) is encoded as compact JSON, so
    distinct payloads can never produce the same identifier.
    """
    return json.dumps(payload, separators=(",", ":"))


@dataclass
class FinCategory:
    name: str
    objects: list[str]
    arrows: dict[str, tuple[str, str]]
    identity: dict[str, str]
    composition: dict[tuple[str, str], str]

    def __post_init__(self):
        self.objects = sorted(self.objects)
        self._identity_arrows = set(self.identity.values())

    def source(self, f: str) -> str:
        return self._endpoints(f)[0]

    def target(self, f: str) -> str:
        return self._endpoints(f)[1]

    def _endpoints(self, f: str) -> tuple[str, str]:
        try:
            return self.arrows[f]
        except KeyError:
            raise InputError(f"{self.name}: unknown arrow {f!r}") from None

    def id_of(self, x: str) -> str:
        try:
            return self.identity[x]
        except KeyError:
            raise InputError(f"{self.name}: unknown object {x!r}") from None

    def is_identity(self, f: str) -> bool:
        return f in self._identity_arrows

    def compose(self, g: str, f: str) -> str:
        """g after f."""
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise InputError(
                f"{self.name}: no composite for ({g!r}, {f!r})"
            ) from None

    def arrow_list(self) -> list[str]:
        return sorted(self.arrows)

    def hom(self, x: str, y: str) -> list[str]:
        return sorted(f for f, (s, t) in self.arrows.items() if s == x and t == y)

    def composable_pairs(self) -> Iterator[tuple[str, str]]:
        """All (g, f) with target(f) == source(g), canonical order."""
        for g in self.arrow_list():
            for f in self.arrow_list():
                if self.arrows[f][1] == self.arrows[g][0]:
                    yield (g, f)


def terminal_category(name: str = "1") -> FinCategory:
    return FinCategory(
        name=name,
        objects=["*"],
        arrows={"id*": ("*", "*")},
        identity={"*": "id*"},
        composition={("id*", "id*"): "id*"},
    )


def empty_category(name: str = "0") -> FinCategory:
    return FinCategory(name=name, objects=[], arrows={}, identity={}, composition={})


def validate_category(C: FinCategory) -> list[str]:
    """All table-level violations; empty list means C is a category."""
    out = []
    objset = set(C.objects)
    for f, (s, t) in sorted(C.arrows.items()):
        if s not in objset:
            out.append(f"arrow {f}: unknown source {s}")
        if t not in objset:
            out.append(f"arrow {f}: unknown target {t}")
    for x in C.objects:
        i = C.identity.get(x)
        if i is None:
            out.append(f"object {x}: no identity arrow")
        elif i not in C.arrows:
            out.append(f"object {x}: identity {i} is not an arrow")
        elif C.arrows[i] != (x, x):
            out.append(f"object {x}: identity {i} has endpoints {C.arrows[i]}")
    for x in set(C.identity) - objset:
        out.append(f"identity table mentions unknown object {x}")
    if out:
        return out  # endpoint errors make the checks below meaningless

    comp = C.composition
    for (g, f), h in sorted(comp.items()):
        if g not in C.arrows or f not in C.arrows:
            out.append(f"composite entry ({g}, {f}) uses unknown arrows")
            continue
        if C.arrows[f][1] != C.arrows[g][0]:
            out.append(f"composite entry ({g}, {f}) is not composable")
        elif h not in C.arrows:
            out.append(f"composite of ({g}, {f}) is unknown arrow {h}")
        elif C.arrows[h] != (C.arrows[f][0], C.arrows[g][1]):
            out.append(f"composite of ({g}, {f}) has wrong endpoints: {h}")
    for g, f in C.composable_pairs():
        if (g, f) not in comp:
            out.append(f"missing composite for ({g}, {f})")
    if out:
        return out

    for f in C.arrow_list():
        s, t = C.arrows[f]
        if comp[(f, C.identity[s])] != f:
            out.append(f"right unit fails at {f}")
        if comp[(C.identity[t], f)] != f:
            out.append(f"left unit fails at {f}")
    arrows = C.arrow_list()
    for h in arrows:
        for g in arrows:
            if C.arrows[g][1] != C.arrows[h][0]:
                continue
            for f in arrows:
                if C.arrows[f][1] != C.arrows[g][0]:
                    continue
                if comp[(h, comp[(g, f)])] != comp[(comp[(h, g)], f)]:
                    out.append(f"associativity fails at ({h}, {g}, {f})")
    return out


def is_isomorphism(C: FinCategory, f: str) -> Optional[str]:
    """The two-sided inverse of f, found by scanning all arrows, or None."""
    s, t = C._endpoints(f)
    for g in C.hom(t, s):
        if C.compose(g, f) == C.identity[s] and C.compose(f, g) == C.identity[t]:
            return g
    return None


@dataclass
class Functor:
    domain: FinCategory
    codomain: FinCategory
    object_map: dict[str, str]
    arrow_map: dict[str, str]

    def on_object(self, x: str) -> str:
        try:
            return self.object_map[x]
        except KeyError:
            raise InputError(f"functor has no value on object {x!r}") from None

    def on_arrow(self, f: str) -> str:
        try:
            return self.arrow_map[f]
        except KeyError:
            raise InputError(f"functor has no value on arrow {f!r}") from None


def identity_functor(C: FinCategory) -> Functor:
    return Functor(C, C, {x: x for x in C.objects}, {f: f for f in C.arrows})


def compose_functors(G: Functor, F: Functor) -> Functor:
    """G after F."""
    if G.domain is not F.codomain and G.domain != F.codomain:
        raise InputError("functors are not composable")
    return Functor(
        F.domain,
        G.codomain,
        {x: G.object_map[y] for x, y in F.object_map.items()},
        {f: G.arrow_map[g] for f, g in F.arrow_map.items()},
    )


def validate_functor(F: Functor) -> list[str]:
    out = []
    C, D = F.domain, F.codomain
    for x in C.objects:
        if F.object_map.get(x) not in D.objects:
            out.append(f"object {x}: image {F.object_map.get(x)} not in codomain")
    for f in C.arrow_list():
        g = F.arrow_map.get(f)
        if g not in D.arrows:
            out.append(f"arrow {f}: image {g} not in codomain")
            continue
        s, t = C.arrows[f]
        if D.arrows[g] != (F.object_map.get(s), F.object_map.get(t)):
            out.append(f"arrow {f}: image {g} has wrong endpoints")
    if out:
        return out
    for x in C.objects:
        if F.arrow_map[C.identity[x]] != D.identity[F.object_map[x]]:
            out.append(f"identity of {x} not preserved")
    for g, f in C.composable_pairs():
        lhs = F.arrow_map[C.compose(g, f)]
        rhs = D.compose(F.arrow_map[g], F.arrow_map[f])
        if lhs != rhs:
            out.append(f"composition not preserved on ({g}, {f})")
    return out


@dataclass
class NatTransf:
    domain: Functor
    codomain: Functor
    components: dict[str, str]

    def at(self, x: str) -> str:
        try:
            return self.components[x]
        except KeyError:
            raise InputError(f"transformation has no component at {x!r}") from None


def identity_transf(F: Functor) -> NatTransf:
    comp = {x: F.codomain.identity[F.object_map[x]] for x in F.domain.objects}
    return NatTransf(F, F, comp)


def validate_nat_transf(t: NatTransf) -> list[str]:
    out = []
    F, G = t.domain, t.codomain
    if F.domain != G.domain or F.codomain != G.codomain:
        return ["domain/codomain functors are not parallel"]
    D = F.codomain
    for x in F.domain.objects:
        c = t.components.get(x)
        if c not in D.arrows:
            out.append(f"component at {x} is not an arrow: {c}")
        elif D.arrows[c] != (F.object_map[x], G.object_map[x]):
            out.append(f"component at {x} has wrong endpoints")
    if out:
        return out
    for f in F.domain.arrow_list():
        s, e = F.domain.arrows[f]
        lhs = D.compose(t.components[e], F.arrow_map[f])
        rhs = D.compose(G.arrow_map[f], t.components[s])
        if lhs != rhs:
            out.append(f"naturality square fails at {f}")
    return out


def vertical_composite(u: NatTransf, t: NatTransf) -> NatTransf:
    """u after t (componentwise composition in the codomain category)."""
    D = t.domain.codomain
    comp = {x: D.compose(u.components[x], t.components[x]) for x in t.components}
    return NatTransf(t.domain, u.codomain, comp)


def horizontal_composite(u: NatTransf, t: NatTransf) -> NatTransf:
    """u beside t, for t: F => F' (C -> D) and u: G => G' (D -> E)."""
    F, Fp = t.domain, t.codomain
    G, Gp = u.domain, u.codomain
    E = G.codomain
    comp = {
        x: E.compose(u.components[Fp.object_map[x]], G.arrow_map[t.components[x]])
        for x in F.domain.objects
    }
    return NatTransf(compose_functors(G, F), compose_functors(Gp, Fp), comp)


def invert_transf(t: NatTransf) -> Optional[NatTransf]:
    """Componentwise inverse, when every component is an isomorphism."""
    D = t.domain.codomain
    comp = {}
    for x, c in t.components.items():
        inv = is_isomorphism(D, c)
        if inv is None:
            return None
        comp[x] = inv
    return NatTransf(t.codomain, t.domain, comp)


def enumerate_functors(domain: FinCategory, codomain: FinCategory) -> list[Functor]:
    """All functors domain -> codomain, in canonical order."""
    non_id = [f for f in domain.arrow_list() if not domain.is_identity(f)]
    pairs = [
        (g, f, domain.compose(g, f))
        for g, f in domain.composable_pairs()
        if not (domain.is_identity(g) or domain.is_identity(f))
    ]
    found = []
    for images in itertools.product(codomain.objects, repeat=len(domain.objects)):
        object_map = dict(zip(domain.objects, images))
        arrow_map = {
            domain.identity[x]: codomain.identity[object_map[x]]
            for x in domain.objects
        }

        def consistent(touched: str) -> bool:
            for g, f, c in pairs:
                if touched not in (g, f, c):
                    continue
                if g in arrow_map and f in arrow_map and c in arrow_map:
                    if codomain.compose(arrow_map[g], arrow_map[f]) != arrow_map[c]:
                        return False
            return True

        def extend(i: int):
            if i == len(non_id):
                found.append(Functor(domain, codomain, dict(object_map), dict(arrow_map)))
                return
            f = non_id[i]
            s, t = domain.arrows[f]
            for img in codomain.hom(object_map[s], object_map[t]):
                arrow_map[f] = img
                if consistent(f):
                    extend(i + 1)
                del arrow_map[f]

        extend(0)
    return found


def enumerate_nat_transfs(F: Functor, G: Functor) -> list[NatTransf]:
    """All natural transformations F => G, in canonical order."""
    W, D = F.domain, F.codomain
    non_id = [f for f in W.arrow_list() if not W.is_identity(f)]
    components: dict[str, str] = {}
    found = []

    def natural(touched: str) -> bool:
        for f in non_id:
            s, e = W.arrows[f]
            if touched not in (s, e):
                continue
            if s in components and e in components:
                if D.compose(components[e], F.arrow_map[f]) != D.compose(
                    G.arrow_map[f], components[s]
                ):
                    return False
        return True

    def extend(i: int):
        if i == len(W.objects):
            found.append(NatTransf(F, G, dict(components)))
            return
        x = W.objects[i]
        for c in D.hom(F.object_map[x], G.object_map[x]):
            components[x] = c
            if natural(x):
                extend(i + 1)
            del components[x]

    extend(0)
    return found


def functor_object_id(F: Functor) -> str:
    """Identifier of a functor as an object of a functor category.

    Naming scheme: compact JSON of the object assignments followed by the
    non-identity arrow assignments, both in canonical order.
    """
    objs = [[x, F.object_map[x]] for x in F.domain.objects]
    arrs = [
        [f, F.arrow_map[f]]
        for f in F.domain.arrow_list()
        if not F.domain.is_identity(f)
    ]
    return tuple_id([objs, arrs])


def nat_arrow_id(t: NatTransf) -> str:
    """Identifier of a transformation as an arrow of a functor category."""
    comps = [[x, t.components[x]] for x in sorted(t.components)]
    return tuple_id([functor_object_id(t.domain), functor_object_id(t.codomain), comps])


def functor_category(C: FinCategory, W: FinCategory) -> FinCategory:
    """The category of all functors W -> C and all transformations between them."""
    if validate_category(C) or validate_category(W):
        raise InputError("functor_category requires valid input categories")
    funs = enumerate_functors(W, C)
    ids = [functor_object_id(F) for F in funs]
    by_id = dict(zip(ids, funs))
    arrows: dict[str, tuple[str, str]] = {}
    transfs: dict[str, NatTransf] = {}
    for sid, F in zip(ids, funs):
        for tid, G in zip(ids, funs):
            for t in enumerate_nat_transfs(F, G):
                a = nat_arrow_id(t)
                arrows[a] = (sid, tid)
                transfs[a] = t
    identity = {fid: nat_arrow_id(identity_transf(by_id[fid])) for fid in ids}
    composition = {}
    for b, (bs, bt) in arrows.items():
        for a, (as_, at) in arrows.items():
            if at != bs:
                continue
            composition[(b, a)] = nat_arrow_id(vertical_composite(transfs[b], transfs[a]))
    return FinCategory(
        name=f"[{W.name},{C.name}]",
        objects=ids,
        arrows=arrows,
        identity=identity,
        composition=composition,
    )


def functor_category_objects(C: FinCategory, W: FinCategory) -> list[Functor]:
    """The functors underlying the objects of functor_category(C, W), same order."""
    return enumerate_functors(W, C)


def product_category(
    C: FinCategory, D: FinCategory
) -> tuple[FinCategory, Functor, Functor]:
    """Binary product with its two projections; names are identifier pairs."""
    objects = [tuple_id([c, d]) for c in C.objects for d in D.objects]
    arrows = {
        tuple_id([f, g]): (
            tuple_id([C.arrows[f][0], D.arrows[g][0]]),
            tuple_id([C.arrows[f][1], D.arrows[g][1]]),
        )
        for f in C.arrow_list()
        for g in D.arrow_list()
    }
    identity = {
        tuple_id([c, d]): tuple_id([C.identity[c], D.identity[d]])
        for c in C.objects
        for d in D.objects
    }
    composition = {}
    for g2, f2 in C.composable_pairs():
        c2 = C.compose(g2, f2)
        for g1, f1 in D.composable_pairs():
            composition[(tuple_id([g2, g1]), tuple_id([f2, f1]))] = tuple_id(
                [c2, D.compose(g1, f1)]
            )
    P = FinCategory(
        name=f"{C.name}x{D.name}",
        objects=objects,
        arrows=arrows,
        identity=identity,
        composition=composition,
    )
    proj1 = Functor(
        P,
        C,
        {tuple_id([c, d]): c for c in C.objects for d in D.objects},
        {tuple_id([f, g]): f for f in C.arrow_list() for g in D.arrow_list()},
    )
    proj2 = Functor(
        P,
        D,
        {tuple_id([c, d]): d for c in C.objects for d in D.objects},
        {tuple_id([f, g]): g for f in C.arrow_list() for g in D.arrow_list()},
    )
    return P, proj1, proj2


def pseudo_equalizer(f: Functor, g: Functor) -> tuple[FinCategory, Functor]:
    """Objects (x, y, i, j) with i: f(x) ~ y and j: g(x) ~ y isomorphisms.

    A morphism (x, y, i, j) -> (x', y', i', j') is a pair (a, b) with
    b.i = i'.f(a) and b.j = j'.g(a); composition is componentwise.
    Returns the category and the projection to the domain of f and g.
    """
    if f.domain != g.domain or f.codomain != g.codomain:
        raise InputError("pseudo_equalizer requires a parallel pair of functors")
    C, D = f.domain, f.codomain
    isos: dict[tuple[str, str], list[str]] = {}
    for h in D.arrow_list():
        if is_isomorphism(D, h) is not None:
            isos.setdefault(D.arrows[h], []).append(h)

    obj_data = []  # (id, x, y, i, j)
    for x in C.objects:
        for y in D.objects:
            for i in isos.get((f.object_map[x], y), []):
                for j in isos.get((g.object_map[x], y), []):
                    obj_data.append((tuple_id([x, y, i, j]), x, y, i, j))
    objects = [o[0] for o in obj_data]

    arrows: dict[str, tuple[str, str]] = {}
    parts: dict[str, tuple[str, str]] = {}  # arrow id -> (a, b)
    identity = {}
    for sid, x, y, i, j in obj_data:
        for tid, x2, y2, i2, j2 in obj_data:
            for a in C.hom(x, x2):
                fa, ga = f.arrow_map[a], g.arrow_map[a]
                for b in D.hom(y, y2):
                    if D.compose(b, i) != D.compose(i2, fa):
                        continue
                    if D.compose(b, j) != D.compose(j2, ga):
                        continue
                    aid = tuple_id([a, b, sid, tid])
                    arrows[aid] = (sid, tid)
                    parts[aid] = (a, b)
        identity[sid] = tuple_id([C.identity[x], D.identity[y], sid, sid])
    composition = {}
    for q, (qs, qt) in arrows.items():
        for p, (ps, pt) in arrows.items():
            if pt != qs:
                continue
            a = C.compose(parts[q][0], parts[p][0])
            b = D.compose(parts[q][1], parts[p][1])
            composition[(q, p)] = tuple_id([a, b, ps, qt])
    E = FinCategory(
        name=f"PEq({f.domain.name})",
        objects=objects,
        arrows=arrows,
        identity=identity,
        composition=composition,
    )
    proj = Functor(
        E,
        C,
        {o[0]: o[1] for o in obj_data},
        {aid: ab[0] for aid, ab in parts.items()},
    )
    return E, proj


@dataclass
class EquivalenceReport:
    """Outcome of the three equivalence-of-categories tests for one functor.

    A true flag carries witnesses, a false flag carries the first
    counterexample in canonical order.
    """

    essentially_surjective: bool
    surjectivity_witness: dict[str, tuple[str, str]] = field(default_factory=dict)
    surjectivity_counterexample: Optional[str] = None
    full: bool = True
    fullness_counterexample: Optional[tuple[str, str, str]] = None
    faithful: bool = True
    faithfulness_counterexample: Optional[tuple[str, str]] = None

    @property
    def is_equivalence(self) -> bool:
        return self.essentially_surjective and self.full and self.faithful


def equivalence_check(F: Functor) -> EquivalenceReport:
    """Test essential surjectivity, fullness and faithfulness by brute force."""
    C, D = F.domain, F.codomain
    witness: dict[str, tuple[str, str]] = {}
    surj = True
    surj_counter = None
    for d in D.objects:
        found = None
        for c in C.objects:
            for h in D.hom(F.object_map[c], d):
                if is_isomorphism(D, h) is not None:
                    found = (c, h)
                    break
            if found:
                break
        if found:
            witness[d] = found
        elif surj:
            surj = False
            surj_counter = d

    full = True
    full_counter = None
    faithful = True
    faithful_counter = None
    for c in C.objects:
        for c2 in C.objects:
            image: dict[str, str] = {}
            for m in C.hom(c, c2):
                fm = F.arrow_map[m]
                if fm in image and faithful:
                    faithful = False
                    faithful_counter = (image[fm], m)
                image.setdefault(fm, m)
            for a in D.hom(F.object_map[c], F.object_map[c2]):
                if a not in image and full:
                    full = False
                    full_counter = (c, c2, a)
    return EquivalenceReport(
        essentially_surjective=surj,
        surjectivity_witness=witness,
        surjectivity_counterexample=surj_counter,
        full=full,
        fullness_counterexample=full_counter,
        faithful=faithful,
        faithfulness_counterexample=faithful_counter,
    )


def functor_is_isomorphism(F: Functor) -> bool:
    """True when F is bijective on objects and on arrows (an exact table match)."""
    if validate_functor(F):
        return False
    objs = set(F.object_map.values())
    arrs = set(F.arrow_map.values())
    return (
        len(objs) == len(F.object_map) == len(F.codomain.objects)
        and len(arrs) == len(F.arrow_map) == len(F.codomain.arrows)
    )

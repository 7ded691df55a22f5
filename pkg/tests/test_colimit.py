import pytest

from sigmacolim.colimit import (
    ColimObject,
    CompositeTerm,
    LemmaInstance,
    NotSigmaFiltered,
    Premorphism,
    build_colimit,
    check_universal_property,
    compose_in_value,
    compose_premorphisms,
    enumerate_glues,
    enumerate_objects,
    enumerate_premorphisms,
    factor_cone,
    homotopy_quotient,
    identity_premorphism,
    inverse_leg_component,
    is_homotopic,
    lemma_engine,
    precompose_cone,
    shared_homotopy,
    validate_homotopy,
    validate_premorphism,
)
from sigmacolim.diagram import diagram_from_computad
from sigmacolim.filtered import validate_cone
from sigmacolim.fincat import (
    Functor,
    InputError,
    equivalence_check,
    functor_is_isomorphism,
    identity_functor,
    is_isomorphism,
    terminal_category,
    validate_category,
    validate_functor,
)
from sigmacolim.fixtures import (
    arrow_diagram,
    bundled_diagrams,
    iso_cell_diagram,
    parallel_pair_index,
    terminal_diagram,
    walking_arrow,
)
from sigmacolim.two_cat import ArrowGen, TwoComputad, free_2category, two_functor_from_generators


@pytest.fixture(scope="module")
def colimits():
    return {name: build_colimit(F) for name, F in bundled_diagrams().items()}


def test_enumerate_objects_terminal():
    F = terminal_diagram()
    objs = enumerate_objects(F)
    assert len(objs) == len(F.on_objects["T"].objects)
    assert objs == sorted(objs, key=lambda o: (o.index, o.value))


def test_enumerate_premorphisms_terminal_index():
    F = terminal_diagram()
    src = ColimObject("T", "a")
    tgt = ColimObject("T", "b")
    prems = enumerate_premorphisms(F, src, tgt)
    # triples (id, arrow, id) over the hom-set of the value
    assert [p.arrow for p in prems] == F.on_objects["T"].hom("a", "b")
    assert all(p.left == "1@T" and p.right == "1@T" for p in prems)
    for p in prems:
        assert validate_premorphism(F, p) == []


def test_enumerate_premorphisms_no_common_target():
    free = parallel_pair_index()
    # restrict the marked class to identities: no marked leg reaches 1 from 0
    from sigmacolim.two_cat import SigmaClass

    F = diagram_from_computad(
        "F",
        free,
        {"0": terminal_category("V0"), "1": terminal_category("V1")},
        {
            "f": Functor(terminal_category("V0"), terminal_category("V1"), {"*": "*"}, {"id*": "id*"}),
            "g": Functor(terminal_category("V0"), terminal_category("V1"), {"*": "*"}, {"id*": "id*"}),
        },
    )
    F.sigma = SigmaClass(free.category, set(free.category.identity_1cell.values()))
    # the only marked leg out of 0 stays at 0, and nothing maps 1 -> 0
    assert enumerate_premorphisms(F, ColimObject("0", "*"), ColimObject("1", "*")) == []


def test_premorphism_counts_arrow_fixture():
    # frozen regression values for the bundled diagram on the arrow index
    F = arrow_diagram()
    counts = {}
    for s in enumerate_objects(F):
        for t in enumerate_objects(F):
            n = len(enumerate_premorphisms(F, s, t))
            counts[(s.ident(), t.ident())] = n
    # 7 premorphisms among pairs at index 0 (two apex routes each way the
    # hom is nonempty) plus 12 singletons through the top value
    assert sum(counts.values()) == 19
    assert counts[(ColimObject("0", "a").ident(), ColimObject("0", "b").ident())] == 2
    assert counts[(ColimObject("0", "b").ident(), ColimObject("0", "a").ident())] == 1


def test_homotopy_reflexive_on_bundled_diagrams():
    for F in bundled_diagrams().values():
        for s in enumerate_objects(F):
            for t in enumerate_objects(F):
                for p in enumerate_premorphisms(F, s, t):
                    w = is_homotopic(F, p, p)
                    assert w is not None
                    assert validate_homotopy(F, p, p, w) == []


def test_homotopy_on_arrow_fixture_matches_transport():
    # a premorphism at the lower apex is homotopic to exactly the transport
    # of its connecting arrow at the upper apex
    F = arrow_diagram()
    a0, b0 = ColimObject("0", "a"), ColimObject("0", "b")
    p_low = Premorphism(a0, b0, "1@0", "1@0", "0", "f")
    p_up_good = Premorphism(a0, b0, "u", "u", "1", "s")
    w = is_homotopic(F, p_low, p_up_good)
    assert w is not None
    assert validate_homotopy(F, p_low, p_up_good, w) == []


def test_homotopy_absent_between_distinct_transports():
    # two distinct arrows of the value at 1 never merge: nothing maps on
    F = arrow_diagram()
    a1, b1 = ColimObject("1", "a"), ColimObject("1", "b")
    p1 = Premorphism(a1, b1, "1@1", "1@1", "1", "s")
    q1 = enumerate_premorphisms(F, a1, a1)
    assert is_homotopic(
        F,
        Premorphism(a1, a1, "1@1", "1@1", "1", "ida"),
        Premorphism(a1, a1, "1@1", "1@1", "1", "ida"),
    ) is not None
    r1 = Premorphism(a1, b1, "1@1", "1@1", "1", "s")
    assert is_homotopic(F, p1, r1) is not None  # equal premorphisms
    # distinct parallel arrows at the top object stay distinct
    two = [p for p in enumerate_premorphisms(F, a1, b1)]
    assert len(two) == 1  # only s lands a->b in the walking iso


def test_homotopy_mismatched_endpoints():
    F = arrow_diagram()
    a0, b0 = ColimObject("0", "a"), ColimObject("0", "b")
    p = Premorphism(a0, b0, "1@0", "1@0", "0", "f")
    q = identity_premorphism(F, a0)
    with pytest.raises(InputError):
        is_homotopic(F, p, q)


def test_quotient_terminal_index_classes_are_arrows():
    C = walking_arrow("F*")
    F = terminal_diagram(C)
    q = homotopy_quotient(F)
    assert len(q.classes) == len(C.arrows)
    assert q.closure_added_pairs == 0


def test_quotient_iso_cell_merges_all_endomorphisms(colimits):
    # all five premorphisms between the base object and itself collapse
    F = iso_cell_diagram()
    q = homotopy_quotient(F)
    o = ColimObject("0", "*")
    prems = enumerate_premorphisms(F, o, o)
    assert len(prems) == 5
    reps = {q.class_of[p] for p in prems}
    assert len(reps) == 1
    assert q.closure_added_pairs == 0


def test_closure_adds_nothing_on_bundled_diagrams():
    for name, F in bundled_diagrams().items():
        q = homotopy_quotient(F)
        assert q.closure_added_pairs == 0, name


# --- composition ----------------------------------------------------------


def test_compose_with_identity_premorphism(colimits):
    L = colimits["arrow"]
    F = L.diagram
    a0, b0 = ColimObject("0", "a"), ColimObject("0", "b")
    p = Premorphism(a0, b0, "1@0", "1@0", "0", "f")
    ident = identity_premorphism(F, a0)
    comp, _ = compose_premorphisms(F, p, ident)
    assert L.class_of[comp] == L.class_of[p]
    ident2 = identity_premorphism(F, b0)
    comp2, _ = compose_premorphisms(F, ident2, p)
    assert L.class_of[comp2] == L.class_of[p]


def test_two_identity_premorphisms_compose_to_identity(colimits):
    L = colimits["arrow"]
    F = L.diagram
    a0 = ColimObject("0", "a")
    ident = identity_premorphism(F, a0)
    comp, _ = compose_premorphisms(F, ident, ident)
    assert L.class_of[comp] == L.class_of[ident]


def test_composite_classes_agree_across_glue_choices(colimits):
    L = colimits["iso_cell"]
    F = L.diagram
    o = ColimObject("0", "*")
    prems = enumerate_premorphisms(F, o, o)
    checked = 0
    for p in prems:
        for q in prems:
            glues = enumerate_glues(F, q, p, limit=4)
            if len(glues) < 2:
                continue
            classes = {
                L.class_of[compose_premorphisms(F, q, p, glue=g)[0]] for g in glues
            }
            assert len(classes) == 1, (p, q)
            checked += 1
    assert checked >= 4


def test_associativity_at_premorphism_level_with_joint_choices():
    F = arrow_diagram()
    A = F.index
    x1 = Premorphism(ColimObject("0", "a"), ColimObject("0", "b"), "1@0", "1@0", "0", "f")
    x2 = Premorphism(ColimObject("0", "b"), ColimObject("0", "a"), "u", "u", "1", "t")
    x3 = Premorphism(ColimObject("0", "a"), ColimObject("1", "b"), "u", "1@1", "1", "s")
    # one cone over the whole double-cospan shape supplies every glue
    K = TwoComputad(
        "assoc",
        ["m1", "m2", "k1", "k2", "k3"],
        [
            ArrowGen("rv1", "m1", "k1"),
            ArrowGen("ru2", "m1", "k2"),
            ArrowGen("rv2", "m2", "k2"),
            ArrowGen("ru3", "m2", "k3"),
        ],
        [],
    )
    free = free_2category(K)
    G = two_functor_from_generators(
        free,
        A,
        {"m1": "0", "m2": "0", "k1": "0", "k2": "1", "k3": "1"},
        {"rv1": x1.right, "ru2": x2.left, "rv2": x2.right, "ru3": x3.left},
        {},
    )
    from sigmacolim.filtered import sigma_cone_search
    from sigmacolim.colimit import Glue

    cone = sigma_cone_search(G, F.sigma)
    assert cone is not None
    th = cone.structural
    gamma1 = Glue(
        cone.components["k1"],
        cone.components["k2"],
        A.vcompose(A.invert2(th["ru2"]), th["rv1"]),
    )
    gamma2 = Glue(
        cone.components["k2"],
        cone.components["k3"],
        A.vcompose(A.invert2(th["ru3"]), th["rv2"]),
    )
    delta = Glue(A.id1(cone.vertex), cone.components["k3"], gamma2.cell)
    eta = Glue(cone.components["k1"], A.id1(cone.vertex), gamma1.cell)
    inner_first, _ = compose_premorphisms(F, x2, x1, glue=gamma1)
    lhs, _ = compose_premorphisms(F, x3, inner_first, glue=delta)
    inner_second, _ = compose_premorphisms(F, x3, x2, glue=gamma2)
    rhs, _ = compose_premorphisms(F, inner_second, x1, glue=eta)
    assert lhs == rhs


# --- the colimit category ---------------------------------------------------


def test_colimit_tables_are_categories(colimits):
    for name, L in colimits.items():
        assert validate_category(L.category) == [], name


def test_universal_cone_is_a_marked_cone(colimits):
    for name, L in colimits.items():
        assert validate_cone(L.lam) == [], name


def test_terminal_index_colimit_is_value(colimits):
    L = colimits["terminal"]
    lam_T = L.lam.components["T"]
    assert functor_is_isomorphism(lam_T)


def test_arrow_colimit_equivalent_to_top_value(colimits):
    L = colimits["arrow"]
    cmp = L.lam.components["1"]
    assert validate_functor(cmp) == []
    rep = equivalence_check(cmp)
    assert rep.is_equivalence
    # and it is not an isomorphism: the colimit has more objects
    assert not functor_is_isomorphism(cmp)


def test_marked_structural_components_are_invertible(colimits):
    L = colimits["arrow"]
    lam_u = L.lam.structural["u"]
    for x, comp in lam_u.components.items():
        inv = is_isomorphism(L.category, comp)
        assert inv is not None
        assert inv == inverse_leg_component(L, "u", x)


def test_build_colimit_rejects_unfiltered_input():
    free = parallel_pair_index()
    one0, one1 = terminal_category("V0"), terminal_category("V1")
    q = Functor(one0, one1, {"*": "*"}, {"id*": "id*"})
    F = diagram_from_computad("bad", free, {"0": one0, "1": one1}, {"f": q, "g": q})
    with pytest.raises(NotSigmaFiltered, match="sigmaF1"):
        build_colimit(F)


# --- universal property -----------------------------------------------------


def test_factor_cone_of_the_universal_cone_is_identity(colimits):
    for name, L in colimits.items():
        h = factor_cone(L, L.lam)
        ident = identity_functor(L.category)
        assert h.object_map == ident.object_map
        assert h.arrow_map == ident.arrow_map, name


def test_factor_cone_constant_collapse(colimits):
    from sigmacolim.colimit import enumerate_cones

    L = colimits["arrow"]
    one = terminal_category()
    cones = list(enumerate_cones(L.diagram, one))
    assert len(cones) == 1
    h = factor_cone(L, cones[0])
    assert set(h.object_map.values()) == {"*"}
    assert validate_functor(h) == []


def test_factor_cone_restricts_to_the_cone(colimits):
    from sigmacolim.colimit import enumerate_cones
    from sigmacolim.fincat import compose_functors

    L = colimits["arrow"]
    E = walking_arrow("E")
    for cone in enumerate_cones(L.diagram, E):
        h = factor_cone(L, cone)
        for A in L.diagram.index.objects:
            got = compose_functors(h, L.lam.components[A])
            assert got.object_map == cone.components[A].object_map
            assert got.arrow_map == cone.components[A].arrow_map


def test_universal_property_terminal_vertex(colimits):
    for name, L in colimits.items():
        rep = check_universal_property(L, terminal_category())
        assert rep.holds and rep.functor_count == 1 and rep.cone_count == 1, name


def test_universal_property_terminal_index_self(colimits):
    L = colimits["terminal"]
    E = L.diagram.on_objects["T"]
    rep = check_universal_property(L, E)
    assert rep.holds
    # functors out of the colimit match functors out of the value
    from sigmacolim.fincat import enumerate_functors

    assert rep.functor_count == len(enumerate_functors(E, E))


def test_universal_property_arrow_fixture(colimits):
    L = colimits["arrow"]
    rep = check_universal_property(L, walking_arrow("E"))
    assert rep.holds, rep.detail
    assert not rep.capped


# --- the engine -------------------------------------------------------------


def test_lemma_engine_identity_shaped_leaf(colimits):
    F = arrow_diagram()
    ident = identity_premorphism(F, ColimObject("0", "a"))
    out = lemma_engine(LemmaInstance([F], [ident]))
    assert out.ok, out.checks
    assert out.apex_leg[0] == out.from_object["0"]
    assert out.mu[0] == F.index.id2(out.from_object["0"])
    assert out.nu[0] == F.index.id2(out.from_object["0"])


def test_lemma_engine_transitivity(colimits):
    F = iso_cell_diagram()
    o = ColimObject("0", "*")
    prems = enumerate_premorphisms(F, o, o)
    x1, x2, x3 = prems[0], prems[1], prems[2]
    inst = LemmaInstance([F, F, F], [x1, x2, x3], equations=[(0, 1), (1, 2)])
    out = lemma_engine(inst)
    assert out.ok, out.checks
    assert out.tilde[0] == out.tilde[1] == out.tilde[2]
    # the recovered witness certifies the composite equation x1 ~ x3
    from sigmacolim.colimit import HomotopyWitness

    w = HomotopyWitness(
        vertex=out.vertex,
        from_source=out.from_object["0"],
        from_target=out.from_object["0"],
        from_apex1=out.apex_leg[0],
        from_apex2=out.apex_leg[2],
        alpha1=out.mu[0],
        alpha2=out.mu[2],
        beta1=out.nu[0],
        beta2=out.nu[2],
    )
    assert validate_homotopy(F, x1, x3, w) == []


def test_lemma_engine_horizontal_composition(colimits):
    # two homotopic pairs compose to homotopic composites, across any glue
    L = colimits["arrow"]
    F = L.diagram
    a0, b0 = ColimObject("0", "a"), ColimObject("0", "b")
    x1 = Premorphism(a0, b0, "1@0", "1@0", "0", "f")
    x2 = Premorphism(a0, b0, "u", "u", "1", "s")
    eta = enumerate_premorphisms(F, b0, a0)[0]
    g1 = enumerate_glues(F, eta, x1, limit=1)[0]
    g2 = enumerate_glues(F, eta, x2, limit=2)[-1]
    t1 = CompositeTerm(outer=1, inner=0, glue=g1)
    t2 = CompositeTerm(outer=1, inner=2, glue=g2)
    # leaves: 0 = x1, 1 = eta, 2 = x2, 3 = eta (second copy)
    inst = LemmaInstance(
        [F, F, F, F],
        [x1, eta, x2, eta],
        terms=[t1, t2],
        equations=[(0, 2), (1, 3)],
    )
    out = lemma_engine(inst)
    assert out.ok, out.checks
    # property B collapses both composites to equal transported premorphisms
    c1, _ = compose_premorphisms(F, eta, x1, glue=g1)
    c2, _ = compose_premorphisms(F, eta, x2, glue=g2)
    assert L.class_of[c1] == L.class_of[c2]
    w = is_homotopic(F, c1, c2)
    assert w is not None


def test_shared_homotopy_single_pair(colimits):
    F = iso_cell_diagram()
    o = ColimObject("0", "*")
    eta = Premorphism(o, o, "g", "f", "1", "t")
    xi = Premorphism(o, o, "f", "g", "1", "s")
    w = shared_homotopy([F], [eta], [xi])
    assert validate_homotopy(F, eta, xi, w) == []


def test_shared_homotopy_family(colimits):
    # two pairs sharing their legs receive one four-cell witness
    F = iso_cell_diagram()
    o = ColimObject("0", "*")
    etas = [
        Premorphism(o, o, "f", "f", "1", "ida"),
        Premorphism(o, ColimObject("1", "b"), "f", "idg-placeholder", "1", "x")
    ]
    # build a real family instead: endomorphism pair with legs (f, f) and (g, g)
    eta1 = Premorphism(o, o, "f", "f", "1", "ida")
    xi1 = Premorphism(o, o, "g", "g", "1", "idb")
    eta2 = eta1
    xi2 = xi1
    w = shared_homotopy([F, F], [eta1, eta2], [xi1, xi2])
    assert validate_homotopy(F, eta1, xi1, w) == []
    assert validate_homotopy(F, eta2, xi2, w) == []


def test_lemma_engine_rejects_false_equation():
    from sigmacolim.fixtures import parallel_pair_category

    F = terminal_diagram(parallel_pair_category("V"))
    a, b = ColimObject("T", "a"), ColimObject("T", "b")
    p = Premorphism(a, b, "1@T", "1@T", "T", "f")
    q = Premorphism(a, b, "1@T", "1@T", "T", "g")
    assert is_homotopic(F, p, q) is None
    with pytest.raises(InputError):
        lemma_engine(LemmaInstance([F, F], [p, q], equations=[(0, 1)]))

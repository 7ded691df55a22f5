import pytest

from sigmacolim.filtered import (
    SigmaCone,
    ConeMorphism,
    check_sigmaF0,
    check_sigmaF1,
    check_sigmaF2,
    cone_has_marked_arrows,
    is_sigma_filtered,
    sigma_cone_search,
    validate_cone,
    validate_cone_morphism,
)
from sigmacolim.fixtures import (
    arrow_index,
    cell_pair_index,
    chain_index,
    discrete_index,
    empty_index,
    iso_cell_index,
    non_filtered_fixtures,
    parallel_pair_index,
    sigma_filtered_fixtures,
    terminal_index,
)
from sigmacolim.two_cat import (
    ArrowGen,
    CellGen,
    TwoComputad,
    free_2category,
    two_functor_from_generators,
)


@pytest.mark.parametrize("name", ["terminal", "arrow", "chain", "iso_cell"])
def test_positive_fixtures_are_filtered(name):
    A, S = sigma_filtered_fixtures()[name]
    rep = is_sigma_filtered(A, S)
    assert rep.holds, rep.failed_axioms


@pytest.mark.parametrize(
    "name,axiom",
    [
        ("empty", "nonempty"),
        ("discrete2", "sigmaF0"),
        ("parallel_pair", "sigmaF1"),
        ("cell_pair", "sigmaF2"),
    ],
)
def test_negative_fixtures_fail_the_right_axiom(name, axiom):
    A, S = non_filtered_fixtures()[name]
    rep = is_sigma_filtered(A, S)
    assert not rep.holds
    assert rep.failed_axioms == [axiom]


def test_sigmaF0_witness_on_terminal():
    A, S = sigma_filtered_fixtures()["terminal"]
    rep = check_sigmaF0(A, S)
    assert rep.holds
    assert rep.witnesses[("T", "T")] == ("T", "1@T", "1@T")


def test_sigmaF0_counterexample_on_discrete():
    free = discrete_index()
    rep = check_sigmaF0(free.category, free.sigma)
    assert not rep.holds
    assert rep.counterexample == ("0", "1")


def test_sigmaF1_invertible_branch_on_iso_cell():
    A, S = iso_cell_index()
    rep = check_sigmaF1(A, S)
    assert rep.holds
    plain, invertible = rep.witnesses[("f", "g")]
    assert plain == ("i1", "c")
    assert invertible == ("i1", "c")  # c is invertible, so both searches agree


def test_sigmaF2_counterexample_names_the_cells():
    A, S = cell_pair_index()
    rep = check_sigmaF2(A, S)
    assert not rep.holds
    a, b = rep.counterexample
    assert {a, b} == {"f:al@0", "f:be@0"}


def test_sigmaF2_strict_mode_skips_unmarked_sources():
    # under the stricter reading the offending parallel cells have an
    # unmarked source arrow, so the pair passes vacuously
    A, S = cell_pair_index()
    assert check_sigmaF2(A, S, require_source_marked=True).holds


def test_empty_pair_is_not_filtered():
    free = empty_index()
    rep = is_sigma_filtered(free.category, free.sigma)
    assert not rep.holds and not rep.nonempty


# --- cone search ----------------------------------------------------------


def point_diagram(target, sigma, at):
    free = free_2category(TwoComputad("pt", ["P"], [], []))
    return two_functor_from_generators(free, target, {"P": at}, {}, {}), sigma


def test_cone_search_single_object():
    free = arrow_index()
    G, S = point_diagram(free.category, free.sigma, "0")
    cone = sigma_cone_search(G, S)
    assert cone is not None
    assert validate_cone(cone) == []
    assert cone_has_marked_arrows(cone)
    # canonical first: the earliest vertex admitting a marked component
    assert cone.vertex == "0"
    assert cone.components == {"P": "1@0"}


def test_cone_search_is_deterministic():
    free = arrow_index()
    G, S = point_diagram(free.category, free.sigma, "0")
    c1 = sigma_cone_search(G, S)
    c2 = sigma_cone_search(G, S)
    assert (c1.vertex, c1.components, c1.structural) == (
        c2.vertex,
        c2.components,
        c2.structural,
    )


def cospan_diagram(target, sigma, left, right):
    """The shape with two arrows into a common object, mapped into target."""
    K = TwoComputad(
        "cosp",
        ["L", "M", "R"],
        [ArrowGen("l", "M", "L"), ArrowGen("r", "M", "R")],
        [],
    )
    free = free_2category(K)
    A, lf, rf = left[0], left[1], right[1]
    return (
        two_functor_from_generators(
            free,
            target,
            {"L": left[0], "M": left[1], "R": right[0]},
            {"l": left[2], "r": right[2]},
            {},
        ),
        sigma,
    )


def test_cone_search_cospan_on_arrow_fixture():
    free = arrow_index()
    # the middle object 0 maps by u into 1 on both legs
    G, S = cospan_diagram(free.category, free.sigma, ("1", "0", "u"), ("1", "0", "u"))
    cone = sigma_cone_search(G, S)
    assert cone is not None
    assert validate_cone(cone) == []
    assert cone_has_marked_arrows(cone)


def test_cone_search_not_found_on_unfiltered_pair():
    A, S = cell_pair_index()
    K = TwoComputad(
        "pair2",
        ["X", "Y"],
        [ArrowGen("p", "X", "Y"), ArrowGen("q", "X", "Y")],
        [CellGen("m1", ("p",), ("q",)), CellGen("m2", ("p",), ("q",))],
    )
    free = free_2category(K)
    G = two_functor_from_generators(
        free,
        A,
        {"X": "0", "Y": "1"},
        {"p": "f", "q": "g"},
        {"m1": "f:al@0", "m2": "f:be@0"},
    )
    assert sigma_cone_search(G, S) is None


def _axiom_shape_diagrams(A, S):
    """Every instance of the three filteredness axioms, as shape diagrams."""
    out = []
    pair_shape = free_2category(TwoComputad("sh0", ["X", "Y"], [], []))
    for X in A.objects:
        for Y in A.objects:
            out.append(
                two_functor_from_generators(pair_shape, A, {"X": X, "Y": Y}, {}, {})
            )
    par_shape = free_2category(
        TwoComputad(
            "sh1",
            ["X", "Y"],
            [ArrowGen("p", "X", "Y"), ArrowGen("q", "X", "Y")],
            [],
        )
    )
    for X in A.objects:
        for Y in A.objects:
            for f in A.one_cells_between(X, Y):
                for g in A.one_cells_between(X, Y):
                    if g in S.members:
                        out.append(
                            two_functor_from_generators(
                                par_shape, A, {"X": X, "Y": Y}, {"p": f, "q": g}, {}
                            )
                        )
    cell_shape = free_2category(
        TwoComputad(
            "sh2",
            ["X", "Y"],
            [ArrowGen("p", "X", "Y"), ArrowGen("q", "X", "Y")],
            [CellGen("m1", ("p",), ("q",)), CellGen("m2", ("p",), ("q",))],
        )
    )
    for X in A.objects:
        for Y in A.objects:
            for f in A.one_cells_between(X, Y):
                for g in A.one_cells_between(X, Y):
                    if g not in S.members:
                        continue
                    for a in A.two_cells_between(f, g):
                        for b in A.two_cells_between(f, g):
                            out.append(
                                two_functor_from_generators(
                                    cell_shape,
                                    A,
                                    {"X": X, "Y": Y},
                                    {"p": f, "q": g},
                                    {"m1": a, "m2": b},
                                )
                            )
    return out


@pytest.mark.parametrize("name", ["terminal", "arrow", "chain", "iso_cell"])
def test_axiom_instances_have_cones_on_filtered_fixtures(name):
    # cone existence over every axiom-instance diagram recovers the axioms
    A, S = sigma_filtered_fixtures()[name]
    for G in _axiom_shape_diagrams(A, S):
        cone = sigma_cone_search(G, S)
        assert cone is not None, G.on_objects
        assert validate_cone(cone) == []
        assert cone_has_marked_arrows(cone)


def test_validate_cone_pinpoints_broken_lc1():
    # in the T5 index the two parallel cells al, be allow a well-typed cone
    # whose composite structural cell disagrees with the pasted one
    A, S = cell_pair_index()
    K = TwoComputad(
        "ch", ["X", "Y", "Z"], [ArrowGen("p", "X", "Y"), ArrowGen("q", "Y", "Z")], []
    )
    free = free_2category(K)
    G = two_functor_from_generators(
        free, A, {"X": "0", "Y": "0", "Z": "1"}, {"p": "1@0", "q": "f"}, {}
    )
    cone = SigmaCone(
        diagram=G,
        sigma=S,
        vertex="1",
        components={"X": "g", "Y": "g", "Z": "1@1"},
        structural={
            "1@X": A.id2("g"),
            "1@Y": A.id2("g"),
            "1@Z": A.id2("1@1"),
            "p": A.id2("g"),
            "q": "f:al@0",
            "p.q": "f:be@0",  # LC1 forces this to equal the cell at q
        },
    )
    bad = validate_cone(cone)
    assert any(v.startswith("LC1") for v in bad)
    # repairing the one entry yields a valid cone
    cone.structural["p.q"] = "f:al@0"
    assert validate_cone(cone) == []


def test_identity_cone_morphism_validates():
    free = arrow_index()
    G, S = cospan_diagram(free.category, free.sigma, ("1", "0", "u"), ("1", "0", "u"))
    cone = sigma_cone_search(G, S)
    A = free.category
    m = ConeMorphism(
        source=cone,
        target=cone,
        components={X: A.id2(c) for X, c in cone.components.items()},
    )
    assert validate_cone_morphism(m) == []

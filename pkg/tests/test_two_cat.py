import pytest
from hypothesis import given, settings, strategies as st

from sigmacolim.fincat import FinCategory, InputError
from sigmacolim.two_cat import (
    ArrowGen,
    CellGen,
    Fin2Category,
    SigmaClass,
    TwoComputad,
    free_2category,
    hom_category,
    identity_2functor,
    sigma_all,
    sigma_identities,
    two_functor_from_generators,
    validate_2category,
    validate_2functor,
    validate_computad,
    validate_sigma,
)


def point_computad():
    return TwoComputad("pt", ["X"], [], [])


def chain_computad():
    return TwoComputad(
        "chain",
        ["A", "B", "C"],
        [ArrowGen("a", "A", "B", True), ArrowGen("b", "B", "C", True)],
        [],
    )


def cospan_computad():
    # two arrows into a common target, as in the first construction step
    return TwoComputad(
        "cospan",
        ["A", "B", "S"],
        [ArrowGen("a", "A", "S", True), ArrowGen("b", "B", "S")],
        [],
    )


def interchange_computad():
    return TwoComputad(
        "square",
        ["A", "B", "C"],
        [
            ArrowGen("a1", "A", "B"),
            ArrowGen("a2", "A", "B"),
            ArrowGen("b1", "B", "C"),
            ArrowGen("b2", "B", "C"),
        ],
        [CellGen("g", ("a1",), ("a2",)), CellGen("d", ("b1",), ("b2",))],
    )


def test_point_is_terminal_2category():
    free = free_2category(point_computad())
    A = free.category
    assert validate_2category(A) == []
    assert A.objects == ["X"]
    assert A.one_cells() == ["1@X"]
    assert len(A.hom_of("X", "X").arrows) == 1


def test_chain_free_completion_one_cells():
    free = free_2category(chain_computad())
    A = free.category
    assert validate_2category(A) == []
    assert len(A.one_cells()) == 6  # 3 identities, a, b, a.b
    assert hom_category(A, "A", "C").objects == ["a.b"]
    # only identity 2-cells anywhere
    assert all(H.is_identity(x) for H in A.hom.values() for x in H.arrows)
    # marked flags propagate along composition
    assert validate_sigma(free.sigma) == []
    assert "a.b" in free.sigma.members


def test_cospan_free_completion():
    free = free_2category(cospan_computad())
    A = free.category
    assert validate_2category(A) == []
    assert hom_category(A, "A", "S").objects == ["a"]
    assert hom_category(A, "B", "S").objects == ["b"]
    assert "a" in free.sigma.members and "b" not in free.sigma.members


def test_interchange_square_counts():
    free = free_2category(interchange_computad())
    A = free.category
    assert validate_2category(A) == []
    H = hom_category(A, "A", "C")
    # 2x2 grid of paths, 9 rewrite classes (the commutative square category)
    assert len(H.objects) == 4
    assert len(H.arrows) == 9
    assert len(A.two_cells_between("a1.b1", "a2.b2")) == 1


def test_free_completion_validates_sigma():
    free = free_2category(interchange_computad())
    assert validate_sigma(free.sigma) == []


def test_hom_category_unknown_object():
    free = free_2category(point_computad())
    with pytest.raises(InputError):
        hom_category(free.category, "X", "nope")


def test_cyclic_computad_rejected():
    K = TwoComputad(
        "cyc",
        ["A", "B"],
        [ArrowGen("a", "A", "B"), ArrowGen("b", "B", "A")],
        [],
    )
    assert any("cycle" in v for v in validate_computad(K))
    with pytest.raises(InputError, match="cycle"):
        free_2category(K)


def test_loop_computad_rejected():
    K = TwoComputad("loop", ["A"], [ArrowGen("e", "A", "A")], [])
    assert any("loop" in v for v in validate_computad(K))


def test_two_loop_cell_rejected():
    K = TwoComputad(
        "tl",
        ["A", "B"],
        [ArrowGen("a", "A", "B")],
        [CellGen("c", ("a",), ("a",))],
    )
    assert any("2-loop" in v for v in validate_computad(K))


def test_rewrite_cycle_rejected():
    K = TwoComputad(
        "rc",
        ["A", "B"],
        [ArrowGen("a", "A", "B"), ArrowGen("b", "A", "B")],
        [CellGen("c", ("a",), ("b",)), CellGen("d", ("b",), ("a",))],
    )
    with pytest.raises(InputError, match="rewrite cycle"):
        free_2category(K)


# --- sigma classes -------------------------------------------------------

def test_sigma_all_and_identities_pass():
    free = free_2category(chain_computad())
    assert validate_sigma(sigma_all(free.category)) == []
    assert validate_sigma(sigma_identities(free.category)) == []


def test_sigma_single_nonidentity_violations():
    free = free_2category(chain_computad())
    S = SigmaClass(free.category, {"a"})
    violations = validate_sigma(S)
    # missing identities for all three objects
    assert len([v for v in violations if "identity" in v]) == 3


def test_sigma_not_closed_violation():
    free = free_2category(chain_computad())
    members = set(free.category.identity_1cell.values()) | {"a", "b"}
    S = SigmaClass(free.category, members)
    violations = validate_sigma(S)
    assert any("escapes" in v for v in violations)


# --- hand-built 2-category with a breakable interchange -------------------

def cyclic3_two_category():
    """One object, one 1-cell, vertical composition the cyclic group C3.

    Horizontal composition coincides with vertical composition, which is
    valid because C3 is commutative.
    """
    mult = {}
    names = ["z0", "z1", "z2"]
    for i in range(3):
        for j in range(3):
            mult[(names[i], names[j])] = names[(i + j) % 3]
    H = FinCategory(
        name="C3",
        objects=["e"],
        arrows={n: ("e", "e") for n in names},
        identity={"e": "z0"},
        composition=mult,
    )
    return Fin2Category(
        name="B3",
        objects=["*"],
        hom={("*", "*"): H},
        identity_1cell={"*": "e"},
        hcompose1={("e", "e"): "e"},
        hcompose2=dict(mult),
    )


def test_cyclic3_two_category_is_valid():
    assert validate_2category(cyclic3_two_category()) == []


def test_interchange_violation_detected():
    A = cyclic3_two_category()
    A.hcompose2[("z1", "z1")] = "z1"  # should be z2
    assert any("interchange" in v for v in validate_2category(A))


# --- 2-functors -----------------------------------------------------------

def test_identity_2functor_validates():
    free = free_2category(interchange_computad())
    assert validate_2functor(identity_2functor(free.category)) == []


def test_collapse_2functor_validates():
    free = free_2category(chain_computad())
    pt = free_2category(point_computad()).category
    G = two_functor_from_generators(
        free, pt, {"A": "X", "B": "X", "C": "X"}, {"a": "1@X", "b": "1@X"}, {}
    )
    assert validate_2functor(G) == []


def test_generator_extension_is_identity():
    free = free_2category(interchange_computad())
    G = two_functor_from_generators(
        free,
        free.category,
        {o: o for o in free.category.objects},
        dict(free.arrow_embedding),
        dict(free.cell_embedding),
    )
    assert validate_2functor(G) == []
    ident = identity_2functor(free.category)
    assert G.on_1cells == ident.on_1cells
    assert G.on_2cells == ident.on_2cells


def test_broken_2functor_detected():
    free = free_2category(chain_computad())
    G = identity_2functor(free.category)
    G.on_1cells["a.b"] = free.category.id1("A")  # breaks composition and endpoints
    assert validate_2functor(G) != []


# --- random acyclic computads ---------------------------------------------

@st.composite
def computads(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    objects = [f"O{i}" for i in range(n)]
    arrows = []
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            for _ in range(draw(st.integers(min_value=0, max_value=2))):
                arrows.append(
                    ArrowGen(f"e{k}", f"O{i}", f"O{j}", draw(st.booleans()))
                )
                k += 1
    K = TwoComputad("rand", objects, arrows, [])
    # add up to two cells from shorter to strictly longer parallel paths,
    # which keeps the rewrite relation acyclic
    paths = _all_paths(K)
    candidates = []
    for (s, t), ps in sorted(paths.items()):
        for p in ps:
            for q in ps:
                if len(p) < len(q) and p:
                    candidates.append((p, q))
    cells = []
    if candidates:
        take = draw(st.integers(min_value=0, max_value=min(2, len(candidates))))
        picked = draw(
            st.lists(
                st.sampled_from(candidates), min_size=take, max_size=take, unique=True
            )
        )
        cells = [CellGen(f"c{i}", p, q) for i, (p, q) in enumerate(picked)]
    return TwoComputad("rand", objects, arrows, cells)


def _all_paths(K):
    paths = {}
    for o in K.objects:
        paths.setdefault((o, o), []).append(())
    frontier = [(o, o, ()) for o in K.objects]
    while frontier:
        s, t, p = frontier.pop()
        for a in K.arrows:
            if a.source == t:
                q = p + (a.name,)
                paths.setdefault((s, a.target), []).append(q)
                frontier.append((s, a.target, q))
    return paths


@settings(max_examples=25, deadline=None)
@given(computads())
def test_free_completion_of_random_computad_is_valid(K):
    assert validate_computad(K) == []
    free = free_2category(K)
    assert validate_2category(free.category) == []
    assert validate_sigma(free.sigma) == []

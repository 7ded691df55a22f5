import pytest

from sigmacolim.diagram import (
    apply_diagram,
    apply_diagram_arrow,
    identity_diagram_transf,
    validate_diagram,
    validate_diagram_transf,
    whisker_component,
)
from sigmacolim.fincat import Functor, InputError, identity_functor, terminal_category
from sigmacolim.fixtures import (
    arrow_diagram,
    arrow_diagram_small,
    bundled_diagrams,
    chain_diagram,
    iso_cell_diagram,
    pseudoeq_input,
    terminal_diagram,
)


@pytest.mark.parametrize("name", ["terminal", "arrow", "chain", "iso_cell"])
def test_bundled_diagrams_validate(name):
    F = bundled_diagrams()[name]
    assert validate_diagram(F) == []


def test_apply_diagram_identity_and_composite():
    F = chain_diagram()
    A = F.index
    # identity 1-cell acts as the identity
    assert apply_diagram(F, A.id1("0"), "a") == "a"
    # the composite 1-cell acts as the composite of the actions
    u01, u12 = "u01", "u12"
    comp = A.compose1(u12, u01)
    x = "a"
    assert apply_diagram(F, comp, x) == apply_diagram(F, u12, apply_diagram(F, u01, x))
    # arrow-level lookup against the tables
    assert apply_diagram_arrow(F, u12, "f") == "s"


def test_apply_diagram_mismatch():
    F = arrow_diagram()
    with pytest.raises(InputError):
        apply_diagram(F, "u", "nonexistent")


def test_whisker_component_endpoints():
    F = iso_cell_diagram()
    # component of the value of the 2-cell c at * is an arrow F(f)(*) -> F(g)(*)
    comp = whisker_component(F, "c", "*")
    C1 = F.on_objects["1"]
    assert C1.arrows[comp] == (
        apply_diagram(F, "f", "*"),
        apply_diagram(F, "g", "*"),
    )


def test_diagram_violation_on_broken_composite():
    F = chain_diagram()
    comp = F.index.compose1("u12", "u01")
    F.on_1cells[comp] = identity_functor(F.on_objects["0"])
    violations = validate_diagram(F)
    assert any("compos" in v or "domain" in v for v in violations)


def test_diagram_transf_identity_validates():
    for F in bundled_diagrams().values():
        assert validate_diagram_transf(identity_diagram_transf(F)) == []


def test_pseudoeq_input_transformations_validate():
    G, H, alpha, beta = pseudoeq_input()
    assert validate_diagram(G) == []
    assert validate_diagram(H) == []
    assert validate_diagram_transf(alpha) == []
    assert validate_diagram_transf(beta) == []


def test_diagram_transf_broken_square_detected():
    G, H, alpha, _ = pseudoeq_input()
    bad = Functor(
        G.on_objects["0"], H.on_objects["0"], {"*": "b"}, {"id*": "idb"}
    )
    alpha.components["0"] = bad  # now the square at u fails
    assert any("naturality" in v for v in validate_diagram_transf(alpha))


def test_second_arrow_diagram_validates():
    assert validate_diagram(arrow_diagram_small()) == []


def test_terminal_diagram_with_custom_value():
    F = terminal_diagram(terminal_category())
    assert validate_diagram(F) == []
    assert len(F.on_objects["T"].objects) == 1

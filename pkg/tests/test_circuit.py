import math
import re

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from photonpair import circuit, optics
from photonpair.circuit import BsElement, CircuitAST, Literal, ParseError, PhaseElement, PiMultiple, Variable

from conftest import CORPUS

MZI = "modes 2\nbs 0 1\nphase 1 phi\nbs 0 1\n"


def test_parse_mzi():
    ast = circuit.parse("modes 2\nbs 0 1\nphase 1 pi/2\nbs 0 1\n")
    assert ast.mode_count == 2
    assert ast.elements == (BsElement(0, 1), PhaseElement(1, PiMultiple(1.0, 2)), BsElement(0, 1))


def test_parse_index_out_of_range():
    with pytest.raises(ParseError) as ei:
        circuit.parse("modes 2\nbs 0 2\n")
    assert ei.value.line == 2
    assert ei.value.column == 6
    assert "index 2 out of range" in ei.value.message
    assert ei.value.offending_token == "2"


def test_variables_stay_unbound():
    ast = circuit.parse("modes 2\nphase 1 phi\nbs 0 1\n")
    assert ast.elements[0] == PhaseElement(1, Variable("phi"))
    assert ast.variables() == ["phi"]


@pytest.mark.parametrize(
    "src, fragment",
    [
        ("bs 0 1\n", "missing 'modes' header"),
        ("modes 2\nsplit 0 1\n", "unknown keyword"),
        ("modes 2\nbs 0 5\n", "out of range"),
        ("", "missing 'modes' header"),
    ],
)
def test_error_messages_distinguished(src, fragment):
    with pytest.raises(ParseError, match=re.escape(fragment)):
        circuit.parse(src)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("0.25", Literal(0.25)),
        ("-1", Literal(-1.0)),
        ("pi", PiMultiple(1.0, 1)),
        ("-pi", PiMultiple(-1.0, 1)),
        ("pi/4", PiMultiple(1.0, 4)),
        ("0.5*pi", PiMultiple(0.5, 1)),
        ("3 * pi / 4", PiMultiple(3.0, 4)),
        ("theta_2", Variable("theta_2")),
    ],
)
def test_phase_expr(text, expected):
    assert circuit.parse_phase_expr(text) == expected


@pytest.mark.parametrize("text", ["pi/0", "2*phi", "pi/", "1/2", "1e999", "bs", "pi pi"])
def test_phase_expr_rejects(text):
    with pytest.raises(ValueError):
        circuit.parse_phase_expr(text)


def test_compile_mzi():
    ast = circuit.parse(MZI)
    out = optics.apply(circuit.compile(ast, {"phi": 0.0}), [1.0, 0])
    assert np.allclose(out.modes, [0, 1j], atol=1e-15)
    out = optics.apply(circuit.compile(ast, {"phi": math.pi}), [1.0, 0])
    assert np.allclose(optics.intensities(out), [1, 0], atol=1e-15)
    assert out[0] == pytest.approx(1, abs=1e-15)  # (E0/2)(1 - e^{i pi}) = E0


def test_compile_empty_and_unbound():
    assert np.array_equal(circuit.compile(circuit.parse("modes 1\n")).entries, [[1]])
    with pytest.raises(circuit.UnboundVariableError, match="phi"):
        circuit.compile(circuit.parse(MZI), {"theta": 1.0})
    # extra bindings are fine
    circuit.compile(circuit.parse(MZI), {"phi": 1.0, "unused": 2.0})


def test_compile_matches_hand_built():
    ast = circuit.parse("modes 3\nbs 0 2\nphase 2 0.3*pi\nbs 1 2\nphase 0 x\n")
    t = circuit.compile(ast, {"x": -0.9})
    ref = optics.chain([
        optics.beam_splitter(3, 0, 2),
        optics.phase_shifter(3, 2, 0.3 * math.pi),
        optics.beam_splitter(3, 1, 2),
        optics.phase_shifter(3, 0, -0.9),
    ])
    assert np.max(np.abs(t.entries - ref.entries)) < 1e-12


def test_render_canonical():
    text = circuit.render(circuit.parse("modes 2 # c\n\nbs 0 1\nphase 1   pi / 2\n"))
    assert text == "modes 2\nbs 0 1\nphase 1 pi/2\n"
    assert circuit.render(CircuitAST(1, (PhaseElement(0, PiMultiple(0.5, 3)),))) == "modes 1\nphase 0 0.5*pi/3\n"


@pytest.mark.parametrize("path", sorted((CORPUS / "valid").glob("*.circ")), ids=lambda p: p.name)
def test_corpus_round_trip(path):
    src = path.read_text()
    ast = circuit.parse(src)
    text = circuit.render(ast)
    assert circuit.parse(text) == ast
    assert circuit.render(circuit.parse(text)) == text


def _expected_line(path):
    return int(re.search(r"expect-error: line (\d+)", path.read_text()).group(1))


@pytest.mark.parametrize("path", sorted((CORPUS / "invalid").glob("*.circ")), ids=lambda p: p.name)
def test_corpus_invalid(path):
    with pytest.raises(ParseError) as ei:
        circuit.parse(path.read_text())
    assert ei.value.line == _expected_line(path)
    assert ei.value.column >= 1


finite = st.floats(-50, 50, allow_nan=False)
phase_exprs = st.one_of(
    finite.map(Literal),
    st.builds(PiMultiple, st.one_of(st.just(1.0), st.just(-1.0), finite), st.integers(1, 64)),
    st.sampled_from(["a", "phi", "theta_1"]).map(Variable),
)


@st.composite
def asts(draw):
    n = draw(st.integers(1, 6))
    els = []
    for _ in range(draw(st.integers(0, 12))):
        if n > 1 and draw(st.booleans()):
            i, j = draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
            els.append(BsElement(i, j))
        else:
            els.append(PhaseElement(draw(st.integers(0, n - 1)), draw(phase_exprs)))
    return CircuitAST(n, tuple(els))


@given(asts())
def test_render_parse_round_trip(ast):
    assert circuit.parse(circuit.render(ast)) == ast


@settings(max_examples=100)
@given(asts())
def test_compile_equivalence(ast):
    b = {"a": 0.3, "phi": -1.7, "theta_1": 2.2}
    t1 = circuit.compile(ast, b).entries
    t2 = circuit.compile(circuit.parse(circuit.render(ast)), b).entries
    assert np.max(np.abs(t1 - t2)) < 1e-12

import pytest
from hypothesis import given, strategies as st

from mooredual.machine import (
    DomainError,
    MooreMachine,
    ParseError,
    emit_machine,
    format_word,
    left_action,
    parse_machine,
    parse_word,
    right_action,
    run_left,
    run_right,
    trim,
)

from conftest import read_data


@st.composite
def machines(draw, max_states=6, max_inputs=3, max_outputs=3):
    n = draw(st.integers(1, max_states))
    q = draw(st.integers(1, max_inputs))
    d = draw(st.integers(1, max_outputs))
    outputs = tuple("o%d" % k for k in range(d))
    return MooreMachine(
        states=tuple("s%d" % k for k in range(n)),
        input_count=q,
        outputs=outputs,
        transition=tuple(
            tuple(draw(st.integers(0, n - 1)) for _ in range(q)) for _ in range(n)
        ),
        output_map=tuple(outputs[draw(st.integers(0, d - 1))] for _ in range(n)),
        initial=draw(st.integers(0, n - 1)),
    )


@st.composite
def machine_and_word(draw, max_len=12):
    m = draw(machines())
    w = tuple(
        draw(st.integers(0, m.input_count - 1))
        for _ in range(draw(st.integers(0, max_len)))
    )
    return m, w


# --- parsing ---------------------------------------------------------------

def test_parse_paper_example(paper):
    assert paper.n == 3
    assert paper.input_count == 2
    assert paper.states == ("i", "a", "b")
    assert paper.transition == ((0, 1), (2, 0), (2, 1))
    assert paper.output_map == ("0", "1", "0")
    assert paper.initial == 0


def test_round_trip(paper):
    text = emit_machine(paper)
    assert parse_machine(text) == paper
    assert emit_machine(parse_machine(text)) == text


def test_round_trip_one_state():
    m = MooreMachine(("s",), 2, ("0",), ((0, 0),), ("0",), 0)
    assert parse_machine(emit_machine(m)) == m


def test_missing_transition_rejected():
    with pytest.raises(ParseError, match="missing transition"):
        parse_machine(read_data("example_missing.moore"))


def test_parse_errors():
    with pytest.raises(ParseError, match="header"):
        parse_machine("mealy v1\n")
    with pytest.raises(ParseError, match="unknown output"):
        parse_machine("moore v1\ninputs 1\noutputs 0\nstate s 9\ninitial s\ntrans s 0 s\n")
    with pytest.raises(ParseError, match="unknown state"):
        parse_machine("moore v1\ninputs 1\noutputs 0\nstate s 0\ninitial z\ntrans s 0 s\n")
    with pytest.raises(ParseError, match="duplicate state"):
        parse_machine(
            "moore v1\ninputs 1\noutputs 0\nstate s 0\nstate s 0\ninitial s\ntrans s 0 s\n"
        )
    with pytest.raises(ParseError, match="duplicate transition"):
        parse_machine(
            "moore v1\ninputs 1\noutputs 0\nstate s 0\ninitial s\ntrans s 0 s\ntrans s 0 s\n"
        )


def test_named_inputs_round_trip():
    text = (
        "moore v1\n"
        "inputs lo hi\n"
        "outputs 0 1\n"
        "state s 0\n"
        "state t 1\n"
        "initial s\n"
        "trans s lo s\ntrans s hi t\ntrans t lo t\ntrans t hi s\n"
    )
    m = parse_machine(text)
    assert m.input_names == ("lo", "hi")
    assert emit_machine(m) == text
    assert parse_machine(emit_machine(m)) == m


def test_comments_ignored(paper):
    text = "# top comment\n" + emit_machine(paper).replace(
        "initial i", "initial i  # the start"
    )
    assert parse_machine(text) == paper


# --- words ------------------------------------------------------------------

def test_parse_word():
    assert parse_word("", 2) == ()
    assert parse_word("0110", 2) == (0, 1, 1, 0)
    assert parse_word("0,11,3", 12) == (0, 11, 3)
    with pytest.raises(DomainError):
        parse_word("2", 2)
    with pytest.raises(DomainError):
        parse_word("x", 2)


def test_format_word():
    assert format_word((0, 1, 1), 2) == "011"
    assert format_word((0, 11), 12) == "0,11"


# --- actions -----------------------------------------------------------------

def test_right_action_examples(paper):
    assert paper.states[right_action(paper, "i", (0, 1))] == "a"
    assert right_action(paper, 1, ()) == 1
    assert paper.states[right_action(paper, "a", (0,))] == "b"


def test_left_action_examples(paper):
    assert paper.states[left_action(paper, (0, 1), "i")] == "b"
    assert left_action(paper, (), 2) == 2
    assert paper.states[left_action(paper, (1,), "b")] == "a"


def test_run_examples(paper):
    assert run_right(paper, ()) == "0"
    assert run_right(paper, (1,)) == "1"
    assert run_right(paper, (0, 0, 1)) == "1"
    assert run_left(paper, (0, 0, 1)) == "0"
    assert run_left(paper, ()) == "0"
    assert run_left(paper, (0, 1)) == run_right(paper, (1, 0)) == "0"


def test_symbol_out_of_range(paper):
    with pytest.raises(DomainError):
        right_action(paper, 0, (2,))
    with pytest.raises(DomainError):
        left_action(paper, (0, 5), 0)


@given(machine_and_word())
def test_single_letters_agree(mw):
    m, w = mw
    for j in range(m.input_count):
        for s in range(m.n):
            assert right_action(m, s, (j,)) == left_action(m, (j,), s) == m.transition[s][j]


@given(machine_and_word(), machine_and_word())
def test_action_concatenation(mw, mw2):
    m, u = mw
    _, v2 = mw2
    v = tuple(j % m.input_count for j in v2)
    for s in range(m.n):
        assert right_action(m, s, u + v) == right_action(m, right_action(m, s, u), v)
        assert left_action(m, u + v, s) == left_action(m, u, left_action(m, v, s))


@given(machine_and_word())
def test_mirror_law(mw):
    m, w = mw
    assert run_left(m, w) == run_right(m, tuple(reversed(w)))


# --- trim ----------------------------------------------------------------------

def test_trim_drops_unreachable(paper):
    extra = MooreMachine(
        states=paper.states + ("z",),
        input_count=2,
        outputs=paper.outputs,
        transition=paper.transition + ((3, 0),),
        output_map=paper.output_map + ("1",),
        initial=0,
    )
    assert trim(extra) == paper


def test_trim_identity(paper):
    assert trim(paper) is paper


def test_trim_to_single_state():
    m = MooreMachine(
        states=("i", "x"),
        input_count=2,
        outputs=("0", "1"),
        transition=((0, 0), (1, 0)),
        output_map=("0", "1"),
        initial=0,
    )
    t = trim(m)
    assert t.n == 1
    assert t.states == ("i",)


@given(machine_and_word())
def test_trim_preserves_runs(mw):
    m, w = mw
    t = trim(m)
    assert trim(t) == t
    assert run_right(t, w) == run_right(m, w)
    assert run_left(t, w) == run_left(m, w)


@given(machines())
def test_emit_parse_fixed_point(m):
    text = emit_machine(m)
    assert emit_machine(parse_machine(text)) == text

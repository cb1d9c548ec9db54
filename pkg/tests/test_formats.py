import pytest
from hypothesis import given, settings, strategies as st

from pcsf.core import PcsfInstance, Solution
from pcsf.formats import ParseError, format_instance, format_solution, parse_instance, parse_solution
from pcsf.harness import generate_instance
from pcsf.rational import Rat


def test_basic_instance():
    inst = parse_instance("pcsf 1\nnodes 2\nedge 1 2 10\npair 1 2 4\n")
    assert inst == PcsfInstance(2, [(0, 1, 10)], {(0, 1): 4})


def test_decimal_is_exact():
    inst = parse_instance("pcsf 1\nnodes 2\nedge 1 2 0.5\n")
    assert inst.edges[0].cost == Rat(1, 2)


def test_comments_and_blank_lines():
    text = "# hello\n\npcsf 1   # header\nnodes 3\n\nedge 3 1 1.25 # c\npair 2 1 7\n"
    inst = parse_instance(text)
    assert inst.edges[0].cost == Rat(5, 4)
    assert inst.penalties == {(0, 1): 7}


@pytest.mark.parametrize(
    "body, line, fragment",
    [
        ("nodes 2\nedge 1 1 5", 3, "self-loop"),
        ("nodes 2\npair 1 2 1\npair 2 1 3", 4, "duplicate pair"),
        ("nodes 2\nedge 1 2 -1", 3, "negative"),
        ("nodes 2\nedge 1 3 1", 3, "outside"),
        ("nodes 2\nedge 1 2 0.1234567891", 3, "9 fractional"),
        ("edge 1 2 1", 2, "before 'nodes'"),
        ("nodes 2\nnodes 3", 3, "duplicate 'nodes'"),
        ("nodes 2\nvertex 1", 3, "unknown record"),
        ("nodes 2\nedge 1 2", 3, "expected"),
    ],
)
def test_errors_carry_line_numbers(body, line, fragment):
    with pytest.raises(ParseError) as info:
        parse_instance("pcsf 1\n" + body + "\n")
    assert info.value.line == line
    assert fragment in str(info.value)
    assert str(info.value).startswith(f"line {line}:")


def test_bad_header():
    with pytest.raises(ParseError, match="header"):
        parse_instance("pcsf 2\nnodes 1\n")
    with pytest.raises(ParseError):
        parse_instance("")


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 9), st.data())
def test_round_trip(n, data):
    slots = n * (n - 1) // 2
    m = data.draw(st.integers(0, slots))
    k = data.draw(st.integers(0, slots))
    inst = generate_instance(n, m, k, 50, 50, data.draw(st.integers(0, 10**6)))
    assert parse_instance(format_instance(inst)) == inst


def test_fractional_values_round_trip():
    inst = PcsfInstance(3, [(0, 1, "0.125"), (1, 2, "7")], {(0, 2): "2.5"})
    assert parse_instance(format_instance(inst)) == inst


def test_solution_round_trip():
    inst = PcsfInstance(3, [(0, 2, 1), (2, 1, 1)], {(0, 1): "3/2", (0, 2): 9})
    sol = Solution.build(inst, [(0, 1)], [0])
    text = format_solution(inst, sol)
    assert text == "cost 5/2\nbuy 1 3\npay 1 2\n"
    assert parse_solution(text, inst) == sol


def test_solution_errors():
    inst = PcsfInstance(3, [(0, 1, 1)])
    with pytest.raises(ParseError, match="no edge"):
        parse_solution("cost 1\nbuy 2 3\n", inst)
    with pytest.raises(ParseError, match="missing 'cost'"):
        parse_solution("buy 1 2\n", inst)

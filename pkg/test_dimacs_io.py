"""DIMACS parsing and writing, pair files and solution records."""

import io

import numpy as np
import pytest

from pareto_route.dimacs import (
    parse_dimacs_gr,
    read_pairs,
    synthesize_unit_component,
    write_dimacs_gr,
    write_pairs,
)
from pareto_route.errors import DimacsParseError, InstanceFormatError, SolutionFormatError
from pareto_route.generators import generate_random
from pareto_route.records import SolutionRecord, read_solution, write_solution

DISTANCE = """c example
p sp 4 6
a 1 2 1
a 1 4 1
a 1 3 2
a 2 4 2
a 3 4 1
a 2 3 2
"""

TIME = """p sp 4 6
a 2 3 0
a 3 4 2
a 2 4 4
a 1 3 2
a 1 4 10
a 1 2 1
"""


def test_parse_two_streams_aligns_arcs():
    g = parse_dimacs_gr([io.StringIO(DISTANCE), io.StringIO(TIME)])
    assert g.node_count == 4
    assert g.dimension == 2
    costs = {(a.tail, a.head): a.cost for a in g.arcs}
    assert costs[(0, 3)] == (1, 10)
    assert costs[(1, 2)] == (2, 0)
    assert costs[(2, 3)] == (1, 2)
    # arc ids follow (tail, head) order
    assert [(a.tail, a.head) for a in g.arcs] == sorted((a.tail, a.head) for a in g.arcs)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(DimacsParseError) as e:
        parse_dimacs_gr([io.StringIO("p sp 2 1\na 1 x 3\n")])
    assert e.value.line_no == 2
    with pytest.raises(DimacsParseError):
        parse_dimacs_gr([io.StringIO("a 1 2 3\n")])
    with pytest.raises(DimacsParseError):
        parse_dimacs_gr([io.StringIO("p sp 2 1\na 1 3 3\n")])
    with pytest.raises(InstanceFormatError):
        parse_dimacs_gr([io.StringIO("p sp 2 1\na 1 2 -3\n"), io.StringIO("p sp 2 1\na 1 2 3\n")])


def test_parse_rejects_mismatched_topology():
    other = "p sp 4 6\na 1 2 1\na 1 4 1\na 1 3 2\na 2 4 2\na 3 4 1\na 3 2 2\n"
    with pytest.raises(InstanceFormatError):
        parse_dimacs_gr([io.StringIO(DISTANCE), io.StringIO(other)])
    with pytest.raises(InstanceFormatError):
        parse_dimacs_gr([io.StringIO(DISTANCE), io.StringIO("p sp 5 0\n")])


def test_write_then_parse_regenerates_graph():
    inst = generate_random(n=25, m=80, d=3, seed=4)
    streams = []
    for k in range(3):
        out = io.StringIO()
        write_dimacs_gr(inst.graph, k, out, comment="regenerated")
        streams.append(io.StringIO(out.getvalue()))
    g = parse_dimacs_gr(streams)
    before = sorted((a.tail, a.head, a.cost) for a in inst.graph.arcs)
    after = sorted((a.tail, a.head, a.cost) for a in g.arcs)
    assert before == after


def test_unit_component():
    g = parse_dimacs_gr([io.StringIO(DISTANCE), io.StringIO(TIME)])
    g3 = synthesize_unit_component(g)
    assert g3.dimension == 3
    assert all(a.cost[2] == 1 for a in g3.arcs)
    assert [a.cost[:2] for a in g3.arcs] == [a.cost for a in g.arcs]


def test_pairs_round_trip():
    out = io.StringIO()
    write_pairs([(0, 3), (2, 1)], out)
    assert out.getvalue() == "q 1 4\nq 3 2\n"
    assert read_pairs(io.StringIO("c pairs\n" + out.getvalue()), node_count=4) == [(0, 3), (2, 1)]
    with pytest.raises(DimacsParseError):
        read_pairs(io.StringIO("q 1 9\n"), node_count=4)


def test_solution_record_round_trip():
    record = SolutionRecord(
        instance="ny-d",
        source=0,
        target=41,
        algo="tbda",
        queue="heap",
        frontier=[(1, 10), (3, 4), (4, 3)],
        inserted=120,
        extracted=97,
        time_ms=4.21,
        preprocess_ms=12.003,
        paths=[[0, 41], [0, 2, 41], [0, 1, 2, 41]],
    )
    out = io.StringIO()
    write_solution(record, out)
    back = read_solution(io.StringIO(out.getvalue()))
    assert back == record


@pytest.mark.parametrize("seed", range(10))
def test_solution_record_round_trip_fuzzed(seed):
    rng = np.random.default_rng(seed)
    d = int(rng.integers(2, 5))
    frontier = sorted({tuple(int(x) for x in row) for row in rng.integers(0, 1000, size=(8, d))})
    record = SolutionRecord(
        instance=f"inst-{seed}",
        source=int(rng.integers(0, 50)),
        target=int(rng.integers(50, 100)),
        algo="tmda",
        queue="bucket",
        frontier=frontier,
        inserted=int(rng.integers(0, 10**6)),
        extracted=int(rng.integers(0, 10**6)),
        time_ms=float(rng.random() * 100),
        preprocess_ms=float(rng.random()),
        timed_out=bool(seed % 2),
    )
    out = io.StringIO()
    write_solution(record, out)
    assert read_solution(io.StringIO(out.getvalue())) == record


def test_solution_short_header_and_errors():
    text = "instance,s,t,algo,queue,n_t,inserted,extracted,time_ms\nx,1,2,tmda,heap,1,2,2,0.5\nf,3,4\n"
    record = read_solution(io.StringIO(text))
    assert record.frontier == [(3, 4)]
    assert record.preprocess_ms == 0.0

    with pytest.raises(SolutionFormatError):
        read_solution(io.StringIO(text.replace(",1,2,2,", ",2,2,2,")))
    with pytest.raises(SolutionFormatError):
        read_solution(io.StringIO(text + "z,1\n"))
    with pytest.raises(SolutionFormatError):
        read_solution(io.StringIO(text.replace("x,1,2,", "x,0,1,")))


def test_solution_node_ids_are_one_based_on_disk():
    record = SolutionRecord(
        instance="example",
        source=0,
        target=3,
        algo="tbda",
        queue="heap",
        frontier=[(1, 10), (3, 4)],
        paths=[[0, 3], [0, 2, 3]],
    )
    out = io.StringIO()
    write_solution(record, out)
    lines = out.getvalue().splitlines()
    assert lines[1].startswith("example,1,4,")
    assert lines[2:] == ["f,1,10", "p,1,4", "f,3,4", "p,1,3,4"]
    assert read_solution(io.StringIO(out.getvalue())) == record

    with pytest.raises(SolutionFormatError):
        read_solution(io.StringIO(out.getvalue().replace("p,1,4", "p,0,3")))


def test_empty_frontier_round_trip():
    record = SolutionRecord(
        instance="unreachable",
        source=0,
        target=5,
        algo="btbda",
        queue="bucket",
        inserted=0,
        extracted=0,
        time_ms=0.0,
        preprocess_ms=1.5,
    )
    out = io.StringIO()
    write_solution(record, out)
    assert len(out.getvalue().splitlines()) == 2
    back = read_solution(io.StringIO(out.getvalue()))
    assert back == record
    assert back.frontier == [] and back.paths is None and back.n_t == 0

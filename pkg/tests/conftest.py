import numpy as np
import pytest
from hypothesis import strategies as st

from tiltcount import modules as rl
from tiltcount.algebra import Quiver, Relation, build_algebra, semisimple
from tiltcount.dynkin import auslander_presentation, hereditary_a2, kronecker, middle_sink_a3


@pytest.fixture(scope="session")
def sink():
    return middle_sink_a3()


@pytest.fixture(scope="session")
def gamma_a2():
    return auslander_presentation("A2")


@pytest.fixture(scope="session")
def gamma_a3():
    return auslander_presentation("A3")


@pytest.fixture(scope="session")
def a2():
    return hereditary_a2()


@pytest.fixture(scope="session")
def kron():
    return kronecker()


@pytest.fixture(scope="session")
def nakayama3():
    """3 -> 2 -> 1 with the length-two path set to zero."""
    return build_algebra(Quiver([1, 2, 3], [("u1", 2, 1), ("u2", 3, 2)]), [Relation.monomial("u1", "u2")])


def small_algebras():
    return {
        "sink": middle_sink_a3(),
        "a2": hereditary_a2(),
        "gamma_a2": auslander_presentation("A2"),
        "gamma_a3": auslander_presentation("A3"),
        "kronecker": kronecker(),
        "ss2": semisimple(2),
    }


@st.composite
def modules(draw, algebra, max_gens=3, max_rels=2):
    """Random module presented as a cokernel of a map between sums of projectives."""
    A = algebra
    p = A.p
    verts = list(A.vertices)
    gens = draw(st.lists(st.sampled_from(verts), min_size=1, max_size=max_gens))
    P0 = rl.projective_sum(A, tuple(gens))
    rel_verts = draw(st.lists(st.sampled_from(verts), min_size=0, max_size=max_rels))
    rel_elems = []
    for v in rel_verts:
        d = P0.dim_at(v)
        if d == 0:
            continue
        vec = draw(st.lists(st.integers(0, p - 1), min_size=d, max_size=d))
        rel_elems.append((v, np.array(vec, dtype=np.int64)))
    if not rel_elems:
        return P0
    f = rl.yoneda_map(rel_elems, P0)
    return rl.cokernel(f, P0)[0]


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1].split("[")[0]
    if report.when == "call" or report.failed:
        status, secs = _ACCEPTANCE.get(name, ("PASS", 0.0))
        if not report.passed:
            status = "FAIL"
        _ACCEPTANCE[name] = (status, secs + report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for name, label in CRITERIA.items():
        if name in _ACCEPTANCE:
            status, secs = _ACCEPTANCE[name]
            terminalreporter.write_line(f"{status}  criterion {label}  ({secs:.2f}s)")

import pytest

from flames import (
    NotAFlameError,
    augment_flame,
    grow_maximal_flame,
    is_flame,
    lambda_all,
    peel_maximal_flame,
    subgraph_view,
)
from flames.oracle import is_flame_bruteforce

from corpus import TRIANGLE, PARALLEL_PAIR, CYCLIC, corpus


def test_is_flame_reports_violations():
    report = is_flame(CYCLIC, {0, 3, 4})
    assert not report
    assert report.violations == [(2, 1, 0), (3, 1, 0)]
    assert is_flame(CYCLIC, {0, 1, 2})
    assert is_flame(CYCLIC, set())


def test_flames_never_contain_root_edges():
    from flames import RootedDigraph

    D = RootedDigraph(2, 0, [(0, 1), (1, 0)])
    with pytest.raises(NotAFlameError):
        is_flame(D, {1})
    assert peel_maximal_flame(D) == {0}
    assert grow_maximal_flame(D) == {0}


def test_peel_example():
    assert peel_maximal_flame(PARALLEL_PAIR) == {0, 2, 3}


def test_grow_traces():
    for D in (TRIANGLE, CYCLIC):
        trace = []
        F = grow_maximal_flame(D, debug=True, trace=trace)
        assert trace == [0, 1, 2]
        assert F == {0, 1, 2}


def test_augment_flame():
    assert augment_flame(CYCLIC, set()) == 0
    assert augment_flame(CYCLIC, {0}) == 1
    assert augment_flame(CYCLIC, {0, 1, 2}) is None
    with pytest.raises(NotAFlameError):
        augment_flame(CYCLIC, {3, 4})


@pytest.mark.parametrize("build", [grow_maximal_flame, peel_maximal_flame])
def test_maximal_flames_on_corpus(build):
    for D in corpus(200):
        lam = lambda_all(D)
        F = build(D, debug=True)
        assert is_flame(D, F) and is_flame_bruteforce(D, F)
        assert lambda_all(subgraph_view(D, F)) == lam
        assert len(F) == sum(lam.values())

import pytest

import bimatch


def two_by_two():
    return bimatch.Graph(2, 2, [(0, 0, 5), (0, 1, 1), (1, 0, 2), (1, 1, 3)])


@pytest.mark.parametrize("algorithm", ["kwok", "hungarian", "hungarian-virtual", "mcmf"])
def test_two_by_two(algorithm):
    res = bimatch.solve(two_by_two(), algorithm=algorithm)
    assert res.weight == 8
    assert sorted(res.pairs) == [(0, 0, 5), (1, 1, 3)]


def test_certificate_and_stats():
    res = bimatch.solve(two_by_two(), certify=True)
    assert res.certified is True
    assert res.stats["greedy_matches"] == 2
    assert sum(res.h_left) + sum(res.h_right) == res.weight


def test_transposed_input_keeps_orientation():
    g = bimatch.Graph(3, 2, [(0, 0, 4), (2, 1, 7), (1, 1, -2)])
    assert g.transposed
    res = bimatch.solve(g)
    assert res.weight == 11
    assert sorted(res.pairs) == [(0, 0, 4), (2, 1, 7)]


def test_real_weights():
    g = bimatch.RealGraph(2, 3, [(0, 0, 1.5), (0, 1, 2.25), (1, 1, 4.0)])
    res = bimatch.solve(g, certify=True)
    assert res.weight == pytest.approx(5.5)
    assert res.certified


def test_generated_graph_agrees_with_oracle():
    for seed in range(20):
        g = bimatch.generate(6, ratio=2, budget="frac:2", weights="-3:10", seed=seed)
        expected = bimatch.brute_force(g.clean())
        for greedy in (True, False):
            for prune in (True, False):
                assert bimatch.solve(g, greedy=greedy, prune=prune, sorted_adjacency=True).weight == expected


def test_errors():
    with pytest.raises(ValueError):
        bimatch.Graph(1, 1, [(0, 5, 1)])
    with pytest.raises(ValueError):
        bimatch.solve(two_by_two(), algorithm="mcmf", certify=True)
    with pytest.raises(ValueError):
        bimatch.brute_force(bimatch.Graph(1, 30, []))


def test_read_graph(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("# c\n1 2 2\n0 0 4\n0 1 9\n")
    res = bimatch.solve(bimatch.read_graph(str(p)))
    assert res.weight == 9
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\n")
    with pytest.raises(bimatch.ParseError, match="line 1"):
        bimatch.read_graph(str(bad))

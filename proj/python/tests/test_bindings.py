import math

import pytest

import bkw


def test_diamond_shapes():
    d0 = bkw.Domain.diamond(0, 0, 0)
    assert d0.vertex_count == 1
    assert d0.primal_edge_count == 0
    assert d0.medial_edge_count == 4
    d1 = bkw.Domain.parse("diamond:1")
    assert d1.vertex_count == 4
    assert d1.primal_edge_count == 4
    assert d1.n2 == 8
    assert d1.descriptor() == {"kind": "diamond", "center": [1, 0], "radius": 1}
    with pytest.raises(ValueError):
        bkw.Domain.diamond(0, 0, 1)


def test_cluster_stats_and_weight():
    d = bkw.Domain.parse("diamond:1")
    assert bkw.cluster_stats(d, [1, 1, 1, 1]) == {"o": 4, "c": 0, "k_i": 0, "k_b": 1, "k_dual": 2}
    assert bkw.fk_weight(d, [0] * 4, 2 / 3, 4.0, 4.0) == pytest.approx((1 / 3) ** 4 * 4**4)
    dist = bkw.fk_distribution(d, 0.75, 9.0, 3.0)
    assert len(dist) == 16
    assert sum(dist) == pytest.approx(1.0)


def test_loops_and_six_vertex():
    d = bkw.Domain.parse("diamond:1")
    loops = bkw.loops(d, [1, 1, 1, 1])
    assert len(loops) == 2
    assert sorted(l["boundary"] for l in loops) == [False, True]
    configs = bkw.six_vertex_configs(d)
    assert len(configs) == 2
    assert len(bkw.six_vertex_configs(bkw.Domain.parse("diamond:2"))) == 18
    for arrows in configs:
        assert bkw.is_valid_6v(d, arrows)
        assert all(1 <= t <= 6 for t in bkw.vertex_types(d, arrows))
    arrows = bkw.loop_arrows(d, [1, 1, 1, 1], [1 if l["boundary"] else -1 for l in loops])
    assert arrows in configs


def test_height_gradient():
    d = bkw.Domain.parse("diamond:1")
    h = bkw.height_from_arrows(d, bkw.six_vertex_configs(d)[0], (1, 0))
    assert h[(1, 0)] == 0
    assert all(abs(h[f] - h[(1, 0)]) == 1 for f in [(0, 0), (2, 0), (1, 1), (1, -1)])


def test_params():
    p = bkw.coupled_params(10.0)
    lam = float(p["lambda"])
    assert lam == pytest.approx(math.acosh(math.sqrt(10) / 2))
    assert float(p["c"]) ** 2 == pytest.approx(2 + math.sqrt(10))
    assert bkw.critical_p(4.0) == pytest.approx(2 / 3)


def test_verification():
    d = bkw.Domain.parse("diamond:1")
    rep = bkw.verify_coupling(d)
    assert rep["passed"]
    assert {c["name"] for c in rep["checks"]} >= {"split_pushforward[+lambda]", "split_pushforward[-lambda]"}
    assert bkw.verify_coupling(d, "float")["passed"]
    assert bkw.verify_identities(bkw.Domain.parse("diamond:2"), random_pairs=50)["passed"]
    with pytest.raises(ValueError):
        bkw.verify_coupling(bkw.Domain.parse("diamond:3"))


def test_holley():
    d = bkw.Domain.parse("diamond:1")
    assert bkw.holley_check(d, 9.0, 0.75, 3.0, 1.0)["holds"]
    assert not bkw.holley_check(d, 9.0, 0.75, 1.0, 3.0)["holds"]


def test_sampler_and_drift():
    d = bkw.Domain.box(8)
    a = bkw.sample(d, 0.76, 10.0, 10.0, sweeps=20, seed=5)
    b = bkw.sample(d, 0.76, 10.0, 10.0, sweeps=20, seed=5)
    assert a == b
    r = bkw.drift(10.0, math.acosh(math.sqrt(10) / 2), box=12, samples=8, chains=2, burn_in=5, thin=1, seed=3)
    assert r["samples"] == 8
    assert r["count"] >= 0

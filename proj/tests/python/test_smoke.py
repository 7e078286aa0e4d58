import pytest

import subsum


def test_partition_example():
    r = subsum.solve("partition", [3, 1, 1, 2, 2, 1], eps=0.1)
    assert r["value"] == 5
    assert sum(r["witness"]) == 5


def test_subset_sum_within_guarantee():
    inst = subsum.generate("subset-sum", "uniform:n=60,seed=3,max=100000,t=0.4")
    eps = 0.05
    r = subsum.solve("subset-sum", inst["items"], inst["target"], eps=eps, trace=True)
    opt = subsum.exact("subset-sum", inst["items"], inst["target"])
    assert r["value"] >= (1 - eps) * opt
    assert r["value"] <= (1 + eps) * inst["target"]
    assert "groups" in r["trace"]


def test_unbounded_example():
    r = subsum.solve("unbounded", [7], 100, eps=0.05)
    delta = r["certificate"]["delta"]
    assert (1 - delta) * 98 <= r["value"] <= (1 + delta) * 100
    assert sum(v * c for v, c in r["witness"]) == r["value"]
    gated = subsum.solve("unbounded", [7], 100, eps=0.1)
    assert gated["path"] == "gate"
    assert gated["witness"] == [[7, 15]]


def test_verify_and_determinism():
    inst = subsum.generate("partition", "dense-window:n=50,seed=8,max=10000")
    ok, ratio, message = subsum.verify(inst, eps=0.05)
    assert ok, message
    assert ratio <= 1.0 + 1e-9
    a = subsum.solve("partition", inst["items"], eps=0.05)
    b = subsum.solve("partition", inst["items"], eps=0.05, threads=2)
    assert a == b


def test_subset_sums_and_errors():
    assert subsum.subset_sums([1, 3]) == [0, 1, 3, 4]
    with pytest.raises(ValueError):
        subsum.solve("knapsack", [1, 2], 3)
    with pytest.raises(ValueError):
        subsum.solve("subset-sum", [1, 2])

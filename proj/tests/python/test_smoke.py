"""Python smoke tests for the compiled whmin module."""

import pytest

import whmin


def test_word_roundtrip():
    w = whmin.Word("x1 X3 x2", rank=3)
    assert str(w) == "x1 X3 x2"
    assert len(w) == 3
    assert w.rank == 3
    assert w.letters() == [1, -3, 2]
    assert whmin.Word("", rank=2) == whmin.Word("", rank=2)
    with pytest.raises(Exception):
        whmin.Word("x1 X1", rank=2)  # not freely reduced


def test_group_operations():
    u = whmin.free_reduce([1, 2, -2, 3], rank=3)
    assert str(u) == "x1 x3"
    assert str(whmin.cyclic_reduce(whmin.Word("x1 x2 X1", rank=2))) == "x2"
    v = whmin.multiply(whmin.Word("x1 x2", rank=3), whmin.Word("X2 x3", rank=3))
    assert str(v) == "x1 x3"
    assert len(whmin.multiply(u, whmin.inverse(u))) == 0


def test_enumeration_counts():
    assert whmin.nielsen_count(3) == 24
    assert whmin.whitehead_count(3) == 90
    assert whmin.whitehead_count(4) == 504
    assert whmin.whitehead_count(5) == 2550
    assert len(whmin.enumerate_whitehead(3)) == 90
    auts = whmin.enumerate_nielsen(2)
    assert len(auts) == 8
    assert str(auts[0]).startswith("N(")


def test_apply_and_features():
    w = whmin.Word("x1 X2", rank=2)
    auts = whmin.enumerate_nielsen(2)
    images = {str(t.apply(w)) for t in auts}
    assert "x1" in images  # x1 -> x1 x2 cancels the X2
    f = whmin.feature_vector(whmin.Word("x1 x2", rank=3))
    assert len(f) == whmin.feature_dim(3) == 15
    assert abs(sum(f) - 1.0) < 1e-12


def test_random_words_are_seeded():
    a = whmin.random_cyclically_reduced_word(3, 40, seed=7)
    b = whmin.random_cyclically_reduced_word(3, 40, seed=7)
    assert a == b
    assert len(a) == 40
    assert a.is_cyclically_reduced()


@pytest.fixture(scope="module")
def models():
    return whmin.train_models(
        rank=2, samples=800, alpha=0.02, len_min=6, len_max=40,
        centroid_max_len=30, seed=11,
    )


def test_classifier(models):
    assert models.rank == 2
    assert models.rho > 0
    w = whmin.random_cyclically_reduced_word(2, 30, seed=3)
    assert whmin.decide(models, w) in ("minimal", "non-minimal")
    assert whmin.mahalanobis_sq(models, w) >= 0


def test_engines_agree(models):
    for i in range(10):
        w = whmin.random_cyclically_reduced_word(2, 20, seed=100 + i)
        exact = whmin.wr(w)
        hybrid = whmin.hdwr(w, models, seed=i)
        assert len(exact.output) == len(hybrid.output)
        assert hybrid.terminated_by == "full-sweep"
        assert whmin.apply_sequence(hybrid.applied, w) == hybrid.output
        assert hybrid.steps_reducing <= hybrid.steps_total


def test_hpwr_runs(models):
    words = whmin.gen_dataset("sp", rank=2, count=5, seed=9, auts_max=6)
    for word, oracle in words:
        assert oracle == 1
        res = whmin.hpwr(word, models, seed=1)
        assert len(res.output) >= 1


def test_model_io_roundtrip(models, tmp_path):
    path = tmp_path / "model.json"
    models.save(path)
    loaded = whmin.load_models(path)
    w = whmin.random_cyclically_reduced_word(2, 24, seed=5)
    assert whmin.mahalanobis_sq(loaded, w) == whmin.mahalanobis_sq(models, w)
    with pytest.raises(whmin.WhminError):
        whmin.load_models(tmp_path / "missing.json")


def test_dataset_generation_is_deterministic():
    a = whmin.gen_dataset("s1", rank=3, count=8, seed=4, len_min=6, len_max=20)
    b = whmin.gen_dataset("s1", rank=3, count=8, seed=4, len_min=6, len_max=20)
    assert [(str(w), o) for w, o in a] == [(str(w), o) for w, o in b]

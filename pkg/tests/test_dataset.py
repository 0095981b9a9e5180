"""Dataset container, UCR-style text round-trips, synthetic generator."""

import numpy as np
import pytest

from whalemedoids.dataset import Dataset, load_ucr, save_ucr, synth_blobs


def test_container_basics():
    ds = Dataset(series=[np.arange(3.0), np.arange(4.0)], labels=[0, 1], name="x")
    assert len(ds) == 2
    assert ds.lengths.tolist() == [3, 4]
    assert not ds.uniform_length
    assert ds.n_classes == 2
    assert ds.labels.dtype == np.int64


def test_container_coerces_to_float64():
    ds = Dataset(series=[[1, 2, 3], [4, 5, 6]])
    assert all(s.dtype == np.float64 for s in ds.series)
    assert ds.uniform_length
    assert ds.labels is None


def test_container_validation():
    ok = [np.arange(3.0), np.arange(3.0)]
    with pytest.raises(ValueError, match="at least 2"):
        Dataset(series=[np.arange(3.0)])
    with pytest.raises(ValueError, match="series 1"):
        Dataset(series=[np.arange(3.0), np.zeros(0)])
    with pytest.raises(ValueError, match="series 0"):
        Dataset(series=[np.zeros((2, 2)), np.arange(3.0)])
    with pytest.raises(ValueError, match="non-finite"):
        Dataset(series=[np.array([1.0, np.nan]), np.arange(2.0)])
    with pytest.raises(ValueError, match="one-to-one"):
        Dataset(series=ok, labels=[0])
    with pytest.raises(ValueError, match="non-negative"):
        Dataset(series=ok, labels=[0, -1])


def test_n_classes_requires_labels():
    ds = Dataset(series=[np.arange(3.0), np.arange(3.0)], name="bare")
    with pytest.raises(ValueError, match="bare"):
        ds.n_classes


def test_load_tab_separated(tmp_path):
    f = tmp_path / "toy.tsv"
    f.write_text("1\t0.5\t1.5\n2\t2.5\t3.5\n1\t4.5\t5.5\n")
    ds = load_ucr(f)
    assert len(ds) == 3
    assert ds.labels.tolist() == [0, 1, 0]  # dense ids, first-appearance order
    assert ds.series[1].tolist() == [2.5, 3.5]
    assert ds.name == "toy"


def test_load_comma_separated_and_float_labels(tmp_path):
    f = tmp_path / "toy.csv"
    f.write_text("2.0,1,2\n-1.0,3,4\n2.0,5,6\n")
    ds = load_ucr(f)
    assert ds.labels.tolist() == [0, 1, 0]


def test_load_skips_blank_lines_and_accepts_ragged_rows(tmp_path):
    f = tmp_path / "ragged.txt"
    f.write_text("0\t1\t2\t3\n\n1\t4\t5\n")
    ds = load_ucr(f)
    assert len(ds) == 2
    assert ds.lengths.tolist() == [3, 2]
    assert not ds.uniform_length


def test_load_delimiter_override(tmp_path):
    f = tmp_path / "forced.txt"
    f.write_text("0,1,2\n1,3,4\n")
    ds = load_ucr(f, delimiter=",")
    assert len(ds) == 2


def test_load_errors_name_the_line(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("0\t1\t2\n1\toops\t3\n")
    with pytest.raises(ValueError, match=r"bad\.txt:2"):
        load_ucr(f)
    g = tmp_path / "short.txt"
    g.write_text("7\n")
    with pytest.raises(ValueError, match=r"short\.txt:1"):
        load_ucr(g)
    h = tmp_path / "empty.txt"
    h.write_text("\n\n")
    with pytest.raises(ValueError, match="no records"):
        load_ucr(h)


def test_save_load_roundtrip_is_exact(tmp_path):
    rng = np.random.default_rng(51)
    ds = Dataset(
        series=[rng.normal(size=7), rng.normal(size=5), rng.normal(size=7)],
        labels=[1, 0, 1],
        name="rt",
    )
    path = tmp_path / "rt.tsv"
    save_ucr(ds, path)
    back = load_ucr(path)
    assert back.labels.tolist() == [0, 1, 0]  # re-densified on load
    for orig, loaded in zip(ds.series, back.series):
        assert np.array_equal(orig, loaded)  # repr round-trip, bit exact


def test_save_unlabelled_writes_zeros(tmp_path):
    ds = Dataset(series=[np.arange(3.0), np.arange(3.0)])
    path = tmp_path / "plain.tsv"
    save_ucr(ds, path)
    assert all(line.startswith("0\t") for line in path.read_text().splitlines())


def test_synth_blobs_layout():
    ds = synth_blobs(5, 3, 16, 0.1, 9)
    assert len(ds) == 15
    assert ds.labels.tolist() == [0] * 5 + [1] * 5 + [2] * 5
    assert ds.uniform_length
    assert ds.lengths[0] == 16
    assert ds.name == "blobs-npc5-k3-len16-noise0.1-seed9"


def test_synth_blobs_deterministic_and_seed_sensitive():
    a = synth_blobs(4, 2, 12, 0.3, 1)
    b = synth_blobs(4, 2, 12, 0.3, 1)
    c = synth_blobs(4, 2, 12, 0.3, 2)
    for sa, sb in zip(a.series, b.series):
        assert np.array_equal(sa, sb)
    assert any(not np.array_equal(sa, sc) for sa, sc in zip(a.series, c.series))


def test_synth_blobs_zero_noise_gives_identical_group_members():
    ds = synth_blobs(3, 2, 10, 0.0, 0)
    assert np.array_equal(ds.series[0], ds.series[1])
    assert not np.array_equal(ds.series[0], ds.series[3])


def test_synth_blobs_validation():
    with pytest.raises(ValueError):
        synth_blobs(0, 2, 8, 0.1, 0)
    with pytest.raises(ValueError):
        synth_blobs(2, 2, 0, 0.1, 0)
    with pytest.raises(ValueError):
        synth_blobs(2, 2, 8, -0.1, 0)

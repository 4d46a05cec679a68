import numpy as np
import pytest

from granball import Dataset, load_csv, minmax_normalize, synth
from granball.dataio import format_csv, write_csv
from granball.exceptions import IoError, ParseError, RaggedRows, UnknownShape


def write(tmp_path, text, name="d.csv"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def test_text_labels(tmp_path):
    ds = load_csv(write(tmp_path, "1,2,a\n3,4,a\n5,6,b\n"), label_column=2)
    assert ds.features.tolist() == [[1, 2], [3, 4], [5, 6]]
    assert ds.labels.tolist() == [0, 0, 1]
    assert ds.name == "d"


def test_header_label_by_name(tmp_path):
    ds = load_csv(write(tmp_path, "x,y,class\n1,2,q\n3,4,p\n"), has_header=True, label_column="class")
    assert ds.labels.tolist() == [0, 1] and ds.m == 2


def test_errors(tmp_path):
    with pytest.raises(ParseError):
        load_csv(write(tmp_path, ""))
    with pytest.raises(RaggedRows) as err:
        load_csv(write(tmp_path, "1,2\n3\n"))
    assert err.value.row == 1
    with pytest.raises(ParseError) as err:
        load_csv(write(tmp_path, "1,2\n3,zz\n"))
    assert (err.value.row, err.value.col) == (1, 1)
    with pytest.raises(ParseError):
        load_csv(write(tmp_path, "1,nan\n"))
    with pytest.raises(ParseError):
        load_csv(write(tmp_path, "a,b\n1,2\n"), has_header=True, label_column="c")
    with pytest.raises(IoError):
        load_csv(tmp_path / "missing.csv")


def test_round_trip(tmp_path):
    ds = synth("moons", n=50, seed=4)
    write_csv(ds, tmp_path / "m.csv")
    back = load_csv(tmp_path / "m.csv", has_header=True, label_column="label")
    assert np.array_equal(back.features, ds.features)
    assert np.array_equal(back.labels, ds.labels)
    assert format_csv(back) == format_csv(ds)


def test_minmax():
    ds = Dataset(np.array([[0.0, 7.0], [5.0, 7.0], [10.0, 7.0]]))
    out = minmax_normalize(ds)
    assert out.features.tolist() == [[0, 0], [0.5, 0], [1, 0]]
    assert np.array_equal(minmax_normalize(out).features, out.features)


def test_synth_contracts():
    b = synth("blobs", n=300, classes=3, noise=0.05, seed=7)
    assert b.features.shape == (300, 2) and np.bincount(b.labels).tolist() == [100, 100, 100]
    r = synth("rings", n=200, noise=0)
    radii = np.linalg.norm(r.features, axis=1)
    assert np.allclose(radii[r.labels == 0], 1) and np.allclose(radii[r.labels == 1], 2)
    for shape in ("blobs", "rings", "moons", "spirals"):
        assert np.array_equal(synth(shape, seed=3).features, synth(shape, seed=3).features)
    assert not np.array_equal(synth("moons", seed=1).features, synth("moons", seed=2).features)
    with pytest.raises(UnknownShape):
        synth("cubes")

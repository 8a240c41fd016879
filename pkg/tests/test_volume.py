import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isoclean.volume import (
    NonRepresentableError,
    SampleKind,
    UnsupportedFieldError,
    VolumeFormatError,
    VolumeGrid,
    coords,
    linear_index,
    load_nhdr,
    load_raw,
    load_volume,
    store_nhdr,
    store_raw,
)


def test_load_raw_identity_decoding(tmp_path):
    path = tmp_path / "v.raw"
    path.write_bytes(bytes(range(8)))
    grid = load_raw(path, (2, 2, 2), "uint8")
    assert grid.samples.tolist() == list(range(8))
    assert grid.value_at(1, 0, 0) == 1
    assert grid.value_at(0, 1, 0) == 2
    assert grid.value_at(0, 0, 1) == 4
    assert grid.sample_kind is SampleKind.UINT8


def test_load_raw_size_mismatch(tmp_path):
    path = tmp_path / "v.raw"
    path.write_bytes(bytes(7))
    with pytest.raises(VolumeFormatError, match="expected 8 bytes.*found 7"):
        load_raw(path, (2, 2, 2), "uint8")


def test_load_raw_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_raw(tmp_path / "nope.raw", (2, 2, 2), "uint8")


def test_lobster_sized_layout(tmp_path):
    # synthetic stand-in with the lobster dims; the real file is not needed
    path = tmp_path / "lobster_301x324x56_uint8.raw"
    path.write_bytes(bytes(301 * 324 * 56))
    grid = load_volume(path)
    assert grid.dims == (301, 324, 56)
    assert grid.n_vertices == 5_461_344
    assert grid.total_cubes == 300 * 323 * 55 == 5_329_500


@pytest.mark.parametrize("kind,endian", [
    ("uint8", "little"), ("uint16", "little"), ("uint16", "big"),
    ("int16", "little"), ("int16", "big"), ("float32", "little"), ("float32", "big"),
])
def test_endianness_decoding(tmp_path, kind, endian):
    dtype = np.dtype(kind).newbyteorder("<" if endian == "little" else ">")
    values = np.array([0, 1, 2, 100, 7, 3, 5, 9], dtype=dtype)
    path = tmp_path / "v.raw"
    path.write_bytes(values.tobytes())
    grid = load_raw(path, (2, 2, 2), kind, endian)
    assert grid.samples.tolist() == values.astype(np.float64).tolist()
    out = tmp_path / "w.raw"
    store_raw(grid, out)
    assert out.read_bytes() == path.read_bytes()


@settings(max_examples=60, deadline=None)
@given(
    dims=st.tuples(*[st.integers(1, 16)] * 3),
    kind=st.sampled_from(list(SampleKind)),
    endian=st.sampled_from(["little", "big"]),
    seed=st.integers(0, 2**32 - 1),
)
def test_round_trip_bytes(tmp_path_factory, dims, kind, endian, seed):
    rng = np.random.default_rng(seed)
    n = dims[0] * dims[1] * dims[2]
    if kind is SampleKind.FLOAT32:
        raw = rng.normal(scale=1e3, size=n).astype(np.float32)
    else:
        info = np.iinfo(kind.dtype)
        raw = rng.integers(info.min, info.max, size=n, endpoint=True).astype(kind.dtype)
    data = raw.astype(raw.dtype.newbyteorder("<" if endian == "little" else ">")).tobytes()
    d = tmp_path_factory.mktemp("rt")
    src = d / "in.raw"
    src.write_bytes(data)
    grid = load_raw(src, dims, kind, endian)
    dst = d / "out.raw"
    store_raw(grid, dst)
    assert dst.read_bytes() == data


@settings(max_examples=200, deadline=None)
@given(dims=st.tuples(*[st.integers(1, 40)] * 3), data=st.data())
def test_linearization_bijective(dims, data):
    n = dims[0] * dims[1] * dims[2]
    i = data.draw(st.integers(0, n - 1))
    x, y, z = coords(dims, i)
    assert 0 <= x < dims[0] and 0 <= y < dims[1] and 0 <= z < dims[2]
    assert linear_index(dims, x, y, z) == i


def test_store_non_representable(tmp_path):
    grid = VolumeGrid((2, 1, 1), [300.0, 4.0], SampleKind.UINT8)
    with pytest.raises(NonRepresentableError, match=r"\(0, 0, 0\).*300"):
        store_raw(grid, tmp_path / "x.raw")
    store_raw(grid, tmp_path / "x.raw", clamp=True)
    assert (tmp_path / "x.raw").read_bytes() == bytes([255, 4])


def test_store_rounds_filtered_values(tmp_path):
    grid = VolumeGrid((4, 1, 1), [10.4, 10.6, 20.5, -0.4], SampleKind.INT16)
    store_raw(grid, tmp_path / "x.raw")
    assert np.frombuffer((tmp_path / "x.raw").read_bytes(), "<i2").tolist() == [10, 11, 20, 0]


def test_store_rejects_nan(tmp_path):
    grid = VolumeGrid((1, 1, 1), [np.nan], SampleKind.UINT16)
    with pytest.raises(NonRepresentableError):
        store_raw(grid, tmp_path / "x.raw")


def test_grid_is_immutable():
    grid = VolumeGrid((2, 1, 1), np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        grid.samples[0] = 5.0


def test_grid_validates_length():
    with pytest.raises(ValueError, match="expected 8 samples"):
        VolumeGrid((2, 2, 2), np.zeros(7))
    with pytest.raises(ValueError):
        VolumeGrid((0, 2, 2), np.zeros(0))


def test_from_array_order():
    arr = np.arange(24).reshape(2, 3, 4)
    grid = VolumeGrid.from_array(arr)
    assert grid.dims == (2, 3, 4)
    assert grid.value_at(1, 2, 3) == arr[1, 2, 3]
    assert np.array_equal(grid.as_array(), arr)


def _write_header(path, lines):
    path.write_text("\n".join(["NRRD0004"] + lines) + "\n")


def test_load_nhdr_minimal(tmp_path):
    (tmp_path / "cube.raw").write_bytes(bytes(range(27)))
    hdr = tmp_path / "cube.nhdr"
    _write_header(hdr, ["# comment", "type: uchar", "dimension: 3", "sizes: 3 3 3",
                        "encoding: raw", "data file: cube.raw"])
    grid = load_nhdr(hdr)
    assert grid.dims == (3, 3, 3)
    assert grid.samples[26] == 26
    assert grid.spacing == (1.0, 1.0, 1.0)


def test_load_nhdr_spacing_and_endian(tmp_path):
    values = np.arange(8, dtype=">u2")
    (tmp_path / "d.raw").write_bytes(values.tobytes())
    hdr = tmp_path / "d.nhdr"
    _write_header(hdr, ["type: unsigned short", "dimension: 3", "sizes: 2 2 2",
                        "endian: big", "encoding: raw",
                        "space directions: (0.5,0,0) (0,2,0) (0,0,1.4)",
                        "data file: d.raw"])
    grid = load_nhdr(hdr)
    assert grid.samples.tolist() == list(range(8))
    assert grid.spacing == pytest.approx((0.5, 2.0, 1.4))


@pytest.mark.parametrize("line", [
    "encoding: gzip", "type: double", "dimension: 4", "sizes: 3 3",
])
def test_load_nhdr_unsupported(tmp_path, line):
    (tmp_path / "cube.raw").write_bytes(bytes(27))
    base = {"type": "type: uchar", "dimension": "dimension: 3", "sizes": "sizes: 3 3 3",
            "encoding": "encoding: raw"}
    base[line.split(":")[0]] = line
    hdr = tmp_path / "cube.nhdr"
    _write_header(hdr, list(base.values()) + ["data file: cube.raw"])
    with pytest.raises(UnsupportedFieldError, match="unsupported field"):
        load_nhdr(hdr)


def test_store_nhdr_round_trip(tmp_path):
    grid = VolumeGrid((3, 2, 2), np.arange(12.0), SampleKind.INT16, spacing=(1.0, 1.0, 1.4),
                      endianness="big")
    store_nhdr(grid, tmp_path / "o.nhdr")
    back = load_nhdr(tmp_path / "o.nhdr")
    assert back == grid

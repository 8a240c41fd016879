"""Regular scalar grids and their on-disk RAW / NRRD-header representations."""
from __future__ import annotations

import enum
import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

__all__ = [
    "SampleKind",
    "VolumeGrid",
    "VolumeFormatError",
    "UnsupportedFieldError",
    "NonRepresentableError",
    "load_raw",
    "load_nhdr",
    "load_volume",
    "store_raw",
    "store_nhdr",
    "linear_index",
    "coords",
]


class VolumeFormatError(ValueError):
    """Raised when a volume file does not match its declared layout."""


class UnsupportedFieldError(VolumeFormatError):
    """Raised for NRRD header fields outside the supported subset."""


class NonRepresentableError(ValueError):
    """Raised when a sample cannot be stored in the target sample kind."""


class SampleKind(enum.Enum):
    UINT8 = "uint8"
    UINT16 = "uint16"
    INT16 = "int16"
    FLOAT32 = "float32"

    @property
    def dtype(self) -> np.dtype:
        return np.dtype(self.value)

    @property
    def itemsize(self) -> int:
        return self.dtype.itemsize

    @property
    def is_integral(self) -> bool:
        return self is not SampleKind.FLOAT32

    @classmethod
    def parse(cls, name: str) -> "SampleKind":
        key = " ".join(name.strip().lower().split())
        try:
            return _KIND_ALIASES[key]
        except KeyError:
            raise ValueError(f"unknown sample type {name!r}") from None


_KIND_ALIASES = {
    "uint8": SampleKind.UINT8,
    "uchar": SampleKind.UINT8,
    "unsigned char": SampleKind.UINT8,
    "uint8_t": SampleKind.UINT8,
    "uint16": SampleKind.UINT16,
    "ushort": SampleKind.UINT16,
    "unsigned short": SampleKind.UINT16,
    "unsigned short int": SampleKind.UINT16,
    "uint16_t": SampleKind.UINT16,
    "int16": SampleKind.INT16,
    "short": SampleKind.INT16,
    "signed short": SampleKind.INT16,
    "short int": SampleKind.INT16,
    "signed short int": SampleKind.INT16,
    "int16_t": SampleKind.INT16,
    "float32": SampleKind.FLOAT32,
    "float": SampleKind.FLOAT32,
}

_ENDIAN_PREFIX = {"little": "<", "big": ">"}


@dataclass(frozen=True, eq=False)
class VolumeGrid:
    """A 3D regular grid of scalar samples.

    ``samples`` is a flat, read-only float64 array in x-fastest order, so the
    value at ``(x, y, z)`` lives at ``x + nx * (y + ny * z)``. float64 holds
    every value of the supported sample kinds exactly.
    """

    dims: tuple[int, int, int]
    samples: np.ndarray
    sample_kind: SampleKind = SampleKind.FLOAT32
    spacing: tuple[float, float, float] = (1.0, 1.0, 1.0)
    endianness: str = "little"
    name: str = field(default="", compare=False)

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) != 3 or min(dims) < 1:
            raise ValueError(f"dims must be three positive ints, got {self.dims}")
        spacing = tuple(float(s) for s in self.spacing)
        if len(spacing) != 3 or not all(s > 0 for s in spacing):
            raise ValueError(f"spacing must be three positive reals, got {self.spacing}")
        if self.endianness not in _ENDIAN_PREFIX:
            raise ValueError(f"endianness must be 'little' or 'big', got {self.endianness!r}")
        samples = np.asarray(self.samples, dtype=np.float64).reshape(-1)
        if samples.flags.writeable or not samples.flags.c_contiguous:
            samples = samples.copy()
            samples.flags.writeable = False
        n = dims[0] * dims[1] * dims[2]
        if samples.size != n:
            raise ValueError(f"expected {n} samples for dims {dims}, got {samples.size}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "spacing", spacing)
        object.__setattr__(self, "samples", samples)

    def __eq__(self, other):
        if not isinstance(other, VolumeGrid):
            return NotImplemented
        return (self.dims == other.dims and self.sample_kind is other.sample_kind
                and self.spacing == other.spacing and self.endianness == other.endianness
                and np.array_equal(self.samples, other.samples))

    __hash__ = None

    @classmethod
    def from_array(cls, array, sample_kind: SampleKind | None = None, **kwargs) -> "VolumeGrid":
        """Build a grid from an array indexed ``[x, y, z]``."""
        arr = np.asarray(array)
        if arr.ndim != 3:
            raise ValueError(f"expected a 3D array, got shape {arr.shape}")
        if sample_kind is None:
            sample_kind = _kind_for_dtype(arr.dtype)
        flat = np.asarray(arr, dtype=np.float64).reshape(-1, order="F")
        return cls(arr.shape, flat, sample_kind, **kwargs)

    @property
    def n_vertices(self) -> int:
        return self.dims[0] * self.dims[1] * self.dims[2]

    @property
    def total_cubes(self) -> int:
        nx, ny, nz = self.dims
        return max(nx - 1, 0) * max(ny - 1, 0) * max(nz - 1, 0)

    def as_array(self) -> np.ndarray:
        """Read-only view indexed ``[x, y, z]``."""
        return self.samples.reshape(self.dims, order="F")

    def value_at(self, x: int, y: int, z: int) -> float:
        return float(self.samples[linear_index(self.dims, x, y, z)])

    def with_samples(self, samples: np.ndarray) -> "VolumeGrid":
        """Copy of this grid with replaced samples and identical metadata."""
        return VolumeGrid(self.dims, samples, self.sample_kind, self.spacing,
                          self.endianness, self.name)


def _kind_for_dtype(dtype) -> SampleKind:
    dtype = np.dtype(dtype)
    for kind in SampleKind:
        if kind.dtype == dtype:
            return kind
    return SampleKind.FLOAT32


def linear_index(dims: Sequence[int], x: int, y: int, z: int) -> int:
    nx, ny, nz = dims
    if not (0 <= x < nx and 0 <= y < ny and 0 <= z < nz):
        raise IndexError(f"({x}, {y}, {z}) outside dims {tuple(dims)}")
    return x + nx * (y + ny * z)


def coords(dims: Sequence[int], i: int) -> tuple[int, int, int]:
    nx, ny, nz = dims
    if not 0 <= i < nx * ny * nz:
        raise IndexError(f"index {i} outside grid of {nx * ny * nz} vertices")
    x = i % nx
    y = (i // nx) % ny
    z = i // (nx * ny)
    return x, y, z


def _as_kind(sample_kind) -> SampleKind:
    if isinstance(sample_kind, SampleKind):
        return sample_kind
    return SampleKind.parse(str(sample_kind))


def load_raw(path, dims, sample_kind, endianness: str = "little",
             spacing=(1.0, 1.0, 1.0)) -> VolumeGrid:
    """Read a tightly packed x-fastest RAW volume.

    Raises
    ------
    VolumeFormatError
        If the file size differs from ``nx * ny * nz * itemsize``.
    OSError
        If the file cannot be read.
    """
    kind = _as_kind(sample_kind)
    if endianness not in _ENDIAN_PREFIX:
        raise ValueError(f"endianness must be 'little' or 'big', got {endianness!r}")
    dims = tuple(int(d) for d in dims)
    expected = dims[0] * dims[1] * dims[2] * kind.itemsize
    path = Path(path)
    data = path.read_bytes()
    if len(data) != expected:
        raise VolumeFormatError(
            f"{path}: expected {expected} bytes for dims {dims} of {kind.value}, "
            f"found {len(data)} bytes")
    dtype = kind.dtype.newbyteorder(_ENDIAN_PREFIX[endianness])
    values = np.frombuffer(data, dtype=dtype)
    return VolumeGrid(dims, values.astype(np.float64), kind, spacing, endianness,
                      name=volume_name(path))


def _check_representable(grid: VolumeGrid, values: np.ndarray, clamp: bool) -> np.ndarray:
    kind = grid.sample_kind
    if not kind.is_integral:
        return values
    info = np.iinfo(kind.dtype)
    bad = ~np.isfinite(values)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise NonRepresentableError(
            f"vertex {coords(grid.dims, i)} has non-finite value {values[i]!r}, "
            f"not storable as {kind.value}")
    if clamp:
        return np.clip(values, info.min, info.max)
    out = (values < info.min) | (values > info.max)
    if out.any():
        i = int(np.flatnonzero(out)[0])
        raise NonRepresentableError(
            f"vertex {coords(grid.dims, i)} has value {grid.samples[i]!r}, outside "
            f"the {kind.value} range [{info.min}, {info.max}]")
    return values


def store_raw(grid: VolumeGrid, path, clamp: bool = False) -> None:
    """Write ``grid`` in the exact layout :func:`load_raw` reads.

    Integral sample kinds round to nearest. Values outside the kind's range
    raise :class:`NonRepresentableError` unless ``clamp`` is set.
    """
    values = grid.samples
    if grid.sample_kind.is_integral:
        values = np.rint(values)
    values = _check_representable(grid, values, clamp)
    dtype = grid.sample_kind.dtype.newbyteorder(_ENDIAN_PREFIX[grid.endianness])
    Path(path).write_bytes(values.astype(dtype).tobytes())


_NHDR_MAGIC = re.compile(r"^NRRD\d{4}$")
_VECTOR = re.compile(r"\(([^)]*)\)")


def _parse_header(text: str) -> dict[str, tuple[str, str]]:
    lines = text.splitlines()
    if not lines or not _NHDR_MAGIC.match(lines[0].strip()):
        raise VolumeFormatError("missing NRRD magic line")
    fields = {}
    for line in lines[1:]:
        stripped = line.strip()
        if not stripped:
            break
        if stripped.startswith("#"):
            continue
        if ":=" in stripped:
            continue  # key/value pairs carry no layout information
        key, sep, value = stripped.partition(":")
        if not sep:
            raise VolumeFormatError(f"malformed header line {line!r}")
        fields[" ".join(key.lower().split())] = (value.strip(), line)
    return fields


def _spacing_from_header(fields) -> tuple[float, float, float]:
    if "spacings" in fields:
        value, line = fields["spacings"]
        parts = value.split()
        try:
            spacing = tuple(float(p) for p in parts)
        except ValueError:
            raise UnsupportedFieldError(f"unsupported field: {line!r}") from None
        if len(spacing) != 3 or not all(np.isfinite(spacing)):
            raise UnsupportedFieldError(f"unsupported field: {line!r}")
        return spacing
    if "space directions" in fields:
        value, line = fields["space directions"]
        vectors = _VECTOR.findall(value)
        if len(vectors) != 3:
            raise UnsupportedFieldError(f"unsupported field: {line!r}")
        spacing = []
        for vec in vectors:
            comps = [float(c) for c in vec.split(",")]
            spacing.append(float(np.linalg.norm(comps)))
        return tuple(spacing)
    return (1.0, 1.0, 1.0)


def load_nhdr(path) -> VolumeGrid:
    """Read a volume described by a detached NRRD header.

    Only ``raw`` encoding, three dimensions, and the four :class:`SampleKind`
    types are accepted. The data file is resolved relative to the header.
    """
    path = Path(path)
    fields = _parse_header(path.read_text(encoding="latin-1"))

    def require(key):
        if key not in fields:
            raise VolumeFormatError(f"{path}: header lacks required field {key!r}")
        return fields[key]

    value, line = require("type")
    try:
        kind = SampleKind.parse(value)
    except ValueError:
        raise UnsupportedFieldError(f"unsupported field: {line!r}") from None

    if "dimension" in fields:
        value, line = fields["dimension"]
        if value != "3":
            raise UnsupportedFieldError(f"unsupported field: {line!r}")

    value, line = require("sizes")
    try:
        dims = tuple(int(s) for s in value.split())
    except ValueError:
        raise UnsupportedFieldError(f"unsupported field: {line!r}") from None
    if len(dims) != 3:
        raise UnsupportedFieldError(f"unsupported field: {line!r}")

    value, line = require("encoding")
    if value.lower() != "raw":
        raise UnsupportedFieldError(f"unsupported field: {line!r}")

    for key in ("byte skip", "line skip"):
        if key in fields and fields[key][0] != "0":
            raise UnsupportedFieldError(f"unsupported field: {fields[key][1]!r}")

    endianness = "little"
    if "endian" in fields:
        value, line = fields["endian"]
        if value.lower() not in _ENDIAN_PREFIX:
            raise UnsupportedFieldError(f"unsupported field: {line!r}")
        endianness = value.lower()

    if "datafile" in fields and "data file" not in fields:
        fields["data file"] = fields["datafile"]
    value, line = require("data file")
    if value.upper().startswith("LIST") or len(value.split()) > 1:
        raise UnsupportedFieldError(f"unsupported field: {line!r}")
    data_path = Path(value)
    if not data_path.is_absolute():
        data_path = path.parent / data_path

    grid = load_raw(data_path, dims, kind, endianness, _spacing_from_header(fields))
    return VolumeGrid(grid.dims, grid.samples, grid.sample_kind, grid.spacing,
                      grid.endianness, name=path.stem)


_RAW_NAME = re.compile(r"^(?P<name>.+?)_(?P<nx>\d+)x(?P<ny>\d+)x(?P<nz>\d+)_(?P<kind>[a-z0-9]+)$")


def load_volume(path, dims=None, sample_kind=None, endianness: str = "little") -> VolumeGrid:
    """Load ``.nhdr`` headers or RAW files.

    RAW files need ``dims`` and ``sample_kind`` unless the file name follows
    the ``name_NXxNYxNZ_type.raw`` convention of the open scivis collection.
    """
    path = Path(path)
    if path.suffix.lower() == ".nhdr":
        return load_nhdr(path)
    if dims is None or sample_kind is None:
        m = _RAW_NAME.match(path.stem)
        if m is None:
            raise ValueError(f"{path}: RAW input requires dims and sample type")
        dims = dims or (int(m["nx"]), int(m["ny"]), int(m["nz"]))
        sample_kind = sample_kind or m["kind"]
    return load_raw(path, dims, sample_kind, endianness)


def volume_name(path) -> str:
    stem = Path(os.fspath(path)).stem
    m = _RAW_NAME.match(stem)
    return m["name"] if m else stem


def store_nhdr(grid: VolumeGrid, path, clamp: bool = False) -> Path:
    """Write a detached header at ``path`` plus a ``.raw`` file beside it.

    Returns the path of the data file.
    """
    path = Path(path)
    raw_path = path.with_suffix(".raw")
    store_raw(grid, raw_path, clamp=clamp)
    sx, sy, sz = grid.spacing
    header = [
        "NRRD0004",
        f"type: {grid.sample_kind.value}",
        "dimension: 3",
        "sizes: {} {} {}".format(*grid.dims),
        f"spacings: {sx!r} {sy!r} {sz!r}",
        "encoding: raw",
    ]
    if grid.sample_kind.itemsize > 1:
        header.append(f"endian: {grid.endianness}")
    header.append(f"data file: {raw_path.name}")
    path.write_text("\n".join(header) + "\n", encoding="ascii")
    return raw_path

"""Durable shard files: split a file into k+2 column shards, lose any two,
reconstruct byte-identically.

Each shard holds one array column across all stripes, preceded by a fixed
48-byte header (all integers little-endian):

    magic           8 bytes   b"EOFLEX01"
    version         u16
    tau, p, k       u32 each
    column_index    u16
    lane_width      u32
    stripe_count    u64
    original_length u64
    header_crc      u32       CRC-32 (IEEE) of all prior header bytes

A stripe is k*tau*(p-1)*lane_width bytes of source data laid out row-major
over the information cells; the final stripe is zero padded and the true
length recorded in the header.  Shards are self-describing: reconstruction
needs nothing but the shard directory.
"""

from __future__ import annotations

import os
import struct
import zlib
from dataclasses import dataclass
from pathlib import Path

from .codearray import CodeArray, ErasurePattern
from .codec import encode
from .decoder import decode
from .errors import CrcFailure, HeaderMismatch, TooManyMissing
from .params import CodeParams, validate_params

MAGIC = b"EOFLEX01"
VERSION = 1
_HEADER = struct.Struct("<8sHIIIHIQQ")
HEADER_SIZE = _HEADER.size + 4  # + crc32

DEFAULT_SHARD_LANE_WIDTH = 4096


@dataclass(frozen=True)
class ShardHeader:
    version: int
    tau: int
    p: int
    k: int
    column_index: int
    lane_width: int
    stripe_count: int
    original_length: int

    def pack(self) -> bytes:
        body = _HEADER.pack(
            MAGIC,
            self.version,
            self.tau,
            self.p,
            self.k,
            self.column_index,
            self.lane_width,
            self.stripe_count,
            self.original_length,
        )
        return body + struct.pack("<I", zlib.crc32(body))

    @classmethod
    def unpack(cls, raw: bytes) -> "ShardHeader":
        if len(raw) < HEADER_SIZE:
            raise CrcFailure("shard too short for header")
        body, (crc,) = raw[: _HEADER.size], struct.unpack("<I", raw[_HEADER.size : HEADER_SIZE])
        if zlib.crc32(body) != crc:
            raise CrcFailure("header CRC mismatch")
        magic, version, tau, p, k, column, lane_width, stripes, length = _HEADER.unpack(body)
        if magic != MAGIC:
            raise CrcFailure(f"bad magic {magic!r}")
        return cls(version, tau, p, k, column, lane_width, stripes, length)

    def payload_length(self, params: CodeParams) -> int:
        return self.stripe_count * params.rows * self.lane_width


def shard_path(directory: str | os.PathLike, column: int) -> Path:
    return Path(directory) / f"shard_{column}.eof"


def _stripe_to_array(params: CodeParams, lane_width: int, data: bytes) -> CodeArray:
    arr = CodeArray(params, lane_width)
    off = 0
    for i in range(params.rows):
        for j in range(params.k):
            arr.set(i, j, data[off : off + lane_width])
            off += lane_width
    return arr


def shard_file(
    input_path: str | os.PathLike,
    params: CodeParams,
    output_dir: str | os.PathLike,
    lane_width: int = DEFAULT_SHARD_LANE_WIDTH,
) -> list[Path]:
    """Encode a file into k+2 shard files named shard_<col>.eof."""
    data = Path(input_path).read_bytes()
    stripe_bytes = params.k * params.rows * lane_width
    stripe_count = (len(data) + stripe_bytes - 1) // stripe_bytes
    header_base = dict(
        version=VERSION,
        tau=params.tau,
        p=params.p,
        k=params.k,
        lane_width=lane_width,
        stripe_count=stripe_count,
        original_length=len(data),
    )
    outdir = Path(output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    columns = [bytearray() for _ in range(params.k + 2)]
    for s in range(stripe_count):
        chunk = data[s * stripe_bytes : (s + 1) * stripe_bytes]
        if len(chunk) < stripe_bytes:
            chunk = chunk + bytes(stripe_bytes - len(chunk))
        arr = _stripe_to_array(params, lane_width, chunk)
        encode(arr)
        for c in range(params.k + 2):
            for i in range(params.rows):
                columns[c] += arr.get(i, c)
    paths = []
    for c in range(params.k + 2):
        header = ShardHeader(column_index=c, **header_base)
        path = shard_path(outdir, c)
        path.write_bytes(header.pack() + bytes(columns[c]))
        paths.append(path)
    return paths


def _load_shards(directory: str | os.PathLike):
    """Read available shards; CRC-failing or malformed files count as
    missing (an erasure of that column)."""
    headers: dict[int, ShardHeader] = {}
    payloads: dict[int, bytes] = {}
    reference: ShardHeader | None = None
    for path in sorted(Path(directory).glob("shard_*.eof")):
        raw = path.read_bytes()
        try:
            header = ShardHeader.unpack(raw)
        except CrcFailure:
            continue
        key = (header.tau, header.p, header.k, header.lane_width,
               header.stripe_count, header.original_length, header.version)
        if reference is None:
            reference = header
        elif key != (reference.tau, reference.p, reference.k,
                     reference.lane_width, reference.stripe_count,
                     reference.original_length, reference.version):
            raise HeaderMismatch(f"{path} disagrees with other shards")
        headers[header.column_index] = header
        payloads[header.column_index] = raw[HEADER_SIZE:]
    if reference is None:
        raise TooManyMissing("no readable shards found")
    return reference, headers, payloads


def reconstruct(directory: str | os.PathLike, output_path: str | os.PathLike) -> int:
    """Rebuild the original file from the shards in `directory`.

    Missing or corrupt shards (up to two) are treated as column erasures.
    Returns the number of bytes written.
    """
    ref, headers, payloads = _load_shards(directory)
    params = validate_params(ref.tau, ref.p, ref.k)
    total_cols = params.k + 2
    missing = [c for c in range(total_cols) if c not in payloads]
    if len(missing) > 2:
        raise TooManyMissing(f"{len(missing)} shards missing, can recover at most 2")
    expected_payload = ref.stripe_count * params.rows * ref.lane_width
    for c, payload in payloads.items():
        if len(payload) != expected_payload:
            raise HeaderMismatch(
                f"shard {c} payload is {len(payload)} bytes, expected {expected_payload}"
            )

    lane_width = ref.lane_width
    out = bytearray()
    col_stride = params.rows * lane_width
    for s in range(ref.stripe_count):
        arr = CodeArray(params, lane_width)
        for c, payload in payloads.items():
            base = s * col_stride
            for i in range(params.rows):
                off = base + i * lane_width
                arr.set(i, c, payload[off : off + lane_width])
        if missing:
            decode(arr, ErasurePattern(frozenset(missing)))
        for i in range(params.rows):
            for j in range(params.k):
                out += arr.get(i, j)
    result = bytes(out[: ref.original_length])
    Path(output_path).write_bytes(result)
    return len(result)

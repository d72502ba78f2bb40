"""Single-file binary container used by graph and catalog snapshots.

Layout: 8-byte magic, little-endian u64 header length, UTF-8 JSON header,
then raw array/blob payloads at the offsets the header declares. Payloads
are padded to 16-byte boundaries. Writing is fully deterministic: the same
logical content always produces the same bytes, which the pipeline relies
on for reproducibility checks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import SnapshotFormatError

MAGIC = b"EQSNP001"
_ALIGN = 16


@dataclass
class Container:
    kind: str
    version: int
    meta: dict
    arrays: dict[str, np.ndarray]
    blobs: dict[str, bytes]


def _pad(offset: int) -> int:
    return (offset + _ALIGN - 1) // _ALIGN * _ALIGN


def save_container(
    path: str | Path,
    kind: str,
    version: int,
    meta: dict,
    arrays: dict[str, np.ndarray],
    blobs: dict[str, bytes] | None = None,
) -> None:
    blobs = blobs or {}
    payloads: list[tuple[str, str, bytes, tuple[int, ...], str]] = []
    for name in sorted(arrays):
        arr = np.ascontiguousarray(arrays[name])
        if arr.dtype.byteorder == ">":
            arr = arr.astype(arr.dtype.newbyteorder("<"))
        payloads.append((name, "array", arr.tobytes(), arr.shape, arr.dtype.str))
    for name in sorted(blobs):
        payloads.append((name, "blob", blobs[name], (), ""))

    entries = []
    offset = 0
    for name, entry_kind, data, shape, dtype in payloads:
        offset = _pad(offset)
        entry = {"name": name, "kind": entry_kind, "offset": offset, "nbytes": len(data)}
        if entry_kind == "array":
            entry["dtype"] = dtype
            entry["shape"] = list(shape)
        entries.append(entry)
        offset += len(data)

    header = {"kind": kind, "version": version, "meta": meta, "entries": entries}
    header_bytes = json.dumps(header, sort_keys=True, separators=(",", ":")).encode("utf-8")

    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(len(header_bytes).to_bytes(8, "little"))
        fh.write(header_bytes)
        base = fh.tell()
        for (name, entry_kind, data, shape, dtype), entry in zip(payloads, entries):
            fh.write(b"\x00" * (base + entry["offset"] - fh.tell()))
            fh.write(data)


def load_container(path: str | Path, expected_kind: str | None = None) -> Container:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise SnapshotFormatError(f"cannot read snapshot {path}: {exc}") from exc
    if len(raw) < len(MAGIC) + 8 or raw[: len(MAGIC)] != MAGIC:
        raise SnapshotFormatError(f"{path}: not a snapshot file (bad magic)")
    header_len = int.from_bytes(raw[len(MAGIC) : len(MAGIC) + 8], "little")
    header_start = len(MAGIC) + 8
    if header_start + header_len > len(raw):
        raise SnapshotFormatError(f"{path}: truncated header")
    try:
        header = json.loads(raw[header_start : header_start + header_len])
    except ValueError as exc:
        raise SnapshotFormatError(f"{path}: corrupt header: {exc}") from exc

    kind = header.get("kind")
    if expected_kind is not None and kind != expected_kind:
        raise SnapshotFormatError(f"{path}: snapshot kind {kind!r}, expected {expected_kind!r}")

    base = header_start + header_len
    arrays: dict[str, np.ndarray] = {}
    blobs: dict[str, bytes] = {}
    for entry in header.get("entries", []):
        start = base + entry["offset"]
        end = start + entry["nbytes"]
        if end > len(raw):
            raise SnapshotFormatError(f"{path}: truncated payload for {entry['name']!r}")
        chunk = raw[start:end]
        if entry["kind"] == "array":
            arr = np.frombuffer(chunk, dtype=np.dtype(entry["dtype"]))
            arrays[entry["name"]] = arr.reshape(entry["shape"]).copy()
        else:
            blobs[entry["name"]] = chunk
    return Container(
        kind=kind,
        version=header.get("version"),
        meta=header.get("meta", {}),
        arrays=arrays,
        blobs=blobs,
    )

#!/usr/bin/env python3
"""Regenerates the small file-backend fixtures in this directory.

before.png / after.png  56x56 RGB, a red square present only in before
gt.png                  56x56 mask of the square
before.fmap / after.fmap 14x14x8 feature fields (upscale factor 4)
manifest.jsonl          one record pointing at the files above
"""
import json
import struct
import zlib
from pathlib import Path

HERE = Path(__file__).resolve().parent
SIZE, CELL, DEPTH = 56, 4, 8
SQUARE = (20, 36)  # [lo, hi) in both axes


def png(path, rows, channels):
    color_type = {1: 0, 3: 2}[channels]
    raw = b"".join(b"\x00" + bytes(r) for r in rows)
    def chunk(tag, data):
        body = tag + data
        return struct.pack(">I", len(data)) + body + struct.pack(">I", zlib.crc32(body))
    header = struct.pack(">IIBBBBB", len(rows[0]) // channels, len(rows), 8, color_type, 0, 0, 0)
    path.write_bytes(b"\x89PNG\r\n\x1a\n" + chunk(b"IHDR", header) + chunk(b"IDAT", zlib.compress(raw)) +
                     chunk(b"IEND", b""))


def inside(y, x):
    return SQUARE[0] <= y < SQUARE[1] and SQUARE[0] <= x < SQUARE[1]


def background(y, x):
    return (90 + (x * 3) % 40, 110 + (y * 5) % 30, 130)


def image(with_square):
    rows = []
    for y in range(SIZE):
        row = []
        for x in range(SIZE):
            row.extend((220, 30, 30) if with_square and inside(y, x) else background(y, x))
        rows.append(row)
    return rows


def field(with_square):
    n = SIZE // CELL
    values = []
    for y in range(n):
        for x in range(n):
            cy, cx = y * CELL + CELL // 2, x * CELL + CELL // 2
            hot = with_square and inside(cy, cx)
            for d in range(DEPTH):
                base = 0.1 * ((x + 2 * y + d) % 5)
                values.append(base + (3.0 if hot and d % 2 == 0 else 0.0))
    return struct.pack("<4s4I", b"FMAP", 1, n, n, DEPTH) + struct.pack(f"<{len(values)}f", *values)


def main():
    png(HERE / "before.png", image(True), 3)
    png(HERE / "after.png", image(False), 3)
    png(HERE / "gt.png", [[255 if inside(y, x) else 0 for x in range(SIZE)] for y in range(SIZE)], 1)
    (HERE / "before.fmap").write_bytes(field(True))
    (HERE / "after.fmap").write_bytes(field(False))
    record = {"id": "square", "before": "before.png", "after": "after.png", "gt": "gt.png",
              "features_before": "before.fmap", "features_after": "after.fmap"}
    (HERE / "manifest.jsonl").write_text(json.dumps(record) + "\n")


if __name__ == "__main__":
    main()

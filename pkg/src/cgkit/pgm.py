"""Portable graymap (PGM) reading and writing, plain ``P2`` and binary ``P5``.

Only 8-bit images are handled. Intensities in ``[0, 1]`` map to samples by
``floor(v * 255 + 0.5)``; reading divides by ``maxval``.
"""

import os
import tempfile

import numpy as np

from .problems.imaging import ImageGray

MAXVAL = 255


class PgmError(ValueError):
    pass


def _quantize(img):
    samples = np.floor(np.clip(img.pixels, 0.0, 1.0) * MAXVAL + 0.5)
    return samples.astype(np.uint8)


def encode(img, magic="P5"):
    if magic not in ("P2", "P5"):
        raise ValueError("magic must be 'P2' or 'P5'")
    samples = _quantize(img)
    header = f"{magic}\n{img.width} {img.height}\n{MAXVAL}\n".encode("ascii")
    if magic == "P5":
        return header + samples.tobytes()
    rows = samples.reshape(img.height, img.width)
    body = "".join(" ".join(str(int(v)) for v in row) + "\n" for row in rows)
    return header + body.encode("ascii")


def _header_tokens(data, count, pos):
    """Read ``count`` whitespace-separated header tokens starting at ``pos``,
    skipping ``#`` comments. Returns the tokens and the offset just past the
    last one."""
    tokens = []
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos:pos + 1].isspace():
            pos += 1
        if pos >= n:
            raise PgmError("truncated header")
        if data[pos:pos + 1] == b"#":
            end = data.find(b"\n", pos)
            pos = n if end < 0 else end + 1
            continue
        start = pos
        while pos < n and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
            pos += 1
        tokens.append(data[start:pos])
    return tokens, pos


def decode(data):
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise PgmError(f"not a P2/P5 graymap (magic {magic!r})")
    tokens, pos = _header_tokens(data, 3, 2)
    try:
        width, height, maxval = (int(t) for t in tokens)
    except ValueError:
        raise PgmError("non-integer header field") from None
    if width < 1 or height < 1:
        raise PgmError("width and height must be positive")
    if not 1 <= maxval <= MAXVAL:
        raise PgmError(f"unsupported maxval {maxval}")
    size = width * height
    if magic == b"P5":
        if pos >= len(data) or not data[pos:pos + 1].isspace():
            raise PgmError("missing whitespace after maxval")
        raw = data[pos + 1:pos + 1 + size]
        if len(raw) != size:
            raise PgmError(f"expected {size} bytes of pixel data, got {len(raw)}")
        samples = np.frombuffer(raw, dtype=np.uint8).astype(np.float64)
    else:
        body = data[pos:]
        # comments are not expected in the raster, but tolerate them
        lines = [ln.split(b"#", 1)[0] for ln in body.split(b"\n")]
        fields = b" ".join(lines).split()
        if len(fields) != size:
            raise PgmError(f"expected {size} samples, got {len(fields)}")
        try:
            samples = np.array([int(v) for v in fields], dtype=np.float64)
        except ValueError:
            raise PgmError("non-integer sample") from None
    if samples.max(initial=0) > maxval:
        raise PgmError("sample exceeds maxval")
    return ImageGray(width, height, samples / maxval)


def read_pgm(path):
    with open(path, "rb") as fh:
        return decode(fh.read())


def write_pgm(img, path, magic="P5"):
    """Write ``img`` to ``path`` through a temporary file and an atomic rename."""
    data = encode(img, magic)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".pgm")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise

"""graph6 codec

Header byte 63+n (or 126 followed by three 6-bit bytes for n >= 63), then the
upper triangle (0,1), (0,2), (1,2), (0,3), ... packed big-endian six bits per
byte, each byte offset by 63 and unused trailing bits zero.
"""

from typing import Union

from core.errors import Graph6Error
from core.graph import MAX_ORDER, Graph

HEADER = ">>graph6<<"
_OFFSET = 63
_LONG_FORM = 126


def _encode_order(n: int) -> str:
    if n < 63:
        return chr(_OFFSET + n)
    return chr(_LONG_FORM) + "".join(chr(_OFFSET + (n >> shift & 63)) for shift in (12, 6, 0))


def _decode_order(data: bytes, base: int) -> tuple[int, int]:
    "Returns (n, number of header bytes consumed); error offsets are shifted by base"

    if not data:
        raise Graph6Error("Empty record", base)

    first = data[0]
    if first == ord(":"):
        raise Graph6Error("sparse6 records are not supported", base)
    if first == ord("&"):
        raise Graph6Error("digraph6 records are not supported", base)
    if not _OFFSET <= first <= _LONG_FORM:
        raise Graph6Error(f"Invalid header byte {first!r}", base)
    if first < _LONG_FORM:
        return first - _OFFSET, 1

    if len(data) >= 2 and data[1] == _LONG_FORM:
        raise Graph6Error(f"Order exceeds {MAX_ORDER}", base + 1)
    if len(data) < 4:
        raise Graph6Error("Truncated long-form header", base + len(data))

    n = 0
    for offset in range(1, 4):
        byte = data[offset]
        if not _OFFSET <= byte <= _LONG_FORM:
            raise Graph6Error(f"Invalid header byte {byte!r}", base + offset)
        n = n << 6 | (byte - _OFFSET)
    return n, 4


def parse_graph6(text: Union[str, bytes]) -> Graph:
    if isinstance(text, str):
        try:
            data = text.encode("ascii")
        except UnicodeEncodeError as e:
            raise Graph6Error("Record is not ASCII", e.start) from e
    else:
        data = bytes(text)

    data = data.rstrip(b"\r\n")
    skipped = 0
    if data.startswith(HEADER.encode()):
        skipped = len(HEADER)
        data = data[skipped:]

    n, start = _decode_order(data, skipped)

    if n > MAX_ORDER:
        raise Graph6Error(f"Order {n} exceeds {MAX_ORDER}", skipped)

    pairs = n * (n - 1) // 2
    expected = -(-pairs // 6)
    body = data[start:]
    if len(body) != expected:
        raise Graph6Error(
            f"Expected {expected} data bytes for n={n}, got {len(body)}",
            skipped + start + min(len(body), expected),
        )

    chunks = []
    for position, byte in enumerate(body):
        if not _OFFSET <= byte <= _LONG_FORM:
            raise Graph6Error(f"Invalid data byte {byte!r}", skipped + start + position)
        chunks.append(byte - _OFFSET)

    padding = 6 * expected - pairs
    if chunks and chunks[-1] & ((1 << padding) - 1):
        raise Graph6Error("Padding bits must be zero", skipped + start + expected - 1)

    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if chunks[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1

    return Graph(n, tuple(rows))


def to_graph6(g: Graph) -> str:
    out = [_encode_order(g.n)]

    chunk = 0
    filled = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            chunk = chunk << 1 | (row >> i & 1)
            filled += 1
            if filled == 6:
                out.append(chr(_OFFSET + chunk))
                chunk = filled = 0

    if filled:
        out.append(chr(_OFFSET + (chunk << (6 - filled))))
    return "".join(out)

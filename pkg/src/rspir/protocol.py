"""Seeded simulation of one retrieval: two database actors and a user.

There are no queries in this protocol. Each database independently draws
one answer index uniformly from its set and streams that answer's symbols
for every block; the index itself is sent once, before the blocks. Both
databases read the per-block shared randomness from the same pre-shared
seeded stream (that shared seed is the trust assumption of the model), and
the index draws use streams of their own, so message content, randomness,
and index selection cannot contaminate each other.
"""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from typing import Sequence

from .decode import DecodeTable, decode, derive_decode_table
from .linalg import mat_vec
from .scheme import Scheme, answer_index_bits
from .schemeio import serialize_scheme


@dataclass(frozen=True)
class Transcript:
    """Everything both wires carried during one protocol run."""

    scheme_id: str
    blocks: int
    a: int
    b: int
    db1_symbols: tuple[tuple[int, ...], ...]
    db2_symbols: tuple[tuple[int, ...], ...]
    theta: int
    decoded: tuple[int, ...]
    download_symbols: int
    download_index_bits: int

    def to_text(self) -> str:
        lines = [
            f"scheme {self.scheme_id}",
            f"blocks {self.blocks}",
            f"indices {self.a} {self.b}",
        ]
        for i in range(self.blocks):
            lines.append(f"block {i + 1} db1 " + " ".join(map(str, self.db1_symbols[i])))
            lines.append(f"block {i + 1} db2 " + " ".join(map(str, self.db2_symbols[i])))
        lines.append(f"decoded-index {self.theta}")
        lines.append("decoded " + " ".join(map(str, self.decoded)))
        lines.append(f"download symbols {self.download_symbols} index-bits {self.download_index_bits}")
        return "\n".join(lines) + "\n"


def scheme_id(s: Scheme) -> str:
    return hashlib.sha256(serialize_scheme(s).encode()).hexdigest()[:12]


def _stream(seed: int | str, label: str) -> random.Random:
    return random.Random(f"{seed}/{label}")


def shared_randomness(s: Scheme, seed: int | str, blocks: int) -> list[tuple[int, ...]]:
    """Per-block shared randomness symbols, as both databases would derive them."""
    rng = _stream(seed, "common-randomness")
    return [tuple(rng.randrange(s.field.q) for _ in range(s.R)) for _ in range(blocks)]


def draw_indices(s: Scheme, seed: int | str) -> tuple[int, int]:
    """Each database's independent uniform answer choice."""
    a = _stream(seed, "index-db1").randrange(s.M1) + 1
    b = _stream(seed, "index-db2").randrange(s.M2) + 1
    return a, b


def random_messages(s: Scheme, seed: int | str, blocks: int) -> list[list[int]]:
    """Uniform message content, for runs without a messages file."""
    rng = _stream(seed, "messages")
    return [[rng.randrange(s.field.q) for _ in range(s.L * blocks)] for _ in range(s.K)]


def run_protocol(
    s: Scheme,
    messages: Sequence[Sequence[int]],
    seed: int | str = 0,
    blocks: int = 1,
    table: DecodeTable | None = None,
) -> Transcript:
    """Simulate one full retrieval and return the recorded transcript.

    ``messages`` is K rows of L*blocks symbols. The answer pair is drawn
    once and reused for every block.
    """
    if blocks < 1:
        raise ValueError("blocks must be at least 1")
    if len(messages) != s.K or any(len(row) != s.L * blocks for row in messages):
        raise ValueError(f"messages must be {s.K} rows of {s.L * blocks} symbols")
    for row in messages:
        for v in row:
            s.field.check(v)
    if table is None:
        table = derive_decode_table(s)

    a, b = draw_indices(s, seed)
    randomness = shared_randomness(s, seed, blocks)
    map_a = s.answer(1, a).map
    map_b = s.answer(2, b).map

    db1_symbols = []
    db2_symbols = []
    decoded: list[int] = []
    theta = table.theta(a, b)
    for i in range(blocks):
        w = tuple(v for k in range(s.K) for v in messages[k][i * s.L : (i + 1) * s.L])
        x = w + randomness[i]
        out_a = mat_vec(s.field, map_a, x)
        out_b = mat_vec(s.field, map_b, x)
        db1_symbols.append(out_a)
        db2_symbols.append(out_b)
        t, w_decoded = decode(s, table, a, b, out_a + out_b)
        assert t == theta
        decoded.extend(w_decoded)

    return Transcript(
        scheme_id=scheme_id(s),
        blocks=blocks,
        a=a,
        b=b,
        db1_symbols=tuple(db1_symbols),
        db2_symbols=tuple(db2_symbols),
        theta=theta,
        decoded=tuple(decoded),
        download_symbols=sum(len(v) for v in db1_symbols) + sum(len(v) for v in db2_symbols),
        download_index_bits=answer_index_bits(s),
    )


def parse_messages(text: str, s: Scheme, blocks: int) -> list[list[int]]:
    """Messages file: one line per message, L*blocks space-separated symbols."""
    rows = []
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if len(lines) != s.K:
        raise ValueError(f"messages file has {len(lines)} rows, expected K={s.K}")
    for lineno, line in enumerate(lines, start=1):
        try:
            values = [int(p) for p in line.split()]
        except ValueError:
            raise ValueError(f"messages row {lineno}: symbols must be decimal integers") from None
        if len(values) != s.L * blocks:
            raise ValueError(
                f"messages row {lineno} has {len(values)} symbols, expected L*blocks={s.L * blocks}"
            )
        for v in values:
            if not 0 <= v < s.field.q:
                raise ValueError(f"messages row {lineno}: symbol {v} outside GF(2^{s.field.m})")
        rows.append(values)
    return rows


def format_messages(messages: Sequence[Sequence[int]]) -> str:
    return "\n".join(" ".join(map(str, row)) for row in messages) + "\n"

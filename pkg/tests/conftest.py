"""Shared test helpers: scheme mutation and an independent decoding oracle."""
from __future__ import annotations

import itertools
import random

from rspir import Scheme
from rspir.linalg import FieldMatrix
from rspir.scheme import LinearAnswer


def replace_answer(s: Scheme, db: int, index: int, rows: list[tuple[int, ...]]) -> Scheme:
    """Scheme with one answer's map swapped out."""
    answers = list(s.answers_db1 if db == 1 else s.answers_db2)
    answers[index - 1] = LinearAnswer(index, FieldMatrix.from_rows(rows))
    if db == 1:
        return Scheme(s.K, s.L, s.R, s.field, tuple(answers), s.answers_db2)
    return Scheme(s.K, s.L, s.R, s.field, s.answers_db1, tuple(answers))


def mutate_coefficient(s: Scheme, db: int, index: int, pos: int, value: int) -> Scheme:
    ans = s.answer(db, index)
    entries = list(ans.map.entries)
    entries[pos] = value
    rows = [tuple(entries[i * ans.map.cols : (i + 1) * ans.map.cols]) for i in range(ans.map.rows)]
    return replace_answer(s, db, index, rows)


def random_mutation(s: Scheme, rng: random.Random) -> Scheme:
    """One uniformly chosen single-coefficient change."""
    db = rng.choice((1, 2))
    answers = s.answers_db1 if db == 1 else s.answers_db2
    ai = rng.randrange(len(answers))
    ans = answers[ai]
    pos = rng.randrange(len(ans.map.entries))
    old = ans.map.entries[pos]
    new = rng.choice([v for v in range(s.field.q) if v != old])
    return mutate_coefficient(s, db, ai + 1, pos, new)


def all_single_mutations(s: Scheme):
    """Every single-coefficient change, with its location."""
    for db in (1, 2):
        answers = s.answers_db1 if db == 1 else s.answers_db2
        for ans in answers:
            for pos in range(len(ans.map.entries)):
                for value in range(s.field.q):
                    if value != ans.map.entries[pos]:
                        yield (db, ans.index, pos, value), mutate_coefficient(s, db, ans.index, pos, value)


def oracle_observation(s: Scheme, a: int, b: int, x: tuple[int, ...]) -> tuple[int, ...]:
    """Transmitted symbols computed longhand, independent of the linalg module."""
    field = s.field
    out = []
    for ans in (s.answer(1, a), s.answer(2, b)):
        for i in range(ans.map.rows):
            acc = 0
            for j in range(ans.map.cols):
                acc = field.add(acc, field.mul(ans.map.entry(i, j), x[j]))
            out.append(acc)
    return tuple(out)


def oracle_decodable(s: Scheme, a: int, b: int) -> dict[int, dict[tuple[int, ...], tuple[int, ...]]]:
    """Brute-force decodability: which messages are constant given the observation.

    Returns {k: {obs: value}} for exactly the fully determined messages.
    Buckets every realization of (W, S) by its observation and keeps message
    k only if its L symbols never vary within any bucket.
    """
    q = s.field.q
    buckets: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for x in itertools.product(range(q), repeat=s.n_cols):
        buckets.setdefault(oracle_observation(s, a, b, x), []).append(x)
    result: dict[int, dict[tuple[int, ...], tuple[int, ...]]] = {}
    for k in range(1, s.K + 1):
        lo = (k - 1) * s.L
        mapping = {}
        constant = True
        for obs, xs in buckets.items():
            values = {x[lo : lo + s.L] for x in xs}
            if len(values) != 1:
                constant = False
                break
            mapping[obs] = next(iter(values))
        if constant:
            result[k] = mapping
    return result

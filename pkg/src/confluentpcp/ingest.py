"""Delimited-text ingestion and synthetic dataset generation.

parse_table turns CSV bytes into a Dataset in one pass: rows are collected
column-wise, each column's kind is inferred from its values, numeric stats
fall out of the array build.  synthesize makes seeded datasets for the bench
harness, either pure-uniform or by resampling a base dataset with jitter.
"""

from __future__ import annotations

import csv
import hashlib
import io
from dataclasses import dataclass

import numpy as np

from .model import (
    Column,
    Dataset,
    EmptyFile,
    FileTooLarge,
    InvalidK,
    Kind,
    RaggedRow,
    TooManyCategories,
)

DEFAULT_MISSING_TOKENS = frozenset({"", "NA", "NaN", "null"})


@dataclass(frozen=True)
class IngestOptions:
    delimiter: str = ","
    has_header: bool = True
    missing_tokens: frozenset[str] = DEFAULT_MISSING_TOKENS
    max_categories: int = 64
    max_bytes: int | None = None

    def __post_init__(self):
        if len(self.delimiter) != 1 or self.delimiter == '"':
            raise ValueError(f"delimiter must be a single non-quote character, got {self.delimiter!r}")
        if self.max_categories < 1:
            raise ValueError("max_categories must be >= 1")


def _parse_number(token: str) -> float | None:
    """The finite float a token denotes, or None if it is not a plain number."""
    try:
        v = float(token)
    except ValueError:
        return None
    if not np.isfinite(v):
        return None
    # float() accepts "1_000"; CSV numbers should not
    if "_" in token:
        return None
    return v


def infer_kind(values, opts: IngestOptions = IngestOptions()) -> Kind:
    """Numeric iff every non-missing value parses as a finite number.

    Otherwise Categorical, provided the distinct non-missing values fit under
    opts.max_categories.  The decision only looks at set membership, so it is
    insensitive to row order.
    """
    missing = opts.missing_tokens
    if all(v in missing or _parse_number(v) is not None for v in values):
        return Kind.NUMERIC
    distinct: set[str] = set()
    for v in values:
        if v in missing:
            continue
        distinct.add(v)
        if len(distinct) > opts.max_categories:
            raise TooManyCategories(
                f"more than {opts.max_categories} distinct values in a non-numeric column"
            )
    return Kind.CATEGORICAL


def _build_column(name: str, raw: list[str], opts: IngestOptions) -> Column:
    missing = opts.missing_tokens
    try:
        kind = infer_kind(raw, opts)
    except TooManyCategories as e:
        raise TooManyCategories(f"column {name!r}: {e}") from None
    if kind is Kind.NUMERIC:
        vals = np.fromiter(
            (np.nan if v in missing else float(v) for v in raw),
            dtype=np.float64,
            count=len(raw),
        )
        return Column.numeric(name, vals)
    return Column.from_strings(name, [None if v in missing else v for v in raw])


def dataset_id_for(data: bytes) -> str:
    return "ds-" + hashlib.sha256(data).hexdigest()[:12]


def parse_table(data: bytes, opts: IngestOptions = IngestOptions(), name: str = "dataset") -> Dataset:
    """Parse delimited text (RFC-4180-style quoting) into a Dataset.

    The dataset id is a content hash, so re-uploading the same bytes yields
    the same id.
    """
    if opts.max_bytes is not None and len(data) > opts.max_bytes:
        raise FileTooLarge(f"input is {len(data)} bytes, limit {opts.max_bytes}")
    text = data.decode("utf-8-sig", errors="replace")
    reader = csv.reader(io.StringIO(text), delimiter=opts.delimiter)
    try:
        first = next(reader)
    except StopIteration:
        raise EmptyFile("no rows in input") from None
    if opts.has_header:
        header = [h.strip() for h in first]
        rows_iter = reader
    else:
        header = [f"c{i}" for i in range(len(first))]
        rows_iter = _chain_first(first, reader)
    ncols = len(header)
    cols: list[list[str]] = [[] for _ in range(ncols)]
    n = 0
    for row in rows_iter:
        if not row:
            continue  # blank line
        if len(row) != ncols:
            raise RaggedRow(f"line {reader.line_num}: {len(row)} fields, expected {ncols}")
        for c, v in zip(cols, row):
            c.append(v)
        n += 1
    if n == 0:
        raise EmptyFile("no data rows in input")
    columns = [_build_column(h, raw, opts) for h, raw in zip(header, cols)]
    return Dataset.build(dataset_id_for(data), name, columns)


def _chain_first(first, rest):
    yield first
    yield from rest


def parse_file(path: str, opts: IngestOptions = IngestOptions(), name: str | None = None) -> Dataset:
    with open(path, "rb") as f:
        data = f.read()
    return parse_table(data, opts, name=name if name is not None else path)


# ---------------------------------------------------------------------------
# synthesis

JITTER_FRACTION = 0.01  # uniform jitter, as a fraction of each column's range


def synthesize(d: int, n: int, seed: int, base: Dataset | None = None) -> Dataset:
    """Seeded synthetic dataset with d numeric columns and n rows.

    Without a base: d independent uniform [0, 1) columns.  With a base: rows
    are resampled with replacement from the base's first d numeric columns and
    jittered by up to 1% of each column's range, so synthetic ranges stay
    within 1% beyond the base's.  Same arguments, same bytes.
    """
    if d < 1 or n < 1:
        raise InvalidK(f"need d >= 1 and n >= 1, got d={d}, n={n}")
    rng = np.random.default_rng(seed)
    if base is None:
        names = [f"x{i}" for i in range(d)]
        data = rng.random((n, d))
        cols = [Column.numeric(names[i], data[:, i]) for i in range(d)]
        return Dataset.build(f"ds-synth-u{d}x{n}s{seed}", f"uniform-{d}x{n}", cols)
    numeric = base.numeric_columns()
    if len(numeric) < d:
        raise InvalidK(f"base dataset has {len(numeric)} numeric columns, need {d}")
    picks = rng.integers(0, base.row_count, size=n)
    cols = []
    for col in numeric[:d]:
        span = col.vmax - col.vmin
        jitter = rng.uniform(-JITTER_FRACTION * span, JITTER_FRACTION * span, size=n)
        cols.append(Column.numeric(col.name, col.values[picks] + jitter))
    return Dataset.build(
        f"ds-synth-{base.id}-{d}x{n}s{seed}", f"{base.name}-resampled-{d}x{n}", cols
    )

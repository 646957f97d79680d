"""Indexed codeword symbols with an erasure mask, and their JSON-lines form.

A shard file starts with a header line ``{"profile_hash": ..., "n": ...}``
followed by one line per coordinate::

    {"i": 0, "point": 1, "value": 7}
    {"i": 1, "point": 4, "value": null}     # erased

``point`` is the evaluation point for evaluation codes and ``null`` for
codes without one (pyramid codes).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field


@dataclass
class ShardSet:
    points: tuple
    values: list
    profile_hash: str | None = None
    meta: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self.points = tuple(self.points)
        self.values = list(self.values)
        if len(self.points) != len(self.values):
            raise ValueError("points and values differ in length")

    def __len__(self):
        return len(self.values)

    @property
    def entries(self) -> list[tuple[int, object, object]]:
        return [(i, p, v) for i, (p, v) in enumerate(zip(self.points, self.values))]

    @property
    def erased(self) -> list[int]:
        return [i for i, v in enumerate(self.values) if v is None]

    @property
    def available(self) -> list[int]:
        return [i for i, v in enumerate(self.values) if v is not None]

    def erase(self, indices) -> "ShardSet":
        vals = list(self.values)
        for i in indices:
            vals[i] = None
        return ShardSet(self.points, vals, self.profile_hash, dict(self.meta))

    def copy(self) -> "ShardSet":
        return ShardSet(self.points, list(self.values), self.profile_hash, dict(self.meta))

    def weight(self) -> int:
        return sum(1 for v in self.values if v)

    def to_jsonl(self) -> str:
        header = {"profile_hash": self.profile_hash, "n": len(self.values), **self.meta}
        lines = [json.dumps(header, sort_keys=True)]
        lines += [json.dumps({"i": i, "point": p, "value": v}) for i, p, v in self.entries]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_jsonl(cls, text: str) -> "ShardSet":
        rows = [json.loads(line) for line in text.splitlines() if line.strip()]
        if not rows or "profile_hash" not in rows[0]:
            raise ValueError("shard file lacks a header line")
        header, body = rows[0], rows[1:]
        n = header.get("n", len(body))
        idx = sorted(r["i"] for r in body)
        if idx != list(range(n)):
            raise ValueError(f"shard indices must be exactly 0..{n - 1}")
        body.sort(key=lambda r: r["i"])
        meta = {k: v for k, v in header.items() if k not in ("profile_hash", "n")}
        return cls([r.get("point") for r in body], [r["value"] for r in body],
                   header["profile_hash"], meta)

"""Structural assignment functions: logistic-linear, lookup table, constant.

A link maps a configuration of named parent variables to an event
probability (or, for categorical nodes, to a probability vector over
levels). Links are the only functional forms the engine supports: together
with exhaustive tables they are expressive enough for every shipped
scenario while keeping the enumeration oracle exact.

Parent values are read from an environment mapping qualified variable names
(``l0.age``, ``a``, ``l2.art``, ``z1_1`` ...) to numpy columns. Infant
survival columns use -1 for the structurally missing state; as a parent
they are interpreted as the indicator "infant born and currently alive",
i.e. missing maps to 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

MISSING = -1

TABLE_KEY_SEP = "|"


def _expit(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x, dtype=np.float64)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def parent_column(env: Mapping[str, np.ndarray], name: str) -> np.ndarray:
    """Resolve a parent column, mapping missing infant states to 0."""
    col = env[name]
    if name.startswith("y1_") or name == "y2":
        return (col == 1).astype(np.int8)
    return col


@dataclass(frozen=True)
class Constant:
    p: float

    def parent_names(self) -> tuple[str, ...]:
        return ()

    def evaluate(self, env: Mapping[str, np.ndarray], n: int) -> np.ndarray:
        return np.full(n, self.p, dtype=np.float64)

    def to_dict(self) -> dict:
        return {"type": "constant", "p": self.p}


@dataclass(frozen=True)
class Logistic:
    intercept: float
    coefficients: dict[str, float] = field(default_factory=dict)

    def parent_names(self) -> tuple[str, ...]:
        return tuple(self.coefficients)

    def evaluate(self, env: Mapping[str, np.ndarray], n: int) -> np.ndarray:
        eta = np.full(n, self.intercept, dtype=np.float64)
        for name, beta in self.coefficients.items():
            eta += beta * parent_column(env, name).astype(np.float64)
        return _expit(eta)

    def to_dict(self) -> dict:
        return {
            "type": "logistic",
            "intercept": self.intercept,
            "coefficients": dict(self.coefficients),
        }


@dataclass(frozen=True)
class Table:
    """Exhaustive lookup over discrete parent configurations.

    Keys are parent values joined with ``|`` in the order of ``parents``;
    values are probabilities (floats) for binary nodes or per-level
    probability lists for categorical nodes.
    """

    parents: tuple[str, ...]
    probs: dict[str, float | tuple[float, ...]]

    @staticmethod
    def key_for(values: tuple[int, ...]) -> str:
        return TABLE_KEY_SEP.join(str(int(v)) for v in values)

    def parent_names(self) -> tuple[str, ...]:
        return self.parents

    def evaluate(self, env: Mapping[str, np.ndarray], n: int) -> np.ndarray:
        if not self.parents:
            return np.full(n, float(self.probs[""]), dtype=np.float64)
        cols = [parent_column(env, p) for p in self.parents]
        out = np.empty(n, dtype=np.float64)
        codes = _combine_codes(cols)
        for code in np.unique(codes):
            mask = codes == code
            first = int(np.flatnonzero(mask)[0])
            key = self.key_for(tuple(int(c[first]) for c in cols))
            if key not in self.probs:
                raise KeyError(f"table has no entry for parent configuration {key!r}")
            out[mask] = float(self.probs[key])
        return out

    def evaluate_levels(self, env: Mapping[str, np.ndarray], n: int, levels: int) -> np.ndarray:
        """Probability matrix (n, levels) for a categorical node."""
        out = np.empty((n, levels), dtype=np.float64)
        if not self.parents:
            out[:] = np.asarray(self.probs[""], dtype=np.float64)
            return out
        cols = [parent_column(env, p) for p in self.parents]
        codes = _combine_codes(cols)
        for code in np.unique(codes):
            mask = codes == code
            first = int(np.flatnonzero(mask)[0])
            key = self.key_for(tuple(int(c[first]) for c in cols))
            if key not in self.probs:
                raise KeyError(f"table has no entry for parent configuration {key!r}")
            out[mask] = np.asarray(self.probs[key], dtype=np.float64)
        return out

    def prob_at(self, values: tuple[int, ...]) -> float | tuple[float, ...]:
        return self.probs[self.key_for(values)]

    def to_dict(self) -> dict:
        probs = {
            k: (list(v) if isinstance(v, (list, tuple)) else v) for k, v in self.probs.items()
        }
        return {"type": "table", "parents": list(self.parents), "probs": probs}


Link = Constant | Logistic | Table


def _combine_codes(cols: list[np.ndarray]) -> np.ndarray:
    """Mixed-radix code over integer columns (values assumed small)."""
    code = np.zeros(len(cols[0]), dtype=np.int64)
    for c in cols:
        ci = c.astype(np.int64)
        radix = int(ci.max(initial=0)) + 1
        code = code * max(radix, 1) + ci
    return code


def link_from_dict(d: dict) -> Link:
    kind = d.get("type")
    if kind == "constant":
        return Constant(p=float(d["p"]))
    if kind == "logistic":
        return Logistic(
            intercept=float(d.get("intercept", 0.0)),
            coefficients={k: float(v) for k, v in d.get("coefficients", {}).items()},
        )
    if kind == "table":
        probs: dict[str, float | tuple[float, ...]] = {}
        for k, v in d["probs"].items():
            probs[k] = tuple(float(x) for x in v) if isinstance(v, (list, tuple)) else float(v)
        return Table(parents=tuple(d.get("parents", [])), probs=probs)
    raise ValueError(f"unknown link type {kind!r}")

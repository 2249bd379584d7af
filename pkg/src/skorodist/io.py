"""JSON schemas for paths, ordered point sets, and squeeze configs.

Path files::

    {"space": "R" | "R^<d>",
     "domain": {"intervals": [[a, b], ...], "points": [t, ...]},
     "initial": v0,
     "jumps": [{"t": 1.0, "left": 0.0, "right": 1.0}, ...],
     "continuous": false}

Interval bounds accept "-inf" / "+inf".  Ordered-set files::

    {"points": [...], "order_pairs": [[i, j], ...], "total": bool}

``order_pairs`` may omit reflexive pairs; the closure is taken on load.
"""

from __future__ import annotations

import json
import math
from pathlib import Path as FilePath

from .ordered import OrderedPointSet
from .paths import Domain, Jump, Path
from .space import SqueezeConfig, as_value, value_dim


def _bound(v) -> float:
    if isinstance(v, str):
        s = v.strip().lower()
        if s in ("-inf", "-infinity"):
            return -math.inf
        if s in ("inf", "+inf", "infinity", "+infinity"):
            return math.inf
        raise ValueError(f"bad interval bound {v!r}")
    return float(v)


def _value(v, dim: int | None):
    val = as_value(v)
    if dim is not None and value_dim(val) != dim:
        raise ValueError(f"value {v!r} does not match the declared space dimension")
    return val


def _space_dim(tag: str) -> int:
    if tag == "R":
        return 1
    if tag.startswith("R^"):
        d = int(tag[2:])
        if d < 1:
            raise ValueError(f"bad space tag {tag!r}")
        return d
    raise ValueError(f"unknown space {tag!r}; expected 'R' or 'R^<d>'")


def path_from_json(obj: dict) -> Path:
    if not isinstance(obj, dict):
        raise ValueError("path file must contain a JSON object")
    tag = obj.get("space", "R")
    dim = _space_dim(tag)
    dom_obj = obj.get("domain", {})
    intervals = [(_bound(a), _bound(b)) for a, b in dom_obj.get("intervals", [])]
    points = [float(t) for t in dom_obj.get("points", [])]
    dom = Domain.of(intervals, points)
    if dom.is_empty:
        return Path(dom, None)
    if "initial" not in obj:
        raise ValueError("a nonempty path needs an 'initial' value")
    dim_arg = None if dim == 1 else dim
    initial = _value(obj["initial"], dim_arg)
    jumps = [Jump(float(j["t"]), _value(j["left"], dim_arg), _value(j["right"], dim_arg))
             for j in obj.get("jumps", [])]
    return Path(dom, initial, jumps, continuous=bool(obj.get("continuous", False)))


def _value_out(v):
    return list(v) if isinstance(v, tuple) else v


def path_to_json(path: Path) -> dict:
    if path.is_trivial:
        return {"space": "R", "domain": {"intervals": [], "points": []}}
    dim = path.dim()
    intervals = []
    points = []
    for a, b in path.domain.pieces:
        if a == b:
            points.append(a)
        else:
            intervals.append(["-inf" if math.isinf(a) and a < 0 else a,
                              "+inf" if math.isinf(b) and b > 0 else b])
    out = {
        "space": "R" if dim == 1 else f"R^{dim}",
        "domain": {"intervals": intervals, "points": points},
        "initial": _value_out(path.initial),
        "jumps": [{"t": j.t, "left": _value_out(j.left), "right": _value_out(j.right)}
                  for j in path.jumps],
    }
    if path.continuous:
        out["continuous"] = True
    return out


def load_path(file: str | FilePath) -> Path:
    with open(file, "r", encoding="utf-8") as fh:
        return path_from_json(json.load(fh))


def save_path(path: Path, file: str | FilePath) -> None:
    with open(file, "w", encoding="utf-8") as fh:
        json.dump(path_to_json(path), fh, indent=1)


def ordered_set_from_json(obj: dict) -> OrderedPointSet:
    if not isinstance(obj, dict) or "points" not in obj:
        raise ValueError("ordered-set file needs a 'points' array")
    points = [as_value(p) for p in obj["points"]]
    pairs = [(int(i), int(j)) for i, j in obj.get("order_pairs", [])]
    k = OrderedPointSet(points, pairs)
    want_total = obj.get("total")
    if want_total is not None and bool(want_total) != k.total:
        raise ValueError(f"order totality flag says {want_total} but the closure "
                         f"is {'total' if k.total else 'partial'}")
    return k


def ordered_set_to_json(k: OrderedPointSet) -> dict:
    import numpy as np
    pairs = [[int(i), int(j)] for i, j in np.argwhere(k.leq) if i != j]
    return {"points": [_value_out(p) for p in k.points],
            "order_pairs": pairs,
            "total": k.total}


def load_ordered_set(file: str | FilePath) -> OrderedPointSet:
    with open(file, "r", encoding="utf-8") as fh:
        return ordered_set_from_json(json.load(fh))


def save_ordered_set(k: OrderedPointSet, file: str | FilePath) -> None:
    with open(file, "w", encoding="utf-8") as fh:
        json.dump(ordered_set_to_json(k), fh, indent=1)


def load_squeeze_config(file: str | FilePath | None) -> SqueezeConfig:
    if file is None:
        return SqueezeConfig()
    with open(file, "r", encoding="utf-8") as fh:
        return SqueezeConfig.from_json(json.load(fh))

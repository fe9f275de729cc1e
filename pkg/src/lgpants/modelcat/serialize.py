"""JSON wire formats for star-sum representations and automorphism pairs.

Rep file::

    {"n": 4, "dimV": 2, "outer": [{"dim": 1, "map": [["1"], ["0"]]}, ...]}

AutPair file::

    {"dim": 1, "m": [["2"]]}

Rationals are strings ``"p/q"`` or ``"p"``; plain JSON integers are also
accepted on input.
"""

from typing import Any, Dict, Union

from ..exactlin import RatMatrix, to_rational
from .reps import AutPair, StarSumRep


class SchemaError(ValueError):
    """Input does not follow the file schema; ``path`` locates the offending value."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _int(obj: Dict, key: str, path: str) -> int:
    if key not in obj:
        raise SchemaError(path, f"missing key {key!r}")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise SchemaError(f"{path}.{key}", f"expected a non-negative integer, got {v!r}")
    return v


def parse_matrix(data: Any, rows: int, cols: int, path: str) -> RatMatrix:
    if not isinstance(data, list) or len(data) != rows:
        raise SchemaError(path, f"expected a list of {rows} rows")
    out = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise SchemaError(f"{path}[{i}]", f"expected a row of {cols} entries")
        parsed = []
        for j, x in enumerate(row):
            try:
                parsed.append(to_rational(x))
            except (TypeError, ValueError) as exc:
                raise SchemaError(f"{path}[{i}][{j}]", str(exc)) from None
        out.append(parsed)
    return RatMatrix(out, cols=cols)


def rep_from_json(obj: Any) -> StarSumRep:
    if not isinstance(obj, dict):
        raise SchemaError("$", "expected an object")
    n = _int(obj, "n", "$")
    dim_v = _int(obj, "dimV", "$")
    outer = obj.get("outer")
    if not isinstance(outer, list) or len(outer) != n:
        raise SchemaError("$.outer", f"expected a list of {n} outer spaces")
    maps = []
    for a, entry in enumerate(outer):
        path = f"$.outer[{a}]"
        if not isinstance(entry, dict):
            raise SchemaError(path, "expected an object")
        d = _int(entry, "dim", path)
        maps.append(parse_matrix(entry.get("map"), dim_v, d, path + ".map"))
    try:
        return StarSumRep(dim_v, tuple(maps))
    except ValueError as exc:
        raise SchemaError("$", str(exc)) from None


def rep_to_json(rep: StarSumRep) -> Dict[str, Any]:
    return {
        "n": rep.n,
        "dimV": rep.dim_v,
        "outer": [{"dim": j.cols, "map": j.to_strings()} for j in rep.maps],
    }


def autpair_from_json(obj: Any) -> AutPair:
    if not isinstance(obj, dict):
        raise SchemaError("$", "expected an object")
    d = _int(obj, "dim", "$")
    return AutPair(d, parse_matrix(obj.get("m"), d, d, "$.m"))


def autpair_to_json(pair: AutPair) -> Dict[str, Any]:
    return {"dim": pair.dim, "m": pair.m.to_strings()}


def load_object(obj: Any) -> Union[StarSumRep, AutPair]:
    """Dispatch on the keys present: AutPair files carry ``m``, rep files ``outer``."""
    if isinstance(obj, dict) and "m" in obj and "outer" not in obj:
        return autpair_from_json(obj)
    return rep_from_json(obj)


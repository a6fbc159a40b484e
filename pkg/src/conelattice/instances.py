"""Instance files: the shared JSON description of an ordered space.

Schema::

    {"dimension": n, "gram": [[...], ...], "order_basis": [[...], ...]}

Matrices are row-major lists of numbers; ``order_basis`` is optional and
defaults to the identity (the coordinatewise order).  A free-text
``description`` field is allowed and ignored.  Tolerances never appear in
instance files; they are parameters of the operations that consume them.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import InstanceFormatError
from .order import OrderedSpace, ordered_space


def _require_matrix(data, key, dim, source):
    rows = data[key]
    if not isinstance(rows, list) or len(rows) != dim:
        raise InstanceFormatError(
            f"{source}: '{key}' must be a list of {dim} rows"
        )
    for index, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise InstanceFormatError(
                f"{source}: '{key}' row {index} has "
                f"{len(row) if isinstance(row, list) else 'no'} entries, expected {dim}"
            )
        for j, value in enumerate(row):
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise InstanceFormatError(
                    f"{source}: '{key}' entry ({index}, {j}) is not a number"
                )
    return np.array(rows, dtype=float)


def parse_instance(data, source="instance") -> OrderedSpace:
    """Turn a decoded instance document into a validated OrderedSpace."""
    if not isinstance(data, dict):
        raise InstanceFormatError(f"{source}: top level must be a JSON object")
    if "dimension" not in data:
        raise InstanceFormatError(f"{source}: missing 'dimension'")
    dim = data["dimension"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InstanceFormatError(
            f"{source}: 'dimension' must be a positive integer, got {dim!r}"
        )
    if "gram" not in data:
        raise InstanceFormatError(f"{source}: missing 'gram'")
    gram = _require_matrix(data, "gram", dim, source)
    basis = None
    if "order_basis" in data and data["order_basis"] is not None:
        basis = _require_matrix(data, "order_basis", dim, source)
    return ordered_space(gram, basis)


def load_instance(path) -> OrderedSpace:
    """Read and validate an instance file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InstanceFormatError(f"cannot read instance file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}"
        ) from exc
    return parse_instance(data, source=str(path))


def save_instance(path, ospace: OrderedSpace, description=None) -> None:
    """Write an ordered space back out in the instance-file format."""
    payload = {
        "dimension": ospace.space.dim,
        "gram": np.asarray(ospace.space.gram).tolist(),
        "order_basis": np.asarray(ospace.order.basis).tolist(),
    }
    if description is not None:
        payload["description"] = str(description)
    Path(path).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")

"""JSON state, basis and channel files.

Complex numbers are written as ``[re, im]`` pairs. Layouts::

    state:   {"n": 2, "kind": "statevector", "data": [[re, im], ...]}
             {"n": 2, "kind": "density", "data": [[[re, im], ...], ...]}
    basis:   {"n": 2, "local_bases": [[[[re, im], [re, im]], [[re, im], [re, im]]], ...]}
    channel: {"n": 1, "kraus": [matrix, ...]}
             {"n": 1, "named": {"name": "dephasing", "params": [0.5]}}
             {"n": 2, "named": {"name": "replace_with", "params": [], "target": <state object>}}
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .channels import QuantumChannel, make_channel, standard_channel
from .errors import FormatError
from .qregister import DensityMatrix, ProductBasis, PureState, pure_to_density


def _to_complex(obj, ndim: int, what: str) -> np.ndarray:
    try:
        arr = np.asarray(obj, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{what}: expected nested [re, im] pairs ({exc})") from None
    if arr.ndim != ndim + 1 or arr.shape[-1] != 2:
        raise FormatError(f"{what}: expected a {ndim}-d array of [re, im] pairs, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def _from_complex(arr: np.ndarray) -> list:
    arr = np.asarray(arr, dtype=complex)
    return np.stack([arr.real, arr.imag], axis=-1).tolist()


def _field(obj, key, what):
    if not isinstance(obj, dict):
        raise FormatError(f"{what}: expected a JSON object, got {type(obj).__name__}")
    try:
        return obj[key]
    except KeyError:
        raise FormatError(f"{what}: missing field {key!r}") from None


def _count(obj, what) -> int:
    n = _field(obj, "n", what)
    if isinstance(n, bool) or not isinstance(n, int):
        raise FormatError(f"{what}: field 'n' must be an integer, got {n!r}")
    return n


def read_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise FormatError(f"{path}: cannot read ({exc.strerror})") from None


def write_json(obj, path) -> None:
    Path(path).write_text(dumps(obj) + "\n")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def state_from_obj(obj, what: str = "state"):
    """Parse a state object into a :class:`PureState` or :class:`DensityMatrix`."""
    n = _count(obj, what)
    kind = _field(obj, "kind", what)
    data = _field(obj, "data", what)
    if kind == "statevector":
        return PureState(_to_complex(data, 1, what), n)
    if kind == "density":
        return DensityMatrix(_to_complex(data, 2, what), n)
    raise FormatError(f"{what}: kind must be 'statevector' or 'density', got {kind!r}")


def state_to_obj(state) -> dict:
    if isinstance(state, PureState):
        return {"n": state.n, "kind": "statevector", "data": _from_complex(state.amplitudes)}
    return {"n": state.n, "kind": "density", "data": _from_complex(state.data)}


def load_state(path):
    return state_from_obj(read_json(path), str(path))


def load_density(path) -> DensityMatrix:
    state = load_state(path)
    return pure_to_density(state) if isinstance(state, PureState) else state


def save_state(state, path) -> None:
    write_json(state_to_obj(state), path)


def basis_from_obj(obj, what: str = "basis") -> ProductBasis:
    n = _count(obj, what)
    local = _to_complex(_field(obj, "local_bases", what), 3, what)
    return ProductBasis(local, n)


def basis_to_obj(basis: ProductBasis) -> dict:
    return {"n": basis.n, "local_bases": _from_complex(basis.local_bases)}


def load_basis(path, n: int) -> ProductBasis:
    """Basis from ``path``, or the computational basis on ``n`` qubits when ``path`` is None."""
    if path is None:
        return ProductBasis.computational(n)
    return basis_from_obj(read_json(path), str(path))


def channel_from_obj(obj, what: str = "channel") -> QuantumChannel:
    n = _count(obj, what)
    if "kraus" in obj:
        return make_channel([_to_complex(k, 2, what) for k in obj["kraus"]], n)
    named = _field(obj, "named", what)
    name = _field(named, "name", what)
    params = named.get("params", [])
    if not isinstance(params, list):
        raise FormatError(f"{what}: 'params' must be a list, got {params!r}")
    target = named.get("target")
    if target is not None:
        target = state_from_obj(target, f"{what} target")
    return standard_channel(name, params, n, target=target)


def channel_to_obj(channel: QuantumChannel) -> dict:
    return {"n": channel.n, "kraus": [_from_complex(k) for k in channel.kraus]}


def load_channel(path) -> QuantumChannel:
    return channel_from_obj(read_json(path), str(path))

"""Declarative state descriptions and the built-in catalog.

A state spec is a YAML mapping with a ``kind`` field, for example::

    {kind: eigenstate, m: 0}
    {kind: trig, harmonic: 2, phase: sin}
    {kind: coherent, l: 0.0, theta: 0.0}
    {kind: cat, l: 0.0, theta: 0.0}
    {kind: density_poly, offset: 0.2}
    {kind: fourier, coeffs: [[1, 0.0, -0.7071067811865476], [-1, 0.0, 0.7071067811865476]]}
    {kind: samples, samples: [[re, im], ...], origin: 0.0}

Optional common fields are ``label`` and ``truncation`` (maximum ``|m|``).
JSON documents are valid input as well.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from . import circle_state as cs
from .errors import SpecParseError

KINDS = ("eigenstate", "trig", "coherent", "cat", "density_poly", "fourier", "samples")

_FIELDS = {
    "eigenstate": {"m": int},
    "trig": {"harmonic": int, "phase": str},
    "coherent": {"l": float, "theta": float},
    "cat": {"l": float, "theta": float},
    "density_poly": {"offset": float},
    "fourier": {"coeffs": list},
    "samples": {"samples": list},
}
_OPTIONAL = {"samples": {"origin": float}}
_COMMON = {"kind", "label", "truncation"}


@dataclass(frozen=True)
class StateSpec:
    kind: str
    params: Dict[str, Any] = field(default_factory=dict)
    truncation: Optional[int] = None
    label: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"kind": self.kind, **self.params}
        if self.truncation is not None:
            out["truncation"] = self.truncation
        if self.label is not None:
            out["label"] = self.label
        return out


CATALOG: Dict[str, StateSpec] = {
    "uniform": StateSpec("eigenstate", {"m": 0}, label="uniform"),
    "psi_s": StateSpec("trig", {"harmonic": 1, "phase": "sin"}, label="psi_s"),
    "psi_c": StateSpec("trig", {"harmonic": 1, "phase": "cos"}, label="psi_c"),
    "psi_s2": StateSpec("trig", {"harmonic": 2, "phase": "sin"}, label="psi_s2"),
    "psi_s4": StateSpec("density_poly", {"offset": 0.2}, label="psi_s4"),
    "cs": StateSpec("coherent", {"l": 0.0, "theta": 0.0}, label="cs"),
    "cat": StateSpec("cat", {"l": 0.0, "theta": 0.0}, label="cat"),
}


def _coerce(name, value, typ, kind):
    try:
        if typ is int:
            if isinstance(value, bool) or float(value) != int(value):
                raise ValueError
            return int(value)
        if typ is float:
            if isinstance(value, bool):
                raise ValueError
            return float(value)
        if typ is str:
            if not isinstance(value, str):
                raise ValueError
            return value
        if typ is list:
            if not isinstance(value, list):
                raise ValueError
            return value
    except (TypeError, ValueError):
        pass
    raise SpecParseError(
        f"field {name!r} of kind {kind!r} must be {typ.__name__}, got {value!r}")


def spec_from_mapping(doc: Any) -> StateSpec:
    if not isinstance(doc, dict):
        raise SpecParseError(f"state spec must be a mapping, got {type(doc).__name__}")
    kind = doc.get("kind")
    if kind is None:
        raise SpecParseError("state spec is missing the 'kind' field")
    if kind not in KINDS:
        raise SpecParseError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    required = _FIELDS[kind]
    optional = _OPTIONAL.get(kind, {})
    unknown = set(doc) - _COMMON - set(required) - set(optional)
    if unknown:
        raise SpecParseError(f"unknown field(s) for kind {kind!r}: {', '.join(sorted(unknown))}")
    params = {}
    for name, typ in required.items():
        if name not in doc:
            raise SpecParseError(f"kind {kind!r} requires field {name!r}")
        params[name] = _coerce(name, doc[name], typ, kind)
    for name, typ in optional.items():
        if name in doc:
            params[name] = _coerce(name, doc[name], typ, kind)
    if kind == "trig":
        if params["harmonic"] < 1:
            raise SpecParseError("field 'harmonic' must be >= 1")
        if params["phase"] not in ("sin", "cos"):
            raise SpecParseError("field 'phase' must be 'sin' or 'cos'")
    if kind == "density_poly" and not params["offset"] > 0:
        raise SpecParseError("field 'offset' must be > 0")
    if kind == "fourier":
        rows = []
        for i, row in enumerate(params["coeffs"]):
            if not isinstance(row, (list, tuple)) or len(row) != 3:
                raise SpecParseError(f"coeffs[{i}] must be [m, re, im], got {row!r}")
            rows.append([_coerce(f"coeffs[{i}][0]", row[0], int, kind),
                         _coerce(f"coeffs[{i}][1]", row[1], float, kind),
                         _coerce(f"coeffs[{i}][2]", row[2], float, kind)])
        if len({r[0] for r in rows}) != len(rows):
            raise SpecParseError("fourier coefficients must have distinct m")
        params["coeffs"] = rows
    if kind == "samples":
        vals = []
        for i, v in enumerate(params["samples"]):
            if isinstance(v, (list, tuple)) and len(v) == 2:
                vals.append([_coerce(f"samples[{i}]", v[0], float, kind),
                             _coerce(f"samples[{i}]", v[1], float, kind)])
            else:
                vals.append([_coerce(f"samples[{i}]", v, float, kind), 0.0])
        params["samples"] = vals
    trunc = doc.get("truncation")
    if trunc is not None:
        trunc = _coerce("truncation", trunc, int, kind)
        if trunc < 0:
            raise SpecParseError("field 'truncation' must be >= 0")
    label = doc.get("label")
    return StateSpec(kind, params, trunc, None if label is None else str(label))


def parse_spec(text: str) -> StateSpec:
    """Parse one YAML (or JSON) state spec document."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark else ""
        raise SpecParseError(f"malformed state spec{where}: {getattr(exc, 'problem', exc)}") from exc
    return spec_from_mapping(doc)


def load_spec(source: str) -> StateSpec:
    """Catalog name or path to a spec file."""
    path = Path(source)
    if source in CATALOG and not path.exists():
        return CATALOG[source]
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecParseError(
            f"{source!r} is neither a catalog entry ({', '.join(CATALOG)}) "
            f"nor a readable file: {exc.strerror}") from exc
    return parse_spec(text)


def build_state(spec: StateSpec, normalize: bool = False,
                mmax: Optional[int] = None) -> cs.CircleState:
    """Construct the state described by ``spec``.

    ``normalize`` allows non-unit ``fourier`` coefficients to be rescaled;
    ``mmax`` (or the spec's ``truncation``) drops ``|m| > mmax``.
    """
    p = spec.params
    label = spec.label
    k = spec.kind
    if k == "eigenstate":
        state = cs.make_eigenstate(p["m"], label=label)
    elif k == "trig":
        state = cs.make_trig(p["harmonic"], p["phase"], label=label)
    elif k == "coherent":
        state = cs.make_coherent(p["l"], p["theta"], label=label)
    elif k == "cat":
        state = cs.make_cat(p["l"], p["theta"], label=label)
    elif k == "density_poly":
        state = cs.make_density_poly(p["offset"], label=label)
    elif k == "fourier":
        state = cs.make_fourier(p["coeffs"], normalize=normalize, label=label or "fourier")
    else:
        vals = [complex(re, im) for re, im in p["samples"]]
        state = cs.make_from_samples(vals, origin=p.get("origin", 0.0), label=label)
    limit = mmax if mmax is not None else spec.truncation
    if limit is not None:
        state = cs.truncate(state, limit)
    return state


def fourier_spec(state: cs.CircleState) -> StateSpec:
    """Exact ``fourier``-kind spec of an existing state."""
    return StateSpec("fourier", {"coeffs": cs.fourier_triples(state)}, label=state.label)

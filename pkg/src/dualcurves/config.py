"""Curve definitions read from YAML documents.

Schema (only ``kind`` is required; builtins have default domains, series need one)::

    kind: builtin | series
    name: study_circle | real_helix | great_circle | normalized   # builtin only
    params: {a: 1.0, b: 0.5}            # real_helix parameters
    series:                             # kind: series, or name: normalized
      real: [[term, ...], [...], [...]] # three coordinates
      dual: [[term, ...], [...], [...]]
    random: {seed: 7}                   # name: normalized, instead of series
    domain: [0, 6.283185307179586]
    samples: 256
    tol: 1.0e-8
    exact_derivatives: true
    s_range: [0, 6.283185307179586]
    u_range: [-2, 2]
    grid: 64x16
    format: obj | csv

A term is ``{coef: c, power: p, freq: w, phase: phi}`` and stands for
c * t**p * cos(w t + phi); missing entries default to 0 (coef is required).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import pi

import numpy as np
import yaml

from . import catalog
from .catalog import Term
from .curves import DualCurve
from .errors import ParseError, SchemaViolation, UnknownBuiltin

BUILTINS = ("study_circle", "real_helix", "great_circle", "normalized")
_TOP_KEYS = {"kind", "name", "params", "series", "random", "domain", "samples", "tol",
             "exact_derivatives", "s_range", "u_range", "grid", "format"}
_TERM_KEYS = {"coef", "power", "freq", "phase"}
_DEFAULT_DOMAIN = {"study_circle": (0.0, 2 * pi), "real_helix": (0.0, 4 * pi),
                   "great_circle": (0.0, 2 * pi), "normalized": (0.0, 3.0)}


@dataclass(frozen=True)
class CurveSpec:
    kind: str
    name: str
    domain: tuple
    params: dict = field(default_factory=dict)
    real: tuple = None
    dual: tuple = None
    seed: int = None
    samples: int = None
    tol: float = None
    exact_derivatives: bool = None
    s_range: tuple = None
    u_range: tuple = None
    grid: tuple = None
    format: str = None


def _interval(value, key):
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise SchemaViolation(f"{key}: expected a two-element list, got {value!r}")
    try:
        lo, hi = float(value[0]), float(value[1])
    except (TypeError, ValueError):
        raise SchemaViolation(f"{key}: endpoints must be numbers, got {value!r}") from None
    if not (np.isfinite(lo) and np.isfinite(hi)) or not lo < hi:
        raise SchemaViolation(f"{key}: interval [{lo}, {hi}] is empty or not finite")
    return lo, hi


def parse_grid(value, key="grid"):
    """'64x16' or [64, 16] -> (64, 16)."""
    if isinstance(value, str):
        parts = value.lower().split("x")
    elif isinstance(value, (list, tuple)):
        parts = list(value)
    else:
        parts = []
    try:
        s, u = (int(p) for p in parts)
    except (TypeError, ValueError):
        raise SchemaViolation(f"{key}: expected SxU such as 64x16, got {value!r}") from None
    if s < 2 or u < 2:
        raise SchemaViolation(f"{key}: both grid sizes must be at least 2, got {s}x{u}")
    return s, u


def _number(value, key, kind=float):
    if isinstance(value, bool):
        raise SchemaViolation(f"{key}: expected a number, got {value!r}")
    try:
        out = kind(value)
    except (TypeError, ValueError):
        raise SchemaViolation(f"{key}: expected a number, got {value!r}") from None
    if kind is int and out != value:
        raise SchemaViolation(f"{key}: expected an integer, got {value!r}")
    return out


def _terms(coords, key):
    if not isinstance(coords, (list, tuple)) or len(coords) != 3:
        n = len(coords) if isinstance(coords, (list, tuple)) else type(coords).__name__
        raise SchemaViolation(f"{key}: expected 3 coordinates, got {n}")
    out = []
    for i, coord in enumerate(coords):
        if not isinstance(coord, (list, tuple)):
            raise SchemaViolation(f"{key}[{i}]: expected a list of terms")
        terms = []
        for j, term in enumerate(coord):
            where = f"{key}[{i}][{j}]"
            if not isinstance(term, dict):
                raise SchemaViolation(f"{where}: expected a mapping, got {term!r}")
            extra = set(term) - _TERM_KEYS
            if extra:
                raise SchemaViolation(f"{where}: unknown field(s) {sorted(extra)}")
            if "coef" not in term:
                raise SchemaViolation(f"{where}: missing field 'coef'")
            power = _number(term.get("power", 0), f"{where}.power", int)
            if power < 0:
                raise SchemaViolation(f"{where}.power: must be non-negative")
            terms.append(Term(_number(term["coef"], f"{where}.coef"), power,
                              _number(term.get("freq", 0.0), f"{where}.freq"),
                              _number(term.get("phase", 0.0), f"{where}.phase")))
        out.append(tuple(terms))
    return tuple(out)


def _series(doc, key="series"):
    block = doc.get(key)
    if not isinstance(block, dict):
        raise SchemaViolation(f"{key}: expected a mapping with 'real' and 'dual'")
    for part in ("real", "dual"):
        if part not in block:
            raise SchemaViolation(f"{key}.{part}: missing")
    return _terms(block["real"], f"{key}.real"), _terms(block["dual"], f"{key}.dual")


def parse_curve_spec(text: str) -> CurveSpec:
    """Validate a YAML curve document and return a CurveSpec."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        loc = f" at line {mark.line + 1}, column {mark.column + 1}" if mark else ""
        problem = getattr(exc, "problem", None) or str(exc)
        raise ParseError(f"malformed document{loc}: {problem}") from exc
    if not isinstance(doc, dict):
        raise ParseError("document root must be a mapping")
    extra = set(doc) - _TOP_KEYS
    if extra:
        raise SchemaViolation(f"unknown field(s) {sorted(extra)}")

    kind = doc.get("kind")
    if kind not in ("builtin", "series"):
        raise SchemaViolation(f"kind: expected 'builtin' or 'series', got {kind!r}")
    real = dual = seed = None
    params = {}
    if kind == "builtin":
        name = doc.get("name")
        if name not in BUILTINS:
            raise UnknownBuiltin(f"name: unknown builtin {name!r}; choose from {', '.join(BUILTINS)}")
        raw = doc.get("params") or {}
        if not isinstance(raw, dict):
            raise SchemaViolation("params: expected a mapping")
        allowed = {"real_helix": {"a", "b"}}.get(name, set())
        if set(raw) - allowed:
            raise SchemaViolation(f"params: unknown parameter(s) {sorted(set(raw) - allowed)} for {name}")
        params = {k: _number(v, f"params.{k}") for k, v in raw.items()}
        if name == "normalized":
            if ("series" in doc) == ("random" in doc):
                raise SchemaViolation("normalized: give exactly one of 'series' or 'random'")
            if "series" in doc:
                real, dual = _series(doc)
            else:
                rnd = doc["random"]
                if not isinstance(rnd, dict) or "seed" not in rnd:
                    raise SchemaViolation("random: expected a mapping with 'seed'")
                seed = _number(rnd["seed"], "random.seed", int)
    else:
        name = "series"
        real, dual = _series(doc)

    if "domain" in doc:
        domain = _interval(doc["domain"], "domain")
    elif kind == "builtin" and name in _DEFAULT_DOMAIN:
        domain = _DEFAULT_DOMAIN[name]
    else:
        raise SchemaViolation("domain: missing")

    opt = {}
    if "samples" in doc:
        opt["samples"] = _number(doc["samples"], "samples", int)
        if opt["samples"] < 2:
            raise SchemaViolation("samples: must be at least 2")
    if "tol" in doc:
        opt["tol"] = _number(doc["tol"], "tol")
        if not opt["tol"] > 0:
            raise SchemaViolation("tol: must be positive")
    if "exact_derivatives" in doc:
        if not isinstance(doc["exact_derivatives"], bool):
            raise SchemaViolation("exact_derivatives: expected true or false")
        opt["exact_derivatives"] = doc["exact_derivatives"]
    for key in ("s_range", "u_range"):
        if key in doc:
            opt[key] = _interval(doc[key], key)
    if "grid" in doc:
        opt["grid"] = parse_grid(doc["grid"])
    if "format" in doc:
        if doc["format"] not in ("obj", "csv"):
            raise SchemaViolation(f"format: expected 'obj' or 'csv', got {doc['format']!r}")
        opt["format"] = doc["format"]

    return CurveSpec(kind=kind, name=name, domain=domain, params=params,
                     real=real, dual=dual, seed=seed, **opt)


def build_curve(spec: CurveSpec) -> DualCurve:
    """Instantiate the curve described by ``spec`` with exact derivatives."""
    if spec.kind == "series":
        return catalog.series_curve(spec.real, spec.dual, spec.domain, name="series")
    if spec.name == "study_circle":
        return catalog.study_circle(spec.domain)
    if spec.name == "real_helix":
        return catalog.real_helix(domain=spec.domain, **spec.params)
    if spec.name == "great_circle":
        return catalog.great_circle(spec.domain)
    if spec.seed is not None:
        return catalog.random_sphere_curve(np.random.default_rng(spec.seed), domain=spec.domain)
    base = catalog.series_curve(spec.real, spec.dual, spec.domain, name="series")
    return catalog.normalized(base)

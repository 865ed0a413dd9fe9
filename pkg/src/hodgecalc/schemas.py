"""Problem-document parsing, validation, and serialization.

A problem document is a JSON object {"kind", "payload", "meta"}; the kind
selects the payload schema.  All scalars parse exactly ("p/q" strings or
{"re","im"} objects); schema violations raise SchemaError naming the
violated constraint, malformed input raises ParseError.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .errors import ParseError, SchemaError
from .lmhs import PolarizedOrbitSpec
from .matrices import Mat, is_nilpotent
from .normpos import NormPositivityModel

KINDS = ("orbit", "phs", "model", "subspace", "alpha")


@dataclass(frozen=True)
class ProblemDocument:
    kind: str
    payload: dict          # raw JSON payload (already validated)
    meta: dict
    obj: object            # parsed domain object (spec/model/...)

    def canonical_json(self) -> str:
        return json.dumps({"kind": self.kind, "meta": self.meta,
                           "payload": self.payload},
                          sort_keys=True, separators=(",", ":"))


def _require(cond: bool, message: str):
    if not cond:
        raise SchemaError(message)


def _parse_matrix(data, what: str) -> Mat:
    try:
        return Mat.from_json(data)
    except Exception as exc:
        raise ParseError(f"bad matrix for {what}: {exc}") from exc


def _build_orbit(payload) -> PolarizedOrbitSpec:
    for key in ("dim", "weight", "Q", "nilpotents", "F"):
        _require(key in payload, f"orbit payload is missing '{key}'")
    dim = int(payload["dim"])
    weight = int(payload["weight"])
    _require(dim > 0, "dim must be positive")
    _require(weight >= 0, "weight must be non-negative")
    q = _parse_matrix(payload["Q"], "Q")
    _require(q.rows == dim and q.cols == dim, "Q must be dim x dim")
    nilpotents = []
    for i, nd in enumerate(payload["nilpotents"]):
        n = _parse_matrix(nd, f"nilpotents[{i}]")
        _require(n.rows == dim and n.cols == dim, f"nilpotents[{i}] must be dim x dim")
        _require(is_nilpotent(n), f"nilpotents[{i}] must be nilpotent")
        nilpotents.append(n)
    for a in range(len(nilpotents)):
        for b in range(a + 1, len(nilpotents)):
            _require(nilpotents[a].commutes_with(nilpotents[b]),
                     "nilpotents must commute")
    flag = []
    fdata = payload["F"]
    _require(len(fdata) == weight + 1, f"F must list F^{weight}..F^0")
    for i, fd in enumerate(fdata):
        if fd:
            f = _parse_matrix(fd, f"F[{i}]")
            _require(f.cols == dim, "flag vectors must have length dim")
        else:
            f = Mat.zeros(0, dim)
        flag.append(f)
    return PolarizedOrbitSpec(dim, weight, q, tuple(nilpotents), tuple(flag))


def _build_phs(payload):
    from .horizontal import phs_weight1, phs_weight2
    _require("weight" in payload, "phs payload is missing 'weight'")
    weight = int(payload["weight"])
    if weight == 1:
        _require("genus" in payload or "omega" in payload,
                 "weight-1 phs needs 'genus' or 'omega'")
        if "omega" in payload:
            omega = _parse_matrix(payload["omega"], "omega")
            return phs_weight1(omega.rows, omega)
        return phs_weight1(int(payload["genus"]))
    if weight == 2:
        for key in ("h20", "h11"):
            _require(key in payload, f"weight-2 phs needs '{key}'")
        omega = _parse_matrix(payload["omega"], "omega") if "omega" in payload else None
        return phs_weight2(int(payload["h20"]), int(payload["h11"]), omega)
    raise SchemaError("phs constructors cover weights 1 and 2")


def _build_model(payload) -> NormPositivityModel:
    for key in ("dimT", "rankE", "rankG", "A"):
        _require(key in payload, f"model payload is missing '{key}'")
    a = _parse_matrix(payload["A"], "A")
    try:
        return NormPositivityModel(int(payload["dimT"]), int(payload["rankE"]),
                                   int(payload["rankG"]), a)
    except Exception as exc:
        raise SchemaError(str(exc)) from exc


def _build_subspace(payload) -> Mat:
    _require("basis" in payload, "subspace payload is missing 'basis'")
    basis = _parse_matrix(payload["basis"], "basis")
    if "ambient" in payload:
        _require(basis.cols == int(payload["ambient"]),
                 "basis vectors must match the ambient dimension")
    return basis


def _build_alpha(payload):
    from fractions import Fraction
    _require("alpha" in payload, "alpha payload is missing 'alpha'")
    try:
        alpha = [Fraction(a) for a in payload["alpha"]]
    except Exception as exc:
        raise ParseError(f"bad weight vector: {exc}") from exc
    _require(all(a > 0 for a in alpha), "weights must be positive")
    bound = int(payload.get("degreeBound", 24))
    _require(bound >= 0, "degreeBound must be non-negative")
    return (alpha, bound)


_BUILDERS = {
    "orbit": _build_orbit,
    "phs": _build_phs,
    "model": _build_model,
    "subspace": _build_subspace,
    "alpha": _build_alpha,
}


def parse_problem_text(text: str) -> ProblemDocument:
    if not text.strip():
        raise ParseError("empty input document")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: "
                         f"{exc.msg}") from exc
    if not isinstance(data, dict):
        raise ParseError("document must be a JSON object")
    kind = data.get("kind")
    if kind not in KINDS:
        raise SchemaError(f"kind must be one of {KINDS}, got {kind!r}")
    payload = data.get("payload")
    if not isinstance(payload, dict):
        raise SchemaError("payload must be a JSON object")
    meta = data.get("meta", {})
    obj = _BUILDERS[kind](payload)
    return ProblemDocument(kind, payload, meta, obj)


def parse_problem(path) -> ProblemDocument:
    """Parse a document from a path, 'builtin:NAME', or '-' for stdin."""
    import sys
    if path == "-":
        return parse_problem_text(sys.stdin.read())
    name = str(path)
    if name.startswith("builtin:"):
        return load_fixture(name[len("builtin:"):])
    try:
        with open(name, "r", encoding="utf-8") as fh:
            return parse_problem_text(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {name}: {exc}") from exc


def render_problem(doc: ProblemDocument) -> str:
    return json.dumps({"kind": doc.kind, "meta": doc.meta, "payload": doc.payload},
                      indent=1, sort_keys=True) + "\n"


def fixture_names():
    out = []
    for entry in resources.files("hodgecalc").joinpath("fixtures").iterdir():
        if entry.name.endswith(".json"):
            out.append(entry.name[:-5])
    return sorted(out)


def load_fixture(name: str) -> ProblemDocument:
    try:
        text = (resources.files("hodgecalc").joinpath("fixtures")
                .joinpath(f"{name}.json").read_text())
    except (FileNotFoundError, OSError) as exc:
        raise ParseError(f"no bundled fixture named {name!r}; "
                         f"available: {', '.join(fixture_names())}") from exc
    return parse_problem_text(text)

"""Hamiltonian file formats: ``<coeff> <pauli>`` lines or JSON ``{"n", "terms"}``."""
from __future__ import annotations

import json
import math
from pathlib import Path

from .exceptions import ParseError
from .pauli import PauliOperator, PauliSum

__all__ = ["loads", "dumps", "load", "save", "format_float"]


def format_float(x: float) -> str:
    """Shortest text that round-trips to the same double."""
    return repr(float(x))


def _loads_json(text: str) -> PauliSum:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None
    if not isinstance(doc, dict) or "terms" not in doc:
        raise ParseError("JSON Hamiltonian needs an object with 'n' and 'terms'")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ParseError(f"'n' must be a non-negative integer, got {n!r}")
    if not isinstance(doc["terms"], list):
        raise ParseError("'terms' must be a list")
    terms = []
    for k, t in enumerate(doc["terms"]):
        if not isinstance(t, dict) or "pauli" not in t or "coeff" not in t:
            raise ParseError(f"term {k}: expected {{'pauli': ..., 'coeff': ...}}")
        word, coeff = t["pauli"], t["coeff"]
        if not isinstance(word, str):
            raise ParseError(f"term {k}: pauli must be a string")
        if isinstance(coeff, bool) or not isinstance(coeff, (int, float)) or not math.isfinite(coeff):
            raise ParseError(f"term {k}: coeff must be a finite real number")
        op = PauliOperator.from_string(word)
        if op.n != n:
            raise ParseError(f"term {k}: {word!r} is not {n} qubits long")
        terms.append((float(coeff), op))
    if not terms:
        return PauliSum(n)
    return PauliSum.from_terms(terms, n=n)


def loads(text: str, fmt: str | None = None) -> PauliSum:
    """Parse a Hamiltonian; ``fmt`` is ``"json"``, ``"text"`` or sniffed."""
    if fmt is None:
        fmt = "json" if text.lstrip().startswith("{") else "text"
    if fmt == "json":
        return _loads_json(text)
    if fmt == "text":
        return PauliSum.from_text(text)
    raise ValueError(f"unknown format {fmt!r}")


def dumps(h: PauliSum, fmt: str = "text") -> str:
    if fmt == "text":
        return "".join(f"{format_float(c)} {p.label}\n" for p, c in h.items())
    if fmt == "json":
        terms = [{"pauli": p.label, "coeff": c} for p, c in h.items()]
        return json.dumps({"n": h.n, "terms": terms}, indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def _fmt_for(path: Path, fmt: str | None) -> str | None:
    if fmt is not None:
        return fmt
    return "json" if path.suffix.lower() == ".json" else None


def load(path, fmt: str | None = None) -> PauliSum:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from None
    return loads(text, _fmt_for(path, fmt))


def save(h: PauliSum, path, fmt: str | None = None) -> None:
    path = Path(path)
    path.write_text(dumps(h, _fmt_for(path, fmt) or "text"))

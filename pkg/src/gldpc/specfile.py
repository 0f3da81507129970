"""JSON ensemble-description files.

Schema (rationals are "num/den" strings, decimal strings, or numbers):

    {
      "cn_types": [
        {"kind": "spc", "s": 3},
        {"kind": "hamming", "s": 7},
        {"kind": "explicit", "s": 5, "parity": ["11010", "00111"]}
      ],
      "rho": ["1/5", "0.8"],
      "q": 2,                      # VN-regular view (optional)
      "lambda": {"2": "0.1", "3": "9/10"}   # unstructured view (optional)
    }

At least one of "q" / "lambda" must be present; a file may carry both.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Dict, Optional

from . import gf2
from .ensemble import (
    CheckNodeType,
    CnMixture,
    UnstructuredEnsemble,
    VnRegularEnsemble,
    to_fraction,
)


class SpecFileError(ValueError):
    """Malformed ensemble description; the message names the bad field."""


@dataclass(frozen=True)
class SpecFile:
    """Parsed ensemble description: a CN mixture plus one or two VN views."""

    mixture: CnMixture
    q: Optional[int]
    lam: Optional[Dict[int, Any]]

    @property
    def has_vn_regular(self) -> bool:
        return self.q is not None

    @property
    def has_unstructured(self) -> bool:
        return self.lam is not None

    def vn_regular(self) -> VnRegularEnsemble:
        if self.q is None:
            raise SpecFileError("spec has no 'q' field (VN-regular view)")
        return VnRegularEnsemble(mixture=self.mixture, q=self.q)

    def unstructured(self) -> UnstructuredEnsemble:
        if self.lam is None:
            raise SpecFileError("spec has no 'lambda' field (unstructured view)")
        return UnstructuredEnsemble.of(self.mixture, self.lam)


def _parse_cn_type(entry: Dict[str, Any], idx: int) -> CheckNodeType:
    where = f"cn_types[{idx}]"
    if not isinstance(entry, dict):
        raise SpecFileError(f"{where}: expected an object")
    kind = entry.get("kind")
    s = entry.get("s")
    if not isinstance(s, int) or s < 2:
        raise SpecFileError(f"{where}.s: expected an integer length >= 2, got {s!r}")
    if kind == "spc":
        return CheckNodeType.spc(s)
    if kind == "hamming":
        try:
            return CheckNodeType.hamming(s)
        except ValueError as exc:
            raise SpecFileError(f"{where}: {exc}") from exc
    if kind == "explicit":
        parity = entry.get("parity")
        if not isinstance(parity, list) or not parity:
            raise SpecFileError(f"{where}.parity: expected a list of bit strings")
        try:
            rows = gf2.matrix_from_rows(parity, s)
            return CheckNodeType.explicit(rows, s)
        except ValueError as exc:
            raise SpecFileError(f"{where}.parity: {exc}") from exc
    raise SpecFileError(
        f"{where}.kind: expected 'spc', 'hamming' or 'explicit', got {kind!r}"
    )


def parse_spec_dict(doc: Dict[str, Any]) -> SpecFile:
    if not isinstance(doc, dict):
        raise SpecFileError("top level: expected a JSON object")
    raw_types = doc.get("cn_types")
    if not isinstance(raw_types, list) or not raw_types:
        raise SpecFileError("cn_types: expected a non-empty list")
    types = [_parse_cn_type(e, i) for i, e in enumerate(raw_types)]
    raw_rho = doc.get("rho")
    if not isinstance(raw_rho, list) or len(raw_rho) != len(types):
        raise SpecFileError(
            f"rho: expected a list of {len(types)} fractions matching cn_types"
        )
    try:
        rho = [to_fraction(r) for r in raw_rho]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SpecFileError(f"rho: {exc}") from exc
    try:
        mixture = CnMixture.of(types, rho)
    except ValueError as exc:
        raise SpecFileError(f"rho: {exc}") from exc

    q = doc.get("q")
    if q is not None and (not isinstance(q, int) or q < 2):
        raise SpecFileError(f"q: expected an integer >= 2, got {q!r}")
    lam_raw = doc.get("lambda")
    lam: Optional[Dict[int, Any]] = None
    if lam_raw is not None:
        if not isinstance(lam_raw, dict) or not lam_raw:
            raise SpecFileError("lambda: expected a non-empty object degree -> fraction")
        lam = {}
        for key, val in lam_raw.items():
            try:
                d = int(key)
            except ValueError as exc:
                raise SpecFileError(f"lambda key {key!r}: not an integer degree") from exc
            try:
                lam[d] = to_fraction(val)
            except (ValueError, TypeError, ZeroDivisionError) as exc:
                raise SpecFileError(f"lambda[{key}]: {exc}") from exc
    if q is None and lam is None:
        raise SpecFileError("spec needs 'q' and/or 'lambda'")
    spec = SpecFile(mixture=mixture, q=q, lam=lam)
    # materialize the views now so field errors surface with context
    if spec.has_vn_regular:
        try:
            spec.vn_regular()
        except ValueError as exc:
            raise SpecFileError(f"q: {exc}") from exc
    if spec.has_unstructured:
        try:
            spec.unstructured()
        except ValueError as exc:
            raise SpecFileError(f"lambda: {exc}") from exc
    return spec


def load_spec_file(path: str) -> SpecFile:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    try:
        return parse_spec_dict(doc)
    except SpecFileError as exc:
        raise SpecFileError(f"{path}: {exc}") from exc


def spec_to_dict(spec: SpecFile) -> Dict[str, Any]:
    """Serialize back to the JSON schema (rationals as 'num/den' strings)."""
    out: Dict[str, Any] = {"cn_types": [], "rho": [str(r) for r in spec.mixture.rho]}
    for t in spec.mixture.types:
        entry: Dict[str, Any] = {"s": t.s}
        if t.parity == tuple(gf2.all_ones_row(t.s)):
            entry["kind"] = "spc"
        elif _is_hamming_parity(t):
            entry["kind"] = "hamming"
        else:
            entry["kind"] = "explicit"
            entry["parity"] = [gf2.bits_to_string(row, t.s) for row in t.parity or ()]
        out["cn_types"].append(entry)
    if spec.q is not None:
        out["q"] = spec.q
    if spec.lam is not None:
        out["lambda"] = {str(d): str(to_fraction(f)) for d, f in sorted(spec.lam.items())}
    return out


def _is_hamming_parity(t: CheckNodeType) -> bool:
    try:
        return t.parity == tuple(gf2.hamming_parity(t.s))
    except ValueError:
        return False

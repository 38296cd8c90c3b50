from __future__ import annotations

import json
from typing import Any, Dict, List, Optional

from algebra.arith import IntFactorization
from certifier.certificate import DgsCertificate

OUTPUT_FORMATS = ("json", "text")


def _dec(x: Optional[int]) -> Optional[str]:
    return None if x is None else str(x)


def _factor_list(f: Optional[IntFactorization]) -> List[Dict[str, Any]]:
    return [] if f is None else [{"p": str(p), "e": e} for p, e in f.factors]


def certificate_to_json(c: DgsCertificate) -> Dict[str, Any]:
    """Fixed key order; integers that can grow without bound are decimal strings."""
    out: Dict[str, Any] = {
        "n": c.n,
        "delta": c.delta,
        "class": c.cls.value if c.cls else None,
        "c_delta": _dec(c.c_delta),
        "chi": [str(x) for x in c.chi.coeffs],
        "chi_gram": None if c.chi_gram is None else [str(x) for x in c.chi_gram.coeffs],
        "discriminant": _dec(c.discriminant),
        "sqrt_discriminant": _dec(c.sqrt_discriminant),
        "D": _dec(c.d),
        "D_factorization": _factor_list(c.d_factorization),
        "cofactor": None if c.d_factorization is None else str(c.d_factorization.cofactor),
        "crosschecks": {
            "chiab": c.crosschecks.chiab,
            "abb": c.crosschecks.abb,
            "chiab_transpose": c.crosschecks.chiab_transpose,
        },
        "verdict": c.verdict.value if c.verdict else None,
        "reasons": list(c.reasons),
        "effort": c.effort.to_json(),
        "walk_rank": c.walk_rank,
        "det_W": _dec(c.det_w),
        "det_W_factorization": _factor_list(c.det_w_factorization),
        "s": c.s,
        "bipartition": None
        if c.bipartition is None
        else {"left": list(c.bipartition.left), "right": list(c.bipartition.right)},
        "seed": c.seed,
    }
    return out


def _factor_text(f: Optional[IntFactorization], value: Optional[int]) -> str:
    if value is None:
        return "-"
    if f is None:
        return str(value)
    return f"{value} = {f.to_text()}"


def certificate_to_text(c: DgsCertificate) -> str:
    lines = [
        f"n                  {c.n}",
        f"delta              {c.delta}",
        f"bipartition        "
        + ("-" if c.bipartition is None else f"{list(c.bipartition.left)} | {list(c.bipartition.right)}"),
        f"chi(A)             {c.chi}",
        f"chi(BB^T)          {c.chi_gram if c.chi_gram is not None else '-'}",
        f"c_delta            {c.c_delta if c.c_delta is not None else '-'}",
        f"rank W             {c.walk_rank if c.walk_rank is not None else '-'}",
        f"class              {c.cls.value if c.cls else '-'}",
        f"det W              {_factor_text(c.det_w_factorization, c.det_w)}",
        f"discriminant       {c.discriminant if c.discriminant is not None else '-'}",
        f"D                  {_factor_text(c.d_factorization, c.d)}",
        f"crosschecks        chiab={c.crosschecks.chiab} abb={c.crosschecks.abb} "
        f"chiab_transpose={c.crosschecks.chiab_transpose}",
    ]
    if c.verdict is not None:
        lines.append(f"verdict            {c.verdict.value}")
    lines.extend(f"reason             {r}" for r in c.reasons)
    lines.append(f"seed               {c.seed}")
    return "\n".join(lines) + "\n"


def render_certificate(c: DgsCertificate, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(certificate_to_json(c), indent=2) + "\n"
    if fmt == "text":
        return certificate_to_text(c)
    raise ValueError(f"unknown output format {fmt!r}, expected one of {OUTPUT_FORMATS}")

"""JSON documents for certificates.

Schema ``spectral-stability/certificate@1``::

    {
      "schema": "spectral-stability/certificate@1",
      "condition": "A" | "B",
      "params": {r, c, eps, n, theta, b, a, s, t, joint_threshold, edit_budget,
                 part_size_u, edit_bound, sharp_bound, mindeg_goal, size_goal,
                 hypothesis_window, default_joint_threshold, default_edit_budget,
                 default_s, default_t, overrides},
      "removal_log": [[u, v, support], ...],
      "witness": {"parts": [[...], ...], "regime": str, "s": int, "t_achieved": int} | null,
      "edits": {"additions": [[u, v], ...], "removals": [[u, v], ...],
                "part_assignment": [...], "edit_count": int, "bound": float,
                "sharp_bound": float, "within_bound": bool, "fallback": bool} | null,
      "verdict": {"ok": bool, "reason": str}
    }

Edge lists are sorted and floats are written with ``repr`` precision, so a
document round-trips losslessly.
"""

from __future__ import annotations

import dataclasses
import json

from .graph import EditSet
from .multipartite import MultipartiteWitness
from .stability import Certificate, ConditionA, ConditionB, Params, Verdict

CERT_SCHEMA = "spectral-stability/certificate@1"


def params_to_dict(p: Params) -> dict:
    return dataclasses.asdict(p)


def params_from_dict(d: dict) -> Params:
    return Params(**d)


def certificate_to_dict(cert: Certificate, params: Params, verdict: Verdict | None = None) -> dict:
    doc = {
        "schema": CERT_SCHEMA,
        "condition": cert.tag,
        "params": params_to_dict(params),
        "removal_log": [[u, v, s] for (u, v), s in cert.removals],
        "witness": None,
        "edits": None,
        "verdict": None if verdict is None else {"ok": verdict.ok, "reason": verdict.reason},
    }
    if isinstance(cert, ConditionA):
        doc["witness"] = {
            "parts": [list(p) for p in cert.witness.parts],
            "regime": cert.witness.regime,
            "s": cert.s,
            "t_achieved": cert.t_achieved,
        }
    else:
        e = cert.edits
        doc["edits"] = {
            "additions": [list(x) for x in sorted(e.additions)],
            "removals": [list(x) for x in sorted(e.removals)],
            "part_assignment": list(e.part_assignment),
            "edit_count": cert.edit_count,
            "bound": cert.bound,
            "sharp_bound": cert.sharp_bound,
            "within_bound": cert.within_bound,
            "fallback": cert.fallback,
        }
    return doc


def certificate_from_dict(doc: dict) -> tuple[Certificate, Params, Verdict | None]:
    if doc.get("schema") != CERT_SCHEMA:
        raise ValueError(f"unknown certificate schema {doc.get('schema')!r}")
    params = params_from_dict(doc["params"])
    log = tuple(((int(u), int(v)), int(s)) for u, v, s in doc["removal_log"])
    if doc["condition"] == "A":
        w = doc["witness"]
        cert = ConditionA(
            MultipartiteWitness(tuple(tuple(p) for p in w["parts"]), w["regime"]),
            w["s"],
            w["t_achieved"],
            log,
        )
    elif doc["condition"] == "B":
        e = doc["edits"]
        edits = EditSet(
            frozenset(tuple(x) for x in e["additions"]),
            frozenset(tuple(x) for x in e["removals"]),
            tuple(e["part_assignment"]),
        )
        cert = ConditionB(edits, e["edit_count"], e["bound"], e["within_bound"], e["sharp_bound"], log, e["fallback"])
    else:
        raise ValueError(f"unknown condition {doc['condition']!r}")
    v = doc.get("verdict")
    verdict = None if v is None else Verdict(v["ok"], v["reason"])
    return cert, params, verdict


def dumps_certificate(cert: Certificate, params: Params, verdict: Verdict | None = None) -> str:
    return json.dumps(certificate_to_dict(cert, params, verdict), indent=1, sort_keys=True) + "\n"


def loads_certificate(text: str):
    return certificate_from_dict(json.loads(text))

"""Verification reports: assembly, digests and rendering."""
from __future__ import annotations

import hashlib
import json
from importlib import resources

from . import __version__

SCHEMA_VERSION = "1.0"


def digest(obj) -> str:
    data = json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
    return "sha256:" + hashlib.sha256(data.encode()).hexdigest()


def overall(checks) -> str:
    return "fail" if any(c["status"] == "fail" for c in checks) else "pass"


def make_report(suite: str, entry: str, entry_doc: dict, checks: list, batteries: dict,
                params: dict, seed: int, extra: dict = None) -> dict:
    rep = {
        "schema_version": SCHEMA_VERSION,
        "tool": "symsub",
        "version": __version__,
        "suite": suite,
        "entry": entry,
        "input_digest": digest(entry_doc),
        "params": params,
        "seed": seed,
        "batteries": batteries,
        "checks": checks,
        "status": overall(checks),
    }
    if extra:
        rep.update(extra)
    return rep


def to_json(rep) -> str:
    return json.dumps(rep, sort_keys=True, indent=2, ensure_ascii=False, default=str) + "\n"


def to_text(rep) -> str:
    lines = [f"{rep['suite']} {rep['entry']}: {rep['status'].upper()}"]
    for c in rep.get("checks", []):
        lines.append(f"  [{c['status']}] {c['name']}")
    if rep.get("params"):
        lines.append("  params: " + ", ".join(f"{k}={v[0]:+d}q^{v[1]}" for k, v in sorted(rep["params"].items())))
    for k, b in sorted(rep.get("batteries", {}).items()):
        lines.append(f"  battery {k}: " + ", ".join(f"{a}={b[a]}" for a in sorted(b)))
    return "\n".join(lines) + "\n"


def load_schema(name: str) -> dict:
    return json.loads(resources.files("symsub").joinpath("schema", name).read_text())

"""Report documents: a versioned JSON rendering and a plain-text table view."""

from __future__ import annotations

import json

from .. import __version__

SCHEMA = "conormal-lab/1"


def make_document(results=None, fingerprint: str | None = None, settings: dict | None = None) -> dict:
    doc = {"schema": SCHEMA, "tool_version": __version__}
    if fingerprint is not None:
        doc["input_fingerprint"] = fingerprint
    if settings:
        doc["settings"] = dict(settings)
    doc["results"] = list(results or [])
    return doc


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, (list, tuple)):
        return ", ".join(_scalar(x) for x in v) if v else "(none)"
    if isinstance(v, dict):
        return ", ".join(f"{k}: {_scalar(x)}" for k, x in v.items()) if v else "(none)"
    return str(v)


def _table(rows: list[dict]) -> list[str]:
    if not rows:
        return ["    (no rows)"]
    cols: list[str] = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    cells = [[_scalar(r.get(c)) for c in cols] for r in rows]
    width = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    line = "    " + "  ".join(c.ljust(w) for c, w in zip(cols, width))
    out = [line.rstrip(), "    " + "  ".join("-" * w for w in width)]
    for row in cells:
        out.append(("    " + "  ".join(x.ljust(w) for x, w in zip(row, width))).rstrip())
    return out


def render_text(doc: dict) -> str:
    lines = [f"{doc['schema']} (version {doc['tool_version']})"]
    if "input_fingerprint" in doc:
        lines.append(f"input {doc['input_fingerprint'][:16]}")
    for s, v in (doc.get("settings") or {}).items():
        lines.append(f"{s}: {v}")
    for frag in doc["results"]:
        head = f"[line {frag['line']}] {frag['command']}"
        if frag.get("as"):
            head += f" as {frag['as']}"
        lines += ["", head]
        res = frag["result"]
        if frag["kind"] == "criterion":
            lines.append(f"  verdict: {frag['verdict']}")
            for a in res.get("assumptions", []):
                lines.append(f"  assumes: {a}")
            if "evidence" in res:
                lines.append("  evidence:")
                lines += _table(res["evidence"])
            wit = res.get("witnesses", res if "evidence" not in res else {})
            for k, v in wit.items():
                lines.append(f"  {k}: {_scalar(v)}")
        else:
            for k, v in res.items():
                if isinstance(v, list) and v and isinstance(v[0], dict):
                    lines.append(f"  {k}:")
                    lines += _table(v)
                else:
                    lines.append(f"  {k}: {_scalar(v)}")
        if "elapsed_seconds" in frag:
            lines.append(f"  elapsed: {frag['elapsed_seconds']:.3f}s")
    return "\n".join(lines) + "\n"


def emit_report(doc: dict, fmt: str = "json") -> bytes:
    if fmt == "json":
        return render_json(doc).encode()
    if fmt == "text":
        return render_text(doc).encode()
    raise ValueError(f"unknown report format {fmt!r}")

"""Serialization, result streams, and the on-disk result cache.

Streams are JSON lines: a header object carrying the full ring presentation
(so results are interpretable without this code), then one object per point
in canonical sorted order.  Reports are single JSON objects.  Cache entries
are keyed by a content hash of (kind, parameters, code version) and written
atomically, so re-runs are byte-identical and never mix versions.
"""

import hashlib
import json
import os
import tempfile


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def stream_header(kind, ring, n, command, version, **extra):
    header = {
        "kind": kind,
        "p": ring.p,
        "m": ring.m,
        "N": ring.N,
        "F": [int(c) for c in ring.fcoeffs],
        "n": n,
        "command": command,
        "version": version,
    }
    header.update(extra)
    return header


def render_stream(header, records):
    lines = [canonical_json(header)]
    lines.extend(canonical_json(r) for r in records)
    return "\n".join(lines) + "\n"


def cache_key(kind, params, version):
    payload = canonical_json({"kind": kind, "params": params, "version": version})
    return hashlib.sha256(payload.encode()).hexdigest()


class ResultCache:
    def __init__(self, directory):
        self.directory = directory

    def path_for(self, key):
        return os.path.join(self.directory, key + ".jsonl")

    def get(self, key):
        path = self.path_for(key)
        if os.path.exists(path):
            with open(path, "r", encoding="utf-8") as fh:
                return fh.read()
        return None

    def put(self, key, content):
        os.makedirs(self.directory, exist_ok=True)
        path = self.path_for(key)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(content)
            os.replace(tmp, path)
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)
        return path


def census_csv(rows):
    """Fixed column order: p, m, n, k, j, count, oracle_count, match."""
    out = ["p,m,n,k,j,count,oracle_count,match"]
    for r in rows:
        oracle = "" if r["oracle_count"] is None else str(r["oracle_count"])
        match = "" if r["oracle_count"] is None else str(r["match"]).lower()
        out.append(
            f"{r['p']},{r['m']},{r['n']},{r['k']},{r['j']},{r['count']},{oracle},{match}"
        )
    return "\n".join(out) + "\n"


def parse_census_csv(text):
    lines = [ln for ln in text.strip().splitlines() if ln]
    header = lines[0].split(",")
    rows = []
    for ln in lines[1:]:
        vals = ln.split(",")
        row = dict(zip(header, vals))
        rows.append(row)
    return rows

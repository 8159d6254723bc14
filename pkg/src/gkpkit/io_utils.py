"""CSV/JSON persistence with a reproducible metadata block."""

import csv
import io
import json
from datetime import datetime, timezone

ARTIFACT_VERSION = "0.1.0"
SWEEP_SCHEMA_VERSION = 1


def metadata_block(config):
    """Config echo plus artifact version and timestamp."""
    meta = {key: config[key] for key in sorted(config)}
    meta["artifact_version"] = ARTIFACT_VERSION
    meta["timestamp"] = datetime.now(timezone.utc).isoformat()
    return meta


def write_csv(path, fieldnames, rows, config):
    """CSV file preceded by '# key: value' metadata comment lines.

    Everything after the metadata block is a deterministic function of the
    rows; the timestamp lives on its own comment line so that files from
    identical configs differ only there.
    """
    meta = metadata_block(config)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fieldnames)
    for row in rows:
        writer.writerow(row)
    with open(path, "w") as fh:
        for key, value in meta.items():
            fh.write(f"# {key}: {value}\n")
        fh.write(buf.getvalue())


def write_json(path, payload, config):
    """JSON file with a 'metadata' block holding the config echo."""
    doc = {"metadata": metadata_block(config)}
    doc.update(payload)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def read_csv(path):
    """Read a metadata-prefixed CSV; returns (metadata, header, rows)."""
    meta = {}
    with open(path) as fh:
        lines = fh.read().splitlines()
    body_start = 0
    for i, line in enumerate(lines):
        if line.startswith("# "):
            key, _, value = line[2:].partition(": ")
            meta[key] = value
            body_start = i + 1
        else:
            break
    rows = list(csv.reader(lines[body_start:]))
    return meta, rows[0], rows[1:]

#!/usr/bin/env python3
"""Generate the survey fixture corpus and its golden CSV files.

The goldens are computed here from the generated statement data, without
going through the Rust implementation:

- notation classes come from regular expressions over the collapsed lexical,
- exact values come from ``fractions.Fraction``,
- binary64 membership is ``Fraction(float(x)) == x`` (Python's int/int true
  division is correctly rounded), binary32 membership additionally requires
  the double to survive a ``struct`` round trip through ``'<f'``.

Run from the repository root:

    python3 scripts/gen_fixtures.py

Outputs go to crates/cli/tests/fixtures/.
"""

import gzip
import io
import random
import re
import struct
from fractions import Fraction
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "crates" / "cli" / "tests" / "fixtures"
SOURCE = "fixture"
FILE = "corpus.nq"
SEED = 20201016
LINES = 1000
MALFORMED_AT = {137: "iri", 512: "encoding", 871: "dot"}

XSD = "http://www.w3.org/2001/XMLSchema#"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
SCHEMA = "http://schema.org/"
RDFS_RANGE = "http://www.w3.org/2000/01/rdf-schema#range"

PROPERTIES = [
    SCHEMA + "price",
    "https://schema.org/price",
    SCHEMA + "width",
    SCHEMA + "position",
    SCHEMA + "ratingValue",
    SCHEMA + "latitude",
    "http://purl.org/goodrelations/v1#hasCurrencyValue",
    "http://www.w3.org/2006/vcard/ns#longitude",
    "http://purl.org/dc/terms/title",
]

DATATYPES = [
    XSD + "float",
    XSD + "float",
    XSD + "double",
    XSD + "decimal",
    XSD + "integer",
    XSD + "int",
    XSD + "nonNegativeInteger",
    XSD + "string",
    "https://www.w3.org/2001/XMLSchema#float",
    SCHEMA + "Number",
]

LEXICALS = [
    "0.1", "0.5", "10", "1", "73.1", "19.99", "0.25", "-0.0", "0", "2.50",
    "1.5E2", "1e-3", "4.9E-324", "1e39", "1e-50", "3.4028235E38", "1E400",
    "16777216", "16777217", "9007199254740993", "123456789012345678901234567890",
    "INF", "-INF", "NaN", "+INF", "inf", "abc", " 12 ", "1.", ".5", "+7",
    "5e-324", "2.2250738585072014E-308", "0.000000059604644775390625",
    "1.0000001", "-12.75", "3.14159", "1e1", "1,5", "",
]

INTEGER = re.compile(r"[+-]?[0-9]+")
DECIMAL = re.compile(r"[+-]?([0-9]+\.[0-9]*|\.[0-9]+)")
EXPONENTIAL = re.compile(r"[+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)[eE][+-]?[0-9]+")
SPECIAL = {"INF", "+INF", "-INF", "NaN"}


def notation(lexical):
    s = lexical.strip(" \t\n\r")
    if s in SPECIAL:
        return "ValidInfOrNaNNotation"
    if INTEGER.fullmatch(s):
        return "ValidIntegerNotation"
    if DECIMAL.fullmatch(s):
        return "ValidDecimalNotation"
    if EXPONENTIAL.fullmatch(s):
        return "ValidExponentialNotation"
    return None


def exact(lexical):
    return Fraction(lexical.strip(" \t\n\r"))


def in_binary64(x):
    try:
        d = x.numerator / x.denominator
    except OverflowError:
        return False
    return d != float("inf") and d != float("-inf") and Fraction(d) == x


def in_binary32(x):
    if not in_binary64(x):
        return False
    d = x.numerator / x.denominator
    try:
        f = struct.unpack("<f", struct.pack("<f", d))[0]
    except OverflowError:
        return False
    return Fraction(f) == x


def clean(iri):
    if iri.startswith("https://"):
        return "http://" + iri[len("https://"):]
    return iri


def generate():
    rng = random.Random(SEED)
    statements = []
    for n in range(1, LINES + 1):
        graph = f" <http://example.org/page/{rng.randrange(20)}>" if rng.random() < 0.7 else ""
        if n in MALFORMED_AT:
            kind = MALFORMED_AT[n]
            if kind == "iri":
                raw = f"<http://example.org/item {n}> <{SCHEMA}price> \"1.5\"^^<{XSD}float>{graph} .".encode()
                statements.append(("failure", raw, "MalformedIri"))
            elif kind == "encoding":
                raw = (f"<http://example.org/item/{n}> <{SCHEMA}name> \"caf".encode()
                       + b"\xff" + f"\"{graph} .".encode())
                statements.append(("failure", raw, "BadEncoding"))
            else:
                raw = f"<http://example.org/item/{n}> <{SCHEMA}price> \"2.5\"^^<{XSD}float>{graph}".encode()
                statements.append(("failure", raw, "SyntaxError"))
            continue
        subject = f"<http://example.org/item/{n}>" if rng.random() < 0.9 else f"_:b{n}"
        roll = rng.random()
        if roll < 0.03:
            prop = rng.choice(PROPERTIES)
            dt = rng.choice(DATATYPES)
            predicate = rng.choice([RDFS_RANGE, "https://www.w3.org/2000/01/rdf-schema#range"])
            line = f"<{prop}> <{predicate}> <{dt}>{graph} ."
            statements.append(("range", line, (clean(prop), clean(dt))))
            continue
        if roll < 0.06:
            line = f"{subject} <{SCHEMA}url> <http://example.org/p/{n}>{graph} ."
            statements.append(("other", line, None))
            continue
        prop = rng.choice(PROPERTIES)
        lexical = rng.choice(LEXICALS)
        if roll < 0.12:
            dt = RDF + "langString"
            line = f"{subject} <{prop}> \"{lexical}\"@en{graph} ."
        elif roll < 0.16:
            dt = XSD + "string"
            line = f"{subject} <{prop}> \"{lexical}\"{graph} ."
        else:
            dt = rng.choice(DATATYPES)
            line = f"{subject} <{prop}> \"{lexical}\"^^<{dt}>{graph} ."
        statements.append(("literal", line, (clean(prop), clean(dt), lexical)))
    return statements


def measures(statements):
    counts = {}

    def bump(prop, dt, measure):
        key = (SOURCE, FILE, prop, dt, measure)
        counts[key] = counts.get(key, 0) + 1

    for kind, _, data in statements:
        if kind == "range":
            prop, dt = data
            bump(prop, dt, "UsedAsPropertyRange")
        elif kind == "literal":
            prop, dt, lexical = data
            bump(prop, dt, "UsedAsDatatype")
            note = notation(lexical)
            if note:
                bump(prop, dt, note)
            if note and note != "ValidInfOrNaNNotation":
                x = exact(lexical)
                if not in_binary32(x):
                    bump(prop, dt, "UnpreciseRepresentableInFloat")
                if not in_binary64(x):
                    bump(prop, dt, "UnpreciseRepresentableInDouble")
    return counts


def csv_field(value):
    if any(c in value for c in ',"\r\n'):
        return '"' + value.replace('"', '""') + '"'
    return value


def csv_text(header, rows):
    lines = [",".join(header)]
    lines += [",".join(csv_field(str(v)) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def main():
    statements = generate()
    raw_lines = []
    failures = []
    for n, (kind, line, data) in enumerate(statements, start=1):
        raw = line if isinstance(line, bytes) else line.encode()
        raw_lines.append(raw)
        if kind == "failure":
            snippet = raw.decode("utf-8", errors="replace")[:200]
            failures.append((SOURCE, FILE, n, data, snippet))
    corpus = b"".join(l + b"\n" for l in raw_lines)

    counts = measures(statements)
    rows = sorted(
        ((k[0], k[1], k[2], k[3], k[4], v) for k, v in counts.items()),
        key=lambda r: tuple(str(f).encode() for f in r[:5]),
    )
    measures_csv = csv_text(["source", "file", "property", "datatype", "measure", "count"], rows)
    failures_csv = csv_text(["source", "file", "line", "reason", "snippet"], failures)

    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / FILE).write_bytes(corpus)
    buf = io.BytesIO()
    with gzip.GzipFile(filename="", mode="wb", fileobj=buf, mtime=0) as gz:
        gz.write(corpus)
    (OUT / (FILE + ".gz")).write_bytes(buf.getvalue())
    (OUT / "measures.csv").write_text(measures_csv, encoding="utf-8", newline="\n")
    (OUT / "failures.csv").write_text(failures_csv, encoding="utf-8", newline="\n")

    # Four shards for the parallel-determinism check; two of them gzipped.
    shard_size = len(raw_lines) // 4
    for i in range(4):
        chunk = b"".join(l + b"\n" for l in raw_lines[i * shard_size:(i + 1) * shard_size])
        name = f"shard-{i}.nq"
        if i % 2:
            buf = io.BytesIO()
            with gzip.GzipFile(filename="", mode="wb", fileobj=buf, mtime=0) as gz:
                gz.write(chunk)
            (OUT / (name + ".gz")).write_bytes(buf.getvalue())
        else:
            (OUT / name).write_bytes(chunk)

    totals = {}
    for (_, _, _, _, measure), v in counts.items():
        totals[measure] = totals.get(measure, 0) + v
    kinds = {}
    for kind, _, _ in statements:
        kinds[kind] = kinds.get(kind, 0) + 1
    print("statements:", dict(sorted(kinds.items())))
    for measure in sorted(totals):
        print(f"{measure:32} {totals[measure]}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Run each CLI command once and validate its JSON output against the schema.

usage: schema_check.py HISTOMARK_BINARY SCHEMA DATA_DIR
"""
import json
import pathlib
import shutil
import subprocess
import sys
import tempfile

import jsonschema

KEY = "2b7e151628aed2a6abf7158809cf4f3c"


def main():
    exe, schema_path, data = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    schema = json.loads(schema_path.read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0

    def check(label, doc, kind):
        nonlocal failures
        errors = list(validator.iter_errors(doc))
        if doc.get("kind") != kind:
            errors.append(f"kind is {doc.get('kind')!r}, expected {kind!r}")
        print(f"{'PASS' if not errors else 'FAIL'} {label}")
        for e in errors[:5]:
            print(f"  {getattr(e, 'message', e)}")
        failures += bool(errors)

    def run(label, args, kind, ok_codes=(0,)):
        nonlocal failures
        p = subprocess.run([exe, *args], capture_output=True, text=True)
        if p.returncode not in ok_codes:
            print(f"FAIL {label}: exit {p.returncode}\n{p.stderr}")
            failures += 1
            return None
        doc = json.loads(p.stdout)
        check(label, doc, kind)
        return doc

    with tempfile.TemporaryDirectory() as tmp:
        tmp = pathlib.Path(tmp)
        cover = data / "corpus" / "camera.pgm"
        marked = tmp / "marked.png"
        attacked = tmp / "attacked.pgm"
        run("embed", ["embed", str(cover), str(marked), "--key", KEY], "embed")
        run("extract", ["extract", str(marked), "--key", KEY], "detection")
        run("attack", ["attack", str(marked), str(attacked), "--spec", "rotate:5"], "attack")
        run("extract attacked", ["extract", str(attacked), "--key", KEY, "--sidecar", f"{marked}.wmmeta"],
            "detection", ok_codes=(0, 4))
        run("psnr", ["psnr", str(cover), str(marked)], "quality")
        run("psnr identical", ["psnr", str(cover), str(cover)], "quality")

        corpus = tmp / "corpus"
        corpus.mkdir()
        shutil.copy(cover, corpus / "camera.pgm")
        (corpus / "flat.pgm").write_bytes(b"P5\n16 16\n255\n" + bytes([3]) * 256)
        prefix = tmp / "bench"
        run("bench totals", ["bench", str(corpus), "--out", str(prefix), "--key", KEY, "--no-default-suite",
                             "--attack", "crop:0.1", "--attack", "luminance_scale:1"], "bench_totals")
        check("bench report", json.loads((tmp / "bench.json").read_text()), "bench")

    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

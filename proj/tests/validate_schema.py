"""Validates CLI and HTTP portrait documents against docs/portrait.schema.json.

usage: validate_schema.py <meander-binary> <schema.json>
"""
import json
import socket
import subprocess
import sys
import time
import urllib.request

import jsonschema


def free_port():
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


def post(port, path, body):
    req = urllib.request.Request(f"http://127.0.0.1:{port}{path}", data=json.dumps(body).encode(),
                                 headers={"Content-Type": "application/json"})
    with urllib.request.urlopen(req, timeout=120) as r:
        return json.load(r)


def main():
    cli, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    presets = [line.split()[0] for line in subprocess.check_output([cli, "presets"], text=True).splitlines() if line]
    runs = [["--preset", p] for p in presets]
    runs.append(["--preset", "a2_7_a", "--seed-count", "100"])
    runs.append(["--n", "7", "--eps2", "1", "--a2", "-2,0.5", "--b1", "0.3", "--b2", "0.4"])

    failures = 0
    for args in runs:
        out = subprocess.run([cli, "portrait", "--format", "json", *args], capture_output=True, text=True)
        if out.returncode not in (0, 2):
            print(f"FAIL {args}: exit {out.returncode}: {out.stderr.strip()}")
            failures += 1
            continue
        errors = list(validator.iter_errors(json.loads(out.stdout)))
        for e in errors[:3]:
            print(f"FAIL {args}: {'/'.join(map(str, e.absolute_path))}: {e.message[:200]}")
        failures += bool(errors)
        if not errors:
            print(f"ok   {' '.join(args)}")

    port = free_port()
    srv = subprocess.Popen([cli, "serve", "--port", str(port)], stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL)
    try:
        for _ in range(100):
            try:
                urllib.request.urlopen(f"http://127.0.0.1:{port}/healthz", timeout=1).read()
                break
            except OSError:
                time.sleep(0.1)
        for body in ({"preset": "ex1_domain1"},
                     {"params": {"n": 6, "eps2": 1, "a2": [-1, 0.1], "b1": 0.06}, "render": {"orbits_per_region": 1}}):
            errors = list(validator.iter_errors(post(port, "/portrait", body)))
            for e in errors[:3]:
                print(f"FAIL http {body}: {'/'.join(map(str, e.absolute_path))}: {e.message[:200]}")
            failures += bool(errors)
            if not errors:
                print(f"ok   http {json.dumps(body)}")
    finally:
        srv.terminate()
        srv.wait(timeout=10)

    print(f"{failures} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

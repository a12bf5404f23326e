"""End-to-end checks of the spintri binary: exit codes, fixed outputs, schema conformance."""
import json
import os
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

BIN = sys.argv[1]
SCHEMAS = pathlib.Path(sys.argv[2])

registry = Registry()
schemas = {}
for p in SCHEMAS.glob("*.schema.json"):
    doc = json.loads(p.read_text())
    registry = registry.with_resource(doc["$id"], Resource.from_contents(doc))
    schemas[p.name] = doc

failures = []


def run(*args, env=None):
    e = dict(os.environ)
    e.update(env or {})
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=e)


def check(name, cond, detail=""):
    print(("ok   " if cond else "FAIL ") + name + ("" if cond else "  " + detail))
    if not cond:
        failures.append(name)


def validate(name, text, schema):
    try:
        doc = json.loads(text)
        jsonschema.Draft202012Validator(schemas[schema], registry=registry).validate(doc)
        check(name + " matches " + schema, True)
        return doc
    except Exception as exc:  # noqa: BLE001
        check(name + " matches " + schema, False, str(exc)[:300])
        return None


for name, doc in schemas.items():
    jsonschema.Draft202012Validator.check_schema(doc)

r = run("classify", "--preset", "paper-example")
check("classify exit 0", r.returncode == 0, r.stderr)
d = validate("classify", r.stdout, "classify.schema.json")
if d:
    check("classify label", d["label"] == "Generic")
    check("classify e_min", abs(d["e_min"] + 1.47328) < 1e-5, str(d["e_min"]))
    check("classify e_max", abs(d["e_max"] - 1.23498) < 1e-5, str(d["e_max"]))

r = run("compare", "--preset", "paper-example", "--span", "1T", "--tol", "1e-5")
check("compare exit 0", r.returncode == 0, r.stderr)
validate("compare", r.stdout, "compare.schema.json")

r = run("compare", "--preset", "paper-example", "--span", "1T", "--tol", "1e-16")
check("compare above tol exits 4", r.returncode == 4, str(r.returncode))

r = run("simulate", "--preset", "paper-example", "--samples", "0")
check("simulate header only", r.returncode == 0 and r.stdout == "t,s1x,s1y,s1z,s2x,s2y,s2z,s3x,s3y,s3z\n",
      repr(r.stdout))

for cmd in ("simulate", "integrate"):
    r = run(cmd, "--preset", "paper-example", "--samples", "3", "--format", "json", "--internal")
    validate(cmd, r.stdout, "trajectory.schema.json")

r = run("special", "--case", "aperiodic", "--lambda", "0.5", "--span", "3", "--samples", "3", "--format", "json")
validate("special aperiodic", r.stdout, "trajectory.schema.json")

r = run("special", "--case", "stationary-states", "--j", "1,1,1")
validate("stationary states", r.stdout, "stationary_states.schema.json")

r = run("actions", "--preset", "paper-example")
d = validate("actions", r.stdout, "actions.schema.json")
if d:
    check("actions omega2", abs(abs(d["omega2"]) - 0.0903971) < 1e-4, str(d["omega2"]))

r = run("elliptic", "--m", "0.5", "--u", "0.3", "--cubic", "4,0")
validate("elliptic", r.stdout, "elliptic.schema.json")

r = run("selftest", "--seed", "3", "--count", "2")
check("selftest exit 0", r.returncode == 0, r.stderr)
validate("selftest", r.stdout, "selftest.schema.json")

check("usage error exits 2", run("classify", "--j", "1,2").returncode == 2)
check("no subcommand exits 2", run().returncode == 2)
check("domain error exits 3", run("actions", "--j", "1,1,0.5", "--spins", "1,0,0,0,1,0,0,0,1").returncode == 3)
check("bad gram exits 3", run("classify", "--j", "1,2,3", "--gram", "0.9,0.9,-0.9").returncode == 3)

sweep = ("sweep", "--preset", "paper-example", "--i1", "--points", "12")
a = run(*sweep, env={"SPINTRI_THREADS": "1"}).stdout
b = run(*sweep, env={"SPINTRI_THREADS": "4"}).stdout
check("sweep header", a.startswith("epsilon,T,i1,dI1_deps\n"))
check("sweep ordered and thread independent", a == b and a.count("\n") == 13)
check("repeat run byte identical", run(*sweep).stdout == a)

with tempfile.TemporaryDirectory() as tmp:
    cfg = pathlib.Path(tmp) / "run.cfg"
    cfg.write_text("preset=paper-example\nspan=2T\nsamples=5\ntol=1e-7\n")
    r = run("compare", "--config", str(cfg))
    check("config file", r.returncode == 0 and json.loads(r.stdout)["samples"] == 5, r.stderr)
    r = run("compare", "--config", str(cfg), "--samples", "7")
    check("flag overrides config", r.returncode == 0 and json.loads(r.stdout)["samples"] == 7, r.stderr)
    table = pathlib.Path(tmp) / "b.csv"
    table.write_text("t,B\n0,0.1\n5,0.5\n20,0.2\n")
    r = run("compare", "--preset", "paper-example", "--field", "table:" + str(table), "--span", "3T")
    check("tabulated field", r.returncode == 0, r.stdout + r.stderr)
    out = pathlib.Path(tmp) / "o.csv"
    r = run("simulate", "--preset", "paper-example", "--samples", "2", "-o", str(out))
    check("output file", r.returncode == 0 and out.read_text().count("\n") == 3)

sys.exit(1 if failures else 0)

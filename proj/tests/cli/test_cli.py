"""Contract tests for the stochgraph command line: help text, exit codes,
JSON outputs against the schemas in schemas.json, sweep determinism."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

BIN = sys.argv[1]
HERE = os.path.dirname(os.path.abspath(__file__))
with open(os.path.join(HERE, "schemas.json")) as fh:
    SCHEMAS = json.load(fh)
DEFS = SCHEMAS.pop("$defs")
failures = []


def run(*args, code=0):
    p = subprocess.run([BIN, *args], capture_output=True, text=True)
    if p.returncode != code:
        failures.append(f"{' '.join(args)}: exit {p.returncode}, expected {code}\n{p.stderr}")
    return p.stdout


def check(schema, *args, code=0):
    out = run(*args, code=code)
    try:
        doc = json.loads(out)
        jsonschema.validate(doc, {**SCHEMAS[schema], "$defs": DEFS})
        return doc
    except (json.JSONDecodeError, jsonschema.ValidationError) as e:
        failures.append(f"{' '.join(args)}: {schema} schema: {str(e).splitlines()[0]}")
        return None


def expect(cond, what):
    if not cond:
        failures.append(what)


# --help on every command
for cmd in [[], ["cycles"], ["cycles", "enumerate"], ["cycles", "fvs"], ["cycles", "omega"], ["spectral"],
            ["spectral", "perron"], ["spectral", "charpoly"], ["spectral", "ladder"], ["classify"], ["construct"],
            ["verify"], ["sweep"], ["fit"]]:
    out = run(*cmd, "--help")
    expect("Usage" in out or "usage" in out.lower(), f"{cmd} --help has no usage text")

tmp = tempfile.mkdtemp()
tri = os.path.join(tmp, "tri.json")
with open(tri, "w") as fh:
    json.dump({"order": 3, "arcs": [[1, 2, "1/2"], [2, 3, "1/3"], [3, 1, "1"], [1, 1, "1/4"]]}, fh)

d = check("enumerate", "cycles", "enumerate", "-i", tri)
expect(d and d["count"] == 2, "triangle with loop has two cycles")
d = check("fvs", "cycles", "fvs", "-i", tri)
expect(d and d["vertices"] == [1], "fvs of triangle with loop at 1 is {1}")
check("omega", "cycles", "omega", "-i", tri, "--n", "3")
check("omega", "cycles", "omega", "--family", "example1", "--order", "6", "--n", "4")
check("perron", "spectral", "perron", "-i", tri)
d = check("charpoly", "spectral", "charpoly", "-i", tri)
expect(d and d["coefficients"] == ["1", "-1/4", "0", "-1/6"], "charpoly of triangle with loop")
check("charpoly", "--mode", "float", "spectral", "charpoly", "-i", tri, "--method", "elimination")
check("ladder", "spectral", "ladder", "--family", "example2", "--n-list", "2,10,100")
check("ladder", "spectral", "ladder", "--family", "example2", "--params", '{"prefix": ["1/2", "1/3", "1/4"]}',
      "--n-list", "2,3", "--ladder-mode", "sup_exact")

# classify: certified verdicts exit 0, numerical ones 2
d = check("classify", "classify", "--family", "example2")
expect(d and d["verdict"] == "Recurrent" and d["confidence"] == "certified", "example2 classification")
d = check("classify", "classify", "--family", "loop", code=2)
expect(d and d["verdict"] == "Recurrent" and d["confidence"] == "numerical", "loop classification")
d = check("classify", "classify", "--family", "prop1")
expect(d and d["verdict"] == "Transient", "prop1 classification")
check("classify", "classify", "-i", tri, code=2)

# construct
for name in ["example1", "example2", "prop1", "prop2", "corollary1", "theorem2-fast"]:
    check("family", "construct", name)
    if name != "prop2":
        check("digraph", "construct", name, "--emit-truncation", "7")
d = check("family", "construct", "prop2")
expect(d and len(d["construction"]["cycles"]) == 6 and d["construction"]["cycles"][1]["length"] == 64,
       "prop2 construction lengths")
emitted = os.path.join(tmp, "ex1.json")
run("--out", emitted, "construct", "example1", "--params", '{"schedule": "geometric"}', "--emit-truncation", "9")
d = check("fvs", "cycles", "fvs", "-i", emitted)
expect(d and d["vertices"] == [1], "emitted example 1 truncation has transversal {1}")

# verify: proved inequalities pass, conjecture misses do not fail the run
for suite in ["boyle-handelman", "ksv", "lemma-a1", "lemma-a2", "a1-product", "sigma-k", "zeta", "conjecture"]:
    d = check("report", "verify", suite, "--count", "20", "--seed", "7")
    expect(d and d["passed"], f"verify {suite} passed")
check("report", "--mode", "float", "verify", "ksv", "--count", "10")
run("verify", "no-such-suite", code=1)

# sweep / fit
d = check("sweep", "sweep", "--family", "example2", "--n-list", "10,100,1000")
expect(d and [r["n"] for r in d["rows"]] == [10, 100, 1000], "sweep rows in grid order")
d = check("sweep", "sweep", "--family", "example2")
expect(d is not None and d["rows"] == [], "empty grid gives an empty table")
csv1 = run("--format", "csv", "--seed", "5", "sweep", "--family", "corollary1", "--n-list", "3,8,15")
csv2 = run("--format", "csv", "--seed", "5", "sweep", "--family", "corollary1", "--n-list", "3,8,15")
expect(csv1 == csv2 and csv1.startswith("# stochgraph-sweep v1\n"), "sweep CSV is byte-identical per seed")
sweep_file = os.path.join(tmp, "sweep.csv")
run("--format", "csv", "--out", sweep_file, "sweep", "--family", "example2", "--n-list", "100,1000,10000")
d = check("fit", "fit", "-i", sweep_file, "--column", "gap_to_limit")
expect(d and -0.6 <= float(d["slope"]) <= -0.4, "fit slope of example 2 sweep")
run("sweep", "--family", "example2", "--n-list", "10,5", code=1)
run("classify", "--family", "no-such-family", code=1)

if failures:
    print("\n".join(failures))
    sys.exit(1)
print("cli contract tests passed")

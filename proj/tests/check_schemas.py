"""Runs every CLI command on the example inputs and validates reports against schemas/."""
import json
import pathlib
import subprocess
import sys

import jsonschema

cli, root = sys.argv[1], pathlib.Path(sys.argv[2])
schemas = root / "schemas"
data = root / "data"


def load(name):
    schema = json.loads((schemas / name).read_text())

    def inline(node):
        if isinstance(node, dict):
            if node.get("$ref", "").endswith(".schema.json"):
                sub = load(node["$ref"])
                sub.pop("$schema", None)
                return sub
            return {k: inline(v) for k, v in node.items()}
        if isinstance(node, list):
            return [inline(v) for v in node]
        return node

    return inline(schema)


def check(schema, args, code=0):
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    if proc.returncode != code:
        sys.exit(f"{args}: exit {proc.returncode}, expected {code}\n{proc.stderr}")
    jsonschema.validate(json.loads(proc.stdout), load(schema))
    print("ok", schema, " ".join(args))


g = lambda name: str(data / "graphs" / name)
f = lambda name: str(data / "families" / name)

for path in sorted((data / "graphs").glob("*.json")):
    jsonschema.validate(json.loads(path.read_text()), load("graph.schema.json"))
for path in sorted((data / "families").glob("*.json")):
    jsonschema.validate(json.loads(path.read_text()), load("family.schema.json"))

check("model_report.schema.json", ["model", "--graph", g("interval.json"), "--n", "2", "--sinks", "0,1"])
check("homology_report.schema.json", ["homology", "--graph", g("star3.json"), "--n", "2"])
check("oracle_compare_report.schema.json", ["oracle-compare", "--graph", g("h.json"), "--n", "2"])
check("generation_report.schema.json",
      ["generation-check", "--family", f("star.json"), "--n", "2", "--q", "1", "--degree", "4", "--size", "5"])
check("generation_report.schema.json",
      ["generation-check", "--family", f("star.json"), "--degree", "2", "--size", "5", "--max-cells", "50"], 3)
check("rep_stability_report.schema.json",
      ["rep-stability", "--family", f("star.json"), "--n", "2", "--q", "1", "--window", "5..6"])
check("tree_generators_report.schema.json", ["tree-generators", "--graph", g("h.json"), "--n", "3", "--q", "1"])
check("poly_fit_report.schema.json",
      ["poly-fit", "--family", f("star.json"), "--n", "2", "--q", "1", "--window", "3..7", "--max-degree", "3"])
check("error_report.schema.json", ["model", "--graph", g("star3.json"), "--n", "-1"], 2)
check("error_report.schema.json", ["model", "--graph", g("cycle3.json"), "--n", "3", "--max-cells", "5"], 3)

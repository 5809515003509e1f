"""Write the JSON reports of a fixed set of CLI commands to one file.

    python3 scripts/json_reports.py out.json

Running it twice must give byte-identical files.
"""

import io
import json
import sys

from antialg import cli

COMMANDS = [
    ["check-axioms", "--algebra", "asl2"],
    ["check-axioms", "--algebra", "ak1:3"],
    ["check-axioms", "--spec", "tests/fixtures/broken.alg.json"],
    ["derivations", "--algebra", "asl2"],
    ["superize", "--algebra", "asl2"],
    ["superize", "--algebra", "ah1:1"],
    ["associator", "--algebra", "ah1:1"],
    ["rep", "frep", "--window", "2"],
    ["rep", "casimir", "--window", "2"],
    ["geo", "verify-ak1", "--window", "3"],
    ["geo", "invariants", "--degree", "1"],
    ["cohomology", "--algebra", "asl2", "--module", "adjoint", "--max-degree", "2"],
    ["cocycle", "gamma", "--window", "3"],
]


def main(path):
    reports = []
    for argv in COMMANDS:
        out = io.StringIO()
        code = cli.run(argv + ["--json"], out)
        reports.append({"argv": argv, "exit": code, "report": json.loads(out.getvalue())})
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(reports, fh, indent=2, sort_keys=True)
        fh.write("\n")


if __name__ == "__main__":
    main(sys.argv[1])

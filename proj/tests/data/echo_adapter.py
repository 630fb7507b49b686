"""Minimal adapter process used by the tests: deterministic canned replies."""
import json
import sys

for line in sys.stdin:
    req = json.loads(line)
    op = req.get("op")
    tokens = req.get("tokens", [])
    if "boom" in tokens:
        reply = {"error": "asked to fail"}
    elif op == "hello":
        reply = {"dimension": 3}
    elif op == "saliency":
        t = req["target_index"]
        reply = {"scores": [1.0 / (1 + abs(i - t)) for i in range(len(tokens))]}
    elif op == "infill":
        reply = {"infills": [["and"] for _ in req["sentinel_positions"]]}
    elif op == "accept":
        reply = {"accept": len(tokens) >= 3}
    elif op == "encode":
        reply = {"vector": [float(len(tokens)), float(req["target_index"]), 1.0]}
    else:
        reply = {"error": "unknown op"}
    sys.stdout.write(json.dumps(reply) + "\n")
    sys.stdout.flush()

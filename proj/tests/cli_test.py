#!/usr/bin/env python3
"""Integration checks for the command-line binary.

Usage: cli_test.py /path/to/thetabidiff
"""
import json
import math
import subprocess
import sys
import tempfile
from pathlib import Path

BIN = Path(sys.argv[1])
FAILURES = []


def check(label, cond):
    print(("ok   " if cond else "FAIL ") + label)
    if not cond:
        FAILURES.append(label)


def run(*args, expect=0):
    proc = subprocess.run([str(BIN), *args], capture_output=True, text=True)
    if expect is not None:
        check(f"exit {expect}: {' '.join(args[:4])}", proc.returncode == expect)
    return proc


def main():
    tmp = Path(tempfile.mkdtemp(prefix="tbcli."))
    tau_i = tmp / "tau_i.json"
    tau_i.write_text(json.dumps({"g": 1, "re": [[0.0]], "im": [[1.0]]}))

    p = run("theta", "eval", "--tau", str(tau_i), "--z", "0,0")
    out = json.loads(p.stdout)
    check("theta(0; i) value", abs(out["value"]["re"] - 1.08643481121331) < 1e-11)
    check("theta eval metadata", out["meta"]["seed"] == 20240801)
    check("theta eval radius present", out["radius"] >= 1)

    p = run("theta", "eval", "--tau", str(tau_i), "--z", "0,0",
            "--char", "1/2,1/2", "--jet")
    out = json.loads(p.stdout)
    check("odd characteristic vanishes", abs(out["value"]["re"]) < 1e-11
          and abs(out["value"]["im"]) < 1e-11)
    grad = math.hypot(out["gradient"][0]["re"], out["gradient"][0]["im"])
    check("jet carries gradient", grad > 0.1)

    p = run("sot", "eval", "--tau", str(tau_i), "--u", "0", "--z", "0,0")
    out = json.loads(p.stdout)
    check("sot value at 0", abs(out["value"]["re"] - 1.0037348854877393) < 1e-11)

    p = run("sot", "gram", "--tau", str(tau_i), "--n", "48")
    out = json.loads(p.stdout)
    g = out["gram"]
    off = math.hypot(g["re"][0][1], g["im"][0][1])
    check("gram off-diagonal small", off / g["re"][0][0] < 1e-8)

    p = run("bidiff", "diff", "--tau", str(tau_i))
    out = json.loads(p.stdout)
    check("sigma - eta vanishes at tau = i", out["max_abs"] < 1e-8)

    p = run("bidiff", "v00", "--tau", str(tau_i))
    out = json.loads(p.stdout)
    check("v00 dimension 0 at g = 1", out["kernel_dimension"] == 0)

    p = run("bidiff", "gunning", "--tau", str(tau_i))
    lines = [l for l in p.stdout.splitlines() if l and not l.startswith("#")]
    check("gunning csv header", lines[0] == "a,b,parity,residual")
    check("gunning residual tiny", float(lines[1].rsplit(",", 1)[1]) < 1e-9)

    scan_csv = tmp / "scan.csv"
    run("locus", "scan", "--window", "-0.2,0.2,0.8,1.2", "--grid", "5,5",
        "--out", str(scan_csv))
    rows = [l for l in scan_csv.read_text().splitlines()
            if l and not l.startswith("#") and not l.startswith("x,y,")]
    check("scan row count", len(rows) == 25)

    # Truncate and resume: kept rows verbatim, remainder recomputed.
    kept = rows[:7]
    header = [l for l in scan_csv.read_text().splitlines()
              if l.startswith("#") or l.startswith("x,y,")]
    scan_csv.write_text("\n".join(header + kept) + "\n")
    run("locus", "scan", "--window", "-0.2,0.2,0.8,1.2", "--grid", "5,5",
        "--out", str(scan_csv), "--resume")
    rows2 = [l for l in scan_csv.read_text().splitlines()
             if l and not l.startswith("#") and not l.startswith("x,y,")]
    check("resume completes the grid", len(rows2) == 25)
    check("resume keeps finished rows", rows2[:7] == kept and rows2 == rows)

    p = run("locus", "refine", "--seed", "0.05,0.95")
    out = json.loads(p.stdout)
    check("refine lands on tau = i", abs(out["x"]) < 1e-8
          and abs(out["y"] - 1.0) < 1e-8 and out["res"] < 1e-10)

    p = run("fay", "residual", "--tau", str(tau_i), "--count", "20")
    out = json.loads(p.stdout)
    check("trisecant residual", out["max_residual"] < 1e-9)

    p = run("fay", "periods", "--tau", str(tau_i), "--p", "0.21,0.37")
    out = json.loads(p.stdout)
    check("a period", math.hypot(out["a_period"]["re"], out["a_period"]["im"]) < 1e-7)
    check("b period", abs(out["b_period"]["re"]) < 1e-6
          and abs(out["b_period"]["im"] - 2 * math.pi) < 1e-6)

    # Determinism: byte-identical repeated output.
    p1 = run("bidiff", "sigma", "--tau", str(tau_i))
    p2 = run("bidiff", "sigma", "--tau", str(tau_i))
    check("byte-identical reruns", p1.stdout == p2.stdout)

    # Config file plumbing.
    cfg = tmp / "cfg.json"
    cfg.write_text(json.dumps({"seed": 7, "eps_value": 1e-12}))
    p = run("--config", str(cfg), "theta", "eval", "--tau", str(tau_i),
            "--z", "0,0")
    out = json.loads(p.stdout)
    check("config seed propagates", out["meta"]["seed"] == 7)
    bad_cfg = tmp / "bad_cfg.json"
    bad_cfg.write_text(json.dumps({"eps_value": 1e-3}))
    p = run("--config", str(bad_cfg), "theta", "eval", "--tau", str(tau_i),
            "--z", "0,0", expect=1)
    check("invalid config names the error", "NotSupported" in p.stderr)

    # Error taxonomy: usage errors exit 2, numeric errors exit 1.
    run("--frobnicate", expect=2)
    run("theta", "eval", "--tau", str(tau_i), "--z", "junk", expect=2)
    corrupt = tmp / "corrupt.json"
    corrupt.write_text("{ not json")
    run("theta", "eval", "--tau", str(corrupt), "--z", "0,0", expect=2)
    bad_tau = tmp / "bad_tau.json"
    bad_tau.write_text(json.dumps({"g": 1, "re": [[0.0]], "im": [[-1.0]]}))
    p = run("theta", "eval", "--tau", str(bad_tau), "--z", "0,0", expect=1)
    check("numeric error names the invariant", "NotPositiveDefinite" in p.stderr)

    if FAILURES:
        print(f"{len(FAILURES)} cli checks failed")
        return 1
    print("all cli checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Recompute the bench summary from its per-run CSV and compare."""
import csv
import os
import statistics
import subprocess
import sys
import tempfile


def bench(tool, tmp, tag, extra):
    csv_path = os.path.join(tmp, tag + ".csv")
    summary_path = os.path.join(tmp, tag + ".txt")
    subprocess.run(
        [tool, "bench", "--rotating", "1-3", "--modes", "segment,hamming", "--inits", "random,tiled",
         "--runs", "12", "--seed", "7", "--csv", csv_path, "--summary", summary_path] + extra,
        check=True, stdout=subprocess.DEVNULL)
    with open(csv_path, newline="") as f:
        rows = list(csv.DictReader(f))
    with open(summary_path) as f:
        summary = f.read().splitlines()
    with open(csv_path, "rb") as f:
        raw = f.read()
    return rows, summary, raw


def close(reported, value):
    # one printed decimal, plus the CSV's own 3-decimal rounding of times
    return abs(float(reported) - value) <= 0.0506 + 1e-9 * abs(value)


def main():
    tool = sys.argv[1]
    failures = []
    with tempfile.TemporaryDirectory() as tmp:
        rows, summary, _ = bench(tool, tmp, "timed", ["--threads", "2"])
        groups = {}
        for r in rows:
            groups.setdefault((r["instance"], r["mode"], r["init"]), []).append(r)
        lines = {tuple(line.split()[:3]): line for line in summary[1:]}
        if len(lines) != len(groups):
            failures.append(f"summary has {len(lines)} groups, CSV has {len(groups)}")
        for key, runs in groups.items():
            line = lines.get(key)
            if line is None:
                failures.append(f"no summary line for {key}")
                continue
            fields = line.replace("|", " ").split()
            solved = [r for r in runs if r["solved"] == "1"]
            if fields[3] != f"{len(solved)}/{len(runs)}":
                failures.append(f"{key}: solved {fields[3]} vs {len(solved)}/{len(runs)}")
            if [int(r["seed"]) for r in runs] != [7 + i for i in range(len(runs))]:
                failures.append(f"{key}: seeds are not base+run")
            for offset, column in ((4, "time_ms"), (8, "iterations")):
                xs = [float(r[column]) for r in solved]
                if not xs:
                    continue
                want = [min(xs), max(xs), statistics.fmean(xs), statistics.pstdev(xs)]
                for name, got, value in zip(("min", "max", "avg", "sd"), fields[offset:offset + 4], want):
                    if not close(got, value):
                        failures.append(f"{key} {column} {name}: reported {got}, recomputed {value:.3f}")

        _, _, one = bench(tool, tmp, "t1", ["--threads", "1", "--no-time"])
        _, _, three = bench(tool, tmp, "t3", ["--threads", "3", "--no-time"])
        if one != three:
            failures.append("CSV differs between 1 and 3 threads")

    for f in failures:
        print("FAIL:", f)
    print("recompute_stats:", "FAIL" if failures else "PASS", f"({len(groups)} groups)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

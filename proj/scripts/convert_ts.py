#!/usr/bin/env python3
"""Convert sktime .ts archives into the long_csv layout read by the CLI.

Usage: convert_ts.py <sktime wheel or data dir> <out dir>
"""
import csv
import os
import sys
import zipfile

DATASETS = {
    "ItalyPowerDemand": "italy_power_demand.csv",
    "BasicMotions": "basic_motions.csv",
    "OSULeaf": "osu_leaf.csv",
}


def read_member(src, name):
    if os.path.isdir(src):
        with open(os.path.join(src, name), encoding="utf-8") as fh:
            return fh.read()
    with zipfile.ZipFile(src) as zf:
        return zf.read("sktime/datasets/data/" + name).decode("utf-8")


def parse_ts(text):
    header, series = {}, []
    in_data = False
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not in_data:
            if line.lower() == "@data":
                in_data = True
            elif line.startswith("@"):
                key, _, val = line[1:].partition(" ")
                header[key.lower()] = val
            continue
        parts = line.split(":")
        dims = [[float(v) for v in p.split(",")] for p in parts[:-1]]
        series.append((dims, parts[-1].strip()))
    return header, series


def main():
    if len(sys.argv) != 3:
        sys.exit(__doc__)
    src, out = sys.argv[1], sys.argv[2]
    os.makedirs(out, exist_ok=True)
    for name, fname in DATASETS.items():
        rows = []
        ndim = None
        for split in ("TRAIN", "TEST"):
            _, series = parse_ts(read_member(src, f"{name}/{name}_{split}.ts"))
            for k, (dims, label) in enumerate(series):
                ndim = len(dims) if ndim is None else ndim
                assert len(dims) == ndim
                sid = f"{split.lower()}_{k:04d}"
                for t in range(len(dims[0])):
                    rows.append([sid, t + 1] + [repr(d[t]) for d in dims] + [label])
        with open(os.path.join(out, fname), "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["series_id", "t"] + [f"x{i + 1}" for i in range(ndim)] + ["class"])
            w.writerows(rows)
        print(fname, len(rows), "rows")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Normalize the UCI datasets into the CSV + schema layout read by `swarmqp`.

Sources (all local, nothing is fetched over the network):
  iris, wine  -- the copies bundled with scikit-learn (sklearn/datasets/data)
  pima        -- pima.dat from the keel-ds wheel (KEEL mirror of the UCI file)
  thyroid     -- any local copy of UCI new-thyroid.data (label first, 5 attributes)

Output: data/<name>.csv with a header line and the label in the last column,
plus data/<name>.schema (JSON).

usage: prepare_datasets.py [--keel-dir DIR] [--thyroid FILE] [--out data]
"""
import argparse
import csv
import json
import os


def write(out_dir, name, header, rows, labels):
    path = os.path.join(out_dir, name + ".csv")
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    schema = {
        "name": name,
        "header": True,
        "attributes": len(header) - 1,
        "label_column": len(header) - 1,
        "labels": labels,
    }
    with open(os.path.join(out_dir, name + ".schema"), "w") as f:
        json.dump(schema, f, indent=2)
        f.write("\n")
    print(f"{path}: {len(rows)} rows")


def sklearn_csv(fname):
    import sklearn
    path = os.path.join(os.path.dirname(sklearn.__file__), "datasets", "data", fname)
    with open(path) as f:
        lines = list(csv.reader(f))
    # first line: n_samples, n_features, class names...
    return lines[0], lines[1:]


def iris(out_dir):
    meta, body = sklearn_csv("iris.csv")
    names = ["setosa", "versicolor", "virginica"]
    header = ["sepal_length", "sepal_width", "petal_length", "petal_width", "species"]
    rows = [r[:4] + [names[int(r[4])]] for r in body if r]
    write(out_dir, "iris", header, rows, names)


def wine(out_dir):
    meta, body = sklearn_csv("wine_data.csv")
    names = ["class_0", "class_1", "class_2"]
    header = ["alcohol", "malic_acid", "ash", "alcalinity_of_ash", "magnesium",
              "total_phenols", "flavanoids", "nonflavanoid_phenols", "proanthocyanins",
              "color_intensity", "hue", "od280_od315", "proline", "cultivar"]
    rows = [r[:13] + [names[int(r[13])]] for r in body if r]
    write(out_dir, "wine", header, rows, names)


def pima(out_dir, keel_dir):
    path = os.path.join(keel_dir, "pima.dat")
    rows = []
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("@"):
                continue
            parts = [p.strip() for p in line.split(",")]
            rows.append(parts[:8] + ["diabetic" if parts[8] == "tested_positive" else "normal"])
    header = ["pregnancies", "glucose", "blood_pressure", "skin_thickness", "insulin",
              "bmi", "pedigree", "age", "outcome"]
    write(out_dir, "pima", header, rows, ["normal", "diabetic"])


def thyroid(out_dir, path):
    names = {"1": "normal", "2": "hyper", "3": "hypo"}
    rows = []
    with open(path) as f:
        for line in f:
            parts = [p.strip() for p in line.strip().split(",")]
            if len(parts) != 6:
                continue
            rows.append(parts[1:] + [names[parts[0]]])
    header = ["t3_resin_uptake", "total_thyroxin", "total_triiodothyronine", "tsh", "tsh_delta",
              "diagnosis"]
    write(out_dir, "thyroid", header, rows, ["normal", "hyper", "hypo"])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--keel-dir", help="directory holding KEEL pima.dat")
    ap.add_argument("--thyroid", help="UCI new-thyroid.data")
    ap.add_argument("--out", default="data")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    iris(args.out)
    wine(args.out)
    if args.keel_dir:
        pima(args.out, args.keel_dir)
    if args.thyroid:
        thyroid(args.out, args.thyroid)


if __name__ == "__main__":
    main()

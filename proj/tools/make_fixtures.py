#!/usr/bin/env python3
"""Regenerates the CSV fixtures under data/.

wine and cancer are exported from scikit-learn's bundled copies of the UCI
datasets (cancer keeps only the ten 'mean' features). balance is generated
exactly from its defining rule: class = L/B/R by comparing left and right
weight*distance over the full 5^4 grid.

rice, yeast, and the car *labels* are synthetic stand-ins: this environment
cannot reach archive.ics.uci.edu, and those datasets are real measurements (or
an unpublished rule) that cannot be reconstructed offline. The stand-ins match
the real datasets' shapes (rows, features, classes, class proportions, feature
kinds) and approximate their classifier accuracy profiles. The car feature
grid itself (all 1728 attribute combinations) is exact; only its labels come
from the invented rule below. See data/README.md.

Run:  python3 tools/make_fixtures.py [--report]
"""

import argparse
import csv
import math
import os

import numpy as np

OUT_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), os.pardir, "data")


def write_csv(name, header, rows):
    path = os.path.join(OUT_DIR, name)
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")


def fmt(x):
    return repr(float(x))


def make_wine():
    from sklearn.datasets import load_wine

    wine = load_wine()
    header = [n.replace(",", "_") for n in wine.feature_names] + ["class"]
    rows = [[fmt(v) for v in row] + [f"cultivar_{t + 1}"] for row, t in zip(wine.data, wine.target)]
    write_csv("wine.csv", header, rows)


def make_cancer():
    from sklearn.datasets import load_breast_cancer

    cancer = load_breast_cancer()
    keep = 10  # the 'mean' block comes first
    header = [n.replace(" ", "_") for n in cancer.feature_names[:keep]] + ["class"]
    labels = ["malignant", "benign"]
    rows = [
        [fmt(v) for v in row[:keep]] + [labels[t]]
        for row, t in zip(cancer.data, cancer.target)
    ]
    write_csv("cancer.csv", header, rows)


def make_balance():
    header = ["left_weight", "left_distance", "right_weight", "right_distance", "class"]
    rows = []
    for lw in range(1, 6):
        for ld in range(1, 6):
            for rw in range(1, 6):
                for rd in range(1, 6):
                    left, right = lw * ld, rw * rd
                    label = "B" if left == right else ("L" if left > right else "R")
                    rows.append([lw, ld, rw, rd, label])
    write_csv("balance.csv", header, rows)


def make_car():
    # Exact attribute grid; synthetic labels from a hierarchical rule shaped
    # like the usual price/comfort/safety story, tuned so the class balance
    # sits near 70/22/4/4 percent.
    buying_vals = ["vhigh", "high", "med", "low"]
    maint_vals = ["vhigh", "high", "med", "low"]
    doors_vals = ["2", "3", "4", "5more"]
    persons_vals = ["2", "4", "more"]
    lug_vals = ["small", "med", "big"]
    safety_vals = ["low", "med", "high"]

    price_u = {"vhigh": 0, "high": 1, "med": 2, "low": 3}
    doors_u = {"2": 1, "3": 2, "4": 3, "5more": 3}
    persons_u = {"2": 0, "4": 2, "more": 2}
    lug_u = {"small": 1, "med": 2, "big": 3}
    safety_u = {"low": 0, "med": 2, "high": 3}

    def label(buying, maint, doors, persons, lug, safety):
        if persons == "2" or safety == "low":
            return "unacc"
        price = price_u[buying] + price_u[maint]          # 0..6
        comfort = doors_u[doors] + persons_u[persons] + lug_u[lug]  # 4..8
        score = price + comfort + 2 * safety_u[safety]     # 8..20
        if price <= 1 or score < 13:
            return "unacc"
        if safety == "high" and score >= 17 and price >= 4:
            return "vgood"
        if score >= 16 and price >= 4:
            return "good"
        return "acc"

    header = ["buying", "maint", "doors", "persons", "lug_boot", "safety", "class"]
    rows = []
    for b in buying_vals:
        for m in maint_vals:
            for d in doors_vals:
                for p in persons_vals:
                    for l in lug_vals:
                        for s in safety_vals:
                            rows.append([b, m, d, p, l, s, label(b, m, d, p, l, s)])
    write_csv("car.csv", header, rows)


def make_rice(rng):
    # Two grain varieties driven by a latent size factor; the larger variety
    # is Cammeo (1630 rows), the smaller Osmancik (2180 rows).
    header = [
        "area", "perimeter", "major_axis_length", "minor_axis_length",
        "eccentricity", "convex_area", "extent", "class",
    ]
    # Like the real grain measurements, every feature is close to a function
    # of one latent size factor, so the original feature space is strongly
    # correlated (|corr| ~ 0.95 among the size features).
    specs = {
        "Cammeo": dict(n=1630, major=232.0, major_sd=11.0, minor=79.0, minor_sd=3.6, extent=0.59),
        "Osmancik": dict(n=2180, major=212.0, major_sd=8.8, minor=70.0, minor_sd=3.4, extent=0.63),
    }
    rows = []
    for name, spec in specs.items():
        n = spec["n"]
        z = rng.standard_normal(n)  # shared size factor
        major = spec["major"] + spec["major_sd"] * (0.97 * z + 0.24 * rng.standard_normal(n))
        minor = spec["minor"] + spec["minor_sd"] * (0.72 * z + 0.69 * rng.standard_normal(n))
        minor = np.minimum(minor, 0.92 * major)
        fill = rng.normal(0.80, 0.010, n)
        area = math.pi / 4.0 * major * minor * fill
        h = ((major - minor) / (major + minor)) ** 2
        perimeter = (
            math.pi * (major + minor) / 2.0 * (1 + 3 * h / (10 + np.sqrt(4 - 3 * h)))
            * rng.normal(1.01, 0.003, n)
        )
        eccentricity = np.sqrt(1.0 - (minor / major) ** 2)
        convex_area = area * (1.0 + np.abs(rng.normal(0.012, 0.003, n)))
        extent = rng.normal(spec["extent"], 0.035, n) - 0.0025 * (major - 220.0)
        for i in range(n):
            rows.append([
                fmt(area[i]), fmt(perimeter[i]), fmt(major[i]), fmt(minor[i]),
                fmt(eccentricity[i]), fmt(convex_area[i]), fmt(extent[i]), name,
            ])
    order = rng.permutation(len(rows))
    write_csv("rice.csv", header, [rows[i] for i in order])


def make_yeast(rng):
    # Ten heavily overlapping localization classes with the real datasets'
    # class counts; two near-constant marker features mimic erl/pox.
    header = ["mcg", "gvh", "alm", "mit", "erl", "pox", "vac", "nuc", "class"]
    #          mcg   gvh   alm   mit   vac   nuc
    classes = [
        ("CYT", 463, (0.48, 0.47, 0.52, 0.19, 0.51, 0.25)),
        ("NUC", 429, (0.49, 0.49, 0.50, 0.20, 0.51, 0.33)),
        ("MIT", 244, (0.52, 0.53, 0.47, 0.45, 0.50, 0.23)),
        ("ME3", 163, (0.43, 0.44, 0.63, 0.17, 0.52, 0.26)),
        ("ME2", 51, (0.55, 0.53, 0.59, 0.25, 0.53, 0.24)),
        ("ME1", 44, (0.68, 0.66, 0.56, 0.26, 0.53, 0.23)),
        ("EXC", 35, (0.64, 0.70, 0.48, 0.22, 0.51, 0.22)),
        ("VAC", 30, (0.52, 0.51, 0.56, 0.23, 0.56, 0.24)),
        ("POX", 20, (0.51, 0.49, 0.54, 0.22, 0.50, 0.25)),
        ("ERL", 5, (0.55, 0.52, 0.55, 0.26, 0.58, 0.26)),
    ]
    rows = []
    for name, count, means in classes:
        base = rng.normal(loc=means, scale=0.085, size=(count, 6))
        base = np.clip(base, 0.0, 1.0)
        erl = np.full(count, 0.5)
        pox = np.zeros(count)
        if name == "ERL":
            erl[:] = 1.0
        if name == "POX":
            pox[:] = np.where(rng.random(count) < 0.75, 0.83, 0.5)
        for i in range(count):
            rows.append([
                fmt(base[i, 0]), fmt(base[i, 1]), fmt(base[i, 2]), fmt(base[i, 3]),
                fmt(erl[i]), fmt(pox[i]), fmt(base[i, 4]), fmt(base[i, 5]), name,
            ])
    order = rng.permutation(len(rows))
    write_csv("yeast.csv", header, [rows[i] for i in order])


def report():
    """Accuracy profile of the generated fixtures (tuning aid)."""
    import pandas as pd
    from sklearn.model_selection import train_test_split
    from sklearn.neighbors import KNeighborsClassifier
    from sklearn.svm import SVC
    from sklearn.tree import DecisionTreeClassifier

    for name in ["wine", "rice", "yeast", "car", "cancer", "balance"]:
        frame = pd.read_csv(os.path.join(OUT_DIR, f"{name}.csv"))
        y = frame["class"].astype(str)
        X = frame.drop(columns=["class"])
        for col in X.columns:
            if X[col].dtype == object:
                X[col] = X[col].astype("category").cat.codes
        scores = {"DT": [], "SVM": [], "KNN": []}
        for seed in range(10):
            xtr, xte, ytr, yte = train_test_split(X, y, test_size=0.2, random_state=seed)
            for key, model in [
                ("DT", DecisionTreeClassifier(max_depth=2, random_state=0)),
                ("SVM", SVC()),
                ("KNN", KNeighborsClassifier()),
            ]:
                model.fit(xtr, ytr)
                scores[key].append(model.score(xte, yte))
        print(name, {k: round(float(np.mean(v)), 3) for k, v in scores.items()},
              dict(y.value_counts()))


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--report", action="store_true", help="print fixture accuracy profiles")
    args = parser.parse_args()

    os.makedirs(OUT_DIR, exist_ok=True)
    rng = np.random.default_rng(20230817)
    make_wine()
    make_cancer()
    make_balance()
    make_car()
    make_rice(rng)
    make_yeast(rng)
    if args.report:
        report()


if __name__ == "__main__":
    main()

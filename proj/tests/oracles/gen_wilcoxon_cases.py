#!/usr/bin/env python3
"""Frozen rank-sum test cases.

p_asymptotic: scipy.stats.mannwhitneyu, two-sided, normal approximation with
continuity correction and tie correction (the formula the library uses).
p_exact: full enumeration over C(na+nb, na) label assignments with midranks
held fixed (handles ties; scipy's exact mode does not).

Output rows: na,nb,a...,b...,p_asymptotic,p_exact
"""
import csv
import itertools
import os
import random

from scipy import stats

OUT = os.path.join(os.path.dirname(__file__), "..", "data", "wilcoxon_cases.csv")


def midranks(pooled):
    order = sorted(range(len(pooled)), key=lambda i: pooled[i])
    ranks = [0.0] * len(pooled)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and pooled[order[j + 1]] == pooled[order[i]]:
            j += 1
        avg = (i + j) / 2.0 + 1.0
        for t in range(i, j + 1):
            ranks[order[t]] = avg
        i = j + 1
    return ranks


def exact_p(a, b):
    pooled = list(a) + list(b)
    ranks = midranks(pooled)
    na = len(a)
    w_obs = sum(ranks[:na])
    eps = 1e-9
    total = le = ge = 0
    for combo in itertools.combinations(range(len(pooled)), na):
        w = sum(ranks[i] for i in combo)
        total += 1
        if w <= w_obs + eps:
            le += 1
        if w >= w_obs - eps:
            ge += 1
    return min(1.0, 2.0 * min(le / total, ge / total))


def main():
    rng = random.Random(13579)
    rows = []

    def add(a, b, with_exact=True):
        res = stats.mannwhitneyu(a, b, alternative="two-sided", method="asymptotic",
                                 use_continuity=True)
        pe = exact_p(a, b) if with_exact else float("nan")
        rows.append([len(a), len(b)] + [repr(float(v)) for v in a]
                    + [repr(float(v)) for v in b]
                    + [repr(float(res.pvalue)), repr(float(pe))])

    # pinned: spec-style tiny case
    add([1.0, 2.0], [3.0, 4.0])
    # identical samples
    add([5.0, 5.0, 5.0], [5.0, 5.0, 5.0])
    # full separation
    add([float(v) for v in range(1, 11)], [float(v) for v in range(101, 111)])

    for _ in range(40):
        na = rng.randint(2, 10)
        nb = rng.randint(2, 10)
        if rng.random() < 0.5:
            # continuous-ish values
            a = [round(rng.gauss(0.0, 1.0), 3) for _ in range(na)]
            b = [round(rng.gauss(0.4, 1.0), 3) for _ in range(nb)]
        else:
            # heavy ties from a small grid
            a = [float(rng.randint(0, 4)) for _ in range(na)]
            b = [float(rng.randint(1, 5)) for _ in range(nb)]
        add(a, b)

    # two large-sample cases (no exact value; enumeration too big)
    a = [round(rng.gauss(0.0, 1.0), 3) for _ in range(31)]
    b = [round(rng.gauss(0.5, 1.0), 3) for _ in range(31)]
    add(a, b, with_exact=False)
    a = [float(rng.randint(0, 6)) for _ in range(31)]
    b = [float(rng.randint(0, 6)) for _ in range(31)]
    add(a, b, with_exact=False)

    with open(OUT, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["na", "nb", "values"])
        w.writerows(rows)
    print(f"wrote {len(rows)} cases to {OUT}")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Writes data/fyp_synthetic.csv: a SYNTHETIC dataset with the shape and
rough magnitudes of a 50-year, two-sector shared-input panel (three shared
inputs, one value-added output per sector). Not real statistics."""
import csv
import math
import random
import sys

rng = random.Random(20260101)
rows = []
for i, year in enumerate(range(1966, 2016)):
    s = i / 49.0
    population = 7.354e8 * (1.0 + 0.86 * s ** 0.9) * rng.uniform(0.99, 1.01)
    gdp_pc = 91.47 * math.exp(4.47 * s ** 1.6) * rng.uniform(0.93, 1.07)
    gfc = 7.82e9 * math.exp(5.29 * s ** 1.5) * rng.uniform(0.9, 1.1)
    industry = 2.2e10 * math.exp(5.33 * s ** 1.4) * rng.uniform(0.85, 1.15)
    agriculture = 2.85e10 * math.exp(3.53 * s ** 1.2) * rng.uniform(0.85, 1.15)
    rows.append([year, f"{population:.0f}", f"{gdp_pc:.6f}", f"{gfc:.0f}",
                 f"{industry:.0f}", f"{agriculture:.0f}"])

out = sys.argv[1] if len(sys.argv) > 1 else "data/fyp_synthetic.csv"
with open(out, "w", newline="") as f:
    w = csv.writer(f, lineterminator="\n")
    w.writerow(["Year", "Population", "GDPperCapita", "GFC", "IndustryVA",
                "AgricultureVA"])
    w.writerows(rows)

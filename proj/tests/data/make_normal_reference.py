#!/usr/bin/env python3
"""Regenerates normal_reference.csv.

Each row is (p, z) with z = Phi^{-1}(p) for the standard normal distribution,
where p is first rounded to the nearest IEEE-754 double and z is then computed
from that exact double at 60 decimal digits with mpmath. Both columns are
printed with 18 significant digits, enough to recover the nearest double
exactly. The table is frozen test data; rerun this script only to extend it.
"""

from mpmath import mp, mpf, sqrt, ln, pi, erfc, exp

mp.dps = 60

P_VALUES = [
    "1e-300", "1e-250", "1e-200", "1e-150", "1e-100", "1e-80", "1e-60",
    "1e-50", "1e-40", "1e-30", "1e-25", "1e-20", "1e-16", "1e-14", "1e-12",
    "1e-10", "1e-9", "1e-8", "1e-7", "1e-6", "1e-5", "1e-4", "5e-4", "1e-3",
    "2e-3", "5e-3", "0.01", "0.02", "0.025", "0.05", "0.075", "0.1", "0.15",
    "0.2", "0.25", "0.3", "0.35", "0.4", "0.45", "0.475", "0.5", "0.525",
    "0.55", "0.6", "0.65", "0.7", "0.75", "0.8", "0.85", "0.9", "0.925",
    "0.95", "0.975", "0.99", "0.995", "0.999", "0.9999", "0.99999",
    "0.999999", "0.99999999",
]


def upper_tail(z):
    return erfc(z / sqrt(2)) / 2


def phi(z):
    return exp(-z * z / 2) / sqrt(2 * pi)


def phi_inv(p):
    """Newton iteration on ln Phi(z) = ln p, real arithmetic throughout."""
    if p == mpf("0.5"):
        return mpf(0)
    if p > mpf("0.5"):
        return -phi_inv(1 - p)
    target = ln(p)
    z2 = -2 * target - ln(-4 * pi * target) if p < mpf("0.05") else mpf("0.25")
    z = -sqrt(z2)
    for _ in range(60):
        cdf = upper_tail(-z)
        step = (ln(cdf) - target) * cdf / phi(z)
        z -= step
        if abs(step) < mpf("1e-55") * max(1, abs(z)):
            break
    return z


def main():
    rows = []
    for text in P_VALUES:
        p = mpf(float(text))  # exact double
        z = phi_inv(p)
        rows.append((mp.nstr(p, 18), mp.nstr(z, 18)))
    # near-one tail values that are not representable as short decimals
    for tail in ["1e-10", "1e-12", "1e-14", "1e-16"]:
        p = mpf(1 - float(tail))  # exact double of 1 - tail
        z = phi_inv(p)
        rows.append((mp.nstr(p, 18), mp.nstr(z, 18)))
    with open("normal_reference.csv", "w") as out:
        out.write("p,z\n")
        for p, z in rows:
            out.write(f"{p},{z}\n")
    print(f"wrote {len(rows)} rows")


if __name__ == "__main__":
    main()

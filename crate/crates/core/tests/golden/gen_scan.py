"""Independent generator for the region-scan goldens.

Classifies grid points with exact fractions and writes the CSV for step 1/10
plus the SHA-256 of the CSV for step 1/200.
"""
import hashlib
from fractions import Fraction as F


def label(l, c):
    if not (0 < l < 1) or c < l or c > 2 * l or c + l >= 1:
        return "invalid"
    if (1 - l) ** 2 > c:
        return "necessary_fails"
    if l * l - 3 * l + 1 <= 0:
        return "brown"
    if c * (1 - l) <= l * l * (1 - l) + l:
        return "gray"
    if (c - l * l) * (1 - l) <= c * c:
        return "orange"
    return "blue"


def show(x):
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def csv(n):
    rows = ["lambda,c,label"]
    for i in range(1, n):
        for j in range(1, n):
            l, c = F(i, n), F(j, n)
            rows.append(f"{show(l)},{show(c)},{label(l, c)}")
    return "\n".join(rows) + "\n"


if __name__ == "__main__":
    with open("scan_step_10.csv", "w") as f:
        f.write(csv(10))
    with open("scan_step_200.sha256", "w") as f:
        f.write(hashlib.sha256(csv(200).encode()).hexdigest() + "\n")

#!/usr/bin/env python3
"""Regenerates the synthetic input files under data/.

Everything is deterministic: rerunning produces byte-identical files.
"""

import argparse
import math
import random
from pathlib import Path


def gdp(path: Path) -> None:
    # Real GDP per capita growing 2% a year, 15000 in 1962.
    lines = ["# synthetic real GDP per capita, 2% annual growth", "year,value"]
    for year in range(1887, 2013):
        lines.append(f"{year},{15000 * 1.02 ** (year - 1962):.6f}")
    path.write_text("\n".join(lines) + "\n")


def historical(path: Path) -> None:
    # Older series in different units with slower growth, for splicing at 1929.
    lines = ["# synthetic historical GDP per capita (different price base)", "year,value"]
    for year in range(1870, 1951):
        lines.append(f"{year},{4200 * 1.015 ** (year - 1929):.6f}")
    path.write_text("\n".join(lines) + "\n")


def population(path: Path) -> None:
    lines = ["# synthetic population: total and persons aged 15+", "year,total,working_age"]
    for year in range(1887, 2013):
        total = 60e6 * 1.012 ** (year - 1887)
        share = 0.62 + 0.16 * (year - 1887) / (2012 - 1887)
        lines.append(f"{year},{total:.0f},{total * share:.0f}")
    path.write_text("\n".join(lines) + "\n")


def microdata(path: Path) -> None:
    rng = random.Random(1962)
    lines = ["# synthetic survey extract: one row per respondent", "year,age,income,gender,race,weight"]
    for year in (1962, 1987, 2012):
        scale = 15000 * 1.02 ** (year - 1962)
        peak = 40 + 0.25 * (year - 1962)
        for _ in range(1500):
            age = rng.randint(15, 90)
            gender = rng.choice("MF")
            race = rng.choice((100, 100, 100, 200))
            profile = math.exp(-((age - peak) / 18.0) ** 2)
            level = scale * (0.15 + profile) * (0.6 if gender == "F" else 1.0) * (0.8 if race == 200 else 1.0)
            income = level * math.exp(rng.gauss(0.0, 0.5))
            weight = rng.uniform(500, 1500)
            lines.append(f"{year},{age},{income:.2f},{gender},{race},{weight:.1f}")
    path.write_text("\n".join(lines) + "\n")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    gdp(args.out / "gdp.csv")
    historical(args.out / "gdp_historical.csv")
    population(args.out / "population.csv")
    microdata(args.out / "microdata.csv")


if __name__ == "__main__":
    main()

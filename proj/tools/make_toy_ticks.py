"""Generates the bundled two-day toy tick files used by the golden test."""

import random
import sys
from pathlib import Path

OPEN_S = 9 * 3600
CLOSE_S = 11 * 3600


def day_rows(seed):
    rng = random.Random(seed)
    rows = []
    t = OPEN_S - 120.0
    while t < CLOSE_S + 60:
        t += rng.expovariate(1 / 3.0)
        side = rng.choice("BA")
        level = rng.randint(1, 2)
        mid = 100.0 + 0.25 * rng.randint(-4, 4)
        price = mid - 0.25 * level if side == "B" else mid + 0.25 * level
        volume = int(10 * rng.paretovariate(1.7))
        rows.append((int(t * 1e9), side, level, f"{price:.2f}", volume))
    return rows


def main(out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for seed, day in ((1, "2010-03-01"), (2, "2010-03-02")):
        rows = day_rows(seed)
        lines = ["timestamp_ns,side,level,price,volume"]
        lines += [f"{t},{s},{l},{p},{v}" for t, s, l, p, v in rows]
        # One malformed row exercises the skip report.
        lines.insert(len(lines) // 2, f"{rows[len(rows) // 2][0]},B,7,100.00,5")
        (out / f"{day}.csv").write_text("\n".join(lines) + "\n", newline="\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data/ticks/TOY")

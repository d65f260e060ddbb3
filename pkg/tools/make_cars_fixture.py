"""Regenerate src/confluentpcp/data/cars.csv.

Plausible auto data (392 rows, 7 numeric columns) with every column's min and
max pinned by hand-written rows, so tests can rely on exact ranges:
mpg [9.0, 46.6], cylinders [3, 8], displacement [68, 455], horsepower
[46, 230], weight [1613, 5140], acceleration [8.0, 24.8], year [70, 82].
Fixed seed; rerunning reproduces the committed file byte for byte.
"""

from __future__ import annotations

import pathlib

import numpy as np

OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "confluentpcp" / "data" / "cars.csv"

# mpg, cylinders, displacement, horsepower, weight, acceleration, year
PINNED = [
    (9.0, 8, 455.0, 225, 4951, 11.0, 73),
    (46.6, 4, 86.0, 65, 2110, 17.9, 80),
    (18.0, 3, 70.0, 97, 2330, 13.5, 72),
    (14.0, 8, 440.0, 230, 4312, 8.5, 70),
    (26.0, 4, 97.0, 46, 1835, 20.5, 70),
    (35.1, 4, 81.0, 60, 1613, 19.4, 81),
    (13.0, 8, 400.0, 175, 5140, 12.0, 71),
    (16.5, 8, 350.0, 180, 4380, 8.0, 76),
    (27.2, 4, 141.0, 71, 3190, 24.8, 79),
    (29.0, 4, 68.0, 49, 1867, 19.5, 73),
    (31.0, 4, 119.0, 82, 2720, 19.4, 82),
]

N = 392


def main() -> None:
    rng = np.random.default_rng(392)
    rows = list(PINNED)
    need = N - len(rows)

    cyl = rng.choice([4, 5, 6, 8], size=need, p=[0.55, 0.03, 0.22, 0.20])
    disp_mu = {4: 110.0, 5: 131.0, 6: 225.0, 8: 350.0}
    disp_sd = {4: 22.0, 5: 12.0, 6: 28.0, 8: 45.0}
    disp = np.array([rng.normal(disp_mu[c], disp_sd[c]) for c in cyl])
    disp = np.clip(disp, 69.0, 454.0)
    hp = np.clip(disp * 0.45 + rng.normal(10.0, 12.0, need), 47, 229)
    weight = np.clip(1600.0 + disp * 6.2 + rng.normal(0.0, 260.0, need), 1614, 5139)
    year = rng.integers(70, 83, size=need)
    mpg = np.clip(
        46.0 - 0.0078 * weight + 0.45 * (year - 76) + rng.normal(0.0, 2.4, need), 9.1, 46.5
    )
    accel = np.clip(28.0 - 0.075 * hp + rng.normal(0.0, 1.5, need), 8.1, 24.7)

    for i in range(need):
        rows.append(
            (
                round(float(mpg[i]), 1),
                int(cyl[i]),
                round(float(disp[i]), 1),
                int(round(float(hp[i]))),
                int(round(float(weight[i]))),
                round(float(accel[i]), 1),
                int(year[i]),
            )
        )

    order = rng.permutation(len(rows))
    lines = ["mpg,cylinders,displacement,horsepower,weight,acceleration,year"]
    for i in order:
        m, c, d, h, w, a, y = rows[i]
        lines.append(f"{m:.1f},{c},{d:.1f},{h},{w},{a:.1f},{y}")

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text("\n".join(lines) + "\n")
    print(f"wrote {OUT} ({len(rows)} rows)")


if __name__ == "__main__":
    main()

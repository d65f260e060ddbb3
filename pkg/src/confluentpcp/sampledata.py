"""Bundled sample data: a committed cars table and a generated occupancy table.

The occupancy CSV mirrors the shape of the UCI office-occupancy data (20560
rows, 7 fields, five numeric sensor attributes); the real file is not
redistributable here, so a fixed-seed generator produces a stand-in with the
same schema, no missing values, and a few deliberately rare sensor
combinations so anomaly rendering has something to show.  Output is
byte-identical across runs.
"""

from __future__ import annotations

import importlib.resources

import numpy as np

from .ingest import IngestOptions, parse_table
from .model import Dataset

OCCUPANCY_ROWS = 20560
_OCCUPANCY_SEED = 20560
# night rows with the lights on while unoccupied; rare enough to stay under
# any sane anomaly threshold, frequent enough to survive binning
_ANOMALY_ROWS = 25

SAMPLES = ("cars", "occupancy")


def cars_csv_bytes() -> bytes:
    return importlib.resources.files("confluentpcp").joinpath("data/cars.csv").read_bytes()


def cars_dataset() -> Dataset:
    return parse_table(cars_csv_bytes(), name="cars")


def occupancy_csv_bytes() -> bytes:
    """Generate the occupancy stand-in CSV; same bytes every call."""
    n = OCCUPANCY_ROWS
    rng = np.random.default_rng(_OCCUPANCY_SEED)
    minute = np.arange(n)  # one sample per minute from 2015-02-04 00:00
    day = minute // 1440
    hour = (minute % 1440) // 60
    weekday = (3 + day) % 7  # 2015-02-04 was a Wednesday
    workhour = (hour >= 8) & (hour < 18) & (weekday < 5)

    occupied = workhour & (rng.random(n) < 0.85)
    occupied |= (~workhour) & (rng.random(n) < 0.01)

    t_diurnal = 1.8 * np.sin(2 * np.pi * (minute % 1440) / 1440.0 - 2.1)
    temperature = 20.6 + t_diurnal + 0.9 * occupied + rng.normal(0.0, 0.25, n)
    humidity = 27.0 + 5.5 * np.sin(2 * np.pi * minute / (1440.0 * 7.0)) + rng.normal(0.0, 1.4, n)
    daylight = np.clip(np.sin(2 * np.pi * (hour - 6) / 24.0), 0.0, None)
    light = np.where(
        occupied,
        rng.normal(470.0, 110.0, n),
        80.0 * daylight + rng.normal(15.0, 12.0, n),
    )
    light = np.clip(light, 0.0, None)
    co2 = 445.0 + 560.0 * occupied + rng.normal(0.0, 70.0, n)
    co2 = np.clip(co2, 395.0, None)

    night = hour < 6
    anomaly_pool = np.flatnonzero(night & ~occupied)
    anomaly_idx = rng.choice(anomaly_pool, size=_ANOMALY_ROWS, replace=False)
    light[anomaly_idx] = rng.normal(620.0, 30.0, _ANOMALY_ROWS)

    humidity_ratio = humidity / 100.0 * 0.0046 * (1.0 + 0.062 * (temperature - 20.0))

    month_day = day + 4  # stays within February
    lines = ["date,Temperature,Humidity,Light,CO2,HumidityRatio,Occupancy"]
    occ_label = np.where(occupied, "yes", "no")
    for i in range(n):
        lines.append(
            f'"2015-02-{month_day[i]:02d}",{temperature[i]:.2f},{humidity[i]:.2f},'
            f"{light[i]:.1f},{co2[i]:.1f},{humidity_ratio[i]:.6f},{occ_label[i]}"
        )
    return ("\n".join(lines) + "\n").encode("ascii")


def occupancy_dataset() -> Dataset:
    return parse_table(occupancy_csv_bytes(), IngestOptions(), name="occupancy")


def sample_csv_bytes(name: str) -> bytes:
    if name == "cars":
        return cars_csv_bytes()
    if name == "occupancy":
        return occupancy_csv_bytes()
    raise KeyError(f"unknown sample {name!r}; available: {', '.join(SAMPLES)}")

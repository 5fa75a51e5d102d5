#!/usr/bin/env python3
"""Regenerate the bundled data fixtures under data/.

All fixtures are synthetic but deterministic (fixed numpy seeds), so the
repository never depends on external datasets. Shapes and magnitudes are
chosen to resemble the real-world series they stand in for:

  - demand_vn_2023_30min.csv : 365 days of 30-minute grid load, GW-scale
  - wind/cluster_<k>.csv     : hourly capacity factors for 7 wind clusters
  - wind/clusters.csv        : installed-MW manifest for the clusters
  - prices_it_hourly.csv     : 456 days of hourly day-ahead prices, EUR/kWh
"""

import os
import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "data")

# hour-of-day base load in MW (min ~4 a.m., midday plateau, evening peak)
DEMAND_BASE = np.array([
    28500, 27800, 27200, 26800, 26500, 27000,
    28500, 30500, 32000, 33000, 33800, 34300,
    34000, 34500, 35000, 34600, 34000, 33200,
    32500, 33000, 32500, 31500, 30300, 29200,
], dtype=float)


def write_demand():
    rng = np.random.default_rng(20230101)
    lines = ["timestamp,power_mw"]
    base = datetime_days()
    for day in range(365):
        season = 1.0 + 0.04 * np.sin(2 * np.pi * (day - 30) / 365.0)
        noise = rng.normal(0.0, 0.012, size=48)
        for slot in range(48):
            hour = slot // 2
            val = DEMAND_BASE[hour] * season * (1.0 + noise[slot])
            hh = slot % 2 * 30
            lines.append(f"{base[day]} {hour:02d}:{hh:02d},{val:.4f}")
    path = os.path.join(DATA, "demand_vn_2023_30min.csv")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")
    print("wrote", path)


def datetime_days():
    import datetime
    d0 = datetime.date(2023, 1, 1)
    return [(d0 + datetime.timedelta(days=k)).isoformat() for k in range(800)]


def write_wind():
    rng = np.random.default_rng(777)
    os.makedirs(os.path.join(DATA, "wind"), exist_ok=True)
    base = datetime_days()
    capacities = [412.0, 186.0, 640.0, 95.0, 310.0, 528.0, 221.0]
    man = ["cluster_id,installed_mw"]
    for c, cap in enumerate(capacities):
        phase = 2 * np.pi * c / 7.0
        lines = ["timestamp,capacity_factor"]
        for day in range(14):
            drift = rng.normal(0.0, 0.03)
            for h in range(24):
                cf = 0.28 + 0.14 * np.sin(2 * np.pi * (h - 2) / 24.0 + phase) + drift \
                    + 0.02 * np.sin(2 * np.pi * day / 14.0)
                cf = min(max(cf, 0.02), 0.95)
                lines.append(f"{base[day]} {h:02d}:00,{cf:.5f}")
        path = os.path.join(DATA, "wind", f"cluster_{c}.csv")
        with open(path, "w") as f:
            f.write("\n".join(lines) + "\n")
        man.append(f"{c},{cap:.1f}")
        print("wrote", path)
    path = os.path.join(DATA, "wind", "clusters.csv")
    with open(path, "w") as f:
        f.write("\n".join(man) + "\n")
    print("wrote", path)


# hour-of-day day-ahead price shape, EUR/kWh (duck curve: midday dip,
# morning and evening peaks)
PRICE_BASE = np.array([
    0.135, 0.128, 0.122, 0.118, 0.116, 0.120,
    0.135, 0.155, 0.160, 0.140, 0.110, 0.090,
    0.080, 0.085, 0.100, 0.125, 0.150, 0.170,
    0.185, 0.180, 0.165, 0.155, 0.148, 0.140,
], dtype=float)


def write_prices():
    rng = np.random.default_rng(456456)
    base = datetime_days()
    lines = ["timestamp,price"]
    for day in range(456):
        season = 1.0 + 0.10 * np.sin(2 * np.pi * (day + 15) / 365.0)
        level = rng.normal(0.0, 0.008)
        noise = rng.normal(0.0, 0.006, size=24)
        for h in range(24):
            p = PRICE_BASE[h] * season + level + noise[h]
            p = max(p, 0.005)
            lines.append(f"{base[day]} {h:02d}:00,{p:.6f}")
    path = os.path.join(DATA, "prices_it_hourly.csv")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")
    print("wrote", path)


if __name__ == "__main__":
    os.makedirs(DATA, exist_ok=True)
    write_demand()
    write_wind()
    write_prices()

#!/usr/bin/env python3
"""Regenerates the fixture systems under data/.

    desk/      four-node, two-country system (three CH nodes, one DE node),
               48 hours, with gas, biomass, PV, wind and battery candidates
    catalog/   single CH node carrying the full candidate catalog
    tiny/      two nodes, one line, one thermal unit

Everything is computed from closed-form daily shapes, so the output is
identical on every run.
"""

import argparse
import csv
import json
import math
from pathlib import Path

HOURS_PER_YEAR = 8760


def fmt(v):
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, str):
        return v
    if v == 0:
        return "0"
    return format(float(v), ".9g")


def write_csv(path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([fmt(x) for x in r])


def write_series(path, columns, T):
    names = list(columns)
    write_csv(path, names, [[columns[n][t] for n in names] for t in range(T)])


def daily(t, peak_hour, amplitude):
    return 1.0 + amplitude * math.cos(2.0 * math.pi * ((t % 24) - peak_hour) / 24.0)


def solar(t):
    h = t % 24
    if h < 6 or h > 18:
        return 0.0
    return round(math.sin(math.pi * (h - 6) / 12.0), 6)


THERMAL_HEADER = ["id", "node", "tech", "pmax_mw", "ramp_up_mw_h", "ramp_down_mw_h", "voc", "fuel", "emi",
                  "candidate", "inv_eur_mw_a", "alpha", "scr_up", "scr_dn", "tcr_up", "tcr_dn", "res_target"]
STORAGE_HEADER = ["id", "node", "kind", "pch_mw", "pdis_mw", "emax_mwh", "eta_ch", "eta_dis", "soc0_mwh",
                  "socmin_end_mwh", "voc", "candidate", "inv_eur_mw_a", "alpha", "scr_up", "scr_dn", "tcr_up",
                  "tcr_dn"]
RENEWABLE_HEADER = ["id", "node", "tech", "cap_mw", "voc", "candidate", "inv_eur_mw_a", "alpha", "res_target"]
SHIFT_HEADER = ["node", "e_hr_max_mw", "e_day_max_mwh", "l_hr_max_mw", "l_day_max_mwh"]

# Variable cost split (voc, fuel, emi) of the catalog technologies.
GAS_SYN_COST = (4.8, 304.0, 0.0)
GAS_CCS_COST = (6.5, 120.0, 33.0)


def thermal_row(uid, node, tech, pmax, cost, candidate=False, inv=0.0, alpha=1.0, ramp=None, reserve=(1, 1, 1, 1),
                res=False):
    ramp = pmax if ramp is None else ramp
    return [uid, node, tech, pmax, ramp, ramp, *cost, candidate, inv, alpha, *reserve, res]


def battery_row(uid, node, pmax, hours, candidate, inv, alpha, soc0=0.0):
    return [uid, node, "battery", pmax, pmax, pmax * hours, 0.95, 0.95, soc0, 0.0, 0.5, candidate, inv, alpha,
            1, 1, 1, 1]


def write_desk(root):
    T = 48
    alpha = T / HOURS_PER_YEAR
    d = root / "desk"
    write_csv(d / "nodes.csv", ["id", "country", "is_slack"],
              [["CH1", "CH", 1], ["CH2", "CH", 0], ["CH3", "CH", 0], ["DE1", "DE", 0]])
    write_csv(d / "lines.csv", ["id", "from", "to", "susceptance_mw_per_rad", "limit_mw", "cross_border"],
              [["L12", "CH1", "CH2", 5000, 3000, 0],
               ["L23", "CH2", "CH3", 5000, 3000, 0],
               ["L13", "CH1", "CH3", 4000, 2500, 0],
               ["X1", "CH1", "DE1", 3000, 2000, 1],
               ["X3", "CH3", "DE1", 3000, 1500, 1]])

    thermal = [
        thermal_row("CH_BIO", "CH2", "biomass", 300, (1, 0, 0), res=True),
        thermal_row("DE_BIO", "DE1", "biomass", 1500, (1, 0, 0)),
        thermal_row("DE_GAS", "DE1", "gas_syn", 14000, (5, 100, 0), ramp=6000),
        thermal_row("DE_LIG", "DE1", "other", 8000, (4, 30, 26), ramp=2000, reserve=(0, 0, 1, 1)),
    ]
    for i, node in enumerate(["CH1", "CH3"], start=1):
        thermal.append(thermal_row(f"CH_BIO_C{i}", node, "biomass", 20, (1, 0, 0), True, 125000, alpha, ramp=8,
                                   res=True))
    for i, node in enumerate(["CH1", "CH2"], start=1):
        thermal.append(thermal_row(f"CH_SYN_C{i}", node, "gas_syn", 500, GAS_SYN_COST, True, 76500, alpha, ramp=200))
    for i, node in enumerate(["CH2", "CH3"], start=1):
        thermal.append(thermal_row(f"CH_CCS_C{i}", node, "gas_ccs", 500, GAS_CCS_COST, True, 135000, alpha, ramp=200))
    write_csv(d / "thermal.csv", THERMAL_HEADER, thermal)

    storage = [
        ["CH_DAM", "CH2", "dam", 0, 3000, 200000, 1, 0.9, 100000, 95000, 0.5, 0, 0, 1, 1, 1, 1, 1],
        ["CH_PUMP", "CH1", "pump", 2500, 2500, 30000, 0.88, 0.9, 15000, 15000, 0.5, 0, 0, 1, 1, 1, 1, 1],
        ["DE_PUMP", "DE1", "pump", 1500, 1500, 9000, 0.88, 0.9, 4500, 4500, 0.5, 0, 0, 1, 1, 1, 1, 1],
        battery_row("CH_BAT_C1", "CH1", 100, 4, True, 204000, alpha),
        battery_row("CH_BAT_C2", "CH3", 100, 4, True, 204000, alpha),
    ]
    write_csv(d / "storage.csv", STORAGE_HEADER, storage)

    renewable = [
        ["CH_ROR", "CH2", "ror", 3500, 0.5, 0, 0, 1, 0],
        ["CH_PV", "CH1", "pv", 4000, 0.5, 0, 0, 1, 1],
        ["CH_WIND", "CH3", "wind", 200, 1, 0, 0, 1, 1],
        ["DE_PV", "DE1", "pv", 40000, 0.5, 0, 0, 1, 0],
        ["DE_WIND", "DE1", "wind", 9000, 1, 0, 0, 1, 0],
        ["DE_ROR", "DE1", "ror", 800, 0.5, 0, 0, 1, 0],
        ["CH_PV_C1", "CH1", "pv", 1000, 1, 1, 71000, alpha, 1],
        ["CH_PV_C2", "CH2", "pv", 1000, 1, 1, 71000, alpha, 1],
        ["CH_PV_C3", "CH3", "pv", 1000, 1, 1, 71000, alpha, 1],
        ["CH_WIND_C1", "CH3", "wind", 300, 36.4, 1, 151000, alpha, 1],
    ]
    write_csv(d / "renewable.csv", RENEWABLE_HEADER, renewable)

    # CH shares of the e-mobility shifting allowance (10% of 30.4 TWh over 365
    # days, spread over 10 hours) and of 500 MW DSM capacity (3 hours a day).
    shares = {"CH1": 0.45, "CH2": 0.30, "CH3": 0.25}
    e_day = 0.10 * 30.4e6 / 365
    shift = [[n, s * e_day / 10, s * e_day, s * 500, s * 1500] for n, s in shares.items()]
    shift.append(["DE1", 0, 0, 0, 0])
    write_csv(d / "shift.csv", SHIFT_HEADER, shift)

    day_scale = lambda t: 1.0 if t < 24 else 1.05
    base, em, hp, h2 = {}, {}, {}, {}
    for n, s in shares.items():
        base[n] = [round(s * 5600 * daily(t, 11, 0.15) * day_scale(t), 3) for t in range(T)]
        em[n] = [round(s * 3470 * daily(t, 19, 0.6) * day_scale(t), 3) for t in range(T)]
        hp[n] = [round(s * 160 * daily(t, 7, 0.3), 3) for t in range(T)]
        h2[n] = [round(s * 35, 3) for t in range(T)]
    base["DE1"] = [round(15000 * daily(t, 12, 0.15) * day_scale(t), 3) for t in range(T)]
    em["DE1"] = [round(3900 * daily(t, 19, 0.5), 3) for t in range(T)]
    hp["DE1"] = [0.0] * T
    h2["DE1"] = [10.0] * T
    series = d / "series"
    write_series(series / "demand_base.csv", base, T)
    write_series(series / "demand_e_mobility.csv", em, T)
    write_series(series / "demand_heat_pump.csv", hp, T)
    write_series(series / "demand_hydrogen.csv", h2, T)
    write_series(series / "exogenous.csv", {"DE1": [round(1000 * math.sin(2 * math.pi * t / 24), 3)
                                                    for t in range(T)]}, T)

    wind = [round(0.35 + 0.25 * math.sin(2 * math.pi * t / 31.0), 6) for t in range(T)]
    avail = {}
    for r in renewable:
        tech = r[2]
        avail[r[0]] = [0.55] * T if tech == "ror" else ([solar(t) for t in range(T)] if tech == "pv" else wind)
    write_series(series / "availability.csv", avail, T)
    write_series(series / "inflow.csv", {"CH_DAM": [800.0] * T, "CH_PUMP": [100.0] * T, "DE_PUMP": [0.0] * T,
                                         "CH_BAT_C1": [0.0] * T, "CH_BAT_C2": [0.0] * T}, T)
    write_series(series / "reserve.csv", {"scr_up": [300.0] * T, "scr_dn": [300.0] * T,
                                          "tcr_up": [400.0] * T, "tcr_dn": [0.0] * T}, T)

    def scenario(name, gas, shift_on, xb=1.0):
        return {"name": name, "allow_gas_candidates": gas, "allow_shifting": shift_on, "xborder_scale": xb,
                "gas_price_multiplier": 1.0, "res_target_B": 80000, "horizon_T": T, "cost_load_shed": 10000}

    four = [("NGNS", False, False), ("NGWS", False, True), ("WGNS", True, False), ("WGWS", True, True)]
    with open(d / "scenarios.json", "w") as f:
        json.dump([scenario(*s) for s in four], f, indent=2)
        f.write("\n")
    with open(d / "scenarios_reduced.json", "w") as f:
        rows = [scenario("NGNS", False, False)] + [scenario(n + " (R)", g, s, 0.3) for n, g, s in four]
        json.dump(rows, f, indent=2)
        f.write("\n")
    with open(d / "baseline.json", "w") as f:
        json.dump(scenario("WGWS", True, True), f, indent=2)
        f.write("\n")


def write_catalog(root):
    T = 24
    d = root / "catalog"
    write_csv(d / "nodes.csv", ["id", "country", "is_slack"], [["CH", "CH", 1]])
    write_csv(d / "lines.csv", ["id", "from", "to", "susceptance_mw_per_rad", "limit_mw", "cross_border"], [])
    thermal = []
    for i in range(1, 12):
        thermal.append(thermal_row(f"CCS{i:02d}", "CH", "gas_ccs", 500, GAS_CCS_COST, True, 135000, 1.0, ramp=200))
    for i in range(1, 12):
        thermal.append(thermal_row(f"SYN{i:02d}", "CH", "gas_syn", 500, GAS_SYN_COST, True, 76500, 1.0, ramp=200))
    for i in range(1, 13):
        thermal.append(thermal_row(f"BIO{i:02d}", "CH", "biomass", 20, (1, 0, 0), True, 125000, 1.0, ramp=8,
                                   res=True))
    write_csv(d / "thermal.csv", THERMAL_HEADER, thermal)
    write_csv(d / "storage.csv", STORAGE_HEADER,
              [battery_row(f"BAT{i:02d}", "CH", 100, 4, True, 204000, 1.0) for i in range(1, 12)])
    write_csv(d / "renewable.csv", RENEWABLE_HEADER,
              [["WIND", "CH", "wind", 1960, 36.4, 1, 151000, 1, 1], ["PV", "CH", "pv", 50000, 1, 1, 71000, 1, 1]])
    series = d / "series"
    write_series(series / "demand_base.csv", {"CH": [5600.0] * T}, T)
    write_series(series / "demand_e_mobility.csv", {"CH": [3470.0] * T}, T)
    write_series(series / "demand_heat_pump.csv", {"CH": [160.0] * T}, T)
    write_series(series / "demand_hydrogen.csv", {"CH": [35.0] * T}, T)
    write_series(series / "availability.csv", {"WIND": [0.3] * T, "PV": [solar(t) for t in range(T)]}, T)


def write_tiny(root):
    T = 24
    d = root / "tiny"
    write_csv(d / "nodes.csv", ["id", "country", "is_slack"], [["A", "CH", 1], ["B", "CH", 0]])
    write_csv(d / "lines.csv", ["id", "from", "to", "susceptance_mw_per_rad", "limit_mw", "cross_border"],
              [["AB", "A", "B", 1000, 80, 0]])
    write_csv(d / "thermal.csv", THERMAL_HEADER + ["p_init_mw"],
              [thermal_row("G", "A", "other", 150, (10, 5, 2), ramp=150) + [""]])
    write_csv(d / "storage.csv", STORAGE_HEADER, [])
    write_csv(d / "renewable.csv", RENEWABLE_HEADER, [])
    series = d / "series"
    write_series(series / "demand_base.csv", {"A": [20.0 + t for t in range(T)], "B": [50.0] * T}, T)
    write_series(series / "demand_e_mobility.csv", {"A": [1.0] * T, "B": [2.0] * T}, T)
    write_series(series / "demand_heat_pump.csv", {"A": [3.0] * T, "B": [0.5] * T}, T)
    write_series(series / "demand_hydrogen.csv", {"A": [0.25] * T, "B": [0.0] * T}, T)
    with open(d / "scenario.json", "w") as f:
        json.dump({"name": "tiny", "horizon_T": T}, f, indent=2)
        f.write("\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data")
    args = parser.parse_args()
    write_desk(args.out)
    write_catalog(args.out)
    write_tiny(args.out)


if __name__ == "__main__":
    main()

"""Write the data behind every figure to an output directory.

    python3 scripts/reproduce_figures.py --out figures/

Produces CSV tables (E or x in the first column) that any plotting tool can
read, plus a short summary of the headline numbers on standard output.
"""

import argparse
from pathlib import Path

from xwell import bound, scatter, semiclassical
from xwell.curves import CurveTable, emit
from xwell.model import BarrierParams, EnergyGridSpec, WellParams


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="figures")
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ext = args.format

    well = WellParams(1.0, 1.0)
    states = bound.solve_spectrum(well, 3)
    for s in states:
        s = bound.normalize(well, s)
        xs, ps = bound.sample(well, s, 801, xmax=3.0)
        emit(CurveTable([("x", "length"), ("psi", "1")], list(zip(xs.tolist(), ps.tolist())),
                        {"n": s.n, "E": s.energy}), ext, out / f"eigenfunction_{s.n}.{ext}")
        print(f"E_{s.n} = {s.energy:.4f}")

    emit(semiclassical.action_table(well, EnergyGridSpec(0, 22, 221)), ext, out / f"wkb_action.{ext}")
    for n, E in semiclassical.wkb_spectrum(well, 3):
        print(f"E_{n}^WKB = {E:.4f}")

    for tag, a in (("thick", 1.0), ("thin", 0.2)):
        b = BarrierParams(5.0, a)
        emit(scatter.sweep(b, EnergyGridSpec(-10, 10, 401)), ext, out / f"rt_{tag}.{ext}")
        emit(semiclassical.tunnel_compare_table(b, EnergyGridSpec(-10, 10, 401)), ext,
             out / f"tunnel_compare_{tag}.{ext}")
        print(f"E_c(u0=5, a={a:g}) = {scatter.find_crossover(b):.4f}")

    a_star, ec = scatter.barrier_top_crossover(5.0)
    print(f"crossover at the barrier top for a* = {a_star:.6f} (E_c = {ec:.1e})")

    poles = scatter.continued_sweep(well, EnergyGridSpec(-0.95, 22, 2300))
    emit(poles, ext, out / f"poles.{ext}")
    print("poles:", ", ".join(f"{p['E']:.4f} ({p['kind']})" for p in poles.metadata["poles"]))


if __name__ == "__main__":
    main()

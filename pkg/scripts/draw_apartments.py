"""Write apartment pictures for a few rank-2 characters."""

import argparse
from pathlib import Path

from genuine_hecke.apartment import apartment_svg
from genuine_hecke.chi_geometry import ChiGeometry
from genuine_hecke.presets import CONFIGS

CASES = {
    "sl3_legendre": ("SL3", (3, 3)),
    "sl3_trivial": ("SL3", (0, 0)),
    "gl2_order_two": ("GL2", (2, 0)),
    "sp4_trivial": ("Sp4", (0, 0)),
    "sp4_mixed": ("Sp4", (1, 2)),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="figures")
    ap.add_argument("--bound", type=int, default=3)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, (key, m) in CASES.items():
        g = ChiGeometry(CONFIGS[key].character(m))
        pic = apartment_svg(g, bound=args.bound)
        (out / f"{name}.svg").write_text(pic.svg)
        print(f"{name}: {pic.walls_drawn} walls, {pic.chi_walls} chi-walls, {pic.diamond_walls} diamond walls, "
              f"chamber walls {len(pic.chamber_walls)}/{len(pic.diamond_chamber_walls)}")


if __name__ == "__main__":
    main()

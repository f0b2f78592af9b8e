#!/usr/bin/env python3
"""Writes maps/fig3_replica.map: a 20 m x 12 m warehouse floor at 0.1 m.

Outer walls, two shelf rows in the middle and a pillar block leave an
aisle loop around the shelves that the shipped route follows.
"""
import pathlib
import sys

WIDTH, HEIGHT, RES = 200, 120, 0.1

# Obstacles as (x0, y0, x1, y1) in meters, half-open on the upper edge.
BLOCKS = [
    (0.0, 0.0, 20.0, 0.3),    # south wall
    (0.0, 11.7, 20.0, 12.0),  # north wall
    (0.0, 0.0, 0.3, 12.0),    # west wall
    (19.7, 0.0, 20.0, 12.0),  # east wall
    (4.0, 4.0, 15.0, 5.0),    # shelf row A
    (4.0, 7.0, 15.0, 8.0),    # shelf row B
    (18.4, 5.0, 19.7, 7.0),   # pillar block by the east aisle
    (6.0, 0.3, 7.0, 1.0),     # charging dock
]


def main() -> None:
    out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "maps/fig3_replica.map")
    grid = [["."] * WIDTH for _ in range(HEIGHT)]
    for x0, y0, x1, y1 in BLOCKS:
        for iy in range(round(y0 / RES), round(y1 / RES)):
            for ix in range(round(x0 / RES), round(x1 / RES)):
                grid[iy][ix] = "#"
    lines = [f"{WIDTH} {HEIGHT} {RES}"]
    lines += ["".join(row) for row in reversed(grid)]
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()

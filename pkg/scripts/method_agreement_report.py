#!/usr/bin/env python3
"""Print a table of worst series/quadrature rate disagreements per (depth, beta)."""

from pdcshape import DEFAULT_PARAMS, CosinePhaseFilter, compare_methods
from pdcshape.quadrature import (
    VALIDATION_DEPTHS,
    VALIDATION_MOD_FREQUENCIES,
    comparison_grid,
)


def run() -> None:
    print(f"{'depth':>6} {'beta/fs':>8} {'grid pts':>9} {'max |diff|':>12} {'at tau/fs':>10}")
    worst = 0.0
    for depth in VALIDATION_DEPTHS:
        for beta in VALIDATION_MOD_FREQUENCIES:
            filt = CosinePhaseFilter(depth, beta)
            grid = comparison_grid(DEFAULT_PARAMS, filt, spacing=10.0)
            rep = compare_methods(DEFAULT_PARAMS, filt, grid)
            worst = max(worst, rep.max_abs_diff)
            print(f"{depth:6g} {beta:8g} {grid.size:9d} "
                  f"{rep.max_abs_diff:12.3e} {rep.tau_at_max:10.1f}")
    print(f"\nworst overall: {worst:.3e}")


if __name__ == "__main__":
    run()

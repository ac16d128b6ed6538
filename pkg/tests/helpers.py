"""Shared instance builders for the test suite."""
import gpmspace as g

T_GRID = (1e-4, 0.5, 1.0, 2.0, 4.0, 50.0)
ALPHA_GRID = (0.25, 0.5, 1.0, 2.0, 4.0)

D3 = [[0.0, 1.0, 3.0], [1.0, 0.0, 2.0], [3.0, 2.0, 0.0]]


def three_point_carrier():
    return g.FiniteCarrier(("a", "b", "c"), D3)


def two_point_carrier():
    return g.FiniteCarrier(("a", "b"), [[0.0, 1.0], [1.0, 0.0]])


def line_carrier(n):
    labels = tuple(str(i) for i in range(n))
    d = [[float(abs(i - j)) for j in range(n)] for i in range(n)]
    return g.FiniteCarrier(labels, d)


def make_instance(family="scaled", op=g.MAX, carrier=None,
                  t_grid=T_GRID, alpha_grid=ALPHA_GRID, **params):
    if carrier is None:
        carrier = three_point_carrier()
    return g.gallery_construct(family, params, carrier, op, t_grid, alpha_grid)


def interval_instance(family="scaled", op=g.MAX, lo=-2.0, hi=2.0, resolution=0.25,
                      t_grid=T_GRID, alpha_grid=ALPHA_GRID, **params):
    carrier = g.IntervalCarrier(lo, hi, resolution)
    return g.gallery_construct(family, params, carrier, op, t_grid, alpha_grid)


def squared_distance_table_instance(op=g.MAX, t_grid=T_GRID, alpha_grid=ALPHA_GRID):
    """Line points {0, 1, 2} with tabulated P = d^2 / t at the grid nodes."""
    carrier = line_carrier(3)
    params = g.tabulate_step_family(carrier, t_grid, lambda d, t: d * d / t)
    return g.gallery_construct("tabulated", params, carrier, op, t_grid, alpha_grid)

"""Point-set families shared by the test modules."""

import random

from virtres.points import Point, PointSet, random_points
from virtres.scalar import QQ


def ruling_points(n, fibers, seed, bound=40, field=QQ):
    """n points spread over ``fibers`` distinct first coordinates."""
    rng = random.Random(seed)
    As = rng.sample(range(1, bound + 1), fibers)
    counts = [1] * fibers
    for _ in range(n - fibers):
        counts[rng.randrange(fibers)] += 1
    pts = []
    for a, m in zip(As, counts):
        for b in rng.sample(range(1, bound + 1), m):
            pts.append(Point.make((1, a), (1, b), field))
    return PointSet(tuple(pts), field)


def grid_points(rows, cols, seed, bound=40, field=QQ):
    rng = random.Random(seed)
    As = rng.sample(range(1, bound + 1), rows)
    Bs = rng.sample(range(1, bound + 1), cols)
    return PointSet(tuple(Point.make((1, a), (1, b), field) for a in As for b in Bs), field)


def with_special_fiber(X):
    """Move the first point's second coordinate to [0:1] so the convention fails."""
    P = X.points[0]
    pts = (Point.make(P.A, (0, 1), X.field),) + X.points[1:]
    return PointSet(pts, X.field)


def property_sets():
    """The 20 mixed configurations (sizes 1-10) used by the property suite."""
    out = []
    for n, seed in [(1, 1), (2, 2), (3, 3), (4, 4), (5, 5), (6, 6), (7, 7), (8, 8)]:
        out.append(("generic", random_points(n, seed, 60)))
    for n, fibers, seed in [(3, 1, 11), (4, 2, 12), (5, 2, 13), (6, 3, 14), (7, 3, 15),
                            (8, 4, 16), (9, 5, 17), (10, 4, 18)]:
        out.append(("ruling", ruling_points(n, fibers, seed)))
    for rows, cols, seed in [(2, 2, 21), (2, 3, 22), (3, 3, 23)]:
        out.append(("grid", grid_points(rows, cols, seed)))
    out.append(("special", with_special_fiber(ruling_points(6, 3, 31))))
    return out

"""Slow, obviously-correct reference computations used only by the tests."""

import math


def naive_centroid(points):
    n, d = len(points), len(points[0])
    return [sum(points[i][k] for i in range(n)) / n for k in range(d)]


def naive_dot(p, u):
    return sum(x * y for x, y in zip(p, u))


def naive_delta(points, u):
    best = 0.0
    for p in points:
        t = naive_dot(p, u)
        best = max(best, math.sqrt(sum((x - t * y) ** 2 for x, y in zip(p, u))))
    return best


def naive_directed_1d(xs, ys):
    return max(min(abs(x - y) for y in ys) for x in xs)


def naive_hausdorff_1d(xs, ys):
    return max(naive_directed_1d(xs, ys), naive_directed_1d(ys, xs))


def naive_nearest(data, q):
    best, bi = math.inf, -1
    for i, p in enumerate(data):
        d = math.dist(p, q)
        if d < best:
            best, bi = d, i
    return bi, best

"""Independent brute-force values frozen into the C++ tests.

Steps the map directly (no closed forms) in mpmath at 40 digits and applies
the same 1e-9 comparison tolerance.
"""
from mpmath import mp, mpf, e, floor, nint, fabs, power

mp.dps = 40
TOL = mpf("1e-9")


def a_exp(n):
    return power(e, -n)


def a_pow(c):
    return lambda n: mpf(1) / power(n, c)


def circ(x, y):
    d = (x - y) - nint(x - y)
    return fabs(d)


def tower_dist(p, q, a):
    (x, m), (y, k) = p, q
    hm = a(m) if m else mpf(0)
    hk = a(k) if k else mpf(0)
    return max(circ(x, y), fabs(hm - hk))


def step(p, a):
    x, m = p
    h = a(m) if m else mpf(0)
    return ((x + h) % 1, m)


def bowen(p, q, n, a):
    d = mpf(0)
    for _ in range(n):
        d = max(d, tower_dist(p, q, a))
        p, q = step(p, a), step(q, a)
    return d


def sample(grid, levels):
    pts = []
    for lvl in list(range(1, levels + 1)) + [0]:
        for j in range(grid):
            pts.append((mpf(j) / grid, lvl))
    return pts


def greedy_sep(pts, n, eps, a):
    kept = []
    for p in pts:
        if all(bowen(p, q, n, a) >= eps - TOL for q in kept):
            kept.append(p)
    return len(kept)


def greedy_span(pts, n, eps, a):
    m = len(pts)
    balls = [{j for j in range(m) if bowen(pts[i], pts[j], n, a) <= eps + TOL} for i in range(m)]
    unc = set(range(m))
    picks = 0
    while unc:
        best = max(range(m), key=lambda i: (len(balls[i] & unc), -i))
        unc -= balls[best]
        picks += 1
    return picks


if __name__ == "__main__":
    ex = a_exp
    print("bowen exp", [mp.nstr(bowen((mpf("0.1"), 1), (mpf("0.3"), 2), n, ex), 17) for n in (1, 2, 5, 10)])
    print("bowen base", mp.nstr(bowen((mpf("0.25"), 3), (mpf("0.25"), 0), 100, ex), 17))
    p2 = a_pow(2)
    print("bowen pow2", [mp.nstr(bowen((mpf("0.7"), 3), (mpf("0.05"), 5), n, p2), 17) for n in (1, 7, 40)])
    pts = sample(20, 4)
    print("greedy_sep exp g20 L4 n10 eps0.1", greedy_sep(pts, 10, mpf("0.1"), ex))
    print("greedy_sep pow2 g20 L4 n30 eps0.15", greedy_sep(pts, 30, mpf("0.15"), p2))
    pts = sample(10, 3)
    print("greedy_span exp g10 L3 n10 eps0.2", greedy_span(pts, 10, mpf("0.2"), ex))
    print("greedy_span pow2 g10 L3 n25 eps0.25", greedy_span(pts, 25, mpf("0.25"), p2))

#!/usr/bin/env python3
"""Reference values for the exact calculators, computed with mpmath at 50 digits.

Inputs are drawn as doubles; every value is computed from the exact binary
value of those doubles, renormalized in high precision.

    python3 oracle.py > oracle.json
"""
import json
import random

from mpmath import mp, mpf, log, sqrt

mp.dps = 50
N = 1000
rng = random.Random(20261017)


def lg(x):
    return log(x, 2)


def norm(v):
    s = sum(mpf(x) for x in v)
    return [mpf(x) / s for x in v]


def rand_pmf(k, zeros=True):
    w = [rng.random() for _ in range(k)]
    if zeros and k > 2 and rng.random() < 0.3:
        w[rng.randrange(k)] = 0.0
    s = sum(w)
    return [x / s for x in w]


def H(p):
    return -sum(x * lg(x) for x in p if x > 0)


def CE(p, q):
    return -sum(x * lg(y) for x, y in zip(p, q) if x > 0)


def KL(p, q):
    return sum(x * lg(x / y) for x, y in zip(p, q) if x > 0)


def MI(k, flat):
    j = norm(flat)
    a = [sum(j[i * k + b] for b in range(k)) for i in range(k)]
    b = [sum(j[i * k + c] for i in range(k)) for c in range(k)]
    return sum(j[i * k + c] * lg(j[i * k + c] / (a[i] * b[c])) for i in range(k) for c in range(k) if j[i * k + c] > 0)


def hellinger(p, q):
    return sqrt(sum((sqrt(x) - sqrt(y)) ** 2 for x, y in zip(p, q)))


def condition(b1, b2):
    inc = lambda c: all(c[i] < c[i + 1] for i in range(3))
    if inc([b2[0], b1[1], b1[0], b2[1]]) or inc([b2[1], b1[0], b1[1], b2[0]]):
        return True
    if inc([b2[0], b1[0], b1[1], b2[1]]) or inc([b2[1], b1[1], b1[0], b2[0]]):
        return True
    return b1[0] == b1[1] and b2[0] != b2[1]


def solvable_betas():
    while True:
        b1 = 0.5 if rng.random() < 0.1 else rng.uniform(0.02, 0.98)
        b2 = rng.uniform(0.02, 0.98)
        b1, b2 = [b1, 1 - b1], [b2, 1 - b2]
        if condition(b1, b2):
            return b1, b2


def solve_alpha2(a1, b1, b2):
    # CE(a2, b2) = -lb1 + x (lb1 - lb0) is linear in x = a2(0)
    c = CE(norm(a1), norm(b1))
    lb0, lb1 = lg(norm(b2)[0]), lg(norm(b2)[1])
    return (c + lb1) / (lb1 - lb0)


def f(x):
    return float(x)


out = {"digits": mp.dps, "entropy": [], "mi": [], "kl": [], "cross_entropy": [], "hellinger": [],
       "hellinger_sq_coupled": [], "billingsley_mdim": [], "equivalent_measure": []}

for _ in range(N):
    p = rand_pmf(rng.randint(2, 8))
    out["entropy"].append({"p": p, "v": f(H(norm(p)))})

for _ in range(N):
    k = rng.randint(2, 5)
    flat = rand_pmf(k * k)
    out["mi"].append({"k": k, "joint": flat, "v": f(MI(k, flat))})

for _ in range(N):
    k = rng.randint(2, 8)
    p, q = rand_pmf(k), rand_pmf(k, zeros=False)
    out["kl"].append({"p": p, "q": q, "v": f(KL(norm(p), norm(q)))})
    p, q = rand_pmf(k), rand_pmf(k, zeros=False)
    out["cross_entropy"].append({"p": p, "q": q, "v": f(CE(norm(p), norm(q)))})
    p, q = rand_pmf(k), rand_pmf(k)
    out["hellinger"].append({"p": p, "q": q, "v": f(hellinger(norm(p), norm(q)))})

for i in range(N):
    rho = [-1.0, 0.0, 1.0][i] if i < 3 else rng.uniform(-1, 1)
    r = mpf(rho)
    joint = [(1 + r) / 4, (1 - r) / 4, (1 - r) / 4, (1 + r) / 4]
    out["hellinger_sq_coupled"].append({"rho": rho, "v": f(sum((sqrt(x) - mpf(1) / 2) ** 2 for x in joint))})

for _ in range(N):
    b1, b2 = solvable_betas()
    a1 = rng.uniform(0, 1)
    x = solve_alpha2([a1, 1 - a1], b1, b2)
    out["equivalent_measure"].append({"alpha1": [a1, 1 - a1], "beta1": b1, "beta2": b2, "alpha2_0": f(x)})

for i in range(N):
    if i % 2 == 0:
        # binary pair with solver-produced second marginal
        b1, b2 = solvable_betas()
        a = rng.uniform(0.01, 0.99)
        b = f(solve_alpha2([a, 1 - a], b1, b2))
        lo, hi = max(0.0, a + b - 1), min(a, b)
        t = rng.uniform(lo, hi)
        flat = [t, a - t, b - t, 1 - a - b + t]
        flat = [max(x, 0.0) for x in flat]
        k = 2
    else:
        # symmetric table, so both marginals agree and beta1 = beta2 works
        k = rng.randint(2, 5)
        m = [[0.0] * k for _ in range(k)]
        for r_ in range(k):
            for c_ in range(r_, k):
                m[r_][c_] = m[c_][r_] = rng.random()
        s = sum(map(sum, m))
        flat = [m[r_][c_] / s for r_ in range(k) for c_ in range(k)]
        b1 = rand_pmf(k, zeros=False)
        b2 = b1
    j = norm(flat)
    a1 = [sum(j[r_ * k + c_] for c_ in range(k)) for r_ in range(k)]
    v = MI(k, flat) / CE(a1, norm(b1))
    out["billingsley_mdim"].append({"k": k, "joint": flat, "beta1": b1, "beta2": b2, "v": f(v)})

print(json.dumps(out, separators=(",", ":")))

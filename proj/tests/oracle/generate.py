# Copyright 2026 The noisyboson Authors
# SPDX-License-Identifier: Apache-2.0
#
# Independent high-precision reference values for the unit tests.
# Run with `python3 generate.py`; the printed numbers are frozen in tests/*.cpp.

from itertools import combinations, permutations

import mpmath as mp

mp.mp.dps = 40

A3 = [[mp.mpc(0.3, 0.6), mp.mpc(-1.1, 0.0), mp.mpc(0.7, -0.2)],
      [mp.mpc(0.5, -0.3), mp.mpc(0.2, 1.2), mp.mpc(-0.4, 0.4)],
      [mp.mpc(-0.9, 0.05), mp.mpc(0.8, -0.7), mp.mpc(0.1, 0.9)]]

A4 = [[mp.mpc(0.25, -0.5), mp.mpc(1.0, 0.3), mp.mpc(-0.6, 0.1), mp.mpc(0.2, 0.8)],
      [mp.mpc(-0.3, 0.7), mp.mpc(0.4, -0.2), mp.mpc(0.9, 0.6), mp.mpc(-1.2, 0.0)],
      [mp.mpc(0.8, 0.1), mp.mpc(-0.5, -0.9), mp.mpc(0.3, 0.3), mp.mpc(0.6, -0.4)],
      [mp.mpc(0.1, 1.1), mp.mpc(0.7, 0.2), mp.mpc(-0.8, -0.6), mp.mpc(0.5, 0.5)]]

B23 = [[mp.mpc(0.4, -0.1), mp.mpc(-0.7, 0.5), mp.mpc(1.0, 0.2)],
       [mp.mpc(0.3, 0.9), mp.mpc(0.6, -0.8), mp.mpc(-0.2, 0.1)]]


def per(m):
    n = len(m)
    if n == 0:
        return mp.mpc(1)
    return mp.fsum(mp.fprod(m[i][s[i]] for i in range(n)) for s in permutations(range(n)))


def sub(m, rows, cols):
    return [[m[r][c] for c in cols] for r in rows]


def q_j(m, j):
    n = len(m)
    total = mp.mpf(0)
    for I in combinations(range(n), j):
        for J in combinations(range(n), j):
            ci = [r for r in range(n) if r not in I]
            cj = [c for c in range(n) if c not in J]
            a = abs(per(sub(m, I, J))) ** 2
            b = per([[abs(v) ** 2 for v in row] for row in sub(m, ci, cj)]).real
            total += a * b
    return total / mp.binomial(n, j) / mp.factorial(n)


def q_permpair(m, x):
    n = len(m)
    total = mp.mpc(0)
    for s in permutations(range(n)):
        for r in permutations(range(n)):
            agree = sum(1 for i in range(n) if s[i] == r[i])
            term = mp.fprod(m[s[i]][i] * mp.conj(m[r[i]][i]) for i in range(n))
            total += mp.power(x, n - agree) * term
    return total.real / mp.factorial(n)


def mixture(m, x, from_j=0):
    n = len(m)
    return mp.fsum(mp.binomial(n, j) * mp.power(x, j) * mp.power(1 - x, n - j) * q_j(m, j)
                   for j in range(from_j, n + 1))


def show(name, v):
    print(f"{name} = {mp.nstr(v, 20)}")


show("per(A3)", per(A3))
show("per(A4)", per(A4))
show("per(|A4|^2)", per([[abs(v) ** 2 for v in row] for row in A4]).real)
for j in range(5):
    show(f"q_{j}(A4)", q_j(A4, j))
x = mp.mpf("0.3")
show("q_permpair(0.3, A4)", q_permpair(A4, x))
show("q_mixture(0.3, A4)", mixture(A4, x))
show("q_truncated(l=2, 0.3, A4)", mixture(A4, x, 4 - 2))
show("f_poly(l=2, 0.3, A4)", mp.power(x, 2 - 4) * mixture(A4, x, 4 - 2))
show("q_permpair(0.7, A3)", q_permpair(A3, mp.mpf("0.7")))

eta = mp.mpf("0.7")
loss = mp.fsum(abs(per(sub(B23, [0, 1], K))) ** 2 for K in combinations(range(3), 2))
show("q_loss(0.7, 2, B23)", eta ** 2 * (1 - eta) * loss / 2)

show("binomial_tail(24, 23/24, 12)",
     mp.fsum(mp.binomial(24, j) * mp.power(mp.mpf(23) / 24, j) * mp.power(mp.mpf(1) / 24, 24 - j)
             for j in range(0, 12)))
show("kondo(1, 4, 0.5)", mp.e ** (4 * (1 + mp.log(2))) / mp.sqrt(8 * mp.pi))
show("amplification(4, 0.5)", mp.e ** (4 * (1 + mp.log(2))))

kappa, lam = mp.mpf("2.108"), mp.mpf("2.149")
show("Delta", (kappa - 1) / (kappa + 1))
c_min, n = mp.mpf("0.3"), 1000
c_l = kappa * lam * (5 + 3 * mp.log((kappa + 1) / (kappa - 1))) / 2 * c_min + 3 * mp.log(100) / mp.log(n)
l = int(mp.ceil(c_l * mp.log(n)))
show("c_l(0.3, 1000)", c_l)
print("l(0.3, 1000) =", l)
show("eps(0.3, 1000)", mp.power(0.1, 7.1) * mp.power(0.1, 6.1) * mp.power(n, -40 * c_min))

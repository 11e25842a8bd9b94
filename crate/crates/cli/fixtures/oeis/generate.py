"""Writes the b-file fixtures in this directory from closed forms.

Run with `python3 generate.py [ANUMBER...]`; requires sympy.
"""
from math import comb, factorial
from fractions import Fraction

import sys

import sympy as sp

x = sp.Symbol('x')
TERMS = 30


def coeffs(expr, n=TERMS):
    s = sp.series(expr, x, 0, n).removeO()
    return [int(s.coeff(x, k)) for k in range(n)]


def fib(n):
    a, b = 0, 1
    out = []
    for _ in range(n):
        out.append(a)
        a, b = b, a + b
    return out


def product_seq(n, factor):
    out, acc = [], Fraction(1)
    for k in range(n):
        out.append(acc)
        acc *= factor(k)
    assert all(v.denominator == 1 for v in out)
    return [int(v) for v in out]


def asm_vertical(k):
    return Fraction((3 * k + 2) * factorial(6 * k + 3) * factorial(2 * k + 1),
                    factorial(4 * k + 2) * factorial(4 * k + 3))


def cstc(i):
    return Fraction((3 * i + 1) * factorial(6 * i) * factorial(2 * i),
                    factorial(4 * i) * factorial(4 * i + 1))


def a109262(n):
    total = Fraction(0)
    for k in range(n // 2 + 1):
        total += Fraction(3 * k + 2, n + k + 2) * comb(2 * n - k + 1, n - 2 * k)
    assert total.denominator == 1
    return int(total)


def a107842(rows):
    out = []
    for n in range(rows):
        for k in range(n + 1):
            v = Fraction(3 * k + 2, n + 2 * k + 2) * comb(2 * n + k + 1, n - k)
            assert v.denominator == 1
            out.append(int(v))
    return out


def a106566(rows):
    out = []
    for n in range(rows):
        for k in range(n + 1):
            if n == 0:
                out.append(1)
            else:
                v = Fraction(k, n) * comb(2 * n - k - 1, n - k)
                out.append(int(v))
    return out


def a128899(rows):
    out = []
    for n in range(rows):
        for k in range(n + 1):
            out.append(1 if n == 0 else k * comb(2 * n, n - k) // n)
    return out


def poly_coeffs(p, n):
    return [p[i] if i < len(p) else 0 for i in range(n)]


def poly_mul(a, b, n):
    out = [0] * n
    for i, u in enumerate(a[:n]):
        for j, v in enumerate(b[:n - i]):
            out[i + j] += u * v
    return out


def a109267(rows):
    g, f = [1, -1, -1], [0, 1, -1]
    m = [[0] * rows for _ in range(rows)]
    col = poly_coeffs(g, rows)
    for k in range(rows):
        for n in range(rows):
            m[n][k] = col[n]
        col = poly_mul(col, f, rows)
    inv = [[Fraction(0)] * rows for _ in range(rows)]
    for j in range(rows):
        inv[j][j] = Fraction(1, m[j][j])
        for i in range(j + 1, rows):
            inv[i][j] = -sum(m[i][k] * inv[k][j] for k in range(j, i)) / m[i][i]
    assert all(v.denominator == 1 for r in inv for v in r)
    return [int(inv[n][k]) for n in range(rows) for k in range(n + 1)]


c = (1 - sp.sqrt(1 - 4 * x)) / (2 * x)
ternary = [comb(3 * n, n) // (2 * n + 1) for n in range(TERMS)]
t = sum(v * x**n for n, v in enumerate(ternary))
d = 1 - 4 * x + x**2
royal = coeffs(x / d * c.subs(x, x**2 / d**2), TERMS)
moments = coeffs(t**3 / (1 + x * t**5), TERMS)
mu = sum(v * x**n for n, v in enumerate(moments))

SEQUENCES = {
    'A000045': (fib(40), 0),
    'A000108': ([comb(2 * n, n) // (n + 1) for n in range(TERMS)], 0),
    'A001764': (ternary, 0),
    'A005156': (product_seq(22, asm_vertical), 0),
    'A051255': (product_seq(22, cstc), 0),
    'A081696': (coeffs(1 / (x + sp.sqrt(1 - 4 * x))), 0),
    'A109262': ([a109262(n) for n in range(TERMS)], 0),
    'A107842': (a107842(10), 0),
    'A106566': (a106566(10), 0),
    'A225887': (coeffs(2 / (1 - 5 * x + sp.sqrt(1 - 6 * x + x**2))), 0),
    'A006319': ([1] + royal[1:], 0),
    'A035929': (coeffs(x / (1 - (1 - x) * x * c)), 0),
    'A182486': (coeffs(1 + x * (sp.sqrt(1 - 4 * x) - 2 * x + 3) / (2 * (x**2 - 2 * x + 2))), 0),
    'A098746': (coeffs(mu / (1 + x * mu)), 0),
    'A109267': (a109267(10), 0),
    'A128899': (a128899(10), 0),
}

if len(sys.argv) > 1:
    SEQUENCES = {k: v for k, v in SEQUENCES.items() if k in sys.argv[1:]}

for name, (values, offset) in SEQUENCES.items():
    with open(f'b{name[1:]}.txt', 'w') as f:
        f.write(f'# {name}: generated from a closed form by generate.py\n')
        for i, v in enumerate(values):
            f.write(f'{i + offset} {v}\n')

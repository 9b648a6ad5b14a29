"""Recompute the built-in stratum ideals by elimination.

The fixed locus of w is parametrised by one value per cycle; eliminating those values from
e_k - e_k(x) leaves the ideal of its image in the space of e's.
"""
import sys

import sympy as sp


def partitions(n, largest=None):
    largest = largest or n
    if n == 0:
        yield []
        return
    for p in range(min(n, largest), 0, -1):
        for rest in partitions(n - p, p):
            yield [p] + rest


def stratum(cycle_type):
    n = sum(cycle_type)
    t = sp.symbols(f"t1:{len(cycle_type) + 1}")
    e = sp.symbols(f"e1:{n + 1}")
    x = [t[i] for i, part in enumerate(cycle_type) for _ in range(part)]
    z = sp.symbols("z")
    poly = sp.expand(sp.prod([z - xi for xi in x]))
    eqs = [e[k - 1] - (-1) ** k * poly.coeff(z, n - k) for k in range(1, n + 1)]
    g = sp.groebner(eqs, *t, *e, order="lex")
    return [p for p in g.exprs if not p.free_symbols & set(t)]


if __name__ == "__main__":
    n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    for n in range(1, n_max + 1):
        for ct in partitions(n):
            print(n, tuple(ct), stratum(ct))

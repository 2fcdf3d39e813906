#!/usr/bin/env python3
"""Brute-force reference values for the test suite.

Everything here is computed from first principles (explicit finite-field
tables, exhaustive matrix search, sympy determinants) without calling the C++
library. The printed JSON is frozen into tests/*.cpp; rerun with

    python3 tests/oracle/oracle.py > tests/oracle/oracle_out.json

and compare after any change to the fixtures.
"""

import itertools
import json
import os
import sys
from fractions import Fraction

import sympy

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "..")
FIX = os.path.join(ROOT, "fixtures")


# ---------------------------------------------------------------- finite fields

class GF:
    """GF(p^k) with elements 0..q-1 read as base-p coefficient vectors."""

    IRRED = {4: [1, 1, 1], 8: [1, 1, 0, 1], 9: [1, 0, 1]}  # low degree first

    def __init__(self, q):
        self.q = q
        p = next(d for d in range(2, q + 1) if q % d == 0)
        k = 1
        while p ** k < q:
            k += 1
        self.p, self.k = p, k
        if k == 1:
            self.add = [[(a + b) % p for b in range(q)] for a in range(q)]
            self.mul = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            mod = self.IRRED[q]
            vec = lambda a: [(a // p ** i) % p for i in range(k)]
            num = lambda v: sum(c * p ** i for i, c in enumerate(v))
            self.add = [[num([(x + y) % p for x, y in zip(vec(a), vec(b))]) for b in range(q)] for a in range(q)]

            def pmul(a, b):
                prod = [0] * (2 * k - 1)
                for i, x in enumerate(vec(a)):
                    for j, y in enumerate(vec(b)):
                        prod[i + j] = (prod[i + j] + x * y) % p
                for d in range(2 * k - 2, k - 1, -1):
                    c = prod[d]
                    if c:
                        for i in range(k + 1):
                            prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
                return num(prod[:k])

            self.mul = [[pmul(a, b) for b in range(q)] for a in range(q)]
        self.neg = [next(b for b in range(q) if self.add[a][b] == 0) for a in range(q)]
        self.inv = [None] + [next(b for b in range(1, q) if self.mul[a][b] == 1) for a in range(1, q)]

    def sub(self, a, b):
        return self.add[a][self.neg[b]]

    def det(self, m):
        m = [row[:] for row in m]
        n = len(m)
        d = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                d = self.neg[d]
            d = self.mul[d][m[c][c]]
            ic = self.inv[m[c][c]]
            for r in range(c + 1, n):
                if m[r][c]:
                    f = self.mul[m[r][c]][ic]
                    m[r] = [self.sub(m[r][j], self.mul[f][m[c][j]]) for j in range(n)]
        return d


# ---------------------------------------------------------------- matroids

def load_bases(path):
    j = json.load(open(path))
    ground = j["ground"]
    idx = {g: i for i, g in enumerate(ground)}
    return ground, {frozenset(idx[x] for x in b) for b in j["bases"]}


def uniform(r, n):
    return [str(i + 1) for i in range(n)], {frozenset(c) for c in itertools.combinations(range(n), r)}


def representations(ground, bases, F):
    """All normalized matrices A with M[I A] = M over F, one per scaling class."""
    n = len(ground)
    B = min(tuple(sorted(b)) for b in bases)
    r = len(B)
    E = [e for e in range(n) if e not in B]
    support = [[frozenset(set(B) - {b} | {e}) in bases for e in E] for b in B]
    # spanning forest of the support graph, BFS from each row then column
    fixed = set()
    seen_r, seen_c = set(), set()
    for start in [("r", i) for i in range(r)] + [("c", j) for j in range(len(E))]:
        if start in seen_r or start in seen_c:
            continue
        (seen_r if start[0] == "r" else seen_c).add(start)
        queue = [start]
        while queue:
            kind, v = queue.pop(0)
            if kind == "r":
                for j in range(len(E)):
                    if support[v][j] and ("c", j) not in seen_c:
                        seen_c.add(("c", j))
                        fixed.add((v, j))
                        queue.append(("c", j))
            else:
                for i in range(r):
                    if support[i][v] and ("r", i) not in seen_r:
                        seen_r.add(("r", i))
                        fixed.add((i, v))
                        queue.append(("r", i))
    pos = {b: i for i, b in enumerate(B)}
    colpos = {e: j for j, e in enumerate(E)}
    # subsets to check once column j is assigned: non-basis part within E[:j+1] and containing E[j]
    checks = [[] for _ in E]
    for Z in itertools.combinations(range(n), r):
        outs = [colpos[z] for z in Z if z not in pos]
        if outs:
            checks[max(outs)].append((Z, frozenset(Z) in bases))
        elif frozenset(Z) not in bases:
            return []
    A = [[0] * len(E) for _ in range(r)]
    out = []

    def column(z):
        if z in pos:
            return [1 if i == pos[z] else 0 for i in range(r)]
        return [A[i][colpos[z]] for i in range(r)]

    def assign(j):
        if j == len(E):
            out.append([row[:] for row in A])
            return
        free = [i for i in range(r) if support[i][j] and (i, j) not in fixed]
        for i in range(r):
            A[i][j] = 1 if (support[i][j] and (i, j) in fixed) else 0
        for vals in itertools.product(range(1, F.q), repeat=len(free)):
            for i, v in zip(free, vals):
                A[i][j] = v
            ok = True
            for Z, is_basis in checks[j]:
                cols = [column(z) for z in Z]
                m = [[cols[c][i] for c in range(r)] for i in range(r)]
                if (F.det(m) != 0) != is_basis:
                    ok = False
                    break
            if ok:
                assign(j + 1)

    assign(0)
    return out


# ---------------------------------------------------------------- matrix fixtures

def sym_matrix(path):
    j = json.load(open(path))
    rows, cols = j["rows"], j["cols"]
    sym = {s: sympy.Symbol(s) for s in ("tau", "a")}
    A = [[sympy.Integer(0)] * len(cols) for _ in rows]
    for x, y, e in j["entries"]:
        A[rows.index(x)][cols.index(y)] = sympy.sympify(e, locals=sym)
    return j["pf"], rows, cols, A, sym


def nonzero(pf, expr, sym):
    expr = sympy.expand(expr)
    if pf == "GF(2)":
        return sympy.Poly(expr, *sym.values(), modulus=2).is_zero is False
    if pf == "GF(3)":
        return sympy.Poly(expr, *sym.values(), modulus=3).is_zero is False
    if pf == "G":
        t = sym["tau"]
        return sympy.rem(sympy.Poly(expr, t), sympy.Poly(t ** 2 - t - 1, t)).is_zero is False
    if pf == "U1mod2":
        return sympy.Poly(expr, sym["a"], modulus=2).is_zero is False
    return expr != 0  # QQ and K2 (a transcendental)


def matrix_bases(path):
    pf, rows, cols, A, sym = sym_matrix(path)
    r = len(rows)
    ground = rows + cols
    full = [[1 if i == k else 0 for k in range(r)] + A[i] for i in range(r)]
    bases = set()
    for Z in itertools.combinations(range(len(ground)), r):
        if nonzero(pf, sympy.Matrix([[full[i][z] for z in Z] for i in range(r)]).det(), sym):
            bases.add(frozenset(Z))
    return ground, bases


# ---------------------------------------------------------------- P^1 configurations

def cross_ratio(F, cols, a, b, c, d):
    dt = lambda u, v: F.sub(F.mul[cols[u][0]][cols[v][1]], F.mul[cols[u][1]][cols[v][0]])
    return F.mul[F.mul[dt(a, c)][dt(b, d)]][F.inv[F.mul[dt(a, d)][dt(b, c)]]]


def columns_2xn(A):
    return [(1, 0), (0, 1)] + [(A[0][j], A[1][j]) for j in range(len(A[0]))]


def confinement_u2n(n, q, value=(2, 2)):
    """B = [[1,1],[value,1]] over GF(q)^2 against U(2,n), diagonal sub."""
    F = GF(q)
    reps = representations(*uniform(2, n), F)
    containing = confined = 0
    witness = None
    for A1, A2 in itertools.product(reps, reps):
        c1, c2 = columns_2xn(A1), columns_2xn(A2)
        hit = any((cross_ratio(F, c1, *t), cross_ratio(F, c2, *t)) == value for t in itertools.permutations(range(n), 4))
        if not hit:
            continue
        containing += 1
        if A1 == A2:
            confined += 1
        elif witness is None:
            witness = [A1[1][1:], A2[1][1:]]
    return {"reps": len(reps) ** 2, "containing": containing, "confined": containing == confined, "witness": witness}


def stabilizes_u2(n, m, q):
    F = GF(q)
    groups = {}
    for A in representations(*uniform(2, m), F):
        key = tuple(tuple(row[: n - 2]) for row in A)
        groups[key] = groups.get(key, 0) + 1
    return {"reps_M": sum(groups.values()), "max_extensions": max(groups.values(), default=0),
            "stabilizes": all(v <= 1 for v in groups.values())}


# ---------------------------------------------------------------- main

def main():
    out = {}

    out["gf_sanity"] = {q: GF(q).mul[2 % q][GF(q).inv[2 % q] or 1] for q in (3, 5, 7, 9)}

    out["rep_counts"] = {}
    for name, (g, b) in {"U24": uniform(2, 4), "U25": uniform(2, 5), "U26": uniform(2, 6)}.items():
        out["rep_counts"][name] = {q: len(representations(g, b, GF(q))) for q in (2, 3, 4, 5, 7, 8, 9)}

    fixtures = {}
    for f in ("u24", "u25", "u26", "vamos", "f7minus_bases"):
        fixtures[f] = load_bases(os.path.join(FIX, f + ".json"))
    for f in ("A1", "A2", "A3", "A7", "A7minus", "A8", "Qplus2", "Qplus3"):
        fixtures[f] = matrix_bases(os.path.join(FIX, f + ".json"))
    out["fixture_bases"] = {f: len(b) for f, (g, b) in fixtures.items()}
    out["fixture_counts"] = {f: {q: len(representations(g, b, GF(q))) for q in (2, 3, 4, 5)} for f, (g, b) in fixtures.items()}

    out["confine"] = {
        "U24_GF3sq": confinement_u2n(4, 3),
        "U25_GF5sq": confinement_u2n(5, 5),
        "U24_GF5sq": confinement_u2n(4, 5),
    }
    out["stabilizer"] = {
        "U25_U26_GF5": stabilizes_u2(5, 6, 5),
        "U24_U25_GF5": stabilizes_u2(4, 5, 5),
        "U24_U25_GF4": stabilizes_u2(4, 5, 4),
        "U24_U26_GF7": stabilizes_u2(4, 6, 7),
    }

    primes = [p for p in range(2, 30) if sympy.isprime(p)]
    roots = lambda f, p: [x for x in range(p) if f(x) % p == 0]
    out["homgraph"] = {
        "S": [p for p in primes if roots(lambda x: x * x - x + 1, p)],
        "G": [p for p in primes if roots(lambda x: x * x - x - 1, p)],
        "D": [p for p in primes if p % 2],
        "H2": [p for p in primes if p % 2 and roots(lambda x: x * x + 1, p)],
    }
    out["S_roots_mod7"] = roots(lambda x: x * x - x + 1, 7)
    out["S_roots_mod5"] = roots(lambda x: x * x - x + 1, 5)

    a = [[Fraction(2), Fraction(4)], [Fraction(6), Fraction(8)]]
    out["normalize_2468"] = str(a[1][1] * a[0][0] / (a[0][1] * a[1][0]))

    def assoc(p):
        return {p, 1 / p, 1 - p, 1 / (1 - p), p / (p - 1), (p - 1) / p}

    out["crat_1121"] = sorted(str(x) for x in assoc(Fraction(2)))
    out["contains_m1_in_124"] = any(Fraction(-1) in assoc(Fraction(c * b, a_ * d))
                                   for (a_, b), (c, d) in [((1, 1), (1, 2)), ((1, 1), (1, 4)), ((1, 1), (2, 4))])
    out["contains_4_in_1121"] = Fraction(4) in assoc(Fraction(2))

    # fun(GF(2) x GF(3)): p with p and 1-p each zero or a unit of the product
    def ok(x):
        return x == (0, 0) or (x[0] != 0 and x[1] != 0)

    out["fun_gf2xgf3"] = [list(p) for p in itertools.product(range(2), range(3))
                          if ok(p) and ok(((1 - p[0]) % 2, (1 - p[1]) % 3))]

    x, al = sympy.symbols("x alpha")
    out["unit_ideal_cert"] = str(sympy.expand(2 * (x - 1) - (2 * x - 1)))
    out["alpha2_minus_1"] = str(sympy.factor(al ** 2 - 1))
    out["lambda_1112"] = int(sympy.Matrix([[1]]).rank() + sympy.Matrix([[1]]).rank())

    json.dump(out, sys.stdout, indent=1, sort_keys=True)
    print()


if __name__ == "__main__":
    main()

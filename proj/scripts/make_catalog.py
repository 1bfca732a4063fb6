#!/usr/bin/env python3
"""Builds data/catalog/groups.json.

Every record is verified before it is written: generators are checked
against the family's form and determinant constraints, and the order of
the generated group is computed from the projective permutation action
(sympy Schreier-Sims) and compared with the classical order formula.
"""

import json
import os
import sys
from sympy.combinatorics import Permutation, PermutationGroup

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "..", "data", "catalog", "groups.json")

# --- small finite fields, same encodings and moduli as the library ---------

MODULI = {
    2: (2, 1, [0, 1]),
    3: (3, 1, [0, 1]),
    4: (2, 2, [1, 1, 1]),
    5: (5, 1, [0, 1]),
    7: (7, 1, [0, 1]),
    8: (2, 3, [1, 1, 0, 1]),
    9: (3, 2, [2, 2, 1]),
    11: (11, 1, [0, 1]),
    13: (13, 1, [0, 1]),
    16: (2, 4, [1, 1, 0, 0, 1]),
}


class Gf:
    def __init__(self, q):
        p, k, modulus = MODULI[q]
        self.p, self.k, self.q, self.modulus = p, k, q, modulus
        self.add_t = [[0] * q for _ in range(q)]
        self.mul_t = [[0] * q for _ in range(q)]
        dec = lambda v: [(v // p**i) % p for i in range(k)]
        enc = lambda d: sum(c * p**i for i, c in enumerate(d))
        for a in range(q):
            for b in range(q):
                da, db = dec(a), dec(b)
                self.add_t[a][b] = enc([(x + y) % p for x, y in zip(da, db)])
                prod = [0] * (2 * k - 1)
                for i in range(k):
                    for j in range(k):
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p
                while len(prod) >= k + 1:
                    lead = prod[-1]
                    if lead:
                        sh = len(prod) - (k + 1)
                        for i in range(k + 1):
                            prod[sh + i] = (prod[sh + i] - lead * modulus[i]) % p
                    prod.pop()
                prod += [0] * (k - len(prod))
                self.mul_t[a][b] = enc(prod)
        self.neg_t = [0] * q
        self.inv_t = [0] * q
        for a in range(q):
            self.neg_t[a] = enc([(-c) % p for c in dec(a)])
            for b in range(1, q):
                if self.mul_t[a][b] == 1:
                    self.inv_t[a] = b
        self.primitive = next(a for a in range(1, q) if self.order(a) == q - 1)

    def add(self, a, b): return self.add_t[a][b]
    def sub(self, a, b): return self.add_t[a][self.neg_t[b]]
    def neg(self, a): return self.neg_t[a]
    def mul(self, a, b): return self.mul_t[a][b]
    def inv(self, a):
        assert a != 0
        return self.inv_t[a]
    def pow(self, a, e):
        r = 1
        for _ in range(e):
            r = self.mul(r, a)
        return r
    def order(self, a):
        assert a != 0
        n, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            n += 1
        return n
    def trace_to_subfield(self, a):
        # Tr: GF(q) -> GF(sqrt(q)), a + a^{sqrt q}.
        q0 = int(round(self.q ** 0.5))
        return self.add(a, self.pow(a, q0))


def mat_id(F, d):
    return [[1 if i == j else 0 for j in range(d)] for i in range(d)]


def mat_mul(F, A, B):
    d = len(A)
    C = [[0] * d for _ in range(d)]
    for i in range(d):
        for k in range(d):
            if A[i][k]:
                a = A[i][k]
                rowB = B[k]
                Ci = C[i]
                for j in range(d):
                    if rowB[j]:
                        Ci[j] = F.add(Ci[j], F.mul(a, rowB[j]))
    return C


def mat_det(F, A):
    d = len(A)
    M = [row[:] for row in A]
    det = 1
    for c in range(d):
        piv = next((r for r in range(c, d) if M[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = F.neg(det)
        det = F.mul(det, M[c][c])
        s = F.inv(M[c][c])
        for r in range(c + 1, d):
            f = F.mul(M[r][c], s)
            if f:
                for j in range(c, d):
                    M[r][j] = F.sub(M[r][j], F.mul(f, M[c][j]))
    return det


def proj_points(F, d):
    pts, idx = [], {}
    for code in range(1, F.q ** d):
        v, c = [0] * d, code
        for i in range(d):
            v[d - 1 - i] = c % F.q
            c //= F.q
        lead = next(i for i in range(d) if v[i])
        if v[lead] != 1:
            continue
        idx[tuple(v)] = len(pts)
        pts.append(tuple(v))
    return pts, idx


def proj_perm(F, d, pts, idx, M):
    images = []
    for v in pts:
        w = [0] * d
        for j in range(d):
            s = 0
            for i in range(d):
                if v[i]:
                    s = F.add(s, F.mul(v[i], M[i][j]))
            w[j] = s
        lead = next(i for i in range(d) if w[i])
        s = F.inv(w[lead])
        w = tuple(F.mul(x, s) for x in w)
        images.append(idx[w])
    return Permutation(images)


def group_order_via_projective(F, d, gens):
    pts, idx = proj_points(F, d)
    perms = [proj_perm(F, d, pts, idx, g) for g in gens]
    G = PermutationGroup(perms)
    return int(G.order())


def scalar_kernel(F, d, constraint):
    count = 0
    for lam in range(1, F.q):
        S = [[lam if i == j else 0 for j in range(d)] for i in range(d)]
        if constraint(S):
            count += 1
    return count


# --- order formulas ---------------------------------------------------------

def order_gl(d, q):
    o = q ** (d * (d - 1) // 2)
    for i in range(1, d + 1):
        o *= q ** i - 1
    return o

def order_sl(d, q): return order_gl(d, q) // (q - 1)

def order_gu(d, q):
    o = q ** (d * (d - 1) // 2)
    for i in range(1, d + 1):
        o *= q ** i - (-1) ** i
    return o

def order_su(d, q): return order_gu(d, q) // (q + 1)

def order_sp(d, q):
    n = d // 2
    o = q ** (n * n)
    for i in range(1, n + 1):
        o *= q ** (2 * i) - 1
    return o

def order_go_odd(d, q):
    n = (d - 1) // 2
    o = q ** (n * n)
    for i in range(1, n + 1):
        o *= q ** (2 * i) - 1
    return 2 * o

def order_o_even(d, q, eps):
    n = d // 2
    o = q ** (n * (n - 1)) * (q ** n - eps)
    for i in range(1, n):
        o *= q ** (2 * i) - 1
    return 2 * o  # full isometry group O = Omega.2 over GF(2)

def order_sz(q): return q * q * (q * q + 1) * (q - 1)


# --- generator builders -----------------------------------------------------

def transvection_gl(F, d, i, j, lam):
    M = mat_id(F, d)
    M[i][j] = lam
    return M


def sl_gens(F, d):
    gens = []
    alphas = [1] if F.k == 1 else [1, F.primitive]
    for lam in alphas:
        gens.append(transvection_gl(F, d, 0, 1, lam))
        gens.append(transvection_gl(F, d, 1, 0, lam))
    # cycle with sign making the determinant 1
    C = [[0] * d for _ in range(d)]
    for i in range(1, d):
        C[i - 1][i] = 1
    C[d - 1][0] = 1 if d % 2 == 1 else F.neg(1)
    gens.append(C)
    if F.q > 3:
        D = mat_id(F, d)
        D[0][0] = F.primitive
        D[1][1] = F.inv(F.primitive)
        gens.append(D)
    return gens


def gl_gens(F, d):
    D = mat_id(F, d)
    D[0][0] = F.primitive
    return sl_gens(F, d) + [D]


def sp_form(F, d):
    n = d // 2
    J = [[0] * d for _ in range(d)]
    for i in range(n):
        J[i][n + i] = 1
        J[n + i][i] = F.neg(1)
    return J


def bilin(F, B, v, w):
    s = 0
    d = len(v)
    for i in range(d):
        if v[i]:
            for j in range(d):
                if B[i][j] and w[j]:
                    s = F.add(s, F.mul(v[i], F.mul(B[i][j], w[j])))
    return s


def sp_transvection(F, B, v, lam):
    # x -> x + lam B(x,v) v
    d = len(v)
    M = mat_id(F, d)
    for i in range(d):
        e = [0] * d
        e[i] = 1
        c = F.mul(lam, bilin(F, B, e, v))
        for j in range(d):
            M[i][j] = F.add(M[i][j], F.mul(c, v[j]))
    return M


def sp_gens(F, d):
    B = sp_form(F, d)
    vs = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        vs.append(e)
    for i in range(d):
        for j in range(i + 1, d):
            e = [0] * d
            e[i] = 1
            e[j] = 1
            vs.append(e)
    lams = [1] if F.k == 1 else [1, F.primitive]
    gens = []
    for v in vs:
        for lam in lams:
            M = sp_transvection(F, B, v, lam)
            if M != mat_id(F, d):
                gens.append(M)
    return gens, B


def herm(F, v, w):
    # Gram identity, twist x -> x^q0.
    q0 = int(round(F.q ** 0.5))
    s = 0
    for a, b in zip(v, w):
        if a and b:
            s = F.add(s, F.mul(a, F.pow(b, q0)))
    return s


def su_gens(F, d, count=12):
    q0 = int(round(F.q ** 0.5))
    # every isotropic projective point, then an evenly spread sample
    iso = []
    for code in range(1, F.q ** d):
        v, c = [0] * d, code
        for i in range(d):
            v[d - 1 - i] = c % F.q
            c //= F.q
        lead = next(i for i in range(d) if v[i])
        if v[lead] != 1:
            continue
        if herm(F, v, v) == 0:
            iso.append(v)
    step = max(1, len(iso) // count)
    sample = iso[::step][:count]
    tz = [a for a in range(1, F.q) if F.add(a, F.pow(a, q0)) == 0]
    gens = []
    for v in sample:
        for lam in tz[:2]:
            M = mat_id(F, d)
            for i in range(d):
                e = [0] * d
                e[i] = 1
                c = F.mul(lam, herm(F, e, v))
                for j in range(d):
                    M[i][j] = F.add(M[i][j], F.mul(c, v[j]))
            if M != mat_id(F, d) and mat_det(F, M) == 1:
                gens.append(M)
    return gens


def gu_extra(F, d):
    q0 = int(round(F.q ** 0.5))
    beta = F.pow(F.primitive, q0 - 1)  # order q0+1
    D = mat_id(F, d)
    D[0][0] = beta
    return D


def go_odd_gens(F, d, count=20):
    # Gram identity; reflections r_v: x -> x - (2 B(x,v)/Q(v)) v.
    B = mat_id(F, d)
    vs = []
    for code in range(1, F.q ** d):
        v, c = [0] * d, code
        for i in range(d):
            v[d - 1 - i] = c % F.q
            c //= F.q
        lead = next(i for i in range(d) if v[i])
        if v[lead] != 1:
            continue
        if bilin(F, B, v, v) != 0:
            vs.append(v)
    step = max(1, len(vs) // count)
    vs = vs[::step][:count]
    gens = []
    for v in vs:
        qv = bilin(F, B, v, v)
        if qv == 0:
            continue
        M = mat_id(F, d)
        c0 = F.mul(F.add(1, 1), F.inv(qv))  # 2/Q(v)
        for i in range(d):
            e = [0] * d
            e[i] = 1
            c = F.mul(c0, bilin(F, B, e, v))
            for j in range(d):
                M[i][j] = F.sub(M[i][j], F.mul(c, v[j]))
        gens.append(M)
    return gens, B


def o_char2_gens(F, d, eps):
    # Quadratic form, upper triangular U.
    U = [[0] * d for _ in range(d)]
    for i in range(0, d - 2, 2):
        U[i][i + 1] = 1
    if eps == 1:
        U[d - 2][d - 1] = 1
    else:
        U[d - 2][d - 2] = 1
        U[d - 2][d - 1] = 1
        U[d - 1][d - 1] = 1
    Bpolar = [[F.add(U[i][j], U[j][i]) for j in range(d)] for i in range(d)]

    def quad(v):
        s = 0
        for i in range(d):
            if v[i]:
                for j in range(i, d):
                    if U[i][j] and v[j]:
                        s = F.add(s, F.mul(v[i], F.mul(U[i][j], v[j])))
        return s

    vs = []
    for code in range(1, 2 ** d):
        v = [(code >> i) & 1 for i in range(d)]
        if quad(v) == 1:
            vs.append(v)
    step = max(1, len(vs) // 24)
    vs = vs[::step][:24]
    gens = []
    for v in vs:
        M = mat_id(F, d)
        for i in range(d):
            e = [0] * d
            e[i] = 1
            c = bilin(F, Bpolar, e, v)
            for j in range(d):
                M[i][j] = F.add(M[i][j], F.mul(c, v[j]))
        if M != mat_id(F, d):
            gens.append(M)
    return gens, U, quad


def sz_gens(F):
    # q = 8, theta: x -> x^4 (the square root of the Frobenius twist).
    q = F.q
    assert q == 8
    theta = lambda a: F.pow(a, 4)
    gens = []

    def lower(a, b):
        ath = theta(a)
        M = [[1, 0, 0, 0],
             [a, 1, 0, 0],
             [F.add(b, F.mul(a, ath)), ath, 1, 0],
             [F.add(F.add(F.mul(F.mul(a, a), ath), F.mul(a, b)), theta(b)),
              b, a, 1]]
        return M

    gens.append(lower(1, 0))
    gens.append(lower(0, 1))
    gens.append(lower(F.primitive, F.primitive))
    # torus diag(l, l^3, l^-3, l^-1) normalizes the unipotent family
    lam = F.primitive
    def tpow(e):
        if e >= 0:
            return F.pow(lam, e)
        return F.inv(F.pow(lam, -e))
    gens.append([[tpow(1), 0, 0, 0],
                 [0, tpow(3), 0, 0],
                 [0, 0, tpow(-3), 0],
                 [0, 0, 0, tpow(-1)]])
    # antidiagonal involution
    gens.append([[0, 0, 0, 1],
                 [0, 0, 1, 0],
                 [0, 1, 0, 0],
                 [1, 0, 0, 0]])
    return gens


# --- record assembly --------------------------------------------------------

RECORDS = []


def flat(M):
    return [x for row in M for x in row]


def add_record(name, family, d, q, gens, form, form_kind, expected, verify=True):
    F = Gf(q)
    if verify:
        got = group_order_via_projective(F, d, gens)
        if family in ("SL", "GL"):
            kernel = sum(1 for lam in range(1, q)
                         if (F.pow(lam, d) == 1 if family == "SL" else True))
        elif family in ("SU", "GU"):
            q0 = int(round(q ** 0.5))
            kernel = sum(1 for lam in range(1, q)
                         if F.pow(lam, q0 + 1) == 1 and (family == "GU" or F.pow(lam, d) == 1))
        elif family in ("Sp",):
            kernel = sum(1 for lam in range(1, q) if F.mul(lam, lam) == 1)
        elif family == "GSp":
            kernel = q - 1
        elif family == "GO":
            kernel = sum(1 for lam in range(1, q) if F.mul(lam, lam) == 1)
        elif family == "Sz":
            kernel = 1
        else:
            kernel = 1
        if got * kernel != expected:
            raise SystemExit(f"{name}: projective order {got} x kernel {kernel} != {expected}")
        print(f"  ok {name}: |image|={got} kernel={kernel} order={expected}")
    rec = {
        "name": name,
        "family": family,
        "d": d,
        "q": q,
        "field_modulus": MODULI[q][2],
        "generators": [flat(g) for g in gens],
        "expected_order": str(expected),
    }
    if form is not None:
        rec["form"] = flat(form)
        rec["form_kind"] = form_kind
    RECORDS.append(rec)


def main():
    # SL(2,q) series
    for q in (4, 5, 7, 8, 9, 11, 13, 16):
        F = Gf(q)
        add_record(f"SL(2,{q})", "SL", 2, q, sl_gens(F, 2), None, None, order_sl(2, q))

    for (d, q) in ((3, 3), (4, 3)):
        F = Gf(q)
        add_record(f"SL({d},{q})", "SL", d, q, sl_gens(F, d), None, None, order_sl(d, q))
        add_record(f"GL({d},{q})", "GL", d, q, gl_gens(F, d), None, None, order_gl(d, q))

    # unitary: SU(3,3) over GF(9), SU(4,2) over GF(4), SU(4,3)/GU(4,3) over GF(9), GU(4,2)
    for (d, qq, q0) in ((3, 9, 3), (4, 4, 2), (4, 9, 3)):
        F = Gf(qq)
        for count in (12, 24, 48, 1000):
            gens = su_gens(F, d, count)
            got = group_order_via_projective(F, d, gens)
            kernel = sum(1 for lam in range(1, qq)
                         if F.pow(lam, q0 + 1) == 1 and F.pow(lam, d) == 1)
            if got * kernel == order_su(d, q0):
                break
        gram = mat_id(F, d)
        add_record(f"SU({d},{q0})", "SU", d, qq, gens, gram, "sesquilinear", order_su(d, q0))
        gens_gu = gens + [gu_extra(F, d)]
        add_record(f"GU({d},{q0})", "GU", d, qq, gens_gu, gram, "sesquilinear", order_gu(d, q0))

    # symplectic
    for (d, q) in ((4, 3), (6, 2)):
        F = Gf(q)
        gens, B = sp_gens(F, d)
        add_record(f"Sp({d},{q})", "Sp", d, q, gens, B, "bilinear", order_sp(d, q))
    # GSp(4,3): Sp(4,3) plus a similitude
    F = Gf(3)
    gens, B = sp_gens(F, 4)
    S = mat_id(F, 4)
    S[0][0] = 2
    S[1][1] = 2
    add_record("GSp(4,3)", "GSp", 4, 3, gens + [S], B, "bilinear", 2 * order_sp(4, 3))

    # GO(5,3)
    F = Gf(3)
    gens, B = go_odd_gens(F, 5)
    add_record("GO(5,3)", "GO", 5, 3, gens, B, "bilinear", order_go_odd(5, 3))

    # O+-(8,2)
    F = Gf(2)
    for eps, tag in ((1, "O+(8,2)"), (-1, "O-(8,2)")):
        gens, U, _ = o_char2_gens(F, 8, eps)
        add_record(tag, "GO", 8, 2, gens, U, "quadratic", order_o_even(8, 2, eps))

    # Sz(8)
    F = Gf(8)
    gens = sz_gens(F)
    J = [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]
    add_record("Sz(8)", "Sz", 4, 8, gens, J, "bilinear", order_sz(8))

    os.makedirs(os.path.dirname(OUT), exist_ok=True)
    with open(OUT, "w") as f:
        json.dump(RECORDS, f, indent=1)
        f.write("\n")
    print(f"wrote {len(RECORDS)} records to {OUT}")


if __name__ == "__main__":
    main()

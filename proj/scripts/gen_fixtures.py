#!/usr/bin/env python3
"""Reference values for the test suite.

Writes tests/fixtures/genus2_pack.json and tests/fixtures/golden_vectors.json.
Everything here is computed with mpmath at fixed precision by methods that
do not share code with the C++ library: direct theta series, q-products,
image sums for cone angles 2pi/n, mpmath's besselk, period integrals of a
hyperelliptic curve.

    python3 scripts/gen_fixtures.py [--check]
"""
import argparse
import itertools
import json
import os
import sys

from mpmath import mp, mpf, mpc, sqrt, quad, exp, pi, matrix, inverse, log, fabs, euler

DPS = 40
mp.dps = DPS
HERE = os.path.dirname(os.path.abspath(__file__))
FIXTURES = os.path.join(HERE, "..", "tests", "fixtures")

I1 = mpc(0, 1)


def num(x):
    x = mpc(x)
    if x.imag == 0:
        return mp.nstr(x.real, 34)
    return [mp.nstr(x.real, 34), mp.nstr(x.imag, 34)]


def pair(z):
    z = mpc(z)
    return [float(z.real), float(z.imag)]


# ---------------------------------------------------------------- genus 1

def theta_half(z, B, terms=200):
    z, B = mpc(z), mpc(B)
    h = mpf(1) / 2
    acc = mpc(0)
    for n in range(-terms, terms + 1):
        m = n + h
        acc += exp(I1 * pi * B * m * m + 2 * I1 * pi * m * (z + h))
    return acc


def theta_half_prime(z, B, terms=200):
    z, B = mpc(z), mpc(B)
    h = mpf(1) / 2
    acc = mpc(0)
    for n in range(-terms, terms + 1):
        m = n + h
        acc += 2 * I1 * pi * m * exp(I1 * pi * B * m * m + 2 * I1 * pi * m * (z + h))
    return acc


def eta(B, factors=500):
    B = mpc(B)
    q = exp(2 * I1 * pi * B)
    p = mpc(1)
    for n in range(1, factors + 1):
        p *= 1 - q ** n
    return exp(I1 * pi * B / 12) * p


def green(w, B):
    B = mpc(B)
    w = mpc(w)
    n = mp.nint(w.imag / B.imag)
    w -= n * B
    w -= mp.nint(w.real)
    return log(abs(theta_half(w, B, 40))) - pi * w.imag ** 2 / B.imag


def cI(beta):
    x = beta / (2 * pi)
    return -(x - 1 / x) / 12


# Hadamard finite parts, split at l = 1, subtracting the raw singular terms.
# The subtracted remainder is O(l) at 0, so dropping (0, 1e-16) costs ~1e-32;
# the extra working digits absorb the cancellation near the cutoff.
LOW = mpf(10) ** -16
NEAR = [LOW, mpf(10) ** -8, mpf(10) ** -4, mpf(1) / 4, mpf(1) / 2, 1]


def H_mp(beta):
    with mp.workdps(DPS + 70):
        f = lambda l: mp.coth(pi * l) * mp.coth(beta * l / 2) / (8 * l)
        c1 = beta / (48 * pi) + pi / (12 * beta)
        near = quad(lambda l: f(l) - 1 / (4 * pi * beta * l ** 3) - c1 / l, NEAR)
        far = quad(lambda l: f(l) - 1 / (8 * l), [1, 4, 16, mp.inf])
        v = near + far - 1 / (8 * pi * beta)
    return +v


def K_mp(beta):
    with mp.workdps(DPS + 70):
        f = lambda l: mp.coth(pi * l) / mp.sinh(beta * l / 2) ** 2
        c3 = 4 / (pi * beta ** 2)
        c1 = 4 * pi / (3 * beta ** 2) - 1 / (3 * pi)
        near = quad(lambda l: f(l) - c3 / l ** 3 - c1 / l, NEAR)
        far = quad(f, [1, 4, 16, mp.inf])
        v = near + far - c3 / 2
    return +v


def J_mp(beta):
    x = beta / (2 * pi)
    return (-euler - 1 - log(beta / 2)) / 12 * (x + 1 / x) + 5 * beta / (48 * pi) - 2 * H_mp(beta)


def N_mp(beta):
    x = beta / (2 * pi)
    lg = (-euler - 1 - log(beta / 2)) / 12
    dprim = -(x + 1 / x) / (12 * beta) + lg * (1 - 1 / x ** 2) / (2 * pi) + 5 / (48 * pi) + K_mp(beta) / 8
    return -dprim


def log_d_mp(beta, theta_prime=None):
    x = beta / (2 * pi)
    e = J_mp(beta) - J_mp(2 * pi) + cI(beta) + (x + 1 / x) * log(x) / 12
    if theta_prime is not None:
        e += (x + 1 / x - 2) * log(theta_prime) / 12
    return e


# ---------------------------------------------------------------- genus 2

BRANCH = [mpf('-1.7'), mpf('-0.6'), mpf('0.4'), mpf('1.3'), mpf('2.5')]
HALF = mpf(1) / 2
# characteristics are (a, b) with a, b in (1/2) Z^2
DELTA = ((HALF, 0), (HALF, 0))


class Curve:
    """y^2 = prod (x - e_i), base point of the Abel map at the last e_i."""

    def __init__(self):
        E = BRANCH
        self.E = E

        def I(k, p):
            a, b = E[k], E[k + 1]

            def f(t):
                x = (a + b) / 2 - (b - a) / 2 * mp.cos(t)
                rest = mpc(1)
                for i, e in enumerate(E):
                    if i in (k, k + 1):
                        continue
                    rest *= sqrt(x - e) if x > e else I1 * sqrt(e - x)
                return x ** p / (I1 * rest)

            return quad(f, [0, pi])

        Iv = [[I(k, p) for k in range(4)] for p in range(2)]
        per = lambda c: [2 * sum(c[k] * Iv[p][k] for k in range(4)) for p in range(2)]
        # cuts of prod sqrt(x - e_i) lie on (-inf,e1), (e2,e3), (e4,e5)
        cyc_a = [[0, 1, 0, 0], [0, 0, 0, 1]]
        cyc_b = [[-1, 0, 0, 0], [-1, 0, -1, 0]]
        A = matrix(2, 2)
        Bp = matrix(2, 2)
        for j in range(2):
            a, b = per(cyc_a[j]), per(cyc_b[j])
            for p in range(2):
                A[p, j] = a[p]
                Bp[p, j] = b[p]
        self.M = inverse(A)
        B = self.M * Bp
        self.asym = abs(B[0, 1] - B[1, 0])
        self.B = (B + B.T) / 2
        self.lattice = list(itertools.product(range(-10, 11), repeat=2))
        self.grad_delta = self.theta_grad([0, 0], DELTA)
        self.K = self.find_riemann_constant()

    def R(self, x):
        r = mpc(1)
        for e in self.E[:4]:
            r *= sqrt(x - e)
        return r

    def y(self, x, sheet):
        return sheet * sqrt(x - self.E[4]) * self.R(x)

    def abel(self, x0, sheet):
        # straight path from e5 in the upper half plane, x = e5 + d s^2
        d = x0 - self.E[4]
        sd = sqrt(d)
        out = []
        for i in range(2):
            def f(s_):
                x = self.E[4] + d * s_ * s_
                return 2 * sd * (self.M[i, 0] + self.M[i, 1] * x) / self.R(x)
            v, err = quad(f, mp.linspace(0, 1, 33), error=True, maxdegree=10)
            if err > mpf(10) ** (-30):
                raise RuntimeError("abel quadrature error %s" % err)
            out.append(sheet * v)
        return out

    def taylor_inv_sqrt(self, x0, n):
        # coefficients of P(x0+t)^(-1/2), P = prod (x - e_i); P f' = -1/2 P' f
        P = [mpc(1)]
        for e in self.E:
            Q = [mpc(0)] * (len(P) + 1)
            for k, c in enumerate(P):
                Q[k] += c * (x0 - e)
                Q[k + 1] += c
            P = Q
        dP = [(k + 1) * P[k + 1] for k in range(len(P) - 1)]
        f = [1 / sqrt(P[0])]
        for m in range(n):
            # coefficient of t^m in P f' + 1/2 P' f = 0
            acc = mpc(0)
            for k in range(1, min(m, len(P) - 1) + 1):
                acc += P[k] * (m - k + 1) * f[m - k + 1]
            for k in range(0, min(m, len(dP) - 1) + 1):
                acc += HALF * dP[k] * f[m - k]
            f.append(-acc / (P[0] * (m + 1)))
        return f

    def point(self, x0, sheet, nterms=60):
        x0 = mpc(x0)
        y0 = self.y(x0, sheet)
        inv = self.taylor_inv_sqrt(x0, nterms)
        # fix the branch of P^(-1/2) to 1/y0
        r = (1 / y0) / inv[0]
        inv = [c * r for c in inv]
        # v_i(x) = (M_i0 + M_i1 x) / y; c_n = coefficient of t^(n-1) in v, divided by n
        taylor = []
        for n in range(1, nterms + 1):
            k = n - 1
            row = []
            for i in range(2):
                c = self.M[i, 0] * inv[k] + (self.M[i, 1] * (x0 * inv[k] + (inv[k - 1] if k >= 1 else 0)))
                row.append(c / n)
            taylor.append(row)
        v = [taylor[0][0], taylor[0][1]]
        h = sqrt(self.grad_delta[0] * v[0] + self.grad_delta[1] * v[1])
        dist = min(abs(x0 - e) for e in self.E)
        return {"x": x0, "sheet": sheet, "abel": self.abel(x0, sheet), "v": v, "h": h,
                "taylor": taylor, "radius": mpf(0.4) * dist}

    def theta(self, z, ch=((0, 0), (0, 0))):
        B = self.B
        acc = mpc(0)
        for n in self.lattice:
            m = [n[0] + ch[0][0], n[1] + ch[0][1]]
            b = ch[1]
            q = sum(m[i] * B[i, j] * m[j] for i in range(2) for j in range(2))
            acc += exp(I1 * pi * q + 2 * I1 * pi * sum(m[i] * (z[i] + b[i]) for i in range(2)))
        return acc

    def theta_grad(self, z, ch):
        B = self.B
        gr = [mpc(0), mpc(0)]
        for n in self.lattice:
            m = [n[0] + ch[0][0], n[1] + ch[0][1]]
            b = ch[1]
            q = sum(m[i] * B[i, j] * m[j] for i in range(2) for j in range(2))
            e = exp(I1 * pi * q + 2 * I1 * pi * sum(m[i] * (z[i] + b[i]) for i in range(2)))
            for i in range(2):
                gr[i] += 2 * I1 * pi * m[i] * e
        return gr

    def find_riemann_constant(self):
        probes = [(mpc('0.3', '0.8'), 1), (mpc('-1.1', '0.5'), -1), (mpc('1.7', '0.2'), 1)]
        abels = [self.abel(x, sh) for x, sh in probes]
        hits = []
        for n in itertools.product([0, 1], repeat=2):
            for m in itertools.product([0, 1], repeat=2):
                K = [(n[i] + sum(self.B[i, j] * m[j] for j in range(2))) / 2 for i in range(2)]
                if max(abs(self.theta([a[0] + K[0], a[1] + K[1]])) for a in abels) < mpf(10) ** (-25):
                    hits.append(K)
        if len(hits) != 1:
            raise RuntimeError("Riemann constant search found %d candidates" % len(hits))
        return hits[0]

    # ----- surface functions on tabulated points
    def prime(self, P, Q):
        d = [P["abel"][i] - Q["abel"][i] for i in range(2)]
        if d[0] == 0 and d[1] == 0:
            return mpc(0)
        return self.theta(d, DELTA) / (P["h"] * Q["h"])

    def sigma(self, z, p0, xs):
        S = [sum(x["abel"][i] for x in xs) for i in range(2)]
        num_ = self.theta([S[i] - z["abel"][i] + self.K[i] for i in range(2)])
        den = self.theta([S[i] - p0["abel"][i] + self.K[i] for i in range(2)])
        prod = mpc(1)
        for x in xs:
            prod *= self.prime(x, p0) / self.prime(x, z)
        return num_ / den * prod

    def kz(self, P):
        return [self.K[i] + P["abel"][i] for i in range(2)]  # g - 1 = 1

    def q(self, P, Q):
        Y = matrix([[self.B[i, j].imag for j in range(2)] for i in range(2)])
        k1 = matrix([[c.imag] for c in self.kz(P)])
        k2 = matrix([[c.imag] for c in self.kz(Q)])
        return 4 * pi * (k1.T * inverse(Y) * k2)[0, 0]


def genus2(curve):
    pts = {
        "P1": (mpc('0.3', '0.8'), 1),
        "P2": (mpc('-1.1', '0.5'), -1),
        "P3": (mpc('1.6', '0.7'), 1),
        "p0": (mpc('-0.2', '1.1'), -1),
        "p0b": (mpc('2.1', '0.35'), 1),
        "p1": (mpc('1.9', '0.4'), 1),
        "p1b": (mpc('-0.8', '0.9'), 1),
        "x1": (mpc('-1.3', '0.3'), 1),
        "x2": (mpc('0.9', '1.4'), -1),
        "x3": (mpc('2.1', '0.9'), -1),
        "x4": (mpc('-0.4', '0.2'), 1),
        "z1": (mpc('0.7', '0.6'), 1),
        "z2": (mpc('-0.5', '0.45'), -1),
    }
    data = {k: curve.point(x, sh) for k, (x, sh) in pts.items()}
    # second chart at P1: w = c (x - x(P1)); dw/dx = c
    c = mpc('0.6', '-0.8') * mpf('1.3')
    base = data["P1"]
    alt = dict(base)
    alt["v"] = [base["v"][i] / c for i in range(2)]
    alt["taylor"] = [[row[i] / c ** (n + 1) for i in range(2)] for n, row in enumerate(base["taylor"])]
    alt["h"] = base["h"] / sqrt(c)
    alt["radius"] = base["radius"] * abs(c)
    data["P1w"] = alt
    order = ["P1", "P1w", "P2", "P3", "p0", "p0b", "p1", "p1b", "x1", "x2", "x3", "x4", "z1", "z2"]
    records = []
    for hnd in order:
        d = data[hnd]
        rec = {
            "handle": hnd,
            "chart": ("w = %s (x - x0)" % mp.nstr(c, 6)) if hnd == "P1w" else "x - x0",
            "abel": [pair(a) for a in d["abel"]],
            "differential": [pair(a) for a in d["v"]],
            "h": pair(d["h"]),
            "abel_taylor": [[pair(a) for a in row] for row in d["taylor"]],
            "chart_radius": float(d["radius"]),
            "x": pair(d["x"]),
            "sheet": d["sheet"],
        }
        if hnd == "P1w":
            rec["same_point_as"] = "P1"
            rec["transition"] = pair(c)
        records.append(rec)
    pack = {
        "schema": "polydet.surface-pack",
        "version": 1,
        "name": "hyperelliptic-genus2",
        "genus": 2,
        "normalization": "a-normalized",
        "period_matrix": [pair(curve.B[i, j]) for i in range(2) for j in range(2)],
        "odd_characteristic": {"a": [0.5, 0.0], "b": [0.5, 0.0]},
        "base_point": "e5",
        "riemann_constant_base": [pair(k) for k in curve.K],
        "basepoints": {"p0": "p0", "p1": "p1"},
        "sigma_auxiliary": ["x1", "x2"],
        "points": records,
        "provenance": {
            "curve": "y^2 = prod (x - e_i), e = (-1.7, -0.6, 0.4, 1.3, 2.5)",
            "abel_base": "branch point x = 2.5, straight paths in the upper half plane",
            "cycles": "a_k encircle (e2,e3), (e4,e5); b_1 = -2 int_{e1}^{e2}, b_2 = -2 int_{e1}^{e2} - 2 int_{e3}^{e4}",
            "chart": "x - x0 unless stated; Taylor data to order 60",
            "precision_digits": DPS,
            "generator": "scripts/gen_fixtures.py",
        },
    }
    return pack, data, c


def hg_checks(curve, data):
    xs = [data["x1"], data["x2"]]
    xs2 = [data["x3"], data["x4"]]
    z, p0, p1 = data["z1"], data["p0"], data["p1"]
    s1, s2 = curve.sigma(z, p0, xs), curve.sigma(z, p0, xs2)
    print("  sigma x-invariance", mp.nstr(abs(s1 / s2 - 1), 3), file=sys.stderr)
    m = curve.sigma(z, p0, xs) * curve.sigma(p0, p1, xs) / curve.sigma(z, p1, xs) - 1
    print("  multiplication law", mp.nstr(abs(m), 3), file=sys.stderr)
    print("  period matrix asymmetry", mp.nstr(curve.asym, 3), file=sys.stderr)
    print("  theta[delta](0)", mp.nstr(abs(curve.theta([0, 0], DELTA)), 3), file=sys.stderr)
    div = [("P1", mpf(1)), ("P2", mpf(1))]
    divw = [("P1w", mpf(1)), ("P2", mpf(1))]
    print("  D chart change", mp.nstr(hg_D(curve, data, div) - hg_D(curve, data, divw), 3), file=sys.stderr)
    beta = lambda b: 2 * pi * (1 + b)
    res = lambda div_, C, **kw: hg_D(curve, data, div_, **kw) - sum(cI(beta(b)) for _, b in div_) * log(C)
    sg = abs(curve.sigma(data["p0b"], data["p0"], xs))
    lhs = res(div, 1) - res(div, sg ** 4, p0="p0b")
    print("  p0 law", mp.nstr(lhs - mpf(4) * (1 - 2) / 3 * log(sg), 3), file=sys.stderr)
    probe = data["z2"]
    dC = hg_phi(curve, data, div, probe, p1="p1b") - hg_phi(curve, data, div, probe)
    print("  p1 law", mp.nstr(res(div, 1) - res(div, exp(dC), p1="p1b"), 3), file=sys.stderr)


def hg_phi(curve, data, divisor, z, C=1, p0="p0", p1="p1", xs=("x1", "x2")):
    X = [data[x] for x in xs]
    phi = -log(C)
    for hnd, b in divisor:
        zk = data[hnd]
        phi -= b * (2 * log(abs(curve.prime(z, zk) / curve.prime(data[p1], zk))) + curve.q(z, zk))
    phi -= 4 * log(abs(curve.sigma(z, data[p0], X)))
    return phi


def hg_D(curve, data, divisor, p0="p0", p1="p1", xs=("x1", "x2")):
    X = [data[x] for x in xs]
    beta = lambda b: 2 * pi * (1 + b)
    n = len(divisor)
    pr = qd = 0
    sumI = sum(cI(beta(b)) for _, b in divisor)
    for i in range(n):
        hi, bi = divisor[i]
        for j in range(n):
            hj, bj = divisor[j]
            c = bi * bj * (1 / beta(bi) + 1 / beta(bj))
            if i < j:
                pr += c * 2 * log(abs(curve.prime(data[hi], data[hj])))
            qd += c * curve.q(data[hi], data[hj]) / 2
    tail = 0
    for hi, bi in divisor:
        tail += sumI * bi * 2 * log(abs(curve.prime(data[p1], data[hi])))
        tail -= 2 * pi * bi ** 2 / (3 * beta(bi)) * log(abs(curve.sigma(data[hi], data[p0], X)))
    return pi / 6 * (pr + qd) + tail


# ---------------------------------------------------------------- golden vectors

def golden(curve, data):
    out = []

    def add(key, op, args, value, note):
        out.append({"key": key, "op": op, "args": args, "value": num(value), "note": note})

    Bi = mpc(0, 1)
    add("jacobi_theta_half@(0.3+0.1i,i)", "jacobi_theta", {"a": 0.5, "b": 0.5, "z": [0.3, 0.1], "B": [0, 1]},
        theta_half(mpc(0.3, 0.1), Bi), "direct 401-term series")
    add("jacobi_theta_half@(0,i)", "jacobi_theta", {"a": 0.5, "b": 0.5, "z": [0, 0], "B": [0, 1]},
        mpc(0), "odd characteristic")
    add("jacobi_theta_half@(0.17-0.42i,0.3+1.2i)", "jacobi_theta",
        {"a": 0.5, "b": 0.5, "z": [0.17, -0.42], "B": [0.3, 1.2]},
        theta_half(mpc(0.17, -0.42), mpc(0.3, 1.2)), "direct series")
    add("jacobi_theta_0_1/2@(0.25,0.5+0.8i)", "jacobi_theta", {"a": 0.0, "b": 0.5, "z": [0.25, 0], "B": [0.5, 0.8]},
        sum(exp(I1 * pi * mpc(0.5, 0.8) * n * n + 2 * I1 * pi * n * (mpf(0.25) + HALF)) for n in range(-200, 201)),
        "direct series")
    add("theta_half_prime@(0,i)", "jacobi_theta_z_derivative", {"a": 0.5, "b": 0.5, "z": [0, 0], "B": [0, 1]},
        theta_half_prime(0, Bi), "term-by-term derivative")
    add("theta_half_prime@(0.2,2i)", "jacobi_theta_z_derivative", {"a": 0.5, "b": 0.5, "z": [0.2, 0], "B": [0, 2]},
        theta_half_prime(mpc(0.2), mpc(0, 2)), "term-by-term derivative")
    add("eta@i", "dedekind_eta", {"B": [0, 1]}, eta(Bi), "500-factor q-product")
    add("eta@1+2i", "dedekind_eta", {"B": [1, 2]}, eta(mpc(1, 2)), "500-factor q-product")
    add("eta@0.5+0.866i", "dedekind_eta", {"B": [0.5, float(sqrt(3) / 2)]}, eta(mpc(0.5, float(sqrt(3) / 2))),
        "500-factor q-product")
    for w in [mpc(1), mpc(1e-6), mpc(0.3, 0.2), mpc(2, 3), mpc(6.9, -1), mpc(7.2, 0.5), mpc(10), mpc(25, -9),
              mpc(3, 6.5)]:
        add("k0@%s" % mp.nstr(w, 8), "macdonald_k0", {"w": pair(w)}, mp.besselk(0, mpc(float(w.real), float(w.imag))),
            "mpmath besselk")
    # cone heat kernel by images for beta = 2pi/n
    for (n, r1, p1_, r2, p2_, t) in [(2, 1.0, 0.0, 1.0, 0.0, 0.1), (4, 0.7, 0.2, 1.1, 1.0, 0.4),
                                     (3, 0.5, 0.1, 0.9, 1.7, 0.25)]:
        beta = 2 * pi / n
        acc = mpf(0)
        for k in range(n):
            th = k * beta - (mpf(p1_) - mpf(p2_))
            acc += exp(-(mpf(r1) ** 2 + mpf(r2) ** 2 - 2 * mpf(r1) * mpf(r2) * mp.cos(th)) / (4 * mpf(t)))
        acc /= 4 * pi * mpf(t)
        add("heat@(2pi/%d,%g,%g,%g,%g,%g)" % (n, r1, p1_, r2, p2_, t), "cone_heat_kernel",
            {"beta": float(beta), "x": [r1, p1_], "xp": [r2, p2_], "t": t}, acc, "method of images")
    for (n, r, mu) in [(2, 1.0, -100.0), (4, 0.3, -4.0), (3, 0.8, -10.0), (2, 0.1, -50.0)]:
        beta = mpf(float(2 * pi / n))
        s_ = mpf(r) * sqrt(-mpf(mu))
        acc = mpf(0)
        for k in range(1, n):
            acc += (-mpf(mu)) / (2 * pi) * mp.besselk(0, 2 * s_ * abs(mp.sin(k * pi / n)))
        add("a_mu@(2pi/%d,%g,%g)" % (n, r, mu), "a_mu", {"beta": float(beta), "r": r, "mu": [mu, 0]}, acc,
            "method of images")
    for beta_s, beta in [("2pi", 2 * pi), ("4pi", 4 * pi), ("pi", pi), ("pi/2", pi / 2), ("3pi", 3 * pi)]:
        b = float(beta)
        add("hadamard_coth_coth@%s" % beta_s, "hadamard_coth_coth", {"beta": b}, H_mp(mpf(b)),
            "raw subtraction at split 1, tanh-sinh")
        add("hadamard_coth_csch2@%s" % beta_s, "hadamard_coth_csch2", {"beta": b}, K_mp(mpf(b)),
            "raw subtraction at split 1, tanh-sinh")
    for beta_s, beta in [("2pi", 2 * pi), ("pi", pi), ("pi/2", pi / 2), ("3pi", 3 * pi), ("5pi", 5 * pi)]:
        add("coefficient_Itilde@%s" % beta_s, "coefficient_Itilde", {"beta": float(beta)}, N_mp(mpf(float(beta))),
            "minus the beta-derivative of the d primitive")
    for beta_s, beta in [("4pi", 4 * pi), ("pi", pi), ("3pi/2", 3 * pi / 2)]:
        add("coefficient_d@%s" % beta_s, "coefficient_d", {"beta": float(beta), "torus": False},
            exp(log_d_mp(mpf(float(beta)))), "genus mode")
    tp = abs(theta_half_prime(0, Bi))
    add("coefficient_d@3pi,torus,i", "coefficient_d", {"beta": float(3 * pi), "torus": True, "theta_prime": float(tp)},
        exp(log_d_mp(mpf(float(3 * pi)), mpf(float(tp)))), "torus mode, theta' at B = i")

    # torus
    P = [mpc(0.2, 0), mpc(0.7, 0.3)]
    bs = [HALF, -HALF]
    spec = {"B": [0, 1], "points": [{"P": [0.2, 0], "b": 0.5}, {"P": [0.7, 0.3], "b": -0.5}], "C": 1.0}

    def phi_t(z, P=P, bs=bs, B=Bi, C=1):
        return -sum(2 * b * green(z - p, B) for p, b in zip(P, bs)) - log(C)

    add("torus_phi@spec1,0.5", "torus_phi", {"spec": spec, "z": [0.5, 0]}, phi_t(mpc(0.5)), "periodic Green function")
    add("torus_phi@spec1,0.31+0.77i", "torus_phi", {"spec": spec, "z": [0.31, 0.77]}, phi_t(mpc(0.31, 0.77)),
        "periodic Green function")
    beta = lambda b: 2 * pi * (1 + b)

    def D_t(P, bs, B):
        acc = 0
        for i in range(len(P)):
            for j in range(i + 1, len(P)):
                acc += bs[i] * bs[j] * (1 / beta(bs[i]) + 1 / beta(bs[j])) * green(P[i] - P[j], B)
        return pi / 3 * acc

    add("torus_D@spec1", "torus_D", {"spec": spec}, D_t(P, bs, Bi), "pair sum")
    spec3 = {"B": [0.3, 1.2], "points": [{"P": [0.13, 0.41], "b": 0.3}, {"P": [0.61, 0.77], "b": -0.7},
                                          {"P": [0.33, 0.15], "b": 0.4}], "C": 1.7}
    P3 = [mpc(0.13, 0.41), mpc(0.61, 0.77), mpc(0.33, 0.15)]
    b3 = [mpf(0.3), mpf(-0.7), mpf(0.4)]
    B3 = mpc(0.3, 1.2)
    add("torus_D@spec3", "torus_D", {"spec": spec3}, D_t(P3, b3, B3), "pair sum")
    add("torus_c0@i", "torus_c0", {"B": [0, 1]}, abs(eta(Bi)) ** 4, "Im B |eta|^4")
    add("torus_c0@0.3+1.2i", "torus_c0", {"B": [0.3, 1.2]}, mpf(1.2) * abs(eta(B3)) ** 4, "Im B |eta|^4")

    def logdet_t(P, bs, B, C):
        tpB = abs(theta_half_prime(0, B))
        v = D_t(P, bs, B) + log(B.imag * abs(eta(B)) ** 4)
        for b in bs:
            bb = mpf(float(beta(b)))
            v += 2 * log_d_mp(bb, tpB) - cI(bb) * log(C)
        return v

    add("torus_log_det@spec1", "torus_log_det", {"spec": spec}, logdet_t(P, bs, Bi, 1), "assembly")
    add("torus_log_det@spec3", "torus_log_det", {"spec": spec3}, logdet_t(P3, b3, B3, mpf(1.7)), "assembly")

    # point-variation coefficients by numerical differentiation of the Green function
    def dgreen(w, B, v):
        return mp.diff(lambda t: green(w + t * v, B), 0)

    for vdir, vv in [("re", mpc(1)), ("im", I1)]:
        A = [0, 0]
        A[1] = -2 * bs[0] * dgreen(P[0] - P[1], Bi, vv)
        A[0] = 2 * bs[0] / (bs[0] + 2) * bs[1] * dgreen(P[0] - P[1], Bi, vv)
        for j in range(2):
            add("torus_A@spec1,P1%s,%d" % (vdir, j), "torus_A",
                {"spec": spec, "tau": {"kind": "point", "index": 0, "imaginary": vdir == "im"}, "j": j}, A[j],
                "mpmath differentiation of the periodic Green function")
    # angle variation, tau = beta_1 with beta_2 compensating
    tpi = abs(theta_half_prime(0, Bi))
    bdot = [1, -1]
    rhs = 0
    for j in range(2):
        k = 1 - j
        bj = beta(bs[j])
        gjk = green(P[j] - P[k], Bi)
        reu = -2 * bs[k] * gjk - 2 * bs[j] * log(tpi)
        dreu = -2 * bdot[k] / (2 * pi) * gjk - 2 * bdot[j] / (2 * pi) * log(tpi)
        A = -(bdot[j] / bj) * (2 * log(bj / (2 * pi)) + reu) + dreu
        rhs += (-2 * bdot[j] / bj) * bj * N_mp(mpf(float(bj))) + A * cI(mpf(float(bj)))
        add("torus_A@spec1,beta1,%d" % j, "torus_A",
            {"spec": spec, "tau": {"kind": "angle", "index": 0, "partner": 1}, "j": j}, A, "angle coefficient")
    add("zeta_calc_rhs@spec1,beta1", "zeta_calc_rhs",
        {"spec": spec, "tau": {"kind": "angle", "index": 0, "partner": 1}}, rhs, "mixed I and Itilde terms")

    # genus 2
    g2 = lambda h: data[h]
    add("prime_form@P1,P2", "prime_form", {"z": "P1", "zp": "P2"}, curve.prime(g2("P1"), g2("P2")),
        "theta[delta] over h h'")
    add("prime_form@z1,p1", "prime_form", {"z": "z1", "zp": "p1"}, curve.prime(g2("z1"), g2("p1")),
        "theta[delta] over h h'")
    add("fay_sigma@z1,p0", "fay_sigma", {"z": "z1", "p0": "p0", "x": ["x1", "x2"]},
        curve.sigma(g2("z1"), g2("p0"), [g2("x1"), g2("x2")]), "Fay ratio with x = (x1, x2)")
    add("q_bilinear@P1,P2", "q_bilinear", {"z": "P1", "zp": "P2"}, curve.q(g2("P1"), g2("P2")), "Riemann constants")
    add("q_bilinear@z1,z1", "q_bilinear", {"z": "z1", "zp": "z1"}, curve.q(g2("z1"), g2("z1")), "Riemann constants")
    div = [("P1", mpf(1)), ("P2", mpf(1))]
    divj = [{"handle": "P1", "b": 1.0}, {"handle": "P2", "b": 1.0}]
    add("phi_potential@b11,z1", "phi_potential", {"divisor": divj, "C": 1.0, "z": "z1"},
        hg_phi(curve, data, div, g2("z1")), "explicit potential")
    add("higher_genus_D@b11", "higher_genus_D", {"divisor": divj, "C": 1.0}, hg_D(curve, data, div),
        "pair, Q and sigma sums")
    div3 = [("P1", mpf(0.5)), ("P2", mpf(0.75)), ("P3", mpf(0.75))]
    div3j = [{"handle": "P1", "b": 0.5}, {"handle": "P2", "b": 0.75}, {"handle": "P3", "b": 0.75}]
    add("higher_genus_D@b3", "higher_genus_D", {"divisor": div3j, "C": 1.0}, hg_D(curve, data, div3),
        "pair, Q and sigma sums")
    # u_j at P1 + dz, real part via phi + 2 b log|dz|
    dz = mpc('0.05', '0.03')
    zc = dict(g2("P1"))
    zc["abel"] = [g2("P1")["abel"][i] + sum(g2("P1")["taylor"][n][i] * dz ** (n + 1) for n in range(60))
                  for i in range(2)]
    vv = [sum((n + 1) * g2("P1")["taylor"][n][i] * dz ** n for n in range(60)) for i in range(2)]
    h = sqrt(curve.grad_delta[0] * vv[0] + curve.grad_delta[1] * vv[1])
    if abs(h - g2("P1")["h"]) > abs(h + g2("P1")["h"]):
        h = -h
    zc["h"] = h
    add("u_j_real@b11,P1,0.05+0.03i", "u_j_real", {"divisor": divj, "C": 1.0, "j": 0, "dz": [0.05, 0.03]},
        hg_phi(curve, data, div, zc) + 2 * 1 * log(abs(dz)), "phi + 2 b_j log|dz|")
    z2 = [mpc(0.11, -0.2), mpc(0.3, 0.05)]
    add("riemann_theta@pack,z", "riemann_theta", {"z": [pair(z2[0]), pair(z2[1])], "a": [0, 0], "b": [0, 0]},
        curve.theta(z2), "box lattice sum |n_i| <= 10")
    add("riemann_theta@pack,z,delta", "riemann_theta",
        {"z": [pair(z2[0]), pair(z2[1])], "a": [0.5, 0], "b": [0.5, 0]},
        curve.theta(z2, DELTA), "box lattice sum |n_i| <= 10")
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=FIXTURES)
    ap.add_argument("--check", action="store_true", help="print consistency diagnostics of the genus-2 pack")
    args = ap.parse_args()
    curve = Curve()
    pack, data, _ = genus2(curve)
    if args.check:
        hg_checks(curve, data)
    vectors = golden(curve, data)
    keys = [v["key"] for v in vectors]
    assert len(keys) == len(set(keys)), "duplicate golden keys"
    os.makedirs(args.out, exist_ok=True)
    with open(os.path.join(args.out, "genus2_pack.json"), "w") as f:
        json.dump(pack, f, indent=1)
        f.write("\n")
    with open(os.path.join(args.out, "golden_vectors.json"), "w") as f:
        json.dump({"schema": "polydet.golden", "version": 1, "pack": "genus2_pack.json",
                   "precision_digits": DPS, "vectors": vectors}, f, indent=1)
        f.write("\n")


if __name__ == "__main__":
    main()

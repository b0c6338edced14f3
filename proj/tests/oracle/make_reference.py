#!/usr/bin/env python3
"""Reference values for the C++ tests, computed independently with mpmath.

Everything here is a separate implementation: plain series sums, mpmath's own
theta function and q-Pochhammer, tanh-sinh quadrature and findroot. Run

    python3 tests/oracle/make_reference.py > tests/data/reference.json
"""
import json
import sys

import mpmath as mp

mp.mp.dps = 70
DIGITS = 55


def s(x):
    return mp.nstr(x, DIGITS)


def c(z):
    z = mp.mpc(z)
    return [s(z.real), s(z.imag)]


def coupling(theta):
    b = mp.expj(theta)
    log_q = 1j * mp.pi * b ** 2
    log_qbar = -1j * mp.pi / b ** 2
    return b, log_q, log_qbar


def chi_series(u, eps, q, tol=mp.mpf(10) ** -65):
    """sum_n chi_n(eps) / (q^-2; q^-2)_n u^n with chi_{n+1} = eps chi_n + (q^n - q^-n)^2 chi_{n-1}."""
    qi2 = q ** -2
    chi_prev, chi = mp.mpc(1), mp.mpc(eps)
    poch = mp.mpc(1)
    total = mp.mpc(1)
    un = mp.mpc(1)
    small = 0
    n = 0
    while True:
        n += 1
        poch *= 1 - qi2 ** n
        un *= u
        term = chi / poch * un
        total += term
        small = small + 1 if abs(term) < tol * max(abs(total), 1) else 0
        if small >= 3 and n > 5:
            return total
        chi_prev, chi = chi, eps * chi + (q ** n - q ** -n) ** 2 * chi_prev
        if n > 5000:
            raise RuntimeError("chi series did not converge")


def chi_check(u, eps, q):
    return chi_series(1 / u, eps, q) / u


def wronskian(u, eps, q):
    return chi_series(u / q ** 2, eps, q) * chi_check(u, eps, q) - chi_check(u / q ** 2, eps, q) * chi_series(u, eps, q)


def theta1(w, log_q):
    # (1/i) sum (-1)^n q^{(n+1/2)^2} e^{w (n+1/2)} = jtheta(1, z, q) with e^{2 i z} = e^{w}
    q = mp.exp(log_q)
    return mp.jtheta(1, -1j * w / 2, q)


def theta1_direct(w, log_q):
    total = mp.mpc(0)
    for n in range(-80, 80):
        h = n + mp.mpf(1) / 2
        total += (-1) ** n * mp.exp(log_q * h * h + w * h)
    return total / 1j


def strong_coupling():
    out = {}
    for name, theta in (("pi_over_4", mp.pi / 4), ("theta_0_5", mp.mpf("0.5"))):
        b, log_q, log_qbar = coupling(theta)
        q = mp.exp(log_q)
        rec = {"theta": s(theta), "q": c(q), "qbar": c(mp.exp(log_qbar))}
        ws = [mp.mpc("0.37", "-0.21"), mp.mpc("-1.3", "0.8"), mp.mpc("1.9", "1.7"), mp.mpc("0.05", "0")]
        rec["theta1"] = []
        for w in ws:
            v = theta1(w, log_q)
            d = theta1_direct(w, log_q)
            assert abs(v - d) < mp.mpf(10) ** -60 * max(1, abs(v)), (w, v, d)
            rec["theta1"].append({"w": c(w), "value": c(v)})
        pts = [(mp.mpc("0.3", "0.1"), mp.mpc(2)), (mp.mpc("0.5", "0"), mp.mpc(3, 1)),
               (mp.mpc("-1.2", "0.7"), mp.mpc("-4.5", "2.25")), (mp.mpc("2.5", "-1.5"), mp.mpc("10", "-3"))]
        rec["chi"] = []
        for u, eps in pts:
            rec["chi"].append({"u": c(u), "eps": c(eps), "chi": c(chi_series(u, eps, q)),
                               "chi_check": c(chi_check(u, eps, q)), "wronskian": c(wronskian(u, eps, q))})
        out[name] = rec
    return out


def endpoint_roots():
    """Endpoint eigenvalues at theta = pi/4 from the factorized endpoint equations."""
    b, log_q, _ = coupling(mp.pi / 4)
    q = mp.exp(log_q).real
    chi = lambda u, e: chi_series(u, e, q)
    roots = {}
    # sigma = 0: W(1, eps) = chi(1) (chi(q^-2) - q^2 chi(q^2))
    roots["eps1_0"] = mp.findroot(lambda e: chi(q ** -2, e) - q ** 2 * chi(q ** 2, e), mp.mpf(2)).real
    roots["eps2_0"] = mp.findroot(lambda e: chi(1, e), mp.mpf("535.49")).real
    roots["eps3_0"] = mp.findroot(lambda e: chi(q ** -2, e) - q ** 2 * chi(q ** 2, e), mp.mpf("535.497")).real
    # sigma = sin theta: s = -1/q, chi(-1/q) -+ q chi(-q) = 0
    roots["eps1_sin"] = mp.findroot(lambda e: chi(-1 / q, e) - q * chi(-q, e), mp.mpf("-22.18")).real
    roots["eps2_sin"] = mp.findroot(lambda e: chi(-1 / q, e) + q * chi(-q, e), mp.mpf("-24.18")).real
    return {k: s(v) for k, v in roots.items()}


def residue_series(eps, q):
    total = mp.mpf(0)
    poch = mp.mpf(1)
    chi_prev, chi = mp.mpf(1), mp.mpf(eps)
    total += 1 - q ** 2
    for m in range(1, 400):
        poch *= 1 - q ** (-2 * m)
        total += (chi / poch) ** 2 * (q ** (-2 * m) - q ** (2 * m + 2))
        chi_prev, chi = chi, eps * chi + (q ** m - q ** -m) ** 2 * chi_prev
    return total


def selfdual():
    def ab(eps):
        alpha = mp.acosh((eps - 2) / 2) / (2 * mp.pi)
        beta = mp.asinh(mp.cosh(mp.pi * alpha)) / mp.pi
        return alpha, beta

    def periods(eps):
        alpha, _ = ab(eps)
        sh = mp.sinh(mp.pi * alpha)
        sfun = lambda t: mp.asinh(sh * mp.sin(mp.pi * t)) / mp.pi
        sp = lambda t: sh * mp.cos(mp.pi * t) / mp.cosh(mp.pi * sfun(t))
        ch2a = mp.cosh(2 * mp.pi * alpha)
        r = lambda t: mp.acosh(1 - mp.cos(mp.pi * t) + ch2a) / (2 * mp.pi)
        A = 4 * mp.quad(lambda t: sp(t) / mp.sinh(2 * mp.pi * sfun(t + mp.mpf(1) / 2)), [0, mp.mpf(1) / 4, mp.mpf(1) / 2])
        At = 4 * mp.quad(lambda t: sfun(t + mp.mpf(1) / 2) * sp(t), [0, mp.mpf(1) / 2])
        B = mp.quad(lambda t: 1 / mp.sinh(2 * mp.pi * r(t)), [0, mp.mpf(1) / 2, 1])
        Bt = mp.quad(r, [0, mp.mpf(1) / 2, 1])
        return A, At, B, Bt

    def level(eps, n):
        A, At, B, Bt = periods(eps)
        return (A * Bt - B * At) / B - (n + 1)

    out = {}
    for eps in (mp.mpf(8), mp.mpf(20)):
        alpha, beta = ab(eps)
        A, At, B, Bt = periods(eps)
        out["eps_%d" % int(eps)] = {"eps": s(eps), "alpha": s(alpha), "beta": s(beta), "A": s(A), "At": s(At),
                                     "B": s(B), "Bt": s(Bt), "level0": s(level(eps, 0))}
    for n, guess in ((0, 17.8), (1, 60.0)):
        root = mp.findroot(lambda e: level(e, n), mp.mpf(guess), tol=mp.mpf(10) ** -60)
        out["level_%d" % n] = {"eps": s(root), "log_eps": s(mp.log(root))}
    return out


def main():
    b, log_q, _ = coupling(mp.pi / 4)
    qr = mp.exp(log_q).real
    ref = {
        "generator": "tests/oracle/make_reference.py (mpmath %s, %d digits)" % (mp.__version__, mp.mp.dps),
        "pochhammer_e2pi_inf": s(mp.qp(mp.exp(-2 * mp.pi), mp.exp(-2 * mp.pi))),
        "strong": strong_coupling(),
        "endpoints": endpoint_roots(),
        "residue_real_eps": {"eps": "1.75", "value": s(residue_series(mp.mpf("1.75"), qr))},
        "selfdual": selfdual(),
    }
    json.dump(ref, sys.stdout, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()

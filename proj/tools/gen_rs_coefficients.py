#!/usr/bin/env python3
"""Generate the Taylor tables for the Riemann-Siegel correction terms C0..C4.

Each C_k(p) is written as a polynomial in x = p - 1/2 (|x| <= 1/2) built from
the derivatives of psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p).
Output goes to src/rs_coefficients.inc.
"""
import sys
import mpmath as mp

mp.mp.dps = 60
DEGREE = 80
CUTOFF = mp.mpf("1e-24")


def psi(p):
    return mp.cos(2 * mp.pi * (p * p - p - mp.mpf(1) / 16)) / mp.cos(2 * mp.pi * p)


def deriv(coeffs, k):
    out = list(coeffs)
    for _ in range(k):
        out = [out[i] * i for i in range(1, len(out))]
    return out


def combine(terms, length):
    out = [mp.mpf(0)] * length
    for scale, k in terms:
        d = deriv(base, k)
        for i, c in enumerate(d):
            out[i] += scale * c
    return out


base = mp.taylor(psi, mp.mpf(1) / 2, DEGREE)
pi = mp.pi
table = [
    combine([(1, 0)], DEGREE + 1),
    combine([(-1 / (96 * pi**2), 3)], DEGREE + 1),
    combine([(1 / (18432 * pi**4), 6), (1 / (64 * pi**2), 2)], DEGREE + 1),
    combine([(-1 / (5308416 * pi**6), 9), (-1 / (3840 * pi**4), 5),
             (-1 / (64 * pi**2), 1)], DEGREE + 1),
    combine([(1 / (2038431744 * pi**8), 12), (11 / (5898240 * pi**6), 8),
             (19 / (24576 * pi**4), 4), (1 / (128 * pi**2), 0)], DEGREE + 1),
]

out = sys.stdout
out.write("// Generated by tools/gen_rs_coefficients.py. Do not edit.\n")
out.write("// Taylor coefficients of C0..C4 in powers of (p - 1/2).\n\n")
for k, coeffs in enumerate(table):
    keep = [c if abs(c) > mp.mpf("1e-40") else mp.mpf(0) for c in coeffs]
    last = max(i for i, c in enumerate(keep) if abs(c) * mp.mpf(0.5) ** i > CUTOFF)
    keep = keep[: last + 1]
    out.write(f"constexpr std::array<double, {len(keep)}> kC{k} = {{\n")
    for c in keep:
        out.write(f"    {mp.nstr(c, 20, min_fixed=1, max_fixed=0)},\n")
    out.write("};\n\n")

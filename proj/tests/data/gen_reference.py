#!/usr/bin/env python3
"""High-precision reference values frozen into tests/reference_values.hpp.

Everything here is computed from position-space integrals of the Gaussian
packets and from the implicit time integral of the relative Coulomb motion,
not from the closed forms implemented in the library.
"""
import mpmath as mp

mp.mp.dps = 40
hbar = mp.mpf("1.054571817e-34")
me = mp.mpf("9.1093837015e-31")
qe = mp.mpf("1.602176634e-19")
ke = mp.mpf("8.9875517923e9")
ev = qe

E0, dE = 400 * ev, 1 * ev
k0 = mp.sqrt(2 * me * E0) / hbar
dk = me * dE / (hbar**2 * k0)
kb = k0 - dk / 2
ov = mp.exp(-((k0 - kb) ** 2) / (8 * dk**2))


def psi(k, x, t):
    a = 1 / (4 * dk**2) + 1j * hbar * t / (2 * me)
    u = x - hbar * k * t / me
    env = (2 * mp.pi * dk**2) ** (-0.25) * (2 * a) ** (-0.5) * mp.exp(-(u**2) / (4 * a))
    return env * mp.expj(k * x - hbar * k**2 * t / (2 * me))


def window(f, lo, hi):
    return mp.quad(f, [lo, (lo + hi) / 2, hi])


def mass(k, lo, hi, t):
    return window(lambda x: abs(psi(k, x, t)) ** 2, lo, hi)


def cross(ka, kb_, lo, hi, t):
    return window(lambda x: psi(ka, x, t) * mp.conj(psi(kb_, x, t)), lo, hi)


h = 1 / (2 * dk)
out = {}
out["k0"] = k0
out["dk"] = dk
out["overlap"] = ov
out["erf_inv_sqrt2"] = mp.erf(1 / mp.sqrt(2))

# Source, t = 0, phase-cell window around the origin.
m0 = mass(0, -h, h, 0)
maa = mass(k0, -h, h, 0)
mbb = mass(kb, -h, h, 0)
j = cross(k0, kb, -h, h, 0)
d1 = maa * m0 * m0
ps = (maa * m0 * m0 + mbb * m0 * m0 + 2 * ov * mp.re(j * m0 * m0)) / (1 + ov**2)
pa = (maa * m0 * m0 + mbb * m0 * m0 - 2 * ov * mp.re(j * m0 * m0)) / (1 - ov**2)
out["src_d1_3d"] = d1
out["src_d2_sym_3d"] = ps
out["src_d2_antisym_3d"] = pa
out["src_d_total"] = mp.mpf("0.5") * d1 + mp.mpf("0.1") * (ps / 4 + 3 * pa / 4)

# Detector at x = 0.1 m; times relative to the one-electron arrival.
L = mp.mpf("0.1")
tarr = L * me / (hbar * k0)
out["t_arrival"] = tarr
for name, dt in (("0", 0), ("p3ps", mp.mpf("3e-12")), ("m20ps", mp.mpf("-20e-12"))):
    t = tarr + dt
    ax = mass(k0, L - h, L + h, t)
    tr = mass(0, -h, h, t)
    out["det_d1_axis_" + name] = ax
    out["det_d1_3d_" + name] = ax * tr * tr
    maa = ax
    mbb = mass(kb, L - h, L + h, t)
    jx = cross(k0, kb, L - h, L + h, t)
    s = (maa * tr**2 + mbb * tr**2 + 2 * ov * mp.re(jx * tr**2)) / (1 + ov**2)
    a = (maa * tr**2 + mbb * tr**2 - 2 * ov * mp.re(jx * tr**2)) / (1 - ov**2)
    out["det_d2_sym_3d_" + name] = s
    out["det_d2_antisym_3d_" + name] = a

# Figure 5 point: x1 = 0.1 m, x2 = 0.1 m + 5e-5 m, equal times at pair arrival.
kbar = (k0 + kb) / 2
t5 = L * me / (hbar * kbar)
x1, x2 = L, L + mp.mpf("5e-5")
D = psi(k0, x1, t5) * psi(kb, x2, t5)
E = psi(kb, x1, t5) * psi(k0, x2, t5)
out["fig5_t"] = t5
out["fig5_P_sym"] = abs(D + E) ** 2 / (2 * (1 + ov**2))
out["fig5_P_antisym"] = abs(D - E) ** 2 / (2 * (1 - ov**2))

# Coulomb: implicit time integral t(x) = int_x0^x (m_e / 2) / p(y) dy.
p0 = hbar * (k0 - kb)
x0 = 1 / (mp.sqrt(2) * dk)
Etot = p0**2 / me + ke * qe**2 / x0
p = lambda y: mp.sqrt(me * Etot - me * ke * qe**2 / y)
vcom = hbar * kbar / me
tdet = L / vcom
elapsed = lambda x: mp.quad(lambda y: (me / 2) / p(y), [x0, 2 * x0, 100 * x0, x])
xdet = mp.findroot(lambda x: elapsed(x) - tdet, mp.mpf("3.6e-3"))
out["coulomb_x0"] = x0
out["coulomb_pt_over_p0"] = mp.sqrt(me * Etot) / p0
out["coulomb_t_det"] = tdet
out["coulomb_x_det"] = xdet
out["coulomb_p_det_over_p0"] = p(xdet) / p0
alpha = lambda t, d: 1 / (1 + (2 * hbar * d**2 * t / me) ** 2)
out["sqrt_alpha_t_det"] = mp.sqrt(alpha(tdet, dk))
r0 = x0 * mp.sqrt(1 + 100)
out["pancake_r0"] = r0
out["pancake_quantum_ratio"] = mp.sqrt(alpha(tdet, dk)) * mp.sqrt(alpha(tdet, dk / 10))

print("// Generated by tests/data/gen_reference.py (mpmath, 40 digits). Do not edit.")
print("#pragma once\n\nnamespace ref {")
for k, v in out.items():
    print("inline constexpr double %s = %s;" % (k, mp.nstr(v, 17, min_fixed=0, max_fixed=0)))
print("}  // namespace ref")

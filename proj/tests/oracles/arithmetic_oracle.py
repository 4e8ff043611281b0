"""Independent high-precision evaluation of the closed-form values frozen into
the C++ unit tests. Run with: python3 arithmetic_oracle.py"""
from mpmath import mp, mpf, exp, log, sqrt, pi, e

mp.dps = 30
kappa, a, C = mpf("2.1"), mpf(1), mpf(80)


def p1_min(phi=0):
    return (kappa + 4*a*C + 4*kappa**3 + 4*a*kappa*phi + 8*a*kappa**2) / (4*a*kappa**6)


def p2_min(phi=0):
    x = kappa + 4*a*C + 4*kappa**3 + 4*a*kappa*phi
    return (x**2/(16*kappa) + kappa**2 + a**2*phi**2 + 4*a**2*(kappa**3 + 1)) / (4*a**3*kappa**5)


def p3_min(phi=0):
    return ((kappa**2 + a**2*phi**2)**2 + 16*a**4) / (64*a**7*kappa**4)


def g(s, l):
    v = s - kappa - exp(l)
    return max(v, 0)**2


print("gain minima", p1_min(), p2_min(), p3_min())
# planar forms, written independently of the general formula
K2_planar = ((kappa + 4*a*C + 4*kappa**3)**2 + 16*kappa**3 + 64*a**2*kappa**4 + 64*a**2*kappa) / (64*a**3*kappa**6)
print("K2 planar form", K2_planar)
print("P1 with phi=0.5", p1_min(mpf("0.5")), p2_min(mpf("0.5")), p3_min(mpf("0.5")))
y, z = mpf("0.1"), mpf(-10)
print("control", -(kappa + exp(z))**7 * (mpf("7.5") + mpf("43.5")*y**2 + 24*y**6) * y)
print("update_rate", 100*exp(0)*(y**2/2 - mpf("5e-5")))
print("g(20,-10)", g(20, -10), "g(10,-10)", g(10, -10), "g(10 = 1/b)", g(10, -10))
mu = min((2*kappa - a)/(2*kappa*1), 2*C)
print("mu", mu)
z0 = mpf(-10)
b = mpf("0.1")
for dsup in (0, 3):
    Zbar = dsup**2 + g(20, z0) + g(20, z0)**2 + 4*b*g(1/b, z0) + g(10, z0)**2
    Z = a/(kappa + exp(z0))*Zbar
    w0, y0 = mpf("-0.5"), mpf("0.1")
    k1 = k2 = 1
    B = (1/(2*k1))*(k2*w0**2 + y0**2/2 + Z/mu) + g(20, z0) + dsup**2 + g(20, z0)**2 + 2*b*g(1/b, z0)
    eps, Gam = mpf("5e-5"), mpf(100)
    zmax = log(exp(z0) + Gam/(4*C)*y0**2 + a*B*(2*C*(1+exp(z0)) + eps*Gam)/(4*C**2*eps*min(1, kappa)*(1+exp(z0))))
    print("d", dsup, "Zbar", Zbar, "Z", Z, "B", B, "zmax", zmax)
# case constants
pbar = 1
print("heat G", 1/(pbar**2*(4*pi**2-5)))
c = 1
print("transport k2", 2*e/c, "r", sqrt(2*e), "G", 8*e**2/c**2)
sig = 1
Gw = 2*((c**2+1)**2*pi**2 + sig**2)/(sig**2*c**4*pi**2)
print("wave k2", (1/sig)*max(c**2 + 1 + 2*sig**2/(c**2*pi**2), 1 + 2/c**2), "r", sqrt(Gw), "G", Gw)
print("transport Phi(w=1)", 2*e/c*(1-exp(-1)))
print("wave Phi(sin, 0)", (c**2+1)/sig*pi**2/2 + 0 + 1/(sig*c**2)*sig**2/2)

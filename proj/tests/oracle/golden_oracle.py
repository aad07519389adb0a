"""Independent high-precision oracle for the cubic golden frequency vector.

Written directly from the defining formulas with mpmath; shares no code with
the C++ library. Used to freeze expected values into the C++ tests.
"""
import mpmath as mp

mp.mp.dps = 50

# Omega^3 = 1 - Omega, omega = (1, Omega, Omega^2)
Om = mp.findroot(lambda x: x**3 + x - 1, 0.68)
om = [mp.mpf(1), Om, Om**2]
s = -1
sig2 = -Om / 2
sig3 = s * mp.sqrt(4 + 3 * Om**2) / 2
Om2 = mp.mpc(sig2, sig3)

lam = 1 + Om**2
lam2 = 1 + Om2**2
phi = mp.arg(lam2) / mp.pi
v = [1, Om2, Om2**2]
v2 = [mp.re(x) for x in v]
v3 = [mp.im(x) for x in v]
u1 = [mp.mpf(1), Om**2, Om]  # (r0, -r2*Om + Om^2, Om), r2 = 0
u2 = [mp.mpf(1), sig2**2 - sig3**2, sig2]
u3 = [mp.mpf(0), sig3 * 2 * sig2, sig3]
dot = lambda a, b: sum(x * y for x, y in zip(a, b))
Z1 = (dot(u2, u2) + dot(u3, u3)) / 2
Z2c = (dot(u2, u2) - dot(u3, u3)) / 2
Z2s = dot(u2, u3)
Z2 = mp.sqrt(Z2c**2 + Z2s**2)
theta = mp.atan2(Z2s, Z2c)
delta = Z2 / Z1


def seq_inv(k0):
    y = dot(k0, v2)
    z = dot(k0, v3)
    a = dot(v2, u2)
    b = dot(v2, u3)
    den = a * a + b * b
    c = (a * y + b * z) / den
    d = (b * y - a * z) / den
    E = mp.sqrt(c * c + d * d)
    psi = mp.atan2(d, c)
    K = E * E * Z1
    r = abs(dot(k0, om))
    return E, psi, K, r * K


E, psi_hat, K_hat, gstar = seq_inv([0, 0, 1])
print("Omega", Om)
print("lambda", lam, "phi", phi, "|lam2|", abs(lam2), lam ** -0.5)
print("delta", delta, "exact", mp.sqrt(-1 + 5 * Om - 5 * Om**2))
print("theta", theta, "psi_hat", psi_hat, "K_hat", K_hat)
print("gstar", gstar, "exact", mp.mpf(2) / 31 * (5 + Om + 4 * Om**2))
for k0 in ([0, 0, 1], [-1, 2, 0], [-2, 1, 2], [0, 2, -2]):
    _, ps, K, g = seq_inv(k0)
    print(k0, "g-", g * (1 - delta), "g*", g, "g+", g * (1 + delta), "norm", g / gstar, "psi", ps, "K", K)
Q0 = mp.sqrt(dot(u1, u1)) / (2 * abs(dot(u1, om)))
print("Q0", Q0, "bound|q|=3", (1 - delta) * (3 - Q0) ** 2 / (2 * lam * (1 + delta)))
Lg = lambda x: mp.log(x) / (3 * mp.log(lam))
xi0 = 2 * Lg(2 * lam / (mp.sqrt(lam) + 1))
C0f = lambda z: (2 * lam ** (-z / 2) + lam**z) / 3
J10 = C0f(xi0)
print("xi0", xi0, "J10", J10, C0f(xi0 - 1))
print("J0-", (1 - delta) ** (mp.mpf(1) / 3), "J1+", J10 * (1 + delta) ** (mp.mpf(1) / 3))
print("J0+", (1 + delta) ** (mp.mpf(1) / 3), "B0-", (3 * (1 - delta)) ** (mp.mpf(1) / 3))
logl = lambda x: mp.log(x) / mp.log(lam)
Nm = logl(max((1 + delta) / (1 - delta), 2 * mp.sqrt(1 + delta) * lam ** (3 * (1 - xi0) / 2) + 1))
Np = logl(max((1 + delta) / (1 - delta), ((lam ** (3 * xi0 / 2) + 2 * mp.sqrt(1 + delta)) / (2 * mp.sqrt(1 - delta))) ** 2))
print("N-", Nm, "N+", Np)
print("cf phi", mp.identify(phi), [int(x) for x in mp.cf(phi)[:8]] if hasattr(mp, 'cf') else '')
# continued fraction
x = phi
cf = []
for _ in range(8):
    a = int(mp.floor(x))
    cf.append(a)
    x = 1 / (x - a)
print("cf", cf)
# sequence
U = mp.matrix([[0, 0, 1], [1, 0, -1], [0, 1, 0]])
k = mp.matrix([0, 0, 1])
for n in range(0, 41):
    kk = [int(k[i]) for i in range(3)]
    g = abs(dot(kk, om)) * dot(kk, kk)
    b = 1 + delta * mp.cos(2 * mp.pi * n * phi + 2 * psi_hat - theta)
    if n <= 4 or n % 5 == 0:
        print(n, kk, mp.nstr(g, 12), "model", mp.nstr(gstar * b, 12), "resid*lam^1.5n", mp.nstr((g - gstar * b) * lam ** (1.5 * n), 8))
    k = U * k
rho = 1
D0 = (mp.pi * gstar / rho) ** 2
C0 = mp.mpf(3) / 2 * (mp.pi * rho**2 * gstar) ** (mp.mpf(1) / 3)
print("C0", C0, "D0", D0, "zeta(1e-6)", Lg(D0 / K_hat**3) - Lg(mp.mpf('1e-6')))

# criterion-4 check: min gamma over n in [20,40]
k = mp.matrix([0, 0, 1])
vals = []
for n in range(0, 41):
    kk = [int(k[i]) for i in range(3)]
    vals.append((abs(dot(kk, om)) * dot(kk, kk), n))
    k = U * k
print("min n in [20,40]", min(v for v in vals if v[1] >= 20))
print("min n in [0,40]", min(vals))

# dominance gap at eps=1e-6 using primary envelope
def fbar(n, z):
    b = 1 + delta * mp.cos(2 * mp.pi * n * phi + 2 * psi_hat - theta)
    return b ** (mp.mpf(1) / 3) * C0f(z - (n + Lg(b)))
zeta = Lg(D0 / K_hat**3) - Lg(mp.mpf('1e-6'))
best = None
for dz in [i / 100 for i in range(-100, 101)]:
    z = zeta + dz
    fs = sorted(fbar(n, z) for n in range(0, 30))
    gap = fs[1] - fs[0]
    best = gap if best is None or gap > best else best
print("max gap h2-h1 near eps=1e-6 over +-1 in zeta:", best, "eta", mp.exp(-C0 * best / mp.mpf('1e-6') ** (mp.mpf(1) / 6)))

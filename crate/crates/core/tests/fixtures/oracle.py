# Regression oracle for the closed-form constants. Run with `python3 oracle.py`.
# Values are printed with 30 significant digits and frozen into the unit and
# acceptance tests.
from mpmath import mp, mpf, power, quad, besselj, laguerre, exp, inf, pi, sqrt, sin, findroot

mp.dps = 60


def conj(p):
    return p / (p - 1)


def bb(p):
    if p == 1:
        return mpf(1)
    q = conj(p)
    return power(p, 1 / (2 * p)) / power(q, 1 / (2 * q))


b43 = bb(mpf(4) / 3)
print("B_{4/3}         ", mp.nstr(b43, 30))
print("B_{4/3}^2       ", mp.nstr(b43**2, 30))
print("B_{4/3}^3       ", mp.nstr(b43**3, 30))
print("B_{4/3}^4       ", mp.nstr(b43**4, 30))
print("B_{3/2}         ", mp.nstr(bb(mpf(3) / 2), 30))
print("B_{1.9}         ", mp.nstr(bb(mpf("1.9")), 30))
print("B_{6/5}         ", mp.nstr(bb(mpf(6) / 5), 30))
print("L_2(1)          ", mp.nstr(laguerre(2, 0, 1), 30))
print("J0 first zero   ", mp.nstr(findroot(lambda x: besselj(0, x), 2.4), 30))
print("J1(2pi)         ", mp.nstr(besselj(1, 2 * pi), 30))
print("J0(12)          ", mp.nstr(besselj(0, 12), 30))
print("J1(12)          ", mp.nstr(besselj(1, 12), 30))
print("J0(30.5)        ", mp.nstr(besselj(0, mpf("30.5")), 30))
print("J1(7.25)        ", mp.nstr(besselj(1, mpf("7.25")), 30))
# Laplace transform of L_k at s = t + 1/2: check (s-1)^k / s^(k+1) at t = 3/2, k = 2
t = mpf(3) / 2
lap = quad(lambda u: exp(-(t + mpf(1) / 2) * u) * laguerre(2, 0, u), [0, inf])
print("Laplace L_2     ", mp.nstr(lap, 30), " closed ", mp.nstr((t - mpf(1) / 2) ** 2 / (t + mpf(1) / 2) ** 3, 30))
# Hankel transform of the unit-disc indicator at zeta = 1
print("disc hat(1)     ", mp.nstr(2 * pi * quad(lambda r: besselj(0, 2 * pi * r) * r, [0, 1]), 30))

"""Independent high-precision oracle for the frozen expected values in the C++ tests.

Evaluates the generalized fractional integral and its classical special cases
straight from their integral definitions with mpmath (50 digits), with no
substitution or code shared with the library. Rerun to regenerate the constants
pasted into tests/*.cpp.
"""
import mpmath as mp

mp.mp.dps = 50


# Integrate in the distance d from the singular endpoint so that
# |x^rho - t^rho| = x^rho * |expm1(rho * log1p(+-d/x))| keeps full precision.
def left_generalized(f, alpha, beta, rho, eta, kappa, a, x):
    pref = rho ** (1 - beta) * x ** kappa / mp.gamma(alpha)

    def kern(d):
        t = x - d
        gap = -x ** rho * mp.expm1(rho * mp.log1p(-d / x))
        return t ** (rho * (eta + 1) - 1) * gap ** (alpha - 1) * f(t)

    return pref * mp.quad(kern, [0, (x - a) / 2, x - a])


def right_generalized(f, alpha, beta, rho, eta, kappa, x, b):
    pref = rho ** (1 - beta) * x ** (rho * eta) / mp.gamma(alpha)

    def kern(d):
        t = x + d
        gap = x ** rho * mp.expm1(rho * mp.log1p(d / x))
        return t ** (kappa + rho - 1) * gap ** (alpha - 1) * f(t)

    return pref * mp.quad(kern, [0, (b - x) / 2, b - x])


def hadamard(f, alpha, a, x):
    kern = lambda d: (-mp.log1p(-d / x)) ** (alpha - 1) * f(x - d) / (x - d)
    return mp.quad(kern, [0, (x - a) / 2, x - a]) / mp.gamma(alpha)


def weyl(f, alpha, x):
    kern = lambda d: d ** (alpha - 1) * f(x - d)
    return mp.quad(kern, [0, 1, mp.inf]) / mp.gamma(alpha)


def expoly(*c):
    return lambda t: mp.exp(sum(ci * t ** i for i, ci in enumerate(c)))


def sinpos(w, phi, lo, hi):
    return lambda t: lo + (hi - lo) * mp.sin(w * t + phi) ** 2


one = lambda t: mp.mpf(1)
values = {
    "beta(2.5,2)": mp.beta(2.5, 2),
    "closed sigma=0 a=.5 b=.5": mp.beta(1, 0.5) / mp.gamma(0.5),
    "closed sigma=2 a=2 b=.3 rho=2 eta=.5 k=1": mp.mpf(2) ** -0.3 * mp.beta(2.5, 2) / mp.gamma(2),
    "kernel t^2 a=2 rho=2 eta=.5": left_generalized(lambda t: t ** 2, 2, 1, 2, 0.5, 0, 0, 1),
    "hadamard a=2 f=1 [1,e]": hadamard(one, 2, 1, mp.e),
    "gen expoly(.2,.5,-.3) a=.4 b=.7 r=1.5 e=-.3 k=.8 [.5,2]":
        left_generalized(expoly(0.2, 0.5, -0.3), 0.4, 0.7, 1.5, -0.3, 0.8, 0.5, 2),
    "gen sinpos(3,.2,.5,1.5) a=1.3 b=.1 r=.7 e=-.4 k=-.2 [0,1.5]":
        left_generalized(sinpos(3, 0.2, 0.5, 1.5), 1.3, 0.1, 0.7, -0.4, -0.2, 0, 1.5),
    "right sinpos(3,.2,.5,1.5) a=.6 b=.2 r=1.3 e=.4 k=-.5 x=.8 b=2":
        right_generalized(sinpos(3, 0.2, 0.5, 1.5), 0.6, 0.2, 1.3, 0.4, -0.5, 0.8, 2),
    "hadamard expoly(0,.5) a=.5 [1,e]": hadamard(expoly(0, 0.5), 0.5, 1, mp.e),
    "weyl expoly(.5,2,-.3) a=.5 x=.5": weyl(expoly(0.5, 2, -0.3), 0.5, 0.5),
    "weyl expoly(0,1) a=1.5 x=.5": weyl(expoly(0, 1), 1.5, 0.5),
    "gamma(0.3)": mp.gamma(0.3),
    "gamma(1.7)": mp.gamma(1.7),
    "gamma(33.25)": mp.gamma(33.25),
    "gamma(170.5)": mp.gamma(170.5),
    "loggamma(1000.5)": mp.loggamma(1000.5),
    "loggamma(1e-5)": mp.loggamma(mp.mpf("1e-5")),
    "beta(300,400)": mp.beta(300, 400),
    "katugampola rho=2 a=.5 expoly(0,1) [.25,1.5]":
        left_generalized(expoly(0, 1), 0.5, 0.5, 2, 0, 0, 0.25, 1.5),
    "erdelyi-kober sigma=2 eta=.5 a=.5 sinpos(2,.3,1,2) [0,1.5]":
        left_generalized(sinpos(2, 0.3, 1, 2), 0.5, 0, 2, 0.5, -2, 0, 1.5),
}
for k, v in values.items():
    print(f"{k:70s} {mp.nstr(v, 20)}")

"""High-precision reference values for the Kilbas-Saigo Mittag-Leffler series.

Run before the build; outputs are frozen into the C++ unit tests.
"""
import mpmath as mp

mp.mp.dps = 60


def ml(beta, m, l, z, nterms=400):
    s = mp.mpf(1)
    c = mp.mpf(1)
    for n in range(nterms):
        c *= mp.gamma(beta * (n * m + l) + 1) / mp.gamma(beta * (n * m + l + 1) + 1)
        s += c * mp.mpf(z) ** (n + 1)
    return s


if __name__ == "__main__":
    print("lgamma(0.5)      =", mp.log(mp.gamma(mp.mpf("0.5"))))
    print("lgamma(5)        =", mp.log(mp.gamma(5)))
    print("1/gamma(2.5)     =", 1 / mp.gamma(mp.mpf("2.5")))
    print("1/gamma(1.5)     =", 1 / mp.gamma(mp.mpf("1.5")))
    print("E_{1,2,1}(-2)    =", ml(1, 2, 1, -2), " exp(-1) =", mp.e**-1)
    print("E_{0.5,3,2}(-1)  =", ml(mp.mpf("0.5"), 3, 2, -1, 400))
    # Phi(x) at alpha=0.5: z = -x^{3/2}/1.5
    for x in ("1", "2", "0.5"):
        xx = mp.mpf(x)
        z = -xx ** mp.mpf("1.5") / mp.mpf("1.5")
        print(f"Phi_0.5({x})      =", ml(mp.mpf("0.5"), 3, 2, z, 600))
    print("a0(alpha=1)      =", 1 / (2 * mp.sqrt(mp.pi)))
    print("E(2,1) alpha=1   =", mp.exp(-1) / (2 * mp.sqrt(mp.pi)))
    print("Phi_1(3)=e^{-9/4}=", mp.exp(mp.mpf("-2.25")))

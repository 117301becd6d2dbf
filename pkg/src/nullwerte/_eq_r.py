"""Published degree-15 polynomial in the scale factor r of genus-2 Igusa-Clebsch inversion.

Kept verbatim as a cross-check artifact; the inversion itself recomputes the
elimination at runtime.  Symbols: r, I2, I4, I6, I10.
"""

EQ_R = """
2**8*3**6*r**15*I10**4
+ 2**6*3**6*r**13*I10**3*(I2*I4 - 4*I6)
- 2**6*3**5*r**12*I10**3*(I2**2 - 16*I4)
+ 108*r**11*I10**2*(19*I2**2*I4**2 + 8*I4**3 - 168*I2*I4*I6 + 360*I6**2 + 5616*I2*I10)
- 216*r**10*I10**2*(11*I2**3*I4 + 16*I2*I4**2 - 36*I2**2*I6 - 192*I4*I6 - 105408*I10)
+ 2*r**9*I10*(I2**5*I4**2 + 25*I2**3*I4**3 - 26*I2*I4**4 - 6*I2**4*I4*I6
    - 324*I2**2*I4**2*I6 + 168*I4**3*I6 + 9*I2**3*I6**2 + 1242*I2*I4*I6**2
    - 1512*I6**3 - 270*I2**4*I10 - 11556*I2**2*I4*I10 + 92016*I4**2*I10
    + 37584*I2*I6*I10)
+ 36*r**8*I10*(I2**4*I4**2 - 17*I2**2*I4**3 + 16*I4**4 - 6*I2**3*I4*I6
    + 96*I2*I4**2*I6 + 9*I2**2*I6**2 - 144*I4*I6**2 - 1350*I2**3*I10
    + 23544*I2*I4*I10 - 54432*I6*I10)
+ r**7*(I2**4*I4**4 - 2*I2**2*I4**5 + I4**6 - 12*I2**3*I4**3*I6
    + 12*I2*I4**4*I6 + 54*I2**2*I4**2*I6**2 - 18*I4**3*I6**2
    - 108*I2*I4*I6**3 + 81*I6**4
    + 30*I2**5*I4*I10 + 156*I2**3*I4**2*I10 + 1272*I2*I4**3*I10
    - 72*I2**4*I6*I10 - 3672*I2**2*I4*I6*I10 + 2448*I4**2*I6*I10
    + 7236*I2*I6**2*I10 - 1202364*I2**2*I10**2 + 4167936*I4*I10**2)
- 4*r**6*I10*(I2**6 - 218*I2**4*I4 - 512*I2**2*I4**2 - 5832*I4**3
    + 312*I2**3*I6 + 18480*I2*I4*I6 - 28152*I6**2 + 2**4*3**7*67*I2*I10)
- 3*r**5*(-5*I2**4*I4**3 + 19*I2**2*I4**4 - 14*I4**5 + 42*I2**3*I4**2*I6
    - 96*I2*I4**3*I6 - 117*I2**2*I4*I6**2 + 126*I4**2*I6**2 + 108*I2*I6**3
    + 48*I2**5*I10 - 906*I2**3*I4*I10 + 372*I2*I4**2*I10
    - 6120*I2**2*I6*I10 + 85824*I4*I6*I10 + 7589376*I10**2)
- 2*r**4*(I2**5*I4**2 - 110*I2**3*I4**3 + 109*I2*I4**4 - 6*I2**4*I4*I6
    + 810*I2**2*I4**2*I6 - 156*I4**3*I6 + 9*I2**3*I6**2 - 1917*I2*I4*I6**2
    + 1404*I6**3 + 594*I2**4*I10 + 24678*I2**2*I4*I10 + 27216*I4**2*I10
    - 140616*I2*I6*I10)
- 9*r**3*(4*I2**4*I4**2 - 116*I2**2*I4**3 + 31*I4**4 - 24*I2**3*I4*I6
    + 672*I2*I4**2*I6 + 36*I2**2*I6**2 - 1008*I4*I6**2 - 24*I2**3*I10
    + 36960*I2*I4*I10 - 94464*I6*I10)
- 54*r**2*(4*I2**3*I4**2 - 31*I2*I4**3 - 24*I2**2*I4*I6 + 108*I4**2*I6
    + 36*I2*I6**2 - 504*I2**2*I10 + 9792*I4*I10)
- 432*r*(I2**2*I4**2 - I4**3 - 6*I2*I4*I6 + 9*I6**2 - 54*I2*I10)
- 2**8*3**6*I10
"""

# The pair of equations in (G2, r) left after eliminating S1^2 and S2; only even powers of G2 occur.
G2R_PAIR = (
    """
432*G2**8 - 864*G2**6*(48 + r*I2)
+ 72*G2**4*(18240 + 672*r*I2 + 5*r**2*I2**2 + 64*r**2*I4)
- 8*G2**2*(1797120 + 81216*r*I2 + 432*r**2*I2**2 + 7*r**3*I2**3 + 27648*r**2*I4
    + 1856*r**3*I2*I4 - 6144*r**3*I6)
+ 2**12*3**4*5*r*I2 - 576*r**3*I2*(I2**2 - 64*I4) + 3*r**4*(I2**2 - 64*I4)**2
+ 3456*r**2*(3*I2**2 + 320*I4) + 2**12*3**5*5**2
""",
    """
144*G2**8 - 96*G2**6*(176 + 5*r*I2)
+ 8*G2**4*(89280 + 4704*r*I2 + 59*r**2*I2**2 + 448*r**2*I4)
+ 24*G2**2*(-525312 - 36288*r*I2 - 720*r**2*I2**2 - 5*r**3*I2**3 - 9216*r**2*I4
    - 192*r**3*I2*I4 + 8192*r**5*I10)
+ 2**12*3**5*5*r*I2 - 1728*r**3*I2*(I2**2 - 64*I4) + 9*r**4*(I2**2 - 64*I4)**2
+ 10368*r**2*(3*I2**2 + 320*I4) + 2**12*3**6*5**2
""",
)

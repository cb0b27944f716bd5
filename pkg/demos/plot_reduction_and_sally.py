"""
Reductions and the Sally module
===============================

For M = I + I with I = (x^3, x^2y^4, xy^5, y^7) we take the reduction
generated by the columns of [[x^3, y^7, 0], [0, x^3, y^7]], find its
reduction number and tabulate the Sally lengths.  The positive slack of
M shows up as the leading coefficient of l(S_{n-1}).
"""
from northcott import IdealTuple, Ring, direct_sum_matrix, parse_ideal, parse_matrix, reduction_number
from northcott import sally_length, verify_sally_identity
from northcott.multiplicity import fit_univariate

R = Ring(2)
I = parse_ideal("x^3,x^2y^4,xy^5,y^7", R)
T = IdealTuple((I, I))
M = direct_sum_matrix(T)
N = parse_matrix("[[x^3, y^7, 0], [0, x^3, y^7]]", R)

print("red_N(M) =", reduction_number(N, M))

sally = [sally_length(M, N, n) for n in range(6)]
print("l(S_n), n = 0..5:", sally)

for n in range(1, 6):
    lhs, rhs, ok = verify_sally_identity(T, N, n)
    print(f"n={n}: BF = {lhs}, formula = {rhs}", "ok" if ok else "MISMATCH")

# degree-2 fit of n -> l(S_{n-1})
fit = fit_univariate([(n, sally[n - 1]) for n in range(3, 6)], 2)
print("Sally polynomial coefficients:", fit.coeffs)

"""
Buchsbaum-Rim coefficients of a direct sum
==========================================

Two monomial ideals in k[x, y] give a module M = I + J inside F = R^2.
We count the Buchsbaum-Rim function on the lattice, fit its polynomial
and compare br_0 - br_1 with the colength of M.
"""
from northcott import IdealTuple, Ring, bf_direct_sum, bp_polynomial, northcott_report, parse_ideal_tuple

R = Ring(2)
T = IdealTuple(tuple(parse_ideal_tuple("x,y | x^2,y", R)))

# l(S_n(F)/R_n(M)) is a sum of colengths of products I^a J^b with a + b = n
values = [bf_direct_sum(T, n) for n in range(1, 7)]
print("BF(1..6) =", values)

# the fitted polynomial, coefficients (br_0, br_1, ...)
bp, diag = bp_polynomial(T)
print("BP =", bp, " stable from n =", diag.window_start)

rep = northcott_report(T)
print(f"br0 - br1 = {rep.br0 - rep.br1}, l(F/M) = {rep.colength_FM}, slack = {rep.slack}")
print("routes:", rep.routes)

# equal summands: the closed form joins the cross-check
I = parse_ideal_tuple("x^3,x^2y^4,xy^5,y^7", R)[0]
rep = northcott_report([I, I])
print("I + I:", rep.routes, "slack", rep.slack)

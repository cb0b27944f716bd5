"""
A rank-three band matrix
========================

Over k[x, y, z] the band matrix with rows (x, y, z) shifted one column at
a time is a minimal reduction of m + m + m, but with reduction number two.
The rank-two band over the same ideal has reduction number one.
"""
from northcott import Ring, band_matrix, direct_sum_matrix, parse_ideal, reduction_number

R = Ring(3)
m = parse_ideal("x,y,z", R)

N3 = band_matrix(m, "rank3")
print(N3)
print("rank 3:", reduction_number(N3, direct_sum_matrix([m, m, m])))

N2 = band_matrix(m)
print(N2)
print("rank 2:", reduction_number(N2, direct_sum_matrix([m, m])))

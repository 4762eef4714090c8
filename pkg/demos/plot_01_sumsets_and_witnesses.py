"""
Sumsets and structure witnesses
===============================

A walk through the basic objects: sets in Z_n, their sumsets, and the
three shapes of structure a set of small doubling can have.
"""

from smalldoubling.core import CyclicSet, min_ap_cover, stabilizer, sumset
from smalldoubling.classify import find_witness

# a set is written n:e1,e2,...
A = CyclicSet.parse("12:0,1,5")
print("A      =", A)
print("2A     =", sumset(A, A))
print("period =", stabilizer(sumset(A, A)).order)

# the shortest progression covering A (no subgroup)
print("cover  =", min_ap_cover(A))

# every witness the exhaustive search finds, then the preferred one
search = find_witness(A)
for w in search.witnesses:
    print("  ", w.variant, w.to_dict(A))
print("best:", search.best_variant)

###############################################################################
# A subgroup has |2A| = |A|; the dense-coset case applies with H = A.

H = CyclicSet.parse("12:0,3,6,9")
print(H, "->", find_witness(H).best.to_dict(H))

###############################################################################
# Four points in a huge group: |2A| is exactly 9/4 |A|, the edge of the
# theorem's range, and no structure is found.

n = 130000
T = CyclicSet.of(n, [n - 1, 0, 1, 10])
print(T, "|2T| =", len(sumset(T, T)), "best:", find_witness(T).best_variant)

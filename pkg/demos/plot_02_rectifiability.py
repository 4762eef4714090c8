"""
Deciding rectifiability
=======================

A set in Z_n is rectifiable when some set of integers has exactly the same
coincidences among pairwise sums.  The decider solves the equalities exactly
and either returns an integer model or a pair of sums that the equalities
force together.
"""

from smalldoubling.core import CyclicSet
from smalldoubling.rectify import interval_rectify, is_rectifiable

for text in ["5:0,1,2", "4:0,1,2", "13:0,1,3,9", "16:0,4,8,12", "25:0,5,10"]:
    S = CyclicSet.parse(text)
    v = is_rectifiable(S)
    print(f"{text:12s} rectifiable={v.rectifiable!s:5s} model={v.integer_model} obstruction={v.obstruction}")

###############################################################################
# The cheap sufficient test: dilate and shift into the first half of Z_n.

S = CyclicSet.parse("25:0,5,10")
print("interval_rectify:", interval_rectify(S))

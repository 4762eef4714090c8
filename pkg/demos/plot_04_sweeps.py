"""
Exhaustive sweeps and lemma suites
==================================

Canonical classes (orbits under x -> u x + g) make exhaustive checks cheap.
"""

from smalldoubling.classify import Constants
from smalldoubling.harness import enumerate_canonical, extremal_scan, lemma_suite, sweep_theorem

print([str(c.representative) for c in enumerate_canonical(6)])

rep = sweep_theorem(12, "main")
print("main sweep n <= 12:", rep.to_dict()["counts"])

# with C = 1 the dense-coset case can never apply, and the sweep notices
bad = sweep_theorem(8, "main", Constants.make(C=1))
print("C = 1: %d violations, e.g. %s" % (len(bad.violations), bad.violations[0]["set"]))

###############################################################################
# A lemma suite reports hits and violations side by side.

r = lemma_suite("kneser", n_max=8, trials=2000, seed=1)
c = r.to_dict()["counts"]
print("kneser: examined %d, hypothesis %d, violations %d" % (c["examined"], c["hypothesis"], c["violations"]))

for row in extremal_scan(11):
    print(row)

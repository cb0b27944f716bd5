"""
A seeded sweep over random direct sums
======================================

Every trial is regenerated from (seed, trial) alone.  In two variables
the slack l(F/M) - br_0 + br_1 is never negative, and it vanishes exactly
for the modules with a reduction of reduction number at most one.
"""
from collections import Counter

from northcott.search import search

res = search(d=2, r=2, trials=40, seed=2024, reduction=True)

tally = Counter((rec.flag, rec.reduction_number) for rec in res.records)
for (flag, red), count in sorted(tally.items(), key=str):
    print(f"{flag:9s} red={red}: {count}")

print("violations:", len(res.violations), " failures:", len(res.failures))

worst = max(res.records, key=lambda rec: rec.slack)
print("largest slack:", worst.slack, "for", worst.tuple)

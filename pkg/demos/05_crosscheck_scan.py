#!/usr/bin/env python3
# Scan every x up to a length bound and compare the alcove criterion with the oracle.

import collections
import sys

from adlv import build_root_datum, crosscheck

a2s = build_root_datum({"cartan": [{"type": "A", "rank": 2}], "delta": {"node_perm": [2, 1]}})
report = crosscheck(a2s, 8, workers=1)
print(report.summary)

by_length = collections.defaultdict(lambda: [0, 0])
for row in report.rows:
    by_length[row.length][0] += row.oracle
    by_length[row.length][1] += 1
for ell, (yes, total) in sorted(by_length.items()):
    print(f"length {ell:2}: {yes:4} of {total:4} pairs nonempty")

# the first few rows, as they appear in the CSV
report.rows = report.rows[:6]
report.write_csv(sys.stdout)

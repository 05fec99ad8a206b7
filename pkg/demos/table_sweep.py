# Sweep the classification table against the oracle.
#
# Each row is instantiated a few times at random and its stated image is
# compared with the enumerated one.  Run with: python3 demos/table_sweep.py

from collections import Counter

from matimage import make_field
from matimage.cli import RunConfig, cmd_verify_table, summarize
from matimage.waring import table_rows

rows = table_rows()
print(len(rows), "rows;", Counter(r.image.value for r in rows))

for p, k in [(3, 1), (5, 7), (5, 2)]:
    recs = cmd_verify_table(RunConfig(make_field(p), k, k, count=2, timing=False))
    print(f"q={p} k={k}:", summarize(recs)["statuses"])

"""
All connected graphs on 3 and 4 nodes, d = 1..3, at p2 = 0.02.
Prints R per graph and depth and the mean over the catalog.
"""
import numpy as np

from svqaoa.sweep import SweepConfig, run

records = run(SweepConfig(mode="small-graph-study", depth=[1, 2, 3], rates=[0.02]))
rows = {}
for r in records:
    rows.setdefault(r.instance, {})[r.depth] = r.r_metric

print(f"{'graph':22s}" + "".join(f"   d={d}  " for d in (1, 2, 3)))
for name, by_d in rows.items():
    print(f"{name:22s}" + "".join(f"{by_d[d]:+8.4f} " for d in (1, 2, 3)))
print("mean R:", np.mean([r.r_metric for r in records]))

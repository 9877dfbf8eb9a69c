# The independent checks on a random graph with no bad vertices:
# short-vector counts, blow-downs, policy independence.

import random

from plumbhf import PlumbingGraph, hf_summary, intersection_form, short_vector_count
from plumbhf.verify import run_verify

rng = random.Random(3)
n = 5
edges = tuple((rng.randrange(i), i) for i in range(1, n))
deg = [sum(v in e for e in edges) for v in range(n)]
# m(v) < -d(v) keeps Q diagonally dominant and every vertex good
weights = tuple(rng.randint(-5, -deg[v] - 1) for v in range(n))
g = PlumbingGraph(weights, edges)
print(g.to_compact())

form = intersection_form(g)
print("short vectors (direct, recurrence):", short_vector_count(g), "|det Q| =", abs(form.det))

s = hf_summary(form)
print("HF_red rank", s.hf_red_total_rank, "and HF-hat rank", s.hat_rank)  # 0 and |H_1|

for check in run_verify(g, runs=20):
    print(f"{check.name:<22} {check.status:<5} {check.detail}")

# The Poincare sphere as the boundary of the E8 plumbing.
# Walk a few full paths, then read off HF+ from the Ker U census.

from plumbhf import assemble, enumerate_spinc, intersection_form, ker_u_generators, run_full_path
from plumbhf.catalog import e8

g = e8()
form = intersection_form(g)
print("weights", g.weights)
print("edges  ", g.edges)
print("det Q  ", form.det)  # unimodular, so a single Spin^c structure

# a full path from the center vector: it leaves the box, so K is bad
res = run_full_path(form, (2, 0, 0, 0, 0, 0, 0, 0))
for k in res.vectors:
    print("  ", k)
print("good" if res.good else f"bad at vertex {res.witness}")

# the zero vector is the only good one in the initial box
gens = ker_u_generators(form)
print("Ker U generators:", gens)

(t,) = enumerate_spinc(form)
print("HF+ =", assemble(form, t).to_text())  # the tower starts in degree -2

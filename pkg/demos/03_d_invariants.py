# Twelve Spin^c structures on a rational homology sphere: the tower bottom of
# each HF+ summand against the maximal-square formula for d.

from plumbhf import d_invariant, hf_summary, intersection_form, spinc_of
from plumbhf.catalog import y12

form = intersection_form(y12())
summary = hf_summary(form)
print(summary.regime, "| |H_1| =", summary.h1_order)
for mod in summary.modules:
    d_y, _ = d_invariant(form, mod.spinc)
    print(f"#{mod.spinc.index:>2} {str(mod.spinc.residue):<18} d = {str(d_y):>6}   {mod.to_text()}")

# the class of (0,0,0,1,1) carries the one extra Z
t = spinc_of(form, (0, 0, 0, 1, 1))
print("class of (0,0,0,1,1):", t.index)
print("total HF_red rank:", summary.hf_red_total_rank)

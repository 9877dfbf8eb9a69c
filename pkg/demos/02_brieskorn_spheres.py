# Sigma(2,3,7) and Sigma(3,5,7): equivalence classes of leveled vectors
# and how U-multiplication merges them.

from plumbhf import build_classes, enumerate_spinc, intersection_form, ker_u_pow_ranks
from plumbhf.catalog import sigma237, sigma357
from plumbhf.module import assemble

form = intersection_form(sigma237())
(t,) = enumerate_spinc(form)
table = build_classes(form, t, max_level=1)
for rec in table.bounded_classes():
    print(f"degree {rec.degree}, kill level {rec.kill_level}, top {rec.representative}, "
          f"{rec.size} states")

# both generators of Ker U sit in degree 0 and become one class after U
a = table.classify(0, (1, 0, -1, -5))
b = table.classify(0, (1, 0, -1, -3))
print("same class at level 0:", a == b)
same = table.classify(1, (1, 0, -1, -5)) == table.classify(1, (1, 0, -1, -3))
print("same class at level 1:", same)
print("HF+ =", assemble(form, t).to_text())

# Sigma(3,5,7): four generators, two in degree -2 and two in degree 0
form = intersection_form(sigma357())
(t,) = enumerate_spinc(form)
table = build_classes(form, t, max_level=2)
for n in range(3):
    ranks = {str(d): r for d, r in ker_u_pow_ranks(table, n).items()}
    print(f"rank of Ker U^{n + 1} by degree:", ranks)
mod = assemble(form, t)
print("HF+ =", mod.to_text())
print("HF_red rank", mod.hf_red_rank, "HF-hat rank", mod.hat_rank)

"""Open-book plans for admissible and inadmissible transverse surgery."""

from csl.openbook import (admissible_build, inadmissible_build, inadmissible_split, model_plan,
                          new_trivial, shift_to_zero)
from csl.slope import Slope


def show(title, plan):
    print(title)
    print("  history:", " ".join(op.value for op in plan.history))
    print("  west labels:", " ".join(map(str, plan.west_labels())))


show("admissible -8/5 on an annulus page", admissible_build(new_trivial(0, 1), Slope(-8, 5)))
show("inadmissible 8/11 on a genus 1 page", inadmissible_build(new_trivial(1, 1), Slope(8, 11)))

split = inadmissible_split(Slope(8, 11))
print("8/11 splits into", split.n, "negative twists then r' =", split.r_prime)

show("model plan for g=2, n=5", model_plan(2, 5))

print("shift moves on a link with twist counts [3, 5, 2]:")
for move in shift_to_zero([3, 5, 2]):
    print("  ", move)

"""Farey tessellation basics: mediants, shortest paths and negative
continued fractions, then the frame walk that builds -8/5."""

from csl.slope import (FareyFrame, FrameOp, Slope, farey_sum, frame_history, ncf_eval,
                       ncf_expand, shortest_farey_path)

r = Slope(-8, 5)
print("ncf of", r, "=", list(ncf_expand(r)))
print("back again:", ncf_eval(ncf_expand(r)))
print("mediant of 2/3 and 3/4:", farey_sum(Slope(2, 3), Slope(3, 4)))
print("ccw path -1 -> -8/5:", " ".join(map(str, shortest_farey_path(Slope(-1), r))))

# S = stabilise, N = negative surgery; West ends on -8/5
S, N = FrameOp.STABILIZE, FrameOp.NEG_SURGERY
word = [S, N, S, N, N]
for op, f in zip([None] + word, frame_history(FareyFrame(), word)):
    step = op.name if op else "start"
    print(f"{step:12} west={str(f.west):6} east={str(f.east):6} north={f.north}")

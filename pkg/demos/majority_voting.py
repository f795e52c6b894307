"""Bitwise majority alignment: exact recovery, dissent, and deserts.

BMA keeps one cursor per trace, emits the plurality symbol each round, and
advances exactly the cursors that voted with the plurality. On words without
long periodic stretches the vote tracks the source; inside a desert the
cursors drift apart in lockstep and the vote goes wrong silently.
"""

import numpy as np

from tracerecon import BitString, bma_run, contains_long_desert, random_bits, transmit
from tracerecon.rng import stream

rng = stream(7, 0)

# --- exact recovery on a desert-free word --------------------------------
R, M, delta, L, G = 200, 20, 0.01, 40, 20
while True:
    word = random_bits(R, rng)
    if not contains_long_desert(word, L, G):
        break
traces = [transmit(word, delta, rng).trace for _ in range(M)]
out, cursors, diag = bma_run(list(traces), [1] * M, R)
print(f"desert-free word, R={R}, M={M}, delta={delta}")
print(f"  recovered exactly: {out == word}")
print(f"  margins: min {min(diag.margins)}, mean {np.mean(diag.margins):.1f} of {M}")
print(f"  final cursors span {min(cursors)}..{max(cursors)}")

# The minimum margin dips whenever a deletion desyncs a cursor for a couple
# of rounds; the vote itself stays correct as long as dissenters are few.

# --- recovery rate over many trials ---------------------------------------
trials, wins = 200, 0
for _ in range(trials):
    while True:
        w = random_bits(R, rng)
        if not contains_long_desert(w, L, G):
            break
    trs = [transmit(w, delta, rng).trace for _ in range(M)]
    got, _, _ = bma_run(list(trs), [1] * M, R)
    wins += got == w
print(f"  exact recovery in {wins}/{trials} trials")

# --- deserts: the hypothesis of the exactness guarantee --------------------
# A k-desert is a periodic stretch (prefix of s^inf, |s|=k). Inside one, a
# desynced cursor reads symbols that can agree with the pack by periodicity,
# so in the worst case the vote slides without any dissent to flag it. The
# scanner classifies windows so the pipeline can avoid voting across them.
desert = BitString("01" * 40)
print(f"\n'0101...' ({len(desert)} bits) contains a long desert "
      f"(L=40, G=20): {contains_long_desert(desert, 40, 20)}")
print(f"the desert-free words above were drawn by rejection against the same scanner")

# At this scale the typical case is forgiving: a single deletion in a small-
# period desert shifts a cursor by one phase and the pack re-absorbs it a
# round later. The scanner guards the guarantee's worst case, not the mean.
rounds = 70
hits = sum(
    bma_run([transmit(desert, 0.05, rng).trace for _ in range(M)], [1] * M, rounds)[0]
    == desert.subword(1, rounds)
    for _ in range(50)
)
print(f"period-2 word at delta=0.05, {rounds}-round prefix: exact in {hits}/50 trials")

"""
Replaying the worked example
============================

Sixteen integer individuals, maximize ``x1**2 + x2**2`` on ``[0, 9000]``.
Every random choice of the two iterations is stored in a bundled
DecisionScript, so the engine can be replayed deterministically and each
intermediate table checked.
"""

# %%
# Load the bundled script and replay it.
from lpbsa.casestudy import format_trace, load_bundled_script, replay

script = load_bundled_script()
best, history, averages = replay(script)
print("averages per iteration:", averages)
print("best individual:", best.id, best.genome, best.fitness)

# %%
# The first iteration's split and labels. The subpopulation is sorted best
# first; its two halves set the Good and Bad thresholds.
rec = history[0]
print("subpopulation:", [m.id for m in rec.split.members])
print("thresholds:", rec.split.good_threshold, rec.split.bad_threshold)
print("parents:", [(p.id, rec.labels[p.id]) for p in rec.parents])

# %%
# Children before and after the one-bit mutation, and the verdicts.
for child, mutated, bits in zip(rec.children, rec.mutated, rec.mutation_bits):
    verdict = "rejected" if mutated in rec.rejected else "accepted"
    print(f"{child.id}: {child.genome} -> {mutated.genome} (bits {bits}) {verdict}")

# %%
# The full report, as printed by ``lpbsa trace``.
print(format_trace(history, averages))

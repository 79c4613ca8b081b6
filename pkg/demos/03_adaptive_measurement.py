"""Unlocated loss: the published decision tree against the optimal adaptive policy."""
import numpy as np

from pentaloss import NonPreannouncedRecursion, find_threshold, paper_tree, policy_failure, validate_policy

tree = paper_tree()
print("published tree failure:", policy_failure(tree))
for line in validate_policy(tree).anomalies:
    print("  anomaly:", line)

rec = NonPreannouncedRecursion()
f = rec.scalar("Z")
print("optimal failure:", f, "(same for all bases:", rec.symmetric, ")")
print("threshold:", find_threshold(f))

p = np.array([0.05, 0.10, 0.15])
for n in range(1, 4):
    print(f"Q={5**n:4d}", [f"{rec.iterate(x, n):.3g}" for x in p])

print(rec.policy("Z").to_json()[:400], "...")

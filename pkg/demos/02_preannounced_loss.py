"""Located loss: level recurrence, threshold and qubit overhead."""
from fractions import Fraction

import numpy as np

from pentaloss import find_threshold, iterate_levels, overhead_for_target, pre_failure
from pentaloss.report import table2

print("threshold:", find_threshold(pre_failure))
print("exact one-level value at p=1/5:", pre_failure(Fraction(1, 5)))

for p in (0.2, 0.3, 0.4):
    o = overhead_for_target(pre_failure, p, 1e-7)
    print(f"p={p}: {o.levels} levels, {o.qubits} qubits, effective loss {o.effective:.2e}")

print(table2().to_text())

p = np.linspace(0, 0.5, 6)
for n in (1, 2, 3):
    print(f"N={n}", np.array2string(iterate_levels(pre_failure, p, n), precision=4))

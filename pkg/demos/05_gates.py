"""Stabilizer checks of the encoded CZ, the C_X graph and the Hadamard chain."""
from pentaloss.gates import check_cx_correlations, check_hadamard_chain, search_cx_graphs, simulate_cz_flow

for outcomes in ((0, 0), (1, 0)):
    v = simulate_cz_flow(outcomes=outcomes)
    print(v.name, "->", "pass" if v.passed else v.missing)
    for c in v.correlations:
        print(f"   {c.label}: sign {c.sign:+d}")

v = simulate_cz_flow(centre_edge=False)
print("without the centre edge:", "pass" if v.passed else "missing " + ", ".join(v.missing))

graphs, count, nullity = search_cx_graphs(limit=3)
print(f"{count} eight-vertex graphs carry all four C_X correlations")
for g in graphs:
    print("  ", " ".join(f"{i}-{j}" for i, j in g.sorted_edges()))
print(check_cx_correlations().notes)
print("Hadamard chain:", check_hadamard_chain().passed)

"""
Stabilizer-level checks of the measurement-based gate constructions:
logical C_Z between two encoded pentagons, the C_X correlation set on an
eight-qubit graph, and the Hadamard produced by an X measurement along a
two-qubit chain.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from importlib import resources
from itertools import combinations
from typing import Optional

from .code import GraphSpec, PentagonCode, build_pentagon_code, graph_stabilizers
from .pauli import PauliOperator, commutes, in_span
from .tableau import StabilizerState

CX_CORRELATIONS = ("XIXIXIIX", "ZXIXZIII", "IIIXZZXZ", "IIIIIXIX")


@dataclass
class Correlation:
    label: str
    operator: str
    present: bool
    sign: Optional[int] = None
    expected_sign: Optional[int] = None
    certificate: tuple = ()

    @property
    def passed(self) -> bool:
        return self.present and (self.expected_sign is None or self.sign == self.expected_sign)


@dataclass
class Verdict:
    name: str
    correlations: list[Correlation] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.correlations)

    @property
    def missing(self) -> list[str]:
        return [f"{c.label} {c.operator}" for c in self.correlations if not c.passed]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "correlations": [dict(asdict(c), passed=c.passed) for c in self.correlations],
            "notes": self.notes,
        }


def _sign_in(gens, op: PauliOperator):
    res = in_span(gens, (), op)
    if not res:
        return False, None, ()
    return True, (1 if res.phase == 0 else -1), res.generators


# ---------------------------------------------------------------------------
# logical C_Z


def _two_pentagon_state(centre_edge: bool) -> StabilizerState:
    # qubit 1: centre A, 2..6: ring A, 7: centre B, 8..12: ring B
    edges = []
    for c, ring in ((1, range(2, 7)), (7, range(8, 13))):
        ring = list(ring)
        edges += [(ring[k], ring[(k + 1) % 5]) for k in range(5)]
        edges += [(c, r) for r in ring]
    if centre_edge:
        edges.append((1, 7))
    return StabilizerState.graph_state(12, edges)


def simulate_cz_flow(
    code: PentagonCode | None = None,
    outcomes: tuple[int, int] = (0, 0),
    centre_edge: bool = True,
    order: str = "AB",
) -> Verdict:
    """Two encoded pentagons whose centres share an edge; both centres measured in X.

    Checks that the ten remaining qubits carry X_A Z_B and Z_A X_B (logical
    operators of the two codes) with signs fixed by the outcome frame.
    """
    code = code or build_pentagon_code()
    state = _two_pentagon_state(centre_edge)
    ma, mb = outcomes
    steps = {"A": (1, ma), "B": (7, mb)}
    for key in order:
        q, m = steps[key]
        state.measure(q, "X", outcome=m)
    post = state.discard([1, 7])
    gens = post.generators

    a_qubits, b_qubits = [1, 2, 3, 4, 5], [6, 7, 8, 9, 10]
    verdict = Verdict(f"logical CZ flow (outcomes {ma}{mb}, order {order}, centre edge {centre_edge})")
    for label, la, lb, frame in (("XA.ZB", "X", "Z", mb), ("ZA.XB", "Z", "X", ma)):
        op = code.logical(la).embed(10, a_qubits) * code.logical(lb).embed(10, b_qubits)
        present, sign, cert = _sign_in(gens, op)
        verdict.correlations.append(Correlation(label, str(op), present, sign, (-1) ** frame, cert))
    for name, stabs, qubits in (("A", code.code_stabilizers, a_qubits), ("B", code.code_stabilizers, b_qubits)):
        ok = all(in_span(gens, (), s.embed(10, qubits)).exact for s in stabs.generators)
        verdict.notes.append(f"code stabilizers of {name} present: {ok}")
        if not ok:
            verdict.correlations.append(Correlation(f"stabilizers {name}", "", False))
    return verdict


# ---------------------------------------------------------------------------
# C_X correlations


def cx_operators() -> list[PauliOperator]:
    return [PauliOperator.from_string(s) for s in CX_CORRELATIONS]


def check_cx_correlations(graph: GraphSpec | None = None) -> Verdict:
    """Pairwise commutation of the C_X correlations and their membership in ``graph``'s stabilizer group."""
    graph = graph or load_cx_graph()
    if graph.n_vertices != 8:
        raise ValueError(f"need an 8-vertex graph, got {graph.n_vertices}")
    ops = cx_operators()
    verdict = Verdict(f"C_X correlations on {len(graph.edges)}-edge graph")
    bad_pairs = [(str(a), str(b)) for a, b in combinations(ops, 2) if not commutes(a, b)]
    verdict.correlations.append(Correlation("pairwise commute", ";".join(CX_CORRELATIONS), not bad_pairs))
    stabs = graph_stabilizers(graph)
    for k, op in enumerate(ops, start=1):
        present, sign, cert = _sign_in(stabs, op)
        verdict.correlations.append(
            Correlation(f"member {k}", str(op), present, sign, None, tuple(i + 1 for i in cert))
        )
    verdict.notes.append("edges: " + " ".join(f"{i}-{j}" for i, j in graph.sorted_edges()))
    return verdict


def commutation_verdict() -> bool:
    return all(commutes(a, b) for a, b in combinations(cx_operators(), 2))


def _edge_index(n):
    pairs = list(combinations(range(1, n + 1), 2))
    return pairs, {e: k for k, e in enumerate(pairs)}


def solve_cx_graphs(n: int = 8, max_free: int = 22):
    """All n-vertex graphs whose stabilizer group holds every C_X correlation.

    Membership of an operator with X-part S and Z-part T means that for each
    vertex v the neighbours of v inside S have parity [v in T]: linear in the
    edge indicators over GF(2). Returns (solutions, nullity) with solutions
    as sorted edge lists, or ``None`` if the system is inconsistent.
    """
    pairs, index = _edge_index(n)
    rows = []
    for op in cx_operators():
        S = [q for q in range(1, n + 1) if (op.x >> (q - 1)) & 1]
        for v in range(1, n + 1):
            mask = 0
            for i in S:
                if i != v:
                    mask |= 1 << index[(min(i, v), max(i, v))]
            rows.append((mask, (op.z >> (v - 1)) & 1))
    # gaussian elimination over GF(2)
    pivots: list[tuple[int, int, int]] = []
    for mask, rhs in rows:
        for pbit, pm, pr in pivots:
            if mask & pbit:
                mask ^= pm
                rhs ^= pr
        if mask:
            pbit = mask & -mask
            pivots = [(b, m ^ mask, r ^ rhs) if m & pbit else (b, m, r) for b, m, r in pivots]
            pivots.append((pbit, mask, rhs))
        elif rhs:
            return None
    pivot_bits = {b for b, _, _ in pivots}
    free = [k for k in range(len(pairs)) if (1 << k) not in pivot_bits]
    if len(free) > max_free:
        raise ValueError(f"{len(free)} free edges; enumeration too large")
    solutions = []
    for assign in range(1 << len(free)):
        x = 0
        for j, k in enumerate(free):
            if (assign >> j) & 1:
                x |= 1 << k
        for b, m, r in pivots:
            # pivot variable = rhs + sum of free variables in the row
            if r ^ (bin(m & x & ~b).count("1") & 1):
                x |= b
        solutions.append(sorted(pairs[k] for k in range(len(pairs)) if (x >> k) & 1))
    return solutions, len(free)


def _connected(n, edges) -> bool:
    seen, todo = {1}, [1]
    while todo:
        v = todo.pop()
        for i, j in edges:
            for a, b in ((i, j), (j, i)):
                if a == v and b not in seen:
                    seen.add(b)
                    todo.append(b)
    return len(seen) == n


def _rank_key(edges):
    deg = {}
    for i, j in edges:
        deg[i] = deg.get(i, 0) + 1
        deg[j] = deg.get(j, 0) + 1
    return (not _connected(8, edges), len(edges), max(deg.values(), default=0), edges)


def search_cx_graphs(limit: int = 5):
    """Graphs satisfying every correlation, connected ones first, then fewest edges and lowest max degree."""
    result = solve_cx_graphs()
    if result is None:
        return [], 0, 0
    solutions, nullity = result
    ranked = sorted(solutions, key=_rank_key)
    return [GraphSpec.from_edges(8, e) for e in ranked[:limit]], len(solutions), nullity


def load_cx_graph() -> GraphSpec:
    text = resources.files("pentaloss.data").joinpath("cx_graph.edges").read_text()
    return GraphSpec.from_edge_list(text)


# ---------------------------------------------------------------------------
# Hadamard along a chain


def check_hadamard_chain() -> Verdict:
    """|psi> on qubit 1, C_Z to qubit 2 in |+>, X measurement of qubit 1 with outcome m.

    The output on qubit 2 must be X^m H |psi>: for each input eigenstate of
    P the output stabilizer is X^m (H P H) X^m.
    """
    verdict = Verdict("Hadamard by X measurement")
    hadamard_image = {"X": PauliOperator.from_string("Z"), "Y": PauliOperator.from_string("-Y"), "Z": PauliOperator.from_string("X")}
    frame_x = PauliOperator.from_string("X")
    for letter in ("X", "Y", "Z"):
        for m in (0, 1):
            state = StabilizerState(2, [PauliOperator.single(2, 1, letter), PauliOperator.single(2, 2, "X")])
            state.cz(1, 2)
            state.measure(1, "X", outcome=m)
            out = state.discard([1]).generators[0]
            expected = hadamard_image[letter]
            if m:
                expected = frame_x * expected * frame_x
            verdict.correlations.append(
                Correlation(f"{letter}1 -> out (m={m})", str(out), out == expected, None, None)
            )
            verdict.notes.append(f"input {letter}, m={m}: output {out}, expected {expected}")
    return verdict

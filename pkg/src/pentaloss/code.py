"""
Ring graph states, the five-qubit ring code and concatenation bookkeeping.

Qubit labels run 1..5 clockwise around the pentagon starting from the top,
so a 5-character Pauli string lists (top, upper-right, lower-right,
lower-left, upper-left).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, product as cartesian
from typing import Iterable, Iterator

from .pauli import (
    PauliOperator,
    StabilizerGroup,
    commutes,
    conjugate_by_cz,
    coset_elements,
    in_span,
    multiply,
)
from .tableau import StabilizerState

BASES = ("X", "Y", "Z")
MAX_LEVELS = 12


@dataclass(frozen=True)
class GraphSpec:
    """Simple undirected graph on vertices 1..n_vertices."""

    n_vertices: int
    edges: frozenset

    def __post_init__(self):
        if self.n_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        norm = set()
        for e in self.edges:
            i, j = e
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (1 <= i <= self.n_vertices and 1 <= j <= self.n_vertices):
                raise ValueError(f"edge {e} outside 1..{self.n_vertices}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n_vertices: int, edges: Iterable[tuple[int, int]]) -> GraphSpec:
        edges = list(edges)
        norm = [(min(e), max(e)) for e in edges]
        if len(set(norm)) != len(norm):
            raise ValueError("duplicate edge")
        return cls(n_vertices, frozenset(norm))

    def neighbors(self, v: int) -> list[int]:
        return sorted(j if i == v else i for i, j in self.edges if v in (i, j))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def to_edge_list(self) -> str:
        """One ``"i j"`` line per edge; the header comment records the vertex count."""
        lines = [f"# vertices {self.n_vertices}"] + [f"{i} {j}" for i, j in self.sorted_edges()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edge_list(cls, text: str, n_vertices: int | None = None) -> GraphSpec:
        edges = []
        for line in text.splitlines():
            line = line.strip()
            if line.startswith("#"):
                parts = line[1:].split()
                if len(parts) == 2 and parts[0] == "vertices" and n_vertices is None:
                    n_vertices = int(parts[1])
                continue
            if not line:
                continue
            i, j = (int(t) for t in line.split())
            edges.append((i, j))
        if n_vertices is None:
            n_vertices = max((max(e) for e in edges), default=1)
        return cls.from_edges(n_vertices, edges)


def ring_graph(n: int) -> GraphSpec:
    """Cycle graph 1-2-...-n-1."""
    if n < 3:
        raise ValueError(f"a ring needs at least 3 vertices, got {n}")
    return GraphSpec.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)])


def graph_stabilizers(g: GraphSpec) -> list[PauliOperator]:
    """K_v = X_v times Z on every neighbour of v, one per vertex."""
    out = []
    for v in range(1, g.n_vertices + 1):
        z = sum(1 << (u - 1) for u in g.neighbors(v))
        out.append(PauliOperator(g.n_vertices, 1 << (v - 1), z))
    return out


# ---------------------------------------------------------------------------
# the pentagon code


@dataclass(frozen=True)
class PentagonCode:
    ring: GraphSpec
    code_stabilizers: StabilizerGroup
    logical_x: PauliOperator
    logical_y: PauliOperator
    logical_z: PauliOperator

    @property
    def n_qubits(self) -> int:
        return self.ring.n_vertices

    def logical(self, basis: str) -> PauliOperator:
        return {"X": self.logical_x, "Y": self.logical_y, "Z": self.logical_z}[basis.upper()]

    def coset(self, basis: str) -> list[PauliOperator]:
        return coset_elements(self.code_stabilizers, self.logical(basis))

    def logical_class(self, op: PauliOperator) -> str | None:
        """Which coset ``op`` lies in, up to sign: 'X', 'Y', 'Z', 'S' (stabilizer) or None."""
        if in_span(self.code_stabilizers, (), op):
            return "S"
        for b in BASES:
            if in_span(self.code_stabilizers, (self.logical(b),), op):
                return b
        return None

    def distance(self) -> int:
        return min(self.coset(b)[0].weight for b in BASES)

    def to_json(self) -> str:
        return json.dumps(
            {
                "ring_edges": [list(e) for e in self.ring.sorted_edges()],
                "stabilizers": [str(g) for g in self.code_stabilizers.generators],
                "logical": {b: str(self.logical(b)) for b in BASES},
            },
            indent=2,
        )


def build_pentagon_code() -> PentagonCode:
    """Five-qubit ring code: even products of the ring graph stabilizers.

    The logical X is the coset of K_5 (every K_i lies in it), represented
    with all-X support; in this labelling that representative carries a
    minus sign, i.e. K_i = -XXXXX * s for a code stabilizer s.
    """
    ring = ring_graph(5)
    k = graph_stabilizers(ring)
    code = StabilizerGroup(5, tuple(multiply(k[i], k[i + 1]) for i in range(4)))

    xx = PauliOperator.from_string("XXXXX")
    cert = in_span(code, (xx,), k[4])
    assert cert and cert.extras == (0,), "K_5 must be a logical X"
    logical_x = PauliOperator(5, xx.x, xx.z, cert.phase)
    logical_z = PauliOperator.from_string("ZZZZZ")
    logical_y = multiply(PauliOperator(5, phase=1), multiply(logical_x, logical_z))
    assert logical_y.is_hermitian()

    for op in (logical_x, logical_y, logical_z):
        assert code.commutes_with(op)
    assert not commutes(logical_x, logical_z)
    pc = PentagonCode(ring, code, logical_x, logical_y, logical_z)
    assert pc.distance() == 3
    return pc


def minimal_representatives(code: PentagonCode, basis: str) -> list[PauliOperator]:
    coset = code.coset(basis)
    w = coset[0].weight
    return [op for op in coset if op.weight == w]


def rotate(op: PauliOperator, shift: int = 1) -> PauliOperator:
    """Relabel qubit q as q + shift (mod n) around the ring."""
    n = op.n_qubits
    targets = [(q - 1 + shift) % n + 1 for q in range(1, n + 1)]
    return op.embed(n, targets)


# ---------------------------------------------------------------------------
# encoding check


@dataclass
class IdentityCheck:
    name: str
    expected: str
    observed: str
    passed: bool


@dataclass
class EncodingReport:
    checks: list[IdentityCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[IdentityCheck]:
        return [c for c in self.checks if not c.passed]

    def add(self, name, expected, observed, passed):
        self.checks.append(IdentityCheck(name, str(expected), str(observed), bool(passed)))


def _cz_bar(op: PauliOperator, centre: int, ring: Iterable[int]) -> PauliOperator:
    for q in ring:
        op = conjugate_by_cz(op, centre, q)
    return op


def verify_encoding_identities(code: PentagonCode | None = None) -> EncodingReport:
    """Check the centre-to-pentagon encoding in the stabilizer picture.

    Register layout: ring qubits 1..5, centre qubit 6.
    """
    code = code or build_pentagon_code()
    report = EncodingReport()
    ring, centre = (1, 2, 3, 4, 5), 6

    def on6(text):
        return PauliOperator.from_string(text)

    # operator conjugation tables
    x_c = on6("IIIIIX")
    report.add("CZbar X_centre", "+ZZZZZX", _cz_bar(x_c, centre, ring), _cz_bar(x_c, centre, ring) == on6("ZZZZZX"))
    z_c = on6("IIIIIZ")
    report.add("CZbar Z_centre", z_c, _cz_bar(z_c, centre, ring), _cz_bar(z_c, centre, ring) == z_c)
    k5 = on6("ZIIZXI")
    report.add("CZbar Z1 Z4 X5", "+ZIIZXZ", _cz_bar(k5, centre, ring), _cz_bar(k5, centre, ring) == on6("ZIIZXZ"))

    # teleportation through the centre: ring graph state + centre, C_Z to all
    # ring qubits, centre measured in X
    n = 6
    ring_edges = code.ring.sorted_edges()
    for label, centre_basis, image, frame_sign in (
        ("Z input -> logical X", "Z", code.logical_x, lambda m: 0),
        ("X input -> logical Z", "X", code.logical_z, lambda m: 2 * m),
    ):
        for m in (0, 1):
            state = StabilizerState.plus(n)
            for i, j in ring_edges:
                state.cz(i, j)
            if centre_basis == "Z":
                state.h(centre)
            for q in ring:
                state.cz(centre, q)
            state.measure(centre, "X", outcome=m)
            post = state.discard([centre]).group
            expected_group = code.code_stabilizers.extended(
                PauliOperator(5, image.x, image.z, image.phase + frame_sign(m))
            )
            same = all(g in expected_group for g in post.generators) and len(post) == len(expected_group)
            report.add(
                f"{label}, outcome {m}",
                [str(g) for g in expected_group.generators],
                [str(g) for g in post.generators],
                same,
            )
    return report


# ---------------------------------------------------------------------------
# concatenation


@dataclass(frozen=True)
class ConcatenationLayout:
    """Addressing of the 5**levels physical leaves under one logical qubit.

    A leaf path is a tuple of base-5 digits in 1..5, top pentagon first.
    """

    levels: int

    def __post_init__(self):
        if not 1 <= self.levels <= MAX_LEVELS:
            raise ValueError(f"levels must be in 1..{MAX_LEVELS}, got {self.levels}")

    @property
    def physical_count(self) -> int:
        return 5 ** self.levels

    def path(self, leaf: int) -> tuple[int, ...]:
        if not 0 <= leaf < self.physical_count:
            raise IndexError(f"leaf {leaf} out of range")
        digits = []
        for _ in range(self.levels):
            leaf, d = divmod(leaf, 5)
            digits.append(d + 1)
        return tuple(reversed(digits))

    def index(self, path: tuple[int, ...]) -> int:
        if len(path) != self.levels or any(not 1 <= d <= 5 for d in path):
            raise ValueError(f"bad path {path}")
        leaf = 0
        for d in path:
            leaf = leaf * 5 + (d - 1)
        return leaf

    def paths(self) -> Iterator[tuple[int, ...]]:
        return cartesian(range(1, 6), repeat=self.levels)


def layout(levels: int) -> ConcatenationLayout:
    return ConcatenationLayout(levels)


# ---------------------------------------------------------------------------
# loss-pattern properties


def recoverable(code: PentagonCode, basis: str, lost: Iterable[int]) -> bool:
    """Can logical ``basis`` still be measured when qubits ``lost`` are gone?"""
    lost = set(lost)
    avail = [
        PauliOperator.single(code.n_qubits, q, b)
        for q in range(1, code.n_qubits + 1)
        if q not in lost
        for b in ("X", "Z")
    ]
    return bool(in_span(code.code_stabilizers, avail, code.logical(basis)))


def loss_sets(n: int, size: int):
    return combinations(range(1, n + 1), size)

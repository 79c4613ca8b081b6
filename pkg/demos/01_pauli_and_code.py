"""Pauli algebra and the five-qubit ring code."""
from pentaloss import PauliOperator, build_pentagon_code, in_span, minimal_representatives
from pentaloss.code import graph_stabilizers

P = PauliOperator.from_string

print("XY =", P("X") * P("Y"))
print("YX =", P("Y") * P("X"))

code = build_pentagon_code()
print("ring stabilizers:", *graph_stabilizers(code.ring))
print("code stabilizers:", *code.code_stabilizers.generators)
for basis in "XYZ":
    print(f"logical {basis}: {code.logical(basis)}")
    print("   weight-3:", *minimal_representatives(code, basis))

# which logical does a set of single-qubit outcomes certify?
clicks = [P("IXIII"), P("IIXII"), P("IIIIZ")]
res = in_span(code.code_stabilizers, clicks, code.logical("Z"))
print("X2 X3 Z5 certifies logical Z:", res.contained, "sign", "+" if res.phase == 0 else "-")

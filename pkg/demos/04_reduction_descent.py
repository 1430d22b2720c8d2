#!/usr/bin/env python3
# Twisted conjugation, descent to minimal length, and the reduction oracle.

from adlv import build_root_datum, conj_step, descend_to_minimal, parse_element, reduction_nonempty

a1 = build_root_datum({"cartan": [{"type": "A", "rank": 1}]})
x = parse_element(a1, "t[2]*s1")
step = conj_step(x, "s1")
print(f"{x} --s1--> {step.result}   ({step.kind})")

c2 = build_root_datum({"cartan": [{"type": "C", "rank": 2}]})
x = parse_element(c2, "s0 s1 s2 s1 s0 s2")
path = descend_to_minimal(x)
print("descent from", x)
for st in path.steps:
    print(f"   {st.kind:5} by {st.s:3} -> {st.result}")
print("minimal element", path.end, "after", path.orbit_nodes, "orbit nodes")

# the oracle works for any b, basic or not
e = parse_element(a1, "e")
t = parse_element(a1, "t[2]")
for text in ["t[2]*s1", "t[2]", "t[4]*s1"]:
    y = parse_element(a1, text)
    print(f"X_{text}(1) nonempty: {reduction_nonempty(y, e)};  X_{text}(t[2]) nonempty: {reduction_nonempty(y, t)}")

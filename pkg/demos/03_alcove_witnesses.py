#!/usr/bin/env python3
# (J, w, delta)-alcove witnesses and the Levi-obstruction test for basic b.

from adlv import alcove_witnesses, build_root_datum, nlo_check, nonempty_basic_criterion, parse_element
from adlv.expr import format_word

a1 = build_root_datum({"cartan": [{"type": "A", "rank": 1}]})
e = parse_element(a1, "e")

for text in ["t[2]", "t[2]*s1", "s1"]:
    x = parse_element(a1, text)
    print(f"x = {text}")
    for w in alcove_witnesses(x):
        J = sorted(j + 1 for j in w.J)
        print(f"   J={J!s:6} w={format_word(a1, w.w):4} strict={w.strict!s:5} obstruction={[str(v) for v in w.obstruction]}")
    ok, bad = nlo_check(x, e)
    print("   no Levi obstruction:", ok, " violated by", len(bad), "witness(es)")

# A2 with the swap has trivial Kottwitz group, so every emptiness here comes from a witness
a2s = build_root_datum({"cartan": [{"type": "A", "rank": 2}], "delta": {"node_perm": [2, 1]}})
b = parse_element(a2s, "e")
for text in ["s1 s2", "t[1,1]*s1", "t[2,-1]", "s0 s1 s2 s1"]:
    print(f"A2+swap, X_x(1) nonempty for x = {text}: {nonempty_basic_criterion(parse_element(a2s, text), b)}")

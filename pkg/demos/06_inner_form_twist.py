#!/usr/bin/env python3
# Non-quasi-split inner forms: the Frobenius Ad(z) o delta for a length-zero z.

from adlv import Frobenius, build_root_datum, inner_form_transport, omega_elements, parse_element, reduction_nonempty

a2 = build_root_datum({"cartan": [{"type": "A", "rank": 2}]})
z = omega_elements(a2)[1]
print("twisting element z =", z)

for text in ["e", "s1", "s1 s2", "s0 s1 s2", "t[1,1]"]:
    x = parse_element(a2, text)
    b = parse_element(a2, "e")
    xz, bz, frob = inner_form_transport(x, b, z)
    inner = reduction_nonempty(x, b, Frobenius(a2, z))
    split = reduction_nonempty(xz, bz)
    print(f"x = {text:9}  inner form: {inner!s:5}  via ({xz}, {bz}): {split}")

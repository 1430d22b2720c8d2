#!/usr/bin/env python3
# Arithmetic in the extended affine Weyl group: lengths, Omega, Newton points, eta.

from adlv import (
    build_root_datum,
    eta,
    kappa,
    length,
    newton,
    omega_elements,
    parse_element,
    sigma_invariants,
)
from adlv.expr import format_word

a1 = build_root_datum({"cartan": [{"type": "A", "rank": 1}]})
x = parse_element(a1, "s0*s1")
print("s0 s1 =", x, " length", length(x))

x = parse_element(a1, "t[2]*s1")
print(x, "has length", length(x), "and invariants", sigma_invariants(x).to_json())

for tau in omega_elements(a1):
    print("length-zero element", tau, " kappa =", kappa(tau))

a2s = build_root_datum({"cartan": [{"type": "A", "rank": 2}], "delta": {"node_perm": [2, 1]}})
t = parse_element(a2s, "t[2,-1]")
nu, nu_bar = newton(t)
print("A2 with swap: Newton vector of", t, "=", [str(v) for v in nu])

a2 = build_root_datum({"cartan": [{"type": "A", "rank": 2}]})
for text in ["s1 s2", "t[1,1]", "t[2,-1]*s1"]:
    e1, e2, ed = eta(parse_element(a2, text))
    print(f"{text:12} eta_1={format_word(a2, e1):8} eta_2={format_word(a2, e2):8} eta_delta={format_word(a2, ed)}")

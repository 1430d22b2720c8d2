#!/usr/bin/env python3
# Root data, lattices and the groups the Kottwitz map lands in.

from adlv import build_root_datum, delta_stable_subsets

a2 = build_root_datum({"cartan": [{"type": "A", "rank": 2}]})
print(a2)
print("positive roots:", a2.roots[: a2.n_pos])
print("highest root:", a2.roots[a2.highest_root[0]], " Coxeter number:", a2.coxeter_number[0])
print("|W| =", a2.W.order, " longest element word:", a2.W.word[a2.W.longest])

# adjoint A2: Lambda / Q^vee is Z/3; the node swap kills it in the coinvariants
print("pi_1 for adjoint A2:", a2.kappa_group().factors)
a2s = build_root_datum({"cartan": [{"type": "A", "rank": 2}], "delta": {"node_perm": [2, 1]}})
print("same with the swap:", a2s.kappa_group().factors or "trivial")

# Levi quotient for A3 and J = {1, 3}: one free summand and a Z/2
a3 = build_root_datum({"cartan": [{"type": "A", "rank": 3}]})
g = a3.kappa_group({0, 2})
print("A3, J={1,3}: torsion", g.torsion_factors(), " free rank", g.free_rank())

flip = build_root_datum({"cartan": [{"type": "A", "rank": 3}], "delta": {"node_perm": [3, 2, 1]}})
subsets, connected = delta_stable_subsets(flip)
print("delta-stable J for A3 with the flip:", [sorted(j + 1 for j in J) for J in subsets], " delta-connected:", connected)

#!/usr/bin/env python3
# Colour the alcoves of a rank-2 apartment by nonemptiness of X_x(b).

import os
import re

from adlv import build_root_datum, omega_elements, render_svg

out_dir = os.environ.get("DEMO_OUT_DIR", ".")
for name, spec in [
    ("A2", {"cartan": [{"type": "A", "rank": 2}]}),
    ("C2", {"cartan": [{"type": "C", "rank": 2}]}),
    ("G2", {"cartan": [{"type": "G", "rank": 2}]}),
    ("A1xA1_swap", {"cartan": [{"type": "A", "rank": 1}] * 2, "delta": {"node_perm": [2, 1]}}),
]:
    d = build_root_datum(spec)
    for k, b in enumerate(omega_elements(d)):
        svg = render_svg(d, b, 6)
        path = os.path.join(out_dir, f"apartment_{name}_b{k}.svg")
        with open(path, "w") as fh:
            fh.write(svg)
        green = len(re.findall('fill="#5fb85f"', svg))
        red = len(re.findall('fill="#d9534f"', svg))
        print(f"{path}: {green} nonempty, {red} empty")

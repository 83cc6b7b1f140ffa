"""Regenerate the worked example documents in data/examples/."""

import sys
from pathlib import Path

from trigp import io
from trigp.algebra import field_algebra, truncated_polynomial
from trigp.homological import simple_modules
from trigp.modules import regular_module
from trigp.triangular import e1_lambda, e1_rho, t2, triple_from_blocks
import numpy as np

out = Path(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data" / "examples")
out.mkdir(parents=True, exist_ok=True)


def put(name, doc):
    io.write_atomic(out / name, io.dumps(doc))
    print("wrote", out / name)


L2 = truncated_polynomial(2, 2)
F2 = field_algebra(2)
put("lambda2.json", {"kind": "algebra", "form": "truncated", "p": 2, "t": 2, "name": "L2"})
put("f2.json", {"kind": "algebra", "form": "truncated", "p": 2, "t": 1, "name": "F2"})
put("lambda2_structure.json",
    {"kind": "algebra", "form": "structure", "p": 2, "table": L2.table.tolist(), "unit": L2.unit.tolist(),
     "radical": L2.radical.tolist(), "name": "L2 (structure constants)"})
put("a2_quiver.json", {"kind": "algebra", "form": "quiver", "p": 2, "vertices": 2, "arrows": [[0, 1]],
                       "relations": [], "name": "A2"})
l2ref = io.ref("lambda2.json", L2)
f2ref = io.ref("f2.json", F2)
put("lambda2_simple.json", io.module_doc(simple_modules(L2)[0], l2ref) | {"name": "S"})
put("lambda2_regular.json", io.module_doc(regular_module(L2), l2ref) | {"name": "L2"})
put("t2_f2.json", {"kind": "algebra", "form": "t2", "base": f2ref, "name": "T2(F2)"})
put("t2_lambda2.json", {"kind": "algebra", "form": "t2", "base": l2ref, "name": "T2(L2)"})

g1 = t2(F2)
k = regular_module(F2)
t = e1_rho(g1, k)
put("t2_f2_k0.json", {"kind": "triple", "algebra": io.ref("t2_f2.json", g1),
                      "x": io.module_doc(k, f2ref), "y": io.module_doc(t.y, f2ref), "phi": t.phi.tolist(),
                      "name": "(k,0)_0"})
e = e1_lambda(g1, k)
put("t2_f2_e1_regular.json", {"kind": "triple", "algebra": io.ref("t2_f2.json", g1),
                              "x": io.module_doc(k, f2ref), "y": io.module_doc(e.y, f2ref), "phi": e.phi.tolist(),
                              "name": "e1_lambda(F2)"})

g2 = t2(L2)
S, reg = simple_modules(L2)[0], regular_module(L2)
blocks = np.zeros((2, 2, 1), dtype=np.int64)
blocks[0, 1, 0] = 1  # 1 in M sends the generator of S to x, the socle of L2
soc = triple_from_blocks(g2, S, reg, blocks)
put("t2_lambda2_socle.json", {"kind": "triple", "algebra": io.ref("t2_lambda2.json", g2),
                              "x": {"ref": "lambda2_simple.json"}, "y": {"ref": "lambda2_regular.json"},
                              "phi": soc.phi.tolist(), "name": "(S,L2)_socle"})
zero_s = {"kind": "module", "algebra": l2ref, "actions": [[], []]}
put("t2_lambda2_0S.json", {"kind": "triple", "algebra": io.ref("t2_lambda2.json", g2),
                           "x": zero_s, "y": {"ref": "lambda2_simple.json"}, "phi": [[]],
                           "name": "(0,S)_0"})

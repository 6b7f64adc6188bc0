"""When every proper principal submatrix is nilpotent, the whole matrix is
either nilpotent or a single weighted n-cycle.

We walk through the three descriptions on a few matrices: powers, the
directed graph of nonzero entries, and an explicit reordering of the indices.
"""

from foliated import RationalMatrix, characteristic_polynomial, classify_special, is_nilpotent
from foliated.matrix import HypothesisViolated, adjacency_graph, shortest_cycle_length

examples = {
    "strictly upper triangular": [[0, 1, 4], [0, 0, 2], [0, 0, 0]],
    "a scrambled 3-cycle": [[0, 0, 5], [7, 0, 0], [0, -2, 0]],
    "a 2-cycle inside a 3x3": [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
}

for name, rows in examples.items():
    A = RationalMatrix.of(rows)
    print(f"--- {name}: {A.to_text()}")
    print("  edges:", adjacency_graph(A))
    print("  shortest cycle:", shortest_cycle_length(A))
    print("  nilpotent:", is_nilpotent(A))
    print("  characteristic polynomial:", characteristic_polynomial(A))
    try:
        cls = classify_special(A)
    except HypothesisViolated as exc:
        print("  hypothesis fails on rows/columns", exc.witness)
        continue
    print("  classification:", cls.tag)
    if cls.is_cycle_form:
        print("  cycle order:", cls.permutation)
        print("  reordered:", A.permuted(cls.permutation).to_text())

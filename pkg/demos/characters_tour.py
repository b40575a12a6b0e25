"""Weights, dimensions and orthogonality for the rank-2 groups.

Run: python demos/characters_tour.py
"""
import numpy as np

from eqweyl.lie import a2, character_eval, irrep, weyl_dimension, weyl_integration_gram, weyl_quotient

rs = a2()
print(f"{rs.label}: {len(rs.positive_roots)} positive roots, Weyl group of order {len(rs.weyl_group)}")

# the adjoint representation: six roots plus a two-dimensional zero weight space
adj = irrep(rs, (1, 1))
print("adjoint weights and multiplicities:", dict(zip(adj.weights, adj.mults)))
print("Weyl dimension of (1,1):", weyl_dimension(rs, (1, 1)))

# character by weight sum agrees with the Weyl quotient at a regular point
X = np.array([0.3, 1.1])
print("chi(1,2) by weights :", character_eval(irrep(rs, (1, 2)), X))
print("chi(1,2) by quotient:", weyl_quotient(irrep(rs, (1, 2)), X))

# Gram matrix of the first few characters under the Weyl integration formula
irs = [irrep(rs, w) for w in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (3, 0)]]
G = weyl_integration_gram(irs)
print("max |G - I| =", float(np.abs(G - np.eye(len(irs))).max()))

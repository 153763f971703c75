# %% [markdown]
# # Path components of invertible symbols
#
# Two symbols with the same winding number lie in the same component when
# their phase difference stays bounded with decaying oscillation. exp(i beta H)
# for different beta separates: the phase difference grows like ln ln M.

# %%
import numpy as np

from toeplitz_qc.circle import CircleGrid, GridFunction, grid_for_degree
from toeplitz_qc.factorization import compare, compare_ladder
from toeplitz_qc.symbols import parse_spec, realize, with_terms
from toeplitz_qc.toeplitz import CompactPerturbation, operator_component_test

grid = CircleGrid(512)
th = grid.points
f1 = GridFunction(grid, np.exp(1j * th) * np.exp(0.3 * np.cos(th)))
f2 = GridFunction(grid, np.exp(1j * th) * np.exp(0.8j * np.sin(2 * th)))
print(compare(f1, f2).verdict, "-", compare(f1, f2).reason)
print(compare(f1, GridFunction(grid, np.exp(2j * th))).reason)

# %%
ladder = [10 ** 3, 10 ** 4, 10 ** 5]
spec1, spec2 = parse_spec("expi:h:10:4"), parse_spec("expi:h:10:3")
pairs = {}
for M in ladder:
    g = grid_for_degree(M, oversample=2)
    pairs[M] = (realize(with_terms(spec1, M), g, exp_factor=1),
                realize(with_terms(spec2, M), g, exp_factor=1))
cmp = compare_ladder(pairs)
print(cmp.verdict, "-", cmp.reason)
for M, s in sorted(cmp.difference.phase_sups.items()):
    print(f"M = {M:>7d}  sup |phase difference| = {s:.4f}")

# %% [markdown]
# Compact perturbations do not move an operator between components.

# %%
rng = np.random.default_rng(1)
K = CompactPerturbation.random(4, 64, rng, scale=10.0)
print(operator_component_test(f1, f2).verdict, operator_component_test(f1, f2, K, K).verdict)

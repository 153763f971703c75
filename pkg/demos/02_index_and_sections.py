# %% [markdown]
# # Winding numbers, Fredholm indices and finite sections
#
# The index of T_f is minus the winding number of f. Square finite sections
# always have index zero, but the count of their tiny singular values
# tracks |index| for trigonometric symbols.

# %%
import numpy as np

from toeplitz_qc.circle import CircleGrid, FourierSeries, GridFunction
from toeplitz_qc.index import winding_number
from toeplitz_qc.toeplitz import (finite_section, kernel_count_index_estimate,
                                  section_norm_convergence, semicommutator)

grid = CircleGrid(256)
th = grid.points
for name, vals in [("chi_2", np.exp(2j * th)),
                   ("(2 + cos) chi_1", (2 + np.cos(th)) * np.exp(1j * th)),
                   ("chi_-2 exp(i sin)", np.exp(-2j * th + 1j * np.sin(th)))]:
    res = winding_number(GridFunction(grid, vals))
    print(f"{name:20s} winding {res.winding:2d}  radii {sorted(res.stability.items())}")

# %%
print(" n   count  index")
for n in range(-4, 5):
    kc = kernel_count_index_estimate(FourierSeries.char(n), 64)
    print(f"{n:2d}   {kc.count:5d}  {kc.index:5d}")

# %% [markdown]
# Section norms climb toward the sup norm of the symbol.

# %%
two_cos = FourierSeries.cos_sin([1.0], const=2.0)
rep = section_norm_convergence(two_cos, [16, 64, 256, 1024])
print(rep.to_csv())

# %% [markdown]
# T(chi_1) T(chi_-1) - I kills only the first basis vector.

# %%
sc = semicommutator(FourierSeries.char(1), FourierSeries.char(-1), 8)
print(sc.matrix.real)
print(finite_section(FourierSeries.char(1), 4).entries.real)

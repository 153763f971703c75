# %% [markdown]
# # A VMO function that is not bounded
#
# g(x) = sum sin(kx) / (k ln k) converges uniformly; its conjugate
# h(x) = -sum cos(kx) / (k ln k) blows up at 0 like ln ln M, while the partial
# sums still converge uniformly away from 0.

# %%
import numpy as np

from toeplitz_qc.example_h import example_h, sup_at_zero_ladder, uniform_convergence_off_zero

ex = example_h(512)
print("coefficient residual:", ex.coefficient_residual)
print("h - sigma(h) + (1/(M+1)) sum cos/ln :", ex.fejer_residual)
print("h - sigma(h) - (1/(M+1)) sum cos/ln :", ex.fejer_residual_stated)

# %%
Ms = [10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6]
sums = sup_at_zero_ladder(Ms)
for M in Ms:
    print(f"M = {M:>8d}  |h_M(0)| = {sums[M]:.5f}  ln ln M = {np.log(np.log(M)):.5f}")

# %%
away = uniform_convergence_off_zero([64, 128, 256, 512], (np.pi / 2, 3 * np.pi / 2))
near = uniform_convergence_off_zero([64, 128, 256, 512], (0.0, 2 * np.pi))
print(" M    sup off 0     sup near 0    drift at 0")
for (M, a), (_, b), (_, d) in zip(away.rows, near.rows, near.cumulative_at_zero):
    print(f"{M:4d}  {a:.3e}    {b:.3e}     {d:.4f}")

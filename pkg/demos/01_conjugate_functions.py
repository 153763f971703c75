# %% [markdown]
# # Conjugate functions and outer factors
#
# The Hilbert transform acts on Fourier coefficients by the multiplier
# -i sgn(n). Applied twice it returns -f plus the mean, and it never
# increases the L2 norm.

# %%
import numpy as np

from toeplitz_qc.circle import CircleGrid, FourierSeries, evaluate
from toeplitz_qc.transforms import conjugation, double_hilbert_check, hilbert, outer_function_report

cos = FourierSeries.cos_sin([1.0])
print("hilbert(cos):", hilbert(cos).as_dict(tol=1e-15))
print("conjugation(cos):", conjugation(cos).as_dict(tol=1e-15))

# %%
rng = np.random.default_rng(0)
k = np.arange(1, 21)
pos = (rng.standard_normal(20) + 1j * rng.standard_normal(20)) / k
s = FourierSeries(np.concatenate((np.conj(pos[::-1]), [1.5], pos)), real=True)
rep = double_hilbert_check(s)
print("double-hilbert residual:", rep.worst)
print("||s||^2 = %.6f, ||Hs||^2 = %.6f, |a(0)|^2 = %.6f"
      % (s.l2_squared(), hilbert(s).l2_squared(), abs(s[0]) ** 2))

# %% [markdown]
# ## exp(w - i hilbert(w))
#
# For w = cos the outer factor is exp(e^{-i theta}), whose coefficients are
# 1/k! on the nonpositive indices and zero on the positive ones.

# %%
rep = outer_function_report(cos, degree=8)
for n in range(-8, 9):
    print(f"{n:3d}  {abs(rep.output[n]):.3e}")
print(rep.identity_residuals)

# %%
grid = CircleGrid(512)
w = FourierSeries.cos_sin([0.4, -0.2, 0.1], [0.3])
outer = evaluate(outer_function_report(w).output, grid).values
print("max | |outer| - exp(w) |:", np.max(np.abs(np.abs(outer) - np.exp(evaluate(w, grid).values.real))))

# # Reading an operator back from its values on product states
#
# A Hermitian operator T on a tensor product is fixed by the numbers
# <x|T|x> on product vectors alone. Here we build a Born oracle, forget T,
# and recover it from a grid of polarization probes.

# In[1]:

import numpy as np

from unentangled_gleason import born_oracle, factor_polarization_map, reconstruct
from unentangled_gleason.tensor_core import random_hermitian

rng = np.random.default_rng(0)
dims = (3, 3)
T = random_hermitian(9, rng)
oracle = born_oracle(T, dims)

# The probe grid has d^2 vectors per factor, so 81 evaluations here.

# In[2]:

rec = reconstruct(oracle)
print("evaluations:", rec.evaluations)
print("max |c - T|:", np.abs(rec.c - T).max())
print("asymmetry before symmetrizing:", rec.asymmetry)

# Each factor map is well conditioned, so the tensor inverse loses little.

# In[3]:

for d in range(2, 6):
    print(d, round(factor_polarization_map(d).condition, 2))

# Three factors work the same way (729 evaluations).

# In[4]:

T3 = random_hermitian(27, rng)
rec3 = reconstruct(born_oracle(T3, (3, 3, 3)))
print("(3,3,3) max error:", np.abs(rec3.c - T3).max())

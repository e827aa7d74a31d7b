# # A frame function that is not a quadratic form
#
# On C^2 ⊗ C^n, take g(a) = 1/2 + 0.3 z^3 where z is the third Bloch
# coordinate of a, and multiply by the Born value of the identity on the
# second factor. Opposite points on the Bloch sphere pair up inside every
# unentangled basis with a qubit first factor, so the sums stay constant.

# In[1]:

import numpy as np

from unentangled_gleason import (QubitFrameFn, born_oracle, hermitian_fit_residual,
                                 product_frame_oracle, verify_frame)
from unentangled_gleason.bases import basis_family

g = QubitFrameFn(1.0, ("cubic_z", 0.3))
f = product_frame_oracle(g, born_oracle(np.eye(3), (3,)))
print("declared weight:", f.declared_weight)

# In[2]:

rep = verify_frame(f, basis_family("qubit-block", (2, 3)), M=500)
print("max |sum - 3| over 500 bases:", rep.max_deviation)

# No Hermitian 6x6 operator matches f on product states. The best least
# squares fit leaves a visible residual. The sampled value tracks the
# population RMS, 0.3 * sqrt(4/175).

# In[3]:

print("RMS residual of the best Hermitian fit:", hermitian_fit_residual(f, (2, 3), M=2000))
print("population RMS:", 0.3 * np.sqrt(4 / 175))

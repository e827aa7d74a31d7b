# # Product bases alone do not force the Born form
#
# f(u ⊗ v) = <v|phi(u)|v> sums to w over every product basis as long as
# tr phi(u) = w/d1. Choosing phi quartic in u breaks the Born form, and an
# unentangled basis with the structure flipped shows the sums drifting.

# In[1]:

from unentangled_gleason import counterexample_oracle, hermitian_fit_residual, verify_frame
from unentangled_gleason.bases import basis_family

f = counterexample_oracle((3, 3), 9.0)

# In[2]:

prod = verify_frame(f, basis_family("product", (3, 3)), M=500)
print("product bases, max |sum - 9|:", prod.max_deviation)

# In[3]:

rev = verify_frame(f, basis_family("reversed", (3, 3)), M=100, tol=0.01)
print("reversed bases, max |sum - 9|:", rev.max_deviation, "at seed", rev.worst_seed)

# In[4]:

print("Hermitian fit residual:", hermitian_fit_residual(f, (3, 3), M=2000))

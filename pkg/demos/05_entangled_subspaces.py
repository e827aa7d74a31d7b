# # How large can a subspace with no product vectors be?
#
# The bound is prod(d) - sum(d - 1) - 1. A kernel of Vandermonde-type
# functionals reaches it. Adding one more dimension always lets a product
# vector in.

# In[1]:

from unentangled_gleason import (exact_rank1_test_small, max_entangled_dim,
                                 product_overlap_search, vandermonde_subspace)
from unentangled_gleason.subspaces import random_subspace

for dims in [(2, 2), (2, 3), (3, 3), (2, 2, 2), (3, 3, 3)]:
    cert = vandermonde_subspace(dims)
    print(dims, "bound", max_entangled_dim(dims), "construction", cert.subspace.dim)

# The alternating search stays well below overlap 1 on the construction.

# In[2]:

S = vandermonde_subspace((3, 3)).subspace
rep = product_overlap_search(S, (3, 3), restarts=200, seed=0)
print("best overlap:", rep.best_overlap)

# For two qubits and (2,3) the question is decided exactly.

# In[3]:

print(exact_rank1_test_small(vandermonde_subspace((2, 3)).subspace, (2, 3)).has_product)
print(exact_rank1_test_small(random_subspace(4, 2, seed=3), (2, 2)).has_product)

# One dimension above the bound, a product vector turns up.

# In[4]:

found = sum(product_overlap_search(random_subspace(9, 5, s), (3, 3), seed=s).best_overlap > 1 - 1e-6
            for s in range(20))
print(found, "of 20 five-dimensional subspaces contain a product vector")

# # Taking apart an unentangled basis with a qubit first factor
#
# Such a basis splits into blocks: a qubit ray a, its orthogonal partner,
# and two orthonormal families on the rest that span the same subspace.
# We generate a basis with a known block partition, shuffle it, and read
# the partition back.

# In[1]:

from unentangled_gleason import decompose_qubit_basis, qubit_block_basis

basis = qubit_block_basis(6, [3, 2, 1], seed=7)
print(len(basis.members), "members on dims", basis.dims)

# In[2]:

dec = decompose_qubit_basis(basis)
print("partition:", dec.partition)
for blk in dec.blocks:
    print("a =", blk.a.round(3), " block size", len(blk.b_list))

# Product bases are a narrower class; the generic block basis above is
# unentangled but not product.

# In[3]:

from unentangled_gleason import is_product_basis, random_product_basis

print(is_product_basis(random_product_basis((2, 3), seed=1)))
print(is_product_basis(basis))

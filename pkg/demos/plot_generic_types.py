"""
More than two fermion types
===========================

With three types of anticommuting variables a part carries a set of types.
We enumerate a small family, check the counting series and run the duality
and kernel checks entirely in explicit variables.
"""

from supersym.generic import (n_count_series, n_duality, n_enumerate, n_kernel_check, n_norm,
                              n_parse, specialization_check)

sp = n_parse(6, "[5^{2,1},4,3^{5,4,1},3^{4,1},2^{6,4,1},2^{6,3,2},2,"
                "1^{4,3,2,1},1^{4,3,2,1},1^{1},0^{5,2,1},0^{6,1}]")
print(sp.size, sp.fermion_degree)

for lam in n_enumerate(1, (1, 1, 0)):
    print(lam, n_norm(lam))
print(n_count_series(3, 2, (1, 1, 1))[(1, 1, 1, 0)])

for row in n_duality(1, (1, 1, 0)):
    print([str(c) for c in row])
print(n_kernel_check(1, 3, 2, 2).status)

# With two types the generic machinery reproduces the mark-based one
print(specialization_check((2, 1, 1)).status)

"""Permutation signs: deletion, insertion and split signs on ordered subsets."""
from itertools import combinations

from parallelepipeds.permcalc import complement, deletion_sign, insertion_sign, perm_sign, split_sign

# The sign of a permutation is the parity of its inversions.
for image in [(1, 2, 3), (2, 1, 3), (3, 1, 2)]:
    print(f"sign{image} = {perm_sign(image)}")

# Deleting j from J means moving it to the end first; the sign counts the
# elements it has to jump over.
J = (1, 3, 5)
for j in J:
    print(f"deletion_sign({J}, {j}) = {deletion_sign(J, j)}")

# Inserting k appends it and sorts.
for k in complement(6, J):
    print(f"insertion_sign({J}, {k}) = {insertion_sign(J, k)}")

# The split sign puts J in front of its complement. Swapping the roles of J
# and its complement multiplies the sign by (-1)^{m(n-m)}.
n = 5
print("\n J         split  split(J')  (-1)^{m(n-m)}")
for J in combinations(range(1, n + 1), 2):
    Jc = complement(n, J)
    print(f" {str(J):<9} {str(split_sign(n, J)):>5} {str(split_sign(n, Jc)):>10} {(-1) ** (2 * (n - 2)):>14}")

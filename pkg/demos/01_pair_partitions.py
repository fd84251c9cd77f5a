"""Pair partitions: the combinatorial backbone.

Every even moment of the limiting spectral law is a sum over pair
partitions of {1..k}.  Two statistics matter: whether the partition is
crossing, and its height — the number of blocks that are either nearest
neighbours or enclose a fully self-paired window.  Height k/2 is
attained exactly by the non-crossing partitions.
"""

from corrdiag import enumerate_pair_partitions, height, is_crossing
from corrdiag.moments import catalan

for k in (2, 4, 6):
    parts = enumerate_pair_partitions(k)
    print(f"\nk = {k}: {len(parts)} pair partitions, "
          f"{sum(not is_crossing(p) for p in parts)} non-crossing "
          f"(Catalan {catalan(k // 2)})")
    for p in parts:
        tag = "non-crossing" if not is_crossing(p) else "crossing    "
        print(f"  {p.canonical():<18} {tag}  height {height(p)}")

print("\nheight hits its ceiling k/2 exactly on the non-crossing ones:")
for k in (4, 6, 8, 10):
    parts = enumerate_pair_partitions(k)
    agree = all((height(p) == k // 2) == (not is_crossing(p)) for p in parts)
    print(f"  k = {k:2d}: {agree}")

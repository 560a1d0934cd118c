"""
Counting superpartitions
========================

Every sector (n|m_over, m_under) holds finitely many superpartitions.  We
list one small sector and compare the sizes of many sectors with the
coefficients of the counting series.
"""

from supersym.spar import count_sector_series, enumerate_sector, weight_compare

# The eleven superpartitions of (2|1,1), in the library's canonical order
sector = (2, 1, 1)
for sp in enumerate_sector(sector):
    print(sp, sp.sector)

# The order is only partial: some pairs have equal prefix sums or are
# incomparable, which is why the listing needs a tie-break.
a, b = enumerate_sector(sector)[1:3]
print(a, b, weight_compare(a, b).value)

# Sector sizes against the series coefficients
series = count_sector_series(6, 3, 3)
for n in range(7):
    row = [len(enumerate_sector((n, 1, k))) for k in range(4)]
    print(n, row, [series.get((n, 1, k), 0) for k in range(4)])

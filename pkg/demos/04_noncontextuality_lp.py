"""
Deciding noncontextuality exactly
=================================

``find_nc_hvm`` searches for a distribution over global assignments that
reproduces every context. We hold three correlations of the four-cycle at
1/2, lower the fourth from +1 to -1, and watch the answer flip exactly where
the cyclic sum passes 2.
"""

from fractions import Fraction

from hvmforge.contextuality import cycle_max, find_nc_hvm
from hvmforge.hvm import models
from hvmforge.systems import cyclic4

print(f"{'e4':>6}{'cycle max':>11}{'feasible':>10}  evidence")
for k in range(8, -9, -2):
    e4 = Fraction(k, 8)
    s = cyclic4(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), e4)
    dec = find_nc_hvm(s)
    if dec.feasible:
        evidence = f"witness on {len(dec.witness.hidden)} assignments, models={models(dec.witness, s)}"
    else:
        evidence = f"Farkas certificate valid={dec.certificate_valid()}"
    print(f"{str(e4):>6}{str(cycle_max(s)):>11}{str(dec.feasible):>10}  {evidence}")

##############################################################################
# Reading a certificate
# ---------------------
#
# For the PR box the certificate weights each context cell. Any global
# assignment scores at least zero against it, while the PR box itself scores
# strictly negative.

pr = cyclic4(1, 1, 1, -1)
dec = find_nc_hvm(pr)
for (cid, outcomes), y in zip(dec.program.rows, dec.certificate):
    if y:
        print(f"  {cid:>3} {' '.join(outcomes) or '(sum)':<8} {y}")

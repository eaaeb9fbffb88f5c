"""
Modeling the PR box with and without free choice
================================================

The PR box is the four-cycle system with three perfect correlations and one
perfect anticorrelation. A free-choice model reproduces it using one fair
coin for all contexts, provided the response may depend on the context. The
same system also has a context-independent model, in which the hidden
variable's distribution changes with the context instead.
"""

from hvmforge.catalog import pr_box, pr_box_fc
from hvmforge.hvm import ci_to_fc, fc_to_ci, models, realize

system = pr_box()
fc = pr_box_fc()


def show(joint):
    return ", ".join(f"({' '.join(a[q] for q in joint.keys)}): {p}" for a, p in joint.items())


print("free-choice model, per context:")
for c in system.contexts:
    print(f"  {c.id} {c.properties}: {show(realize(fc, c.id))}")
print("reproduces the PR box:", models(fc, system))

##############################################################################
# Moving the context dependence into the hidden variable
# ------------------------------------------------------
#
# ``fc_to_ci`` uses each context's vector of responses as the hidden value
# for that context. The response then just reads off a coordinate and never
# looks at the context.

ci = fc_to_ci(fc)
for cid, mu in ci.hidden.items():
    print(f"  hidden distribution in {cid}: {mu}")
print("context-independent model reproduces the PR box:", models(ci, system))

# and back again, by coupling the four per-context hidden variables
fc_again = ci_to_fc(ci)
print(f"coupled back: {len(fc_again.hidden)} hidden points, models PR box: {models(fc_again, system)}")

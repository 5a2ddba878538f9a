"""Run the identity checks and see which printed forms hold up.

Every check compares an exact direct computation with a closed form and
returns EQUAL, EQUAL_UP_TO_SIGN or MISMATCH.  Sign slips and misprinted
constants are reported and flagged rather than hidden.
"""

from collections import Counter

from partdet.verify import is_known_erratum, run_all

reports = run_all()
print(Counter(rep.verdict.value for rep in reports))

print("\nreports that are not plain EQUAL:")
for rep in reports:
    if rep.verdict.value != "EQUAL":
        tag = "erratum" if is_known_erratum(rep) else rep.verdict.value.lower()
        print(f"  {rep.identity_name:45s} {rep.verdict.value:17s} [{tag}]")

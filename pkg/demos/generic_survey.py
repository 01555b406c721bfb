"""Prime survey for y^2 = x^5 - x + 1, a curve with no extra endomorphisms.

Almost every reduction should be absolutely simple with the full
hyperoctahedral Galois group B_2 (label D4).
"""

import tempfile
from pathlib import Path

from weilstat.curves import HyperellipticCurve
from weilstat.survey import SurveyConfig, run_survey

curve = HyperellipticCurve(2, (1, -1, 0, 0, 0, 1), "y^2=x^5-x+1")
out = Path(tempfile.mkdtemp())

cfg = SurveyConfig(curve, 2000, congruence_modulus=4, galois_budget=40,
                   records_path=str(out / "records.jsonl"))
records, report = run_survey(cfg, progress=lambda n: print("records so far:", n))

print(report.to_csv())

row = report.row("all")
print("identified by resolvent:", row.n_galois, " full group:", row.full_galois_identified)
print("exceptional primes:", report.exceptional_primes[:15], "...")

# the odd ones out
for r in records:
    if r.good and r.galois and r.galois["group"] != "D4":
        print(r.p, r.weil, r.galois["group"], "| sampled:", r.galois_sampled["group"])

# counts next to the bound shapes, scaled by least squares
print(report.bounds_csv())
print("records written to", cfg.records_path)

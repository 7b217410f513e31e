from __future__ import annotations

from pauliscope.claims import Claim, run_claims


def test_claim_statuses():
    assert Claim("s", "n", 1, 1, True).status == "PASS"
    assert Claim("s", "n", 1, 2, False).status == "FAIL"
    flagged = Claim("s", "n", 1, 2, False, discrepancy=True)
    assert flagged.status == "FLAG" and not flagged.failed
    assert Claim("s", "n", "", "", True, skipped=True).status == "SKIP"
    assert Claim("s", "n", 1, 2, False).line() == "FAIL  [s] n: expected 1; computed 2"


def test_all_claims_hold_up_to_known_discrepancies():
    claims = run_claims(threads=4)
    assert not [c.line() for c in claims if c.failed]
    flagged = sorted(c.name for c in claims if c.status == "FLAG")
    assert flagged == [
        "CB girth",
        "N=3 A block as O joined with an 8x8 unit matrix",
        "N=3 printed line count against generator count",
        "N=4 printed line count against generator count",
    ]

"""The ten acceptance criteria, at their stated tolerances and time budgets."""

import pytest

from dualkit import verification

from conftest import ACCEPTANCE

BUDGET_SECONDS = {
    "duality_algebra": 1.0,
    "action_invariance": 1.0,
    "wkb_fractional": 5.0,
    "oracle_agreement": 30.0,
}

CRITERIA = [
    (1, "duality_algebra"),
    (2, "action_invariance"),
    (3, "wkb_fractional"),
    (4, "energy_transfer"),
    (5, "oracle_agreement"),
    (6, "wavefunction_duality"),
    (7, "green_duality"),
    (8, "confinement"),
    (9, "susy_cbc"),
    (10, "orbit_map"),
]


@pytest.mark.parametrize("number,name", CRITERIA, ids=[n for _, n in CRITERIA])
def test_criterion(number, name):
    res = verification.run_check(name)
    budget = BUDGET_SECONDS.get(name)
    in_time = budget is None or res.seconds < budget
    line = f"[{number:>2}] {res.detail} ({res.seconds:.2f}s)"
    ACCEPTANCE[f"{number:>2} {name}"] = (res.passed and in_time, line)
    print(line)
    assert not res.error, res.error
    for part in res.parts:
        assert part.passed, f"{part.label}: {part.residual:.3g} > {part.tolerance:.3g}"
    assert in_time, f"took {res.seconds:.2f}s, budget {budget}s"

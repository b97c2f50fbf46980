from koszulkit.algebra import make_rng
from koszulkit.catalogue import get_entry
from koszulkit.errors import InvariantError, TruncationError
from koszulkit.selftest import CHECKS, SuiteConfig, run_check, run_selftest, suite_algebras


def test_small_suite_passes(ex9):
    config = SuiteConfig(max_p=2, max_weight=2, trials=2)

    outcomes = run_selftest(config, [ex9], ["differential squares", "leibniz rules", "W intersection"])

    assert [outcome.name for outcome in outcomes] == ["differential squares", "leibniz rules", "W intersection"]
    assert all(outcome.status != "failed" for outcome in outcomes)


def test_suite_algebras_cover_both_fields():
    algebras = suite_algebras(seed=42, random_count=1)

    labels = [algebra.label for algebra in algebras]
    assert labels[:4] == ["ex9", "sym2", "ex9 over F 7", "sym2 over F 7"]
    assert {str(algebra.field) for algebra in algebras[2:4]} == {"F 7"}
    assert {str(algebra.field) for algebra in algebras[4:]} == {"Q", "F 7"}
    assert len(algebras) == 6


def test_failed_invariant_is_reported(mocker):
    algebra = get_entry("ex9").algebra(weight_limit=4)
    mocker.patch.dict(CHECKS, {"broken": mocker.Mock(side_effect=InvariantError("d∘d ≠ 0"))})

    outcome = run_check("broken", algebra, SuiteConfig(), make_rng(42))

    assert outcome.status == "failed"
    assert outcome.as_dict()["detail"] == "d∘d ≠ 0"


def test_truncation_skips_the_check(mocker):
    algebra = get_entry("ex9").algebra(weight_limit=4)
    mocker.patch.dict(CHECKS, {"deep": mocker.Mock(side_effect=TruncationError("weight 9"))})

    outcome = run_check("deep", algebra, SuiteConfig(), make_rng(42))

    assert outcome.skipped
    assert outcome.status == "skipped"

import json
import random

import pytest

from closurelab import (
    ALL_OPS,
    IMP,
    NEGATION,
    OR,
    CampaignConfig,
    apply_permutations,
    closure_report,
    enumerate_families,
    is_closed,
    parse_matrix,
    run_campaign,
)
from closurelab.enumeration import _closed_mask_coded, _closed_mask_direct, _image_tables
from closurelab.errors import CampaignFailure, ParameterOutOfRange, WidthCapExceeded

from conftest import SEMANTICS, closed_oracle, matrix_tuples

EXAMPLE1 = "0000\n1000\n1100\n0111\n1111\n"


def test_enumerate_families_width_one():
    mats = list(enumerate_families(CampaignConfig(width=1, mode="exhaustive")))
    assert [[str(r) for r in m.rows] for m in mats] == [["0"], ["1"], ["0", "1"]]


def test_enumerate_families_counts():
    assert sum(1 for _ in enumerate_families(CampaignConfig(width=2, mode="exhaustive"))) == 15
    assert sum(1 for _ in enumerate_families(CampaignConfig(width=3, mode="exhaustive"))) == 255


def test_enumerate_families_rows_ascending():
    for m in enumerate_families(CampaignConfig(width=2, mode="exhaustive")):
        values = m.row_values
        assert list(values) == sorted(values)


def test_or_closed_set_matches_bruteforce_oracle():
    # Double implementation: the packed-int closure check against the
    # tuple-set oracle, over the whole width-2 space.
    cfg = CampaignConfig(width=2, mode="exhaustive")
    ours = set()
    oracle = set()
    for i, m in enumerate(enumerate_families(cfg)):
        if is_closed(m, OR):
            ours.add(i)
        if closed_oracle(matrix_tuples(m), SEMANTICS["or"]):
            oracle.add(i)
    assert ours == oracle
    summary = run_campaign(cfg)
    assert summary.closed_under["or"] == len(ours)


def test_coded_closure_mask_matches_direct():
    # The byte-table fast path against the straightforward pairwise scan.
    for width in (1, 2, 3):
        size = 1 << width
        tables = _image_tables(width)
        nchunks = (size + 7) // 8
        rng = random.Random(width)
        codes = range(1, 1 << size) if width < 3 else rng.sample(range(1, 1 << size), 120)
        for code in codes:
            rows = [r for r in range(size) if (code >> r) & 1]
            assert _closed_mask_coded(code, rows, tables, nchunks) == _closed_mask_direct(
                width, tuple(rows)
            )


def test_negation_closed_families_split_columns_evenly():
    cfg = CampaignConfig(width=2, mode="exhaustive")
    seen = 0
    for m in enumerate_families(cfg):
        if not is_closed(m, NEGATION):
            continue
        seen += 1
        tuples = matrix_tuples(m)
        for j in (1, 2):
            assert 2 * sum(r[j - 1] for r in tuples) == len(tuples)
    assert seen == 3


def test_campaign_exhaustive_small():
    summary = run_campaign(CampaignConfig(width=2, mode="exhaustive"))
    assert summary.families == 15
    for name, counts in summary.theorems.items():
        assert counts["failed"] == 0, name
        assert counts["applicable"] == counts["passed"]
    assert summary.frankl["failures"] == 0
    # negation-closed families: {00,11}, {01,10}, all four rows
    assert summary.closed_under["not"] == 3
    # projections keep every family closed
    assert summary.closed_under["tt:10"] == 15
    assert summary.closed_under["tt:12"] == 15


def test_campaign_theorem_applicability_cross_check():
    cfg = CampaignConfig(width=3, mode="exhaustive")
    summary = run_campaign(cfg)
    imp_closed_nonzero = 0
    or_closed_nonzero = 0
    for m in enumerate_families(cfg):
        if m.non_zero and is_closed(m, IMP):
            imp_closed_nonzero += 1
            assert is_closed(m, OR)  # conditional closure forces OR closure
        if m.non_zero and is_closed(m, OR):
            or_closed_nonzero += 1
    assert summary.theorems["material_conditional"]["applicable"] == imp_closed_nonzero
    assert summary.theorems["imp_implies_or"]["applicable"] == imp_closed_nonzero
    assert summary.frankl["or_closed_nonzero"] == or_closed_nonzero
    assert summary.theorems["complement_count_flip"]["applicable"] == 254


def test_campaign_deterministic_across_workers():
    one = run_campaign(CampaignConfig(width=2, mode="exhaustive", parallelism=1))
    four = run_campaign(CampaignConfig(width=2, mode="exhaustive", parallelism=4))
    assert one.to_json() == four.to_json()


def test_campaign_random_mode_deterministic():
    cfg = dict(width=4, mode="random", sample_count=40, generator_count=3)
    a = run_campaign(CampaignConfig(seed=123, **cfg))
    b = run_campaign(CampaignConfig(seed=123, **cfg))
    c = run_campaign(CampaignConfig(seed=124, **cfg))
    assert a.to_json() == b.to_json()
    assert a.to_json() != c.to_json()
    assert a.families == 40
    for name, counts in a.theorems.items():
        assert counts["failed"] == 0, name


def test_campaign_random_parallel_matches_serial():
    cfg = dict(width=5, mode="random", sample_count=30, generator_count=2, seed=9)
    serial = run_campaign(CampaignConfig(parallelism=1, **cfg))
    parallel = run_campaign(CampaignConfig(parallelism=3, **cfg))
    assert serial.to_json() == parallel.to_json()


def test_campaign_random_families_are_closed_spaces():
    cfg = CampaignConfig(width=4, mode="random", sample_count=25, generator_count=2, seed=31)
    mats = list(enumerate_families(cfg))
    assert len(mats) == 25
    closed_under_something = 0
    for m in mats:
        if any(is_closed(m, op) for op in ALL_OPS) or is_closed(m, NEGATION):
            closed_under_something += 1
    assert closed_under_something == 25


def test_config_validation():
    with pytest.raises(WidthCapExceeded):
        CampaignConfig(width=5, mode="exhaustive")
    with pytest.raises(WidthCapExceeded):
        CampaignConfig(width=9, mode="random", seed=1)
    with pytest.raises(ParameterOutOfRange):
        CampaignConfig(width=3, mode="random")  # missing seed
    with pytest.raises(ParameterOutOfRange):
        CampaignConfig(width=3, mode="weird")
    with pytest.raises(ParameterOutOfRange):
        CampaignConfig(width=0, mode="exhaustive")
    with pytest.raises(ParameterOutOfRange):
        CampaignConfig(width=3, mode="exhaustive", parallelism=0)
    with pytest.raises(ParameterOutOfRange):
        CampaignConfig(width=3, mode="random", seed=1, sample_count=0)


def test_summary_json_shape():
    summary = run_campaign(CampaignConfig(width=1, mode="exhaustive"))
    data = json.loads(summary.to_json())
    assert set(data) == {"config", "families", "closed_under", "theorems", "frankl"}
    assert data["families"] == 3
    assert len(data["closed_under"]) == 17
    assert all(isinstance(v, int) for v in data["closed_under"].values())


def test_closure_report_fields():
    rep = closure_report(parse_matrix("10\n11\n"))
    assert rep.n == 2 and rep.m == 2
    assert rep.closed_under & (1 << IMP.table)
    assert not rep.closed_under & (1 << 16)  # not negation-closed
    assert rep.theorem_checks["material_conditional"] == "pass"
    assert rep.theorem_checks["union_closed_frankl"] == "pass"
    assert "negation_lemma" not in rep.theorem_checks  # inapplicable, absent
    assert rep.psi.max_psi == 2


def test_closure_report_id_invariant_under_equivalence():
    m = parse_matrix(EXAMPLE1)
    p = apply_permutations(m, (4, 2, 0, 1, 3), (2, 0, 3, 1))
    assert closure_report(m).matrix_id == closure_report(p).matrix_id
    assert closure_report(m).matrix_id != closure_report(parse_matrix("10\n11\n")).matrix_id


def test_campaign_failure_dumps_reproducer(tmp_path, monkeypatch):
    import closurelab.witnesses as witnesses_module

    def broken(matrix):
        raise PreconditionViolated("injected failure")

    from closurelab.errors import PreconditionViolated

    monkeypatch.setattr(witnesses_module, "negation_witness", broken)
    cfg = CampaignConfig(width=1, mode="exhaustive", parallelism=1)
    with pytest.raises(CampaignFailure) as exc:
        run_campaign(cfg, dump_dir=tmp_path)
    assert exc.value.reproducers
    dumped = parse_matrix((tmp_path / exc.value.reproducers[0].split("/")[-1]).read_text())
    assert is_closed(dumped, NEGATION)

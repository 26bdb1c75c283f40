"""Scan bookkeeping, conjecture checkers, fits, and table reproduction."""

import pytest

from cubicpancake import experiments
from cubicpancake.classifier import Status, Triple
from cubicpancake.experiments import (
    FCount,
    FitResult,
    GenerationOracle,
    ScanConfig,
    all_triples,
    check_conjecture_km_sum,
    check_conjecture_mod2,
    check_conjecture_mod4,
    conjectured_fk_bound,
    disagreements,
    fit_fn,
    fk_scan,
    generating_pairs,
    generating_triples,
    model_rmse,
    read_fcounts_csv,
    reproduce_tables,
    scan,
    write_fcounts_csv,
    write_metrics_csv,
    write_triples_csv,
)

KNOWN_F = {4: 1, 5: 3, 6: 3, 7: 8, 8: 5, 9: 9, 10: 9}


class TestScanConfig:
    def test_bad_mode(self):
        with pytest.raises(experiments.BadOracleMode):
            ScanConfig(oracle="maybe")

    def test_bad_range(self):
        with pytest.raises(ValueError):
            ScanConfig(n_min=3, n_max=5)
        with pytest.raises(ValueError):
            ScanConfig(n_min=8, n_max=6)


class TestScan:
    def test_triple_enumeration_size(self):
        assert sum(1 for _ in all_triples(10)) == 28
        assert [(t.m, t.k) for t in all_triples(4)] == [(3, 2)]

    def test_counts_without_oracle(self):
        # every triple with n <= 8 is decided by the closed-form rules alone
        _, counts = scan(ScanConfig(n_min=4, n_max=8, oracle="off"))
        assert {c.n: c.f for c in counts} == {n: KNOWN_F[n] for n in range(4, 9)}

    def test_full_scan_agrees_everywhere(self, scan_4_10):
        records, counts = scan_4_10
        assert len(records) == 84
        assert disagreements(records) == []
        assert all(r.oracle_generates is not None for r in records)
        assert {c.n: c.f for c in counts} == KNOWN_F

    def test_residues_recorded(self, scan_4_10):
        _, counts = scan_4_10
        assert all(c.residue == c.n % 4 for c in counts)

    def test_known_pair_sets(self, scan_4_10):
        records, _ = scan_4_10
        assert generating_pairs(records, 7) == {
            (4, 2), (5, 2), (6, 2), (4, 3), (6, 3), (5, 4), (6, 4), (6, 5)}
        assert generating_pairs(records, 8) == {
            (7, 2), (6, 3), (7, 4), (6, 5), (7, 6)}

    def test_unresolved_without_oracle(self):
        records, _ = scan(ScanConfig(n_min=9, n_max=9, oracle="off"))
        unknown = [r for r in records if r.classifier_status is Status.UNKNOWN]
        assert unknown and all(r.resolved() is None for r in unknown)

    def test_modes_agree(self, oracle):
        on, _ = scan(ScanConfig(n_min=4, n_max=6, oracle="on"), oracle)
        auto, _ = scan(ScanConfig(n_min=4, n_max=6, oracle="auto"), oracle)
        assert [(r.n, r.m, r.k, r.resolved()) for r in on] == \
            [(r.n, r.m, r.k, r.resolved()) for r in auto]


class TestConjectures:
    def test_shift_by_four_holds_small(self, oracle):
        assert check_conjecture_mod4(12, oracle) == []

    def test_shift_by_two_holds_small(self, oracle):
        assert check_conjecture_mod2(11, oracle) == []

    def test_index_sum_holds_small(self, oracle):
        assert check_conjecture_km_sum(10, oracle) == []

    def test_fk_bounds(self, oracle):
        for k, bound in [(2, 3), (3, 2), (4, 5), (5, 3)]:
            assert conjectured_fk_bound(k) == bound
            recs, best = fk_scan(k, 12, oracle)
            assert best <= bound
            assert recs[-1].running_max == best
            for r in recs:
                assert all(oracle(r.n, m, k) for m in r.members)

    def test_fk_scan_rejects_small_k(self):
        with pytest.raises(ValueError):
            fk_scan(1, 10)


def _synthetic_class1():
    # n = 5 (mod 12) makes (n + 1)^2 / 9 integral: exact model u=2, v=1
    return [FCount(n, (n + 1) ** 2 // 9, n % 4) for n in (5, 17, 29, 41)]


class TestFits:
    def test_recovers_exact_model(self):
        fits = fit_fn(_synthetic_class1())
        assert len(fits) == 1
        fit = fits[0]
        assert fit.residue == 1 and fit.q == 9
        assert fit.u == pytest.approx(2.0, abs=1e-8)
        assert fit.v == pytest.approx(1.0, abs=1e-6)
        assert fit.rmse == pytest.approx(0.0, abs=1e-8)
        assert fit.free_rmse <= fit.rmse + 1e-8
        assert fit.predict(53) == pytest.approx(54 * 54 / 9)

    def test_absent_classes_skipped(self):
        assert [f.residue for f in fit_fn(_synthetic_class1())] == [1]

    def test_too_few_points(self):
        with pytest.raises(experiments.InsufficientData):
            fit_fn([FCount(6, 4, 2), FCount(10, 9, 2)])

    def test_model_rmse_zero_on_exact(self):
        assert model_rmse(_synthetic_class1(), 1, 2.0, 1.0) == \
            pytest.approx(0.0, abs=1e-9)

    def test_model_rmse_empty_class(self):
        with pytest.raises(experiments.InsufficientData):
            model_rmse(_synthetic_class1(), 2, 0.0, 0.0)

    def test_model_rmse_hand_value(self):
        pts = [FCount(6, 3, 2), FCount(10, 9, 2)]
        # model (n^2 - n)/10 predicts 3 and 9: residuals 0
        assert model_rmse(pts, 2, -1.0, 0.0) == pytest.approx(0.0)
        # shifting v by 10 shifts both predictions by exactly 1
        assert model_rmse(pts, 2, -1.0, 10.0) == pytest.approx(1.0)


class TestTables:
    def test_small_rows_and_summaries(self, oracle):
        rows, summaries = reproduce_tables([4, 5], hamiltonian_upto=5,
                                           oracle=oracle)
        assert [(r.n, r.m, r.k) for r in rows] == [
            (4, 3, 2), (5, 3, 2), (5, 4, 2), (5, 4, 3)]
        assert all(r.hamiltonian is True for r in rows)
        s4, s5 = summaries
        assert (s4.min_diameter, s4.max_diameter) == (4, 4)
        assert (s4.min_girth, s4.max_girth) == (6, 6)
        assert s5.min_diameter == 7
        assert s5.min_diameter_triples == ((5, 3, 2), (5, 4, 2))
        assert s5.max_diameter == 8
        assert s5.max_diameter_triples == ((5, 4, 3),)
        assert s5.min_girth_triples == ((5, 3, 2),)
        assert s5.max_girth_triples == ((5, 4, 2), (5, 4, 3))

    def test_hamiltonian_column_optional(self, oracle):
        rows, _ = reproduce_tables([4], hamiltonian_upto=0, oracle=oracle)
        assert rows[0].hamiltonian is None

    def test_generating_triples_count(self, oracle):
        assert len(generating_triples(7, oracle)) == 8
        assert all(isinstance(t, Triple) for t in generating_triples(4, oracle))


class TestCsv:
    def test_fcounts_roundtrip(self, tmp_path):
        counts = [FCount(7, 8, 3), FCount(4, 1, 0), FCount(6, 3, 2)]
        path = tmp_path / "f.csv"
        write_fcounts_csv(path, counts)
        assert read_fcounts_csv(path) == sorted(counts, key=lambda c: c.n)

    def test_triples_csv_shape(self, tmp_path, scan_4_10):
        records, _ = scan_4_10
        path = tmp_path / "t.csv"
        write_triples_csv(path, records)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "n,m,k,classifier_verdict,rule,oracle_verdict,agree"
        assert len(lines) == 1 + len(records)
        assert lines[1].startswith("4,3,2,")

    def test_metrics_csv_shape(self, tmp_path, oracle):
        rows, _ = reproduce_tables([4, 5], hamiltonian_upto=4, oracle=oracle)
        path = tmp_path / "m.csv"
        write_metrics_csv(path, rows)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == ("n,m,k,vertices,diameter,girth,"
                            "shortest_cycle_classes,hamiltonian")
        assert len(lines) == 5
        assert lines[1].split(",")[:6] == ["4", "3", "2", "24", "4", "6"]

    def test_deterministic_output(self, tmp_path):
        counts = [FCount(5, 3, 1), FCount(4, 1, 0)]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_fcounts_csv(a, counts)
        write_fcounts_csv(b, list(reversed(counts)))
        assert a.read_bytes() == b.read_bytes()

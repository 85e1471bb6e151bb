from __future__ import annotations

from prymtheta import verification as ver


def test_suite_passes_up_to_genus_8():
    results = ver.run_suite(8)
    failed = [(r.name, r.detail) for r in results if not r.passed]
    assert not failed
    names = {r.name for r in results}
    assert "odd-preserving count g=6 (sampled)" in names
    assert "derivation g=8" in names


def test_suite_at_genus_3_skips_larger_oracles():
    names = [r.name for r in ver.run_suite(3)]
    assert not any("g=4" in n for n in names)


def test_crash_becomes_failed_check(monkeypatch):
    def boom(g):
        raise RuntimeError("broken")

    monkeypatch.setattr(ver, "sum_identity", boom)
    bad = [r for r in ver.run_suite(3) if not r.passed]
    assert [r.name for r in bad] == ["sum identity g=3"]
    assert "RuntimeError" in bad[0].detail


def test_individual_checks():
    assert ver.g3_example()[0]
    assert ver.refinement_identity(3)[0]
    assert ver.difference_fibers(3)[0]
    assert ver.subset_odd_preserving(4)[0]
    assert ver.class_counts(5)[0]
    assert ver.pushforward_consistency(10)[0]

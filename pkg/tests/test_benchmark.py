"""Image reductions into the combinatorial benchmark relations, plus the
two stage machines (pairwise difference module and tracked families)."""

import random

import pytest

import celab  # noqa: F401
from celab.harness import verify_reduction
from celab.reductions import REDUCTIONS
from celab.reductions.benchmark import (check_pairwise, gen_family,
                                        gen_pair_inputs, run_tracked_family)

IMAGE_REDUCTIONS = ["eqce_to_e0", "e0_to_e1", "e0_to_e2", "e0_to_e3",
                    "e0_to_z0", "e3_to_z0", "e3_to_eset", "e0_to_eset"]


@pytest.mark.parametrize("name", IMAGE_REDUCTIONS)
def test_small_corpus_is_clean(name):
    rep = verify_reduction(name, seed=3, size=8)
    assert rep.agreements == rep.cases == 8, rep.disagreements[:2]


def test_pairwise_module_structure():
    rng = random.Random(41)
    for _ in range(6):
        a, b = gen_pair_inputs(rng)
        assert check_pairwise(a, b) == []


def test_tracked_family_runs_clean():
    rng = random.Random(42)
    for _ in range(4):
        family = gen_family(rng)
        report = run_tracked_family(family)
        assert report.issues == []
        for want, got in report.verdicts.values():
            assert want == got


def test_registry_metadata_is_complete():
    for name, red in REDUCTIONS.items():
        assert red.source and red.target, name
        assert red.doc, name
        assert red.window >= 16, name

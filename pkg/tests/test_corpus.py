import os

import pytest

from tropih import corpus
from tropih.ic_engine import GM, NONGM, homology
from tropih.oracles import engine_for_flavor
from tropih.polyhedral_core import validate_complex
from tropih.stratification import face_filtration, trop_filtration

NAMES = sorted(n[:-5] for n in os.listdir(corpus.data_dir()))


def table(groups):
    return {"%d,%d" % k: g.as_dict() for k, g in sorted(groups.items())}


def engine_table(inst, key):
    m = inst.model()
    if key.startswith("cone_"):
        return table(engine_for_flavor(m, key[5:], range(m.free_dim + 1), "Z").groups)
    if key == "onedim_GM":
        return table(homology(m, variant=GM).groups)
    return table(homology(m, variant=NONGM).groups)


@pytest.mark.parametrize("name", NAMES)
def test_shipped_expectations_match_engine(name):
    inst = corpus.shipped_instance(name)
    assert inst.expected and inst.provenance in ("[PAPER]", "[DERIVED]")
    for key, want in inst.expected.items():
        assert engine_table(inst, key) == want, key


def test_shipped_files_match_generator():
    assert NAMES == sorted(i.name for i in corpus.named_instances())


@pytest.mark.parametrize("seed", range(9))
def test_random_graphs_follow_generator_rules(seed):
    inst = corpus.random_onedim(seed)
    C = inst.complex
    assert C.max_dim == 1
    assert validate_complex(C)["valid"]
    assert trop_filtration(C).levels == face_filtration(C).levels
    m = inst.model()
    assert all(-2 <= m.pbar[S.id] <= 2 for S in m.strat.strata)
    assert corpus.random_onedim(seed).to_json() == inst.to_json()

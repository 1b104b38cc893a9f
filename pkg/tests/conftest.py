import pytest

from blowupgate.links import BraidWord

# Braid-word corpus: small torus links and twist knots, mixed-sign
# three- and four-strand closures, and split unions.
CORPUS = [
    ("trefoil", BraidWord(2, (1, 1, 1))),
    ("figure_eight", BraidWord(3, (1, -2, 1, -2))),
    ("hopf", BraidWord(2, (1, 1))),
    ("torus_2_4", BraidWord(2, (1, 1, 1, 1))),
    ("torus_2_5", BraidWord(2, (1, 1, 1, 1, 1))),
    ("torus_2_6", BraidWord(2, (1,) * 6)),
    ("torus_2_7", BraidWord(2, (1,) * 7)),
    ("torus_3_3", BraidWord(3, (1, 2, 1, 2, 1, 2))),
    ("torus_3_4", BraidWord(3, (1, 2, 1, 2, 1, 2, 1, 2))),
    ("borromean", BraidWord(3, (1, -2, 1, -2, 1, -2))),
    ("chain_3", BraidWord(3, (1, 1, 2, 2))),
    ("twist_5", BraidWord(3, (1, 1, 1, 2, -1, 2))),
    ("twist_6a", BraidWord(3, (1, 1, 1, -2, 1, -2))),
    ("twist_6b", BraidWord(3, (1, 1, -2, 1, -2, -2))),
    ("threebraid_octo", BraidWord(3, (1, -2, 1, -2, 1, -2, 1, -2))),
    ("unknot_4braid", BraidWord(4, (1, 2, 3))),
    ("trefoil_stabilized", BraidWord(2, (1, -1, 1, 1, 1))),
    ("fourbraid_mixed", BraidWord(4, (1, -2, 3, -2, 1, 3))),
    ("unlink_2", BraidWord(2, ())),
    ("unlink_3", BraidWord(3, ())),
    ("trefoil_sqcup_unknot", BraidWord(3, (1, 1, 1))),
    ("hopf_sqcup_unknot", BraidWord(3, (1, 1))),
    ("trefoil_sqcup_hopf", BraidWord(4, (1, 1, 1, 3, 3))),
]


@pytest.fixture(scope="session")
def corpus():
    return CORPUS

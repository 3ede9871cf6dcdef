"""Every CLI command on the fixture corpus, with the expected exit code."""

import os

F = os.path.join(os.path.dirname(__file__), "fixtures")


def fx(name):
    return os.path.join(F, name)


CORPUS = [
    (["gb", fx("boundary.json"), "--name", "s"], 0),
    (["gb", fx("koszul_xy.json")], 0),
    (["regseq", fx("koszul_xy.json")], 0),
    (["regseq", fx("boundary.json")], 1),
    (["aseq", fx("family_xy.json")], 0),
    (["koszul", fx("koszul_xy.json")], 0),
    (["gkoszul", fx("family_xy.json")], 0),
    (["validate-cube", fx("worked_cube.json"), "--sequence", "fg"], 0),
    (["validate-cube", fx("broken_cube.json")], 1),
    (["tot", fx("worked_cube.json")], 0),
    (["tot", fx("family_xy.json")], 0),
    (["homology", fx("koszul_xy.json"), "--degree", "0"], 0),
    (["homology", fx("koszul_xy.json"), "--name", "s", "--degree", "1"], 0),
    (["spherical", fx("worked_cube.json"), "--n", "0"], 0),
    (["spherical", fx("family_nonregular.json"), "--n", "0"], 1),
    (["be-check", fx("koszul_xy.json"), "--name", "K"], 0),
    (["be-check", fx("family_nonregular.json")], 1),
    (["adm-check", fx("family_xy.json")], 0),
    (["adm-check", fx("worked_cube.json")], 0),
    (["adm-check", fx("family_nonregular.json")], 1),
    (["resolve-wt2", fx("wt2_modules.json"), "--f", "f", "--g", "g", "--module", "Mxy"], 0),
    (["resolve-wt2", fx("wt2_modules.json"), "--f", "x", "--g", "y", "--module", "Mx2y"], 0),
    (["resolve-wt2", fx("wt2_modules.json"), "--f", "f", "--g", "g", "--module", "Mx"], 1),
    (["resolve-wt2", fx("graded_cube.json"), "--f", "f", "--g", "g", "--module", "M"], 0),
    (["check-wt", fx("wt2_modules.json"), "--module", "Mxy", "--weights", "fg"], 0),
    (["check-wt", fx("wt2_modules.json"), "--module", "Mx", "--weights", "x,y"], 1),
    (["boundary-lemma", fx("boundary.json"), "--matrix", "psi", "--f", "f"], 0),
    (["boundary-lemma", fx("boundary.json"), "--matrix", "bad", "--f", "f"], 1),
    (["harness", "--kind", "resolcriterion", "--seed", "1", "--count", "2"], 0),
    (["harness", "--kind", "gb-oracle", "--seed", "2", "--count", "2", "--degree-bound", "5"], 0),
    (["harness", "--kind", "wt2", "--seed", "3", "--count", "2"], 0),
    (["harness", "--kind", "coincidence", "--seed", "4", "--count", "2"], 0),
    (["harness", "--kind", "admcriterion", "--seed", "5", "--count", "2"], 0),
]

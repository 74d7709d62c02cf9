"""CLI invocations whose JSON output is frozen under tests/golden/."""

# (golden file stem, CLI arguments relative to the repo root)
GOLDEN = [
    ("relevance_three_variable", ["relevance", "specs/three_variable.json", "--monomial", "1,1,0"]),
    ("proj_z2_standard", ["proj", "specs/z2_standard.json"]),
    ("proj_axis_regrading", ["proj", "specs/axis_regrading.json"]),
    ("proj_total_degree", ["proj", "specs/total_degree.json", "--semigroups", "--ray", "1"]),
    ("proj_a_minus_b", ["proj", "specs/a_minus_b.json", "--cliques"]),
    ("proj_three_variable", ["proj", "specs/three_variable.json", "--cliques"]),
    ("proj_standard_z3", ["proj", "specs/standard_z3.json"]),
    ("proj_weighted_12", ["proj", "specs/weighted_12.json", "--semigroups"]),
    ("regrade_z2_standard", ["regrade", "specs/z2_standard.json"]),
    ("regrade_three_variable", ["regrade", "specs/three_variable.json"]),
    ("regrade_standard_z3", ["regrade", "specs/standard_z3.json"]),
    ("chambers_three_variable", ["chambers", "specs/three_variable.json"]),
    ("chambers_f1", ["chambers", "specs/f1.json"]),
    ("chambers_p2", ["chambers", "specs/p2.json"]),
]

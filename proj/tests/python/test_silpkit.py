import itertools
import os
import pathlib

import pytest

import silpkit

DATA = pathlib.Path(os.environ.get("SILP_TEST_DATA", pathlib.Path(__file__).parent.parent / "data"))

TRIANGLE = "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n"
EDGELESS = "p edge 3 0\n"


def read(name):
    return (DATA / name).read_text()


def feasible_points(text, names):
    """Brute force over the boxes of an instance with integer coefficients only."""
    vars_, rows = [], []
    for line in text.splitlines():
        parts = line.split()
        if parts[:1] == ["var"]:
            vars_.append((parts[1], int(parts[2]), int(parts[3])))
        elif parts[:1] == ["con"]:
            lhs, rhs = line.split(":", 1)[1].split("<=")
            terms = lhs.replace("- ", "+ -").split("+")
            row = []
            for term in terms:
                coef, name = term.strip().split("*")
                row.append((int(coef), name))
            rows.append((row, int(rhs)))
    points = set()
    for values in itertools.product(*[range(lo, hi + 1) for _, lo, hi in vars_]):
        env = {v[0]: x for v, x in zip(vars_, values)}
        if all(sum(c * env[n] for c, n in row) <= rhs for row, rhs in rows):
            points.add(tuple(env[n] for n in names))
    return points


def test_check_reports_sizes():
    info = silpkit.check(read("single_row.silp"))
    assert info["n"] == 3
    assert info["m"] == 1
    assert info["sparsity"] == 3


def test_normalize_round_trips():
    text = read("single_row.silp")
    assert silpkit.normalize(silpkit.normalize(text)) == silpkit.normalize(text)


def test_solve_witness_satisfies_rows():
    result = silpkit.solve(read("single_row.silp"))
    assert result["status"] == "feasible"
    assert sum(result["witness"].values()) <= 1
    assert silpkit.solve(read("zero_row.silp"))["status"] == "infeasible"
    assert silpkit.solve(read("huge.silp"), budget=10)["status"] == "budget_exhausted"


def test_kernel_matches_brute_force_projection():
    text = read("single_row.silp")
    kernel, report = silpkit.kernelize(text)
    assert report["emitted_constraints"] == "52"
    names = ["x", "y", "z"]
    assert feasible_points(text, names) == {p for p in itertools.product(range(2), repeat=3) if sum(p) <= 1}
    solved = silpkit.solve(kernel)
    assert solved["status"] == "feasible"
    assert sum(solved["witness"][n] for n in names) <= 1


def test_compose_or_of_cliques():
    text, stats = silpkit.compose([EDGELESS, TRIANGLE], 3)
    assert stats["ledger_matches"] == "true"
    assert silpkit.solve(text)["status"] == "feasible"
    text, _ = silpkit.compose([EDGELESS, EDGELESS], 3)
    assert silpkit.solve(text)["status"] == "infeasible"
    assert silpkit.has_k_clique(TRIANGLE, 3) == [0, 1, 2]


def test_errors_carry_codes():
    with pytest.raises(silpkit.SilpError) as info:
        silpkit.compose([TRIANGLE], 0)
    assert info.value.code == "BadK"
    with pytest.raises(silpkit.SilpError):
        silpkit.kernelize(read("single_row.silp"), r=2)


def test_run_cli_in_process():
    code, out, _ = silpkit.run_cli(["solve", "-"], stdin=read("single_row.silp"))
    assert code == 0
    assert out == "status=feasible\n"
    assert silpkit.run_cli(["frobnicate"])[0] == 2

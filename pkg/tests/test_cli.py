import pytest

from disksteiner import cli, fileio
from disksteiner.geometry import DiskInstance, SteinerTree
from disksteiner.oracle import SolveResult

FIXTURES = "tests/fixtures/embeddings"


def chain_instance(path):
    """0 - 1 - 2 with terminals at the ends; needs the middle disk."""
    inst = DiskInstance(
        ids=[0, 1, 2],
        xs=[0, 30, 60],
        ys=[0, 0, 0],
        radii=[16, 16, 16],
        terminal=[True, False, True],
        k=1,
        scale=16,
    )
    fileio.write_instance(path, inst)
    return inst


def split_instance(path):
    """Two far-apart terminals and no usable bridge."""
    inst = DiskInstance(
        ids=[0, 1],
        xs=[0, 500],
        ys=[0, 0],
        radii=[16, 16],
        terminal=[True, True],
        k=3,
        scale=16,
    )
    fileio.write_instance(path, inst)
    return inst


def test_solve_feasible_stdout(tmp_path, capsys):
    path = tmp_path / "chain.udg"
    chain_instance(path)
    assert cli.main(["solve", str(path)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("yes 1\n")
    assert "steiner 1" in out


def test_solve_infeasible_exit_one(tmp_path, capsys):
    path = tmp_path / "split.udg"
    split_instance(path)
    assert cli.main(["solve", str(path)]) == 1
    assert capsys.readouterr().out == "no\n"


@pytest.mark.parametrize("algo", cli.ALGOS)
def test_solve_algos_agree(tmp_path, capsys, algo):
    path = tmp_path / "chain.udg"
    chain_instance(path)
    assert cli.main(["solve", str(path), "--algo", algo]) == 0
    feasible, tree = fileio.loads_solution(capsys.readouterr().out)
    assert feasible and len(tree.steiner) <= 1


def test_solve_out_then_verify(tmp_path, capsys):
    inst = tmp_path / "chain.udg"
    sol = tmp_path / "chain.sol"
    chain_instance(inst)
    assert cli.main(["solve", str(inst), "--out", str(sol)]) == 0
    assert capsys.readouterr().out == ""
    assert cli.main(["verify", str(inst), str(sol)]) == 0
    assert capsys.readouterr().out == "ok\n"


def test_verify_rejects_tampered_tree(tmp_path, capsys):
    inst = tmp_path / "chain.udg"
    sol = tmp_path / "bad.sol"
    chain_instance(inst)
    fileio.write_solution(sol, True, SteinerTree(((0, 2),), ()))
    assert cli.main(["verify", str(inst), str(sol)]) == 1
    assert capsys.readouterr().out == "non-edge\n"


def test_verify_declared_no(tmp_path, capsys):
    inst = tmp_path / "chain.udg"
    sol = tmp_path / "no.sol"
    chain_instance(inst)
    fileio.write_solution(sol, False)
    assert cli.main(["verify", str(inst), str(sol)]) == 1
    assert "nothing to verify" in capsys.readouterr().out


def test_gen_round_trip(tmp_path):
    out = tmp_path / "gen.udg"
    rc = cli.main(
        ["gen", "--n", "12", "--box", "200", "--radius", "24", "--terminals", "4",
         "--k", "2", "--seed", "7", "--out", str(out)]
    )
    assert rc == 0
    inst = fileio.read_instance(out)
    assert inst.n == 12 and inst.k == 2 and sum(inst.terminal) == 4
    assert inst.scale == 24


def test_gen_bad_params_exit_two(tmp_path, capsys):
    rc = cli.main(
        ["gen", "--n", "0", "--box", "10", "--terminals", "1", "--k", "0",
         "--out", str(tmp_path / "x.udg")]
    )
    assert rc == 2
    assert capsys.readouterr().err.startswith("error:")


def test_gen_seeds_reproduce(tmp_path):
    a, b = tmp_path / "a.udg", tmp_path / "b.udg"
    argv = ["gen", "--n", "9", "--box", "150", "--terminals", "3", "--k", "1",
            "--seed", "3", "--out"]
    assert cli.main(argv + [str(a)]) == 0
    assert cli.main(argv + [str(b)]) == 0
    assert a.read_text() == b.read_text()


def test_backend_numpy_flag(tmp_path, capsys):
    path = tmp_path / "chain.udg"
    chain_instance(path)
    assert cli.main(["--backend", "numpy", "solve", str(path)]) == 0
    assert capsys.readouterr().out.startswith("yes")


def test_bench_csv_sorted(tmp_path, capsys):
    i1, i2 = tmp_path / "a.udg", tmp_path / "b.udg"
    chain_instance(i1)
    split_instance(i2)
    manifest = tmp_path / "jobs.txt"
    manifest.write_text(
        "# instance  algo\n"
        "%s fpt\n%s oracle\n%s fpt\n%s oracle\n" % (i2, i2, i1, i1)
    )
    out = tmp_path / "bench.csv"
    assert cli.main(["bench", str(manifest), "--out", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "instance,algo,answer,wall_time_s,states"
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == 4
    assert [(r[0], r[1]) for r in rows] == sorted((r[0], r[1]) for r in rows)
    assert {r[0] for r in rows if r[2] == "yes"} == {str(i1)}
    assert {r[0] for r in rows if r[2] == "no"} == {str(i2)}


def test_bench_disagreement_exit_one(tmp_path, capsys, monkeypatch):
    path = tmp_path / "chain.udg"
    chain_instance(path)
    manifest = tmp_path / "jobs.txt"
    manifest.write_text("%s fpt\n%s dw\n" % (path, path))
    real = cli._run_algo

    def flipped(algo, inst, backend=None):
        result = real(algo, inst, backend)
        if algo == "dw":
            return SolveResult(not result.feasible, states=result.states)
        return result

    monkeypatch.setattr(cli, "_run_algo", flipped)
    assert cli.main(["bench", str(manifest)]) == 1
    err = capsys.readouterr().err
    assert "disagreement" in err and str(path) in err


def test_bench_bad_manifest_line(tmp_path, capsys):
    manifest = tmp_path / "jobs.txt"
    manifest.write_text("whatever.udg quantum\n")
    assert cli.main(["bench", str(manifest)]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_gadget_cvc_command(tmp_path, capsys):
    out = tmp_path / "cvc.udg"
    rc = cli.main(
        ["gadget", "cvc", "--embedding", FIXTURES + "/g2_00.emb", "-k", "1",
         "--out", str(out)]
    )
    assert rc == 0
    assert capsys.readouterr().out == "budget 2\n"
    inst = fileio.read_instance(out)
    assert inst.k == 2 and set(inst.radii) == {1}


def test_gadget_gridtiling_command(tmp_path, capsys):
    spec = tmp_path / "gt.txt"
    spec.write_text(
        "gt 2 2\n1 1 1 1\n1 2 1 1\n2 1 1 1\n2 2 1 1\n"
    )
    out = tmp_path / "gt.udg"
    rc = cli.main(["gadget", "gridtiling", "--spec", str(spec), "--out", str(out)])
    assert rc == 0
    assert capsys.readouterr().out == "budget 4\n"
    inst = fileio.read_instance(out)
    assert inst.k == 4 and inst.n > 20


def test_gadget_cvc_rejects_zero_budget(tmp_path, capsys):
    rc = cli.main(
        ["gadget", "cvc", "--embedding", FIXTURES + "/g2_00.emb", "-k", "0",
         "--out", str(tmp_path / "x.udg")]
    )
    assert rc == 2
    assert capsys.readouterr().err.startswith("error:")


def test_kernels_smoke(capsys):
    assert cli.main(["kernels", "--n", "40", "--seed", "1"]) == 0
    out = capsys.readouterr().out
    assert "numba available:" in out
    assert "numpy" in out and "dw kernel" in out


def test_missing_file_exit_two(tmp_path, capsys):
    assert cli.main(["solve", str(tmp_path / "absent.udg")]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_malformed_instance_exit_two(tmp_path, capsys):
    path = tmp_path / "junk.udg"
    path.write_text("udg 5 1\n")
    assert cli.main(["solve", str(path)]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_unknown_algo_usage_error(tmp_path):
    path = tmp_path / "chain.udg"
    chain_instance(path)
    with pytest.raises(SystemExit) as info:
        cli.main(["solve", str(path), "--algo", "magic"])
    assert info.value.code == 2


def test_oracle_budget_env_exceeded(tmp_path, capsys, monkeypatch):
    path = tmp_path / "blob.udg"
    inst = DiskInstance(
        ids=list(range(8)),
        xs=[0, 30, 60, 90, 120, 30, 60, 90],
        ys=[0, 0, 0, 0, 0, 25, 25, 25],
        radii=[16] * 8,
        terminal=[True, False, False, False, True, False, False, False],
        k=3,
        scale=16,
    )
    fileio.write_instance(path, inst)
    monkeypatch.setenv(cli.BUDGET_ENV, "1")
    assert cli.main(["solve", str(path), "--algo", "oracle"]) == 2
    assert "error:" in capsys.readouterr().err
    monkeypatch.delenv(cli.BUDGET_ENV)
    assert cli.main(["solve", str(path), "--algo", "oracle"]) == 0
    capsys.readouterr()


def test_oracle_budget_env_malformed(tmp_path, capsys, monkeypatch):
    path = tmp_path / "chain.udg"
    chain_instance(path)
    monkeypatch.setenv(cli.BUDGET_ENV, "soon")
    assert cli.main(["solve", str(path), "--algo", "oracle"]) == 2
    assert cli.BUDGET_ENV in capsys.readouterr().err

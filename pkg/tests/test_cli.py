import random
import subprocess
import sys

import pytest

from certnet.cli import main, run
from certnet.distribution import parse_tsv
from certnet.kb import parse_kb
from certnet.logic import enumerate_worlds
from certnet.network import format_network, joint_distribution, load_network, local_degree, parse_network
from strategies import random_network


@pytest.fixture
def fx(fixtures_dir):
    return lambda name: str(fixtures_dir / name)


def test_validate_permissive(fx):
    r = run(["validate", "--permissive", fx("fourvar.cbn")])
    assert r.code == 0
    assert r.stdout == "valid (permissive)\n"


def test_validate_strict_names_root(fx):
    r = run(["validate", "--strict", fx("fourvar.cbn")])
    assert r.code == 2
    assert "a" in r.stdout.splitlines()[1] and "max(0.6, 0.1) != 1" in r.stdout


def test_malformed(tmp_path):
    p = tmp_path / "bad.cbn"
    p.write_text("network x\nvar a\ncpt a { a: 1; !a: 7 }\n")
    r = run(["validate", str(p)])
    assert r.code == 1
    assert f"{p}:3" in r.stderr


def test_missing_file(tmp_path):
    assert run(["joint", str(tmp_path / "nope.cbn")]).code == 1


def test_joint_fourvar(fx):
    r = run(["joint", fx("fourvar.cbn")])
    assert r.code == 0
    lines = r.stdout.splitlines()
    assert lines[0] == "a\tb\tc\td\tdegree"
    assert len(lines) == 17
    assert lines[1] == "a\tb\tc\td\t0.2"
    assert "fails strict" in r.stderr


def test_joint_strict_refuses(fx):
    r = run(["--strict", "joint", fx("fourvar.cbn")])
    assert r.code == 2


def test_joint_single_var(tmp_path):
    p = tmp_path / "one.cbn"
    p.write_text("network one\nvar a\ncpt a { a: 1; !a: 0 }\n")
    r = run(["joint", str(p)])
    assert [line.split("\t")[-1] for line in r.stdout.splitlines()[1:]] == ["1", "0"]
    assert r.stderr == ""


def test_joint_random_five(tmp_path):
    n = random_network(random.Random(5), n_vars=5, strict=False)
    p = tmp_path / "r5.cbn"
    p.write_text(format_network(n))
    d = parse_tsv(run(["joint", str(p)]).stdout)
    for w in enumerate_worlds(n.vocabulary):
        assert d[w] == min(local_degree(n, a, w) for a in n.vocabulary)


def test_joint_fuzzy(fx):
    r = run(["joint", fx("fourvar_fuzzy.cbn")])
    assert r.code == 0
    assert "tri(" in r.stdout or "cuts(" in r.stdout


@pytest.mark.parametrize("formula, pi, nec", [
    ("a & b & c", "0.3", "0.75"),
    ("true", "0.3", "1"),
    ("a", "0.3", "0.9"),
])
def test_query(fx, formula, pi, nec):
    r = run(["query", "--formula", formula, fx("fourvar.cbn")])
    assert r.code == 0
    assert r.stdout == f"possibility: {pi}\nnecessity: {nec}\n"


def test_query_unknown_atom(fx):
    assert run(["query", "--formula", "a & z", fx("fourvar.cbn")]).code == 1


def test_compile_and_recover(fx, tmp_path):
    r = run(["compile", fx("fourvar_strict.cbn")])
    assert r.code == 0
    kb = parse_kb(r.stdout)
    assert len(kb) == 9
    p = tmp_path / "strict.kb"
    p.write_text(r.stdout)
    rec = parse_tsv(run(["recover", str(p)]).stdout)
    assert rec == joint_distribution(load_network(fx("fourvar_strict.cbn")))


def test_compile_fuzzy(fx):
    r = run(["compile", fx("fourvar_fuzzy.cbn")])
    assert r.code == 0
    assert parse_kb(r.stdout).fuzzy


def test_roundtrip_strict(fx):
    r = run(["--strict", "roundtrip", fx("fourvar_strict.cbn")])
    assert (r.code, r.stdout) == (0, "identical (16 worlds)\nmax discrepancy: 0\n")


def test_roundtrip_fourvar(fx):
    # holds even though the root is not normalized
    assert run(["roundtrip", fx("fourvar.cbn")]).code == 0


def test_defuzzify_degenerate(tmp_path, fx):
    crisp = load_network(fx("fourvar.cbn"))
    p = tmp_path / "deg.cbn"
    p.write_text(format_network(crisp).replace("0.6", "tri(0.6, 0.6, 0.6)"))
    r = run(["defuzzify", str(p)])
    assert r.code == 0
    assert joint_distribution(parse_network(r.stdout)) == joint_distribution(crisp)


def test_defuzzify_fixture(fx):
    r = run(["defuzzify", fx("fourvar_fuzzy.cbn")])
    back = parse_network(r.stdout)
    assert back.tables == load_network(fx("fourvar_strict.cbn")).tables


def test_subsumed(fx):
    r = run(["subsumed", fx("dominated.kb")])
    assert (r.code, r.stdout) == (0, "line 4 subsumed\n")


def test_subsumed_none(fx, tmp_path):
    p = tmp_path / "k.kb"
    p.write_text("kb k\nvars a b\n0.5 : a\n0.4 : b\n")
    assert run(["subsumed", str(p)]).stdout == "no subsumed formulas\n"


def test_zero_weight_warning(tmp_path):
    p = tmp_path / "z.kb"
    p.write_text("kb z\nvars a\n0 : a\n")
    r = run(["recover", str(p)])
    assert r.code == 0
    assert "zero-weight" in r.stderr


def test_max_vars_guard(fx):
    r = run(["joint", "--max-vars", "3", fx("fourvar.cbn")])
    assert r.code == 1
    assert "error" in r.stderr


def test_output_file(fx, tmp_path, capsys):
    out = tmp_path / "joint.tsv"
    assert main(["joint", fx("fourvar_strict.cbn"), "-o", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert out.read_text().startswith("a\tb\tc\td\tdegree\n")


def test_deterministic(fx):
    assert run(["joint", fx("fourvar.cbn")]).stdout == run(["joint", fx("fourvar.cbn")]).stdout


def test_entry_point(fx):
    proc = subprocess.run([sys.executable, "-m", "certnet.cli", "query", "--formula", "a", fx("fourvar.cbn")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1] == "necessity: 0.9"

import csv
import io
import json
import math
import subprocess
import sys

import pytest

from apsets.cli import main
from apsets.setgen import IntegerSet


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


@pytest.fixture
def gen(tmp_path, capsys):
    def _gen(name, *params):
        path = tmp_path / f"{name}.apset"
        code, _, err = run(["generate", *params, "-o", path], capsys)
        assert code == 0, err
        return path
    return _gen


class TestGenerate:
    def test_kfree_sidecar(self, gen):
        path = gen("sf", "--family", "kfree", "--k", 2, "--x", 10**6)
        side = json.loads((path.parent / "sf.apset.json").read_text())
        assert side["family"] == "kfree" and side["params"] == {"x": 10**6, "k": 2}
        assert abs(side["density"] - 0.607927) < 5e-6
        assert IntegerSet.load(path).count == side["count"]

    def test_periodic(self, gen):
        path = gen("odd", "--family", "periodic", "--q", 2, "--residues", "1", "--x", 10, "--text")
        assert IntegerSet.load(path).elements().tolist() == [1, 3, 5, 7, 9]
        assert (path.parent / "odd.apset.txt").read_text() == "x=10\n1 3 5 7 9\n"

    def test_beatty(self, gen):
        path = gen("b3", "--family", "beatty", "--r", 3, "--x", 10)
        assert IntegerSet.load(path).elements().tolist() == [1, 3, 5, 6, 8, 10]

    def test_intersect(self, gen):
        a = gen("sf", "--family", "kfree", "--x", 30)
        b = gen("m3", "--family", "periodic", "--q", 3, "--residues", "1,2", "--x", 30)
        c = gen("both", "--family", "intersect", "--inputs", a, b)
        assert IntegerSet.load(c).count == 14

    def test_deterministic_bytes(self, gen):
        a = gen("one", "--family", "beatty", "--r", 2, "--x", 5000)
        b = gen("two", "--family", "beatty", "--r", 2, "--x", 5000)
        assert a.read_bytes() == b.read_bytes()


class TestEnergy:
    def test_squarefree_schedule(self, gen, capsys):
        path = gen("sf", "--family", "kfree", "--x", 10**5)
        code, out, _ = run(["energy", "--set", path, "--Q", "5,10,20,40"], capsys)
        assert code == 0
        table = rows(out)
        assert [int(r["Q"]) for r in table] == [5, 10, 20, 40]
        ratios = [float(r["ratio"]) for r in table]
        assert all(b <= a * 1.05 for a, b in zip(ratios, ratios[1:]))
        assert table[0]["set_id"] == "sf" and table[0]["arc_system"] == "farey"

    def test_empty_set(self, gen, capsys):
        path = gen("none", "--family", "periodic", "--q", 2, "--x", 1000)
        code, out, _ = run(["energy", "--set", path, "--Q", "2,3"], capsys)
        assert code == 0
        assert [float(r["ratio"]) for r in rows(out)] == [0.0, 0.0]

    def test_beatty_sequence_vs_farey(self, gen, capsys):
        path = gen("b2", "--family", "beatty", "--r", 2, "--x", 10**5)
        _, far, _ = run(["energy", "--set", path, "--Q", "10"], capsys)
        _, seq, _ = run(["energy", "--set", path, "--Q", "10", "--arcs", "sequence:beatty2"], capsys)
        rf, rs = float(rows(far)[0]["ratio"]), float(rows(seq)[0]["ratio"])
        assert rs < 0.05 and abs(rf - (1 / math.sqrt(2) - 0.5)) < 0.03

    def test_json_mirrors_csv(self, gen, capsys):
        path = gen("sf", "--family", "kfree", "--x", 10**4)
        _, c, _ = run(["energy", "--set", path, "--Q", "3,7"], capsys)
        _, j, _ = run(["energy", "--set", path, "--Q", "3,7", "--format", "json"], capsys)
        records = json.loads(j)
        assert [r["Q"] for r in records] == [3, 7]
        assert [repr(r["ratio"]) for r in records] == [r["ratio"] for r in rows(c)]

    def test_byte_identical_output(self, gen, tmp_path, capsys):
        path = gen("sf", "--family", "kfree", "--x", 20000)
        outs = []
        for i, threads in enumerate((1, 1)):
            dest = tmp_path / f"e{i}.csv"
            assert run(["energy", "--set", path, "--Q", "4,9", "--threads", threads,
                        "-o", dest], capsys)[0] == 0
            outs.append(dest.read_bytes())
        assert outs[0] == outs[1]


class TestExtremality:
    def test_periodic(self, gen, capsys):
        path = gen("m3", "--family", "periodic", "--q", 3, "--residues", "1,2", "--x", 60000)
        code, out, _ = run(["extremality", "--set", path, "--Q", "3,6"], capsys)
        assert code == 0
        for r in rows(out):
            assert abs(float(r["gap"])) < 1e-12

    def test_theoretical(self, capsys):
        code, out, _ = run(["extremality", "--mode", "theoretical", "--k", 2, "--Q", "10,100"], capsys)
        assert code == 0
        table = rows(out)
        assert float(table[-1]["inv_rho"]) == pytest.approx(math.pi**2 / 6, rel=1e-14)
        assert float(table[-1]["gap"]) < float(table[0]["gap"])

    def test_beatty(self, gen, capsys):
        path = gen("b2", "--family", "beatty", "--x", 10**6)
        _, out, _ = run(["extremality", "--set", path, "--Q", "10,30"], capsys)
        for r in rows(out):
            assert float(r["gap"]) == pytest.approx(math.sqrt(2) - 1, abs=1e-4)

    def test_empty_set_rejected(self, gen, capsys):
        path = gen("none", "--family", "periodic", "--q", 2, "--x", 100)
        code, _, err = run(["extremality", "--set", path, "--Q", "3"], capsys)
        assert code != 0 and err.count("\n") == 1 and err.startswith("error:")


class TestSpectrum:
    def test_periodic(self, gen, capsys):
        path = gen("m3", "--family", "periodic", "--q", 3, "--residues", "1,2", "--x", 3000)
        code, out, _ = run(["spectrum", "--set", path, "--candidates", "0,1/3,2/3", "--threshold", 0.05], capsys)
        assert code == 0
        table = rows(out)
        assert len(table) == 3 and float(table[0]["beta"]) == 0.0
        assert float(table[0]["modulus"]) == pytest.approx(2 / 3)

    def test_beatty_candidates(self, gen, capsys):
        path = gen("b2", "--family", "beatty", "--x", 10**5)
        _, out, _ = run(["spectrum", "--set", path, "--candidates", "beatty2:2,farey:4"], capsys)
        betas = [float(r["beta"]) for r in rows(out)]
        assert 0.0 in betas and 0.5 not in betas
        assert any(abs(b - (1 / math.sqrt(2)) % 1) < 1e-12 for b in betas)


class TestRepresent:
    def test_beatty_pair(self, gen, capsys):
        a = gen("b2", "--family", "beatty", "--r", 2, "--x", 10**5)
        b = gen("b3", "--family", "beatty", "--r", 3, "--x", 10**5)
        code, out, err = run(["represent", "--set-a", a, "--set-b", b, "--window", "90000:100000"], capsys)
        assert code == 0
        ratios = [float(r["ratio"]) for r in rows(out)]
        assert len(ratios) == 10001
        assert abs(sum(ratios) / len(ratios) - 1) < 0.02
        assert err.startswith("mean=")

    def test_interval(self, gen, capsys):
        a = gen("full", "--family", "periodic", "--q", 1, "--residues", "0", "--x", 300)
        _, out, _ = run(["represent", "--set-a", a, "--set-b", a, "--window", "100:200",
                         "--main-term", "interval"], capsys)
        for r in rows(out):
            n = int(r["n"])
            assert float(r["ratio"]) == pytest.approx((n - 1) / n, rel=1e-15)

    def test_squarefree_rational(self, gen, capsys):
        a = gen("sf", "--family", "kfree", "--x", 10**5)
        _, out, _ = run(["represent", "--set-a", a, "--set-b", a, "--window", "90000:100000",
                         "--main-term", "rational:50"], capsys)
        ratios = [float(r["ratio"]) for r in rows(out)]
        assert abs(sum(ratios) / len(ratios) - 1) < 0.02

    def test_window_out_of_range(self, gen, capsys):
        a = gen("sf", "--family", "kfree", "--x", 1000)
        code, out, err = run(["represent", "--set-a", a, "--set-b", a, "--window", "10:2000"], capsys)
        assert code != 0 and out == "" and err.count("\n") == 1


class TestErrors:
    @pytest.mark.parametrize("argv", [
        ["generate", "--family", "kfree", "--k", 1, "--x", 10, "-o", "PLACEHOLDER"],
        ["generate", "--family", "beatty", "--r", 4, "--x", 10, "-o", "PLACEHOLDER"],
        ["generate", "--family", "nope", "--x", 10],
        ["energy", "--set", "/nonexistent/file.apset", "--Q", "5"],
        ["energy", "--set", "x.apset", "--Q", "five"],
        ["frobnicate"],
        [],
    ])
    def test_single_line_error(self, argv, tmp_path, capsys):
        argv = [str(tmp_path / "s.apset") if a == "PLACEHOLDER" else a for a in argv]
        code, out, err = run(argv, capsys)
        assert code != 0
        assert err.count("\n") == 1 and err.startswith("error: ")

    def test_bad_arc_family(self, gen, capsys):
        path = gen("sf", "--family", "kfree", "--x", 1000)
        code, _, err = run(["energy", "--set", path, "--Q", "2", "--arcs", "circles"], capsys)
        assert code != 0 and "arc family" in err


def test_selftest(capsys):
    code, out, _ = run(["selftest"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) >= 20 and all(l.startswith("PASS") for l in lines)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "apsets.cli", "generate", "--family", "kfree"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
    assert proc.stderr.strip().count("\n") == 0 and proc.stderr.startswith("error:")

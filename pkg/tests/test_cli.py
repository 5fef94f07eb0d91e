import pytest

from perrin.cli import main
from perrin.store import PppStore

GOLDEN_TRACE_19 = """\
19 = 3*6 + 1
word: QMQMQ
(1,0,0) -Q-> (1,0,0) -M-> (1,0,1) -Q-> (1,1,2) -M-> (2,3,4) -Q-> (9,18,11)
extract: 3b+2c = 76 = 0 (mod 19)
19: prime (residue 0)
"""


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCmdTest:
    def test_trace_is_byte_exact(self, capsys):
        code, out, _ = run(capsys, "test", "19", "--spec", "perrin", "--trace")
        assert code == 0
        assert out == GOLDEN_TRACE_19

    def test_pseudoprime_verdict(self, capsys):
        code, out, _ = run(capsys, "test", "271441", "--spec", "perrin")
        assert code == 0
        assert out == "271441: pseudoprime (residue 0)\n"

    def test_composite_non_pseudoprime(self, capsys):
        # P_10 = 17, and 17 mod 10 = 7
        code, out, _ = run(capsys, "test", "10", "--spec", "perrin")
        assert code == 0
        assert out == "10: composite non-pseudoprime (residue 7)\n"

    def test_q17_prime(self, capsys):
        code, out, _ = run(capsys, "test", "11", "--spec", "q17")
        assert code == 0
        assert out.startswith("11: prime")

    def test_coeffs_override(self, capsys):
        code, out, _ = run(capsys, "test", "19", "--coeffs", "0,1,1")
        assert code == 0
        assert "prime" in out

    def test_tsv_mode(self, capsys):
        code, out, _ = run(capsys, "--format", "tsv", "test", "271441")
        assert code == 0
        assert out == "271441\tpseudoprime\t0\n"

    def test_trace_rejected_for_generic_spec(self, capsys):
        code, _, err = run(capsys, "test", "19", "--spec", "q17", "--trace")
        assert code == 1
        assert "trace" in err

    def test_bad_n_is_an_error(self, capsys):
        code, _, err = run(capsys, "test", "1")
        assert code == 1
        assert "error" in err

    def test_usage_error_exit_code(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["test", "not-a-number"])
        assert exc.value.code == 2


class TestCmdScan:
    def test_scan_finds_both_small_ppps(self, capsys, tmp_path):
        store_path = tmp_path / "s.tsv"
        code, out, err = run(
            capsys, "--store", str(store_path), "scan", "2", "1000000"
        )
        assert code == 0
        assert out.split() == ["271441", "904631"]
        assert "2 pseudoprime(s)" in err
        st = PppStore(store_path)
        assert [r.value for r in st.records] == [271441, 904631]
        assert all(r.method == "exhaustive" and r.verified for r in st.records)

    def test_scan_rejects_empty_range(self, capsys):
        code, _, err = run(capsys, "scan", "100", "100")
        assert code == 1 and "error" in err

    def test_scan_q17_empty(self, capsys, tmp_path):
        code, out, _ = run(
            capsys, "--store", str(tmp_path / "s.tsv"),
            "scan", "2", "50000", "--spec", "q17",
        )
        assert code == 0
        assert out == ""


class TestCmdStructured:
    def test_table_scan(self, capsys, tmp_path):
        code, out, _ = run(
            capsys, "--store", str(tmp_path / "s.tsv"),
            "structured", "-k", "3,1", "--p-max", "20000",
            "--primes-only", "--value-cap", "1000000000",
        )
        assert code == 0
        values = {int(line.split()[0]) for line in out.strip().splitlines()}
        assert values == {
            27664033, 102690901, 130944133, 214038533,
            545670533, 855073301, 903136901,
        }

    def test_single_core(self, capsys):
        code, out, _ = run(capsys, "structured", "-k", "9,10,1", "--core", "1871")
        assert code == 0
        assert out.split() == ["588909469501", "pseudoprime"]

    def test_discover_mod_23(self, capsys):
        code, out, _ = run(
            capsys, "structured", "-k", "3,1", "--discover",
            "--modulus", "23", "--samples", "10", "--p-budget", "23000",
        )
        assert code == 0
        assert "{1,2,6,9,18}" in out

    def test_discover_subcommand(self, capsys):
        code, out, _ = run(
            capsys, "discover", "-k", "3,1",
            "--modulus", "23", "--samples", "10", "--p-budget", "23000",
        )
        assert code == 0
        assert "{1,2,6,9,18}" in out


class TestCmdExtend:
    def test_extend_from_store(self, capsys, tmp_path):
        store_path = tmp_path / "s.tsv"
        run(
            capsys, "--store", str(store_path),
            "structured", "-k", "3,1", "--p-min", "13487", "--p-max", "13488",
        )
        code, out, err = run(
            capsys, "--store", str(store_path),
            "extend", "--value", "545670533", "--c-max", "2",
        )
        assert code == 0
        assert "44154022518761" in out
        assert "1 hit(s)" in err
        st = PppStore(store_path)
        assert 44154022518761 in st

    def test_extend_missing_value(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "--store", str(tmp_path / "empty.tsv"),
            "extend", "--value", "7",
        )
        assert code == 1
        assert "no shaped record" in err


class TestCmdGiant:
    def test_listing_and_testing(self, capsys):
        code, out, _ = run(capsys, "giant", "-k", "2", "--primes", "3", "--full", "--test")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 3
        # cores 46, 138, 690 give values core * (2*(core-1) + 1)
        assert lines[0].split()[0] == str(46 * 91)
        assert lines[1].split()[0] == str(138 * 275)
        assert lines[2].split()[0] == str(690 * 1379)
        for line in lines:
            assert "core=23*primorial(" in line


class TestStoreCommands:
    def test_import_verify_stats(self, capsys, tmp_path):
        listing = tmp_path / "plain.txt"
        listing.write_text("13\n341\n271441\n904631\n")
        store_path = tmp_path / "s.tsv"
        code, _, err = run(capsys, "--store", str(store_path), "import", str(listing))
        assert code == 0 and "imported 4" in err

        code, out, err = run(capsys, "--store", str(store_path), "verify")
        assert code == 1  # failures present
        assert "13 FAIL is prime" in out
        assert "341 FAIL failed Perrin test" in out
        assert "2 failure(s)" in err

        code, out, _ = run(capsys, "--store", str(store_path), "stats", "--decades", "6")
        assert code == 0
        rows = [line.split() for line in out.strip().splitlines()[1:]]
        assert rows[-1][0] == "1000000" and rows[-1][1] == "2"

    def test_store_env_override(self, capsys, tmp_path, monkeypatch):
        listing = tmp_path / "plain.txt"
        listing.write_text("271441\n")
        env_store = tmp_path / "env.tsv"
        monkeypatch.setenv("PERRIN_STORE", str(env_store))
        code, _, err = run(capsys, "import", str(listing))
        assert code == 0
        assert env_store.exists()

from pathlib import Path as FilePath

import pytest

from app.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main
from app.linkage import bench
from app.linkage.linker import LinkRequest, required_connectivity, verify_linkage
from app.linkage.tournament import (
    Tournament,
    parse,
    random_tournament,
    rotational,
    sample_min_degree,
    serialize,
    transitive,
)
from app.linkage.utils.formats import parse_paths, parse_report
from app.linkage.utils.suite_loader import SuiteLoader


def write(tmp_path: FilePath, name: str, text: str) -> str:
    path = tmp_path / name
    path.write_bytes(text.encode("utf-8"))
    return str(path)


def write_tournament(tmp_path: FilePath, t: Tournament, name: str = "t.txt") -> str:
    return write(tmp_path, name, serialize(t))


def digest_line(err: str) -> str:
    return next(line for line in err.splitlines() if line.startswith("digest: "))


class TestGen:
    def test_rotational_to_stdout(self, capsys: pytest.CaptureFixture) -> None:
        assert main(["gen", "--kind", "rotational", "--n", "7"]) == EXIT_OK
        out = capsys.readouterr().out
        assert len(out.splitlines()) == 8
        assert parse(out) == rotational(7)

    def test_random_is_reproducible(self, tmp_path: FilePath) -> None:
        first, second = tmp_path / "a.txt", tmp_path / "b.txt"
        for target in (first, second):
            argv = ["gen", "--kind", "random", "--n", "30", "--seed", "5", "--out", str(target)]
            assert main(argv) == EXIT_OK
        assert first.read_bytes() == second.read_bytes()
        assert parse(first.read_text(encoding="utf-8")) == random_tournament(30, 5)

    def test_bad_size(self, capsys: pytest.CaptureFixture) -> None:
        assert main(["gen", "--kind", "rotational", "--n", "6"]) == EXIT_USAGE
        assert capsys.readouterr().err.startswith("error:")
        assert main(["gen", "--kind", "paley", "--n", "13"]) == EXIT_USAGE
        assert main(["gen", "--kind", "rotational", "--n", "1"]) == EXIT_USAGE

    def test_usage_errors_exit_2(self) -> None:
        with pytest.raises(SystemExit) as exc:
            main(["gen"])
        assert exc.value.code == 2
        with pytest.raises(SystemExit) as exc:
            main(["kappa", "--in", "x", "--exact", "--brute"])
        assert exc.value.code == 2


class TestKappa:
    def test_exact(self, tmp_path: FilePath, capsys: pytest.CaptureFixture) -> None:
        assert main(["kappa", "--in", write_tournament(tmp_path, transitive(4))]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "0"
        assert main(["kappa", "--in", write_tournament(tmp_path, rotational(7)), "--exact"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "3"

    def test_brute(self, tmp_path: FilePath, capsys: pytest.CaptureFixture) -> None:
        assert main(["kappa", "--in", write_tournament(tmp_path, rotational(7)), "--brute"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "3"

    def test_brute_over_budget(self, tmp_path: FilePath, capsys: pytest.CaptureFixture) -> None:
        path = write_tournament(tmp_path, random_tournament(20, 1))
        assert main(["kappa", "--in", path, "--brute"]) == EXIT_USAGE
        assert "max_n" in capsys.readouterr().err

    def test_malformed_file(self, tmp_path: FilePath, capsys: pytest.CaptureFixture) -> None:
        path = write(tmp_path, "bad.txt", "TOURN 1 2\r\n01\n00\n")
        assert main(["kappa", "--in", path]) == EXIT_USAGE
        assert "malformed header" in capsys.readouterr().err

    def test_missing_file(self, tmp_path: FilePath, capsys: pytest.CaptureFixture) -> None:
        assert main(["kappa", "--in", str(tmp_path / "absent.txt")]) == EXIT_USAGE
        assert "cannot read" in capsys.readouterr().err


class TestLink:
    def test_degree_floor_unmet(self, tmp_path: FilePath, capsys: pytest.CaptureFixture) -> None:
        t = write_tournament(tmp_path, rotational(7))
        pairs = write(tmp_path, "pairs.txt", "0 1\n")
        assert main(["link", "--in", t, "--pairs", pairs]) == EXIT_USAGE
        assert "vertex 0" in capsys.readouterr().err

    def test_duplicate_terminal(self, tmp_path: FilePath) -> None:
        t = write_tournament(tmp_path, rotational(7))
        pairs = write(tmp_path, "pairs.txt", "0 1\n1 2\n")
        assert main(["link", "--in", t, "--pairs", pairs]) == EXIT_USAGE

    def test_terminal_out_of_range(self, tmp_path: FilePath) -> None:
        t = write_tournament(tmp_path, rotational(7))
        pairs = write(tmp_path, "pairs.txt", "0 9\n")
        assert main(["link", "--in", t, "--pairs", pairs]) == EXIT_USAGE

    def test_forced_stage_failure(self, tmp_path: FilePath, capsys: pytest.CaptureFixture) -> None:
        t = write_tournament(tmp_path, rotational(7))
        pairs = write(tmp_path, "pairs.txt", "0 1\n")
        assert main(["link", "--in", t, "--pairs", pairs, "--force"]) == EXIT_FAILURE
        err = capsys.readouterr().err
        assert "stage in_domination failed" in err
        assert "stages:" in err

    @pytest.mark.slow
    def test_links_at_full_floor(self, tmp_path: FilePath) -> None:
        tournament, _ = sample_min_degree(1000, 7, required_connectivity(1))
        t = write_tournament(tmp_path, tournament)
        pairs = write(tmp_path, "pairs.txt", "3 900\n")
        out = tmp_path / "paths.txt"
        assert main(["link", "--in", t, "--pairs", pairs, "--out", str(out)]) == EXIT_OK
        paths = parse_paths(out.read_text(encoding="utf-8"))
        assert verify_linkage(tournament, LinkRequest.from_pairs([(3, 900)]), paths)
        assert main(["verify", "--in", t, "--pairs", pairs, "--paths", str(out)]) == EXIT_OK


class TestVerify:
    def test_ok_and_tampered(self, tmp_path: FilePath, capsys: pytest.CaptureFixture) -> None:
        t = write_tournament(tmp_path, rotational(3))
        pairs = write(tmp_path, "pairs.txt", "0 2\n")
        good = write(tmp_path, "good.txt", "0 1 2\n")
        tampered = write(tmp_path, "tampered.txt", "0 2\n")

        assert main(["verify", "--in", t, "--pairs", pairs, "--paths", good]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "ok"
        assert main(["verify", "--in", t, "--pairs", pairs, "--paths", tampered]) == EXIT_FAILURE
        assert capsys.readouterr().out.startswith("violation:")

    def test_malformed_paths(self, tmp_path: FilePath) -> None:
        t = write_tournament(tmp_path, rotational(3))
        pairs = write(tmp_path, "pairs.txt", "0 2\n")
        paths = write(tmp_path, "paths.txt", "0, 1, 2\n")
        assert main(["verify", "--in", t, "--pairs", pairs, "--paths", paths]) == EXIT_USAGE


class TestLinkagePairCommand:
    def test_routes_permutations(self, tmp_path: FilePath, capsys: pytest.CaptureFixture) -> None:
        t = write_tournament(tmp_path, random_tournament(110, 3))
        assert main(["lemma21", "--in", t, "--m", "10", "--perms", "100"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "routed 100 permutations" in out
        assert len(out.splitlines()[1].split()) == 11

    def test_too_small(self, tmp_path: FilePath) -> None:
        t = write_tournament(tmp_path, random_tournament(50, 3))
        assert main(["lemma21", "--in", t, "--m", "10"]) == EXIT_USAGE


class TestDomset:
    def test_transitive(self, tmp_path: FilePath, capsys: pytest.CaptureFixture) -> None:
        t = write_tournament(tmp_path, transitive(5))
        assert main(["domset", "--in", t, "--size", "1"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines == ["sequence: 4", "residual: 0", "degree bound: holds"]

    def test_out_flavor(self, tmp_path: FilePath, capsys: pytest.CaptureFixture) -> None:
        t = write_tournament(tmp_path, transitive(5))
        assert main(["domset", "--in", t, "--size", "1", "--flavor", "out"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[0] == "sequence: 0"

    def test_exhausted(self, tmp_path: FilePath) -> None:
        t = write_tournament(tmp_path, transitive(5))
        assert main(["domset", "--in", t, "--size", "2"]) == EXIT_FAILURE


class TestOracle:
    def test_kappa(self, tmp_path: FilePath, capsys: pytest.CaptureFixture) -> None:
        t = write_tournament(tmp_path, rotational(3))
        assert main(["oracle", "--in", t, "--check", "kappa"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "1"

    def test_linked(self, tmp_path: FilePath, capsys: pytest.CaptureFixture) -> None:
        t = write_tournament(tmp_path, rotational(3))
        assert main(["oracle", "--in", t, "--check", "linked", "--k", "1"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "linked"

    def test_not_linked(self, tmp_path: FilePath, capsys: pytest.CaptureFixture) -> None:
        t = write_tournament(tmp_path, transitive(3))
        assert main(["oracle", "--in", t, "--check", "linked", "--k", "1"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "not linked: 2 0"

    def test_linked_needs_k(self, tmp_path: FilePath) -> None:
        t = write_tournament(tmp_path, transitive(3))
        assert main(["oracle", "--in", t, "--check", "linked"]) == EXIT_USAGE


class TestBench:
    @pytest.fixture(autouse=True)
    def suites(self, tmp_path: FilePath, monkeypatch: pytest.MonkeyPatch) -> None:
        suites_file = tmp_path / "suites.yml"
        suites_file.write_text(
            "hopeless:\n  n: 30\n  k: 1\n  trials: 2\n  seed: 5\n"
            "  config:\n    connectivity_factor: 100\n",
            encoding="utf-8",
        )
        loader = SuiteLoader(str(suites_file))
        monkeypatch.setattr(bench, "get_suite_loader", lambda: loader)

    def test_report_and_digest(self, tmp_path: FilePath, capsys: pytest.CaptureFixture) -> None:
        out = tmp_path / "report.txt"
        argv = ["bench", "--suite", "hopeless", "--no-timing", "--out", str(out), "--workers", "1"]
        assert main(argv) == EXIT_OK
        first_digest = digest_line(capsys.readouterr().err)
        first_report = out.read_bytes()

        assert main(argv) == EXIT_OK
        assert digest_line(capsys.readouterr().err) == first_digest
        assert out.read_bytes() == first_report

        records = parse_report(first_report.decode("utf-8"))
        assert [r.seed for r in records] == [5, 6]
        assert all(r.runtime_ms is None for r in records)
        assert first_digest == f"digest: {bench.report_digest(records)}"

    def test_seed_shifts_trials(self, tmp_path: FilePath) -> None:
        for flag in ("--seed", "--seed-offset"):
            out = tmp_path / f"{flag}.txt"
            argv = ["bench", "--suite", "hopeless", "--no-timing", "--out", str(out), flag, "10"]
            assert main(argv) == EXIT_OK
            records = parse_report(out.read_text(encoding="utf-8"))
            assert [r.seed for r in records] == [15, 16]

    def test_unknown_suite(self) -> None:
        assert main(["bench", "--suite", "nope"]) == EXIT_USAGE

"""Testes da linha de comando: códigos de saída, traces e evidências emitidas."""
import json

import pytest

from conftest import AXIOM_K
from evidence_processor import parse_evidence, to_lmf_node, to_star_node
from main import EXIT_INPUT, EXIT_LIMIT, EXIT_OK, EXIT_REJECTED, run_cli
from test_kernel import AXIOM_K_TRACE, EXCLUDED_MIDDLE_TRACE

CERTIFIED = [
    "axiomK.lmf.json", "axiomK.ls.json", "axiomK.lmfm.json", "axiomK.lmfstar.json",
    "axiomK.os.json", "axiomK.os-basic.json", "axiomK.ns.json", "axiomK.pt.json",
    "excluded_middle.lmf.json",
]


@pytest.fixture
def run(capsys):
    def invoke(*argv):
        code = run_cli([str(a) for a in argv])
        return code, capsys.readouterr().out
    return invoke


class TestCheck:

    @pytest.mark.parametrize("name", CERTIFIED)
    def test_fixtures_are_certified(self, run, fixture_path, name):
        code, out = run("check", fixture_path(name))
        assert code == EXIT_OK
        assert out == ""

    def test_corrupt_os_is_rejected(self, run, fixture_path):
        assert run("check", fixture_path("axiomK.os.corrupt.json"))[0] == EXIT_REJECTED

    def test_dangling_index_is_rejected(self, run, tmp_path):
        evidence = {
            "format": "lmf",
            "formula": "p | ~p",
            "proof": {"index": "root", "children": [{"index": "left(left(root))", "extra": "right(root)"}]},
        }
        path = tmp_path / "dangling.json"
        path.write_text(json.dumps(evidence), encoding="utf-8")
        assert run("check", path)[0] == EXIT_REJECTED

    def test_long_chain_is_certified(self, run, tmp_path):
        n = 160
        spine = ["root"]
        for _ in range(n - 1):
            spine.append(f"right({spine[-1]})")
        proof = {"index": f"left({spine[-1]})", "extra": f"right({spine[-1]})"}
        for index in reversed(spine):
            proof = {"index": index, "children": [proof]}
        evidence = {"format": "lmf", "formula": " | ".join(["p"] * n + ["~p"]), "proof": proof}
        path = tmp_path / "chain.json"
        path.write_text(json.dumps(evidence), encoding="utf-8")
        assert run("check", path) == (EXIT_OK, "")

    def test_star_spine_grouped_with_diamonds_is_rejected(self, run, fixture_text, tmp_path):
        evidence = json.loads(fixture_text("axiomK.lmfstar.json"))
        node = evidence["proof"]
        for _ in range(3):
            node["group"] = 1
            node = node["children"][0]
        path = tmp_path / "grouped.json"
        path.write_text(json.dumps(evidence), encoding="utf-8")
        assert run("check", path)[0] == EXIT_REJECTED

    @pytest.mark.parametrize("path,key,value", [
        ((), "index", "right(root)"),
        ((0, 0, 0), "extra", "right(root)"),
        ((0, 0, 0, 0), "extra", None),
        ((0, 0, 0, 0, 0), "children", []),
        ((0, 0, 0, 0, 0, 0), "extra", "right(diaind(left(root),right(right(root))))"),
        ((0, 0, 0, 0, 0, 1), "extra", "left(diaind(left(root),right(right(root))))"),
    ])
    def test_corrupt_lmf_fixture_is_rejected(self, run, fixture_text, tmp_path, path, key, value):
        evidence = json.loads(fixture_text("axiomK.lmf.json"))
        node = evidence["proof"]
        for step in path:
            node = node["children"][step]
        if value is None:
            del node[key]
        else:
            node[key] = value
        target = tmp_path / "corrupt.json"
        target.write_text(json.dumps(evidence), encoding="utf-8")
        assert run("check", target)[0] == EXIT_REJECTED

    def test_lmf_fixture_against_other_formula(self, run, fixture_text, tmp_path):
        evidence = json.loads(fixture_text("axiomK.lmf.json"))
        evidence["formula"] = "<>(p & ~r) | (<>~p | []q)"
        path = tmp_path / "swapped.json"
        path.write_text(json.dumps(evidence), encoding="utf-8")
        assert run("check", path)[0] == EXIT_REJECTED

    def test_missing_file(self, run, tmp_path):
        assert run("check", tmp_path / "nosuchfile.json")[0] == EXIT_INPUT

    def test_malformed_json(self, run, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"format": "lmf",', encoding="utf-8")
        assert run("check", path)[0] == EXIT_INPUT

    def test_oracle_validate(self, run, fixture_path):
        assert run("check", "--oracle-validate", fixture_path("axiomK.os.json"))[0] == EXIT_OK

    def test_verbose(self, run, fixture_path):
        assert run("-v", "check", fixture_path("excluded_middle.lmf.json"))[0] == EXIT_OK


class TestTrace:

    def test_golden_traces(self, run, fixture_path):
        assert run("check", "--trace", fixture_path("axiomK.lmf.json")) == (EXIT_OK, AXIOM_K_TRACE)
        assert run("trace", fixture_path("excluded_middle.lmf.json")) == (EXIT_OK, EXCLUDED_MIDDLE_TRACE)

    def test_labeled_sequents_share_the_lmf_trace(self, run, fixture_path):
        assert run("trace", fixture_path("axiomK.ls.json"))[1] == AXIOM_K_TRACE

    @pytest.mark.parametrize("name", ["axiomK.os.json", "axiomK.ns.json", "axiomK.lmfm.json"])
    def test_byte_identical_across_runs(self, run, fixture_path, name):
        first = run("trace", fixture_path(name))
        assert first[0] == EXIT_OK
        assert run("trace", fixture_path(name)) == first

    def test_rejected_prints_nothing(self, run, fixture_path):
        assert run("trace", fixture_path("axiomK.os.corrupt.json")) == (EXIT_REJECTED, "")


class TestTranslate:

    def test_os_to_lmfstar(self, run, fixture_path, fixture_text):
        code, out = run("translate", fixture_path("axiomK.os.json"), "--to", "lmfstar")
        assert code == EXIT_OK
        expected = parse_evidence(fixture_text("axiomK.lmfstar.json"))
        assert to_star_node(parse_evidence(out).proof) == to_star_node(expected.proof)

    def test_translation_checks_with_same_trace(self, run, fixture_path, tmp_path):
        _, original = run("trace", fixture_path("axiomK.os.json"))
        _, out = run("translate", fixture_path("axiomK.os.json"), "--to", "lmfstar")
        path = tmp_path / "star.json"
        path.write_text(out, encoding="utf-8")
        assert run("trace", path) == (EXIT_OK, original)

    def test_lmfstar_down_to_lmf(self, run, fixture_path, fixture_text):
        code, out = run("translate", fixture_path("axiomK.lmfstar.json"), "--to", "lmf")
        assert code == EXIT_OK
        expected = parse_evidence(fixture_text("axiomK.lmf.json"))
        assert to_lmf_node(parse_evidence(out).proof) == to_lmf_node(expected.proof)

    def test_lmf_to_lmfm_uses_singleton_groups(self, run, fixture_path):
        code, out = run("translate", fixture_path("excluded_middle.lmf.json"), "--to", "lmfm")
        assert code == EXIT_OK
        proof = json.loads(out)["proof"]
        assert (proof["group"], proof["children"][0]["group"]) == (1, 2)

    def test_no_path_to_lmfstar(self, run, fixture_path):
        assert run("translate", fixture_path("axiomK.lmf.json"), "--to", "lmfstar") == (EXIT_INPUT, "")

    def test_unknown_layer(self, run, fixture_path):
        assert run("translate", fixture_path("axiomK.lmf.json"), "--to", "os")[0] == EXIT_INPUT


class TestSearch:

    def test_found(self, run, tmp_path):
        code, out = run("search", "p | ~p")
        assert code == EXIT_OK
        evidence = json.loads(out)
        assert (evidence["format"], evidence["formula"]) == ("lmf", "p | ~p")
        path = tmp_path / "found.json"
        path.write_text(out, encoding="utf-8")
        assert run("trace", path) == (EXIT_OK, EXCLUDED_MIDDLE_TRACE)

    def test_axiom_k(self, run, tmp_path):
        code, out = run("search", AXIOM_K, "--budget", "16,100000")
        assert code == EXIT_OK
        path = tmp_path / "k.json"
        path.write_text(out, encoding="utf-8")
        assert run("trace", path) == (EXIT_OK, AXIOM_K_TRACE)

    def test_not_found(self, run):
        assert run("search", "<>p") == (EXIT_REJECTED, "")

    def test_budget_too_small(self, run):
        assert run("search", AXIOM_K, "--budget", "2,5")[0] == EXIT_REJECTED

    @pytest.mark.parametrize("argv", [
        ("search", "p |"),
        ("search", "p", "--budget", "x"),
        ("search", "p", "--budget", "0,10"),
    ])
    def test_bad_input(self, run, argv):
        assert run(*argv)[0] == EXIT_INPUT


class TestEnvironment:

    def test_invalid_setting(self, run, fixture_path, monkeypatch):
        monkeypatch.setenv("MODALCERT_KERNEL_LIMIT", "0")
        assert run("check", fixture_path("axiomK.lmf.json"))[0] == EXIT_INPUT

    def test_kernel_limit(self, run, fixture_path, monkeypatch):
        monkeypatch.setenv("MODALCERT_KERNEL_LIMIT", "1")
        assert run("check", fixture_path("axiomK.lmf.json"))[0] == EXIT_LIMIT

    def test_oracle_limit(self, run, fixture_path, monkeypatch):
        monkeypatch.setenv("MODALCERT_ORACLE_LIMIT", "1")
        assert run("check", "--oracle-validate", fixture_path("axiomK.lmf.json"))[0] == EXIT_LIMIT

    def test_search_budget(self, run, monkeypatch):
        monkeypatch.setenv("MODALCERT_SEARCH_MAX_DECIDES", "2")
        assert run("search", AXIOM_K)[0] == EXIT_REJECTED


class TestUsage:

    def test_no_command(self, run):
        assert run()[0] == EXIT_INPUT

    def test_unknown_command(self, run):
        assert run("prove", "p")[0] == EXIT_INPUT

    def test_help(self, run):
        code, out = run("--help")
        assert code == EXIT_OK
        assert "modalcert" in out

import json

import pytest
from hypothesis import given, settings

from conftest import AB, ABC, figure_eight, fold, subgroup_graphs
from subgroup_graphs.cli import main
from subgroup_graphs.core_graph import LabeledGraph
from subgroup_graphs.errors import InvalidArgument
from subgroup_graphs.io import export_dot, graph_from_json, graph_to_json, load_graph, save_text
from subgroup_graphs.stallings import canonical_bytes


@settings(max_examples=60, deadline=None)
@given(subgroup_graphs())
def test_json_round_trip(g):
    back = graph_from_json(graph_to_json(g))
    assert canonical_bytes(back) == canonical_bytes(g)
    assert graph_to_json(back) == graph_to_json(g)


def test_json_layout():
    text = graph_to_json(figure_eight())
    assert text == ('{"alphabet":["a","b"],"base":0,"vertices":[0],'
                    '"edges":[{"id":0,"from":0,"to":0,"label":0},{"id":1,"from":0,"to":0,"label":1}]}')


def test_bad_json_and_missing_file(tmp_path):
    with pytest.raises(InvalidArgument):
        graph_from_json("{not json")
    with pytest.raises(InvalidArgument):
        graph_from_json('{"alphabet":["a"]}')
    with pytest.raises(InvalidArgument, match="nope.json"):
        load_graph(tmp_path / "nope.json")


def test_dot_figure_eight():
    dot = export_dot(figure_eight())
    assert dot.startswith("digraph G {")
    assert dot.count("shape=") == 1 and "doublecircle" in dot
    assert dot.count("->") == 2
    assert 'label="a"' in dot and 'label="b"' in dot


def test_dot_empty_graph():
    assert export_dot(LabeledGraph(AB, [], [])) == "digraph G {\n}\n"


def test_dot_commutator_pair_counts(commutator_pair):
    dot = export_dot(commutator_pair)
    assert dot.count("shape=") == commutator_pair.num_vertices
    assert dot.count("->") == commutator_pair.num_edges == 8


@pytest.fixture
def commutator_pair_file(tmp_path, commutator_pair):
    p = tmp_path / "h.json"
    save_text(p, graph_to_json(commutator_pair))
    return p


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_and_analyze(capsys, tmp_path):
    out_json = tmp_path / "g.json"
    code, _, _ = run(capsys, "build", "--gens", "abAB,ABab", "--out-json", str(out_json), "--quiet")
    assert code == 0
    code, out, _ = run(capsys, "--json", "analyze", "--h", str(out_json))
    data = json.loads(out)
    assert code == 0 and data["rank"] == 2 and data["euler_characteristic"] == -1


def test_global_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "build", "--gens", "ab", "--json")
    assert code == 0 and json.loads(out)["alphabet"] == ["a", "b"]


def test_intersect_and_dot(capsys, tmp_path, commutator_pair_file):
    k = tmp_path / "k.json"
    save_text(k, graph_to_json(fold("a,bb")))
    dot = tmp_path / "i.dot"
    code, out, _ = run(capsys, "--json", "intersect", "--h", str(commutator_pair_file), "--k", str(k), "--dot", str(dot))
    assert code == 0
    assert json.loads(out)["bounds"]
    assert dot.read_text().startswith("digraph")


def test_inert_compressed_essential(capsys, commutator_pair_file):
    code, out, _ = run(capsys, "--json", "check-inert", "--h", str(commutator_pair_file))
    assert code == 0 and json.loads(out)["status"]
    code, out, _ = run(capsys, "--json", "check-compressed", "--h", str(commutator_pair_file))
    assert code == 0 and json.loads(out)["status"] in ("compressed_verified", "not_compressed", "unknown")
    code, out, _ = run(capsys, "--json", "essential", "--h", str(commutator_pair_file), "--injective")
    assert code == 0 and len(json.loads(out)["sets"]) == 1


def test_deflate_inflate_cli(capsys, tmp_path, commutator_pair_file):
    h = tmp_path / "placeholder.json"
    save_text(h, graph_to_json(fold("ab,c", ABC)))
    out = tmp_path / "d.json"
    code, text, _ = run(capsys, "--json", "deflate", "--h", str(h), "--edge", "0", "--out-json", str(out))
    assert code == 0 and json.loads(text)["arc_word"] == "ab"
    back = tmp_path / "i.json"
    code, _, _ = run(capsys, "inflate", "--h", str(out), "--edge", "0", "--word", "ab", "--out-json", str(back),
                     "--quiet")
    assert code == 0
    assert canonical_bytes(load_graph(back)) == canonical_bytes(load_graph(h))
    # a label shared with the rest of the graph is not a placeholder
    assert run(capsys, "deflate", "--h", str(commutator_pair_file), "--edge", "0")[0] == 1


def test_echelon_commands(capsys, commutator_pair_file):
    code, out, _ = run(capsys, "--json", "check-echelon", "--gens", "ab,aacb,ce", "--basis", "abcde")
    assert code == 0 and json.loads(out)["echelon"] is True
    code, out, _ = run(capsys, "--json", "check-generalized-echelon", "--h", str(commutator_pair_file))
    data = json.loads(out)
    assert code == 0 and data["certificate"] is not None
    assert data["abelianization"] == "not_echelon_by_abelianization"


def test_bridge_line_cli(capsys):
    spec = '{"left":"a","mid":"aaabbabaaa","marked":4,"right":"a"}'
    code, out, _ = run(capsys, "--json", "bridge-line", "--line", spec, "--order", "a<b")
    assert code == 0 and json.loads(out) == {"kind": "bridge_at", "index": 4, "is_marked": True}
    code, out, _ = run(capsys, "--json", "bridge-line", "--line", '{"left":"b","mid":"a","right":"a"}')
    assert json.loads(out)["kind"] == "no_maximum"


def test_export_dot_cli(capsys, commutator_pair_file):
    code, out, _ = run(capsys, "export-dot", "--h", str(commutator_pair_file))
    assert code == 0 and out.count("->") == 8


def test_exit_codes(capsys, tmp_path):
    # usage errors
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 1
    capsys.readouterr()
    assert run(capsys, "analyze", "--h", str(tmp_path / "missing.json"))[0] == 1
    assert run(capsys, "build", "--gens", "aq")[0] == 1
    assert run(capsys, "harness", "--suites", "nope")[0] == 1
    # a hand-made certificate violation surfaces as exit 2
    bad = tmp_path / "bad.json"
    save_text(bad, graph_to_json(fold("ab")))
    from subgroup_graphs import cli
    orig = cli.bound_report

    class Fake:
        all_satisfied = False
        rank_intersection = howson_bound = hn_weak_bound = hnc_bound = actual = 0

        def as_dict(self):
            return {}

    cli.bound_report = lambda h, k: Fake()
    try:
        assert run(capsys, "intersect", "--h", str(bad), "--k", str(bad))[0] == 2
    finally:
        cli.bound_report = orig


def test_harness_cli(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, _, err = run(capsys, "--seed", "3", "harness", "--trials", "3", "--opponents", "2",
                       "--report", str(report), "--quiet")
    assert code == 0 and "wall time" in err
    assert json.loads(report.read_text())["total_violations"] == 0
    code, out, _ = run(capsys, "harness", "--trials", "0")
    data = json.loads(out)
    assert code == 0 and data["total_violations"] == 0
    assert all(not s["counters"] for s in data["suites"].values())

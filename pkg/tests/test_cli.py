import json

import pytest

from wadefect import catalog
from wadefect.cli import main
from wadefect.scenario_io import (
    SchemaError,
    parse_scenario,
    result_document,
    scenario_document,
)
from wadefect.groups import full_subgroup
from wadefect.linalg import FinAbInvariants
from wadefect.modules import norm_one_module
from wadefect.zoo import klein


def write_scenario(tmp_path, doc, name="scenario.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def klein_doc():
    return catalog.catalog_document("klein-norm-one-both-places")


def load_json_output(capsys):
    return json.loads(capsys.readouterr().out)


class TestComputeCommand:
    def test_text_output(self, tmp_path, capsys):
        path = write_scenario(tmp_path, klein_doc())
        assert main(["compute", path]) == 0
        out = capsys.readouterr().out
        assert "result: Z/2" in out
        assert "invariant factors: [2]" in out

    def test_json_output(self, tmp_path, capsys):
        path = write_scenario(tmp_path, klein_doc())
        assert main(["compute", path, "--emit", "json"]) == 0
        doc = load_json_output(capsys)
        assert doc["invariant_factors"] == [2]
        assert doc["order"] == 2
        assert doc["pretty"] == "Z/2"
        assert doc["schema_version"] == 1

    def test_shortcut_tag_emitted(self, tmp_path, capsys):
        doc = catalog.catalog_document("quasi-trivial-free")
        path = write_scenario(tmp_path, doc)
        assert main(["compute", path, "--emit", "json"]) == 0
        out = load_json_output(capsys)
        assert out["invariant_factors"] == []
        assert out["shortcut"] == "free-module"

    def test_oracle_and_check_flags(self, tmp_path, capsys):
        path = write_scenario(tmp_path, klein_doc())
        assert main(["compute", path, "--oracle", "bar", "--check"]) == 0

    def test_missing_file_is_schema_error(self, capsys):
        assert main(["compute", "/nonexistent/path.json"]) == 1

    def test_unknown_member_rejected(self, tmp_path, capsys):
        doc = klein_doc()
        doc["surprise"] = 1
        path = write_scenario(tmp_path, doc)
        assert main(["compute", path]) == 1
        assert "schema error" in capsys.readouterr().err

    def test_non_integer_entry_rejected(self, tmp_path, capsys):
        doc = klein_doc()
        doc["module"]["relations"] = [[0.5, 0, 0]]
        path = write_scenario(tmp_path, doc)
        assert main(["compute", path]) == 1

    def test_validation_error_exit_code(self, tmp_path, capsys):
        doc = klein_doc()
        # break the action: doubling is not an automorphism
        doc["module"]["action"][0] = [[2, 0, 0], [0, 1, 0], [0, 0, 1]]
        path = write_scenario(tmp_path, doc)
        assert main(["compute", path]) == 2
        assert "validation error" in capsys.readouterr().err

    def test_bad_subgroup_exit_code(self, tmp_path, capsys):
        doc = klein_doc()
        doc["S"][0] = {"elements": [0, 1, 2]}
        path = write_scenario(tmp_path, doc)
        assert main(["compute", path]) == 2

    def test_group_cap_env(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("WA_DEFECT_GROUP_CAP", "3")
        path = write_scenario(tmp_path, klein_doc())
        assert main(["compute", path]) == 2
        monkeypatch.setenv("WA_DEFECT_GROUP_CAP", "100")
        assert main(["compute", path]) == 0

    def test_oracle_mismatch_exit_code(self, tmp_path, capsys, monkeypatch):
        # sabotage the bar route to prove the trap fires with exit code 3
        import wadefect.cli as cli_mod

        monkeypatch.setattr(cli_mod, "h1_bar", lambda M, H, **kw: FinAbInvariants((7,)))
        path = write_scenario(tmp_path, klein_doc())
        assert main(["compute", path, "--oracle", "bar"]) == 3
        assert "oracle mismatch" in capsys.readouterr().err


class TestH1Command:
    def test_full_selector(self, tmp_path, capsys):
        path = write_scenario(tmp_path, klein_doc())
        assert main(["h1", path, "--subgroup", "full", "--emit", "json"]) == 0
        assert load_json_output(capsys)["invariant_factors"] == [2]

    def test_s_index_selector(self, tmp_path, capsys):
        path = write_scenario(tmp_path, klein_doc())
        assert main(["h1", path, "--subgroup", "S0", "--emit", "json"]) == 0
        assert load_json_output(capsys)["invariant_factors"] == [2]

    def test_bare_index_selector(self, tmp_path, capsys):
        path = write_scenario(tmp_path, klein_doc())
        assert main(["h1", path, "--subgroup", "1", "--emit", "json"]) == 0
        assert load_json_output(capsys)["invariant_factors"] == [2]

    def test_order_two_subgroup_vanishes(self, tmp_path, capsys):
        doc = klein_doc()
        doc["S"].append({"elements": [0, 1]})
        path = write_scenario(tmp_path, doc)
        assert main(["h1", path, "--subgroup", "S2", "--emit", "json", "--oracle", "bar"]) == 0
        assert load_json_output(capsys)["invariant_factors"] == []

    def test_unknown_selector(self, tmp_path, capsys):
        path = write_scenario(tmp_path, klein_doc())
        assert main(["h1", path, "--subgroup", "nope"]) == 1
        assert main(["h1", path, "--subgroup", "S9"]) == 1

    def test_trivial_action_over_z2(self, tmp_path, capsys):
        # H_1 of Z/2 with trivial integer coefficients is Z/2
        doc = {
            "group": {"cayley_table": [[0, 1], [1, 0]]},
            "module": {"generators": 1, "relations": [], "action": [[[1]], [[1]]]},
            "S": [{"elements": [0, 1]}],
            "S_complement": [],
        }
        path = write_scenario(tmp_path, doc)
        assert main(["h1", path, "--subgroup", "full", "--emit", "json", "--oracle", "bar"]) == 0
        assert load_json_output(capsys)["invariant_factors"] == [2]


class TestCatalogCommand:
    def test_emits_valid_scenario(self, capsys):
        assert main(["catalog", "klein-norm-one-both-places"]) == 0
        doc = load_json_output(capsys)
        parse_scenario(doc)

    def test_write_then_compute(self, tmp_path, capsys):
        path = str(tmp_path / "k.json")
        assert main(["catalog", "klein-norm-one-both-places", "--write", path]) == 0
        capsys.readouterr()
        assert main(["compute", path, "--emit", "json"]) == 0
        assert load_json_output(capsys)["invariant_factors"] == [2]

    def test_unknown_name_lists_entries(self, capsys):
        assert main(["catalog", "no-such-entry"]) == 1
        err = capsys.readouterr().err
        for name in catalog.catalog_names():
            assert name in err

    def test_all_entries_round_trip_and_match_expected(self, tmp_path, capsys):
        from wadefect.engine import defect

        for name in catalog.catalog_names():
            doc = catalog.catalog_document(name)
            path = write_scenario(tmp_path, doc, name=f"{name}.json")
            sc_direct = parse_scenario(doc)
            sc_reread = parse_scenario(json.loads((tmp_path / f"{name}.json").read_text()))
            a = defect(sc_direct)
            b = defect(sc_reread)
            assert a.invariants == b.invariants
            assert a.invariants.factors == catalog.CATALOG_EXPECTED[name]

    def test_round_trip_output_bytes_modulo_timings(self, tmp_path, capsys):
        path = write_scenario(tmp_path, klein_doc())
        assert main(["compute", path, "--emit", "json"]) == 0
        first = load_json_output(capsys)
        assert main(["compute", path, "--emit", "json"]) == 0
        second = load_json_output(capsys)
        first.pop("timings_ms")
        second.pop("timings_ms")
        assert json.dumps(first) == json.dumps(second)


class TestSelfcheckCommand:
    def test_passes(self, capsys):
        assert main(["selfcheck", "--seed", "3"]) == 0
        out = capsys.readouterr().out
        assert "PASS catalog-values" in out
        assert "FAIL" not in out

    def test_corrupted_catalog_value_fails_by_name(self, capsys, monkeypatch):
        monkeypatch.setitem(catalog.CATALOG_EXPECTED, "klein-norm-one-both-places", (4,))
        assert main(["selfcheck"]) == 1
        out = capsys.readouterr().out
        assert "FAIL catalog-values" in out

    def test_seed_reproducible(self, capsys):
        assert main(["selfcheck", "--seed", "11"]) == 0
        first = capsys.readouterr().out
        assert main(["selfcheck", "--seed", "11"]) == 0
        assert capsys.readouterr().out == first


class TestScenarioParsing:
    def test_int_str_fallback(self, tmp_path):
        doc = klein_doc()
        doc["module"]["relations"] = []
        doc["module"]["generators"] = "3"
        sc = parse_scenario(doc)
        assert sc.module.n == 3

    def test_big_integers_accepted(self):
        doc = klein_doc()
        big = 10**30
        # big * Z^3 is stable under any integral action
        doc["module"]["relations"] = [[str(big), 0, 0], [0, big, 0], [0, 0, str(-big)]]
        sc = parse_scenario(doc)
        assert sc.module.relations[0, 0] == big

    def test_bool_rejected(self):
        doc = klein_doc()
        doc["module"]["generators"] = True
        with pytest.raises(SchemaError):
            parse_scenario(doc)

    def test_wrong_schema_version(self):
        doc = klein_doc()
        doc["schema_version"] = 2
        with pytest.raises(SchemaError):
            parse_scenario(doc)

    def test_generator_words_subgroup(self):
        doc = klein_doc()
        doc["S"] = [{"generator_words": [[0], [1]]}]
        sc = parse_scenario(doc)
        assert sc.s_subgroups[0].elements == (0, 1, 2, 3)

    def test_cayley_table_group(self):
        G = klein()
        doc = {
            "group": {"cayley_table": [list(r) for r in G.table]},
            "module": {
                "generators": 1,
                "relations": [],
                "action": [[[1]], [[-1]], [[-1]], [[1]]],
            },
            "S": [{"elements": [0, 1, 2, 3]}],
            "S_complement": [],
        }
        sc = parse_scenario(doc)
        assert sc.group.order == 4
        assert len(sc.module.action) == 4

    def test_exactly_one_group_encoding(self):
        doc = klein_doc()
        doc["group"]["cayley_table"] = [[0]]
        with pytest.raises(SchemaError):
            parse_scenario(doc)

    def test_subgroup_needs_exactly_one_member(self):
        doc = klein_doc()
        doc["S"][0] = {"elements": [0], "generator_words": [[0]]}
        with pytest.raises(SchemaError):
            parse_scenario(doc)

    def test_result_document_order_is_product(self):
        doc = result_document(FinAbInvariants((2, 4)))
        assert doc["order"] == 8
        assert doc["pretty"] == "Z/2 x Z/4"
        trivial = result_document(FinAbInvariants())
        assert trivial["order"] == 1 and trivial["pretty"] == "0"

    def test_scenario_document_round_trip(self):
        G = klein()
        doc = scenario_document(
            permutation_generators=[(1, 0, 3, 2), (2, 3, 0, 1)],
            module=norm_one_module(G),
            s_subgroups=[full_subgroup(G)],
        )
        sc = parse_scenario(doc)
        assert sc.group.order == 4
        assert sc.module.n == 3

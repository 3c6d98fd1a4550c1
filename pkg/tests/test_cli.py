import json

import pytest

from autrealize.cli import (
    EXIT_BUDGET,
    EXIT_CAP,
    EXIT_OK,
    EXIT_PARSE,
    expand_named,
    main,
    parse_group_spec,
)
from autrealize.errors import SpecParseError


class TestExpandNamed:
    def test_symmetric(self):
        assert expand_named("S3") == (3, ["(1 2)", "(1 2 3)"])
        assert expand_named("S2") == (2, ["(1 2)"])
        assert expand_named("S1") == (1, ["()"])

    def test_cyclic(self):
        assert expand_named("C4") == (4, ["(1 2 3 4)"])
        assert expand_named("C1") == (1, ["()"])

    def test_alternating(self):
        assert expand_named("A4") == (4, ["(1 2 3)", "(2 3 4)"])
        assert expand_named("A3") == (3, ["(1 2 3)"])

    def test_v4(self):
        assert expand_named("V4") == (4, ["(1 2)(3 4)", "(1 3)(2 4)"])

    def test_unknown(self):
        for bad in ("D4", "S", "Sx", "S0"):
            with pytest.raises(SpecParseError):
                expand_named(bad)


class TestParseGroupSpec:
    def test_two_generators(self):
        G, strings = parse_group_spec(3, "(1 2);(1 2 3)")
        assert G.order == 6 and strings == ["(1 2)", "(1 2 3)"]

    def test_missing_n(self):
        with pytest.raises(SpecParseError):
            parse_group_spec(None, "(1 2)")

    def test_empty(self):
        with pytest.raises(SpecParseError):
            parse_group_spec(3, "")


class TestRealizeCommand:
    def test_trivial_to_stdout(self, capsys):
        code = main(["realize", "--n", "1", "--gens", "()", "--count", "1",
                     "--t-max", "5"])
        assert code == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["format"] == "autrealize-certificate"
        accepted = [s for s in data["specializations"] if s["status"] == "accepted"]
        assert len(accepted) == 1
        # t0 = 1 gives X^3 + X + 1
        assert accepted[0]["t0"] == "1"
        assert accepted[0]["defining_polynomial"] == ["1", "1", "0", "1"]

    def test_named_conflict(self, capsys):
        assert main(["realize", "--named", "S2", "--n", "3"]) == EXIT_PARSE

    def test_bad_gens(self, capsys):
        assert main(["realize", "--n", "3", "--gens", "(1 9)"]) == EXIT_PARSE

    def test_cap(self, capsys):
        assert main(["realize", "--named", "S5"]) == EXIT_CAP

    def test_budget(self, capsys):
        code = main(["realize", "--n", "1", "--gens", "()", "--count", "50",
                     "--t-max", "2"])
        assert code == EXIT_BUDGET
        assert "t0=" in capsys.readouterr().err


@pytest.fixture(scope="module")
def cert_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("certs") / "trivial.json"
    code = main(["realize", "--named", "C1", "--count", "2", "--t-max", "10",
                 "--out", str(path)])
    assert code == EXIT_OK
    return path


class TestValidateCommand:
    def test_valid(self, cert_path, capsys):
        assert main(["validate", str(cert_path)]) == EXIT_OK
        out = capsys.readouterr().out
        assert "certificate valid" in out
        assert "[FAIL]" not in out

    def test_tampered_table(self, cert_path, tmp_path, capsys):
        data = json.loads(cert_path.read_text())
        for spec in data["specializations"]:
            if spec["status"] == "accepted":
                # break a generator image: no longer a root of q0
                spec["automorphisms"]["generator_images"][0] = ["1", "1", "1"]
        bad = tmp_path / "tampered.json"
        bad.write_text(json.dumps(data))
        assert main(["validate", str(bad)]) == EXIT_PARSE
        out = capsys.readouterr().out
        assert "certificate INVALID" in out and "[FAIL]" in out

    def test_wrong_format(self, tmp_path, capsys):
        bad = tmp_path / "junk.json"
        bad.write_text('{"format": "something-else"}')
        assert main(["validate", str(bad)]) == EXIT_PARSE

    def test_unreadable(self, tmp_path, capsys):
        assert main(["validate", str(tmp_path / "missing.json")]) == EXIT_PARSE

    def test_deep(self, cert_path, capsys):
        assert main(["validate", str(cert_path), "--deep"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "deep: q matches" in out


class TestCanonicalEmission:
    def test_reemission_is_byte_stable(self, cert_path):
        from autrealize.certs import dumps_canonical

        text = cert_path.read_text()
        assert dumps_canonical(json.loads(text)) == text

    def test_repeat_run_identical(self, tmp_path):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        for path in (a, b):
            assert main(["realize", "--named", "C1", "--count", "1",
                         "--t-max", "5", "--out", str(path)]) == EXIT_OK
        assert a.read_bytes() == b.read_bytes()

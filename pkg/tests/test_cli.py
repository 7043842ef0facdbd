import json
import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

import pytest
from click.testing import CliRunner, Result

from hopf.cli import cli
from hopf.errors import InvalidParameters
from workbench.config import get_settings

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def _run(*args: str) -> Result:
    return CliRunner().invoke(cli, list(args))


def _fields(output: str) -> dict:
    return dict(line.split("=", 1) for line in output.splitlines() if "=" in line)


def test_epi_on_inclusion_fixture_reports_no() -> None:
    result = _run("epi", str(FIXTURES / "kz2_into_kz4.json"), "--report", "machine")
    assert result.exit_code == 0, result.output
    fields = _fields(result.output)
    assert fields["status"] == "no"
    assert fields["witness"] == "1⊗g − g⊗1"
    print("✅ epi kZ2 -> kZ4 rejected")


def test_free_hopf_on_two_grouplikes() -> None:
    result = _run("free-hopf", str(FIXTURES / "two_grouplikes.json"), "--degree", "3", "--slack", "2",
                  "--report", "machine")
    assert result.exit_code == 0, result.output
    fields = _fields(result.output)
    assert fields["dims"] == "1,5,17,53"
    assert fields["stable"] == "true"
    assert fields["unit_arrow_injective"] == "true"


def test_antipode_of_idempotent_monoid_is_no() -> None:
    result = _run("antipode", str(FIXTURES / "idempotent_monoid.json"), "--report", "machine")
    assert result.exit_code == 0
    assert _fields(result.output)["status"] == "no"


def test_antipode_of_sweedler_example() -> None:
    result = _run("antipode", "example:sweedler", "--report", "machine")
    fields = _fields(result.output)
    assert fields["status"] == "yes"
    assert fields["order"] == "4"
    assert fields["bijective"] == "true"


def test_text_report() -> None:
    result = _run("coradical", "example:sweedler")
    assert result.exit_code == 0
    assert result.output.startswith("✅ coradical: ok - dim H_0 = 2")


def test_flat_on_corpus_entry() -> None:
    result = _run("flat", "corpus:kz2_into_kz4", "--report", "machine")
    fields = _fields(result.output)
    assert fields["status"] == "yes"
    assert fields["certificate"] == "1,g"


def test_free_hopf_bialg_on_idempotent_monoid() -> None:
    result = _run("free-hopf-bialg", "example:idempotent_monoid", "--report", "machine")
    fields = _fields(result.output)
    assert fields["dims"] == "1,1,1"
    assert fields["unit_arrow_kernel"] == "z − 1"


def test_errors_exit_with_code_one() -> None:
    result = _run("check", str(FIXTURES / "missing.json"))
    assert result.exit_code == 1
    assert "❌" in result.output
    result = _run("antipode", "example:quaternions")
    assert result.exit_code == 1
    result = _run("coradical", "example:sweedler", "--field", "p:3")
    assert result.exit_code == 1


def test_export_round_trip(tmp_path: Path) -> None:
    out = tmp_path / "h4.json"
    assert _run("export", "example:sweedler", str(out)).exit_code == 0
    result = _run("check", str(out), "--report", "machine")
    fields = _fields(result.output)
    assert fields["status"] == "yes" and fields["level"] == "hopf"

    morphism = tmp_path / "f.json"
    assert _run("export", "corpus:kz4_onto_kz2", str(morphism)).exit_code == 0
    result = _run("mono", str(morphism), "--report", "machine")
    assert _fields(result.output)["status"] == "no"


def test_version() -> None:
    result = _run("--version")
    assert result.exit_code == 0
    assert "hopf-lab" in result.output


def test_malformed_residue_is_reported_with_its_field(tmp_path: Path) -> None:
    data = json.loads((FIXTURES / "kz2.json").read_text(encoding="utf-8"))
    data["mult"][3] = [1, 1, 0, "abc mod 7"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data), encoding="utf-8")
    result = _run("check", str(bad))
    assert result.exit_code == 1
    assert "❌" in result.output
    assert "mult[3]" in result.output


def test_bad_environment_only_fails_when_settings_are_read(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("HOPF_MAX_ORDER", "-3")
    get_settings.cache_clear()
    try:
        assert _run("--help").exit_code == 0
        result = _run("antipode", "example:sweedler")
        assert result.exit_code == 1
        assert "HOPF_MAX_ORDER" in result.output
        with pytest.raises(InvalidParameters):
            get_settings()
    finally:
        monkeypatch.undo()
        get_settings.cache_clear()

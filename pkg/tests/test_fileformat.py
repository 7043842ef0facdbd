import json
import sys
from pathlib import Path
sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

import pytest

from hopf.errors import AxiomError, FileFormatError, UnverifiedMorphism
from hopf.examples import cyclic_group_algebra, cyclic_inclusion, sweedler, taft
from hopf.fileformat import dumps, load, load_morphism, load_object, object_to_model, save, save_morphism
from hopf.scalars import FieldSpec
from hopf.structures import Bialgebra, HopfAlgebra, LinearMap

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def _write(path: Path, data: dict) -> Path:
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


def test_load_sweedler_fixture() -> None:
    h = load_object(FIXTURES / "sweedler.json")
    assert isinstance(h, HopfAlgebra)
    built = sweedler()
    assert h.names == built.names
    assert h.algebra.mult == built.algebra.mult
    assert h.coalgebra.comult == built.coalgebra.comult
    assert h.antipode == built.antipode
    print("✅ sweedler fixture matches the built-in example")


def test_load_dispatches_on_kind() -> None:
    f = load(FIXTURES / "kz2_into_kz4.json")
    assert isinstance(f, LinearMap)
    assert f.label == "kZ2->kZ4"
    assert isinstance(load(FIXTURES / "idempotent_monoid.json"), Bialgebra)
    f, level = load_morphism(FIXTURES / "kz4_onto_kz2.json")
    assert level == "hopf" and f.matrix.rows == 2


def test_save_load_save_is_byte_stable(tmp_path: Path) -> None:
    for x in (sweedler(), taft(3, 3, FieldSpec.prime(13)), load_object(FIXTURES / "two_grouplikes.json")):
        first = tmp_path / "first.json"
        save(x, first)
        second = tmp_path / "second.json"
        save(load_object(first), second)
        assert first.read_bytes() == second.read_bytes()
    assert '"3 mod 13"' in dumps(object_to_model(taft(3, 3, FieldSpec.prime(13))))


def test_hopf_file_without_antipode_is_solved(tmp_path: Path) -> None:
    data = json.loads((FIXTURES / "kz2.json").read_text(encoding="utf-8"))
    del data["antipode"]
    h = load_object(_write(tmp_path / "kz2.json", data))
    assert h.antipode == cyclic_group_algebra(2).antipode


def test_hopf_file_without_possible_antipode_is_rejected(tmp_path: Path) -> None:
    data = json.loads((FIXTURES / "idempotent_monoid.json").read_text(encoding="utf-8"))
    data["level"] = "hopf"
    with pytest.raises(AxiomError):
        load_object(_write(tmp_path / "idem.json", data))


def test_corrupt_entry_names_its_location(tmp_path: Path) -> None:
    data = json.loads((FIXTURES / "kz2.json").read_text(encoding="utf-8"))
    data["mult"][3] = [1, 1, 5, "1"]
    with pytest.raises(FileFormatError) as err:
        load_object(_write(tmp_path / "bad.json", data))
    assert "mult[3]" in str(err.value)

    data = json.loads((FIXTURES / "kz2.json").read_text(encoding="utf-8"))
    data["counit"] = ["1", "one"]
    with pytest.raises(FileFormatError) as err:
        load_object(_write(tmp_path / "bad_scalar.json", data))
    assert "counit[1]" in str(err.value)


def test_malformed_residue_names_its_location(tmp_path: Path) -> None:
    data = json.loads((FIXTURES / "kz2.json").read_text(encoding="utf-8"))
    data["field"] = "p:7"
    data["mult"][3] = [1, 1, 0, "abc mod 7"]
    with pytest.raises(FileFormatError) as err:
        load_object(_write(tmp_path / "bad_residue.json", data))
    assert "mult[3]" in str(err.value)
    assert "abc mod 7" in str(err.value)

    data["mult"][3] = [1, 1, 0, "1 mod seven"]
    with pytest.raises(FileFormatError) as err:
        load_object(_write(tmp_path / "bad_modulus.json", data))
    assert "mult[3]" in str(err.value)


def test_schema_violations(tmp_path: Path) -> None:
    with pytest.raises(FileFormatError):
        load_object(_write(tmp_path / "v2.json", {"format_version": 2, "level": "algebra", "dim": 1}))
    with pytest.raises(FileFormatError):
        load_object(_write(tmp_path / "dim0.json", {"format_version": 1, "level": "algebra", "dim": 0}))
    with pytest.raises(FileFormatError):
        load_object(tmp_path / "missing.json")


def test_non_coassociative_coalgebra_is_rejected(tmp_path: Path) -> None:
    data = {
        "format_version": 1,
        "level": "coalgebra",
        "dim": 3,
        "basis": ["e0", "e1", "e2"],
        "comult": [
            [0, 0, 0, "1"],
            [1, 1, 0, "1"], [1, 0, 1, "1"],
            [2, 2, 0, "1"], [2, 0, 2, "1"], [2, 1, 2, "1"],
        ],
        "counit": ["1", "0", "0"],
    }
    with pytest.raises(AxiomError) as err:
        load_object(_write(tmp_path / "c.json", data))
    assert "coassociativity fails at e2" in str(err.value)


def test_morphism_file_is_revalidated(tmp_path: Path) -> None:
    f = cyclic_inclusion(2, 4)
    save(f.source, tmp_path / "a.json")
    save(f.target, tmp_path / "b.json")
    save_morphism(f, "hopf", tmp_path / "f.json", "a.json", "b.json")
    loaded, level = load_morphism(tmp_path / "f.json")
    assert loaded.matrix == f.matrix and level == "hopf"

    data = json.loads((tmp_path / "f.json").read_text(encoding="utf-8"))
    data["matrix"] = [["1", "0"], ["0", "1"], ["0", "0"], ["0", "0"]]
    with pytest.raises(UnverifiedMorphism):
        load_morphism(_write(tmp_path / "g.json", data))


def test_every_object_fixture_round_trips(tmp_path: Path) -> None:
    for path in sorted(FIXTURES.glob("*.json")):
        if json.loads(path.read_text(encoding="utf-8"))["kind"] != "object":
            continue
        first, second = tmp_path / f"{path.stem}.1.json", tmp_path / f"{path.stem}.2.json"
        save(load_object(path), first)
        save(load_object(first), second)
        assert first.read_bytes() == second.read_bytes(), path.name

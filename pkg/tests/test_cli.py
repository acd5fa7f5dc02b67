import pytest

from cayspec.cli import main, parse_instance
from cayspec.errors import ParseError
from conftest import instance_path


def machine_block(text: str) -> dict[str, str]:
    lines = text.splitlines()
    start = lines.index("--- report ---") + 1
    end = lines.index("--- end ---")
    out = {}
    for line in lines[start:end]:
        key, _, value = line.partition(" = ")
        out[key] = value
    return out


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- parsing -------------------------------------------------------------------


def test_parse_zero_denominator():
    text = "[group]\nkind = cyclic\nn = 4\n\n[colour]\n1 = 1/0\n3 = 1/0\n"
    with pytest.raises(ParseError) as err:
        parse_instance(text)
    assert err.value.line == 6


def test_parse_unknown_section():
    with pytest.raises(ParseError):
        parse_instance("[grp]\nkind = cyclic\n")


def test_parse_unknown_group_parameter():
    with pytest.raises(ParseError):
        parse_instance("[group]\nkind = cyclic\nn = 4\nm = 2\n\n[colour]\n")


def test_parse_unknown_element():
    text = "[group]\nkind = dihedral\nm = 4\n\n[connection]\nelements = q\n"
    with pytest.raises(ParseError):
        parse_instance(text)


def test_parse_conflicting_assignment():
    text = "[group]\nkind = cyclic\nn = 5\n\n[colour]\nclass(1) = 1\n1 = 2\n"
    with pytest.raises(ParseError):
        parse_instance(text)


def test_parse_content_before_section():
    with pytest.raises(ParseError):
        parse_instance("kind = cyclic\n")


def test_parse_requires_one_payload_section():
    with pytest.raises(ParseError):
        parse_instance("[group]\nkind = cyclic\nn = 4\n")


def test_parse_quoted_class_key():
    text = '[group]\nkind = dihedral\nm = 4\n\n[colour]\nclass("a") = 1\nclass(b) = 2\nclass(b*a) = 3\n'
    doc = parse_instance(text)
    G = doc.group
    assert doc.colour.value(G.element_index("a^3")) == 1
    assert doc.colour.value(G.element_index("b*a^2")) == 2


def test_search_multisets(capsys):
    code, out, _ = run(
        capsys, "search", "--group", "dihedral:5", "--multisets", "2"
    )
    assert code == 0
    block = machine_block(out)
    assert block["search.mode"] == "multisets"
    assert block["search.count"] == str(3**3 - 1)
    assert block["set.1.elements"].count(";") >= 0


def test_parse_generated_group():
    text = (
        "[group]\nkind = generated\ngenerators = (0 1 2 3); (0 2)\n\n"
        "[connection]\nelements = (0 2)(1 3)\n"
    )
    doc = parse_instance(text)
    assert doc.group.order == 8
    assert doc.connection.valency() == 1


@pytest.mark.parametrize(
    "name",
    ["d8_alpha.txt", "d8_beta.txt", "d5_s1.txt", "d5_s2.txt", "z5_pentagon.txt"],
)
def test_canonical_roundtrip(name):
    with open(instance_path(name), encoding="utf-8") as fh:
        doc = parse_instance(fh.read())
    canonical = doc.canonical_text()
    again = parse_instance(canonical)
    assert again.canonical_text() == canonical


# -- commands ------------------------------------------------------------------


def test_spectrum_alpha(capsys):
    code, out, _ = run(capsys, "spectrum", instance_path("d8_alpha.txt"))
    assert code == 0
    block = machine_block(out)
    assert block["spectrum.exact.1.value"] == "241/5"
    assert block["spectrum.exact.3.embedding"] == "0.5656854249"
    assert block["spectrum.match"] == "true"
    assert block["verdict.rational"] == "false"


def test_spectrum_s2_integral(capsys):
    code, out, _ = run(capsys, "spectrum", instance_path("d5_s2.txt"))
    assert code == 0
    block = machine_block(out)
    assert block["spectrum.exact.count"] == "2"
    assert block["spectrum.exact.1.value"] == "8"
    assert block["spectrum.exact.1.multiplicity"] == "2"
    assert block["spectrum.exact.2.multiplicity"] == "8"
    assert block["verdict.integral"] == "true"


def test_spectrum_unsupported_family_downgrades(capsys, tmp_path):
    path = tmp_path / "gen.txt"
    path.write_text(
        "[group]\nkind = generated\ngenerators = (0 1 2 3); (0 2)\n\n"
        "[connection]\nelements = (0 2)(1 3)\n",
        encoding="utf-8",
    )
    code, out, err = run(capsys, "spectrum", str(path))
    assert code == 0
    assert "numeric spectrum only" in err
    block = machine_block(out)
    assert block["spectrum.exact.count"] == "unavailable"
    assert "spectrum.numeric" in block


def test_degree_alpha(capsys):
    code, out, _ = run(capsys, "degree", instance_path("d8_alpha.txt"))
    assert code == 0
    block = machine_block(out)
    assert block["H.members"] == "1,7,9,15"
    assert block["degree"] == "2"
    assert block["field.minpoly"] == "t^2 - 8"


def test_degree_s1(capsys):
    code, out, _ = run(capsys, "degree", instance_path("d5_s1.txt"))
    assert code == 0
    block = machine_block(out)
    assert block["H.members"] == "1,9"
    assert block["degree"] == "2"


def test_degree_constant_colour(capsys, tmp_path):
    path = tmp_path / "const.txt"
    path.write_text(
        "[group]\nkind = cyclic\nn = 6\n\n[colour]\n"
        + "".join(f"class({k}) = 3\n" for k in range(6)),
        encoding="utf-8",
    )
    code, out, _ = run(capsys, "degree", str(path))
    assert code == 0
    assert machine_block(out)["degree"] == "1"


def test_distance_pentagon(capsys):
    code, out, _ = run(capsys, "distance", instance_path("z5_pentagon.txt"))
    assert code == 0
    block = machine_block(out)
    assert block["distance.diameter"] == "2"
    assert block["distance.layer.1"] == "1;4"
    assert block["H_prime.members"] == "1,4"
    assert block["distance.degree"] == "2"


def test_distance_disconnected(capsys, tmp_path):
    path = tmp_path / "z6.txt"
    path.write_text(
        "[group]\nkind = cyclic\nn = 6\n\n[connection]\nelements = 2, 4\n",
        encoding="utf-8",
    )
    code, _, err = run(capsys, "distance", str(path))
    assert code == 2
    assert "does not reach" in err


def test_distance_rejects_multiset(capsys):
    code, _, err = run(capsys, "distance", instance_path("d5_s1.txt"))
    assert code == 2
    assert "simple" in err


def test_check_subgroup(capsys):
    code, out, _ = run(
        capsys, "check", instance_path("d8_alpha.txt"), "--subgroup", "7,9"
    )
    assert code == 0
    block = machine_block(out)
    assert block["H_K.members"] == "1,7,9,15"
    assert block["integral_over_K"] == "true"

    code, out, _ = run(
        capsys, "check", instance_path("d8_alpha.txt"), "--subgroup", "3"
    )
    assert machine_block(out)["integral_over_K"] == "false"

    code, out, _ = run(capsys, "check", instance_path("d8_alpha.txt"))
    block = machine_block(out)
    assert block["H_K.members"] == "1"
    assert block["integral_over_K"] == "true"


def test_check_rejects_non_unit(capsys):
    code, _, err = run(
        capsys, "check", instance_path("d8_alpha.txt"), "--subgroup", "6"
    )
    assert code == 2
    assert "unit" in err


def test_search_d4_negative_verdict(capsys):
    code, out, _ = run(capsys, "search", "--group", "dihedral:4", "--degree", "2")
    assert code == 1
    block = machine_block(out)
    assert block["search.count"] == "15"
    assert block["search.witness"] == "none"

    code, _, _ = run(
        capsys, "search", "--group", "dihedral:4", "--degree", "2", "--connected"
    )
    assert code == 1


def test_search_finds_witness(capsys):
    code, out, _ = run(capsys, "search", "--group", "cyclic:16", "--degree", "4")
    assert code == 0
    assert machine_block(out)["search.witness"] != "none"


def test_search_jobs_determinism(capsys):
    _, out1, _ = run(capsys, "search", "--group", "cyclic:12", "--jobs", "1")
    _, out8, _ = run(capsys, "search", "--group", "cyclic:12", "--jobs", "8")
    assert out1 == out8


def test_search_respects_limit(capsys):
    code, _, err = run(
        capsys, "search", "--group", "cyclic:30", "--limit", "16"
    )
    assert code == 2
    assert "exceeds" in err


def test_search_bad_group(capsys):
    code, _, err = run(capsys, "search", "--group", "foo")
    assert code == 2


def test_out_flag_writes_file(capsys, tmp_path):
    target = tmp_path / "report.txt"
    code, out, _ = run(
        capsys, "degree", instance_path("d8_beta.txt"), "--out", str(target)
    )
    assert code == 0
    assert out == ""
    text = target.read_text(encoding="utf-8")
    assert "--- report ---" in text
    assert machine_block(text)["degree"] == "1"


def test_missing_file(capsys):
    code, _, err = run(capsys, "degree", "/nonexistent/file.txt")
    assert code == 2


def test_exact_numeric_mismatch_exits_three(capsys, monkeypatch):
    import cayspec.cli as cli_mod

    real = cli_mod.spectrum_numeric

    def perturbed(f, **kwargs):
        values = real(f, **kwargs)
        values[0] += 1e-2
        return values

    monkeypatch.setattr(cli_mod, "spectrum_numeric", perturbed)
    code, out, _ = run(capsys, "spectrum", instance_path("d8_beta.txt"))
    assert code == 3
    assert machine_block(out)["spectrum.match"] == "false"


def test_trivial_group_spectrum(capsys, tmp_path):
    path = tmp_path / "trivial.txt"
    path.write_text(
        "[group]\nkind = cyclic\nn = 1\n\n[colour]\nclass(0) = 7\n",
        encoding="utf-8",
    )
    code, out, _ = run(capsys, "spectrum", str(path))
    assert code == 0
    block = machine_block(out)
    assert block["spectrum.exact.1.value"] == "7"
    assert block["spectrum.exact.1.multiplicity"] == "1"

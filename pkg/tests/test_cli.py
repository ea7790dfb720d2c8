from amalgam.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_props_human(capsys):
    code, out, _ = run_cli(capsys, "props", "zmod(8)")
    assert code == 0
    assert "chain ring           yes" in out
    assert "arithmetical         yes" in out
    assert "gaussian             yes" in out
    assert "prufer               yes" in out
    assert "maximal ideal {0,2,4,6}" in out


def test_props_non_local(capsys):
    code, out, _ = run_cli(capsys, "props", "zmod(6)")
    assert code == 0
    assert "local                no" in out


def test_props_machine_with_oracle(capsys):
    code, out, _ = run_cli(capsys, "props", "zmod(6)", "--machine", "--oracle-degree", "2")
    assert code == 0
    assert out.startswith("kind=props expr=zmod(6) size=6 local=false")
    assert "oracle_gaussian=true" in out
    assert "\n" == out[-1]


def test_props_witness(capsys):
    code, out, _ = run_cli(capsys, "props", "trivext(zmod(4);regular)", "--witness")
    assert code == 0
    assert "gaussian             no" in out
    assert "gaussian witness" in out
    assert "arithmetical witness" in out


def test_parse_error_exit_code(capsys):
    code, out, err = run_cli(capsys, "props", "zmod(0)")
    assert code == 2
    assert "parse error" in err


def test_cap_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "props", "zmod(5000)")
    assert code == 2
    assert "cap exceeded" in err


def test_eval_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "props", "trivext(zmod(6);resfield(1))")
    assert code == 2
    assert "local" in err


def test_verify_unknown_clause(capsys):
    code, _, err = run_cli(capsys, "verify", "thm-9", "dup(zmod(4);2)")
    assert code == 2
    assert "unknown clause" in err


def test_verify_single_instance(capsys):
    code, out, _ = run_cli(capsys, "verify", "cor-2.3", "dup(zmod(8);2)")
    assert code == 0
    assert "verified" in out
    code, out, _ = run_cli(capsys, "verify", "thm-2.1:2", "dup(zmod(8);2)", "--machine")
    assert code == 0
    assert "status=hypotheses-unmet" in out


def test_verify_requires_instance_or_catalog(capsys):
    code, _, err = run_cli(capsys, "verify", "lemma-2.2")
    assert code == 2
    assert "instance expression or --catalog" in err


def test_encode_command(capsys):
    code, out, _ = run_cli(capsys, "encode", "trivext(zmod(2);resfield(1))")
    assert code == 0
    assert "size 4" in out
    assert "(1|[0])" in out
    code, out, _ = run_cli(capsys, "encode", "zmod(4)", "--machine")
    assert out.splitlines()[2] == "kind=encode expr=zmod(4) index=2 name=2"


def test_grammar_command(capsys):
    code, out, _ = run_cli(capsys, "grammar")
    assert code == 0
    assert 'ring   := "zmod(" INT ")"' in out
    assert 'hom    := "id" | "proj" | "embed" | "compose(" hom "," hom ")"' in out


def test_timing_goes_to_stderr(capsys):
    code, out, err = run_cli(capsys, "props", "zmod(4)", "--timing")
    assert code == 0
    assert "timing" in err
    assert "timing" not in out


def test_cli_byte_determinism(capsys):
    args = ("verify", "cor-2.3", "--catalog", "--machine", "--max-lattice-size", "64")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2

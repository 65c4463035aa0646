import pytest

from mooredual.cli import run_cli, to_dot
from mooredual.machine import parse_machine
from mooredual.substitution import parse_substitution

from conftest import DATA, read_data, read_golden

EXAMPLE = str(DATA / "example.moore")
EXAMPLE_MIN = str(DATA / "example_min.moore")
EXAMPLE_BAD = str(DATA / "example_bad.moore")
EXAMPLE_MISSING = str(DATA / "example_missing.moore")
FIB = str(DATA / "fib.subst")
THREE = str(DATA / "threeletter.subst")


def run(capsys, *argv):
    code = run_cli(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- moore subcommands ---------------------------------------------------------

def test_validate(capsys):
    code, out, _ = run(capsys, "moore", "validate", EXAMPLE)
    assert code == 0
    assert out == "ok: 3 states, 2 inputs, 2 outputs\n"


def test_run_right(capsys):
    code, out, _ = run(capsys, "moore", "run", EXAMPLE, "--word", "001")
    assert (code, out) == (0, "1\n")


def test_run_left(capsys):
    code, out, _ = run(capsys, "moore", "run", EXAMPLE, "--word", "001", "--side", "left")
    assert (code, out) == (0, "0\n")


def test_minimize_golden(capsys):
    code, out, _ = run(capsys, "moore", "minimize", EXAMPLE)
    assert code == 0
    assert out == read_golden("moore_minimize_example.txt")


def test_dual_golden(capsys):
    code, out, _ = run(capsys, "moore", "dual", EXAMPLE)
    assert code == 0
    assert out == read_golden("moore_dual_example.txt")


def test_normal_golden(capsys):
    code, out, _ = run(capsys, "moore", "normal", EXAMPLE)
    assert code == 0
    assert out == read_golden("moore_normal_example.txt")


def test_product_golden(capsys):
    code, out, _ = run(capsys, "moore", "product", EXAMPLE, EXAMPLE, "--combine", "pair")
    assert code == 0
    assert out == read_golden("moore_product_example_pair.txt")


def test_dot_golden(capsys):
    code, out, _ = run(capsys, "moore", "dot", EXAMPLE)
    assert code == 0
    assert out == read_golden("moore_dot_example.txt")
    # deterministic across runs
    code2, out2, _ = run(capsys, "moore", "dot", EXAMPLE)
    assert out2 == out


def test_dot_counts(paper):
    text = to_dot(paper)
    assert text.count("[label=") == 3 + 6  # one node each + one edge per (state, input)
    assert "__start" in text


def test_equiv_positive(capsys):
    code, out, _ = run(capsys, "moore", "equiv", EXAMPLE, EXAMPLE_MIN)
    assert (code, out) == (0, "equivalent\n")


def test_equiv_negative(capsys):
    code, out, _ = run(capsys, "moore", "equiv", EXAMPLE, EXAMPLE_BAD)
    assert code == 1
    assert out == "not equivalent at ε: 0 vs 1\n"


def test_iso_positive(capsys, tmp_path):
    from mooredual.machine import MooreMachine, emit_machine

    m = parse_machine(read_data("example.moore"))
    renamed = MooreMachine(
        ("p", "q", "r"), m.input_count, m.outputs, m.transition, m.output_map, m.initial
    )
    path = tmp_path / "renamed.moore"
    path.write_text(emit_machine(renamed), encoding="utf-8")
    code, out, _ = run(capsys, "moore", "iso", EXAMPLE, str(path))
    assert code == 0
    assert out == "i -> p\na -> q\nb -> r\n"


def test_iso_negative(capsys):
    code, out, _ = run(capsys, "moore", "iso", EXAMPLE, EXAMPLE_MIN)
    assert (code, out) == (1, "not isomorphic\n")


def test_output_file_option(capsys, tmp_path):
    target = tmp_path / "out.moore"
    code, out, _ = run(capsys, "moore", "minimize", EXAMPLE, "-o", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text(encoding="utf-8") == read_golden("moore_minimize_example.txt")


# --- subst subcommands ------------------------------------------------------------

def test_subst_validate(capsys):
    code, out, _ = run(capsys, "subst", "validate", FIB)
    assert (code, out) == (0, "ok: 2 letters, q=2, 2 outputs\n")


def test_subst_expand(capsys):
    code, out, _ = run(capsys, "subst", "expand", FIB, "-n", "5")
    assert (code, out) == (0, "abaab\n")


def test_subst_expand_project(capsys):
    code, out, _ = run(capsys, "subst", "expand", FIB, "-n", "8", "--project")
    assert (code, out) == (0, "01001010\n")


def test_subst_letter(capsys):
    code, out, _ = run(capsys, "subst", "letter", FIB, "-k", "3", "-n", "4")
    assert (code, out) == (0, "b\n")


def test_subst_letter_constant_start(capsys):
    code, out, _ = run(capsys, "subst", "letter", THREE, "-k", "3", "-n", "5", "--start", "i")
    assert (code, out) == (0, "i\n")


def test_subst_phi(capsys):
    code, out, _ = run(capsys, "subst", "phi", FIB, "--word", "101")
    assert (code, out) == (0, "5\n")


def test_subst_psi(capsys):
    code, out, _ = run(capsys, "subst", "psi", FIB, "-n", "4")
    assert (code, out) == (0, "101\n")


def test_subst_minimize_golden(capsys):
    code, out, _ = run(capsys, "subst", "minimize", FIB)
    assert code == 0
    assert out == read_golden("subst_minimize_fib.txt")


def test_subst_minimize_threeletter_golden(capsys):
    code, out, _ = run(capsys, "subst", "minimize", THREE)
    assert code == 0
    assert out == read_golden("subst_minimize_threeletter.txt")


def test_subst_to_machine_golden(capsys):
    code, out, _ = run(capsys, "subst", "to-machine", FIB)
    assert code == 0
    assert out == read_golden("subst_tomachine_fib.txt")


# --- contracts -----------------------------------------------------------------------

def test_emitted_machines_reparse(capsys):
    for argv in (
        ("moore", "minimize", EXAMPLE),
        ("moore", "dual", EXAMPLE),
        ("moore", "normal", EXAMPLE),
        ("moore", "product", EXAMPLE, EXAMPLE_MIN),
        ("subst", "to-machine", FIB),
    ):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        from mooredual.machine import emit_machine

        # comments aside, parse followed by emit is a fixed point
        once = emit_machine(parse_machine(out))
        assert emit_machine(parse_machine(once)) == once
        assert parse_machine(once) == parse_machine(out)


def test_emitted_substitution_reparses(capsys):
    code, out, _ = run(capsys, "subst", "minimize", FIB)
    assert code == 0
    parse_substitution(out)


def test_exit_code_usage_errors(capsys):
    code, _, err = run(capsys, "moore", "frobnicate", EXAMPLE)
    assert code == 2
    code, _, err = run(capsys, "moore")
    assert code == 2
    code, _, err = run(capsys, "nosuchtool", "x")
    assert code == 2
    code, _, err = run(capsys, "moore", "validate", "/nonexistent/file.moore")
    assert code == 2


def test_exit_code_parse_error(capsys):
    code, _, err = run(capsys, "moore", "validate", EXAMPLE_MISSING)
    assert code == 2
    assert "missing transition" in err


def test_exit_code_domain_error(capsys):
    code, _, err = run(capsys, "moore", "run", EXAMPLE, "--word", "5")
    assert code == 3
    code, _, err = run(capsys, "subst", "letter", FIB, "-k", "3", "-n", "5")
    assert code == 3
    assert "out of range" in err

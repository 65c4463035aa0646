"""Command-line front ends: `moore` for machines, `subst` for substitutions.

Exit codes: 0 success (or "equivalent"), 1 not equivalent / not isomorphic,
2 usage or parse error, 3 domain error (precondition violation).
"""

from __future__ import annotations

import argparse
import sys

from .duality import dual
from .equivalence import equivalent, isomorphic, minimize, normal_form, product
from .machine import (
    DomainError,
    MooreMachine,
    ParseError,
    emit_machine,
    format_word,
    parse_machine,
    parse_word,
    run_left,
    run_right,
)
from .substitution import (
    emit_substitution,
    expand_fixed_point,
    format_letters,
    letter_at,
    letter_at_constant,
    minimize_substitution,
    parse_substitution,
    phi,
    psi,
    to_padded_machine,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3


def to_dot(m: MooreMachine) -> str:
    """Deterministic Graphviz source: nodes labeled name/output, labeled edges,
    and a point-shaped marker pointing at the initial state."""
    def ident(name):
        return '"%s"' % name.replace('"', '\\"')

    lines = [
        "digraph moore {",
        "  rankdir=LR;",
        "  __start [shape=point];",
        "  __start -> %s;" % ident(m.states[m.initial]),
    ]
    for k, name in enumerate(m.states):
        lines.append('  %s [label="%s/%s"];' % (ident(name), name, m.output_map[k]))
    for k, name in enumerate(m.states):
        for j in range(m.input_count):
            lines.append(
                '  %s -> %s [label="%s"];'
                % (ident(name), ident(m.states[m.transition[k][j]]), m.input_label(j))
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _word_display(word, q) -> str:
    return format_word(word, q) if word else "ε"


# --- moore ---------------------------------------------------------------------

def _moore_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="moore", description="Moore machine toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="parse a machine file and report its shape")
    sp.add_argument("file")

    sp = sub.add_parser("run", help="feed a word and print the output symbol")
    sp.add_argument("file")
    sp.add_argument("--word", required=True)
    sp.add_argument("--side", choices=["right", "left"], default="right")

    for name, help_text in [
        ("minimize", "print the canonical minimal equivalent machine"),
        ("dual", "print the dual machine (with vector comments)"),
        ("normal", "print the normal form (trim + canonical state numbering)"),
        ("dot", "print a Graphviz diagram"),
    ]:
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("file")
        sp.add_argument("-o", "--output", default=None)

    sp = sub.add_parser("equiv", help="test equivalence of two machines")
    sp.add_argument("file1")
    sp.add_argument("file2")

    sp = sub.add_parser("iso", help="look for a state isomorphism")
    sp.add_argument("file1")
    sp.add_argument("file2")

    sp = sub.add_parser("product", help="pair-synchronized product machine")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.add_argument("--combine", choices=["pair", "first", "second"], default="pair")
    sp.add_argument("-o", "--output", default=None)
    return p


def _run_moore(args_list) -> int:
    args = _moore_parser().parse_args(args_list)
    cmd = args.command

    if cmd == "validate":
        m = parse_machine(_read(args.file))
        print("ok: %d states, %d inputs, %d outputs" % (m.n, m.input_count, len(m.outputs)))
        return EXIT_OK

    if cmd == "run":
        m = parse_machine(_read(args.file))
        word = parse_word(args.word, m.input_count)
        out = run_right(m, word) if args.side == "right" else run_left(m, word)
        print(out)
        return EXIT_OK

    if cmd in ("minimize", "dual", "normal", "dot"):
        m = parse_machine(_read(args.file))
        op = {"minimize": minimize, "dual": dual, "normal": normal_form, "dot": to_dot}[cmd]
        result = op(m)
        _write(result if cmd == "dot" else emit_machine(result), args.output)
        return EXIT_OK

    if cmd == "equiv":
        m1 = parse_machine(_read(args.file1))
        m2 = parse_machine(_read(args.file2))
        verdict = equivalent(m1, m2)
        if verdict is True:
            print("equivalent")
            return EXIT_OK
        print(
            "not equivalent at %s: %s vs %s"
            % (_word_display(verdict.word, m1.input_count), verdict.left_output, verdict.right_output)
        )
        return EXIT_NEGATIVE

    if cmd == "iso":
        m1 = parse_machine(_read(args.file1))
        m2 = parse_machine(_read(args.file2))
        mapping = isomorphic(m1, m2)
        if mapping is None:
            print("not isomorphic")
            return EXIT_NEGATIVE
        for name in m1.states:
            print("%s -> %s" % (name, mapping[name]))
        return EXIT_OK

    if cmd == "product":
        m1 = parse_machine(_read(args.file1))
        m2 = parse_machine(_read(args.file2))
        _write(emit_machine(product(m1, m2, args.combine)), args.output)
        return EXIT_OK

    raise AssertionError("unhandled command %r" % cmd)


# --- subst ------------------------------------------------------------------------

def _subst_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="subst", description="substitution toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="parse a substitution file and report its shape")
    sp.add_argument("file")

    sp = sub.add_parser("expand", help="print a prefix of the fixed point")
    sp.add_argument("file")
    sp.add_argument("-n", type=int, required=True, help="prefix length")
    sp.add_argument("--project", action="store_true", help="apply the output projection")

    sp = sub.add_parser("letter", help="letter of the fixed point by digit indexing")
    sp.add_argument("file")
    sp.add_argument("-k", type=int, required=True, help="iteration count")
    sp.add_argument("-n", type=int, required=True, help="letter index")
    sp.add_argument(
        "--start",
        default=None,
        help="constant-length route: index into the k-th image of this letter",
    )

    sp = sub.add_parser("phi", help="digit sum of a word in the file's base")
    sp.add_argument("file")
    sp.add_argument("--word", required=True)

    sp = sub.add_parser("psi", help="n-th valid digit word of the padded machine")
    sp.add_argument("file")
    sp.add_argument("-n", type=int, required=True)

    sp = sub.add_parser("minimize", help="substitution on the merged alphabet")
    sp.add_argument("file")
    sp.add_argument("-o", "--output", default=None)

    sp = sub.add_parser("to-machine", help="print the padded machine as .moore text")
    sp.add_argument("file")
    sp.add_argument("-o", "--output", default=None)
    return p


def _run_subst(args_list) -> int:
    args = _subst_parser().parse_args(args_list)
    cmd = args.command
    s, pad = parse_substitution(_read(args.file))

    if cmd == "validate":
        print("ok: %d letters, q=%d, %d outputs" % (len(s.alphabet), s.q, len(s.outputs)))
        return EXIT_OK

    if cmd == "expand":
        letters = expand_fixed_point(s, args.n, project=args.project)
        print("".join(letters) if args.project else format_letters(s, letters))
        return EXIT_OK

    if cmd == "letter":
        if args.start is not None:
            print(letter_at_constant(s, args.k, args.start, args.n))
        else:
            print(letter_at(s, pad, args.k, args.n))
        return EXIT_OK

    if cmd == "phi":
        print(phi(parse_word(args.word, s.q), s.q))
        return EXIT_OK

    if cmd == "psi":
        pm = to_padded_machine(s, pad)
        print(format_word(psi(pm, args.n), s.q))
        return EXIT_OK

    if cmd == "minimize":
        small, note = minimize_substitution(s, pad)
        _write("# %s\n%s" % (note, emit_substitution(small)), args.output)
        return EXIT_OK

    if cmd == "to-machine":
        _write(emit_machine(to_padded_machine(s, pad).machine), args.output)
        return EXIT_OK

    raise AssertionError("unhandled command %r" % cmd)


# --- dispatch -----------------------------------------------------------------------

def run_cli(argv) -> int:
    """Dispatch a full argument list starting with 'moore' or 'subst'."""
    if not argv:
        print("usage: moore|subst <command> ...", file=sys.stderr)
        return EXIT_USAGE
    tool, rest = argv[0], list(argv[1:])
    try:
        if tool == "moore":
            return _run_moore(rest)
        if tool == "subst":
            return _run_subst(rest)
        print("unknown tool %r (expected 'moore' or 'subst')" % tool, file=sys.stderr)
        return EXIT_USAGE
    except ParseError as e:
        print("parse error: %s" % e, file=sys.stderr)
        return EXIT_USAGE
    except DomainError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # argparse exits on usage errors and --help
        return e.code if isinstance(e.code, int) else EXIT_USAGE


def moore_main():
    raise SystemExit(run_cli(["moore"] + sys.argv[1:]))


def subst_main():
    raise SystemExit(run_cli(["subst"] + sys.argv[1:]))

"""Substitutions on free monoids, fixed-point indexing, and their machines."""

from __future__ import annotations

from dataclasses import dataclass

from .duality import bidual
from .machine import (
    DomainError,
    MooreMachine,
    ParseError,
    _meaningful_lines,
    left_action,
    trim,
)

SINK_STATE = "ω"    # absorbing padding state; not usable as a letter
SINK_OUTPUT = "⊥"   # reserved output of the sink; not user-declarable

SLOT = "_"          # padding-template token: receives the next image letter
OMEGA = "w"         # padding-template token: a padding position


@dataclass(frozen=True)
class Substitution:
    """A free-monoid endomorphism with an output projection and a start letter.

    ``rules[k]`` is the image word of ``alphabet[k]``; images are nonempty.
    """

    alphabet: tuple[str, ...]
    rules: tuple[tuple[str, ...], ...]
    outputs: tuple[str, ...]
    projection: tuple[str, ...]
    initial: int

    def __post_init__(self):
        n = len(self.alphabet)
        if n < 1:
            raise DomainError("substitution needs at least one letter")
        if len(set(self.alphabet)) != n:
            raise DomainError("duplicate letters")
        if SINK_STATE in self.alphabet:
            raise DomainError("letter %r is reserved for the padding sink" % SINK_STATE)
        if not self.outputs or len(set(self.outputs)) != len(self.outputs):
            raise DomainError("outputs must be nonempty and distinct")
        if SINK_OUTPUT in self.outputs:
            raise DomainError("output %r is reserved for the padding sink" % SINK_OUTPUT)
        if len(self.rules) != n:
            raise DomainError("need one rule per letter")
        members = set(self.alphabet)
        for a, img in zip(self.alphabet, self.rules):
            if len(img) < 1:
                raise DomainError("empty image for letter %r" % a)
            for b in img:
                if b not in members:
                    raise DomainError("rule for %r uses unknown letter %r" % (a, b))
        if len(self.projection) != n:
            raise DomainError("projection must cover every letter")
        for sym in self.projection:
            if sym not in self.outputs:
                raise DomainError("projection value %r not declared" % (sym,))
        if not 0 <= self.initial < n:
            raise DomainError("initial letter out of range")

    @property
    def q(self) -> int:
        """Longest image length; the input base of the associated machine."""
        return max(len(img) for img in self.rules)

    def letter_index(self, a) -> int:
        if isinstance(a, str):
            try:
                return self.alphabet.index(a)
            except ValueError:
                raise DomainError("unknown letter %r" % a) from None
        if not 0 <= a < len(self.alphabet):
            raise DomainError("letter index %r out of range" % (a,))
        return a

    def image(self, a) -> tuple[str, ...]:
        return self.rules[self.letter_index(a)]


@dataclass(frozen=True)
class PaddingSpec:
    """Where the padding positions sit in each image brought up to length q.

    One template per letter, tokens SLOT/OMEGA; slots, read left to right,
    receive the letters of the image in order.
    """

    templates: tuple[tuple[str, ...], ...]

    @classmethod
    def default(cls, s: Substitution) -> "PaddingSpec":
        """Trailing padding: image letters first, padding after."""
        q = s.q
        return cls(
            tuple(
                tuple([SLOT] * len(img) + [OMEGA] * (q - len(img))) for img in s.rules
            )
        )

    def validate(self, s: Substitution):
        q = s.q
        if len(self.templates) != len(s.alphabet):
            raise DomainError("need one padding template per letter")
        for a, img, tpl in zip(s.alphabet, s.rules, self.templates):
            if len(tpl) != q:
                raise DomainError("template for %r must have length %d" % (a, q))
            for tok in tpl:
                if tok not in (SLOT, OMEGA):
                    raise DomainError("bad template token %r for %r" % (tok, a))
            if sum(1 for tok in tpl if tok == SLOT) != len(img):
                raise DomainError(
                    "template for %r must have exactly %d slots" % (a, len(img))
                )


@dataclass(frozen=True)
class PaddedMachine:
    """The machine of a substitution over its alphabet plus an absorbing sink."""

    machine: MooreMachine
    sink: int
    sink_output: str


# --- letter words -----------------------------------------------------------

def parse_letters(s: Substitution, text: str) -> tuple[str, ...]:
    """Parse a letter-word literal.

    Bare concatenation when every letter is a single character, otherwise
    whitespace/comma separated tokens.
    """
    text = text.strip()
    if text == "":
        return ()
    if all(len(a) == 1 for a in s.alphabet) and "," not in text and " " not in text:
        letters = tuple(text)
    else:
        letters = tuple(t for t in text.replace(",", " ").split())
    for a in letters:
        s.letter_index(a)
    return letters


def format_letters(s: Substitution, letters) -> str:
    if all(len(a) == 1 for a in s.alphabet):
        return "".join(letters)
    return " ".join(letters)


def apply(s: Substitution, letters):
    """Image of a word: concatenation of the letter images."""
    if isinstance(letters, str):
        letters = parse_letters(s, letters)
    out = []
    for a in letters:
        out.extend(s.image(a))
    return tuple(out)


def check_fixed_point(s: Substitution):
    img = s.rules[s.initial]
    if img[0] != s.alphabet[s.initial] or len(img) < 2:
        raise DomainError(
            "no fixed point: the image of %r must start with it and grow"
            % s.alphabet[s.initial]
        )


def expand_fixed_point(s: Substitution, n: int, project: bool = False):
    """First n letters of the limit word, by direct iteration.

    This is the brute-force oracle against which the digit-indexing
    operations are checked.  With project=True the output projection is
    applied letter by letter.
    """
    check_fixed_point(s)
    if n < 0:
        raise DomainError("negative prefix length")
    w = (s.alphabet[s.initial],)
    while len(w) < n:
        w = apply(s, w)
    w = w[:n]
    if project:
        return tuple(s.projection[s.letter_index(a)] for a in w)
    return w


# --- machines from substitutions ---------------------------------------------

def to_padded_machine(s: Substitution, pad: PaddingSpec | None = None) -> PaddedMachine:
    """Machine over the alphabet plus sink; digit j of a padded image drives delta.

    For a constant-length substitution the sink is unreachable from the
    letters, and the machine restricted to them is the exact digit machine.
    """
    if pad is None:
        pad = PaddingSpec.default(s)
    pad.validate(s)
    q = s.q
    n = len(s.alphabet)
    pos = {a: k for k, a in enumerate(s.alphabet)}
    rows = []
    for k in range(n):
        img = iter(s.rules[k])
        rows.append(
            tuple(n if tok == OMEGA else pos[next(img)] for tok in pad.templates[k])
        )
    rows.append((n,) * q)  # the sink absorbs every digit
    machine = MooreMachine(
        states=s.alphabet + (SINK_STATE,),
        input_count=q,
        outputs=s.outputs + (SINK_OUTPUT,),
        transition=tuple(rows),
        output_map=s.projection + (SINK_OUTPUT,),
        initial=s.initial,
    )
    return PaddedMachine(machine, n, SINK_OUTPUT)


def is_constant_length(s: Substitution) -> bool:
    return all(len(img) == s.q for img in s.rules)


def base_digits(n: int, q: int, length: int | None = None) -> tuple[int, ...]:
    """Base-q digits of n, least significant first; zero-padded if a length is given."""
    if q < 2:
        if n != 0:
            raise DomainError("base-%d digits exist only for 0" % q)
        digits = []
    else:
        digits = []
        while n:
            digits.append(n % q)
            n //= q
    if length is not None:
        digits += [0] * (length - len(digits))
    elif not digits:
        digits = [0]
    return tuple(digits)


def letter_at_constant(s: Substitution, k: int, a, n: int):
    """Letter n of the k-th image of letter a, via digit indexing (no expansion)."""
    if not is_constant_length(s):
        raise DomainError("substitution is not constant-length")
    start = s.letter_index(a)
    q = s.q
    if k < 0 or not 0 <= n < q ** k:
        raise DomainError("index %d out of range for step %d" % (n, k))
    pm = to_padded_machine(s)
    word = base_digits(n, q, length=k)
    # constant length: the sink is unreachable, so this is always a letter
    return s.alphabet[left_action(pm.machine, word, start)]


# --- digit-word numeration ----------------------------------------------------

def phi(word, q: int) -> int:
    """Weighted digit sum of a nonempty word (least significant digit first)."""
    word = tuple(word)
    if not word:
        raise DomainError("the digit sum is undefined on the empty word")
    total = 0
    for j, d in enumerate(word):
        if not 0 <= d < q:
            raise DomainError("digit %r out of range (q=%d)" % (d, q))
        total += d * q ** j
    return total


def _check_zero_loop(pm: PaddedMachine):
    m = pm.machine
    if m.transition[m.initial][0] != m.initial:
        raise DomainError(
            "numeration needs digit 0 to fix the initial letter "
            "(words equal up to trailing zeros must act identically)"
        )


def language_words(pm: PaddedMachine):
    """Digit words not driving the initial letter into the sink, in rank order.

    One word per value of the digit sum: the shortest representative, i.e.
    the plain base-q digits of 0, 1, 2, ...
    """
    _check_zero_loop(pm)
    m = pm.machine
    if m.input_count == 1:
        # base 1: every valid word equals "0" up to trailing zeros
        yield (0,)
        return
    n = 0
    while True:
        w = base_digits(n, m.input_count)
        if left_action(m, w, m.initial) != pm.sink:
            yield w
        n += 1


_psi_cache: dict = {}  # PaddedMachine -> [words found so far, next candidate]


def psi(pm: PaddedMachine, n: int, max_candidates: int = 10_000_000):
    """The digit word of rank n (from 0) among the valid words.

    Enumeration progress is memoized per machine, so indexing a prefix of the
    fixed point costs one sweep overall.
    """
    if n < 0:
        raise DomainError("negative rank")
    _check_zero_loop(pm)
    m = pm.machine
    if m.input_count == 1:
        if n > 0:
            raise DomainError("rank %d unreachable: base 1 has a single valid word" % n)
        return (0,)
    entry = _psi_cache.setdefault(pm, [[], 0])
    found, candidate = entry[0], entry[1]
    while len(found) <= n:
        if candidate >= max_candidates:
            entry[1] = candidate
            raise DomainError(
                "rank %d not reached within %d candidates; the valid-word "
                "language may be finite or too sparse" % (n, max_candidates)
            )
        w = base_digits(candidate, m.input_count)
        if left_action(m, w, m.initial) != pm.sink:
            found.append(w)
        candidate += 1
    entry[1] = candidate
    return found[n]


def fixed_point_lengths(s: Substitution, k: int) -> list[int]:
    """Lengths of the first k+1 iterates of the start letter, via letter counts."""
    counts = [0] * len(s.alphabet)
    counts[s.initial] = 1
    pos = {a: j for j, a in enumerate(s.alphabet)}
    lengths = [1]
    for _ in range(k):
        nxt = [0] * len(s.alphabet)
        for a, c in enumerate(counts):
            if c:
                for b in s.rules[a]:
                    nxt[pos[b]] += c
        counts = nxt
        lengths.append(sum(counts))
    return lengths


def letter_at(s: Substitution, pad: PaddingSpec | None, k: int, j: int,
              max_candidates: int = 10_000_000):
    """Letter j of the k-th iterate of the start letter, via the numeration."""
    check_fixed_point(s)
    if k < 0:
        raise DomainError("negative iteration count")
    length = fixed_point_lengths(s, k)[k]
    if not 0 <= j < length:
        raise DomainError(
            "index %d out of range for step %d (length %d)" % (j, k, length)
        )
    pm = to_padded_machine(s, pad)
    state = left_action(pm.machine, psi(pm, j, max_candidates), pm.machine.initial)
    return s.alphabet[state]


# --- minimization --------------------------------------------------------------

def minimize_substitution(s: Substitution, pad: PaddingSpec | None = None):
    """Merge letters with identical projected behavior.

    Returns (substitution, note).  The new alphabet is the set of live
    classes of the padded machine's bidual; each rule is the class's
    transition row with sink entries dropped.  The projected fixed points of
    the input and the result coincide.
    """
    check_fixed_point(s)
    pm = to_padded_machine(s, pad)
    b = bidual(trim(pm.machine))
    sink_class = None
    for k, out in enumerate(b.output_map):
        if out == pm.sink_output:
            sink_class = k
            break
    live = [k for k in range(b.n) if k != sink_class]
    names = {c: "c%d" % pos for pos, c in enumerate(live)}
    rules = tuple(
        tuple(names[t] for t in b.transition[c] if t != sink_class) for c in live
    )
    result = Substitution(
        alphabet=tuple(names[c] for c in live),
        rules=rules,
        outputs=s.outputs,
        projection=tuple(b.output_map[c] for c in live),
        initial=live.index(b.initial),
    )
    if sink_class is None:
        note = "constant-length path: padding sink unreachable; %d letters -> %d" % (
            len(s.alphabet),
            len(live),
        )
    else:
        note = "padded path: %d letters -> %d (plus sink class)" % (
            len(s.alphabet),
            len(live),
        )
    return result, note


def substitutions_isomorphic(s1: Substitution, s2: Substitution):
    """Letter bijection identifying two substitutions, or None.

    The only candidate maps start letter to start letter and follows the rule
    images position by position; every letter must be reachable that way.
    """
    if len(s1.alphabet) != len(s2.alphabet):
        return None
    fwd = {s1.initial: s2.initial}
    queue = [s1.initial]
    pos1 = {a: k for k, a in enumerate(s1.alphabet)}
    pos2 = {a: k for k, a in enumerate(s2.alphabet)}
    while queue:
        a = queue.pop()
        b = fwd[a]
        if s1.projection[a] != s2.projection[b]:
            return None
        img1, img2 = s1.rules[a], s2.rules[b]
        if len(img1) != len(img2):
            return None
        for x, y in zip(img1, img2):
            xi, yi = pos1[x], pos2[y]
            if xi in fwd:
                if fwd[xi] != yi:
                    return None
            else:
                fwd[xi] = yi
                queue.append(xi)
    n = len(s1.alphabet)
    if len(fwd) != n or len(set(fwd.values())) != n:
        return None
    return {s1.alphabet[a]: s2.alphabet[b] for a, b in fwd.items()}


# --- text format ----------------------------------------------------------------

def parse_substitution(text: str):
    """Parse .subst text; returns (Substitution, PaddingSpec).

    Letters without a 'pad' line get the default trailing padding.
    """
    lines = list(_meaningful_lines(text))
    if not lines or lines[0][1] != ["subst", "v1"]:
        lineno = lines[0][0] if lines else 1
        raise ParseError("line %d: expected header 'subst v1'" % lineno)

    letters = None
    outputs = None
    initial = None
    rules = {}
    outs = {}
    pads = {}

    for lineno, toks in lines[1:]:
        key, args = toks[0], toks[1:]
        if key == "letters":
            if letters is not None:
                raise ParseError("line %d: duplicate 'letters' declaration" % lineno)
            if not args:
                raise ParseError("line %d: 'letters' needs at least one id" % lineno)
            if len(set(args)) != len(args):
                raise ParseError("line %d: duplicate letter" % lineno)
            letters = tuple(args)
        elif key == "outputs":
            if outputs is not None:
                raise ParseError("line %d: duplicate 'outputs' declaration" % lineno)
            if not args:
                raise ParseError("line %d: 'outputs' needs at least one symbol" % lineno)
            outputs = tuple(args)
        elif key == "initial":
            if len(args) != 1:
                raise ParseError("line %d: expected 'initial <id>'" % lineno)
            if initial is not None:
                raise ParseError("line %d: duplicate 'initial' declaration" % lineno)
            initial = (args[0], lineno)
        elif key == "rule":
            if len(args) < 3 or args[1] != "->":
                raise ParseError("line %d: expected 'rule <id> -> <id> ...'" % lineno)
            name = args[0]
            if name in rules:
                raise ParseError("line %d: duplicate rule for %r" % (lineno, name))
            rules[name] = (tuple(args[2:]), lineno)
        elif key == "out":
            if len(args) != 2:
                raise ParseError("line %d: expected 'out <id> <sym>'" % lineno)
            if args[0] in outs:
                raise ParseError("line %d: duplicate 'out' for %r" % (lineno, args[0]))
            outs[args[0]] = (args[1], lineno)
        elif key == "pad":
            if len(args) < 2:
                raise ParseError("line %d: expected 'pad <id> <template>'" % lineno)
            if args[0] in pads:
                raise ParseError("line %d: duplicate 'pad' for %r" % (lineno, args[0]))
            tokens = args[1:]
            if len(tokens) == 1 and len(tokens[0]) > 1:
                tokens = list(tokens[0])  # compact form, e.g. "_w_"
            pads[args[0]] = (tuple(tokens), lineno)
        else:
            raise ParseError("line %d: unknown directive %r" % (lineno, key))

    if letters is None:
        raise ParseError("missing 'letters' declaration")
    if outputs is None:
        raise ParseError("missing 'outputs' declaration")
    if initial is None:
        raise ParseError("missing 'initial' declaration")

    member = set(letters)
    for name, (img, lineno) in rules.items():
        if name not in member:
            raise ParseError("line %d: rule for undeclared letter %r" % (lineno, name))
        for b in img:
            if b not in member:
                raise ParseError("line %d: rule uses undeclared letter %r" % (lineno, b))
    for a in letters:
        if a not in rules:
            raise ParseError("missing rule for letter %r" % a)
    for name, (sym, lineno) in outs.items():
        if name not in member:
            raise ParseError("line %d: 'out' for undeclared letter %r" % (lineno, name))
        if sym not in outputs:
            raise ParseError("line %d: unknown output token %r" % (lineno, sym))
    for a in letters:
        if a not in outs:
            raise ParseError("missing 'out' line for letter %r" % a)
    init_name, init_line = initial
    if init_name not in member:
        raise ParseError("line %d: unknown letter %r" % (init_line, init_name))

    try:
        s = Substitution(
            alphabet=letters,
            rules=tuple(rules[a][0] for a in letters),
            outputs=outputs,
            projection=tuple(outs[a][0] for a in letters),
            initial=letters.index(init_name),
        )
    except DomainError as e:
        raise ParseError(str(e)) from None

    templates = list(PaddingSpec.default(s).templates)
    for name, (tpl, lineno) in pads.items():
        if name not in member:
            raise ParseError("line %d: 'pad' for undeclared letter %r" % (lineno, name))
        templates[letters.index(name)] = tpl
    pad = PaddingSpec(tuple(templates))
    try:
        pad.validate(s)
    except DomainError as e:
        raise ParseError(str(e)) from None
    return s, pad


def emit_substitution(s: Substitution, pad: PaddingSpec | None = None) -> str:
    """Canonical .subst text; pad lines appear only for non-default templates."""
    lines = ["subst v1"]
    lines.append("letters " + " ".join(s.alphabet))
    lines.append("outputs " + " ".join(s.outputs))
    lines.append("initial %s" % s.alphabet[s.initial])
    for a, img in zip(s.alphabet, s.rules):
        lines.append("rule %s -> %s" % (a, " ".join(img)))
    for a, sym in zip(s.alphabet, s.projection):
        lines.append("out %s %s" % (a, sym))
    if pad is not None:
        default = PaddingSpec.default(s).templates
        for a, tpl, dflt in zip(s.alphabet, pad.templates, default):
            if tpl != dflt:
                lines.append("pad %s %s" % (a, "".join(tpl)))
    return "\n".join(lines) + "\n"

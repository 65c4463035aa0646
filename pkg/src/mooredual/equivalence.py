"""Products, equivalence testing, an independent minimizer, and canonical forms."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .duality import bidual
from .machine import Counterexample, DomainError, MooreMachine, trim


@dataclass(frozen=True)
class OutputCombiner:
    """A total map from output-symbol pairs to a combined output alphabet."""

    outputs: tuple[str, ...]
    table: dict = field(hash=False)

    def __call__(self, s1: str, s2: str) -> str:
        try:
            return self.table[(s1, s2)]
        except KeyError:
            raise DomainError("combiner undefined on (%r, %r)" % (s1, s2)) from None


def pair_combiner(out1, out2) -> OutputCombiner:
    """Keep both outputs as a pair token."""
    outputs = tuple("(%s,%s)" % (a, b) for a in out1 for b in out2)
    table = {(a, b): "(%s,%s)" % (a, b) for a in out1 for b in out2}
    return OutputCombiner(outputs, table)


def first_combiner(out1, out2) -> OutputCombiner:
    return OutputCombiner(tuple(out1), {(a, b): a for a in out1 for b in out2})


def second_combiner(out1, out2) -> OutputCombiner:
    return OutputCombiner(tuple(out2), {(a, b): b for a in out1 for b in out2})


_BUILTIN_COMBINERS = {
    "pair": pair_combiner,
    "first": first_combiner,
    "second": second_combiner,
}


def _check_same_inputs(m1: MooreMachine, m2: MooreMachine):
    if m1.input_count != m2.input_count:
        raise DomainError(
            "input counts differ: %d vs %d" % (m1.input_count, m2.input_count)
        )


def product(m1: MooreMachine, m2: MooreMachine, combine="pair") -> MooreMachine:
    """Reachable pair-synchronized machine with outputs merged by the combiner.

    `combine` is an OutputCombiner or one of the builtin names
    "pair", "first", "second".
    """
    _check_same_inputs(m1, m2)
    if isinstance(combine, str):
        try:
            factory = _BUILTIN_COMBINERS[combine]
        except KeyError:
            raise DomainError("unknown combiner %r" % combine) from None
        combine = factory(m1.outputs, m2.outputs)

    start = (m1.initial, m2.initial)
    order = [start]
    index = {start: 0}
    rows = []
    pos = 0
    while pos < len(order):
        a1, a2 = order[pos]
        row = []
        for j in range(m1.input_count):
            p = (m1.transition[a1][j], m2.transition[a2][j])
            k = index.get(p)
            if k is None:
                k = len(order)
                index[p] = k
                order.append(p)
            row.append(k)
        rows.append(tuple(row))
        pos += 1

    return MooreMachine(
        states=tuple("(%s,%s)" % (m1.states[a1], m2.states[a2]) for a1, a2 in order),
        input_count=m1.input_count,
        outputs=combine.outputs,
        transition=tuple(rows),
        output_map=tuple(
            combine(m1.output_map[a1], m2.output_map[a2]) for a1, a2 in order
        ),
        initial=0,
        input_names=m1.input_names if m1.input_names == m2.input_names else None,
    )


def equivalent(m1: MooreMachine, m2: MooreMachine):
    """True if both machines give the same right output on every word.

    Otherwise returns the shortest (then lexicographically least) word on
    which they differ, together with both outputs.  Only |Q1|*|Q2| state
    pairs exist, so the breadth-first search is complete.
    """
    _check_same_inputs(m1, m2)
    o1, o2 = m1.output_map[m1.initial], m2.output_map[m2.initial]
    if o1 != o2:
        return Counterexample((), o1, o2)
    start = (m1.initial, m2.initial)
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        (a1, a2), w = queue.popleft()
        for j in range(m1.input_count):
            p = (m1.transition[a1][j], m2.transition[a2][j])
            if p in seen:
                continue
            seen.add(p)
            wj = w + (j,)
            o1, o2 = m1.output_map[p[0]], m2.output_map[p[1]]
            if o1 != o2:
                return Counterexample(wj, o1, o2)
            queue.append((p, wj))
    return True


def states_equivalent(m: MooreMachine, a, b) -> bool:
    """Whether states a and b give equal outputs on every word."""
    a = m.state_index(a)
    b = m.state_index(b)
    start = (a, b)
    seen = {start}
    queue = deque([start])
    while queue:
        s, t = queue.popleft()
        if m.output_map[s] != m.output_map[t]:
            return False
        for j in range(m.input_count):
            p = (m.transition[s][j], m.transition[t][j])
            if p not in seen:
                seen.add(p)
                queue.append(p)
    return True


def oracle_minimize(m: MooreMachine) -> MooreMachine:
    """Partition-refinement minimizer, deliberately independent of the duals.

    Trim, split states by output, then refine blocks by successor-block
    signatures until stable, and return the quotient machine.
    """
    mt = trim(m)
    block = {}
    seen = {}
    for s in range(mt.n):
        key = mt.output_map[s]
        if key not in seen:
            seen[key] = len(seen)
        block[s] = seen[key]

    while True:
        seen = {}
        new_block = {}
        for s in range(mt.n):
            sig = (block[s],) + tuple(block[t] for t in mt.transition[s])
            if sig not in seen:
                seen[sig] = len(seen)
            new_block[s] = seen[sig]
        if new_block == block:
            break
        block = new_block

    # one representative per block, blocks ordered by lowest member index
    reps = {}
    for s in range(mt.n):
        reps.setdefault(block[s], s)
    ordered = sorted(reps.values())
    renumber = {block[rep]: k for k, rep in enumerate(ordered)}

    return MooreMachine(
        states=tuple(mt.states[rep] for rep in ordered),
        input_count=mt.input_count,
        outputs=mt.outputs,
        transition=tuple(
            tuple(renumber[block[t]] for t in mt.transition[rep]) for rep in ordered
        ),
        output_map=tuple(mt.output_map[rep] for rep in ordered),
        initial=renumber[block[mt.initial]],
        input_names=mt.input_names,
    )


def isomorphic(m1: MooreMachine, m2: MooreMachine):
    """The structure-preserving state bijection as a name map, or None.

    Both machines must be trimmed; the only candidate is the one induced by
    matching breadth-first traversals from the initial states, which also has
    to send initial to initial (otherwise isomorphic machines need not be
    equivalent).
    """
    if m1.input_count != m2.input_count or m1.n != m2.n:
        return None
    fwd = {m1.initial: m2.initial}
    queue = deque([m1.initial])
    while queue:
        a = queue.popleft()
        b = fwd[a]
        if m1.output_map[a] != m2.output_map[b]:
            return None
        for j in range(m1.input_count):
            x, y = m1.transition[a][j], m2.transition[b][j]
            if x in fwd:
                if fwd[x] != y:
                    return None
            else:
                fwd[x] = y
                queue.append(x)
    if len(fwd) != m1.n or len(set(fwd.values())) != m1.n:
        return None
    return {m1.states[a]: m2.states[b] for a, b in fwd.items()}


def normal_form(m: MooreMachine) -> MooreMachine:
    """Canonical representative: trim, then number states 0..n-1 breadth-first.

    The result is invariant under any renaming or reordering of the input's
    states.
    """
    mt = trim(m)
    return MooreMachine(
        states=tuple(str(k) for k in range(mt.n)),
        input_count=mt.input_count,
        outputs=mt.outputs,
        transition=mt.transition,
        output_map=mt.output_map,
        initial=mt.initial,
        input_names=mt.input_names,
    )


def minimize(m: MooreMachine) -> MooreMachine:
    """The unique simplest machine equivalent to m, in normal form."""
    return normal_form(bidual(m))

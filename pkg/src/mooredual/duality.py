"""Duals and biduals: machines whose states are output vectors in Delta^Q."""

from __future__ import annotations

from dataclasses import dataclass

from .machine import (
    DomainError,
    MooreMachine,
    left_action,
    right_action,
    trim,
)

OutputVector = tuple  # one output symbol per state of the base machine


@dataclass(frozen=True)
class DualMachine(MooreMachine):
    """A machine whose states were discovered as output vectors of a base machine.

    ``vectors[k]`` is the element of Delta^Q defining state k, indexed by the
    (trimmed) base machine's state positions.  Everything else behaves like a
    plain MooreMachine.
    """

    vectors: tuple[OutputVector, ...] = ()


def check_vector(m: MooreMachine, f) -> OutputVector:
    f = tuple(f)
    if len(f) != m.n:
        raise DomainError("vector has %d entries, machine has %d states" % (len(f), m.n))
    for v in f:
        if v not in m.outputs:
            raise DomainError("vector value %r not in the output alphabet" % (v,))
    return f


def act_left_on_function(m: MooreMachine, w, f) -> OutputVector:
    """(w.f)(a) = f(a.w) for every state a."""
    f = check_vector(m, f)
    return tuple(f[right_action(m, a, w)] for a in range(m.n))


def act_right_on_function(m: MooreMachine, f, w) -> OutputVector:
    """(f.w)(a) = f(w.a) for every state a."""
    f = check_vector(m, f)
    return tuple(f[left_action(m, w, a)] for a in range(m.n))


def _close_over(base: MooreMachine, step) -> DualMachine:
    """Worklist closure of lambda under `step`.

    The stack starts with lambda alone; repeatedly the bottom-most element
    still missing successors gets step(f, j) recorded for every letter j,
    with unseen vectors pushed on top.  Terminates: there are at most
    |Delta|^|Q| vectors.
    """
    start = tuple(base.output_map)
    stack = [start]
    index = {start: 0}
    rows = []
    pos = 0
    while pos < len(stack):
        f = stack[pos]
        row = []
        for j in range(base.input_count):
            g = step(f, j)
            k = index.get(g)
            if k is None:
                k = len(stack)
                index[g] = k
                stack.append(g)
            row.append(k)
        rows.append(tuple(row))
        pos += 1
    return DualMachine(
        states=tuple("d%d" % k for k in range(len(stack))),
        input_count=base.input_count,
        outputs=base.outputs,
        transition=tuple(rows),
        output_map=tuple(f[base.initial] for f in stack),
        initial=0,
        input_names=base.input_names,
        vectors=tuple(stack),
    )


def dual(m: MooreMachine) -> DualMachine:
    """The dual machine: closure of lambda under composition with delta(., j).

    The input is trimmed first; unreachable states would only inflate the
    vector coordinates.  The result swaps reading directions: feeding it a
    word on the left gives what the base machine outputs on the right, and
    vice versa.
    """
    mt = trim(m)
    table = mt.transition
    n = mt.n

    def step(f, j):
        return tuple(f[table[a][j]] for a in range(n))

    return _close_over(mt, step)


def dual_via_right_definition(m: MooreMachine) -> DualMachine:
    """Dual built literally from the right-dual equations (successor j.f)."""
    mt = trim(m)
    return _close_over(mt, lambda f, j: act_left_on_function(mt, (j,), f))


def dual_via_left_definition(m: MooreMachine) -> DualMachine:
    """Dual built literally from the left-dual equations (successor f.j)."""
    mt = trim(m)
    return _close_over(mt, lambda f, j: act_right_on_function(mt, f, (j,)))


def plain(m: MooreMachine) -> MooreMachine:
    """Strip dual-state metadata, returning an ordinary MooreMachine."""
    return MooreMachine(
        states=m.states,
        input_count=m.input_count,
        outputs=m.outputs,
        transition=m.transition,
        output_map=m.output_map,
        initial=m.initial,
        input_names=m.input_names,
    )


def bidual(m: MooreMachine) -> MooreMachine:
    """Dual of the dual: the minimal machine with the same right behavior as m."""
    return plain(dual(dual(m)))


def state_classes(m: MooreMachine) -> tuple[int, ...]:
    """For each state of trim(m), the bidual state it collapses into.

    Two states get the same class exactly when every dual vector agrees on
    them, i.e. when they are behaviorally equivalent.
    """
    mt = trim(m)
    d1 = dual(mt)
    d2 = dual(d1)
    lookup = {f: k for k, f in enumerate(d2.vectors)}
    return tuple(lookup[tuple(f[a] for f in d1.vectors)] for a in range(mt.n))

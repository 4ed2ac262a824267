"""Read-once Boolean formulas over ∨/∧ gates with literal leaves.

Grammar::

    expr   := term ('|' term)*
    term   := factor ('&' factor)*
    factor := '!'? (var | '(' expr ')')
    var    := 'x' [1-9][0-9]*

Negated sub-expressions are pushed to the leaves with De Morgan's laws while
parsing, so the tree only stores negations on leaves.  Node labels are tuples
of 1-based child indices; the root is the empty tuple.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Iterator
from dataclasses import dataclass

OR = "or"
AND = "and"
_DUAL = {OR: AND, AND: OR}
_SYMBOL = {OR: "|", AND: "&"}


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class FormulaBalanceError(ValueError):
    """A gate has a child subtree with too many leaves."""


@dataclass(frozen=True)
class Leaf:
    var: int
    negated: bool = False

    def negate(self) -> Leaf:
        return Leaf(self.var, not self.negated)


@dataclass(frozen=True)
class Gate:
    op: str
    children: tuple[Node, ...]

    def __post_init__(self) -> None:
        if self.op not in (OR, AND):
            raise ValueError(f"unknown gate {self.op!r}")
        if not self.children:
            raise ValueError("gate needs at least one child")

    def negate(self) -> Gate:
        return Gate(_DUAL[self.op], tuple(c.negate() for c in self.children))


Node = Leaf | Gate
Label = tuple[int, ...]


def walk(node: Node, label: Label = ()) -> Iterator[tuple[Label, Node]]:
    """Pre-order traversal yielding ``(label, node)``."""
    yield label, node
    if isinstance(node, Gate):
        for i, child in enumerate(node.children, start=1):
            yield from walk(child, label + (i,))


def leaf_count(node: Node) -> int:
    if isinstance(node, Leaf):
        return 1
    return sum(leaf_count(c) for c in node.children)


def depth(node: Node) -> int:
    if isinstance(node, Leaf):
        return 0
    return 1 + max(depth(c) for c in node.children)


def shape(node: Node):
    """Structure with leaf identities erased."""
    if isinstance(node, Leaf):
        return "leaf"
    return (node.op, tuple(shape(c) for c in node.children))


def is_symmetric(node: Node) -> bool:
    """All sibling subtrees share one shape, at every gate."""
    if isinstance(node, Leaf):
        return True
    first = shape(node.children[0])
    return all(shape(c) == first for c in node.children) and all(
        is_symmetric(c) for c in node.children
    )


def balance_violation(node: Node, c: float, label: Label = ()) -> Label | None:
    """First gate (pre-order) with a child holding more than ``c·N/d`` leaves."""
    if isinstance(node, Leaf):
        return None
    n, d = leaf_count(node), len(node.children)
    if any(leaf_count(ch) > c * n / d + 1e-12 for ch in node.children):
        return label
    for i, ch in enumerate(node.children, start=1):
        found = balance_violation(ch, c, label + (i,))
        if found is not None:
            return found
    return None


def evaluate(node: Node, x) -> int:
    if isinstance(node, Leaf):
        return int(x[node.var]) ^ int(node.negated)
    values = (evaluate(c, x) for c in node.children)
    return int(any(values)) if node.op == OR else int(all(values))


def variables(node: Node) -> list[int]:
    return sorted(n.var for _, n in walk(node) if isinstance(n, Leaf))


def to_text(node: Node) -> str:
    if isinstance(node, Leaf):
        return ("!" if node.negated else "") + f"x{node.var + 1}"
    parts = [
        to_text(c) if isinstance(c, Leaf) else f"({to_text(c)})" for c in node.children
    ]
    return f" {_SYMBOL[node.op]} ".join(parts)


def label_text(label: Label) -> str:
    return ".".join(map(str, label))


@dataclass(frozen=True)
class FormulaAst:
    root: Node

    @property
    def leaves(self) -> dict[Label, Leaf]:
        return {lab: n for lab, n in walk(self.root) if isinstance(n, Leaf)}

    @property
    def symmetric(self) -> bool:
        return is_symmetric(self.root)

    @property
    def depth(self) -> int:
        return depth(self.root)

    def balanced(self, c: float = 2.0) -> bool:
        return balance_violation(self.root, c) is None

    def evaluate(self, x) -> int:
        return evaluate(self.root, x)

    @property
    def variables(self) -> list[int]:
        return variables(self.root)

    def __str__(self) -> str:
        return to_text(self.root)


_VAR = re.compile(r"x[1-9][0-9]*")


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode())


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        m = _VAR.match(text, pos)
        if m:
            tokens.append((m.group(), _byte_offset(text, pos)))
            pos = m.end()
        elif ch in "|&!()":
            tokens.append((ch, _byte_offset(text, pos)))
            pos += 1
        else:
            raise FormulaSyntaxError(
                f"unexpected character {ch!r}", _byte_offset(text, pos)
            )
    return tokens


def parse_formula(text: str) -> FormulaAst:
    tokens = _tokenize(text)
    end = _byte_offset(text, len(text))
    seen: dict[int, int] = {}
    i = 0

    def peek() -> str | None:
        return tokens[i][0] if i < len(tokens) else None

    def offset() -> int:
        return tokens[i][1] if i < len(tokens) else end

    def expr() -> Node:
        nonlocal i
        kids = [term()]
        while peek() == "|":
            i += 1
            kids.append(term())
        return kids[0] if len(kids) == 1 else Gate(OR, tuple(kids))

    def term() -> Node:
        nonlocal i
        kids = [factor()]
        while peek() == "&":
            i += 1
            kids.append(factor())
        return kids[0] if len(kids) == 1 else Gate(AND, tuple(kids))

    def factor() -> Node:
        nonlocal i
        negate = False
        if peek() == "!":
            negate = True
            i += 1
        tok = peek()
        if tok is None:
            raise FormulaSyntaxError("unexpected end of input", offset())
        if tok == "(":
            i += 1
            node = expr()
            if peek() != ")":
                raise FormulaSyntaxError("expected ')'", offset())
            i += 1
        elif tok.startswith("x"):
            var = int(tok[1:]) - 1
            if var in seen:
                raise FormulaSyntaxError(
                    f"variable {tok} used twice (first at byte {seen[var]})", offset()
                )
            seen[var] = offset()
            i += 1
            node = Leaf(var)
        else:
            raise FormulaSyntaxError(f"unexpected token {tok!r}", offset())
        return node.negate() if negate else node

    root = expr()
    if i != len(tokens):
        raise FormulaSyntaxError(f"unexpected token {tokens[i][0]!r}", offset())
    return FormulaAst(root)


def symmetric_tree(ops: list[str], degrees: list[int]) -> FormulaAst:
    """Symmetric formula with ``ops[k]``/``degrees[k]`` at depth ``k`` from the root."""
    counter = iter(range(10**6))

    def build(level: int) -> Node:
        if level == len(ops):
            return Leaf(next(counter))
        return Gate(ops[level], tuple(build(level + 1) for _ in range(degrees[level])))

    return FormulaAst(build(0))


def orbit_representatives(ast: FormulaAst) -> list[dict[int, int]]:
    """One input per orbit of the child-permutation symmetry of a symmetric formula.

    Inputs are returned as ``var -> bit`` maps.  Every input of the formula is
    a relabeling of exactly one representative.
    """
    if not ast.symmetric:
        raise ValueError("orbit reduction needs a symmetric formula")

    def reps(node: Node) -> list[tuple[int, ...]]:
        if isinstance(node, Leaf):
            return [(0,), (1,)]
        child = reps(node.children[0])
        return [
            sum((child[i] for i in combo), ())
            for combo in itertools.combinations_with_replacement(
                range(len(child)), len(node.children)
            )
        ]

    order = [n.var for _, n in walk(ast.root) if isinstance(n, Leaf)]
    return [dict(zip(order, bits)) for bits in reps(ast.root)]

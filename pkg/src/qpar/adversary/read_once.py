"""
Read-Once - 读一次公式

文本语法（变量从 1 编号）：
    expr   := term ('|' term)*
    term   := factor ('&' factor)*
    factor := '!' factor | '(' expr ')' | 'x' <数字> | '0' | '1'
内部变量从 0 编号。否定经德摩根律下推到文字。每个变量至多出现一次。
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..boolfn.function import BooleanFunction
from ..boolfn.registry import register_generator
from .._internal.errors import ArityMismatch, ConstructionFailed, DescriptorError, OverlapError
from .._internal.seeding import make_rng
from .ratio import BoundResult, nn_lower_bound

logger = logging.getLogger(__name__)

_TOKENS = re.compile(r"\s*(x\d+|[01]|[()&|!])")


@dataclass(frozen=True)
class Const:
    value: int

    def negate(self) -> "Node":
        return Const(1 - self.value)

    def text(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Var:
    index: int
    negated: bool = False

    def negate(self) -> "Node":
        return Var(self.index, not self.negated)

    def text(self) -> str:
        return f"{'!' if self.negated else ''}x{self.index + 1}"


@dataclass(frozen=True)
class Gate:
    op: str  # "and" | "or"
    children: Tuple["Node", ...]

    def negate(self) -> "Node":
        return Gate("or" if self.op == "and" else "and",
                    tuple(c.negate() for c in self.children))

    def text(self) -> str:
        sep = "&" if self.op == "and" else "|"
        return "(" + sep.join(c.text() for c in self.children) + ")"


Node = Union[Const, Var, Gate]


def _simplify_gate(op: str, children: Sequence[Node]) -> Node:
    absorbing, neutral = (0, 1) if op == "and" else (1, 0)
    kept: List[Node] = []
    for child in children:
        if isinstance(child, Const):
            if child.value == absorbing:
                return Const(absorbing)
            continue
        if isinstance(child, Gate) and child.op == op:
            kept.extend(child.children)
        else:
            kept.append(child)
    if not kept:
        return Const(neutral)
    if len(kept) == 1:
        return kept[0]
    return Gate(op, tuple(kept))


def _restrict_node(node: Node, assignment: Mapping[int, int]) -> Node:
    if isinstance(node, Const):
        return node
    if isinstance(node, Var):
        if node.index in assignment:
            return Const(int(assignment[node.index]) ^ int(node.negated))
        return node
    return _simplify_gate(node.op, [_restrict_node(c, assignment) for c in node.children])


def _eval_batch(node: Node, idx: np.ndarray, position: Mapping[int, int]) -> np.ndarray:
    if isinstance(node, Const):
        return np.full(idx.shape, node.value, dtype=np.uint8)
    if isinstance(node, Var):
        bit = ((idx >> position[node.index]) & 1).astype(np.uint8)
        return bit ^ np.uint8(node.negated)
    parts = [_eval_batch(c, idx, position) for c in node.children]
    reduce = np.minimum.reduce if node.op == "and" else np.maximum.reduce
    return reduce(parts).astype(np.uint8)


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens: List[str] = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            m = _TOKENS.match(stripped, pos)
            if m is None:
                raise DescriptorError(f"bad read-once formula near {stripped[pos:pos + 8]!r}",
                                      formula=text)
            self.tokens.append(m.group(1))
            pos = m.end()
        self.pos = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected: Optional[str] = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise DescriptorError(f"expected {expected or 'token'}, got {tok!r}",
                                  formula=self.text)
        self.pos += 1
        return tok

    def expr(self) -> Node:
        terms = [self.term()]
        while self.peek() == "|":
            self.take("|")
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Gate("or", tuple(terms))

    def term(self) -> Node:
        factors = [self.factor()]
        while self.peek() == "&":
            self.take("&")
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Gate("and", tuple(factors))

    def factor(self) -> Node:
        tok = self.take()
        if tok == "!":
            return self.factor().negate()
        if tok == "(":
            node = self.expr()
            self.take(")")
            return node
        if tok in ("0", "1"):
            return Const(int(tok))
        if tok.startswith("x"):
            index = int(tok[1:])
            if index < 1:
                raise DescriptorError("variables are numbered from x1", formula=self.text)
            return Var(index - 1)
        raise DescriptorError(f"unexpected token {tok!r}", formula=self.text)

    def parse(self) -> Node:
        node = self.expr()
        if self.peek() is not None:
            raise DescriptorError(f"trailing input at {self.peek()!r}", formula=self.text)
        return node


def _collect(node: Node, out: List[int]) -> None:
    if isinstance(node, Var):
        out.append(node.index)
    elif isinstance(node, Gate):
        for child in node.children:
            _collect(child, out)


@dataclass(frozen=True)
class ReadOnceFormula:
    root: Node

    def __post_init__(self) -> None:
        seen: List[int] = []
        _collect(self.root, seen)
        if len(seen) != len(set(seen)):
            raise ConstructionFailed("variable repeated in a read-once formula",
                                     formula=self.text())

    @classmethod
    def parse(cls, text: str) -> "ReadOnceFormula":
        return cls(_Parser(text).parse())

    def text(self) -> str:
        t = self.root.text()
        return t[1:-1] if isinstance(self.root, Gate) else t

    def variables(self) -> Tuple[int, ...]:
        out: List[int] = []
        _collect(self.root, out)
        return tuple(sorted(out))

    @property
    def constant(self) -> Optional[int]:
        return self.root.value if isinstance(self.root, Const) else None

    def evaluate(self, x: Union[Mapping[int, int], Sequence[int]]) -> int:
        values = x if isinstance(x, Mapping) else dict(enumerate(int(b) for b in x))
        result = _restrict_node(self.root, values)
        if not isinstance(result, Const):
            raise ArityMismatch("evaluation leaves variables unassigned",
                                missing=list(ReadOnceFormula(result).variables()))
        return result.value

    def restrict(self, assignment: Mapping[int, int]) -> "ReadOnceFormula":
        return ReadOnceFormula(_restrict_node(self.root, assignment))

    def truth_table(self, order: Sequence[int]) -> np.ndarray:
        """order[j] 号变量对应输入第 j 位"""
        position = {v: j for j, v in enumerate(order)}
        missing = [v for v in self.variables() if v not in position]
        if missing:
            raise ArityMismatch("order does not cover the formula variables", missing=missing)
        idx = np.arange(1 << len(order), dtype=np.int64)
        return _eval_batch(self.root, idx, position)

    def to_function(self, n: Optional[int] = None) -> BooleanFunction:
        return make_read_once(self.text(), n)


@register_generator("read-once", "读一次公式，如 (x1|x2)&(x3|!x4)")
def make_read_once(formula: str, n: Optional[int] = None) -> BooleanFunction:
    parsed = ReadOnceFormula.parse(formula)
    used = parsed.variables()
    arity = int(n) if n is not None else (used[-1] + 1 if used else 0)
    if used and used[-1] >= arity:
        raise ArityMismatch(f"formula uses x{used[-1] + 1} beyond arity {arity}")
    table = parsed.truth_table(list(range(arity)))
    params: Dict[str, object] = {"formula": parsed.text()}
    if n is not None:
        params["n"] = arity
    return BooleanFunction(arity, name=f"RO[{parsed.text()}]", table=table,
                           generator="read-once", params=params, structure=parsed)


def read_once_restrict(
    formula: ReadOnceFormula, S: Sequence[int], A: Union[Mapping[int, int], Sequence[int]]
) -> ReadOnceFormula:
    """保留 S 中的变量，其余按 A 赋值后化简

    A 为映射（变量 → 值），或按 S 补集升序排列的值序列；补集取 formula 的变量，
    必须全部赋值，否则抛出 ArityMismatch。
    """
    free = set(int(i) for i in S)
    complement = [v for v in formula.variables() if v not in free]
    if isinstance(A, Mapping):
        assignment = {int(k): int(v) & 1 for k, v in A.items()}
        overlap = free & set(assignment)
        if overlap:
            raise OverlapError("variables both free and assigned", index=sorted(overlap))
        missing = [v for v in complement if v not in assignment]
        if missing:
            raise ArityMismatch("assignment leaves variables outside S unset", index=missing)
    else:
        values = [int(v) & 1 for v in A]
        if len(values) != len(complement):
            raise ArityMismatch(f"assignment needs {len(complement)} values, got {len(values)}")
        assignment = dict(zip(complement, values))
    return formula.restrict(assignment)


def random_read_once(n: int, seed: int = 0, negate: float = 0.25) -> ReadOnceFormula:
    """n 个变量的随机读一次公式（交替 AND/OR，随机分组与否定）"""
    rng = make_rng(seed)
    order = rng.permutation(n).tolist()

    def build(vars_: List[int], op: str) -> Node:
        if len(vars_) == 1:
            return Var(vars_[0], bool(rng.random() < negate))
        groups = int(rng.integers(2, min(len(vars_), 3) + 1))
        cuts = sorted(rng.choice(np.arange(1, len(vars_)), size=groups - 1, replace=False).tolist())
        parts = [vars_[a:b] for a, b in zip([0] + cuts, cuts + [len(vars_)])]
        child_op = "or" if op == "and" else "and"
        return Gate(op, tuple(build(part, child_op) for part in parts))

    if n < 1:
        raise ArityMismatch("a read-once formula needs at least one variable")
    root = build(order, "and" if rng.random() < 0.5 else "or")
    return ReadOnceFormula(root)


def read_once_lower_bound(formula: ReadOnceFormula, p: int, **kwargs) -> BoundResult:
    """λ(f)/max λ(p 元限制)；全部在真值表上精确计算"""
    used = formula.variables()
    n = used[-1] + 1 if used else 0
    return nn_lower_bound(formula.to_function(n), p, **kwargs)

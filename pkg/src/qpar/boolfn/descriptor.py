"""
Descriptor - 函数描述文本格式

每条记录若干行：
    arity <N>
    kind table|<generator>
    outputs <hex>          (table)
    domain <hex>           (table)
    param <name> <expr>    (generator，可重复)
    name <text>            (可选)
    block <bits> <count>   (可选)

参数表达式支持整数、浮点数、true/false/null、带引号字符串、列表以及
嵌套生成器调用，例如 cor(f=and(n=2),g=or(n=2))。
"""

from __future__ import annotations

import json
import logging
import re
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .._internal.errors import DescriptorError
from .builders import bits_to_hex, make_table
from .function import BlockMeta, BooleanFunction
from .registry import get_generator_registry

logger = logging.getLogger(__name__)

_TOKEN = re.compile(
    r"""\s*(?:
        (?P<string>"(?:[^"\\]|\\.)*")
      | (?P<number>-?\d+(?:\.\d*)?(?:[eE][-+]?\d+)?)
      | (?P<name>[A-Za-z_][A-Za-z0-9_\-]*)
      | (?P<punct>[()\[\],=])
    )""",
    re.VERBOSE,
)


# ---------------------------------------------------------------- expressions
def format_value(value: Any) -> str:
    """参数值 → 表达式文本"""
    if isinstance(value, BooleanFunction):
        return function_expr(value)
    if value is None:
        return "null"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, (list, tuple, np.ndarray)):
        return "[" + ",".join(format_value(v) for v in value) + "]"
    raise DescriptorError(f"cannot describe parameter of type {type(value).__name__}")


def function_expr(f: BooleanFunction) -> str:
    """函数 → 可解析的生成器调用表达式"""
    if f.generator is not None and f.generator != "table":
        args = ",".join(f"{k}={format_value(v)}" for k, v in f.params.items())
        return f"{f.generator}({args})"
    values, mask = f.table_arrays()
    args = [f"arity={f.arity}", f"outputs={format_value(bits_to_hex(values))}"]
    if not mask.all():
        args.append(f"domain={format_value(bits_to_hex(mask))}")
    args.append(f"name={format_value(f.name)}")
    return f"table({','.join(args)})"


class _Parser:
    def __init__(self, text: str) -> None:
        self.tokens: List[Tuple[str, str]] = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                raise DescriptorError(f"cannot parse expression near: {text[pos:pos + 20]!r}")
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind)))
            pos = m.end()
        self.i = 0

    def peek(self) -> Optional[Tuple[str, str]]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected: Optional[str] = None) -> Tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise DescriptorError("unexpected end of expression")
        if expected is not None and tok[1] != expected:
            raise DescriptorError(f"expected {expected!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def value(self) -> Any:
        kind, text = self.take()
        if kind == "string":
            return json.loads(text)
        if kind == "number":
            return float(text) if any(c in text for c in ".eE") else int(text)
        if kind == "punct" and text == "[":
            items = []
            if self.peek() and self.peek()[1] == "]":
                self.take("]")
                return items
            while True:
                items.append(self.value())
                if self.take()[1] == "]":
                    return items
        if kind == "name":
            if text in ("true", "false"):
                return text == "true"
            if text == "null":
                return None
            if self.peek() and self.peek()[1] == "(":
                return self.call(text)
            return text
        raise DescriptorError(f"unexpected token {text!r}")

    def call(self, generator: str) -> BooleanFunction:
        self.take("(")
        params: Dict[str, Any] = {}
        if self.peek() and self.peek()[1] == ")":
            self.take(")")
        else:
            while True:
                _, key = self.take()
                self.take("=")
                params[key] = self.value()
                if self.take()[1] == ")":
                    break
        return get_generator_registry().build(generator, params)

    def done(self) -> None:
        if self.peek() is not None:
            raise DescriptorError(f"trailing tokens in expression: {self.peek()[1]!r}")


def parse_value(text: str) -> Any:
    """解析单个参数表达式"""
    parser = _Parser(text)
    value = parser.value()
    parser.done()
    return value


def parse_function_expr(text: str) -> BooleanFunction:
    value = parse_value(text)
    if not isinstance(value, BooleanFunction):
        raise DescriptorError(f"expression does not build a function: {text!r}")
    return value


# ---------------------------------------------------------------- descriptor text
def to_descriptor(f: BooleanFunction, table: bool = False) -> str:
    """函数 → 描述文本

    Args:
        f: 函数
        table: True 时物化为真值表记录
    """
    lines = [f"arity {f.arity}"]
    if table or f.generator is None or f.generator == "table":
        values, mask = f.table_arrays()
        lines.append("kind table")
        lines.append(f"outputs {bits_to_hex(values)}")
        lines.append(f"domain {bits_to_hex(mask)}")
    else:
        lines.append(f"kind {f.generator}")
        for key, value in f.params.items():
            lines.append(f"param {key} {format_value(value)}")
    lines.append(f"name {f.name}")
    if f.block_meta is not None:
        lines.append(f"block {f.block_meta.block_bits} {f.block_meta.block_count}")
    return "\n".join(lines) + "\n"


def from_descriptor(text: str) -> BooleanFunction:
    """描述文本 → 函数"""
    fields: Dict[str, str] = {}
    params: Dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "param":
            pname, _, expr = rest.partition(" ")
            if not pname or not expr:
                raise DescriptorError(f"line {lineno}: malformed param line", line=lineno)
            params[pname] = parse_value(expr)
        elif key in ("arity", "kind", "outputs", "domain", "name", "block"):
            fields[key] = rest
        else:
            raise DescriptorError(f"line {lineno}: unknown field {key!r}", line=lineno)

    if "arity" not in fields or "kind" not in fields:
        raise DescriptorError("descriptor needs 'arity' and 'kind' lines")
    try:
        arity = int(fields["arity"])
    except ValueError as e:
        raise DescriptorError(f"bad arity: {fields['arity']!r}") from e

    kind = fields["kind"]
    if kind == "table":
        if "outputs" not in fields:
            raise DescriptorError("table descriptor needs an 'outputs' line")
        fn = make_table(arity, fields["outputs"], fields.get("domain"),
                        fields.get("name", "table"))
        if "block" in fields:
            bits, count = (int(v) for v in fields["block"].split())
            fn.block_meta = BlockMeta(bits, count)
    else:
        fn = get_generator_registry().build(kind, params)
        if fn.arity != arity:
            raise DescriptorError(
                f"generator {kind} built arity {fn.arity}, descriptor says {arity}",
                expected=arity,
                actual=fn.arity,
            )
        if "name" in fields:
            fn.name = fields["name"]
    logger.debug("parsed descriptor %s (%s)", fn.name, kind)
    return fn

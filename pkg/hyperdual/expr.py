"""Textual expressions in the variables x1, x2, ... and their evaluation.

The grammar, from loose to tight binding::

    expr   := term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := "-" factor | power
    power  := atom ("^" factor)?
    atom   := NUMBER ["i"] | "pi" | "e" | VAR | FUNC "(" expr ")" | "(" expr ")"

Variables are named ``x1``, ``x2``, ..., functions are the elementary functions of
:mod:`hyperdual.scalar`. Expressions are evaluated node by node with the primitives of
that module, without any constant folding, for plain numbers, dual and hyper-dual numbers
alike.

Examples
--------
>>> ast = parse("x1 + x2^2*x3 - x1/x3 + x2^x1")
>>> ast.arity
3
>>> unparse(parse("-x1^2"))
'-x1^2'

"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence, Union

from hyperdual.drivers import DiffFunction
from hyperdual.exception import ArityMismatchError, ParseError
from hyperdual.field import Scalar
from hyperdual.scalar import BINARY_FUNCTIONS, UNARY_FUNCTIONS, ADScalar, Dual, HyperDual, neg

MAX_NESTING = 100

_CONSTANTS = {"pi": math.pi, "e": math.e}
_VARIABLE_RE = re.compile(r"x[1-9][0-9]*")
_TOKEN_RE = re.compile(
    r"""
    (?P<space>[ \t\r\n\f\v]+)
    |(?P<number>(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?)
    |(?P<name>[A-Za-z_][A-Za-z0-9_]*)
    |(?P<symbol>[-+*/^(),])
    """,
    re.VERBOSE,
)
_NUMBER_TAIL_RE = re.compile(r"[A-Za-z0-9_.]*")
_NAME_CHARS = frozenset("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_")


class _Node:
    """Base of the expression nodes.

    Equality, hashing and depth walk the tree with an explicit stack, so that long
    sums and products are not limited by the recursion limit of the interpreter.
    """

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, _Node):
            return NotImplemented
        return _signature(self) == _signature(other)

    def __hash__(self) -> int:
        return hash(_signature(self))

    @cached_property
    def depth(self) -> int:
        """Number of levels of the subtree."""
        deepest = 0
        stack = [(self, 1)]
        while stack:
            node, level = stack.pop()
            deepest = max(deepest, level)
            stack.extend((child, level + 1) for child in _children(node))
        return deepest


@dataclass(frozen=True, eq=False)
class Literal(_Node):
    """Number in the expression, the symbol is set for the named constants."""

    value: Scalar
    symbol: Optional[str] = None


@dataclass(frozen=True, eq=False)
class Variable(_Node):
    """Variable x<index>, with index starting at 1."""

    index: int


@dataclass(frozen=True, eq=False)
class Unary(_Node):
    """Negation."""

    op: str
    child: Node


@dataclass(frozen=True, eq=False)
class Binary(_Node):
    """Arithmetic operation, with op one of + - * / ^."""

    op: str
    left: Node
    right: Node


@dataclass(frozen=True, eq=False)
class Call(_Node):
    """Elementary function applied to an expression."""

    name: str
    child: Node


Node = Union[Literal, Variable, Unary, Binary, Call]


def _children(node: Node) -> tuple:
    if isinstance(node, Binary):
        return (node.left, node.right)
    if isinstance(node, (Unary, Call)):
        return (node.child,)
    return ()


def _label(node: Node) -> tuple:
    if isinstance(node, Literal):
        return ("Literal", node.value, node.symbol)
    if isinstance(node, Variable):
        return ("Variable", node.index)
    if isinstance(node, Call):
        return ("Call", node.name)
    return (type(node).__name__, node.op)


def _signature(root: Node) -> tuple:
    # Pre-order labels; every node type has a fixed number of children.
    labels = []
    stack = [root]
    while stack:
        node = stack.pop()
        labels.append(_label(node))
        stack.extend(reversed(_children(node)))
    return tuple(labels)


@dataclass(frozen=True)
class ExprAst:
    """Parsed expression.

    The arity is the largest variable index that occurs, so that ``x3`` alone is a
    function of three variables.
    """

    root: Node
    arity: int

    def __str__(self) -> str:
        """Print the expression."""
        return unparse(self)


@dataclass(frozen=True)
class ParseDiagnostic:
    """Reason why an expression could not be parsed.

    The offset counts bytes of the UTF-8 encoded input and lies between 0 and the
    length of the input (the end of the input).
    """

    offset: int
    message: str
    token: str = ""

    def __str__(self) -> str:
        """Message with its position."""
        if self.token:
            return f"{self.message} at offset {self.offset}: '{self.token}'"
        return f"{self.message} at offset {self.offset}"


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    start: int
    value: Scalar = 0.0


class _Failure(Exception):
    def __init__(self, position: int, message: str, token: str = ""):
        super().__init__(message)
        self.position = position
        self.message = message
        self.token = token


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    position = 0
    while position < len(text):
        match = _TOKEN_RE.match(text, position)
        if match is None:
            raise _Failure(position, "unexpected character", text[position])
        kind = match.lastgroup
        end = match.end()
        if kind == "number":
            tokens.append(_number(text, match))
            end = tokens[-1].start + len(tokens[-1].text)
        elif kind == "name":
            tokens.append(_Token("name", match.group(), position))
        elif kind == "symbol":
            tokens.append(_Token(match.group(), match.group(), position))
        position = end
    tokens.append(_Token("end", "", len(text)))
    return tokens


def _number(text: str, match: re.Match) -> _Token:
    start, end = match.span()
    imaginary = False
    if text[end:end + 1] == "i" and text[end + 1:end + 2] not in _NAME_CHARS:
        imaginary = True
    elif text[end:end + 1] in _NAME_CHARS or text[end:end + 1] == ".":
        tail = _NUMBER_TAIL_RE.match(text, end)
        raise _Failure(start, "malformed number", text[start:tail.end() if tail else end])
    value = float(match.group())
    if math.isinf(value):
        raise _Failure(start, "number out of range", match.group())
    if imaginary:
        return _Token("number", text[start:end + 1], start, complex(0.0, value))
    return _Token("number", match.group(), start, value)


class _Parser:
    """Recursive descent parser, one method per grammar rule."""

    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0
        self.nesting = 0
        self.arity = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def _advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def _fail(self, message: str, token: Optional[_Token] = None):
        token = self.current if token is None else token
        if token.kind == "end":
            raise _Failure(token.start, f"{message}, found end of input")
        raise _Failure(token.start, message, token.text)

    def _limit(self, message: str):
        raise _Failure(self.current.start, message, self.current.text)

    def _nest(self, delta: int):
        self.nesting += delta
        if self.nesting > MAX_NESTING:
            self._limit(f"expression nested deeper than {MAX_NESTING} levels")

    def parse(self) -> Node:
        root = self.expr()
        if self.current.kind == ")":
            self._fail("unbalanced parenthesis")
        if self.current.kind != "end":
            self._fail("unexpected token")
        return root

    def expr(self) -> Node:
        node = self.term()
        while self.current.kind in ("+", "-"):
            op = self._advance().kind
            node = Binary(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.current.kind in ("*", "/"):
            op = self._advance().kind
            node = Binary(op, node, self.factor())
        return node

    def factor(self) -> Node:
        if self.current.kind == "-":
            self._advance()
            self._nest(1)
            node = Unary("-", self.factor())
            self._nest(-1)
            return node
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.current.kind != "^":
            return base
        self._advance()
        self._nest(1)
        node = Binary("^", base, self.factor())
        self._nest(-1)
        return node

    def atom(self) -> Node:
        token = self.current
        if token.kind == "number":
            self._advance()
            return Literal(token.value)
        if token.kind == "(":
            self._advance()
            self._nest(1)
            node = self.expr()
            self._close()
            self._nest(-1)
            return node
        if token.kind == "name":
            return self._name(token)
        if token.kind == ")":
            self._fail("unbalanced parenthesis")
        self._fail("expected a number, variable, function or '('")
        raise AssertionError("unreachable")

    def _name(self, token: _Token) -> Node:
        self._advance()
        if token.text in _CONSTANTS:
            return Literal(_CONSTANTS[token.text], token.text)
        if _VARIABLE_RE.fullmatch(token.text):
            index = int(token.text[1:])
            self.arity = max(self.arity, index)
            return Variable(index)
        if token.text not in UNARY_FUNCTIONS:
            self._fail("unknown identifier", token)
        if self.current.kind != "(":
            self._fail(f"expected '(' after function '{token.text}'")
        self._advance()
        self._nest(1)
        child = self.expr()
        if self.current.kind == ",":
            self._fail(f"function '{token.text}' takes exactly one argument")
        self._close()
        self._nest(-1)
        return Call(token.text, child)

    def _close(self):
        if self.current.kind != ")":
            if self.current.kind == "end":
                self._fail("unbalanced parenthesis, expected ')'")
            self._fail("expected ')'")
        self._advance()


def _byte_offset(text: str, position: int) -> int:
    return len(text[:position].encode("utf-8", errors="surrogatepass"))


def try_parse(text: Union[str, bytes]) -> Union[ExprAst, ParseDiagnostic]:
    """Parse an expression, returning a diagnostic instead of raising.

    Parameters
    ----------
    text:
        Expression as a string or UTF-8 encoded bytes.

    Returns
    -------
        The parsed expression or the diagnostic of the first error.

    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            return ParseDiagnostic(exc.start, "input is not valid UTF-8")
    try:
        parser = _Parser(_tokenize(text))
        root = parser.parse()
    except _Failure as exc:
        return ParseDiagnostic(_byte_offset(text, exc.position), exc.message, exc.token)
    return ExprAst(root, parser.arity)


def parse(text: Union[str, bytes]) -> ExprAst:
    """Parse an expression.

    Parameters
    ----------
    text:
        Expression as a string or UTF-8 encoded bytes.

    Returns
    -------
        The parsed expression.

    Raises
    ------
    ParseError:
        On an unknown identifier, misuse of a function, unbalanced parentheses or a
        malformed number. The diagnostic is available as the ``diagnostic`` attribute.

    Examples
    --------
    >>> parse("-x1^2").root.child
    Binary(op='^', left=Variable(index=1), right=Literal(value=2.0, symbol=None))
    >>> try_parse("sin(").offset
    4

    """
    result = try_parse(text)
    if isinstance(result, ParseDiagnostic):
        raise ParseError(result)
    return result


_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


def _precedence(node: Node) -> int:
    if isinstance(node, Binary):
        return _PRECEDENCE[node.op]
    if isinstance(node, Unary):
        return 3
    return 5


def _literal(node: Literal) -> str:
    if node.symbol is not None:
        return node.symbol
    if isinstance(node.value, complex):
        return f"{node.value.imag!r}i"
    return repr(node.value)


def _parts(node: Node) -> list:
    # Text pieces and (child, minimal precedence) pairs, in print order.
    if isinstance(node, Literal):
        return [_literal(node)]
    if isinstance(node, Variable):
        return [f"x{node.index}"]
    if isinstance(node, Call):
        return [f"{node.name}(", (node.child, 0), ")"]
    if isinstance(node, Unary):
        return [node.op, (node.child, 3)]
    if node.op == "^":
        return [(node.left, 5), "^", (node.right, 3)]
    level = _PRECEDENCE[node.op]
    return [(node.left, level), node.op, (node.right, level + 1)]


def _print(root: Node, min_precedence: int) -> str:
    pieces = []
    stack: list = [(root, min_precedence)]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            pieces.append(item)
            continue
        node, minimum = item
        parts = _parts(node)
        if _precedence(node) < minimum:
            parts = ["(", *parts, ")"]
        stack.extend(reversed(parts))
    return "".join(pieces)


def unparse(ast: Union[ExprAst, Node]) -> str:
    """Print an expression with the minimal number of parentheses.

    Parsing the output gives back the same expression.
    """
    return _print(ast.root if isinstance(ast, ExprAst) else ast, 0)


def _evaluate(root: Node, point: Sequence):
    # Post-order walk, left operands before right ones.
    values: list = []
    stack = [(root, False)]
    while stack:
        node, ready = stack.pop()
        if isinstance(node, Literal):
            values.append(node.value)
        elif isinstance(node, Variable):
            values.append(point[node.index - 1])
        elif not ready:
            stack.append((node, True))
            stack.extend((child, False) for child in reversed(_children(node)))
        elif isinstance(node, Binary):
            right = values.pop()
            values.append(BINARY_FUNCTIONS[node.op](values.pop(), right))
        elif isinstance(node, Unary):
            values.append(neg(values.pop()))
        else:
            values.append(UNARY_FUNCTIONS[node.name](values.pop()))
    return values.pop()


def evaluate(ast: ExprAst, point: Sequence) -> Union[Scalar, ADScalar]:
    """Evaluate an expression at a point.

    The nodes are visited in the same order whatever the type of the numbers, so plain,
    dual and hyper-dual evaluations agree on the value.

    Parameters
    ----------
    ast:
        Parsed expression.
    point:
        Sequence of plain numbers, dual numbers or hyper-dual numbers, one per variable.

    Returns
    -------
        The value, of the same type as the numbers of the point.

    Raises
    ------
    ArityMismatchError:
        If the length of the point differs from the arity.
    DomainError:
        If a primitive is evaluated outside its domain (strict mode).

    """
    if len(point) != ast.arity:
        raise ArityMismatchError(
            f"Expression '{unparse(ast)}' has {ast.arity} variables, got {len(point)} values."
        )
    result = _evaluate(ast.root, point)
    kinds = [type(x) for x in point if isinstance(x, (Dual, HyperDual))]
    if kinds and not isinstance(result, (Dual, HyperDual)):
        return kinds[0].constant(result)
    return result


def to_diff_function(ast: ExprAst, arity: Optional[int] = None) -> DiffFunction:
    """Turn an expression into a function for the drivers.

    Parameters
    ----------
    ast:
        Parsed expression.
    arity, optional:
        Number of arguments of the function, by default the arity of the expression.
        A larger arity adds arguments that the expression does not depend on.

    Returns
    -------
        Function of the hyper-dual (or dual) numbers of a point.

    Raises
    ------
    ArityMismatchError:
        If the arity is smaller than that of the expression or than 1.

    """
    arity = ast.arity if arity is None else arity
    if arity < max(ast.arity, 1):
        raise ArityMismatchError(
            f"Expression '{unparse(ast)}' needs at least {max(ast.arity, 1)} arguments, "
            f"not {arity}."
        )
    return DiffFunction(lambda point: evaluate(ast, point[:ast.arity]), arity, unparse(ast))
